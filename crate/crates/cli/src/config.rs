//! Flat `key=value` scenario configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Every key is optional;
//! defaults are listed in [`ScenarioConfig::default`].

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;

use dqsim_core::entanglement::PowerMethod;
use dqsim_core::{QubitInitialState, SystemParams};

pub const KEYS: [&str; 18] = [
    "gamma",
    "lambda",
    "omega",
    "delta_drive",
    "delta_cavity",
    "theta",
    "phi",
    "theta2",
    "phi2",
    "t_max",
    "t_steps",
    "dk_min",
    "dk_max",
    "dk_steps",
    "power_method",
    "power_samples",
    "seed",
    "out_prefix",
];

/// Environment variable overriding `seed`.
pub const SEED_ENV: &str = "DQSIM_SEED";

/// Where a value came from, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Line(usize),
    Override,
    Environment,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Line(n) => write!(f, "line {n}"),
            Source::Override => f.write_str("--set"),
            Source::Environment => write!(f, "environment {SEED_ENV}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{at}: malformed entry `{text}` (expected key=value)")]
    Syntax { at: Source, text: String },
    #[error("{at}: unknown key `{key}`")]
    UnknownKey { at: Source, key: String },
    #[error("{at}: key `{key}` given twice")]
    Duplicate { at: Source, key: String },
    #[error("{at}: key `{key}`: cannot parse `{value}` as {expected}")]
    Malformed {
        at: Source,
        key: String,
        value: String,
        expected: &'static str,
    },
    #[error("{at}: key `{key}` = {value} out of range: {reason}")]
    Range {
        at: Source,
        key: String,
        value: String,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMethodName {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub params: SystemParams,
    pub qubit: QubitInitialState,
    pub qubit2: QubitInitialState,
    pub t_max: f64,
    pub t_steps: usize,
    pub dk_min: f64,
    pub dk_max: f64,
    pub dk_steps: usize,
    pub power_method: PowerMethodName,
    pub power_samples: usize,
    pub seed: u64,
    pub out_prefix: String,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            params: SystemParams {
                gamma: 1.0,
                lambda: 0.1,
                rabi: 0.0,
                drive_detuning: 0.0,
                cavity_detuning: 0.0,
            },
            qubit: QubitInitialState::excited(),
            qubit2: QubitInitialState::excited(),
            t_max: 25.0,
            t_steps: 501,
            dk_min: -1.5,
            dk_max: 1.5,
            dk_steps: 2001,
            power_method: PowerMethodName::Quadrature,
            power_samples: 1_000_000,
            seed: 42,
            out_prefix: "out/".into(),
        }
    }
}

impl ScenarioConfig {
    pub fn power_method(&self) -> PowerMethod {
        match self.power_method {
            PowerMethodName::Quadrature => PowerMethod::quadrature(),
            PowerMethodName::MonteCarlo => PowerMethod::MonteCarlo {
                samples: self.power_samples,
                seed: self.seed,
            },
        }
    }

    /// `key=value` lines that reproduce this configuration.
    pub fn echo(&self) -> Vec<String> {
        let p = &self.params;
        let method = match self.power_method {
            PowerMethodName::Quadrature => "quadrature",
            PowerMethodName::MonteCarlo => "montecarlo",
        };
        vec![
            format!("gamma={}", p.gamma),
            format!("lambda={}", p.lambda),
            format!("omega={}", p.rabi),
            format!("delta_drive={}", p.drive_detuning),
            format!("delta_cavity={}", p.cavity_detuning),
            format!("theta={}", self.qubit.theta()),
            format!("phi={}", self.qubit.phi()),
            format!("theta2={}", self.qubit2.theta()),
            format!("phi2={}", self.qubit2.phi()),
            format!("t_max={}", self.t_max),
            format!("t_steps={}", self.t_steps),
            format!("dk_min={}", self.dk_min),
            format!("dk_max={}", self.dk_max),
            format!("dk_steps={}", self.dk_steps),
            format!("power_method={method}"),
            format!("power_samples={}", self.power_samples),
            format!("seed={}", self.seed),
            format!("out_prefix={}", self.out_prefix),
        ]
    }
}

/// Raw entries before type conversion; later sources may override earlier ones.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<&'static str, (String, Source)>,
}

fn known_key(key: &str) -> Option<&'static str> {
    KEYS.iter().copied().find(|k| *k == key)
}

fn split_entry(text: &str, source: &Source) -> Result<(&'static str, String), ConfigError> {
    let Some((key, value)) = text.split_once('=') else {
        return Err(ConfigError::Syntax {
            at: source.clone(),
            text: text.to_string(),
        });
    };
    let key = key.trim();
    let Some(known) = known_key(key) else {
        return Err(ConfigError::UnknownKey {
            at: source.clone(),
            key: key.to_string(),
        });
    };
    Ok((known, value.trim().to_string()))
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = Self::default();
        for (index, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let source = Source::Line(index + 1);
            let (key, value) = split_entry(line, &source)?;
            if raw.entries.contains_key(key) {
                return Err(ConfigError::Duplicate {
                    at: source,
                    key: key.to_string(),
                });
            }
            raw.entries.insert(key, (value, source));
        }
        Ok(raw)
    }

    /// Apply a `key=value` override.
    pub fn set(&mut self, entry: &str) -> Result<(), ConfigError> {
        let (key, value) = split_entry(entry, &Source::Override)?;
        self.entries.insert(key, (value, Source::Override));
        Ok(())
    }

    /// Apply the seed override from the environment, if any.
    pub fn apply_env(&mut self) {
        if let Ok(seed) = std::env::var(SEED_ENV) {
            self.entries.insert("seed", (seed.trim().to_string(), Source::Environment));
        }
    }

    pub fn build(&self) -> Result<ScenarioConfig, ConfigError> {
        let mut cfg = ScenarioConfig::default();
        let p = &mut cfg.params;
        self.real("gamma", &mut p.gamma)?;
        self.real("lambda", &mut p.lambda)?;
        self.real("omega", &mut p.rabi)?;
        self.real("delta_drive", &mut p.drive_detuning)?;
        self.real("delta_cavity", &mut p.cavity_detuning)?;
        self.check("gamma", p.gamma > 0.0, "must be > 0")?;
        self.check("lambda", p.lambda > 0.0, "must be > 0")?;
        self.check("omega", p.rabi >= 0.0, "must be >= 0")?;

        let (mut theta, mut phi, mut theta2, mut phi2) = (0.0, 0.0, 0.0, 0.0);
        self.real("theta", &mut theta)?;
        self.real("phi", &mut phi)?;
        self.real("theta2", &mut theta2)?;
        self.real("phi2", &mut phi2)?;
        for (key, v) in [("theta", theta), ("theta2", theta2)] {
            self.check(key, (0.0..=PI).contains(&v), "must lie in [0, pi]")?;
        }
        for (key, v) in [("phi", phi), ("phi2", phi2)] {
            self.check(key, (0.0..TAU).contains(&v), "must lie in [0, 2pi)")?;
        }
        cfg.qubit = QubitInitialState::new(theta, phi).expect("angles checked");
        cfg.qubit2 = QubitInitialState::new(theta2, phi2).expect("angles checked");

        self.real("t_max", &mut cfg.t_max)?;
        self.integer("t_steps", &mut cfg.t_steps)?;
        self.check("t_max", cfg.t_max >= 0.0, "must be >= 0")?;
        self.check("t_steps", cfg.t_steps >= 1, "must be >= 1")?;
        self.check(
            "t_steps",
            cfg.t_max > 0.0 || cfg.t_steps == 1,
            "t_max = 0 admits a single sample only",
        )?;

        self.real("dk_min", &mut cfg.dk_min)?;
        self.real("dk_max", &mut cfg.dk_max)?;
        self.integer("dk_steps", &mut cfg.dk_steps)?;
        self.check("dk_steps", cfg.dk_steps >= 2, "must be >= 2")?;
        self.check("dk_max", cfg.dk_max > cfg.dk_min, "must exceed dk_min")?;

        if let Some((value, source)) = self.entries.get("power_method") {
            cfg.power_method = match value.to_ascii_lowercase().as_str() {
                "quadrature" => PowerMethodName::Quadrature,
                "montecarlo" | "monte-carlo" | "mc" => PowerMethodName::MonteCarlo,
                _ => {
                    return Err(ConfigError::Malformed {
                        at: source.clone(),
                        key: "power_method".into(),
                        value: value.clone(),
                        expected: "`quadrature` or `montecarlo`",
                    })
                }
            };
        }
        self.integer("power_samples", &mut cfg.power_samples)?;
        self.check("power_samples", cfg.power_samples >= 2, "must be >= 2")?;
        if let Some((value, source)) = self.entries.get("seed") {
            cfg.seed = value.parse().map_err(|_| ConfigError::Malformed {
                at: source.clone(),
                key: "seed".into(),
                value: value.clone(),
                expected: "an unsigned 64-bit integer",
            })?;
        }
        if let Some((value, _)) = self.entries.get("out_prefix") {
            cfg.out_prefix = value.clone();
        }
        self.check("out_prefix", !cfg.out_prefix.is_empty(), "must not be empty")?;
        Ok(cfg)
    }

    fn source(&self, key: &str) -> Source {
        self.entries
            .get(key)
            .map(|(_, s)| s.clone())
            .unwrap_or(Source::Override)
    }

    fn real(&self, key: &'static str, slot: &mut f64) -> Result<(), ConfigError> {
        if let Some((value, source)) = self.entries.get(key) {
            let parsed: f64 = value.parse().map_err(|_| ConfigError::Malformed {
                at: source.clone(),
                key: key.into(),
                value: value.clone(),
                expected: "a real number",
            })?;
            if !parsed.is_finite() {
                return Err(ConfigError::Range {
                    at: source.clone(),
                    key: key.into(),
                    value: value.clone(),
                    reason: "must be finite".into(),
                });
            }
            *slot = parsed;
        }
        Ok(())
    }

    fn integer(&self, key: &'static str, slot: &mut usize) -> Result<(), ConfigError> {
        if let Some((value, source)) = self.entries.get(key) {
            *slot = value.parse().map_err(|_| ConfigError::Malformed {
                at: source.clone(),
                key: key.into(),
                value: value.clone(),
                expected: "a non-negative integer",
            })?;
        }
        Ok(())
    }

    fn check(&self, key: &'static str, ok: bool, reason: &str) -> Result<(), ConfigError> {
        if ok {
            return Ok(());
        }
        let value = self
            .entries
            .get(key)
            .map(|(v, _)| v.clone())
            .unwrap_or_else(|| "(default)".into());
        Err(ConfigError::Range {
            at: self.source(key),
            key: key.into(),
            value,
            reason: reason.into(),
        })
    }
}

/// Parse configuration text; missing keys take their defaults.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    RawConfig::parse(text)?.build()
}
