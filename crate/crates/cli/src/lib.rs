//! Scenario runner for `dqsim-core`: configuration parsing, CSV and SVG
//! output, figure sweeps and the oracle validation suite.

pub mod commands;
pub mod config;
pub mod figures;
pub mod output;
pub mod plot;
pub mod validate;

pub use commands::{run_command, Command};
pub use config::{parse_config, RawConfig, ScenarioConfig};
pub use figures::run_figure;
pub use validate::run_validation;
