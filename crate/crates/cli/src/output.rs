//! CSV tables with `#` metadata lines and fixed 12-significant-digit numbers.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Version and source revision stamped into every output file.
pub fn build_id() -> String {
    format!(
        "dqsim {} ({})",
        env!("CARGO_PKG_VERSION"),
        option_env!("DQSIM_GIT_ID").unwrap_or("unknown revision")
    )
}

/// Round to 12 significant digits and print the shortest representation of
/// the rounded value. Negative zero prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let magnitude = rounded.abs();
    if (1e-4..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub metadata: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            metadata: vec![build_id()],
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.metadata.push(line.into());
        self
    }

    pub fn notes<S: Into<String>>(mut self, lines: impl IntoIterator<Item = S>) -> Self {
        self.metadata.extend(lines.into_iter().map(Into::into));
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for line in &self.metadata {
            for part in line.lines() {
                out.push_str("# ");
                out.push_str(part);
                out.push('\n');
            }
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|&x| format_number(x)))?;
        }
        let body = writer.into_inner().context("flushing CSV buffer")?;
        out.push_str(std::str::from_utf8(&body).context("CSV output is not UTF-8")?);
        Ok(out)
    }

    pub fn write(&self, path: &Path) -> Result<PathBuf> {
        create_parent(path)?;
        fs::write(path, self.render()?).with_context(|| format!("writing {}", path.display()))?;
        Ok(path.to_path_buf())
    }
}

pub fn create_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    Ok(())
}

/// `prefix` followed by `name`; a prefix ending in `/` names a directory.
pub fn output_path(prefix: &str, name: &str) -> PathBuf {
    if prefix.ends_with('/') || prefix.ends_with(std::path::MAIN_SEPARATOR) {
        PathBuf::from(format!("{prefix}{name}"))
    } else {
        PathBuf::from(format!("{prefix}_{name}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_number(1.234567890123456e-7), "1.23456789012e-7");
        assert_eq!(format_number(4.1e5), "410000");
    }

    #[test]
    fn renders_metadata_header_rows() {
        let mut t = CsvTable::new(["t", "value"]).note("a=1\nb=2");
        t.push(vec![0.0, 1.0]);
        t.push(vec![0.5, 1.0 / 3.0]);
        let text = t.render().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# dqsim "));
        assert_eq!(&lines[1..], ["# a=1", "# b=2", "t,value", "0,1", "0.5,0.333333333333"]);
    }

    #[test]
    fn paths() {
        assert_eq!(output_path("out/", "a.csv"), PathBuf::from("out/a.csv"));
        assert_eq!(output_path("run", "a.csv"), PathBuf::from("run_a.csv"));
    }
}
