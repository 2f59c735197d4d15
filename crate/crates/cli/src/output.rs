//! CSV text: `# key = value` metadata, a header row, then data rows.

use std::fmt::Write;

/// Seventeen significant digits, so the text round-trips.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Default)]
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(meta: &[(String, String)], header: &[&str]) -> Self {
        let mut text = String::new();
        for (k, v) in meta {
            let _ = writeln!(text, "# {k} = {v}");
        }
        text.push_str(&header.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// CSV for stdout or a file, plus lines for stderr.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub csv: String,
    pub diagnostics: Vec<String>,
}
