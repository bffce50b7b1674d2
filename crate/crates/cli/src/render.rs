//! Table rendering shared by every command.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub title: String,
    pub intro: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn intro(mut self, line: impl Into<String>) -> Self {
        self.intro.push(line.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn markdown(&self, out: &mut String) {
        out.push_str(&format!("## {}\n\n", self.title));
        for line in &self.intro {
            out.push_str(line);
            out.push('\n');
        }
        if !self.intro.is_empty() {
            out.push('\n');
        }
        let line = |cells: &[String]| {
            let cells: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
            format!("| {} |\n", cells.join(" | "))
        };
        out.push_str(&line(&self.headers));
        let rule: Vec<String> = self.headers.iter().map(|_| "---".to_string()).collect();
        out.push_str(&line(&rule));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out.push('\n');
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// Everything one command produced, before a format is chosen.
#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub heading: String,
    pub tables: Vec<Table>,
    /// Replaces the table blocks in CSV output.
    pub csv: Option<String>,
    pub json: Value,
    /// Printed to stderr for the machine-readable formats, where the
    /// tables are not shown.
    pub diagnostics: Vec<String>,
    pub ok: bool,
}

impl Section {
    pub fn markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.heading);
        for t in &self.tables {
            t.markdown(&mut out);
        }
        out
    }

    pub fn csv(&self) -> Result<String> {
        if let Some(c) = &self.csv {
            return Ok(c.clone());
        }
        let blocks: Result<Vec<String>> = self.tables.iter().map(Table::csv).collect();
        Ok(blocks?.join("\n"))
    }
}

/// Renders one or more sections. A single section's JSON is emitted as is;
/// several are keyed by command name.
pub fn render(sections: &[Section], format: Format) -> Result<String> {
    match format {
        Format::Markdown => Ok(sections.iter().map(Section::markdown).collect::<Vec<_>>().join("")),
        Format::Csv => {
            let blocks: Result<Vec<String>> = sections.iter().map(Section::csv).collect();
            Ok(blocks?.join("\n"))
        }
        Format::Json => {
            let value = match sections {
                [one] => one.json.clone(),
                many => Value::Object(many.iter().map(|s| (s.name.clone(), s.json.clone())).collect()),
            };
            let mut text = serde_json::to_string_pretty(&value)?;
            text.push('\n');
            Ok(text)
        }
    }
}

/// Fixed-point with `digits` decimals; a rounded negative zero prints as zero.
pub fn fixed(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

pub fn status(ok: bool) -> String {
    if ok { "PASS" } else { "FAIL" }.to_string()
}
