//! One result, three renderings: JSON, tab-separated rows, aligned text.

use serde_json::Value;

use crate::config::Format;

pub struct Output {
    pub json: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn new(json: Value, headers: Vec<&'static str>) -> Self {
        Self { json, headers, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialise");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = self.headers.join("\t");
                s.push('\n');
                for row in &self.rows {
                    s.push_str(&row.join("\t"));
                    s.push('\n');
                }
                s
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                        .collect();
                    let mut l = padded.join("  ").trim_end().to_string();
                    l.push('\n');
                    l
                };
                let mut s = line(self.headers.clone());
                for row in &self.rows {
                    s.push_str(&line(row.iter().map(String::as_str).collect()));
                }
                s
            }
        }
    }
}

/// Compact single-line JSON, for table cells.
pub fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialise")
}
