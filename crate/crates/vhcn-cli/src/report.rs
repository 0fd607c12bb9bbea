//! Report assembly and rendering.
//!
//! Every subcommand produces a [`Report`]: an ordered list of sections, each
//! holding one table. Text rendering applies the display conventions (rates
//! with one decimal, probabilities as percent with one decimal, latencies in
//! milliseconds with three significant digits); CSV rendering emits raw
//! values in SI base units (bit/s, seconds, fractions) at full double
//! precision so that re-parsing recovers them exactly.

use crate::units::{format_latency, format_mbit, format_percent, format_rate};

/// One table cell. Numeric variants carry SI base units; the variant decides
/// the human formatting.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    /// Rate in bit/s, shown with an adaptive prefix ("366.8 Mbit/s").
    Rate(f64),
    /// Rate in bit/s, shown as a bare Mbit/s figure ("147.1"); the column
    /// header carries the unit.
    RateMbit(f64),
    /// Duration in seconds, shown in milliseconds.
    Seconds(f64),
    /// Fraction in [0, 1], shown as percent.
    Percent(f64),
    Count(u64),
    /// Dimensionless number, shown as-is.
    Num(f64),
}

impl Value {
    fn text_form(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Rate(v) => format_rate(*v),
            Value::RateMbit(v) => format_mbit(*v),
            Value::Seconds(v) => format_latency(*v),
            Value::Percent(v) => format_percent(*v),
            Value::Count(v) => v.to_string(),
            Value::Num(v) => format!("{v}"),
        }
    }

    fn csv_form(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Rate(v) | Value::RateMbit(v) | Value::Seconds(v) | Value::Percent(v)
            | Value::Num(v) => format!("{v}"),
            Value::Count(v) => v.to_string(),
        }
    }

    fn is_numeric(&self) -> bool {
        !matches!(self, Value::Text(_))
    }
}

/// Table column with separate display and CSV headers.
#[derive(Debug, Clone)]
pub struct Column {
    pub text_header: String,
    pub csv_header: String,
}

impl Column {
    pub fn new(text_header: impl Into<String>, csv_header: impl Into<String>) -> Self {
        Self {
            text_header: text_header.into(),
            csv_header: csv_header.into(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    /// Two-column metric/value table, the shape used by the scalar
    /// subcommands.
    pub fn key_value() -> Self {
        Self::new(vec![
            Column::new("metric", "metric"),
            Column::new("value", "value"),
        ])
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_kv(&mut self, metric: &str, value: Value) {
        self.push(vec![Value::Text(metric.to_string()), value]);
    }

    fn render_text(&self, out: &mut String) {
        let mut widths: Vec<usize> = self
            .columns
            .iter()
            .map(|c| c.text_header.chars().count())
            .collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Value::text_form).collect())
            .collect();
        for row in &rendered {
            for (width, cell) in widths.iter_mut().zip(row) {
                *width = (*width).max(cell.chars().count());
            }
        }

        let mut line = String::new();
        for (i, column) in self.columns.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            pad(&mut line, &column.text_header, widths[i], false);
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for (row, cells) in self.rows.iter().zip(&rendered) {
            let mut line = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                pad(&mut line, cell, widths[i], row[i].is_numeric());
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }

    fn render_csv(&self, out: &mut Vec<u8>) {
        let mut writer = csv::Writer::from_writer(out);
        writer
            .write_record(self.columns.iter().map(|c| c.csv_header.as_str()))
            .expect("writing to memory cannot fail");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(|v| v.csv_form()))
                .expect("writing to memory cannot fail");
        }
        writer.flush().expect("flushing to memory cannot fail");
    }
}

fn pad(line: &mut String, cell: &str, width: usize, right_align: bool) {
    let fill = width.saturating_sub(cell.chars().count());
    if right_align {
        line.extend(std::iter::repeat_n(' ', fill));
        line.push_str(cell);
    } else {
        line.push_str(cell);
        line.extend(std::iter::repeat_n(' ', fill));
    }
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: String,
    pub table: Table,
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(name: impl Into<String>, table: Table) -> Self {
        Self {
            name: name.into(),
            table,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub title: Option<String>,
    /// Defaults injected while loading inputs, echoed so that no parameter
    /// enters a report silently.
    pub defaults_applied: Vec<String>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    /// Header lines: title plus every applied default.
    pub fn metadata_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        if let Some(title) = &self.title {
            lines.push(title.clone());
        }
        for default in &self.defaults_applied {
            lines.push(format!("default applied: {default}"));
        }
        lines
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for line in self.metadata_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        if !self.metadata_lines().is_empty() {
            out.push('\n');
        }
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("[{}]\n", section.name));
            section.table.render_text(&mut out);
            for note in &section.notes {
                out.push_str(&format!("note: {note}\n"));
            }
        }
        out
    }

    /// One CSV table per section, separated by a blank line. Metadata is not
    /// interleaved (callers print it to stderr instead).
    pub fn render_csv(&self) -> String {
        let mut out = Vec::new();
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push(b'\n');
            }
            section.table.render_csv(&mut out);
        }
        String::from_utf8(out).expect("csv output is utf-8")
    }
}
