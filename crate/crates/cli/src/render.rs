//! Report rendering: JSON with stable key order or sectioned CSV.

use std::path::PathBuf;

use analyses::{AnalysisReport, Cell, NamedSeries, Table, TestOutcome};
use serde_json::Value;
use stats_tests::{BreakResult, TestResult};

use crate::CliError;

/// Version stamp written into every rendered report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// How a report should be rendered.
#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub format: Format,
    pub plot_path: Option<PathBuf>,
    /// Decimal places for real numbers; must lie in [1, 12].
    pub precision: usize,
}

impl OutputSpec {
    pub fn new(
        format: Format,
        plot_path: Option<PathBuf>,
        precision: usize,
    ) -> Result<OutputSpec, CliError> {
        if !(1..=12).contains(&precision) {
            return Err(CliError::Usage(format!(
                "precision must lie in [1, 12], got {precision}"
            )));
        }
        Ok(OutputSpec {
            format,
            plot_path,
            precision,
        })
    }
}

/// Render a report to bytes. The same report and spec always produce the
/// same bytes.
pub fn render_report(report: &AnalysisReport, spec: &OutputSpec) -> Vec<u8> {
    match spec.format {
        Format::Json => render_json(report, spec.precision),
        Format::Csv => render_csv(report, spec.precision),
    }
}

fn round_to(value: f64, precision: usize) -> f64 {
    let factor = 10f64.powi(precision as i32);
    let rounded = (value * factor).round() / factor;
    // Collapse negative zero so -0.00004 and 0.00004 render alike.
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn fmt_real(value: f64, precision: usize) -> String {
    format!("{:.*}", precision, round_to(value, precision))
}

fn render_json(report: &AnalysisReport, precision: usize) -> Vec<u8> {
    let mut value = serde_json::to_value(report).expect("report serializes");
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        map.insert("precision".into(), Value::from(precision as u64));
    }
    round_reals(&mut value, precision);
    let mut bytes = serde_json::to_string_pretty(&value)
        .expect("value prints")
        .into_bytes();
    bytes.push(b'\n');
    bytes
}

fn round_reals(value: &mut Value, precision: usize) {
    match value {
        Value::Number(number) if number.is_f64() => {
            let rounded = round_to(number.as_f64().expect("checked"), precision);
            *value = serde_json::Number::from_f64(rounded)
                .map(Value::Number)
                .unwrap_or(Value::Null);
        }
        Value::Array(items) => {
            for item in items {
                round_reals(item, precision);
            }
        }
        Value::Object(map) => {
            for (_, item) in map.iter_mut() {
                round_reals(item, precision);
            }
        }
        _ => {}
    }
}

fn render_csv(report: &AnalysisReport, precision: usize) -> Vec<u8> {
    let mut out = String::new();
    out.push_str(&format!("# report: {}\n", report.analysis.as_str()));
    out.push_str(&format!("# schema_version: {SCHEMA_VERSION}\n"));
    for table in &report.tables {
        out.push_str(&format!("\n# table: {}\n", table.title));
        out.push_str(&table_csv(table, precision));
    }
    for series in &report.series {
        out.push_str(&format!("\n# series: {}\n", series.name));
        out.push_str(&series_csv(series));
    }
    for test in &report.tests {
        out.push_str(&format!("\n# test: {}\n", test.name));
        let fields = match &test.result {
            TestOutcome::Standard(result) => test_fields(result, precision),
            TestOutcome::Break(result) => break_fields(result, precision),
        };
        out.push_str(&rows_csv(&["field", "value"], &fields));
    }
    out.push_str("\n# notes\n");
    let notes: Vec<Vec<String>> = report.notes.iter().map(|n| vec![n.clone()]).collect();
    out.push_str(&rows_csv(&["note"], &notes));
    out.into_bytes()
}

fn rows_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("header writes");
    for row in rows {
        writer.write_record(row).expect("row writes");
    }
    String::from_utf8(writer.into_inner().expect("csv buffer")).expect("csv is utf-8")
}

fn table_csv(table: &Table, precision: usize) -> String {
    let header: Vec<&str> = table.columns.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| {
            let mut cells = vec![row.label.clone()];
            cells.extend(row.cells.iter().map(|cell| match cell {
                Cell::Int(v) => v.to_string(),
                Cell::Real(v) => fmt_real(*v, precision),
                Cell::Text(v) => v.clone(),
            }));
            cells
        })
        .collect();
    rows_csv(&header, &rows)
}

/// Series values keep full precision so a section cut from the file can be
/// piped back through the matching `test` subcommand without loss.
fn series_csv(series: &NamedSeries) -> String {
    let rows: Vec<Vec<String>> = series
        .points
        .iter()
        .map(|p| vec![p.ordinal.to_string(), p.label.clone(), format!("{}", p.value)])
        .collect();
    rows_csv(&["ordinal", "label", "value"], &rows)
}

fn enum_tag<T: serde::Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("enum serializes") {
        Value::String(tag) => tag,
        other => other.to_string(),
    }
}

fn test_fields(result: &TestResult, precision: usize) -> Vec<Vec<String>> {
    let mut fields = vec![
        vec!["statistic".to_string(), fmt_real(result.statistic, precision)],
        vec!["p_value".to_string(), fmt_real(result.p_value, precision)],
        vec!["method".to_string(), enum_tag(&result.method)],
        vec!["alternative".to_string(), enum_tag(&result.alternative)],
        vec!["degenerate".to_string(), result.degenerate.to_string()],
    ];
    for (key, value) in &result.n_summary {
        fields.push(vec![format!("n_summary.{key}"), value.to_string()]);
    }
    for (key, value) in &result.extras {
        fields.push(vec![format!("extras.{key}"), fmt_real(*value, precision)]);
    }
    fields
}

fn break_fields(result: &BreakResult, precision: usize) -> Vec<Vec<String>> {
    let mut fields = test_fields(&result.base, precision);
    fields.push(vec![
        "break_position".to_string(),
        result.break_position.to_string(),
    ]);
    fields.push(vec!["break_label".to_string(), result.break_label.clone()]);
    fields.push(vec!["p_bracket".to_string(), result.p_bracket.clone()]);
    for (level, decision) in &result.decision_at {
        fields.push(vec![format!("decision_at.{level}"), enum_tag(decision)]);
    }
    fields
}
