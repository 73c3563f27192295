use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};

use super::scenario::Scenario;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub n: usize,
    pub value: Vec<f64>,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub index: usize,
    pub x: Vec<f64>,
    pub y: f64,
    pub y_tag: String,
    pub limit: Vec<f64>,
    pub terms: Vec<TermRecord>,
    pub final_gap: f64,
    pub tail_pass: bool,
    /// Whether every gap had to be exactly 0.
    pub exact: bool,
    pub exact_pass: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub probes: usize,
    pub passed: usize,
    pub max_final_gap: f64,
    pub all_pass: bool,
}

impl Summary {
    pub fn of(records: &[ProbeRecord]) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Self {
            probes: records.len(),
            passed,
            max_final_gap: records.iter().map(|r| r.final_gap).fold(0.0, f64::max),
            all_pass: passed == records.len(),
        }
    }
}

/// Per-probe term tables, their summary, and the scenario that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub scenario: Scenario,
    pub records: Vec<ProbeRecord>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub scenarios: usize,
    pub passed: usize,
    pub all_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<ConvergenceReport>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    pub fn new(reports: Vec<ConvergenceReport>) -> Self {
        let passed = reports.iter().filter(|r| r.summary.all_pass).count();
        let summary = SuiteSummary {
            scenarios: reports.len(),
            passed,
            all_pass: passed == reports.len(),
        };
        Self { reports, summary }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// `v` with 17 significant digits, which round-trips every `f64`.
pub fn format_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Pretty JSON whose floats are written by [`format_f64`]; non-finite
/// floats become `null`.
struct Sig17<'a>(PrettyFormatter<'a>);

impl Formatter for Sig17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            w.write_all(format_f64(v).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(v))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

const CSV_HEADER: [&str; 11] = [
    "scenario", "probe", "x", "y", "y_tag", "n", "value", "limit", "gap", "tail_pass", "pass",
];

fn join(v: &[f64]) -> String {
    v.iter().map(|c| format_f64(*c)).collect::<Vec<_>>().join(";")
}

fn csv_rows<W: Write>(w: &mut csv::Writer<W>, report: &ConvergenceReport) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    for r in &report.records {
        for t in &r.terms {
            w.write_record([
                report.scenario.name.clone(),
                r.index.to_string(),
                join(&r.x),
                format_f64(r.y),
                r.y_tag.clone(),
                t.n.to_string(),
                join(&t.value),
                join(&r.limit),
                format_f64(t.gap),
                r.tail_pass.to_string(),
                r.pass.to_string(),
            ])
            .map_err(io)?;
        }
    }
    Ok(())
}

/// One row per (probe, schedule entry); multi-coordinate cells are joined
/// with `;`.
pub fn to_csv<'a>(reports: impl IntoIterator<Item = &'a ConvergenceReport>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(|e| Error::Io(e.to_string()))?;
    for r in reports {
        csv_rows(&mut w, r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn render(report: &ConvergenceReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv([report]),
    }
}

pub fn render_suite(suite: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(suite),
        Format::Csv => to_csv(&suite.reports),
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn write_out(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Renders `report` and writes it to `path` (stdout for `None`).
pub fn emit(report: &ConvergenceReport, format: Format, path: Option<&Path>) -> Result<()> {
    write_out(&render(report, format)?, path)
}
