//! JSON and CSV serialisation of verification reports.
//!
//! Every float is rounded to 12 significant digits before it is written, so
//! the two formats of one run carry identical numbers.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use hypmetric_core::harness::{Verdict, VerificationReport};
use serde::{Deserialize, Serialize};

/// Significant digits kept in every output number.
pub const SIG_DIGITS: usize = 12;

/// `x` rounded to [`SIG_DIGITS`] significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("formatted float parses")
}

/// Shortest text that reads back as `round_sig(x)`; exponent form outside
/// `[1e-5, 1e15)`.
pub fn fmt_sig(x: f64) -> String {
    let r = round_sig(x);
    let a = r.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// From a file extension; anything but `.csv` means JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (json or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
}

/// The fixed report schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub case: String,
    pub domain: String,
    pub samples: usize,
    pub seed: u64,
    pub max_violation: Option<f64>,
    pub witnesses: Vec<WitnessRecord>,
    pub verdict: String,
}

/// `None` stands for NaN/∞, which JSON cannot carry.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then(|| round_sig(x))
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        ReportRecord {
            case: r.case.clone(),
            domain: r.domain.clone(),
            samples: r.samples,
            seed: r.seed,
            max_violation: finite(r.max_violation),
            witnesses: r
                .witnesses
                .iter()
                .map(|w| WitnessRecord {
                    x: w.x.iter().copied().map(round_sig).collect(),
                    y: w.y.iter().copied().map(round_sig).collect(),
                    lhs: finite(w.lhs),
                    rhs: finite(w.rhs),
                })
                .collect(),
            verdict: r.verdict.as_str().into(),
        }
    }
}

impl ReportRecord {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass.as_str()
    }
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    let records: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
    let mut s = serde_json::to_string_pretty(&records).expect("records serialise");
    s.push('\n');
    s
}

/// One CSV row per report, plus one per extra witness.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    case: String,
    domain: String,
    samples: usize,
    seed: u64,
    max_violation: String,
    verdict: String,
    /// Witness position within the report, empty when there is none.
    witness: Option<usize>,
    x: String,
    y: String,
    lhs: String,
    rhs: String,
}

fn opt_text(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

fn opt_parse(s: &str) -> Result<Option<f64>, String> {
    if s.is_empty() {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(|_| format!("bad number `{s}`"))
    }
}

fn coords_text(c: &[f64]) -> String {
    c.iter().map(|v| fmt_sig(*v)).collect::<Vec<_>>().join(";")
}

fn coords_parse(s: &str) -> Result<Vec<f64>, String> {
    s.split(';').map(|c| c.parse().map_err(|_| format!("bad coordinate `{c}`"))).collect()
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports.iter().map(ReportRecord::from) {
        let base = |witness: Option<usize>, wr: Option<&WitnessRecord>| CsvRow {
            case: r.case.clone(),
            domain: r.domain.clone(),
            samples: r.samples,
            seed: r.seed,
            max_violation: opt_text(r.max_violation),
            verdict: r.verdict.clone(),
            witness,
            x: wr.map(|w| coords_text(&w.x)).unwrap_or_default(),
            y: wr.map(|w| coords_text(&w.y)).unwrap_or_default(),
            lhs: wr.map(|w| opt_text(w.lhs)).unwrap_or_default(),
            rhs: wr.map(|w| opt_text(w.rhs)).unwrap_or_default(),
        };
        if r.witnesses.is_empty() {
            w.serialize(base(None, None)).expect("in-memory write");
        }
        for (i, wr) in r.witnesses.iter().enumerate() {
            w.serialize(base(Some(i), Some(wr))).expect("in-memory write");
        }
    }
    // an empty run still gets its header
    if reports.is_empty() {
        w.write_record(["case", "domain", "samples", "seed", "max_violation", "verdict", "witness", "x", "y", "lhs", "rhs"])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Reads a CSV report back into records.
pub fn parse_csv(text: &str) -> Result<Vec<ReportRecord>, String> {
    let mut out: Vec<ReportRecord> = Vec::new();
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    for row in rd.deserialize::<CsvRow>() {
        let row = row.map_err(|e| e.to_string())?;
        let fresh = row.witness.map_or(true, |i| i == 0);
        if fresh {
            out.push(ReportRecord {
                case: row.case.clone(),
                domain: row.domain.clone(),
                samples: row.samples,
                seed: row.seed,
                max_violation: opt_parse(&row.max_violation)?,
                witnesses: Vec::new(),
                verdict: row.verdict.clone(),
            });
        }
        if row.witness.is_some() {
            let last = out.last_mut().ok_or("witness row before its report")?;
            last.witnesses.push(WitnessRecord {
                x: coords_parse(&row.x)?,
                y: coords_parse(&row.y)?,
                lhs: opt_parse(&row.lhs)?,
                rhs: opt_parse(&row.rhs)?,
            });
        }
    }
    Ok(out)
}

pub fn parse_json(text: &str) -> Result<Vec<ReportRecord>, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => to_csv(reports),
    }
}

/// Writes `reports` to `path` in `format`.
pub fn emit_report(reports: &[VerificationReport], format: Format, path: &Path) -> io::Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(render(reports, format).as_bytes())?;
    f.flush()
}
