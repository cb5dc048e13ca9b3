use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homological::IdentityCheck;
use crate::series::{compare, DimTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// One disagreement: a degree where two tables differ, or a failed
/// identity with its symbolic difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRecord {
    pub check: String,
    pub degree: Option<u32>,
    pub expected: String,
    pub actual: String,
}

/// Output format accepted by `--format`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format {other:?}; use text, csv or json"))),
        }
    }
}

/// The result of running one scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub verdict: Verdict,
    pub anchors: Vec<String>,
    pub tables: Vec<DimTable>,
    pub checks: Vec<IdentityCheck>,
    pub mismatches: Vec<MismatchRecord>,
    /// Present unless timing was disabled.
    pub elapsed_ms: Option<u64>,
    /// A rendered page chart, shown in text output only.
    #[serde(skip)]
    pub chart: Option<String>,
}

impl Report {
    pub fn new(scenario: &str, anchor: &str) -> Self {
        Report {
            scenario: scenario.to_string(),
            verdict: Verdict::Pass,
            anchors: vec![anchor.to_string()],
            tables: Vec::new(),
            checks: Vec::new(),
            mismatches: Vec::new(),
            elapsed_ms: None,
            chart: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Adds both tables and records every degree where `actual` disagrees
    /// with `expected`, plus any degree of `expected` that `actual` lacks.
    pub fn compare_tables(&mut self, actual: DimTable, expected: DimTable) {
        let mut found = compare(&actual, &expected);
        for (&d, &v) in expected.degrees.iter().zip(&expected.dims) {
            if actual.get(d).is_none() {
                found.push(crate::series::Mismatch { degree: d, left: 0, right: v });
            }
        }
        for m in found {
            self.mismatches.push(MismatchRecord {
                check: format!("{} vs {}", actual.name, expected.name),
                degree: Some(m.degree),
                expected: m.right.to_string(),
                actual: if actual.get(m.degree).is_some() { m.left.to_string() } else { "missing".into() },
            });
            self.verdict = Verdict::Fail;
        }
        self.tables.push(actual);
        self.tables.push(expected);
    }

    pub fn add_table(&mut self, table: DimTable) {
        self.tables.push(table);
    }

    pub fn add_check(&mut self, check: IdentityCheck) {
        if !check.holds {
            self.mismatches.push(MismatchRecord {
                check: check.name.clone(),
                degree: None,
                expected: check.rhs.clone(),
                actual: format!("{} (difference {})", check.lhs, check.difference),
            });
            self.verdict = Verdict::Fail;
        }
        self.checks.push(check);
    }

    /// Records a scalar condition as an identity check.
    pub fn require(&mut self, name: &str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let holds = expected == actual;
        self.add_check(IdentityCheck {
            name: name.to_string(),
            lhs: actual,
            rhs: expected,
            holds,
            difference: if holds { String::new() } else { "values differ".into() },
        });
    }

    /// Marks the report failed because the computation itself errored.
    pub fn fail_with(&mut self, stage: &str, err: &Error) {
        self.mismatches.push(MismatchRecord {
            check: stage.to_string(),
            degree: match err {
                Error::NegativeDimension { degree, .. } | Error::IllDefinedDifferential { degree, .. } => Some(*degree),
                _ => None,
            },
            expected: "success".into(),
            actual: err.to_string(),
        });
        self.verdict = Verdict::Fail;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One `degree,dim` block per table, each preceded by a `# name` line.
    pub fn to_csv(&self) -> String {
        let mut s = format!("# scenario: {}\n# verdict: {}\n", self.scenario, self.verdict.as_str());
        for t in &self.tables {
            let _ = write!(s, "# table: {}\n{}", t.name, t.to_csv());
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario: {}", self.scenario);
        let _ = writeln!(s, "verdict:  {}", self.verdict.as_str());
        for a in &self.anchors {
            let _ = writeln!(s, "anchor:   {a}");
        }
        for t in &self.tables {
            let _ = writeln!(s, "\ntable {}", t.name);
            let deg: Vec<String> = t.degrees.iter().map(|d| format!("{d:>4}")).collect();
            let dim: Vec<String> = t.dims.iter().map(|d| format!("{d:>4}")).collect();
            for (dl, vl) in deg.chunks(16).zip(dim.chunks(16)) {
                let _ = writeln!(s, "  degree {}", dl.concat());
                let _ = writeln!(s, "  dim    {}", vl.concat());
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(s, "\nchecks");
            for c in &self.checks {
                let mark = if c.holds { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "  [{mark}] {}", c.name);
            }
        }
        if let Some(chart) = &self.chart {
            let _ = writeln!(s, "\n{chart}");
        }
        if !self.mismatches.is_empty() {
            let _ = writeln!(s, "\nmismatches");
            for m in &self.mismatches {
                let at = m.degree.map(|d| format!(" at degree {d}")).unwrap_or_default();
                let _ = writeln!(s, "  {}{at}: expected {}, got {}", m.check, m.expected, m.actual);
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "\nelapsed_ms: {ms}");
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}
