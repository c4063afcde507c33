use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "PASS-WITH-ASSUMPTION")]
    PassWithAssumption,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::PassWithAssumption => "PASS-WITH-ASSUMPTION",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, Status::Pass | Status::PassWithAssumption)
    }
}

/// One computed group. Field order is the machine record's key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub group: String,
    pub p: u64,
    pub n: u32,
    pub method: String,
    pub multiplier: String,
    pub t: Option<i64>,
    pub status: Status,
    pub assumed: Vec<String>,
    pub trace: Vec<String>,
    pub millis: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Jsonl,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "jsonl" | "json" => Ok(ReportFormat::Jsonl),
            other => Err(format!("unknown report format `{other}` (expected table or jsonl)")),
        }
    }
}

const HEADER: [&str; 9] = ["group", "p", "n", "method", "multiplier", "t", "status", "assumed", "millis"];

pub fn emit_report(reports: &[Report], format: ReportFormat) -> String {
    match format {
        ReportFormat::Jsonl => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serializes"));
                out.push('\n');
            }
            out
        }
        ReportFormat::Table => {
            let rows: Vec<[String; 9]> = reports
                .iter()
                .map(|r| {
                    [
                        r.group.clone(),
                        r.p.to_string(),
                        r.n.to_string(),
                        r.method.clone(),
                        r.multiplier.clone(),
                        r.t.map_or("-".into(), |t| t.to_string()),
                        r.status.as_str().to_string(),
                        r.assumed.len().to_string(),
                        r.millis.to_string(),
                    ]
                })
                .collect();
            let mut width: Vec<usize> = HEADER.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let mut out = String::new();
            let line = |cells: &[String], out: &mut String| {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c:<w$}", w = *w))
                    .collect();
                let _ = writeln!(out, "{}", parts.join("  ").trim_end());
            };
            line(&HEADER.map(String::from), &mut out);
            for row in &rows {
                line(row, &mut out);
            }
            out
        }
    }
}

/// Reads machine records back.
pub fn parse_reports(text: &str) -> Result<Vec<Report>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
