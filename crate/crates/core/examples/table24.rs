//! Multipliers of the order p^4 groups of the table, by the oracle at p = 3.
use schur_core::catalog::{emit_report, table24, ReportFormat};

fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let reports = table24(p).unwrap();
    print!("{}", emit_report(&reports, ReportFormat::Table));
}
