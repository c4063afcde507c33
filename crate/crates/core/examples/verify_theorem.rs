//! Every group of the t = 6 list at one prime.
use schur_core::catalog::{emit_report, verify_theorem, Part, ReportFormat};

fn main() {
    let p: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let part = if p == 2 { Part::Two } else { Part::Odd };
    let reports = verify_theorem(p, part).unwrap();
    print!("{}", emit_report(&reports, ReportFormat::Table));
    for r in reports.iter().filter(|r| !r.assumed.is_empty()) {
        println!("{} assumes: {}", r.group, r.assumed.join("; "));
    }
}
