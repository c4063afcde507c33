//! Catalog entries computed with automatic method selection, printed as a
//! table and as machine records.
use schur_core::catalog::{emit_report, run_entry, Catalog, MethodChoice, ReportFormat};

fn main() {
    let cat = Catalog::builtin();
    let reports: Vec<_> = [("D8", 2), ("Q8", 2), ("Phi2_22", 3), ("MainThm_xii", 5), ("MainThm_vi", 3)]
        .iter()
        .map(|&(id, p)| run_entry(cat, cat.get(id).unwrap(), p, MethodChoice::Auto))
        .collect();
    print!("{}", emit_report(&reports, ReportFormat::Table));
    println!();
    print!("{}", emit_report(&reports[..1], ReportFormat::Jsonl));
}
