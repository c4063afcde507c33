//! Building a ledger by hand: rules, premises and rejected contradictions.
use schur_core::bounds::*;
use schur_core::catalog::{Catalog, MethodChoice};

fn main() {
    let s = Subject::new(Catalog::builtin().load("ES_p_p5", 3).unwrap());
    let mut l = Ledger::new(3);
    rule_green(&mut l, &s).unwrap();
    let e = rule_extraspecial(&mut l, &s).unwrap();
    apply_compute_quotient(&mut l, &s, "center", MethodChoice::Auto).unwrap();
    rule_jones(&mut l, &s, "center").unwrap();
    print!("{l}");

    let bogus = NewFact::new(s.name.clone(), FactKind::Lower, 9, Provenance::Assumed("wishful".into()));
    println!("adding lower 3^9: {}", l.add(bogus).unwrap_err());
    println!("derivation of #{e}:");
    for id in l.closure(e) {
        println!("    {}", l.render(id));
    }
}
