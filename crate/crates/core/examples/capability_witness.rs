//! Checking that a group is E/Z(E) for an explicit E.
use schur_core::catalog::Catalog;
use schur_core::pcgroup::{central_quotient, iso_witness_check, structure_report};

fn main() {
    let p = 5;
    let cat = Catalog::builtin();
    let g = cat.load("Phi7_1_5", p).unwrap();
    let e = cat.load("Phi7_1_5_cover", p).unwrap();
    let s = structure_report(&e.pres).unwrap();
    println!("|E| = {p}^{}, |Z(E)| = {p}^{}, class {}", s.order_exponent, s.center.order_exponent(), s.class);
    let q = central_quotient(s.pres(), &s.center).unwrap();
    let images: Vec<_> = g
        .pres
        .names()
        .iter()
        .map(|n| q.generator(q.generator_index(n).unwrap()))
        .collect();
    println!("E/Z(E) ≅ Phi7(1^5) under the name map: {}", iso_witness_check(&g.pres, &q, &images).unwrap());
}
