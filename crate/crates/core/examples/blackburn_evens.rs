//! Multipliers of class-2 groups with elementary abelian G/G' and G' by
//! linear algebra over GF(p).
use schur_core::be::{build_be_data, multiplier_from_data, multiplier_via_be};
use schur_core::catalog::Catalog;

fn main() {
    for (id, p) in [("ES_p_p3", 3), ("ES_p_p5", 3), ("ES_p2_p5", 5), ("Phi2_211b", 7)] {
        let g = Catalog::builtin().load(id, p).unwrap();
        let data = build_be_data(&g.pres).unwrap();
        let r = multiplier_from_data(&data).unwrap();
        println!("{id} at p = {p}: M = {}", r.invariants);
        for line in &r.trace {
            println!("    {line}");
        }
    }
    let q8 = Catalog::builtin().load("Q8", 2).unwrap();
    println!("Q8: {}", multiplier_via_be(&q8.pres).unwrap_err());
}
