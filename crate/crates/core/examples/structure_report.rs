//! Central series, center, derived subgroup and exponent of a catalog group.
use schur_core::catalog::Catalog;
use schur_core::pcgroup::{abelianization, structure_report};

fn main() {
    let g = Catalog::builtin().load("Phi7_1_5", 3).unwrap();
    let s = structure_report(&g.pres).unwrap();
    println!("{}", s.pres());
    println!("|G| = 3^{}, class {}", s.order_exponent, s.class);
    let lower: Vec<u32> = s.lower_central.iter().map(|x| x.order_exponent()).collect();
    let upper: Vec<u32> = s.upper_central.iter().map(|x| x.order_exponent()).collect();
    println!("lower central orders 3^{lower:?}");
    println!("upper central orders 3^{upper:?}");
    println!("|Z(G)| = 3^{}, |G'| = 3^{}, exp = 3^{}", s.center.order_exponent(), s.derived.order_exponent(), s.exponent_log);
    println!("G/G' = {}", abelianization(&g.pres));
    for w in s.center.gens() {
        println!("center generator {}", s.pres().format_word(w));
    }
}
