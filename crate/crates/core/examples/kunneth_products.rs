//! Direct products: the multiplier from the factors, checked against the
//! oracle on the product itself.
use schur_core::catalog::{compute_multiplier, Catalog, MethodChoice};
use schur_core::multiplier::Method;

fn main() {
    let cat = Catalog::builtin();
    for (id, p) in [("Phi2_1_4", 3), ("MainThm_viii", 3), ("MainThm_xvi", 2)] {
        let g = cat.load(id, p).unwrap();
        let k = compute_multiplier(&g, MethodChoice::Only(Method::Kunneth)).unwrap();
        println!("{id}: {}", k.invariants);
        for line in &k.trace {
            println!("    {line}");
        }
        match compute_multiplier(&g, MethodChoice::Only(Method::Oracle)) {
            Ok(o) => println!("    oracle agrees: {}", o.invariants == k.invariants),
            Err(e) => println!("    {e}"),
        }
    }
}
