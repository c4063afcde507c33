//! The multiplier from the consistency relations of a presentation with free
//! central tails. Works beyond the oracle cap.
use schur_core::catalog::Catalog;
use schur_core::hopf::multiplier_via_tails;

fn main() {
    for (id, p) in [("Phi2_31", 11), ("Phi3_1_4", 13), ("Phi7_1_5", 5), ("Xvii_X", 2)] {
        let g = Catalog::builtin().load(id, p).unwrap();
        let t = multiplier_via_tails(&g.pres).unwrap();
        println!(
            "{id:<9} p = {p:<3} |G| = {p}^{}  M = {}  ({} tails, {} relations, free rank {})",
            g.order_exponent(),
            t.multiplier,
            t.tails,
            t.relations,
            t.free_rank
        );
    }
}
