//! H^2 with trivial coefficients from the Cayley table, and the multiplier it
//! determines. Respects MLAB_ORACLE_CAP.
use schur_core::catalog::Catalog;
use schur_core::oracle::{h2_trivial_coeffs, multiplier_via_oracle, oracle_cap};
use schur_core::pcgroup::{abelianization, cayley_table};

fn main() {
    println!("oracle cap: {}", oracle_cap());
    for (id, p) in [("D8", 2), ("Q8", 2), ("ES_p_p3", 3), ("Phi2_1_4", 3)] {
        let g = Catalog::builtin().load(id, p).unwrap();
        let t = cayley_table(&g.pres).unwrap();
        let n = t.order() as u64;
        let h2 = h2_trivial_coeffs(&t, n).unwrap();
        let m = multiplier_via_oracle(&g.pres).unwrap();
        println!(
            "{id:<9} H^2(G, Z_{n}) = {:<24} M(G) = {:<16} G^ab = {}  ({} unknowns, {} equations)",
            h2.h2.to_string(),
            m.invariants.to_string(),
            abelianization(&g.pres),
            h2.stats.unknowns,
            h2.stats.equations
        );
    }
}
