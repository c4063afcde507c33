use schur_core::catalog::{compute_multiplier, run_entry, Catalog, MethodChoice, Status};
use schur_core::hopf::multiplier_via_tails;
use schur_core::multiplier::Method;
use schur_core::pcgroup::abelianization;

#[test]
fn expectations_hold_at_small_primes() {
    let cat = Catalog::builtin();
    for e in cat.entries() {
        for p in [2, 3, 5] {
            if !e.constraint.admits(p) || e.expects.is_empty() {
                continue;
            }
            let choice = if e.squeeze.is_some() {
                MethodChoice::Only(Method::Ledger)
            } else {
                MethodChoice::Auto
            };
            let r = run_entry(cat, e, p, choice);
            assert!(
                r.status.is_pass() || r.status == Status::Skipped,
                "{} at p = {p}: {:?}",
                e.id,
                r.trace
            );
        }
    }
}

#[test]
fn methods_agree_on_small_catalog_groups() {
    let cat = Catalog::builtin();
    for e in cat.entries().iter().filter(|e| e.disabled.is_none()) {
        for p in [2, 3] {
            if !e.constraint.admits(p) {
                continue;
            }
            let g = cat.instantiate(e, p).unwrap();
            if g.pres.order_u64().map_or(true, |n| n > 81) {
                continue;
            }
            let o = compute_multiplier(&g, MethodChoice::Only(Method::Oracle)).unwrap();
            let t = multiplier_via_tails(&g.pres).unwrap();
            assert_eq!(o.invariants, t.multiplier, "{} at p = {p}", e.id);
            let ab = abelianization(&g.pres);
            let h2 = o.h2.as_ref().expect("oracle keeps H^2");
            assert_eq!(h2.h2.log_order(p), o.invariants.log_order(p) + ab.log_order(p), "{}", e.id);
        }
    }
}
