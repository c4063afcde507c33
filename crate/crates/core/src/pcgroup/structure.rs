use num_bigint::BigInt;

use super::presentation::{NormalWord, PcPresentation};
use super::subgroup::{Refined, Subgroup};
use super::PcError;
use crate::abgroup::{AbelianGroup, IntMatrix};

/// Largest group that element enumeration (center, exponent) will walk.
pub const ENUMERATION_CAP: u64 = 1 << 20;

/// Series and characteristic subgroups of a finite p-group. All subgroups
/// live in `refined.pres`.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub refined: Refined,
    pub order_exponent: u32,
    pub class: usize,
    pub derived: Subgroup,
    pub center: Subgroup,
    /// `γ_1 = G ⊇ γ_2 ⊇ ... ⊇ γ_{c+1} = 1`.
    pub lower_central: Vec<Subgroup>,
    /// `Z_0 = 1 ⊆ Z_1 ⊆ ... ⊆ Z_c = G`.
    pub upper_central: Vec<Subgroup>,
    /// `log_p exp(G)`.
    pub exponent_log: u32,
    /// `log_p exp(Z(G))`.
    pub center_exponent_log: u32,
}

impl StructureReport {
    pub fn pres(&self) -> &PcPresentation {
        &self.refined.pres
    }

    /// `γ_c`, the last nontrivial term of the lower central series (trivial
    /// for the trivial group).
    pub fn last_lower(&self) -> &Subgroup {
        &self.lower_central[self.class.saturating_sub(1)]
    }
}

fn log_p(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x > 1 {
        x /= p;
        e += 1;
    }
    e
}

fn check_cap(pres: &PcPresentation) -> Result<(), PcError> {
    match pres.order_u64() {
        Some(n) if n <= ENUMERATION_CAP => Ok(()),
        _ => Err(PcError::TooLarge {
            prime: pres.prime(),
            exponent: pres.order_exponent(),
            cap: ENUMERATION_CAP,
        }),
    }
}

/// Center by testing every element against the generators.
pub(crate) fn center(pres: &PcPresentation) -> Result<Subgroup, PcError> {
    check_cap(pres)?;
    let gens: Vec<NormalWord> = (0..pres.num_gens()).map(|i| pres.generator(i)).collect();
    let mut found = Subgroup::trivial();
    for x in pres.elements() {
        if found.contains(pres, &x) {
            continue;
        }
        if gens.iter().all(|g| pres.mul(&x, g) == pres.mul(g, &x)) {
            let mut all = found.gens().to_vec();
            all.push(x);
            found = Subgroup::generated(pres, &all, false);
        }
    }
    Ok(found)
}

fn max_order_log(pres: &PcPresentation, elems: impl Iterator<Item = NormalWord>) -> u32 {
    elems
        .map(|x| log_p(pres.element_order(&x), pres.prime()))
        .max()
        .unwrap_or(0)
}

/// `[N, G]` for a normal subgroup `N`.
fn commutator_with_whole(pres: &PcPresentation, n: &Subgroup) -> Subgroup {
    let mut gens = Vec::new();
    for h in n.gens() {
        for i in 0..pres.num_gens() {
            gens.push(pres.commutator(h, &pres.generator(i)));
        }
    }
    Subgroup::generated(pres, &gens, true)
}

fn lower_central_series(rp: &PcPresentation, whole: Subgroup) -> Vec<Subgroup> {
    let mut series = vec![whole];
    loop {
        let next = commutator_with_whole(rp, series.last().unwrap());
        let done = next.is_trivial();
        series.push(next);
        if done {
            return series;
        }
    }
}

/// Nilpotency class, without enumerating elements.
pub fn nilpotency_class(pres: &PcPresentation) -> usize {
    let rp = pres.refined().pres;
    let whole = Subgroup::whole(&rp);
    lower_central_series(&rp, whole).len() - 1
}

/// Derived subgroup as the normal closure of generator commutators.
pub fn derived_subgroup(pres: &PcPresentation) -> Subgroup {
    let n = pres.num_gens();
    let mut gens = Vec::new();
    for j in 0..n {
        for i in 0..j {
            gens.push(pres.commutator(&pres.generator(j), &pres.generator(i)));
        }
    }
    Subgroup::generated(pres, &gens, true)
}

/// Computes the lower and upper central series, center, derived subgroup,
/// class and exponents. The presentation must be consistent.
pub fn structure_report(pres: &PcPresentation) -> Result<StructureReport, PcError> {
    check_cap(pres)?;
    let refined = pres.refined();
    let rp = &refined.pres;
    let whole = Subgroup::whole(rp);

    let lower_central = lower_central_series(rp, whole);
    let class = lower_central.len() - 1;

    let center = center(rp)?;
    let mut upper_central = vec![Subgroup::trivial()];
    while upper_central.last().unwrap().order_exponent() < rp.num_gens() as u32 {
        let zk = upper_central.last().unwrap();
        let (q, keep) = zk.quotient(rp);
        let zq = self::center(&q)?;
        let next = zk.lift(rp, &keep, &zq);
        assert!(
            next.order_exponent() > zk.order_exponent(),
            "upper central series stalled; presentation not nilpotent"
        );
        upper_central.push(next);
    }

    let derived = derived_subgroup(rp);
    let exponent_log = max_order_log(rp, rp.elements());
    let center_exponent_log = max_order_log(rp, center.elements(rp).into_iter());
    Ok(StructureReport {
        order_exponent: rp.order_exponent(),
        class,
        derived,
        center,
        lower_central,
        upper_central,
        exponent_log,
        center_exponent_log,
        refined,
    })
}

/// `G/G'` from the relation matrix of the presentation with all commutators
/// killed.
pub fn abelianization(pres: &PcPresentation) -> AbelianGroup {
    let n = pres.num_gens();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..n {
        let mut row = vec![BigInt::from(0); n];
        row[i] += BigInt::from(pres.relative_orders()[i]);
        for &(g, e) in pres.power_tail(i) {
            row[g] -= BigInt::from(e);
        }
        rows.push(row);
    }
    for j in 0..n {
        for i in 0..j {
            let t = pres.comm_tail(j, i);
            if t.is_empty() {
                continue;
            }
            let mut row = vec![BigInt::from(0); n];
            for &(g, e) in t {
                row[g] += BigInt::from(e);
            }
            rows.push(row);
        }
    }
    if n == 0 {
        return AbelianGroup::trivial();
    }
    AbelianGroup::from_relations(&IntMatrix::from_rows(&rows))
}
