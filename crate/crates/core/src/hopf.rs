//! Schur multiplier from a consistent pc presentation by adding a free
//! central tail to every relation and reading the relations among tails off
//! the overlap tests. The tail group is `R/[R,F]`; its torsion is `M(G)` and
//! its free rank equals the number of generators.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abgroup::{snf, AbelianGroup, IntMatrix};
use crate::oracle::local::{local_snf, LocalRing};
use crate::pcgroup::{PcError, PcPresentation, TailSink};

struct Counts {
    n: usize,
    v: Vec<i64>,
}

impl Counts {
    fn new(n: usize) -> Self {
        Counts {
            n,
            v: vec![0; n + n * (n - 1) / 2],
        }
    }
}

/// Power tails first, then `[g_j, g_i]` in order `(1,0), (2,0), (2,1), ...`.
fn comm_slot(n: usize, j: usize, i: usize) -> usize {
    n + j * (j - 1) / 2 + i
}

impl TailSink for Counts {
    fn power(&mut self, i: usize, times: u64) {
        self.v[i] += times as i64;
    }

    fn comm(&mut self, j: usize, i: usize, times: u64) {
        let k = comm_slot(self.n, j, i);
        self.v[k] += times as i64;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailsResult {
    pub multiplier: AbelianGroup,
    /// Free rank of the tail group; equals the number of generators.
    pub free_rank: usize,
    pub tails: usize,
    pub relations: usize,
}

/// Computes `M(G)` by the tails method.
pub fn multiplier_via_tails(pres: &PcPresentation) -> Result<TailsResult, PcError> {
    pres.ensure_consistent()?;
    let n = pres.num_gens();
    if n == 0 {
        return Ok(TailsResult {
            multiplier: AbelianGroup::trivial(),
            free_rank: 0,
            tails: 0,
            relations: 0,
        });
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for ov in pres.overlaps() {
        let mut left = Counts::new(n);
        let mut right = Counts::new(n);
        let lw = pres.eval_side(&ov.left, &mut left);
        let rw = pres.eval_side(&ov.right, &mut right);
        debug_assert_eq!(lw, rw);
        let diff: Vec<i64> = left.v.iter().zip(&right.v).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&d| d != 0) {
            rows.push(diff);
        }
    }
    let tails = n + n * (n - 1) / 2;
    let relations = rows.len();
    // The exponent of M(G) divides |G|, so working modulo p|G| separates
    // torsion from free summands while keeping entries bounded.
    let log_order: u32 = pres.relative_exponents().iter().sum();
    let ring = pres
        .prime()
        .checked_pow(log_order + 1)
        .and_then(LocalRing::new);
    let (free_rank, torsion) = match ring {
        Some(ring) => {
            let m = ring.m as i64;
            let reduced: Vec<Box<[u32]>> = rows
                .iter()
                .map(|r| r.iter().map(|&d| d.rem_euclid(m) as u32).collect())
                .collect();
            let diag = local_snf(ring, reduced, tails, None);
            let p = BigInt::from(ring.p);
            let torsion: Vec<BigInt> = diag.iter().filter(|&&v| v > 0).map(|&v| p.pow(v)).collect();
            (tails - diag.len(), torsion)
        }
        None => {
            let diag = if rows.is_empty() {
                Vec::new()
            } else {
                let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&d| BigInt::from(d)).collect()).collect();
                snf(&IntMatrix::from_rows(&big))
            };
            let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
            let free_rank = tails - nonzero.len();
            (free_rank, nonzero.into_iter().filter(|d| !d.is_one()).collect())
        }
    };
    Ok(TailsResult {
        multiplier: AbelianGroup::from_cyclic_orders(torsion.iter()),
        free_rank,
        tails,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{exterior_square, from_orders};
    use crate::pcgroup::dsl::parse;

    fn m(text: &str, p: u64) -> TailsResult {
        multiplier_via_tails(&parse(text, p).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_groups_have_trivial_multiplier() {
        let r = m("gen a p^3", 3);
        assert!(r.multiplier.is_trivial());
        assert_eq!(r.free_rank, 1);
        assert!(m("gen a 2\ngen b 2\npow a = b", 2).multiplier.is_trivial());
    }

    #[test]
    fn abelian_groups_match_exterior_square() {
        let g = m("gen a p^2\ngen b p\ngen c p", 3);
        assert_eq!(g.multiplier, exterior_square(&from_orders(&[9, 3, 3])));
        assert_eq!(g.free_rank, 3);
        let v = m("gen a 2\ngen b 2\ngen c 2\ngen d 2", 2);
        assert_eq!(v.multiplier, AbelianGroup::elementary(2, 6));
    }

    #[test]
    fn small_nonabelian_groups() {
        let d8 = m("gen b 2\ngen a 2\ngen c 2\npow b = c\ncomm a b = c", 2);
        assert_eq!(d8.multiplier, AbelianGroup::cyclic(2, 1));
        let q8 = m("gen x 2\ngen y 2\ngen z 2\npow x = z\npow y = z\ncomm y x = z", 2);
        assert!(q8.multiplier.is_trivial());
        let es = m("gen a p\ngen a1 p\ngen a2 p\ncomm a1 a = a2", 3);
        assert_eq!(es.multiplier, AbelianGroup::elementary(3, 2));
        let es2 = m("gen a p\ngen a1 p\ngen a2 p\npow a = a2\ncomm a1 a = a2", 3);
        assert!(es2.multiplier.is_trivial());
        assert_eq!(es2.free_rank, 3);
    }
}
