use serde::Serialize;

use super::collect::{NoTails, TailSink};
use super::presentation::{NormalWord, PcPresentation};

/// One overlap whose two collections disagreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFailure {
    pub overlap: String,
    pub left: NormalWord,
    pub right: NormalWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConsistencyReport {
    Pass { order_exponent: u32 },
    Fail(Vec<OverlapFailure>),
}

impl ConsistencyReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, ConsistencyReport::Pass { .. })
    }

    pub fn first_failure(&self) -> Option<&OverlapFailure> {
        match self {
            ConsistencyReport::Pass { .. } => None,
            ConsistencyReport::Fail(v) => v.first(),
        }
    }
}

type Letters = Vec<(usize, u32)>;

/// `(x) y` collects `x` then keeps multiplying by `y`; `x (y)` collects `y`
/// on its own and multiplies the normal form of `x` by the result.
#[derive(Clone, Debug)]
pub(crate) enum Side {
    Left(Letters, Letters),
    Right(Letters, Letters),
}

#[derive(Clone, Debug)]
pub(crate) struct Overlap {
    pub name: String,
    pub left: Side,
    pub right: Side,
}

impl PcPresentation {
    /// The full overlap family: `k > j > i` triples, the two power/generator
    /// associations for `j > i`, and `g_i^{r_i+1}`.
    pub(crate) fn overlaps(&self) -> Vec<Overlap> {
        let n = self.num_gens();
        let name = |i: usize| self.names[i].as_str();
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    out.push(Overlap {
                        name: format!("({} {}) {}", name(k), name(j), name(i)),
                        left: Side::Left(vec![(k, 1), (j, 1)], vec![(i, 1)]),
                        right: Side::Right(vec![(k, 1)], vec![(j, 1), (i, 1)]),
                    });
                }
            }
        }
        for j in 0..n {
            let rj = self.orders[j];
            for i in 0..j {
                let ri = self.orders[i];
                out.push(Overlap {
                    name: format!("({}^{}) {}", name(j), rj, name(i)),
                    left: Side::Left(vec![(j, rj)], vec![(i, 1)]),
                    right: Side::Right(vec![(j, rj - 1)], vec![(j, 1), (i, 1)]),
                });
                out.push(Overlap {
                    name: format!("{} ({}^{})", name(j), name(i), ri),
                    left: Side::Right(vec![(j, 1)], vec![(i, ri)]),
                    right: Side::Left(vec![(j, 1), (i, 1)], vec![(i, ri - 1)]),
                });
            }
        }
        for i in 0..n {
            let ri = self.orders[i];
            out.push(Overlap {
                name: format!("({}^{}) {}", name(i), ri, name(i)),
                left: Side::Left(vec![(i, ri)], vec![(i, 1)]),
                right: Side::Right(vec![(i, 1)], vec![(i, ri)]),
            });
        }
        out
    }

    pub(crate) fn eval_side<S: TailSink>(&self, side: &Side, sink: &mut S) -> NormalWord {
        let n = self.num_gens();
        let mut state = vec![0u32; n];
        match side {
            Side::Left(x, y) => {
                self.mul_letters(&mut state, x, sink);
                self.mul_letters(&mut state, y, sink);
            }
            Side::Right(x, y) => {
                let mut inner = vec![0u32; n];
                self.mul_letters(&mut inner, y, sink);
                let inner = NormalWord(inner).letters();
                self.mul_letters(&mut state, x, sink);
                self.mul_letters(&mut state, &inner, sink);
            }
        }
        NormalWord(state)
    }
}

/// Runs every overlap test by collecting both sides. A pass certifies that
/// the group has order exactly `∏ r_i`.
pub fn check_consistency(pres: &PcPresentation) -> ConsistencyReport {
    let mut failures = Vec::new();
    for ov in pres.overlaps() {
        let left = pres.eval_side(&ov.left, &mut NoTails);
        let right = pres.eval_side(&ov.right, &mut NoTails);
        if left != right {
            failures.push(OverlapFailure {
                overlap: ov.name,
                left,
                right,
            });
        }
    }
    if failures.is_empty() {
        ConsistencyReport::Pass {
            order_exponent: pres.order_exponent(),
        }
    } else {
        ConsistencyReport::Fail(failures)
    }
}
