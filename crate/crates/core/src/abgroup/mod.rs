//! Finite abelian groups in invariant-factor form.
//!
//! Orders and invariant factors are kept as prime-power factorizations so that
//! groups like `Z_5^{22}` never pass through a machine integer.

mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use snf::{snf, IntMatrix};

/// `p^e` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

/// A positive integer as a product of prime powers (ascending primes, `e > 0`).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factored(pub Vec<PrimePower>);

impl Factored {
    pub fn one() -> Self {
        Factored(Vec::new())
    }

    pub fn prime_power(p: u64, e: u32) -> Self {
        if e == 0 {
            Factored::one()
        } else {
            Factored(vec![PrimePower { p, e }])
        }
    }

    /// Trial-division factorization; `n` must be positive.
    pub fn factor(n: &BigInt) -> Self {
        assert!(n.is_positive(), "cannot factor {n}");
        let mut n = n.clone();
        let mut out = Vec::new();
        let mut d = BigInt::from(2u32);
        while &d * &d <= n {
            let mut e = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            if e > 0 {
                out.push(PrimePower {
                    p: d.to_u64().expect("prime factor fits in u64"),
                    e,
                });
            }
            d += 1u32;
        }
        if !n.is_one() {
            out.push(PrimePower {
                p: n.to_u64().expect("prime factor fits in u64"),
                e: 1,
            });
        }
        Factored(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0.iter().find(|q| q.p == p).map_or(0, |q| q.e)
    }

    pub fn to_bigint(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc * BigInt::from(q.p).pow(q.e))
    }

    pub fn divides(&self, other: &Factored) -> bool {
        self.0.iter().all(|q| other.exponent_of(q.p) >= q.e)
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Finite abelian group, canonically stored by its primary decomposition.
///
/// `primary[p]` lists the exponents of the cyclic `p`-parts in descending
/// order; the invariant factors are recovered from it on demand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    primary: BTreeMap<u64, Vec<u32>>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    /// `Z_{p^e}`.
    pub fn cyclic(p: u64, e: u32) -> Self {
        AbelianGroup::from_elementary_divisors([PrimePower { p, e }])
    }

    /// `Z_p^{(k)}`.
    pub fn elementary(p: u64, k: usize) -> Self {
        AbelianGroup::from_elementary_divisors(std::iter::repeat(PrimePower { p, e: 1 }).take(k))
    }

    /// Direct sum of cyclic groups of the given prime-power orders; `e = 0`
    /// entries are dropped.
    pub fn from_elementary_divisors(parts: impl IntoIterator<Item = PrimePower>) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for q in parts {
            if q.e > 0 {
                primary.entry(q.p).or_default().push(q.e);
            }
        }
        for v in primary.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        AbelianGroup { primary }
    }

    /// Direct sum of cyclic groups `Z_{d}`; `d = 1` entries are dropped.
    /// Panics on `d = 0` (infinite cyclic factors are out of scope).
    pub fn from_cyclic_orders<'a>(orders: impl IntoIterator<Item = &'a BigInt>) -> Self {
        let mut parts = Vec::new();
        for d in orders {
            assert!(!d.is_zero(), "infinite cyclic factor");
            parts.extend(Factored::factor(&d.abs()).0);
        }
        AbelianGroup::from_elementary_divisors(parts)
    }

    /// Cokernel of an integer relation matrix (rows are relations), which
    /// must have finite cokernel.
    pub fn from_relations(m: &IntMatrix) -> Self {
        let diag = snf(m);
        assert!(
            diag.iter().all(|d| !d.is_zero()) && diag.len() == m.cols(),
            "relation matrix has infinite cokernel"
        );
        AbelianGroup::from_cyclic_orders(diag.iter())
    }

    /// All cyclic prime-power parts, primes ascending, exponents descending.
    pub fn elementary_divisors(&self) -> Vec<PrimePower> {
        self.primary
            .iter()
            .flat_map(|(&p, es)| es.iter().map(move |&e| PrimePower { p, e }))
            .collect()
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k`, each `> 1`.
    pub fn invariant_factors(&self) -> Vec<Factored> {
        let k = self.primary.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![Factored::one(); k];
        for (&p, es) in &self.primary {
            // largest exponent goes to the last invariant factor
            for (i, &e) in es.iter().enumerate() {
                out[k - 1 - i].0.push(PrimePower { p, e });
            }
        }
        out
    }

    pub fn order(&self) -> Factored {
        Factored(
            self.primary
                .iter()
                .map(|(&p, es)| PrimePower {
                    p,
                    e: es.iter().sum(),
                })
                .filter(|q| q.e > 0)
                .collect(),
        )
    }

    /// `log_p |A|`, counting only the `p`-part.
    pub fn log_order(&self, p: u64) -> u32 {
        self.primary.get(&p).map_or(0, |es| es.iter().sum())
    }

    /// Number of invariant factors (minimal number of generators).
    pub fn rank(&self) -> usize {
        self.primary.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.primary.is_empty()
    }

    pub fn exponent(&self) -> Factored {
        Factored(
            self.primary
                .iter()
                .map(|(&p, es)| PrimePower { p, e: es[0] })
                .collect(),
        )
    }

    /// True when every cyclic part has prime order.
    pub fn is_elementary(&self) -> bool {
        self.primary.values().all(|es| es.iter().all(|&e| e == 1))
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup::from_elementary_divisors(
            self.elementary_divisors()
                .into_iter()
                .chain(other.elementary_divisors()),
        )
    }

    /// Multiset difference of primary parts; `None` when `other` is not a
    /// sub-multiset of `self`.
    pub fn checked_difference(&self, other: &AbelianGroup) -> Option<AbelianGroup> {
        let mut primary = self.primary.clone();
        for q in other.elementary_divisors() {
            let es = primary.get_mut(&q.p)?;
            let pos = es.iter().position(|&e| e == q.e)?;
            es.remove(pos);
        }
        primary.retain(|_, es| !es.is_empty());
        Some(AbelianGroup { primary })
    }

    /// `[d1,d2,...]` with every factor written as `p^e`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `A ⊗ B = ⊕ Z_{gcd(d_i, e_j)}`.
pub fn tensor(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut parts = Vec::new();
    for (p, ea) in &a.primary {
        if let Some(eb) = b.primary.get(p) {
            for &x in ea {
                for &y in eb {
                    parts.push(PrimePower { p: *p, e: x.min(y) });
                }
            }
        }
    }
    AbelianGroup::from_elementary_divisors(parts)
}

/// `∧²A = ⊕_{i<j} Z_{gcd(d_i, d_j)}`, which is `M(A)` for finite abelian `A`.
pub fn exterior_square(a: &AbelianGroup) -> AbelianGroup {
    let mut parts = Vec::new();
    for (p, es) in &a.primary {
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                parts.push(PrimePower {
                    p: *p,
                    e: es[i].min(es[j]),
                });
            }
        }
    }
    AbelianGroup::from_elementary_divisors(parts)
}

/// Multiplier of a direct product from the factors' multipliers and
/// abelianizations: `M(A×B) ≅ M(A) ⊕ M(B) ⊕ (A^ab ⊗ B^ab)`.
pub fn kunneth(
    m_a: &AbelianGroup,
    m_b: &AbelianGroup,
    a_ab: &AbelianGroup,
    b_ab: &AbelianGroup,
) -> AbelianGroup {
    m_a.direct_sum(m_b).direct_sum(&tensor(a_ab, b_ab))
}

/// gcd of two factored integers.
pub fn gcd(a: &Factored, b: &Factored) -> Factored {
    Factored(
        a.0.iter()
            .filter_map(|q| {
                let e = q.e.min(b.exponent_of(q.p));
                (e > 0).then_some(PrimePower { p: q.p, e })
            })
            .collect(),
    )
}

/// Convenience for tests and reports: group from plain cyclic orders.
pub fn from_orders(orders: &[u64]) -> AbelianGroup {
    let v: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
    AbelianGroup::from_cyclic_orders(v.iter())
}
