//! Second cohomology `H^2(G, Z/m)` with trivial action, computed from a
//! Cayley table, and the Schur multiplier derived from it.
//!
//! A normalized 2-cocycle is determined by its values `f(x, s)` on a
//! generating set `S`: along a spanning tree of the Cayley graph,
//! `f(x, us) = f(x, u) + f(xu, s) - f(u, s)`. Those values extend to a
//! cocycle exactly when, for every `x`, the integral of
//! `(u, s) -> f(xu, s) - f(u, s)` vanishes around each fundamental cycle.
//! [`h2_full_system`] instead solves all `(N-1)^2` unknowns against every
//! cocycle equation; it is only feasible for small groups and serves as a
//! cross-check.

pub mod local;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{AbelianGroup, PrimePower};
use crate::multiplier::{Method, MultiplierResult};
use crate::pcgroup::{abelianization, cayley_table_with_cap, CayleyTable, PcError, PcPresentation};
use local::{cokernel, local_snf, Echelon, LocalRing};

pub const DEFAULT_ORACLE_CAP: u64 = 128;
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;
pub const ORACLE_CAP_ENV: &str = "MLAB_ORACLE_CAP";

/// Largest group order the oracle accepts: `MLAB_ORACLE_CAP` if set to a
/// positive integer, else 128.
pub fn oracle_cap() -> u64 {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("coefficient modulus {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("group order {order} exceeds the oracle cap {cap} (set {ORACLE_CAP_ENV} to raise it)")]
    TooLarge { order: String, cap: u64 },
    #[error("elimination needs about {needed} bytes, over the budget of {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("internal inconsistency: G^ab = {ab} is not a summand pattern of H^2 = {h2}")]
    Difference { h2: String, ab: String },
    #[error(transparent)]
    Pc(#[from] PcError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EliminationStats {
    pub unknowns: usize,
    pub equations: usize,
    pub pivots: usize,
    pub generators: usize,
    pub kernel_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Result {
    pub modulus: u64,
    pub h2: AbelianGroup,
    pub stats: EliminationStats,
}

impl H2Result {
    pub fn log_order(&self) -> u32 {
        let p = LocalRing::new(self.modulus).map_or(0, |r| r.p as u64);
        self.h2.log_order(p)
    }
}

/// Greedy generating set: repeatedly adds the element that enlarges the
/// generated subgroup most (ties to the highest index).
pub fn greedy_generators(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut size = 1;
    while size < n {
        let best = (1..n)
            .filter(|&x| !inside[x])
            .map(|x| {
                let mut trial = gens.clone();
                trial.push(x);
                (closure(t, &trial).1, x)
            })
            .max()
            .unwrap();
        gens.push(best.1);
        let (mask, s) = closure(t, &gens);
        inside = mask;
        size = s;
    }
    gens
}

fn closure(t: &CayleyTable, gens: &[usize]) -> (Vec<bool>, usize) {
    let mut inside = vec![false; t.order()];
    inside[0] = true;
    let mut queue = vec![0usize];
    let mut count = 1;
    while let Some(u) = queue.pop() {
        for &s in gens {
            let v = t.mul(u, s);
            if !inside[v] {
                inside[v] = true;
                count += 1;
                queue.push(v);
            }
        }
    }
    (inside, count)
}

struct Tree {
    /// Signed edges `(vertex, generator slot)` from the root to each vertex.
    paths: Vec<Vec<(usize, usize)>>,
    non_tree: Vec<(usize, usize)>,
}

fn spanning_tree(t: &CayleyTable, gens: &[usize]) -> Tree {
    let n = t.order();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for (k, &s) in gens.iter().enumerate() {
            let v = t.mul(u, s);
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, k));
                order.push(v);
            }
        }
    }
    let mut paths: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &v in &order[1..] {
        let (u, k) = parent[v].unwrap();
        let mut p = paths[u].clone();
        p.push((u, k));
        paths[v] = p;
    }
    let mut non_tree = Vec::new();
    for u in 0..n {
        for (k, &s) in gens.iter().enumerate() {
            if parent[t.mul(u, s)] != Some((u, k)) {
                non_tree.push((u, k));
            }
        }
    }
    Tree { paths, non_tree }
}

fn estimate_bytes(unknowns: usize, cobound: usize) -> u64 {
    let threads = rayon::current_num_threads() as u64;
    let u = unknowns as u64;
    4 * u * u * (threads + 2) + 8 * u * cobound as u64
}

/// `H^2(G, Z/m)` for the group with Cayley table `t`, with the default
/// memory budget.
pub fn h2_trivial_coeffs(t: &CayleyTable, m: u64) -> Result<H2Result, OracleError> {
    h2_trivial_coeffs_with_budget(t, m, DEFAULT_MEMORY_BUDGET)
}

pub fn h2_trivial_coeffs_with_budget(t: &CayleyTable, m: u64, budget: u64) -> Result<H2Result, OracleError> {
    let ring = LocalRing::new(m).ok_or(OracleError::NotPrimePower(m))?;
    let n = t.order();
    if n <= 1 {
        return Ok(trivial_result(m));
    }
    let gens = greedy_generators(t);
    let ns = gens.len();
    let unknowns = (n - 1) * ns;
    let needed = estimate_bytes(unknowns, n - 1);
    if needed > budget {
        return Err(OracleError::Budget { needed, budget });
    }
    let tree = spanning_tree(t, &gens);
    let var = |x: usize, k: usize| -> Option<usize> { (x != 0).then(|| (x - 1) * ns + k) };

    let cycle_of = |u: usize, k: usize| -> Vec<(usize, usize, bool)> {
        let v = t.mul(u, gens[k]);
        let mut c: Vec<(usize, usize, bool)> = tree.paths[u].iter().map(|&(w, s)| (w, s, true)).collect();
        c.push((u, k, true));
        c.extend(tree.paths[v].iter().map(|&(w, s)| (w, s, false)));
        c
    };
    let cycles: Vec<Vec<(usize, usize, bool)>> = tree.non_tree.iter().map(|&(u, k)| cycle_of(u, k)).collect();

    let xs: Vec<usize> = (1..n).collect();
    let chunk = xs.len().div_ceil(rayon::current_num_threads().max(1) * 4).max(1);
    let echelons: Vec<Echelon> = xs
        .par_chunks(chunk)
        .map(|block| {
            let mut e = Echelon::new(ring, unknowns);
            let mut row = vec![0u32; unknowns];
            for &x in block {
                for cyc in &cycles {
                    row.iter_mut().for_each(|r| *r = 0);
                    let mut any = false;
                    for &(w, k, forward) in cyc {
                        let (plus, minus) = if forward { (1, ring.m - 1) } else { (ring.m - 1, 1) };
                        if let Some(i) = var(t.mul(x, w), k) {
                            row[i] = (row[i] + plus) % ring.m;
                            any = true;
                        }
                        if let Some(i) = var(w, k) {
                            row[i] = (row[i] + minus) % ring.m;
                            any = true;
                        }
                    }
                    if any && row.iter().any(|&r| r != 0) {
                        e.insert(row.clone());
                    } else {
                        e.inserted += 1;
                    }
                }
            }
            e
        })
        .collect();
    let mut it = echelons.into_iter();
    let mut ech = it.next().unwrap();
    for e in it {
        ech.merge(e);
    }

    let cobound: Vec<Vec<(usize, u32)>> = (1..n)
        .map(|g| {
            let mut col = vec![0u32; unknowns];
            for x in 1..n {
                for (k, &s) in gens.iter().enumerate() {
                    let i = var(x, k).unwrap();
                    let mut v = 0u32;
                    if x == g {
                        v += 1;
                    }
                    if s == g {
                        v += 1;
                    }
                    if t.mul(x, s) == g {
                        v += ring.m - 1;
                    }
                    col[i] = (col[i] + v) % ring.m;
                }
            }
            col.into_iter().enumerate().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    finish(ring, ech, unknowns, &cobound, ns)
}

/// Reference computation on all normalized cochains `f: G x G -> Z/m` and
/// every cocycle equation. Cost grows like `N^5`; meant for `N <= 32`.
pub fn h2_full_system(t: &CayleyTable, m: u64) -> Result<H2Result, OracleError> {
    let ring = LocalRing::new(m).ok_or(OracleError::NotPrimePower(m))?;
    let n = t.order();
    if n <= 1 {
        return Ok(trivial_result(m));
    }
    let unknowns = (n - 1) * (n - 1);
    let needed = estimate_bytes(unknowns, n - 1);
    if needed > DEFAULT_MEMORY_BUDGET {
        return Err(OracleError::Budget {
            needed,
            budget: DEFAULT_MEMORY_BUDGET,
        });
    }
    let var = |x: usize, y: usize| -> Option<usize> { (x != 0 && y != 0).then(|| (x - 1) * (n - 1) + (y - 1)) };
    let xs: Vec<usize> = (1..n).collect();
    let echelons: Vec<Echelon> = xs
        .par_iter()
        .map(|&x| {
            let mut e = Echelon::new(ring, unknowns);
            for y in 1..n {
                for z in 1..n {
                    let mut row = vec![0u32; unknowns];
                    let mut add = |v: Option<usize>, c: u32| {
                        if let Some(i) = v {
                            row[i] = (row[i] + c) % ring.m;
                        }
                    };
                    add(var(x, y), 1);
                    add(var(t.mul(x, y), z), 1);
                    add(var(y, z), ring.m - 1);
                    add(var(x, t.mul(y, z)), ring.m - 1);
                    if row.iter().any(|&r| r != 0) {
                        e.insert(row);
                    } else {
                        e.inserted += 1;
                    }
                }
            }
            e
        })
        .collect();
    let mut it = echelons.into_iter();
    let mut ech = it.next().unwrap();
    for e in it {
        ech.merge(e);
    }
    let cobound: Vec<Vec<(usize, u32)>> = (1..n)
        .map(|g| {
            let mut col = vec![0u32; unknowns];
            for x in 1..n {
                for y in 1..n {
                    let i = var(x, y).unwrap();
                    let v = (x == g) as u32 + (y == g) as u32 + if t.mul(x, y) == g { ring.m - 1 } else { 0 };
                    col[i] = (col[i] + v) % ring.m;
                }
            }
            col.into_iter().enumerate().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    finish(ring, ech, unknowns, &cobound, n - 1)
}

fn trivial_result(m: u64) -> H2Result {
    H2Result {
        modulus: m,
        h2: AbelianGroup::trivial(),
        stats: EliminationStats::default(),
    }
}

/// Kernel of the echelon system in Smith coordinates, then the quotient by
/// the coboundaries.
fn finish(
    ring: LocalRing,
    ech: Echelon,
    unknowns: usize,
    cobound: &[Vec<(usize, u32)>],
    generators: usize,
) -> Result<H2Result, OracleError> {
    let equations = ech.inserted;
    let pivots = ech.rank();
    let rows = ech.into_rows();
    let mut track: Vec<Vec<u32>> = vec![vec![0u32; cobound.len()]; unknowns];
    for (g, col) in cobound.iter().enumerate() {
        for &(i, v) in col {
            track[i][g] = v;
        }
    }
    let diag = local_snf(ring, rows, unknowns, Some(&mut track));
    let val_at = |i: usize| if i < diag.len() { diag[i] } else { ring.k };
    let kernel: Vec<usize> = (0..unknowns).filter(|&i| val_at(i) > 0).collect();
    let kdim = kernel.len();
    let mut rel: Vec<Box<[u32]>> = Vec::new();
    for g in 0..cobound.len() {
        let mut row = vec![0u32; kdim];
        for (c, &i) in kernel.iter().enumerate() {
            let y = track[i][g];
            let shift = ring.pow_p(ring.k - val_at(i));
            assert_eq!(y % shift, 0, "coboundary outside the cocycle module");
            row[c] = y / shift;
        }
        if row.iter().any(|&x| x != 0) {
            rel.push(row.into_boxed_slice());
        }
    }
    for (c, &i) in kernel.iter().enumerate() {
        let v = val_at(i);
        if v < ring.k {
            let mut row = vec![0u32; kdim];
            row[c] = ring.pow_p(v);
            rel.push(row.into_boxed_slice());
        }
    }
    let h2 = AbelianGroup::from_elementary_divisors(cokernel(ring, rel, kdim).into_iter().map(|e| PrimePower {
        p: ring.p as u64,
        e,
    }));
    Ok(H2Result {
        modulus: ring.m as u64,
        h2,
        stats: EliminationStats {
            unknowns,
            equations,
            pivots,
            generators,
            kernel_rank: kdim,
        },
    })
}

/// `M(G)` as the multiset difference `H^2(G, Z/|G|) - G^ab`.
pub fn multiplier_via_oracle(pres: &PcPresentation) -> Result<MultiplierResult, OracleError> {
    let cap = oracle_cap();
    let p = pres.prime();
    let order_str = format!("{}^{}", p, pres.order_exponent());
    let order = match pres.order_u64() {
        Some(o) if o <= cap => o,
        _ => return Err(OracleError::TooLarge { order: order_str, cap }),
    };
    pres.ensure_consistent()?;
    let table = cayley_table_with_cap(pres, cap)?;
    let ab = abelianization(pres);
    if order == 1 {
        return Ok(MultiplierResult::new(p, AbelianGroup::trivial(), Method::Oracle)
            .with_trace("oracle: trivial group".to_string()));
    }
    let h2 = h2_trivial_coeffs(&table, order)?;
    let m = h2.h2.checked_difference(&ab).ok_or_else(|| OracleError::Difference {
        h2: h2.h2.render(),
        ab: ab.render(),
    })?;
    let trace = format!(
        "oracle: H2(G,Z_{}^{}) = {} with G^ab = {} ({} unknowns, {} equations, {} pivots)",
        p,
        pres.order_exponent(),
        h2.h2.render(),
        ab.render(),
        h2.stats.unknowns,
        h2.stats.equations,
        h2.stats.pivots
    );
    let mut r = MultiplierResult::new(p, m, Method::Oracle).with_trace(trace);
    r.h2 = Some(h2);
    Ok(r)
}

#[cfg(test)]
mod tests;
