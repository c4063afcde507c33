//! Schur multipliers of odd-order class-2 groups with elementary abelian
//! `G/G'` and `G'`, from the bilinear data `(V, W, (,), f)`.

use serde::Serialize;
use thiserror::Error;

use crate::abgroup::{AbelianGroup, PrimePower};
use crate::multiplier::{Method, MultiplierResult};
use crate::pcgroup::{abelianization, NormalWord, PcError, PcPresentation, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeError {
    #[error("p = {0} is even")]
    EvenPrime(u64),
    #[error("nilpotency class is {0}, not 2")]
    WrongClass(usize),
    #[error("G/G' = {0} is not elementary abelian")]
    QuotientNotElementary(String),
    #[error("G' is not elementary abelian")]
    DerivedNotElementary,
    #[error("basis change is not invertible")]
    SingularBasis,
    #[error(transparent)]
    Pc(#[from] PcError),
}

/// `V = G/G'`, `W = G'` as `GF(p)` spaces with the commutator pairing and the
/// `p`-power map, plus `X = X_1 + X_2` inside `V ⊗ W` (index `a * dW + w`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeData {
    pub prime: u64,
    pub dv: usize,
    pub dw: usize,
    /// `pairing[a][b]` = W-coordinates of `(v_a, v_b)`.
    pub pairing: Vec<Vec<Vec<u32>>>,
    /// `power[a]` = W-coordinates of `f(v_a)`.
    pub power: Vec<Vec<u32>>,
    /// Echelon basis of `X`.
    pub x_basis: Vec<Vec<u32>>,
    pub x1_rank: usize,
    pub x2_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeExtensionData {
    pub dn: usize,
    pub ker_rho_dim: usize,
    pub sigma_rank: usize,
}

/// Reduced row echelon basis of a subspace of `GF(p)^n`.
#[derive(Clone, Debug)]
pub struct Span {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    pub fn new(p: u64) -> Self {
        Span {
            p: p as u32,
            rows: Vec::new(),
        }
    }

    fn inv(&self, a: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = self.p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            e >>= 1;
        }
        r as u32
    }

    /// Reduces `v` modulo the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            let f = v[*c] as u64;
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + (p - f) * r as u64) % p) as u32;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn add(&mut self, v: &[u32]) -> bool {
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let u = self.inv(v[c]) as u64;
        let p = self.p as u64;
        for x in v.iter_mut() {
            *x = (*x as u64 * u % p) as u32;
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[c] as u64;
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = ((*x as u64 + (p - f) * r as u64) % p) as u32;
                }
            }
        }
        self.rows.push((c, v));
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Basis of `{x : sum_i x_i rows[i] = 0}` over `GF(p)`.
fn left_nullspace(p: u64, rows: &[Vec<u32>], width: usize) -> Vec<Vec<u32>> {
    let n = rows.len();
    let mut span = Span::new(p);
    let mut kernel = Vec::new();
    // Augment each row with an identity block and reduce.
    let aug: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.resize(width, 0);
            v.extend((0..n).map(|j| (i == j) as u32));
            v
        })
        .collect();
    for v in &aug {
        span.add(v);
    }
    for (c, row) in &span.rows {
        if *c >= width {
            kernel.push(row[width..].to_vec());
        }
    }
    kernel
}

fn check_preconditions(pres: &PcPresentation) -> Result<(PcPresentation, Subgroup), BeError> {
    let p = pres.prime();
    if p == 2 {
        return Err(BeError::EvenPrime(p));
    }
    pres.ensure_consistent()?;
    let rp = pres.refined().pres;
    let derived = crate::pcgroup::derived_subgroup(&rp);
    if derived.is_trivial() {
        return Err(BeError::WrongClass(if rp.num_gens() == 0 { 0 } else { 1 }));
    }
    let central = derived
        .gens()
        .iter()
        .all(|h| (0..rp.num_gens()).all(|i| rp.commutator(h, &rp.generator(i)).is_identity()));
    if !central {
        return Err(BeError::WrongClass(class_of(&rp)));
    }
    let ab = abelianization(pres);
    if !ab.is_elementary() {
        return Err(BeError::QuotientNotElementary(ab.render()));
    }
    if !derived.gens().iter().all(|h| rp.pow(h, p).is_identity()) {
        return Err(BeError::DerivedNotElementary);
    }
    Ok((rp, derived))
}

fn class_of(rp: &PcPresentation) -> usize {
    crate::pcgroup::nilpotency_class(rp)
}

/// Builds the data on the standard basis of `V` (images of the generators
/// outside `G'`).
pub fn build_be_data(pres: &PcPresentation) -> Result<BeData, BeError> {
    build_be_data_with_basis(pres, None)
}

/// As [`build_be_data`], with `V`'s basis given by the rows of `basis` in
/// standard coordinates.
pub fn build_be_data_with_basis(pres: &PcPresentation, basis: Option<&[Vec<u32>]>) -> Result<BeData, BeError> {
    let (rp, derived) = check_preconditions(pres)?;
    let p = rp.prime();
    let (_, keep) = derived.quotient(&rp);
    let dv = keep.len();
    let dw = derived.order_exponent() as usize;
    let std_basis: Vec<Vec<u32>> = (0..dv).map(|a| (0..dv).map(|b| (a == b) as u32).collect()).collect();
    let basis = basis.map(|b| b.to_vec()).unwrap_or(std_basis);
    let mut check = Span::new(p);
    if basis.len() != dv || !basis.iter().all(|v| v.len() == dv && check.add(v)) {
        return Err(BeError::SingularBasis);
    }
    let reps: Vec<NormalWord> = basis
        .iter()
        .map(|v| {
            v.iter().enumerate().fold(rp.identity(), |acc, (i, &e)| {
                rp.mul(&acc, &rp.pow(&rp.generator(keep[i]), e as u64))
            })
        })
        .collect();
    let wcoords = |w: &NormalWord| -> Vec<u32> { derived.coordinates(&rp, w).expect("element of G'") };
    let pairing: Vec<Vec<Vec<u32>>> = reps
        .iter()
        .map(|a| reps.iter().map(|b| wcoords(&rp.commutator(a, b))).collect())
        .collect();
    let power: Vec<Vec<u32>> = reps.iter().map(|a| wcoords(&rp.pow(a, p))).collect();
    let mut data = BeData {
        prime: p,
        dv,
        dw,
        pairing,
        power,
        x_basis: Vec::new(),
        x1_rank: 0,
        x2_rank: 0,
    };
    let mut x1 = Span::new(p);
    for a in 0..dv {
        for b in a + 1..dv {
            for c in b + 1..dv {
                x1.add(&data.jacobi(&unit(dv, a, p), &unit(dv, b, p), &unit(dv, c, p)));
            }
        }
    }
    let mut x2 = Span::new(p);
    for a in 0..dv {
        x2.add(&data.quadratic(&unit(dv, a, p)));
        for b in a + 1..dv {
            let mut v = unit(dv, a, p);
            v[b] = 1;
            x2.add(&data.quadratic(&v));
        }
    }
    let mut x = x1.clone();
    for v in x2.basis() {
        x.add(&v);
    }
    data.x1_rank = x1.dim();
    data.x2_rank = x2.dim();
    data.x_basis = x.basis();
    Ok(data)
}

fn unit(n: usize, i: usize, _p: u64) -> Vec<u32> {
    (0..n).map(|j| (i == j) as u32).collect()
}

impl BeData {
    fn pm(&self) -> u64 {
        self.prime
    }

    /// `(u, v)` for arbitrary `u, v` in `V`.
    pub fn pair(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.pm();
        let mut out = vec![0u64; self.dw];
        for a in 0..self.dv {
            for b in 0..self.dv {
                let c = u[a] as u64 * v[b] as u64 % p;
                if c != 0 {
                    for (o, &w) in out.iter_mut().zip(&self.pairing[a][b]) {
                        *o = (*o + c * w as u64) % p;
                    }
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// `f(v)`, extended linearly.
    pub fn f(&self, v: &[u32]) -> Vec<u32> {
        let p = self.pm();
        let mut out = vec![0u64; self.dw];
        for a in 0..self.dv {
            for (o, &w) in out.iter_mut().zip(&self.power[a]) {
                *o = (*o + v[a] as u64 * w as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// `v ⊗ w` in `V ⊗ W` coordinates.
    pub fn tensor(&self, v: &[u32], w: &[u32]) -> Vec<u32> {
        let p = self.pm();
        let mut out = vec![0u32; self.dv * self.dw];
        for a in 0..self.dv {
            for b in 0..self.dw {
                out[a * self.dw + b] = (v[a] as u64 * w[b] as u64 % p) as u32;
            }
        }
        out
    }

    fn add_into(&self, acc: &mut [u32], v: &[u32]) {
        let p = self.pm();
        for (x, &y) in acc.iter_mut().zip(v) {
            *x = ((*x as u64 + y as u64) % p) as u32;
        }
    }

    /// `a ⊗ (b,c) + b ⊗ (c,a) + c ⊗ (a,b)`.
    pub fn jacobi(&self, a: &[u32], b: &[u32], c: &[u32]) -> Vec<u32> {
        let mut out = self.tensor(a, &self.pair(b, c));
        self.add_into(&mut out, &self.tensor(b, &self.pair(c, a)));
        self.add_into(&mut out, &self.tensor(c, &self.pair(a, b)));
        out
    }

    /// `v ⊗ f(v)`.
    pub fn quadratic(&self, v: &[u32]) -> Vec<u32> {
        self.tensor(v, &self.f(v))
    }

    pub fn x_span(&self) -> Span {
        let mut s = Span::new(self.prime);
        for v in &self.x_basis {
            s.add(v);
        }
        s
    }

    /// `N = V⊗W/X`, `ker ρ ⊆ V∧V` and the rank of `σ̄: ker ρ -> N`.
    pub fn extension(&self) -> BeExtensionData {
        let p = self.prime;
        let dn = self.dv * self.dw - self.x_basis.len();
        let pairs: Vec<(usize, usize)> = (0..self.dv)
            .flat_map(|a| (a + 1..self.dv).map(move |b| (a, b)))
            .collect();
        let rho: Vec<Vec<u32>> = pairs.iter().map(|&(a, b)| self.pairing[a][b].clone()).collect();
        let kernel = left_nullspace(p, &rho, self.dw);
        let x = self.x_span();
        let mut image = x.clone();
        for k in &kernel {
            let mut s = vec![0u32; self.dv * self.dw];
            for (idx, &(a, b)) in pairs.iter().enumerate() {
                let c = k[idx];
                if c != 0 {
                    let term = self.tensor(&unit(self.dv, a, p), &self.f(&unit(self.dv, b, p)));
                    for (o, t) in s.iter_mut().zip(term) {
                        *o = ((*o as u64 + c as u64 * t as u64) % p) as u32;
                    }
                }
            }
            image.add(&s);
        }
        BeExtensionData {
            dn,
            ker_rho_dim: kernel.len(),
            sigma_rank: image.dim() - x.dim(),
        }
    }
}

/// `M(G) ≅ Z_{p^2}^a × Z_p^b` with `log_p |M| = dim N + dim ker ρ` and
/// `a = rank σ̄`.
pub fn multiplier_via_be(pres: &PcPresentation) -> Result<MultiplierResult, BeError> {
    multiplier_from_data(&build_be_data(pres)?)
}

pub fn multiplier_from_data(data: &BeData) -> Result<MultiplierResult, BeError> {
    let ext = data.extension();
    let log = ext.dn + ext.ker_rho_dim;
    let a = ext.sigma_rank;
    let b = log - 2 * a;
    let p = data.prime;
    let parts = std::iter::repeat(PrimePower { p, e: 2 })
        .take(a)
        .chain(std::iter::repeat(PrimePower { p, e: 1 }).take(b));
    let m = AbelianGroup::from_elementary_divisors(parts);
    let trace = format!(
        "be: dim V={}, dim W={}, dim X={} (X1 {}, X2 {}), dim N={}, dim ker rho={}, rank sigma={}",
        data.dv,
        data.dw,
        data.x_basis.len(),
        data.x1_rank,
        data.x2_rank,
        ext.dn,
        ext.ker_rho_dim,
        ext.sigma_rank
    );
    Ok(MultiplierResult::new(p, m, Method::BlackburnEvens).with_trace(trace))
}
