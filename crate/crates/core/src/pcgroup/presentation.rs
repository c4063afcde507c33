use std::fmt;

use serde::{Deserialize, Serialize};

use super::PcError;

/// Sparse normal-form word: `(generator, exponent)` pairs with strictly
/// increasing generators and exponents in `1..r`.
pub type Tail = Vec<(usize, u32)>;

/// Exponent vector `(a_1, ..., a_n)` with `0 <= a_i < r_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalWord(pub Vec<u32>);

impl NormalWord {
    pub fn identity(n: usize) -> Self {
        NormalWord(vec![0; n])
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Index of the first nonzero exponent.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&a| a != 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn letters(&self) -> Tail {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| (i, a))
            .collect()
    }
}

/// A finite p-group given by a power-commutator presentation.
///
/// Generators `g_1..g_n` have relative orders `p^{e_i}`. Each power relation
/// `g_i^{r_i} = t_i` and commutator relation `[g_j, g_i] = c_{ji}` (`i < j`)
/// has a tail in normal form using only generators of index `> i`
/// (respectively `> j`). Commutators are `[x, y] = x^-1 y^-1 x y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    pub(crate) prime: u64,
    pub(crate) names: Vec<String>,
    pub(crate) rel_exp: Vec<u32>,
    pub(crate) orders: Vec<u32>,
    pub(crate) power: Vec<Tail>,
    /// `comm[j][i]` for `i < j`.
    pub(crate) comm: Vec<Vec<Tail>>,
    pub(crate) label: Option<String>,
}

/// Relation tail before normalization: signed exponents, any order, but
/// only generators of higher index than the relation's left-hand side.
pub type RawWord = Vec<(usize, i64)>;

/// Incremental construction of a [`PcPresentation`] by generator name.
#[derive(Clone, Debug)]
pub struct PcBuilder {
    prime: u64,
    names: Vec<String>,
    rel_exp: Vec<u32>,
    powers: Vec<(usize, RawWord)>,
    comms: Vec<(usize, usize, RawWord)>,
    label: Option<String>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl PcBuilder {
    pub fn new(prime: u64) -> Self {
        PcBuilder {
            prime,
            names: Vec::new(),
            rel_exp: Vec::new(),
            powers: Vec::new(),
            comms: Vec::new(),
            label: None,
        }
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Appends a generator of relative order `p^rel_exp`.
    pub fn gen(mut self, name: impl Into<String>, rel_exp: u32) -> Self {
        self.names.push(name.into());
        self.rel_exp.push(rel_exp);
        self
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn pow_raw(mut self, gen: usize, tail: RawWord) -> Self {
        self.powers.push((gen, tail));
        self
    }

    pub fn comm_raw(mut self, j: usize, i: usize, tail: RawWord) -> Self {
        self.comms.push((j, i, tail));
        self
    }

    /// `g^{r} = tail`, words given by generator name.
    pub fn pow(self, gen: &str, tail: &[(&str, i64)]) -> Self {
        let g = self.generator_index(gen).unwrap_or(usize::MAX);
        let t = self.resolve(tail);
        self.pow_raw(g, t)
    }

    /// `[gj, gi] = tail`, words given by generator name.
    pub fn comm(self, gj: &str, gi: &str, tail: &[(&str, i64)]) -> Self {
        let j = self.generator_index(gj).unwrap_or(usize::MAX);
        let i = self.generator_index(gi).unwrap_or(usize::MAX);
        let t = self.resolve(tail);
        self.comm_raw(j, i, t)
    }

    fn resolve(&self, word: &[(&str, i64)]) -> RawWord {
        word.iter()
            .map(|(n, e)| (self.generator_index(n).unwrap_or(usize::MAX), *e))
            .collect()
    }

    pub fn build(self) -> Result<PcPresentation, PcError> {
        let p = self.prime;
        if !is_prime(p) {
            return Err(PcError::NotPrime(p));
        }
        let n = self.names.len();
        for (k, name) in self.names.iter().enumerate() {
            if self.names[..k].contains(name) {
                return Err(PcError::DuplicateGenerator(name.clone()));
            }
        }
        let mut orders = Vec::with_capacity(n);
        for (name, &e) in self.names.iter().zip(&self.rel_exp) {
            if e == 0 {
                return Err(PcError::BadRelativeOrder(name.clone()));
            }
            let r = p
                .checked_pow(e)
                .filter(|&r| r <= u32::MAX as u64)
                .ok_or_else(|| PcError::BadRelativeOrder(name.clone()))?;
            orders.push(r as u32);
        }
        let check_word = |lhs: usize, w: &RawWord, what: &str| -> Result<(), PcError> {
            for &(g, _) in w {
                if g >= n {
                    return Err(PcError::UnknownGenerator(format!("in {what}")));
                }
                if g <= lhs {
                    return Err(PcError::TailOrder(what.to_string()));
                }
            }
            Ok(())
        };
        let mut raw_power: Vec<Option<RawWord>> = vec![None; n];
        for (g, w) in self.powers {
            if g >= n {
                return Err(PcError::UnknownGenerator("power relation".into()));
            }
            let what = format!("{}^{} relation", self.names[g], orders[g]);
            check_word(g, &w, &what)?;
            if raw_power[g].replace(w).is_some() {
                return Err(PcError::DuplicateRelation(what));
            }
        }
        let mut raw_comm: Vec<Vec<Option<RawWord>>> = (0..n).map(|j| vec![None; j]).collect();
        for (j, i, w) in self.comms {
            if j >= n || i >= n {
                return Err(PcError::UnknownGenerator("commutator relation".into()));
            }
            let what = format!("[{}, {}] relation", self.names[j], self.names[i]);
            if j <= i {
                return Err(PcError::TailOrder(what));
            }
            check_word(j, &w, &what)?;
            if raw_comm[j][i].replace(w).is_some() {
                return Err(PcError::DuplicateRelation(what));
            }
        }
        let mut pres = PcPresentation {
            prime: p,
            names: self.names,
            rel_exp: self.rel_exp,
            orders,
            power: vec![Vec::new(); n],
            comm: (0..n).map(|j| vec![Vec::new(); j]).collect(),
            label: self.label,
        };
        // Normalize tails from the top: relations with left-hand index j
        // only need relations among generators > j, which are final by then.
        for j in (0..n).rev() {
            if let Some(w) = raw_power[j].take() {
                pres.power[j] = pres.collect_signed(&w).letters();
            }
            for i in 0..j {
                if let Some(w) = raw_comm[j][i].take() {
                    pres.comm[j][i] = pres.collect_signed(&w).letters();
                }
            }
        }
        Ok(pres)
    }
}

impl PcPresentation {
    /// The trivial group on zero generators.
    pub fn trivial(prime: u64) -> Result<Self, PcError> {
        PcBuilder::new(prime).build()
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Relative orders `r_i`.
    pub fn relative_orders(&self) -> &[u32] {
        &self.orders
    }

    /// `log_p` of the relative orders.
    pub fn relative_exponents(&self) -> &[u32] {
        &self.rel_exp
    }

    /// `n` with `|G| = p^n` (valid once the presentation is consistent).
    pub fn order_exponent(&self) -> u32 {
        self.rel_exp.iter().sum()
    }

    /// `|G|` as a machine integer, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.prime.checked_pow(self.order_exponent())
    }

    pub fn power_tail(&self, i: usize) -> &Tail {
        &self.power[i]
    }

    /// Tail of `[g_j, g_i]`, `i < j`.
    pub fn comm_tail(&self, j: usize, i: usize) -> &Tail {
        &self.comm[j][i]
    }

    pub fn identity(&self) -> NormalWord {
        NormalWord::identity(self.num_gens())
    }

    pub fn generator(&self, i: usize) -> NormalWord {
        let mut w = self.identity();
        w.0[i] = 1;
        w
    }

    pub fn tail_word(&self, t: &Tail) -> NormalWord {
        let mut w = self.identity();
        for &(g, e) in t {
            w.0[g] = e;
        }
        w
    }

    /// True when every relative order is `p`.
    pub fn is_refined(&self) -> bool {
        self.rel_exp.iter().all(|&e| e == 1)
    }

    /// Abelian when every commutator tail is trivial.
    pub fn is_abelian_presentation(&self) -> bool {
        self.comm.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    /// Renders a normal word as `a^2*b`; identity as `1`.
    pub fn format_word(&self, w: &NormalWord) -> String {
        let parts: Vec<String> = w
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                if a == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], a)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    fn format_tail(&self, t: &Tail) -> String {
        self.format_word(&self.tail_word(t))
    }

    /// Mixed-radix index with `g_1` most significant; identity is 0.
    pub fn word_index(&self, w: &NormalWord) -> usize {
        w.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&a, &r)| acc * r as usize + a as usize)
    }

    pub fn word_at(&self, mut idx: usize) -> NormalWord {
        let mut v = vec![0u32; self.num_gens()];
        for i in (0..self.num_gens()).rev() {
            let r = self.orders[i] as usize;
            v[i] = (idx % r) as u32;
            idx /= r;
        }
        NormalWord(v)
    }

    /// Iterates all normal words in index order. Only sensible for small groups.
    pub fn elements(&self) -> impl Iterator<Item = NormalWord> + '_ {
        let total = self.order_u64().unwrap_or(u64::MAX) as usize;
        (0..total).map(move |i| self.word_at(i))
    }
}

impl fmt::Display for PcPresentation {
    /// Emits the presentation in the text DSL accepted by the loader.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            writeln!(f, "# {l}")?;
        }
        writeln!(f, "prime {}", self.prime)?;
        for (name, &e) in self.names.iter().zip(&self.rel_exp) {
            if e == 1 {
                writeln!(f, "gen {name} {}", self.prime)?;
            } else {
                writeln!(f, "gen {name} {}^{e}", self.prime)?;
            }
        }
        for i in 0..self.num_gens() {
            if !self.power[i].is_empty() {
                writeln!(f, "pow {} = {}", self.names[i], self.format_tail(&self.power[i]))?;
            }
        }
        for j in 0..self.num_gens() {
            for i in 0..j {
                if !self.comm[j][i].is_empty() {
                    writeln!(
                        f,
                        "comm {} {} = {}",
                        self.names[j],
                        self.names[i],
                        self.format_tail(&self.comm[j][i])
                    )?;
                }
            }
        }
        Ok(())
    }
}
