//! Subgroups of refined presentations (all relative orders `p`) given by
//! induced generating sequences.
//!
//! With tails in higher indices the series `G_k = <g_k, ..., g_n>` is
//! central, so the commutator of elements of depths `a < b` lies in
//! `G_{b+1}`; the closure below relies on this.

use super::presentation::{NormalWord, PcBuilder, PcPresentation, RawWord};

/// A presentation with every relative order `p`, plus the digit map from
/// the original generators.
#[derive(Clone, Debug)]
pub struct Refined {
    pub pres: PcPresentation,
    /// `base[i]` is the first refined generator for original generator `i`.
    base: Vec<usize>,
    rel_exp: Vec<u32>,
    prime: u64,
}

impl Refined {
    pub fn to_refined(&self, w: &NormalWord) -> NormalWord {
        let mut v = vec![0u32; self.pres.num_gens()];
        for (i, &a) in w.0.iter().enumerate() {
            let mut a = a as u64;
            for k in 0..self.rel_exp[i] as usize {
                v[self.base[i] + k] = (a % self.prime) as u32;
                a /= self.prime;
            }
        }
        NormalWord(v)
    }

    pub fn from_refined(&self, w: &NormalWord) -> NormalWord {
        let mut out = vec![0u32; self.base.len()];
        for i in 0..self.base.len() {
            let mut a = 0u64;
            for k in (0..self.rel_exp[i] as usize).rev() {
                a = a * self.prime + w.0[self.base[i] + k] as u64;
            }
            out[i] = a as u32;
        }
        NormalWord(out)
    }
}

impl PcPresentation {
    /// Splits every generator of relative order `p^e` into `g, g^p, ...,
    /// g^{p^{e-1}}`. The group is unchanged.
    pub fn refined(&self) -> Refined {
        let p = self.prime;
        let n = self.num_gens();
        let mut base = Vec::with_capacity(n);
        let mut b = PcBuilder::new(p);
        let mut count = 0;
        for i in 0..n {
            base.push(count);
            for k in 0..self.rel_exp[i] {
                let name = if k == 0 {
                    self.names[i].clone()
                } else {
                    format!("{}_p{}", self.names[i], k)
                };
                b = b.gen(name, 1);
                count += 1;
            }
        }
        if let Some(l) = &self.label {
            b = b.label(l.clone());
        }
        let digits = |w: &NormalWord| -> RawWord {
            let mut out = Vec::new();
            for (i, &a) in w.0.iter().enumerate() {
                let mut a = a as u64;
                for k in 0..self.rel_exp[i] as usize {
                    let d = (a % p) as i64;
                    if d != 0 {
                        out.push((base[i] + k, d));
                    }
                    a /= p;
                }
            }
            out
        };
        for i in 0..n {
            let e = self.rel_exp[i] as usize;
            for k in 0..e {
                let g = base[i] + k;
                if k + 1 < e {
                    b = b.pow_raw(g, vec![(g + 1, 1)]);
                } else {
                    let t = self.tail_word(&self.power[i]);
                    b = b.pow_raw(g, digits(&t));
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if self.comm[j][i].is_empty() {
                    continue;
                }
                for l in 0..self.rel_exp[j] {
                    let mut x = self.identity();
                    x.0[j] = p.pow(l) as u32;
                    for k in 0..self.rel_exp[i] {
                        let mut y = self.identity();
                        y.0[i] = p.pow(k) as u32;
                        let c = self.commutator(&x, &y);
                        if !c.is_identity() {
                            b = b.comm_raw(base[j] + l as usize, base[i] + k as usize, digits(&c));
                        }
                    }
                }
            }
        }
        let pres = b
            .build()
            .expect("refinement of a valid presentation is valid");
        Refined {
            pres,
            base,
            rel_exp: self.rel_exp.clone(),
            prime: p,
        }
    }
}

/// Subgroup of a refined presentation, stored as an induced generating
/// sequence: one element per depth, leading exponent 1, depths increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    gens: Vec<NormalWord>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { gens: Vec::new() }
    }

    /// The whole group.
    pub fn whole(pres: &PcPresentation) -> Self {
        debug_assert!(pres.is_refined());
        Subgroup {
            gens: (0..pres.num_gens()).map(|i| pres.generator(i)).collect(),
        }
    }

    /// Subgroup generated by `gens` (normal closure if `normal`).
    pub fn generated(pres: &PcPresentation, gens: &[NormalWord], normal: bool) -> Self {
        debug_assert!(pres.is_refined(), "subgroups need a refined presentation");
        let n = pres.num_gens();
        let p = pres.prime();
        let mut table: Vec<Option<NormalWord>> = vec![None; n];
        let mut queue: Vec<NormalWord> = gens.to_vec();
        while let Some(w) = queue.pop() {
            let w = sift_right(pres, &table, w);
            let Some(d) = w.depth() else { continue };
            let lead = w.0[d] as u64;
            let w = pres.pow(&w, inv_mod(lead, p));
            queue.push(pres.pow(&w, p));
            for h in table.iter().flatten() {
                queue.push(pres.commutator(&w, h));
            }
            if normal {
                for i in 0..n {
                    queue.push(pres.commutator(&w, &pres.generator(i)));
                }
            }
            table[d] = Some(w);
        }
        Subgroup {
            gens: table.into_iter().flatten().collect(),
        }
    }

    pub fn gens(&self) -> &[NormalWord] {
        &self.gens
    }

    pub fn depths(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.depth().unwrap()).collect()
    }

    /// `log_p |H|`.
    pub fn order_exponent(&self) -> u32 {
        self.gens.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    fn table(&self, n: usize) -> Vec<Option<NormalWord>> {
        let mut t = vec![None; n];
        for g in &self.gens {
            t[g.depth().unwrap()] = Some(g.clone());
        }
        t
    }

    pub fn contains(&self, pres: &PcPresentation, w: &NormalWord) -> bool {
        sift_right(pres, &self.table(pres.num_gens()), w.clone()).is_identity()
    }

    pub fn is_subgroup_of(&self, pres: &PcPresentation, other: &Subgroup) -> bool {
        self.gens.iter().all(|g| other.contains(pres, g))
    }

    /// Exponents `e` with `w = h_1^{e_1} h_2^{e_2} ...`; `None` if `w` is
    /// not in the subgroup.
    pub fn coordinates(&self, pres: &PcPresentation, w: &NormalWord) -> Option<Vec<u32>> {
        let p = pres.prime() as u32;
        let mut cur = w.clone();
        let mut coords = vec![0u32; self.gens.len()];
        for (k, h) in self.gens.iter().enumerate() {
            let d = h.depth().unwrap();
            if cur.depth().is_some_and(|cd| cd < d) {
                return None;
            }
            let e = cur.0[d];
            if e != 0 {
                let hinv = pres.inverse(&pres.pow(h, e as u64));
                cur = pres.mul(&hinv, &cur);
                coords[k] = e % p;
            }
        }
        cur.is_identity().then_some(coords)
    }

    /// Every element, as `∏ h_k^{e_k}`.
    pub fn elements(&self, pres: &PcPresentation) -> Vec<NormalWord> {
        let mut out = vec![pres.identity()];
        for h in self.gens.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * pres.prime() as usize);
            let mut hp = pres.identity();
            for _ in 0..pres.prime() {
                for x in &out {
                    next.push(pres.mul(&hp, x));
                }
                hp = pres.mul(&hp, h);
            }
            out = next;
        }
        out
    }

    /// True when every generator commutes with every ambient generator.
    pub fn is_central(&self, pres: &PcPresentation) -> bool {
        self.gens.iter().all(|h| {
            (0..pres.num_gens()).all(|i| {
                let g = pres.generator(i);
                pres.mul(h, &g) == pres.mul(&g, h)
            })
        })
    }

    pub fn is_normal(&self, pres: &PcPresentation) -> bool {
        self.gens.iter().all(|h| {
            (0..pres.num_gens()).all(|i| self.contains(pres, &pres.conjugate(h, &pres.generator(i))))
        })
    }

    /// Intersection by enumerating the smaller subgroup.
    pub fn intersection(&self, pres: &PcPresentation, other: &Subgroup) -> Subgroup {
        let (small, big) = if self.gens.len() <= other.gens.len() {
            (self, other)
        } else {
            (other, self)
        };
        let inside: Vec<NormalWord> = small
            .elements(pres)
            .into_iter()
            .filter(|x| big.contains(pres, x))
            .collect();
        Subgroup::generated(pres, &inside, false)
    }

    /// Canonical representative of `w N` (zero exponents at the depths of
    /// this subgroup), assuming this subgroup is normal.
    pub fn canonical_rep(&self, pres: &PcPresentation, w: &NormalWord) -> NormalWord {
        let p = pres.prime();
        let mut cur = w.clone();
        for h in &self.gens {
            let d = h.depth().unwrap();
            let e = cur.0[d] as u64;
            if e != 0 {
                cur = pres.mul(&cur, &pres.pow(h, p - e));
            }
        }
        cur
    }

    /// Pc presentation of the subgroup itself on its induced generators.
    pub fn presentation(&self, pres: &PcPresentation) -> PcPresentation {
        let p = pres.prime();
        let mut b = PcBuilder::new(p);
        for k in 0..self.gens.len() {
            b = b.gen(format!("h{}", k + 1), 1);
        }
        let raw = |coords: Vec<u32>| -> RawWord {
            coords
                .into_iter()
                .enumerate()
                .filter(|(_, e)| *e != 0)
                .map(|(k, e)| (k, e as i64))
                .collect()
        };
        for (k, h) in self.gens.iter().enumerate() {
            let hp = pres.pow(h, p);
            let c = self.coordinates(pres, &hp).expect("closed under powers");
            b = b.pow_raw(k, raw(c));
            for (l, g) in self.gens.iter().enumerate().skip(k + 1) {
                let c = pres.commutator(g, h);
                let c = self.coordinates(pres, &c).expect("closed under commutators");
                b = b.comm_raw(l, k, raw(c));
            }
        }
        b.build().expect("induced presentation is polycyclic")
    }

    /// Presentation of `G/N` for this (normal) subgroup `N`, with the map
    /// from ambient normal words to quotient normal words.
    pub fn quotient(&self, pres: &PcPresentation) -> (PcPresentation, Vec<usize>) {
        let depths = self.depths();
        let keep: Vec<usize> = (0..pres.num_gens()).filter(|i| !depths.contains(i)).collect();
        let restrict = |w: &NormalWord| -> RawWord {
            let w = self.canonical_rep(pres, w);
            keep.iter()
                .enumerate()
                .filter(|(_, &g)| w.0[g] != 0)
                .map(|(k, &g)| (k, w.0[g] as i64))
                .collect()
        };
        let mut b = PcBuilder::new(pres.prime());
        for &g in &keep {
            b = b.gen(pres.names()[g].clone(), 1);
        }
        for (k, &g) in keep.iter().enumerate() {
            let t = pres.tail_word(pres.power_tail(g));
            b = b.pow_raw(k, restrict(&t));
            for (l, &h) in keep.iter().enumerate().skip(k + 1) {
                let t = pres.tail_word(pres.comm_tail(h, g));
                b = b.comm_raw(l, k, restrict(&t));
            }
        }
        let q = b.build().expect("quotient by a normal subgroup is polycyclic");
        (q, keep)
    }

    /// Preimage in the ambient group of a subgroup of `G/N` (as produced by
    /// [`Subgroup::quotient`]).
    pub fn lift(&self, pres: &PcPresentation, keep: &[usize], upstairs: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        for w in &upstairs.gens {
            let mut v = pres.identity();
            for (k, &g) in keep.iter().enumerate() {
                v.0[g] = w.0[k];
            }
            gens.push(v);
        }
        Subgroup::generated(pres, &gens, false)
    }
}

fn sift_right(pres: &PcPresentation, table: &[Option<NormalWord>], mut w: NormalWord) -> NormalWord {
    let p = pres.prime();
    while let Some(d) = w.depth() {
        let Some(h) = &table[d] else { break };
        let e = w.0[d] as u64;
        w = pres.mul(&w, &pres.pow(h, p - e));
    }
    w
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and small
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}
