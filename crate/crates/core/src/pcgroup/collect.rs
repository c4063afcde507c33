//! Collection to normal form.
//!
//! The state is a normal word; letters are multiplied onto it from a work
//! stack. Multiplying by `g_i` moves `g_i` left past the suffix
//! `s = g_{i+1}^{a_{i+1}}...g_n^{a_n}` using `s g_i = g_i s^{g_i}` with
//! `g_j^{g_i} = g_j [g_j, g_i]`, and reduces `g_i^{r_i}` by its power
//! relation. Every pushed letter has index `> i`, so nilpotent presentations
//! terminate.

use super::presentation::{NormalWord, PcPresentation, RawWord};

/// Observer for relation applications; used to track central tails when
/// computing covering groups.
pub(crate) trait TailSink {
    fn power(&mut self, i: usize, times: u64);
    fn comm(&mut self, j: usize, i: usize, times: u64);
}

pub(crate) struct NoTails;

impl TailSink for NoTails {
    #[inline]
    fn power(&mut self, _i: usize, _times: u64) {}
    #[inline]
    fn comm(&mut self, _j: usize, _i: usize, _times: u64) {}
}

impl PcPresentation {
    /// Multiplies `state` in place by the positive letters `word` (left to right).
    pub(crate) fn mul_letters<S: TailSink>(&self, state: &mut [u32], word: &[(usize, u32)], sink: &mut S) {
        let n = self.num_gens();
        let mut stack: Vec<(usize, u32)> = word.iter().rev().copied().collect();
        while let Some((i, c)) = stack.pop() {
            if c == 0 {
                continue;
            }
            let suffix_zero = state[i + 1..n].iter().all(|&a| a == 0);
            if suffix_zero {
                let r = self.orders[i] as u64;
                let total = state[i] as u64 + c as u64;
                state[i] = (total % r) as u32;
                let q = total / r;
                if q > 0 {
                    sink.power(i, q);
                    for _ in 0..q {
                        push_rev(&mut stack, &self.power[i]);
                    }
                }
                continue;
            }
            if c > 1 {
                stack.push((i, c - 1));
            }
            // one g_i past the suffix
            let mut commuting = true;
            for j in i + 1..n {
                if state[j] != 0 {
                    sink.comm(j, i, state[j] as u64);
                    if !self.comm[j][i].is_empty() {
                        commuting = false;
                    }
                }
            }
            let suffix: Vec<(usize, u32)> = (i + 1..n)
                .filter(|&j| state[j] != 0)
                .map(|j| (j, state[j]))
                .collect();
            for j in i + 1..n {
                state[j] = 0;
            }
            let overflow = state[i] + 1 == self.orders[i];
            state[i] = if overflow { 0 } else { state[i] + 1 };
            if commuting {
                push_rev(&mut stack, &suffix);
            } else {
                for &(j, a) in suffix.iter().rev() {
                    let c_ji = &self.comm[j][i];
                    if c_ji.is_empty() {
                        stack.push((j, a));
                    } else {
                        for _ in 0..a {
                            push_rev(&mut stack, c_ji);
                            stack.push((j, 1));
                        }
                    }
                }
            }
            if overflow {
                sink.power(i, 1);
                push_rev(&mut stack, &self.power[i]);
            }
        }
    }

    /// Normal form of the product `u * word`.
    pub(crate) fn mul_word_letters(&self, u: &NormalWord, word: &[(usize, u32)]) -> NormalWord {
        let mut s = u.0.clone();
        self.mul_letters(&mut s, word, &mut NoTails);
        NormalWord(s)
    }

    pub fn mul(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        self.mul_word_letters(a, &b.letters())
    }

    /// `a^k` for `k >= 0`.
    pub fn pow(&self, a: &NormalWord, mut k: u64) -> NormalWord {
        let mut result = self.identity();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Inverse by peeling off the leading generator: if `u g_d^{r-b}` is
    /// computed with `b` the leading exponent, the depth strictly grows.
    pub fn inverse(&self, a: &NormalWord) -> NormalWord {
        let mut acc = self.identity();
        let mut cur = a.clone();
        while let Some(d) = cur.depth() {
            let k = self.orders[d] - cur.0[d];
            cur = self.mul_word_letters(&cur, &[(d, k)]);
            acc = self.mul_word_letters(&acc, &[(d, k)]);
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        let ba = self.mul(b, a);
        let ab = self.mul(a, b);
        self.mul(&self.inverse(&ba), &ab)
    }

    /// `b^-1 a b`.
    pub fn conjugate(&self, a: &NormalWord, b: &NormalWord) -> NormalWord {
        let ab = self.mul(a, b);
        self.mul(&self.inverse(b), &ab)
    }

    /// Order of an element (a power of `p`).
    pub fn element_order(&self, a: &NormalWord) -> u64 {
        let mut k = 1u64;
        let mut x = a.clone();
        while !x.is_identity() {
            x = self.pow(&x, self.prime);
            k *= self.prime;
        }
        k
    }

    /// Collects a word of signed generator letters to its normal form.
    pub fn collect_signed(&self, word: &RawWord) -> NormalWord {
        let mut state = self.identity();
        for &(g, e) in word {
            if e >= 0 {
                let r = self.orders[g] as i64;
                // g^r is a higher-index word; reduce large exponents first
                let q = e / r;
                let rem = (e % r) as u32;
                if q > 0 {
                    let gr = self.tail_word(&self.power[g]);
                    let t = self.pow(&gr, q as u64);
                    state = self.mul(&state, &t);
                }
                state = self.mul_word_letters(&state, &[(g, rem)]);
            } else {
                let inv = self.inverse(&self.generator(g));
                let t = self.pow(&inv, e.unsigned_abs());
                state = self.mul(&state, &t);
            }
        }
        state
    }

    /// Normal form of a word given as `(generator, signed exponent)` letters.
    pub fn collect(&self, word: &[(usize, i64)]) -> NormalWord {
        self.collect_signed(&word.to_vec())
    }
}

fn push_rev(stack: &mut Vec<(usize, u32)>, w: &[(usize, u32)]) {
    stack.extend(w.iter().rev().copied());
}
