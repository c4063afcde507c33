//! Linear algebra over `Z/p^k`.

/// Arithmetic in `Z/p^k` with `p^k` small enough that products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalRing {
    pub p: u32,
    pub k: u32,
    pub m: u32,
}

impl LocalRing {
    /// Splits `m` as `p^k`; `None` unless `m` is a prime power `>= 2`.
    pub fn new(m: u64) -> Option<Self> {
        if m < 2 || m > u32::MAX as u64 {
            return None;
        }
        let p = (2..=m).find(|d| m % d == 0)?;
        let mut r = m;
        let mut k = 0;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        (r == 1).then_some(LocalRing {
            p: p as u32,
            k,
            m: m as u32,
        })
    }

    /// `p`-adic valuation of a nonzero residue.
    #[inline]
    pub fn val(&self, mut x: u32) -> u32 {
        debug_assert!(x != 0 && x < self.m);
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow_p(&self, e: u32) -> u32 {
        self.p.pow(e)
    }

    /// Inverse of a residue prime to `p`.
    pub fn inv(&self, a: u32) -> u32 {
        let (mut r0, mut r1) = (self.m as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "{a} is not a unit mod {}", self.m);
        t0.rem_euclid(self.m as i64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    /// `dst -= f * src` on the tail starting at `from`.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], f: u32, src: &[u32], from: usize) {
        if f == 0 {
            return;
        }
        let m = self.m as u64;
        let nf = (self.m - f) as u64;
        for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
            if s != 0 {
                *d = ((*d as u64 + nf * s as u64) % m) as u32;
            }
        }
    }

    #[inline]
    pub fn scale(&self, row: &mut [u32], u: u32, from: usize) {
        let m = self.m as u64;
        for x in row[from..].iter_mut() {
            *x = ((*x as u64 * u as u64) % m) as u32;
        }
    }

    /// Scales `row` so its entry at `c` becomes `p^v`; returns `v`.
    pub fn normalize(&self, row: &mut [u32], c: usize) -> u32 {
        let v = self.val(row[c]);
        let u = row[c] / self.pow_p(v);
        if u != 1 {
            self.scale(row, self.inv(u), c);
        }
        v
    }
}

/// Row echelon basis of a submodule of `(Z/p^k)^cols`, built one row at a
/// time. Each pivot row has zeros left of its pivot column and pivot entry
/// `p^v`.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: LocalRing,
    cols: usize,
    pivots: Vec<Option<Box<[u32]>>>,
    rank: usize,
    pub inserted: usize,
}

impl Echelon {
    pub fn new(ring: LocalRing, cols: usize) -> Self {
        Echelon {
            ring,
            cols,
            pivots: vec![None; cols],
            rank: 0,
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn insert(&mut self, row: Vec<u32>) {
        debug_assert_eq!(row.len(), self.cols);
        self.inserted += 1;
        self.insert_from(row.into_boxed_slice(), 0);
    }

    fn insert_from(&mut self, mut row: Box<[u32]>, mut c: usize) {
        let ring = self.ring;
        loop {
            while c < self.cols && row[c] == 0 {
                c += 1;
            }
            if c == self.cols {
                return;
            }
            match &mut self.pivots[c] {
                None => {
                    ring.normalize(&mut row, c);
                    self.pivots[c] = Some(row);
                    self.rank += 1;
                    return;
                }
                Some(piv) => {
                    let lead = piv[c];
                    if row[c] % lead == 0 {
                        let f = row[c] / lead;
                        ring.axpy(&mut row, f, piv, c);
                    } else {
                        ring.normalize(&mut row, c);
                        std::mem::swap(piv, &mut row);
                    }
                }
            }
        }
    }

    /// Inserts every pivot row of `other`.
    pub fn merge(&mut self, other: Echelon) {
        self.inserted += other.inserted;
        for (c, piv) in other.pivots.into_iter().enumerate() {
            if let Some(row) = piv {
                self.insert_from(row, c);
            }
        }
    }

    pub fn into_rows(self) -> Vec<Box<[u32]>> {
        self.pivots.into_iter().flatten().collect()
    }
}

/// Smith form of a dense matrix over `Z/p^k`, returning the diagonal
/// valuations (length `min(rows, cols)` at most; missing or `k` means zero).
/// Column operations are mirrored as row operations on `track` (a matrix with
/// `cols` rows), so that afterwards `track` holds `Q^{-1} track` for the
/// column transform `Q`.
pub fn local_snf(ring: LocalRing, mut a: Vec<Box<[u32]>>, cols: usize, mut track: Option<&mut Vec<Vec<u32>>>) -> Vec<u32> {
    let rows = a.len();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = ring.val(x);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        a.swap(t, i);
        if j != t {
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            if let Some(tr) = track.as_deref_mut() {
                tr.swap(t, j);
            }
        }
        let v = ring.normalize(&mut a[t], t);
        let lead = ring.pow_p(v);
        let (head, tail) = a.split_at_mut(t + 1);
        let pivot = &head[t];
        for row in tail.iter_mut() {
            if row[t] != 0 {
                let f = row[t] / lead;
                ring.axpy(row, f, pivot, t);
            }
        }
        if let Some(tr) = track.as_deref_mut() {
            for jj in t + 1..cols {
                let x = a[t][jj];
                if x != 0 {
                    let f = x / lead;
                    let (lo, hi) = tr.split_at_mut(jj);
                    let src = &hi[0];
                    let dst = &mut lo[t];
                    let m = ring.m as u64;
                    for (d, &s) in dst.iter_mut().zip(src.iter()) {
                        if s != 0 {
                            *d = ((*d as u64 + f as u64 * s as u64) % m) as u32;
                        }
                    }
                }
            }
        }
        for x in a[t][t + 1..].iter_mut() {
            *x = 0;
        }
        diag.push(v);
    }
    diag
}

/// Invariants `(p, e)` of `(Z/p^k)^cols / rowspace(a)`.
pub fn cokernel(ring: LocalRing, a: Vec<Box<[u32]>>, cols: usize) -> Vec<u32> {
    let diag = local_snf(ring, a, cols, None);
    let mut out: Vec<u32> = diag.iter().copied().filter(|&v| v > 0).collect();
    out.extend(std::iter::repeat(ring.k).take(cols - diag.len()));
    out
}
