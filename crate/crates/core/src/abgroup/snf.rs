use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i * self.cols + j] = v.into();
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let t = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= t;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let t = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= t;
        }
    }
}

/// Smith normal form diagonal of `m`.
///
/// Returns `min(rows, cols)` non-negative entries `d_1 | d_2 | ...`, with zeros
/// (free rank) at the end. Pivoting picks the smallest nonzero entry of the
/// active block and sweeps its row and column by division with remainder
/// until it divides everything left.
pub fn snf(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let k = rows.min(cols);
    let mut diag = Vec::with_capacity(k);
    for t in 0..k {
        // smallest nonzero entry of the active block, ties broken by the
        // sparsest row and column
        let mut row_nnz = vec![0usize; rows];
        let mut col_nnz = vec![0usize; cols];
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    row_nnz[i] += 1;
                    col_nnz[j] += 1;
                }
            }
        }
        let mut best: Option<(usize, usize)> = None;
        let mut best_key = (BigInt::zero(), 0usize);
        for i in t..rows {
            if row_nnz[i] == 0 {
                continue;
            }
            for j in t..cols {
                let v = a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let key = (v.abs(), (row_nnz[i] - 1) * (col_nnz[j] - 1));
                if best.is_none() || key < best_key {
                    best = Some((i, j));
                    best_key = key;
                }
            }
        }
        let Some((pi, pj)) = best else {
            diag.extend(std::iter::repeat(BigInt::zero()).take(k - t));
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.row_axpy(i, t, &q);
                if !a.get(i, t).is_zero() {
                    // remainder is smaller than the pivot: promote it
                    a.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.col_axpy(j, t, &q);
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // pivot row/column are clear; enforce divisibility on the rest
            let piv = a.get(t, t).clone();
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(a.get(i, j) % &piv).is_zero() {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    // row t += row i, then sweep again
                    let minus_one = BigInt::from(-1);
                    a.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    diag
}
