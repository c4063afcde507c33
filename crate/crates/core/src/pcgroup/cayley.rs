use rayon::prelude::*;

use super::presentation::PcPresentation;
use super::PcError;

pub const DEFAULT_TABLE_CAP: u64 = 128;

/// Multiplication table over the normal words in mixed-radix order; element
/// 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
}

impl CayleyTable {
    /// Builds a table from raw rows, checking only the shape.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "table must be square");
        CayleyTable {
            order,
            table: rows.into_iter().flatten().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.row(a).iter().position(|&x| x == 0).expect("every row contains the identity")
    }

    pub fn is_latin(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for &x in self.row(a) {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return false;
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let x = self.mul(b, a);
                if std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_associative_at(&self, a: usize, b: usize, c: usize) -> bool {
        self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
    }

    /// Relabels elements through `perm` (`perm[old] = new`); `perm[0]` must
    /// be 0.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        let n = self.order;
        assert_eq!(perm.len(), n);
        assert_eq!(perm[0], 0, "identity must stay at index 0");
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        CayleyTable { order: n, table }
    }
}

pub fn cayley_table(pres: &PcPresentation) -> Result<CayleyTable, PcError> {
    cayley_table_with_cap(pres, DEFAULT_TABLE_CAP)
}

pub fn cayley_table_with_cap(pres: &PcPresentation, cap: u64) -> Result<CayleyTable, PcError> {
    let n = match pres.order_u64() {
        Some(n) if n <= cap => n as usize,
        _ => {
            return Err(PcError::TooLarge {
                prime: pres.prime(),
                exponent: pres.order_exponent(),
                cap,
            })
        }
    };
    let words: Vec<_> = (0..n).map(|i| pres.word_at(i)).collect();
    let rows: Vec<Vec<u32>> = words
        .par_iter()
        .map(|a| words.iter().map(|b| pres.word_index(&pres.mul(a, b)) as u32).collect())
        .collect();
    Ok(CayleyTable::from_rows(rows))
}
