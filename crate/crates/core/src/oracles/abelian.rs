//! Membership in a subgroup of `ℤᵏ` given by generators.

use crate::error::{Error, Result};

/// An integer row lattice in echelon form: pivot columns strictly increase
/// and every pivot is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Lattice {
    columns: usize,
    rows: Vec<(usize, Vec<i128>)>,
}

impl Lattice {
    pub(crate) fn new(columns: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut pending: Vec<Vec<i128>> = Vec::new();
        for g in generators {
            if g.len() != columns {
                return Err(Error::ArityMismatch {
                    expected: columns,
                    found: g.len(),
                });
            }
            pending.push(g.iter().map(|&x| x as i128).collect());
        }
        let mut rows = Vec::new();
        for col in 0..columns {
            // Euclid on the column until one row holds the gcd.
            loop {
                pending.retain(|r| r.iter().any(|&x| x != 0));
                let mut with_entry: Vec<usize> = (0..pending.len()).filter(|&i| pending[i][col] != 0).collect();
                if with_entry.is_empty() {
                    break;
                }
                with_entry.sort_by_key(|&i| pending[i][col].abs());
                let p = with_entry[0];
                if with_entry.len() == 1 {
                    let mut row = pending.swap_remove(p);
                    if row[col] < 0 {
                        row.iter_mut().for_each(|x| *x = -*x);
                    }
                    rows.push((col, row));
                    break;
                }
                let pivot = pending[p].clone();
                for &i in &with_entry[1..] {
                    let q = pending[i][col].div_euclid(pivot[col]);
                    for (x, &y) in pending[i].iter_mut().zip(&pivot) {
                        *x = x
                            .checked_sub(q.checked_mul(y).ok_or_else(overflow)?)
                            .ok_or_else(overflow)?;
                    }
                }
            }
        }
        Ok(Lattice { columns, rows })
    }

    pub(crate) fn columns(&self) -> usize {
        self.columns
    }

    pub(crate) fn contains(&self, v: &[i64]) -> bool {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (col, row) in &self.rows {
            let (x, p) = (v[*col], row[*col]);
            if x % p != 0 {
                return false;
            }
            let q = x / p;
            for (a, &b) in v.iter_mut().zip(row) {
                *a -= q * b;
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

fn overflow() -> Error {
    Error::input("relation matrix entries overflow")
}
