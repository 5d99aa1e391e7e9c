use std::fmt;

use crate::cyclo::CyclotomicNumber;

use super::linalg;
use super::GroupError;

/// Square matrix over a cyclotomic field. All entries are kept at one common conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    dim: usize,
    entries: Vec<CyclotomicNumber>,
}

impl CycMatrix {
    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self, GroupError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(GroupError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(GroupError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self::normalized(dim, rows.into_iter().flatten().collect()))
    }

    fn normalized(dim: usize, mut entries: Vec<CyclotomicNumber>) -> Self {
        let conductor = entries
            .iter()
            .fold(1u32, |acc, e| crate::cyclo::phi::lcm(acc, e.conductor()));
        for e in &mut entries {
            if e.conductor() != conductor {
                *e = e.lift(conductor);
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| CyclotomicNumber::one()).collect())
    }

    pub fn diagonal(diag: Vec<CyclotomicNumber>) -> Self {
        let dim = diag.len();
        let mut entries = vec![CyclotomicNumber::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self::normalized(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Common conductor of the entries.
    pub fn conductor(&self) -> u32 {
        self.entries[0].conductor()
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<CyclotomicNumber>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    /// Re-expresses every entry at conductor `m` (a multiple of the current conductor).
    pub fn lift(&self, m: u32) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.lift(m)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        if self.dim != other.dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicNumber::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self::normalized(n, entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        if self.dim != other.dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::normalized(self.dim, entries))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self::normalized(self.dim, self.entries.iter().map(|e| e * c).collect())
    }

    pub fn trace(&self) -> CyclotomicNumber {
        (0..self.dim).fold(CyclotomicNumber::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn determinant(&self) -> CyclotomicNumber {
        let n = self.dim;
        let mut rows = self.rows();
        let mut det = CyclotomicNumber::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
                return CyclotomicNumber::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            det = &det * &rows[col][col];
            let inv = rows[col][col].inverse().expect("nonzero pivot");
            let (top, below) = rows.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in below {
                if row[col].is_zero() {
                    continue;
                }
                let f = &row[col] * &inv;
                for (x, p) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        linalg::rref(&mut rows).len()
    }

    pub fn inverse(&self) -> Result<Self, GroupError> {
        let n = self.dim;
        let mut aug: Vec<Vec<CyclotomicNumber>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| {
                    if i == j {
                        CyclotomicNumber::one()
                    } else {
                        CyclotomicNumber::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = linalg::rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(GroupError::Singular);
        }
        let entries = aug
            .into_iter()
            .flat_map(|row| row.into_iter().skip(n))
            .collect();
        Ok(Self::normalized(n, entries))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).unwrap();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq).unwrap();
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub(crate) fn entries(&self) -> &[CyclotomicNumber] {
        &self.entries
    }

    /// Rows rendered in the expression grammar.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.dim)
            .map(|r| r.iter().map(CyclotomicNumber::render).collect())
            .collect()
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .render_rows()
            .iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
