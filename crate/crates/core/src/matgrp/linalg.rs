//! Gaussian elimination over cyclotomic fields.

use num_rational::BigRational;

use crate::cyclo::CyclotomicNumber;

/// Reduces `rows` to reduced row echelon form in place and returns the pivot columns.
pub fn rref(rows: &mut [Vec<CyclotomicNumber>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("pivot is nonzero");
        for x in &mut rows[r][col..ncols] {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                *x = &*x - &(&f * p);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel of `rows`, one vector per free column, ordered by
/// that column. Each basis vector has a 1 at its free column.
pub fn kernel(rows: &[Vec<CyclotomicNumber>], ncols: usize) -> Vec<(usize, Vec<CyclotomicNumber>)> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![CyclotomicNumber::zero(); ncols];
            v[free] = CyclotomicNumber::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][free];
            }
            (free, v)
        })
        .collect()
}

/// Solves a rational system given as an augmented matrix with `nvars` unknowns.
/// Returns `None` when inconsistent; free variables are set to zero.
pub(crate) fn solve_augmented(
    aug: &mut [Vec<BigRational>],
    nvars: usize,
) -> Option<Vec<BigRational>> {
    let mut rows: Vec<Vec<CyclotomicNumber>> = aug
        .iter()
        .map(|r| {
            r.iter()
                .cloned()
                .map(CyclotomicNumber::from_rational)
                .collect()
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&nvars) {
        return None;
    }
    let mut sol = vec![BigRational::from_integer(0.into()); nvars];
    for (row, &pc) in pivots.iter().enumerate() {
        sol[pc] = rows[row][nvars].as_rational().expect("rational system");
    }
    Some(sol)
}
