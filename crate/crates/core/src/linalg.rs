//! Exact linear algebra over the coefficient field.

use crate::field::RationalExpr;

/// Solution set of `A u = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// A particular solution plus a basis of the null space (reduced echelon,
    /// one vector per free column, free column set to one).
    Affine {
        particular: Vec<RationalExpr>,
        kernel: Vec<Vec<RationalExpr>>,
    },
    Inconsistent,
}

fn pick_pivot(rows: &[Vec<RationalExpr>], from: usize, col: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][col].is_zero())
        .min_by_key(|&r| (rows[r][col].weight(), r))
}

/// Reduced row echelon form in place; returns pivot columns. Only the first
/// `ncols` columns are eligible as pivots.
fn rref(rows: &mut [Vec<RationalExpr>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = pick_pivot(rows, r, col) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves `A u = b` for a matrix given by rows.
pub fn solve(a: &[Vec<RationalExpr>], b: &[RationalExpr]) -> LinearSolution {
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<RationalExpr>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let pivots = rref(&mut rows, n);
    if rows[pivots.len()..].iter().any(|r| !r[n].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    let mut particular = vec![RationalExpr::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![RationalExpr::zero(); n];
            v[f] = RationalExpr::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&rows[r][f];
            }
            v
        })
        .collect();
    LinearSolution::Affine { particular, kernel }
}

/// Determinant by fraction-based elimination.
pub fn determinant(m: &[Vec<RationalExpr>]) -> RationalExpr {
    let n = m.len();
    let mut rows = m.to_vec();
    let mut det = RationalExpr::one();
    for col in 0..n {
        let Some(p) = pick_pivot(&rows, col, col) else {
            return RationalExpr::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pv = rows[col][col].clone();
        det = &det * &pv;
        let inv = pv.inv().expect("pivot is nonzero");
        let pivot_row = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v = &*v - &(&f * pv);
            }
        }
    }
    det
}
