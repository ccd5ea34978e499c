//! Integer matrix kernels via the Smith normal form.
//!
//! Everything here is exact over arbitrary-precision integers.  The kernel
//! bases produced are saturated (they generate the full kernel lattice, not a
//! finite-index sublattice) because they come from unimodular column
//! operations.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let v = &row[src] * f;
        row[dst] += v;
    }
}

fn add_row(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    let n = m[src].len();
    for j in 0..n {
        let v = &m[src][j] * f;
        m[dst][j] += v;
    }
}

/// Diagonalise `a` by unimodular row/column operations, tracking the column
/// transform `v` so that `a_input * v = u^-1 * diag` for some unimodular `u`.
/// Returns `(diag, v)`; only the diagonal and `v` are needed for kernels.
fn smith_diagonalise(mut a: IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut v: IntMatrix = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut t = 0;
    while t < rows.min(cols) {
        // Find a pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        // Clear the pivot row and column; repeat until both are clean.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let f = -(&a[i][t] / &a[t][t]);
                    add_row(&mut a, i, t, &f);
                    if !a[i][t].is_zero() {
                        // Remainder became the smaller pivot.
                        swap_rows(&mut a, t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let f = -(&a[t][j] / &a[t][t]);
                    add_col(&mut a, j, t, &f);
                    add_col(&mut v, j, t, &f);
                    if !a[t][j].is_zero() {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        t += 1;
    }
    (a, v)
}

/// A basis of `{ f : a * f = 0 }` as a lattice in `Z^cols`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let (diag, v) = smith_diagonalise(a.clone());
    let mut basis = Vec::new();
    for j in 0..cols {
        let zero_diag = j >= rows || diag[j][j].is_zero();
        if zero_diag {
            basis.push((0..cols).map(|i| v[i][j].clone()).collect());
        }
    }
    hermite_reduce(&mut basis);
    basis
}

/// Row-style Hermite reduction used to make kernel bases canonical: each
/// pivot is positive, entries above a pivot are reduced, rows sorted by pivot
/// position.
pub fn hermite_reduce(basis: &mut Vec<Vec<BigInt>>) {
    let cols = basis.first().map_or(0, |r| r.len());
    hermite_reduce_cols(basis, cols);
}

/// Hermite reduction pivoting only on the first `cols` columns; trailing
/// columns ride along (used to track row transforms).  Rows with no pivot in
/// the leading block are dropped.
pub fn hermite_reduce_cols(basis: &mut Vec<Vec<BigInt>>, cols: usize) {
    if basis.is_empty() {
        return;
    }
    let width = basis[0].len();
    let mut row = 0;
    for col in 0..cols {
        // Use gcd-style elimination to get a single nonzero entry in `col`
        // among rows >= row.
        loop {
            let mut best: Option<usize> = None;
            for i in row..basis.len() {
                if !basis[i][col].is_zero()
                    && best.is_none_or(|b| basis[i][col].abs() < basis[b][col].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            basis.swap(row, b);
            let mut any = false;
            for i in row + 1..basis.len() {
                if !basis[i][col].is_zero() {
                    let f = -(&basis[i][col] / &basis[row][col]);
                    for k in 0..width {
                        let v = &basis[row][k] * &f;
                        basis[i][k] += v;
                    }
                    if !basis[i][col].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if row < basis.len() && !basis[row][col].is_zero() {
            if basis[row][col].is_negative() {
                for k in 0..width {
                    basis[row][k] = -basis[row][k].clone();
                }
            }
            // Reduce the rows above.
            for i in 0..row {
                if !basis[i][col].is_zero() {
                    let f = -basis[i][col].div_floor(&basis[row][col]);
                    for k in 0..width {
                        let v = &basis[row][k] * &f;
                        basis[i][k] += v;
                    }
                }
            }
            row += 1;
        }
    }
    basis.truncate(row);
}

/// Does `target` lie in the lattice spanned by `basis`?  (`basis` must be
/// Hermite-reduced.)
pub fn in_lattice(basis: &[Vec<BigInt>], target: &[i64]) -> bool {
    let mut rem: Vec<BigInt> = target.iter().map(|&v| BigInt::from(v)).collect();
    for row in basis {
        let pivot = row.iter().position(|v| !v.is_zero());
        let Some(p) = pivot else { continue };
        if !rem[p].is_zero() {
            let (f, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for k in 0..rem.len() {
                let v = &row[k] * &f;
                rem[k] -= v;
            }
        }
    }
    rem.iter().all(|v| v.is_zero())
}

/// Express `target` as an integer combination of the given rows, which need
/// not be reduced.  Tracks the row transform through a Hermite reduction so
/// the coefficients refer to the original rows.
pub fn express_in_basis(rows: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    let dim = target.len();
    let m = rows.len();
    let mut aug: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            v
        })
        .collect();
    hermite_reduce_cols(&mut aug, dim);
    let mut rem: Vec<BigInt> = target.to_vec();
    let mut combo = vec![BigInt::zero(); m];
    for row in &aug {
        let pivot = row[..dim].iter().position(|v| !v.is_zero());
        let Some(p) = pivot else { continue };
        if !rem[p].is_zero() {
            let (f, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for k in 0..dim {
                let v = &row[k] * &f;
                rem[k] -= v;
            }
            for k in 0..m {
                let v = &row[dim + k] * &f;
                combo[k] += v;
            }
        }
    }
    if rem.iter().all(|v| v.is_zero()) {
        Some(combo)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
        kernel_basis(&int_matrix_from_i64(rows))
            .into_iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn rank_one_kernel() {
        let b = kb(&[vec![0, 2, 3], vec![-2, 0, 5], vec![-3, -5, 0]]);
        assert_eq!(b, vec![vec![5, -3, 2]]);
    }

    #[test]
    fn mixed_sign_kernel() {
        let b = kb(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]);
        assert_eq!(b, vec![vec![1, -1, 1]]);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let b = kb(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(b, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn nondegenerate_two_by_two() {
        let b = kb(&[vec![0, 1], vec![-1, 0]]);
        assert!(b.is_empty());
    }

    #[test]
    fn kernel_is_saturated_against_brute_force() {
        // Exhaustive check on small skew-symmetric matrices: every vector in
        // a box that kills the matrix must lie in the computed lattice.
        let cases = [
            vec![vec![0, 2, 3], vec![-2, 0, 5], vec![-3, -5, 0]],
            vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]],
            vec![vec![0, 2], vec![-2, 0]],
            vec![vec![0, 0, 6], vec![0, 0, -4], vec![-6, 4, 0]],
            vec![
                vec![0, 1, 0, -2],
                vec![-1, 0, 3, 0],
                vec![0, -3, 0, 1],
                vec![2, 0, -1, 0],
            ],
        ];
        for m in &cases {
            let n = m.len();
            let basis = kernel_basis(&int_matrix_from_i64(m));
            let mut v = vec![-12i64; n];
            loop {
                let in_kernel = (0..n).all(|i| (0..n).map(|j| m[i][j] * v[j]).sum::<i64>() == 0);
                if in_kernel {
                    assert!(
                        in_lattice(&basis, &v),
                        "{v:?} missing from lattice for {m:?}"
                    );
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    v[k] += 1;
                    if v[k] <= 12 {
                        break;
                    }
                    v[k] = -12;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn express_recovers_combinations() {
        let basis = kernel_basis(&int_matrix_from_i64(&[
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0, 0, 0],
        ]));
        let target: Vec<BigInt> = vec![3.into(), (-2).into(), 7.into()];
        let combo = express_in_basis(&basis, &target).unwrap();
        let n = 3;
        let mut acc = vec![BigInt::zero(); n];
        for (c, row) in combo.iter().zip(&basis) {
            for k in 0..n {
                acc[k] += c * &row[k];
            }
        }
        assert_eq!(acc, target);
    }
}
