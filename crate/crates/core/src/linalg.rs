//! Dense exact linear algebra over `Q(q)`.
//!
//! Systems stay small (they are split by weight before reaching this module),
//! so plain Gaussian elimination with a cheapest-pivot heuristic is enough.

use crate::scalars::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// Result of reducing an augmented system `[a | b]`.
pub struct Reduction {
    /// Row echelon form of the augmented matrix.
    rows: Vec<Vec<Scalar>>,
    /// Pivot column of each echelon row.
    pivots: Vec<usize>,
    /// Number of unknowns (columns of `a`).
    unknowns: usize,
}

fn eliminate(mut rows: Vec<Vec<Scalar>>, unknowns: usize) -> Reduction {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        // Choose the structurally simplest nonzero pivot to limit coefficient
        // growth.
        let mut best: Option<usize> = None;
        for i in r..rows.len() {
            if !rows[i][col].is_zero()
                && best.is_none_or(|b| rows[i][col].complexity() < rows[b][col].complexity())
            {
                best = Some(i);
            }
        }
        let Some(b) = best else { continue };
        rows.swap(r, b);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = &*v - &(&f * p);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Reduction {
        rows,
        pivots,
        unknowns,
    }
}

impl Reduction {
    fn consistent(&self) -> bool {
        for row in &self.rows[self.pivots.len()..] {
            if row[self.unknowns..].iter().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Solve `a x = b`; returns the particular solution with all free unknowns
/// set to zero, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let unknowns = a.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let red = eliminate(rows, unknowns);
    if !red.consistent() {
        return None;
    }
    let mut x = vec![Scalar::zero(); unknowns];
    for (r, &col) in red.pivots.iter().enumerate() {
        x[col] = red.rows[r][unknowns].clone();
    }
    Some(x)
}

/// A basis of the nullspace of `a`.
pub fn nullspace(a: &Matrix) -> Vec<Vec<Scalar>> {
    let unknowns = a.first().map_or(0, |r| r.len());
    let red = eliminate(a.clone(), unknowns);
    let mut is_pivot = vec![false; unknowns];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in 0..unknowns {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Scalar::zero(); unknowns];
        v[free] = Scalar::one();
        for (r, &col) in red.pivots.iter().enumerate() {
            v[col] = -&red.rows[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Rank of the span of the given vectors.
pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let unknowns = vectors[0].len();
    eliminate(vectors.to_vec(), unknowns).pivots.len()
}

/// Intersection of two spans, returned as a spanning set.
pub fn intersect_spans(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    // Solve sum u_i a_i = sum v_j b_j: nullspace of [a^T | -b^T].
    let mut m: Matrix = Vec::new();
    for d in 0..dim {
        let mut row = Vec::with_capacity(a.len() + b.len());
        for v in a {
            row.push(v[d].clone());
        }
        for v in b {
            row.push(-&v[d]);
        }
        m.push(row);
    }
    let mut out = Vec::new();
    for n in nullspace(&m) {
        let mut vec = vec![Scalar::zero(); dim];
        for (i, u) in n[..a.len()].iter().enumerate() {
            if !u.is_zero() {
                for d in 0..dim {
                    vec[d] = &vec[d] + &(u * &a[i][d]);
                }
            }
        }
        if vec.iter().any(|v| !v.is_zero()) {
            out.push(vec);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn solves_a_small_system() {
        // x + q y = q^2 ; y = 3
        let a = vec![vec![s(1), Scalar::qpow(1)], vec![s(0), s(1)]];
        let b = vec![Scalar::qpow(2), s(3)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x[1], s(3));
        assert_eq!(x[0], Scalar::qpow(2) - (Scalar::qpow(1) * s(3)));
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![s(1), s(1)], vec![s(2), s(2)]];
        let b = vec![s(1), s(3)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let a = vec![vec![s(1), s(2), s(3)]];
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot = &(&v[0] + &(&v[1] * &s(2))) + &(&v[2] * &s(3));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn span_intersection() {
        let a = vec![vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]];
        let b = vec![vec![s(0), s(1), s(1)], vec![s(0), s(0), s(1)]];
        let c = intersect_spans(&a, &b);
        assert_eq!(rank(&c), 1);
        for v in &c {
            assert!(v[2].is_zero());
            assert!(v[0].is_zero());
        }
    }
}
