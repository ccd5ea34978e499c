//! Centers of the quantum affine space and torus spanned by the cluster,
//! computed through integer lattice kernels, and certification of the pivot
//! hypothesis on the monomial generators of the center.
//!
//! A Laurent monomial `y^f` is central in the torus exactly when `B f = 0`
//! for the commutation matrix `B`, so the torus center is governed by the
//! kernel lattice of `B`.  The affine center additionally needs nonnegative
//! exponents, and the derivation decomposition further needs a pivot for
//! each monomial generator; `verify_hypothesis` searches for that data.

use crate::error::{Error, Result};
use crate::gy::{Cluster, CommutationMatrix};
use crate::lattice;
use crate::ore::{ExpVec, PBWElement, Presentation};

/// A saturated basis of the kernel lattice of a commutation matrix, in
/// Hermite-reduced canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Why a certificate could not be produced.  The first reason flags an
/// inconsistency between modules (the kernel of a genuine cluster matrix is
/// always supported on the prime indices); the others are genuine hypothesis
/// failures, definitive only when `search_exhausted` is false.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureReason {
    KernelNotSupportedOnPrimes,
    NoNonnegativeBasis,
    NoPivotAssignment,
    H3Violated,
}

impl FailureReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FailureReason::KernelNotSupportedOnPrimes => "KernelNotSupportedOnPrimes",
            FailureReason::NoNonnegativeBasis => "NoNonnegativeBasis",
            FailureReason::NoPivotAssignment => "NoPivotAssignment",
            FailureReason::H3Violated => "H3Violated",
        }
    }
}

/// Certificate that the torus center admits nonnegative monomial generators
/// `z_1 .. z_l` with a pivot index for each: `z_i` has exponent exactly 1 at
/// its own pivot and 0 at every other pivot, and (third condition) a
/// generator touching at least two primes owns a prime outside every other
/// generator's support.
#[derive(Clone, Debug)]
pub struct HypothesisCertificate {
    pub valid: bool,
    /// Exponent vectors of the generators, nonnegative when valid, paired
    /// with `pivots` by position and sorted by pivot index.
    pub z_exponents: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
    pub failure_reason: Option<FailureReason>,
    /// True when a failure is only known up to the search bound.
    pub search_exhausted: bool,
}

impl HypothesisCertificate {
    pub fn ell(&self) -> usize {
        self.z_exponents.len()
    }

    fn failed(reason: FailureReason, exhausted: bool) -> Self {
        HypothesisCertificate {
            valid: false,
            z_exponents: Vec::new(),
            pivots: Vec::new(),
            failure_reason: Some(reason),
            search_exhausted: exhausted,
        }
    }
}

/// A basis of `{ f : B f = 0 }`.
pub fn kernel_basis(b: &CommutationMatrix) -> LatticeBasis {
    let m = lattice::int_matrix_from_i64(&b.0);
    let vectors = lattice::kernel_basis(&m)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| i64::try_from(&v).expect("kernel entries fit in 64 bits at these sizes"))
                .collect()
        })
        .collect();
    LatticeBasis { vectors }
}

/// A quantum torus is simple exactly when its center is scalar, i.e. the
/// kernel of its commutation matrix vanishes.
pub fn is_simple_torus(b: &CommutationMatrix) -> bool {
    kernel_basis(b).rank() == 0
}

fn support(v: &[i64]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Search for the pivot certificate.
///
/// Order of business: (1) the kernel must be supported on the prime indices;
/// (2) bounded search over unimodular recombinations of the kernel basis for
/// a basis of nonnegative vectors; (3) pivot assignment satisfying the
/// degree and support conditions.  Failures report the deepest stage
/// reached; rank-one kernels make the nonnegativity verdict definitive, all
/// other exhaustions are inconclusive with respect to larger bounds.
pub fn verify_hypothesis(
    b: &CommutationMatrix,
    prime_indices: &[usize],
    search_bound: u32,
) -> HypothesisCertificate {
    let basis = kernel_basis(b);
    let ell = basis.rank();
    if ell == 0 {
        return HypothesisCertificate {
            valid: true,
            z_exponents: Vec::new(),
            pivots: Vec::new(),
            failure_reason: None,
            search_exhausted: false,
        };
    }
    for v in &basis.vectors {
        if !support(v).iter().all(|i| prime_indices.contains(i)) {
            return HypothesisCertificate::failed(FailureReason::KernelNotSupportedOnPrimes, false);
        }
    }

    let (candidate_bases, truncated) = nonnegative_bases(&basis, search_bound);
    if candidate_bases.is_empty() {
        // A rank-one lattice has exactly two primitive generators, so the
        // answer does not depend on the bound.
        return HypothesisCertificate::failed(
            FailureReason::NoNonnegativeBasis,
            ell > 1 || truncated,
        );
    }

    let mut deepest = FailureReason::NoNonnegativeBasis;
    for cand in candidate_bases {
        match assign_pivots(&cand, prime_indices) {
            Ok((z, pivots)) => {
                return HypothesisCertificate {
                    valid: true,
                    z_exponents: z,
                    pivots,
                    failure_reason: None,
                    search_exhausted: false,
                };
            }
            Err(reason) => deepest = deepest.max(reason),
        }
    }
    HypothesisCertificate::failed(deepest, true)
}

/// Cap on how many candidate subsets the recombination search examines.
const SUBSET_BUDGET: usize = 200_000;

/// Enumerate bases of the kernel lattice consisting of nonnegative vectors,
/// from recombinations with coefficients bounded by `search_bound`.  The
/// second return value reports whether the subset search hit its budget.
fn nonnegative_bases(basis: &LatticeBasis, search_bound: u32) -> (Vec<Vec<Vec<i64>>>, bool) {
    let ell = basis.rank();
    let n = basis.vectors[0].len();
    if basis.vectors.iter().all(|v| v.iter().all(|&e| e >= 0)) {
        return (vec![basis.vectors.clone()], false);
    }
    if ell == 1 {
        let neg: Vec<i64> = basis.vectors[0].iter().map(|&e| -e).collect();
        if neg.iter().all(|&e| e >= 0) {
            return (vec![vec![neg]], false);
        }
        return (Vec::new(), false);
    }
    // Collect nonnegative lattice vectors with bounded coefficients,
    // remembering their coefficient tuples for the unimodularity check.
    let bound = search_bound as i64;
    let mut found: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut coeffs = vec![-bound; ell];
    'outer: loop {
        if coeffs.iter().any(|&c| c != 0) {
            let mut v = vec![0i64; n];
            for (c, row) in coeffs.iter().zip(&basis.vectors) {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi += c * ri;
                }
            }
            if v.iter().all(|&e| e >= 0) {
                found.push((v, coeffs.clone()));
            }
        }
        let mut k = 0;
        loop {
            if k == ell {
                break 'outer;
            }
            coeffs[k] += 1;
            if coeffs[k] <= bound {
                break;
            }
            coeffs[k] = -bound;
            k += 1;
        }
    }
    found.sort();
    found.dedup();
    // All size-ell subsets whose coefficient matrix is unimodular, up to the
    // search budget.
    let mut out = Vec::new();
    let mut pick = vec![0usize; ell];
    let mut budget = SUBSET_BUDGET;
    subsets(&found, ell, 0, &mut pick, &mut out, &mut budget);
    (out, budget == 0)
}

fn subsets(
    found: &[(Vec<i64>, Vec<i64>)],
    ell: usize,
    depth: usize,
    pick: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<i64>>>,
    budget: &mut usize,
) {
    if *budget == 0 {
        return;
    }
    if depth == ell {
        *budget -= 1;
        let coeff_rows: Vec<Vec<num::BigInt>> = pick
            .iter()
            .map(|&i| found[i].1.iter().map(|&c| num::BigInt::from(c)).collect())
            .collect();
        let det = det_int(&coeff_rows);
        if det == num::BigInt::from(1) || det == num::BigInt::from(-1) {
            out.push(pick.iter().map(|&i| found[i].0.clone()).collect());
        }
        return;
    }
    let start = if depth == 0 { 0 } else { pick[depth - 1] + 1 };
    for i in start..found.len() {
        pick[depth] = i;
        subsets(found, ell, depth + 1, pick, out, budget);
    }
}

fn det_int(rows: &[Vec<num::BigInt>]) -> num::BigInt {
    use num::{One, Signed, Zero};
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = num::BigInt::one();
    for col in 0..n {
        // Fraction-free elimination via gcd steps keeps this exact.
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return num::BigInt::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        for r in col + 1..n {
            while !m[r][col].is_zero() {
                if m[r][col].abs() < m[col][col].abs() {
                    m.swap(r, col);
                    det = -det;
                }
                let f = &m[r][col] / &m[col][col];
                for k in col..n {
                    let v = &m[col][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        det *= m[col][col].clone();
    }
    det
}

/// Assign a pivot to each basis vector: the pivot entry must be exactly 1 in
/// its own vector and 0 in all others, and the support-exclusivity condition
/// must hold.  Returns vectors and pivots sorted by pivot index, choosing
/// the lexicographically smallest pivot set.
fn assign_pivots(
    z: &[Vec<i64>],
    prime_indices: &[usize],
) -> std::result::Result<(Vec<Vec<i64>>, Vec<usize>), FailureReason> {
    let ell = z.len();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(ell);
    for (i, zi) in z.iter().enumerate() {
        let mut c = Vec::new();
        for &idx in prime_indices {
            if zi[idx] == 1 && z.iter().enumerate().all(|(j, zj)| j == i || zj[idx] == 0) {
                c.push(idx);
            }
        }
        if c.is_empty() {
            return Err(FailureReason::NoPivotAssignment);
        }
        candidates.push(c);
    }
    let supports: Vec<Vec<usize>> = z.iter().map(|v| support(v)).collect();
    let mut assignments: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; ell];
    collect_assignments(&candidates, 0, &mut current, &mut assignments);
    if assignments.is_empty() {
        return Err(FailureReason::NoPivotAssignment);
    }
    let mut best: Option<Vec<usize>> = None;
    for a in &assignments {
        let ok = (0..ell).all(|i| {
            if supports[i].len() < 2 {
                return true;
            }
            // Some prime in supp z_i other than the pivot must avoid every
            // other support.
            supports[i].iter().any(|&k| {
                k != a[i]
                    && supports
                        .iter()
                        .enumerate()
                        .all(|(j, s)| j == i || !s.contains(&k))
            })
        });
        if ok {
            let mut sorted = a.clone();
            sorted.sort_unstable();
            if best.as_ref().is_none_or(|b| &sorted < b) {
                best = Some(sorted);
            }
        }
    }
    let Some(best) = best else {
        return Err(FailureReason::H3Violated);
    };
    // Re-pair vectors with the chosen pivots; the owner of a pivot is the
    // unique vector with a nonzero entry there.
    let mut paired: Vec<(usize, Vec<i64>)> = Vec::with_capacity(ell);
    for &pivot in &best {
        let zi = z
            .iter()
            .find(|zi| zi[pivot] == 1)
            .expect("pivot owner exists");
        paired.push((pivot, zi.clone()));
    }
    let pivots = paired.iter().map(|(p, _)| *p).collect();
    let zs = paired.into_iter().map(|(_, z)| z).collect();
    Ok((zs, pivots))
}

fn collect_assignments(
    candidates: &[Vec<usize>],
    depth: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == candidates.len() {
        out.push(current.clone());
        return;
    }
    for &c in &candidates[depth] {
        if current[..depth].contains(&c) {
            continue;
        }
        current[depth] = c;
        collect_assignments(candidates, depth + 1, current, out);
    }
}

/// The consolidated center report: the realized generators commute with
/// every algebra generator, `N - l` is even, and the torus on the non-pivot
/// indices is simple.  Any failed assertion is an inconsistency between
/// modules and errors out.
#[derive(Clone, Debug)]
pub struct CenterReport {
    pub ell: usize,
    pub z_exponents: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
    pub n_minus_ell_even: bool,
    pub reduced_torus_simple: bool,
    /// The generators materialized in PBW normal form.
    pub z_elements: Vec<PBWElement>,
}

pub fn centers_report(
    p: &Presentation,
    cluster: &Cluster,
    b: &CommutationMatrix,
    cert: &HypothesisCertificate,
) -> Result<CenterReport> {
    if !cert.valid {
        return Err(Error::Refused("hypothesis certificate invalid".into()));
    }
    let n = p.n_vars();
    let mut z_elements = Vec::with_capacity(cert.ell());
    for f in &cert.z_exponents {
        let exps = ExpVec(
            f.iter()
                .map(|&e| u32::try_from(e).expect("valid certificate"))
                .collect(),
        );
        let z = crate::gy::y_monomial(p, cluster, &exps);
        for i in 0..n {
            let xi = p.generator(i);
            if p.multiply(&z, &xi) != p.multiply(&xi, &z) {
                return Err(Error::Inconsistent(format!(
                    "certified central monomial {f:?} does not commute with generator {i}"
                )));
            }
        }
        z_elements.push(z);
    }
    if !(n - cert.ell()).is_multiple_of(2) {
        return Err(Error::Inconsistent(format!(
            "N - l = {} - {} is odd",
            n,
            cert.ell()
        )));
    }
    if cert.ell() > p.rank() {
        return Err(Error::Inconsistent(format!(
            "center rank {} exceeds the presentation rank {}",
            cert.ell(),
            p.rank()
        )));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !cert.pivots.contains(i)).collect();
    let reduced: Vec<Vec<i64>> = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| b.0[i][j]).collect())
        .collect();
    if !is_simple_torus(&CommutationMatrix(reduced)) {
        return Err(Error::Inconsistent(
            "torus on the non-pivot indices has nontrivial center".into(),
        ));
    }
    Ok(CenterReport {
        ell: cert.ell(),
        z_exponents: cert.z_exponents.clone(),
        pivots: cert.pivots.clone(),
        n_minus_ell_even: true,
        reduced_torus_simple: true,
        z_elements,
    })
}

/// Rank of the lattice spanned by the nonnegative kernel vectors found
/// within the coefficient bound: the number of independent monomial central
/// elements of the affine space.  Definitive for kernels of rank at most
/// one; otherwise a lower bound.
pub fn affine_center_rank(b: &CommutationMatrix, search_bound: u32) -> usize {
    let basis = kernel_basis(b);
    match basis.rank() {
        0 => 0,
        1 => {
            let v = &basis.vectors[0];
            let nonneg = v.iter().all(|&e| e >= 0) || v.iter().all(|&e| e <= 0);
            usize::from(nonneg)
        }
        ell => {
            let bound = search_bound as i64;
            let n = basis.vectors[0].len();
            let mut rows: Vec<Vec<num::BigInt>> = Vec::new();
            let mut coeffs = vec![-bound; ell];
            'outer: loop {
                let mut v = vec![0i64; n];
                for (c, row) in coeffs.iter().zip(&basis.vectors) {
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi += c * ri;
                    }
                }
                if v.iter().all(|&e| e >= 0) && v.iter().any(|&e| e != 0) {
                    rows.push(v.iter().map(|&e| num::BigInt::from(e)).collect());
                }
                let mut k = 0;
                loop {
                    if k == ell {
                        break 'outer;
                    }
                    coeffs[k] += 1;
                    if coeffs[k] <= bound {
                        break;
                    }
                    coeffs[k] = -bound;
                    k += 1;
                }
            }
            lattice::hermite_reduce(&mut rows);
            rows.len()
        }
    }
}
