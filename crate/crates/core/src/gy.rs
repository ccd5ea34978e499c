//! The recursive construction of the quasi-commuting elements `y_1 .. y_N`
//! of a quantum nilpotent algebra, together with the divisibility and
//! localization-membership primitives built on them.
//!
//! Each index carries a colour; the predecessor/successor maps of the
//! colouring drive the recursion `y_k = y_{p(k)} x_k - c_k` where
//! `c_k = a^{-1} (q_k - 1)^{-1} d_k(y_{p(k)})` and `a` is the eigenvalue of
//! `y_{p(k)}` under the scaling map `s_k`.  The indices with no successor
//! label the homogeneous prime elements.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ore::{ExpVec, PBWElement, Presentation};
use crate::scalars::Scalar;

/// Colouring, predecessor/successor maps and the recursive elements.
///
/// `pred[k] == None` encodes "no predecessor" and holds exactly when `d_k`
/// vanishes; `succ[k] == None` encodes "no successor" and marks a prime.
#[derive(Clone, Debug)]
pub struct Cluster {
    /// Colour of each index, in `0..rank`.
    pub colour: Vec<usize>,
    pub pred: Vec<Option<usize>>,
    pub succ: Vec<Option<usize>>,
    /// The elements `y_k` in PBW normal form.
    pub y: Vec<PBWElement>,
    /// The correction terms `c_k`, present where `pred[k]` is.
    pub c: BTreeMap<usize, PBWElement>,
    /// Exponent of the eigenvalue of `y_{p(k)}` under `s_k`.
    pub alpha_exponents: BTreeMap<usize, i64>,
}

impl Cluster {
    /// Indices with no successor: the homogeneous prime elements.
    pub fn prime_indices(&self) -> Vec<usize> {
        (0..self.succ.len())
            .filter(|&k| self.succ[k].is_none())
            .collect()
    }
}

/// Skew-symmetric integer matrix `B` with `y_j y_i = q^{B[i][j]} y_i y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationMatrix(pub Vec<Vec<i64>>);

impl CommutationMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Left,
    Right,
}

/// Left division: the quotient `s` with `r = d * s`, if one exists.
///
/// Leading exponent vectors are additive under multiplication (the
/// straightening-order argument in [`crate::ore`]), so the top term of the
/// quotient is forced at every step and leading-term division is complete:
/// `None` is a proof that no quotient exists, not a search failure.
///
/// Panics if `d` is zero.
pub fn divides_left(p: &Presentation, d: &PBWElement, r: &PBWElement) -> Option<PBWElement> {
    divide(p, d, r, Side::Left)
}

/// Right division: the quotient `s` with `r = s * d`, if one exists.
pub fn divides_right(p: &Presentation, d: &PBWElement, r: &PBWElement) -> Option<PBWElement> {
    divide(p, d, r, Side::Right)
}

fn divide(p: &Presentation, d: &PBWElement, r: &PBWElement, side: Side) -> Option<PBWElement> {
    assert!(!d.is_zero(), "division by the zero element");
    let lead_d = d.leading_exp().unwrap().clone();
    let mut rem = r.clone();
    let mut quot = PBWElement::zero();
    // Terminates: the leading exponent of the remainder strictly decreases,
    // and the straightening order is a well-order on exponent vectors.
    while !rem.is_zero() {
        let lead_r = rem.leading_exp().unwrap().clone();
        let step = lead_r.checked_sub(&lead_d)?;
        let candidate = PBWElement::monomial(step, Scalar::one());
        let prod = match side {
            Side::Left => p.multiply(d, &candidate),
            Side::Right => p.multiply(&candidate, d),
        };
        let top = prod.coeff(&lead_r);
        debug_assert!(!top.is_zero(), "leading exponents must be additive");
        let coeff = rem
            .coeff(&lead_r)
            .div(&top)
            .expect("leading coefficient is nonzero");
        quot.add_assign(&candidate.scaled(&coeff));
        rem = rem.sub(&prod.scaled(&coeff));
    }
    Some(quot)
}

/// Construct the cluster by the uniqueness recursion.
///
/// For `d_k = 0` the element is `x_k` with a fresh colour.  Otherwise every
/// currently-prime index `j < k` with `d_k(y_j) != 0` yields a candidate
/// `y_j x_k - c_k`, and exactly one candidate may pass the normality test;
/// zero or several survivors reject the input.
pub fn compute_y_elements(p: &Presentation) -> Result<Cluster> {
    let n = p.n_vars();
    let q_exponents = p.infer_q_exponents()?;
    let mut colour = vec![0usize; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let mut y: Vec<PBWElement> = Vec::with_capacity(n);
    let mut c = BTreeMap::new();
    let mut alpha_exponents = BTreeMap::new();
    let mut next_colour = 0usize;

    for k in 0..n {
        if p.delta_is_zero(k) {
            colour[k] = next_colour;
            next_colour += 1;
            y.push(p.generator(k));
            continue;
        }
        let ek = *q_exponents
            .get(&k)
            .ok_or_else(|| Error::ClusterConstruction(format!("no eigenvalue exponent at {k}")))?;
        let qk_minus_one = Scalar::qpow(ek) - Scalar::one();
        let mut survivors: Vec<(usize, PBWElement, PBWElement, i64)> = Vec::new();
        for j in 0..k {
            if succ[j].is_some() {
                continue; // no longer prime in the subalgebra below k
            }
            let dyj = p.apply_delta(k, &y[j])?;
            if dyj.is_zero() {
                continue;
            }
            // Eigenvalue of y_j under s_k; a candidate that is not an
            // eigenvector cannot satisfy the recursion.
            let syj = p.apply_sigma(k, &y[j])?;
            let Some(alpha) = syj.proportionality(&y[j]) else {
                continue;
            };
            let Some(alpha_exp) = alpha.as_qpow() else {
                continue;
            };
            let coeff = Scalar::qpow(-alpha_exp)
                .div(&qk_minus_one)
                .expect("q^e - 1 is nonzero for e != 0");
            let ck = dyj.scaled(&coeff);
            let candidate = p.multiply(&y[j], &p.generator(k)).sub(&ck);
            if is_normal(p, &candidate, k) {
                survivors.push((j, candidate, ck, alpha_exp));
            }
        }
        match survivors.len() {
            1 => {
                let (j, yk, ck, alpha_exp) = survivors.pop().unwrap();
                pred[k] = Some(j);
                succ[j] = Some(k);
                colour[k] = colour[j];
                c.insert(k, ck);
                alpha_exponents.insert(k, alpha_exp);
                y.push(yk);
            }
            0 => {
                return Err(Error::ClusterConstruction(format!(
                    "uniqueness violated at index {k}: no normal candidate survives"
                )));
            }
            m => {
                return Err(Error::ClusterConstruction(format!(
                    "uniqueness violated at index {k}: {m} normal candidates survive"
                )));
            }
        }
    }

    let cluster = Cluster {
        colour,
        pred,
        succ,
        y,
        c,
        alpha_exponents,
    };
    if cluster.prime_indices().len() != p.rank() {
        return Err(Error::ClusterConstruction(format!(
            "expected {} prime indices, found {}",
            p.rank(),
            cluster.prime_indices().len()
        )));
    }
    Ok(cluster)
}

/// Is `u` normal in the subalgebra on the generators up to index `k`
/// inclusive: both `x_i u = u s` and `u x_i = s' u` solvable for every such
/// generator?
pub fn is_normal(p: &Presentation, u: &PBWElement, k: usize) -> bool {
    if u.is_zero() {
        return true;
    }
    for i in 0..=k {
        let xi = p.generator(i);
        let left = p.multiply(&xi, u);
        if divides_left(p, u, &left).is_none() {
            return false;
        }
        let right = p.multiply(u, &xi);
        if divides_right(p, u, &right).is_none() {
            return false;
        }
    }
    true
}

/// Extract the commutation matrix of the cluster: `y_j y_i` must match
/// `q^b y_i y_j` exactly for a single integer `b`, otherwise the engine and
/// the cluster disagree and we error out.
pub fn commutation_matrix(p: &Presentation, cluster: &Cluster) -> Result<CommutationMatrix> {
    let n = cluster.y.len();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let ji = p.multiply(&cluster.y[j], &cluster.y[i]);
            let ij = p.multiply(&cluster.y[i], &cluster.y[j]);
            let ratio = ji.proportionality(&ij).ok_or_else(|| {
                Error::Inconsistent(format!("cluster elements {i} and {j} do not quasi-commute"))
            })?;
            let e = ratio.as_qpow().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "cluster elements {i} and {j} commute up to {ratio}, not a power of q"
                ))
            })?;
            b[i][j] = e;
            b[j][i] = -e;
        }
    }
    Ok(CommutationMatrix(b))
}

/// Is `numerator * (y^denominator)^{-1}` in the localization at the cluster
/// elements indexed by `allowed`?
///
/// Greedily cancels every denominator factor `y_j` with `j` outside
/// `allowed` through left division; the order of cancellation does not
/// matter because common multiples of distinct `y`'s factor through their
/// product.
pub fn localization_membership(
    p: &Presentation,
    cluster: &Cluster,
    numerator: &PBWElement,
    denominator: &ExpVec,
    allowed: &[usize],
) -> bool {
    if numerator.is_zero() {
        return true;
    }
    let mut num = numerator.clone();
    for j in 0..denominator.0.len() {
        if allowed.contains(&j) {
            continue;
        }
        for _ in 0..denominator.0[j] {
            match divides_left(p, &cluster.y[j], &num) {
                Some(quot) => num = quot,
                None => return false,
            }
        }
    }
    true
}

/// The cluster monomial `y^f`, multiplied out in index order.
pub fn y_monomial(p: &Presentation, cluster: &Cluster, exps: &ExpVec) -> PBWElement {
    let mut out = p.one();
    for (j, &e) in exps.0.iter().enumerate() {
        for _ in 0..e {
            out = p.multiply(&out, &cluster.y[j]);
        }
    }
    out
}
