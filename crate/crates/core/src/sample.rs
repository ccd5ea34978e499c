//! Seeded random generation of scalars and elements, used by the property
//! suites.  The seed comes from the `QNA_SEED` environment variable when
//! set, so failing runs can be reproduced exactly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ore::{ExpVec, PBWElement, Presentation};
use crate::scalars::Scalar;

pub const DEFAULT_SEED: u64 = 0x5eed_04a1;

/// Deterministic generator, honouring `QNA_SEED` when present.
pub fn rng() -> ChaCha8Rng {
    let seed = std::env::var("QNA_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(DEFAULT_SEED);
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero scalar of the form `c * q^e`.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let c = loop {
        let v = rng.gen_range(-3i64..=3);
        if v != 0 {
            break v;
        }
    };
    let e = rng.gen_range(-2i64..=2);
    Scalar::from_int(c) * Scalar::qpow(e)
}

/// A random element with at most `max_terms` monomials of total degree at
/// most `max_degree`; may be zero only if `allow_zero`.
pub fn random_element<R: Rng>(
    p: &Presentation,
    rng: &mut R,
    max_terms: usize,
    max_degree: u32,
    allow_zero: bool,
) -> PBWElement {
    loop {
        let mut out = PBWElement::zero();
        let terms = rng.gen_range(1..=max_terms);
        for _ in 0..terms {
            let mut exps = ExpVec::zero(p.n_vars());
            let mut budget = rng.gen_range(0..=max_degree);
            while budget > 0 {
                let k = rng.gen_range(0..p.n_vars());
                exps.0[k] += 1;
                budget -= 1;
            }
            out.add_term(exps, &random_scalar(rng));
        }
        if allow_zero || !out.is_zero() {
            return out;
        }
    }
}

/// A random homogeneous element: one weight class of a random element.
pub fn random_homogeneous<R: Rng>(
    p: &Presentation,
    rng: &mut R,
    max_terms: usize,
    max_degree: u32,
) -> PBWElement {
    loop {
        let e = random_element(p, rng, max_terms, max_degree, false);
        let comps = p.homogeneous_components(&e);
        let pick = rng.gen_range(0..comps.len());
        if let Some((_, comp)) = comps.into_iter().nth(pick) {
            if !comp.is_zero() {
                return comp;
            }
        }
    }
}

/// A random exponent vector with entries at most `max_entry`.
pub fn random_exponents<R: Rng>(n: usize, rng: &mut R, max_entry: u32) -> ExpVec {
    ExpVec((0..n).map(|_| rng.gen_range(0..=max_entry)).collect())
}

/// A random subset of `0..n`.
pub fn random_subset<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}
