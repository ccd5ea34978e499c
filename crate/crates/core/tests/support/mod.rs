//! Shared helpers for the integration suites: the oracle-vs-engine
//! comparison harness used by both the cross-check tests and the acceptance
//! gate.  Each suite uses a different slice of the harness.
#![allow(dead_code)]

use std::collections::BTreeMap;

use qna_core::catalog::oracle::{FreeElem, SerreOracle};
use qna_core::catalog::{self, chevalley_indices, root_vector_expressions};
use qna_core::linalg;
use qna_core::ore::{ExpVec, PBWElement, Presentation};
use qna_core::scalars::Scalar;

pub const ORACLE_DEGREE: u32 = 6;

pub struct Comparison {
    pub p: Presentation,
    pub oracle: SerreOracle,
    pub roots: Vec<FreeElem>,
    pub chevalley: Vec<usize>,
}

impl Comparison {
    pub fn new(name: &str) -> Comparison {
        let entry = catalog::by_name(name).unwrap();
        let (ct, roots) = root_vector_expressions(name).unwrap();
        Comparison {
            p: entry.presentation,
            oracle: SerreOracle::new(ct, ORACLE_DEGREE),
            roots,
            chevalley: chevalley_indices(name).unwrap(),
        }
    }

    /// Letter degree of one PBW generator.
    pub fn root_degree(&self, k: usize) -> u32 {
        self.roots[k]
            .terms
            .keys()
            .next()
            .map(|w| w.len() as u32)
            .unwrap()
    }

    /// Image of a PBW monomial in the oracle quotient.
    pub fn embed_monomial(&self, e: &ExpVec) -> FreeElem {
        let mut acc = FreeElem::word(Vec::new());
        for (k, &f) in e.0.iter().enumerate() {
            for _ in 0..f {
                acc = acc.mul(&self.roots[k]);
            }
        }
        self.oracle.reduce(&acc)
    }

    /// Image of an arbitrary element.
    pub fn embed(&self, a: &PBWElement) -> FreeElem {
        let mut out = FreeElem::zero();
        for (e, c) in a.terms() {
            out.add_scaled(&self.embed_monomial(e), c);
        }
        self.oracle.reduce(&out)
    }

    /// All PBW exponent vectors whose embedded letter degree fits the
    /// oracle.
    pub fn bounded_monomials(&self) -> Vec<ExpVec> {
        let n = self.p.n_vars();
        let degs: Vec<u32> = (0..n).map(|k| self.root_degree(k)).collect();
        let mut out = vec![ExpVec::zero(n)];
        let mut frontier = vec![ExpVec::zero(n)];
        loop {
            let mut next = Vec::new();
            for e in &frontier {
                let top = e.top_index();
                for k in top.unwrap_or(0)..n {
                    let mut e2 = e.clone();
                    e2.0[k] += 1;
                    let deg: u32 = e2.0.iter().zip(&degs).map(|(&f, &d)| f * d).sum();
                    if deg <= ORACLE_DEGREE {
                        next.push(e2);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// The embedded PBW monomials must be a linear basis of each multidegree
    /// slice of the quotient: independent, and as many as the quotient
    /// dimension counts.
    pub fn check_isomorphism(&self) {
        let mut by_md: BTreeMap<Vec<u32>, Vec<ExpVec>> = BTreeMap::new();
        for e in self.bounded_monomials() {
            let mut md = vec![0u32; 2];
            for (k, &f) in e.0.iter().enumerate() {
                let word = self.roots[k].terms.keys().next().unwrap();
                for &l in word {
                    md[l as usize] += f;
                }
            }
            by_md.entry(md).or_default().push(e);
        }
        for (md, mons) in by_md {
            let images: Vec<FreeElem> = mons.iter().map(|e| self.embed_monomial(e)).collect();
            let mut words: Vec<Vec<u8>> = images
                .iter()
                .flat_map(|f| f.terms.keys().cloned())
                .collect();
            words.sort();
            words.dedup();
            let rows: Vec<Vec<Scalar>> = images
                .iter()
                .map(|f| {
                    words
                        .iter()
                        .map(|w| f.terms.get(w).cloned().unwrap_or_else(Scalar::zero))
                        .collect()
                })
                .collect();
            assert_eq!(
                linalg::rank(&rows),
                mons.len(),
                "embedded monomials dependent at multidegree {md:?}"
            );
            assert_eq!(
                self.oracle.dim_at(&md),
                mons.len(),
                "quotient dimension mismatch at multidegree {md:?}"
            );
        }
    }

    /// Every straightening rule must hold in the oracle quotient.
    pub fn check_structure_constants(&self) {
        let n = self.p.n_vars();
        for k in 0..n {
            for j in 0..k {
                let direct = self.oracle.reduce(&self.roots[k].mul(&self.roots[j]));
                let straightened =
                    self.embed(&self.p.multiply(&self.p.generator(k), &self.p.generator(j)));
                assert_eq!(
                    direct, straightened,
                    "relation ({k},{j}) disagrees with the oracle"
                );
            }
        }
    }

    /// Products of Chevalley generators up to the given length agree along
    /// both routes.
    pub fn check_generator_products(&self, max_len: usize) {
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &words {
                for l in 0..2u8 {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            for w in &next {
                if w.len() > 1 {
                    let free = self.oracle.reduce(&FreeElem::word(w.clone()));
                    let mut prod = self.p.one();
                    for &l in w {
                        prod = self
                            .p
                            .multiply(&prod, &self.p.generator(self.chevalley[l as usize]));
                    }
                    assert_eq!(free, self.embed(&prod), "word {w:?} disagrees");
                }
            }
            words = next;
        }
    }
}
