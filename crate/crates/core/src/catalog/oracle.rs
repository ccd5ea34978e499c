//! Independent oracle for the rank-two quantized enveloping algebras: normal
//! forms in the free algebra on the Chevalley generators modulo the
//! two-sided ideal of quantum Serre relations, computed degree by degree by
//! exact linear algebra.
//!
//! Nothing here touches the straightening engine; the catalog tests compare
//! the two routes on structure constants and low-degree products.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

/// A word in the free algebra: a sequence of generator indices.
pub type Word = Vec<u8>;

/// An element of the free algebra on `n` generators over `Q(q)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FreeElem {
    pub terms: BTreeMap<Word, Scalar>,
}

impl FreeElem {
    pub fn zero() -> Self {
        FreeElem::default()
    }

    pub fn word(w: Word) -> Self {
        FreeElem::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElem, c: &Scalar) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }

    pub fn add(&self, other: &FreeElem) -> FreeElem {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &FreeElem) -> FreeElem {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scaled(&self, c: &Scalar) -> FreeElem {
        let mut out = FreeElem::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }

    /// Multidegree: letter counts per generator.
    pub fn multidegree(&self, n_gens: usize) -> Option<Vec<u32>> {
        let mut md: Option<Vec<u32>> = None;
        for w in self.terms.keys() {
            let mut counts = vec![0u32; n_gens];
            for &l in w {
                counts[l as usize] += 1;
            }
            match &md {
                Some(prev) if *prev != counts => return None,
                Some(_) => {}
                None => md = Some(counts),
            }
        }
        md
    }
}

/// Symmetric quantum integer `[m]_v = (v^m - v^-m)/(v - v^-1)` at `v = q^d`.
pub fn q_int(m: u32, d: i64) -> Scalar {
    let mut out = Scalar::zero();
    // [m]_v = v^(m-1) + v^(m-3) + ... + v^(1-m)
    let m = m as i64;
    let mut e = m - 1;
    while e >= 1 - m {
        out = out + Scalar::qpow(e * d);
        e -= 2;
    }
    out
}

/// Gaussian binomial with the symmetric convention at `v = q^d`.
pub fn q_binom(n: u32, k: u32, d: i64) -> Scalar {
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for i in 0..k {
        num = num * q_int(n - i, d);
        den = den * q_int(i + 1, d);
    }
    num.div(&den).expect("quantum factorial is nonzero")
}

/// Rank-two Cartan data for the shipped types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CartanType {
    /// `a_12 = a_21 = -1`, both roots of the same length.
    A2,
    /// `a_12 = -1`, `a_21 = -2`; the first root long (`d = (2, 1)`).
    B2,
}

impl CartanType {
    pub fn cartan_matrix(&self) -> [[i64; 2]; 2] {
        match self {
            CartanType::A2 => [[2, -1], [-1, 2]],
            CartanType::B2 => [[2, -1], [-2, 2]],
        }
    }

    pub fn symmetrizers(&self) -> [i64; 2] {
        match self {
            CartanType::A2 => [1, 1],
            CartanType::B2 => [2, 1],
        }
    }
}

/// The quantum Serre relations for the given Cartan data.
pub fn serre_relations(ct: CartanType) -> Vec<FreeElem> {
    let a = ct.cartan_matrix();
    let d = ct.symmetrizers();
    let mut rels = Vec::new();
    for i in 0..2usize {
        for j in 0..2usize {
            if i == j {
                continue;
            }
            let top = (1 - a[i][j]) as u32;
            let mut rel = FreeElem::zero();
            for k in 0..=top {
                let mut w: Word = Vec::with_capacity(top as usize + 1);
                w.extend(std::iter::repeat_n(i as u8, (top - k) as usize));
                w.push(j as u8);
                w.extend(std::iter::repeat_n(i as u8, k as usize));
                let sign = if k % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                rel.add_term(w, &(sign * q_binom(top, k, d[i])));
            }
            rels.push(rel);
        }
    }
    rels
}

/// Row echelon data for one multidegree slice of the Serre ideal: rows keyed
/// by their leading word, fully reduced against each other.
#[derive(Clone, Debug, Default)]
struct Echelon {
    rows: BTreeMap<Word, FreeElem>,
}

impl Echelon {
    /// Reduce an element against the stored rows.
    fn reduce(&self, f: &FreeElem) -> FreeElem {
        let mut out = f.clone();
        loop {
            let hit = out.terms.iter().rev().find_map(|(w, c)| {
                self.rows
                    .get(w)
                    .map(|row| (w.clone(), c.clone(), row.clone()))
            });
            let Some((_, c, row)) = hit else { break };
            out.add_scaled(&row, &-c);
        }
        out
    }

    fn insert(&mut self, f: FreeElem) -> bool {
        let reduced = self.reduce(&f);
        if reduced.is_zero() {
            return false;
        }
        let (lead, lc) = reduced
            .terms
            .iter()
            .next_back()
            .map(|(w, c)| (w.clone(), c.clone()))
            .unwrap();
        let inv = lc.inv().expect("leading coefficient nonzero");
        let normalized = reduced.scaled(&inv);
        // Back-substitute into existing rows so reduction is one pass.
        let mut updated: Vec<(Word, FreeElem)> = Vec::new();
        for (w, row) in &self.rows {
            let c = row.terms.get(&lead).cloned();
            if let Some(c) = c {
                let mut nr = row.clone();
                nr.add_scaled(&normalized, &-c);
                updated.push((w.clone(), nr));
            }
        }
        for (w, nr) in updated {
            self.rows.insert(w, nr);
        }
        self.rows.insert(lead, normalized);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Normal forms modulo the quantum Serre ideal, valid up to `max_degree`.
pub struct SerreOracle {
    n_gens: usize,
    max_degree: u32,
    slices: BTreeMap<Vec<u32>, Echelon>,
}

impl SerreOracle {
    pub fn new(ct: CartanType, max_degree: u32) -> SerreOracle {
        let relations = serre_relations(ct);
        let n_gens = 2usize;
        let mut slices: BTreeMap<Vec<u32>, Echelon> = BTreeMap::new();
        for rel in &relations {
            let deg = rel.terms.keys().next().map(|w| w.len() as u32).unwrap();
            for total in deg..=max_degree {
                let pad = (total - deg) as usize;
                // All splits u . rel . v with |u| + |v| = pad.
                for left_len in 0..=pad {
                    for u in words(n_gens, left_len) {
                        for v in words(n_gens, pad - left_len) {
                            let e = FreeElem::word(u.clone())
                                .mul(rel)
                                .mul(&FreeElem::word(v.clone()));
                            let md = e
                                .multidegree(n_gens)
                                .expect("relation slices are homogeneous");
                            slices.entry(md).or_default().insert(e);
                        }
                    }
                }
            }
        }
        SerreOracle {
            n_gens,
            max_degree,
            slices,
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Canonical representative of the coset of `f`.
    pub fn reduce(&self, f: &FreeElem) -> FreeElem {
        let mut out = FreeElem::zero();
        // Reduce each multidegree slice separately.
        let mut by_md: BTreeMap<Vec<u32>, FreeElem> = BTreeMap::new();
        for (w, c) in &f.terms {
            let mut counts = vec![0u32; self.n_gens];
            for &l in w {
                counts[l as usize] += 1;
            }
            by_md.entry(counts).or_default().add_term(w.clone(), c);
        }
        for (md, part) in by_md {
            let total: u32 = md.iter().sum();
            assert!(
                total <= self.max_degree,
                "oracle only valid up to degree {}",
                self.max_degree
            );
            match self.slices.get(&md) {
                Some(ech) => out.add_scaled(&ech.reduce(&part), &Scalar::one()),
                None => out.add_scaled(&part, &Scalar::one()),
            }
        }
        out
    }

    /// Dimension of the quotient in one multidegree.
    pub fn dim_at(&self, md: &[u32]) -> usize {
        let total: u32 = md.iter().sum();
        assert!(total <= self.max_degree);
        let all = count_words(md);
        let cut = self.slices.get(md).map_or(0, |e| e.rank());
        all - cut
    }
}

/// All words of the given length over `n` letters, lexicographic.
pub fn words(n_gens: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n_gens);
        for w in &out {
            for l in 0..n_gens as u8 {
                let mut w2 = w.clone();
                w2.push(l);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

fn count_words(md: &[u32]) -> usize {
    // Multinomial (sum md)! / prod md_i!.
    let mut num = 1usize;
    let mut k = 0u32;
    let mut den = 1usize;
    for &m in md {
        for i in 1..=m {
            k += 1;
            num *= k as usize;
            den *= i as usize;
        }
    }
    num / den
}
