//! JSON wire formats.  Top-level documents carry `"format": 1`; all indices
//! on the wire are 1-based (the library is 0-based internally).
//!
//! Scalars serialize as `{"num": [["p/r", e], ...], "den": [...]}` with a
//! decimal rational coefficient string and an integer `q`-exponent per term;
//! elements as a list of `{"coeff": <scalar>, "exps": [f_1, ..., f_N]}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::center::{CenterReport, HypothesisCertificate};
use crate::deriv::{CharacterHom, DecompositionResult, DecompositionStatus, Derivation};
use crate::error::{Error, Result};
use crate::gy::Cluster;
use crate::ore::{DeltaMap, ExpVec, PBWElement, Presentation, ValidationReport};
use crate::scalars::{LaurentPoly, Scalar};

pub const FORMAT: u32 = 1;

fn check_format(format: u32) -> Result<()> {
    if format != FORMAT {
        return Err(Error::Parse(format!(
            "unsupported format {format}, expected {FORMAT}"
        )));
    }
    Ok(())
}

// ---- scalars ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalarJson {
    pub num: Vec<(String, i64)>,
    pub den: Vec<(String, i64)>,
}

fn poly_to_wire(p: &LaurentPoly) -> Vec<(String, i64)> {
    p.terms().map(|(e, c)| (c.to_string(), *e)).collect()
}

fn poly_from_wire(terms: &[(String, i64)]) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (c, e) in terms {
        let coeff = BigRational::from_str(c)
            .map_err(|err| Error::Parse(format!("bad rational {c:?}: {err}")))?;
        out = &out + &LaurentPoly::term(coeff, *e);
    }
    Ok(out)
}

pub fn scalar_to_wire(s: &Scalar) -> ScalarJson {
    ScalarJson {
        num: poly_to_wire(s.num()),
        den: poly_to_wire(s.den()),
    }
}

pub fn scalar_from_wire(w: &ScalarJson) -> Result<Scalar> {
    Scalar::from_parts(poly_from_wire(&w.num)?, poly_from_wire(&w.den)?)
}

// ---- elements ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: ScalarJson,
    pub exps: Vec<u32>,
}

pub type ElementJson = Vec<TermJson>;

pub fn element_to_wire(e: &PBWElement) -> ElementJson {
    e.terms()
        .map(|(exps, c)| TermJson {
            coeff: scalar_to_wire(c),
            exps: exps.0.clone(),
        })
        .collect()
}

pub fn element_from_wire(w: &ElementJson, n_vars: usize) -> Result<PBWElement> {
    let mut out = PBWElement::zero();
    for term in w {
        if term.exps.len() != n_vars {
            return Err(Error::Parse(format!(
                "exponent vector {:?} should have length {n_vars}",
                term.exps
            )));
        }
        out.add_term(ExpVec(term.exps.clone()), &scalar_from_wire(&term.coeff)?);
    }
    Ok(out)
}

// ---- presentations ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeltaJson {
    pub k: usize,
    pub j: usize,
    pub value: ElementJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationJson {
    #[serde(default = "default_format")]
    pub format: u32,
    #[serde(rename = "N")]
    pub n_big: usize,
    pub n: usize,
    pub skew_exponents: Vec<(usize, usize, i64)>,
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub deltas: Vec<DeltaJson>,
}

fn default_format() -> u32 {
    FORMAT
}

pub fn presentation_to_wire(p: &Presentation) -> PresentationJson {
    let mut skew = Vec::new();
    for k in 0..p.n_vars() {
        for j in 0..k {
            let a = p.skew_exponent(k, j);
            if a != 0 {
                skew.push((k + 1, j + 1, a));
            }
        }
    }
    let deltas = p
        .deltas()
        .iter()
        .map(|(&(k, j), v)| DeltaJson {
            k: k + 1,
            j: j + 1,
            value: element_to_wire(v),
        })
        .collect();
    PresentationJson {
        format: FORMAT,
        n_big: p.n_vars(),
        n: p.rank(),
        skew_exponents: skew,
        weights: (0..p.n_vars())
            .map(|i| p.weight_of_generator(i).to_vec())
            .collect(),
        deltas,
    }
}

pub fn presentation_from_wire(w: &PresentationJson) -> Result<Presentation> {
    check_format(w.format)?;
    let n = w.n_big;
    let mut skew = Vec::new();
    for &(k, j, a) in &w.skew_exponents {
        if k == 0 || j == 0 || k > n || j > n {
            return Err(Error::Parse(format!(
                "skew exponent index ({k},{j}) out of range"
            )));
        }
        skew.push((k - 1, j - 1, a));
    }
    let mut deltas: DeltaMap = BTreeMap::new();
    for d in &w.deltas {
        if d.k == 0 || d.j == 0 || d.k > n || d.j > n {
            return Err(Error::Parse(format!(
                "delta index ({},{}) out of range",
                d.k, d.j
            )));
        }
        deltas.insert((d.k - 1, d.j - 1), element_from_wire(&d.value, n)?);
    }
    let p = Presentation::new(n, &skew, deltas, w.weights.clone())?;
    if p.rank() != w.n {
        return Err(Error::Parse(format!(
            "declared rank {} but {} indices have vanishing skew derivation",
            w.n,
            p.rank()
        )));
    }
    Ok(p)
}

// ---- cluster ----

/// Wire form of the cluster: `p` and `s` use `null` for the missing
/// predecessor/successor, with `infinity` recording which infinity the null
/// stands for on each side.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClusterJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub mu: Vec<usize>,
    pub p: Vec<Option<usize>>,
    pub s: Vec<Option<usize>>,
    pub infinity: InfinityNote,
    pub y: Vec<ElementJson>,
    pub c: BTreeMap<String, ElementJson>,
    pub alpha_exponents: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfinityNote {
    pub p: String,
    pub s: String,
}

pub fn cluster_to_wire(cluster: &Cluster) -> ClusterJson {
    ClusterJson {
        format: FORMAT,
        mu: cluster.colour.iter().map(|c| c + 1).collect(),
        p: cluster.pred.iter().map(|p| p.map(|v| v + 1)).collect(),
        s: cluster.succ.iter().map(|s| s.map(|v| v + 1)).collect(),
        infinity: InfinityNote {
            p: "-inf".into(),
            s: "+inf".into(),
        },
        y: cluster.y.iter().map(element_to_wire).collect(),
        c: cluster
            .c
            .iter()
            .map(|(k, v)| ((k + 1).to_string(), element_to_wire(v)))
            .collect(),
        alpha_exponents: cluster
            .alpha_exponents
            .iter()
            .map(|(k, v)| ((k + 1).to_string(), *v))
            .collect(),
    }
}

// ---- derivations and decomposition ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub values: Vec<ElementJson>,
}

pub fn derivation_to_wire(d: &Derivation) -> DerivationJson {
    DerivationJson {
        format: FORMAT,
        values: d.values.iter().map(element_to_wire).collect(),
    }
}

pub fn derivation_from_wire(w: &DerivationJson, n_vars: usize) -> Result<Derivation> {
    check_format(w.format)?;
    if w.values.len() != n_vars {
        return Err(Error::Parse(format!(
            "derivation should have {n_vars} values, got {}",
            w.values.len()
        )));
    }
    Ok(Derivation {
        values: w
            .values
            .iter()
            .map(|v| element_from_wire(v, n_vars))
            .collect::<Result<_>>()?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StatusJson {
    Exact(String),
    Inconclusive { inconclusive_at: u32 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub x: ElementJson,
    pub eta: BTreeMap<String, ElementJson>,
    pub status: StatusJson,
}

pub fn decomposition_to_wire(r: &DecompositionResult) -> DecompositionJson {
    DecompositionJson {
        format: FORMAT,
        x: element_to_wire(&r.x),
        eta: r
            .eta
            .eta_on_basis
            .iter()
            .map(|(k, v)| ((k + 1).to_string(), element_to_wire(v)))
            .collect(),
        status: match r.status {
            DecompositionStatus::Exact => StatusJson::Exact("exact".into()),
            DecompositionStatus::InconclusiveAtBound(b) => {
                StatusJson::Inconclusive { inconclusive_at: b }
            }
        },
    }
}

pub fn character_from_wire(
    w: &BTreeMap<String, ElementJson>,
    n_vars: usize,
) -> Result<CharacterHom> {
    let mut eta = CharacterHom::zero();
    for (k, v) in w {
        let k: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad character slot key {k:?}")))?;
        if k == 0 || k > n_vars {
            return Err(Error::Parse(format!("character slot {k} out of range")));
        }
        eta.eta_on_basis
            .insert(k - 1, element_from_wire(v, n_vars)?);
    }
    Ok(eta)
}

// ---- reports ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub valid: bool,
    pub z: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
    pub failure_reason: Option<String>,
    pub search_exhausted: bool,
}

pub fn hypothesis_to_wire(cert: &HypothesisCertificate) -> HypothesisJson {
    HypothesisJson {
        format: FORMAT,
        valid: cert.valid,
        z: cert.z_exponents.clone(),
        pivots: cert.pivots.iter().map(|p| p + 1).collect(),
        failure_reason: cert.failure_reason.map(|r| r.as_str().to_string()),
        search_exhausted: cert.search_exhausted,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CenterReportJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub ell: usize,
    pub z: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
    #[serde(rename = "N_minus_ell_even")]
    pub n_minus_ell_even: bool,
    pub reduced_torus_simple: bool,
}

pub fn center_report_to_wire(r: &CenterReport) -> CenterReportJson {
    CenterReportJson {
        format: FORMAT,
        ell: r.ell,
        z: r.z_exponents.clone(),
        pivots: r.pivots.iter().map(|p| p + 1).collect(),
        n_minus_ell_even: r.n_minus_ell_even,
        reduced_torus_simple: r.reduced_torus_simple,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub valid: bool,
    pub sigma_failures: Vec<(usize, usize, usize)>,
    pub delta_failures: Vec<(usize, usize, usize)>,
    pub grading_failures: Vec<(usize, usize)>,
    pub weight_structure_failures: Vec<usize>,
    pub q_exponents: Option<BTreeMap<String, i64>>,
    pub q_skew_error: Option<String>,
    pub nilpotency_failures: Vec<(usize, usize)>,
    pub nilpotency_certified_up_to: u32,
    pub central_generators: Vec<usize>,
    pub rank: usize,
}

pub fn validation_to_wire(r: &ValidationReport) -> ValidationJson {
    let bump3 = |v: &[(usize, usize, usize)]| {
        v.iter()
            .map(|&(a, b, c)| (a + 1, b + 1, c + 1))
            .collect::<Vec<_>>()
    };
    ValidationJson {
        format: FORMAT,
        valid: r.is_valid(),
        sigma_failures: bump3(&r.sigma_failures),
        delta_failures: bump3(&r.delta_failures),
        grading_failures: r
            .grading_failures
            .iter()
            .map(|&(a, b)| (a + 1, b + 1))
            .collect(),
        weight_structure_failures: r.weight_structure_failures.iter().map(|&k| k + 1).collect(),
        q_exponents: r
            .q_exponents
            .as_ref()
            .map(|m| m.iter().map(|(k, v)| ((k + 1).to_string(), *v)).collect()),
        q_skew_error: r.q_skew_error.clone(),
        nilpotency_failures: r
            .nilpotency_failures
            .iter()
            .map(|&(a, b)| (a + 1, b + 1))
            .collect(),
        nilpotency_certified_up_to: r.nilpotency_bound,
        central_generators: r.central_generators.iter().map(|&k| k + 1).collect(),
        rank: r.rank,
    }
}

// ---- word files ----

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordTermJson {
    pub coeff: ScalarJson,
    /// 1-based generator indices, multiplied left to right.
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordFileJson {
    #[serde(default = "default_format")]
    pub format: u32,
    pub terms: Vec<WordTermJson>,
}

/// Evaluate a word file to the normal form of the element it denotes.
pub fn evaluate_word_file(p: &Presentation, w: &WordFileJson) -> Result<PBWElement> {
    check_format(w.format)?;
    let mut out = PBWElement::zero();
    for term in &w.terms {
        let mut acc = p.one();
        for &idx in &term.word {
            if idx == 0 || idx > p.n_vars() {
                return Err(Error::Parse(format!("word index {idx} out of range")));
            }
            acc = p.multiply(&acc, &p.generator(idx - 1));
        }
        out.add_scaled(&acc, &scalar_from_wire(&term.coeff)?);
    }
    Ok(out)
}

// ---- catalog documents ----

#[derive(Clone, Debug, Serialize)]
pub struct CatalogJson {
    pub format: u32,
    pub name: String,
    pub presentation: PresentationJson,
    pub expected: crate::catalog::Fixtures,
}

pub fn catalog_to_wire(entry: &crate::catalog::CatalogEntry) -> CatalogJson {
    CatalogJson {
        format: FORMAT,
        name: entry.name.to_string(),
        presentation: presentation_to_wire(&entry.presentation),
        expected: entry.fixtures.clone(),
    }
}

/// Accept either a bare presentation document or a catalog document wrapping
/// one under `"presentation"`.
pub fn presentation_from_json_value(v: &serde_json::Value) -> Result<Presentation> {
    let doc = if v.get("presentation").is_some() {
        &v["presentation"]
    } else {
        v
    };
    let w: PresentationJson = serde_json::from_value(doc.clone())
        .map_err(|e| Error::Parse(format!("bad presentation document: {e}")))?;
    presentation_from_wire(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn presentation_roundtrip() {
        for name in catalog::NAMES {
            let entry = catalog::by_name(name).unwrap();
            let wire = presentation_to_wire(&entry.presentation);
            let text = serde_json::to_string(&wire).unwrap();
            let back: PresentationJson = serde_json::from_str(&text).unwrap();
            let p = presentation_from_wire(&back).unwrap();
            assert_eq!(p, entry.presentation, "{name}");
        }
    }

    #[test]
    fn scalar_wire_uses_rational_strings() {
        let s = Scalar::from_int(3)
            .div(&(Scalar::qpow(1) - Scalar::from_int(1)))
            .unwrap();
        let w = scalar_to_wire(&s);
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.contains("[["));
        let back = scalar_from_wire(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn element_arity_checked() {
        let e: ElementJson = vec![TermJson {
            coeff: scalar_to_wire(&Scalar::one()),
            exps: vec![1, 2],
        }];
        assert!(element_from_wire(&e, 3).is_err());
        assert!(element_from_wire(&e, 2).is_ok());
    }

    #[test]
    fn word_files_multiply_in_order() {
        let entry = catalog::quantum_weyl();
        let p = &entry.presentation;
        let w = WordFileJson {
            format: FORMAT,
            terms: vec![WordTermJson {
                coeff: scalar_to_wire(&Scalar::one()),
                word: vec![2, 1],
            }],
        };
        let e = evaluate_word_file(p, &w).unwrap();
        assert_eq!(e, p.multiply(&p.generator(1), &p.generator(0)));
    }
}
