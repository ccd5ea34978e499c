//! Builders for the worked example algebras, each packaging a presentation
//! with the values the pipeline is expected to reproduce.  The structure
//! constants of the quantized enveloping algebras are frozen here and
//! re-derived in the test suite from the Serre-relation oracle, never
//! trusted from the frozen copy.

pub mod oracle;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ore::{DeltaMap, ExpVec, PBWElement, Presentation};
use crate::scalars::Scalar;

/// Expected pipeline outcomes for one entry.  `None` means "not specified".
/// `provenance` records whether the values are re-derived by the pipeline in
/// CI ("derived") or quoted from published computations ("reference").
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct Fixtures {
    pub valid: bool,
    pub central_generators: Vec<usize>,
    pub q_exponents: BTreeMap<usize, i64>,
    pub colours: Option<Vec<usize>>,
    pub prime_indices: Option<Vec<usize>>,
    pub torus_center_rank: Option<usize>,
    pub affine_center_rank: Option<usize>,
    pub hypothesis_failure: Option<String>,
    pub hh1_rank: Option<usize>,
    pub provenance: String,
}

/// A named presentation plus its expected results.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub presentation: Presentation,
    pub fixtures: Fixtures,
}

pub const NAMES: &[&str] = &[
    "qplane",
    "qspace_235",
    "qspace_111",
    "quantum_weyl",
    "central_x",
    "uq_plus_sl2",
    "uq_plus_sl3",
    "uq_plus_so5",
];

pub fn by_name(name: &str) -> Result<CatalogEntry> {
    match name {
        "qplane" => Ok(qplane()),
        "qspace_235" => Ok(qspace_235()),
        "qspace_111" => Ok(qspace_111()),
        "quantum_weyl" => Ok(quantum_weyl()),
        "central_x" => Ok(central_x()),
        "uq_plus_sl2" => Ok(uq_plus_sl2()),
        "uq_plus_sl3" => Ok(uq_plus_sl3()),
        "uq_plus_so5" => Ok(uq_plus_so5()),
        other => Err(Error::Parse(format!(
            "unknown catalog entry {other:?}; known: {}",
            NAMES.join(", ")
        ))),
    }
}

/// Quantum affine space from a skew-symmetric integer exponent matrix
/// (`x_j x_i = q^{m[i][j]} x_i x_j` for `i < j`), with unit-vector weights.
pub fn quantum_affine_space(matrix: &[Vec<i64>]) -> Result<Presentation> {
    let n = matrix.len();
    let weights: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    quantum_affine_space_weighted(matrix, weights)
}

/// Quantum affine space with an explicit weight table.
pub fn quantum_affine_space_weighted(
    matrix: &[Vec<i64>],
    weights: Vec<Vec<i64>>,
) -> Result<Presentation> {
    let n = matrix.len();
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadPresentation(
                "exponent matrix is not square".into(),
            ));
        }
        for j in 0..n {
            if matrix[i][j] != -matrix[j][i] {
                return Err(Error::BadPresentation(
                    "exponent matrix is not skew-symmetric".into(),
                ));
            }
        }
    }
    let mut skew = Vec::new();
    for k in 0..n {
        for j in 0..k {
            // x_k x_j = q^{m[j][k]} x_j x_k.
            skew.push((k, j, matrix[j][k]));
        }
    }
    Presentation::new(n, &skew, BTreeMap::new(), weights)
}

/// The quantum plane: a simple associated torus.
pub fn qplane() -> CatalogEntry {
    let presentation = quantum_affine_space(&[vec![0, 1], vec![-1, 0]]).unwrap();
    CatalogEntry {
        name: "qplane",
        presentation,
        fixtures: Fixtures {
            valid: true,
            torus_center_rank: Some(0),
            affine_center_rank: Some(0),
            colours: Some(vec![0, 1]),
            prime_indices: Some(vec![0, 1]),
            hh1_rank: Some(2),
            provenance: "derived".into(),
            ..Fixtures::default()
        },
    }
}

/// Rank-3 quantum affine space whose torus has a rank-1 center generated by
/// a mixed-sign monomial, so the affine center is scalar.
pub fn qspace_235() -> CatalogEntry {
    let presentation =
        quantum_affine_space(&[vec![0, 2, 3], vec![-2, 0, 5], vec![-3, -5, 0]]).unwrap();
    CatalogEntry {
        name: "qspace_235",
        presentation,
        fixtures: Fixtures {
            valid: true,
            torus_center_rank: Some(1),
            affine_center_rank: Some(0),
            hypothesis_failure: Some("NoNonnegativeBasis".into()),
            provenance: "reference".into(),
            ..Fixtures::default()
        },
    }
}

/// Rank-3 quantum affine space carrying an extra outer derivation beyond the
/// homogeneous ones; the pivot hypothesis fails on its mixed-sign central
/// monomial.
pub fn qspace_111() -> CatalogEntry {
    let presentation =
        quantum_affine_space(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]).unwrap();
    CatalogEntry {
        name: "qspace_111",
        presentation,
        fixtures: Fixtures {
            valid: true,
            torus_center_rank: Some(1),
            affine_center_rank: Some(0),
            hypothesis_failure: Some("NoNonnegativeBasis".into()),
            provenance: "reference".into(),
            ..Fixtures::default()
        },
    }
}

/// The quantum Weyl algebra `x_2 x_1 = q x_1 x_2 + 1`.
pub fn quantum_weyl() -> CatalogEntry {
    let mut deltas: DeltaMap = BTreeMap::new();
    deltas.insert((1, 0), PBWElement::one(2));
    let presentation = Presentation::new(2, &[(1, 0, 1)], deltas, vec![vec![1], vec![-1]]).unwrap();
    CatalogEntry {
        name: "quantum_weyl",
        presentation,
        fixtures: Fixtures {
            valid: true,
            q_exponents: BTreeMap::from([(1, -1)]),
            colours: Some(vec![0, 0]),
            prime_indices: Some(vec![1]),
            torus_center_rank: Some(0),
            affine_center_rank: Some(0),
            hh1_rank: Some(1),
            provenance: "derived".into(),
            ..Fixtures::default()
        },
    }
}

/// `x_3 x_2 = q x_2 x_3 + x_1` with `x_1` central: a valid presentation on
/// which the decomposition refuses to run.
pub fn central_x() -> CatalogEntry {
    let mut deltas: DeltaMap = BTreeMap::new();
    deltas.insert(
        (2, 1),
        PBWElement::monomial(ExpVec(vec![1, 0, 0]), Scalar::one()),
    );
    let presentation = Presentation::new(
        3,
        &[(1, 0, 0), (2, 0, 0), (2, 1, 1)],
        deltas,
        vec![vec![1, 0], vec![0, 1], vec![1, -1]],
    )
    .unwrap();
    CatalogEntry {
        name: "central_x",
        presentation,
        fixtures: Fixtures {
            valid: true,
            central_generators: vec![0],
            q_exponents: BTreeMap::from([(2, -1)]),
            colours: Some(vec![0, 1, 1]),
            prime_indices: Some(vec![0, 2]),
            torus_center_rank: Some(1),
            hh1_rank: None, // decomposition refused: central generator
            provenance: "reference".into(),
            ..Fixtures::default()
        },
    }
}

/// The rank-1 case: a polynomial ring in one central variable.
pub fn uq_plus_sl2() -> CatalogEntry {
    let presentation = Presentation::new(1, &[], BTreeMap::new(), vec![vec![1]]).unwrap();
    CatalogEntry {
        name: "uq_plus_sl2",
        presentation,
        fixtures: Fixtures {
            valid: true,
            central_generators: vec![0],
            colours: Some(vec![0]),
            prime_indices: Some(vec![0]),
            torus_center_rank: Some(1),
            affine_center_rank: Some(1),
            hh1_rank: None, // decomposition refused: central generator
            provenance: "reference".into(),
            ..Fixtures::default()
        },
    }
}

/// Positive part of the quantized enveloping algebra of type A2, on the
/// Lusztig root vectors for the reduced word (1, 2, 1):
/// `x_1 = E_1`, `x_2 = E_1 E_2 - q^{-1} E_2 E_1`, `x_3 = E_2`.
///
/// Structure constants frozen from the Serre oracle:
/// `x_2 x_1 = q^{-1} x_1 x_2`, `x_3 x_2 = q^{-1} x_2 x_3`,
/// `x_3 x_1 = q x_1 x_3 - q x_2`.
pub fn uq_plus_sl3() -> CatalogEntry {
    let mut deltas: DeltaMap = BTreeMap::new();
    deltas.insert(
        (2, 0),
        PBWElement::monomial(ExpVec(vec![0, 1, 0]), -Scalar::qpow(1)),
    );
    let presentation = Presentation::new(
        3,
        &[(1, 0, -1), (2, 0, 1), (2, 1, -1)],
        deltas,
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
    )
    .unwrap();
    CatalogEntry {
        name: "uq_plus_sl3",
        presentation,
        fixtures: Fixtures {
            valid: true,
            q_exponents: BTreeMap::from([(2, -2)]),
            colours: Some(vec![0, 1, 0]),
            prime_indices: Some(vec![1, 2]),
            torus_center_rank: Some(1),
            affine_center_rank: Some(1),
            hh1_rank: Some(2),
            provenance: "derived".into(),
            ..Fixtures::default()
        },
    }
}

/// Positive part of the quantized enveloping algebra of type B2 (first root
/// long), on the root vectors for the reduced word (1, 2, 1, 2):
/// `x_1 = E_1`, `x_2 = E_1 E_2 - q^{-2} E_2 E_1`,
/// `x_3 = x_2 E_2 - E_2 x_2`, `x_4 = E_2`.
///
/// Structure constants frozen from the Serre oracle:
/// `x_2 x_1 = q^{-2} x_1 x_2`, `x_3 x_1 = x_1 x_3 + (1 - q^2) x_2^2`,
/// `x_3 x_2 = q^{-2} x_2 x_3`, `x_4 x_1 = q^2 x_1 x_4 - q^2 x_2`,
/// `x_4 x_2 = x_2 x_4 - x_3`, `x_4 x_3 = q^{-2} x_3 x_4`.
pub fn uq_plus_so5() -> CatalogEntry {
    let mut deltas: DeltaMap = BTreeMap::new();
    deltas.insert(
        (2, 0),
        PBWElement::monomial(ExpVec(vec![0, 2, 0, 0]), Scalar::one() - Scalar::qpow(2)),
    );
    deltas.insert(
        (3, 0),
        PBWElement::monomial(ExpVec(vec![0, 1, 0, 0]), -Scalar::qpow(2)),
    );
    deltas.insert(
        (3, 1),
        PBWElement::monomial(ExpVec(vec![0, 0, 1, 0]), -Scalar::one()),
    );
    let presentation = Presentation::new(
        4,
        &[
            (1, 0, -2),
            (2, 0, 0),
            (2, 1, -2),
            (3, 0, 2),
            (3, 1, 0),
            (3, 2, -2),
        ],
        deltas,
        vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![0, 1]],
    )
    .unwrap();
    CatalogEntry {
        name: "uq_plus_so5",
        presentation,
        fixtures: Fixtures {
            valid: true,
            q_exponents: BTreeMap::from([(2, -4), (3, -2)]),
            colours: Some(vec![0, 1, 0, 1]),
            prime_indices: Some(vec![2, 3]),
            torus_center_rank: Some(2),
            affine_center_rank: Some(2),
            hh1_rank: Some(2),
            provenance: "derived".into(),
            ..Fixtures::default()
        },
    }
}

/// Free-algebra expressions of the root vectors, aligned with the
/// presentation generators; used by the oracle comparison.
pub fn root_vector_expressions(name: &str) -> Option<(oracle::CartanType, Vec<oracle::FreeElem>)> {
    use oracle::FreeElem;
    match name {
        "uq_plus_sl3" => {
            let e1 = FreeElem::word(vec![0]);
            let e2 = FreeElem::word(vec![1]);
            let e12 = e1.mul(&e2).sub(&e2.mul(&e1).scaled(&Scalar::qpow(-1)));
            Some((oracle::CartanType::A2, vec![e1, e12, e2]))
        }
        "uq_plus_so5" => {
            let e1 = FreeElem::word(vec![0]);
            let e2 = FreeElem::word(vec![1]);
            let f = e1.mul(&e2).sub(&e2.mul(&e1).scaled(&Scalar::qpow(-2)));
            let g = f.mul(&e2).sub(&e2.mul(&f));
            Some((oracle::CartanType::B2, vec![e1, f, g, e2]))
        }
        _ => None,
    }
}

/// Map a word in the Chevalley generators to the corresponding product of
/// presentation generators (for rank-two entries the Chevalley generators
/// are the first and last PBW generators).
pub fn chevalley_indices(name: &str) -> Option<Vec<usize>> {
    match name {
        "uq_plus_sl3" => Some(vec![0, 2]),
        "uq_plus_so5" => Some(vec![0, 3]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_validate() {
        for name in NAMES {
            let entry = by_name(name).unwrap();
            let report = entry.presentation.validate(16);
            assert!(report.is_valid(), "{name}: {report:?}");
            assert_eq!(
                report.central_generators, entry.fixtures.central_generators,
                "{name} central generators"
            );
            if !entry.fixtures.q_exponents.is_empty() {
                assert_eq!(
                    report.q_exponents.as_ref().unwrap(),
                    &entry.fixtures.q_exponents,
                    "{name} eigenvalue exponents"
                );
            }
        }
    }

    #[test]
    fn non_skew_matrix_rejected() {
        assert!(quantum_affine_space(&[vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn sl3_delta_sends_x1_to_x2() {
        let entry = uq_plus_sl3();
        let p = &entry.presentation;
        let d = p.apply_delta(2, &p.generator(0)).unwrap();
        assert_eq!(
            d.proportionality(&p.generator(1)).unwrap(),
            -Scalar::qpow(1)
        );
        assert!(p.apply_delta(2, &p.generator(1)).unwrap().is_zero());
    }

    #[test]
    fn unknown_name_is_a_parse_error() {
        assert!(matches!(by_name("nope"), Err(Error::Parse(_))));
    }
}
