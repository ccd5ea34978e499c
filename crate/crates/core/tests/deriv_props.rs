//! Property suites for the derivation machinery: decomposition roundtrips,
//! uniqueness up to the centralizer, the central-multiple property of
//! homogeneous derivations on the cluster, and independence of the
//! cohomology basis modulo inner derivations.

mod support;

use qna_core::catalog;
use qna_core::center::{self, HypothesisCertificate};
use qna_core::deriv::{self, CharacterHom, DecompositionStatus, Derivation};
use qna_core::gy::{self, Cluster};
use qna_core::ore::{PBWElement, Presentation};
use qna_core::sample;
use rand::Rng;

struct Setup {
    p: Presentation,
    cluster: Cluster,
    cert: HypothesisCertificate,
}

fn setup(name: &str) -> Setup {
    let entry = catalog::by_name(name).unwrap();
    let p = entry.presentation;
    let cluster = gy::compute_y_elements(&p).unwrap();
    let b = gy::commutation_matrix(&p, &cluster).unwrap();
    let cert = center::verify_hypothesis(&b, &cluster.prime_indices(), 4);
    assert!(cert.valid);
    Setup { p, cluster, cert }
}

fn random_character<R: Rng>(s: &Setup, rng: &mut R) -> CharacterHom {
    let mut eta = CharacterHom::zero();
    let z: Vec<PBWElement> = s
        .cert
        .z_exponents
        .iter()
        .map(|f| {
            let exps = qna_core::ore::ExpVec(f.iter().map(|&e| e as u32).collect());
            gy::y_monomial(&s.p, &s.cluster, &exps)
        })
        .collect();
    for &k in &s.p.rank_indices() {
        let mut v = PBWElement::scalar(sample::random_scalar(rng), s.p.n_vars());
        for zi in &z {
            if rng.gen_bool(0.5) {
                v.add_scaled(zi, &sample::random_scalar(rng));
            }
        }
        eta.eta_on_basis.insert(k, v);
    }
    eta
}

#[test]
fn decomposition_roundtrips() {
    // 10 per algebra here; the acceptance gate runs 50 each.
    for name in ["uq_plus_sl3", "uq_plus_so5"] {
        let s = setup(name);
        let mut rng = sample::rng();
        for case in 0..10 {
            let r = sample::random_element(&s.p, &mut rng, 3, 3, false);
            let eta = random_character(&s, &mut rng);
            let theta = deriv::homogeneous_derivation(&s.p, &s.cert, &eta).unwrap();
            let d = deriv::inner(&s.p, &r).add(&theta);
            let result = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, 6).unwrap();
            assert_eq!(
                result.status,
                DecompositionStatus::Exact,
                "{name} case {case}"
            );
            // Residual checked through the engine, not the solver.
            let theta_back = deriv::homogeneous_derivation(&s.p, &s.cert, &result.eta).unwrap();
            let residual = d.sub(&deriv::inner(&s.p, &result.x)).sub(&theta_back);
            assert!(residual.is_zero(), "{name} case {case}: nonzero residual");
            assert_eq!(result.eta, eta, "{name} case {case}: character drift");
        }
    }
}

#[test]
fn decomposition_unique_up_to_centralizer() {
    let s = setup("uq_plus_sl3");
    let mut rng = sample::rng();
    let r = sample::random_element(&s.p, &mut rng, 3, 3, false);
    let eta = random_character(&s, &mut rng);
    let theta = deriv::homogeneous_derivation(&s.p, &s.cert, &eta).unwrap();
    let d = deriv::inner(&s.p, &r).add(&theta);
    let a = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, 6).unwrap();
    let b = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, 8).unwrap();
    assert_eq!(a.eta, b.eta);
    let diff = a.x.sub(&b.x);
    for i in 0..s.p.n_vars() {
        let xi = s.p.generator(i);
        assert_eq!(s.p.multiply(&diff, &xi), s.p.multiply(&xi, &diff));
    }
}

#[test]
fn homogeneous_derivations_scale_cluster_elements_centrally() {
    for name in ["uq_plus_sl3", "uq_plus_so5"] {
        let s = setup(name);
        let mut rng = sample::rng();
        let eta = random_character(&s, &mut rng);
        let theta = deriv::homogeneous_derivation(&s.p, &s.cert, &eta).unwrap();
        for k in 0..s.p.n_vars() {
            let yk = &s.cluster.y[k];
            let image = deriv::apply_derivation(&s.p, &theta, yk);
            let quot = gy::divides_left(&s.p, yk, &image)
                .expect("homogeneous derivations scale the cluster");
            for i in 0..s.p.n_vars() {
                let xi = s.p.generator(i);
                assert_eq!(
                    s.p.multiply(&quot, &xi),
                    s.p.multiply(&xi, &quot),
                    "{name}: non-central quotient at y_{k}"
                );
            }
        }
    }
}

#[test]
fn hh1_basis_is_independent_modulo_inner() {
    for name in ["uq_plus_sl3", "uq_plus_so5", "quantum_weyl"] {
        let s = setup(name);
        let basis = deriv::hh1_basis(&s.p, &s.cert).unwrap();
        let allowed = deriv::inner_combination_space(&s.p, &basis, 6);
        assert!(
            allowed.is_empty(),
            "{name}: a combination of basis classes is inner at bound 6"
        );
    }
}

#[test]
fn inner_derivations_of_basis_elements_decompose_with_zero_character() {
    let s = setup("uq_plus_so5");
    let mut rng = sample::rng();
    for _ in 0..5 {
        let r = sample::random_element(&s.p, &mut rng, 2, 2, false);
        let d = deriv::inner(&s.p, &r);
        let result = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, 5).unwrap();
        assert_eq!(result.status, DecompositionStatus::Exact);
        assert!(result.eta.is_zero());
        // Witness differs from r by something commuting with everything.
        let diff = result.x.sub(&r);
        for i in 0..s.p.n_vars() {
            let xi = s.p.generator(i);
            assert_eq!(s.p.multiply(&diff, &xi), s.p.multiply(&xi, &diff));
        }
    }
}

#[test]
fn leibniz_extension_of_delta_on_random_pairs() {
    for name in ["uq_plus_sl3", "uq_plus_so5", "quantum_weyl"] {
        let entry = catalog::by_name(name).unwrap();
        let p = entry.presentation;
        let mut rng = sample::rng();
        for k in 0..p.n_vars() {
            if p.delta_is_zero(k) {
                continue;
            }
            for _ in 0..25 {
                let a = below(&p, &mut rng, k);
                let b = below(&p, &mut rng, k);
                let lhs = p.apply_delta(k, &p.multiply(&a, &b)).unwrap();
                let rhs = p
                    .multiply(
                        &p.apply_sigma(k, &a).unwrap(),
                        &p.apply_delta(k, &b).unwrap(),
                    )
                    .add(&p.multiply(&p.apply_delta(k, &a).unwrap(), &b));
                assert_eq!(lhs, rhs, "{name}: twisted Leibniz fails at {k}");
            }
        }
    }
}

/// Random element supported strictly below index `k`.
fn below<R: Rng>(p: &Presentation, rng: &mut R, k: usize) -> PBWElement {
    loop {
        let e = sample::random_element(p, rng, 3, 3, true);
        let mut cut = PBWElement::zero();
        for (exps, c) in e.terms() {
            if exps.top_index().is_none_or(|t| t < k) {
                cut.add_term(exps.clone(), c);
            }
        }
        if !cut.is_zero() {
            return cut;
        }
    }
}

#[test]
fn character_with_central_value_scales_the_first_generator() {
    // eta sending the first basis slot to z_1 and the other slot to zero
    // yields theta(E_1) = z_1 E_1 with a central coefficient.
    let s = setup("uq_plus_sl3");
    let z1 = gy::y_monomial(
        &s.p,
        &s.cluster,
        &qna_core::ore::ExpVec(s.cert.z_exponents[0].iter().map(|&e| e as u32).collect()),
    );
    let mut eta = CharacterHom::zero();
    eta.eta_on_basis.insert(0, z1.clone());
    eta.eta_on_basis.insert(1, PBWElement::zero());
    let theta = deriv::homogeneous_derivation(&s.p, &s.cert, &eta).unwrap();
    assert_eq!(theta.values[0], s.p.multiply(&z1, &s.p.generator(0)));
    assert!(theta.values[1].is_zero());
    assert!(deriv::validate_derivation(&s.p, &theta));
}

#[test]
fn zero_character_gives_zero_derivation() {
    let s = setup("uq_plus_so5");
    let theta = deriv::homogeneous_derivation(&s.p, &s.cert, &CharacterHom::zero()).unwrap();
    assert!(theta.is_zero());
}

#[test]
fn inner_witness_recovered_on_sl3() {
    let s = setup("uq_plus_sl3");
    let mut rng = sample::rng();
    for _ in 0..10 {
        let r = sample::random_element(&s.p, &mut rng, 3, 3, false);
        let d = deriv::inner(&s.p, &r);
        let x = deriv::is_inner_up_to(&s.p, &d, 3)
            .unwrap()
            .expect("inner with a witness within the bound");
        assert_eq!(deriv::inner(&s.p, &x), d);
    }
}

#[test]
fn default_degree_bound_suffices_for_roundtrips() {
    let s = setup("uq_plus_so5");
    let mut rng = sample::rng();
    let r = sample::random_element(&s.p, &mut rng, 3, 3, false);
    let d = deriv::inner(&s.p, &r);
    let bound = deriv::default_degree_bound(&s.cluster, &d);
    assert!(bound >= r.total_degree());
    let result = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, bound).unwrap();
    assert_eq!(result.status, DecompositionStatus::Exact);
}

#[test]
fn undersized_bound_reports_inconclusive_not_failure() {
    let s = setup("uq_plus_sl3");
    // ad of a degree-3 monomial needs a degree-3 witness.
    let r = s.p.multiply(
        &s.p.multiply(&s.p.generator(0), &s.p.generator(1)),
        &s.p.generator(2),
    );
    let d = deriv::inner(&s.p, &r);
    let result = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, 1).unwrap();
    assert_eq!(result.status, DecompositionStatus::InconclusiveAtBound(1));
    // The same derivation at an adequate bound is exact.
    let result = deriv::decompose(&s.p, &s.cluster, &s.cert, &d, 3).unwrap();
    assert_eq!(result.status, DecompositionStatus::Exact);
    // is_inner_up_to mirrors the behaviour.
    assert!(deriv::is_inner_up_to(&s.p, &d, 1).unwrap().is_none());
    assert!(deriv::is_inner_up_to(&s.p, &d, 3).unwrap().is_some());
}

#[test]
fn centers_report_refuses_invalid_certificates() {
    let entry = catalog::qspace_235();
    let p = entry.presentation;
    let cluster = gy::compute_y_elements(&p).unwrap();
    let b = gy::commutation_matrix(&p, &cluster).unwrap();
    let cert = center::verify_hypothesis(&b, &cluster.prime_indices(), 4);
    assert!(!cert.valid);
    assert!(center::centers_report(&p, &cluster, &b, &cert).is_err());
}

#[test]
fn euler_type_derivation_on_weighted_relations() {
    // D(x_i) = x_i validates whenever every relation is weight-homogeneous,
    // which holds for the quantum plane.
    let entry = catalog::qplane();
    let p = entry.presentation;
    let d = Derivation {
        values: (0..2).map(|i| p.generator(i)).collect(),
    };
    assert!(deriv::validate_derivation(&p, &d));
    // On the Weyl algebra the same assignment breaks the constant term.
    let entry = catalog::quantum_weyl();
    let p = entry.presentation;
    let d = Derivation {
        values: (0..2).map(|i| p.generator(i)).collect(),
    };
    assert!(!deriv::validate_derivation(&p, &d));
    // But the signed assignment from the weight table validates.
    let d = Derivation {
        values: vec![p.generator(0), p.generator(1).neg()],
    };
    assert!(deriv::validate_derivation(&p, &d));
}
