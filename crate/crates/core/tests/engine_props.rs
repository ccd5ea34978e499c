//! Engine soundness properties over every catalog algebra: associativity,
//! unitality and distributivity of the normal-form product, additivity of
//! leading exponents and of weights.  The acceptance gate reruns the
//! associativity/distributivity batch at full strength (a thousand triples
//! per algebra); this suite covers the remaining structural properties.

use qna_core::catalog;
use qna_core::sample;
use rand::Rng;

#[test]
fn multiplication_is_associative_unital_distributive() {
    let mut rng = sample::rng();
    for name in catalog::NAMES {
        let entry = catalog::by_name(name).unwrap();
        let p = &entry.presentation;
        for _ in 0..100 {
            let a = sample::random_element(p, &mut rng, 3, 4, true);
            let b = sample::random_element(p, &mut rng, 3, 4, true);
            let c = sample::random_element(p, &mut rng, 3, 4, true);
            let ab_c = p.multiply(&p.multiply(&a, &b), &c);
            let a_bc = p.multiply(&a, &p.multiply(&b, &c));
            assert_eq!(ab_c, a_bc, "{name}: associativity");
            let dist = p.multiply(&a, &b.add(&c));
            assert_eq!(dist, p.multiply(&a, &b).add(&p.multiply(&a, &c)), "{name}");
            assert_eq!(p.multiply(&a, &p.one()), a, "{name}: right unit");
            assert_eq!(p.multiply(&p.one(), &a), a, "{name}: left unit");
        }
    }
}

#[test]
fn leading_exponents_are_additive() {
    let mut rng = sample::rng();
    for name in catalog::NAMES {
        let entry = catalog::by_name(name).unwrap();
        let p = &entry.presentation;
        for _ in 0..200 {
            let a = sample::random_element(p, &mut rng, 3, 4, false);
            let b = sample::random_element(p, &mut rng, 3, 4, false);
            let prod = p.multiply(&a, &b);
            let expect = a.leading_exp().unwrap().add(b.leading_exp().unwrap());
            assert_eq!(prod.leading_exp(), Some(&expect), "{name}");
        }
    }
}

#[test]
fn weights_are_additive_on_homogeneous_elements() {
    let mut rng = sample::rng();
    for name in catalog::NAMES {
        let entry = catalog::by_name(name).unwrap();
        let p = &entry.presentation;
        for _ in 0..100 {
            let a = sample::random_homogeneous(p, &mut rng, 3, 3);
            let b = sample::random_homogeneous(p, &mut rng, 3, 3);
            let prod = p.multiply(&a, &b);
            let wa = p.weight(&a).unwrap();
            let wb = p.weight(&b).unwrap();
            let expect: Vec<i64> = wa.iter().zip(&wb).map(|(x, y)| x + y).collect();
            assert_eq!(p.weight(&prod).unwrap(), expect, "{name}");
        }
    }
}

#[test]
fn sigma_is_an_algebra_map_below_its_index() {
    let mut rng = sample::rng();
    for name in ["uq_plus_sl3", "uq_plus_so5", "central_x"] {
        let entry = catalog::by_name(name).unwrap();
        let p = &entry.presentation;
        let k = p.n_vars() - 1;
        for _ in 0..50 {
            let a = below(p, &mut rng, k);
            let b = below(p, &mut rng, k);
            let lhs = p.apply_sigma(k, &p.multiply(&a, &b)).unwrap();
            let rhs = p.multiply(
                &p.apply_sigma(k, &a).unwrap(),
                &p.apply_sigma(k, &b).unwrap(),
            );
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}

fn below<R: Rng>(
    p: &qna_core::ore::Presentation,
    rng: &mut R,
    k: usize,
) -> qna_core::ore::PBWElement {
    loop {
        let e = sample::random_element(p, rng, 3, 3, true);
        let mut cut = qna_core::ore::PBWElement::zero();
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
