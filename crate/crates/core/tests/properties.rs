//! Properties that tie several modules together: component counts against
//! quotient complexes, the involution on dual complexes, freeness of the
//! involution for even data, and the type read off two ways.

use kulikov_core::degeneration::{gamma_act, ConePoint, DegenerationData, GammaElement};
use kulikov_core::fan::{
    auto_scale, check_gamma_admissible, check_h_freeness, check_property_d, safe_window, LatticeSimplex,
    PeriodicTriangulation, GAMMA_CHECK_RADIUS,
};
use kulikov_core::lattice::{component_group, two_torsion_order, IntMatrix, Sign};
use kulikov_core::monodromy::{kummer_monodromy, nilpotency_index, standard_n, type_from_index, unipotent_or_negative};
use kulikov_core::report::{classify, ReportOptions};
use kulikov_core::strata::{component_counts, dual_complex, euler_characteristic, h_quotient, DeltaComplex};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn data(b: &[&[i64]]) -> DegenerationData {
    DegenerationData::with_identity_phi(IntMatrix::from_i64(b)).unwrap()
}

fn test_family() -> Vec<DegenerationData> {
    let mut out = vec![data(&[&[2, 0], &[0, 4]])];
    for k in 1..=5 {
        out.push(data(&[&[2 * k, 0], &[0, 2 * k]]));
        out.push(data(&[&[2 * k]]));
    }
    out
}

#[test]
fn quotient_vertices_match_component_counts() {
    for d in test_family() {
        let s = auto_scale(&d).unwrap();
        assert_eq!(s.nu, 1, "even data needs no base change");
        let (a, act) = dual_complex(&s.fan).unwrap();
        let x = h_quotient(&a, &act);
        let phi = component_group(d.b()).unwrap();
        let two = two_torsion_order(&phi);
        let by_group = &two + (phi.order() - &two) / 2;
        let counts = component_counts(&d).unwrap();
        assert_eq!(BigInt::from(x.count(0)), by_group, "b = {:?}", d.b());
        assert_eq!(counts.n_x, by_group);
        assert_eq!(BigInt::from(a.count(0)), counts.n_a);
    }
}

#[test]
fn involution_is_valid_and_quotients_are_delta_complexes() {
    for d in test_family() {
        let s = auto_scale(&d).unwrap();
        let (a, act) = dual_complex(&s.fan).unwrap();
        assert!(act.is_involution());
        assert!(act.commutes_with_faces(&a));
        let x = h_quotient(&a, &act);
        // from_doc re-checks the face identities of every triangle
        let back = DeltaComplex::from_doc(&x.to_doc(None)).unwrap();
        assert_eq!(back.count(2), x.count(2));
        match d.rank() {
            2 => {
                assert_eq!(euler_characteristic(&a), 0);
                assert!(a.is_closed_surface());
                assert!(x.is_sphere());
            }
            _ => {
                assert!(a.is_cycle());
                assert!(x.is_chain());
            }
        }
    }
}

#[test]
fn skew_and_non_identity_data_run_through_the_pipeline() {
    // Φ = Z/2 ⊕ Z/6: #Φ[2] = 4, N_X = 4 + (12 − 4)/2 = 8
    let skew = data(&[&[4, 2], &[2, 4]]);
    let r = classify(&skew, ReportOptions::default()).unwrap();
    assert_eq!(r.n_x, BigInt::from(8));
    assert!(r.consistent(), "{:?}", r.failures());

    // φ(e_1) = e_1, φ(e_2) = e_1 + e_2 and M = 2·Id
    let phi = IntMatrix::from_i64(&[&[1, 0], &[1, 1]]);
    let b = IntMatrix::from_i64(&[&[2, -2], &[0, 2]]);
    let d = DegenerationData::new(2, phi, b, None).unwrap();
    assert_eq!(d.pairing_matrix(), IntMatrix::diagonal([2, 2]));
    let r = classify(&d, ReportOptions { max_e: Some(4), ..Default::default() }).unwrap();
    assert_eq!(r.n_x, BigInt::from(4));
    assert!(r.consistent(), "{:?}", r.failures());
}

#[test]
fn type_from_monodromy_matches_type_from_complex() {
    for d in [data(&[]), data(&[&[6]]), data(&[&[2, 0], &[0, 6]])] {
        let r = classify(&d, ReportOptions::default()).unwrap();
        let n = standard_n(d.rank()).unwrap();
        let index = nilpotency_index(&kummer_monodromy(&n).unwrap().to_operator()).unwrap();
        assert_eq!(type_from_index(index).unwrap(), r.kulikov_type);
    }
}

#[test]
fn checks_do_not_depend_on_representatives() {
    let s = auto_scale(&data(&[&[2, 0], &[0, 4]])).unwrap();
    let t = &s.fan.triangulation;
    let lambda = t.lattice().basis().to_vec();
    let moved: Vec<LatticeSimplex> = t
        .simplices()
        .enumerate()
        .map(|(i, simplex)| {
            let k = i as i64 % 3 - 1;
            let shift: Vec<i64> = lambda[0].iter().zip(&lambda[1]).map(|(a, b)| k * a - 2 * k * b).collect();
            simplex.translate(&shift)
        })
        .collect();
    let again = PeriodicTriangulation::new(2, t.lattice().clone(), moved).unwrap();
    assert_eq!(&again, t);
    let w = safe_window(t);
    assert_eq!(check_property_d(&again, w).unwrap(), check_property_d(t, w).unwrap());
    assert_eq!(check_h_freeness(&again, &s.data, w).unwrap(), check_h_freeness(t, &s.data, w).unwrap());
}

#[test]
fn gamma_action_preserves_the_fan_on_the_window() {
    for d in test_family() {
        let s = auto_scale(&d).unwrap();
        let violations = check_gamma_admissible(&s.fan.triangulation, &s.data, GAMMA_CHECK_RADIUS).unwrap();
        assert!(violations.is_empty());
        // cross-check one image through the cone action itself
        let t = d.rank();
        if t == 0 {
            continue;
        }
        let y: Vec<BigInt> = (0..t).map(|i| BigInt::from(i as i64 + 1)).collect();
        let g = GammaElement::new(y, Sign::Minus);
        for simplex in s.fan.triangulation.simplices() {
            let image: Vec<Vec<i64>> = simplex
                .vertices()
                .iter()
                .map(|v| {
                    let p = ConePoint::new(v.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(1));
                    let q = gamma_act(&s.data, &g, &p);
                    assert_eq!(q.s, BigInt::from(1));
                    q.l.iter().map(|x| x.to_i64().unwrap()).collect()
                })
                .collect();
            let image = LatticeSimplex::new(image).unwrap();
            assert!(s.fan.triangulation.contains_class(&image));
        }
    }
}

fn even_pd() -> impl Strategy<Value = [[i64; 2]; 2]> {
    (1i64..=6, -6i64..=6, 1i64..=6)
        .prop_filter("positive definite", |&(p, q, r)| p * r > q * q)
        .prop_map(|(p, q, r)| [[2 * p, 2 * q], [2 * q, 2 * r]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn even_data_is_free_and_certified(b in even_pd()) {
        let d = data(&[&b[0], &b[1]]);
        let s = auto_scale(&d).unwrap();
        prop_assert_eq!(s.nu, 1);
        let w = safe_window(&s.fan.triangulation);
        prop_assert!(check_h_freeness(&s.fan.triangulation, &s.data, w).unwrap().is_empty());
        prop_assert!(s.fan.certificates.all());
        let r = classify(&d, ReportOptions::default()).unwrap();
        prop_assert!(r.consistent(), "{:?}", r.failures());
    }

    #[test]
    fn even_rank_one_is_free(k in 1i64..=20) {
        let d = data(&[&[2 * k]]);
        let s = auto_scale(&d).unwrap();
        let w = safe_window(&s.fan.triangulation);
        prop_assert!(check_h_freeness(&s.fan.triangulation, &s.data, w).unwrap().is_empty());
    }

    #[test]
    fn sign_is_recovered_from_scaled_unipotents(
        upper in proptest::collection::vec(-4i64..=4, 6),
        minus in proptest::bool::ANY,
    ) {
        let mut rows = [[0i64; 4]; 4];
        let mut it = upper.into_iter();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
            for x in row.iter_mut().skip(i + 1) {
                *x = it.next().unwrap();
            }
        }
        let u = kulikov_core::RationalOperator::from_i64(&rows.iter().map(|r| &r[..]).collect::<Vec<_>>());
        let (f, s) = if minus { (u.neg(), Sign::Minus) } else { (u, Sign::Plus) };
        prop_assert_eq!(unipotent_or_negative(&f).unwrap(), s);
    }
}
