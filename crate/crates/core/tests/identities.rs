use num_complex::Complex64;
use proptest::prelude::*;

use satake::adjoint_l::{adjoint_factor_direct, KfExpansion};
use satake::characters::{schur, schur_jt, weyl_character, TorusPoint};
use satake::exact::{direct_exact, kf_exact, n3_explicit_exact, scale_exponent, RationalTorusPoint, SchurTable};
use satake::lie_typea::{aleph, kf_closed_form_n3, kostka_foulkes, Weight};

fn torus(n: usize) -> impl Strategy<Value = TorusPoint> {
    prop::collection::vec(-3.2f64..3.2, n - 1).prop_map(|t| TorusPoint::new(t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_matches_definition(l1 in 0i64..7, l2 in 0i64..7) {
        let def = kostka_foulkes(&aleph(&[l2, l1]).unwrap(), &Weight::zero(3), 3).unwrap();
        prop_assert_eq!(def, kf_closed_form_n3(l1, l2).unwrap());
    }

    #[test]
    fn schur_agrees_with_weyl_character(x in torus(3), m1 in 0i64..4, m2 in 0i64..4) {
        let s = schur(&[m1, m2], &x.satake()).unwrap();
        let w = weyl_character(&aleph(&[m1, m2]).unwrap(), &x).unwrap();
        let jt = schur_jt(&[m1, m2], &x.satake()).unwrap();
        prop_assert!((s - w).norm() < 1e-9 * (1.0 + w.norm()), "{} {}", s, w);
        prop_assert!((s - jt).norm() < 1e-9 * (1.0 + jt.norm()));
    }

    #[test]
    fn schur_of_conjugate_point_is_conjugate(x in torus(4), m in prop::collection::vec(0i64..3, 3)) {
        let s = x.satake();
        let c = TorusPoint::new(x.thetas().iter().map(|t| -t).collect()).unwrap();
        let a = schur(&m, &s).unwrap();
        let b = schur(&m, &c.satake()).unwrap();
        prop_assert!((a.conj() - b).norm() < 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn adjoint_factor_is_real_on_the_torus(x in torus(3)) {
        // adjoint eigenvalues come in conjugate pairs
        let f = adjoint_factor_direct(&x.satake(), 3, 8).unwrap();
        for k in 0..=8 {
            prop_assert!(f.coeff(k).im.abs() < 1e-9 * (1.0 + f.coeff(k).re.abs()));
        }
    }

    #[test]
    fn rational_points_satisfy_identities_exactly(
        a in -9i64..10, b in 1i64..10, c in -9i64..10, d in 1i64..10,
    ) {
        let x = RationalTorusPoint::from_slopes(&[(a, b), (c, d)]).unwrap();
        let exp = KfExpansion::new(3, 5).unwrap();
        let e = scale_exponent(&exp);
        let table = SchurTable::new(&x, 10);
        let direct = direct_exact(&x, 5, e).unwrap();
        prop_assert_eq!(&kf_exact(&exp, &table, e).unwrap(), &direct);
        prop_assert_eq!(&n3_explicit_exact(&table, 5, e).unwrap(), &direct);
    }
}

#[test]
fn identity_point_gives_dimensions() {
    let x = TorusPoint::identity(3);
    let v = schur(&[1, 1], &x.satake()).unwrap();
    assert!((v - Complex64::new(8.0, 0.0)).norm() < 1e-12);
}
