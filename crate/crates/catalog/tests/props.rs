use hsx_catalog::entries::{bind, entry, rat};
use hsx_catalog::eight_dim::{hat_pk, random_points, triple};
use hsx_core::hypersymplectic::signature_at;
use hsx_core::structures::{has_symmetry, is_symplectic, Symmetry, TwoForm};
use hsx_core::Scalar;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flat_metric_is_neutral_for_every_positive_c(n in 1i64..60, d in 1i64..12) {
        let t = triple(&hat_pk()).unwrap();
        let c = format!("{n}/{d}");
        prop_assert_eq!(signature_at(&t.metric, &bind(&[("c", &c)])).unwrap(), (4, 4, 0));
    }

    #[test]
    fn constraint_variety_points_square_to_identity(seed in any::<u64>()) {
        let r = random_points(3, seed);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn d42_family_is_symplectic_off_the_origin(a in -20i64..20, b in -20i64..20) {
        prop_assume!((a, b) != (0, 0));
        let e = entry("d_4,lambda").unwrap();
        let v = rat("2");
        let g = e.algebra_at(Some(&v)).unwrap();
        let j = e.j_at(e.structure("J_2").unwrap(), Some(&v)).unwrap();
        let (a, b) = (Scalar::from_int(a), Scalar::from_int(b));
        let mut w = TwoForm::zeros(4, 4);
        for (i, k, x) in [(0, 1, a.clone()), (2, 3, -&a), (0, 3, b.clone()), (1, 2, -&b)] {
            w[(i, k)] = x.clone();
            w[(k, i)] = -&x;
        }
        prop_assert!(is_symplectic(&g, &w));
        prop_assert!(has_symmetry(&j, &w, Symmetry::Symmetric));
    }
}
