//! Property tests for the exact polynomial layer.

use num_complex::Complex64;
use proptest::prelude::*;
use skeincalc::laurent::LaurentPoly;

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-20i64..=20), (-9i64..=9)), 0..6)
        .prop_map(|pairs| LaurentPoly::from_terms('q', &pairs))
}

proptest! {
    #[test]
    fn addition_commutes(p in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p + &r, &r + &p);
    }

    #[test]
    fn multiplication_associates(p in poly_strategy(), r in poly_strategy(), s in poly_strategy()) {
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
    }

    #[test]
    fn multiplication_distributes(p in poly_strategy(), r in poly_strategy(), s in poly_strategy()) {
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
    }

    #[test]
    fn subtraction_of_self_is_zero(p in poly_strategy()) {
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn eval_is_ring_homomorphism(
        p in poly_strategy(),
        r in poly_strategy(),
        re in 0.5f64..1.5,
        im in -0.5f64..0.5,
    ) {
        // on degree-bounded inputs the evaluation respects + and * to 1e-12
        let x = Complex64::new(re, im);
        let sum = (&p + &r).eval(x).unwrap();
        let prod = (&p * &r).eval(x).unwrap();
        let pe = p.eval(x).unwrap();
        let re_ = r.eval(x).unwrap();
        let scale = (pe.norm() + re_.norm() + 1.0).max(pe.norm() * re_.norm());
        prop_assert!((sum - (pe + re_)).norm() <= 1e-12 * scale);
        prop_assert!((prod - pe * re_).norm() <= 1e-12 * scale);
    }
}
