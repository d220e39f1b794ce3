mod common;

use common::{invertible, nonzero_ratfunc, ratfunc};
use proptest::prelude::*;
use tannakit::field::rational::rat;
use tannakit::field::{
    commutation_factor, mat_inverse, parse_ratfunc, rf_derive, rf_equals, rf_substitute, DerivationTable, RatFunc,
    RfMatrix, SubstEndo, Vars,
};

fn xy() -> Vars {
    Vars::new(["x", "y"])
}

/// `∂ = d/dx` with `y` constant.
fn d() -> DerivationTable {
    DerivationTable::d_by(&xy(), "x").unwrap()
}

/// Endomorphisms that commute with `d/dx` up to a factor.
fn endo() -> impl Strategy<Value = SubstEndo> {
    let x_images = prop::sample::select(vec!["x", "x + 1", "x - 1/2", "2*x", "-3*x", "2*x + y", "x + y"]);
    let y_images = prop::sample::select(vec!["y", "2*y", "y + 1", "-y"]);
    (x_images, y_images).prop_map(|(a, b)| {
        let v = xy();
        SubstEndo::with_images(&v, [("x", parse_ratfunc(a, &v).unwrap()), ("y", parse_ratfunc(b, &v).unwrap())]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_laws(f in ratfunc(xy()), g in ratfunc(xy()), h in ratfunc(xy())) {
        prop_assert!(rf_equals(&(&(&f + &g) + &h), &(&f + &(&g + &h))).unwrap());
        prop_assert!(rf_equals(&(&(&f * &g) * &h), &(&f * &(&g * &h))).unwrap());
        prop_assert!(rf_equals(&(&f * &(&g + &h)), &(&(&f * &g) + &(&f * &h))).unwrap());
        prop_assert!(rf_equals(&(&f * &g), &(&g * &f)).unwrap());
        prop_assert!(rf_equals(&(&f - &f), &RatFunc::zero(&xy())).unwrap());
    }
}

proptest! {
    #[test]
    fn division_inverts_multiplication(f in ratfunc(xy()), g in nonzero_ratfunc(xy())) {
        prop_assert_eq!(&(&f * &g) / &g, f);
    }

    #[test]
    fn leibniz_and_linearity(f in ratfunc(xy()), g in ratfunc(xy()), c in -5i64..5) {
        let d = d();
        prop_assert_eq!(rf_derive(&(&f * &g), &d), &(&rf_derive(&f, &d) * &g) + &(&f * &rf_derive(&g, &d)));
        let lin = &f.scale(&rat(c, 1)) + &g;
        prop_assert_eq!(rf_derive(&lin, &d), &rf_derive(&f, &d).scale(&rat(c, 1)) + &rf_derive(&g, &d));
    }

    #[test]
    fn substitution_is_a_homomorphism(f in ratfunc(xy()), g in ratfunc(xy()), s in endo(), t in endo()) {
        let apply = |h: &RatFunc, e: &SubstEndo| rf_substitute(h, e);
        let (sf, sg) = match (apply(&f, &s), apply(&g, &s)) {
            (Ok(a), Ok(b)) => (a, b),
            // the image of a denominator can vanish
            _ => return Ok(()),
        };
        prop_assert_eq!(apply(&(&f + &g), &s).unwrap(), &sf + &sg);
        prop_assert_eq!(apply(&(&f * &g), &s).unwrap(), &sf * &sg);
        if let Ok(inner) = apply(&f, &s) {
            if let Ok(seq) = apply(&inner, &t) {
                // t∘s applies s first
                prop_assert_eq!(apply(&f, &t.compose(&s).unwrap()).unwrap(), seq);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn commutation_factor_is_exact(f in ratfunc(xy()), s in endo()) {
        let d = d();
        let lambda = commutation_factor(&s, &d).unwrap();
        if let Ok(sf) = rf_substitute(&f, &s) {
            let lhs = rf_derive(&sf, &d);
            let rhs = &lambda * &rf_substitute(&rf_derive(&f, &d), &s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_is_two_sided(m in invertible(xy(), 2), k in invertible(Vars::new(["x"]), 3)) {
        for m in [m, k] {
            let inv = mat_inverse(&m).unwrap();
            let id = RfMatrix::identity(m.rows(), &RatFunc::one(m.vars()));
            prop_assert!(m.mul(&inv).unwrap().equals(&id).unwrap());
            prop_assert!(inv.mul(&m).unwrap().equals(&id).unwrap());
        }
    }
}
