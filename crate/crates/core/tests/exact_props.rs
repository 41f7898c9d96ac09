use fmhs_core::exact::{cyclotomic_polynomial, rat, CycloNumber, Rational, Render, Ring, Scalar, Series, TPoly, Vars};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn cyclo(order: u32) -> impl Strategy<Value = CycloNumber> {
    let deg = cyclotomic_polynomial(order).len() - 1;
    prop::collection::vec(rational(), deg.max(1)).prop_map(move |c| CycloNumber::new(order, c))
}

fn cyclo_any() -> impl Strategy<Value = CycloNumber> {
    (2u32..=12).prop_flat_map(cyclo)
}

fn scalar_in(order: u32) -> impl Strategy<Value = Scalar> {
    prop_oneof![rational().prop_map(Scalar::from), cyclo(order).prop_map(Scalar::from)]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (2u32..=12).prop_flat_map(scalar_in)
}

/// Three scalars sharing one cyclotomic field.
fn scalars3() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (2u32..=12).prop_flat_map(|n| (scalar_in(n), scalar_in(n), scalar_in(n)))
}

fn tpoly() -> impl Strategy<Value = TPoly> {
    prop::collection::vec(rational().prop_map(Scalar::from), 0..4).prop_map(TPoly::from_coeffs)
}

fn vars2() -> Vars {
    Vars::new(&["a", "b"])
}

/// Random series in `a, b` with the given constant term.
fn series(cap: i32, constant: Option<i64>) -> impl Strategy<Value = Series<TPoly>> {
    prop::collection::vec(((0i32..=3, 0i32..=3), tpoly()), 0..8).prop_map(move |terms| {
        let mut s = Series::zero(&vars2(), cap);
        for ((i, j), c) in terms {
            if i + j <= cap && (i + j > 0 || constant.is_none()) {
                s.add_term(&[i, j], c).unwrap();
            }
        }
        if let Some(c) = constant {
            s.add_term(&[0, 0], TPoly::from_int(c)).unwrap();
        }
        s
    })
}

proptest! {
    #[test]
    fn cyclo_inverse(a in cyclo_any()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!(a.mul(&inv).is_rational() == Some(Rational::from_integer(1.into())));
    }

    #[test]
    fn zeta_is_a_root_of_its_cyclotomic_polynomial(n in 1u32..=30) {
        let z = Scalar::zeta(n);
        let mut acc = Scalar::zero();
        for c in cyclotomic_polynomial(n).iter().rev() {
            acc = acc.times(&z).plus(&Scalar::from(Rational::from_integer(c.clone())));
        }
        prop_assert!(acc.is_zero());
        prop_assert!(z.pow(n).is_one());
        for m in 1..n {
            prop_assert!(!z.pow(m).is_one());
        }
    }

    #[test]
    fn scalar_field_axioms((a, b, c) in scalars3()) {
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.minus(&a), Scalar::zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().times(&b), a.clone());
        }
    }

    #[test]
    fn series_invert(s in series(4, Some(1)), k in -3i64..=3) {
        prop_assume!(k != 0);
        let u = s.scale(&TPoly::from_int(k));
        let inv = u.invert().unwrap();
        prop_assert_eq!(u.times(&inv), Series::one(&vars2(), 4));
    }

    #[test]
    fn substitute_is_a_ring_homomorphism(
        f in series(3, None),
        g in series(3, None),
        ba in series(3, Some(0)),
        bb in series(3, Some(0)),
    ) {
        let target = Series::zero(&vars2(), 3);
        let sub = |s: &Series<TPoly>| s.substitute(&[("a", &ba), ("b", &bb)], &target).unwrap();
        prop_assert_eq!(sub(&f.times(&g)), sub(&f).times(&sub(&g)));
        prop_assert_eq!(sub(&f.plus(&g)), sub(&f).plus(&sub(&g)));
    }

    #[test]
    fn scalar_json_round_trip(a in scalar()) {
        prop_assert_eq!(Scalar::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn tpoly_json_round_trip(p in tpoly()) {
        prop_assert_eq!(TPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn series_json_round_trip(s in series(4, None)) {
        prop_assert_eq!(Series::from_json(&vars2(), 4, &s.to_json()).unwrap(), s);
    }
}

#[test]
fn frozen_values() {
    // 1/(1 + ζ_3) = -ζ_3
    let z = Scalar::zeta(3);
    assert_eq!(Scalar::one().plus(&z).inverse().unwrap(), z.negated());
    assert_eq!(cyclotomic_polynomial(12).iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["1", "0", "-1", "0", "1"]);
    assert_eq!(Scalar::from(rat(-6, 4)).to_json(), serde_json::json!("-3/2"));
}
