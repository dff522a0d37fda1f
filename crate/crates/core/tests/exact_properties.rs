use proptest::prelude::*;
use runlab::exactnum::{factorial, rat, PowerSeries, QuadExt, RatPoly, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn discriminant() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(rat(2, 1)),
        Just(rat(3, 4)),
        Just(rat(-1, 1)),
        Just(rat(5, 9)),
        Just(rat(8, 9))
    ]
}

fn quad_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    discriminant().prop_flat_map(|d| {
        let el = move || {
            (rational(), rational()).prop_map({
                let d = d.clone();
                move |(a, b)| QuadExt::new(a, b, d.clone())
            })
        };
        (el(), el(), el())
    })
}

fn poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(rational(), 0..6).prop_map(RatPoly::from_coeffs)
}

proptest! {
    #[test]
    fn field_axioms((u, v, w) in quad_triple()) {
        prop_assert_eq!(&(&u + &v) * &w, &(&u * &w) + &(&v * &w));
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&(&u - &v) + &v, u.clone());
        if !u.is_zero() {
            let inv = u.inverse().unwrap();
            prop_assert_eq!(&u * &inv, QuadExt::one(u.d()));
        }
    }

    #[test]
    fn norm_is_multiplicative((u, v, _) in quad_triple()) {
        prop_assert_eq!((&u * &v).norm(), u.norm() * v.norm());
        prop_assert_eq!(u.norm(), (&u * &u.conjugate()).a().clone());
    }

    #[test]
    fn polynomial_derivative_product_rule(p in poly(), q in poly()) {
        let lhs = (&p * &q).derivative();
        let rhs = &(&p.derivative() * &q) + &(&p * &q.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), x in rational()) {
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
    }

    #[test]
    fn series_division_inverts_multiplication(
        (a, b, c) in quad_triple(),
        tail in prop::collection::vec((rational(), rational()), 1..6),
    ) {
        prop_assume!(!a.is_zero());
        let d = a.d().clone();
        let mut gc = vec![a];
        gc.extend(tail.iter().map(|(p, q)| QuadExt::new(p.clone(), q.clone(), d.clone())));
        let g = PowerSeries::from_coeffs(&d, gc, 6).unwrap();
        let f = PowerSeries::from_coeffs(&d, vec![b, c], 6).unwrap();
        prop_assert_eq!(f.div(&g).unwrap().mul(&g).unwrap(), f);
    }

    #[test]
    fn pythagorean_identity((c, _, _) in quad_triple()) {
        let s = PowerSeries::sin(&c, 8);
        let k = PowerSeries::cos(&c, 8);
        let sum = s.mul(&s).unwrap().add(&k.mul(&k).unwrap()).unwrap();
        prop_assert_eq!(sum, PowerSeries::one(c.d(), 8));
    }

    #[test]
    fn exponential_is_its_own_derivative((c, _, _) in quad_triple()) {
        let e = PowerSeries::exp(&c, 8);
        let scaled = PowerSeries::exp(&c, 7).scale(&c).unwrap();
        prop_assert_eq!(e.derivative(), scaled);
    }
}

#[test]
fn quadratic_field_worked_values() {
    let d = rat(2, 1);
    let s = QuadExt::root(&d);
    assert_eq!(&s * &s, QuadExt::rational(rat(2, 1), &d));
    assert_eq!(
        s.inverse().unwrap(),
        QuadExt::new(rat(0, 1), rat(1, 2), d.clone())
    );
    // Square discriminants collapse to the rational root.
    assert_eq!(QuadExt::root(&rat(9, 4)).as_rational(), Some(&rat(3, 2)));
    assert_eq!(factorial(10), 3_628_800.into());
}

#[test]
fn exp_series_coefficients() {
    let d = rat(3, 4);
    let e = PowerSeries::exp(&QuadExt::one(&d), 4);
    let expected: Vec<Rational> = [1, 1, 2, 6, 24].iter().map(|f| rat(1, *f)).collect();
    let got: Vec<Rational> = e
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    assert_eq!(got, expected);
}
