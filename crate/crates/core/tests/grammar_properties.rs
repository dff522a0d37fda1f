use num_bigint::BigInt;
use proptest::prelude::*;
use runlab::grammar::{leibniz_check, parse_grammar, parse_mpoly, Grammar, MPoly, Monomial};

fn mpoly_over(letters: &'static [char]) -> impl Strategy<Value = MPoly> {
    let term =
        (prop::collection::vec(0u32..3, letters.len()), -4i64..=4).prop_map(move |(exps, c)| {
            let mono = Monomial::from_exponents(letters.iter().copied().zip(exps));
            (mono, BigInt::from(c))
        });
    prop::collection::vec(term, 1..4).prop_map(MPoly::from_terms)
}

fn fixture() -> impl Strategy<Value = (Grammar, &'static [char])> {
    prop_oneof![
        Just((Grammar::main(), &['x', 'y', 'z'][..])),
        Just((Grammar::dumont(), &['x', 'y'][..])),
        Just((Grammar::peaks(), &['y', 'z'][..])),
        Just((Grammar::schett(), &['x', 'y', 'z'][..])),
    ]
}

fn grammar_with_pair() -> impl Strategy<Value = (Grammar, MPoly, MPoly, i64)> {
    fixture().prop_flat_map(|(g, letters)| {
        (Just(g), mpoly_over(letters), mpoly_over(letters), -3i64..=3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_linear((g, u, v, c) in grammar_with_pair()) {
        let c = BigInt::from(c);
        let lhs = g.derive(&(&u.scale(&c) + &v)).unwrap();
        let rhs = &g.derive(&u).unwrap().scale(&c) + &g.derive(&v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_obeys_product_rule((g, u, v, _) in grammar_with_pair()) {
        let lhs = g.derive(&(&u * &v)).unwrap();
        let rhs = &(&g.derive(&u).unwrap() * &v) + &(&u * &g.derive(&v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule((g, u, v, _) in grammar_with_pair(), n in 0usize..=5) {
        prop_assert!(leibniz_check(&g, &u, &v, n).unwrap());
    }

    #[test]
    fn quadratic_rules_raise_degree_by_one(u in mpoly_over(&['x', 'y', 'z'])) {
        let du = Grammar::main().derive(&u).unwrap();
        for (m, _) in du.terms() {
            prop_assert!(u.terms().any(|(um, _)| um.degree() + 1 == m.degree()));
        }
    }

    #[test]
    fn display_round_trips(u in mpoly_over(&['x', 'y', 'z'])) {
        prop_assume!(!u.is_zero() && u.terms().all(|(_, c)| c > &BigInt::from(0)));
        prop_assert_eq!(parse_mpoly(&u.to_string()).unwrap(), u);
    }
}

#[test]
fn xy_and_xz_have_the_same_derivatives() {
    let g = Grammar::main();
    let a = g.derive_sequence(&parse_mpoly("x*y").unwrap(), 15).unwrap();
    let b = g.derive_sequence(&parse_mpoly("x*z").unwrap(), 15).unwrap();
    assert_ne!(a[0], b[0]);
    assert_eq!(a[1..], b[1..]);
}

#[test]
fn main_grammar_is_homogeneous() {
    let g = Grammar::main();
    for (n, p) in g
        .derive_sequence(&parse_mpoly("x^2").unwrap(), 10)
        .unwrap()
        .iter()
        .enumerate()
    {
        assert!(p
            .terms()
            .all(|(m, _)| m.degree() as usize == n + 2 && m.exponent('x') == 2));
    }
}

#[test]
fn user_grammars() {
    let g = parse_grammar("a -> a*b; b -> 1;").unwrap();
    let d = g.derive_n(&parse_mpoly("a").unwrap(), 3).unwrap();
    assert_eq!(d.to_string(), "3*a*b + a*b^3");
    assert!(parse_grammar("a -> b").is_err());
}
