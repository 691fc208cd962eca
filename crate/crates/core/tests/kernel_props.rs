mod common;

use danielewski::{parse_poly, Field, Monomial, MultiPoly, Scalar, Var};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Q), Just(Field::Fp(7)), Just(Field::Fp(101))]
}

fn poly_in(field: Field) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0i32..4, 0i32..4, 0i32..4, 0i32..3), -6i64..7, 1i64..4), 0..6).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|((a, b, c, d), n, den)| {
                let m = Monomial::var(Var::X, a).with(Var::Y, b).with(Var::Z, c).with(Var::T, d);
                let s = match field {
                    Field::Q => Scalar::from_ratio(field, &n.into(), &den.into()).unwrap(),
                    Field::Fp(_) => Scalar::from_i64(field, n),
                };
                (m, s)
            });
            MultiPoly::from_terms(field, terms).unwrap()
        },
    )
}

fn triple() -> impl Strategy<Value = (MultiPoly, MultiPoly, MultiPoly)> {
    field_strategy().prop_flat_map(|f| (poly_in(f), poly_in(f), poly_in(f)))
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(p in field_strategy().prop_flat_map(poly_in)) {
        let text = p.to_string();
        prop_assert_eq!(parse_poly(&text, p.field()).unwrap(), p);
    }

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivative_is_a_derivation((a, b, _) in triple()) {
        for v in [Var::X, Var::Y, Var::Z, Var::T] {
            let lhs = (&a * &b).formal_derivative(v);
            let rhs = &a.formal_derivative(v) * &b + &a * &b.formal_derivative(v);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_is_a_ring_map((a, b, _) in triple(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let p = common::modulus(a.field());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pt = [0u64; 7];
        for x in pt.iter_mut() {
            *x = rng.gen_range(0..p);
        }
        let prod = common::eval(&(&a * &b), &pt, p);
        prop_assert_eq!(prod, common::mul(common::eval(&a, &pt, p), common::eval(&b, &pt, p), p));
    }

    #[test]
    fn division_reconstructs((a, b, c) in triple()) {
        let order = danielewski::MonomialOrder::fiber();
        let gens: Vec<MultiPoly> = [b, c].into_iter().filter(|g| !g.is_zero()).collect();
        let (quots, rem) = a.divide(&gens, &order);
        let mut back = rem;
        for (q, g) in quots.iter().zip(&gens) {
            back = back + q * g;
        }
        prop_assert_eq!(back, a);
    }
}

#[test]
fn parser_rejects_garbage() {
    for bad in ["X +", "2X", "X^-1", "W*", "(X", "1/0"] {
        assert!(parse_poly(bad, Field::Q).is_err(), "{bad}");
    }
}
