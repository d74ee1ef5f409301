use lintwist::scalar::ParamPoly;
use lintwist::{parse, Letter, NcPoly, RatFunc, Rational, TwistParams, Word};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=5).prop_map(Word::new)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn concrete_poly() -> impl Strategy<Value = NcPoly<Rational>> {
    prop::collection::vec((word(), rational()), 0..5).prop_map(NcPoly::from_terms)
}

fn param_poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 1..3)
        .prop_map(|ts| ParamPoly::from_terms(ts.into_iter().map(|(e, c)| (e, q(c, 1)))))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (param_poly(), param_poly())
        .prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn symbolic_poly() -> impl Strategy<Value = NcPoly<RatFunc>> {
    prop::collection::vec((word(), ratfunc()), 0..4).prop_map(NcPoly::from_terms)
}

fn concrete_params() -> TwistParams<Rational> {
    TwistParams::concrete(q(2, 1), q(1, 1)).unwrap()
}

#[test]
fn spec_examples() {
    let s = TwistParams::symbolic();
    let p = |t: &str| parse(t, &s).unwrap();
    assert_eq!(p("A").mul(&p("B")).to_string(), "A*B");
    assert_eq!((&p("A") + &p("B")).mul(&p("I")), p("A + B"));
    assert_eq!(p("(A - B)*(A + B)"), p("A*A + A*B - B*A - B*B"));
    assert_eq!(p("[A,B]").to_string(), "A*B - B*A");
    assert!(p("[A+2*B, A+2*B]").is_zero());
    assert_eq!(p("[A, A*B]").to_string(), "A^2*B - A*B*A");
    assert_eq!(NcPoly::<RatFunc>::zero().to_string(), "0");
    assert_eq!(parse("A*(B", &s).unwrap_err().offset, 4);
}

#[test]
fn canonical_order_is_degree_then_length_then_lex() {
    let s = TwistParams::symbolic();
    let p = parse("I + A + B + C + A*A + A*B + B*A + C*A", &s).unwrap();
    let order: Vec<String> = p.support().map(ToString::to_string).collect();
    assert_eq!(order, ["C*A", "A^2", "A*B", "B*A", "C", "A", "B", "I"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in concrete_poly(), y in concrete_poly(), z in concrete_poly()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&(&y + &z)), &x.mul(&y) + &x.mul(&z));
        prop_assert_eq!((&x + &y).mul(&z), &x.mul(&z) + &y.mul(&z));
        prop_assert_eq!(x.mul(&NcPoly::one()), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn bracket_is_a_lie_bracket(x in concrete_poly(), y in concrete_poly(), z in concrete_poly(), c in rational()) {
        prop_assert_eq!(x.bracket(&(&y + &z.scale(&c))), &x.bracket(&y) + &x.bracket(&z).scale(&c));
        prop_assert_eq!(x.bracket(&y), -&y.bracket(&x));
        let jacobi = &(&x.bracket(&y.bracket(&z)) + &y.bracket(&z.bracket(&x))) + &z.bracket(&x.bracket(&y));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn parse_render_round_trip_concrete(x in concrete_poly()) {
        let text = x.to_string();
        let back = parse(&text, &concrete_params()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parse_render_round_trip_symbolic(x in symbolic_poly()) {
        let text = x.to_string();
        let back = parse(&text, &TwistParams::symbolic()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }
}

/// 1000 canonical strings from a fixed generator: rendering the parse gives
/// the same string back.
#[test]
fn canonical_corpus_round_trip() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1000);
    let s = TwistParams::symbolic();
    for _ in 0..1000 {
        let terms = rng.gen_range(0..4);
        let p: NcPoly<RatFunc> = NcPoly::from_terms((0..terms).map(|_| {
            let len = rng.gen_range(0..6);
            let w = Word::new((0..len).map(|_| Letter::ALL[rng.gen_range(0..3)]).collect());
            let num = ParamPoly::monomial(
                q(rng.gen_range(-5..=5), 1),
                rng.gen_range(0..3),
                rng.gen_range(0..2),
            );
            let den = ParamPoly::from_terms([
                ((rng.gen_range(0..2), 0), q(1, 1)),
                ((0, 0), q(rng.gen_range(-2..=2), 1)),
            ]);
            (
                w,
                RatFunc::new(num, den).unwrap_or_else(|_| RatFunc::from(q(1, 1))),
            )
        }));
        let canonical = p.to_string();
        assert_eq!(parse(&canonical, &s).unwrap().to_string(), canonical);
    }
}
