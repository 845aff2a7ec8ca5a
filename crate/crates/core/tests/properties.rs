use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;

use hyperdec_core::lightstone::{digit_at, parse, render, Position};
use hyperdec_core::shell::parse_expr;
use hyperdec_core::{BigRational, ExponentPair, Hyper, Hyper64, HyperValue, NumContext, Term};

type Q = BigRational;

fn ctx() -> NumContext {
    NumContext::exact()
}

fn rational() -> impl Strategy<Value = Q> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn exponent() -> impl Strategy<Value = ExponentPair> {
    prop_oneof![
        Just(ExponentPair::integers(0, 0)),
        Just(ExponentPair::integers(1, 0)),
        Just(ExponentPair::integers(2, 0)),
        Just(ExponentPair::integers(-1, 0)),
        Just(ExponentPair::integers(0, 1)),
        Just(ExponentPair::integers(0, -1)),
        Just(ExponentPair::integers(0, -2)),
        Just(ExponentPair::integers(1, -1)),
    ]
}

fn hyper() -> impl Strategy<Value = Hyper> {
    prop::collection::vec((rational(), exponent()), 0..=2)
        .prop_map(|ts| Hyper::from_terms(ts.into_iter().map(|(c, e)| Term::new(c, e)), &ctx()))
}

fn finite_hyper() -> impl Strategy<Value = Hyper> {
    hyper().prop_filter("finite", |h| h.is_finite())
}

/// `a + c*eps` with terminating decimals `a` and `c`.
fn lightstone_value() -> impl Strategy<Value = Hyper> {
    (0i64..100_000, 0u32..5, -99_999i64..100_000, 0u32..4, any::<bool>()).prop_map(|(a, da, c, dc, neg)| {
        let scale = |d: u32| BigInt::from(10).pow(d);
        let a = Q::new(a.into(), scale(da));
        let c = Q::new(c.into(), scale(dc));
        let v = Hyper::from_terms([Term::new(a, ExponentPair::ONE), Term::new(c, ExponentPair::TAU)], &ctx());
        if neg {
            v.neg()
        } else {
            v
        }
    })
}

fn expr_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..100).prop_map(|n| n.to_string()),
        Just("0.25".to_string()),
        Just("x".to_string()),
        Just("H".to_string()),
        Just("eps".to_string()),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), prop::sample::select(vec!["+", "-", "*", "/"]))
                .prop_map(|(a, b, op)| format!("({a}) {op} ({b})")),
            (inner.clone(), -3i32..4).prop_map(|(a, n)| format!("({a})^{n}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            (inner.clone(), prop::sample::select(vec!["st", "floor", "nines", "sin", "abs"]))
                .prop_map(|(a, f)| format!("{f}({a})")),
            inner.clone().prop_map(|a| format!("lim(n -> inf, {a})")),
            inner.prop_map(|a| format!("d/dx({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in hyper(), b in hyper(), c in hyper()) {
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&a).unwrap(), Hyper::zero(&ctx()));
    }

    #[test]
    fn monomial_inverse(c in rational().prop_filter("nonzero", |c| *c != Q::from_integer(0.into())), e in exponent()) {
        let m = HyperValue::monomial(c, e, &ctx());
        let inv = m.inv().unwrap();
        prop_assert!(!inv.is_truncated());
        prop_assert_eq!(m.mul(&inv).unwrap(), Hyper::one(&ctx()));
        prop_assert_eq!(m.div(&m).unwrap(), Hyper::one(&ctx()));
    }

    #[test]
    fn order_is_total_and_compatible(a in hyper(), b in hyper(), c in hyper()) {
        let ord = a.compare(&b).unwrap();
        prop_assert_eq!(b.compare(&a).unwrap(), ord.reverse());
        prop_assert_eq!(ord == Ordering::Equal, a == b);
        prop_assert_eq!(a.add(&c).unwrap().compare(&b.add(&c).unwrap()).unwrap(), ord);
        if c.signum() > 0 {
            prop_assert_eq!(a.mul(&c).unwrap().compare(&b.mul(&c).unwrap()).unwrap(), ord);
        }
    }

    #[test]
    fn standard_part_is_a_homomorphism(a in finite_hyper(), b in finite_hyper()) {
        let (sa, sb) = (a.standard_part().unwrap(), b.standard_part().unwrap());
        prop_assert_eq!(a.add(&b).unwrap().standard_part().unwrap(), &sa + &sb);
        prop_assert_eq!(a.mul(&b).unwrap().standard_part().unwrap(), &sa * &sb);
        prop_assert!(a.sub(&Hyper::from_rational(&sa, &ctx())).unwrap().is_infinitesimal());
    }

    #[test]
    fn floor_contract(x in hyper()) {
        if let Ok(f) = x.floor() {
            let one = Hyper::one(&ctx());
            prop_assert_ne!(f.compare(&x).unwrap(), Ordering::Greater);
            prop_assert_eq!(x.compare(&f.add(&one).unwrap()).unwrap(), Ordering::Less);
            prop_assert_eq!(f.floor().unwrap(), f);
        }
    }

    #[test]
    fn lightstone_round_trip(x in lightstone_value()) {
        let text = render(&x, 3).unwrap();
        let back: Hyper = parse(&text.to_string(), &ctx()).unwrap();
        prop_assert_eq!(&back, &x, "{}", text);
        let back: Hyper = parse(&text.to_ascii(), &ctx()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn digits_are_decimal(x in lightstone_value(), j in 1i64..12, k in -4i64..4) {
        for p in [Position::standard(j).unwrap(), Position::new(1, k).unwrap()] {
            if let Ok(d) = digit_at(&x, p) {
                prop_assert!(d <= 9);
            }
        }
    }

    #[test]
    fn printer_round_trip(src in expr_source()) {
        let first = parse_expr(&src).unwrap();
        let printed = first.to_string();
        let second = parse_expr(&printed).unwrap();
        prop_assert_eq!(&first, &second, "{}", printed);
        prop_assert_eq!(second.to_string(), printed);
    }
}

#[test]
fn machine_float_coefficients() {
    let ctx = NumContext::float(15).unwrap();
    let x = &Hyper64::one(&ctx) - &Hyper64::tau(&ctx);
    assert_eq!(x.standard_part().unwrap(), 1.0);
    assert_eq!(x.compare(&Hyper64::one(&ctx)).unwrap(), Ordering::Less);
    let sq = x.mul(&x).unwrap();
    assert_eq!(sq.to_string(), "1 - 2*eps + eps^2");
}
