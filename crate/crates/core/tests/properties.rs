use modcong::PowerSeries;
use num_bigint::BigInt;
use proptest::prelude::*;

const CASES: u32 = 200;

fn series_with(prec: std::ops::RangeInclusive<usize>, head: Option<i64>) -> impl Strategy<Value = PowerSeries> {
    prec.prop_flat_map(move |n| {
        prop::collection::vec(-1000i64..1000, n).prop_map(move |mut c| {
            if let Some(h) = head {
                c[0] = h;
            }
            PowerSeries::from_i64s(&c, n).unwrap()
        })
    })
}

fn any_series() -> impl Strategy<Value = PowerSeries> {
    series_with(1..=64, None)
}

/// `±q + …`, the inputs reversion accepts over the integers.
fn revertible() -> impl Strategy<Value = PowerSeries> {
    (2usize..=64, prop::bool::ANY).prop_flat_map(|(n, neg)| {
        prop::collection::vec(-50i64..50, n).prop_map(move |mut c| {
            c[0] = 0;
            c[1] = if neg { -1 } else { 1 };
            PowerSeries::from_i64s(&c, n).unwrap()
        })
    })
}

fn agree(a: &PowerSeries, b: &PowerSeries) -> bool {
    a.first_mismatch(b).is_none()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn mul_is_commutative(f in any_series(), g in any_series()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn mul_is_associative(f in any_series(), g in any_series(), h in any_series()) {
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn mul_distributes(f in any_series(), g in any_series(), h in any_series(), a in -9i64..9, b in -9i64..9) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = PowerSeries::linear_combine(&a, &f, &b, &g).unwrap().mul(&h).unwrap();
        let rhs = PowerSeries::linear_combine(&a, &f.mul(&h).unwrap(), &b, &g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(f in any_series(), g in any_series()) {
        let lhs = f.mul(&g).unwrap().d_operator();
        let rhs = &(&f.d_operator() * &g) + &(&f * &g.d_operator());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_rule(f in series_with(2..=40, None), t in series_with(2..=40, Some(0))) {
        let lhs = f.compose(&t).unwrap().d_operator();
        let rhs = f.derivative().unwrap().compose(&t).unwrap().mul(&t.d_operator()).unwrap();
        prop_assert!(agree(&lhs, &rhs));
    }

    #[test]
    fn inverse_roundtrip(f in series_with(1..=64, Some(1)), neg in prop::bool::ANY) {
        let f = if neg { -&f } else { f };
        let g = f.inverse().unwrap();
        prop_assert_eq!(f.mul(&g).unwrap(), PowerSeries::one(f.prec()));
    }

    #[test]
    fn sqrt_roundtrip(s in series_with(1..=64, Some(1))) {
        let f = s.mul(&s).unwrap();
        let r = f.sqrt_unit().unwrap();
        prop_assert_eq!(&r, &s);
        prop_assert_eq!(r.mul(&r).unwrap(), f);
    }

    #[test]
    fn revert_roundtrip(t in revertible()) {
        let g = t.revert().unwrap();
        let q = PowerSeries::monomial(1, t.prec());
        prop_assert_eq!(g.compose(&t).unwrap(), q.clone());
        prop_assert_eq!(t.compose(&g).unwrap(), q);
    }

    #[test]
    fn reduce_mod_is_a_homomorphism(f in any_series(), g in any_series(), m in 2i64..10_000) {
        let m = BigInt::from(m);
        let direct = f.mul(&g).unwrap().reduce_mod(&m).unwrap();
        let via = f.reduce_mod(&m).unwrap().mul(&g.reduce_mod(&m).unwrap()).unwrap().reduce_mod(&m).unwrap();
        prop_assert_eq!(direct, via);
        let sum = (&f + &g).reduce_mod(&m).unwrap();
        prop_assert_eq!(sum, &f.reduce_mod(&m).unwrap() + &g.reduce_mod(&m).unwrap());
    }
}
