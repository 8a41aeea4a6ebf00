use num_bigint::BigInt;
use proptest::prelude::*;
use seqgf::exact::{factorial, int_to_rat, rat, ratio, Polynomial, Rat, TruncatedSeries};
use seqgf::Error;

fn series_strategy(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-20i64..=20, 1i64..=5), order)
        .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

fn unit_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    series_strategy(order).prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = rat(1);
        TruncatedSeries::new(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_undoes_multiplication(a in series_strategy(12), b in unit_series(12)) {
        let p = a.mul(&b);
        prop_assert_eq!(p.div(&b).unwrap(), a);
    }

    #[test]
    fn reciprocal_is_an_inverse(b in unit_series(12)) {
        let r = b.recip().unwrap();
        prop_assert_eq!(r.mul(&b), TruncatedSeries::one(12));
    }

    #[test]
    fn exp_and_log_are_inverse(a in unit_series(10)) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn integral_then_derivative(a in series_strategy(10)) {
        prop_assert_eq!(a.integrate().derive(), a);
    }

    #[test]
    fn reversion_is_an_involution(c in series_strategy(10)) {
        let mut v = c.into_coeffs();
        v[0] = rat(0);
        v[1] = rat(1);
        let s = TruncatedSeries::new(v);
        let r = s.reversion().unwrap();
        prop_assert_eq!(s.compose(&r).unwrap(), TruncatedSeries::variable(10));
        prop_assert_eq!(r.reversion().unwrap(), s);
    }

    #[test]
    fn egf_view_round_trip(a in series_strategy(12)) {
        prop_assert_eq!(a.to_egf_view().from_egf_view(), a);
    }

    #[test]
    fn square_root_squares_back(a in unit_series(10)) {
        let sq = a.mul(&a);
        prop_assert_eq!(sq.sqrt().unwrap(), a);
    }
}

#[test]
fn geometric_series_and_fibonacci() {
    let one_minus_z = TruncatedSeries::from_ints(&[1, -1, 0, 0, 0, 0]);
    let g = TruncatedSeries::one(6).div(&one_minus_z).unwrap();
    assert_eq!(g, TruncatedSeries::from_ints(&[1; 6]));
    let den = TruncatedSeries::from_polynomial(&Polynomial::from_ints(&[1, -1, -1]), 10);
    let fib = TruncatedSeries::one(10).div(&den).unwrap();
    assert_eq!(fib, TruncatedSeries::from_ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55]));
}

#[test]
fn exponential_coefficients() {
    let e = TruncatedSeries::variable(8).exp().unwrap();
    for (k, c) in e.coeffs().iter().enumerate() {
        assert_eq!(*c, Rat::new(BigInt::from(1), factorial(k)));
    }
}

#[test]
fn errors_for_bad_operands() {
    let z = TruncatedSeries::variable(5);
    assert_eq!(TruncatedSeries::one(5).div(&z), Err(Error::DivisorNotUnit));
    assert_eq!(TruncatedSeries::from_ints(&[0, 2, 1]).reversion(), Err(Error::NotReversible));
    assert!(TruncatedSeries::from_ints(&[2, 1]).log().is_err());
}

#[test]
fn involutions_from_their_egf() {
    // exp(z + z^2/2) read as an exponential generating function
    let arg = TruncatedSeries::new(vec![rat(0), rat(1), ratio(1, 2), rat(0), rat(0), rat(0), rat(0), rat(0)]);
    let s = arg.exp().unwrap().from_egf_view();
    let want: Vec<Rat> = [1, 1, 2, 4, 10, 26, 76, 232].iter().map(|&x| int_to_rat(&BigInt::from(x))).collect();
    assert_eq!(s.coeffs(), &want[..]);
}
