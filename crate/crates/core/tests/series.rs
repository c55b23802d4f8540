mod common;

use common::*;
use proptest::prelude::*;
use qzeta::series::json::{from_json_str, to_json_string};
use qzeta::series::{eta_power, euler_power, euler_product, lambert, qf, qi};
use qzeta::{QSeries, Q};

fn small_series(max_len: usize) -> impl Strategy<Value = QSeries> {
    (0i64..3, prop::collection::vec((-9i64..10, 1i64..5), 1..max_len)).prop_map(|(off, cs)| {
        let coeffs = cs.into_iter().map(|(n, d)| qf(n, d)).collect();
        QSeries::from_coeffs(qi(off), 1, coeffs)
    })
}

#[test]
fn euler_reciprocal_counts_partitions() {
    let n = 30;
    let inv = euler_product(n).invert().unwrap();
    let want: Vec<Q> = (0..=n as u64).map(|m| Q::from_integer(partitions(m, m))).collect();
    assert_eq!(coeffs_of(&inv, n as usize + 1), want);
    assert_eq!(coeffs_of(&euler_power(-1, n), n as usize + 1), want);
}

#[test]
fn euler_powers_match_products() {
    let len = 21;
    for k in [1i64, 2, 3] {
        let want = (0..k).fold(one(len), |acc, _| mul(&acc, &poch(len - 1, len)));
        assert_eq!(coeffs_of(&euler_power(k, len as i64 - 1), len), as_q(&want), "k = {k}");
    }
}

#[test]
fn eta_offsets() {
    let e = eta_power(3, 5, 10);
    assert_eq!(e.offset(), &qf(15, 24));
    assert_eq!(e.coeff_at(&(qf(15, 24) + qi(5))), Some(qi(-3)));
}

#[test]
fn lambert_matches_divisor_sums() {
    let n = 40;
    for k in 0..4u32 {
        let s = lambert(n, |d| num_bigint::BigInt::from(d).pow(k));
        let want: Vec<Q> = (0..=n as u64).map(|m| if m == 0 { qi(0) } else { Q::from_integer(sigma(k, m)) }).collect();
        assert_eq!(coeffs_of(&s, n as usize + 1), want, "k = {k}");
    }
}

#[test]
fn half_integer_grids_align() {
    let a = QSeries::from_coeffs(qf(1, 2), 1, vec![qi(1), qi(2)]);
    let b = QSeries::from_coeffs(qi(0), 1, vec![qi(1), qi(1), qi(1)]);
    let s = a.add(&b);
    assert_eq!(s.denom(), 2);
    assert_eq!(s.coeff_at(&qf(3, 2)), Some(qi(2)));
    assert_eq!(s.coeff_at(&qi(1)), Some(qi(1)));
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in small_series(8), b in small_series(8), c in small_series(8)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in small_series(8), b in small_series(8), c in small_series(8)) {
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        prop_assert_eq!(lhs.first_difference(&rhs), None);
    }

    #[test]
    fn inverse_is_inverse(a in small_series(8)) {
        prop_assume!(!a.is_zero());
        let inv = a.invert().unwrap();
        let prod = a.mul(&inv);
        let one = QSeries::one(prod.prec().ceil().to_integer().try_into().unwrap());
        prop_assert_eq!(prod.first_difference(&one), None);
    }

    #[test]
    fn powers_agree_with_repeated_products(a in small_series(6), k in 0i64..4) {
        let mut want = QSeries::one(20);
        for _ in 0..k {
            want = want.mul(&a);
        }
        prop_assert_eq!(a.pow(k).unwrap().first_difference(&want), None);
    }

    #[test]
    fn json_round_trips(a in small_series(10)) {
        prop_assert_eq!(from_json_str(&to_json_string(&a)).unwrap(), a);
    }
}
