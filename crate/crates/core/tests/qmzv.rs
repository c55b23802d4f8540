mod common;

use common::*;
use proptest::prelude::*;
use qzeta::qmzv::{
    bibracket_sl, lie_sum, parse_composition, symmetrized_sum, zeta_g, zeta_g_s, zq_standard, zq_star, zq_strict,
    RootSystem,
};
use qzeta::series::qi;

const N: usize = 12;

fn composition() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..4, 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_matches_nested_loops(a in composition()) {
        let got = zq_star(&a, N as i64).unwrap();
        prop_assert_eq!(coeffs_of(&got, N + 1), as_q(&qmzv_box(&a, Model::Star, N)));
    }

    #[test]
    fn strict_matches_nested_loops(a in composition()) {
        let got = zq_strict(&a, N as i64).unwrap();
        prop_assert_eq!(coeffs_of(&got, N + 1), as_q(&qmzv_box(&a, Model::Strict, N)));
    }

    #[test]
    fn standard_matches_nested_loops(mut a in composition(), first in 2u32..4) {
        a[0] = first;
        let got = zq_standard(&a, N as i64).unwrap();
        prop_assert_eq!(coeffs_of(&got, N + 1), as_q(&qmzv_box(&a, Model::Standard, N)));
    }

    #[test]
    fn star_splits_into_strict_pieces(a1 in 1u32..4, a2 in 1u32..4) {
        let star = zq_star(&[a1, a2], 25).unwrap();
        let split = zq_strict(&[a1, a2], 25).unwrap().add(&zq_strict(&[a1 + a2], 25).unwrap());
        prop_assert_eq!(star.first_difference(&split), None);
    }

    #[test]
    fn sl3_sums_match_box_enumeration(k in prop::collection::vec(1u32..4, 3), s in prop::collection::vec(0u32..3, 3)) {
        let roots = RootSystem::type_a(2).unwrap();
        let got = lie_sum(&roots, &k, &s, N as i64).unwrap();
        let want = lie_sum_oracle(2, &k, &s);
        prop_assert_eq!(half_coeffs_of(&got, 2 * N + 2), as_q(&want));
    }
}

fn lie_sum_oracle(rank: usize, k: &[u32], s: &[u32]) -> Poly {
    lie_sum_box(&type_a_roots(rank), rank, k, s, N)
}

#[test]
fn depth_one_models_agree() {
    for a in 1..5u32 {
        assert_eq!(zq_star(&[a], 20).unwrap(), zq_strict(&[a], 20).unwrap());
    }
    assert!(zq_standard(&[1], 10).is_err());
}

#[test]
fn divisor_oracles() {
    let n = 30;
    let d = zq_star(&[1], n).unwrap();
    let s = zq_star(&[2], n).unwrap();
    for m in 1..=n as u64 {
        assert_eq!(d.coeff(m as i64), qzeta::Q::from_integer(sigma(0, m)));
        assert_eq!(s.coeff(m as i64), qzeta::Q::from_integer(sigma(1, m)));
    }
}

#[test]
fn cyclic_formula() {
    for k in 2..=6usize {
        let mut a = vec![2u32];
        a.extend(std::iter::repeat(1).take(k - 1));
        let lhs = zq_star(&a, 30).unwrap();
        let rhs = zq_star(&[k as u32 + 1], 30)
            .unwrap()
            .scale(&qi(k as i64))
            .sub(&zq_star(&[k as u32], 30).unwrap().scale(&qi(k as i64 - 1)));
        assert_eq!(lhs.first_difference(&rhs), None, "k = {k}");
    }
}

#[test]
fn type_a_rank_three_matches_box_enumeration() {
    let roots = RootSystem::type_a(3).unwrap();
    let k = [2, 2, 2, 2, 2, 2];
    let got = zeta_g(&roots, &k, 8).unwrap();
    let want = lie_sum_box(&type_a_roots(3), 3, &k, &[0; 6], 8);
    assert_eq!(half_coeffs_of(&got, 18), as_q(&want));
}

#[test]
fn sl2_weighted_sums() {
    let sl2 = RootSystem::type_a(1).unwrap();
    // sum n^4 q^n / (1 - q^n)^2
    let got = zeta_g_s(&sl2, 4, 2, N as i64).unwrap();
    let mut want = zero(N + 1);
    for n in 1..=N {
        let t = shift(&inv_power(n, 2, N + 1), n);
        let w = num_bigint::BigInt::from(n).pow(4);
        for (a, b) in want.iter_mut().zip(t) {
            *a += b * &w;
        }
    }
    assert_eq!(coeffs_of(&got, N + 1), as_q(&want));
}

#[test]
fn bibracket_specializes() {
    let a = bibracket_sl(2, &[2, 2, 2], &[4, 4, 4], 20).unwrap();
    let b = zeta_g_s(&RootSystem::type_a(2).unwrap(), 4, 2, 20).unwrap();
    assert_eq!(a, b);
}

#[test]
fn symmetrized_sum_is_the_six_term_sum() {
    let roots = RootSystem::type_a(2).unwrap();
    let got = symmetrized_sum(&roots, &[2, 2, 4], 10).unwrap();
    let mut want = zero(22);
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let vals = [2u32, 2, 4];
        let k: Vec<u32> = perm.iter().map(|&i| vals[i]).collect();
        add_into(&mut want, &lie_sum_box(&type_a_roots(2), 2, &k, &[0, 0, 0], 10));
    }
    assert_eq!(half_coeffs_of(&got, 22), as_q(&want));
}

#[test]
fn composition_parsing() {
    assert_eq!(parse_composition("2,1,1").unwrap(), vec![2, 1, 1]);
    assert!(parse_composition("2,,1").is_err());
    assert!(parse_composition("0").is_err());
}
