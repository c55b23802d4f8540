use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Graph;

/// Determinant of the adjacency matrix by Bareiss fraction-free elimination.
pub fn adjacency_determinant(g: &Graph) -> BigInt {
    let n = g.n();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> =
        g.adjacency_matrix().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_gamma, cycle, path, point};

    #[test]
    fn small_determinants() {
        assert_eq!(adjacency_determinant(&point()), BigInt::zero());
        assert_eq!(adjacency_determinant(&path(2).unwrap()), BigInt::from(-1));
        assert_eq!(adjacency_determinant(&cycle(5).unwrap()), BigInt::from(2));
        assert_eq!(adjacency_determinant(&cycle(4).unwrap()), BigInt::zero());
        assert_eq!(adjacency_determinant(&build_gamma(2).unwrap()), BigInt::from(-3));
    }
}
