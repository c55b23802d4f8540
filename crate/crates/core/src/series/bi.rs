//! Series in `x` with q-series coefficients, truncated in both variables.

use super::{QSeries, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    coeffs: Vec<QSeries>,
    prec: Q,
}

impl BiSeries {
    pub const DEFAULT_XORDER: usize = 8;

    pub fn zero(xorder: usize, prec: Q) -> Self {
        BiSeries { coeffs: vec![QSeries::zero(prec.clone()); xorder + 1], prec }
    }

    /// Build from x-coefficients; missing entries are zero and every entry is
    /// truncated to the common q-precision.
    pub fn from_coeffs(mut coeffs: Vec<QSeries>, xorder: usize) -> Self {
        coeffs.truncate(xorder + 1);
        let prec = coeffs.iter().map(|c| c.prec().clone()).min().expect("BiSeries needs at least one coefficient");
        let mut out: Vec<QSeries> = coeffs.iter().map(|c| c.truncate(&prec)).collect();
        out.resize(xorder + 1, QSeries::zero(prec.clone()));
        BiSeries { coeffs: out, prec }
    }

    /// `c * x^k`.
    pub fn x_monomial(k: usize, c: QSeries, xorder: usize) -> Self {
        let mut b = Self::zero(xorder, c.prec().clone());
        if k <= xorder {
            b.coeffs[k] = c;
        }
        b
    }

    pub fn xorder(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> &Q {
        &self.prec
    }

    pub fn coeff(&self, k: usize) -> &QSeries {
        &self.coeffs[k]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.xorder(), other.xorder());
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Self::from_coeffs(c, self.xorder())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.xorder(), other.xorder());
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Self::from_coeffs(c, self.xorder())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.xorder(), other.xorder());
        let d = self.xorder();
        let mut out: Vec<Option<QSeries>> = vec![None; d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                let p = a.mul(b);
                out[i + j] = Some(match out[i + j].take() {
                    None => p,
                    Some(s) => s.add(&p),
                });
            }
        }
        Self::from_coeffs(out.into_iter().map(Option::unwrap).collect(), d)
    }

    /// Multiply every x-coefficient by a q-series.
    pub fn mul_q(&self, s: &QSeries) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(s)).collect(), self.xorder())
    }

    /// First `(x-degree, q-exponent)` where the two differ on their common precision.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, Q)> {
        self.coeffs.iter().zip(&other.coeffs).enumerate().find_map(|(k, (a, b))| a.first_difference(b).map(|e| (k, e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::qi;

    #[test]
    fn geometric_in_x() {
        // (1 - x q) * sum_k x^k q^k = 1
        let d = 5;
        let geo = BiSeries::from_coeffs((0..=d).map(|k| QSeries::monomial(qi(1), qi(k as i64), qi(12))).collect(), d);
        let one_minus = BiSeries::x_monomial(0, QSeries::one(11), d).sub(&BiSeries::x_monomial(
            1,
            QSeries::monomial(qi(1), qi(1), qi(12)),
            d,
        ));
        let p = geo.mul(&one_minus);
        assert_eq!(p.first_difference(&BiSeries::x_monomial(0, QSeries::one(11), d)), None);
    }
}
