//! Exact truncated q-series.
//!
//! A [`QSeries`] stores `q^offset * sum_i c_i q^(i/denom)` together with an
//! absolute precision: every exponent below `prec` is known exactly, nothing
//! at or above it is. Operations propagate the tightest honest precision.

mod bi;
pub(crate) mod dense;
pub mod json;
pub mod special;
mod zeta;

pub use bi::BiSeries;
pub use special::*;
pub use zeta::{ct, Parity, Side, ZetaSeries};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qb(n: BigInt) -> Q {
    Q::from_integer(n)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn den_u64(x: &Q) -> u64 {
    x.denom().to_u64().expect("grid denominator overflow")
}

/// `x * d` as an integer, panicking if `x` is not on the `1/d` grid.
fn grid_index(x: &Q, d: u64) -> i64 {
    let y = x * qi(d as i64);
    assert!(y.is_integer(), "exponent {x} not on grid 1/{d}");
    y.to_integer().to_i64().expect("grid index overflow")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    offset: Q,
    denom: u64,
    coeffs: Vec<Q>,
    prec: Q,
}

/// Numerators over the least common denominator.
fn integral(terms: Vec<(usize, &Q)>) -> (Vec<(usize, BigInt)>, BigInt) {
    let den = terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let nums = terms.into_iter().map(|(i, c)| (i, c.numer() * (&den / c.denom()))).collect();
    (nums, den)
}

impl QSeries {
    /// The zero series known modulo `q^prec`.
    pub fn zero(prec: Q) -> Self {
        let denom = den_u64(&prec);
        QSeries { offset: Q::zero(), denom, coeffs: Vec::new(), prec }
    }

    /// Zero known through `q^order`.
    pub fn zero_to(order: i64) -> Self {
        Self::zero(qi(order + 1))
    }

    pub fn one(order: i64) -> Self {
        Self::constant(Q::one(), order)
    }

    pub fn constant(c: Q, order: i64) -> Self {
        Self::monomial(c, Q::zero(), qi(order + 1))
    }

    /// `c * q^exp` known modulo `q^prec`.
    pub fn monomial(c: Q, exp: Q, prec: Q) -> Self {
        if exp >= prec || c.is_zero() {
            return Self::zero(prec);
        }
        let d = den_u64(&(&prec - &exp));
        let len = grid_index(&(&prec - &exp), d) as usize;
        let mut coeffs = vec![Q::zero(); len];
        coeffs[0] = c;
        Self::from_coeffs(exp, d, coeffs)
    }

    /// Coefficients on the grid `offset + i/denom`; precision is the end of the vector.
    pub fn from_coeffs(offset: Q, denom: u64, coeffs: Vec<Q>) -> Self {
        assert!(denom >= 1);
        let prec = &offset + qf(coeffs.len() as i64, denom as i64);
        let mut s = QSeries { offset, denom, coeffs, prec };
        s.normalize();
        s
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(Q::zero(), 1, coeffs.iter().map(|&c| qi(c)).collect())
    }

    pub fn from_bigints(offset: Q, denom: u64, coeffs: Vec<BigInt>) -> Self {
        Self::from_coeffs(offset, denom, coeffs.into_iter().map(qb).collect())
    }

    /// Integer-grid series with coefficient `f(n)` at `q^n`, `0 <= n <= order`.
    pub fn from_fn(order: i64, mut f: impl FnMut(i64) -> Q) -> Self {
        Self::from_coeffs(Q::zero(), 1, (0..=order).map(&mut f).collect())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        let Some(z) = lead else {
            *self = Self::zero(self.prec.clone());
            return;
        };
        if z > 0 {
            self.offset += qf(z as i64, self.denom as i64);
            self.coeffs.drain(..z);
        }
        let mut g = self.denom.gcd(&(self.coeffs.len() as u64));
        for (i, c) in self.coeffs.iter().enumerate() {
            if g == 1 {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(&(i as u64));
            }
        }
        if g > 1 {
            self.coeffs = self.coeffs.iter().step_by(g as usize).cloned().collect();
            self.denom /= g;
        }
    }

    pub fn offset(&self) -> &Q {
        &self.offset
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Absolute precision: the series is known modulo `q^prec`.
    pub fn prec(&self) -> &Q {
        &self.prec
    }

    /// Index `N` of the last known coefficient on the series grid.
    pub fn order(&self) -> i64 {
        grid_index(&(&self.prec - &self.offset), self.denom) - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the leading term, or the precision for a zero series.
    pub fn valuation(&self) -> Q {
        if self.is_zero() {
            self.prec.clone()
        } else {
            self.offset.clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.coeffs.first()
    }

    /// Coefficient of `q^e`, or `None` when `e` is beyond the precision.
    pub fn coeff_at(&self, e: &Q) -> Option<Q> {
        if e >= &self.prec {
            return None;
        }
        if self.is_zero() || e < &self.offset {
            return Some(Q::zero());
        }
        let i = (e - &self.offset) * qi(self.denom as i64);
        if !i.is_integer() {
            return Some(Q::zero());
        }
        Some(self.coeffs[i.to_integer().to_usize().unwrap()].clone())
    }

    /// Coefficient of `q^n` for integer `n`. Panics beyond the precision.
    pub fn coeff(&self, n: i64) -> Q {
        self.coeff_at(&qi(n)).unwrap_or_else(|| panic!("coefficient q^{n} beyond precision {}", self.prec))
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Q, &Q)> + '_ {
        let d = self.denom as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (&self.offset + qf(i as i64, d), c))
    }

    /// Lower the precision to `min(prec, self.prec)`.
    pub fn truncate(&self, prec: &Q) -> Self {
        if prec >= &self.prec {
            return self.clone();
        }
        if self.is_zero() || prec <= &self.offset {
            return Self::zero(prec.clone());
        }
        let d = lcm_u64(self.denom, den_u64(&(prec - &self.offset)));
        let len = grid_index(&(prec - &self.offset), d) as usize;
        let coeffs = self.on_grid(&self.offset, d, len);
        Self::from_coeffs(self.offset.clone(), d, coeffs)
    }

    /// Known through `q^order` (integer exponent) at most.
    pub fn truncate_order(&self, order: i64) -> Self {
        self.truncate(&qi(order + 1))
    }

    /// Dense coefficients at `start + i/d` for `i < len`.
    fn on_grid(&self, start: &Q, d: u64, len: usize) -> Vec<Q> {
        assert_eq!(d % self.denom, 0);
        let mut out = vec![Q::zero(); len];
        if self.is_zero() {
            return out;
        }
        let base = grid_index(&(&self.offset - start), d);
        let step = (d / self.denom) as i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = base + step * i as i64;
            if j >= 0 && (j as usize) < len {
                out[j as usize] = c.clone();
            }
        }
        out
    }

    /// Sparse nonzero coefficients at `start + i/d`.
    fn sparse_on_grid(&self, start: &Q, d: u64) -> Vec<(usize, &Q)> {
        let base = grid_index(&(&self.offset - start), d);
        let step = (d / self.denom) as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((base + step * i as i64) as usize, c))
            .collect()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec.clone());
        }
        let mut s = self.clone();
        for x in &mut s.coeffs {
            *x *= c;
        }
        s
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: &Q) -> Self {
        let mut s = self.clone();
        if s.is_zero() {
            return Self::zero(&self.prec + e);
        }
        s.offset += e;
        s.prec += e;
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = std::cmp::min(&self.prec, &other.prec).clone();
        let parts: Vec<&Self> = [self, other].into_iter().filter(|s| !s.is_zero()).collect();
        if parts.is_empty() {
            return Self::zero(prec);
        }
        let start = parts.iter().map(|s| &s.offset).min().unwrap().clone();
        if start >= prec {
            return Self::zero(prec);
        }
        let mut d = den_u64(&(&prec - &start));
        for s in &parts {
            d = lcm_u64(d, lcm_u64(s.denom, den_u64(&(&s.offset - &start))));
        }
        let len = grid_index(&(&prec - &start), d) as usize;
        let mut out = vec![Q::zero(); len];
        for s in &parts {
            for (j, c) in s.sparse_on_grid(&start, d) {
                if j < len {
                    out[j] += c;
                }
            }
        }
        let mut r = Self::from_coeffs(start, d, out);
        if r.is_zero() {
            r = Self::zero(prec);
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for x in &mut s.coeffs {
            *x = -&*x;
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = std::cmp::min(self.valuation() + &other.prec, other.valuation() + &self.prec);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        let offset = &self.offset + &other.offset;
        let d = lcm_u64(self.denom, other.denom);
        let len = grid_index(&(&prec - &offset), d) as usize;
        // convolve integer numerators over a common denominator
        let (a, da) = integral(self.sparse_on_grid(&self.offset, d));
        let (b, db) = integral(other.sparse_on_grid(&other.offset, d));
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in &a {
            if *i >= len {
                break;
            }
            for (j, y) in &b {
                if i + j >= len {
                    break;
                }
                acc[i + j] += x * y;
            }
        }
        let den = da * db;
        let out = acc.into_iter().map(|n| Q::new(n, den.clone())).collect();
        Self::from_coeffs(offset, d, out)
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("zero series".into()));
        }
        let len = self.coeffs.len();
        let inv0 = Q::one() / &self.coeffs[0];
        let a: Vec<(usize, &Q)> = self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut b: Vec<Q> = Vec::with_capacity(len);
        b.push(inv0.clone());
        for n in 1..len {
            let mut acc = Q::zero();
            for &(k, x) in &a {
                if k > n {
                    break;
                }
                acc += x * &b[n - k];
            }
            b.push(-acc * &inv0);
        }
        Ok(Self::from_coeffs(-&self.offset, self.denom, b))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        if k == 0 {
            let rel = &self.prec - self.valuation();
            return Ok(Self::monomial(Q::one(), Q::zero(), std::cmp::max(rel, Q::zero())));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Substitute `q -> q^m`.
    pub fn dilate(&self, m: u64) -> Self {
        assert!(m >= 1);
        let mq = qi(m as i64);
        if self.is_zero() {
            return Self::zero(&self.prec * &mq);
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() * m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::from_coeffs(&self.offset * &mq, self.denom, coeffs)
    }

    /// `q d/dq`, with the offset included in each exponent.
    pub fn q_derive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let d = self.denom as i64;
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c * (&self.offset + qf(i as i64, d))).collect();
        let mut r = Self::from_coeffs(self.offset.clone(), self.denom, coeffs);
        if r.is_zero() {
            r = Self::zero(self.prec.clone());
        }
        r
    }

    /// First exponent below the common precision where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Q> {
        let diff = self.sub(other);
        let first = diff.terms().next().map(|(e, _)| e);
        first
    }

    /// Equal on the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Sum of scaled series; precision is the minimum over terms.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (Q, &'a QSeries)>) -> Self {
        let mut acc: Option<Self> = None;
        for (c, s) in terms {
            let t = s.scale(&c);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.expect("empty linear combination")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = a.is_one();
            if e.is_zero() {
                write!(f, "{a}")?;
            } else {
                if !unit {
                    write!(f, "{a}*")?;
                }
                if e.is_one() {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^({e})")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^({}))", self.prec)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], order: i64) -> QSeries {
        QSeries::from_fn(order, |n| qi(*c.get(n as usize).unwrap_or(&0)))
    }

    #[test]
    fn add_cancels() {
        let a = poly(&[1, -1], 10);
        let b = poly(&[0, 1], 10);
        assert_eq!(&a + &b, QSeries::one(10));
    }

    #[test]
    fn zero_is_identity() {
        let s = poly(&[3, 0, -2, 5], 8);
        assert_eq!(&QSeries::zero_to(8) + &s, s);
    }

    #[test]
    fn product_difference_of_squares() {
        let a = poly(&[1, 1], 12);
        let b = poly(&[1, -1], 12);
        assert_eq!(&a * &b, poly(&[1, 0, -1], 12));
    }

    #[test]
    fn fractional_offsets_cancel() {
        let a = QSeries::monomial(Q::one(), qf(1, 24), qf(1, 24) + qi(11));
        let b = QSeries::monomial(Q::one(), qf(-1, 24), qf(-1, 24) + qi(11));
        let p = &a * &b;
        assert_eq!(p, QSeries::one(10));
    }

    #[test]
    fn geometric_inverse() {
        let inv = poly(&[1, -1], 15).invert().unwrap();
        assert_eq!(inv, QSeries::from_fn(15, |_| Q::one()));
        assert!(QSeries::zero_to(5).invert().is_err());
    }

    #[test]
    fn involution() {
        let s = poly(&[1, 1, 0, 1], 20);
        assert_eq!(s.invert().unwrap().invert().unwrap(), s);
    }

    #[test]
    fn powers() {
        let s = poly(&[1, -1], 10);
        assert_eq!(s.pow(2).unwrap(), poly(&[1, -2, 1], 10));
        assert_eq!(s.pow(0).unwrap(), QSeries::one(10));
        assert_eq!(s.pow(-1).unwrap(), s.invert().unwrap());
    }

    #[test]
    fn dilation() {
        let s = poly(&[1, 1], 10);
        assert_eq!(s.dilate(3), poly(&[1, 0, 0, 1], 32));
        assert_eq!(s.dilate(1), s);
    }

    #[test]
    fn derivative_offset_rule() {
        assert_eq!(QSeries::one(5).q_derive(), QSeries::zero_to(5));
        let s = QSeries::monomial(Q::one(), qf(1, 6), qf(1, 6) + qi(3));
        assert_eq!(s.q_derive(), s.scale(&qf(1, 6)));
    }

    #[test]
    fn precision_never_grows() {
        let a = poly(&[1, 2, 3], 5);
        let b = poly(&[1], 9);
        assert_eq!((&a + &b).order(), 5);
        assert_eq!((&a * &b).order(), 5);
        let shifted = b.shift(&qi(2));
        assert_eq!((&a * &shifted).prec(), &qi(8));
    }

    #[test]
    fn half_grid_alignment() {
        let a = QSeries::monomial(Q::one(), qf(1, 2), qi(4));
        let b = QSeries::one(3);
        let s = &a + &b;
        assert_eq!(s.denom(), 2);
        assert_eq!(s.coeff_at(&qf(1, 2)), Some(Q::one()));
        assert_eq!(s.coeff_at(&qi(1)), Some(Q::zero()));
        assert_eq!(s.coeff_at(&qi(4)), None);
        let sq = a.mul(&a);
        assert_eq!(sq.prec(), &qf(9, 2));
        assert_eq!(sq.offset(), &Q::one());
    }

    #[test]
    fn first_difference_reports_exponent() {
        let a = poly(&[1, 2, 3, 4], 6);
        let b = poly(&[1, 2, 5, 4], 6);
        assert_eq!(a.first_difference(&b), Some(qi(2)));
        assert!(a.agrees_with(&a.truncate_order(3)));
    }
}
