//! The Weierstrass function at the 3-torsion point `z = 1/3`, evaluated in `Q(omega)`.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modular::{g_hat, weierstrass};
use crate::series::{ct, eta_power, qi, QSeries, Q};

/// `re + om * omega` with `omega^2 + omega + 1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cyclo3 {
    re: Q,
    om: Q,
}

impl Cyclo3 {
    fn rational(x: Q) -> Self {
        Cyclo3 { re: x, om: Q::zero() }
    }

    /// `omega^n`.
    fn omega_pow(n: i64) -> Self {
        match n.rem_euclid(3) {
            0 => Cyclo3 { re: Q::one(), om: Q::zero() },
            1 => Cyclo3 { re: Q::zero(), om: Q::one() },
            _ => Cyclo3 { re: -Q::one(), om: -Q::one() },
        }
    }

    fn conj(&self) -> Self {
        // omega -> omega^2 = -1 - omega
        Cyclo3 { re: &self.re - &self.om, om: -self.om.clone() }
    }

    fn norm(&self) -> Q {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    fn inverse(&self) -> Self {
        let n = self.norm();
        let c = self.conj();
        Cyclo3 { re: c.re / &n, om: c.om / &n }
    }
}

impl Add for &Cyclo3 {
    type Output = Cyclo3;
    fn add(self, o: &Cyclo3) -> Cyclo3 {
        Cyclo3 { re: &self.re + &o.re, om: &self.om + &o.om }
    }
}

impl Sub for &Cyclo3 {
    type Output = Cyclo3;
    fn sub(self, o: &Cyclo3) -> Cyclo3 {
        Cyclo3 { re: &self.re - &o.re, om: &self.om - &o.om }
    }
}

impl Mul for &Cyclo3 {
    type Output = Cyclo3;
    fn mul(self, o: &Cyclo3) -> Cyclo3 {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
        let bd = &self.om * &o.om;
        Cyclo3 { re: &self.re * &o.re - &bd, om: &self.re * &o.om + &self.om * &o.re - bd }
    }
}

/// `wp_hat(1/3)` through `q^order`.
///
/// The `zeta^{-n}` half is summed as `x/(1-x)^2` at `x = omega^{-1}` plus
/// its `q`-dependent remainder, since `sum n omega^{-n}` does not converge.
pub fn torsion_p_third(order: i64) -> Result<QSeries> {
    let len = (order + 1).max(0) as usize;
    let mut coeffs = vec![Cyclo3::rational(Q::zero()); len];
    let x = Cyclo3::omega_pow(-1);
    let one = Cyclo3::rational(Q::one());
    let d = &one - &x;
    coeffs[0] = &x * &(&d * &d).inverse();
    for n in 1..len {
        let w = Cyclo3::rational(qi(n as i64));
        let pair = &Cyclo3::omega_pow(n as i64) + &Cyclo3::omega_pow(-(n as i64));
        let term = &w * &pair;
        let mut e = n;
        while e < len {
            coeffs[e] = &coeffs[e] + &term;
            e += n;
        }
    }
    if let Some(i) = coeffs.iter().position(|c| !c.om.is_zero()) {
        return Err(Error::InvalidArgument(format!("torsion value is not rational at q^{i}")));
    }
    let body = QSeries::from_coeffs(Q::zero(), 1, coeffs.into_iter().map(|c| c.re).collect());
    Ok(body.sub(&g_hat(2, order)?))
}

/// `(3/2) G2_hat(tau) - (9/2) G2_hat(3 tau)`.
pub fn torsion_expected(order: i64) -> Result<QSeries> {
    let g = g_hat(2, order)?;
    let g3 = g_hat(2, order / 3 + 1)?.dilate(3).truncate(&qi(order + 1));
    Ok(QSeries::linear_combination([(Q::new(3.into(), 2.into()), &g), (Q::new((-9).into(), 2.into()), &g3)]))
}

/// `eta(3 tau)^3 / eta(tau)^5 * (CT wp_hat - wp_hat(1/3))`, which should be a
/// constant multiple of the `m = 3` supercharacter.
pub fn torsion_assembly(order: i64) -> Result<QSeries> {
    let wp = weierstrass(order)?;
    let diff = ct(&[&wp])?.sub(&torsion_p_third(order)?);
    let q = eta_power(3, 3, order + 1).mul(&eta_power(-5, 1, order + 1));
    let s = q.mul(&diff);
    Ok(s.truncate(&(s.valuation() + qi(order + 1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_arithmetic() {
        let w = Cyclo3::omega_pow(1);
        assert_eq!(&(&w * &w) * &w, Cyclo3::rational(Q::one()));
        assert_eq!(&(&w + &Cyclo3::omega_pow(2)) + &Cyclo3::rational(Q::one()), Cyclo3::rational(Q::zero()));
        let z = Cyclo3 { re: qi(2), om: qi(-3) };
        assert_eq!(&z * &z.inverse(), Cyclo3::rational(Q::one()));
    }

    #[test]
    fn torsion_value_sign() {
        let n = 20;
        let got = torsion_p_third(n).unwrap();
        let want = torsion_expected(n).unwrap();
        assert_eq!(got.first_difference(&want.scale(&qi(-1))), None);
    }
}
