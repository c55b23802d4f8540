//! Fourier expansions in `1 < |zeta| < |q|^{-1}` of P-functions, the
//! Weierstrass function and its derivative, `J~_l`, and the symmetric blocks `Q_k`.
//!
//! All `(2 pi i)^k` factors are dropped. Exponents of `zeta` are stored doubled.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::g_hat;
use crate::error::{Error, Result};
use crate::series::dense::{div_one_minus_pow, to_series, zeros};
use crate::series::{euler_polynomial, qf, qi, Parity, QSeries, Side, ZetaSeries, Q};

/// Extra stored exponents beyond the order on zero-slope sides.
const WINDOW_GUARD: i64 = 2;

fn window(order: i64) -> i64 {
    2 * (order + 1 + WINDOW_GUARD)
}

/// `c * q^shift / (1 - q^n)^power` through `q^order`, on the integer grid.
fn lambert_term(c: &BigInt, shift: usize, n: usize, power: u32, order: i64) -> QSeries {
    let len = (order + 1).max(0) as usize;
    let mut v = zeros(len);
    if shift < len {
        v[shift] = c.clone();
        div_one_minus_pow(&mut v, n, power);
    }
    to_series(v)
}

/// `sum_{n>=1} (n^{k-1} zeta^n q^n + (-1)^k n^{k-1} zeta^{-n}) / (1 - q^n)`.
///
/// With `normalized = false` the rational part `1/(k-1)!` of the P-function
/// prefactor is kept; the `(2 pi i)^k` part is always dropped.
pub fn p_function(k: u32, order: i64, normalized: bool) -> Result<ZetaSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument("P-functions start at k = 1".into()));
    }
    let reach = window(order) / 2;
    let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let mut terms = Vec::new();
    for n in 1..=reach {
        let w = BigInt::from(n).pow(k - 1);
        if n <= order {
            terms.push((2 * n, lambert_term(&w, n as usize, n as usize, 1, order)));
        }
        terms.push((-2 * n, lambert_term(&(&sign * &w), 0, n as usize, 1, order)));
    }
    let parity = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
    let z = ZetaSeries::new(terms, qi(order + 1), Side::Sloped(qi(1)), Side::Window(window(order)), Q::zero(), parity);
    if normalized {
        return Ok(z);
    }
    let fact: BigInt = (1..k as u64).map(BigInt::from).product();
    Ok(z.scale(&(Q::one() / Q::from_integer(fact))))
}

/// `J_1 = 1/2 + sum_{n>=1} (zeta^n q^n - zeta^{-n}) / (1 - q^n)`.
pub fn j_one(order: i64) -> Result<ZetaSeries> {
    let half = ZetaSeries::constant(QSeries::constant(qf(1, 2), order));
    Ok(p_function(1, order, true)?.add(&half))
}

/// `wp_hat = -G2_hat + sum_{n>=1} n (q^n zeta^n + zeta^{-n}) / (1 - q^n)`.
pub fn weierstrass(order: i64) -> Result<ZetaSeries> {
    let g2 = ZetaSeries::constant(g_hat(2, order)?.scale(&qi(-1)));
    let mut z = p_function(2, order, true)?.add(&g2);
    // the constant term is finite; the sides are those of the P-function
    z = ZetaSeries::new(
        z.terms().clone(),
        z.prec().clone(),
        Side::Sloped(qi(1)),
        Side::Window(window(order)),
        Q::zero(),
        Parity::Even,
    );
    Ok(z)
}

/// `wp_hat' = -sum_{n>=1} n^2 (q^n zeta^n - zeta^{-n}) / (1 - q^n)`.
pub fn weierstrass_prime(order: i64) -> Result<ZetaSeries> {
    Ok(p_function(3, order, true)?.scale(&qi(-1)))
}

/// Two-sided block `sum_{n>=1} q^{a n} P(q^n) (zeta^n + s zeta^{-n}) / (1 - q^n)^d`
/// with slope `a` on both sides.
fn symmetric_block(numer: &[BigInt], a: i64, d: u32, sign: i64, order: i64, parity: Parity) -> ZetaSeries {
    let len = (order + 1).max(0) as usize;
    let mut terms = Vec::new();
    let mut n = 1i64;
    while a * n <= order {
        let mut v = zeros(len);
        for (i, c) in numer.iter().enumerate() {
            let e = (a * n + i as i64 * n) as usize;
            if e < len {
                v[e] += c;
            }
        }
        div_one_minus_pow(&mut v, n as usize, d);
        let s = to_series(v);
        terms.push((-2 * n, s.scale(&qi(sign))));
        terms.push((2 * n, s));
        n += 1;
    }
    ZetaSeries::new(terms, qi(order + 1), Side::Sloped(qi(a)), Side::Sloped(qi(a)), Q::zero(), parity)
}

/// `J~_l = (B_l - J_l)/l = sum_{n>=1} q^n P_l(q^n) (zeta^n + (-1)^l zeta^{-n}) / (1 - q^n)^l`.
pub fn j_tilde(l: u32, order: i64) -> Result<ZetaSeries> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!("J~_l needs l >= 2, got {l}")));
    }
    let p = euler_polynomial(l)?;
    let (sign, parity) = if l % 2 == 0 { (1, Parity::Even) } else { (-1, Parity::Odd) };
    Ok(symmetric_block(&p, 1, l, sign, order, parity))
}

/// `Q_k = sum_{n>=1} q^{k n} (zeta^n + zeta^{-n}) / (1 - q^n)^{2k}`.
pub fn q_block(k: u32, order: i64) -> Result<ZetaSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument("Q_k needs k >= 1".into()));
    }
    Ok(symmetric_block(&[BigInt::one()], k as i64, 2 * k, 1, order, Parity::Even))
}

/// `sum_{n>=1} n^s q^{k n} (zeta^n + (-1)^s zeta^{-n}) / (1 - q^n)^{2k}`, the
/// weighted block whose cube has the weighted sl(3) double sum as constant term.
pub fn weighted_block(k: u32, s: u32, order: i64) -> Result<ZetaSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument("block needs k >= 1".into()));
    }
    let base = q_block(k, order)?;
    let terms: Vec<(i64, QSeries)> = base
        .terms()
        .iter()
        .map(|(&e, c)| {
            let n = e.abs() / 2;
            let mut w = qi(n).pow(s as i32);
            if e < 0 && s % 2 == 1 {
                w = -w;
            }
            (e, c.scale(&w))
        })
        .collect();
    let parity = if s % 2 == 0 { Parity::Even } else { Parity::Odd };
    Ok(ZetaSeries::new(terms, base.prec().clone(), base.pos_side().clone(), base.neg_side().clone(), Q::zero(), parity))
}
