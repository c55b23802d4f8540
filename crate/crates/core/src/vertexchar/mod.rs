//! Characters of vertex algebras built from Lie-algebra q-zeta values and
//! supercharacters obtained as constant terms of theta quotients.

mod probe;
mod torsion;

pub use probe::{conjecture_probe, ProbeParams, ProbeReport, PROBES};
pub use torsion::{torsion_assembly, torsion_expected, torsion_p_third};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modular::{eisenstein, recognize_auto, QmLevel, Recognition};
use crate::qmzv::{zeta_g_s, RootSystem};
use crate::series::json::SeriesJson;
use crate::series::{binomial, ct, eta_power, euler_product, qf, qi, Parity, QSeries, Side, ZetaSeries, Q};

fn ser_series<S: Serializer>(s: &QSeries, ser: S) -> std::result::Result<S::Ok, S::Error> {
    SeriesJson::from(s).serialize(ser)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterResult {
    #[serde(serialize_with = "ser_series")]
    pub series: QSeries,
    /// Power of `eta(tau)` in the normalizing prefactor.
    pub eta_power: i64,
    /// Level of the quasi-modular ring the stripped series is expected in.
    pub level: u64,
    pub recognition: Option<Recognition>,
}

/// `m = dim(g) k - (k - 2) rank(g)` for `g = sl(rank + 1)`.
pub fn arakawa_eta_power(rank: usize, k: u32) -> i64 {
    let g = RootSystem::type_a(rank).expect("rank >= 1");
    g.dimension() as i64 * k as i64 - (k as i64 - 2) * rank as i64
}

/// `eta(tau)^{-m} zeta^k_{g,q}(k - 2)` for `g = sl(rank + 1)`, known through `q^order`.
pub fn arakawa_char(rank: usize, k: u32, order: i64) -> Result<CharacterResult> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("character formula needs k >= 3, got {k}")));
    }
    let g = RootSystem::type_a(rank)?;
    let m = arakawa_eta_power(rank, k);
    let zeta = zeta_g_s(&g, k, k - 2, order)?;
    // eta^{-m} has valuation -m/24; ask for enough terms to cover q^order
    let extra = (m + 23) / 24;
    let eta = eta_power(-m, 1, order + extra + 1);
    let series = zeta.mul(&eta).truncate(&qi(order + 1));
    Ok(CharacterResult { series, eta_power: -m, level: if k % 2 == 0 { 1 } else { 2 }, recognition: None })
}

fn check_odd(m: u64) -> Result<()> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::Unsupported(format!("supercharacters are implemented for odd m >= 3, got {m}")));
    }
    Ok(())
}

/// The three pieces of `F_m`: the rational prefactor `(1 - zeta^{-m}) / (1 - zeta^{-1})^m`
/// expanded in `zeta^{-1}`, the product part
/// `prod_n (1 - q^{mn} zeta^m)(1 - q^{mn} zeta^{-m}) / ((1 - q^n zeta)(1 - q^n zeta^{-1}))^m`,
/// and the scalar `q^{(m+1)/24} (q; q)_inf (q^m; q^m)_inf`.
pub struct FmFactors {
    pub prefactor: ZetaSeries,
    pub product: ZetaSeries,
    pub scalar: QSeries,
}

pub fn fm_factors(m: u64, order: i64) -> Result<FmFactors> {
    check_odd(m)?;
    let n = order.max(0);
    let prec = qi(n + 1);
    let reach = n + 3;
    let mi = m as i64;
    let prefactor_terms = (0..=reach).map(|j| {
        let c: BigInt = (0..=j.min(mi - 1)).map(|i| binomial(j - i + mi - 2, mi - 2)).sum();
        (-2 * j, QSeries::constant(qi(1), n).scale(&Q::from_integer(c)))
    });
    let prefactor = ZetaSeries::new(
        prefactor_terms,
        prec.clone(),
        Side::Finite(0),
        Side::Window(2 * reach),
        Q::zero(),
        Parity::Unknown,
    );

    // grid[j + n][d]: coefficient of zeta^j q^d
    let width = (2 * n + 1) as usize;
    let len = (n + 1) as usize;
    let mut grid = vec![vec![BigInt::zero(); len]; width];
    grid[n as usize][0] = BigInt::one();
    let col = |j: i64| (j + n) as usize;
    for step in 1..=n {
        let big = mi * step;
        if big <= n {
            // times (1 - q^big zeta^m)(1 - q^big zeta^-m), high degrees first
            for sign in [1i64, -1] {
                for d in (big..=n).rev() {
                    for j in -n..=n {
                        let src = j - sign * mi;
                        if src < -n || src > n {
                            continue;
                        }
                        let t = grid[col(src)][(d - big) as usize].clone();
                        if !t.is_zero() {
                            grid[col(j)][d as usize] -= t;
                        }
                    }
                }
            }
        }
        for _ in 0..m {
            for sign in [1i64, -1] {
                for d in step..=n {
                    for j in -n..=n {
                        let src = j - sign;
                        if src < -n || src > n {
                            continue;
                        }
                        let t = grid[col(src)][(d - step) as usize].clone();
                        if !t.is_zero() {
                            grid[col(j)][d as usize] += t;
                        }
                    }
                }
            }
        }
    }
    let product_terms: Vec<(i64, QSeries)> =
        (-n..=n).map(|j| (2 * j, QSeries::from_bigints(Q::zero(), 1, grid[col(j)].clone()))).collect();
    let product =
        ZetaSeries::new(product_terms, prec, Side::Sloped(qi(1)), Side::Sloped(qi(1)), Q::zero(), Parity::Even);

    let scalar =
        euler_product(n).mul(&euler_product(n.div_euclid(mi)).dilate(m).truncate(&qi(n + 1))).shift(&qf(mi + 1, 24));
    Ok(FmFactors { prefactor, product, scalar })
}

/// `F_m` as a single (zeta, q) series, up to the constant absorbed in the
/// supercharacter normalization.
pub fn fm_zeta(m: u64, order: i64) -> Result<ZetaSeries> {
    let f = fm_factors(m, order)?;
    Ok(f.prefactor.mul(&f.product)?.mul_q(&f.scalar))
}

/// Constant term of `F_m`, scaled to leading coefficient 1.
pub fn sch_u(m: u64, order: i64) -> Result<CharacterResult> {
    let f = fm_factors(m, order)?;
    let c = ct(&[&f.prefactor, &f.product])?.mul(&f.scalar);
    let lead = c.leading_coeff().cloned().ok_or_else(|| Error::InsufficientOrder { needed: 1, available: 0 })?;
    let series = c.scale(&(Q::one() / lead)).truncate(&(qf(m as i64 + 1, 24) + qi(order + 1)));
    Ok(CharacterResult { series, eta_power: -(2 * m as i64 - 1), level: m, recognition: None })
}

/// `eta(m tau)^3 / eta(tau)^{2m-1}` known through `q^order` past its leading exponent.
fn eta_quotient(m: u64, order: i64) -> QSeries {
    let mi = m as i64;
    eta_power(3, m, order + 1).mul(&eta_power(-(2 * mi - 1), 1, order + 1))
}

/// The displayed eta-quotient formulas for `m = 3, 5`.
pub fn sch_u_closed(m: u64, order: i64) -> Result<QSeries> {
    let n = order + 1;
    let e = |w: u32| eisenstein(w, n);
    let em = |w: u32| -> Result<QSeries> { Ok(eisenstein(w, n / m as i64 + 1)?.dilate(m).truncate(&qi(n + 1))) };
    let body = match m {
        3 => QSeries::linear_combination([(qf(-1, 8), &e(2)?), (qf(9, 8), &em(2)?)]),
        5 => {
            let (e2, e4, f2, f4) = (e(2)?, e(4)?, em(2)?, em(4)?);
            QSeries::linear_combination([
                (qf(25, 1152), &e2.mul(&e2)),
                (qf(-125, 192), &e2.mul(&f2)),
                (qf(3125, 1152), &f2.mul(&f2)),
                (qf(1, 576), &e4),
                (qf(-625, 576), &f4),
            ])
        }
        _ => return Err(Error::Unsupported(format!("closed form only for m = 3, 5, got {m}"))),
    };
    let q = eta_quotient(m, order).mul(&body);
    Ok(q.truncate(&(q.valuation() + qi(order + 1))))
}

/// `sch_u(m)` with `eta(m tau)^3 / eta(tau)^{2m-1}` divided out.
pub fn fm_stripped(m: u64, order: i64) -> Result<QSeries> {
    let s = sch_u(m, order)?.series;
    let mi = m as i64;
    let inv = eta_power(-3, m, order + 1).mul(&eta_power(2 * mi - 1, 1, order + 1));
    Ok(s.mul(&inv).truncate(&qi(order + 1)))
}

/// Recognize the stripped supercharacter homogeneously at weight `m - 1` on
/// `Gamma_0(m)`; the order is raised if the monomial count demands it.
pub fn fm_recognize(m: u64, order: i64, margin: usize) -> Result<Recognition> {
    check_odd(m)?;
    let w = (m - 1) as u32;
    let (_, rec) = recognize_auto(|n| fm_stripped(m, n), QmLevel::Gamma0(m), w, w, margin, order)?;
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn head(s: &QSeries, k: usize) -> Vec<Q> {
        s.coeffs().iter().take(k).cloned().collect()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn supercharacter_heads() {
        let s3 = sch_u(3, 8).unwrap().series;
        assert_eq!(s3.offset(), &qf(1, 6));
        assert_eq!(head(&s3, 6), ints(&[1, 8, 44, 152, 487, 1352]));
        let s5 = sch_u(5, 8).unwrap().series;
        assert_eq!(head(&s5, 6), ints(&[1, 24, 249, 1750, 9750, 45750]));
    }

    #[test]
    fn closed_forms_agree() {
        for m in [3, 5] {
            let a = sch_u(m, 12).unwrap().series;
            let b = sch_u_closed(m, 12).unwrap();
            assert_eq!(a.first_difference(&b), None, "m = {m}");
            assert!(a.prec() >= &qi(12));
        }
        assert!(sch_u_closed(7, 5).is_err());
    }

    #[test]
    fn product_part_respects_slopes() {
        let f = fm_factors(5, 10).unwrap();
        assert!(f.product.respects_slopes());
        assert!(f.prefactor.respects_slopes());
        // (1 + x + x^2)/(1 - x)^2 at x = 1/zeta: 1, 3, 6, 9, 12, ...
        let got: Vec<Q> = (0..5).map(|j| f.prefactor.coeff(-2 * j).unwrap().coeff(0)).collect();
        let f3 = fm_factors(3, 10).unwrap();
        let got3: Vec<Q> = (0..5).map(|j| f3.prefactor.coeff(-2 * j).unwrap().coeff(0)).collect();
        assert_eq!(got3, ints(&[1, 3, 6, 9, 12]));
        assert_eq!(got[0], qi(1));
        assert!(fm_factors(4, 5).is_err());
    }

    #[test]
    fn fm_zeta_constant_term_matches() {
        let z = fm_zeta(3, 8).unwrap();
        let c = z.constant_term();
        let s = sch_u(3, 8).unwrap().series;
        let lead = c.leading_coeff().unwrap().clone();
        assert_eq!(c.scale(&(Q::one() / lead)).first_difference(&s), None);
    }

    #[test]
    fn recognizes_m3() {
        let r = fm_recognize(3, 20, 10).unwrap();
        assert!(r.found);
        let got: Vec<(String, Q)> = r.monomials.iter().map(|m| (m.label.clone(), m.coeff.clone())).collect();
        assert_eq!(got, vec![("E2^1".to_string(), qf(-1, 8)), ("E2(3tau)^1".to_string(), qf(9, 8))]);
    }

    #[test]
    fn arakawa_round_trip() {
        assert_eq!(arakawa_eta_power(1, 4), 10);
        assert_eq!(arakawa_eta_power(2, 4), 28);
        assert!(arakawa_char(1, 2, 10).is_err());
        let c = arakawa_char(1, 4, 15).unwrap();
        assert_eq!(c.eta_power, -10);
        let back = c.series.mul(&eta_power(10, 1, 16)).truncate(&qi(16));
        let direct = zeta_g_s(&RootSystem::type_a(1).unwrap(), 4, 2, 15).unwrap();
        assert_eq!(back.first_difference(&direct), None);
    }
}
