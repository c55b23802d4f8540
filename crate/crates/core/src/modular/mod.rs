//! Eisenstein series, quasi-modular generator sets, and the (zeta, q)
//! Fourier data of P-functions and related quasi-Jacobi forms.

mod jacobi;
mod recognize;

pub use jacobi::{j_one, j_tilde, p_function, q_block, weierstrass, weierstrass_prime, weighted_block};
pub use recognize::{monomials, recognize, Monomial, Recognition, DEFAULT_MARGIN};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{bernoulli, divisor_sigma, lambert, qb, qf, qi, QSeries, Q};

/// Normalized Eisenstein series `E_w = 1 - (2w / B_w) sum sigma_{w-1}(n) q^n`.
pub fn eisenstein(weight: u32, order: i64) -> Result<QSeries> {
    if weight < 2 || weight % 2 == 1 {
        return Err(Error::InvalidArgument(format!("Eisenstein weight must be even and >= 2, got {weight}")));
    }
    let c = -qi(2 * weight as i64) / bernoulli(weight as usize);
    let sum = lambert(order, |n| BigInt::from(n).pow(weight - 1));
    Ok(QSeries::one(order).add(&sum.scale(&c)))
}

/// `G_w / (2 pi i)^w = -(B_w / w!) E_w`, the rational form of `G_w`.
pub fn g_hat(weight: u32, order: i64) -> Result<QSeries> {
    let fact: BigInt = (1..=weight as u64).map(BigInt::from).product();
    let c = -bernoulli(weight as usize) / qb(fact);
    Ok(eisenstein(weight, order)?.scale(&c))
}

/// `sum_{n>=1} sigma_k(n) q^n`.
pub fn sigma_series(k: u32, order: i64) -> QSeries {
    QSeries::from_fn(order, |n| if n == 0 { Q::zero() } else { qb(divisor_sigma(k, n as u64)) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedGenerator {
    #[serde(skip)]
    pub series: QSeries,
    pub weight: u32,
    pub label: String,
}

/// Which quasi-modular ring to recognize in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QmLevel {
    /// `Q[E2, E4, E6]`.
    Full,
    /// `Q[E2, theta_2^4, theta_3^4]`.
    Two,
    /// `Q[E2, E4, E6, E2(m tau), E4(m tau), E6(m tau)]`.
    Gamma0(u64),
}

impl QmLevel {
    pub fn from_number(m: u64) -> Result<QmLevel> {
        match m {
            0 => Err(Error::InvalidArgument("level must be >= 1".into())),
            1 => Ok(QmLevel::Full),
            2 => Ok(QmLevel::Two),
            m => Ok(QmLevel::Gamma0(m)),
        }
    }

    pub fn number(self) -> u64 {
        match self {
            QmLevel::Full => 1,
            QmLevel::Two => 2,
            QmLevel::Gamma0(m) => m,
        }
    }
}

/// `theta_3^4` with `theta_3 = sum_{n in Z} q^{n^2/2}`, on the half-integer grid.
pub fn theta3_fourth(order: i64) -> QSeries {
    theta_fourth(order, |n| qf(n * n, 2))
}

/// `theta_2^4` with `theta_2 = sum_{n in Z} q^{(n+1/2)^2/2}`.
pub fn theta2_fourth(order: i64) -> QSeries {
    theta_fourth(order, |n| qf((2 * n + 1) * (2 * n + 1), 8))
}

/// Fourth power of `sum_{n in Z} q^{exponent(n)}`, with `exponent` minimal at `n = 0`.
fn theta_fourth(order: i64, exponent: impl Fn(i64) -> Q) -> QSeries {
    let target = qi(order + 1);
    // the fourth power is known below 3 * valuation + (precision of one factor)
    let prec = &target - exponent(0) * qi(3);
    let mut theta = QSeries::zero(prec.clone());
    let mut n = 0i64;
    while exponent(n) < prec || exponent(-n) < prec {
        let mut ms = vec![n];
        if n != 0 {
            ms.push(-n);
        }
        for m in ms {
            if exponent(m) < prec {
                theta = theta.add(&QSeries::monomial(qi(1), exponent(m), prec.clone()));
            }
        }
        n += 1;
    }
    theta.pow(4).expect("nonnegative power").truncate(&target)
}

/// Generators of the quasi-modular ring at the given level, known through `q^order`.
pub fn qm_generators(level: QmLevel, order: i64) -> Result<Vec<WeightedGenerator>> {
    let e = |w: u32| -> Result<WeightedGenerator> {
        Ok(WeightedGenerator { series: eisenstein(w, order)?, weight: w, label: format!("E{w}") })
    };
    Ok(match level {
        QmLevel::Full => vec![e(2)?, e(4)?, e(6)?],
        QmLevel::Two => vec![
            e(2)?,
            WeightedGenerator { series: theta2_fourth(order), weight: 2, label: "Th2".into() },
            WeightedGenerator { series: theta3_fourth(order), weight: 2, label: "Th3".into() },
        ],
        QmLevel::Gamma0(m) => {
            let mut g = vec![e(2)?, e(4)?, e(6)?];
            for w in [2u32, 4, 6] {
                let base = eisenstein(w, order.div_euclid(m as i64))?;
                g.push(WeightedGenerator {
                    series: base.dilate(m).truncate(&qi(order + 1)),
                    weight: w,
                    label: format!("E{w}({m}tau)"),
                });
            }
            g
        }
    })
}

/// Recognize a target built on demand at `level`, raising `order` until the
/// monomials in `[wmin, wmax]` plus the margin fit. Returns the order used.
pub fn recognize_auto<F>(
    build: F,
    level: QmLevel,
    wmin: u32,
    wmax: u32,
    margin: usize,
    order: i64,
) -> Result<(i64, Recognition)>
where
    F: FnOnce(i64) -> Result<QSeries>,
{
    let count = monomials(&qm_generators(level, 0)?, wmin, wmax).len();
    let order = order.max((count + margin + 5) as i64);
    let target = build(order)?;
    let gens = qm_generators(level, order)?;
    Ok((order, recognize(&target, &gens, wmin, wmax, margin)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, upto: i64) -> Vec<i64> {
        (0..=upto).map(|n| s.coeff(n).to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn eisenstein_heads() {
        assert_eq!(ints(&eisenstein(2, 4).unwrap(), 4), vec![1, -24, -72, -96, -168]);
        assert_eq!(ints(&eisenstein(4, 2).unwrap(), 2), vec![1, 240, 2160]);
        assert_eq!(ints(&eisenstein(6, 2).unwrap(), 2), vec![1, -504, -16632]);
        assert!(eisenstein(3, 5).is_err());
    }

    #[test]
    fn g_hat_constant_is_zeta_value() {
        // G_2 / (2 pi i)^2 has constant term 2 zeta(2) / (2 pi i)^2 = -1/12
        assert_eq!(g_hat(2, 3).unwrap().coeff(0), crate::series::qf(-1, 12));
        assert_eq!(g_hat(4, 3).unwrap().coeff(0), crate::series::qf(1, 720));
    }

    #[test]
    fn theta_fourth_powers() {
        let t3 = theta3_fourth(3);
        let half = |k: i64| crate::series::qf(k, 2);
        let got: Vec<Q> = (0..7).map(|k| t3.coeff_at(&half(k)).unwrap()).collect();
        let want: Vec<Q> = [1, 8, 24, 32, 24, 48, 96].iter().map(|&x| qi(x)).collect();
        assert_eq!(got, want);
        let t2 = theta2_fourth(3);
        assert_eq!(t2.offset(), &half(1));
        let got: Vec<Q> = (1..7).map(|k| t2.coeff_at(&half(k)).unwrap()).collect();
        let want: Vec<Q> = [16, 0, 64, 0, 96, 0].iter().map(|&x| qi(x)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn dilated_generators() {
        let g = qm_generators(QmLevel::Gamma0(3), 9).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[3].label, "E2(3tau)");
        assert_eq!(ints(&g[3].series, 6), vec![1, 0, 0, -24, 0, 0, -72]);
        assert_eq!(g[3].series.prec(), &qi(10));
    }

    #[test]
    fn sl3_weight_twelve() {
        let n = 30;
        let sl3 = crate::qmzv::RootSystem::type_a(2).unwrap();
        let lhs = crate::qmzv::zeta_g_s(&sl3, 3, 1, n).unwrap();
        let g = qm_generators(QmLevel::Full, n).unwrap();
        let r = recognize(&lhs, &g, 12, 12, 10).unwrap();
        assert!(r.found);
        let got: Vec<(String, Q)> = r.monomials.iter().map(|m| (m.label.clone(), m.coeff.clone())).collect();
        // eight times the displayed combination
        let want = vec![
            ("E2^1*E4^1*E6^1".to_string(), qf(-8, 332640)),
            ("E4^3".to_string(), qf(8, 798336)),
            ("E6^2".to_string(), qf(8, 570240)),
        ];
        assert_eq!(got, want);
    }
}
