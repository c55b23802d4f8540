//! Constant terms of quasi-Jacobi expansions and the quasi-modular
//! recognitions built on them.

use crate::error::Result;
use crate::modular::{
    eisenstein, g_hat, j_one, j_tilde, p_function, q_block, recognize_auto, sigma_series, weierstrass,
    weierstrass_prime, QmLevel, Recognition,
};
use crate::qmzv::{lie_sum, symmetrized_sum, type_an_alt, zeta_g, zeta_g_s, RootSystem};
use crate::series::{ct, qf, qi, QSeries, ZetaSeries};
use crate::verify::{Check, Report};

fn sl3() -> RootSystem {
    RootSystem::type_a(2).expect("rank 2")
}

fn eisenstein_checks(n: i64) -> Vec<Check> {
    [(2u32, -24i64), (4, 240), (6, -504)]
        .into_iter()
        .map(|(w, c)| {
            let name = format!("E{w} divisor sums");
            let reference = format!("E{w} = 1 + ({c}) sum sigma_{}(n) q^n", w - 1);
            Check::compare(&name, &reference, n + 1, || {
                let oracle = QSeries::constant(qi(1), n).add(&sigma_series(w - 1, n).scale(&qi(c)));
                Ok((eisenstein(w, n)?, oracle))
            })
        })
        .collect()
}

fn ct_checks(n: i64) -> Vec<Check> {
    let zero = || QSeries::zero_to(n);
    vec![
        Check::compare("ct wp", "the constant term of the Weierstrass expansion is -G2", n + 1, || {
            Ok((ct(&[&weierstrass(n)?])?, g_hat(2, n)?.scale(&qi(-1))))
        }),
        Check::compare("ct wp^2", "CT wp^2 = 5 G4", n + 1, || {
            let wp = weierstrass(n)?;
            Ok((ct(&[&wp, &wp])?, g_hat(4, n)?.scale(&qi(5))))
        }),
        Check::compare("ct wp'", "wp' is odd in z", n + 1, || Ok((ct(&[&weierstrass_prime(n)?])?, zero()))),
        Check::compare("ct wp'^3", "odd powers of wp' have no constant term", n + 1, || {
            let d = weierstrass_prime(n)?;
            Ok((ct(&[&d, &d, &d])?, zero()))
        }),
        Check::compare("ct wp' wp^2", "odd-parity products have no constant term", n + 1, || {
            let (d, wp) = (weierstrass_prime(n)?, weierstrass(n)?);
            Ok((ct(&[&d, &wp, &wp])?, zero()))
        }),
        Check::compare("ct J1", "J1 = 1/2 + sum (zeta^n q^n - zeta^-n)/(1-q^n) has constant term 1/2", n + 1, || {
            Ok((ct(&[&j_one(n)?])?, QSeries::constant(qf(1, 2), n)))
        }),
        Check::compare("ct P2", "P2 = wp + G2 has no constant term", n + 1, || {
            Ok((ct(&[&p_function(2, n, true)?])?, zero()))
        }),
        Check::compare("ct symmetric", "CT is symmetric in its factors", n + 1, || {
            let (a, b, c) = (weierstrass(n)?, q_block(1, n)?, j_tilde(4, n)?);
            Ok((ct(&[&a, &b, &c])?, ct(&[&c, &a, &b])?))
        }),
    ]
}

fn block_checks(n: i64) -> Vec<Check> {
    let jt = "sum q^{3n}(zeta^n + zeta^-n)/(1-q^n)^6 = J~6/120 - J~4/24 + J~2/30";
    let mut out = vec![match (|| -> Result<(ZetaSeries, ZetaSeries)> {
        let rhs = ZetaSeries::linear_combination([
            (qf(1, 120), &j_tilde(6, n)?),
            (qf(-1, 24), &j_tilde(4, n)?),
            (qf(1, 30), &j_tilde(2, n)?),
        ]);
        Ok((q_block(3, n)?, rhs))
    })() {
        Ok((lhs, rhs)) => match lhs.first_difference(&rhs) {
            None => Check::new("J~ decomposition", jt, true, format!("equal below q^{}", n + 1)),
            Some((e, x)) => Check::new("J~ decomposition", jt, false, format!("differ at zeta^{} q^{x}", e / 2)),
        },
        Err(e) => Check::new("J~ decomposition", jt, false, format!("error: {e}")),
    }];
    for k in 1..=2u32 {
        out.push(Check::compare(
            &format!("CT Q{k}^3 / 6"),
            &format!("CT Q_k^3 = 6 zeta_sl3(2k) at 2k = {}", 2 * k),
            n + 1,
            || {
                let b = q_block(k, n)?;
                Ok((ct(&[&b, &b, &b])?.scale(&qf(1, 6)), zeta_g(&sl3(), &[2 * k; 3], n)?))
            },
        ));
    }
    out.push(Check::compare(
        "weight 12 identity",
        "the k = 1 sl3 cubic sum is 8 (E6^2/570240 + E4^3/798336 - E2 E4 E6/332640)",
        n + 1,
        || {
            let (e2, e4, e6) = (eisenstein(2, n)?, eisenstein(4, n)?, eisenstein(6, n)?);
            let rhs = QSeries::linear_combination([
                (qf(1, 570240), &e6.mul(&e6)),
                (qf(1, 798336), &e4.mul(&e4).mul(&e4)),
                (qf(-1, 332640), &e2.mul(&e4).mul(&e6)),
            ]);
            Ok((zeta_g_s(&sl3(), 3, 1, n)?, rhs.scale(&qi(8))))
        },
    ));
    out.push(Check::compare("type A alternative", "interval-product form of the A2 weighted sum", n + 1, || {
        Ok((type_an_alt(2, 4, n)?, zeta_g_s(&sl3(), 4, 2, n)?))
    }));
    out
}

pub(crate) fn recognition_check(name: &str, reference: &str, r: Result<(i64, Recognition)>) -> Check {
    match r {
        Ok((order, rec)) => {
            let detail = if rec.found {
                format!(
                    "{} monomials, fitted on {} and checked on {} coefficients at order {order}",
                    rec.monomials.len(),
                    rec.fitted_up_to,
                    rec.verified_through
                )
            } else {
                format!("no fit at order {order}")
            };
            Check::new(name, reference, rec.found, detail)
        }
        Err(e) => Check::new(name, reference, false, format!("error: {e}")),
    }
}

/// Weight range of the weighted sl3 sum with `s = 2k + 2`. Each block mixes
/// weights `2k + 3 ..= 4k + 2`, so the cube lies in even weights
/// `6k + 10 ..= 12k + 6`.
pub fn weighted_sl3_weights(k: u32) -> (u32, u32) {
    (6 * k + 10, 12 * k + 6)
}

pub fn recognition_checks(order: i64, margin: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 1..=2u32 {
        out.push(recognition_check(
            &format!("recognize CT Q{k}^3"),
            "the constant term of Q_k^3 is quasi-modular",
            recognize_auto(
                |n| {
                    let b = q_block(k, n)?;
                    ct(&[&b, &b, &b])
                },
                QmLevel::Full,
                0,
                6 * k,
                margin,
                order,
            ),
        ));
        out.push(recognition_check(
            &format!("recognize zeta_sl3({})", 2 * k),
            "zeta_sl3(2k) is quasi-modular",
            recognize_auto(|n| zeta_g(&sl3(), &[2 * k; 3], n), QmLevel::Full, 0, 6 * k, margin, order),
        ));
        out.push(recognition_check(
            &format!("recognize zeta_sl3^{}({})", 2 * k + 2, 2 * k),
            "the weighted sl3 sum with s = 2k + 2 is quasi-modular",
            recognize_auto(
                |n| lie_sum(&sl3(), &[2 * k; 3], &[2 * k + 2; 3], n),
                QmLevel::Full,
                0,
                weighted_sl3_weights(k).1,
                margin,
                order,
            ),
        ));
    }
    out.push(recognition_check(
        "recognize symmetrized (2,2,4)",
        "the S3-symmetrized mixed sum is quasi-modular",
        recognize_auto(|n| symmetrized_sum(&sl3(), &[2, 2, 4], n), QmLevel::Full, 0, 8, margin, order),
    ));
    out
}

pub fn section3(order: i64, margin: usize) -> Report {
    let mut checks = eisenstein_checks(order);
    checks.extend(ct_checks(order));
    checks.extend(block_checks(order));
    checks.extend(recognition_checks(order, margin));
    Report::new("section3", order, checks)
}
