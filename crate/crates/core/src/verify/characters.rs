//! Supercharacter expansions, their closed forms and recognitions, the
//! 3-torsion check and the character round trips.

use crate::error::Result;
use crate::modular::Recognition;
use crate::qmzv::{zeta_g_s, RootSystem};
use crate::series::{eta_power, qf, qi, Q};
use crate::verify::section3::recognition_check;
use crate::verify::{Check, Report};
use crate::vertexchar::{
    arakawa_char, fm_factors, fm_recognize, sch_u, sch_u_closed, torsion_assembly, torsion_expected, torsion_p_third,
};

pub const SCH_U3_HEAD: [i64; 6] = [1, 8, 44, 152, 487, 1352];
pub const SCH_U5_HEAD: [i64; 6] = [1, 24, 249, 1750, 9750, 45750];

fn head_check(m: u64, head: &[i64], offset: Q, order: i64) -> Check {
    let name = format!("sch_u({m}) head");
    let reference = format!("supercharacter of U({m}) starts q^{offset} {head:?}");
    let s = match sch_u(m, order.max(head.len() as i64)) {
        Ok(c) => c.series,
        Err(e) => return Check::new(name, reference, false, format!("error: {e}")),
    };
    let got: Vec<Q> = s.coeffs().iter().take(head.len()).cloned().collect();
    let want: Vec<Q> = head.iter().map(|&x| qi(x)).collect();
    let passed = got == want && s.offset() == &offset;
    let shown: Vec<String> = got.iter().map(|x| x.to_string()).collect();
    Check::new(name, reference, passed, format!("q^{} [{}]", s.offset(), shown.join(", ")))
}

fn offset_check(m: u64, order: i64) -> Check {
    let name = format!("sch_u({m}) offset");
    let reference = "offset agrees with eta(m tau)^3 / eta(tau)^(2m-1)";
    match sch_u(m, order.min(4)) {
        Ok(c) => {
            let mi = m as i64;
            let expected = qf(3 * mi, 24) - qf(2 * mi - 1, 24);
            let diff = c.series.offset() - &expected;
            Check::new(name, reference, diff.is_integer(), format!("offset {} vs {expected}", c.series.offset()))
        }
        Err(e) => Check::new(name, reference, false, format!("error: {e}")),
    }
}

fn labelled(rec: &Recognition) -> Vec<(String, Q)> {
    rec.monomials.iter().map(|m| (m.label.clone(), m.coeff.clone())).collect()
}

fn exact_recognition(m: u64, want: Vec<(&str, Q)>, order: i64, margin: usize) -> Check {
    let name = format!("recognize F_{m}");
    let reference = format!("stripped U({m}) supercharacter in weight {} on Gamma0({m})", m - 1);
    match fm_recognize(m, order, margin) {
        Ok(rec) => {
            let mut want: Vec<(String, Q)> = want.into_iter().map(|(l, c)| (l.to_string(), c)).collect();
            want.sort();
            let mut got = labelled(&rec);
            got.sort();
            let shown: Vec<String> = got.iter().map(|(l, c)| format!("{c} {l}")).collect();
            Check::new(name, reference, rec.found && got == want, shown.join(" + "))
        }
        Err(e) => Check::new(name, reference, false, format!("error: {e}")),
    }
}

fn torsion_checks(order: i64) -> Vec<Check> {
    vec![
        Check::compare(
            "wp(1/3)",
            "wp_hat(1/3) = -((3/2) G2 - (9/2) G2(3 tau)) with wp_hat = -G2 + ...",
            order + 1,
            || Ok((torsion_p_third(order)?, torsion_expected(order)?.scale(&qi(-1)))),
        ),
        Check::compare("torsion assembly", "eta(3tau)^3/eta^5 (CT wp - wp(1/3)) = sch_u(3) / 3", order + 1, || {
            let s = sch_u(3, order)?.series;
            let a = torsion_assembly(order)?;
            Ok((a.shift(&-a.offset().clone()), s.shift(&-s.offset().clone()).scale(&qf(1, 3))))
        }),
    ]
}

fn arakawa_check(rank: usize, k: u32, m: i64, order: i64) -> Check {
    let name = format!("arakawa sl{} k={k}", rank + 1);
    let reference = format!("eta^{m} times the character is zeta^k_g(k-2)");
    Check::compare(&name, &reference, order + 1, || {
        let c = arakawa_char(rank, k, order)?;
        if c.eta_power != -m {
            return Err(crate::Error::InvalidArgument(format!("eta power {} instead of {}", -c.eta_power, m)));
        }
        let back = c.series.mul(&eta_power(m, 1, order + 1)).truncate(&qi(order + 1));
        Ok((back, zeta_g_s(&RootSystem::type_a(rank)?, k, k - 2, order)?))
    })
}

fn slope_check(order: i64) -> Check {
    let name = "F_m slopes";
    let reference = "F_m factors respect their declared valuation slopes";
    let r: Result<bool> = (|| {
        let mut ok = true;
        for m in [3, 5, 7] {
            let f = fm_factors(m, order.min(15))?;
            ok &= f.product.respects_slopes() && f.prefactor.respects_slopes();
        }
        Ok(ok)
    })();
    match r {
        Ok(ok) => Check::new(name, reference, ok, "m = 3, 5, 7"),
        Err(e) => Check::new(name, reference, false, format!("error: {e}")),
    }
}

pub fn characters(order: i64, margin: usize) -> Report {
    let mut checks = vec![head_check(3, &SCH_U3_HEAD, qf(1, 6), order), head_check(5, &SCH_U5_HEAD, qf(1, 4), order)];
    for m in [3u64, 5] {
        checks.push(Check::compare(
            &format!("sch_u({m}) closed form"),
            &format!("the eta-quotient formula for m = {m}"),
            order + 1,
            || {
                let a = sch_u(m, order)?.series;
                let b = sch_u_closed(m, order)?;
                let base = a.offset().clone();
                Ok((a.shift(&-base.clone()), b.shift(&-base)))
            },
        ));
    }
    checks.extend([3, 5, 7].map(|m| offset_check(m, order)));
    checks.push(exact_recognition(3, vec![("E2^1", qf(-1, 8)), ("E2(3tau)^1", qf(9, 8))], order, margin));
    checks.push(exact_recognition(
        5,
        vec![
            ("E2^2", qf(25, 1152)),
            ("E4^1", qf(1, 576)),
            ("E2^1*E2(5tau)^1", qf(-125, 192)),
            ("E2(5tau)^2", qf(3125, 1152)),
            ("E4(5tau)^1", qf(-625, 576)),
        ],
        order,
        margin,
    ));
    checks.push(recognition_check(
        "recognize F_7",
        "stripped U(7) supercharacter in weight 6 on Gamma0(7)",
        fm_recognize(7, order, margin).map(|r| (order, r)),
    ));
    checks.extend(torsion_checks(order));
    checks.push(arakawa_check(1, 4, 10, order));
    checks.push(arakawa_check(2, 4, 28, order));
    checks.push(slope_check(order));
    Report::new("characters", order, checks)
}
