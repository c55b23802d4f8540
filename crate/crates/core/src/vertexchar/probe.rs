//! Quasi-modularity probes for conjectural statements. A probe builds its
//! series, runs the recognizer and reports the outcome; it never fails on a
//! negative answer.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular::{recognize_auto, QmLevel, Recognition};
use crate::qmzv::{lie_sum, symmetrized_sum, zeta_g, zeta_g_s, RootSystem};
use crate::series::QSeries;

pub const PROBES: [&str; 4] = ["arakawa-qm", "zeta-g-even", "symmetrized", "bibracket-sym"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeParams {
    /// Rank `n` of `sl(n+1)`.
    pub rank: usize,
    /// Level `k` (arakawa-qm) or the common argument (zeta-g-even).
    pub k: Option<u32>,
    /// One value per positive root (symmetrized, bibracket-sym).
    pub kvals: Option<Vec<u32>>,
    pub margin: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub name: String,
    pub params: ProbeParams,
    pub order: i64,
    pub level: u64,
    pub weight_max: u32,
    pub found: bool,
    pub recognition: Option<Recognition>,
    pub error: Option<String>,
}

struct Plan {
    level: QmLevel,
    weight_max: u32,
}

fn need_k(p: &ProbeParams) -> Result<u32> {
    p.k.ok_or_else(|| Error::InvalidArgument("probe needs k".into()))
}

fn need_kvals(p: &ProbeParams, roots: &RootSystem) -> Result<Vec<u32>> {
    let v = p.kvals.clone().ok_or_else(|| Error::InvalidArgument("probe needs kvals".into()))?;
    if v.len() != roots.num_positive() {
        return Err(Error::InvalidArgument(format!("need {} values, one per positive root", roots.num_positive())));
    }
    Ok(v)
}

fn plan(name: &str, p: &ProbeParams, roots: &RootSystem) -> Result<Plan> {
    let r = roots.num_positive() as u32;
    Ok(match name {
        "arakawa-qm" => {
            let k = need_k(p)?;
            if k < 3 {
                return Err(Error::InvalidArgument("arakawa-qm needs k >= 3".into()));
            }
            let level = if k % 2 == 0 { QmLevel::Full } else { QmLevel::Two };
            Plan { level, weight_max: r * (2 * k - 2) }
        }
        "zeta-g-even" => {
            let k = need_k(p)?;
            if k == 0 || k % 2 == 1 {
                return Err(Error::InvalidArgument("zeta-g-even needs an even argument".into()));
            }
            Plan { level: QmLevel::Full, weight_max: r * k }
        }
        "symmetrized" => Plan { level: QmLevel::Full, weight_max: need_kvals(p, roots)?.iter().sum() },
        "bibracket-sym" => {
            let kv = need_kvals(p, roots)?;
            Plan { level: QmLevel::Full, weight_max: kv.iter().map(|k| 2 * k + 2).sum() }
        }
        other => return Err(Error::InvalidArgument(format!("unknown probe {other:?}; known: {}", PROBES.join(", ")))),
    })
}

/// `sum over distinct arrangements sigma` of the bi-bracket with `k_alpha = kvals[sigma]`
/// and `s_alpha = k_alpha + 2`, weighted by stabiliser size.
fn bibracket_symmetrized(roots: &RootSystem, kvals: &[u32], order: i64) -> Result<QSeries> {
    let mut arr = kvals.to_vec();
    arr.sort_unstable();
    let mut stabiliser: u64 = 1;
    let mut i = 0;
    while i < arr.len() {
        let j = arr[i..].iter().take_while(|&&x| x == arr[i]).count() + i;
        stabiliser *= (1..=(j - i) as u64).product::<u64>();
        i = j;
    }
    let mut total: Option<QSeries> = None;
    loop {
        let s: Vec<u32> = arr.iter().map(|k| k + 2).collect();
        let term = lie_sum(roots, &arr, &s, order)?;
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term),
        });
        if !next_permutation(&mut arr) {
            break;
        }
    }
    Ok(total.expect("at least one arrangement").scale(&crate::series::qi(stabiliser as i64)))
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn build(name: &str, p: &ProbeParams, roots: &RootSystem, order: i64) -> Result<QSeries> {
    match name {
        "arakawa-qm" => {
            let k = need_k(p)?;
            zeta_g_s(roots, k, k - 2, order)
        }
        "zeta-g-even" => zeta_g(roots, &vec![need_k(p)?; roots.num_positive()], order),
        "symmetrized" => symmetrized_sum(roots, &need_kvals(p, roots)?, order),
        "bibracket-sym" => bibracket_symmetrized(roots, &need_kvals(p, roots)?, order),
        _ => unreachable!("checked by plan"),
    }
}

fn run(name: &str, p: &ProbeParams, order: i64) -> Result<(Plan, i64, Recognition)> {
    let roots = RootSystem::type_a(p.rank)?;
    let plan = plan(name, p, &roots)?;
    let (order, rec) = recognize_auto(|n| build(name, p, &roots, n), plan.level, 0, plan.weight_max, p.margin, order)?;
    Ok((plan, order, rec))
}

/// Run a named probe. Errors in the parameters are reported in the result.
pub fn conjecture_probe(name: &str, params: &ProbeParams, order: i64) -> ProbeReport {
    match run(name, params, order) {
        Ok((plan, order, rec)) => ProbeReport {
            name: name.into(),
            params: params.clone(),
            order,
            level: plan.level.number(),
            weight_max: plan.weight_max,
            found: rec.found,
            recognition: Some(rec),
            error: None,
        },
        Err(e) => ProbeReport {
            name: name.into(),
            params: params.clone(),
            order,
            level: 0,
            weight_max: 0,
            found: false,
            recognition: None,
            error: Some(e.to_string()),
        },
    }
}
