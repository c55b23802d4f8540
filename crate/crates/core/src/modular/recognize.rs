//! Exact recognition of a q-series as a polynomial in weighted generators.
//!
//! Monomials are fitted on a prefix of the coefficients by exact row
//! reduction and the fit is then checked on the remaining `margin` coefficients.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::WeightedGenerator;
use crate::error::{Error, Result};
use crate::series::{QSeries, Q};

pub const DEFAULT_MARGIN: usize = 10;

fn ser_q<S: Serializer>(q: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub label: String,
    #[serde(serialize_with = "ser_q")]
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub generators: Vec<String>,
    /// Nonzero terms of the fitted combination (empty unless `found`).
    pub monomials: Vec<Monomial>,
    /// Number of coefficients used to fit.
    pub fitted_up_to: usize,
    /// Number of coefficients the fit was checked against, fitted ones included.
    pub verified_through: usize,
    pub found: bool,
}

impl Recognition {
    /// Rebuild the combination from the generators.
    pub fn evaluate(&self, generators: &[WeightedGenerator], order: i64) -> QSeries {
        let mut acc = QSeries::zero_to(order);
        for m in &self.monomials {
            acc = acc.add(&monomial_series(generators, &m.exponents, order).scale(&m.coeff));
        }
        acc
    }
}

fn monomial_label(generators: &[WeightedGenerator], e: &[u32]) -> String {
    let parts: Vec<String> =
        generators.iter().zip(e).filter(|(_, &x)| x > 0).map(|(g, x)| format!("{}^{}", g.label, x)).collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomial_series(generators: &[WeightedGenerator], e: &[u32], order: i64) -> QSeries {
    let mut acc = QSeries::one(order);
    for (g, &x) in generators.iter().zip(e) {
        for _ in 0..x {
            acc = acc.mul(&g.series);
        }
    }
    acc
}

/// Series of every listed monomial, each built from a cached parent with one
/// fewer factor.
fn monomial_table(generators: &[WeightedGenerator], exps: &[Vec<u32>], order: i64) -> Vec<QSeries> {
    fn get(g: &[WeightedGenerator], e: &[u32], order: i64, cache: &mut HashMap<Vec<u32>, QSeries>) -> QSeries {
        if let Some(s) = cache.get(e) {
            return s.clone();
        }
        let s = match e.iter().position(|&x| x > 0) {
            None => QSeries::one(order),
            Some(i) => {
                let mut parent = e.to_vec();
                parent[i] -= 1;
                get(g, &parent, order, cache).mul(&g[i].series)
            }
        };
        cache.insert(e.to_vec(), s.clone());
        s
    }
    let mut cache = HashMap::new();
    exps.iter().map(|e| get(generators, e, order, &mut cache)).collect()
}

/// Exponent vectors with total weight in `[wmin, wmax]`, by increasing weight.
pub fn monomials(generators: &[WeightedGenerator], wmin: u32, wmax: u32) -> Vec<Vec<u32>> {
    fn rec(g: &[WeightedGenerator], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == g.len() {
            out.push(cur.clone());
            return;
        }
        let w = g[i].weight;
        let mut x = 0;
        loop {
            cur.push(x);
            rec(g, i + 1, left - x * w, cur, out);
            cur.pop();
            if w == 0 || (x + 1) * w > left {
                break;
            }
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(generators, 0, wmax, &mut Vec::new(), &mut out);
    let weight = |e: &Vec<u32>| -> u32 { e.iter().zip(generators).map(|(x, g)| x * g.weight).sum() };
    out.retain(|e| (wmin..=wmax).contains(&weight(e)));
    out.sort_by_key(|e| (weight(e), std::cmp::Reverse(e.clone())));
    out
}

/// Find rational `c_m` with `target = sum_m c_m * monomial_m`, monomials of
/// weight in `[wmin, wmax]`. Errors if the target and generators do not
/// provide at least `#monomials + margin` coefficients.
pub fn recognize(
    target: &QSeries,
    generators: &[WeightedGenerator],
    wmin: u32,
    wmax: u32,
    margin: usize,
) -> Result<Recognition> {
    let exps = monomials(generators, wmin, wmax);
    let labels: Vec<String> = generators.iter().map(|g| g.label.clone()).collect();
    // the common grid and precision
    let mut prec = target.prec().clone();
    for g in generators {
        prec = prec.min(g.series.prec().clone());
    }
    let order = prec.ceil().to_integer().try_into().unwrap_or(i64::MAX) - 1;
    let series = monomial_table(generators, &exps, order);
    for s in &series {
        prec = prec.min(s.prec().clone());
    }
    let mut denom = target.denom();
    let mut start = target.offset().clone().min(Q::zero());
    for s in &series {
        denom = num_integer::lcm(denom, s.denom());
        if !s.is_zero() {
            start = start.min(s.offset().clone());
        }
    }
    if !target.is_zero() {
        start = start.min(target.offset().clone());
    }
    let step = Q::new(1.into(), (denom as i64).into());
    let mut points = Vec::new();
    let mut e = (start.clone() / &step).floor() * &step;
    while e < prec {
        points.push(e.clone());
        e += &step;
    }
    let needed = exps.len() + margin;
    if points.len() < needed {
        return Err(Error::InsufficientOrder { needed, available: points.len() });
    }
    let at = |s: &QSeries, x: &Q| s.coeff_at(x).unwrap_or_else(Q::zero);
    let fit_rows = points.len() - margin;
    let rows: Vec<Vec<Q>> = points
        .iter()
        .map(|x| {
            let mut r: Vec<Q> = series.iter().map(|s| at(s, x)).collect();
            r.push(at(target, x));
            r
        })
        .collect();
    let not_found = Recognition {
        generators: labels.clone(),
        monomials: Vec::new(),
        fitted_up_to: fit_rows,
        verified_through: points.len(),
        found: false,
    };
    let Some(sol) = solve(rows[..fit_rows].to_vec(), exps.len()) else {
        return Ok(not_found);
    };
    for r in &rows[fit_rows..] {
        let lhs: Q = r[..exps.len()].iter().zip(&sol).map(|(a, b)| a * b).sum();
        if lhs != r[exps.len()] {
            return Ok(not_found);
        }
    }
    let monomials = exps
        .iter()
        .zip(&sol)
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| Monomial { exponents: e.clone(), label: monomial_label(generators, e), coeff: c.clone() })
        .collect();
    Ok(Recognition { monomials, found: true, ..not_found })
}

/// Solve the augmented system exactly; free variables are set to zero.
///
/// Rows are cleared of denominators and reduced fraction-free (Bareiss), so
/// intermediate entries stay integral minors of the input.
fn solve(m: Vec<Vec<Q>>, ncols: usize) -> Option<Vec<Q>> {
    let mut a: Vec<Vec<BigInt>> = m
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..=ncols {
                row[j] = (&pivot_row[c] * &row[j] - &f * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate().rev() {
        let row = &a[i];
        let mut rhs = Q::from_integer(row[ncols].clone());
        for &j in &pivots[i + 1..] {
            rhs -= Q::from_integer(row[j].clone()) * &sol[j];
        }
        sol[c] = rhs / Q::from_integer(row[c].clone());
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{qm_generators, sigma_series, QmLevel};
    use crate::series::{qf, qi};

    #[test]
    fn monomial_counts() {
        let g = qm_generators(QmLevel::Full, 5).unwrap();
        // dimensions of weight-w quasi-modular forms: 1,1,2,3,4,5,7 for w = 0..12
        let dims: Vec<usize> = (0..=6).map(|k| monomials(&g, 2 * k, 2 * k).len()).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 4, 5, 7]);
        assert_eq!(monomials(&g, 0, 4).len(), 4);
    }

    #[test]
    fn sigma_one_is_quasi_modular() {
        let n = 20;
        let g = qm_generators(QmLevel::Full, n).unwrap();
        let r = recognize(&sigma_series(1, n), &g, 0, 2, 10).unwrap();
        assert!(r.found);
        let coeffs: Vec<(String, Q)> = r.monomials.iter().map(|m| (m.label.clone(), m.coeff.clone())).collect();
        assert_eq!(coeffs, vec![("1".to_string(), qf(1, 24)), ("E2^1".to_string(), qf(-1, 24))]);
        assert_eq!(r.verified_through - r.fitted_up_to, 10);
    }

    #[test]
    fn q_is_not_quasi_modular() {
        let n = 40;
        let g = qm_generators(QmLevel::Full, n).unwrap();
        let target = QSeries::monomial(qi(1), qi(1), qi(n + 1));
        assert!(!recognize(&target, &g, 0, 12, 10).unwrap().found);
    }

    #[test]
    fn short_targets_are_rejected() {
        let g = qm_generators(QmLevel::Full, 30).unwrap();
        let target = sigma_series(3, 8);
        assert!(matches!(recognize(&target, &g, 0, 12, 10), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn solver_handles_rank_deficiency() {
        // x + 2y = 3 twice over, z free, w pinned by the last row
        let rows = vec![
            vec![qi(1), qi(2), qi(0), qi(0), qi(3)],
            vec![qi(2), qi(4), qi(0), qi(0), qi(6)],
            vec![qi(0), qi(0), qi(0), qf(1, 2), qf(5, 3)],
        ];
        assert_eq!(solve(rows, 4), Some(vec![qi(3), qi(0), qi(0), qf(10, 3)]));
        let bad = vec![vec![qi(1), qi(1)], vec![qi(2), qi(3)]];
        assert_eq!(solve(bad, 1), None);
    }
}
