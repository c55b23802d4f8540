//! The graph-series identities of the leafless, star and Z families, the
//! nested-sum lemmas behind them, and the Hilbert-series data.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{gamma_multisum, graph_series, graph_series_of, hilbert_via_ct, GraphSeriesJob};
use crate::error::Result;
use crate::graphs::{
    adjacency_determinant, build_gamma, build_t, build_z, cycle, disjoint_union, hilbert_series, independence_profile,
    path, point, Framing, Graph, HilbertRF,
};
use crate::qmzv::{nested_sum, zq_star, Level, Nesting};
use crate::series::dense::{div_one_minus, to_series, zeros};
use crate::series::{
    binomial, euler_power, lambert, pochhammer_inf_shifted, pochhammer_shifted, qi, BiSeries, QSeries,
};
use crate::verify::{Check, Report};

#[derive(Clone, Debug)]
pub struct Section2Config {
    pub kmax: usize,
    pub order: i64,
    pub cyclic_kmax: usize,
    pub hilbert_kmax: usize,
    pub invariant_kmax: usize,
    pub t_order: usize,
    pub xorder: usize,
    pub z_compositions: Vec<Vec<u32>>,
}

impl Default for Section2Config {
    fn default() -> Self {
        Section2Config {
            kmax: 4,
            order: 25,
            cyclic_kmax: 6,
            hilbert_kmax: 5,
            invariant_kmax: 6,
            t_order: 6,
            xorder: 6,
            z_compositions: vec![vec![2], vec![1, 2], vec![2, 1], vec![3, 1], vec![2, 2], vec![1, 1, 2]],
        }
    }
}

impl Section2Config {
    pub fn with_order(order: i64) -> Self {
        Section2Config { order, ..Self::default() }
    }
}

pub fn identity_suite_section2(cfg: &Section2Config) -> Report {
    let n = cfg.order;
    let mut checks = Vec::new();
    checks.extend(c5_e6_checks(n));
    checks.extend(leafless_checks(cfg.kmax, n));
    checks.extend(star_checks(cfg.kmax + 1, n));
    checks.extend(corollary_checks(cfg.kmax, n));
    checks.extend(multisum_checks(cfg.kmax.min(3), n.min(20)));
    checks.extend(double_sum_checks(n));
    checks.extend(shifted_chain_checks(cfg.kmax, n, cfg.xorder));
    checks.extend(nk_checks(cfg.kmax, n));
    checks.extend(cyclic_checks(cfg.cyclic_kmax, n));
    checks.extend(z_checks(&cfg.z_compositions, n.min(20)));
    checks.extend(hilbert_checks(cfg.hilbert_kmax, cfg.t_order));
    checks.extend(invariant_checks(cfg.invariant_kmax));
    Report::new("section2", n, checks)
}

fn union_pt(g: &Graph) -> Graph {
    disjoint_union(g, &point()).expect("small graphs")
}

/// `q * H * (q)_inf^e`, known through `q^(order+1)`.
fn normalized(h: &QSeries, e: i64, order: i64) -> QSeries {
    h.shift(&qi(1)).mul(&euler_power(e, order + 1))
}

pub fn c5_e6_checks(order: i64) -> Vec<Check> {
    let c5 = cycle(5).expect("cycle");
    let e6 = build_t(2).expect("T family");
    let lhs = graph_series_of(&union_pt(&c5), order);
    let rhs = graph_series_of(&e6, order);
    let target = qi(order + 1);
    let c5_closed = lambert(order + 1, BigInt::from);
    let e6_closed = zq_star(&[2], order + 1).expect("valid");
    vec![
        Check::series_to(
            "c5+pt = e6",
            "pentagon plus a point and the E6 tree share a graph series",
            &lhs,
            &rhs,
            &target,
        ),
        Check::series_to(
            "c5 closed form",
            "q (q)_inf^2 H_C5 = sum n q^n/(1-q^n)",
            &normalized(&graph_series_of(&c5, order), 2, order),
            &c5_closed,
            &target,
        ),
        Check::series_to(
            "e6 closed form",
            "q (q)_inf^3 H_E6 = sum q^n/(1-q^n)^2",
            &normalized(&rhs, 3, order),
            &e6_closed,
            &target,
        ),
    ]
}

/// `sum_n n C(n+k-2, k-1) q^n / (1-q^n)`.
pub fn macmahon_numerator(k: usize, order: i64) -> QSeries {
    lambert(order, |n| BigInt::from(n) * binomial(n as i64 + k as i64 - 2, k as i64 - 1))
}

fn two_then_ones(k: usize) -> Vec<u32> {
    let mut a = vec![1u32; k];
    a[0] = 2;
    a
}

pub fn leafless_checks(kmax: usize, order: i64) -> Vec<Check> {
    let target = qi(order + 1);
    let mut out = Vec::new();
    for k in 1..=kmax {
        let g = build_gamma(k).expect("k >= 1");
        let lhs = normalized(&graph_series_of(&g, order), k as i64 + 1, order);
        let mac = macmahon_numerator(k, order + 1);
        let star = zq_star(&two_then_ones(k), order + 1).expect("valid");
        out.push(Check::series_to(
            format!("leafless k={k}"),
            "q (q)_inf^{k+1} H_Gamma(3k+2) = sum n C(n+k-2,k-1) q^n/(1-q^n)",
            &lhs,
            &mac,
            &target,
        ));
        out.push(Check::series_to(
            format!("binomial numerator k={k}"),
            "z*(2,1,...,1) (k entries) = sum n C(n+k-2,k-1) q^n/(1-q^n)",
            &star,
            &mac,
            &target,
        ));
    }
    out
}

pub fn star_checks(kmax: usize, order: i64) -> Vec<Check> {
    let target = qi(order + 1);
    let mut out = Vec::new();
    for k in 2..=kmax {
        let t = build_t(k).expect("k >= 2");
        let lhs = normalized(&graph_series_of(&t, order), k as i64 + 1, order);
        let zk = zq_star(&[k as u32], order + 1).expect("valid");
        let binom = lambert(order + 1, |n| binomial(n as i64 + k as i64 - 2, k as i64 - 1));
        out.push(Check::series_to(
            format!("star T k={k}"),
            "q (q)_inf^{k+1} H_T(2k+2) = sum q^n/(1-q^n)^k",
            &lhs,
            &zk,
            &target,
        ));
        out.push(Check::series_to(
            format!("q-zeta binomial form k={k}"),
            "sum q^n/(1-q^n)^k = sum C(n+k-2,k-1) q^n/(1-q^n)",
            &zk,
            &binom,
            &target,
        ));
    }
    out
}

pub fn corollary_checks(kmax: usize, order: i64) -> Vec<Check> {
    let target = qi(order);
    let mut out = Vec::new();
    for k in 1..=kmax {
        let lhs = graph_series_of(&union_pt(&build_gamma(k).expect("k >= 1")), order);
        let big = graph_series_of(&build_t(k + 1).expect("k+1 >= 2"), order).scale(&qi(k as i64));
        let rhs = if k == 1 {
            big
        } else {
            let small = graph_series_of(&union_pt(&build_t(k).expect("k >= 2")), order);
            big.sub(&small.scale(&qi(k as i64 - 1)))
        };
        out.push(Check::series_to(
            format!("leafless+pt via stars k={k}"),
            "H_{Gamma(3k+2)+pt} = k H_T(2k+4) - (k-1) H_{T(2k+2)+pt}",
            &lhs,
            &rhs,
            &target,
        ));
    }
    out
}

pub fn multisum_checks(kmax: usize, order: i64) -> Vec<Check> {
    (1..=kmax)
        .map(|k| {
            let name = format!("multi-sum k={k}");
            let reference = "(k+1)-fold partial-sum form of H_Gamma(3k+2)";
            Check::from_result(
                name.clone(),
                reference,
                gamma_multisum(k, order).map(|ms| {
                    let direct = graph_series_of(&build_gamma(k).expect("k >= 1"), order);
                    Check::series_to(name, reference, &ms, &direct, &qi(order))
                }),
            )
        })
        .collect()
}

pub fn double_sum_checks(order: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for (a, b) in [(0u64, 0u64), (1, 2), (2, 1), (0, 3)] {
        let job =
            GraphSeriesJob::new(path(2).expect("edge"), Framing::new(vec![a + 1, b + 1]).expect("positive"), order)
                .expect("valid job");
        let lhs = graph_series(&job);
        let r1 =
            pochhammer_shifted(b + 1, a + 1, order).mul(&pochhammer_inf_shifted(a + 1, order)).invert().expect("unit");
        let r2 =
            pochhammer_shifted(a + 1, b + 1, order).mul(&pochhammer_inf_shifted(b + 1, order)).invert().expect("unit");
        let reference = "sum q^{mn+m(a+1)+n(b+1)}/((q)_m (q)_n) = 1/((q^{b+1})_{a+1} (q^{a+1})_inf)";
        out.push(Check::series_to(format!("double sum a={a} b={b}"), reference, &lhs, &r1, &qi(order)));
        out.push(Check::series_to(format!("double sum swap a={a} b={b}"), reference, &r1, &r2, &qi(order)));
    }
    out
}

/// `sum_{n >= n_2 >= ... >= n_{d+1} >= 1} prod 1/(1 - q^{n_i})` over `d` variables.
fn chains_below(d: usize, top: usize, order: i64) -> Vec<QSeries> {
    // cur[n] for n = 0..=top
    let mut cur: Vec<QSeries> = vec![QSeries::one(order); top + 1];
    for _ in 0..d {
        let mut next = vec![QSeries::zero_to(order); top + 1];
        let mut acc = QSeries::zero_to(order);
        for (n, slot) in next.iter_mut().enumerate().skip(1) {
            let mut v = zeros((order + 1) as usize);
            for (e, c) in cur[n].terms() {
                v[e.to_integer().try_into().unwrap_or(usize::MAX)] = c.to_integer();
            }
            div_one_minus(&mut v, n);
            acc = acc.add(&to_series(v));
            *slot = acc.clone();
        }
        cur = next;
    }
    cur
}

/// `[x^m]` of `sum_{n_1 >= ... >= n_k >= 1} q^{n_1} x^{n_k} / prod (1 - q^{n_i})`.
fn x_weighted_coeff(k: usize, m: u64, order: i64) -> QSeries {
    let geo = crate::series::reciprocal_power(m, 1, order);
    if k == 1 {
        return geo.shift(&qi(m as i64)).truncate_order(order);
    }
    let mut levels = vec![Level { numer: 0, power: 1 }; k - 1];
    levels[0].numer = 1;
    nested_sum(&levels, Nesting::Weak, m, order).expect("valid").mul(&geo)
}

pub fn shifted_chain_checks(kmax: usize, order: i64, xorder: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        let lhs = BiSeries::from_coeffs(
            (0..=xorder)
                .map(|m| if m == 0 { QSeries::zero_to(order) } else { x_weighted_coeff(k, m as u64, order) })
                .collect(),
            xorder,
        );
        // sum_{n_1} (x q^{n_1} / (1 - x q^{n_1})) * W(n_1)
        let top = order.max(0) as usize;
        let w = chains_below(k - 1, top, order);
        let mut rhs = BiSeries::zero(xorder, qi(order + 1));
        for n1 in 1..=top {
            let geo = BiSeries::from_coeffs(
                (0..=xorder)
                    .map(|l| {
                        if l == 0 {
                            QSeries::zero_to(order)
                        } else {
                            QSeries::monomial(qi(1), qi((l * n1) as i64), qi(order + 1))
                        }
                    })
                    .collect(),
                xorder,
            );
            rhs = rhs.add(&geo.mul_q(&w[n1]));
        }
        let name = format!("x-shift lemma k={k}");
        let reference = "sum q^{n_1} x^{n_k}/prod(1-q^{n_i}) = sum x q^{n_1}/((1-x q^{n_1}) prod_{i>=2}(1-q^{n_i}))";
        out.push(match lhs.first_difference(&rhs) {
            None => Check::new(name, reference, true, format!("equal for x^0..x^{xorder} below q^{}", order + 1)),
            Some((d, e)) => Check::new(name, reference, false, format!("differ at x^{d} q^{e}")),
        });
    }
    out
}

/// `sum_{m in N^{vars}} q^{shift + sum m} / prod_{j in 1..vars} (1 - q^{m_0+..+m_j+1})`.
fn partial_sum_form(vars: usize, shift: usize, order: i64) -> QSeries {
    let len = (order + 1).max(0) as usize;
    let mut acc = zeros(len);
    if shift >= len {
        return to_series(acc);
    }
    fn rec(j: usize, vars: usize, partial: usize, p: Vec<BigInt>, shift: usize, acc: &mut [BigInt]) {
        let len = acc.len();
        let mut m = 0;
        while shift + partial + m < len {
            let mut cur = p[..len - shift - partial - m].to_vec();
            if j >= 1 {
                div_one_minus(&mut cur, partial + m + 1);
            }
            if j + 1 == vars {
                for (a, x) in acc[shift + partial + m..].iter_mut().zip(&cur) {
                    *a += x;
                }
            } else {
                rec(j + 1, vars, partial + m, cur, shift, acc);
            }
            m += 1;
        }
    }
    let mut one = zeros(len - shift);
    one[0] = BigInt::one();
    rec(0, vars, 0, one, shift, &mut acc);
    to_series(acc)
}

pub fn nk_checks(kmax: usize, order: i64) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 1..=kmax {
        // sum_m m [x^m](...) is the x-derivative at x = 1; [x^m] has valuation >= m
        let top = order.max(0) as u64;
        let mut weighted = QSeries::zero_to(order);
        for m in 1..=top {
            weighted = weighted.add(&x_weighted_coeff(k, m, order).scale(&qi(m as i64)));
        }
        let star = zq_star(&two_then_ones(k), order).expect("valid");
        let lattice = partial_sum_form(k + 1, 1, order);
        out.push(Check::series_to(
            format!("n_k weighted sum k={k}"),
            "sum n_k q^{n_1}/prod(1-q^{n_i}) = z*(2,1,...,1)",
            &weighted,
            &star,
            &qi(order + 1),
        ));
        out.push(Check::series_to(
            format!("n_k lattice form k={k}"),
            "sum n_k q^{n_1}/prod(1-q^{n_i}) as a sum over N^{k+1} with partial-sum denominators",
            &lattice,
            &weighted,
            &qi(order + 1),
        ));
    }
    out
}

pub fn cyclic_checks(kmax: usize, order: i64) -> Vec<Check> {
    (1..=kmax)
        .map(|k| {
            let lhs = zq_star(&two_then_ones(k), order).expect("valid");
            let rhs = QSeries::linear_combination([
                (qi(k as i64), &zq_star(&[k as u32 + 1], order).expect("valid")),
                (qi(1 - k as i64), &zq_star(&[k as u32], order).expect("valid")),
            ]);
            Check::series_to(
                format!("cyclic k={k}"),
                "z*(2,1,...,1) (k entries) = k z*(k+1) - (k-1) z*(k)",
                &lhs,
                &rhs,
                &qi(order + 1),
            )
        })
        .collect()
}

pub fn z_checks(compositions: &[Vec<u32>], order: i64) -> Vec<Check> {
    compositions
        .iter()
        .map(|a| {
            let label = a.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            let name = format!("Z graph ({label})");
            let reference = "q (q)_inf^{k+sum a} H_Z(a) = z*(a)";
            let run = || -> Result<Check> {
                let z = build_z(&a.iter().map(|&x| x as usize).collect::<Vec<_>>())?;
                let e = a.len() as i64 + a.iter().map(|&x| x as i64).sum::<i64>();
                let lhs = normalized(&graph_series_of(&z, order), e, order);
                let rhs = zq_star(a, order + 1)?;
                Ok(Check::series_to(name.clone(), reference, &lhs, &rhs, &qi(order + 1)))
            };
            Check::from_result(name.clone(), reference, run())
        })
        .collect()
}

/// `(1+t)^{k-1} (1 + (k+2) t + t^2) / (1-t)^{k+1}`.
pub fn leafless_hilbert_closed_form(k: usize) -> HilbertRF {
    let mut num = vec![BigInt::one(), BigInt::from(k + 2), BigInt::one()];
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); num.len() + 1];
        for (i, c) in num.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        num = next;
    }
    HilbertRF::new(num, k as u32 + 1)
}

fn hilbert_check(name: String, reference: &str, g: &Graph, expected: &HilbertRF, t_order: usize) -> Check {
    let run = || -> Result<Check> {
        let rf = hilbert_series(g)?;
        if &rf != expected {
            return Ok(Check::new(name.clone(), reference, false, format!("got {rf}, expected {expected}")));
        }
        let ct = hilbert_via_ct(g, t_order);
        if ct != rf.expand(t_order) {
            return Ok(Check::new(name.clone(), reference, false, "constant-term expansion disagrees".to_string()));
        }
        Ok(Check::new(
            name.clone(),
            reference,
            true,
            format!("{rf}, constant-term expansion agrees through t^{t_order}"),
        ))
    };
    Check::from_result(name.clone(), reference, run())
}

pub fn hilbert_checks(kmax: usize, t_order: usize) -> Vec<Check> {
    let c5_rf = HilbertRF::new(vec![1.into(), 3.into(), 1.into()], 2);
    let mut out = vec![
        hilbert_check(
            "hilbert c5".into(),
            "edge algebra of the pentagon: (1+3t+t^2)/(1-t)^2",
            &cycle(5).expect("cycle"),
            &c5_rf,
            t_order,
        ),
        hilbert_check(
            "hilbert e6".into(),
            "edge algebra of E6 = pentagon series times 1/(1-t)",
            &build_t(2).expect("T"),
            &c5_rf.over_one_minus_t(),
            t_order,
        ),
    ];
    for k in 1..=kmax {
        out.push(hilbert_check(
            format!("hilbert leafless k={k}"),
            "edge algebra of Gamma(3k+2): (1+t)^{k-1}(1+(k+2)t+t^2)/(1-t)^{k+1}",
            &build_gamma(k).expect("k >= 1"),
            &leafless_hilbert_closed_form(k),
            t_order,
        ));
    }
    out
}

pub fn invariant_checks(kmax: usize) -> Vec<Check> {
    (1..=kmax)
        .map(|k| {
            let g = build_gamma(k).expect("k >= 1");
            let edges = 5 * k + (k - 1) * k.saturating_sub(2) / 2;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let det = BigInt::from(sign * (k as i64 + 1));
            let alpha = independence_profile(&g).map(|p| p.len() - 1).unwrap_or(0);
            let got_det = adjacency_determinant(&g);
            let ok = g.n() == 3 * k + 2 && g.edge_count() == edges && got_det == det && alpha == k + 1;
            Check::new(
                format!("leafless invariants k={k}"),
                "Gamma(3k+2): 5k+(k-2)(k-1)/2 edges, det (-1)^{k+1}(k+1), independence number k+1",
                ok,
                format!("n={} edges={} det={} alpha={}", g.n(), g.edge_count(), got_det, alpha),
            )
        })
        .collect()
}
