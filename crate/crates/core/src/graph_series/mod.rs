//! Graph series by pruned lattice enumeration, the multi-sum form for the
//! leafless family, Hilbert series via constant terms, and the census.

mod census;
pub mod identities;

pub use census::{census, CensusRow};
pub use identities::{identity_suite_section2, Section2Config};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::{Framing, Graph};
use crate::series::dense::{div_one_minus, to_series, zeros};
use crate::series::{euler_power, QSeries};

#[derive(Clone, Debug)]
pub struct GraphSeriesJob {
    pub graph: Graph,
    pub framing: Framing,
    pub order: i64,
}

impl GraphSeriesJob {
    pub fn new(graph: Graph, framing: Framing, order: i64) -> Result<Self> {
        if framing.len() != graph.n() {
            return Err(Error::InvalidArgument(format!(
                "framing has {} entries for {} vertices",
                framing.len(),
                graph.n()
            )));
        }
        if order < 1 {
            return Err(Error::InvalidArgument("order must be >= 1".into()));
        }
        Ok(GraphSeriesJob { graph, framing, order })
    }

    /// Standard framing `b = (1, ..., 1)`.
    pub fn standard(graph: Graph, order: i64) -> Result<Self> {
        let n = graph.n();
        Self::new(graph, Framing::ones(n), order)
    }
}

/// Coefficient arithmetic for the enumeration: a fast fixed-width path with
/// overflow detection, and an exact fallback.
trait Coef: Clone + Send + Sync {
    fn nothing() -> Self;
    fn unit() -> Self;
    /// `self += other`; false on overflow.
    fn add_in(&mut self, other: &Self) -> bool;
    fn into_big(self) -> BigInt;
}

impl Coef for u128 {
    fn nothing() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn add_in(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coef for BigInt {
    fn nothing() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn add_in(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn into_big(self) -> BigInt {
        self
    }
}

struct Overflow;

struct Enumeration<'a> {
    /// Vertices in visiting order.
    order_of: Vec<usize>,
    graph: &'a Graph,
    framing: &'a [u64],
    len: usize,
}

impl Enumeration<'_> {
    fn new<'a>(graph: &'a Graph, framing: &'a [u64], order: i64) -> Enumeration<'a> {
        // high-degree vertices first so the quadratic term prunes early
        let mut order_of: Vec<usize> = (0..graph.n()).collect();
        order_of.sort_by_key(|&v| std::cmp::Reverse(graph.degree(v)));
        Enumeration { order_of, graph, framing, len: (order + 1) as usize }
    }

    fn run<C: Coef>(&self) -> std::result::Result<Vec<C>, Overflow> {
        let n = self.order_of.len();
        let mut base = vec![C::nothing(); self.len];
        base[0] = C::unit();
        if n == 0 {
            return Ok(base);
        }
        // linear coefficient of each vertex given the choices made so far
        let lin: Vec<u64> = self.framing.to_vec();
        let v0 = self.order_of[0];
        let step0 = lin[v0] as usize;
        let top = (self.len - 1) / step0;
        let parts: Vec<std::result::Result<Vec<C>, Overflow>> = (0..=top)
            .into_par_iter()
            .map(|n0| {
                let mut acc = vec![C::nothing(); self.len];
                let mut p = base.clone();
                let e = n0 * step0;
                p.truncate(self.len - e);
                for j in 1..=n0 {
                    divide::<C>(&mut p, j)?;
                }
                let mut lin = lin.clone();
                self.bump(&mut lin, v0, n0 as u64);
                self.descend(1, e, &p, &mut lin, &mut acc)?;
                Ok(acc)
            })
            .collect();
        let mut total = vec![C::nothing(); self.len];
        for part in parts {
            let part = part?;
            for (t, x) in total.iter_mut().zip(&part) {
                if !t.add_in(x) {
                    return Err(Overflow);
                }
            }
        }
        Ok(total)
    }

    fn bump(&self, lin: &mut [u64], v: usize, by: u64) {
        if by == 0 {
            return;
        }
        let mut nb = self.graph.neighbors(v);
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            lin[w] += by;
        }
    }

    fn descend<C: Coef>(
        &self,
        depth: usize,
        exp: usize,
        p: &[C],
        lin: &mut Vec<u64>,
        acc: &mut [C],
    ) -> std::result::Result<(), Overflow> {
        if depth == self.order_of.len() {
            for (a, x) in acc[exp..].iter_mut().zip(p) {
                if !a.add_in(x) {
                    return Err(Overflow);
                }
            }
            return Ok(());
        }
        let v = self.order_of[depth];
        let step = lin[v] as usize;
        let mut cur = p.to_vec();
        let mut e = exp;
        let mut k = 0u64;
        loop {
            self.bump(lin, v, k);
            let r = self.descend(depth + 1, e, &cur, lin, acc);
            self.unbump(lin, v, k);
            r?;
            k += 1;
            e += step;
            if e >= self.len {
                break;
            }
            cur.truncate(self.len - e);
            divide::<C>(&mut cur, k as usize)?;
        }
        Ok(())
    }

    fn unbump(&self, lin: &mut [u64], v: usize, by: u64) {
        if by == 0 {
            return;
        }
        let mut nb = self.graph.neighbors(v);
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            lin[w] -= by;
        }
    }
}

/// In-place division by `1 - q^j`.
fn divide<C: Coef>(v: &mut [C], j: usize) -> std::result::Result<(), Overflow> {
    for k in j..v.len() {
        let (lo, hi) = v.split_at_mut(k);
        if !hi[0].add_in(&lo[k - j]) {
            return Err(Overflow);
        }
    }
    Ok(())
}

/// `sum_n q^{n A n^T / 2 + b.n} / prod (q)_{n_i}` through `q^order`.
///
/// Every term has exponent at least `sum n_i` and the exponent grows in each
/// coordinate, so the enumeration stops a branch once it passes the order.
pub fn graph_series(job: &GraphSeriesJob) -> QSeries {
    let en = Enumeration::new(&job.graph, job.framing.as_slice(), job.order);
    let coeffs: Vec<BigInt> = match en.run::<u128>() {
        Ok(v) => v.into_iter().map(Coef::into_big).collect(),
        Err(Overflow) => match en.run::<BigInt>() {
            Ok(v) => v,
            Err(Overflow) => unreachable!("exact arithmetic cannot overflow"),
        },
    };
    to_series(coeffs)
}

/// Standard-framed graph series.
pub fn graph_series_of(g: &Graph, order: i64) -> QSeries {
    graph_series(&GraphSeriesJob::standard(g.clone(), order).expect("order >= 1"))
}

/// The `(k+1)`-fold sum for the leafless family:
/// `(q)_inf^{-(k+1)} sum_{m_0..m_k >= 0} q^{sum m} / prod_{j=1}^{k} (1 - q^{m_0+..+m_j+1})`.
pub fn gamma_multisum(k: usize, order: i64) -> Result<QSeries> {
    if k < 1 {
        return Err(Error::InvalidArgument("needs k >= 1".into()));
    }
    if order < 0 {
        return Ok(QSeries::zero_to(order));
    }
    let len = (order + 1) as usize;
    let mut acc = zeros(len);
    let mut one = zeros(len);
    one[0] = BigInt::one();
    fn rec(j: usize, k: usize, partial: usize, p: &[BigInt], acc: &mut [BigInt]) {
        let len = acc.len();
        let mut m = 0;
        while partial + m < len {
            // p is known through exponent len-1-partial; the new q^m shrinks the room
            let room = len - partial - m;
            let mut cur = p[..room].to_vec();
            if j >= 1 {
                div_one_minus(&mut cur, partial + m + 1);
            }
            if j == k {
                for (a, x) in acc[partial + m..].iter_mut().zip(&cur) {
                    *a += x;
                }
            } else {
                rec(j + 1, k, partial + m, &cur, acc);
            }
            m += 1;
        }
    }
    rec(0, k, 0, &one, &mut acc);
    Ok(to_series(acc).mul(&euler_power(-(k as i64 + 1), order)))
}

/// Truncated t-expansion of the edge-algebra Hilbert series read off as the
/// `q^0` coefficient of `sum_n t^{|n|} q^{n A n^T/2} / prod (q)_{n_i}`.
/// Only lattice points with vanishing quadratic term contribute, each with
/// coefficient 1.
pub fn hilbert_via_ct(g: &Graph, t_order: usize) -> Vec<BigInt> {
    let n = g.n();
    let mut out = vec![BigInt::zero(); t_order + 1];
    // quad[v] = sum of n_w over already chosen neighbours w of v
    fn rec(g: &Graph, v: usize, total: usize, quad: &mut [u64], out: &mut [BigInt]) {
        if v == g.n() {
            out[total] += 1;
            return;
        }
        rec(g, v + 1, total, quad, out);
        if quad[v] > 0 {
            return;
        }
        let mut nb = g.neighbors(v);
        let mut touched = Vec::new();
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            touched.push(w);
        }
        for k in 1..out.len() - total {
            for &w in &touched {
                quad[w] += 1;
            }
            rec(g, v + 1, total + k, quad, out);
            for &w in &touched {
                quad[w] -= 1;
            }
        }
    }
    let mut quad = vec![0u64; n];
    rec(g, 0, 0, &mut quad, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_gamma, cycle, hilbert_series, path, point};
    use crate::series::{euler_product, lambert, qi};

    #[test]
    fn point_is_inverse_euler() {
        let s = graph_series_of(&point(), 25);
        assert_eq!(s, euler_product(25).invert().unwrap());
    }

    #[test]
    fn edge_has_extra_factor() {
        // 1 / ((1-q) (q)_inf)
        let s = graph_series_of(&path(2).unwrap(), 20);
        let rhs = euler_product(20).invert().unwrap().mul(&QSeries::from_fn(20, |_| qi(1)));
        assert_eq!(s, rhs);
    }

    #[test]
    fn pentagon_closed_form() {
        let n = 30;
        let lhs = graph_series_of(&cycle(5).unwrap(), n).shift(&qi(1));
        let num = lambert(n + 1, |k| k.into());
        let rhs = num.mul(&euler_power(-2, n + 1));
        assert_eq!(lhs.first_difference(&rhs), None);
        assert_eq!(lhs.prec(), &qi(n + 2));
    }

    #[test]
    fn multisum_small() {
        assert_eq!(gamma_multisum(1, 20).unwrap(), graph_series_of(&cycle(5).unwrap(), 20));
        assert_eq!(gamma_multisum(2, 15).unwrap(), graph_series_of(&build_gamma(2).unwrap(), 15));
    }

    #[test]
    fn hilbert_ct_matches_rational_function() {
        for g in [point(), path(2).unwrap(), cycle(5).unwrap(), build_gamma(2).unwrap()] {
            let rf = hilbert_series(&g).unwrap();
            assert_eq!(hilbert_via_ct(&g, 6), rf.expand(6));
        }
        let c5: Vec<i64> = hilbert_via_ct(&cycle(5).unwrap(), 3).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(c5, vec![1, 5, 10, 15]);
    }

    #[test]
    fn framing_shifts_lemma_double() {
        // a = 1, b = 2: 1 / ((q^3; q)_2 (q^2; q)_inf)
        let job = GraphSeriesJob::new(path(2).unwrap(), Framing::new(vec![2, 3]).unwrap(), 20).unwrap();
        let lhs = graph_series(&job);
        let rhs = crate::series::pochhammer_shifted(3, 2, 20)
            .mul(&crate::series::pochhammer_inf_shifted(2, 20))
            .invert()
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
