//! Laurent series in `zeta` (half-integer exponents) with q-series coefficients.
//!
//! Exponents are stored doubled. Each side of the exponent axis carries a
//! [`Side`] describing how the stored window relates to the full series, which
//! is what makes constant-term extraction of products finite and exact.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{qf, qi, QSeries, Q};
use crate::error::{Error, Result};

/// Behaviour under `z -> -z`, i.e. `zeta -> 1/zeta` on the underlying function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Unknown,
}

impl Parity {
    pub fn times(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Unknown, _) | (_, Parity::Unknown) => Parity::Unknown,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Unknown => Parity::Unknown,
        }
    }
}

/// One side (positive or negative exponents) of a [`ZetaSeries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    /// No nonzero terms beyond this doubled exponent magnitude.
    Finite(i64),
    /// Infinitely many terms; the coefficient at `±e/2` has q-valuation at
    /// least `slope * e/2 - offset_bound`, and every term below the precision is stored.
    Sloped(Q),
    /// Zero slope; terms are stored for doubled magnitudes up to the reach only.
    Window(i64),
}

impl Side {
    fn slope(&self) -> Q {
        match self {
            Side::Sloped(s) => s.clone(),
            _ => Q::zero(),
        }
    }

    fn is_infinite(&self) -> bool {
        !matches!(self, Side::Finite(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaSeries {
    terms: BTreeMap<i64, QSeries>,
    prec: Q,
    pos: Side,
    neg: Side,
    offset_bound: Q,
    parity: Parity,
}

impl ZetaSeries {
    /// Assemble from doubled-exponent terms. Coefficients are truncated to
    /// `prec`; zero coefficients are dropped.
    pub fn new(
        terms: impl IntoIterator<Item = (i64, QSeries)>,
        prec: Q,
        pos: Side,
        neg: Side,
        offset_bound: Q,
        parity: Parity,
    ) -> Self {
        let mut map: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (e, c) in terms {
            let c = c.truncate(&prec);
            let slot = match map.remove(&e) {
                Some(prev) => prev.add(&c),
                None => c,
            };
            if !slot.is_zero() {
                map.insert(e, slot);
            }
        }
        ZetaSeries { terms: map, prec, pos, neg, offset_bound, parity }
    }

    /// A Laurent polynomial in `zeta` with finitely many terms.
    pub fn laurent(terms: impl IntoIterator<Item = (i64, QSeries)>, prec: Q, parity: Parity) -> Self {
        let mut z = Self::new(terms, prec, Side::Finite(0), Side::Finite(0), Q::zero(), parity);
        let hi = z.terms.keys().next_back().copied().unwrap_or(0).max(0);
        let lo = z.terms.keys().next().copied().unwrap_or(0).min(0);
        z.pos = Side::Finite(hi);
        z.neg = Side::Finite(-lo);
        z.offset_bound = z.scanned_offset_bound();
        z
    }

    /// A `zeta`-independent q-series.
    pub fn constant(c: QSeries) -> Self {
        let prec = c.prec().clone();
        Self::laurent([(0, c)], prec, Parity::Even)
    }

    pub fn terms(&self) -> &BTreeMap<i64, QSeries> {
        &self.terms
    }

    pub fn prec(&self) -> &Q {
        &self.prec
    }

    pub fn pos_side(&self) -> &Side {
        &self.pos
    }

    pub fn neg_side(&self) -> &Side {
        &self.neg
    }

    /// Declared slope on the positive side; `None` for finite support.
    pub fn slope_pos(&self) -> Option<Q> {
        self.pos.is_infinite().then(|| self.pos.slope())
    }

    pub fn slope_neg(&self) -> Option<Q> {
        self.neg.is_infinite().then(|| self.neg.slope())
    }

    pub fn offset_bound(&self) -> &Q {
        &self.offset_bound
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Coefficient at the doubled exponent `e`. `None` means zero (or beyond a window).
    pub fn coeff(&self, e: i64) -> Option<&QSeries> {
        self.terms.get(&e)
    }

    /// The `zeta^0` coefficient.
    pub fn constant_term(&self) -> QSeries {
        self.terms.get(&0).cloned().unwrap_or_else(|| QSeries::zero(self.prec.clone()))
    }

    fn side_of(&self, e: i64) -> &Side {
        if e >= 0 {
            &self.pos
        } else {
            &self.neg
        }
    }

    fn bound_at(&self, e: i64) -> Q {
        self.side_of(e).slope() * qf(e.abs(), 2) - &self.offset_bound
    }

    /// Smallest `c` such that every stored term satisfies the slope bound.
    pub fn scanned_offset_bound(&self) -> Q {
        self.terms
            .iter()
            .map(|(&e, c)| self.side_of(e).slope() * qf(e.abs(), 2) - c.valuation())
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// Scan every stored coefficient against the declared sides and slope bound.
    pub fn respects_slopes(&self) -> bool {
        self.terms.iter().all(|(&e, c)| {
            let inside = match self.side_of(e) {
                Side::Finite(m) | Side::Window(m) => e.abs() <= *m,
                Side::Sloped(_) => true,
            };
            inside && c.valuation() >= self.bound_at(e)
        })
    }

    fn min_valuation(&self) -> Option<Q> {
        self.terms.values().map(|c| c.valuation()).min()
    }

    fn max_exponent(&self) -> i64 {
        self.terms.keys().next_back().copied().unwrap_or(0).max(0)
    }

    fn min_exponent(&self) -> i64 {
        self.terms.keys().next().copied().unwrap_or(0).min(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut z = self.clone();
        if c.is_zero() {
            z.terms.clear();
            return z;
        }
        for v in z.terms.values_mut() {
            *v = v.scale(c);
        }
        z
    }

    /// Multiply every coefficient by a q-series.
    pub fn mul_q(&self, s: &QSeries) -> Self {
        let prec = std::cmp::min(
            &self.prec + s.valuation(),
            self.min_valuation().unwrap_or_else(|| self.prec.clone()) + s.prec(),
        );
        let terms: Vec<(i64, QSeries)> = self.terms.iter().map(|(&e, c)| (e, c.mul(s))).collect();
        let mut z =
            Self::new(terms, prec, self.pos.clone(), self.neg.clone(), &self.offset_bound - s.valuation(), self.parity);
        z.offset_bound = z.scanned_offset_bound().max(z.offset_bound.clone());
        z
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = std::cmp::min(&self.prec, &other.prec).clone();
        let pos = merge_add(&self.pos, &other.pos);
        let neg = merge_add(&self.neg, &other.neg);
        let terms = self.terms.iter().chain(other.terms.iter()).map(|(&e, c)| (e, c.clone()));
        let parity = if self.parity == other.parity { self.parity } else { Parity::Unknown };
        let mut z = Self::new(terms, prec, pos, neg, Q::zero(), parity);
        z.offset_bound = z.scanned_offset_bound();
        z
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&qi(-1)))
    }

    /// Sum of scaled series.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (Q, &'a ZetaSeries)>) -> Self {
        let mut acc: Option<Self> = None;
        for (c, z) in terms {
            let t = z.scale(&c);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.expect("empty linear combination")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mv_a = self.min_valuation();
        let mv_b = other.min_valuation();
        let prec = match (&mv_a, &mv_b) {
            (Some(a), Some(b)) => std::cmp::min(&self.prec + b, &other.prec + a),
            _ => std::cmp::min(&self.prec, &other.prec).clone(),
        };
        let crossed = |x: &Self, y: &Self| matches!(x.pos, Side::Window(_)) && matches!(y.neg, Side::Window(_));
        if crossed(self, other) || crossed(other, self) {
            return Err(Error::UnboundedWindow("product of windows on opposite sides".into()));
        }
        let pos = merge_mul(&self.pos, &other.pos, self.min_exponent(), other.min_exponent())?;
        let neg = merge_mul(&self.neg, &other.neg, -self.max_exponent(), -other.max_exponent())?;
        let mut acc: BTreeMap<i64, QSeries> = BTreeMap::new();
        for (&ea, a) in &self.terms {
            let va = a.valuation();
            for (&eb, b) in &other.terms {
                if &va + b.valuation() >= prec {
                    continue;
                }
                let p = a.mul(b).truncate(&prec);
                let e = ea + eb;
                let slot = match acc.remove(&e) {
                    Some(s) => s.add(&p),
                    None => p,
                };
                acc.insert(e, slot);
            }
        }
        let mut z = Self::new(acc, prec, pos, neg, Q::zero(), self.parity.times(other.parity));
        z.offset_bound = z.scanned_offset_bound();
        Ok(z)
    }

    /// `(1/2pi i) d/dz`: multiplies the coefficient at `zeta^{e/2}` by `e/2`.
    pub fn dz(&self) -> Self {
        let terms: Vec<(i64, QSeries)> = self.terms.iter().map(|(&e, c)| (e, c.scale(&qf(e, 2)))).collect();
        let mut z = Self::new(
            terms,
            self.prec.clone(),
            self.pos.clone(),
            self.neg.clone(),
            self.offset_bound.clone(),
            self.parity.flip(),
        );
        z.offset_bound = z.scanned_offset_bound();
        z
    }

    /// `q d/dq` on every coefficient.
    pub fn dtau(&self) -> Self {
        let terms: Vec<(i64, QSeries)> = self.terms.iter().map(|(&e, c)| (e, c.q_derive())).collect();
        let mut z = Self::new(
            terms,
            self.prec.clone(),
            self.pos.clone(),
            self.neg.clone(),
            self.offset_bound.clone(),
            self.parity,
        );
        z.offset_bound = z.scanned_offset_bound().max(self.offset_bound.clone());
        z
    }

    /// First `(doubled exponent, q-exponent)` where two series differ on the
    /// common precision, restricted to exponents both windows cover.
    pub fn first_difference(&self, other: &Self) -> Option<(i64, Q)> {
        let covered = |z: &Self, e: i64| match z.side_of(e) {
            Side::Window(r) => e.abs() <= *r,
            _ => true,
        };
        let prec = std::cmp::min(&self.prec, &other.prec).clone();
        let mut keys: Vec<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for e in keys {
            if !covered(self, e) || !covered(other, e) {
                continue;
            }
            let zero = QSeries::zero(prec.clone());
            let a = self.terms.get(&e).unwrap_or(&zero).truncate(&prec);
            let b = other.terms.get(&e).unwrap_or(&zero).truncate(&prec);
            if let Some(x) = a.first_difference(&b) {
                return Some((e, x));
            }
        }
        None
    }
}

fn merge_add(a: &Side, b: &Side) -> Side {
    match (a, b) {
        (Side::Window(x), Side::Window(y)) => Side::Window(*x.min(y)),
        (Side::Window(x), _) | (_, Side::Window(x)) => Side::Window(*x),
        (Side::Sloped(x), Side::Sloped(y)) => Side::Sloped(std::cmp::min(x, y).clone()),
        (Side::Sloped(x), _) | (_, Side::Sloped(x)) => Side::Sloped(x.clone()),
        (Side::Finite(x), Side::Finite(y)) => Side::Finite(*x.max(y)),
    }
}

/// Side of a product. `opp_a`/`opp_b` are the extreme stored exponents on the
/// opposite side (signed so that they are `<= 0` in this side's orientation).
fn merge_mul(a: &Side, b: &Side, opp_a: i64, opp_b: i64) -> Result<Side> {
    Ok(match (a, b) {
        (Side::Finite(x), Side::Finite(y)) => Side::Finite(x + y),
        (Side::Window(_), _) | (_, Side::Window(_)) => {
            // A coefficient is complete once every partner exponent from the
            // other factor falls inside the window.
            let mut reach = i64::MAX;
            if let Side::Window(r) = a {
                reach = reach.min(r + opp_b);
            }
            if let Side::Window(r) = b {
                reach = reach.min(r + opp_a);
            }
            if reach < 0 {
                return Err(Error::UnboundedWindow("product window is empty".into()));
            }
            Side::Window(reach)
        }
        (Side::Sloped(x), Side::Sloped(y)) => Side::Sloped(std::cmp::min(x, y).clone()),
        (Side::Sloped(x), _) | (_, Side::Sloped(x)) => Side::Sloped(x.clone()),
    })
}

struct Candidates<'a> {
    items: Vec<(i64, &'a QSeries, Q)>,
    min_val: Q,
    lo: i64,
    hi: i64,
}

/// Constant term in `zeta` of a product of factors.
///
/// Exponent tuples summing to zero are enumerated depth-first; a tuple is
/// skipped as soon as its accumulated q-valuation reaches the result
/// precision. The per-factor sides bound the total positive exponent.
pub fn ct(factors: &[&ZetaSeries]) -> Result<QSeries> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("ct of an empty product".into()));
    }
    let min_vals: Vec<Option<Q>> = factors.iter().map(|f| f.min_valuation()).collect();
    let fallback = factors.iter().map(|f| f.prec.clone()).min().unwrap();
    if min_vals.iter().any(Option::is_none) {
        return Ok(QSeries::zero(fallback));
    }
    let min_vals: Vec<Q> = min_vals.into_iter().map(Option::unwrap).collect();
    let total_min: Q = min_vals.iter().sum();
    let prec = factors.iter().zip(&min_vals).map(|(f, mv)| &f.prec + &total_min - mv).min().unwrap();

    let bound2 = exponent_bound(factors, &prec)?;
    for f in factors {
        for side in [&f.pos, &f.neg] {
            if let Side::Window(r) = side {
                if *r < bound2 {
                    return Err(Error::UnboundedWindow(format!(
                        "window reach {} (doubled) below required {}",
                        r, bound2
                    )));
                }
            }
        }
    }

    let cands: Vec<Candidates> = factors
        .iter()
        .zip(&min_vals)
        .map(|(f, mv)| {
            let cap = &prec - (&total_min - mv);
            let items: Vec<(i64, &QSeries, Q)> = f
                .terms
                .range(-bound2..=bound2)
                .map(|(&e, c)| (e, c, c.valuation()))
                .filter(|(_, _, v)| v < &cap)
                .collect();
            let min_val = items.iter().map(|x| x.2.clone()).min().unwrap_or_else(|| cap.clone());
            let lo = items.first().map(|x| x.0).unwrap_or(0);
            let hi = items.last().map(|x| x.0).unwrap_or(0);
            Candidates { items, min_val, lo, hi }
        })
        .collect();
    if cands.iter().any(|c| c.items.is_empty()) {
        return Ok(QSeries::zero(prec));
    }
    let r = cands.len();
    // suffix data for factors i..r
    let mut rest_val = vec![Q::zero(); r + 1];
    let mut rest_lo = vec![0i64; r + 1];
    let mut rest_hi = vec![0i64; r + 1];
    for i in (0..r).rev() {
        rest_val[i] = &rest_val[i + 1] + &cands[i].min_val;
        rest_lo[i] = rest_lo[i + 1] + cands[i].lo;
        rest_hi[i] = rest_hi[i + 1] + cands[i].hi;
    }
    let ctx = Dfs { cands: &cands, rest_val: &rest_val, rest_lo: &rest_lo, rest_hi: &rest_hi, prec: &prec, bound2 };

    let partials: Vec<QSeries> = cands[0]
        .items
        .par_iter()
        .filter_map(|(e, c, v)| {
            let (pos, neg) = split(*e);
            ctx.start(*e, c, v, pos, neg)
        })
        .collect();
    let mut acc = QSeries::zero(prec.clone());
    for p in &partials {
        acc = acc.add(p);
    }
    Ok(acc.truncate(&prec))
}

fn split(e: i64) -> (i64, i64) {
    if e > 0 {
        (e, 0)
    } else {
        (0, -e)
    }
}

struct Dfs<'a, 'b> {
    cands: &'b [Candidates<'a>],
    rest_val: &'b [Q],
    rest_lo: &'b [i64],
    rest_hi: &'b [i64],
    prec: &'b Q,
    bound2: i64,
}

impl Dfs<'_, '_> {
    fn start(&self, e: i64, c: &QSeries, v: &Q, pos: i64, neg: i64) -> Option<QSeries> {
        if v + &self.rest_val[1] >= *self.prec {
            return None;
        }
        if self.cands.len() == 1 {
            return (e == 0).then(|| c.truncate(self.prec));
        }
        let mut acc = QSeries::zero(self.prec.clone());
        let mut hit = false;
        let partial = c.truncate(&(self.prec - &self.rest_val[1]));
        self.walk(1, e, v.clone(), pos, neg, &partial, &mut acc, &mut hit);
        hit.then_some(acc)
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        i: usize,
        sum: i64,
        val: Q,
        pos: i64,
        neg: i64,
        partial: &QSeries,
        acc: &mut QSeries,
        hit: &mut bool,
    ) {
        let last = i + 1 == self.cands.len();
        if last {
            let need = -sum;
            let c = &self.cands[i];
            if let Ok(k) = c.items.binary_search_by_key(&need, |x| x.0) {
                let (_, s, v) = &c.items[k];
                if &val + v < *self.prec {
                    *acc = acc.add(&partial.mul(s).truncate(self.prec));
                    *hit = true;
                }
            }
            return;
        }
        for (e, s, v) in &self.cands[i].items {
            let nsum = sum + e;
            if -nsum < self.rest_lo[i + 1] || -nsum > self.rest_hi[i + 1] {
                continue;
            }
            let (dp, dn) = split(*e);
            if pos + dp > self.bound2 || neg + dn > self.bound2 {
                continue;
            }
            let nval = &val + v;
            if &nval + &self.rest_val[i + 1] >= *self.prec {
                continue;
            }
            let next = partial.mul(s).truncate(&(self.prec - &self.rest_val[i + 1]));
            self.walk(i + 1, nsum, nval, pos + dp, neg + dn, &next, acc, hit);
        }
    }
}

/// Upper bound (doubled) on the total positive exponent of a contributing tuple.
fn exponent_bound(factors: &[&ZetaSeries], prec: &Q) -> Result<i64> {
    let mut bounds: Vec<Q> = Vec::new();
    let side_data = |pick: fn(&ZetaSeries) -> &Side| {
        let mut finite_extent = Q::zero();
        let mut slope: Option<Q> = None;
        for f in factors {
            match pick(f) {
                Side::Finite(m) => finite_extent += qf(*m, 2),
                s => {
                    let sl = s.slope();
                    slope = Some(match slope {
                        None => sl,
                        Some(x) => std::cmp::min(x, sl),
                    });
                }
            }
        }
        (finite_extent, slope)
    };
    let (ep, sp) = side_data(|f| &f.pos);
    let (en, sn) = side_data(|f| &f.neg);
    if sp.is_none() {
        bounds.push(ep.clone());
    }
    if sn.is_none() {
        bounds.push(en.clone());
    }
    if let (Some(sp), Some(sn)) = (&sp, &sn) {
        let denom = sp + sn;
        if denom.is_positive() {
            // offsets computed with the same slope convention as the bound
            let c_total: Q = factors
                .iter()
                .map(|f| {
                    f.terms
                        .iter()
                        .map(|(&e, c)| f.side_of(e).slope() * qf(e.abs(), 2) - c.valuation())
                        .max()
                        .unwrap_or_else(Q::zero)
                })
                .sum();
            bounds.push((prec + c_total + sp * &ep + sn * &en) / denom);
        }
    }
    let b = bounds.into_iter().min().ok_or_else(|| Error::UnboundedWindow("no side bounds the exponent sum".into()))?;
    let b2 = (b * qi(2)).floor().to_integer();
    Ok(i64::try_from(b2).unwrap_or(i64::MAX).max(0))
}
