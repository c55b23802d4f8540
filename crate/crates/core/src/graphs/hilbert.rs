//! Independent sets and the Hilbert series of the edge algebra.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Graph;
use crate::error::{Error, Result};

/// Vertex limit for exhaustive independent-set enumeration.
pub const INDEPENDENCE_LIMIT: usize = 32;

/// `ind_j` = number of independent vertex sets of size `j`, for `j = 0..=alpha`.
pub fn independence_profile(g: &Graph) -> Result<Vec<u64>> {
    let n = g.n();
    if n > INDEPENDENCE_LIMIT {
        return Err(Error::GraphTooLarge { n, limit: INDEPENDENCE_LIMIT });
    }
    let mut counts = vec![0u64; n + 1];
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    count_from(g, all, 0, &mut counts);
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    Ok(counts)
}

fn count_from(g: &Graph, candidates: u64, size: usize, counts: &mut [u64]) {
    counts[size] += 1;
    let mut c = candidates;
    while c != 0 {
        let v = c.trailing_zeros() as usize;
        c &= c - 1;
        // only later vertices, so every set is produced once in increasing order
        count_from(g, c & !g.neighbors(v), size + 1, counts);
    }
}

/// `h(t) / (1 - t)^d` with integer numerator (coefficients by degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertRF {
    pub numerator: Vec<BigInt>,
    pub pole_order: u32,
}

impl HilbertRF {
    /// Normalize: strip trailing zeros and cancel common `(1 - t)` factors.
    pub fn new(numerator: Vec<BigInt>, pole_order: u32) -> Self {
        let mut h = numerator;
        let mut d = pole_order;
        trim(&mut h);
        while d > 0 && !h.is_empty() && h.iter().sum::<BigInt>().is_zero() {
            // synthetic division by (1 - t)
            let mut q = Vec::with_capacity(h.len() - 1);
            let mut acc = BigInt::zero();
            for c in &h[..h.len() - 1] {
                acc += c;
                q.push(acc.clone());
            }
            h = q;
            trim(&mut h);
            d -= 1;
        }
        HilbertRF { numerator: h, pole_order: d }
    }

    pub fn numerator_at_one(&self) -> BigInt {
        self.numerator.iter().sum()
    }

    /// Multiply by `1 / (1 - t)`.
    pub fn over_one_minus_t(&self) -> Self {
        Self::new(self.numerator.clone(), self.pole_order + 1)
    }

    /// Taylor coefficients of the rational function through `t^order`.
    pub fn expand(&self, order: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); order + 1];
        for (i, c) in self.numerator.iter().enumerate().take(order + 1) {
            v[i] = c.clone();
        }
        for _ in 0..self.pole_order {
            for i in 1..=order {
                let prev = v[i - 1].clone();
                v[i] += prev;
            }
        }
        v
    }

    pub fn is_palindromic(&self) -> bool {
        self.numerator.iter().eq(self.numerator.iter().rev())
    }
}

fn trim(h: &mut Vec<BigInt>) {
    while h.last().is_some_and(Zero::is_zero) {
        h.pop();
    }
}

impl fmt::Display for HilbertRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "t".to_string(),
                (1, false) => format!("{mag}t"),
                (_, true) => format!("t^{i}"),
                (_, false) => format!("{mag}t^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        let num = if parts.is_empty() { "0".to_string() } else { parts.join(" ") };
        match self.pole_order {
            0 => write!(f, "{num}"),
            1 => write!(f, "({num})/(1-t)"),
            d => write!(f, "({num})/(1-t)^{d}"),
        }
    }
}

/// Face-ring form `sum_j ind_j t^j (1-t)^(alpha-j) / (1-t)^alpha`.
pub fn hilbert_series(g: &Graph) -> Result<HilbertRF> {
    let prof = independence_profile(g)?;
    let alpha = prof.len() - 1;
    let mut h = vec![BigInt::zero(); alpha + 1];
    for (j, &c) in prof.iter().enumerate() {
        // c t^j (1 - t)^(alpha - j)
        let r = alpha - j;
        let mut binom = BigInt::one();
        for i in 0..=r {
            let term = &binom * BigInt::from(c);
            if i % 2 == 0 {
                h[j + i] += term;
            } else {
                h[j + i] -= term;
            }
            binom = binom * BigInt::from(r - i) / BigInt::from(i + 1);
        }
    }
    Ok(HilbertRF::new(h, alpha as u32))
}
