//! Sums over dominant weights attached to a simply-laced root system.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::dense::{add_shifted, div_one_minus_pow, zeros};
use crate::series::{qf, qi, reciprocal_power, QSeries, Q};

/// Positive roots as coefficient vectors over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    rank: usize,
    roots: Vec<Vec<u32>>,
}

impl RootSystem {
    /// `sl(n+1)`: the intervals `[i, j]`, `1 <= i <= j <= n`, ordered lexicographically.
    pub fn type_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("type A needs rank >= 1".into()));
        }
        let mut roots = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                roots.push((0..n).map(|s| (i <= s && s <= j) as u32).collect());
            }
        }
        Ok(RootSystem { rank: n, roots })
    }

    /// User-supplied positive roots; every simple root must be among them.
    pub fn from_roots(rank: usize, roots: Vec<Vec<u32>>) -> Result<Self> {
        if roots.iter().any(|r| r.len() != rank || r.iter().all(|&c| c == 0)) {
            return Err(Error::InvalidArgument("root vectors must be nonzero with length = rank".into()));
        }
        for s in 0..rank {
            if !roots.iter().any(|r| r.iter().enumerate().all(|(t, &c)| c == (t == s) as u32)) {
                return Err(Error::InvalidArgument(format!("simple root {} missing", s + 1)));
            }
        }
        Ok(RootSystem { rank, roots })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn positive_roots(&self) -> &[Vec<u32>] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    /// `dim g = rank + 2 |positive roots|`.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.roots.len()
    }

    /// `<lambda + rho, alpha>` for `lambda + rho = sum_s p_s omega_s`.
    fn pairing(&self, alpha: usize, p: &[u64]) -> u64 {
        self.roots[alpha].iter().zip(p).map(|(&c, &x)| c as u64 * x).sum()
    }
}

/// `sum_{lambda in P_+} prod_alpha <lambda+rho,alpha>^{s_alpha}
///  q^{k_alpha <lambda+rho,alpha>/2} / (1 - q^{<lambda+rho,alpha>})^{k_alpha}`
/// through `q^order` (exponents lie on the half-integer grid).
pub fn lie_sum(roots: &RootSystem, kvec: &[u32], svec: &[u32], order: i64) -> Result<QSeries> {
    let r = roots.num_positive();
    if kvec.len() != r || svec.len() != r {
        return Err(Error::InvalidArgument(format!("need one k and one s per positive root ({r})")));
    }
    if kvec.contains(&0) {
        return Err(Error::InvalidArgument("k entries must be >= 1".into()));
    }
    // doubled exponent grows by w_s per unit of p_s
    let w: Vec<u64> =
        (0..roots.rank).map(|s| (0..r).map(|a| kvec[a] as u64 * roots.roots[a][s] as u64).sum()).collect();
    // terms with exponent < order + 1, i.e. doubled exponent <= 2 order + 1
    let dlen = (2 * (order + 1)).max(0) as usize;
    if dlen == 0 {
        return Ok(QSeries::zero_to(order));
    }
    let limit = dlen as u64 - 1;
    let job = Job { roots, kvec, svec, w: &w, limit, dlen };
    let first_max = limit / w[0];
    let partials: Vec<Vec<BigInt>> = (1..=first_max)
        .into_par_iter()
        .map(|p1| {
            let mut acc = zeros(dlen);
            let mut p = vec![0u64; roots.rank];
            p[0] = p1;
            job.descend(1, w[0] * p1, &mut p, &mut acc);
            acc
        })
        .collect();
    let mut total = zeros(dlen);
    for part in &partials {
        add_shifted(&mut total, part, 0, &BigInt::one());
    }
    Ok(QSeries::from_bigints(Q::zero(), 2, total))
}

struct Job<'a> {
    roots: &'a RootSystem,
    kvec: &'a [u32],
    svec: &'a [u32],
    w: &'a [u64],
    limit: u64,
    dlen: usize,
}

impl Job<'_> {
    fn descend(&self, s: usize, dexp: u64, p: &mut [u64], acc: &mut [BigInt]) {
        if s == p.len() {
            self.leaf(dexp, p, acc);
            return;
        }
        let mut x = 1;
        while dexp + self.w[s] * x <= self.limit {
            p[s] = x;
            self.descend(s + 1, dexp + self.w[s] * x, p, acc);
            x += 1;
        }
    }

    fn leaf(&self, dexp: u64, p: &[u64], acc: &mut [BigInt]) {
        // room in integer steps for the denominator expansion
        let room = ((self.limit - dexp) / 2 + 1) as usize;
        let mut v = zeros(room);
        v[0] = BigInt::one();
        let mut weight = BigInt::one();
        for a in 0..self.roots.num_positive() {
            let pa = self.roots.pairing(a, p);
            if self.svec[a] > 0 {
                weight *= BigInt::from(pa).pow(self.svec[a]);
            }
            div_one_minus_pow(&mut v, pa as usize, self.kvec[a]);
        }
        let base = dexp as usize;
        for (t, c) in v.iter().enumerate() {
            let idx = base + 2 * t;
            if idx >= self.dlen {
                break;
            }
            if !c.is_zero() {
                acc[idx] += &weight * c;
            }
        }
    }
}

/// Per-root exponents `k_alpha`, no polynomial weight.
pub fn zeta_g(roots: &RootSystem, kvec: &[u32], order: i64) -> Result<QSeries> {
    lie_sum(roots, kvec, &vec![0; kvec.len()], order)
}

/// Constant `k`, with the weight `prod_alpha <lambda+rho,alpha>^s`
/// (the Weyl dimension up to a constant factor).
pub fn zeta_g_s(roots: &RootSystem, s: u32, k: u32, order: i64) -> Result<QSeries> {
    let r = roots.num_positive();
    lie_sum(roots, &vec![k; r], &vec![s; r], order)
}

/// Type-A sum with per-interval `k` and `s`, intervals in the order of
/// [`RootSystem::type_a`].
pub fn bibracket_sl(n: usize, kvec: &[u32], svec: &[u32], order: i64) -> Result<QSeries> {
    lie_sum(&RootSystem::type_a(n)?, kvec, svec, order)
}

/// `sum_{m in N^n} prod_{[i,j]} (m_i+..+m_j)^s q^{k'(m_i+..+m_j)/2} / (1-q^{m_i+..+m_j})^{k'}`
/// with `k' = k - 2`, assembled as a product of per-interval series.
pub fn type_an_alt(n: usize, k: u32, order: i64) -> Result<QSeries> {
    if k < 3 {
        return Err(Error::InvalidArgument("needs k >= 3".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be >= 1".into()));
    }
    let kk = k - 2;
    let intervals: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    // doubled exponent contributed by one unit of m_s
    let w: Vec<i64> =
        (0..n).map(|s| intervals.iter().filter(|&&(i, j)| i <= s && s <= j).count() as i64 * kk as i64).collect();
    let prec = qi(order + 1);
    let mut total = QSeries::zero(prec.clone());
    let mut m = vec![0u64; n];
    let limit = 2 * order + 1;
    fn rec(s: usize, dexp: i64, m: &mut [u64], w: &[i64], limit: i64, f: &mut dyn FnMut(&[u64])) {
        if s == m.len() {
            f(m);
            return;
        }
        let mut x = 1u64;
        while dexp + w[s] * x as i64 <= limit {
            m[s] = x;
            rec(s + 1, dexp + w[s] * x as i64, m, w, limit, f);
            x += 1;
        }
    }
    rec(0, 0, &mut m, &w, limit, &mut |m: &[u64]| {
        let mut term = QSeries::one(order);
        for &(i, j) in &intervals {
            let len: u64 = m[i..=j].iter().sum();
            let factor = reciprocal_power(len, kk as u64, order)
                .shift(&qf((kk as u64 * len) as i64, 2))
                .truncate(&prec)
                .scale(&qi(len as i64).pow(k as i32));
            term = term.mul(&factor);
        }
        total = total.add(&term);
    });
    Ok(total)
}

/// `sum over sigma in S_r` of [`zeta_g`] with the entries of `kvals` permuted
/// across the positive roots; each distinct arrangement is computed once and
/// weighted by its stabiliser size.
pub fn symmetrized_sum(roots: &RootSystem, kvals: &[u32], order: i64) -> Result<QSeries> {
    let r = roots.num_positive();
    if kvals.len() != r {
        return Err(Error::InvalidArgument(format!("need {r} values")));
    }
    let mut arr = kvals.to_vec();
    arr.sort_unstable();
    let mut stabiliser = BigInt::one();
    let mut i = 0;
    while i < arr.len() {
        let mut j = i;
        while j < arr.len() && arr[j] == arr[i] {
            j += 1;
        }
        for f in 1..=(j - i) {
            stabiliser *= f;
        }
        i = j;
    }
    let mut arrangements = vec![arr.clone()];
    while next_permutation(&mut arr) {
        arrangements.push(arr.clone());
    }
    let parts: Vec<Result<QSeries>> = arrangements.par_iter().map(|k| zeta_g(roots, k, order)).collect();
    let mut total: Option<QSeries> = None;
    for p in parts {
        let p = p?;
        total = Some(match total {
            None => p,
            Some(t) => t.add(&p),
        });
    }
    Ok(total.unwrap().scale(&Q::from_integer(stabiliser)))
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{divisor_sigma, qb};

    #[test]
    fn roots_of_type_a() {
        let a2 = RootSystem::type_a(2).unwrap();
        assert_eq!(a2.positive_roots(), &[vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert_eq!(a2.dimension(), 8);
        assert_eq!(RootSystem::type_a(4).unwrap().num_positive(), 10);
        assert!(RootSystem::from_roots(2, vec![vec![1, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn sl2_weight_two_is_sigma_one() {
        let z = zeta_g(&RootSystem::type_a(1).unwrap(), &[2], 20).unwrap();
        for n in 1..=20u64 {
            assert_eq!(z.coeff(n as i64), qb(divisor_sigma(1, n)));
        }
    }

    #[test]
    fn sl2_odd_weight_has_half_grid() {
        let z = zeta_g(&RootSystem::type_a(1).unwrap(), &[3], 6).unwrap();
        assert_eq!(z.denom(), 2);
        assert_eq!(z.offset(), &qf(3, 2));
        assert_eq!(z.prec(), &qi(7));
    }

    #[test]
    fn sl3_symmetry_in_simple_roots() {
        let a2 = RootSystem::type_a(2).unwrap();
        let a = zeta_g(&a2, &[2, 4, 6], 20).unwrap();
        let b = zeta_g(&a2, &[6, 4, 2], 20).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn alt_route_matches() {
        for k in [3, 4] {
            let a = zeta_g_s(&RootSystem::type_a(2).unwrap(), k, k - 2, 20).unwrap();
            let b = type_an_alt(2, k, 20).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn symmetrization_counts() {
        let a2 = RootSystem::type_a(2).unwrap();
        let all = symmetrized_sum(&a2, &[2, 2, 2], 12).unwrap();
        assert_eq!(all, zeta_g(&a2, &[2, 2, 2], 12).unwrap().scale(&qi(6)));
        let mixed = symmetrized_sum(&a2, &[2, 2, 4], 12).unwrap();
        let explicit = [[2, 2, 4], [2, 4, 2], [4, 2, 2]]
            .iter()
            .map(|k| zeta_g(&a2, k, 12).unwrap().scale(&qi(2)))
            .reduce(|a, b| a.add(&b))
            .unwrap();
        assert_eq!(mixed, explicit);
    }
}
