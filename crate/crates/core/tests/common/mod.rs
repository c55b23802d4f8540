//! Brute-force oracles shared by the integration tests. Everything here is
//! written from the definitions with plain loops over boxes of indices and
//! dense truncated polynomials; none of it calls the library's kernels.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qzeta::{QSeries, Q};

/// Dense integer polynomial truncated to a fixed length.
pub type Poly = Vec<BigInt>;

pub fn zero(len: usize) -> Poly {
    vec![BigInt::zero(); len]
}

pub fn one(len: usize) -> Poly {
    let mut p = zero(len);
    if len > 0 {
        p[0] = BigInt::one();
    }
    p
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let len = a.len().min(b.len());
    let mut out = zero(len);
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add_into(acc: &mut Poly, p: &Poly) {
    for (a, b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

pub fn shift(p: &Poly, e: usize) -> Poly {
    let mut out = zero(p.len());
    for i in 0..p.len().saturating_sub(e) {
        out[i + e] = p[i].clone();
    }
    out
}

/// `1 / (1 - q^n)` as the geometric series.
pub fn geometric(n: usize, len: usize) -> Poly {
    let mut p = zero(len);
    let mut e = 0;
    while e < len {
        p[e] = BigInt::one();
        e += n;
    }
    p
}

/// `1 / (1 - q^n)^a` by repeated multiplication.
pub fn inv_power(n: usize, a: u32, len: usize) -> Poly {
    (0..a).fold(one(len), |acc, _| mul(&acc, &geometric(n, len)))
}

/// `1 / (q)_m`.
pub fn inv_poch(m: usize, len: usize) -> Poly {
    (1..=m).fold(one(len), |acc, i| mul(&acc, &geometric(i, len)))
}

/// `(q)_m` by expanding the product.
pub fn poch(m: usize, len: usize) -> Poly {
    let mut acc = one(len);
    for i in 1..=m {
        let mut f = one(len);
        if i < len {
            f[i] = -BigInt::one();
        }
        acc = mul(&acc, &f);
    }
    acc
}

/// Integer coefficients of `s` at `q^0 .. q^{len-1}`.
pub fn coeffs_of(s: &QSeries, len: usize) -> Vec<Q> {
    (0..len as i64).map(|n| s.coeff(n)).collect()
}

pub fn as_q(p: &Poly) -> Vec<Q> {
    p.iter().map(|x| Q::from_integer(x.clone())).collect()
}

/// Coefficients of `s` on the half-integer grid, `q^{i/2}` for `i < len`.
pub fn half_coeffs_of(s: &QSeries, len: usize) -> Vec<Q> {
    (0..len as i64).map(|i| s.coeff_at(&Q::new(i.into(), 2.into())).unwrap_or_else(Q::zero)).collect()
}

/// Every tuple in `[lo, hi]^k`.
pub fn boxed(k: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Star,
    Strict,
    Standard,
}

/// Nested multiple q-zeta value through `q^order`, summed over the full box
/// `[1, order + 1]^k` and filtered by the ordering.
pub fn qmzv_box(a: &[u32], model: Model, order: usize) -> Poly {
    let len = order + 1;
    let mut acc = zero(len);
    for n in boxed(a.len(), 1, order + 1) {
        let ordered = n.windows(2).all(|w| match model {
            Model::Star => w[0] >= w[1],
            _ => w[0] > w[1],
        });
        if !ordered {
            continue;
        }
        let numer: usize = match model {
            Model::Standard => n.iter().zip(a).map(|(&x, &p)| (p as usize - 1) * x).sum(),
            _ => n[0],
        };
        if numer >= len {
            continue;
        }
        let mut t = one(len);
        for (&x, &p) in n.iter().zip(a) {
            t = mul(&t, &inv_power(x, p, len));
        }
        add_into(&mut acc, &shift(&t, numer));
    }
    acc
}

/// `sum_n q^{n A n / 2 + b.n} / prod (q)_{n_i}` over the box `[0, order]^r`.
pub fn graph_series_box(n_vertices: usize, edges: &[(usize, usize)], order: usize) -> Poly {
    let len = order + 1;
    let mut acc = zero(len);
    for n in boxed(n_vertices, 0, order) {
        let quad: usize = edges.iter().map(|&(i, j)| n[i] * n[j]).sum();
        let e = quad + n.iter().sum::<usize>();
        if e >= len {
            continue;
        }
        let mut t = one(len);
        for &x in &n {
            t = mul(&t, &inv_poch(x, len));
        }
        add_into(&mut acc, &shift(&t, e));
    }
    acc
}

/// Lie-type sum on the doubled grid: index `i` holds the coefficient of `q^{i/2}`,
/// for `i <= 2 order + 1`. `roots[a][s]` is the coefficient of simple root `s`.
pub fn lie_sum_box(roots: &[Vec<u32>], rank: usize, k: &[u32], s: &[u32], order: usize) -> Poly {
    let len = 2 * order + 2;
    let mut acc = zero(len);
    for p in boxed(rank, 1, order + 1) {
        let pair: Vec<usize> = roots.iter().map(|r| r.iter().zip(&p).map(|(&c, &x)| c as usize * x).sum()).collect();
        let e: usize = pair.iter().zip(k).map(|(&x, &kk)| x * kk as usize).sum();
        if e >= len {
            continue;
        }
        let mut t = one(len);
        let mut weight = BigInt::one();
        for ((&x, &kk), &ss) in pair.iter().zip(k).zip(s) {
            weight *= BigInt::from(x).pow(ss);
            // 1/(1 - q^x)^kk with q^x at doubled index 2x
            t = mul(&t, &inv_power(2 * x, kk, len));
        }
        let t: Poly = t.into_iter().map(|c| c * &weight).collect();
        add_into(&mut acc, &shift(&t, e));
    }
    acc
}

/// Positive roots of `sl(n+1)` as intervals of simple roots.
pub fn type_a_roots(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((0..n).map(|s| u32::from(i <= s && s <= j)).collect());
        }
    }
    out
}

pub fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

/// Partitions of `n` into parts at most `max`.
pub fn partitions(n: u64, max: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    (1..=max.min(n)).map(|p| partitions(n - p, p)).sum()
}

/// Representations of `n` as an ordered sum of four integer squares.
pub fn four_squares(n: i64) -> i64 {
    let r = (n as f64).sqrt() as i64 + 1;
    let mut count = 0;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if a * a + b * b + c * c + d * d == n {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Independent sets of each size.
pub fn independent_sets(n_vertices: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    let mut out = vec![0u64; n_vertices + 1];
    for mask in 0u32..(1 << n_vertices) {
        if edges.iter().all(|&(i, j)| mask >> i & 1 == 0 || mask >> j & 1 == 0) {
            out[mask.count_ones() as usize] += 1;
        }
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Hilbert series of the edge algebra through `t^order`: a degree-`m` monomial
/// survives iff its support is independent, and a fixed `d`-set supports
/// `C(m-1, d-1)` monomials of degree `m`.
pub fn edge_algebra_hilbert(profile: &[u64], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (d, &f) in profile.iter().enumerate() {
        for (m, slot) in out.iter_mut().enumerate() {
            let c = if d == 0 {
                BigInt::from(u8::from(m == 0))
            } else if m < d {
                BigInt::zero()
            } else {
                binom(m as u64 - 1, d as u64 - 1)
            };
            *slot += c * f;
        }
    }
    out
}

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Small deterministic pseudo-random stream for tests that need a fixed sample.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
