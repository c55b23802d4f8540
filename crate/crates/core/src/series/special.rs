//! Standard q-series building blocks and number-theoretic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{qb, qf, qi, QSeries, Q};
use crate::error::{Error, Result};

fn dense_ints(order: i64) -> Vec<BigInt> {
    vec![BigInt::zero(); (order + 1).max(0) as usize]
}

fn from_dense(v: Vec<BigInt>) -> QSeries {
    QSeries::from_bigints(Q::zero(), 1, v)
}

/// `(q^a; q)_n = prod_{i=0}^{n-1} (1 - q^{a+i})`, through `q^order`.
pub fn pochhammer_shifted(a: u64, n: u64, order: i64) -> QSeries {
    if a == 0 && n > 0 {
        return QSeries::zero_to(order);
    }
    let mut v = dense_ints(order);
    if v.is_empty() {
        return QSeries::zero_to(order);
    }
    v[0] = BigInt::one();
    for i in 0..n {
        let e = (a + i) as usize;
        if e >= v.len() {
            break;
        }
        for k in (e..v.len()).rev() {
            let t = v[k - e].clone();
            v[k] -= t;
        }
    }
    from_dense(v)
}

/// `(q; q)_n`.
pub fn pochhammer(n: u64, order: i64) -> QSeries {
    pochhammer_shifted(1, n, order)
}

/// `1 / (q^a; q)_n`, computed by repeated division by `1 - q^e`.
pub fn inverse_pochhammer_shifted(a: u64, n: u64, order: i64) -> Result<QSeries> {
    if a == 0 && n > 0 {
        return Err(Error::NotInvertible("(1; q)_n vanishes".into()));
    }
    let mut v = dense_ints(order);
    if v.is_empty() {
        return Ok(QSeries::zero_to(order));
    }
    v[0] = BigInt::one();
    for i in 0..n {
        let e = (a + i) as usize;
        if e >= v.len() {
            break;
        }
        for k in e..v.len() {
            let t = v[k - e].clone();
            v[k] += t;
        }
    }
    Ok(from_dense(v))
}

/// `(q; q)_infinity`; factors beyond `order` do not contribute.
pub fn euler_product(order: i64) -> QSeries {
    pochhammer(order.max(0) as u64, order)
}

/// `(q^a; q)_infinity`.
pub fn pochhammer_inf_shifted(a: u64, order: i64) -> QSeries {
    let n = (order + 1 - a as i64).max(0) as u64;
    pochhammer_shifted(a, n, order)
}

/// `(q; q)_infinity^k` for any integer `k`.
pub fn euler_power(k: i64, order: i64) -> QSeries {
    if k >= 0 {
        let mut v = dense_ints(order);
        if v.is_empty() {
            return QSeries::zero_to(order);
        }
        v[0] = BigInt::one();
        for _ in 0..k {
            for e in 1..v.len() {
                for j in (e..v.len()).rev() {
                    let t = v[j - e].clone();
                    v[j] -= t;
                }
            }
        }
        from_dense(v)
    } else {
        let mut v = dense_ints(order);
        if v.is_empty() {
            return QSeries::zero_to(order);
        }
        v[0] = BigInt::one();
        for _ in 0..(-k) {
            for e in 1..v.len() {
                for j in e..v.len() {
                    let t = v[j - e].clone();
                    v[j] += t;
                }
            }
        }
        from_dense(v)
    }
}

/// `eta(m tau)^k = q^{mk/24} (q^m; q^m)_infinity^k`, with the product part
/// known through `q^order` (precision `mk/24 + order + 1`).
pub fn eta_power(k: i64, m: u64, order: i64) -> QSeries {
    let shift = qf(k * m as i64, 24);
    let base_order = Integer::div_floor(&order, &(m as i64));
    euler_power(k, base_order).dilate(m).truncate_order(order).shift(&shift)
}

/// `1 / (1 - q^a)^k` by the binomial series.
pub fn reciprocal_power(a: u64, k: u64, order: i64) -> QSeries {
    assert!(a >= 1);
    if k == 0 {
        return QSeries::one(order);
    }
    let mut v = dense_ints(order);
    let mut c = BigInt::one();
    let mut j: u64 = 0;
    while ((a * j) as i64) <= order {
        v[(a * j) as usize] = c.clone();
        // C(j+k, k-1) from C(j+k-1, k-1)
        c = c * BigInt::from(j + k) / BigInt::from(j + 1);
        j += 1;
    }
    from_dense(v)
}

/// Binomial coefficient `C(n, k)` for `n >= 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Bernoulli number `B_k` with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Q {
    let mut b: Vec<Q> = Vec::with_capacity(k + 1);
    b.push(Q::one());
    for m in 1..=k {
        let mut acc = Q::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += qb(binomial(m as i64 + 1, j as i64)) * bj;
        }
        b.push(-acc / qi(m as i64 + 1));
    }
    b.pop().unwrap()
}

/// `P_m(x)` with `sum_{n>=1} n^{m-1} x^n = x P_m(x) / (1-x)^m`; coefficients by degree.
pub fn euler_polynomial(m: u32) -> Result<Vec<BigInt>> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("euler_polynomial needs m >= 2, got {m}")));
    }
    let m = m as i64;
    let mut p = Vec::with_capacity((m - 1) as usize);
    for j in 0..=(m - 2) {
        let mut acc = BigInt::zero();
        for i in 0..=j {
            let t = binomial(m, i) * BigInt::from(j - i + 1).pow((m - 1) as u32);
            if i % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        p.push(acc);
    }
    Ok(p)
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// `sum_{n>=1} f(n) q^n / (1 - q^n)` with integer weights.
pub fn lambert(order: i64, f: impl Fn(u64) -> BigInt) -> QSeries {
    let mut v = dense_ints(order);
    for n in 1..v.len() {
        let w = f(n as u64);
        if w.is_zero() {
            continue;
        }
        let mut j = n;
        while j < v.len() {
            v[j] += &w;
            j += n;
        }
    }
    from_dense(v)
}

/// Evaluate an integer polynomial (coefficients by degree) at `q^e` as a series.
pub fn poly_at_power(p: &[BigInt], e: u64, order: i64) -> QSeries {
    let mut v = dense_ints(order);
    for (i, c) in p.iter().enumerate() {
        let k = i as u64 * e;
        if (k as i64) <= order {
            v[k as usize] += c;
        }
    }
    from_dense(v)
}
