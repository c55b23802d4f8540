//! In-place kernels on dense integer coefficient vectors (index = q-exponent).

use num_bigint::BigInt;
use num_traits::Zero;

use super::{QSeries, Q};

pub(crate) fn zeros(len: usize) -> Vec<BigInt> {
    vec![BigInt::zero(); len]
}

/// Divide by `1 - q^e` within the vector length.
pub(crate) fn div_one_minus(v: &mut [BigInt], e: usize) {
    assert!(e >= 1);
    for k in e..v.len() {
        let (lo, hi) = v.split_at_mut(k);
        hi[0] += &lo[k - e];
    }
}

/// Divide by `(1 - q^e)^a`.
pub(crate) fn div_one_minus_pow(v: &mut [BigInt], e: usize, a: u32) {
    for _ in 0..a {
        div_one_minus(v, e);
    }
}

/// `dst[shift + i] += c * src[i]` where it fits.
pub(crate) fn add_shifted(dst: &mut [BigInt], src: &[BigInt], shift: usize, c: &BigInt) {
    if shift >= dst.len() {
        return;
    }
    for (d, s) in dst[shift..].iter_mut().zip(src) {
        if !s.is_zero() {
            *d += c * s;
        }
    }
}

/// Integer-grid series through `q^(len-1)`.
pub(crate) fn to_series(v: Vec<BigInt>) -> QSeries {
    QSeries::from_bigints(Q::zero(), 1, v)
}
