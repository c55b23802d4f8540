//! Multiple q-zeta values: the nested star/strict/standard models and the
//! Lie-algebra sums over dominant weights.

mod lie;

pub use lie::{bibracket_sl, lie_sum, symmetrized_sum, type_an_alt, zeta_g, zeta_g_s, RootSystem};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::dense::{add_shifted, div_one_minus_pow, to_series, zeros};
use crate::series::QSeries;

/// One summation variable of a nested sum: contributes `q^(numer*n) / (1-q^n)^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level {
    pub numer: u64,
    pub power: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nesting {
    /// `n_1 >= n_2 >= ... >= n_k`
    Weak,
    /// `n_1 > n_2 > ... > n_k`
    Strict,
}

/// `sum_{n_1 (>=|>) ... (>=|>) n_k >= lower} prod_i q^(c_i n_i) / (1-q^{n_i})^{a_i}`
/// through `q^order`. The outermost level must carry a positive numerator,
/// which bounds every inner variable as well.
pub fn nested_sum(levels: &[Level], nesting: Nesting, lower: u64, order: i64) -> Result<QSeries> {
    if levels.is_empty() {
        return Err(Error::InvalidArgument("nested sum needs at least one level".into()));
    }
    if levels[0].numer == 0 {
        return Err(Error::InvalidArgument("outermost level needs a positive q-exponent".into()));
    }
    let lower = lower.max(1);
    let len = (order + 1).max(0) as usize;
    let c1 = levels[0].numer as usize;
    // the outer variable, and hence every inner one, is at most top
    let top = if len == 0 { 0 } else { (len - 1) / c1 };
    if (top as u64) < lower {
        return Ok(QSeries::zero_to(order));
    }
    let lower = lower as usize;
    // running[n] = sum over chains of the levels below, with top variable <= n (or < n)
    let mut inner: Option<Vec<Vec<BigInt>>> = None;
    for (depth, lv) in levels.iter().enumerate().rev() {
        let mut cur: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
        for n in lower..=top {
            // the outer factor q^(c_1 n_1) with n_1 >= n is still to come
            let room = if depth == 0 { len } else { len - c1 * n };
            let mut v = match &inner {
                None => {
                    let mut one = zeros(room);
                    one[0] = 1.into();
                    one
                }
                Some(prefix) => {
                    let idx = match nesting {
                        Nesting::Weak => n,
                        Nesting::Strict => n - 1,
                    };
                    if idx < lower {
                        continue;
                    }
                    prefix[idx][..room.min(prefix[idx].len())].to_vec()
                }
            };
            v.resize(room, 0.into());
            let shift = lv.numer as usize * n;
            let mut w = zeros(room);
            add_shifted(&mut w, &v, shift, &1.into());
            div_one_minus_pow(&mut w, n, lv.power);
            cur[n] = w;
        }
        if depth == 0 {
            let mut out = zeros(len);
            for w in &cur {
                add_shifted(&mut out, w, 0, &1.into());
            }
            return Ok(to_series(out));
        }
        // prefix sums over n
        let mut prefix: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
        let mut acc = zeros(len);
        for n in lower..=top {
            add_shifted(&mut acc, &cur[n], 0, &1.into());
            prefix[n] = acc.clone();
        }
        inner = Some(prefix);
    }
    unreachable!()
}

fn check_composition(a: &[u32]) -> Result<()> {
    if a.is_empty() || a.contains(&0) {
        return Err(Error::InvalidArgument("composition entries must be positive".into()));
    }
    Ok(())
}

fn star_levels(a: &[u32], top_numer: u64) -> Vec<Level> {
    a.iter().enumerate().map(|(i, &p)| Level { numer: if i == 0 { top_numer } else { 0 }, power: p }).collect()
}

/// Star model: `sum_{n_1 >= ... >= n_k >= 1} q^{n_1} / prod (1-q^{n_i})^{a_i}`.
pub fn zq_star(a: &[u32], order: i64) -> Result<QSeries> {
    check_composition(a)?;
    nested_sum(&star_levels(a, 1), Nesting::Weak, 1, order)
}

/// Strict analogue of [`zq_star`].
pub fn zq_strict(a: &[u32], order: i64) -> Result<QSeries> {
    check_composition(a)?;
    nested_sum(&star_levels(a, 1), Nesting::Strict, 1, order)
}

/// Standard model with numerator `q^{sum (a_i - 1) n_i}`, strict, `a_1 >= 2`.
pub fn zq_standard(a: &[u32], order: i64) -> Result<QSeries> {
    check_composition(a)?;
    if a[0] < 2 {
        return Err(Error::InvalidArgument("standard model needs a_1 >= 2".into()));
    }
    let levels: Vec<Level> = a.iter().map(|&p| Level { numer: (p - 1) as u64, power: p }).collect();
    nested_sum(&levels, Nesting::Strict, 1, order)
}

/// Parse `"2,1,1"`.
pub fn parse_composition(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for part in s.split(',') {
        let v: u32 = part.trim().parse().map_err(|_| Error::Parse { pos, msg: format!("bad entry {part:?}") })?;
        out.push(v);
        pos += part.len() + 1;
    }
    check_composition(&out)?;
    Ok(out)
}
