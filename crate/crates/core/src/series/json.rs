//! JSON form of a [`QSeries`]: `{"offset": "p/q", "order": N, "coeffs": [...]}`.
//!
//! Rationals are strings (`"3"`, `"-7/2"`). Series on a finer grid than the
//! integers carry an extra `"denom"` key; exponents are then `offset + i/denom`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{qf, QSeries, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub offset: String,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub denom: u64,
    pub order: i64,
    pub coeffs: Vec<String>,
}

fn one() -> u64 {
    1
}

fn is_one(d: &u64) -> bool {
    *d == 1
}

pub fn parse_rational(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| Error::Parse { pos: 0, msg: format!("bad rational {s:?}") })
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        SeriesJson {
            offset: s.offset().to_string(),
            denom: s.denom(),
            order: s.order(),
            coeffs: s.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for QSeries {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<QSeries> {
        if j.denom == 0 {
            return Err(Error::Parse { pos: 0, msg: "denom must be positive".into() });
        }
        let offset = parse_rational(&j.offset)?;
        let len = (j.order + 1).max(0) as usize;
        if j.coeffs.len() > len {
            return Err(Error::Parse {
                pos: len,
                msg: format!("{} coefficients exceed order {}", j.coeffs.len(), j.order),
            });
        }
        let mut coeffs = Vec::with_capacity(len);
        for (i, c) in j.coeffs.iter().enumerate() {
            coeffs.push(
                parse_rational(c).map_err(|_| Error::Parse { pos: i, msg: format!("bad rational {c:?} in coeffs") })?,
            );
        }
        coeffs.resize(len, Q::from_integer(0.into()));
        if coeffs.is_empty() {
            return Ok(QSeries::zero(offset + qf(len as i64, j.denom as i64)));
        }
        Ok(QSeries::from_coeffs(offset, j.denom, coeffs))
    }
}

pub fn to_json_string(s: &QSeries) -> String {
    serde_json::to_string(&SeriesJson::from(s)).expect("series serialization")
}

pub fn from_json_str(text: &str) -> Result<QSeries> {
    let j: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    QSeries::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::qi;

    #[test]
    fn round_trip() {
        let s = QSeries::from_coeffs(qf(1, 6), 1, vec![qi(1), qf(-3, 7), qi(0), qi(44)]);
        let text = to_json_string(&s);
        assert_eq!(text, r#"{"offset":"1/6","order":3,"coeffs":["1","-3/7","0","44"]}"#);
        assert_eq!(from_json_str(&text).unwrap(), s);
    }

    #[test]
    fn half_grid_round_trip() {
        let s = QSeries::from_coeffs(qf(1, 2), 2, vec![qi(16), qi(0), qi(64)]);
        let text = to_json_string(&s);
        assert!(text.contains(r#""denom":2"#));
        assert_eq!(from_json_str(&text).unwrap(), s);
    }

    #[test]
    fn zero_round_trip() {
        let z = QSeries::zero_to(7);
        assert_eq!(from_json_str(&to_json_string(&z)).unwrap(), z);
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_json_str(r#"{"offset":"x","order":1,"coeffs":[]}"#).is_err());
        assert!(from_json_str(r#"{"offset":"0","order":0,"coeffs":["1","2"]}"#).is_err());
    }
}
