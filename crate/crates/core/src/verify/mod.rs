//! Named identity checks grouped into suites, with JSON reports.

mod characters;
mod section3;

pub use characters::{characters, SCH_U3_HEAD, SCH_U5_HEAD};
pub use section3::{recognition_checks, section3, weighted_sl3_weights};

use serde::{Deserialize, Serialize};

use crate::graph_series::{identity_suite_section2, Section2Config};
use crate::series::QSeries;

pub const SUITES: [&str; 4] = ["section2", "section3", "characters", "all"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Which statement the check exercises.
    pub reference: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, reference: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), reference: reference.into(), passed, detail: detail.into() }
    }

    /// Exact comparison of two series on their common precision; the detail
    /// names the first differing exponent.
    pub fn series(name: impl Into<String>, reference: impl Into<String>, lhs: &QSeries, rhs: &QSeries) -> Self {
        let common = std::cmp::min(lhs.prec(), rhs.prec()).clone();
        match lhs.first_difference(rhs) {
            None => Self::new(name, reference, true, format!("equal below q^{common}")),
            Some(e) => {
                let a = lhs.coeff_at(&e).unwrap_or_default();
                let b = rhs.coeff_at(&e).unwrap_or_default();
                Self::new(name, reference, false, format!("differ at q^{e}: {a} vs {b}"))
            }
        }
    }

    /// Like [`Check::series`] but also requires both sides known below `q^prec`.
    pub fn series_to(
        name: impl Into<String>,
        reference: impl Into<String>,
        lhs: &QSeries,
        rhs: &QSeries,
        prec: &crate::Q,
    ) -> Self {
        let c = Self::series(name, reference, lhs, rhs);
        if c.passed && (lhs.prec() < prec || rhs.prec() < prec) {
            let have = std::cmp::min(lhs.prec(), rhs.prec());
            return Check { passed: false, detail: format!("only known below q^{have}, wanted q^{prec}"), ..c };
        }
        c
    }

    /// Compare the two series produced by `f` below `q^prec`; errors become failed checks.
    pub fn compare<F>(name: &str, reference: &str, prec: i64, f: F) -> Self
    where
        F: FnOnce() -> crate::Result<(QSeries, QSeries)>,
    {
        match f() {
            Ok((lhs, rhs)) => Self::series_to(name, reference, &lhs, &rhs, &crate::series::qi(prec)),
            Err(e) => Self::new(name, reference, false, format!("error: {e}")),
        }
    }

    pub fn from_result(name: impl Into<String>, reference: impl Into<String>, r: crate::Result<Check>) -> Self {
        match r {
            Ok(c) => c,
            Err(e) => Self::new(name, reference, false, format!("error: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub order: i64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>, order: i64, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report { suite: suite.into(), order, checks, passed }
    }

    pub fn merge(suite: impl Into<String>, order: i64, reports: Vec<Report>) -> Self {
        Self::new(suite, order, reports.into_iter().flat_map(|r| r.checks).collect())
    }
}

/// The graph-series suite with default sizes at the given order.
pub fn section2(order: i64) -> Report {
    identity_suite_section2(&Section2Config::with_order(order))
}

pub fn all(order: i64, margin: usize) -> Report {
    Report::merge("all", order, vec![section2(order), section3(order, margin), characters(order, margin)])
}

/// Run a suite by name.
pub fn run_suite(name: &str, order: i64, margin: usize) -> crate::Result<Report> {
    Ok(match name {
        "section2" => section2(order),
        "section3" => section3(order, margin),
        "characters" => characters(order, margin),
        "all" => all(order, margin),
        other => {
            return Err(crate::Error::InvalidArgument(format!("unknown suite {other:?}; known: {}", SUITES.join(", "))))
        }
    })
}
