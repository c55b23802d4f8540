use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::graph_series_of;
use crate::error::{Error, Result};
use crate::graphs::{canonical_form, Graph};

/// Largest vertex count the census enumerates.
pub const CENSUS_MAX_VERTICES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub vertices: usize,
    pub isomorphism_classes: usize,
    /// Distinct standard-framed graph series, compared through the order.
    pub distinct_series: usize,
}

fn labelled_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n).expect("census sizes are small");
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(i, j).expect("valid pair");
            }
            bit += 1;
        }
    }
    g
}

/// For each `n = 1..=nmax`, the number of isomorphism classes of simple
/// graphs on `n` vertices and the number of distinct graph series among them.
pub fn census(nmax: usize, order: i64) -> Result<Vec<CensusRow>> {
    if nmax > CENSUS_MAX_VERTICES {
        return Err(Error::GraphTooLarge { n: nmax, limit: CENSUS_MAX_VERTICES });
    }
    if order < 12 {
        return Err(Error::InvalidArgument("census needs order >= 12".into()));
    }
    let mut rows = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let pairs = n * (n - 1) / 2;
        let forms: Vec<(Vec<u8>, u64)> = (0..1u64 << pairs)
            .into_par_iter()
            .map(|mask| (canonical_form(&labelled_graph(n, mask)).expect("n <= 6"), mask))
            .collect();
        // smallest labelled representative per class, independent of scheduling
        let mut classes: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
        for (form, mask) in forms {
            classes.entry(form).and_modify(|m| *m = (*m).min(mask)).or_insert(mask);
        }
        let reps: Vec<u64> = classes.values().copied().collect();
        let series: HashSet<_> = reps
            .par_iter()
            .map(|&mask| graph_series_of(&labelled_graph(n, mask), order))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        rows.push(CensusRow { vertices: n, isomorphism_classes: reps.len(), distinct_series: series.len() });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census() {
        let rows = census(4, 12).unwrap();
        let classes: Vec<usize> = rows.iter().map(|r| r.isomorphism_classes).collect();
        let distinct: Vec<usize> = rows.iter().map(|r| r.distinct_series).collect();
        assert_eq!(classes, vec![1, 2, 4, 11]);
        assert_eq!(distinct, vec![1, 2, 4, 11]);
        assert!(census(7, 16).is_err());
        assert!(census(3, 8).is_err());
    }
}
