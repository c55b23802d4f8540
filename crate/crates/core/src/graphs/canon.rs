use super::Graph;
use crate::error::{Error, Result};

/// Vertex limit for brute-force canonical labelling.
pub const CANONICAL_LIMIT: usize = 8;

/// Lexicographically minimal upper-triangle encoding over all relabellings.
/// Two graphs get the same form exactly when they are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::GraphTooLarge { n, limit: CANONICAL_LIMIT });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = encode(g, &perm);
    // Heap's algorithm
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(encode(g, &perm));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let mut out = vec![n as u8];
    out.extend_from_slice(&best.to_be_bytes());
    Ok(out)
}

/// Pair `(i, j)` of the relabelled graph maps to bit positions in reading
/// order, first pair most significant.
fn encode(g: &Graph, perm: &[usize]) -> u32 {
    let mut code = 0u32;
    let n = perm.len();
    for i in 0..n {
        let row = g.neighbors(perm[i]);
        for &pj in &perm[i + 1..] {
            code = code << 1 | (row >> pj & 1) as u32;
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, disjoint_union, path, point, simple_star};
    use std::collections::BTreeSet;

    #[test]
    fn relabelling_invariance() {
        let c = cycle(5).unwrap();
        let r = c.relabel(&[3, 0, 4, 1, 2]).unwrap();
        assert_eq!(canonical_form(&c).unwrap(), canonical_form(&r).unwrap());
        assert_eq!(canonical_form(&path(3).unwrap()).unwrap(), canonical_form(&simple_star(2).unwrap()).unwrap());
        let a = disjoint_union(&path(2).unwrap(), &point()).unwrap();
        let b = disjoint_union(&point(), &path(2).unwrap()).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let forms: BTreeSet<Vec<u8>> = (0u32..64)
            .map(|mask| {
                let e: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
                canonical_form(&Graph::from_edges(4, &e).unwrap()).unwrap()
            })
            .collect();
        assert_eq!(forms.len(), 11);
    }
}
