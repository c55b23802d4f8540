//! Simple graphs, the named families used by the graph-series identities,
//! and textual/JSON graph specifications.

mod canon;
mod det;
mod hilbert;

pub use canon::canonical_form;
pub use det::adjacency_determinant;
pub use hilbert::{hilbert_series, independence_profile, HilbertRF};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex limit of the bitmask representation.
pub const MAX_VERTICES: usize = 64;

/// Simple undirected graph on vertices `0..n` stored as adjacency bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GraphTooLarge { n, limit: MAX_VERTICES });
        }
        Ok(Graph { adj: vec![0; n] })
    }

    /// Graph from 0-indexed edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!("edge ({i},{j}) out of range for n={n}")));
        }
        if i == j {
            return Err(Error::InvalidArgument(format!("loop at vertex {i}")));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    /// Neighbourhood of `i` as a bitmask.
    pub fn neighbors(&self, i: usize) -> u64 {
        self.adj[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.adj[i].count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn leaves(&self) -> usize {
        (0..self.n()).filter(|&i| self.degree(i) == 1).count()
    }

    /// Graph with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument("relabel needs a permutation of 0..n".into()));
        }
        let edges: Vec<(usize, usize)> = self.edges().iter().map(|&(i, j)| (perm[i], perm[j])).collect();
        Self::from_edges(n, &edges)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen: u64 = 1;
        let mut frontier: u64 = 1;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == n
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() + 1 == self.n() && self.is_connected()
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for w in 0..n {
                    if !self.has_edge(v, w) {
                        continue;
                    }
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.has_edge(i, j) as u8).collect()).collect()
    }
}

/// Vector of generator degrees, one per vertex; all entries at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Framing(Vec<u64>);

impl Framing {
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.contains(&0) {
            return Err(Error::InvalidArgument("framing entries must be >= 1".into()));
        }
        Ok(Framing(b))
    }

    pub fn ones(n: usize) -> Self {
        Framing(vec![1; n])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Framing permuted along with a vertex relabelling.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut b = vec![0; self.0.len()];
        for (i, &p) in perm.iter().enumerate() {
            b[p] = self.0[i];
        }
        Framing(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicKind {
    Point,
    Path,
    Cycle,
    SimpleStar,
}

/// Point, path on `size` vertices, cycle on `size` vertices, or a simple
/// star with `size` legs.
pub fn build_basic(kind: BasicKind, size: usize) -> Result<Graph> {
    match kind {
        BasicKind::Point => Graph::empty(1),
        BasicKind::Path => {
            if size < 1 {
                return Err(Error::InvalidArgument("path needs at least one vertex".into()));
            }
            let edges: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
            Graph::from_edges(size, &edges)
        }
        BasicKind::Cycle => {
            if size < 3 {
                return Err(Error::InvalidArgument("cycle needs at least three vertices".into()));
            }
            let edges: Vec<_> = (0..size).map(|i| (i, (i + 1) % size)).collect();
            Graph::from_edges(size, &edges)
        }
        BasicKind::SimpleStar => {
            if size < 1 {
                return Err(Error::InvalidArgument("star needs at least one leg".into()));
            }
            let edges: Vec<_> = (1..=size).map(|i| (0, i)).collect();
            Graph::from_edges(size + 1, &edges)
        }
    }
}

pub fn point() -> Graph {
    Graph::empty(1).unwrap()
}

pub fn path(n: usize) -> Result<Graph> {
    build_basic(BasicKind::Path, n)
}

pub fn cycle(n: usize) -> Result<Graph> {
    build_basic(BasicKind::Cycle, n)
}

pub fn simple_star(legs: usize) -> Result<Graph> {
    build_basic(BasicKind::SimpleStar, legs)
}

/// The leafless graph on `3k+2` vertices: a pentagon on 1..5 extended by a
/// path and chords (labels are 1-based in the rules below).
pub fn build_gamma(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidArgument("gamma family needs k >= 1".into()));
    }
    let n = 3 * k + 2;
    let mut edges: Vec<(usize, usize)> = vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
    for i in 5..=3 * k + 1 {
        edges.push((i, i + 1));
    }
    for t in 2..=k {
        edges.push((1, 3 * t + 2));
        edges.push((4, 3 * t + 2));
    }
    for s in 2..k {
        for l in s..k {
            edges.push((3 * s + 1, 3 * (l + 1) + 2));
        }
    }
    let edges: Vec<_> = edges.into_iter().map(|(i, j)| (i - 1, j - 1)).collect();
    Graph::from_edges(n, &edges)
}

/// Star with centre 1, `k` legs `1-2-3, 1-4-5, ..., 1-2k-(2k+1)` and a short leg `1-(2k+2)`.
pub fn build_t(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidArgument("T family needs k >= 2".into()));
    }
    let n = 2 * k + 2;
    let mut edges = Vec::new();
    for leg in 0..k {
        let mid = 2 * leg + 2;
        edges.push((1, mid));
        edges.push((mid, mid + 1));
    }
    edges.push((1, n));
    let edges: Vec<_> = edges.into_iter().map(|(i, j)| (i - 1, j - 1)).collect();
    Graph::from_edges(n, &edges)
}

/// Base nodes `1..k`, then for each `i` the `a_i` gadgets (a centre joined to
/// nodes `1..k-i+1` plus its own leaf), then the leaves `1'..k'` on the base.
pub fn build_z(a: &[usize]) -> Result<Graph> {
    let k = a.len();
    if k == 0 || a.contains(&0) {
        return Err(Error::InvalidArgument("Z family needs a nonempty list of positive integers".into()));
    }
    let n = 2 * k + 2 * a.iter().sum::<usize>();
    let mut g = Graph::empty(n)?;
    let mut next = k;
    for (i, &ai) in a.iter().enumerate() {
        let reach = k - i;
        for _ in 0..ai {
            let centre = next;
            let leaf = next + 1;
            next += 2;
            for base in 0..reach {
                g.add_edge(centre, base)?;
            }
            g.add_edge(centre, leaf)?;
        }
    }
    for base in 0..k {
        g.add_edge(base, next + base)?;
    }
    Ok(g)
}

pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n1 = g1.n();
    let mut edges = g1.edges();
    edges.extend(g2.edges().into_iter().map(|(i, j)| (i + n1, j + n1)));
    Graph::from_edges(n1 + g2.n(), &edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    /// 1-indexed vertex pairs.
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().iter().map(|&(i, j)| [i + 1, j + 1]).collect() }
    }
}

impl TryFrom<&GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: &GraphJson) -> Result<Graph> {
        let mut edges = Vec::with_capacity(j.edges.len());
        for (pos, &[a, b]) in j.edges.iter().enumerate() {
            if a == 0 || b == 0 {
                return Err(Error::Parse { pos, msg: "edges are 1-indexed".into() });
            }
            edges.push((a - 1, b - 1));
        }
        Graph::from_edges(j.n, &edges)
    }
}

/// Parse a graph specification: JSON `{"n":..,"edges":[[i,j],..]}` or family
/// shorthand `pt`, `path:n`, `cycle:n`, `star:n`, `gamma:k`, `T:k`,
/// `Z:a1,a2,...`, joined by `+` for disjoint unions.
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        let j: GraphJson =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        return Graph::try_from(&j);
    }
    let mut acc: Option<Graph> = None;
    let mut pos = 0;
    for part in trimmed.split('+') {
        let g = parse_family(part.trim()).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { pos, msg },
            other => other,
        })?;
        acc = Some(match acc {
            None => g,
            Some(a) => disjoint_union(&a, &g)?,
        });
        pos += part.len() + 1;
    }
    acc.ok_or_else(|| Error::Parse { pos: 0, msg: "empty graph spec".into() })
}

fn parse_family(s: &str) -> Result<Graph> {
    let bad = |msg: String| Error::Parse { pos: 0, msg };
    let (name, arg) = match s.split_once(':') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let int = |a: Option<&str>| -> Result<usize> {
        let a = a.ok_or_else(|| bad(format!("{name} needs an argument")))?;
        a.parse::<usize>().map_err(|_| bad(format!("bad integer {a:?} in {s:?}")))
    };
    match name {
        "pt" | "point" => Ok(point()),
        "K2" => path(2),
        "path" => path(int(arg)?),
        "cycle" | "C" => cycle(int(arg)?),
        "star" => simple_star(int(arg)?),
        "gamma" => build_gamma(int(arg)?),
        "T" => build_t(int(arg)?),
        "Z" => {
            let a = arg.ok_or_else(|| bad("Z needs a list".into()))?;
            let v: std::result::Result<Vec<usize>, _> = a.split(',').map(|x| x.trim().parse()).collect();
            build_z(&v.map_err(|_| bad(format!("bad list {a:?}")))?)
        }
        _ => Err(bad(format!("unknown graph family {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(g: &Graph, i: usize, j: usize) -> bool {
        g.has_edge(i - 1, j - 1)
    }

    #[test]
    fn basics() {
        let c = cycle(5).unwrap();
        assert_eq!((c.n(), c.edge_count()), (5, 5));
        assert!((0..5).all(|i| c.degree(i) == 2));
        assert_eq!(point().edge_count(), 0);
        assert_eq!(path(2).unwrap().edges(), vec![(0, 1)]);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn gamma_fourteen_matches_figure() {
        let g = build_gamma(4).unwrap();
        assert_eq!(g.n(), 14);
        for (i, j) in [(7, 11), (7, 14), (1, 14), (10, 14), (4, 8), (4, 11), (1, 8), (13, 14)] {
            assert!(has(&g, i, j), "{i}~{j}");
        }
        assert_eq!(g.edge_count(), 23);
        assert!(!has(&g, 10, 13));
    }

    #[test]
    fn gamma_seventeen_chords() {
        let g = build_gamma(5).unwrap();
        let chords: Vec<(usize, usize)> =
            g.edges().into_iter().map(|(i, j)| (i + 1, j + 1)).filter(|&(i, j)| i >= 5 && j > i + 1).collect();
        assert_eq!(chords, vec![(7, 11), (7, 14), (7, 17), (10, 14), (10, 17), (13, 17)]);
    }

    #[test]
    fn t_family() {
        let t = build_t(4).unwrap();
        for j in [2, 4, 6, 8, 10] {
            assert!(has(&t, 1, j));
        }
        assert_eq!(t.degree(0), 5);
        assert_eq!(t.leaves(), 5);
        assert!(t.is_tree() && t.is_bipartite());
    }

    #[test]
    fn z_family_matches_figure() {
        let z = build_z(&[1, 1, 1, 2, 2]).unwrap();
        assert_eq!(z.n(), 24);
        for b in 1..=5 {
            assert!(has(&z, 6, b));
        }
        assert!(has(&z, 6, 7));
        for c in [16, 18] {
            assert!(has(&z, c, 1) && has(&z, c, c + 1));
            assert_eq!(z.degree(c - 1), 2);
        }
        assert!(z.is_bipartite() && z.is_connected());
    }

    #[test]
    fn spec_parsing() {
        let g = parse_graph_spec("cycle:5 + pt").unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 5));
        let j = parse_graph_spec(r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(j, path(3).unwrap());
        assert_eq!(parse_graph_spec("Z:2,1").unwrap(), build_z(&[2, 1]).unwrap());
        assert!(parse_graph_spec("blob:3").is_err());
        assert!(parse_graph_spec(r#"{"n":2,"edges":[[0,1]]}"#).is_err());
    }
}
