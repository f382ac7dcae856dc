//! Immutable simple undirected graphs in compressed adjacency form, plus the
//! bounded-radius searches every other module is built on.

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A distance that is either finite or unreachable within the search radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dist {
    Finite(u32),
    Inf,
}

impl Dist {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Inf => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl From<Option<u32>> for Dist {
    fn from(d: Option<u32>) -> Self {
        d.map_or(Dist::Inf, Dist::Finite)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Inf => f.write_str("inf"),
        }
    }
}

/// A set of vertex ids kept sorted and deduplicated, so iteration is always
/// ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn range(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Vertex> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    /// Membership mask over `[0, n)`. Members `>= n` are ignored.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter().filter(|&v| v < n) {
            mask[v] = true;
        }
        mask
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(v) => Error::check_vertex(v, n),
            None => Ok(()),
        }
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(v: [Vertex; N]) -> Self {
        v.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Parse whitespace-separated vertex ids; `#` starts a comment.
pub fn parse_vertex_set<R: BufRead>(reader: R) -> Result<VertexSet> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split_whitespace() {
            let v = tok.parse::<usize>().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad vertex id {tok:?}"),
            })?;
            out.push(v);
        }
    }
    Ok(out.into())
}

/// Undirected simple graph over vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse, self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (u, v) in edges {
            Error::check_vertex(u, n)?;
            Error::check_vertex(v, n)?;
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(mut adj: Vec<Vec<Vertex>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Self { offsets, targets }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        Error::check_vertex(v, self.n())
    }

    /// Reads the edge-list text format: optional `p <n>` header, `u v` lines,
    /// `#` comments and blank lines ignored.
    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            let parse_id = |tok: &str| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("expected a decimal vertex id, found {tok:?}"),
                })
            };
            match toks.as_slice() {
                ["p", n] => {
                    if declared.is_some() || !edges.is_empty() {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: "header must precede all edges and appear once".into(),
                        });
                    }
                    declared = Some(parse_id(n)?);
                }
                [u, v] => {
                    let (u, v) = (parse_id(u)?, parse_id(v)?);
                    if u == v {
                        return Err(Error::SelfLoop {
                            line: lineno,
                            vertex: u,
                        });
                    }
                    if let Some(n) = declared {
                        if u.max(v) >= n {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("vertex {} exceeds declared n={n}", u.max(v)),
                            });
                        }
                    }
                    max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
                    edges.push((u, v));
                }
                _ => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected \"u v\" or \"p n\", found {body:?}"),
                    })
                }
            }
        }
        let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        Graph::from_edges(n, edges)
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        Self::read_edge_list(text.as_bytes())
    }

    /// Writes the canonical edge list: header line, then sorted `u v` pairs.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "p {}", self.n())?;
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("edge list is ascii")
    }
}

/// Distances from a BFS truncated at some radius. Unreached vertices read as
/// [`Dist::Inf`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistMap {
    dist: Vec<Option<u32>>,
    reached: Vec<Vertex>,
}

impl DistMap {
    pub fn get(&self, v: Vertex) -> Dist {
        self.dist.get(v).copied().flatten().into()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.dist.get(v).is_some_and(|d| d.is_some())
    }

    /// Reached vertices in discovery (BFS) order.
    pub fn reached(&self) -> &[Vertex] {
        &self.reached
    }

    /// `(vertex, distance)` pairs in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.dist
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (v, d)))
    }

    pub fn len(&self) -> usize {
        self.reached.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reached.is_empty()
    }

    pub fn domain(&self) -> VertexSet {
        self.reached.iter().copied().collect()
    }
}

/// Truncated BFS with optional deleted vertices (searching in `G - S`) and
/// absorbing vertices (recorded when reached, never expanded).
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Search<'a> {
    pub deleted: Option<&'a [bool]>,
    pub absorbing: Option<&'a [bool]>,
}

impl<'a> Search<'a> {
    pub fn avoiding(deleted: &'a [bool]) -> Self {
        Self {
            deleted: Some(deleted),
            absorbing: None,
        }
    }

    pub fn absorbing(absorbing: &'a [bool]) -> Self {
        Self {
            deleted: None,
            absorbing: Some(absorbing),
        }
    }

    fn is_deleted(&self, v: Vertex) -> bool {
        self.deleted.is_some_and(|d| d[v])
    }

    fn is_absorbing(&self, v: Vertex) -> bool {
        self.absorbing.is_some_and(|a| a[v])
    }

    pub fn run<I>(&self, g: &Graph, sources: I, r: u32) -> DistMap
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut dist = vec![None; g.n()];
        let mut reached = Vec::new();
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s].is_none() && !self.is_deleted(s) {
                dist[s] = Some(0);
                reached.push(s);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            if du == r || (du > 0 && self.is_absorbing(u)) {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w].is_none() && !self.is_deleted(w) {
                    dist[w] = Some(du + 1);
                    reached.push(w);
                    queue.push_back(w);
                }
            }
        }
        DistMap { dist, reached }
    }
}

/// Exact distances from `source`, truncated at radius `r`.
pub fn bfs_within(g: &Graph, source: Vertex, r: u32) -> Result<DistMap> {
    g.check_vertex(source)?;
    Ok(Search::default().run(g, [source], r))
}

/// Closed r-neighborhood `N_r[v]`.
pub fn ball(g: &Graph, v: Vertex, r: u32) -> Result<VertexSet> {
    Ok(bfs_within(g, v, r)?.domain())
}

/// Multi-source truncated BFS: distance to the nearest source.
pub fn bfs_from_set(g: &Graph, sources: &VertexSet, r: u32) -> Result<DistMap> {
    sources.check_within(g.n())?;
    Ok(Search::default().run(g, sources.iter(), r))
}

/// Walks back from `target` using, at every step, the lowest-id neighbor one
/// level closer to the source.
pub(crate) fn path_from_distances(
    g: &Graph,
    dist: &DistMap,
    target: Vertex,
) -> Option<Vec<Vertex>> {
    let mut d = dist.get(target).finite()?;
    let mut path = vec![target];
    let mut cur = target;
    while d > 0 {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| dist.get(w) == Dist::Finite(d - 1))?;
        path.push(cur);
        d -= 1;
    }
    path.reverse();
    Some(path)
}

/// A shortest `u`-`v` path if `dist(u, v) <= r`. Ties resolve to the lowest-id
/// BFS parent.
pub fn shortest_path(g: &Graph, u: Vertex, v: Vertex, r: u32) -> Result<Option<Vec<Vertex>>> {
    g.check_vertex(v)?;
    let dist = bfs_within(g, u, r)?;
    Ok(path_from_distances(g, &dist, v))
}

/// Bidirectional id map between a graph and one of its induced subgraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    to_original: Vec<Vertex>,
    to_sub: Vec<Option<Vertex>>,
}

impl IdMap {
    pub fn to_original(&self, v: Vertex) -> Vertex {
        self.to_original[v]
    }

    pub fn to_sub(&self, v: Vertex) -> Option<Vertex> {
        self.to_sub.get(v).copied().flatten()
    }

    pub fn originals(&self) -> &[Vertex] {
        &self.to_original
    }

    pub fn map_to_sub(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.to_sub(v)).collect()
    }

    pub fn map_to_original(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_original(v)).collect()
    }
}

/// `G[S]`. New ids follow the ascending order of the original ids.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, IdMap)> {
    s.check_within(g.n())?;
    let mut to_sub = vec![None; g.n()];
    for (i, v) in s.iter().enumerate() {
        to_sub[v] = Some(i);
    }
    let adj = s
        .iter()
        .map(|v| g.neighbors(v).iter().filter_map(|&w| to_sub[w]).collect())
        .collect();
    let sub = Graph::from_adjacency(adj);
    Ok((
        sub,
        IdMap {
            to_original: s.iter().collect(),
            to_sub,
        },
    ))
}

/// True iff all distinct members of `s` are at distance `> r`.
pub fn is_r_independent(g: &Graph, s: &VertexSet, r: u32) -> Result<bool> {
    s.check_within(g.n())?;
    let mask = s.mask(g.n());
    Ok(s.iter().all(|v| {
        let dist = Search::default().run(g, [v], r);
        dist.reached().iter().all(|&w| w == v || !mask[w])
    }))
}

/// Same check as [`is_r_independent`], but distances are measured in `G - deleted`.
pub fn is_r_independent_avoiding(
    g: &Graph,
    s: &VertexSet,
    deleted: &VertexSet,
    r: u32,
) -> Result<bool> {
    s.check_within(g.n())?;
    deleted.check_within(g.n())?;
    let del = deleted.mask(g.n());
    let mask = s.mask(g.n());
    Ok(s.iter().all(|v| {
        if del[v] {
            return true;
        }
        let dist = Search::avoiding(&del).run(g, [v], r);
        dist.reached().iter().all(|&w| w == v || !mask[w])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn grid(w: usize, h: usize) -> Graph {
        let mut e = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    e.push((v, v + 1));
                }
                if y + 1 < h {
                    e.push((v, v + w));
                }
            }
        }
        Graph::from_edges(w * h, e).unwrap()
    }

    #[test]
    fn parse_path() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
    }

    #[test]
    fn parse_collapses_duplicates() {
        let g = Graph::parse_edge_list("0 1\n1 0").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn parse_rejects_self_loop() {
        let err = Graph::parse_edge_list("0 0").unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 1, vertex: 0 }));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = Graph::parse_edge_list("# c\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Graph::parse_edge_list("0 1 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_header_declares_isolated_vertices() {
        let g = Graph::parse_edge_list("p 5\n# comment\n\n0 1\n").unwrap();
        assert_eq!((g.n(), g.m()), (5, 1));
        assert!(Graph::parse_edge_list("p 2\n0 2\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = grid(3, 2);
        let again = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn bfs_on_path() {
        let d = bfs_within(&path(5), 0, 2).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(d.get(3), Dist::Inf);
    }

    #[test]
    fn bfs_zero_radius() {
        let d = bfs_within(&grid(3, 3), 4, 0).unwrap();
        assert_eq!(d.domain(), VertexSet::from([4]));
    }

    #[test]
    fn bfs_grid_center() {
        let d = bfs_within(&grid(3, 3), 4, 1).unwrap();
        assert_eq!(d.domain(), VertexSet::from([1, 3, 4, 5, 7]));
    }

    #[test]
    fn bfs_rejects_bad_source() {
        assert!(matches!(
            bfs_within(&path(3), 3, 1),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn ball_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(ball(&star, 0, 1).unwrap(), VertexSet::range(4));
        assert_eq!(ball(&Graph::empty(1), 0, 5).unwrap(), VertexSet::from([0]));
        assert_eq!(
            ball(&cycle(6), 0, 2).unwrap(),
            VertexSet::from([0, 1, 2, 4, 5])
        );
    }

    #[test]
    fn shortest_path_examples() {
        assert_eq!(
            shortest_path(&path(5), 0, 3, 3).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        assert_eq!(
            shortest_path(&cycle(4), 0, 2, 2).unwrap(),
            Some(vec![0, 1, 2])
        );
        assert_eq!(shortest_path(&path(5), 0, 4, 2).unwrap(), None);
        assert_eq!(shortest_path(&path(5), 2, 2, 0).unwrap(), Some(vec![2]));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (h, map) = induced_subgraph(&path(5), &VertexSet::from([0, 1, 4])).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(map.to_original(2), 4);
        assert_eq!(map.to_sub(4), Some(2));
        assert_eq!(map.to_sub(2), None);

        let (h, _) = induced_subgraph(&path(5), &VertexSet::new()).unwrap();
        assert_eq!((h.n(), h.m()), (0, 0));

        let (row, _) = induced_subgraph(&grid(4, 4), &VertexSet::from([4, 5, 6, 7])).unwrap();
        assert_eq!(row, path(4));
    }

    #[test]
    fn r_independence_examples() {
        let p5 = path(5);
        assert!(is_r_independent(&p5, &VertexSet::from([0, 4]), 3).unwrap());
        assert!(!is_r_independent(&p5, &VertexSet::from([0, 4]), 4).unwrap());
        assert!(!is_r_independent(&cycle(6), &VertexSet::from([0, 2, 4]), 2).unwrap());
        assert!(is_r_independent(&cycle(6), &VertexSet::from([0, 2, 4]), 1).unwrap());
    }

    #[test]
    fn independence_in_graph_minus_separator() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let leaves = VertexSet::from([1, 2, 3]);
        assert!(!is_r_independent(&star, &leaves, 2).unwrap());
        assert!(is_r_independent_avoiding(&star, &leaves, &VertexSet::from([0]), 9).unwrap());
    }

    #[test]
    fn vertex_set_is_canonical() {
        let s: VertexSet = vec![5, 1, 3, 1].into();
        assert_eq!(s.as_slice(), &[1, 3, 5]);
        assert_eq!(s.to_string(), "{1,3,5}");
    }
}
