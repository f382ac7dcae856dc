//! Brute-force oracles shared by the integration tests. None of them call
//! into the library beyond building graphs, so they give independent answers.

#![allow(dead_code)]

use domkernel::generators;
use domkernel::{Graph, Vertex, VertexSet};
use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX;

/// All-pairs distances by Floyd–Warshall, `INF` when disconnected.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
        for &w in g.neighbors(v) {
            row[w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                if d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Floyd–Warshall on `G - deleted`; rows of deleted vertices stay `INF`.
pub fn floyd_warshall_without(g: &Graph, deleted: &VertexSet) -> Vec<Vec<u32>> {
    let kept: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| !deleted.contains(u) && !deleted.contains(v))
        .collect();
    let h = Graph::from_edges(g.n(), kept).unwrap();
    let mut d = floyd_warshall(&h);
    for v in deleted.iter() {
        d[v] = vec![INF; g.n()];
        d[v][v] = INF;
    }
    d
}

pub fn ball_masks(g: &Graph, r: u32) -> Vec<u64> {
    assert!(g.n() <= 64, "oracle masks hold at most 64 vertices");
    let d = floyd_warshall(g);
    (0..g.n())
        .map(|v| {
            (0..g.n())
                .filter(|&w| d[v][w] <= r)
                .fold(0u64, |m, w| m | 1 << w)
        })
        .collect()
}

fn set_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |m, v| m | 1 << v)
}

/// Every subset of size `size`, as vertex lists, that r-dominates `z`.
fn dominators_of_size(balls: &[u64], z: u64, size: usize) -> Vec<Vec<Vertex>> {
    (0..balls.len())
        .combinations(size)
        .filter(|c| c.iter().fold(0u64, |m, &v| m | balls[v]) & z == z)
        .collect()
}

/// `ds_r(G, Z)` by trying subsets in increasing size.
pub fn brute_ds(g: &Graph, z: &VertexSet, r: u32) -> usize {
    let balls = ball_masks(g, r);
    let zm = set_mask(z);
    (0..=g.n())
        .find(|&size| {
            (0..g.n())
                .combinations(size)
                .any(|c| c.iter().fold(0u64, |m, &v| m | balls[v]) & zm == zm)
        })
        .expect("V itself dominates everything")
}

/// All minimum-size (Z, r)-dominators.
pub fn brute_min_dominators(g: &Graph, z: &VertexSet, r: u32) -> Vec<VertexSet> {
    let balls = ball_masks(g, r);
    let zm = set_mask(z);
    (0..=g.n())
        .map(|size| dominators_of_size(&balls, zm, size))
        .find(|found| !found.is_empty())
        .unwrap()
        .into_iter()
        .map(VertexSet::from)
        .collect()
}

pub fn brute_is_dominator(g: &Graph, z: &VertexSet, d: &VertexSet, r: u32) -> bool {
    let dist = floyd_warshall(g);
    z.iter().all(|z| d.iter().any(|x| dist[x][z] <= r))
}

/// Calls `visit` with every simple path (as a vertex list) of at most `r`
/// edges starting at `start`, continuing only through vertices where `open`
/// holds. The start itself is always allowed.
pub fn simple_paths<F, G>(g: &Graph, start: Vertex, r: u32, open: F, mut visit: G)
where
    F: Fn(Vertex) -> bool,
    G: FnMut(&[Vertex]),
{
    fn go<F: Fn(Vertex) -> bool, G: FnMut(&[Vertex])>(
        g: &Graph,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        r: u32,
        open: &F,
        visit: &mut G,
    ) {
        visit(path);
        let last = *path.last().unwrap();
        if path.len() as u32 > r || (path.len() > 1 && !open(last)) {
            return;
        }
        for &w in g.neighbors(last) {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                go(g, path, on_path, r, open, visit);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut on_path = vec![false; g.n()];
    on_path[start] = true;
    go(g, &mut vec![start], &mut on_path, r, &open, &mut visit);
}

/// `rho_r[u, A]` by enumerating A-avoiding simple paths.
pub fn brute_projection_profile(g: &Graph, u: Vertex, a: &VertexSet, r: u32) -> Vec<(Vertex, u32)> {
    let mut best = vec![INF; g.n()];
    simple_paths(
        g,
        u,
        r,
        |v| !a.contains(v),
        |p| {
            let end = *p.last().unwrap();
            if p.len() > 1 && a.contains(end) {
                best[end] = best[end].min(p.len() as u32 - 1);
            }
        },
    );
    a.iter()
        .filter(|&v| best[v] != INF)
        .map(|v| (v, best[v]))
        .collect()
}

/// `WReach_r[G, L, v]` by enumerating simple paths from `v`; `pos` gives ranks.
pub fn brute_wreach(g: &Graph, pos: &[usize], v: Vertex, r: u32) -> VertexSet {
    let mut out = VertexSet::new();
    simple_paths(
        g,
        v,
        r,
        |_| true,
        |p| {
            let end = *p.last().unwrap();
            if p.iter().all(|&x| pos[end] <= pos[x]) {
                out.insert(end);
            }
        },
    );
    out
}

/// `min over orders of max_v |WReach_r|`, every order checked by path enumeration.
pub fn brute_wcol(g: &Graph, r: u32) -> usize {
    (0..g.n())
        .permutations(g.n())
        .map(|seq| {
            let mut pos = vec![0; g.n()];
            for (i, &v) in seq.iter().enumerate() {
                pos[v] = i;
            }
            (0..g.n())
                .map(|v| brute_wreach(g, &pos, v, r).len())
                .max()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(0)
}

/// True iff `family` shatters `x`, checked over all `2^|x|` patterns.
pub fn brute_shatters(family: &[VertexSet], x: &[Vertex]) -> bool {
    let traces: std::collections::HashSet<u64> = family
        .iter()
        .map(|s| {
            x.iter()
                .enumerate()
                .filter(|&(_, &v)| s.contains(v))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    traces.len() == 1 << x.len()
}

pub fn brute_vc(family: &[VertexSet], ground: usize) -> usize {
    (1..=ground)
        .take_while(|&d| {
            (0..ground)
                .combinations(d)
                .any(|x| brute_shatters(family, &x))
        })
        .last()
        .unwrap_or(0)
}

pub fn binomial_sum(n: u64, d: u64) -> u128 {
    let mut total = 0u128;
    let mut term = 1u128;
    for i in 0..=d.min(n) {
        total += term;
        term = term * (n - i) as u128 / (i + 1) as u128;
    }
    total
}

/// Graph with `n` vertices where each pair is an edge with probability `p`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_set(n: usize, rng: &mut impl Rng, p: f64) -> VertexSet {
    (0..n).filter(|_| rng.random_bool(p)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random member of the sparse families used throughout the suite, with
/// at most `max_n` vertices.
pub fn sparse_instance(rng: &mut impl Rng, max_n: usize) -> (String, Graph) {
    loop {
        let (name, g) = match rng.random_range(0..4) {
            0 => {
                let w = rng.random_range(1..=5);
                let h = rng.random_range(1..=(max_n / w).clamp(1, 5));
                (format!("grid:{w}:{h}"), generators::grid(w, h).unwrap())
            }
            1 => {
                let len = rng.random_range(1..=4);
                let legs = rng.random_range(1..=((max_n - 1) / len).max(1));
                (
                    format!("spider:{legs}:{len}"),
                    generators::spider(legs, len).unwrap(),
                )
            }
            2 => {
                let n = rng.random_range(2..=max_n);
                let seed = rng.random();
                (
                    format!("tree:{n}:{seed}"),
                    generators::random_tree(n, seed).unwrap(),
                )
            }
            _ => {
                let n = rng.random_range(2..=max_n);
                let d = rng.random_range(1..=4);
                let seed = rng.random();
                (
                    format!("random:{n}:{d}:{seed}"),
                    generators::random_bounded_degree(n, d, seed).unwrap(),
                )
            }
        };
        if g.n() <= max_n && g.n() > 0 {
            return (name, g);
        }
    }
}

/// Proptest strategy: a graph on `1..=max_n` vertices from an edge bitmap.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(proptest::bool::weighted(0.3), pairs),
            )
        })
        .prop_map(|(n, bits)| {
            let edges: Vec<(Vertex, Vertex)> = (0..n)
                .tuple_combinations()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
}

/// A graph together with a vertex subset of it.
pub fn arb_graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n)).prop_map(|(g, keep)| {
            let s: VertexSet = keep
                .iter()
                .enumerate()
                .filter(|(_, k)| **k)
                .map(|(v, _)| v)
                .collect();
            (g, s)
        })
    })
}

/// `cases` runs without regression files, which proptest cannot place for
/// integration tests in a workspace member.
pub fn cases(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
