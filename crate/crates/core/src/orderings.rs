//! Weak reachability and weak coloring numbers.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::profiles::SetFamily;

/// A linear order on the vertices. `sequence()[i]` is the vertex of rank `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    sequence: Vec<Vertex>,
    position: Vec<usize>,
}

impl Ordering {
    pub fn identity(n: usize) -> Self {
        Self {
            sequence: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    /// Builds the order from its vertex sequence, smallest first.
    pub fn from_sequence(sequence: Vec<Vertex>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (rank, &v) in sequence.iter().enumerate() {
            Error::check_vertex(v, n)?;
            if position[v] != usize::MAX {
                return Err(Error::InvalidParam(format!(
                    "vertex {v} appears twice in ordering"
                )));
            }
            position[v] = rank;
        }
        Ok(Self { sequence, position })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v]
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.sequence
    }

    pub fn less(&self, u: Vertex, v: Vertex) -> bool {
        self.position[u] < self.position[v]
    }

    fn check_for(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::InvalidParam(format!(
                "ordering covers {} vertices, graph has {}",
                self.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// `WReach_r[G, L, v]`.
///
/// Explores walks from `v` layer by layer, tracking the L-minimum rank seen on
/// the walk. Per vertex and walk length only the largest such minimum is kept:
/// it dominates every smaller one for all continuations. `u` is weakly
/// reachable iff some walk of length at most `r` ends at `u` with `u` as its
/// minimum. Walks suffice because shortcutting a walk to a path keeps `u` minimal.
pub fn wreach(g: &Graph, order: &Ordering, v: Vertex, r: u32) -> Result<VertexSet> {
    order.check_for(g)?;
    g.check_vertex(v)?;
    Ok(wreach_unchecked(g, order, v, r))
}

fn wreach_unchecked(g: &Graph, order: &Ordering, v: Vertex, r: u32) -> VertexSet {
    let n = g.n();
    let mut best: Vec<Option<usize>> = vec![None; n];
    let mut frontier = vec![v];
    best[v] = Some(order.position(v));
    let mut found = vec![v];
    let mut next_best: Vec<Option<usize>> = vec![None; n];
    for _ in 0..r {
        let mut next_frontier = Vec::new();
        for &x in &frontier {
            let m = best[x].expect("frontier vertices carry a minimum");
            for &y in g.neighbors(x) {
                let m2 = m.min(order.position(y));
                if next_best[y].is_none_or(|cur| m2 > cur) {
                    if next_best[y].is_none() {
                        next_frontier.push(y);
                    }
                    next_best[y] = Some(m2);
                }
            }
        }
        for &x in &frontier {
            best[x] = None;
        }
        for &y in &next_frontier {
            best[y] = next_best[y].take();
            if best[y] == Some(order.position(y)) {
                found.push(y);
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    found.into_iter().collect()
}

/// `max_v |WReach_r[G, L, v]|` for the given order; 0 on the empty graph.
pub fn wcol_of_order(g: &Graph, order: &Ordering, r: u32) -> Result<usize> {
    order.check_for(g)?;
    Ok(g.vertices()
        .map(|v| wreach_unchecked(g, order, v, r).len())
        .max()
        .unwrap_or(0))
}

pub const WCOL_EXACT_CAP: usize = 9;

/// Minimum of [`wcol_of_order`] over all `n!` orders, with the
/// lexicographically first optimal order.
pub fn wcol_exact(g: &Graph, r: u32) -> Result<(usize, Ordering)> {
    if g.n() > WCOL_EXACT_CAP {
        return Err(Error::CapExceeded {
            what: "exact weak coloring number",
            size: g.n(),
            cap: WCOL_EXACT_CAP,
        });
    }
    let mut best: Option<(usize, Ordering)> = None;
    for seq in (0..g.n()).permutations(g.n()) {
        let order = Ordering::from_sequence(seq)?;
        let bound = best.as_ref().map_or(usize::MAX, |(b, _)| *b);
        // Abandon the order as soon as one vertex reaches the incumbent value.
        let mut value = 0;
        for v in g.vertices() {
            value = value.max(wreach_unchecked(g, &order, v, r).len());
            if value >= bound {
                break;
            }
        }
        if value < bound {
            best = Some((value, order));
        }
    }
    Ok(best.unwrap_or((0, Ordering::identity(0))))
}

/// Smallest-last order: repeatedly delete a minimum-degree vertex (lowest id on
/// ties); the vertex deleted last comes first.
pub fn degeneracy_order(g: &Graph) -> Ordering {
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; g.n()];
    let mut sequence = Vec::with_capacity(g.n());
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        sequence.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    sequence.reverse();
    Ordering::from_sequence(sequence).expect("every vertex removed exactly once")
}

/// Largest min-degree seen during the smallest-last elimination.
pub fn degeneracy(g: &Graph) -> usize {
    let order = degeneracy_order(g);
    g.vertices()
        .map(|v| g.neighbors(v).iter().filter(|&&w| order.less(w, v)).count())
        .max()
        .unwrap_or(0)
}

/// `{WReach_r[G, L, v] : v ∈ V(G)}` as a set family over `V(G)`.
pub fn wreach_family(g: &Graph, order: &Ordering, r: u32) -> Result<SetFamily> {
    order.check_for(g)?;
    SetFamily::new(
        g.n(),
        g.vertices().map(|v| wreach_unchecked(g, order, v, r)),
    )
}
