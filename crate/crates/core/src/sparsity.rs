//! Quasi-wide extraction, r-closure and short-paths closure.
//!
//! Each routine guarantees the structural postcondition it is named for. How
//! small the produced sets are is a property of the input graph and is only
//! reported.

use crate::error::Result;
use crate::graph::{path_from_distances, Graph, Search, Vertex, VertexSet};
use crate::profiles::all_projection_profiles;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QwResult {
    /// Separator `S`.
    pub separator: VertexSet,
    /// `B ⊆ A \ S`, r-independent in `G - S`.
    pub scattered: VertexSet,
    /// Number of separator vertices chosen so far.
    pub rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QwOutcome {
    Found(QwResult),
    /// The separator cap ran out first; carries the largest scattered set seen.
    Exhausted(QwResult),
}

impl QwOutcome {
    pub fn result(&self) -> &QwResult {
        match self {
            QwOutcome::Found(r) | QwOutcome::Exhausted(r) => r,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, QwOutcome::Found(_))
    }
}

pub fn default_separator_cap(r: u32) -> usize {
    10 * r as usize
}

/// The rounds of the separator search, one item per separator size.
///
/// Round `i` greedily builds a maximal r-scattered subset of `A \ S` in
/// `G - S` (ascending ids, excluding each chosen vertex's r-ball). Between
/// rounds the vertex of `G - S` with the most members of `A \ S` within
/// distance `ceil(r / 2)` joins `S`.
pub struct QwRounds<'g> {
    g: &'g Graph,
    a: VertexSet,
    r: u32,
    separator: VertexSet,
    deleted: Vec<bool>,
    rounds_left: usize,
    done: bool,
}

impl<'g> QwRounds<'g> {
    pub fn new(g: &'g Graph, a: &VertexSet, r: u32, s_max: usize) -> Result<Self> {
        a.check_within(g.n())?;
        Ok(Self {
            g,
            a: a.clone(),
            r,
            separator: VertexSet::new(),
            deleted: vec![false; g.n()],
            rounds_left: s_max,
            done: false,
        })
    }

    fn remaining(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.a.iter().filter(|&v| !self.deleted[v])
    }

    fn scattered(&self) -> VertexSet {
        let mut excluded = vec![false; self.g.n()];
        let mut out = Vec::new();
        for a in self.remaining() {
            if excluded[a] {
                continue;
            }
            out.push(a);
            for &w in Search::avoiding(&self.deleted)
                .run(self.g, [a], self.r)
                .reached()
            {
                excluded[w] = true;
            }
        }
        out.into()
    }

    fn hub(&self) -> Option<Vertex> {
        let radius = self.r.div_ceil(2);
        let mut score = vec![0usize; self.g.n()];
        for a in self.remaining() {
            for &w in Search::avoiding(&self.deleted)
                .run(self.g, [a], radius)
                .reached()
            {
                score[w] += 1;
            }
        }
        // max_by_key keeps the last maximum; iterate in reverse to get the lowest id.
        self.g
            .vertices()
            .rev()
            .filter(|&v| !self.deleted[v] && score[v] > 0)
            .max_by_key(|&v| score[v])
    }
}

impl Iterator for QwRounds<'_> {
    type Item = QwResult;

    fn next(&mut self) -> Option<QwResult> {
        if self.done {
            return None;
        }
        let result = QwResult {
            separator: self.separator.clone(),
            scattered: self.scattered(),
            rounds: self.separator.len(),
        };
        match self.hub() {
            Some(hub) if self.rounds_left > 0 => {
                self.rounds_left -= 1;
                self.separator.insert(hub);
                self.deleted[hub] = true;
            }
            _ => self.done = true,
        }
        Some(result)
    }
}

/// Separator `S` with `|S| <= s_max` and `B ⊆ A \ S` of size at least `m`,
/// r-independent in `G - S`.
pub fn quasi_wide_extract(
    g: &Graph,
    a: &VertexSet,
    r: u32,
    m: usize,
    s_max: usize,
) -> Result<QwOutcome> {
    let mut best: Option<QwResult> = None;
    for round in QwRounds::new(g, a, r, s_max)? {
        if round.scattered.len() >= m {
            return Ok(QwOutcome::Found(round));
        }
        if best
            .as_ref()
            .is_none_or(|b| round.scattered.len() > b.scattered.len())
        {
            best = Some(round);
        }
    }
    Ok(QwOutcome::Exhausted(
        best.expect("at least one round always runs"),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub closure: VertexSet,
    pub threshold: usize,
    /// Vertices added on top of `X`, in insertion order.
    pub added: Vec<Vertex>,
}

/// `max(4, 2 * ceil(m / n) * 2 + 2)`, a density-scaled stand-in for the
/// shallow-minor density bound.
pub fn default_closure_threshold(g: &Graph) -> usize {
    if g.n() == 0 {
        return 4;
    }
    let density = g.m().div_ceil(g.n());
    (2 * density * 2 + 2).max(4)
}

/// Grows `Y ⊇ X` until every `u ∉ Y` has `|M_r(u, Y)| < t`. Each step adds the
/// outside vertex with the largest projection, lowest id on ties.
pub fn r_closure(g: &Graph, x: &VertexSet, r: u32, t: usize) -> Result<ClosureResult> {
    x.check_within(g.n())?;
    let mut closure = x.clone();
    let mut added = Vec::new();
    loop {
        let pick = all_projection_profiles(g, &closure, r)?
            .into_iter()
            .map(|(u, p)| (u, p.len()))
            .rev()
            .max_by_key(|&(_, size)| size);
        match pick {
            Some((u, size)) if size >= t => {
                closure.insert(u);
                added.push(u);
            }
            _ => break,
        }
    }
    Ok(ClosureResult {
        closure,
        threshold: t,
        added,
    })
}

/// `X' ⊇ X` such that every pair of `X` at distance `<= r` keeps its distance
/// in `G[X']`: one lowest-id-parent shortest path is added per such pair.
pub fn short_paths_closure(g: &Graph, x: &VertexSet, r: u32) -> Result<VertexSet> {
    x.check_within(g.n())?;
    let mut out = x.clone();
    for u in x.iter() {
        let dist = Search::default().run(g, [u], r);
        for v in x.iter().filter(|&v| v > u && dist.contains(v)) {
            let path = path_from_distances(g, &dist, v).expect("v was reached");
            for w in path {
                out.insert(w);
            }
        }
    }
    Ok(out)
}
