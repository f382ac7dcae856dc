//! Deterministic graph families.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A graph family with its parameters. Same spec, same graph.
///
/// Text form (used by the CLI and bench plans), colon separated:
/// `grid:W:H`, `path:N`, `cycle:N`, `star:LEAVES`, `complete:N`,
/// `spider:LEGS:LEN`, `tree:N:SEED`, `random:N:D:SEED`, `subset:A`,
/// `subdivision:R:<inner spec>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Grid {
        w: usize,
        h: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    Complete {
        n: usize,
    },
    Spider {
        legs: usize,
        len: usize,
    },
    /// Random recursive tree.
    Tree {
        n: usize,
        seed: u64,
    },
    /// Uniform stub pairing; loops and repeated pairs are dropped, so degrees stay `<= d`.
    RandomBoundedDegree {
        n: usize,
        d: usize,
        seed: u64,
    },
    SubsetGadget {
        anchors: usize,
    },
    Subdivision {
        base: Box<GenSpec>,
        r: usize,
    },
}

pub const MAX_SUBSET_ANCHORS: usize = 20;

impl GenSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::Grid { .. } => "grid",
            GenSpec::Path { .. } => "path",
            GenSpec::Cycle { .. } => "cycle",
            GenSpec::Star { .. } => "star",
            GenSpec::Complete { .. } => "complete",
            GenSpec::Spider { .. } => "spider",
            GenSpec::Tree { .. } => "tree",
            GenSpec::RandomBoundedDegree { .. } => "random",
            GenSpec::SubsetGadget { .. } => "subset",
            GenSpec::Subdivision { .. } => "subdivision",
        }
    }

    /// Seed of the innermost random family, if any.
    pub fn seed(&self) -> Option<u64> {
        match self {
            GenSpec::Tree { seed, .. } | GenSpec::RandomBoundedDegree { seed, .. } => Some(*seed),
            GenSpec::Subdivision { base, .. } => base.seed(),
            _ => None,
        }
    }

    /// Replaces the seed of random families; other families are unchanged.
    pub fn with_seed(self, new: u64) -> Self {
        match self {
            GenSpec::Tree { n, .. } => GenSpec::Tree { n, seed: new },
            GenSpec::RandomBoundedDegree { n, d, .. } => {
                GenSpec::RandomBoundedDegree { n, d, seed: new }
            }
            GenSpec::Subdivision { base, r } => GenSpec::Subdivision {
                base: Box::new(base.with_seed(new)),
                r,
            },
            other => other,
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Grid { w, h } => write!(f, "grid:{w}:{h}"),
            GenSpec::Path { n } => write!(f, "path:{n}"),
            GenSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GenSpec::Star { leaves } => write!(f, "star:{leaves}"),
            GenSpec::Complete { n } => write!(f, "complete:{n}"),
            GenSpec::Spider { legs, len } => write!(f, "spider:{legs}:{len}"),
            GenSpec::Tree { n, seed } => write!(f, "tree:{n}:{seed}"),
            GenSpec::RandomBoundedDegree { n, d, seed } => write!(f, "random:{n}:{d}:{seed}"),
            GenSpec::SubsetGadget { anchors } => write!(f, "subset:{anchors}"),
            GenSpec::Subdivision { base, r } => write!(f, "subdivision:{r}:{base}"),
        }
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParam(format!("generator spec {s:?}: {msg}"));
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        if family == "subdivision" {
            let (r, inner) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected subdivision:R:<spec>"))?;
            let r = r
                .parse()
                .map_err(|_| bad("subdivision radius must be an integer"))?;
            return Ok(GenSpec::Subdivision {
                base: Box::new(inner.parse()?),
                r,
            });
        }
        let args: Vec<u64> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(':')
                .map(|a| {
                    a.parse::<u64>()
                        .map_err(|_| bad(&format!("bad parameter {a:?}")))
                })
                .collect::<Result<_>>()?
        };
        let u = |x: u64| x as usize;
        let spec = match (family, args.as_slice()) {
            ("grid", &[w, h]) => GenSpec::Grid { w: u(w), h: u(h) },
            ("path", &[n]) => GenSpec::Path { n: u(n) },
            ("cycle", &[n]) => GenSpec::Cycle { n: u(n) },
            ("star", &[l]) => GenSpec::Star { leaves: u(l) },
            ("complete", &[n]) => GenSpec::Complete { n: u(n) },
            ("spider", &[legs, len]) => GenSpec::Spider {
                legs: u(legs),
                len: u(len),
            },
            ("tree", &[n, seed]) => GenSpec::Tree { n: u(n), seed },
            ("random", &[n, d, seed]) => GenSpec::RandomBoundedDegree {
                n: u(n),
                d: u(d),
                seed,
            },
            ("subset", &[a]) => GenSpec::SubsetGadget { anchors: u(a) },
            _ => return Err(bad("unknown family or wrong parameter count")),
        };
        Ok(spec)
    }
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match *spec {
        GenSpec::Grid { w, h } => grid(w, h),
        GenSpec::Path { n } => path(n),
        GenSpec::Cycle { n } => cycle(n),
        GenSpec::Star { leaves } => star(leaves),
        GenSpec::Complete { n } => complete(n),
        GenSpec::Spider { legs, len } => spider(legs, len),
        GenSpec::Tree { n, seed } => random_tree(n, seed),
        GenSpec::RandomBoundedDegree { n, d, seed } => random_bounded_degree(n, d, seed),
        GenSpec::SubsetGadget { anchors } => subset_gadget(anchors),
        GenSpec::Subdivision { ref base, r } => subdivision(&generate(base)?, r),
    }
}

pub fn grid(w: usize, h: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                edges.push((v, v + 1));
            }
            if y + 1 < h {
                edges.push((v, v + w));
            }
        }
    }
    Graph::from_edges(w * h, edges)
}

pub fn path(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParam(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Center 0, leaves `1..=leaves`.
pub fn star(leaves: usize) -> Result<Graph> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l)))
}

pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).tuple_combinations())
}

/// Center 0 with `legs` pendant paths of `len` edges; leg `l` occupies ids
/// `1 + l * len ..= (l + 1) * len`, tip last.
pub fn spider(legs: usize, len: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for l in 0..legs {
        let mut prev = 0;
        for i in 0..len {
            let v = 1 + l * len + i;
            edges.push((prev, v));
            prev = v;
        }
    }
    Graph::from_edges(1 + legs * len, edges)
}

pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_edges(
        n,
        (1..n)
            .map(|v| (rng.random_range(0..v), v))
            .collect::<Vec<_>>(),
    )
}

pub fn random_bounded_degree(n: usize, d: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(&mut rng);
    let edges: Vec<(Vertex, Vertex)> = stubs
        .chunks_exact(2)
        .filter(|p| p[0] != p[1])
        .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
        .collect();
    Graph::from_edges(n, edges)
}

/// Anchors `0..a` plus, for every subset of the anchors (as bitmask `mask`),
/// vertex `a + mask` adjacent to exactly that subset. The empty subset's
/// vertex is isolated, so all `2^a` traces on the anchors are realised.
pub fn subset_gadget(anchors: usize) -> Result<Graph> {
    if anchors > MAX_SUBSET_ANCHORS {
        return Err(Error::CapExceeded {
            what: "subset gadget anchors",
            size: anchors,
            cap: MAX_SUBSET_ANCHORS,
        });
    }
    let subsets = 1usize << anchors;
    let mut edges = Vec::new();
    for mask in 1..subsets {
        for a in (0..anchors).filter(|a| mask >> a & 1 == 1) {
            edges.push((a, anchors + mask));
        }
    }
    Graph::from_edges(anchors + subsets, edges)
}

pub fn subset_gadget_anchors(anchors: usize) -> VertexSet {
    VertexSet::range(anchors)
}

/// Replaces every edge by a path with `r + 1` edges. The `r` new vertices of
/// the `i`-th edge (in edge order) get ids `n + i * r ..`.
pub fn subdivision(g: &Graph, r: usize) -> Result<Graph> {
    let n = g.n();
    let mut edges = Vec::new();
    for (i, (u, v)) in g.edges().enumerate() {
        let mut prev = u;
        for j in 0..r {
            let mid = n + i * r + j;
            edges.push((prev, mid));
            prev = mid;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(n + g.m() * r, edges)
}

/// `size` distinct vertices of `[0, n)` drawn with the given seed.
pub fn random_subset(n: usize, size: usize, seed: u64) -> Result<VertexSet> {
    if size > n {
        return Err(Error::InvalidParam(format!(
            "cannot draw {size} of {n} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<Vertex> = (0..n).collect();
    all.shuffle(&mut rng);
    Ok(all.into_iter().take(size).collect())
}
