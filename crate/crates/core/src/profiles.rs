//! Distance profiles, projections, projection profiles and the counters built
//! on them, together with the layered-graph encoding of projection profiles
//! and the VC-dimension machinery.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Graph, Search, Vertex, VertexSet};

/// `pi_r[u, A]`: sorted `(a, dist(u, a))` pairs for every `a` in `A` with
/// `dist(u, a) <= r`. Missing keys stand for infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceProfile {
    pub radius: u32,
    pub entries: Vec<(Vertex, u32)>,
}

/// `rho_r[u, A]`: sorted `(a, d)` pairs where `d` is the length of a shortest
/// A-avoiding path from `u` to `a`, kept only if `d <= r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectionProfile {
    pub radius: u32,
    pub entries: Vec<(Vertex, u32)>,
}

macro_rules! profile_accessors {
    ($ty:ty) => {
        impl $ty {
            pub fn get(&self, a: Vertex) -> Option<u32> {
                self.entries
                    .binary_search_by_key(&a, |&(v, _)| v)
                    .ok()
                    .map(|i| self.entries[i].1)
            }

            pub fn keys(&self) -> VertexSet {
                self.entries.iter().map(|&(v, _)| v).collect()
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }
        }
    };
}

profile_accessors!(DistanceProfile);
profile_accessors!(ProjectionProfile);

pub fn distance_profile(g: &Graph, u: Vertex, a: &VertexSet, r: u32) -> Result<DistanceProfile> {
    g.check_vertex(u)?;
    a.check_within(g.n())?;
    let dist = Search::default().run(g, [u], r);
    let entries = a
        .iter()
        .filter_map(|v| dist.get(v).finite().map(|d| (v, d)))
        .collect();
    Ok(DistanceProfile { radius: r, entries })
}

fn projection_entries(g: &Graph, u: Vertex, a_mask: &[bool], r: u32) -> Vec<(Vertex, u32)> {
    let dist = Search::absorbing(a_mask).run(g, [u], r);
    dist.iter().filter(|&(v, _)| a_mask[v]).collect()
}

fn check_outside(g: &Graph, u: Vertex, a: &VertexSet) -> Result<()> {
    g.check_vertex(u)?;
    a.check_within(g.n())?;
    if a.contains(u) {
        return Err(Error::Contract(format!(
            "projection source {u} must lie outside the target set"
        )));
    }
    Ok(())
}

/// `M_r(u, A)`: vertices of `A` reachable from `u` by an A-avoiding path of
/// length at most `r`.
pub fn projection(g: &Graph, u: Vertex, a: &VertexSet, r: u32) -> Result<VertexSet> {
    Ok(projection_profile(g, u, a, r)?.keys())
}

pub fn projection_profile(
    g: &Graph,
    u: Vertex,
    a: &VertexSet,
    r: u32,
) -> Result<ProjectionProfile> {
    check_outside(g, u, a)?;
    let mask = a.mask(g.n());
    Ok(ProjectionProfile {
        radius: r,
        entries: projection_entries(g, u, &mask, r),
    })
}

/// Projection profiles of every vertex outside `A`, in ascending vertex order.
pub fn all_projection_profiles(
    g: &Graph,
    a: &VertexSet,
    r: u32,
) -> Result<Vec<(Vertex, ProjectionProfile)>> {
    a.check_within(g.n())?;
    let mask = a.mask(g.n());
    Ok(g.vertices()
        .filter(|&u| !mask[u])
        .map(|u| {
            let entries = projection_entries(g, u, &mask, r);
            (u, ProjectionProfile { radius: r, entries })
        })
        .collect())
}

/// Distance profiles of every vertex, computed by one truncated BFS per member
/// of `A` rather than one per vertex.
pub fn all_distance_profiles(g: &Graph, a: &VertexSet, r: u32) -> Result<Vec<DistanceProfile>> {
    a.check_within(g.n())?;
    let mut entries: Vec<Vec<(Vertex, u32)>> = vec![Vec::new(); g.n()];
    for src in a.iter() {
        for (v, d) in Search::default().run(g, [src], r).iter() {
            entries[v].push((src, d));
        }
    }
    Ok(entries
        .into_iter()
        .map(|entries| DistanceProfile { radius: r, entries })
        .collect())
}

/// The counters over a fixed target set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// distinct `N_r[v] ∩ A`
    Nu,
    /// distinct distance profiles
    NuHat,
    /// distinct projections, over `v ∉ A`
    Mu,
    /// distinct projection profiles, over `v ∉ A`
    MuHat,
}

pub const DEFAULT_DISTINCT_CAP: usize = 1 << 22;

fn count_distinct<T: Hash + Eq>(items: impl IntoIterator<Item = T>, cap: usize) -> Result<usize> {
    let mut seen = HashSet::new();
    for item in items {
        seen.insert(item);
        if seen.len() > cap {
            return Err(Error::CapExceeded {
                what: "distinct profile count",
                size: seen.len(),
                cap,
            });
        }
    }
    Ok(seen.len())
}

/// Exact number of distinct traces or profiles realised on `A`. Fails with
/// [`Error::CapExceeded`] once more than `cap` distinct values are held.
pub fn count_metric(g: &Graph, a: &VertexSet, r: u32, metric: Metric, cap: usize) -> Result<usize> {
    match metric {
        Metric::Nu => count_distinct(
            all_distance_profiles(g, a, r)?
                .into_iter()
                .map(|p| p.entries.into_iter().map(|(v, _)| v).collect::<Vec<_>>()),
            cap,
        ),
        Metric::NuHat => count_distinct(all_distance_profiles(g, a, r)?, cap),
        Metric::Mu => count_distinct(
            all_projection_profiles(g, a, r)?
                .into_iter()
                .map(|(_, p)| p.entries.into_iter().map(|(v, _)| v).collect::<Vec<_>>()),
            cap,
        ),
        Metric::MuHat => count_distinct(
            all_projection_profiles(g, a, r)?
                .into_iter()
                .map(|(_, p)| p),
            cap,
        ),
    }
}

pub fn nu_r(g: &Graph, a: &VertexSet, r: u32) -> Result<usize> {
    count_metric(g, a, r, Metric::Nu, DEFAULT_DISTINCT_CAP)
}

pub fn nu_hat_r(g: &Graph, a: &VertexSet, r: u32) -> Result<usize> {
    count_metric(g, a, r, Metric::NuHat, DEFAULT_DISTINCT_CAP)
}

pub fn mu_r(g: &Graph, a: &VertexSet, r: u32) -> Result<usize> {
    count_metric(g, a, r, Metric::Mu, DEFAULT_DISTINCT_CAP)
}

pub fn mu_hat_r(g: &Graph, a: &VertexSet, r: u32) -> Result<usize> {
    count_metric(g, a, r, Metric::MuHat, DEFAULT_DISTINCT_CAP)
}

/// Layered graph `H` on `(r + 1) * n` vertices: copy `(u, i)` has id `i * n + u`.
/// For each edge `uv` and layer `i >= 1`, `(u, i-1)(v, i)` is an edge when
/// `u ∉ A`, and `(v, i-1)(u, i)` is one when `v ∉ A`.
pub fn layered_graph(g: &Graph, a: &VertexSet, r: u32) -> Result<(Graph, VertexSet)> {
    a.check_within(g.n())?;
    let n = g.n();
    let layers = r as usize + 1;
    let mask = a.mask(n);
    let mut edges = Vec::new();
    for i in 1..layers {
        for (u, v) in g.edges() {
            if !mask[u] {
                edges.push(((i - 1) * n + u, i * n + v));
            }
            if !mask[v] {
                edges.push(((i - 1) * n + v, i * n + u));
            }
        }
    }
    let h = Graph::from_edges(layers * n, edges)?;
    let b = (0..layers)
        .flat_map(|i| a.iter().map(move |v| i * n + v))
        .collect();
    Ok((h, b))
}

/// Recovers `rho_r[u, A]` from the distance profile of `(u, 0)` on
/// `A × {0..r}` in the layered graph: the value for `v` is the smallest `i`
/// with `pi((v, i)) = i`.
pub fn decode_projection_via_layers(
    g: &Graph,
    a: &VertexSet,
    r: u32,
    u: Vertex,
) -> Result<ProjectionProfile> {
    check_outside(g, u, a)?;
    let n = g.n();
    let (h, b) = layered_graph(g, a, r)?;
    let profile = distance_profile(&h, u, &b, r)?;
    let entries = a
        .iter()
        .filter_map(|v| {
            (0..=r)
                .find(|&i| profile.get(i as usize * n + v) == Some(i))
                .map(|i| (v, i))
        })
        .collect();
    Ok(ProjectionProfile { radius: r, entries })
}

/// A deduplicated family of subsets of `[0, ground)`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground: usize,
    sets: Vec<VertexSet>,
}

impl SetFamily {
    pub fn new(ground: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        for s in &sets {
            s.check_within(ground)?;
        }
        sets.sort();
        sets.dedup();
        Ok(Self { ground, sets })
    }

    /// `{N_r[v] : v ∈ V(G)}`.
    pub fn neighborhoods(g: &Graph, r: u32) -> Self {
        let sets = g
            .vertices()
            .map(|v| Search::default().run(g, [v], r).domain());
        Self::new(g.n(), sets).expect("balls stay inside the vertex range")
    }

    /// `{N_r[v] ∩ A : v ∈ V(G)}`.
    pub fn traces_on(g: &Graph, a: &VertexSet, r: u32) -> Result<Self> {
        let sets = all_distance_profiles(g, a, r)?
            .into_iter()
            .map(|p| p.keys());
        Self::new(g.n(), sets)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// True iff every subset of `x` arises as `x ∩ F` for some member `F`.
    pub fn shatters(&self, x: &[Vertex]) -> bool {
        if x.len() >= usize::BITS as usize {
            return false;
        }
        let need = 1usize << x.len();
        if self.sets.len() < need {
            return false;
        }
        let mut seen = vec![false; need];
        let mut count = 0;
        for s in &self.sets {
            let trace = x
                .iter()
                .enumerate()
                .filter(|&(_, &v)| s.contains(v))
                .fold(0usize, |acc, (i, _)| acc | (1 << i));
            if !seen[trace] {
                seen[trace] = true;
                count += 1;
                if count == need {
                    return true;
                }
            }
        }
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VcDimension {
    Exact(usize),
    /// Some set of size `cap + 1` is shattered; the search stopped there.
    AtLeast(usize),
}

impl VcDimension {
    /// The certified lower bound, which is the exact value when known.
    pub fn value(self) -> usize {
        match self {
            VcDimension::Exact(d) | VcDimension::AtLeast(d) => d,
        }
    }
}

impl std::fmt::Display for VcDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VcDimension::Exact(d) => write!(f, "{d}"),
            VcDimension::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

pub const MAX_VC_CAP: usize = 12;

/// VC-dimension by a level-wise climb: a candidate of size `k + 1` is tested
/// only if all of its `k`-subsets were shattered.
pub fn vc_dimension(f: &SetFamily, cap: usize) -> Result<VcDimension> {
    if cap > MAX_VC_CAP {
        return Err(Error::InvalidParam(format!(
            "vc dimension cap {cap} exceeds {MAX_VC_CAP}"
        )));
    }
    if f.is_empty() {
        return Ok(VcDimension::Exact(0));
    }
    // Only elements covered by some member but missed by another can be shattered.
    let mut in_some = vec![false; f.ground()];
    let mut in_all = vec![true; f.ground()];
    let mut counts = vec![0usize; f.ground()];
    for s in f.sets() {
        for v in s.iter() {
            in_some[v] = true;
            counts[v] += 1;
        }
    }
    for (v, c) in counts.iter().enumerate() {
        in_all[v] = *c == f.len();
    }
    let mut level: Vec<Vec<Vertex>> = (0..f.ground())
        .filter(|&v| in_some[v] && !in_all[v])
        .map(|v| vec![v])
        .collect();
    let mut dim = 0;
    while !level.is_empty() {
        if dim == cap {
            return Ok(VcDimension::AtLeast(cap + 1));
        }
        dim += 1;
        let known: HashSet<&[Vertex]> = level.iter().map(Vec::as_slice).collect();
        let mut next = Vec::new();
        // Join pairs sharing the same prefix, as in apriori.
        for (i, x) in level.iter().enumerate() {
            for y in &level[i + 1..] {
                if x[..x.len() - 1] != y[..y.len() - 1] {
                    break;
                }
                let mut cand = x.clone();
                cand.push(*y.last().expect("nonempty"));
                let all_subsets_shattered = (0..cand.len() - 2).all(|skip| {
                    let sub: Vec<Vertex> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    known.contains(sub.as_slice())
                });
                if all_subsets_shattered && f.shatters(&cand) {
                    next.push(cand);
                }
            }
        }
        level = next;
    }
    Ok(VcDimension::Exact(dim))
}

/// `sum_{i=0}^{d} C(n, i)`.
pub fn sauer_shelah_bound(n: u64, d: u64) -> BigUint {
    let mut total = BigUint::from(0u32);
    let mut term = BigUint::from(1u32);
    for i in 0..=d.min(n) {
        total += &term;
        term = term * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    total
}

/// Groups `items` by key; classes come back largest first, ties broken by the
/// smallest member.
pub(crate) fn partition_by_key<K: Hash + Eq>(
    items: impl IntoIterator<Item = (Vertex, K)>,
) -> Vec<Vec<Vertex>> {
    let mut classes: HashMap<K, Vec<Vertex>> = HashMap::new();
    for (v, key) in items {
        classes.entry(key).or_default().push(v);
    }
    let mut out: Vec<Vec<Vertex>> = classes
        .into_values()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    out
}
