//! The kernelization pipeline: shrink a domination core one irrelevant
//! dominatee at a time, then cut the graph down around the core.

use std::fmt::Write as _;

use crate::domset::{
    bg_approx_dominator, enumerate_min_dominators_with, greedy_scattered_lower_bound, is_dominator,
    DominationInstance, OracleCaps, DEFAULT_BG_ROUNDS,
};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, IdMap, Vertex, VertexSet};
use crate::profiles::{all_projection_profiles, distance_profile, partition_by_key};
use crate::sparsity::{default_closure_threshold, r_closure, short_paths_closure, QwRounds};

/// Tuning knobs for the pipeline. `None` picks the documented default.
#[derive(Debug, Clone)]
pub struct KernelConfig {
    /// Stop shrinking the core once it has at most this many vertices.
    pub target: Option<usize>,
    /// Projection threshold for the 3r-closure.
    pub closure_threshold: Option<usize>,
    /// Separator cap for the 2r quasi-wide search.
    pub separator_cap: Option<usize>,
    pub bg_rounds: usize,
    /// Re-check every removal with the exhaustive oracle.
    pub verify: bool,
    pub caps: OracleCaps,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            target: None,
            closure_threshold: None,
            separator_cap: None,
            bg_rounds: DEFAULT_BG_ROUNDS,
            verify: false,
            caps: OracleCaps::default(),
        }
    }
}

/// `20 * k * ceil(log2(k + 2))`.
pub fn default_core_target(k: usize) -> usize {
    let log = (usize::BITS - (k + 1).leading_zeros()) as usize;
    20 * k * log
}

/// Why one dominatee could be dropped from the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalStep {
    /// The removed dominatee `z`.
    pub vertex: Vertex,
    pub core_size_before: usize,
    /// Approximate (Z, r)-dominator `X`.
    pub dominator: VertexSet,
    /// `X_cl`, the 3r-closure of `X`.
    pub closure: VertexSet,
    /// Number of 3r-projection-profile classes on `Z \ X_cl`.
    pub classes: usize,
    /// Rank of the class containing `z` (0 = largest).
    pub class_rank: usize,
    pub class_size: usize,
    pub separator: VertexSet,
    /// `R`: 2r-scattered in `G - S`, one projection class, one r-profile on `S`.
    pub exchange_set: VertexSet,
    /// `|M_3r(z, X_cl) ∪ S|`.
    pub buy_size: usize,
}

impl RemovalStep {
    /// `|R| >= |M_3r(z, X_cl) ∪ S| + 2`.
    pub fn exchange_holds(&self) -> bool {
        self.exchange_set.len() >= self.buy_size + 2
    }
}

#[derive(Debug, Clone)]
pub struct CoreState<'g> {
    pub g: &'g Graph,
    pub r: u32,
    pub k: usize,
    /// The dominatees the core must stand in for.
    pub original: VertexSet,
    pub z: VertexSet,
    pub trace: Vec<RemovalStep>,
}

impl<'g> CoreState<'g> {
    pub fn new(inst: &DominationInstance<'g>) -> Self {
        Self {
            g: inst.g,
            r: inst.r,
            k: inst.k,
            original: inst.z.clone(),
            z: inst.z.clone(),
            trace: Vec::new(),
        }
    }
}

/// Looks for a dominatee whose removal keeps `state.z` a domination core.
///
/// `X` is an approximate (Z, r)-dominator and `X_cl` its 3r-closure. Vertices
/// of `Z \ X_cl` are grouped by 3r-projection profile on `X_cl`, largest class
/// first. Inside a class the quasi-wide search (radius 2r) yields `(S, L)`; `L`
/// is split by r-distance profile on `S` and its largest part `R` is taken.
/// The lowest-id `z ∈ R` is returned once `|R| >= |M_3r(z, X_cl) ∪ S| + 2`.
pub fn find_redundant_vertex(
    state: &CoreState<'_>,
    cfg: &KernelConfig,
) -> Result<Option<RemovalStep>> {
    let g = state.g;
    let r = state.r;
    if state.z.len() < 3 {
        return Ok(None);
    }
    let inst = DominationInstance::new(g, &state.z, r, state.k)?;
    let x = bg_approx_dominator(&inst, cfg.bg_rounds)?.dominator;
    let t = cfg
        .closure_threshold
        .unwrap_or_else(|| default_closure_threshold(g));
    let x_cl = r_closure(g, &x, 3 * r, t)?.closure;

    let cl_mask = x_cl.mask(g.n());
    let z_mask = state.z.mask(g.n());
    let profiles: Vec<_> = all_projection_profiles(g, &x_cl, 3 * r)?
        .into_iter()
        .filter(|(u, _)| z_mask[*u])
        .collect();
    debug_assert!(profiles.iter().all(|(u, _)| !cl_mask[*u]));
    let projection_of = |u: Vertex| -> VertexSet {
        profiles
            .binary_search_by_key(&u, |(v, _)| *v)
            .map(|i| profiles[i].1.keys())
            .unwrap_or_default()
    };
    let classes = partition_by_key(profiles.iter().map(|(u, p)| (*u, p.clone())));
    let s_max = cfg
        .separator_cap
        .unwrap_or_else(|| crate::sparsity::default_separator_cap(2 * r));

    for (rank, class) in classes.iter().enumerate() {
        // The buy side always holds at least one closure vertex, so |R| >= 3.
        if class.len() < 3 {
            break;
        }
        let kappa: VertexSet = class.iter().copied().collect();
        for round in QwRounds::new(g, &kappa, 2 * r, s_max)? {
            let s = &round.separator;
            if s.len() + 3 > kappa.len() {
                break;
            }
            if round.scattered.len() < s.len() + 3 {
                continue;
            }
            let keyed = round
                .scattered
                .iter()
                .map(|v| Ok((v, distance_profile(g, v, s, r)?)))
                .collect::<Result<Vec<_>>>()?;
            let subclasses = partition_by_key(keyed);
            let exchange_set: VertexSet = subclasses[0].iter().copied().collect();
            let z = exchange_set.first().expect("classes are nonempty");
            let buy_size = projection_of(z).union(s).len();
            let step = RemovalStep {
                vertex: z,
                core_size_before: state.z.len(),
                dominator: x.clone(),
                closure: x_cl.clone(),
                classes: classes.len(),
                class_rank: rank,
                class_size: class.len(),
                separator: s.clone(),
                exchange_set,
                buy_size,
            };
            if step.exchange_holds() {
                return Ok(Some(step));
            }
        }
    }
    Ok(None)
}

/// Checks with the exhaustive oracle that every minimum (Z, r)-dominator still
/// dominates the original dominatees.
pub fn verify_core(state: &CoreState<'_>, caps: OracleCaps) -> Result<()> {
    let inst = DominationInstance::new(state.g, &state.z, state.r, state.k)?;
    let target = DominationInstance::new(state.g, &state.original, state.r, state.k)?;
    for d in enumerate_min_dominators_with(&inst, caps)? {
        if !is_dominator(&target, &d)? {
            return Err(Error::Verification(format!(
                "minimum dominator {d} of core {} misses part of the original target",
                state.z
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub enum CoreOutcome<'g> {
    Core(CoreState<'g>),
    /// More than `k` dominatees pairwise `> 2r` apart.
    Rejected {
        state: CoreState<'g>,
        witness: VertexSet,
    },
}

/// Shrinks the core, starting from the instance's dominatees, until it has at
/// most `target` vertices or no removable vertex is found. Rejects as soon as
/// the scattered lower bound on the current core exceeds `k`.
pub fn find_core<'g>(
    inst: &DominationInstance<'g>,
    target: usize,
    cfg: &KernelConfig,
) -> Result<CoreOutcome<'g>> {
    let mut state = CoreState::new(inst);
    loop {
        let current = DominationInstance::new(state.g, &state.z, state.r, state.k)?;
        let witness = greedy_scattered_lower_bound(&current);
        if witness.len() > state.k {
            return Ok(CoreOutcome::Rejected { state, witness });
        }
        if state.z.len() <= target {
            break;
        }
        let Some(step) = find_redundant_vertex(&state, cfg)? else {
            break;
        };
        state.z.remove(step.vertex);
        state.trace.push(step);
        if cfg.verify {
            verify_core(&state, cfg.caps)?;
        }
    }
    Ok(CoreOutcome::Core(state))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub n: usize,
    pub m: usize,
    pub r: u32,
    pub k: usize,
    pub core_target: usize,
    pub initial_core: usize,
    pub final_core: usize,
    pub removals: usize,
    /// Projection classes of `V \ Z` on `Z`, one representative each.
    pub representatives: usize,
    pub kernel_n: Option<usize>,
    pub kernel_m: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Kernel {
        g_prime: Graph,
        /// Dominatees in kernel ids.
        z_prime: VertexSet,
        /// Kernel ids back to input ids.
        id_map: IdMap,
    },
    Rejected {
        k: usize,
        witness: VertexSet,
    },
}

#[derive(Debug, Clone)]
pub struct KernelResult {
    pub verdict: Verdict,
    pub stats: KernelStats,
    pub trace: Vec<RemovalStep>,
}

impl KernelResult {
    pub fn is_rejected(&self) -> bool {
        matches!(self.verdict, Verdict::Rejected { .. })
    }

    /// `stage,|Z|,|X|,|X_cl|,classes,|S|,|R|,removed`, one row per removal.
    pub fn stats_csv(&self) -> String {
        let mut out = String::from("stage,|Z|,|X|,|X_cl|,classes,|S|,|R|,removed\n");
        for (i, s) in self.trace.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                i,
                s.core_size_before,
                s.dominator.len(),
                s.closure.len(),
                s.classes,
                s.separator.len(),
                s.exchange_set.len(),
                s.vertex
            )
            .expect("writing to a String");
        }
        out
    }
}

/// Keeps `Z`, one lowest-id representative per r-projection-profile class of
/// `V \ Z`, and shortest paths between kept vertices at distance `<= r`.
pub fn build_kernel_from_core(g: &Graph, z: &VertexSet, r: u32) -> Result<KernelResult> {
    z.check_within(g.n())?;
    let classes = partition_by_key(all_projection_profiles(g, z, r)?);
    let mut kept = z.clone();
    for class in &classes {
        kept.insert(class[0]);
    }
    let closed = short_paths_closure(g, &kept, r)?;
    let (g_prime, id_map) = induced_subgraph(g, &closed)?;
    let z_prime = id_map.map_to_sub(z);
    let stats = KernelStats {
        n: g.n(),
        m: g.m(),
        r,
        initial_core: z.len(),
        final_core: z.len(),
        representatives: classes.len(),
        kernel_n: Some(g_prime.n()),
        kernel_m: Some(g_prime.m()),
        ..KernelStats::default()
    };
    Ok(KernelResult {
        verdict: Verdict::Kernel {
            g_prime,
            z_prime,
            id_map,
        },
        stats,
        trace: Vec::new(),
    })
}

/// `find_core` followed by `build_kernel_from_core`. The answer "is there a set
/// of at most `k` vertices r-dominating `inst.z`" is the same on the kernel
/// (dominating `z_prime`), and a rejection proves it is no.
pub fn kernelize(inst: &DominationInstance<'_>, cfg: &KernelConfig) -> Result<KernelResult> {
    let target = cfg.target.unwrap_or_else(|| default_core_target(inst.k));
    let base = KernelStats {
        n: inst.g.n(),
        m: inst.g.m(),
        r: inst.r,
        k: inst.k,
        core_target: target,
        initial_core: inst.z.len(),
        ..KernelStats::default()
    };
    match find_core(inst, target, cfg)? {
        CoreOutcome::Rejected { state, witness } => Ok(KernelResult {
            verdict: Verdict::Rejected { k: inst.k, witness },
            stats: KernelStats {
                final_core: state.z.len(),
                removals: state.trace.len(),
                ..base
            },
            trace: state.trace,
        }),
        CoreOutcome::Core(state) => {
            let built = build_kernel_from_core(inst.g, &state.z, inst.r)?;
            Ok(KernelResult {
                verdict: built.verdict,
                stats: KernelStats {
                    final_core: state.z.len(),
                    removals: state.trace.len(),
                    representatives: built.stats.representatives,
                    kernel_n: built.stats.kernel_n,
                    kernel_m: built.stats.kernel_m,
                    ..base
                },
                trace: state.trace,
            })
        }
    }
}

/// Turns the annotated instance `(G', Z)` into a plain one: fresh `w, w'`
/// joined by a path of length `r`, and a path of length `r` from `w` to every
/// vertex outside `Z`. Ids: `w = n`, `w' = n + 1`, internal path vertices after.
pub fn annotate_to_plain(g_prime: &Graph, z: &VertexSet, r: u32) -> Result<Graph> {
    z.check_within(g_prime.n())?;
    if r == 0 {
        return Err(Error::InvalidParam(
            "gadget radius must be at least 1".into(),
        ));
    }
    let n = g_prime.n();
    let w = n;
    let w2 = n + 1;
    let mut next = n + 2;
    let mut edges: Vec<(Vertex, Vertex)> = g_prime.edges().collect();
    let mut add_path = |from: Vertex, to: Vertex, edges: &mut Vec<(Vertex, Vertex)>| {
        let mut prev = from;
        for _ in 1..r {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, to));
    };
    add_path(w, w2, &mut edges);
    for v in g_prime.vertices().filter(|&v| !z.contains(v)) {
        add_path(w, v, &mut edges);
    }
    Graph::from_edges(next, edges)
}
