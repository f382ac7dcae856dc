//! (Z, r)-dominators: validity checks, the exact branch-and-bound oracle, the
//! scattered-set lower bound, and the iterative-reweighting approximation.

use crate::error::{Error, Result};
use crate::graph::{bfs_from_set, Graph, Search, Vertex, VertexSet};

/// The annotated problem: can `z` be r-dominated by `k` vertices of `g`?
#[derive(Debug, Clone, Copy)]
pub struct DominationInstance<'g> {
    pub g: &'g Graph,
    pub z: &'g VertexSet,
    pub r: u32,
    pub k: usize,
}

impl<'g> DominationInstance<'g> {
    pub fn new(g: &'g Graph, z: &'g VertexSet, r: u32, k: usize) -> Result<Self> {
        z.check_within(g.n())?;
        if r == 0 {
            return Err(Error::InvalidParam(
                "domination radius must be at least 1".into(),
            ));
        }
        Ok(Self { g, z, r, k })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatorResult {
    pub dominator: VertexSet,
    pub optimal: bool,
    /// A subset of `Z` with pairwise distances `> 2r`; no dominator can be smaller.
    pub lower_bound_witness: Option<VertexSet>,
}

/// Size caps for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub exact: usize,
    pub enumerate: usize,
}

/// Hard limit of the bitmask representation used by the oracles.
pub const ORACLE_WORD_BITS: usize = 128;

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            exact: 64,
            enumerate: 20,
        }
    }
}

pub fn is_dominator(inst: &DominationInstance<'_>, d: &VertexSet) -> Result<bool> {
    let dist = bfs_from_set(inst.g, d, inst.r)?;
    Ok(inst.z.iter().all(|z| dist.contains(z)))
}

/// Members of `Z` pairwise more than `2r` apart, chosen greedily by ascending id.
pub fn greedy_scattered_lower_bound(inst: &DominationInstance<'_>) -> VertexSet {
    let mut blocked = vec![false; inst.g.n()];
    let mut out = Vec::new();
    for z in inst.z.iter() {
        if blocked[z] {
            continue;
        }
        out.push(z);
        for &w in Search::default().run(inst.g, [z], 2 * inst.r).reached() {
            blocked[w] = true;
        }
    }
    out.into()
}

type Mask = u128;

fn bits(mask: Mask) -> impl Iterator<Item = Vertex> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as Vertex;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Ball masks `N_r[v]` for every vertex, which by symmetry double as the set
/// of candidate dominators of `v`.
struct BallMasks {
    balls: Vec<Mask>,
    z_mask: Mask,
}

impl BallMasks {
    fn new(inst: &DominationInstance<'_>, what: &'static str, cap: usize) -> Result<Self> {
        let n = inst.g.n();
        let cap = cap.min(ORACLE_WORD_BITS);
        if n > cap {
            return Err(Error::CapExceeded { what, size: n, cap });
        }
        let balls = inst
            .g
            .vertices()
            .map(|v| {
                Search::default()
                    .run(inst.g, [v], inst.r)
                    .reached()
                    .iter()
                    .fold(0, |acc, &w| acc | (1 << w))
            })
            .collect();
        let z_mask = inst.z.iter().fold(0, |acc, z| acc | (1 << z));
        Ok(Self { balls, z_mask })
    }

    fn covered_by(&self, d: Mask) -> Mask {
        bits(d).fold(0, |acc, v| acc | self.balls[v])
    }

    /// Greedy scattered set inside `uncovered`: vertices whose option sets are
    /// pairwise disjoint.
    fn disjoint_lower_bound(&self, uncovered: Mask) -> usize {
        let mut rest = uncovered;
        let mut count = 0;
        while rest != 0 {
            let z = rest.trailing_zeros() as usize;
            let options = self.balls[z];
            count += 1;
            // Everything sharing an option with z is within 2r of it.
            rest &= !self.covered_by(options);
            rest &= !(1 << z);
        }
        count
    }

    fn greedy_cover(&self, targets: Mask) -> Mask {
        let mut uncovered = targets;
        let mut chosen: Mask = 0;
        while uncovered != 0 {
            let best = (0..self.balls.len())
                .max_by_key(|&v| {
                    (
                        (self.balls[v] & uncovered).count_ones(),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("graph has vertices when something is uncovered");
            chosen |= 1 << best;
            uncovered &= !self.balls[best];
        }
        chosen
    }
}

struct BranchAndBound<'a> {
    masks: &'a BallMasks,
    best: Mask,
    best_len: u32,
}

impl BranchAndBound<'_> {
    fn search(&mut self, uncovered: Mask, chosen: Mask, depth: u32) {
        if uncovered == 0 {
            if depth < self.best_len {
                self.best = chosen;
                self.best_len = depth;
            }
            return;
        }
        if depth + self.masks.disjoint_lower_bound(uncovered) as u32 >= self.best_len {
            return;
        }
        // Branch on the uncovered vertex with the fewest dominator options.
        let pivot = bits(uncovered)
            .min_by_key(|&z| (self.masks.balls[z].count_ones(), z))
            .expect("uncovered is nonempty");
        let mut options: Vec<Vertex> = bits(self.masks.balls[pivot]).collect();
        options.sort_by_key(|&d| {
            (
                std::cmp::Reverse((self.masks.balls[d] & uncovered).count_ones()),
                d,
            )
        });
        for d in options {
            self.search(
                uncovered & !self.masks.balls[d],
                chosen | (1 << d),
                depth + 1,
            );
        }
    }
}

fn mask_to_set(mask: Mask) -> VertexSet {
    bits(mask).collect()
}

/// Minimum (Z, r)-dominator. Errors with [`Error::CapExceeded`] above `caps.exact`.
pub fn exact_min_dominator_with(
    inst: &DominationInstance<'_>,
    caps: OracleCaps,
) -> Result<DominatorResult> {
    let masks = BallMasks::new(inst, "exact dominator oracle", caps.exact)?;
    let greedy = masks.greedy_cover(masks.z_mask);
    let mut bb = BranchAndBound {
        masks: &masks,
        best: greedy,
        best_len: greedy.count_ones(),
    };
    bb.search(masks.z_mask, 0, 0);
    Ok(DominatorResult {
        dominator: mask_to_set(bb.best),
        optimal: true,
        lower_bound_witness: Some(greedy_scattered_lower_bound(inst)),
    })
}

pub fn exact_min_dominator(inst: &DominationInstance<'_>) -> Result<DominatorResult> {
    exact_min_dominator_with(inst, OracleCaps::default())
}

/// `ds_r(G, Z)`.
pub fn domination_number(inst: &DominationInstance<'_>) -> Result<usize> {
    Ok(exact_min_dominator(inst)?.dominator.len())
}

/// Every minimum-size (Z, r)-dominator, in lexicographic order.
pub fn enumerate_min_dominators_with(
    inst: &DominationInstance<'_>,
    caps: OracleCaps,
) -> Result<Vec<VertexSet>> {
    let masks = BallMasks::new(inst, "dominator enumeration", caps.enumerate)?;
    let opt = exact_min_dominator_with(inst, caps)?.dominator.len();
    let n = inst.g.n();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(opt);
    enumerate_rec(&masks, n, opt, 0, 0, &mut stack, &mut out);
    Ok(out)
}

fn enumerate_rec(
    masks: &BallMasks,
    n: usize,
    size: usize,
    start: Vertex,
    covered: Mask,
    stack: &mut Vec<Vertex>,
    out: &mut Vec<VertexSet>,
) {
    if stack.len() == size {
        if masks.z_mask & !covered == 0 {
            out.push(stack.iter().copied().collect());
        }
        return;
    }
    let need = size - stack.len();
    for v in start..=n.saturating_sub(need) {
        if v >= n {
            break;
        }
        stack.push(v);
        enumerate_rec(masks, n, size, v + 1, covered | masks.balls[v], stack, out);
        stack.pop();
    }
}

pub fn enumerate_min_dominators(inst: &DominationInstance<'_>) -> Result<Vec<VertexSet>> {
    enumerate_min_dominators_with(inst, OracleCaps::default())
}

/// Greedy hitting set of the ranges `N_r[z]`, `z ∈ targets`: repeatedly take the
/// vertex hitting the most unhit ranges. Ties prefer the heavier vertex, then
/// the lower id.
fn greedy_hitting_set(
    ranges: &[(Vertex, Vec<Vertex>)],
    member_of: &[Vec<usize>],
    weight: &[f64],
) -> VertexSet {
    let mut hit = vec![false; ranges.len()];
    let mut gain: Vec<usize> = member_of.iter().map(Vec::len).collect();
    let mut left = ranges.len();
    let mut chosen = Vec::new();
    while left > 0 {
        let best = (0..gain.len())
            .filter(|&v| gain[v] > 0)
            .min_by(|&a, &b| {
                gain[b]
                    .cmp(&gain[a])
                    .then(weight[b].total_cmp(&weight[a]))
                    .then(a.cmp(&b))
            })
            .expect("an unhit range always has a member");
        chosen.push(best);
        for &ri in &member_of[best] {
            if !hit[ri] {
                hit[ri] = true;
                left -= 1;
                for &v in &ranges[ri].1 {
                    gain[v] -= 1;
                }
            }
        }
    }
    chosen.into()
}

/// Drops members whose removal keeps every target dominated, highest id first.
fn prune_redundant(inst: &DominationInstance<'_>, d: VertexSet) -> Result<VertexSet> {
    let mut current = d;
    for v in current.clone().iter().rev() {
        let mut trial = current.clone();
        trial.remove(v);
        if is_dominator(inst, &trial)? {
            current = trial;
        }
    }
    Ok(current)
}

/// Iterative-reweighting hitting set over `{N_r[z] : z ∈ Z}`.
///
/// With a size guess `c` (starting at the scattered lower bound), each round
/// takes the ranges of weight at least `W / (2c)`, hits them with the greedy
/// cover above, and accepts the result if it dominates `Z`. Otherwise the
/// weights in the range of the lowest-id undominated `z` are doubled. After
/// `ceil(4c log2(2n/c))` failed rounds the guess doubles. If `max_rounds`
/// runs out, the plain greedy cover of all ranges is returned.
pub fn bg_approx_dominator(
    inst: &DominationInstance<'_>,
    max_rounds: usize,
) -> Result<DominatorResult> {
    let n = inst.g.n();
    let witness = greedy_scattered_lower_bound(inst);
    if inst.z.is_empty() {
        return Ok(DominatorResult {
            dominator: VertexSet::new(),
            optimal: true,
            lower_bound_witness: Some(witness),
        });
    }
    let ranges: Vec<(Vertex, Vec<Vertex>)> = inst
        .z
        .iter()
        .map(|z| {
            (
                z,
                Search::default()
                    .run(inst.g, [z], inst.r)
                    .domain()
                    .into_vec(),
            )
        })
        .collect();
    let range_of: Vec<Option<usize>> = {
        let mut idx = vec![None; n];
        for (i, (z, _)) in ranges.iter().enumerate() {
            idx[*z] = Some(i);
        }
        idx
    };
    let mut weight = vec![1.0f64; n];
    let mut guess = witness.len().max(1);
    let mut phase_left = phase_length(guess, n);
    for _ in 0..max_rounds {
        let total: f64 = weight.iter().sum();
        let eps = 1.0 / (2.0 * guess as f64);
        let heavy: Vec<(Vertex, Vec<Vertex>)> = ranges
            .iter()
            .filter(|(_, members)| members.iter().map(|&v| weight[v]).sum::<f64>() >= eps * total)
            .cloned()
            .collect();
        let mut member_of = vec![Vec::new(); n];
        for (i, (_, members)) in heavy.iter().enumerate() {
            for &v in members {
                member_of[v].push(i);
            }
        }
        let net = greedy_hitting_set(&heavy, &member_of, &weight);
        let covered = bfs_from_set(inst.g, &net, inst.r)?;
        match inst.z.iter().find(|&z| !covered.contains(z)) {
            None => {
                return Ok(DominatorResult {
                    dominator: prune_redundant(inst, net)?,
                    optimal: false,
                    lower_bound_witness: Some(witness),
                })
            }
            Some(z) => {
                let ri = range_of[z].expect("every dominatee has a range");
                for &v in &ranges[ri].1 {
                    weight[v] *= 2.0;
                }
            }
        }
        phase_left -= 1;
        if phase_left == 0 {
            guess = (guess * 2).min(n.max(1));
            phase_left = phase_length(guess, n);
            weight.iter_mut().for_each(|w| *w = 1.0);
        }
    }
    let mut member_of = vec![Vec::new(); n];
    for (i, (_, members)) in ranges.iter().enumerate() {
        for &v in members {
            member_of[v].push(i);
        }
    }
    let fallback = greedy_hitting_set(&ranges, &member_of, &vec![1.0; n]);
    Ok(DominatorResult {
        dominator: prune_redundant(inst, fallback)?,
        optimal: false,
        lower_bound_witness: Some(witness),
    })
}

fn phase_length(guess: usize, n: usize) -> usize {
    let c = guess.max(1) as f64;
    let ratio = (2.0 * n.max(1) as f64 / c).max(2.0);
    (4.0 * c * ratio.log2()).ceil() as usize
}

pub const DEFAULT_BG_ROUNDS: usize = 256;

/// Plain greedy set cover over `{N_r[z] : z ∈ Z}`.
pub fn greedy_dominator(inst: &DominationInstance<'_>) -> Result<DominatorResult> {
    let n = inst.g.n();
    let ranges: Vec<(Vertex, Vec<Vertex>)> = inst
        .z
        .iter()
        .map(|z| {
            (
                z,
                Search::default()
                    .run(inst.g, [z], inst.r)
                    .domain()
                    .into_vec(),
            )
        })
        .collect();
    let mut member_of = vec![Vec::new(); n];
    for (i, (_, members)) in ranges.iter().enumerate() {
        for &v in members {
            member_of[v].push(i);
        }
    }
    Ok(DominatorResult {
        dominator: greedy_hitting_set(&ranges, &member_of, &vec![1.0; n]),
        optimal: false,
        lower_bound_witness: Some(greedy_scattered_lower_bound(inst)),
    })
}
