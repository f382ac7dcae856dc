//! Bench plans and their CSV reports.
//!
//! A plan is a list of `key=value` blocks separated by blank lines:
//!
//! ```text
//! # spider sweep
//! family=spider:8:2
//! r=1
//! k=8
//!
//! family=random:40:3:7
//! r=2
//! k=5
//! target=10
//! ```
//!
//! Keys: `family`, `r`, `k` (required); `target`, `t`, `smax`, `seed`, `verify`.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::domset::DominationInstance;
use crate::error::{Error, Result};
use crate::generators::{generate, GenSpec};
use crate::graph::VertexSet;
use crate::kernel::{kernelize, KernelConfig, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanEntry {
    pub spec: GenSpec,
    pub r: u32,
    pub k: usize,
    pub target: Option<usize>,
    pub closure_threshold: Option<usize>,
    pub separator_cap: Option<usize>,
    pub verify: bool,
    /// First line of the block, for error messages.
    pub line: usize,
}

pub fn parse_plan(text: &str) -> Result<Vec<PlanEntry>> {
    let mut entries = Vec::new();
    let mut block: Vec<(usize, &str, &str)> = Vec::new();
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    for (lineno, raw) in lines.chain(std::iter::once((0, ""))) {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            // Comment-only lines do not end a block.
            if raw.trim().is_empty() && !block.is_empty() {
                entries.push(parse_block(&block)?);
                block.clear();
            }
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("expected key=value, found {body:?}"),
        })?;
        block.push((lineno, key.trim(), value.trim()));
    }
    Ok(entries)
}

fn parse_block(block: &[(usize, &str, &str)]) -> Result<PlanEntry> {
    let first = block[0].0;
    let mut spec: Option<GenSpec> = None;
    let mut seed: Option<u64> = None;
    let (mut r, mut k) = (None, None);
    let (mut target, mut t, mut smax) = (None, None, None);
    let mut verify = false;
    for &(line, key, value) in block {
        let num = |v: &str| {
            v.parse::<u64>().map_err(|_| Error::Parse {
                line,
                msg: format!("{key} expects an integer, found {v:?}"),
            })
        };
        match key {
            "family" => {
                spec = Some(value.parse().map_err(|e: Error| Error::Parse {
                    line,
                    msg: e.to_string(),
                })?)
            }
            "r" => r = Some(num(value)? as u32),
            "k" => k = Some(num(value)? as usize),
            "target" => target = Some(num(value)? as usize),
            "t" => t = Some(num(value)? as usize),
            "smax" => smax = Some(num(value)? as usize),
            "seed" => seed = Some(num(value)?),
            "verify" => {
                verify = value.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("verify expects true/false, found {value:?}"),
                })?
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown key {key:?}"),
                })
            }
        }
    }
    let missing = |what: &str| Error::Parse {
        line: first,
        msg: format!("block is missing {what}"),
    };
    let mut spec = spec.ok_or_else(|| missing("family"))?;
    if let Some(seed) = seed {
        spec = spec.with_seed(seed);
    }
    let r = r.ok_or_else(|| missing("r"))?;
    if r == 0 {
        return Err(Error::Parse {
            line: first,
            msg: "r must be at least 1".into(),
        });
    }
    Ok(PlanEntry {
        spec,
        r,
        k: k.ok_or_else(|| missing("k"))?,
        target,
        closure_threshold: t,
        separator_cap: smax,
        verify,
        line: first,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub r: u32,
    pub k: usize,
    pub final_core: usize,
    pub kernel_n: Option<usize>,
    pub rejected: bool,
    pub witness: Option<usize>,
    pub wall_ms: u128,
    pub seed: Option<u64>,
}

pub const BENCH_HEADER: &str = "family,n,m,r,k,z_final,kernel_n,rejected,witness,wall_ms,seed";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.m,
            self.r,
            self.k,
            self.final_core,
            opt(self.kernel_n.map(|v| v.to_string())),
            self.rejected,
            opt(self.witness.map(|v| v.to_string())),
            self.wall_ms,
            opt(self.seed.map(|v| v.to_string())),
        )
    }
}

pub fn run_entry(entry: &PlanEntry) -> Result<BenchRow> {
    let g = generate(&entry.spec)?;
    let z = VertexSet::range(g.n());
    let inst = DominationInstance::new(&g, &z, entry.r, entry.k)?;
    let cfg = KernelConfig {
        target: entry.target,
        closure_threshold: entry.closure_threshold,
        separator_cap: entry.separator_cap,
        verify: entry.verify,
        ..KernelConfig::default()
    };
    let start = Instant::now();
    let res = kernelize(&inst, &cfg)?;
    let wall_ms = start.elapsed().as_millis();
    let (kernel_n, witness) = match &res.verdict {
        Verdict::Kernel { g_prime, .. } => (Some(g_prime.n()), None),
        Verdict::Rejected { witness, .. } => (None, Some(witness.len())),
    };
    Ok(BenchRow {
        family: entry.spec.to_string(),
        n: g.n(),
        m: g.m(),
        r: entry.r,
        k: entry.k,
        final_core: res.stats.final_core,
        kernel_n,
        rejected: res.is_rejected(),
        witness,
        wall_ms,
        seed: entry.spec.seed(),
    })
}

/// Runs every entry on `workers` threads; rows come back in plan order.
pub fn run_bench(plan: &[PlanEntry], workers: usize) -> Result<Vec<BenchRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?;
    pool.install(|| plan.par_iter().map(run_entry).collect())
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for row in rows {
        writeln!(out, "{}", row.to_csv()).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPIDERS: &str = "\
# three spiders
family=spider:3:2
r=1
k=3

family=spider:4:2
r=1
k=4
target=4

family=spider:5:2
r=1
k=5
";

    #[test]
    fn plan_of_three_spiders() {
        let plan = parse_plan(SPIDERS).unwrap();
        assert_eq!(plan.len(), 3);
        assert_eq!(plan[1].target, Some(4));
        assert_eq!(plan[2].line, 11);
        let rows = run_bench(&plan, 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].family, "spider:3:2");
        assert_eq!(rows[2].n, 11);
        let csv = rows_to_csv(&rows);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with(BENCH_HEADER));
    }

    #[test]
    fn rejection_row_schema() {
        let plan = parse_plan("family=path:20\nr=1\nk=2\n").unwrap();
        let row = run_entry(&plan[0]).unwrap();
        assert!(row.rejected);
        assert_eq!(row.kernel_n, None);
        assert!(row.witness.unwrap() > 2);
        let cells: Vec<String> = row.to_csv().split(',').map(str::to_owned).collect();
        assert_eq!(cells[6], "");
        assert_eq!(cells[7], "true");
        assert!(!cells[8].is_empty());
    }

    #[test]
    fn grid_sweep_is_monotone() {
        let text = (4..=8)
            .step_by(2)
            .map(|w| format!("family=grid:{w}:{w}\nr=1\nk=40\n"))
            .collect::<Vec<_>>()
            .join("\n");
        let rows = run_bench(&parse_plan(&text).unwrap(), 1).unwrap();
        let ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![16, 36, 64]);
    }

    #[test]
    fn seed_override_and_errors() {
        let plan = parse_plan("family=random:20:3:1\nseed=9\nr=1\nk=3\n").unwrap();
        assert_eq!(plan[0].spec.seed(), Some(9));
        let err = parse_plan("family=path:3\nr=1\n\nfamily=path:4\nr=x\nk=1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_plan("family=path:4\nr=1\nk=1\nbogus=2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_plan("family=path:4\nr=1\nk\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
