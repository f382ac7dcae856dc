use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use domkernel::domset::{
    bg_approx_dominator, exact_min_dominator_with, greedy_dominator, is_dominator,
    DEFAULT_BG_ROUNDS,
};
use domkernel::generators::{generate, random_subset};
use domkernel::graph::parse_vertex_set;
use domkernel::harness::{parse_plan, rows_to_csv, run_bench};
use domkernel::kernel::{annotate_to_plain, kernelize};
use domkernel::orderings::{degeneracy_order, wcol_exact, wcol_of_order};
use domkernel::profiles::{count_metric, vc_dimension, DEFAULT_DISTINCT_CAP, MAX_VC_CAP};
use domkernel::sparsity::{
    default_closure_threshold, default_separator_cap, quasi_wide_extract, r_closure,
};
use domkernel::{
    DominationInstance, Error, GenSpec, Graph, KernelConfig, Metric, OracleCaps, SetFamily,
    Verdict, VertexSet,
};

#[derive(Parser)]
#[command(
    name = "domkernel",
    version,
    about = "Distance-r dominating set kernelization for sparse graphs"
)]
struct Cli {
    /// Seed for random generators and random vertex sets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for `bench`.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Check every core reduction with the exhaustive oracle.
    #[arg(long, global = true)]
    verify: bool,
    /// Vertex cap of the exact dominator oracle.
    #[arg(long, global = true, default_value_t = OracleCaps::default().exact)]
    exact_cap: usize,
    /// Vertex cap of the minimum dominator enumeration.
    #[arg(long, global = true, default_value_t = OracleCaps::default().enumerate)]
    enumerate_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge-list file; standard input when neither this nor --gen is given.
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generator spec such as `grid:8:8` or `random:100:3:7`.
    #[arg(long)]
    gen: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph as an edge list.
    Gen {
        /// Generator spec such as `spider:8:2`.
        spec: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Count distinct traces or profiles on a vertex set.
    Complexity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// File of vertex ids, `all`, or `random:<size>[:<seed>]`.
        #[arg(long)]
        set: String,
        #[arg(long, value_enum)]
        metric: MetricArg,
    },
    /// Weak coloring number of the degeneracy order, optionally the exact value.
    Wcol {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// Also minimise over all orders (at most 9 vertices).
        #[arg(long)]
        exact: bool,
    },
    /// Separator and scattered set for a vertex set.
    Qw {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// Wanted size of the scattered set.
        #[arg(long)]
        m: usize,
        /// Largest separator; defaults to 10 r.
        #[arg(long)]
        smax: Option<usize>,
        /// File of vertex ids, `all`, or `random:<size>[:<seed>]`.
        #[arg(long, default_value = "all")]
        set: String,
    },
    /// Grow a vertex set until every outside vertex has a small projection.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// Projection threshold; defaults to a density-based value.
        #[arg(long)]
        t: Option<usize>,
        /// File of vertex ids, `all`, or `random:<size>[:<seed>]`.
        #[arg(long)]
        set: String,
    },
    /// Compute a (Z, r)-dominator.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// Also report whether the found size is at most k.
        #[arg(long)]
        k: Option<usize>,
        /// File of dominatees or `all`.
        #[arg(long, default_value = "all")]
        z: String,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Reduce an instance to a kernel.
    Kernelize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        k: usize,
        /// Stop shrinking the core at this size; defaults to 20 k ceil(log2(k + 2)).
        #[arg(long)]
        target: Option<usize>,
        /// Closure threshold.
        #[arg(long)]
        t: Option<usize>,
        /// Separator cap.
        #[arg(long)]
        smax: Option<usize>,
        /// Reported in the stats only.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Kernel edge list; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Kernel dominatees; defaults to `<output>.z` when --output is given.
        #[arg(long)]
        z_output: Option<PathBuf>,
        /// Per-removal stats CSV.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Run a plan file and print one CSV row per entry.
    Bench {
        plan: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Turn an annotated instance (G, Z) into a plain one with one extra dominator.
    Gadget {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// File of dominatees or `all`.
        #[arg(long)]
        z: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Nu,
    Nuhat,
    Mu,
    Muhat,
    Vc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Greedy,
    Bg,
}

struct Loaded {
    name: String,
    graph: Graph,
}

fn load(input: &Input, seed: Option<u64>) -> domkernel::Result<Loaded> {
    if let Some(spec) = &input.gen {
        let mut spec: GenSpec = spec.parse()?;
        if let Some(seed) = seed {
            spec = spec.with_seed(seed);
        }
        return Ok(Loaded {
            name: spec.to_string(),
            graph: generate(&spec)?,
        });
    }
    match &input.input {
        Some(path) => Ok(Loaded {
            name: path.display().to_string(),
            graph: Graph::read_edge_list(BufReader::new(File::open(path)?))?,
        }),
        None => Ok(Loaded {
            name: "stdin".into(),
            graph: Graph::read_edge_list(io::stdin().lock())?,
        }),
    }
}

fn vertex_set(arg: &str, g: &Graph, seed: Option<u64>) -> domkernel::Result<VertexSet> {
    if arg == "all" {
        return Ok(VertexSet::range(g.n()));
    }
    if let Some(rest) = arg.strip_prefix("random:") {
        let bad = || Error::InvalidParam(format!("expected random:<size>[:<seed>], found {arg:?}"));
        let mut parts = rest.split(':');
        let size = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let seed = match parts.next() {
            Some(s) => s.parse().map_err(|_| bad())?,
            None => seed.unwrap_or(0),
        };
        return random_subset(g.n(), size, seed);
    }
    let set = parse_vertex_set(BufReader::new(File::open(arg)?))?;
    set.check_within(g.n())?;
    Ok(set)
}

fn sink(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn radius(r: u32) -> domkernel::Result<u32> {
    if r == 0 {
        return Err(Error::InvalidParam("radius must be at least 1".into()));
    }
    Ok(r)
}

fn run(cli: Cli) -> domkernel::Result<()> {
    let caps = OracleCaps {
        exact: cli.exact_cap,
        enumerate: cli.enumerate_cap,
    };
    let seed = cli.seed;
    match cli.command {
        Command::Gen { spec, output } => {
            let mut spec: GenSpec = spec.parse()?;
            if let Some(seed) = seed {
                spec = spec.with_seed(seed);
            }
            let mut out = sink(output.as_ref())?;
            generate(&spec)?.write_edge_list(&mut out)?;
            out.flush()?;
        }
        Command::Complexity {
            input,
            r,
            set,
            metric,
        } => {
            let Loaded { name, graph: g } = load(&input, seed)?;
            let a = vertex_set(&set, &g, seed)?;
            let (label, value) = match metric {
                MetricArg::Vc => {
                    let family = SetFamily::traces_on(&g, &a, r)?;
                    ("vc", vc_dimension(&family, MAX_VC_CAP)?.to_string())
                }
                other => {
                    let (label, m) = match other {
                        MetricArg::Nu => ("nu", Metric::Nu),
                        MetricArg::Nuhat => ("nuhat", Metric::NuHat),
                        MetricArg::Mu => ("mu", Metric::Mu),
                        _ => ("muhat", Metric::MuHat),
                    };
                    (
                        label,
                        count_metric(&g, &a, r, m, DEFAULT_DISTINCT_CAP)?.to_string(),
                    )
                }
            };
            println!("graph,n,m,|A|,r,metric,value");
            println!("{name},{},{},{},{r},{label},{value}", g.n(), g.m(), a.len());
        }
        Command::Wcol { input, r, exact } => {
            let Loaded { name, graph: g } = load(&input, seed)?;
            let heuristic = wcol_of_order(&g, &degeneracy_order(&g), r)?;
            let exact = if exact {
                wcol_exact(&g, r)?.0.to_string()
            } else {
                String::new()
            };
            println!("graph,r,heuristic_value,exact_value");
            println!("{name},{r},{heuristic},{exact}");
        }
        Command::Qw {
            input,
            r,
            m,
            smax,
            set,
        } => {
            let Loaded { name, graph: g } = load(&input, seed)?;
            let a = vertex_set(&set, &g, seed)?;
            let s_max = smax.unwrap_or_else(|| default_separator_cap(r));
            let out = quasi_wide_extract(&g, &a, radius(r)?, m, s_max)?;
            let res = out.result();
            println!("graph,n,|A|,r,m,smax,|S|,|B|,rounds,found");
            println!(
                "{name},{},{},{r},{m},{s_max},{},{},{},{}",
                g.n(),
                a.len(),
                res.separator.len(),
                res.scattered.len(),
                res.rounds,
                out.is_found()
            );
        }
        Command::Closure { input, r, t, set } => {
            let Loaded { name, graph: g } = load(&input, seed)?;
            let x = vertex_set(&set, &g, seed)?;
            let t = t.unwrap_or_else(|| default_closure_threshold(&g));
            let res = r_closure(&g, &x, radius(r)?, t)?;
            println!("graph,n,|X|,r,t,|Y|,added");
            println!(
                "{name},{},{},{r},{t},{},{}",
                g.n(),
                x.len(),
                res.closure.len(),
                res.added.len()
            );
        }
        Command::Solve {
            input,
            r,
            k,
            z,
            method,
        } => {
            let Loaded { graph: g, .. } = load(&input, seed)?;
            let z = vertex_set(&z, &g, seed)?;
            let inst = DominationInstance::new(&g, &z, r, k.unwrap_or(0))?;
            let res = match method {
                Method::Exact => exact_min_dominator_with(&inst, caps)?,
                Method::Greedy => greedy_dominator(&inst)?,
                Method::Bg => bg_approx_dominator(&inst, DEFAULT_BG_ROUNDS)?,
            };
            let valid = is_dominator(&inst, &res.dominator)?;
            println!(
                "size={} valid={valid} optimal={}",
                res.dominator.len(),
                res.optimal
            );
            if let Some(k) = k {
                let answer = if res.dominator.len() <= k {
                    "yes"
                } else if res.optimal {
                    "no"
                } else {
                    "unknown"
                };
                println!("k={k} answer={answer}");
            }
        }
        Command::Kernelize {
            input,
            r,
            k,
            target,
            t,
            smax,
            epsilon,
            output,
            z_output,
            stats,
        } => {
            let Loaded { graph: g, .. } = load(&input, seed)?;
            let all = VertexSet::range(g.n());
            let inst = DominationInstance::new(&g, &all, r, k)?;
            let cfg = KernelConfig {
                target,
                closure_threshold: t,
                separator_cap: smax,
                verify: cli.verify,
                caps,
                ..KernelConfig::default()
            };
            let res = kernelize(&inst, &cfg)?;
            if let Some(path) = &stats {
                std::fs::write(path, res.stats_csv())?;
            }
            let s = &res.stats;
            let label = epsilon.map(|e| format!(" epsilon={e}")).unwrap_or_default();
            match &res.verdict {
                Verdict::Kernel {
                    g_prime, z_prime, ..
                } => {
                    let mut out = sink(output.as_ref())?;
                    g_prime.write_edge_list(&mut out)?;
                    out.flush()?;
                    let z_path =
                        z_output.or_else(|| output.as_ref().map(|p| p.with_extension("z")));
                    if let Some(path) = z_path {
                        let ids: Vec<String> = z_prime.iter().map(|v| v.to_string()).collect();
                        std::fs::write(path, ids.join("\n") + "\n")?;
                    }
                    eprintln!(
                        "kernel n={} m={} core={} removals={} target={}{label}",
                        g_prime.n(),
                        g_prime.m(),
                        s.final_core,
                        s.removals,
                        s.core_target
                    );
                }
                Verdict::Rejected { k, witness } => {
                    println!("rejected k={k} witness={witness}");
                    eprintln!("core={} removals={}{label}", s.final_core, s.removals);
                }
            }
        }
        Command::Bench { plan, output } => {
            let text = std::fs::read_to_string(&plan)?;
            let mut entries = parse_plan(&text)?;
            if cli.verify {
                entries.iter_mut().for_each(|e| e.verify = true);
            }
            let rows = run_bench(&entries, cli.workers)?;
            let mut out = sink(output.as_ref())?;
            out.write_all(rows_to_csv(&rows).as_bytes())?;
            out.flush()?;
        }
        Command::Gadget {
            input,
            r,
            z,
            output,
        } => {
            let Loaded { graph: g, .. } = load(&input, seed)?;
            let z = vertex_set(&z, &g, seed)?;
            let plain = annotate_to_plain(&g, &z, r)?;
            let mut out = sink(output.as_ref())?;
            plain.write_edge_list(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        Error::Verification(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
