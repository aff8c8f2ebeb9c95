use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropabel::divisor::{
    is_quasistable_with, linearly_equivalent, oracle_quasistable_class, quasistable_rep_with, OracleOptions,
    QsOptions,
};
use tropabel::hemisphere::{convert_deg2_in, enumerate_hemispheres, family_f_in};
use tropabel::hyper::find_witnesses;
use tropabel::json as j;
use tropabel::planner::{blowup_plan, classify_node_pair_with, tails, Verdict};
use tropabel::tropical::{region_constancy_with, Abel2Solver, Region, DEFAULT_DENOMINATORS};
use tropabel::{Divisor, Error, ErrorClass, HemisphereIndex, MultiGraph, Polarization, Result};

#[derive(Parser)]
#[command(name = "tropabel", version, about = "Quasistable divisors, hemispheres and degree-2 Abel maps on dual graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Graph JSON file, or "-" for stdin.
    #[arg(long, global = true)]
    graph: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Quantify quasistability only over subsets inducing connected subgraphs.
    #[arg(long, global = true)]
    connected_subsets_only: bool,
    /// Candidate limit for the brute-force oracle.
    #[arg(long, global = true, default_value_t = 20_000_000)]
    max_candidates: u64,
    /// Step cap for the greedy quasistable search (default 10·|V|·|E|).
    #[arg(long, global = true)]
    max_iterations: Option<usize>,
    /// Sample denominators for region tests, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    denominators: Option<Vec<i64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Quasistable representative of a divisor class.
    Qs {
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        v0: String,
        /// Polarization JSON (inline or path); zero by default.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Closed-form quasistable representative of 2·v0 − v1 − v2.
    Convert {
        #[arg(long)]
        v0: String,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Hemispheres, optionally with δ at most a bound.
    Hemispheres {
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Hemispheres avoiding v0 with δ in a given set.
    Tails {
        #[arg(long)]
        v0: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        deltas: Vec<usize>,
    },
    /// Global blowup plan for the degree-2 Abel map.
    Plan {
        #[arg(long)]
        v0: String,
    },
    /// Local behaviour of the degree-2 Abel map at a pair of nodes.
    Classify {
        #[arg(long)]
        v0: String,
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
    },
    /// Quasistable divisor equivalent to D† − p1 − p2 on the tropical curve.
    Abel2 {
        #[arg(long)]
        v0: String,
        /// Point JSON, e.g. {"edge":"e1","t":"1/3"} or {"vertex":"a"}.
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        /// D† (inline or path); 2·v0 by default.
        #[arg(long)]
        divisor: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Constancy of the combinatorial type over a region of an edge pair square.
    Region {
        #[arg(long)]
        v0: String,
        /// Edge id, optionally suffixed ":rev".
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        #[arg(long)]
        region: String,
        #[arg(long)]
        divisor: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Divisor-class collisions among pairs of points.
    HyperScan,
    /// Brute-force enumeration of the quasistable divisors in a class.
    Oracle {
        #[arg(long)]
        divisor: String,
        #[arg(long)]
        v0: String,
        #[arg(long)]
        mu: Option<String>,
    },
}

fn read_source(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Input(format!("cannot read {arg}: {e}")))
    }
}

/// Inline JSON when the argument starts with `{`, otherwise a file path.
fn inline_or_file(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read_source(arg)
    }
}

fn polarization(g: &MultiGraph, mu: &Option<String>) -> Result<Polarization> {
    match mu {
        Some(text) => j::parse_polarization(g, &inline_or_file(text)?),
        None => Ok(Polarization::zero(g.vertex_count())),
    }
}

fn d_dagger(g: &MultiGraph, v0: usize, divisor: &Option<String>) -> Result<Divisor> {
    match divisor {
        Some(text) => j::parse_divisor(g, &inline_or_file(text)?),
        None => {
            let mut d = Divisor::zero(g.vertex_count());
            d.add_at(v0, 2);
            Ok(d)
        }
    }
}

fn run(cli: &Cli) -> Result<Value> {
    let c = &cli.common;
    let graph_arg = c.graph.as_deref().ok_or_else(|| Error::Input("--graph is required".into()))?;
    let denominators = c.denominators.clone().unwrap_or_else(|| DEFAULT_DENOMINATORS.to_vec());
    tropabel::tropical::sample_coordinates(&denominators)?;
    let g = j::parse_graph(&read_source(graph_arg)?)?;
    let vertex = |id: &str| g.vertex(id);
    let qs_opts = QsOptions {
        connected_only: c.connected_subsets_only,
        max_iterations: c.max_iterations,
        oracle: OracleOptions { max_candidates: c.max_candidates },
    };

    let report = match &cli.command {
        Command::Qs { divisor, v0, mu } => {
            let d = j::parse_divisor(&g, &inline_or_file(divisor)?)?;
            let (v0, mu) = (vertex(v0)?, polarization(&g, mu)?);
            let q = quasistable_rep_with(&g, &d, v0, &mu, &qs_opts)?;
            if !is_quasistable_with(&g, &q, v0, &mu, c.connected_subsets_only)? || !linearly_equivalent(&g, &q, &d, v0) {
                return Err(Error::Internal(format!("representative {:?} failed verification", q.to_named(&g))));
            }
            j::envelope(json!({"values": j::divisor_values(&g, &q)}), true)
        }
        Command::Convert { v0, v1, v2 } => {
            let (v0, v1, v2) = (vertex(v0)?, vertex(v1)?, vertex(v2)?);
            let index = HemisphereIndex::new(&g)?;
            let family = family_f_in(&index, &g, v0, v1, v2)?;
            let d = convert_deg2_in(&index, &g, v0, v1, v2)?;
            j::envelope(json!({"values": j::divisor_values(&g, &d), "family": j::family_f_json(&g, &family)}), true)
        }
        Command::Hemispheres { delta } => {
            let hs = enumerate_hemispheres(&g, *delta)?;
            let list: Vec<Value> = hs.iter().map(|h| j::hemisphere_json(&g, h)).collect();
            j::envelope(json!({"hemispheres": list}), true)
        }
        Command::Tails { v0, deltas } => {
            let hs = tails(&g, vertex(v0)?, deltas)?;
            let list: Vec<Value> = hs.iter().map(|h| j::hemisphere_json(&g, h)).collect();
            j::envelope(json!({"tails": list}), true)
        }
        Command::Plan { v0 } => j::envelope(j::plan_json(&g, &blowup_plan(&g, vertex(v0)?)?), true),
        Command::Classify { v0, e1, e2 } => {
            let solver = Abel2Solver::standard(&g, vertex(v0)?)?;
            let index = HemisphereIndex::new(&g)?;
            let result = classify_node_pair_with(&solver, &index, g.edge(e1)?, g.edge(e2)?, &denominators)?;
            let resolved = result.verdict != Verdict::Unresolved;
            j::envelope(j::classification_json(&g, &result), resolved)
        }
        Command::Abel2 { v0, p1, p2, divisor, mu } => {
            let v0 = vertex(v0)?;
            let solver = Abel2Solver::new(&g, v0, d_dagger(&g, v0, divisor)?, polarization(&g, mu)?)?;
            let (p1, p2) = (j::parse_point_text(&g, p1)?, j::parse_point_text(&g, p2)?);
            let value = solver.evaluate(&p1, &p2)?;
            let mut out = j::tropical_divisor_json(&g, &value.divisor);
            out["n"] = json!(value.n);
            out["retried"] = json!(value.retried);
            j::envelope(out, true)
        }
        Command::Region { v0, e1, e2, region, divisor, mu } => {
            let v0 = vertex(v0)?;
            let solver = Abel2Solver::new(&g, v0, d_dagger(&g, v0, divisor)?, polarization(&g, mu)?)?;
            let (o1, o2) = (j::parse_oriented_edge(&g, e1)?, j::parse_oriented_edge(&g, e2)?);
            let region: Region = region.parse()?;
            let rep = region_constancy_with(&solver, o1, o2, region, &denominators)?;
            j::envelope(j::constancy_json(&g, &rep), true)
        }
        Command::HyperScan => j::envelope(j::hyper_scan_json(&g, &find_witnesses(&g)?), true),
        Command::Oracle { divisor, v0, mu } => {
            let d = j::parse_divisor(&g, &inline_or_file(divisor)?)?;
            let q = oracle_quasistable_class(&g, &d, vertex(v0)?, &polarization(&g, mu)?, &qs_opts.oracle)?;
            j::envelope(json!({"values": j::divisor_values(&g, &q)}), true)
        }
    };
    Ok(report)
}

fn emit(path: &Option<PathBuf>, report: &Value) -> Result<()> {
    let text = format!("{report}\n");
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Input(format!("cannot write stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.common.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match run(&cli).and_then(|report| emit(&cli.common.output, &report)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let class = e.class();
            let err = json!({"v": j::SCHEMA_VERSION, "error": {"kind": e.tag(), "message": e.to_string()}});
            eprintln!("{err}");
            ExitCode::from(match class {
                ErrorClass::Input => 2,
                ErrorClass::Guard => 3,
                ErrorClass::Invariant => 4,
            })
        }
    }
}
