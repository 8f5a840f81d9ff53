//! Command-line driver: load a network, run a query, print one JSON
//! result per query. Exit codes: 0 success, 1 validation error,
//! 2 infeasible, 3 timeout.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use scsh::heuristic::scsh_heu;
use scsh::hin::{Hin, Schema};
use scsh::metapath::{build_pgraph, enumerate_pstars, MetaPath, PGraph, PStar};
use scsh::metrics::{community_pathsim, ppair_density};
use scsh::oracle::{brute_force_opt, gadget_from_graph, random_hin, RandomHinParams};
use scsh::search::{solve, Algo, BoundMethod, SearchStats, SolverOptions};

#[derive(Parser)]
#[command(name = "scsh", version, about = "Size-constrained community search over typed networks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct DatasetArgs {
    /// Node table (TSV: id, type).
    #[arg(long)]
    nodes: PathBuf,
    /// Edge table (TSV: src, dst, label).
    #[arg(long)]
    edges: PathBuf,
    /// Schema (JSON).
    #[arg(long)]
    schema: PathBuf,
}

#[derive(Args, Clone)]
struct QueryArgs {
    /// Symmetric meta-path, e.g. "A-P-A" or "A[write]P[written_by]A".
    #[arg(long)]
    metapath: String,
    /// Query node id.
    #[arg(long)]
    query_node: String,
    /// Community size.
    #[arg(long)]
    size: usize,
}

#[derive(Args, Clone, Default)]
struct SolverArgs {
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    no_rule2: bool,
    #[arg(long)]
    no_rule3: bool,
    #[arg(long)]
    no_rule4: bool,
    #[arg(long)]
    no_dominance: bool,
    #[arg(long)]
    no_ordering: bool,
    #[arg(long)]
    no_heuristic: bool,
    /// Comma-separated bound methods to enable
    /// (esg, esg_grouped, nsg, baseline_u1, baseline_u2, size).
    #[arg(long)]
    bounds: Option<String>,
    /// Run top-level branches on multiple threads.
    #[arg(long)]
    parallel: bool,
    /// Seed for any randomised components.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a query with an exact solver (or heu/oracle via --algo).
    Solve {
        #[command(flatten)]
        data: DatasetArgs,
        #[command(flatten)]
        query: QueryArgs,
        /// nsg, esg, heu, or oracle.
        #[arg(long, default_value = "nsg")]
        algo: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run the seed-and-merge heuristic only.
    Heuristic {
        #[command(flatten)]
        data: DatasetArgs,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Run the brute-force reference solver.
    Oracle {
        #[command(flatten)]
        data: DatasetArgs,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Run a JSONL query file and emit CSV with aggregate means.
    Bench {
        #[command(flatten)]
        data: DatasetArgs,
        /// JSONL file, one query spec per line.
        #[arg(long)]
        queries: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Generate a fixture dataset.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Export the induced homogeneous graph as edge TSV.
    Pgraph {
        #[command(flatten)]
        data: DatasetArgs,
        #[arg(long)]
        metapath: String,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Seeded random layered network.
    Random {
        #[arg(long, default_value_t = 40)]
        targets: usize,
        #[arg(long, default_value_t = 25)]
        centers: usize,
        #[arg(long, default_value_t = 0.1)]
        attach_prob: f64,
        #[arg(long, default_value_t = 0)]
        extra_layers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving nodes.tsv, edges.tsv, schema.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Clique-hardness gadget from an explicit edge list.
    Gadget {
        /// Vertex count of the source graph.
        #[arg(long)]
        n: usize,
        /// Source edges as "0-1,1-2,0-2".
        #[arg(long)]
        edge_list: String,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Serialize)]
struct ResultRecord {
    community: Vec<String>,
    trussness: u32,
    density: f64,
    similarity: f64,
    runtime_ms: u64,
    optimal: bool,
    stats: SearchStats,
}

#[derive(Serialize)]
struct CliError {
    error: String,
    detail: String,
}

fn fail(kind: &str, detail: impl ToString) -> ExitCode {
    let e = CliError {
        error: kind.into(),
        detail: detail.to_string(),
    };
    eprintln!("{}", serde_json::to_string(&e).unwrap());
    ExitCode::from(1)
}

struct Loaded {
    hin: Hin,
    path: MetaPath,
    graph: PGraph,
    stars: Vec<PStar>,
}

fn load(data: &DatasetArgs, metapath: &str) -> Result<Loaded, (String, String)> {
    let read = |p: &PathBuf| {
        std::fs::read_to_string(p).map_err(|e| ("io".to_string(), format!("{}: {e}", p.display())))
    };
    let nodes = read(&data.nodes)?;
    let edges = read(&data.edges)?;
    let schema_text = read(&data.schema)?;
    let schema =
        Schema::from_json(&schema_text).map_err(|e| ("schema".to_string(), e.to_string()))?;
    let hin = scsh::load_hin(&nodes, &edges, &schema)
        .map_err(|e| ("dataset".to_string(), e.to_string()))?;
    let path = MetaPath::parse(metapath).map_err(|e| ("metapath".to_string(), e.to_string()))?;
    path.validate(hin.schema())
        .map_err(|e| ("metapath".to_string(), e.to_string()))?;
    let graph =
        build_pgraph(&hin, &path).map_err(|e| ("metapath".to_string(), e.to_string()))?;
    let stars = enumerate_pstars(&hin, &path, &graph, None)
        .map_err(|e| ("metapath".to_string(), e.to_string()))?;
    Ok(Loaded {
        hin,
        path,
        graph,
        stars,
    })
}

fn solver_options(algo: Algo, s: &SolverArgs) -> Result<SolverOptions, String> {
    let mut opts = SolverOptions {
        algo,
        enable_rule2: !s.no_rule2,
        enable_rule3: !s.no_rule3,
        enable_rule4: !s.no_rule4,
        enable_dominance: !s.no_dominance,
        enable_ordering: !s.no_ordering,
        enable_heuristic: !s.no_heuristic,
        parallel: s.parallel,
        ..Default::default()
    };
    if let Some(secs) = s.time_limit {
        if !(secs > 0.0) {
            return Err("time limit must be positive".into());
        }
        opts.time_limit = Duration::from_secs_f64(secs);
    }
    if let Some(list) = &s.bounds {
        let mut set = BTreeSet::new();
        for item in list.split(',').filter(|p| !p.is_empty()) {
            match BoundMethod::parse(item.trim()) {
                Some(b) => {
                    set.insert(b);
                }
                None => return Err(format!("unknown bound method: {item}")),
            }
        }
        opts.bounds = set;
    }
    Ok(opts)
}

fn record(
    loaded: &Loaded,
    community: Option<(BTreeSet<usize>, u32)>,
    runtime_ms: u64,
    optimal: bool,
    timed_out: bool,
    stats: SearchStats,
) -> Result<(ResultRecord, ExitCode), (String, String)> {
    let (names, trussness, density, similarity) = match community {
        Some((c, t)) => {
            let names: Vec<String> = c.iter().map(|&i| loaded.graph.labels[i].clone()).collect();
            let density = ppair_density(&loaded.graph, &c);
            let similarity = community_pathsim(&loaded.hin, &loaded.path, &loaded.graph, &c)
                .map_err(|e| ("metapath".to_string(), e.to_string()))?;
            (names, t, density, similarity)
        }
        None => (Vec::new(), 0, 0.0, 0.0),
    };
    let infeasible = names.is_empty();
    let rec = ResultRecord {
        community: names,
        trussness,
        density,
        similarity,
        runtime_ms,
        optimal,
        stats,
    };
    let code = if infeasible {
        ExitCode::from(2)
    } else if timed_out {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    };
    Ok((rec, code))
}

fn run_query(
    loaded: &Loaded,
    algo: &str,
    query_node: &str,
    size: usize,
    solver: &SolverArgs,
) -> Result<(ResultRecord, ExitCode), (String, String)> {
    let q = loaded
        .graph
        .index_of(query_node)
        .ok_or_else(|| {
            (
                "query".to_string(),
                format!("query node {query_node} is not a target node of the meta-path"),
            )
        })?;
    let started = Instant::now();
    match algo {
        "nsg" | "esg" => {
            let a = if algo == "nsg" { Algo::Nsg } else { Algo::Esg };
            let opts = solver_options(a, solver).map_err(|e| ("options".to_string(), e))?;
            let out = solve(&loaded.graph, &loaded.stars, q, size, &opts)
                .map_err(|e| ("query".to_string(), e.to_string()))?;
            let ms = started.elapsed().as_millis() as u64;
            record(
                loaded,
                out.incumbent.map(|i| (i.community, i.trussness)),
                ms,
                out.optimal,
                !out.optimal,
                out.stats,
            )
        }
        "heu" => {
            let opts = solver_options(Algo::Nsg, solver).map_err(|e| ("options".to_string(), e))?;
            let r = scsh_heu(&loaded.graph, &loaded.stars, q, size, opts.max_rounds);
            let ms = started.elapsed().as_millis() as u64;
            record(
                loaded,
                r.map(|h| (h.community, h.trussness)),
                ms,
                false,
                false,
                SearchStats::default(),
            )
        }
        "oracle" => {
            let r = brute_force_opt(&loaded.graph, q, size)
                .map_err(|e| ("oracle".to_string(), e.to_string()))?;
            let ms = started.elapsed().as_millis() as u64;
            record(
                loaded,
                r.map(|o| (o.community.into_iter().collect(), o.trussness)),
                ms,
                true,
                false,
                SearchStats::default(),
            )
        }
        other => Err(("options".to_string(), format!("unknown algo: {other}"))),
    }
}

#[derive(Deserialize)]
struct QuerySpec {
    metapath: String,
    q: String,
    s: usize,
    algo: String,
    #[serde(default)]
    options: SpecOptions,
}

#[derive(Deserialize, Default)]
struct SpecOptions {
    #[serde(default)]
    no_rule2: bool,
    #[serde(default)]
    no_rule3: bool,
    #[serde(default)]
    no_rule4: bool,
    #[serde(default)]
    no_dominance: bool,
    #[serde(default)]
    no_ordering: bool,
    #[serde(default)]
    no_heuristic: bool,
    #[serde(default)]
    bounds: Option<Vec<String>>,
    #[serde(default)]
    parallel: bool,
    #[serde(default)]
    time_limit: Option<f64>,
}

fn run_bench(data: &DatasetArgs, queries: &PathBuf, solver: &SolverArgs) -> ExitCode {
    let text = match std::fs::read_to_string(queries) {
        Ok(t) => t,
        Err(e) => return fail("io", format!("{}: {e}", queries.display())),
    };
    println!("query,algo,trussness,runtime_ms,states_expanded,pruned_by_bound,error");
    // Per-algo aggregates: (count, trussness sum, runtime sum).
    let mut agg: std::collections::BTreeMap<String, (u64, u64, u64)> = Default::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let spec: QuerySpec = match serde_json::from_str(line) {
            Ok(s) => s,
            Err(e) => {
                println!("{i},,,,,,\"bad spec: {e}\"");
                continue;
            }
        };
        let merged = SolverArgs {
            time_limit: spec.options.time_limit.or(solver.time_limit),
            no_rule2: spec.options.no_rule2 || solver.no_rule2,
            no_rule3: spec.options.no_rule3 || solver.no_rule3,
            no_rule4: spec.options.no_rule4 || solver.no_rule4,
            no_dominance: spec.options.no_dominance || solver.no_dominance,
            no_ordering: spec.options.no_ordering || solver.no_ordering,
            no_heuristic: spec.options.no_heuristic || solver.no_heuristic,
            bounds: spec
                .options
                .bounds
                .as_ref()
                .map(|b| b.join(","))
                .or_else(|| solver.bounds.clone()),
            parallel: spec.options.parallel || solver.parallel,
            seed: solver.seed,
        };
        let loaded = match load(data, &spec.metapath) {
            Ok(l) => l,
            Err((k, d)) => {
                println!("{i},{},,,,,\"{k}: {d}\"", spec.algo);
                continue;
            }
        };
        match run_query(&loaded, &spec.algo, &spec.q, spec.s, &merged) {
            Ok((rec, _)) => {
                println!(
                    "{i},{},{},{},{},{},",
                    spec.algo,
                    rec.trussness,
                    rec.runtime_ms,
                    rec.stats.states_expanded,
                    rec.stats.pruned_by_bound
                );
                let e = agg.entry(spec.algo.clone()).or_insert((0, 0, 0));
                e.0 += 1;
                e.1 += rec.trussness as u64;
                e.2 += rec.runtime_ms;
            }
            Err((k, d)) => {
                println!("{i},{},,,,,\"{k}: {d}\"", spec.algo);
            }
        }
    }
    for (algo, (n, t, ms)) in agg {
        println!(
            "mean,{algo},{:.3},{:.3},,,",
            t as f64 / n as f64,
            ms as f64 / n as f64
        );
    }
    ExitCode::SUCCESS
}

fn write_dataset(hin: &Hin, out_dir: &PathBuf) -> std::io::Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let (nodes, edges) = hin.to_tables();
    std::fs::write(out_dir.join("nodes.tsv"), nodes)?;
    std::fs::write(out_dir.join("edges.tsv"), edges)?;
    let schema = serde_json::to_string_pretty(hin.schema()).unwrap();
    std::fs::write(out_dir.join("schema.json"), schema)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Solve {
            data,
            query,
            algo,
            solver,
        } => match load(&data, &query.metapath)
            .and_then(|l| run_query(&l, &algo, &query.query_node, query.size, &solver))
        {
            Ok((rec, code)) => {
                println!("{}", serde_json::to_string(&rec).unwrap());
                code
            }
            Err((k, d)) => fail(&k, d),
        },
        Cmd::Heuristic { data, query } => match load(&data, &query.metapath).and_then(|l| {
            run_query(
                &l,
                "heu",
                &query.query_node,
                query.size,
                &SolverArgs::default(),
            )
        }) {
            Ok((rec, code)) => {
                println!("{}", serde_json::to_string(&rec).unwrap());
                code
            }
            Err((k, d)) => fail(&k, d),
        },
        Cmd::Oracle { data, query } => match load(&data, &query.metapath).and_then(|l| {
            run_query(
                &l,
                "oracle",
                &query.query_node,
                query.size,
                &SolverArgs::default(),
            )
        }) {
            Ok((rec, code)) => {
                println!("{}", serde_json::to_string(&rec).unwrap());
                code
            }
            Err((k, d)) => fail(&k, d),
        },
        Cmd::Bench {
            data,
            queries,
            solver,
        } => run_bench(&data, &queries, &solver),
        Cmd::Gen { kind } => match kind {
            GenKind::Random {
                targets,
                centers,
                attach_prob,
                extra_layers,
                seed,
                out_dir,
            } => {
                if !(0.0..=1.0).contains(&attach_prob) {
                    return fail("options", "attach-prob must lie in [0, 1]");
                }
                let params = RandomHinParams {
                    target_count: targets,
                    center_count: centers,
                    attach_prob,
                    extra_layers,
                };
                let hin = random_hin(&params, seed);
                match write_dataset(&hin, &out_dir) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail("io", e),
                }
            }
            GenKind::Gadget { n, edge_list, out_dir } => {
                let mut edges = Vec::new();
                for part in edge_list.split(',').filter(|p| !p.is_empty()) {
                    let Some((a, b)) = part.split_once('-') else {
                        return fail("options", format!("bad edge: {part}"));
                    };
                    match (a.trim().parse::<usize>(), b.trim().parse::<usize>()) {
                        (Ok(u), Ok(v)) if u < n && v < n && u != v => edges.push((u, v)),
                        _ => return fail("options", format!("bad edge: {part}")),
                    }
                }
                let (hin, _q) = gadget_from_graph(n, &edges);
                match write_dataset(&hin, &out_dir) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail("io", e),
                }
            }
        },
        Cmd::Pgraph { data, metapath } => match load(&data, &metapath) {
            Ok(l) => {
                print!("{}", l.graph.to_edge_tsv());
                ExitCode::SUCCESS
            }
            Err((k, d)) => fail(&k, d),
        },
    }
}
