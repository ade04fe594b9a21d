//! certilab command line: graph generators, scheme provers and verifiers,
//! the constructive attacks, and the reproducible experiment drivers.
//!
//! Exit codes: 0 success / global accept; 1 usage, parse, or guard errors;
//! 2 prover found no certificate; 3 verification or coverage rejected.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use certilab::{
    anon_attack_sweep, anon_no_instance, build_complete, build_cycle, build_necklace, build_path,
    check_view_coverage, collision_column_sweep, find_collision_column, id_attack_sweep,
    id_no_instance, id_yes_instances, run_verifier, scheme_by_name, score_matrix, verifier_census,
    BinaryLabeling, CertificateAssignment, Decision, Graph, IdAssignment, Instance,
    DEFAULT_NODE_BUDGET, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(name = "certilab", version)]
#[command(about = "Build, run, and attack one-bit local certifications of graph colorability")]
struct Cli {
    /// Report output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run a scheme's prover; writes the labeling file (exit 2 if none exists)
    Certify {
        /// Scheme name: dist2, 2color, or kcolorN
        scheme: String,
        /// Graph file
        graph: PathBuf,
        /// Write the labeling here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Node budget for coloring searches
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a scheme's verifier on a labeled graph (exit 3 on global reject)
    Verify {
        /// Scheme name: dist2, 2color, or kcolorN
        scheme: String,
        /// Graph file
        graph: PathBuf,
        /// Labeling file
        labeling: PathBuf,
        /// Optional identifier file
        #[arg(long)]
        ids: Option<PathBuf>,
        /// Node budget for coloring searches
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Constructive attacks against one-bit certifications
    Adversary {
        #[command(subcommand)]
        attack: AttackCmd,
    },
    /// Census over all degree-k table verifiers on the necklace/complete pair
    Census {
        #[arg(long)]
        k: usize,
    },
    /// Check that every view of a target instance occurs in some yes-instance
    /// (exit 3 when a view is uncovered)
    Coverage {
        /// Target instance as GRAPH:LABELING[:IDS]
        #[arg(long = "h")]
        target: String,
        /// Yes-instances as GRAPH:LABELING[:IDS]; repeatable
        #[arg(long = "yes", required = true)]
        yes: Vec<String>,
    },
    /// Reproducible experiment drivers
    Experiments {
        /// One of: collision-sweep, anon-attack, id-attack, census
        name: ExperimentName,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Seed for randomized corpora
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for sweeps (falls back to CERTILAB_WORKERS, then 1)
        #[arg(long)]
        workers: Option<usize>,
        /// Tuple count for the id-attack experiment
        #[arg(long, default_value_t = 1000)]
        tuples: u64,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Complete graph on n vertices
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Necklace graph: three chained near-complete beads, k-regular
    Necklace {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Path on n vertices
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycle on n vertices (n >= 3)
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AttackCmd {
    /// Anonymous attack: relabel K_{k+1} from one necklace labeling
    Anon {
        #[arg(long)]
        k: usize,
        /// Binary labeling file of the necklace graph
        #[arg(long)]
        labeling: PathBuf,
        /// Write the constructed labeling here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Identifier attack: construct K_{k+1} with identifiers from labeled copies
    Id {
        #[arg(long)]
        k: usize,
        /// Directory of labeling files, one per copy, in file-name order
        #[arg(long)]
        labelings: PathBuf,
        /// Write PREFIX.labels and PREFIX.ids
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentName {
    /// All necklace labelings admit a collision column
    CollisionSweep,
    /// Anonymous attack coverage over all necklace labelings
    AnonAttack,
    /// Identifier attack over seeded random labeling tuples
    IdAttack,
    /// Verifier census
    Census,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    let format = cli.format;
    match cli.command {
        Command::Gen { family } => cmd_gen(family),
        Command::Certify {
            scheme,
            graph,
            out,
            budget,
        } => cmd_certify(&scheme, &graph, out.as_deref(), budget),
        Command::Verify {
            scheme,
            graph,
            labeling,
            ids,
            budget,
        } => cmd_verify(format, &scheme, &graph, &labeling, ids.as_deref(), budget),
        Command::Adversary { attack } => match attack {
            AttackCmd::Anon { k, labeling, out } => {
                cmd_adversary_anon(format, k, &labeling, out.as_deref())
            }
            AttackCmd::Id { k, labelings, out } => {
                cmd_adversary_id(format, k, &labelings, out.as_deref())
            }
        },
        Command::Census { k } => {
            let report = verifier_census(k).map_err(|e| e.to_string())?;
            let payload = serde_json::to_value(&report).expect("report serializes");
            print_report(format, "census", json!({ "k": k }), payload, 0);
            Ok(0)
        }
        Command::Coverage { target, yes } => cmd_coverage(format, &target, &yes),
        Command::Experiments {
            name,
            k,
            seed,
            workers,
            tuples,
        } => cmd_experiments(format, name, k, seed, workers, tuples),
    }
}

fn cmd_gen(family: GenFamily) -> Result<i32, String> {
    let (graph, roles, out) = match family {
        GenFamily::Complete { n, out } => {
            (build_complete(n).map_err(|e| e.to_string())?, None, out)
        }
        GenFamily::Necklace { k, out } => {
            let (graph, structure) = build_necklace(k).map_err(|e| e.to_string())?;
            let roles: Vec<String> = (1..=3)
                .map(|t| {
                    let clique: Vec<String> = structure
                        .clique(t)
                        .iter()
                        .map(|v| v.to_string())
                        .collect();
                    format!(
                        "bead {t}: a={} b={} C={}",
                        structure.a(t),
                        structure.b(t),
                        clique.join(",")
                    )
                })
                .collect();
            (graph, Some(roles), out)
        }
        GenFamily::Path { n, out } => (build_path(n).map_err(|e| e.to_string())?, None, out),
        GenFamily::Cycle { n, out } => (build_cycle(n).map_err(|e| e.to_string())?, None, out),
    };
    let text = graph.to_text();
    match &out {
        Some(path) => {
            write_file(path, &text)?;
            if let Some(roles) = roles {
                for line in roles {
                    println!("{line}");
                }
            }
        }
        None => {
            print!("{text}");
            if let Some(roles) = roles {
                for line in roles {
                    eprintln!("{line}");
                }
            }
        }
    }
    Ok(0)
}

fn cmd_certify(
    scheme_name: &str,
    graph_path: &Path,
    out: Option<&Path>,
    budget: Option<u64>,
) -> Result<i32, String> {
    let scheme = lookup_scheme(scheme_name, budget)?;
    let graph = load_graph(graph_path)?;
    let cert = scheme.prove(&graph).map_err(|e| e.to_string())?;
    match cert {
        Some(cert) => {
            let line = format!("{}\n", cert.to_line());
            match out {
                Some(path) => write_file(path, &line)?,
                None => print!("{line}"),
            }
            Ok(0)
        }
        None => {
            eprintln!("no certificate: scheme {scheme_name} has no accepted labeling of this graph");
            Ok(2)
        }
    }
}

fn cmd_verify(
    format: Format,
    scheme_name: &str,
    graph_path: &Path,
    labeling_path: &Path,
    ids_path: Option<&Path>,
    budget: Option<u64>,
) -> Result<i32, String> {
    let scheme = lookup_scheme(scheme_name, budget)?;
    let graph = load_graph(graph_path)?;
    let text = read_file(labeling_path)?;
    let cert = CertificateAssignment::parse(&text, graph.vertex_count(), scheme.width())
        .map_err(|e| format!("{}: {e}", labeling_path.display()))?;
    let ids = match ids_path {
        Some(path) => {
            let text = read_file(path)?;
            Some(
                IdAssignment::parse(&text, graph.vertex_count())
                    .map_err(|e| format!("{}: {e}", path.display()))?,
            )
        }
        None => None,
    };
    let run = run_verifier(&graph, &cert, ids.as_ref(), &scheme).map_err(|e| e.to_string())?;
    let status = if run.accepted() { 0 } else { 3 };
    let mut parameters = json!({
        "scheme": scheme_name,
        "graph": graph_path.display().to_string(),
        "labeling": labeling_path.display().to_string(),
    });
    if let Some(path) = ids_path {
        parameters["ids"] = Value::String(path.display().to_string());
    }
    let decisions: Vec<&str> = run
        .decisions
        .iter()
        .map(|d| match d {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        })
        .collect();
    let result = json!({
        "per_vertex": decisions,
        "verdict": if run.accepted() { "accept" } else { "reject" },
    });
    print_report(format, "verify", parameters, result, status);
    Ok(status)
}

fn cmd_adversary_anon(
    format: Format,
    k: usize,
    labeling_path: &Path,
    out: Option<&Path>,
) -> Result<i32, String> {
    let (graph, _) = build_necklace(k).map_err(|e| e.to_string())?;
    let text = read_file(labeling_path)?;
    let labeling = BinaryLabeling::parse(&text, graph.vertex_count())
        .map_err(|e| format!("{}: {e}", labeling_path.display()))?;
    let attack = anon_no_instance(k, &labeling).map_err(|e| e.to_string())?;
    let matrix = score_matrix(&graph, &labeling).map_err(|e| e.to_string())?;
    let column = find_collision_column(&matrix).expect("necklace labelings always collide");

    let target = Instance::anonymous(
        build_complete(k + 1).map_err(|e| e.to_string())?,
        attack.to_assignment(),
    )
    .map_err(|e| e.to_string())?;
    let yes = Instance::anonymous(graph, labeling.to_assignment()).map_err(|e| e.to_string())?;
    let coverage = check_view_coverage(&target, &[yes]).map_err(|e| e.to_string())?;

    if let Some(path) = out {
        write_file(path, &format!("{}\n", attack.to_line()))?;
    }
    let result = json!({
        "column": column.column,
        "labeling": attack.to_line(),
        "covered": coverage.covered,
    });
    print_report(
        format,
        "adversary-anon",
        json!({ "k": k, "labeling": labeling_path.display().to_string() }),
        result,
        0,
    );
    Ok(0)
}

fn cmd_adversary_id(
    format: Format,
    k: usize,
    dir: &Path,
    out: Option<&Path>,
) -> Result<i32, String> {
    let (graph, _) = build_necklace(k).map_err(|e| e.to_string())?;
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let labelings: Vec<BinaryLabeling> = paths
        .iter()
        .map(|path| {
            let text = read_file(path)?;
            BinaryLabeling::parse(&text, graph.vertex_count())
                .map_err(|e| format!("{}: {e}", path.display()))
        })
        .collect::<Result<_, String>>()?;

    let target = id_no_instance(k, &labelings).map_err(|e| e.to_string())?;
    let yes = id_yes_instances(k, &labelings).map_err(|e| e.to_string())?;
    let coverage = check_view_coverage(&target, &yes).map_err(|e| e.to_string())?;
    let ids = target.ids().expect("identifier attack carries identifiers");

    if let Some(prefix) = out {
        let labels_path = prefix.with_extension("labels");
        let ids_path = prefix.with_extension("ids");
        write_file(
            &labels_path,
            &format!("{}\n", target.certificate().to_line()),
        )?;
        write_file(&ids_path, &ids.to_text())?;
    }
    let result = json!({
        "copies": labelings.len(),
        "labeling": target.certificate().to_line(),
        "ids": ids.ids(),
        "id_bound": ids.range_bound(),
        "covered": coverage.covered,
    });
    print_report(
        format,
        "adversary-id",
        json!({ "k": k, "labelings": dir.display().to_string() }),
        result,
        0,
    );
    Ok(0)
}

fn cmd_coverage(format: Format, target_spec: &str, yes_specs: &[String]) -> Result<i32, String> {
    let target = load_instance(target_spec)?;
    let yes: Vec<Instance> = yes_specs
        .iter()
        .map(|spec| load_instance(spec))
        .collect::<Result<_, String>>()?;
    let report = check_view_coverage(&target, &yes).map_err(|e| e.to_string())?;
    let status = if report.covered { 0 } else { 3 };
    let payload = serde_json::to_value(&report).expect("report serializes");
    print_report(
        format,
        "coverage",
        json!({ "h": target_spec, "yes": yes_specs }),
        payload,
        status,
    );
    Ok(status)
}

fn cmd_experiments(
    format: Format,
    name: ExperimentName,
    k: usize,
    seed: Option<u64>,
    workers: Option<usize>,
    tuples: u64,
) -> Result<i32, String> {
    let workers = resolve_workers(workers);
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let (label, parameters, payload) = match name {
        ExperimentName::CollisionSweep => {
            let report = collision_column_sweep(k, workers).map_err(|e| e.to_string())?;
            (
                "collision-sweep",
                json!({ "k": k, "workers": workers }),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        ExperimentName::AnonAttack => {
            let report = anon_attack_sweep(k, workers).map_err(|e| e.to_string())?;
            (
                "anon-attack",
                json!({ "k": k, "workers": workers }),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        ExperimentName::IdAttack => {
            let report = id_attack_sweep(k, tuples, seed, workers).map_err(|e| e.to_string())?;
            (
                "id-attack",
                json!({ "k": k, "seed": seed, "tuples": tuples, "workers": workers }),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        ExperimentName::Census => {
            let report = verifier_census(k).map_err(|e| e.to_string())?;
            (
                "census",
                json!({ "k": k }),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
    };
    print_report(
        format,
        &format!("experiments {label}"),
        parameters,
        payload,
        0,
    );
    Ok(0)
}

fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("CERTILAB_WORKERS")
            .ok()
            .and_then(|raw| raw.parse().ok())
    })
    .unwrap_or(1)
    .max(1)
}

fn lookup_scheme(name: &str, budget: Option<u64>) -> Result<certilab::Scheme, String> {
    scheme_by_name(name, budget.unwrap_or(DEFAULT_NODE_BUDGET))
        .ok_or_else(|| format!("unknown scheme {name:?} (expected dist2, 2color, or kcolorN)"))
}

/// Instance spec: `GRAPH:LABELING[:IDS]`, each a file path.
fn load_instance(spec: &str) -> Result<Instance, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(format!(
            "instance spec {spec:?} must be GRAPH:LABELING[:IDS]"
        ));
    }
    let graph = load_graph(Path::new(parts[0]))?;
    let text = read_file(Path::new(parts[1]))?;
    let n = graph.vertex_count();
    let labeling = BinaryLabeling::parse(&text, n).map_err(|e| format!("{}: {e}", parts[1]))?;
    let ids = if parts.len() == 3 {
        let text = read_file(Path::new(parts[2]))?;
        Some(IdAssignment::parse(&text, n).map_err(|e| format!("{}: {e}", parts[2]))?)
    } else {
        None
    };
    Instance::new(graph, labeling.to_assignment(), ids).map_err(|e| e.to_string())
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = read_file(path)?;
    Graph::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

/// Prints the report envelope. JSON output converts through
/// `serde_json::Value`, whose maps are ordered, so keys come out sorted and
/// identical inputs produce byte-identical reports.
fn print_report(format: Format, command: &str, parameters: Value, result: Value, status: i32) {
    let envelope = json!({
        "command": command,
        "parameters": parameters,
        "result": result,
        "status": status,
    });
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("envelope serializes")
            );
        }
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", &envelope, &mut lines);
            for line in lines {
                println!("{line}");
            }
        }
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<String>) {
    match value {
        Value::Object(map) => {
            for (key, sub) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, sub, out);
            }
        }
        Value::Array(items) => {
            for (i, sub) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), sub, out);
            }
        }
        leaf => out.push(format!("{prefix} = {leaf}")),
    }
}
