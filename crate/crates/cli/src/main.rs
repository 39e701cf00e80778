use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ltq_diag::diagnosability::{methods, tg_formula, witness_pair, TgRequest, Verdict};
use ltq_diag::search::DEFAULT_BUDGET;
use ltq_diag::suite::run_suite;
use ltq_diag::syndrome::DEFAULT_SEED;
use ltq_diag::{
    diagnose, is_g_good_neighbor_set, kappa_g, model, Diagnosis, Error, FaultyUnitPolicy,
    LtqGraph, PolicyKind, SearchConfig, Syndrome, TestModel, VertexSet,
};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "ltqdiag", version, about = "Fault diagnosis toolkit for locally twisted cubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the edge set of LTQ_n.
    Graph {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
    },
    /// Check whether a fault file is a g-good-neighbor faulty set.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        g: u32,
        fault_file: PathBuf,
    },
    /// Smallest g-good-neighbor conditional cut within a size bound.
    Kappa {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        g: u32,
        /// Largest cut size searched; defaults to 2^g(n-g).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// g-good-neighbor conditional diagnosability.
    Tg {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value = "pmc")]
        model: String,
        /// formula, witness, brute or verify.
        #[arg(long, default_value = "formula")]
        method: String,
        /// Size bound for the exhaustive search; defaults to 2^(n-1).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// The extremal indistinguishable pair of g-good-neighbor sets.
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        g: u32,
    },
    /// Simulate the syndrome produced by a fault file.
    Syndrome {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "pmc")]
        model: String,
        #[arg(long, default_value = "random")]
        policy: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        fault_file: PathBuf,
    },
    /// Identify the faulty set from a syndrome file.
    Diagnose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value = "pmc")]
        model: String,
        /// Largest candidate size; defaults to the closed-form t_g.
        #[arg(long)]
        t: Option<usize>,
        syndrome_file: PathBuf,
    },
    /// Run the full acceptance table.
    VerifyAll {
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    n: u32,
    /// Candidate cap for exhaustive searches (overrides LTQDIAG_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edges,
    Dot,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_resource() => EXIT_RESOURCE,
            Error::OutOfTheoremRange { .. } => EXIT_NEGATIVE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

type Outcome = Result<u8, Failure>;

impl Common {
    fn search(&self) -> Result<SearchConfig, Failure> {
        let budget = match self.budget {
            Some(b) => b,
            None => env_budget()?,
        };
        let mut cfg = SearchConfig {
            budget,
            ..SearchConfig::default()
        };
        if let Some(w) = self.workers {
            cfg.workers = w.max(1);
        }
        Ok(cfg)
    }

    fn graph(&self) -> Result<LtqGraph, Failure> {
        Ok(LtqGraph::build(self.n)?)
    }
}

fn env_budget() -> Result<u64, Failure> {
    match std::env::var("LTQDIAG_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("LTQDIAG_BUDGET is not an integer: '{v}'"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Prints `value` as JSON, or `text` for the text output.
fn emit(output: Output, value: &Value, text: impl FnOnce() -> String) {
    match output {
        Output::Json => println!("{value}"),
        Output::Text => println!("{}", text()),
    }
}

fn labels(set: &VertexSet) -> String {
    let l = set.to_binary_labels();
    if l.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", l.join(", "))
    }
}

fn cmd_graph(n: u32, format: GraphFormat) -> Outcome {
    let g = LtqGraph::build(n)?;
    match format {
        GraphFormat::Edges => print!("{}", g.to_edge_list()),
        GraphFormat::Dot => print!("{}", g.to_dot()),
        GraphFormat::Json => {
            println!("{}", serde_json::to_string(&g.to_json()).expect("graph serializes"))
        }
    }
    Ok(0)
}

fn cmd_check(common: &Common, g: u32, file: &PathBuf) -> Outcome {
    let graph = common.graph()?;
    let faults = VertexSet::parse_lines(common.n, &read(file)?)?;
    let report = is_g_good_neighbor_set(&graph, &faults, g)?;
    let value = serde_json::to_value(report.to_json(common.n)).expect("report serializes");
    emit(common.output, &value, || match report.violating_vertex {
        None => format!("g-good-neighbor: yes (|F| = {})", faults.len()),
        Some(v) => format!(
            "g-good-neighbor: no; {} has {} fault-free neighbors",
            v.to_binary(common.n),
            report.free_neighbor_count.unwrap_or(0)
        ),
    });
    Ok(if report.is_gng { 0 } else { EXIT_NEGATIVE })
}

fn cmd_kappa(common: &Common, g: u32, bound: Option<usize>) -> Outcome {
    let graph = common.graph()?;
    let n = common.n;
    let bound = bound.unwrap_or_else(|| (1usize << g.min(n)) * n.saturating_sub(g) as usize);
    match kappa_g(&graph, g, bound, &common.search()?)? {
        Some(cut) => {
            let value = serde_json::to_value(cut.to_json()).expect("cut serializes");
            emit(common.output, &value, || {
                format!(
                    "kappa^{g} = {} (components {:?}) cut {}",
                    cut.size,
                    cut.component_sizes,
                    labels(&cut.cut)
                )
            });
            Ok(0)
        }
        None => {
            emit(common.output, &json!({ "size": null, "bound": bound }), || {
                format!("no g-good-neighbor cut of size <= {bound}")
            });
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_tg(common: &Common, g: u32, model_name: &str, method: &str, bound: Option<usize>) -> Outcome {
    let request = TgRequest {
        n: common.n,
        g,
        model: model(model_name)?,
        bound,
        search: common.search()?,
    };
    let outcome = methods().get(method)?.run(&request)?;
    let report = &outcome.report;
    let value = serde_json::to_value(report.to_json()).expect("report serializes");
    emit(common.output, &value, || {
        let formula = outcome
            .formula
            .map_or("none".to_string(), |f| f.to_string());
        format!(
            "t_{g}(LTQ_{}) under {} by {}: {} (exact: {}, formula: {formula}, pairs checked: {})",
            report.n,
            report.model,
            report.method.as_str(),
            report.value,
            report.exact,
            report.pairs_checked
        )
    });
    for check in &outcome.checks {
        eprintln!("check {}: {:?}", check.name, check.status);
    }
    if let Some(note) = &outcome.note {
        eprintln!("note: {note}");
    }
    Ok(match outcome.verdict {
        Verdict::Matches | Verdict::NoFormula => 0,
        Verdict::Mismatch => EXIT_NEGATIVE,
    })
}

fn cmd_witness(common: &Common, g: u32) -> Outcome {
    let graph = common.graph()?;
    let (f1, f2) = witness_pair(&graph, g)?;
    let value = json!({
        "n": common.n,
        "g": g,
        "f1": f1.to_binary_labels(),
        "f2": f2.to_binary_labels(),
        "sizes": [f1.len(), f2.len()],
    });
    emit(common.output, &value, || {
        format!(
            "|F1| = {}, |F2| = {}\nF1 = {}\nF2 = {}",
            f1.len(),
            f2.len(),
            labels(&f1),
            labels(&f2)
        )
    });
    Ok(0)
}

fn cmd_syndrome(common: &Common, model_name: &str, policy: &str, seed: u64, file: &PathBuf) -> Outcome {
    let graph = common.graph()?;
    let m = model(model_name)?;
    let faults = VertexSet::parse_lines(common.n, &read(file)?)?;
    let policy = FaultyUnitPolicy::new(PolicyKind::parse(policy)?, seed);
    let syndrome = m.generate(&graph, &faults, &policy);
    // The syndrome is a file format of its own, so it is always JSON.
    println!("{}", syndrome.to_json(&graph));
    Ok(0)
}

fn default_t(n: u32, g: u32, m: &dyn TestModel) -> Result<usize, Failure> {
    tg_formula(n, g, m).map(|t| t as usize).map_err(|_| {
        usage(format!(
            "no closed-form t_{g} for n = {n} under {}; pass --t",
            m.name()
        ))
    })
}

fn cmd_diagnose(common: &Common, g: u32, model_name: &str, t: Option<usize>, file: &PathBuf) -> Outcome {
    let graph = common.graph()?;
    let m: Arc<dyn TestModel> = model(model_name)?;
    let syndrome = Syndrome::from_json(&graph, &read(file)?)?;
    let t = match t {
        Some(t) => t,
        None => default_t(common.n, g, m.as_ref())?,
    };
    let d = diagnose(&graph, m.as_ref(), &syndrome, g, t, &common.search()?)?;
    emit(common.output, &d.to_json(), || match &d {
        Diagnosis::Unique(f) => format!("faulty: {} ({} units)", labels(f), f.len()),
        Diagnosis::Ambiguous(c) => {
            let lines: Vec<String> = c.iter().map(labels).collect();
            format!("ambiguous, {} candidates:\n{}", c.len(), lines.join("\n"))
        }
        Diagnosis::NoCandidate => format!("no consistent candidate of size <= {t}"),
    });
    Ok(match d {
        Diagnosis::Unique(_) => 0,
        _ => EXIT_NEGATIVE,
    })
}

fn cmd_verify_all(workers: Option<usize>, output: Output) -> Outcome {
    let workers = workers.unwrap_or_else(|| SearchConfig::default().workers).max(1);
    let outcomes = run_suite(workers);
    let all = outcomes.iter().all(|o| o.passed);
    match output {
        Output::Json => {
            let rows: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "title": o.title,
                        "passed": o.passed,
                        "detail": o.detail,
                        "elapsed_ms": o.elapsed.as_millis() as u64,
                    })
                })
                .collect();
            println!("{}", json!({ "criteria": rows, "passed": all }));
        }
        Output::Text => {
            for o in &outcomes {
                println!(
                    "{:>2}  {}  {:<60} {:>8.2}s  {}",
                    o.id,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.title,
                    o.elapsed.as_secs_f64(),
                    o.detail
                );
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            println!("{passed}/{} criteria passed", outcomes.len());
        }
    }
    Ok(if all { 0 } else { EXIT_NEGATIVE })
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Graph { n, format } => cmd_graph(*n, *format),
        Command::Check {
            common,
            g,
            fault_file,
        } => cmd_check(common, *g, fault_file),
        Command::Kappa { common, g, bound } => cmd_kappa(common, *g, *bound),
        Command::Tg {
            common,
            g,
            model,
            method,
            bound,
        } => cmd_tg(common, *g, model, method, *bound),
        Command::Witness { common, g } => cmd_witness(common, *g),
        Command::Syndrome {
            common,
            model,
            policy,
            seed,
            fault_file,
        } => cmd_syndrome(common, model, policy, *seed, fault_file),
        Command::Diagnose {
            common,
            g,
            model,
            t,
            syndrome_file,
        } => cmd_diagnose(common, *g, model, *t, syndrome_file),
        Command::VerifyAll { workers, output } => cmd_verify_all(*workers, *output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
