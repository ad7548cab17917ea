mod checks;
mod plan;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use flagdescent::autgroup::{is_admissible, CocycleSpec};
use flagdescent::brauer::{
    index_chain_bs_surface, make_cyclic_with_root, norm_criterion_finite, quaternion_splits_q, zero_divisor_search,
    Rationals, ScalarField, ZeroDivisorSearch,
};
use flagdescent::fields::FiniteField;
use flagdescent::flags::{enumerate_flags, FlagSignature};

use plan::{Budget, CheckDescriptor, VerificationPlan};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{path}:{line}:{column}: malformed plan: {message}")]
    Plan { path: String, line: usize, column: usize, message: String },
    #[error("unknown check {0:?}; valid ids: {ids}", ids = checks::ids().join(", "))]
    UnknownCheck(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] flagdescent::Error),
}

/// Exact verification of flag-variety descent, bundle charts and cyclic algebras over small fields.
#[derive(Parser)]
#[command(name = "flagdescent", version)]
struct Cli {
    /// Write the JSON report or verdict here.
    #[arg(long, global = true, env = "FLAGDESCENT_JSON")]
    json: Option<PathBuf>,
    /// Enumeration budget (flags, subspaces, group elements).
    #[arg(long, global = true, env = "FLAGDESCENT_BUDGET")]
    budget: Option<u128>,
    /// Largest field order a check may build.
    #[arg(long, global = true, env = "FLAGDESCENT_FIELD_BUDGET")]
    field_budget: Option<u64>,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, env = "FLAGDESCENT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a plan file or a named suite.
    Verify {
        #[arg(long, env = "FLAGDESCENT_PLAN")]
        plan: Option<PathBuf>,
        #[arg(long, env = "FLAGDESCENT_SUITE", value_parser = ["paper", "smoke"])]
        suite: Option<String>,
    },
    /// Describe a check: its statement and instance parameters.
    Explain { id: String },
    /// Enumerate Fl(d, F_q^n).
    Enumerate {
        #[arg(long, default_value = "2^1")]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Print every flag, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Cyclic algebras, quaternion splitting and the surface index chain.
    Brauer {
        #[command(subcommand)]
        op: BrauerOp,
    },
    /// Chart, kernel and equivariance checks for one split signature.
    Bundles(BundleArgs),
    /// Admissibility, tau and cocycle checks for one signature.
    Autgroup(AutgroupArgs),
}

#[derive(Subcommand)]
enum BrauerOp {
    Quaternion {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    Cyclic {
        /// `p^k` or `Q`.
        #[arg(long)]
        field: String,
        #[arg(long)]
        m: usize,
        /// Element text; `w` is the primitive m-th root of unity.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        search_zero_divisor: bool,
    },
    Bs2Chain {
        #[arg(long, action = clap::ArgAction::Set)]
        trivial: bool,
        #[arg(long, value_enum, default_value = "none")]
        curve: Curve,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Curve {
    None,
    Trivial,
    Nontrivial,
}

#[derive(clap::Args)]
struct BundleArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Degree of the Galois extension carrying the action.
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    n1: usize,
    #[arg(long, value_delimiter = ',')]
    lower: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    upper: Vec<usize>,
    /// Matrix text whose rows span V_1 then V_2.
    #[arg(long)]
    basis: Option<String>,
    /// JSON cocycle file (`basis`, `lifts`, `dual`).
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

#[derive(clap::Args)]
struct AutgroupArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    dims: Vec<usize>,
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Verify { plan, suite } => {
            let plan = match (plan, suite) {
                (Some(path), _) => VerificationPlan::load(path)?,
                (None, s) => VerificationPlan::from_suite(s.as_deref().unwrap_or("paper"))?,
            };
            run_plan(cli, plan)
        }
        Command::Explain { id } => {
            emit(&explain(id)?);
            Ok(0)
        }
        Command::Enumerate { field, n, dims, list } => {
            let field = FiniteField::parse_descriptor(field)?;
            let sig = FlagSignature::new(*n, dims)?;
            let flags = enumerate_flags(&field, &sig, budget(cli).max_flags)?;
            emit(&format!("|Fl{sig} over F_{}| = {}\n", field.order(), flags.len()));
            if *list {
                emit(&flags.iter().map(|fl| format!("{fl}\n")).collect::<String>());
            }
            let record = json!({
                "field": field.descriptor(),
                "signature": sig.to_string(),
                "count": flags.len(),
                "flags": flags.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            });
            write_json(cli.json.as_deref(), &record)?;
            Ok(0)
        }
        Command::Brauer { op } => {
            let record = brauer(op, &budget(cli))?;
            emit(&format!("{}\n", serde_json::to_string_pretty(&record).expect("verdict serializes")));
            write_json(cli.json.as_deref(), &record)?;
            Ok(0)
        }
        Command::Bundles(a) => {
            let cocycle = a.cocycle.as_deref().map(load_cocycle).transpose()?;
            let params = json!({
                "p": a.p, "k": a.k, "r": a.r, "n": a.n, "n1": a.n1,
                "lower": a.lower, "upper": a.upper, "basis": a.basis, "cocycle": cocycle,
            });
            let mut ids = vec!["bundles.chart-bijection", "bundles.kernel-equivalence"];
            if a.r > 1 || cocycle.is_some() {
                ids.extend(["bundles.equivariance", "bundles.fiber-action", "bundles.descent-count"]);
            }
            let plan = VerificationPlan {
                checks: ids.into_iter().map(|id| CheckDescriptor::new(id, params.clone())).collect(),
                ..Default::default()
            };
            run_plan(cli, plan)
        }
        Command::Autgroup(a) => {
            let sig = FlagSignature::new(a.n, &a.dims)?;
            emit(&format!("{sig}: {}\n", if is_admissible(&sig) { "admissible" } else { "not admissible" }));
            let field = format!("{}^{}", a.p, a.k * a.r);
            let flag_params = json!({"field": field, "n": a.n, "dims": a.dims});
            let mut checks = Vec::new();
            if sig.is_self_dual() {
                for id in ["autgroup.tau-involution", "autgroup.tau-not-pgl", "autgroup.tau-normalizes-pgl"] {
                    checks.push(CheckDescriptor::new(id, flag_params.clone()));
                }
            }
            if a.r > 1 || a.cocycle.is_some() {
                let cocycle = a.cocycle.as_deref().map(load_cocycle).transpose()?.unwrap_or_default();
                let base = json!({"p": a.p, "k": a.k, "r": a.r, "n": a.n, "dims": a.dims});
                let mut with_cocycle = base.clone();
                with_cocycle["cocycle"] = serde_json::to_value(cocycle).expect("cocycle serializes");
                checks.push(CheckDescriptor::new("autgroup.cocycle", with_cocycle));
                checks.push(CheckDescriptor::new("autgroup.trivial-descent-count", base));
            }
            run_plan(cli, VerificationPlan { checks, ..Default::default() })
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = cli.budget {
        b.max_flags = n;
    }
    if let Some(n) = cli.field_budget {
        b.max_field_size = n;
    }
    b
}

fn run_plan(cli: &Cli, mut plan: VerificationPlan) -> Result<u8, CliError> {
    if let Some(n) = cli.budget {
        plan.budget.max_flags = n;
    }
    if let Some(n) = cli.field_budget {
        plan.budget.max_field_size = n;
    }
    if let Some(t) = cli.threads {
        plan.threads = t;
    }
    if let Some(path) = &cli.json {
        plan.output = Some(path.clone());
    }
    let report = report::run(&plan)?;
    emit(&report.human());
    write_json(plan.output.as_deref(), &report)?;
    Ok(report.exit_code() as u8)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: stdout: {e}");
        }
    }
}

fn write_json(path: Option<&Path>, value: &impl Serialize) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

fn load_cocycle(path: &Path) -> Result<CocycleSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| CliError::Plan {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn explain(id: &str) -> Result<String, CliError> {
    let spec = checks::find(id).ok_or_else(|| CliError::UnknownCheck(id.into()))?;
    let mut out = format!("{}\n  module: {}\n  statement: {}\n  default parameters: {}\n", spec.id, spec.module(), spec.statement, spec.defaults);
    let instances: Vec<Value> = checks::suite("paper")
        .expect("paper suite exists")
        .into_iter()
        .filter(|(i, _)| *i == id)
        .map(|(_, p)| p)
        .collect();
    if !instances.is_empty() {
        out.push_str("  paper-suite instances:\n");
        for p in instances {
            out.push_str(&format!("    {p}\n"));
        }
    }
    Ok(out)
}

fn brauer(op: &BrauerOp, budget: &Budget) -> Result<Value, CliError> {
    Ok(match op {
        BrauerOp::Quaternion { a, b } => {
            let v = quaternion_splits_q(*a, *b)?;
            json!({
                "operation": "quaternion",
                "rules": ["squarefree-reduction", "hilbert-symbol-local-formulas", "local-global-splitting", "product-formula"],
                "verdict": v,
            })
        }
        BrauerOp::Cyclic { field, m, a, b, search_zero_divisor } => {
            if field.eq_ignore_ascii_case("q") {
                cyclic_record(&Rationals, *m, a, b, *search_zero_divisor, budget.max_flags, None)?
            } else {
                let f = FiniteField::parse_descriptor(field)?;
                let w = ScalarField::root_of_unity(&f, *m)?;
                let (ea, eb) = (parse_with_root(&f, a, w)?, parse_with_root(&f, b, w)?);
                let norm = norm_criterion_finite(&f, *m, ea, eb)?;
                let norm = serde_json::to_value(norm).expect("norm record serializes");
                cyclic_record(&f, *m, a, b, *search_zero_divisor, budget.max_flags, Some(norm))?
            }
        }
        BrauerOp::Bs2Chain { trivial, curve } => {
            let (exists, curve_trivial) = match curve {
                Curve::None => (false, false),
                Curve::Trivial => (true, true),
                Curve::Nontrivial => (true, false),
            };
            json!({"operation": "bs2-chain", "verdict": index_chain_bs_surface(*trivial, exists, curve_trivial)})
        }
    })
}

fn parse_with_root<F: ScalarField>(f: &F, text: &str, w: F::Elem) -> flagdescent::Result<F::Elem> {
    if text == "w" {
        Ok(w)
    } else {
        f.parse(text)
    }
}

fn cyclic_record<F: ScalarField>(
    f: &F,
    m: usize,
    a: &str,
    b: &str,
    search: bool,
    budget: u128,
    norm: Option<Value>,
) -> Result<Value, CliError> {
    let w = f.root_of_unity(m)?;
    let c = make_cyclic_with_root(f, m, parse_with_root(f, a, w.clone())?, parse_with_root(f, b, w.clone())?, w.clone())?;
    let alg = c.algebra();
    let mut record = json!({
        "operation": "cyclic",
        "field": f.descriptor(),
        "m": m,
        "a": f.format(c.a()),
        "b": f.format(c.b()),
        "omega": f.format(&w),
        "dimension": alg.dim(),
        "associative": true,
        "center_dimension": alg.center().len(),
        "rules": ["cyclic-presentation", "associativity-on-basis-triples", "center-by-linear-solve"],
    });
    if let Some(n) = norm {
        record["norm_criterion"] = n;
    }
    if search {
        let found = zero_divisor_search(alg, budget);
        let rendered = match &found {
            ZeroDivisorSearch::Found { left, right, examined } => json!({
                "status": "found",
                "left": alg.format_element(left),
                "right": alg.format_element(right),
                "examined": examined,
            }),
            other => search_status(other),
        };
        record["zero_divisor"] = rendered;
    }
    Ok(record)
}

fn search_status<E>(s: &ZeroDivisorSearch<E>) -> Value {
    match s {
        ZeroDivisorSearch::Found { examined, .. } => json!({"status": "found", "examined": examined}),
        ZeroDivisorSearch::NotFound { examined } => json!({"status": "not-found", "examined": examined}),
        ZeroDivisorSearch::BudgetExceeded { examined, space } => {
            json!({"status": "budget-exceeded", "examined": examined, "space": space})
        }
        ZeroDivisorSearch::NotExhaustible { examined, caveat } => {
            json!({"status": "not-exhaustible", "examined": examined, "caveat": caveat})
        }
    }
}
