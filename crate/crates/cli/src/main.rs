use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use acq_core::arith::{Matrix, Scalar};
use acq_core::category::{builtin, parse_category, CategoryData};
use acq_core::eval_global::{EvalOptions, DEFAULT_MAX_CARRIER};
use acq_core::fuzz::{evaluate, fuzz, FuzzConfig, Method};
use acq_core::presentation::{parse_presentation, Presentation};
use acq_core::probes::{
    circulator_order_probe, conjecture1b_probe, conjecture2_probe, corollary_probe, dimension_report,
};
use acq_core::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_GUARD: u8 = 4;
const EXIT_VIOLATION: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "acq", version, about = "Exact Andrews-Curtis invariants of group presentations")]
struct Cli {
    /// Largest number of matrix or vector entries a single step may use.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CARRIER)]
    max_carrier: u128,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add `elapsed_ms` to reports; output is then no longer reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a category against the axioms the evaluators rely on.
    Validate { category: String },
    /// Evaluate the invariant of a presentation.
    Eval {
        category: String,
        presentation: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Global)]
        method: MethodArg,
    },
    /// Apply random AC moves and check the invariant does not change.
    Fuzz {
        category: String,
        presentation: String,
        #[arg(long, default_value_t = 8)]
        moves: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::State)]
        method: MethodArg,
    },
    /// Compute data for the open conjectures.
    Probe {
        category: String,
        #[arg(value_enum)]
        probe: ProbeArg,
        /// circulator-order: largest power tried.
        #[arg(long, default_value_t = 64)]
        bound: u64,
        /// corollary: the presentation to extend.
        #[arg(long)]
        presentation: Option<String>,
        /// corollary: index of the generator x_k.
        #[arg(long, default_value_t = 0)]
        generator: usize,
        /// conjecture2: the simple object b, by name.
        #[arg(long)]
        simple: Option<String>,
        /// conjecture2: number of traced factors.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    Global,
    State,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Global => Method::Global,
            MethodArg::State => Method::State,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ProbeArg {
    Dimensions,
    Conjecture1b,
    CirculatorOrder,
    Corollary,
    Conjecture2,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. }
            | Error::UnknownGenerator(_)
            | Error::InvalidMove(_)
            | Error::IllegalDestabilize(_)
            | Error::IndexOutOfRange(_) => EXIT_PARSE,
            Error::Validation(_) | Error::SemisimplicityFailure(_) | Error::NonInvertibleRank(_) => EXIT_VALIDATION,
            _ => EXIT_GUARD,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// A builtin name or a category file; the category is not validated.
fn read_category(reference: &str) -> Result<CategoryData, Failure> {
    if let Some(c) = builtin(reference) {
        return Ok(c?);
    }
    let path = Path::new(reference);
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("cannot read category `{reference}`: {e}"),
    })?;
    Ok(parse_category(&text)?)
}

fn load_category(reference: &str) -> Result<CategoryData, Failure> {
    let c = read_category(reference)?;
    let report = c.validate();
    if !report.passed() {
        return Err(Error::Validation(report.failures().join("; ")).into());
    }
    Ok(c)
}

fn matrix_json(m: &Matrix) -> Value {
    (0..m.rows())
        .map(|r| m.row_vec(r).iter().map(scalar).collect::<Value>())
        .collect()
}

fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

struct Output {
    report: Value,
    code: u8,
}

fn ok(report: Value) -> Result<Output, Failure> {
    Ok(Output { report, code: 0 })
}

fn cmd_validate(category: &str) -> Result<Output, Failure> {
    let c = read_category(category)?;
    let r = c.validate();
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|ch| json!({ "name": ch.name, "passed": ch.passed(), "failures": ch.failures }))
        .collect();
    Ok(Output {
        report: json!({ "category": c.name(), "passed": r.passed(), "checks": checks }),
        code: if r.passed() { 0 } else { EXIT_VALIDATION },
    })
}

fn cmd_eval(category: &str, text: &str, method: Method, opts: &EvalOptions) -> Result<Output, Failure> {
    let c = load_category(category)?;
    let p = parse_presentation(text)?;
    let e = evaluate(&p, &c, method, opts)?;
    let mut report = json!({
        "category": c.name(),
        "presentation": p.to_string(),
        "method": method.to_string(),
        "value": scalar(&e.value),
    });
    let mut code = 0;
    if let (Some(agree), Some(s)) = (e.agree, &e.state_value) {
        report["agree"] = json!(agree);
        report["global_value"] = scalar(&e.value);
        report["state_value"] = scalar(s);
        if !agree {
            code = EXIT_VIOLATION;
        }
    }
    Ok(Output { report, code })
}

fn trial_json(t: &acq_core::fuzz::FuzzTrial) -> Value {
    let mut v = json!({
        "trial": t.index,
        "moves": t.moves,
        "result": t.result.to_string(),
    });
    match &t.value {
        Ok(e) => {
            v["value"] = scalar(&e.value);
            if let Some(a) = e.agree {
                v["agree"] = json!(a);
            }
        }
        Err(err) => v["error"] = json!(err.to_string()),
    }
    v
}

fn cmd_fuzz(category: &str, text: &str, cfg: FuzzConfig, opts: &EvalOptions) -> Result<Output, Failure> {
    let c = load_category(category)?;
    let p = parse_presentation(text)?;
    let r = fuzz(&p, &c, &cfg, opts)?;
    let discrepancies: Vec<Value> = r.discrepancies().map(trial_json).collect();
    let errors: Vec<Value> = r.errors().map(trial_json).collect();
    let code = if !discrepancies.is_empty() || r.base.agree == Some(false) {
        EXIT_VIOLATION
    } else if !errors.is_empty() {
        EXIT_GUARD
    } else {
        0
    };
    Ok(Output {
        report: json!({
            "category": c.name(),
            "presentation": p.to_string(),
            "method": cfg.method.to_string(),
            "seed": cfg.seed,
            "moves": cfg.moves,
            "trials": cfg.trials,
            "value": scalar(&r.base.value),
            "discrepancies": discrepancies,
            "errors": errors,
        }),
        code,
    })
}

struct ProbeArgs {
    bound: u64,
    presentation: Option<String>,
    generator: usize,
    simple: Option<String>,
    k: usize,
}

fn cmd_probe(category: &str, probe: ProbeArg, a: ProbeArgs, opts: &EvalOptions) -> Result<Output, Failure> {
    let c = load_category(category)?;
    let name = |b: usize| c.simple(b).name.clone();
    let body = match probe {
        ProbeArg::Dimensions => {
            let t = dimension_report(&c)?;
            json!({ "probe": "dimensions", "simples": t.names, "dims": t.dims })
        }
        ProbeArg::Conjecture1b => {
            let r = conjecture1b_probe(&c)?;
            let values: Vec<Value> = r
                .values
                .iter()
                .map(|(b, v)| json!({ "simple": name(*b), "value": scalar(v) }))
                .collect();
            json!({ "probe": "conjecture1b", "simple_count": r.simple_count, "values": values })
        }
        ProbeArg::CirculatorOrder => {
            let orders: Vec<Value> = circulator_order_probe(&c, a.bound)?
                .iter()
                .map(|o| json!({ "a": name(o.a), "b": name(o.b), "size": o.size, "order": o.order }))
                .collect();
            json!({ "probe": "circulator-order", "bound": a.bound, "orders": orders })
        }
        ProbeArg::Corollary => {
            let text = a.presentation.ok_or_else(|| usage("corollary needs --presentation"))?;
            let p: Presentation = parse_presentation(&text)?;
            let r = corollary_probe(&p, &c, a.generator, opts)?;
            json!({
                "probe": "corollary",
                "presentation": p.to_string(),
                "generator": a.generator,
                "with_commutator": r.with_commutator.to_string(),
                "with_generator_killed": r.with_generator_killed.to_string(),
                "lhs": scalar(&r.lhs),
                "rhs": scalar(&r.rhs),
                "equal": r.equal,
            })
        }
        ProbeArg::Conjecture2 => {
            let s = a.simple.ok_or_else(|| usage("conjecture2 needs --simple"))?;
            let b = c.label(&s).ok_or_else(|| usage(format!("no simple named `{s}`")))?;
            let entries: Vec<Value> = conjecture2_probe(&c, b, a.k, opts)?
                .iter()
                .map(|e| {
                    json!({
                        "w": name(e.w),
                        "is_zero": e.is_zero,
                        "is_identity": e.is_identity,
                        "matrix": matrix_json(&e.value.mat),
                    })
                })
                .collect();
            json!({ "probe": "conjecture2", "simple": s, "k": a.k, "entries": entries })
        }
    };
    let mut report = body;
    report["category"] = json!(c.name());
    ok(report)
}

fn run(cli: Cli) -> Result<Output, Failure> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    let opts = EvalOptions {
        max_carrier: cli.max_carrier,
    };
    match cli.command {
        Command::Validate { category } => cmd_validate(&category),
        Command::Eval {
            category,
            presentation,
            method,
        } => cmd_eval(&category, &presentation, method.into(), &opts),
        Command::Fuzz {
            category,
            presentation,
            moves,
            trials,
            seed,
            method,
        } => cmd_fuzz(
            &category,
            &presentation,
            FuzzConfig {
                moves,
                trials,
                seed,
                method: method.into(),
            },
            &opts,
        ),
        Command::Probe {
            category,
            probe,
            bound,
            presentation,
            generator,
            simple,
            k,
        } => cmd_probe(
            &category,
            probe,
            ProbeArgs {
                bound,
                presentation,
                generator,
                simple,
                k,
            },
            &opts,
        ),
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
    let timing = cli.timing;
    let start = Instant::now();
    match run(cli) {
        Ok(mut out) => {
            if timing {
                out.report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            }
            let text = serde_json::to_string_pretty(&out.report).expect("serializable");
            // a closed pipe (e.g. `| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("acq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
