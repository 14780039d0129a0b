use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use opdp::error::Error;
use opdp::freegamma::Gamma;
use opdp::levelstep::{enumerate_bhs, enumerate_c_r, phi_eval_bhs};
use opdp::par::{configure_threads, Exec};
use opdp::permcomb::{Composition, OrderedPartition};
use opdp::scalar::FieldSpec;
use opdp::setoperad::{Op, Operad};
use opdp::verifier::{run_suite, step_instances, Bounds, CheckConfig, CheckReport, Suite};

mod expr;

#[derive(Parser, Debug)]
#[command(name = "opdp", version, about = "Divided power operations over the commutative and level operads")]
struct Cli {
    /// `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    /// `lev` or `com`; operad-dependent suites run on both when omitted.
    #[arg(long, global = true)]
    operad: Option<Operad>,
    #[arg(long, global = true, default_value_t = 5)]
    max_arity: u64,
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: u64,
    #[arg(long, global = true, default_value_t = 5)]
    max_index: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Perturbs one right-hand side per suite; for testing the checkers themselves.
    #[arg(long, global = true, hide = true)]
    inject_fault: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List a finite combinatorial set.
    Enumerate {
        kind: Kind,
        /// An arity, or a composition such as `(2,1)`.
        param: String,
        /// Number of parts, for `compositions`.
        parts: Option<usize>,
    },
    /// Evaluate one operation, e.g. `phi h=[1,1]@r=(2) [0,2]`.
    Eval { expr: String },
    /// Run a relation suite, or `all`.
    Verify { suite: String },
    /// Export structure constants as JSON.
    Table { operad: Operad },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Lev,
    Bhs,
    #[value(name = "c_r")]
    CR,
    Compositions,
    Partitions,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            other => Failure::Math(other.to_string()),
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Math(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Math(e.to_string()))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn enumerate(cli: &Cli, kind: Kind, param: &str, parts: Option<usize>) -> Result<(), Failure> {
    let arity = || param.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("expected an arity, got `{param}`")));
    let items: Vec<String> = match kind {
        Kind::Lev => Operad::Lev.elements(arity()?).iter().map(Op::to_string).collect(),
        Kind::Bhs => enumerate_bhs(arity()?).iter().map(|u| u.to_string()).collect(),
        Kind::CR => {
            let r: Composition = param.parse()?;
            enumerate_c_r(&r).iter().map(|h| h.to_string()).collect()
        }
        Kind::Compositions => {
            let n = arity()?;
            let all = match parts {
                Some(p) => Composition::all(n, p),
                None => Composition::all_positive(n),
            };
            all.iter().map(Composition::to_string).collect()
        }
        Kind::Partitions => {
            let r: Composition = param.parse()?;
            OrderedPartition::all_of_shape(&r).iter().map(OrderedPartition::to_string).collect()
        }
    };
    let text = if cli.json {
        pretty(&json!({ "count": items.len().to_string(), "items": items }))
    } else {
        let mut s = format!("count: {}\n", items.len());
        for item in &items {
            s.push_str(item);
            s.push('\n');
        }
        s
    };
    emit(cli, &text)
}

fn render_report(r: &CheckReport) -> String {
    let operad = r.operad.as_deref().map(|o| format!(" [{o}]")).unwrap_or_default();
    let status = if r.ok() { "PASS" } else { "FAIL" };
    let mut s = format!(
        "{status} {}{operad} field={}: {}/{} passed\n",
        r.suite, r.field, r.passed, r.attempted
    );
    for (relation, count) in &r.relations {
        s.push_str(&format!("  {relation}: {count}\n"));
    }
    for f in &r.failures {
        s.push_str(&format!("  failed {}: {}\n", f.case, f.witness));
    }
    s
}

fn verify(cli: &Cli, suite: &str) -> Result<bool, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let base = CheckConfig {
        operad: Operad::Lev,
        field: cli.field,
        bounds: Bounds {
            max_arity: cli.max_arity as usize,
            max_degree: cli.max_degree as usize,
            max_index: cli.max_index as usize,
        },
        seed: cli.seed,
        fault: cli.inject_fault,
        exec: Exec::Parallel,
    };
    let mut reports = Vec::new();
    for s in suites {
        let operads = match cli.operad {
            Some(o) => vec![o],
            None if s.per_operad() => vec![Operad::Com, Operad::Lev],
            None => vec![Operad::Lev],
        };
        for operad in operads {
            let start = Instant::now();
            let report = run_suite(s, &CheckConfig { operad, ..base.clone() });
            let label = report.operad.as_deref().map(|o| format!(" [{o}]")).unwrap_or_default();
            eprintln!("{s}{label} {}: {:.2}s", cli.field, start.elapsed().as_secs_f64());
            reports.push(report);
        }
    }
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
        s.push('\n');
        s
    } else {
        reports.iter().map(render_report).collect()
    };
    emit(cli, &text)?;
    Ok(reports.iter().all(CheckReport::ok))
}

fn terms_json(terms: impl Iterator<Item = (String, String)>) -> Value {
    Value::Array(terms.map(|(k, c)| json!({ "term": k, "coeff": c })).collect())
}

fn table(cli: &Cli, operad: Operad) -> Result<(), Failure> {
    let field = cli.field;
    let mut rows = Vec::new();
    let bound = match operad {
        Operad::Lev => {
            let d = cli.max_degree as usize;
            for (h, us) in step_instances(d) {
                let out = phi_eval_bhs(&h, &us, field)?;
                rows.push(json!({
                    "op": "phi",
                    "h": h.to_string(),
                    "args": us.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                    "terms": terms_json(out.terms().iter().map(|(u, c)| (u.to_string(), c.to_string()))),
                }));
            }
            d
        }
        Operad::Com => {
            let n = cli.max_arity as usize;
            let g = Gamma::new(Operad::Com, field);
            let x = g.generator(0);
            let gp = |k: usize, a| g.gamma_eval(&Op::com(k), &Composition::new(vec![k]), &[a]);
            for m in 1..n {
                for k in 1..=n - m {
                    let out = g.product(&gp(m, x.clone())?, &gp(k, x.clone())?)?;
                    rows.push(json!({
                        "op": "product",
                        "indices": [m.to_string(), k.to_string()],
                        "terms": terms_json(out.terms().iter().map(|(t, c)| (t.to_string(), c.to_string()))),
                    }));
                }
            }
            for m in 1..=n {
                for k in 1..=n / m {
                    let out = gp(m, gp(k, x.clone())?)?;
                    rows.push(json!({
                        "op": "iterate",
                        "indices": [m.to_string(), k.to_string()],
                        "terms": terms_json(out.terms().iter().map(|(t, c)| (t.to_string(), c.to_string()))),
                    }));
                }
            }
            n
        }
    };
    let doc = json!({
        "operad": operad.to_string(),
        "field": field.to_string(),
        "bound": bound.to_string(),
        "rows": rows,
    });
    emit(cli, &pretty(&doc))
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Enumerate { kind, param, parts } => enumerate(cli, *kind, param, *parts).map(|_| true),
        Command::Eval { expr } => {
            let operad = cli.operad.unwrap_or(Operad::Lev);
            let out = expr::eval(expr, cli.field, operad)?;
            emit(cli, &format!("{out}\n")).map(|_| true)
        }
        Command::Verify { suite } => verify(cli, suite),
        Command::Table { operad } => table(cli, *operad).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("OPDP_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        configure_threads(n);
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
    }
}
