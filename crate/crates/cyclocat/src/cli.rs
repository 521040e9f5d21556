//! Command-line front end: flag parsing, plain-text and JSON reporting,
//! and batch ingestion.
//!
//! Exit codes: 0 on success, 1 on a domain error (well-formed flags but
//! invalid input, e.g. an ill-typed expression), 2 on a usage error.
//! `ζ` is always given as an exponent: `--zeta A` means `ζ = θ^A`.

use std::fs;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{aut_2group, count_classes_bruteforce, count_classes_formula, is_equivalent};
use crate::cocycle::{omega, verification_report, CocycleSpec};
use crate::cyclotomic::Modulus;
use crate::diagram::{
    normalize_with_limit, rewrite_trace, verify_snake, NormalForm, Shape, DEFAULT_MAX_ATOMS,
};
use crate::dsl;
use crate::pointed::{constant_of, verify_pentagon};

#[derive(Parser)]
#[command(
    name = "cyclocat",
    version,
    about = "Exact computations in cyclic pointed fusion categories"
)]
pub struct Cli {
    /// Emit a JSON report instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Clone, Copy, Deserialize)]
pub struct Context {
    /// Order of the cyclic group (and of θ).
    #[arg(long)]
    pub n: usize,
    /// Exponent a in ζ = θ^a.
    #[arg(long)]
    pub zeta: i64,
}

impl Context {
    fn spec(self) -> Result<CocycleSpec, String> {
        if self.n == 0 {
            return Err("n must be a positive integer".to_string());
        }
        Ok(CocycleSpec::from_exponent(Modulus::new(self.n), self.zeta))
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Evaluate the 3-cocycle ω_ζ(i, j, k).
    Omega {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        k: i64,
    },
    /// Check the cocycle identity and normalization exhaustively.
    VerifyCocycle {
        #[command(flatten)]
        ctx: Context,
    },
    /// The associated constant of δ_j (default j = 1).
    Constant {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, default_value_t = 1)]
        j: i64,
    },
    /// Check the pentagon axiom over all quadruples of degrees.
    Pentagon {
        #[command(flatten)]
        ctx: Context,
    },
    /// Rewrite a diagram expression to normal form.
    Normalize {
        #[command(flatten)]
        ctx: Context,
        /// Morphism expression, e.g. "id(1) # f ; id(1)".
        #[arg(long)]
        expr: String,
        /// Print each rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Parse an expression and dump the AST as JSON.
    Parse {
        #[arg(long)]
        expr: String,
    },
    /// Check both zig-zag identities for the dual pair (k, n−k).
    Snake {
        #[command(flatten)]
        ctx: Context,
        #[arg(long)]
        k: usize,
    },
    /// Test whether the categories for θ^a and θ^b are equivalent.
    Equivalent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
    /// Number of categories Vect_{Z_n}^ζ up to equivalence.
    Count {
        #[arg(long)]
        n: usize,
        /// Cross-check the formula against orbit enumeration.
        #[arg(long)]
        oracle: bool,
        /// List the orbits (implies --oracle).
        #[arg(long)]
        explain: bool,
    },
    /// Class counts and 2-group data for every n up to a bound.
    Sweep {
        #[arg(long)]
        max: usize,
        /// Output file for the JSON results.
        #[arg(long)]
        out: String,
    },
    /// Invariants of the automorphism 2-group of Vect_{Z_n}^ζ.
    Autgroup {
        #[command(flatten)]
        ctx: Context,
    },
    /// Run a JSON array of requests, isolating per-item failures.
    Batch {
        /// Input file holding a JSON array of request objects.
        #[arg(long)]
        file: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
}

fn shape_string(nf: &NormalForm) -> String {
    match nf.shape {
        Shape::Caps(p) => format!("caps^{p} ⊗ id^{}", nf.cod),
        Shape::Cups(q) => format!("cups^{q} ⊗ id^{}", nf.dom),
        Shape::Identity => format!("id^{}", nf.dom),
    }
}

fn max_atoms() -> usize {
    std::env::var("CYCLOCAT_MAX_ATOMS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ATOMS)
}

/// A single command's result: the machine-readable value and the plain
/// text lines.
struct Output {
    value: Value,
    plain: Vec<String>,
}

fn ok(value: Value, plain: Vec<String>) -> Result<Output, String> {
    Ok(Output { value, plain })
}

fn run_normalize(ctx: Context, expr: &str, trace: bool) -> Result<Output, String> {
    let spec = ctx.spec()?;
    let ast = dsl::parse(expr).map_err(|e| e.to_string())?;
    let word = dsl::elaborate(&ast, spec).map_err(|e| e.to_string())?;
    let nf = normalize_with_limit(&word, max_atoms()).map_err(|e| e.to_string())?;
    let mut plain = Vec::new();
    if trace {
        plain.extend(rewrite_trace(&word));
    }
    let result = json!({
        "scalar": nf.scalar,
        "shape": shape_string(&nf),
        "dom": nf.dom,
        "cod": nf.cod,
    });
    plain.push(result.to_string());
    ok(result, plain)
}

fn run_cmd(cmd: &Cmd) -> Result<Output, String> {
    match cmd {
        Cmd::Omega { ctx, i, j, k } => {
            let spec = ctx.spec()?;
            let value = omega(spec, *i, *j, *k);
            ok(
                json!({ "exponent": value.exponent() }),
                vec![value.to_string()],
            )
        }
        Cmd::VerifyCocycle { ctx } => {
            let report = verification_report(ctx.spec()?);
            let plain = vec![
                format!(
                    "cocycle identity: {}",
                    if report.cocycle_identity {
                        "ok"
                    } else {
                        "FAILED"
                    }
                ),
                format!(
                    "normalized: {}",
                    if report.normalized { "ok" } else { "FAILED" }
                ),
            ];
            ok(
                serde_json::to_value(&report).expect("report serializes"),
                plain,
            )
        }
        Cmd::Constant { ctx, j } => {
            let spec = ctx.spec()?;
            let c = constant_of(spec, *j);
            ok(
                json!({
                    "n": ctx.n,
                    "zeta_exponent": spec.zeta().exponent(),
                    "j": spec.modulus().reduce(*j),
                    "exponent": c.value.exponent(),
                }),
                vec![c.value.to_string()],
            )
        }
        Cmd::Pentagon { ctx } => {
            let holds = verify_pentagon(ctx.spec()?);
            ok(
                json!({ "n": ctx.n, "zeta_exponent": ctx.spec()?.zeta().exponent(), "pentagon": holds }),
                vec![format!("pentagon: {}", if holds { "ok" } else { "FAILED" })],
            )
        }
        Cmd::Normalize { ctx, expr, trace } => run_normalize(*ctx, expr, *trace),
        Cmd::Parse { expr } => {
            let ast = dsl::parse(expr).map_err(|e| e.to_string())?;
            let value = serde_json::to_value(&ast).expect("AST serializes");
            let plain = vec![value.to_string()];
            ok(value, plain)
        }
        Cmd::Snake { ctx, k } => {
            let spec = ctx.spec()?;
            if *k >= ctx.n {
                return Err(format!(
                    "k must satisfy 0 <= k < n, got k={k} with n={}",
                    ctx.n
                ));
            }
            let holds = verify_snake(spec, *k);
            ok(
                json!({ "n": ctx.n, "zeta_exponent": spec.zeta().exponent(), "k": k, "snake": holds }),
                vec![format!(
                    "snake identities: {}",
                    if holds { "ok" } else { "FAILED" }
                )],
            )
        }
        Cmd::Equivalent { n, a, b } => {
            if *n == 0 {
                return Err("n must be a positive integer".to_string());
            }
            let report = is_equivalent(Modulus::new(*n), *a, *b);
            let plain = vec![match report.witness {
                Some(j) => format!("equivalent (witness j = {j})"),
                None => "not equivalent".to_string(),
            }];
            ok(
                serde_json::to_value(&report).expect("report serializes"),
                plain,
            )
        }
        Cmd::Count { n, oracle, explain } => {
            if *n == 0 {
                return Err("n must be a positive integer".to_string());
            }
            let formula = count_classes_formula(*n);
            let mut value = json!({ "n": n, "count": formula });
            let mut plain = vec![formula.to_string()];
            if *oracle || *explain {
                let orbits = count_classes_bruteforce(*n);
                if orbits.count != formula {
                    return Err(format!(
                        "formula/oracle disagreement at n={n}: {formula} vs {}",
                        orbits.count
                    ));
                }
                value["oracle_count"] = json!(orbits.count);
                plain.push(format!("oracle agrees: {}", orbits.count));
                if *explain {
                    for orbit in &orbits.orbits {
                        plain.push(format!("orbit: {orbit:?}"));
                    }
                    value["orbits"] = json!(orbits.orbits);
                }
            }
            ok(value, plain)
        }
        Cmd::Sweep { max, out } => {
            if *max == 0 {
                return Err("--max must be a positive integer".to_string());
            }
            let mut rows = Vec::with_capacity(*max);
            for n in 1..=*max {
                let formula = count_classes_formula(n);
                let orbits = count_classes_bruteforce(n);
                let pi0_sizes: Vec<usize> = (0..n as i64)
                    .map(|a| aut_2group(Modulus::new(n), a).pi0.len())
                    .collect();
                rows.push(json!({
                    "n": n,
                    "c_formula": formula,
                    "c_bruteforce": orbits.count,
                    "pi0_sizes": pi0_sizes,
                }));
            }
            let body = serde_json::to_string_pretty(&rows).expect("rows serialize");
            fs::write(out, body).map_err(|e| format!("cannot write {out}: {e}"))?;
            ok(
                json!({ "max": max, "out": out, "rows": rows.len() }),
                vec![format!("wrote {} rows to {out}", rows.len())],
            )
        }
        Cmd::Autgroup { ctx } => {
            let spec = ctx.spec()?;
            let g = aut_2group(spec.modulus(), spec.zeta().exponent() as i64);
            let mut plain = vec![
                format!("pi0 = {:?}", g.pi0),
                format!("pi1 = Z_{}", g.pi1_order),
                format!(
                    "Aut(F) = Z_{} for every automorphism F",
                    g.functor_aut_order
                ),
            ];
            if !g.non_unit_solutions.is_empty() {
                plain.push(format!(
                    "note: non-unit degrees also satisfying the congruence: {:?}",
                    g.non_unit_solutions
                ));
            }
            ok(serde_json::to_value(&g).expect("group serializes"), plain)
        }
        Cmd::Batch { .. } => unreachable!("handled by the caller"),
    }
}

/// One entry of a batch file; mirrors the subcommand flags.
#[derive(Deserialize)]
#[serde(tag = "cmd", rename_all = "kebab-case")]
enum Request {
    Omega {
        n: usize,
        zeta: i64,
        i: i64,
        j: i64,
        k: i64,
    },
    VerifyCocycle {
        n: usize,
        zeta: i64,
    },
    Constant {
        n: usize,
        zeta: i64,
        #[serde(default = "default_degree")]
        j: i64,
    },
    Pentagon {
        n: usize,
        zeta: i64,
    },
    Normalize {
        n: usize,
        zeta: i64,
        expr: String,
    },
    Parse {
        expr: String,
    },
    Snake {
        n: usize,
        zeta: i64,
        k: usize,
    },
    Equivalent {
        n: usize,
        a: i64,
        b: i64,
    },
    Count {
        n: usize,
        #[serde(default)]
        oracle: bool,
    },
    Autgroup {
        n: usize,
        zeta: i64,
    },
}

fn default_degree() -> i64 {
    1
}

impl Request {
    fn into_cmd(self) -> Cmd {
        let ctx = |n, zeta| Context { n, zeta };
        match self {
            Request::Omega { n, zeta, i, j, k } => Cmd::Omega {
                ctx: ctx(n, zeta),
                i,
                j,
                k,
            },
            Request::VerifyCocycle { n, zeta } => Cmd::VerifyCocycle { ctx: ctx(n, zeta) },
            Request::Constant { n, zeta, j } => Cmd::Constant {
                ctx: ctx(n, zeta),
                j,
            },
            Request::Pentagon { n, zeta } => Cmd::Pentagon { ctx: ctx(n, zeta) },
            Request::Normalize { n, zeta, expr } => Cmd::Normalize {
                ctx: ctx(n, zeta),
                expr,
                trace: false,
            },
            Request::Parse { expr } => Cmd::Parse { expr },
            Request::Snake { n, zeta, k } => Cmd::Snake {
                ctx: ctx(n, zeta),
                k,
            },
            Request::Equivalent { n, a, b } => Cmd::Equivalent { n, a, b },
            Request::Count { n, oracle } => Cmd::Count {
                n,
                oracle,
                explain: false,
            },
            Request::Autgroup { n, zeta } => Cmd::Autgroup { ctx: ctx(n, zeta) },
        }
    }
}

#[derive(Serialize)]
struct Report {
    request: Value,
    version: &'static str,
    elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn report(request: Value, started: Instant, outcome: Result<Value, String>) -> Report {
    let (result, error) = match outcome {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e)),
    };
    Report {
        request,
        version: env!("CARGO_PKG_VERSION"),
        elapsed_ms: started.elapsed().as_millis(),
        result,
        error,
    }
}

fn run_batch(file: &str, out: Option<&str>) -> Result<(String, bool), String> {
    let body = fs::read_to_string(file).map_err(|e| format!("cannot read {file}: {e}"))?;
    let items: Vec<Value> =
        serde_json::from_str(&body).map_err(|e| format!("malformed batch file: {e}"))?;
    let mut reports = Vec::with_capacity(items.len());
    for item in items {
        let started = Instant::now();
        let outcome = serde_json::from_value::<Request>(item.clone())
            .map_err(|e| format!("bad request: {e}"))
            .and_then(|req| run_cmd(&req.into_cmd()).map(|o| o.value));
        reports.push(report(item, started, outcome));
    }
    let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("cannot write {path}: {e}"))?;
            Ok((format!("wrote {} reports to {path}", reports.len()), false))
        }
        None => Ok((text, true)),
    }
}

/// Full dispatch; returns the process exit code. Batch-file shape errors
/// count as usage errors (exit 2), everything else invalid as domain
/// errors (exit 1).
pub fn run(cli: Cli) -> i32 {
    match &cli.cmd {
        Cmd::Batch { file, out } => match run_batch(file, out.as_deref()) {
            Ok((text, _)) => {
                println!("{text}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        cmd => {
            let started = Instant::now();
            match run_cmd(cmd) {
                Ok(output) => {
                    if cli.json {
                        let argv: Vec<String> = std::env::args().skip(1).collect();
                        let rep = report(json!(argv), started, Ok(output.value));
                        println!("{}", serde_json::to_string_pretty(&rep).expect("report"));
                    } else {
                        for line in output.plain {
                            println!("{line}");
                        }
                    }
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
    }
}
