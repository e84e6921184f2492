//! Command-line calculator for the Toeplitz quantum semigroup.
//!
//! Algebraic commands print the canonical form an expression parses back
//! from; predicate commands print one-line JSON; `--json` switches every
//! command to JSON. Exit codes: 0 success, 1 failed check or unconverged
//! numeric run, 2 parse or usage error.
//!
//! Defaults for truncation size, tolerance, probe depth, and seed come from
//! an optional key=value file named by the `TQ_CONFIG` environment variable;
//! flags override the file.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::BigRational;
use serde_json::{json, Value as Json};

use toeplitzq::numerics::truncate;
use toeplitzq::tensor::{cqg_witness, delta, weak_hopf_check};
use toeplitzq::{parse, sampling, verify};
use toeplitzq::{Element, Error, EvalValue, Functional, TensorElement};

#[derive(Parser)]
#[command(name = "tq", version, about = "Toeplitz quantum semigroup calculator")]
struct Cli {
    /// Emit one-line JSON on stdout instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression to its canonical term list.
    Simplify {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Multiply two expressions.
    Mul {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Extract the graded component of index k.
    Grade {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Decide membership in the ideal of compact operators.
    Compact {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Symbol of the element: a trigonometric polynomial on the circle.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Operator norm: exact on diagonal elements, else power iteration on a
    /// truncation.
    Norm {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Truncation size for the power-iteration route.
        #[arg(long)]
        trunc: Option<usize>,
        /// Relative tolerance for the power-iteration route.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Apply the comultiplication a ↦ Δ(a).
    Delta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check both weak antipode identities on one element.
    HopfCheck {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Verify the invariance law h∗ρ = ρ(I)·h against probe functionals.
    HaarVerify {
        /// Probe grid bound: all monomials with entries up to this depth.
        #[arg(long)]
        depth: Option<u64>,
    },
    /// Cesàro means of convolution powers of the diagonal state with
    /// weight q, compared against the invariant functional.
    Cesaro {
        /// State weight, a rational strictly between 0 and 1, e.g. 1/2.
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
        #[arg(long)]
        depth: Option<u64>,
    },
    /// Distance witness separating the semigroup from every compact
    /// quantum group.
    WitnessCqg {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Convolve two measures on the circle.
    MeasureConv {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Run every seeded law sweep and print one line per law.
    Axioms {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Compress to the first n basis vectors and dump the matrix.
    Truncate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Defaults shared by the numeric commands.
struct Config {
    trunc: usize,
    tol: f64,
    depth: u64,
    seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            trunc: 64,
            tol: 1e-10,
            depth: 32,
            seed: 0,
        }
    }
}

fn load_config() -> Result<Config, String> {
    let mut c = Config::default();
    let Some(path) = std::env::var_os("TQ_CONFIG") else {
        return Ok(c);
    };
    let path = std::path::PathBuf::from(path);
    let text =
        std::fs::read_to_string(&path).map_err(|e| format!("config {}: {e}", path.display()))?;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "config line {}: expected key=value, got {line:?}",
                idx + 1
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        let parse_err = |e: &dyn std::fmt::Display| format!("config key {key}: {e}");
        match key {
            "trunc" => c.trunc = value.parse().map_err(|e| parse_err(&e))?,
            "tol" => c.tol = value.parse().map_err(|e| parse_err(&e))?,
            "depth" => c.depth = value.parse().map_err(|e| parse_err(&e))?,
            "seed" => c.seed = value.parse().map_err(|e| parse_err(&e))?,
            other => {
                return Err(format!("config line {}: unknown key {other:?}", idx + 1));
            }
        }
    }
    Ok(c)
}

struct Output {
    text: String,
    json: Json,
    exit: u8,
}

impl Output {
    fn ok(text: String, json: Json) -> Self {
        Self {
            text,
            json,
            exit: 0,
        }
    }

    /// Predicates print JSON in both modes.
    fn predicate(json: Json, passed: bool) -> Self {
        Self {
            text: json.to_string(),
            json,
            exit: u8::from(!passed),
        }
    }
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self { message, code: 2 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // Everything else is a malformed request; an unconverged numeric run
        // is a failed check.
        let code = match e {
            Error::NoConvergence { .. } => 1,
            _ => 2,
        };
        Self {
            message: e.to_string(),
            code,
        }
    }
}

fn element_json(e: &Element) -> Json {
    let terms: Vec<Json> = e
        .terms()
        .map(|(m, c)| json!({"n": m.n, "m": m.m, "coeff": c.to_string()}))
        .collect();
    json!({"degree": 1, "display": e.to_string(), "terms": terms})
}

fn tensor_json(t: &TensorElement) -> Json {
    let terms: Vec<Json> = t
        .terms()
        .map(|(tuple, c)| {
            let factors: Vec<String> = tuple.iter().map(|m| m.to_string()).collect();
            json!({"factors": factors, "coeff": c.to_string()})
        })
        .collect();
    json!({"degree": t.degree(), "display": t.to_string(), "terms": terms})
}

fn eval_output(v: EvalValue) -> Output {
    match v {
        EvalValue::El(e) => Output::ok(e.to_string(), element_json(&e)),
        EvalValue::Tensor(t) => Output::ok(t.to_string(), tensor_json(&t)),
    }
}

fn run(command: &Command, config: &Config) -> Result<Output, Failure> {
    match command {
        Command::Simplify { expr } => Ok(eval_output(parse::parse_eval(expr)?)),
        Command::Mul { lhs, rhs } => {
            // Route through the evaluator so scalar factors coerce across
            // tensor degrees the same way they do inside one expression.
            let product = toeplitzq::Expr::Mul(
                Box::new(parse::parse_expression(lhs)?),
                Box::new(parse::parse_expression(rhs)?),
            );
            Ok(eval_output(product.eval()?))
        }
        Command::Grade { expr, k } => {
            let a = parse::parse_element(expr)?;
            let g = a.graded_component(*k);
            Ok(Output::ok(g.to_string(), element_json(&g)))
        }
        Command::Compact { expr } => {
            let a = parse::parse_element(expr)?;
            Ok(Output {
                text: json!({"compact": a.is_compact()}).to_string(),
                json: json!({"compact": a.is_compact()}),
                exit: 0,
            })
        }
        Command::Symbol { expr } => {
            let s = parse::parse_element(expr)?.symbol();
            let coeffs: Vec<Json> = s
                .coeffs()
                .map(|(k, c)| json!({"k": k, "coeff": c.to_string()}))
                .collect();
            Ok(Output::ok(
                s.to_string(),
                json!({"display": s.to_string(), "coeffs": coeffs}),
            ))
        }
        Command::Norm { expr, trunc, tol } => {
            let a = parse::parse_element(expr)?;
            if a.is_diagonal() {
                let n = a.norm_t0()?;
                return Ok(Output::ok(
                    format!("{} (exact, squared {})", n.value, n.squared),
                    json!({
                        "method": "diagonal-exact",
                        "value": n.value,
                        "squared": n.squared.to_string(),
                    }),
                ));
            }
            let n = trunc.unwrap_or(config.trunc);
            let tol = tol.unwrap_or(config.tol);
            let value = truncate(&a, n).op_norm(tol)?;
            Ok(Output::ok(
                format!("{value} (power iteration, trunc={n}, tol={tol:e})"),
                json!({
                    "method": "power-iteration",
                    "value": value,
                    "trunc": n,
                    "tol": tol,
                }),
            ))
        }
        Command::Delta { expr } => {
            let d = delta(&parse::parse_element(expr)?);
            Ok(Output::ok(d.to_string(), tensor_json(&d)))
        }
        Command::HopfCheck { expr } => {
            let ok = weak_hopf_check(&parse::parse_element(expr)?);
            Ok(Output::predicate(json!({"weak_hopf": ok}), ok))
        }
        Command::HaarVerify { depth } => {
            let depth = depth.unwrap_or(config.depth);
            let mut probes = vec![
                Functional::counit(),
                Functional::haar0(),
                Functional::diagonal_state(BigRational::new(1.into(), 2.into()))?,
                Functional::diagonal_state(BigRational::new(1.into(), 3.into()))?,
            ];
            let mut rng = sampling::rng(config.seed);
            for _ in 0..4 {
                probes.push(sampling::sample_table_functional(&mut rng));
            }
            let ok = Functional::haar().is_haar(&probes, depth);
            Ok(Output::predicate(
                json!({
                    "haar": ok,
                    "depth": depth,
                    "probes": probes.len(),
                    "seed": config.seed,
                }),
                ok,
            ))
        }
        Command::Cesaro { q, steps, depth } => {
            let q: BigRational = q
                .parse()
                .map_err(|e| Failure::usage(format!("--q {q:?}: {e}")))?;
            let depth = depth.unwrap_or(config.depth);
            let table = Functional::diagonal_state(q)?.cesaro_iterate(*steps, depth)?;
            let entries: Vec<Json> = table
                .entries
                .iter()
                .map(|(m, v)| json!({"monomial": m.to_string(), "value": v.to_string()}))
                .collect();
            Ok(Output::ok(
                table.to_string(),
                json!({
                    "steps": table.steps,
                    "depth": table.depth,
                    "max_deviation": table.max_deviation,
                    "entries": entries,
                }),
            ))
        }
        Command::WitnessCqg { samples, seed } => {
            let seed = seed.unwrap_or(config.seed);
            let rep = cqg_witness(*samples, seed);
            let ok = rep.certified();
            Ok(Output::predicate(
                json!({
                    "samples": rep.samples,
                    "seed": rep.seed,
                    "primary_failures": rep.primary_failures,
                    "mirror_failures": rep.mirror_failures,
                    "certified": ok,
                    "lower_bound": rep.lower_bound(),
                }),
                ok,
            ))
        }
        Command::MeasureConv { lhs, rhs } => {
            let a = parse::parse_measure(lhs)?;
            let b = parse::parse_measure(rhs)?;
            let c = a.convolve(&b);
            let atoms: Vec<Json> = c
                .atoms()
                .map(|(t, w)| json!({"angle": t.fraction().to_string(), "weight": w.to_string()}))
                .collect();
            let density: Vec<Json> = c
                .density()
                .map(|(k, w)| json!({"k": k, "coeff": w.to_string()}))
                .collect();
            Ok(Output::ok(
                c.to_string(),
                json!({"display": c.to_string(), "atoms": atoms, "density": density}),
            ))
        }
        Command::Axioms { seed, cases } => {
            let seed = seed.unwrap_or(config.seed);
            let reports = verify::run_all(seed, *cases);
            let passed = reports.iter().all(|r| r.passed());
            let text = reports
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            let rows: Vec<Json> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "cases": r.cases,
                        "failures": r.failures,
                        "max_deviation": r.max_deviation,
                        "passed": r.passed(),
                    })
                })
                .collect();
            Ok(Output {
                text,
                json: json!({
                    "seed": seed,
                    "cases": cases,
                    "passed": passed,
                    "reports": rows,
                }),
                exit: u8::from(!passed),
            })
        }
        Command::Truncate { expr, n } => {
            let a = parse::parse_element(expr)?;
            let n = n.unwrap_or(config.trunc);
            let m = truncate(&a, n);
            let rows: Vec<Json> = (0..m.size())
                .map(|i| {
                    let row: Vec<Json> = (0..m.size())
                        .map(|j| {
                            let e = m.entry(i, j);
                            json!([e.re, e.im])
                        })
                        .collect();
                    Json::Array(row)
                })
                .collect();
            Ok(Output::ok(m.dump(), json!({"n": n, "rows": rows})))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; only real usage errors
            // take the error path.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match load_config() {
        Ok(c) => c,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    match run(&cli.command, &config) {
        Ok(out) => {
            let line = if cli.json {
                out.json.to_string()
            } else {
                out.text
            };
            // A closed pipe (e.g. `tq axioms | head`) is not an error.
            let _ = writeln!(io::stdout(), "{line}");
            ExitCode::from(out.exit)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
