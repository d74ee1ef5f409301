//! `lintwist`: normal forms, Lie membership and verification runs for the
//! algebra `AB = m BA + b I`.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict,
//! 2 parse error, 3 parameter error.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use lintwist::diamond;
use lintwist::lie::{self, Witnesser};
use lintwist::propsuite::{self, CheckConfig};
use lintwist::{parse, Algebra, Coeff, Error, Rational, TwistParams};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symbolic,
    Concrete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "lintwist",
    version,
    about = "Exact computations in the algebra AB = m*BA + b*I"
)]
struct Cli {
    /// Keep m and b symbolic, or fix them to rationals.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    /// Slope m (concrete mode), e.g. 2, -3, 1/2.
    #[arg(long, global = true, allow_hyphen_values = true)]
    m: Option<String>,
    /// Offset b (concrete mode); defaults to 0.
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    /// Largest k of the epsilon(k) family examined by `ambiguities` and `check`.
    #[arg(long, global = true, default_value_t = 20)]
    max_k: u32,
    /// Filtration degree bound for `closure` and the closure check.
    #[arg(long, global = true, default_value_t = 6)]
    max_deg: usize,
    /// Largest exponent in the reordering and ad-power checks.
    #[arg(long, global = true, default_value_t = 6)]
    max_exp: u32,
    /// Random elements in the strategy-independence check.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form in the basis C^k A^l, B^l C^k.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide whether the element is a Lie polynomial in A, B.
    IsLie {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Split the normal form into Lie part and complement part.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Bracket expression in A, B equal to the element.
    Witness {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Enumerate and resolve all ambiguities up to --max-k.
    Ambiguities,
    /// Run every verification and print the report.
    Check,
    /// Close {A, B} under brackets up to --max-deg and compare with the predicted basis.
    Closure,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nf { .. } => "nf",
            Command::IsLie { .. } => "is-lie",
            Command::Decompose { .. } => "decompose",
            Command::Witness { .. } => "witness",
            Command::Ambiguities => "ambiguities",
            Command::Check => "check",
            Command::Closure => "closure",
        }
    }

    fn input(&self) -> Option<&str> {
        match self {
            Command::Nf { expr }
            | Command::IsLie { expr }
            | Command::Decompose { expr }
            | Command::Witness { expr } => Some(expr),
            _ => None,
        }
    }
}

/// A finished command: what to print and how to exit.
struct Outcome {
    code: u8,
    text: String,
    result: Value,
}

impl Outcome {
    fn ok(text: String, result: Value) -> Self {
        Self {
            code: 0,
            text,
            result,
        }
    }

    fn verdict(affirmative: bool, text: String, result: Value) -> Self {
        Self {
            code: if affirmative { 0 } else { 1 },
            text,
            result,
        }
    }
}

enum Failure {
    Parse(String),
    Params(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Parse(p.to_string()),
            Error::InvalidParams(_)
            | Error::RootOfUnityParam(_)
            | Error::DenominatorVanishes { .. } => Failure::Params(e.to_string()),
            other => Failure::Negative(other.to_string()),
        }
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Failure> {
    BigRational::from_str(s.trim())
        .map_err(|_| Failure::Params(format!("--{flag}: '{s}' is not a rational number")))
}

fn parse_expr<F: Coeff>(alg: &Algebra<F>, text: &str) -> Result<lintwist::NcPoly<F>, Failure> {
    parse(text, alg.params()).map_err(|e| Failure::Parse(e.to_string()))
}

fn run<F: Coeff>(alg: &Algebra<F>, cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Nf { expr } => {
            let nf = alg.normal_form(&parse_expr(alg, expr)?);
            Ok(Outcome::ok(
                nf.to_string(),
                json!({ "normal_form": nf.to_string() }),
            ))
        }
        Command::IsLie { expr } => {
            let d = lie::decompose(alg, &parse_expr(alg, expr)?)?;
            let yes = d.complement_part.is_zero();
            let text = format!(
                "{}\nlie_part: {}\ncomplement_part: {}",
                if yes { "yes" } else { "no" },
                d.lie_part,
                d.complement_part
            );
            let result = json!({
                "is_lie": yes,
                "lie_part": d.lie_part.to_string(),
                "complement_part": d.complement_part.to_string(),
            });
            Ok(Outcome::verdict(yes, text, result))
        }
        Command::Decompose { expr } => {
            let d = lie::decompose(alg, &parse_expr(alg, expr)?)?;
            let text = format!(
                "lie_part: {}\ncomplement_part: {}",
                d.lie_part, d.complement_part
            );
            let result = json!({
                "lie_part": d.lie_part.to_string(),
                "complement_part": d.complement_part.to_string(),
            });
            Ok(Outcome::ok(text, result))
        }
        Command::Witness { expr } => {
            let p = parse_expr(alg, expr)?;
            let w = Witnesser::new(alg)?.witness(&p)?;
            let rendered = w.to_string();
            let reparsed = parse(&rendered, alg.params())
                .map_err(|e| Failure::Negative(format!("witness self-check: {e}")))?;
            if alg.normal_form(&reparsed) != lie::decompose(alg, &p)?.lie_part {
                return Err(Failure::Negative(format!(
                    "witness self-check failed for {rendered}"
                )));
            }
            Ok(Outcome::ok(
                rendered.clone(),
                json!({ "witness": rendered, "verified": true }),
            ))
        }
        Command::Ambiguities => {
            let records = diamond::ambiguity_report(alg, cli.max_k);
            let all = records.iter().all(|r| r.resolvable);
            let inclusions = diamond::enumerate_inclusions(cli.max_k);
            let mut text = String::new();
            for r in &records {
                let status = if r.resolvable {
                    "resolvable"
                } else {
                    "NOT RESOLVABLE"
                };
                text.push_str(&format!(
                    "{} {status}: {} lhs steps, {} rhs steps, common NF {}\n",
                    r.id,
                    r.steps_lhs.len(),
                    r.steps_rhs.len(),
                    r.common_nf
                ));
            }
            text.push_str(&format!(
                "{} overlap ambiguities, {} inclusion ambiguities",
                records.len(),
                inclusions.len()
            ));
            let result = json!({
                "ambiguities": records,
                "inclusions": inclusions.len(),
                "all_resolvable": all,
            });
            Ok(Outcome::verdict(all && inclusions.is_empty(), text, result))
        }
        Command::Check => {
            let config = CheckConfig {
                max_exp: Some(cli.max_exp),
                equalexp_n: Some(8),
                ad_powers: Some((cli.max_exp, cli.max_exp)),
                xi5_max_k: Some(10),
                max_k: Some(cli.max_k),
                table_k: Some(cli.max_k),
                trials: Some(cli.trials),
                trial_max_len: 10,
                closure_deg: Some(cli.max_deg),
                seed: cli.seed,
            };
            let report = propsuite::run_all(alg, &config);
            let ok = report.all_passed();
            let text = report.to_string().trim_end().to_string();
            let result = json!({ "all_passed": ok, "records": report.records });
            Ok(Outcome::verdict(ok, text, result))
        }
        Command::Closure => {
            let r = lie::lie_closure(alg, cli.max_deg)?;
            let computed: Vec<String> = r.computed_basis.iter().map(ToString::to_string).collect();
            let predicted: Vec<String> =
                r.predicted_basis.iter().map(ToString::to_string).collect();
            let text = format!(
                "max_degree: {}\nspans_equal: {}\ncomputed ({}):\n  {}\npredicted ({}):\n  {}",
                r.max_degree,
                r.spans_equal,
                computed.len(),
                computed.join("\n  "),
                predicted.len(),
                predicted.join("\n  ")
            );
            let result = json!({
                "max_degree": r.max_degree,
                "spans_equal": r.spans_equal,
                "computed_basis": computed,
                "predicted_basis": predicted,
            });
            Ok(Outcome::verdict(r.spans_equal, text, result))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (params_json, outcome) = match cli.mode {
        ModeArg::Symbolic => {
            let params = json!({ "mode": "symbolic", "m": "m", "b": "b" });
            if cli.m.is_some() || cli.b.is_some() {
                (
                    params,
                    Err(Failure::Params(
                        "--m and --b require --mode concrete".into(),
                    )),
                )
            } else {
                let alg = Algebra::new(TwistParams::symbolic());
                (params, run(&alg, &cli))
            }
        }
        ModeArg::Concrete => {
            let built = (|| {
                let m = cli
                    .m
                    .as_deref()
                    .ok_or_else(|| Failure::Params("--mode concrete requires --m".into()))
                    .and_then(|s| parse_rational("m", s))?;
                let b = match cli.b.as_deref() {
                    Some(s) => parse_rational("b", s)?,
                    None => Rational::from_integer(0.into()),
                };
                Ok(TwistParams::concrete(m, b)?)
            })();
            match built {
                Ok(p) => {
                    let params = json!({ "mode": "concrete", "m": p.m().to_string(), "b": p.b().to_string() });
                    let alg = Algebra::new(p);
                    (params, run(&alg, &cli))
                }
                Err(e) => {
                    let params = json!({ "mode": "concrete", "m": cli.m, "b": cli.b });
                    (params, Err(e))
                }
            }
        }
    };
    match outcome {
        Ok(o) => {
            let rendered = match cli.output {
                OutputArg::Text => o.text,
                OutputArg::Json => {
                    let doc = json!({
                        "command": cli.command.name(),
                        "params": params_json,
                        "input": cli.command.input(),
                        "result": o.result,
                    });
                    serde_json::to_string_pretty(&doc).expect("json value")
                }
            };
            // a closed stdout (e.g. piped into `head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{rendered}");
            ExitCode::from(o.code)
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Negative(m) => (1, m),
                Failure::Parse(m) => (2, m),
                Failure::Params(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
