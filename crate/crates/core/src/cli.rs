//! Command-line front end. [`run`] returns the exit code and the text to print,
//! so the binary is a thin wrapper and tests can drive it in-process.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::context::Context;
use crate::error::Error;
use crate::expr::{parse_op, parse_poly, parse_symbol};
use crate::fields::{hamiltonian_to_field, lagrange_bracket};
use crate::infchar::{infchar_key, matching_case};
use crate::ops::DiffOp;
use crate::quantize::{
    contact_witness, graded_pieces, is_contact_resonant, is_projectively_resonant, projective_witness, subsymbol,
    subsymbol_via_quantization, zeta_coefficient, Quantizer,
};
use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::symbol::{fine_symbol, Basis, FineComponent};
use crate::verify::{run_suite, VerifyConfig, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "heiscalc", version, about = "Contact Heisenberg calculus on R^(2l+1)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Half-dimension: the space is R^(2 ell + 1).
    #[arg(long, global = true, default_value_t = 1)]
    ell: usize,
    /// Source density weight.
    #[arg(long, global = true, value_parser = rational_arg)]
    lambda: Option<Rational>,
    /// Target density weight.
    #[arg(long, global = true, value_parser = rational_arg)]
    mu: Option<Rational>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Highest operator order used by `verify`.
    #[arg(long, global = true, default_value_t = 3)]
    max_order: u32,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subsymbol of an operator of order at most k.
    Subsymbol {
        expr: String,
        /// The order k; defaults to the order of the operator (at least 1).
        #[arg(long)]
        order: Option<u32>,
    },
    /// Leading fine symbol and bidegree.
    Finesym { expr: String },
    /// Contact projective quantization of a symbol (or the affine one with --affine).
    Quantize {
        symbol: String,
        #[arg(long)]
        affine: bool,
    },
    /// Fine symbol components of an operator under the projective quantization.
    Dequantize { expr: String },
    /// Order and Heisenberg order.
    Bidegree { expr: String },
    /// Fine filtration degree of an operator, or the graded pieces of level --b.
    Filtration {
        expr: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },
    /// Projective and contact resonance of delta.
    Resonance {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        delta: Option<Rational>,
    },
    /// Compare the infinitesimal characters of two fine symbol modules.
    Infchar {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        delta: Option<Rational>,
        /// Two pairs `k,d k',d'`.
        #[arg(long, num_args = 2, value_parser = pair_arg)]
        pair: Vec<(u32, u32)>,
    },
    /// Lagrange bracket of two Hamiltonians.
    Bracket { f: String, g: String },
    /// Run a named property suite, or `all`.
    Verify { suite: String },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s}"))
}

fn pair_arg(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected k,d, got {s}"))?;
    let p = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t}: {e}"));
    Ok((p(a)?, p(b)?))
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    input: Value,
    result: Value,
    text: Vec<String>,
    latex: Option<String>,
    warnings: Vec<String>,
    code: i32,
}

impl Report {
    fn new(command: &'static str, input: Value) -> Self {
        Report {
            command,
            input,
            result: Value::Null,
            text: Vec::new(),
            latex: None,
            warnings: Vec::new(),
            code: EXIT_OK,
        }
    }
}

fn r(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn component_json(c: &FineComponent) -> Value {
    json!({"k": c.k, "d": c.d, "symbol": c.part.to_string()})
}

struct Env {
    g: Global,
}

impl Env {
    fn lambda(&self) -> Rational {
        self.g
            .lambda
            .clone()
            .unwrap_or_else(|| Rational::from_integer(0.into()))
    }

    fn mu(&self) -> Rational {
        self.g.mu.clone().unwrap_or_else(|| self.lambda())
    }

    fn ctx(&self) -> Result<Context, Error> {
        Context::with_weights(self.g.ell, self.lambda(), self.mu())
    }

    fn op(&self, src: &str) -> Result<DiffOp, Error> {
        parse_op(src, &self.ctx()?)
    }

    fn context_json(&self, delta_override: Option<&Rational>) -> Value {
        let lam = self.g.lambda.as_ref();
        let mu = self.g.mu.as_ref().or(lam);
        let delta = match (delta_override, lam, mu) {
            (Some(d), _, _) => Some(d.clone()),
            (None, Some(l), Some(m)) => Some(m - l),
            _ => None,
        };
        json!({
            "ell": self.g.ell,
            "lambda": lam.map(r),
            "mu": mu.map(r),
            "delta": delta.as_ref().map(r),
        })
    }

    fn delta_of(&self, explicit: &Option<Rational>) -> Rational {
        explicit.clone().unwrap_or_else(|| self.mu() - self.lambda())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let s = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: s,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: s,
                }
            };
        }
    };
    let env = Env { g: cli.global.clone() };
    let delta_override = match &cli.command {
        Command::Resonance { delta } | Command::Infchar { delta, .. } => delta.clone(),
        _ => None,
    };
    match dispatch(&env, &cli.command) {
        Ok(rep) => render(&env, rep, delta_override.as_ref()),
        Err(e) => {
            let code = if e.is_domain_error() { EXIT_DOMAIN } else { EXIT_USAGE };
            let stdout = if env.g.format == Format::Json {
                let v = json!({
                    "command": command_name(&cli.command),
                    "context": env.context_json(delta_override.as_ref()),
                    "error": e.to_string(),
                });
                format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
            } else {
                String::new()
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Subsymbol { .. } => "subsymbol",
        Command::Finesym { .. } => "finesym",
        Command::Quantize { .. } => "quantize",
        Command::Dequantize { .. } => "dequantize",
        Command::Bidegree { .. } => "bidegree",
        Command::Filtration { .. } => "filtration",
        Command::Resonance { .. } => "resonance",
        Command::Infchar { .. } => "infchar",
        Command::Bracket { .. } => "bracket",
        Command::Verify { .. } => "verify",
    }
}

fn render(env: &Env, rep: Report, delta_override: Option<&Rational>) -> Outcome {
    let stdout = match env.g.format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("command".into(), Value::String(rep.command.into()));
            m.insert("context".into(), env.context_json(delta_override));
            m.insert("input".into(), rep.input);
            m.insert("result".into(), rep.result);
            m.insert(
                "warnings".into(),
                Value::Array(rep.warnings.iter().cloned().map(Value::String).collect()),
            );
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(m)).unwrap())
        }
        Format::Text => {
            let mut s = rep.text.join("\n");
            s.push('\n');
            s
        }
        Format::Latex => match rep.latex {
            Some(l) => format!("{l}\n"),
            None => {
                let mut s = rep.text.join("\n");
                s.push('\n');
                s
            }
        },
    };
    let stderr = rep.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Outcome {
        code: rep.code,
        stdout,
        stderr,
    }
}

fn dispatch(env: &Env, cmd: &Command) -> Result<Report, Error> {
    let ell = env.g.ell;
    Context::new(ell)?;
    match cmd {
        Command::Subsymbol { expr, order } => {
            let t = env.op(expr)?;
            let k = order.unwrap_or_else(|| t.order().unwrap_or(0).max(1));
            let (lam, mu) = (env.lambda(), env.mu());
            let s = subsymbol(&t, k, &lam, &mu)?;
            let mut rep = Report::new("subsymbol", json!({"expr": expr, "order": k}));
            let g = zeta_coefficient(&s);
            let mut res = Map::new();
            res.insert("component".into(), component_json(&s));
            res.insert("coefficient".into(), Value::String(g.to_string()));
            if s.k == 1 {
                res.insert("hamiltonian".into(), Value::String(g.to_string()));
            }
            let delta = &mu - &lam;
            if is_contact_resonant(&delta, ell) || is_projectively_resonant(&delta, 2 * ell + 1) {
                rep.warnings
                    .push("delta is resonant; the quantization cross-check was skipped".into());
            } else if !t.is_zero() {
                let o = subsymbol_via_quantization(&t, k, &lam, &mu)?;
                if o.part != s.part {
                    rep.code = EXIT_VERIFY;
                    rep.warnings
                        .push(format!("quantization cross-check disagrees: {}", o.part));
                }
            }
            rep.text = vec![
                format!("subsymbol in Sigma^({},{}): {}", s.k, s.d, s.part),
                format!("coefficient of zeta^{}: {g}", s.k),
            ];
            rep.latex = Some(s.part.to_latex());
            rep.result = Value::Object(res);
            Ok(rep)
        }
        Command::Finesym { expr } => {
            let t = env.op(expr)?;
            let c = fine_symbol(&t)?;
            let mut rep = Report::new("finesym", json!({"expr": expr}));
            rep.result = json!({"bidegree": [c.k, c.d], "component": component_json(&c)});
            rep.text = vec![format!("fine symbol in Sigma^({},{}): {}", c.k, c.d, c.part)];
            rep.latex = Some(c.part.to_latex());
            Ok(rep)
        }
        Command::Quantize { symbol, affine } => {
            let (lam, mu) = (env.lambda(), env.mu());
            let delta = &mu - &lam;
            let p = parse_symbol(symbol, ell, &delta)?;
            let qz = Quantizer::new(ell, lam, mu);
            let t = if *affine {
                let p = if p.basis() == Basis::Xi { p } else { p.to_xi_basis()? };
                crate::quantize::quantize_affine(&p, &env.lambda(), &env.mu())?
            } else {
                let p = if p.basis() == Basis::AlphaBeta {
                    p
                } else {
                    p.to_fine_basis()?
                };
                qz?.quantize(&p)?
            };
            let mut rep = Report::new("quantize", json!({"symbol": symbol, "affine": affine}));
            rep.result = json!({"operator": t.to_string()});
            rep.text = vec![t.to_string()];
            rep.latex = Some(t.to_latex());
            Ok(rep)
        }
        Command::Dequantize { expr } => {
            let t = env.op(expr)?;
            let qz = Quantizer::new(ell, env.lambda(), env.mu())?;
            let comps = qz.dequantize(&t)?;
            let mut rep = Report::new("dequantize", json!({"expr": expr}));
            rep.result = json!({"components": comps.iter().map(component_json).collect::<Vec<_>>()});
            rep.text = comps
                .iter()
                .map(|c| format!("Sigma^({},{}): {}", c.k, c.d, c.part))
                .collect();
            rep.latex = Some(comps.iter().map(|c| c.part.to_latex()).collect::<Vec<_>>().join(" + "));
            Ok(rep)
        }
        Command::Bidegree { expr } => {
            let t = env.op(expr)?;
            let (k, d) = t.bidegree()?;
            let mut rep = Report::new("bidegree", json!({"expr": expr}));
            rep.result = json!({"k": k, "d": d});
            rep.text = vec![format!("(k, d) = ({k}, {d})")];
            Ok(rep)
        }
        Command::Filtration { expr, b } => match (expr, b) {
            (Some(expr), None) => {
                let t = env.op(expr)?;
                let qz = Quantizer::new(ell, env.lambda(), env.mu())?;
                let comps = qz.dequantize(&t)?;
                let b = comps.iter().map(|c| 2 * c.d as i64 - c.k as i64).max().unwrap();
                let mut rep = Report::new("filtration", json!({"expr": expr}));
                rep.result = json!({
                    "b": b,
                    "components": comps.iter().map(|c| json!([c.k, c.d])).collect::<Vec<_>>(),
                });
                rep.text = vec![format!("fine filtration degree b = {b}")];
                Ok(rep)
            }
            (None, Some(b)) => {
                let pieces = graded_pieces(*b);
                let mut rep = Report::new("filtration", json!({"b": b}));
                rep.result = json!({"graded_pieces": pieces.iter().map(|p| json!([p.0, p.1])).collect::<Vec<_>>()});
                rep.text = vec![pieces
                    .iter()
                    .map(|(k, d)| format!("Sigma^({k},{d})"))
                    .collect::<Vec<_>>()
                    .join(" + ")];
                Ok(rep)
            }
            _ => Err(Error::Parse {
                pos: 0,
                msg: "filtration takes either an operator or --b".into(),
            }),
        },
        Command::Resonance { delta } => {
            let delta = env.delta_of(delta);
            let proj = is_projectively_resonant(&delta, 2 * ell + 1);
            let cont = is_contact_resonant(&delta, ell);
            let mut res = Map::new();
            res.insert("projective_resonant".into(), Value::Bool(proj));
            res.insert("contact_resonant".into(), Value::Bool(cont));
            if let Some((k, s)) = projective_witness(&delta, ell) {
                res.insert("projective_witness".into(), json!({"k": k, "s": s}));
            }
            if let Some((c, s)) = contact_witness(&delta, ell) {
                res.insert("contact_witness".into(), json!({"c": c, "s": s}));
            }
            let mut rep = Report::new("resonance", json!({"delta": r(&delta)}));
            rep.result = Value::Object(res);
            rep.text = vec![
                format!("delta = {}", fmt_rational(&delta)),
                format!("projectively resonant: {proj}"),
                format!("contact-resonant: {cont}"),
            ];
            Ok(rep)
        }
        Command::Infchar { delta, pair } => {
            let delta = env.delta_of(delta);
            let (k, d) = pair[0];
            let (kp, dp) = pair[1];
            let case = matching_case(k, d, kp, dp, &delta, ell)?;
            let key = infchar_key(k, d, &delta, ell)?;
            let keyp = infchar_key(kp, dp, &delta, ell)?;
            let mut rep = Report::new("infchar", json!({"pairs": [[k, d], [kp, dp]], "delta": r(&delta)}));
            rep.result = json!({
                "same": case.is_some(),
                "case": case.map(|c| c.name()),
                "key": key.entries().iter().map(r).collect::<Vec<_>>(),
                "other_key": keyp.entries().iter().map(r).collect::<Vec<_>>(),
            });
            rep.text = vec![
                format!("key({k},{d}) = {key}"),
                format!("key({kp},{dp}) = {keyp}"),
                match case {
                    Some(c) => format!("same infinitesimal character (case {c})"),
                    None => "distinct infinitesimal characters".into(),
                },
            ];
            Ok(rep)
        }
        Command::Bracket { f, g } => {
            let (pf, pg) = (parse_poly(f, ell)?, parse_poly(g, ell)?);
            let b = lagrange_bracket(&pf, &pg);
            let x = hamiltonian_to_field(&b);
            let mut rep = Report::new("bracket", json!({"f": f, "g": g}));
            rep.result = json!({"bracket": b.to_string(), "field": x.to_string()});
            rep.text = vec![format!("{{f, g}} = {b}"), format!("X = {x}")];
            rep.latex = Some(b.to_latex());
            Ok(rep)
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                ell,
                seed: env.g.seed,
                max_order: env.g.max_order,
                ..VerifyConfig::default()
            };
            let names: Vec<&str> = if suite == "all" {
                SUITES.iter().map(|s| s.0).filter(|n| *n != "falsified").collect()
            } else {
                vec![suite.as_str()]
            };
            let reports = std::thread::scope(|sc| {
                let hs: Vec<_> = names
                    .iter()
                    .map(|n| {
                        let cfg = &cfg;
                        sc.spawn(move || run_suite(n, cfg))
                    })
                    .collect();
                hs.into_iter()
                    .map(|h| h.join().expect("suite panicked"))
                    .collect::<Result<Vec<_>, _>>()
            })?;
            let mut rep = Report::new(
                "verify",
                json!({"suite": suite, "seed": env.g.seed, "max_order": env.g.max_order}),
            );
            let failed: u64 = reports.iter().map(|r| r.failed()).sum();
            let passed: u64 = reports.iter().map(|r| r.passed()).sum();
            if failed > 0 {
                rep.code = EXIT_VERIFY;
            }
            let first = reports.iter().find_map(|r| {
                r.first_counterexample()
                    .map(|(c, e)| json!({"suite": r.suite, "check": c, "input": e}))
            });
            rep.result = json!({
                "passed": passed,
                "failed": failed,
                "first_counterexample": first,
                "suites": reports.iter().map(|r| json!({
                    "suite": r.suite,
                    "passed": r.passed(),
                    "failed": r.failed(),
                    "checks": r.checks.iter().map(|c| json!({
                        "name": c.name, "passed": c.passed, "failed": c.failed,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            rep.text = reports.iter().map(|r| r.to_string()).collect();
            Ok(rep)
        }
    }
}
