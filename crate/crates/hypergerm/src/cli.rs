use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hypergerm_core::calculus::{check_chain_rule, hyper_compose, hyper_derivative};
use hypergerm_core::finite::{
    build_flat_nonconstant, check_dimensions, d_gamma_estimate, delta_quotients, DeltaSample, DgammaOptions, DgammaValue,
    IrrationalSpec, SeqFn,
};
use hypergerm_core::germ::{germ_verdict, st};
use hypergerm_core::hindman::verify_certificate;
use hypergerm_core::secant::{secant_solve, ResidualSpec, DEFAULT_MAX_ITER};
use hypergerm_core::{BigReal, Config, Error, HyperGerm, Precision, Result, StdPart};
use serde_json::{json, Value};

use crate::json::{certificate_from_json, certificate_to_json, envelope, num, render, text, Diagnostics};
use crate::search::par_search_monochromatic;
use crate::specs::{parse_coloring, parse_int_list, parse_positive, parse_real, read_file};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ENGINE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Germ calculus at 0⁺, finite calculus along irrational rotations, and
/// Hindman certificates.
#[derive(Debug, Parser)]
#[command(name = "hypergerm", version)]
struct Cli {
    /// Working precision in significant digits (at least 30).
    #[arg(long, global = true, default_value_t = 60, value_parser = clap::value_parser!(u32).range(30..=2000))]
    precision: u32,
    /// Truncation order K of Laurent expansions.
    #[arg(long, global = true, default_value_t = Config::DEFAULT_ORDER, value_parser = clap::value_parser!(u32).range(Config::MIN_ORDER as i64..=1024))]
    order: u32,
    /// Print the JSON envelope.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Print plain text (the default).
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derivative of a germ.
    Derive {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Standard part of a germ.
    St {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide whether two germs are equal, and order them if not.
    GermEq {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Compose two entire germs, f ∘ g.
    Compose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Check (f ∘ g)' = (f' ∘ g)·g' for entire germs.
    ChainCheck {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Secant iteration on a residual in Y (derivative), X and F (candidate).
    SolveOde {
        #[arg(long, allow_hyphen_values = true)]
        residual: String,
        #[arg(long, allow_hyphen_values = true)]
        g0: String,
        #[arg(long, allow_hyphen_values = true)]
        g1: String,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// rm_γ(n), the signed distance from n to the nearest multiple of γ.
    Rm {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long)]
        n: String,
    },
    /// Convergent numerators with |rm_γ| below eps.
    Witnesses {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        count: usize,
    },
    /// Estimate D_γ f(n).
    Dgamma {
        #[command(flatten)]
        gamma: GammaArg,
        /// periodized:<expr in x>, seq:<expr in n> or flat.
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// Compare D_γ[f∘rm_γ] with f'∘rm_γ at sample points.
    CheckDimensions {
        #[command(flatten)]
        gamma: GammaArg,
        #[arg(long, allow_hyphen_values = true)]
        outer: String,
        /// Comma-separated sample points.
        #[arg(long)]
        ns: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// The sequence ⌊1/|rm_γ(n)|⌋: unbounded, yet D_γ of it is 0.
    FlatDemo {
        #[command(flatten)]
        gamma: GammaArg,
        /// Number of witnesses to tabulate.
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Smallest set of k numbers whose subset sums share one color.
    Hindman {
        /// mod:<m>, expr:<expr in n> or table:<path>.
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        window: u64,
    },
    /// Check a certificate written by `hindman --json`.
    VerifyHindman {
        #[arg(long)]
        coloring: String,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Debug, Args)]
struct GammaArg {
    /// phi, sqrt2, e, dec:<digits> or cf:<a0,a1,...>.
    #[arg(long)]
    gamma: String,
}

impl GammaArg {
    fn spec(&self) -> Result<IrrationalSpec> {
        IrrationalSpec::parse(&self.gamma)
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced: the JSON payload, its text rendering and the
/// germ-verdict confidence when there is one.
struct Report {
    result: Value,
    text: String,
    confidence: Option<u32>,
}

impl Report {
    fn new(result: Value, text: impl Into<String>) -> Self {
        Report { result, text: text.into(), confidence: None }
    }

    fn confident(mut self, cfg: &Config) -> Self {
        self.confidence = Some(cfg.order);
        self
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            } else {
                Output { code: EXIT_OK, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let cfg = Config::new(Precision::digits(cli.precision), cli.order);
    let name = command_name(&cli.command);
    match execute(&cli.command, &cfg) {
        Ok(report) => {
            let stdout = if cli.json {
                let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
                render(&envelope(name, &echo, report.result, &Diagnostics::new(&cfg, report.confidence))) + "\n"
            } else {
                report.text + "\n"
            };
            Output { code: EXIT_OK, stdout, stderr: String::new() }
        }
        Err(e) => Output { code: EXIT_ENGINE, stdout: String::new(), stderr: format!("error[{}]: {}\n", e.code(), e) },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Derive { .. } => "derive",
        Command::St { .. } => "st",
        Command::GermEq { .. } => "germ-eq",
        Command::Compose { .. } => "compose",
        Command::ChainCheck { .. } => "chain-check",
        Command::SolveOde { .. } => "solve-ode",
        Command::Rm { .. } => "rm",
        Command::Witnesses { .. } => "witnesses",
        Command::Dgamma { .. } => "dgamma",
        Command::CheckDimensions { .. } => "check-dimensions",
        Command::FlatDemo { .. } => "flat-demo",
        Command::Hindman { .. } => "hindman",
        Command::VerifyHindman { .. } => "verify-hindman",
    }
}

fn germ(s: &str) -> Result<HyperGerm> {
    HyperGerm::parse(s)
}

fn execute(cmd: &Command, cfg: &Config) -> Result<Report> {
    match cmd {
        Command::Derive { expr } => {
            let d = hyper_derivative(&germ(expr)?, cfg)?;
            Ok(Report::new(json!({ "input": text(germ(expr)?), "derivative": text(&d) }), d.to_string()))
        }
        Command::St { expr } => {
            let g = germ(expr)?;
            let (value, shown) = match st(&g, cfg)? {
                StdPart::Finite(v) => (num(&v, cfg), v.to_decimal_string(crate::json::digits(cfg))),
                StdPart::PlusInfinite => (text("+inf"), "+inf".into()),
                StdPart::MinusInfinite => (text("-inf"), "-inf".into()),
            };
            let series = g.series(cfg)?.render(12);
            Ok(Report::new(json!({ "input": text(&g), "standard_part": value, "series": series }), shown).confident(cfg))
        }
        Command::GermEq { a, b } => {
            let v = germ_verdict(&germ(a)?, &germ(b)?, cfg)?;
            let order = match v.sign {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            let result = json!({
                "equal": v.equal,
                "order": order,
                "first_difference": v.first_difference.map(text),
            });
            let shown = if v.equal { "equal".to_string() } else { format!("not equal ({})", order) };
            Ok(Report::new(result, shown).confident(cfg))
        }
        Command::Compose { f, g } => {
            let h = hyper_compose(&germ(f)?, &germ(g)?)?;
            Ok(Report::new(json!({ "composition": text(h.repr()) }), h.repr().to_string()))
        }
        Command::ChainCheck { f, g } => {
            let r = check_chain_rule(&germ(f)?, &germ(g)?, cfg)?;
            let result = json!({ "holds": r.holds, "lhs": text(&r.lhs), "rhs": text(&r.rhs) });
            let shown = format!("{}\nlhs: {}\nrhs: {}", if r.holds { "holds" } else { "fails" }, r.lhs, r.rhs);
            Ok(Report::new(result, shown).confident(cfg))
        }
        Command::SolveOde { residual, g0, g1, max_iter } => {
            let spec = ResidualSpec::parse(residual)?;
            let out = secant_solve(&spec, &germ(g0)?, &germ(g1)?, *max_iter, cfg)?;
            let trace: Vec<Value> = out
                .trace
                .iter()
                .map(|t| {
                    json!({
                        "index": t.index,
                        "candidate": text(&t.candidate),
                        "residual": text(&t.residual),
                        "residual_is_zero": t.residual_is_zero,
                    })
                })
                .collect();
            let result = json!({
                "solution": text(&out.solution),
                "converged": out.converged,
                "iterations": out.updates,
                "trace": trace,
            });
            let shown = format!(
                "{}\niterations {}{}",
                out.solution,
                out.updates,
                if out.converged { "" } else { " (not converged)" }
            );
            Ok(Report::new(result, shown).confident(cfg))
        }
        Command::Rm { gamma, n } => {
            let spec = gamma.spec()?;
            let r = spec.resolve(cfg).rm(&parse_positive(n)?)?;
            let result = json!({ "gamma": text(&spec), "n": text(n.trim()), "rm": num(&r, cfg) });
            Ok(Report::new(result, r.to_decimal_string(crate::json::digits(cfg))))
        }
        Command::Witnesses { gamma, eps, count } => {
            let spec = gamma.spec()?;
            let g = spec.resolve(cfg);
            let ws = g.small_rm_witnesses(&parse_real(eps, cfg)?, *count)?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for w in &ws {
                let r = g.rm(w)?;
                lines.push(format!("{}\t{}", w, r.to_decimal_string(12)));
                rows.push(json!({ "n": text(w), "rm": num(&r, cfg) }));
            }
            Ok(Report::new(json!({ "gamma": text(&spec), "witnesses": rows }), lines.join("\n")))
        }
        Command::Dgamma { gamma, func, n, depth } => {
            let spec = gamma.spec()?;
            let f = SeqFn::parse(func, &spec)?;
            let opts = DgammaOptions::default().with_depth(*depth);
            let est = d_gamma_estimate(&f, &spec, &parse_positive(n)?, &opts, cfg)?;
            let (value, shown) = dgamma_json(&est.value, cfg);
            let result = json!({
                "gamma": text(&spec),
                "function": f.describe(),
                "estimate": value,
                "sample": sample_json(&est.sample, cfg),
            });
            Ok(Report::new(result, shown))
        }
        Command::CheckDimensions { gamma, outer, ns, depth } => {
            let spec = gamma.spec()?;
            let outer = hypergerm_core::Expr::parse(outer)?;
            let report = check_dimensions(&outer, &spec, &parse_int_list(ns)?, *depth, cfg)?;
            let mut rows = Vec::new();
            let mut lines = vec![format!("derivative {}", report.derivative)];
            for r in &report.rows {
                let err = r.abs_error.as_ref().map(|e| e.to_decimal_string(6));
                lines.push(format!(
                    "n={}\texpected {}\terror {}\t{}",
                    r.n,
                    r.expected.to_decimal_string(12),
                    err.as_deref().unwrap_or("n/a"),
                    if r.pass { "pass" } else { "FAIL" }
                ));
                rows.push(json!({
                    "n": text(&r.n),
                    "rm": num(&r.rm, cfg),
                    "estimate": dgamma_json(&r.estimate, cfg).0,
                    "expected": num(&r.expected, cfg),
                    "abs_error": r.abs_error.as_ref().map(|e| num(e, cfg)),
                    "pass": r.pass,
                }));
            }
            lines.push(if report.pass { "all pass".into() } else { "some rows fail".into() });
            let result = json!({
                "gamma": text(&spec),
                "outer": text(&report.outer),
                "derivative": text(&report.derivative),
                "tolerance": "0.000001",
                "rows": rows,
                "pass": report.pass,
            });
            Ok(Report::new(result, lines.join("\n")))
        }
        Command::FlatDemo { gamma, count } => flat_demo(&gamma.spec()?, *count, cfg),
        Command::Hindman { coloring, k, window } => {
            let c = parse_coloring(coloring)?;
            match par_search_monochromatic(&c, *k, *window, cfg)? {
                Some(cert) => {
                    let set: Vec<String> = cert.set.iter().map(u64::to_string).collect();
                    let shown = format!("{{{}}} color {}", set.join(", "), cert.color);
                    Ok(Report::new(json!({ "found": true, "certificate": certificate_to_json(&cert) }), shown))
                }
                None => Ok(Report::new(json!({ "found": false, "certificate": null }), "not found")),
            }
        }
        Command::VerifyHindman { coloring, cert } => {
            let c = parse_coloring(coloring)?;
            let raw = read_file(cert)?;
            let v: Value = serde_json::from_str(&raw).map_err(|e| Error::InvalidInput(format!("certificate: {}", e)))?;
            // accept a bare certificate or a whole `hindman --json` envelope
            let body = v.pointer("/result/certificate").unwrap_or(&v);
            let cert = certificate_from_json(body, &c, cfg)?;
            let valid = verify_certificate(&c, &cert, cfg)?;
            Ok(Report::new(json!({ "valid": valid }), if valid { "valid" } else { "invalid" }))
        }
    }
}

fn dgamma_json(v: &DgammaValue, cfg: &Config) -> (Value, String) {
    match v {
        DgammaValue::Finite { value, error_bar } => (
            json!({ "kind": "finite", "value": num(value, cfg), "error_bar": num(error_bar, cfg) }),
            format!("{} ± {}", value.to_decimal_string(crate::json::digits(cfg)), error_bar.to_decimal_string(3)),
        ),
        DgammaValue::PlusInfinite => (json!({ "kind": "plus_infinite" }), "+inf".into()),
        DgammaValue::MinusInfinite => (json!({ "kind": "minus_infinite" }), "-inf".into()),
        DgammaValue::NoLimit => (json!({ "kind": "no_limit" }), "no limit".into()),
    }
}

fn sample_json(s: &DeltaSample, cfg: &Config) -> Value {
    let entries: Vec<Value> = s
        .entries
        .iter()
        .map(|e| json!({ "m": text(&e.m), "rm": num(&e.rm, cfg), "quotient": num(&e.quotient, cfg) }))
        .collect();
    json!({ "n": text(&s.n), "depth": s.depth, "entries": entries })
}

/// Values of ⌊1/|rm|⌋ along witnesses, `D_γ` of it at the first witness
/// with `|rm| < γ/4`, and the first witness pair `(n, m)` where the quotient
/// vanishes.
fn flat_demo(spec: &IrrationalSpec, count: usize, cfg: &Config) -> Result<Report> {
    let g = spec.resolve(cfg);
    let f = build_flat_nonconstant(spec.clone());
    let bound = f.bind(cfg);
    let tenth = parse_real("0.1", cfg)?;
    let ws = g.small_rm_witnesses(&tenth, count.max(3))?;
    let mut values = Vec::new();
    let mut lines = Vec::new();
    let mut last: Option<BigReal> = None;
    let mut increasing = true;
    for w in &ws {
        let v = bound.value(w)?;
        increasing &= last.as_ref().is_none_or(|l| v > *l);
        lines.push(format!("f({}) = {}", w, v.to_decimal_string(30)));
        values.push(json!({ "n": text(w), "rm": num(&g.rm(w)?, cfg), "value": num(&v, cfg) }));
        last = Some(v);
    }
    let quarter = g.value().mul_pow2(-2);
    let mut n0 = None;
    for w in &ws {
        if g.rm(w)?.abs() < quarter {
            n0 = Some(w.clone());
            break;
        }
    }
    let n0 = n0.ok_or_else(|| Error::PrecisionExhausted("no witness below gamma/4".into()))?;
    let est = d_gamma_estimate(&f, spec, &n0, &DgammaOptions::default(), cfg)?;
    let (dg, dg_text) = dgamma_json(&est.value, cfg);
    lines.push(if increasing { "values strictly increasing".into() } else { "values not increasing".into() });
    lines.push(format!("D_gamma f({}) = {}", n0, dg_text));

    let sample = delta_quotients(&f, spec, &n0, 16, cfg)?;
    let mut pair = Value::Null;
    if let Some(e) = sample.entries.iter().find(|e| e.quotient.is_zero()) {
        let (a, b) = (bound.value(&n0)?, bound.value(&(&n0 + &e.m))?);
        lines.push(format!("f({} + {}) = f({}) = {}", n0, e.m, n0, a.to_decimal_string(30)));
        pair = json!({
            "n": text(&n0),
            "m": text(&e.m),
            "f_n": num(&a, cfg),
            "f_n_plus_m": num(&b, cfg),
            "equal": a == b,
        });
    }
    let result = json!({
        "gamma": text(spec),
        "values": values,
        "increasing": increasing,
        "n": text(&n0),
        "dgamma": dg,
        "zero_quotient_pair": pair,
    });
    Ok(Report::new(result, lines.join("\n")))
}
