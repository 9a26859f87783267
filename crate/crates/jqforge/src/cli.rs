//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use jqforge_core::hit::{cohit_order, hit_decide, min_hit_valuation};
use jqforge_core::norms::{
    adem_valuation, degree_norm, ker_adic_valuation, operator_norm_estimate, NormBounds,
    ValuationReport, Witness,
};
use jqforge_core::opalg::{chi, eval_element, phi_reduce, ChiMethod, EvalBounds};
use jqforge_core::relations::{
    adem_nullspace_with, binary_decompose, ore_solve_default, partition_words, q12_decompose,
    rank_estimate, Semantics,
};
use jqforge_core::series::{
    geometric_inverse, sode_residual, sode_solve, tate_check, Sode, SodeResidual, TateVerdict,
};
use jqforge_core::{Dyadic, Error, OpElement, OpWord, Polynomial, TruncatedSeries};
use serde_json::{json, Value};

use crate::config::Config;
use crate::report::{
    coeff_json, digit_lines, number_json, op_terms, poly_terms, valuation_json, Report,
};
use crate::{paper, CliError, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Parser, Debug)]
#[command(
    name = "jqforge",
    version,
    about = "Exact computations with the dyadic Steenrod squares Jq^k"
)]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Show coefficients with K digits of their 2-adic expansion.
    #[arg(long, global = true, value_name = "K")]
    pub digits: Option<u32>,
    /// Config file with `key = value` lines (default: $JQFORGE_CONFIG).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Largest total degree used by evaluation and norm bounds.
    #[arg(long, global = true)]
    pub deg_bound: Option<u32>,
    /// Largest filtration index searched.
    #[arg(long, global = true)]
    pub max_j: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Recursion,
    Partitions,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Which {
    Adem,
    Ker,
    Estimate,
    Degree,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Binary,
    Q12,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply an operator element to a polynomial.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Relations among words of degree k (nullspace of the symbolic action).
    Adem {
        #[arg(long)]
        k: u32,
        /// Jq^k together with the words of exactly T factors.
        #[arg(long, value_name = "T", conflicts_with = "words")]
        partitions: Option<usize>,
        /// Comma-separated word list, e.g. `Jq3,Jq2.Jq1`.
        #[arg(long)]
        words: Option<String>,
        /// Use multivariable evaluation in N variables instead of powers of one variable.
        #[arg(long, value_name = "N")]
        vars: Option<usize>,
    },
    /// The conjugation chi(Jq^k).
    Chi {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "partitions")]
        method: Method,
    },
    /// Reduction to the classical Steenrod algebra in admissible form.
    Phi {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Valuations and norms of an operator element.
    Norm {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        /// Base of the degree norm.
        #[arg(long, default_value = "1/2")]
        rho: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Decide whether a polynomial is hit.
    Hit {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Order of the one-variable cohit group in degree d.
    Cohit {
        #[arg(long)]
        d: u32,
    },
    /// Common right multiple: theta x = eta y.
    Ore {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Write Jq^k through powers of two or through Jq^1, Jq^2.
    Decompose {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Rank of the span of all words of degree d.
    Rank {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Power-series solution of theta(zeta) = rhs around a center.
    Sode {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        #[arg(long, allow_hyphen_values = true)]
        a0: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// sum_n (Jq^k)^n (f) through a degree.
    Geom {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Convergence check of a truncated series read from a file.
    Tate {
        #[arg(long, value_name = "FILE")]
        series: PathBuf,
    },
    /// Re-check the worked examples and print a PASS/FAIL/DIVERGES ledger.
    VerifyPaper,
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse `argv` (including the program name) and run it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let json = cli.json;
    let cfg = match effective_config(&cli) {
        Ok(c) => c,
        Err(e) => return failure(&e, json, &Config::default()),
    };
    match dispatch(&cli.command, &cfg) {
        Ok((code, report)) => Outcome {
            code,
            stdout: report.render(json),
            stderr: String::new(),
        },
        Err(e) => failure(&e, json, &cfg),
    }
}

fn failure(e: &CliError, json: bool, cfg: &Config) -> Outcome {
    let code = e.exit_code();
    if json {
        let doc = json!({
            "error": {"kind": e.kind(), "message": e.to_string()},
            "config": cfg.to_json(),
        });
        Outcome {
            code,
            stdout: serde_json::to_string_pretty(&doc).unwrap() + "\n",
            stderr: String::new(),
        }
    } else {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Defaults, then the config file, then flags.
pub fn effective_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::from_env()?,
    };
    if let Some(d) = cli.deg_bound {
        cfg.deg_bound = d;
    }
    if let Some(j) = cli.max_j {
        cfg.max_j = j;
    }
    if let Some(k) = cli.digits {
        cfg.digits = k;
    }
    match &cli.command {
        Command::Act { vars: Some(n), .. }
        | Command::Adem { vars: Some(n), .. }
        | Command::Norm { vars: Some(n), .. }
        | Command::Hit { vars: Some(n), .. }
        | Command::Rank { vars: Some(n), .. } => cfg.n_vars = *n,
        Command::Sode { order: Some(n), .. }
        | Command::Geom { order: Some(n), .. } => cfg.order = *n,
        _ => {}
    }
    if cfg.n_vars == 0 {
        return Err(CliError::Usage("n_vars must be at least 1".into()));
    }
    Ok(cfg)
}

fn op(s: &str) -> Result<OpElement, CliError> {
    Ok(s.parse::<OpElement>()?)
}

fn scalar(name: &str, s: &str) -> Result<Dyadic, CliError> {
    s.parse::<Dyadic>()
        .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn norm_bounds(cfg: &Config) -> NormBounds {
    NormBounds {
        n_vars: cfg.n_vars,
        deg_bound: cfg.deg_bound,
        max_j: cfg.max_j,
    }
}

fn dispatch(cmd: &Command, cfg: &Config) -> Result<(i32, Report), CliError> {
    let ok = |r: Report| Ok((EXIT_OK, r));
    match cmd {
        Command::Act { op: o, poly, .. } => ok(act(&op(o)?, poly, cfg)?),
        Command::Adem {
            k,
            partitions,
            words,
            vars,
        } => ok(adem(*k, *partitions, words.as_deref(), vars.is_some(), cfg)?),
        Command::Chi { k, method } => ok(chi_cmd(*k, *method, cfg)),
        Command::Phi { op: o } => ok(phi(&op(o)?, cfg)?),
        Command::Norm {
            which, op: o, rho, ..
        } => ok(norm(*which, &op(o)?, rho, cfg)?),
        Command::Hit { poly, .. } => ok(hit(poly, cfg)?),
        Command::Cohit { d } => ok(cohit(*d, cfg)?),
        Command::Ore { theta, eta } => ok(ore(&op(theta)?, &op(eta)?, cfg)?),
        Command::Decompose { k, mode } => ok(decompose(*k, *mode, cfg)?),
        Command::Rank { d, vars } => ok(rank(*d, vars.is_some(), cfg)),
        Command::Sode {
            op: o,
            rhs,
            center,
            a0,
            ..
        } => ok(sode(o, rhs, center, a0, cfg)?),
        Command::Geom { k, poly, .. } => ok(geom(*k, poly, cfg)?),
        Command::Tate { series, .. } => ok(tate(series, cfg)?),
        Command::VerifyPaper => {
            let (rows, report) = paper::report(cfg);
            let failed = rows.iter().any(|r| r.status == paper::Status::Fail);
            Ok((if failed { EXIT_CHECK_FAILED } else { EXIT_OK }, report))
        }
    }
}

fn act(e: &OpElement, poly: &str, cfg: &Config) -> Result<Report, CliError> {
    let f = Polynomial::parse(poly, cfg.n_vars)?;
    let out = eval_element(e, &f);
    let mut r = Report::new("act", cfg);
    r.set("op", e.to_string())
        .set("poly", f.to_string())
        .set("result", out.to_string())
        .set("terms", poly_terms(&out, cfg));
    r.line(out.to_string());
    for l in digit_lines(out.terms().map(|(_, c)| c), cfg) {
        r.line(l);
    }
    Ok(r)
}

fn parse_words(k: u32, list: &str) -> Result<Vec<OpWord>, CliError> {
    let words = list
        .split(',')
        .map(|w| w.trim().parse::<OpWord>())
        .collect::<Result<Vec<_>, Error>>()?;
    if let Some(w) = words.iter().find(|w| w.degree() != k) {
        return Err(CliError::Core(Error::Domain(format!(
            "{w} has degree {}, not {k}",
            w.degree()
        ))));
    }
    Ok(words)
}

fn adem(
    k: u32,
    partitions: Option<usize>,
    words: Option<&str>,
    evaluation: bool,
    cfg: &Config,
) -> Result<Report, CliError> {
    if k == 0 {
        return Err(CliError::Core(Error::Domain("k must be positive".into())));
    }
    let words = match (partitions, words) {
        (Some(t), _) if t < 1 => return Err(CliError::Usage("--partitions must be >= 1".into())),
        (Some(t), _) => partition_words(k, t),
        (None, Some(list)) => parse_words(k, list)?,
        (None, None) => OpWord::compositions(k),
    };
    let semantics = if evaluation {
        Semantics::Evaluation(EvalBounds::new(cfg.n_vars, cfg.deg_bound))
    } else {
        Semantics::SymbolicPower
    };
    let basis = adem_nullspace_with(k, &words, semantics)?;
    let mut r = Report::new("adem", cfg);
    let sem = match semantics {
        Semantics::SymbolicPower => json!({"kind": "symbolic_power"}),
        Semantics::Evaluation(b) => {
            json!({"kind": "evaluation", "n_vars": b.n_vars, "deg_bound": b.deg_bound})
        }
    };
    r.set("k", k)
        .set("semantics", sem)
        .set(
            "words",
            basis.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        )
        .set("dimension", basis.dimension())
        .set(
            "basis",
            basis
                .basis
                .iter()
                .map(|v| Value::Array(v.iter().map(number_json).collect()))
                .collect::<Vec<_>>(),
        )
        .set(
            "elements",
            basis.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        );
    let names: Vec<String> = basis.words.iter().map(|w| w.to_string()).collect();
    r.line(format!(
        "dimension {} over [{}]",
        basis.dimension(),
        names.join(", ")
    ));
    for (v, e) in basis.basis.iter().zip(basis.elements()) {
        let nums: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        r.line(format!("[{}]  {e} = 0", nums.join(", ")));
    }
    Ok(r)
}

fn chi_cmd(k: u32, method: Method, cfg: &Config) -> Report {
    let (m, name) = match method {
        Method::Recursion => (ChiMethod::Recursion, "recursion"),
        Method::Partitions => (ChiMethod::Partitions, "partitions"),
    };
    let e = chi(k, m);
    let mut r = Report::new("chi", cfg);
    r.set("k", k)
        .set("method", name)
        .set("element", e.to_string())
        .set("word_count", e.len())
        .set("terms", op_terms(&e, cfg));
    r.line(e.to_string());
    r
}

fn phi(e: &OpElement, cfg: &Config) -> Result<Report, CliError> {
    let p = phi_reduce(e)?;
    let mut r = Report::new("phi", cfg);
    r.set("op", e.to_string())
        .set("phi", p.to_string())
        .set("zero", p.is_zero())
        .set(
            "admissible",
            p.words().map(|w| w.factors().to_vec()).collect::<Vec<_>>(),
        );
    r.line(p.to_string());
    Ok(r)
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Element(e) => json!({"kind": "element", "element": e.to_string()}),
        Witness::Monomial(m, out) => {
            json!({"kind": "monomial", "monomial": m.to_string(), "image": out.to_string()})
        }
    }
}

fn valuation_report(r: &mut Report, v: &ValuationReport) {
    r.set("method", v.method.name())
        .set("valuation", valuation_json(v.value))
        .set("norm", v.norm().to_string())
        .set(
            "bounds",
            json!({"n_vars": v.bounds.n_vars, "deg_bound": v.bounds.deg_bound, "max_j": v.bounds.max_j}),
        )
        .set("witness", v.witness.as_ref().map(witness_json).unwrap_or(Value::Null));
    r.line(format!("valuation {}, norm {}", v.value, v.norm()));
    match &v.witness {
        Some(Witness::Element(e)) => r.line(format!("witness {e}")),
        Some(Witness::Monomial(m, out)) => r.line(format!("witness {m} -> {out}")),
        None => r,
    };
}

fn norm(which: Which, e: &OpElement, rho: &str, cfg: &Config) -> Result<Report, CliError> {
    let b = norm_bounds(cfg);
    let mut r = Report::new("norm", cfg);
    r.set("op", e.to_string());
    match which {
        Which::Adem => {
            r.set("which", "adem");
            valuation_report(&mut r, &adem_valuation(e, b)?);
        }
        Which::Ker => {
            r.set("which", "ker");
            valuation_report(&mut r, &ker_adic_valuation(e, b, cfg.deg_bound)?);
        }
        Which::Estimate => {
            r.set("which", "estimate");
            valuation_report(&mut r, &operator_norm_estimate(e, b)?);
        }
        Which::Degree => {
            let rho = scalar("rho", rho)?;
            let n = degree_norm(e, &rho)?;
            r.set("which", "degree")
                .set("rho", rho.to_string())
                .set("norm", n.to_string());
            r.line(format!("norm {n}"));
        }
    }
    Ok(r)
}

fn hit(poly: &str, cfg: &Config) -> Result<Report, CliError> {
    let f = Polynomial::parse(poly, cfg.n_vars)?;
    let d = hit_decide(&f, cfg.max_j)?;
    let mut r = Report::new("hit", cfg);
    r.set("poly", f.to_string()).set("hit", d.hit);
    match &d.certificate {
        Some(c) => {
            r.set(
                "witness",
                c.pairs
                    .iter()
                    .map(|(k, g)| json!({"k": k, "cofactor": g.to_string()}))
                    .collect::<Vec<_>>(),
            );
            let parts: Vec<String> = c.pairs.iter().map(|(k, g)| format!("Jq{k}({g})")).collect();
            r.line(format!("hit: {}", parts.join(" + ")));
        }
        None => {
            r.line("not hit");
        }
    }
    Ok(r)
}

fn cohit(d: u32, cfg: &Config) -> Result<Report, CliError> {
    let o = cohit_order(d)?;
    let mut r = Report::new("cohit", cfg);
    r.set("d", d)
        .set("order", o.to_string())
        .set("min_hit_valuation", min_hit_valuation(d));
    r.line(o.to_string());
    Ok(r)
}

fn ore(theta: &OpElement, eta: &OpElement, cfg: &Config) -> Result<Report, CliError> {
    let p = ore_solve_default(theta, eta)?;
    let mut r = Report::new("ore", cfg);
    r.set("theta", theta.to_string())
        .set("eta", eta.to_string())
        .set("x", p.x.to_string())
        .set("y", p.y.to_string())
        .set("degrees", vec![p.degrees.0, p.degrees.1])
        .set("log", p.log.clone());
    r.line(format!("x = {}", p.x)).line(format!("y = {}", p.y));
    for l in digit_lines(p.x.terms().chain(p.y.terms()).map(|(_, c)| c), cfg) {
        r.line(l);
    }
    Ok(r)
}

fn decompose(k: u32, mode: Mode, cfg: &Config) -> Result<Report, CliError> {
    let (e, name) = match mode {
        Mode::Binary => (binary_decompose(k, None)?, "binary"),
        Mode::Q12 => (q12_decompose(k, None)?, "q12"),
    };
    let mut r = Report::new("decompose", cfg);
    r.set("k", k)
        .set("mode", name)
        .set("element", e.to_string())
        .set("terms", op_terms(&e, cfg));
    r.line(format!("Jq{k} = {e}"));
    for l in digit_lines(e.terms().map(|(_, c)| c), cfg) {
        r.line(l);
    }
    Ok(r)
}

fn rank(d: u32, explicit_vars: bool, cfg: &Config) -> Report {
    let mut b = EvalBounds::for_degree(d);
    if explicit_vars {
        b.n_vars = cfg.n_vars;
    }
    let n = rank_estimate(d, &b);
    let mut r = Report::new("rank", cfg);
    r.set("d", d)
        .set("rank", n)
        .set("words", if d == 0 { 1u64 } else { 1u64 << (d - 1) })
        .set("bounds", json!({"n_vars": b.n_vars, "deg_bound": b.deg_bound}));
    r.line(n.to_string());
    r
}

fn sode(op: &str, rhs: &str, center: &str, a0: &str, cfg: &Config) -> Result<Report, CliError> {
    let eq = Sode::parse(op, rhs)?;
    let x0 = scalar("center", center)?;
    let a0 = scalar("a0", a0)?;
    let s = sode_solve(&eq, &x0, &a0, cfg.order)?;
    let res = sode_residual(&eq, &s, cfg.order)?;
    let mut r = Report::new("sode", cfg);
    let coeffs = s.coeffs();
    r.set("op", op)
        .set("rhs", eq.rhs().to_string())
        .set("center", x0.to_string())
        .set("a0", a0.to_string())
        .set("order", cfg.order)
        .set(
            "coefficients",
            coeffs.iter().map(|c| coeff_json(c, cfg)).collect::<Vec<_>>(),
        );
    match &res {
        SodeResidual::Verified { through } => {
            r.set("residual", json!({"verified_through": through}));
        }
        SodeResidual::FirstFailure { degree, coeff } => {
            r.set(
                "residual",
                json!({"first_failure": {"degree": degree, "coeff": coeff.to_string()}}),
            );
        }
    }
    for (n, c) in coeffs.iter().enumerate() {
        r.line(format!("a{n} = {c}"));
    }
    match res {
        SodeResidual::Verified { through } => r.line(format!("residual vanishes through degree {through}")),
        SodeResidual::FirstFailure { degree, coeff } => {
            r.line(format!("residual {coeff} at degree {degree}"))
        }
    };
    for l in digit_lines(coeffs.iter(), cfg) {
        r.line(l);
    }
    Ok(r)
}

fn geom(k: u32, poly: &str, cfg: &Config) -> Result<Report, CliError> {
    let f: Polynomial = poly.parse()?;
    let s = geometric_inverse(k, &f, cfg.order)?;
    let p = s.to_polynomial();
    let mut r = Report::new("geom", cfg);
    r.set("k", k)
        .set("poly", f.to_string())
        .set("order", cfg.order)
        .set("series", p.to_string())
        .set("terms", poly_terms(&p, cfg));
    r.line(p.to_string());
    for l in digit_lines(p.terms().map(|(_, c)| c), cfg) {
        r.line(l);
    }
    Ok(r)
}

/// A series file is either JSON `{"order": N, "coefficients": ["1", "1/3", ...]}`
/// (coefficients of `x1^0, x1^1, ...`) or a polynomial expression, truncated
/// at its degree.
pub fn read_series(text: &str) -> Result<TruncatedSeries, CliError> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t)
            .map_err(|e| CliError::Usage(format!("series file: {e}")))?;
        let coeffs = v
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Usage("series file: missing \"coefficients\" array".into()))?
            .iter()
            .map(|c| match c {
                Value::String(s) => s.parse::<Dyadic>().map_err(CliError::from),
                Value::Number(n) => n.to_string().parse::<Dyadic>().map_err(CliError::from),
                _ => Err(CliError::Usage(format!("series file: bad coefficient {c}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let order = match v.get("order") {
            Some(o) => o
                .as_u64()
                .ok_or_else(|| CliError::Usage("series file: order must be a natural number".into()))?
                as u32,
            None => coeffs.len().saturating_sub(1) as u32,
        };
        Ok(TruncatedSeries::from_coeffs(order, &coeffs))
    } else {
        let p: Polynomial = t.parse()?;
        Ok(TruncatedSeries::from_polynomial(&p, p.degree().unwrap_or(0)))
    }
}

fn tate(path: &std::path::Path, cfg: &Config) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let s = read_series(&text)?;
    let t = tate_check(&s)?;
    let verdict = match t.verdict {
        TateVerdict::Pass => "pass",
        TateVerdict::Fail => "fail",
        TateVerdict::Inconclusive => "inconclusive",
    };
    let mut r = Report::new("tate", cfg);
    r.set("series_order", s.order())
        .set("verdict", verdict)
        .set("window", vec![t.window.0, t.window.1])
        .set(
            "profile",
            t.profile
                .iter()
                .map(|(n, v)| json!([n, valuation_json(*v)]))
                .collect::<Vec<_>>(),
        );
    r.line(format!("{verdict} (window {}..={})", t.window.0, t.window.1));
    Ok(r)
}
