//! Command-line front end.
//!
//! Every subcommand renders its report to a `String`; the binary decides
//! where it goes. Output depends only on the arguments and the crate
//! version.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::context::{parse_phase, ContextTransform, ExactContext, Phases};
use crate::exact::{self, fmt_ratio};
use crate::format::round12;
use crate::interference::{self, Sign};
use crate::padic::{PadicRational, Prime};
use crate::padic_probability::{
    lambda_range_check, padic_interfere, slit_profile, slit_profile_csv, PadicAmplitudePair,
};
use crate::profiles::{self, Segment};
use crate::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const DOMAIN: i32 = 3;
    pub const DEGENERATE: i32 = 4;
    pub const INVARIANT: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(
    name = "probinterf",
    version,
    about = "Interference of probabilistic alternatives"
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit λ, regime and phase to a probability triple (p1, p2, p).
    Fit(FitArgs),
    /// Sample a brightness profile as CSV.
    Profile(ProfileArgs),
    /// Classical and perturbed total probability for a 2x2 context.
    Totalprob(TotalProbArgs),
    /// p-adic amplitude rule, or the two-slit ε sweep with --slit.
    Padic(PadicArgs),
    /// Run the built-in invariant suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    pub p1: String,
    pub p2: String,
    pub p: String,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKindArg {
    Trig,
    Hyp,
    Piecewise,
    Padic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(value_enum)]
    pub kind: ProfileKindArg,
    #[arg(long)]
    pub p1: Option<String>,
    #[arg(long)]
    pub p2: Option<String>,
    /// Branch of the hyperbolic rule, `+` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<String>,
    /// Lower end of the radius grid.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub min: String,
    /// Upper end of the radius grid (accepts `pi` multiples).
    #[arg(long, allow_hyphen_values = true)]
    pub max: Option<String>,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Use the full valid hyperbolic window [0, θ_max] or [0, θ_min].
    #[arg(long)]
    pub auto_window: bool,
    /// Comma-separated `lo:hi:sign` segments; prefix `(` for left-open.
    #[arg(long, allow_hyphen_values = true)]
    pub segments: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long)]
    pub eps_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TotalProbArgs {
    /// Flat `key = value` file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub phase_mode: Option<PhaseModeArg>,
    #[arg(long)]
    pub pb1: Option<String>,
    #[arg(long)]
    pub pb2: Option<String>,
    #[arg(long)]
    pub p11: Option<String>,
    #[arg(long)]
    pub p12: Option<String>,
    #[arg(long)]
    pub p21: Option<String>,
    #[arg(long)]
    pub p22: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sign1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sign2: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseModeArg {
    Trig,
    Hyp,
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    /// Emit the symmetric two-slit sweep instead of a single pair.
    #[arg(long)]
    pub slit: bool,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    #[arg(long)]
    pub eps_max: Option<u64>,
    /// Number of p-adic digits shown for each amplitude.
    #[arg(long, default_value_t = 8)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    #[arg(long, default_value_t = 20_240_917)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: exit::PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateContext { .. } => exit::DEGENERATE,
            Error::Parse(_) | Error::NotPrime(_) => exit::PARSE,
            _ => exit::DOMAIN,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// A successful run: the report plus the exit code (nonzero only when the
/// invariant suite finds failures).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: exit::OK,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a).map(Report::ok),
        Command::Profile(a) => cmd_profile(a).map(Report::ok),
        Command::Totalprob(a) => cmd_totalprob(a).map(Report::ok),
        Command::Padic(a) => cmd_padic(a).map(Report::ok),
        Command::Check(a) => Ok(cmd_check(a)),
    }
}

fn parse_probability(name: &str, text: &str) -> Result<BigRational, CliError> {
    let v = exact::parse_rational(text).map_err(|e| CliError::parse(format!("{name}: {e}")))?;
    if v < BigRational::zero() || v > BigRational::one() {
        return Err(CliError::parse(format!("{name} = {text} is not in [0, 1]")));
    }
    Ok(v)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn cmd_fit(a: &FitArgs) -> Result<String, CliError> {
    let p1 = parse_probability("p1", &a.p1)?;
    let p2 = parse_probability("p2", &a.p2)?;
    let p = parse_probability("p", &a.p)?;
    let (f1, f2, f) = (exact::to_f64(&p1), exact::to_f64(&p2), exact::to_f64(&p));
    let record = interference::fit_record(f1, f2, f)?;
    let residual = record.reconstruct().map(|r| (r - f).abs()).ok();
    let mut out = json!({
        "p1": round12(f1),
        "p2": round12(f2),
        "p": round12(f),
        "lambda": round12(record.lambda),
        "regime": record.regime.as_str(),
        "phase": round12(record.phase),
        "sign": record.sign.as_char().to_string(),
        "residual": residual.map(round12),
    });
    if a.mode == Mode::Exact {
        let lambda = interference::lambda_exact(&p1, &p2, &p)?;
        out["exact"] = json!({
            "p1": fmt_ratio(&p1),
            "p2": fmt_ratio(&p2),
            "p": fmt_ratio(&p),
            "delta": fmt_ratio(&(&p - &p1 - &p2)),
            "lambda": lambda.as_ref().map(fmt_ratio),
        });
    }
    Ok(pretty(&out))
}

fn num_arg(name: &str, v: &Option<String>) -> Result<f64, CliError> {
    let text = v
        .as_deref()
        .ok_or_else(|| CliError::parse(format!("--{name} is required")))?;
    parse_phase(text).map_err(|e| CliError::parse(format!("--{name}: {e}")))
}

fn prob_arg(name: &str, v: &Option<String>) -> Result<f64, CliError> {
    let text = v
        .as_deref()
        .ok_or_else(|| CliError::parse(format!("--{name} is required")))?;
    Ok(exact::to_f64(&parse_probability(name, text)?))
}

pub fn cmd_profile(a: &ProfileArgs) -> Result<String, CliError> {
    let min = parse_phase(&a.min).map_err(|e| CliError::parse(format!("--min: {e}")))?;
    let prof = match a.kind {
        ProfileKindArg::Trig => {
            let (p1, p2) = (prob_arg("p1", &a.p1)?, prob_arg("p2", &a.p2)?);
            let grid = profiles::uniform_grid(min, num_arg("max", &a.max)?, a.n)?;
            profiles::profile_trig(p1, p2, &grid)?
        }
        ProfileKindArg::Hyp => {
            let (p1, p2) = (prob_arg("p1", &a.p1)?, prob_arg("p2", &a.p2)?);
            let sign = Sign::parse(a.sign.as_deref().unwrap_or("+"))?;
            let max = if a.auto_window {
                let bounds = profiles::theta_bounds(p1, p2)?;
                bounds.window(sign).ok_or_else(|| {
                    CliError::from(Error::InvalidProfile(format!(
                        "empty valid window: q+ = {} < 1",
                        bounds.q_plus
                    )))
                })?
            } else {
                num_arg("max", &a.max)?
            };
            let grid = profiles::uniform_grid(min, max, a.n)?;
            profiles::profile_hyp(p1, p2, sign, &grid)?
        }
        ProfileKindArg::Piecewise => {
            let (p1, p2) = (prob_arg("p1", &a.p1)?, prob_arg("p2", &a.p2)?);
            let spec = a
                .segments
                .as_deref()
                .ok_or_else(|| CliError::parse("--segments is required"))?;
            let segs = spec
                .split(',')
                .map(Segment::parse)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::parse(format!("--segments: {e}")))?;
            let max = match &a.max {
                Some(_) => num_arg("max", &a.max)?,
                None => segs.iter().map(|s| s.hi).fold(min, f64::max),
            };
            let grid = profiles::uniform_grid(min, max, a.n)?;
            profiles::profile_piecewise(p1, p2, &segs, &grid)?
        }
        ProfileKindArg::Padic => {
            let p = Prime::new(a.p.ok_or_else(|| CliError::parse("--p is required"))?)?;
            let eps_max = a
                .eps_max
                .ok_or_else(|| CliError::parse("--eps-max is required"))?;
            profiles::profile_padic(p, a.l, eps_max)
        }
    };
    Ok(match a.format {
        Format::Csv => prof.to_csv(),
        Format::Json => pretty(&serde_json::to_value(&prof).expect("profile serializes")),
    })
}

const CONTEXT_KEYS: [&str; 12] = [
    "mode", "pb1", "pb2", "p11", "p12", "p21", "p22", "theta1", "theta2", "sign1", "sign2", "note",
];

/// Parses a flat `key = value` config. `#` starts a comment. Values are
/// checked for syntax here so errors carry line numbers.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .or_else(|| line.split_once(':'))
            .ok_or_else(|| CliError::parse(format!("line {line_no}: expected 'key = value'")))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONTEXT_KEYS.contains(&k) {
            return Err(CliError::parse(format!(
                "line {line_no}: unknown field '{k}'"
            )));
        }
        check_field(k, v)
            .map_err(|e| CliError::parse(format!("line {line_no}: field '{k}': {e}")))?;
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::parse(format!(
                "line {line_no}: duplicate field '{k}'"
            )));
        }
    }
    Ok(map)
}

fn check_field(key: &str, value: &str) -> crate::Result<()> {
    match key {
        "mode" => match value {
            "trig" | "trigonometric" | "hyp" | "hyperbolic" => Ok(()),
            other => Err(Error::Parse(format!("unknown mode '{other}'"))),
        },
        "theta1" | "theta2" => parse_phase(value).map(drop),
        "sign1" | "sign2" => Sign::parse(value).map(drop),
        "note" => Ok(()),
        _ => exact::parse_rational(value).map(drop),
    }
}

/// `cos θ` as an exact rational when θ is a multiple of π/2 or π/3 written
/// in `pi` notation (or the literal 0).
fn exact_cos(text: &str) -> Option<BigRational> {
    let s = text.trim().to_ascii_lowercase().replace([' ', '*'], "");
    let turns = if let Some(idx) = s.find("pi") {
        let coeff = match &s[..idx] {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => exact::parse_rational(c).ok()?,
        };
        let div = match s[idx + 2..].strip_prefix('/') {
            Some(d) => exact::parse_rational(d).ok()?,
            None if s.len() == idx + 2 => BigRational::one(),
            None => return None,
        };
        if div.is_zero() {
            return None;
        }
        coeff / div
    } else {
        let v = exact::parse_rational(&s).ok()?;
        if !v.is_zero() {
            return None;
        }
        v
    };
    // θ = turns·π; reduce to sixths of π modulo 2π.
    let sixths = &turns * BigRational::from_integer(6.into());
    if !sixths.is_integer() {
        return None;
    }
    let k = num_integer::Integer::mod_floor(&sixths.to_integer(), &12.into());
    let k: i64 = k.try_into().ok()?;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match k {
        0 => Some(r(1, 1)),
        2 | 10 => Some(r(1, 2)),
        3 | 9 => Some(r(0, 1)),
        4 | 8 => Some(r(-1, 2)),
        6 => Some(r(-1, 1)),
        _ => None,
    }
}

fn pair_json(v: [f64; 2]) -> Value {
    json!([round12(v[0]), round12(v[1])])
}

pub fn cmd_totalprob(a: &TotalProbArgs) -> Result<String, CliError> {
    let mut fields = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError {
                code: exit::IO,
                message: format!("{}: {e}", path.display()),
            })?;
            parse_config(&text)?
        }
        None => BTreeMap::new(),
    };
    let overrides = [
        ("pb1", &a.pb1),
        ("pb2", &a.pb2),
        ("p11", &a.p11),
        ("p12", &a.p12),
        ("p21", &a.p21),
        ("p22", &a.p22),
        ("theta1", &a.theta1),
        ("theta2", &a.theta2),
        ("sign1", &a.sign1),
        ("sign2", &a.sign2),
    ];
    for (k, v) in overrides {
        if let Some(v) = v {
            check_field(k, v).map_err(|e| CliError::parse(format!("--{k}: {e}")))?;
            fields.insert(k.to_string(), v.clone());
        }
    }
    if let Some(m) = a.phase_mode {
        let m = match m {
            PhaseModeArg::Trig => "trig",
            PhaseModeArg::Hyp => "hyp",
        };
        fields.insert("mode".into(), m.into());
    }
    fields.remove("note");
    let ctx = ContextTransform::from_kv(fields.iter().map(|(k, v)| (k.as_str(), v.as_str())))
        .map_err(|e| match e {
            Error::Parse(m) => CliError::parse(m),
            other => other.into(),
        })?;

    let classical = ctx.total_prob_classical()?;
    let perturbed = ctx.total_prob_perturbed()?;
    let diag = ctx.normalization(perturbed);
    let (quantum, hyperbolic) = match ctx.phases {
        Phases::Trigonometric { .. } => (Some(perturbed), None),
        Phases::Hyperbolic { .. } => (None, Some(perturbed)),
    };
    let kv = ctx.to_kv();
    let mut out = json!({
        "context": kv,
        "classical": pair_json(classical),
        "quantum": quantum.map(pair_json),
        "hyperbolic": hyperbolic.map(pair_json),
        "normalization": {
            "sum": round12(diag.sum),
            "deviation": round12(diag.deviation),
            "doubly_stochastic": diag.doubly_stochastic,
            "cross_condition": round12(diag.cross_condition),
            "normalized": diag.normalized,
        },
    });
    if a.mode == Mode::Exact {
        let rat = |k: &str| exact::parse_rational(&fields[k]).expect("checked above");
        let cos = |k: &str| exact_cos(&fields[k]);
        let priors = [rat("pb1"), rat("pb2")];
        let cond = [[rat("p11"), rat("p12")], [rat("p21"), rat("p22")]];
        let classical = ExactContext {
            priors: priors.clone(),
            cond: cond.clone(),
            cos_theta: [BigRational::zero(), BigRational::zero()],
        }
        .total_prob_classical()?;
        let quantum = match (&ctx.phases, cos("theta1"), cos("theta2")) {
            (Phases::Trigonometric { .. }, Some(c1), Some(c2)) => ExactContext {
                priors,
                cond,
                cos_theta: [c1, c2],
            }
            .total_prob_quantum()
            .ok(),
            _ => None,
        };
        let ratios = |v: &[BigRational; 2]| json!([fmt_ratio(&v[0]), fmt_ratio(&v[1])]);
        out["exact"] = json!({
            "classical": ratios(&classical),
            "classical_sum": fmt_ratio(&(&classical[0] + &classical[1])),
            "quantum": quantum.as_ref().map(ratios),
        });
    }
    Ok(pretty(&out))
}

pub fn cmd_padic(a: &PadicArgs) -> Result<String, CliError> {
    let p = Prime::new(a.p)?;
    if a.slit {
        let eps_max = a
            .eps_max
            .ok_or_else(|| CliError::parse("--eps-max is required with --slit"))?;
        let mut out = format!(
            "# probinterf {}\n# kind=padic-slit p={} l={} eps_max={}\n",
            env!("CARGO_PKG_VERSION"),
            p,
            a.l,
            eps_max
        );
        out.push_str(&slit_profile_csv(&slit_profile(p, a.l, eps_max)));
        return Ok(out);
    }
    let get = |name: &str, v: &Option<String>| -> Result<PadicRational, CliError> {
        let text = v
            .as_deref()
            .ok_or_else(|| CliError::parse(format!("--{name} is required")))?;
        PadicRational::parse(p, text).map_err(|e| CliError::parse(format!("--{name}: {e}")))
    };
    let pair = PadicAmplitudePair::new(
        get("alpha1", &a.alpha1)?,
        get("alpha2", &a.alpha2)?,
        get("epsilon", &a.epsilon)?,
    )?;
    let r = padic_interfere(&pair);
    let range = lambda_range_check(&pair);
    let show = |x: &BigRational| -> Value {
        match a.mode {
            Mode::Exact => json!(fmt_ratio(x)),
            Mode::Float => json!(round12(exact::to_f64(x))),
        }
    };
    let out = json!({
        "p": p.get(),
        "alpha1": pair.alpha1().to_string(),
        "alpha2": pair.alpha2().to_string(),
        "epsilon": pair.epsilon().to_string(),
        "alpha1_digits": pair.alpha1().digits(a.digits).to_notation(),
        "alpha2_digits": pair.alpha2().digits(a.digits).to_notation(),
        "case": format!("{:?}", r.case),
        "P": show(&r.p),
        "P1": show(&r.p1),
        "P2": show(&r.p2),
        "lambda": show(&r.lambda),
        "c": r.c.as_ref().map(show),
        "theta": round12(range.theta),
        "within_claimed_range": range.within_claimed_range,
    });
    Ok(pretty(&out))
}

pub fn cmd_check(a: &CheckArgs) -> Report {
    let summary = crate::check::run(a.cases, a.seed);
    Report {
        text: summary.render(),
        code: if summary.passed() {
            exit::OK
        } else {
            exit::INVARIANT
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_cosines() {
        assert_eq!(exact_cos("0"), Some(r(1, 1)));
        assert_eq!(exact_cos("pi"), Some(r(-1, 1)));
        assert_eq!(exact_cos("pi/2"), Some(r(0, 1)));
        assert_eq!(exact_cos("pi/3"), Some(r(1, 2)));
        assert_eq!(exact_cos("2pi/3"), Some(r(-1, 2)));
        assert_eq!(exact_cos("-pi/3"), Some(r(1, 2)));
        assert_eq!(exact_cos("5*pi/3"), Some(r(1, 2)));
        assert_eq!(exact_cos("pi/4"), None);
        assert_eq!(exact_cos("1.0"), None);
    }

    #[test]
    fn config_parsing() {
        let cfg = parse_config("# header\npb1 = 1/2\npb2=0.5 # trailing\n\ntheta2 = pi\n").unwrap();
        assert_eq!(cfg["pb1"], "1/2");
        assert_eq!(cfg["pb2"], "0.5");
        assert_eq!(cfg["theta2"], "pi");

        let err = parse_config("pb1 = 1/2\nbogus = 3\n").unwrap_err();
        assert_eq!(err.code, exit::PARSE);
        assert!(err.message.contains("line 2") && err.message.contains("bogus"));

        let err = parse_config("pb1 = 1/2\n\ntheta1 = pie\n").unwrap_err();
        assert!(err.message.contains("line 3") && err.message.contains("theta1"));

        let err = parse_config("pb1 1/2\n").unwrap_err();
        assert!(err.message.contains("line 1"));

        let err = parse_config("pb1 = 1\npb1 = 0\n").unwrap_err();
        assert!(err.message.contains("duplicate"));
    }

    #[test]
    fn error_codes() {
        let e: CliError = Error::DegenerateContext { p1: 0.0, p2: 1.0 }.into();
        assert_eq!(e.code, exit::DEGENERATE);
        let e: CliError = Error::NotAProbability { value: 2.0 }.into();
        assert_eq!(e.code, exit::DOMAIN);
        let e: CliError = Error::NotPrime(4).into();
        assert_eq!(e.code, exit::PARSE);
    }
}
