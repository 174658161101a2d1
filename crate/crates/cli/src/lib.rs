//! Command-line front end: argument model, dispatch and record formatting.

mod format;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubiprox::epigraph::{cubic_data, project_epigraph};
use cubiprox::oracle::suites::{run_suite, Suite};
use cubiprox::oracle::{self, parse_seed};
use cubiprox::saddle::SaddleKind;
use cubiprox::{
    prox_perspective, ConvexQuartic, Cubic, DepressedCubic, Error, LabeledPoint, RealRootSet, ReciprocalFn, SaddleSet,
};
use serde_json::{json, Map, Value};

pub use format::{num, render_csv_record, render_csv_table};

pub const SCHEMA: u64 = 1;
const DEFAULT_CHECK_TOL: f64 = 1e-6;

#[derive(Parser, Debug, Clone)]
#[command(name = "cubiprox", version, about = "Closed-form cubic roots, prox mappings, conjugates and projections")]
pub struct Cli {
    /// Emit JSON (default for single records).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV with a header row (default for `sample`).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Compare against the brute-force oracle.
    #[arg(long, global = true)]
    pub check: bool,
    /// Seed for randomized suites; falls back to CUBIPROX_SEED.
    #[arg(long, global = true, value_parser = seed_arg)]
    pub seed: Option<u64>,
    /// Tolerance for `--check` comparisons and `check` suites.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

fn seed_arg(s: &str) -> std::result::Result<u64, String> {
    parse_seed(s).ok_or_else(|| format!("not a u64 seed: {s}"))
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Roots of a·x³ + b·x² + c·x + d.
    #[command(allow_negative_numbers = true)]
    Cubic {
        #[arg(short)]
        a: f64,
        #[arg(short)]
        b: f64,
        #[arg(short)]
        c: f64,
        #[arg(short)]
        d: f64,
    },
    /// Roots of z³ + p·z + q.
    #[command(allow_negative_numbers = true)]
    Depressed {
        #[arg(short)]
        p: f64,
        #[arg(short)]
        q: f64,
    },
    /// Proximal mappings.
    #[command(subcommand)]
    Prox(ProxTarget),
    /// Fenchel conjugates.
    #[command(subcommand)]
    Conjugate(ConjugateTarget),
    /// Projections onto sets.
    #[command(subcommand)]
    Project(ProjectTarget),
    /// Sampled curves and maps for plotting.
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Randomized closed-form versus oracle suite.
    Check {
        /// cubic, quartic, reciprocal, epigraph, saddle, perspective or all
        suite: String,
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Re-run the command recorded in a JSON record (file or stdin).
    Replay { file: Option<PathBuf> },
}

#[derive(Args, Debug, Clone)]
pub struct QuarticArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ProxTarget {
    /// h(x) = αx⁴ + βx³ + γx² + δx + ε.
    #[command(allow_negative_numbers = true)]
    Quartic {
        #[command(flatten)]
        h: QuarticArgs,
        #[arg(long)]
        y: f64,
    },
    /// h(x) = α/x on x > 0.
    #[command(allow_negative_numbers = true)]
    Reciprocal {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        y: f64,
    },
    /// γ·‖y‖²/(2η).
    #[command(allow_negative_numbers = true)]
    Perspective {
        #[arg(long)]
        gamma: f64,
        /// Comma-separated vector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        y: Vec<f64>,
        #[arg(long)]
        eta: f64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ConjugateTarget {
    #[command(allow_negative_numbers = true)]
    Quartic {
        #[command(flatten)]
        h: QuarticArgs,
        #[arg(long)]
        y: f64,
    },
    #[command(allow_negative_numbers = true)]
    Reciprocal {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        y: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Diag,
    Antidiag,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ProjectTarget {
    /// Onto {(v, s) : α‖v‖² ≤ s}.
    #[command(allow_negative_numbers = true)]
    Epigraph {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        y: Vec<f64>,
        #[arg(long)]
        eta: f64,
    },
    /// Of (z, ±z, γ) onto {⟨x, y⟩ = αs}.
    #[command(allow_negative_numbers = true)]
    Saddle {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        z: Vec<f64>,
        #[arg(long)]
        gamma: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleTarget {
    /// h(y) for a quartic.
    QuarticH,
    /// h*(y) for a quartic.
    QuarticConjugate,
    /// Prox of a quartic.
    QuarticProx,
    /// Prox of α/x.
    ReciprocalProx,
    /// Branch of the epigraph projection over an (η, ν) grid.
    EpigraphMap,
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    #[arg(value_enum)]
    pub target: SampleTarget,
    #[arg(long, default_value_t = -5.0)]
    pub from: f64,
    #[arg(long, default_value_t = 5.0)]
    pub to: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    /// Quartic coefficients α,β,γ,δ,ε.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "1,1,1,1,1")]
    pub quartic: Vec<f64>,
    /// α of the reciprocal or of the epigraph.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = -2.0)]
    pub eta_from: f64,
    #[arg(long, default_value_t = 10.0)]
    pub eta_to: f64,
    #[arg(long, default_value_t = 0.0)]
    pub nu_from: f64,
    #[arg(long, default_value_t = 15.0)]
    pub nu_to: f64,
}

/// Exit status and rendered output of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonFinite(_) | Error::DegenerateLeading => 2,
        Error::Domain(_) | Error::Precondition(_) => 3,
        Error::InternalConsistency(_) | Error::InvalidBracket { .. } => 4,
    }
}

fn failure(code: i32, msg: impl Into<String>) -> Outcome {
    Outcome { code, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => failure(exit_code(&e), e.to_string()),
    }
}

/// Parse `argv` (without the program name) and run it.
pub fn run_args<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("cubiprox")).chain(argv.into_iter().map(Into::into));
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

fn dispatch(cli: &Cli) -> cubiprox::Result<Outcome> {
    let record_format = if cli.csv { Format::Csv } else { Format::Json };
    let tol = cli.tol.unwrap_or(DEFAULT_CHECK_TOL);
    let argv = canonical_argv(cli);
    let (mut record, code) = match &cli.command {
        Command::Cubic { a, b, c, d } => {
            let f = Cubic::new(*a, *b, *c, *d)?;
            cubic_record(&f, cli.check, tol)
        }
        Command::Depressed { p, q } => {
            let g = DepressedCubic::new(*p, *q)?;
            let f = Cubic::new(1.0, 0.0, *p, *q)?;
            let (mut rec, code) = cubic_record(&f, cli.check, tol);
            rec.insert("inputs".into(), json!({ "p": num(g.p()), "q": num(g.q()) }));
            (rec, code)
        }
        Command::Prox(t) => prox_record(t, cli.check, tol)?,
        Command::Conjugate(t) => conjugate_record(t, cli.check, tol)?,
        Command::Project(t) => project_record(t, cli.check, tol)?,
        Command::Sample(args) => return sample(args, &argv, if cli.json { Format::Json } else { Format::Csv }),
        Command::Check { suite, instances } => return check(cli, suite, *instances, record_format),
        Command::Replay { file } => return replay(file.as_ref()),
    };
    let mut head = Map::new();
    head.insert("schema".into(), json!(SCHEMA));
    head.insert("command".into(), json!(command_name(&cli.command)));
    head.insert("argv".into(), json!(argv));
    head.append(&mut record);
    let stdout = match record_format {
        Format::Json => format!("{}\n", Value::Object(head)),
        Format::Csv => render_csv_record(&Value::Object(head)),
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Cubic { .. } => "cubic",
        Command::Depressed { .. } => "depressed",
        Command::Prox(ProxTarget::Quartic { .. }) => "prox quartic",
        Command::Prox(ProxTarget::Reciprocal { .. }) => "prox reciprocal",
        Command::Prox(ProxTarget::Perspective { .. }) => "prox perspective",
        Command::Conjugate(ConjugateTarget::Quartic { .. }) => "conjugate quartic",
        Command::Conjugate(ConjugateTarget::Reciprocal { .. }) => "conjugate reciprocal",
        Command::Project(ProjectTarget::Epigraph { .. }) => "project epigraph",
        Command::Project(ProjectTarget::Saddle { .. }) => "project saddle",
        Command::Sample(_) => "sample",
        Command::Check { .. } => "check",
        Command::Replay { .. } => "replay",
    }
}

fn f(x: f64) -> String {
    format!("{x:?}")
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| f(*x)).collect::<Vec<_>>().join(",")
}

fn quartic_argv(h: &QuarticArgs) -> Vec<String> {
    vec![
        "--alpha".into(),
        f(h.alpha),
        "--beta".into(),
        f(h.beta),
        "--gamma".into(),
        f(h.gamma),
        "--delta".into(),
        f(h.delta),
        "--epsilon".into(),
        f(h.epsilon),
    ]
}

/// An argument vector that re-parses to exactly this invocation.
pub fn canonical_argv(cli: &Cli) -> Vec<String> {
    let mut v: Vec<String> = Vec::new();
    let s = |x: &str| x.to_string();
    match &cli.command {
        Command::Cubic { a, b, c, d } => {
            v.extend([s("cubic"), s("-a"), f(*a), s("-b"), f(*b), s("-c"), f(*c), s("-d"), f(*d)]);
        }
        Command::Depressed { p, q } => v.extend([s("depressed"), s("-p"), f(*p), s("-q"), f(*q)]),
        Command::Prox(ProxTarget::Quartic { h, y }) => {
            v.extend([s("prox"), s("quartic")]);
            v.extend(quartic_argv(h));
            v.extend([s("--y"), f(*y)]);
        }
        Command::Prox(ProxTarget::Reciprocal { alpha, y }) => {
            v.extend([s("prox"), s("reciprocal"), s("--alpha"), f(*alpha), s("--y"), f(*y)]);
        }
        Command::Prox(ProxTarget::Perspective { gamma, y, eta }) => {
            v.extend([s("prox"), s("perspective"), s("--gamma"), f(*gamma), s("--y"), join(y), s("--eta"), f(*eta)]);
        }
        Command::Conjugate(ConjugateTarget::Quartic { h, y }) => {
            v.extend([s("conjugate"), s("quartic")]);
            v.extend(quartic_argv(h));
            v.extend([s("--y"), f(*y)]);
        }
        Command::Conjugate(ConjugateTarget::Reciprocal { alpha, y }) => {
            v.extend([s("conjugate"), s("reciprocal"), s("--alpha"), f(*alpha), s("--y"), f(*y)]);
        }
        Command::Project(ProjectTarget::Epigraph { alpha, y, eta }) => {
            v.extend([s("project"), s("epigraph"), s("--alpha"), f(*alpha), s("--y"), join(y), s("--eta"), f(*eta)]);
        }
        Command::Project(ProjectTarget::Saddle { kind, alpha, beta, z, gamma }) => {
            let k = match kind {
                KindArg::Diag => "diag",
                KindArg::Antidiag => "antidiag",
            };
            v.extend([
                s("project"),
                s("saddle"),
                s("--kind"),
                s(k),
                s("--alpha"),
                f(*alpha),
                s("--beta"),
                f(*beta),
                s("--z"),
                join(z),
                s("--gamma"),
                f(*gamma),
            ]);
        }
        Command::Sample(a) => {
            let target = a.target.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
            v.extend([s("sample"), target, s("--from"), f(a.from), s("--to"), f(a.to)]);
            v.extend([s("--points"), a.points.to_string(), s("--quartic"), join(&a.quartic)]);
            if let Some(alpha) = a.alpha {
                v.extend([s("--alpha"), f(alpha)]);
            }
            v.extend([s("--eta-from"), f(a.eta_from), s("--eta-to"), f(a.eta_to)]);
            v.extend([s("--nu-from"), f(a.nu_from), s("--nu-to"), f(a.nu_to)]);
        }
        Command::Check { suite, instances } => {
            v.extend([s("check"), suite.clone()]);
            if let Some(n) = instances {
                v.extend([s("--instances"), n.to_string()]);
            }
        }
        Command::Replay { .. } => v.push(s("replay")),
    }
    if cli.json {
        v.push(s("--json"));
    }
    if cli.csv {
        v.push(s("--csv"));
    }
    if cli.check {
        v.push(s("--check"));
    }
    if let Some(seed) = cli.seed {
        v.extend([s("--seed"), seed.to_string()]);
    }
    if let Some(tol) = cli.tol {
        v.extend([s("--tol"), f(tol)]);
    }
    v
}

fn oracle_entry(value: Value, diff: f64, tol: f64) -> Value {
    json!({ "value": value, "diff": num(diff), "tol": num(tol), "pass": diff <= tol })
}

fn check_code(record: &Map<String, Value>) -> i32 {
    let failed = record.get("oracle").and_then(|o| o.get("pass")).and_then(Value::as_bool) == Some(false);
    let fell_back = record.get("fallback").and_then(Value::as_bool) == Some(true);
    if failed || fell_back {
        4
    } else {
        0
    }
}

fn cubic_record(f: &Cubic, check: bool, tol: f64) -> (Map<String, Value>, i32) {
    let [a, b, c, d] = f.coefficients();
    let roots = f.solve();
    let t = f.classify();
    let distinct = roots.distinct();
    let residual = distinct.iter().map(|&r| f.eval(r).abs()).fold(0.0, f64::max);
    let scaled = distinct.iter().map(|&r| f.eval(r).abs() / f.residual_scale(r)).fold(0.0, f64::max);
    let mut rec = Map::new();
    rec.insert("inputs".into(), json!({ "a": num(a), "b": num(b), "c": num(c), "d": num(d) }));
    let listed: Vec<Value> =
        roots.with_multiplicity().iter().map(|(r, m)| json!({ "value": num(*r), "multiplicity": m })).collect();
    let pair = match roots.complex_pair() {
        Some(z) => json!({ "re": num(z.re), "im": num(z.im) }),
        None => Value::Null,
    };
    rec.insert("outputs".into(), json!({ "variant": variant_name(&roots), "roots": listed, "complex_pair": pair }));
    rec.insert("branch".into(), json!(t.branch.name()));
    rec.insert("delta".into(), num(t.delta));
    rec.insert("residual".into(), num(residual));
    rec.insert("scaled_residual".into(), num(scaled));
    if check {
        let oracle_roots = oracle::roots_by_bisection(f, 0.0);
        let diff = if oracle_roots.len() == distinct.len() {
            distinct.iter().zip(&oracle_roots).map(|(r, o)| (r - o).abs() / r.abs().max(1.0)).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        let vals: Vec<Value> = oracle_roots.iter().map(|&r| num(r)).collect();
        rec.insert("oracle".into(), oracle_entry(json!(vals), diff, tol));
    }
    let code = check_code(&rec);
    (rec, code)
}

fn variant_name(r: &RealRootSet) -> &'static str {
    match r {
        RealRootSet::OneSimple { .. } => "one_simple",
        RealRootSet::OneTriple(_) => "one_triple",
        RealRootSet::SimpleAndDouble { .. } => "simple_and_double",
        RealRootSet::ThreeSimple(_) => "three_simple",
    }
}

fn quartic(h: &QuarticArgs) -> cubiprox::Result<ConvexQuartic> {
    ConvexQuartic::new(h.alpha, h.beta, h.gamma, h.delta, h.epsilon)
}

fn quartic_inputs(h: &QuarticArgs, y: f64) -> Value {
    json!({
        "alpha": num(h.alpha), "beta": num(h.beta), "gamma": num(h.gamma),
        "delta": num(h.delta), "epsilon": num(h.epsilon), "y": num(y)
    })
}

fn point_value(p: &LabeledPoint) -> Value {
    json!({ "vec": p.vec.iter().map(|&v| num(v)).collect::<Vec<_>>(), "scalar": num(p.scalar) })
}

fn prox_record(t: &ProxTarget, check: bool, tol: f64) -> cubiprox::Result<(Map<String, Value>, i32)> {
    let mut rec = Map::new();
    match t {
        ProxTarget::Quartic { h: args, y } => {
            let h = quartic(args)?;
            let x = h.prox(*y)?;
            let g = h.prox_cubic(*y)?;
            rec.insert("inputs".into(), quartic_inputs(args, *y));
            rec.insert("outputs".into(), json!({ "x": num(x) }));
            rec.insert("branch".into(), json!(g.classify().branch.name()));
            rec.insert("delta".into(), num(g.classify().delta));
            rec.insert("residual".into(), num(h.derivative(x) + x - y));
            if check {
                let span = y.abs() + 10.0;
                let obj = |t: f64| h.value(t) + 0.5 * (t - y) * (t - y);
                let (o, _) = oracle::grid_golden_min(obj, -span, span, 4000, 1e-13 * span);
                rec.insert("oracle".into(), oracle_entry(num(o), (x - o).abs(), tol));
            }
        }
        ProxTarget::Reciprocal { alpha, y } => {
            let h = ReciprocalFn::new(*alpha)?;
            let r = h.prox_detailed(*y)?;
            rec.insert("inputs".into(), json!({ "alpha": num(*alpha), "y": num(*y) }));
            rec.insert("outputs".into(), json!({ "x": num(r.x), "breakpoint": num(h.breakpoint()) }));
            rec.insert("branch".into(), json!(r.branch.name()));
            rec.insert("delta".into(), num(r.delta));
            rec.insert("residual".into(), num(r.residual));
            rec.insert("fallback".into(), json!(r.fallback));
            if check {
                let o = oracle::reciprocal_prox(*alpha, *y);
                rec.insert("oracle".into(), oracle_entry(num(o), (r.x - o).abs(), tol));
            }
        }
        ProxTarget::Perspective { gamma, y, eta } => {
            let p = LabeledPoint::new(y.clone(), *eta)?;
            let r = prox_perspective(*gamma, &p)?;
            rec.insert("inputs".into(), json!({ "gamma": num(*gamma), "point": point_value(&p) }));
            rec.insert("outputs".into(), json!({ "point": point_value(&r.point), "lambda": num(r.lambda) }));
            let branch = match (r.branch, r.trig) {
                (cubiprox::PerspectiveBranch::Zero, _) => "zero",
                (_, true) => "positive_trig",
                (_, false) => "positive_cardano",
            };
            rec.insert("branch".into(), json!(branch));
            rec.insert("delta".into(), num(r.delta));
            rec.insert("residual".into(), num(r.residual));
            rec.insert("fallback".into(), json!(r.fallback));
            if check {
                let o = oracle::perspective_prox(*gamma, &p);
                rec.insert("oracle".into(), oracle_entry(point_value(&o), r.point.distance(&o), tol));
            }
        }
    }
    let code = check_code(&rec);
    Ok((rec, code))
}

fn conjugate_record(t: &ConjugateTarget, check: bool, tol: f64) -> cubiprox::Result<(Map<String, Value>, i32)> {
    let mut rec = Map::new();
    match t {
        ConjugateTarget::Quartic { h: args, y } => {
            let h = quartic(args)?;
            let c = h.conjugate(*y)?;
            let g = h.conjugate_cubic(*y)?;
            rec.insert("inputs".into(), quartic_inputs(args, *y));
            rec.insert("outputs".into(), json!({ "argmax": num(c.argmax), "value": num(c.value) }));
            rec.insert("branch".into(), json!(g.classify().branch.name()));
            rec.insert("delta".into(), num(g.classify().delta));
            rec.insert("residual".into(), num(h.derivative(c.argmax) - y));
            if check {
                let span = 10.0 + 2.0 * c.argmax.abs();
                let (_, v) = oracle::golden_min(|x| h.value(x) - y * x, -span, span, 1e-12);
                let value = -v;
                rec.insert("oracle".into(), oracle_entry(num(value), (c.value - value).abs(), tol));
            }
        }
        ConjugateTarget::Reciprocal { alpha, y } => {
            let h = ReciprocalFn::new(*alpha)?;
            let value = h.conjugate(*y);
            let argmax = if *y < 0.0 { (alpha / -y).sqrt() } else { f64::NAN };
            let argmax_value = if *y < 0.0 { num(argmax) } else { Value::Null };
            rec.insert("inputs".into(), json!({ "alpha": num(*alpha), "y": num(*y) }));
            rec.insert("outputs".into(), json!({ "argmax": argmax_value, "value": num(value) }));
            let branch = if *y < 0.0 {
                "attained"
            } else if *y == 0.0 {
                "supremum"
            } else {
                "infinite"
            };
            rec.insert("branch".into(), json!(branch));
            rec.insert("delta".into(), Value::Null);
            let residual = if *y < 0.0 { y + alpha / (argmax * argmax) } else { 0.0 };
            rec.insert("residual".into(), num(residual));
            if check {
                if *y < 0.0 {
                    let hi = 10.0 * argmax + 10.0;
                    let (_, v) = oracle::grid_golden_min(|x| alpha / x - y * x, 1e-9, hi, 4000, 1e-13 * hi);
                    rec.insert("oracle".into(), oracle_entry(num(-v), (value + v).abs(), tol));
                } else {
                    rec.insert("oracle".into(), Value::Null);
                }
            }
        }
    }
    let code = check_code(&rec);
    Ok((rec, code))
}

fn project_record(t: &ProjectTarget, check: bool, tol: f64) -> cubiprox::Result<(Map<String, Value>, i32)> {
    let mut rec = Map::new();
    match t {
        ProjectTarget::Epigraph { alpha, y, eta } => {
            let p = LabeledPoint::new(y.clone(), *eta)?;
            let r = project_epigraph(*alpha, &p)?;
            rec.insert("inputs".into(), json!({ "alpha": num(*alpha), "point": point_value(&p) }));
            rec.insert("outputs".into(), json!({ "point": point_value(&r.point), "shift": num(r.shift) }));
            rec.insert("branch".into(), json!(r.branch.name()));
            rec.insert("delta".into(), num(r.delta));
            rec.insert("residual".into(), num(r.residual));
            rec.insert("fallback".into(), json!(r.fallback));
            if check {
                let o = if r.branch == cubiprox::EpiBranch::Interior {
                    p.clone()
                } else {
                    oracle::epigraph_radial(*alpha, &p)
                };
                let diff = (p.distance(&r.point) - p.distance(&o)).max(0.0);
                rec.insert("oracle".into(), oracle_entry(point_value(&o), diff, tol));
            }
        }
        ProjectTarget::Saddle { kind, alpha, beta, z, gamma } => {
            let set = SaddleSet::new(*alpha, *beta)?;
            let kind = match kind {
                KindArg::Diag => SaddleKind::Diag,
                KindArg::Antidiag => SaddleKind::AntiDiag,
            };
            let r = set.project(kind, z, *gamma)?;
            let vals = |v: &[f64]| v.iter().map(|&x| num(x)).collect::<Vec<_>>();
            rec.insert(
                "inputs".into(),
                json!({ "kind": kind.name(), "alpha": num(*alpha), "beta": num(*beta), "z": vals(z), "gamma": num(*gamma) }),
            );
            rec.insert(
                "outputs".into(),
                json!({ "x": num(r.x), "first": vals(&r.first), "second": vals(&r.second), "scalar": num(r.scalar),
                        "membership_gap": num(r.membership_gap(*alpha)) }),
            );
            rec.insert("branch".into(), json!(r.branch.name()));
            rec.insert("delta".into(), num(r.delta));
            rec.insert("residual".into(), num(r.residual));
            rec.insert("fallback".into(), json!(r.fallback));
            if check {
                let sigma = kind.sign();
                let zeta = cubiprox::point::norm(z);
                let zs: Vec<f64> = z.iter().map(|v| sigma * v).collect();
                let d = set.distance((z, &zs, *gamma), (&r.first, &r.second, r.scalar));
                let s0 = zeta / (1.0 + sigma * r.x);
                let g = oracle::saddle_local_grid_min(
                    *alpha,
                    *beta,
                    zeta,
                    sigma,
                    *gamma,
                    (s0, sigma * s0),
                    0.5 * (1.0 + s0),
                    10,
                );
                rec.insert("oracle".into(), oracle_entry(num(g), (d - g).max(0.0), tol));
            }
        }
    }
    let code = check_code(&rec);
    Ok((rec, code))
}

fn axis(from: f64, to: f64, points: usize) -> Option<Vec<f64>> {
    if points == 0 || from > to || !from.is_finite() || !to.is_finite() || (points > 1 && from == to) {
        return None;
    }
    if points == 1 {
        return Some(vec![from]);
    }
    let h = (to - from) / (points - 1) as f64;
    Some((0..points).map(|i| if i + 1 == points { to } else { from + h * i as f64 }).collect())
}

fn sample(args: &SampleArgs, argv: &[String], format: Format) -> cubiprox::Result<Outcome> {
    let mut rows: Vec<Vec<Value>> = Vec::new();
    let columns: Vec<&str>;
    match args.target {
        SampleTarget::QuarticH | SampleTarget::QuarticConjugate | SampleTarget::QuarticProx => {
            let Some(ys) = axis(args.from, args.to, args.points) else {
                return Ok(failure(2, "empty sample range"));
            };
            let [a, b, c, d, e] = match args.quartic.as_slice() {
                [a, b, c, d, e] => [*a, *b, *c, *d, *e],
                _ => return Ok(failure(2, "--quartic needs five coefficients")),
            };
            let h = ConvexQuartic::new(a, b, c, d, e)?;
            columns = vec!["input", "value", "branch", "delta"];
            for y in ys {
                let (value, cubic) = match args.target {
                    SampleTarget::QuarticH => (h.value(y), None),
                    SampleTarget::QuarticConjugate => (h.conjugate(y)?.value, Some(h.conjugate_cubic(y)?)),
                    _ => (h.prox(y)?, Some(h.prox_cubic(y)?)),
                };
                let (branch, delta) = match cubic {
                    Some(g) => {
                        let t = g.classify();
                        (json!(t.branch.name()), num(t.delta))
                    }
                    None => (json!("value"), Value::Null),
                };
                rows.push(vec![num(y), num(value), branch, delta]);
            }
        }
        SampleTarget::ReciprocalProx => {
            let Some(ys) = axis(args.from, args.to, args.points) else {
                return Ok(failure(2, "empty sample range"));
            };
            let h = ReciprocalFn::new(args.alpha.unwrap_or(1.0))?;
            columns = vec!["input", "value", "branch", "delta"];
            for y in ys {
                let r = h.prox_detailed(y)?;
                rows.push(vec![num(y), num(r.x), json!(r.branch.name()), num(r.delta)]);
            }
        }
        SampleTarget::EpigraphMap => {
            let (Some(etas), Some(nus)) =
                (axis(args.eta_from, args.eta_to, args.points), axis(args.nu_from, args.nu_to, args.points))
            else {
                return Ok(failure(2, "empty sample range"));
            };
            let alpha = args.alpha.unwrap_or(0.5);
            if alpha.is_nan() || alpha <= 0.0 {
                return Ok(failure(3, format!("alpha must be positive, got {alpha}")));
            }
            columns = vec!["eta", "nu", "branch", "delta"];
            for &eta in &etas {
                for &nu in &nus {
                    let (branch, delta) = if alpha * nu * nu <= eta {
                        ("interior", 0.0)
                    } else {
                        let d = cubic_data(alpha, nu, eta).delta_product;
                        (if d >= 0.0 { "cardano" } else { "trig" }, d)
                    };
                    rows.push(vec![num(eta), num(nu), json!(branch), num(delta)]);
                }
            }
        }
    }
    let stdout = match format {
        Format::Csv => render_csv_table(&columns, &rows),
        Format::Json => {
            let target = args.target.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default();
            let v = json!({ "schema": SCHEMA, "command": "sample", "argv": argv, "target": target,
                            "columns": columns, "rows": rows });
            format!("{v}\n")
        }
    };
    Ok(Outcome { code: 0, stdout, stderr: String::new() })
}

fn check(cli: &Cli, suite: &str, instances: Option<usize>, format: Format) -> cubiprox::Result<Outcome> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::parse(suite) {
            Some(s) => vec![s],
            None => return Ok(failure(2, format!("unknown suite {suite:?}"))),
        }
    };
    let seed = cli.seed.unwrap_or_else(oracle::suite_seed);
    let mut records = Vec::new();
    let mut code = 0;
    for s in suites {
        let tol = cli.tol.unwrap_or(s.default_tol());
        let r = run_suite(s, seed, instances.unwrap_or(s.default_instances()), tol)?;
        if !r.passed() {
            code = 4;
        }
        records.push(json!({
            "schema": SCHEMA, "command": "check", "suite": s.name(), "seed": r.seed,
            "instances": r.instances, "tol": num(r.tol), "metric": s.metric(),
            "failures": r.failures, "fallbacks": r.fallbacks, "max_error": num(r.max_error),
            "worst": r.worst, "pass": r.passed()
        }));
    }
    let stdout = match format {
        Format::Json => records.iter().map(|r| format!("{r}\n")).collect(),
        Format::Csv => {
            let columns = ["suite", "seed", "instances", "tol", "failures", "fallbacks", "max_error", "pass"];
            let rows: Vec<Vec<Value>> =
                records.iter().map(|r| columns.iter().map(|c| r[*c].clone()).collect()).collect();
            render_csv_table(&columns, &rows)
        }
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn replay(file: Option<&PathBuf>) -> cubiprox::Result<Outcome> {
    let text = match file {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return Ok(failure(2, format!("cannot read {}: {e}", path.display()))),
        },
        None => {
            let mut t = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut t) {
                return Ok(failure(2, format!("cannot read stdin: {e}")));
            }
            t
        }
    };
    let record: Value = match serde_json::from_str(text.trim()) {
        Ok(v) => v,
        Err(e) => return Ok(failure(2, format!("not a JSON record: {e}"))),
    };
    if record.get("schema").and_then(Value::as_u64) != Some(SCHEMA) {
        return Ok(failure(2, "record has no supported schema field"));
    }
    let Some(argv) = record.get("argv").and_then(Value::as_array) else {
        return Ok(failure(2, "record has no argv"));
    };
    let argv: Vec<String> = argv.iter().filter_map(|a| a.as_str().map(str::to_string)).collect();
    if argv.first().map(String::as_str) == Some("replay") {
        return Ok(failure(2, "refusing to replay a replay"));
    }
    Ok(run_args(argv))
}
