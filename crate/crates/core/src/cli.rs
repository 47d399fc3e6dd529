//! Command-line front end.
//!
//! Exit codes: 0 success, 1 output I/O failure, 2 malformed input or usage,
//! 3 precondition violation, 4 numerical non-convergence.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::analysis::{asymmetry_quotient, chords_bisected_by, conjecture_check, core_containment, solve_alpha1};
use crate::bodies::{BodySpec, ConvexBody};
use crate::cores::{alpha_core, critical_values};
use crate::envelope::{classify_direction, fbz_from_curve, sample_envelope, Label};
use crate::error::Error;
use crate::export::{self, round12};
use crate::geom::{Angle, OrientedLine};
use crate::oracle::{mc_area, Seed};
use crate::sections::velocity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

pub const MIN_SAMPLES: usize = 16;
pub const MIN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Envelope,
    Core,
    Critical,
    Classify,
    Bisected,
    Containment,
    Conjecture,
    Oracle,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Envelope => "envelope",
            Command::Core => "core",
            Command::Critical => "critical",
            Command::Classify => "classify",
            Command::Bisected => "bisected",
            Command::Containment => "containment",
            Command::Conjecture => "conjecture",
            Command::Oracle => "oracle",
        }
    }

    fn needs_alpha(self) -> bool {
        matches!(
            self,
            Command::Envelope | Command::Core | Command::Classify | Command::Containment | Command::Conjecture
        )
    }

    fn body_count(self) -> usize {
        match self {
            Command::Containment | Command::Conjecture => 2,
            _ => 1,
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Command::Core => 4096,
            Command::Oracle => 1_000_000,
            _ => 1024,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub bodies: Vec<PathBuf>,
    pub alpha: Option<f64>,
    pub samples: usize,
    pub tol: f64,
    pub seed: Seed,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub theta: Option<f64>,
    pub offset: Option<f64>,
}

#[derive(Parser, Debug)]
#[command(
    name = "alphasec",
    version,
    about = "Alpha-sections, envelopes and floating bodies of planar convex bodies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Area fraction on the right of each section.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Sample the envelope and its F/B/Z partition.
    Envelope {
        body: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the alpha-core.
    Core {
        body: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Locate alpha_B, alpha_Z and alpha_K.
    Critical {
        body: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Classify one direction, or every direction when --theta is absent.
    Classify {
        body: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Chords bisected by the mass center and the asymmetry quotient.
    Bisected {
        body: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Is the outer body's alpha-core inside the inner body's?
    Containment {
        inner: PathBuf,
        outer: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a direction violating the containment conjecture.
    Conjecture {
        inner: PathBuf,
        outer: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo estimate of the area right of a line.
    Oracle {
        body: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        offset: f64,
        #[command(flatten)]
        common: Common,
    },
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let (command, bodies, common, theta, offset) = match cli.command {
            Cmd::Envelope { body, common } => (Command::Envelope, vec![body], common, None, None),
            Cmd::Core { body, common } => (Command::Core, vec![body], common, None, None),
            Cmd::Critical { body, common } => (Command::Critical, vec![body], common, None, None),
            Cmd::Classify { body, theta, common } => (Command::Classify, vec![body], common, theta, None),
            Cmd::Bisected { body, common } => (Command::Bisected, vec![body], common, None, None),
            Cmd::Containment { inner, outer, common } => (Command::Containment, vec![inner, outer], common, None, None),
            Cmd::Conjecture { inner, outer, common } => (Command::Conjecture, vec![inner, outer], common, None, None),
            Cmd::Oracle {
                body,
                theta,
                offset,
                common,
            } => (Command::Oracle, vec![body], common, Some(theta), Some(offset)),
        };
        RunConfig {
            command,
            bodies,
            alpha: common.alpha,
            samples: common.samples.unwrap_or(command.default_samples()),
            tol: common.tol,
            seed: Seed(common.seed),
            out: common.out,
            format: common.format,
            theta,
            offset,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Malformed(String),
    Precondition(String),
    NoConvergence(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Precondition(_) => EXIT_PRECONDITION,
            Failure::NoConvergence(_) => EXIT_NO_CONVERGENCE,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Malformed(m) => write!(f, "malformed input: {m}"),
            Failure::Precondition(m) => write!(f, "precondition violated: {m}"),
            Failure::NoConvergence(m) => write!(f, "no convergence: {m}"),
            Failure::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_precondition() {
            Failure::Precondition(e.to_string())
        } else {
            Failure::NoConvergence(e.to_string())
        }
    }
}

/// Formats a number with 12 significant digits for summary lines.
fn g(x: f64) -> String {
    format!("{}", round12(x))
}

pub fn load_body(path: &Path) -> Result<ConvexBody, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec: BodySpec = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    spec.build().map_err(|e| format!("{}: {e}", path.display()))
}

struct Report {
    body: String,
    summary: String,
}

fn json_report(v: Value, summary: String) -> Report {
    Report {
        body: export::to_pretty(&v),
        summary,
    }
}

fn validate(cfg: &RunConfig) -> Result<(), Failure> {
    if cfg.bodies.len() != cfg.command.body_count() {
        return Err(Failure::Malformed(format!(
            "{} takes {} body file(s)",
            cfg.command.name(),
            cfg.command.body_count()
        )));
    }
    if cfg.command.needs_alpha() {
        match cfg.alpha {
            None => return Err(Failure::Malformed(format!("{} requires --alpha", cfg.command.name()))),
            Some(a) if !(a > 0.0 && a < 1.0) => {
                return Err(Failure::Precondition(format!("alpha = {a} is outside (0, 1)")))
            }
            _ => {}
        }
    }
    if cfg.samples < MIN_SAMPLES {
        return Err(Failure::Precondition(format!("samples must be at least {MIN_SAMPLES}")));
    }
    if cfg.tol.is_nan() || cfg.tol < MIN_TOL {
        return Err(Failure::Precondition(format!("tol must be at least {MIN_TOL:e}")));
    }
    if cfg.format == Format::Svg && !matches!(cfg.command, Command::Envelope | Command::Core) {
        return Err(Failure::Malformed(format!("{} has no svg output", cfg.command.name())));
    }
    Ok(())
}

fn execute(cfg: &RunConfig) -> Result<Report, Failure> {
    validate(cfg)?;
    let bodies = cfg
        .bodies
        .iter()
        .map(|p| load_body(p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Malformed)?;
    let body = &bodies[0];
    let alpha = cfg.alpha.unwrap_or(0.5);
    let n = cfg.samples;

    let report = match cfg.command {
        Command::Envelope => {
            let curve = sample_envelope(body, alpha, n)?;
            let fbz = fbz_from_curve(body, &curve)?;
            let summary = format!(
                "envelope alpha={} samples={} cusps={} F={} B={} Z={}",
                g(alpha),
                curve.samples.len(),
                fbz.cusps.len(),
                g(fbz.measure(Label::F)),
                g(fbz.measure(Label::B)),
                g(fbz.measure(Label::Z)),
            );
            match cfg.format {
                Format::Json => json_report(export::envelope_json(&curve, &fbz), summary),
                Format::Svg => Report {
                    body: export::svg(body, Some(&curve), None, &fbz.cusps),
                    summary,
                },
            }
        }
        Command::Core => {
            let core = alpha_core(body, alpha, n)?;
            let summary = format!(
                "core alpha={} kind={} inradius={}",
                g(alpha),
                core.kind_name(),
                g(core.inradius_estimate)
            );
            match cfg.format {
                Format::Json => json_report(export::core_json(alpha, &core), summary),
                Format::Svg => Report {
                    body: export::svg(body, None, Some(&core), &[]),
                    summary,
                },
            }
        }
        Command::Critical => {
            let cv = critical_values(body, cfg.tol)?;
            let summary = format!(
                "critical alpha_B={} alpha_Z={} alpha_K={}",
                g(cv.alpha_B),
                g(cv.alpha_Z),
                g(cv.alpha_K)
            );
            json_report(export::critical_json(&cv), summary)
        }
        Command::Classify => match cfg.theta {
            Some(t) => {
                let theta = Angle::new(t);
                let labels = classify_direction(body, alpha, theta)?;
                let v = velocity(body, alpha, theta)?;
                let summary = format!(
                    "classify alpha={} theta={} labels={labels}",
                    g(alpha),
                    g(theta.radians())
                );
                let value = serde_json::json!({
                    "alpha": export::num(alpha),
                    "theta": export::num(theta.radians()),
                    "v_l": export::num(v.v_l),
                    "v_r": export::num(v.v_r),
                    "labels": labels,
                });
                json_report(value, summary)
            }
            None => {
                let curve = sample_envelope(body, alpha, n)?;
                let fbz = fbz_from_curve(body, &curve)?;
                let intervals: Vec<Value> = fbz
                    .intervals
                    .iter()
                    .map(|i| {
                        serde_json::json!({"start": export::num(i.start), "end": export::num(i.end), "labels": i.labels})
                    })
                    .collect();
                let value = serde_json::json!({
                    "alpha": export::num(alpha),
                    "intervals": intervals,
                    "measure": {
                        "F": export::num(fbz.measure(Label::F)),
                        "B": export::num(fbz.measure(Label::B)),
                        "Z": export::num(fbz.measure(Label::Z)),
                    },
                    "cusps": fbz.cusps.iter().map(|p| export::point(*p)).collect::<Vec<_>>(),
                });
                let summary = format!("classify alpha={} intervals={}", g(alpha), fbz.intervals.len());
                json_report(value, summary)
            }
        },
        Command::Bisected => {
            let gc = body.mass_center();
            let chords = chords_bisected_by(body, gc)?;
            let q = asymmetry_quotient(body)?;
            let count = match &chords {
                crate::analysis::BisectedChords::Finite(v) => v.len().to_string(),
                crate::analysis::BisectedChords::Continuum => "continuum".into(),
            };
            let summary = format!("bisected chords={count} quotient={}", g(q));
            json_report(export::bisected_json(gc, &chords, q), summary)
        }
        Command::Containment => {
            let contained = core_containment(body, &bodies[1], alpha, n)?;
            let a1 = solve_alpha1();
            let summary = format!("containment alpha={} contained={contained} alpha1={}", g(alpha), g(a1));
            json_report(export::containment_json(alpha, contained, a1), summary)
        }
        Command::Conjecture => {
            let w = conjecture_check(body, &bodies[1], alpha, n)?;
            let value = export::witness_json(alpha, &w);
            let summary = format!(
                "conjecture alpha={} witness={}",
                g(alpha),
                value["witness"].as_str().unwrap_or("?")
            );
            json_report(value, summary)
        }
        Command::Oracle => {
            let line = OrientedLine::new(cfg.theta.unwrap_or(0.0), cfg.offset.unwrap_or(0.0));
            let est = mc_area(body, &line, n, cfg.seed)?;
            let summary = format!("oracle estimate={} sigma={}", g(est.estimate), g(est.sigma));
            json_report(export::oracle_json(&est), summary)
        }
    };
    Ok(report)
}

/// Runs one configured command and returns its exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let report = match execute(cfg) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("alphasec: {f}");
            return f.code();
        }
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &report.body) {
                eprintln!("alphasec: {}", Failure::Io(format!("{}: {e}", path.display())));
                return EXIT_IO;
            }
            println!("{}", report.summary);
        }
        None => {
            print!("{}", report.body);
            eprintln!("{}", report.summary);
        }
    }
    EXIT_OK
}

fn configure_threads() {
    if let Some(n) = std::env::var("ALPHASEC_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    run(&RunConfig::from(cli))
}
