//! `heavytail` — distribution queries, tail constructions, moment-growth
//! certificates, chaos bound curves and Monte Carlo comparisons.
//!
//! Exit codes: 0 ok, 2 usage/malformed input, 3 domain or theorem
//! violation, 4 Monte Carlo data error. Numbers print with the shortest
//! round-trip decimal representation, so outputs are stable golden files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use heavytail_core::certificates::{self, CertificateGrids};
use heavytail_core::chaos::{self, bounds};
use heavytail_core::constructions::{
    block_breakpoints, constructed_tail, epsilon_at, log_l, verify_logconvex, EpsilonProfile,
    ProfileSpec, MAX_BLOCKS,
};
use heavytail_core::descriptor::DistDescriptor;
use heavytail_core::error::Error;
use heavytail_core::mc::{self, ExperimentConfig, FunctionalSpec};
use heavytail_core::tails::{sample_pareto, ParetoSpec};
use heavytail_core::QuadratureConfig;

#[derive(Parser)]
#[command(name = "heavytail", version, about = "Moment/tail machinery for Pareto-type distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format for tabular data.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Query or sample a distribution.
    Dist {
        #[command(subcommand)]
        action: DistAction,
    },
    /// Build a constructed tail from a profile config and verify it.
    Construct(ConstructArgs),
    /// Measure the four moment-growth constants and their relations.
    Verify(VerifyArgs),
    /// Evaluate chaos/sum bound formulas on a grid.
    Chaos(ChaosArgs),
    /// Run a Monte Carlo experiment and compare bounds against it.
    Compare(CompareArgs),
}

#[derive(Subcommand)]
enum DistAction {
    /// Survival P(X >= t) (P(|X| >= t) for symmetric specs).
    Tail {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        t: f64,
    },
    /// Exact moment E[X^p] = b^p alpha/(alpha-p).
    Moment {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        p: f64,
    },
    /// Inverse-transform samples (CSV: index,value).
    Sample {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Profile config (JSON or TOML): {alpha, rho, gamma, smoothed, n_min?}.
    #[arg(long)]
    config: PathBuf,
    /// What to emit: the tail curve or the per-block checkpoint table.
    #[arg(long, value_enum, default_value_t = ConstructEmit::Curve)]
    emit: ConstructEmit,
    /// Curve grid points.
    #[arg(long, default_value_t = 512)]
    grid_points: usize,
    /// Last block to tabulate/verify.
    #[arg(long, default_value_t = 8)]
    n_max: u32,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ConstructEmit {
    Curve,
    Checkpoints,
}

#[derive(Args)]
struct VerifyArgs {
    /// Compact descriptor, e.g. pareto:2,1 or pareto:3,1,s.
    #[arg(long, conflicts_with = "config")]
    dist: Option<String>,
    /// Profile config (JSON or TOML) for a constructed distribution.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ChaosArgs {
    /// Tensor file (JSON header, inline or sidecar entries).
    #[arg(long)]
    tensor: Option<PathBuf>,
    /// Inline weight vector, comma separated (order-1 alternative).
    #[arg(long, value_delimiter = ',')]
    weights: Vec<f64>,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Bound formula.
    #[arg(long, value_enum)]
    formula: Formula,
    /// Leading constant for the chaos envelopes (the theorems leave it
    /// unspecified; 1 gives pure shape curves).
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Threshold grid lo:hi:count (geometric).
    #[arg(long)]
    t_grid: Option<String>,
    /// Moment-order grid lo:hi:count (geometric), for two-level output.
    #[arg(long)]
    p_grid: Option<String>,
    /// Fixed moment order (combined bound).
    #[arg(long)]
    p: Option<f64>,
    /// Second scale of the two-level tail (the first is --b).
    #[arg(long)]
    a: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Formula {
    /// Multilinear chaos envelope (zero generalized diagonal).
    Multilinear,
    /// Recentered chaos envelope with per-multiplicity terms.
    Recentered,
    /// Fuk-Nagaev bound for weighted sums, optimized over p.
    FukNagaev,
    /// Combined quadratic bound (Fuk-Nagaev diagonal + multilinear rest).
    Combined,
    /// Two-level moment: exact vs bound over a p grid.
    TwoLevel,
}

#[derive(Args)]
struct CompareArgs {
    /// Experiment config (JSON or TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Input(_) => 2,
        Error::Data(_) => 4,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let out = OutputTarget {
        path: cli.output,
        format: cli.format,
    };
    match cli.command {
        Command::Dist { action } => dist(action, &out),
        Command::Construct(args) => construct(args, &out),
        Command::Verify(args) => verify(args, &out),
        Command::Chaos(args) => chaos_cmd(args, &out),
        Command::Compare(args) => compare(args, &out),
    }
}

struct OutputTarget {
    path: Option<PathBuf>,
    format: Format,
}

impl OutputTarget {
    fn write(&self, content: &str) -> Result<(), Error> {
        match &self.path {
            Some(path) => std::fs::write(path, content)
                .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{content}");
                Ok(())
            }
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Input(format!("grid {text:?} must be lo:hi:count")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Input(format!("bad grid endpoint {:?}", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Input(format!("bad grid endpoint {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| Error::Input(format!("bad grid count {:?}", parts[2])))?;
    if !(lo > 0.0 && hi > lo && count >= 2) {
        return Err(Error::Input(format!("grid {text:?} must have 0 < lo < hi and count >= 2")));
    }
    Ok((0..count)
        .map(|k| {
            if k + 1 == count {
                hi
            } else {
                lo * (hi / lo).powf(k as f64 / (count - 1) as f64)
            }
        })
        .collect())
}

fn load_profile(path: &Path) -> Result<EpsilonProfile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let spec: ProfileSpec = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| Error::Input(format!("malformed TOML profile: {e}")))?
    } else {
        serde_json::from_str(&text)
            .map_err(|e| Error::Input(format!("malformed JSON profile: {e}")))?
    };
    EpsilonProfile::from_spec(&spec)
}

fn load_experiment(path: &Path) -> Result<ExperimentConfig, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| Error::Input(format!("malformed TOML experiment: {e}")))
    } else {
        serde_json::from_str(&text)
            .map_err(|e| Error::Input(format!("malformed JSON experiment: {e}")))
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Input(format!("serialize: {e}")))
}

fn dist(action: DistAction, out: &OutputTarget) -> Result<(), Error> {
    match action {
        DistAction::Tail { alpha, b, symmetric, t } => {
            let spec = ParetoSpec::new(alpha, b, symmetric)?;
            out.write(&format!("{}\n", spec.tail(t)))
        }
        DistAction::Moment { alpha, b, p } => {
            let spec = ParetoSpec::new(alpha, b, false)?;
            out.write(&format!("{}\n", spec.moment(p)?))
        }
        DistAction::Sample { alpha, b, symmetric, n, seed } => {
            let spec = ParetoSpec::new(alpha, b, symmetric)?;
            let batch = sample_pareto(&spec, seed, n)?;
            match out.format {
                Format::Csv => {
                    let mut s = String::from("index,value\n");
                    for (i, v) in batch.values.iter().enumerate() {
                        let _ = writeln!(s, "{i},{v}");
                    }
                    out.write(&s)
                }
                Format::Json => out.write(&to_json(&batch)?),
            }
        }
    }
}

fn construct(args: ConstructArgs, out: &OutputTarget) -> Result<(), Error> {
    let profile = load_profile(&args.config)?;
    let tail = constructed_tail(&profile)?;
    let n_max = args.n_max.min(MAX_BLOCKS);

    // verification: monotonicity on a dense grid, checkpoint identities,
    // convexity report for smoothed profiles
    let l_max = block_breakpoints(n_max).log_end + 1.0;
    let worst_increase = tail.monotone_violation_on_grid(10_000, l_max);
    if worst_increase > 1e-12 {
        return Err(Error::TheoremViolation {
            op: "construct",
            message: format!("survival increases by {worst_increase} on the verification grid"),
        });
    }
    let mut worst_checkpoint = 0.0f64;
    for n in 1..=n_max {
        worst_checkpoint =
            worst_checkpoint.max(heavytail_core::constructions::checkpoint_identity_error(&profile, n));
    }
    if worst_checkpoint > 1e-9 {
        return Err(Error::TheoremViolation {
            op: "construct",
            message: format!("checkpoint identity off by {worst_checkpoint}"),
        });
    }
    if profile.is_smoothed() {
        let report = verify_logconvex(&profile, n_max)?;
        if !report.pass {
            return Err(Error::TheoremViolation {
                op: "construct",
                message: "log-convexity verification failed; see verify_logconvex report".into(),
            });
        }
        eprintln!(
            "log-convexity: {} blocks checked from n_min = {}, all pass",
            report.blocks.len(),
            report.n_min
        );
    }
    eprintln!(
        "monotone on 10^4-point grid (worst increase {worst_increase}); checkpoint identity within {worst_checkpoint}"
    );

    match args.emit {
        ConstructEmit::Curve => {
            // concentrate points inside the blocks: a uniform sweep over
            // [0, log_end(n_max)] would step across the early blocks
            // entirely (block 1 spans ~5.4 log units out of ~2.4e4)
            let per_block = (args.grid_points / (n_max as usize + 1)).max(8);
            let mut grid = Vec::new();
            let mut prev_end = 0.0f64;
            for n in 1..=n_max {
                let bp = block_breakpoints(n);
                for i in 0..per_block / 4 {
                    grid.push(prev_end + (bp.log_a - prev_end) * i as f64 / (per_block / 4) as f64);
                }
                for i in 0..per_block {
                    grid.push(bp.log_a + (bp.log_end - bp.log_a) * i as f64 / (per_block - 1) as f64);
                }
                prev_end = bp.log_end;
            }
            grid.push(l_max);
            let mut s = String::from("log_t,epsilon,log_l,log_survival\n");
            for &l in &grid {
                let _ = writeln!(
                    s,
                    "{l},{},{},{}",
                    epsilon_at(&profile, l),
                    log_l(&profile, l),
                    tail.log_survival(l)
                );
            }
            out.write(&s)
        }
        ConstructEmit::Checkpoints => {
            let mut s = String::from("n,log_b_n,log_l_at_b_n,h_at_b_n\n");
            for n in 1..=n_max {
                let bp = block_breakpoints(n);
                let ll = log_l(&profile, bp.log_b);
                let _ = writeln!(s, "{n},{},{ll},{}", bp.log_b, ll.exp());
            }
            out.write(&s)
        }
    }
}

fn verify(args: VerifyArgs, out: &OutputTarget) -> Result<(), Error> {
    let cfg = QuadratureConfig::default();
    let (tail, alpha) = match (&args.dist, &args.config) {
        (Some(text), None) => {
            let descriptor = DistDescriptor::parse_cli(text)?;
            (descriptor.build()?.tail_function(), descriptor.tail_index())
        }
        (None, Some(path)) => {
            let profile = load_profile(path)?;
            (constructed_tail(&profile)?, profile.alpha())
        }
        _ => {
            return Err(Error::Input(
                "verify needs exactly one of --dist or --config".into(),
            ))
        }
    };
    let grids = CertificateGrids::default_for(alpha);
    let certificate = certificates::measure_certificate(&tail, alpha, &grids, &cfg)?;
    out.write(&to_json(&certificate)?)?;
    if !certificate.all_pass {
        return Err(Error::TheoremViolation {
            op: "verify",
            message: "one or more constant relations failed".into(),
        });
    }
    Ok(())
}

fn chaos_cmd(args: ChaosArgs, out: &OutputTarget) -> Result<(), Error> {
    let tensor = match (&args.tensor, args.weights.is_empty()) {
        (Some(path), _) => Some(chaos::io::load_tensor(path)?),
        (None, false) => Some(chaos::CoefficientTensor::new(
            1,
            args.weights.len(),
            args.weights.clone(),
        )?),
        (None, true) => None,
    };
    let alpha = args.alpha;
    let b = args.b;

    match args.formula {
        Formula::TwoLevel => {
            let a = args
                .a
                .ok_or_else(|| Error::Input("two-level needs --a (with --b the larger scale)".into()))?;
            let grid = parse_grid(
                args.p_grid
                    .as_deref()
                    .ok_or_else(|| Error::Input("two-level needs --p-grid lo:hi:count".into()))?,
            )?;
            let mut s = String::from("p,exact,bound\n");
            for &p in &grid {
                let m = bounds::two_level_moment(alpha, a, b, p)?;
                let _ = writeln!(s, "{p},{},{}", m.exact, m.bound);
            }
            return out.write(&s);
        }
        _ => {}
    }

    let tensor = tensor.ok_or_else(|| Error::Input("this formula needs --tensor or --weights".into()))?;
    let t_grid = parse_grid(
        args.t_grid
            .as_deref()
            .ok_or_else(|| Error::Input("this formula needs --t-grid lo:hi:count".into()))?,
    )?;

    match args.formula {
        Formula::Multilinear => {
            let hs = tensor.hs_norm();
            let d = tensor.d();
            if !tensor.has_generalized_diagonal_zero() {
                return Err(Error::Precondition {
                    op: "chaos",
                    message: "the multilinear envelope requires a zero generalized diagonal; use the recentered formula".into(),
                });
            }
            let mut s = String::from("t,bound\n");
            for &t in &t_grid {
                let _ = writeln!(s, "{t},{}", bounds::multilinear_tail_bound(hs, d, alpha, b, args.c, t)?);
            }
            out.write(&s)
        }
        Formula::Recentered => {
            let dec = chaos::decompose(&tensor);
            let d = tensor.d();
            let mut header = String::from("t,bound");
            let live: Vec<(usize, f64)> = dec
                .parts
                .iter()
                .enumerate()
                .filter_map(|(i, p)| {
                    let hs = p.hs_norm();
                    (hs > 0.0).then_some((i + 1, hs))
                })
                .collect();
            for (k, _) in &live {
                let _ = write!(header, ",term_k{k}");
            }
            header.push('\n');
            let mut s = header;
            for &t in &t_grid {
                let total = bounds::recentered_tail_bound(&tensor, alpha, b, args.c, t)?;
                let _ = write!(s, "{t},{total}");
                for &(k, hs_k) in &live {
                    let index = alpha / k as f64;
                    let beta = (d - k + 1) as f64;
                    let scale = hs_k * b.powi(d as i32);
                    let term = if t > scale * (beta / index).exp() {
                        args.c * certificates::generalized_tail_bound(scale, beta, index, t)?
                    } else {
                        0.0
                    };
                    let _ = write!(s, ",{term}");
                }
                s.push('\n');
            }
            out.write(&s)
        }
        Formula::FukNagaev => {
            if tensor.d() != 1 {
                return Err(Error::Input("fuk-nagaev needs an order-1 tensor (weights)".into()));
            }
            let weights = tensor.entries();
            let mut s = String::from("t,bound,p_star\n");
            for &t in &t_grid {
                let (v, p_star) = bounds::fuk_nagaev_optimized(weights, alpha, b, t)?;
                let _ = writeln!(s, "{t},{v},{p_star}");
            }
            out.write(&s)
        }
        Formula::Combined => {
            let p = args
                .p
                .ok_or_else(|| Error::Input("combined needs --p (moment order below alpha/2)".into()))?;
            let mut s = String::from("t,bound\n");
            for &t in &t_grid {
                let v = bounds::combined_quadratic_bound(
                    &tensor,
                    alpha,
                    b,
                    p,
                    t,
                    bounds::CombinedConstants::default(),
                )?;
                let _ = writeln!(s, "{t},{v}");
            }
            out.write(&s)
        }
        Formula::TwoLevel => unreachable!(),
    }
}

fn compare(args: CompareArgs, out: &OutputTarget) -> Result<(), Error> {
    let mut config = load_experiment(&args.config)?;
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    let result = mc::run_experiment(&config)?;
    let alpha = result.metadata.tail_index;
    let doubling = if config.two_sided { 2.0 } else { 1.0 };

    // slope-style threshold grids carry a log-log slope fit in the report
    let slope = match &config.thresholds {
        mc::ThresholdSpec::GeometricBetweenQuantiles { lo_level, hi_level, .. } => Some(
            mc::tail_slope(&result.tail, (1.0 - hi_level) * 0.5, (1.0 - lo_level) * 2.0)?,
        ),
        _ => None,
    };

    // evaluate each requested bound on the empirical thresholds
    let mut columns: Vec<(String, Vec<f64>, bool)> = Vec::new(); // (id, values, strict)
    for id in &config.comparisons {
        let thresholds = &result.tail.thresholds;
        match id.as_str() {
            "fuk_nagaev" => {
                let FunctionalSpec::Linear { weights } = &config.functional else {
                    return Err(Error::Input("fuk_nagaev comparison needs a linear functional".into()));
                };
                let b = match &config.distribution {
                    DistDescriptor::Pareto { b, .. } => *b,
                    _ => 1.0,
                };
                let values: Result<Vec<f64>, Error> = thresholds
                    .iter()
                    .map(|&t| bounds::fuk_nagaev_optimized(weights, alpha, b, t).map(|(v, _)| doubling * v))
                    .collect();
                columns.push((id.clone(), values?, true));
            }
            "chebyshev" => {
                let DistDescriptor::Pareto { alpha, b, .. } = &config.distribution else {
                    return Err(Error::Input("chebyshev comparison needs a pareto distribution".into()));
                };
                let values: Result<Vec<f64>, Error> = thresholds
                    .iter()
                    .map(|&t| certificates::chebyshev_tail_bound(*alpha, *b, t).map(|(v, _)| v))
                    .collect();
                columns.push((id.clone(), values?, true));
            }
            "multilinear" | "recentered" => {
                let FunctionalSpec::Chaos { tensor, .. } = &config.functional else {
                    return Err(Error::Input(format!("{id} comparison needs a chaos functional")));
                };
                let a = tensor.load()?;
                let b = match &config.distribution {
                    DistDescriptor::Pareto { b, .. } => *b,
                    _ => 1.0,
                };
                let values: Result<Vec<f64>, Error> = thresholds
                    .iter()
                    .map(|&t| {
                        if id == "multilinear" {
                            bounds::multilinear_tail_bound(a.hs_norm(), a.d(), alpha, b, 1.0, t)
                        } else {
                            bounds::recentered_tail_bound(&a, alpha, b, 1.0, t)
                        }
                    })
                    .collect();
                // shape statement only: the leading constant is unspecified
                columns.push((id.clone(), values?, false));
            }
            other => {
                return Err(Error::Input(format!("unknown comparison formula {other:?}")));
            }
        }
    }

    let mut violation = None;
    let mut csv = String::from("threshold,estimate,ci_lo,ci_hi");
    for (id, _, _) in &columns {
        let _ = write!(csv, ",{id}");
    }
    csv.push('\n');
    for i in 0..result.tail.thresholds.len() {
        let _ = write!(
            csv,
            "{},{},{},{}",
            result.tail.thresholds[i],
            result.tail.estimates[i],
            result.tail.ci_lo[i],
            result.tail.ci_hi[i]
        );
        for (id, values, strict) in &columns {
            let _ = write!(csv, ",{}", values[i]);
            if *strict && values[i] < result.tail.ci_lo[i] {
                violation = Some(format!(
                    "{id} bound {} below the empirical lower CI {} at threshold {}",
                    values[i], result.tail.ci_lo[i], result.tail.thresholds[i]
                ));
            }
        }
        csv.push('\n');
    }

    match out.format {
        Format::Csv => out.write(&csv)?,
        Format::Json => {
            let report = serde_json::json!({
                "tail": result.tail,
                "lp_table": result.lp_table,
                "metadata": result.metadata,
                "slope": slope,
                "bounds": columns.iter().map(|(id, values, strict)| {
                    serde_json::json!({"formula_id": id, "values": values, "strict": strict})
                }).collect::<Vec<_>>(),
            });
            out.write(&to_json(&report)?)?;
        }
    }
    if let Some(slope) = slope {
        eprintln!("log-log tail slope: {slope}");
    }
    for warning in &result.metadata.warnings {
        eprintln!("warning: {warning}");
    }
    if let Some(message) = violation {
        return Err(Error::TheoremViolation {
            op: "compare",
            message,
        });
    }
    Ok(())
}
