//! `compactness`: run entropy descents, sweep the invariants, regenerate
//! figure data, run the numeric oracles, and evaluate the continuous
//! analogues. Output goes to stdout unless `--output` or
//! `COMPACTNESS_OUTPUT_DIR` names a file.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad usage or input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::Serialize;

use compactness::continuous::{self, DiagonalGaussian, IntervalUniform, SampleCloud};
use compactness::descent::{self, DescentConfig, StopMode, Trajectory};
use compactness::experiments::{self, generators, Figure2Ranges, Mutation};
use compactness::masses::{self, MassVector};
use compactness::oracles::{self, wide};

const AFTER_HELP: &str = "\
Environment:
  COMPACTNESS_SEED        default for --seed (42 when unset)
  COMPACTNESS_OUTPUT_DIR  directory for output files; relative --output paths
                          resolve against it, and without --output each
                          subcommand writes a default file name there

Exit codes: 0 success, 1 a check failed, 2 bad usage or input.";

#[derive(Parser)]
#[command(name = "compactness", version, about = "Entropy descent on probability masses", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run clamped entropy descent from a mass vector and log each step.
    Descend(DescendArgs),
    /// Sweep every invariant over seeded random inputs.
    Verify(VerifyArgs),
    /// Regenerate the data behind a scatter figure (1, 2 or 3).
    Figure(FigureArgs),
    /// Compare closed forms against independent numeric oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Entropy, covering numbers and descent for continuous distributions.
    #[command(subcommand)]
    Continuous(ContinuousCommand),
}

#[derive(Args)]
struct Common {
    /// Seed for every random draw.
    #[arg(long, env = "COMPACTNESS_SEED", default_value_t = experiments::DEFAULT_SEED)]
    seed: u64,
    /// Output file; stdout when absent and no output directory is set.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for output files.
    #[arg(long, env = "COMPACTNESS_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StopArg {
    CardinalityOne,
    MaxSteps,
}

#[derive(Args)]
struct DescendArgs {
    /// Comma-separated non-negative masses, e.g. 1,2,4.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    masses: Vec<f64>,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    lr: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    /// Masses below this snap to zero.
    #[arg(long, default_value_t = descent::DEFAULT_ZERO_SNAP_TOLERANCE)]
    tol: f64,
    /// Draw counts m whose expected cardinality is logged, e.g. 2,10.
    #[arg(long, value_delimiter = ',')]
    draw_counts: Vec<u64>,
    /// Log every n-th step (the first and last are always logged).
    #[arg(long, default_value_t = 1)]
    stride: u64,
    #[arg(long, value_enum, default_value_t = StopArg::CardinalityOne)]
    stop: StopArg,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    FlipGradientSign,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Self-test: inject a known defect, which the sweep must catch.
    #[arg(long, value_enum, default_value_t = MutationArg::None)]
    mutate: MutationArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id: 1, 2 or 3.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    which: u8,
    /// Records to sample (defaults: 50000, 10000, 100000). Figure 3 then
    /// keeps only the records whose length is 2, 5, 10, 25, 50 or 100.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,
    #[arg(long, default_value_t = 2)]
    s_min: usize,
    #[arg(long, default_value_t = 100)]
    s_max: usize,
    #[arg(long, default_value_t = 2)]
    m_min: u64,
    #[arg(long, default_value_t = 100)]
    m_max: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Analytic gradients of H and U against central differences.
    Gradcheck {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = oracles::DEFAULT_STEP)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form U against exhaustive enumeration of draw sequences.
    Bruteforce {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_s: u64,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_m: u64,
        /// Random mass vectors per (s, m) pair.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        per_pair: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form U against simulated draws.
    Montecarlo {
        /// Random configurations to test.
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        configs: u64,
        /// Simulated batches per configuration.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
    /// The log-ratio-sum and sorted-dot-product inequalities.
    Lemmas {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum ContinuousCommand {
    /// Entropy ln(b − a) of the uniform distribution on [a, b].
    Uniform {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Entropy of a diagonal Gaussian.
    Gaussian {
        /// Comma-separated per-dimension variances.
        #[arg(long, value_delimiter = ',', required = true)]
        variances: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal number of eps-balls covering [a, b].
    Cover {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        eps: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Repeated variance-descent steps on a point cloud.
    Contract {
        /// Points separated by ';', coordinates by ',' (e.g. "0,1;2,3").
        /// Plain "0,2" is a cloud of scalars.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_negative_numbers = true)]
        lr: f64,
        #[arg(long, default_value_t = 1)]
        steps: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Entropy descent on the endpoints of a uniform interval.
    RangeDescent {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        eps: f64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        lr: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: u64,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<compactness::Error> for Failure {
    fn from(e: compactness::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Whether every check in a run passed.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok { Verdict::Pass } else { Verdict::Fail }
    }
}

type Outcome = Result<Verdict, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Descend(a) => descend(a),
        Command::Verify(a) => verify(a),
        Command::Figure(a) => figure(a),
        Command::Oracle(c) => oracle(c),
        Command::Continuous(c) => continuous(c),
    };
    match outcome {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

impl Common {
    /// Opens the output sink. `default_name` is used when only an output
    /// directory is configured.
    fn open(&self, default_name: &str) -> Result<Box<dyn Write>, Failure> {
        let path = match (&self.output, &self.output_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(default_name)),
            (None, None) => None,
        };
        Ok(match path {
            Some(p) => {
                if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(parent)?;
                }
                Box::new(BufWriter::new(File::create(p)?))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

/// 17 significant digits: enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_writer(sink: Box<dyn Write>) -> csv::Writer<Box<dyn Write>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink)
}

fn write_jsonl<T: Serialize>(sink: &mut dyn Write, rows: impl IntoIterator<Item = T>) -> Result<(), Failure> {
    for row in rows {
        serde_json::to_writer(&mut *sink, &row)?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}

fn descend(args: DescendArgs) -> Outcome {
    let z = MassVector::new(args.masses)?;
    let mut cfg = DescentConfig::new(args.lr);
    cfg.max_steps = args.max_steps;
    cfg.zero_snap_tolerance = args.tol;
    cfg.tracked_draw_counts = args.draw_counts;
    cfg.record_stride = args.stride;
    cfg.stop_mode = match args.stop {
        StopArg::CardinalityOne => StopMode::CardinalityOne,
        StopArg::MaxSteps => StopMode::MaxStepsOnly,
    };
    let traj = descent::run(&z, &cfg)?;

    let mut sink = args.common.open(&format!("descend.{}", args.format.extension()))?;
    match args.format {
        Format::Jsonl => write_jsonl(&mut sink, &traj.steps)?,
        Format::Csv => write_trajectory_csv(sink, &traj)?,
    }
    eprintln!(
        "termination_reason={} steps={} final_cardinality={}",
        traj.termination_reason.as_str(),
        traj.steps_taken,
        traj.last().cardinality
    );
    Ok(Verdict::Pass)
}

fn write_trajectory_csv(sink: Box<dyn Write>, traj: &Trajectory) -> Result<(), Failure> {
    let mut w = csv_writer(sink);
    let mut header = vec!["t".to_string(), "entropy".into(), "total_mass".into(), "cardinality".into()];
    header.extend((0..traj.initial.len()).map(|k| format!("z{k}")));
    header.extend(traj.config.tracked_draw_counts.iter().map(|m| format!("u_m{m}")));
    header.push("clamped_indices".into());
    w.write_record(&header)?;
    for r in &traj.steps {
        let mut row = vec![r.t.to_string(), num(r.entropy), num(r.total_mass), r.cardinality.to_string()];
        row.extend(r.masses.values().iter().map(|&v| num(v)));
        row.extend(r.expected_cardinalities.values().map(|&u| num(u)));
        row.push(r.clamped_indices.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(";"));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let mutation = match args.mutate {
        MutationArg::None => Mutation::None,
        MutationArg::FlipGradientSign => Mutation::FlipGradientSign,
    };
    let reports = experiments::verify_corollaries_with(args.trials, args.common.seed, mutation)?;
    let mut sink = args.common.open(&format!("verify.{}", args.format.extension()))?;
    match args.format {
        Format::Jsonl => write_jsonl(&mut sink, &reports)?,
        Format::Csv => {
            let mut w = csv_writer(sink);
            w.write_record(["check_name", "trials", "failures", "first_counterexample"])?;
            for r in &reports {
                w.write_record([
                    r.check_name.clone(),
                    r.trials.to_string(),
                    r.failures.to_string(),
                    r.first_counterexample.clone(),
                ])?;
            }
            w.flush()?;
        }
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    for r in &failed {
        eprintln!("FAIL {} ({}/{}): {}", r.check_name, r.failures, r.trials, r.first_counterexample);
    }
    eprintln!("{} checks, {} failed", reports.len(), failed.len());
    Ok(Verdict::from_bool(failed.is_empty()))
}

fn figure(args: FigureArgs) -> Outcome {
    let seed = args.common.seed;
    let default_n = match args.which {
        1 => experiments::FIGURE1_ROWS,
        2 => experiments::FIGURE2_ROWS,
        _ => experiments::FIGURE3_POOL,
    };
    let n = args.n.map_or(default_n, |n| n as usize);
    let ranges = Figure2Ranges {
        s_min: args.s_min,
        s_max: args.s_max,
        m_min: args.m_min,
        m_max: args.m_max,
    };
    let records = match args.which {
        1 => experiments::figure1_data(n, seed)?,
        2 => experiments::figure2_data(n, ranges, seed)?,
        _ => experiments::figure3_data(n, seed)?,
    };

    let mut w = csv_writer(args.common.open(&format!("figure{}.csv", args.which))?);
    if args.which == 1 {
        w.write_record(["p0", "p1", "p2", "entropy", "nonzero_count", "seed"])?;
        for r in &records {
            let p = r.probabilities.values();
            w.write_record([
                num(p[0]),
                num(p[1]),
                num(p[2]),
                num(r.entropy),
                r.nonzero_count.to_string(),
                r.seed.to_string(),
            ])?;
        }
    } else {
        w.write_record(["s", "m", "entropy", "expected_cardinality", "seed"])?;
        for r in &records {
            w.write_record([
                r.s.to_string(),
                r.m.to_string(),
                num(r.entropy),
                num(r.expected_cardinality.expect("figure 2 records carry U")),
                r.seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(Verdict::Pass)
}

fn oracle(cmd: OracleCommand) -> Outcome {
    match cmd {
        OracleCommand::Gradcheck { trials, step, common } => {
            let mut rng = experiments::rng_from_seed(common.seed);
            let mut w = csv_writer(common.open("gradcheck.csv")?);
            w.write_record(["trial", "target", "s", "m", "max_relative_error", "passed"])?;
            let mut all = true;
            for trial in 0..trials {
                let z = generators::random_masses(&mut rng, 2, 12, 0.1, 10.0);
                let m = rng.random_range(1..=20u64);
                let h = oracles::grad_check(masses::entropy_gradient(&z)?, |z| wide::entropy(z.values()), &z, step)?;
                let u = oracles::grad_check(
                    masses::expected_cardinality_gradient(&z, m)?,
                    |z| wide::expected_cardinality(z.values(), m),
                    &z,
                    step,
                )?;
                for (target, res, m) in [("entropy", h, 0), ("expected_cardinality", u, m)] {
                    let ok = res.passes(1e-6);
                    all &= ok;
                    w.write_record([
                        trial.to_string(),
                        target.to_string(),
                        z.len().to_string(),
                        m.to_string(),
                        num(res.max_relative_error),
                        ok.to_string(),
                    ])?;
                }
            }
            w.flush()?;
            Ok(Verdict::from_bool(all))
        }
        OracleCommand::Bruteforce { max_s, max_m, per_pair, common } => {
            let mut rng = experiments::rng_from_seed(common.seed);
            let mut w = csv_writer(common.open("bruteforce.csv")?);
            w.write_record(["s", "m", "trial", "closed_form", "enumerated", "abs_error", "passed"])?;
            let mut all = true;
            for s in 1..=max_s as usize {
                for m in 1..=max_m {
                    for trial in 0..per_pair {
                        let z = generators::random_masses(&mut rng, s, s, 0.05, 10.0);
                        let closed = masses::expected_cardinality(&z, m)?;
                        let brute = oracles::brute_force_expected_cardinality(&z, m)?;
                        let err = (closed - brute).abs();
                        all &= err < 1e-12;
                        w.write_record([
                            s.to_string(),
                            m.to_string(),
                            trial.to_string(),
                            num(closed),
                            num(brute),
                            num(err),
                            (err < 1e-12).to_string(),
                        ])?;
                    }
                }
            }
            w.flush()?;
            Ok(Verdict::from_bool(all))
        }
        OracleCommand::Montecarlo { configs, trials, common } => {
            let mut rng = experiments::rng_from_seed(common.seed);
            let mut w = csv_writer(common.open("montecarlo.csv")?);
            w.write_record(["config", "s", "m", "closed_form", "estimate", "standard_error", "passed"])?;
            let mut all = true;
            for config in 0..configs {
                let z = generators::random_masses(&mut rng, 1, 30, 0.05, 10.0);
                let m = rng.random_range(1..=50u64);
                let run_seed = rng.random::<u64>();
                let closed = masses::expected_cardinality(&z, m)?;
                let est = oracles::monte_carlo_expected_cardinality(&z, m, trials, run_seed)?;
                let ok = est.covers(closed, 4.0);
                all &= ok;
                w.write_record([
                    config.to_string(),
                    z.len().to_string(),
                    m.to_string(),
                    num(closed),
                    num(est.estimate),
                    num(est.standard_error),
                    ok.to_string(),
                ])?;
            }
            w.flush()?;
            Ok(Verdict::from_bool(all))
        }
        OracleCommand::Lemmas { trials, common } => {
            let mut rng = experiments::rng_from_seed(common.seed);
            let mut w = csv_writer(common.open("lemmas.csv")?);
            w.write_record(["inequality", "trials", "failures", "min_value"])?;

            let summary = |name: &str, values: Vec<f64>, ok: fn(f64) -> bool, w: &mut csv::Writer<_>| {
                let failures = values.iter().filter(|&&v| !ok(v)).count();
                let min = values.iter().copied().fold(f64::INFINITY, f64::min);
                w.write_record([name.to_string(), values.len().to_string(), failures.to_string(), num(min)])
                    .map(|_| failures == 0)
            };

            let log_ratio = (0..trials)
                .map(|_| oracles::lemma_log_ratio_sum(&generators::lemma_log_ratio_vector(&mut rng)))
                .collect::<Result<Vec<_>, _>>()?;
            let identical = (0..trials)
                .map(|_| {
                    let len = rng.random_range(2..=12);
                    oracles::lemma_log_ratio_sum(&vec![rng.random_range(0.01..10.0); len])
                })
                .collect::<Result<Vec<_>, _>>()?;
            let dot = (0..trials)
                .map(|_| {
                    let (x, y) = generators::lemma_dot_pair(&mut rng);
                    oracles::lemma_dot_product(&x, &y)
                })
                .collect::<Result<Vec<_>, _>>()?;

            let a = summary("log_ratio_sum_distinct", log_ratio, |v| v > 0.0, &mut w)?;
            let b = summary("log_ratio_sum_identical", identical, |v| v == 0.0, &mut w)?;
            let c = summary("sorted_dot_product", dot, |v| v > 0.0, &mut w)?;
            w.flush()?;
            Ok(Verdict::from_bool(a && b && c))
        }
    }
}

fn parse_points(spec: &str) -> Result<Vec<Vec<f64>>, Failure> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Failure::Usage(format!("bad coordinate {s:?}: {e}")))
    };
    if spec.contains(';') {
        spec.split(';')
            .map(|p| p.split(',').map(parse).collect())
            .collect()
    } else {
        spec.split(',').map(|s| parse(s).map(|v| vec![v])).collect()
    }
}

fn continuous(cmd: ContinuousCommand) -> Outcome {
    match cmd {
        ContinuousCommand::Uniform { a, b, common } => {
            let u = IntervalUniform::new(a, b)?;
            let mut w = csv_writer(common.open("uniform.csv")?);
            w.write_record(["a", "b", "entropy"])?;
            w.write_record([num(a), num(b), num(continuous::uniform_entropy(&u))])?;
            w.flush()?;
        }
        ContinuousCommand::Gaussian { variances, common } => {
            let g = DiagonalGaussian::new(variances)?;
            let mut w = csv_writer(common.open("gaussian.csv")?);
            w.write_record(["dimensions", "entropy"])?;
            w.write_record([g.variances().len().to_string(), num(continuous::gaussian_entropy(&g))])?;
            w.flush()?;
        }
        ContinuousCommand::Cover { a, b, eps, common } => {
            let n = continuous::interval_covering_number(&IntervalUniform::new(a, b)?, eps)?;
            let mut w = csv_writer(common.open("cover.csv")?);
            w.write_record(["a", "b", "eps", "covering_number"])?;
            w.write_record([num(a), num(b), num(eps), n.to_string()])?;
            w.flush()?;
        }
        ContinuousCommand::Contract { points, lr, steps, common } => {
            let mut clouds = vec![SampleCloud::new(parse_points(&points)?)?];
            for _ in 0..steps {
                let next = continuous::contract_step(clouds.last().expect("non-empty"), lr)?;
                clouds.push(next);
            }
            let mut w = csv_writer(common.open("contract.csv")?);
            w.write_record(["t", "dim", "mean", "variance"])?;
            for (t, cloud) in clouds.iter().enumerate() {
                for (d, (mean, var)) in cloud.mean().into_iter().zip(cloud.variance()).enumerate() {
                    w.write_record([t.to_string(), d.to_string(), num(mean), num(var)])?;
                }
            }
            w.flush()?;
        }
        ContinuousCommand::RangeDescent { a, b, eps, lr, max_steps, common } => {
            let u = IntervalUniform::new(a, b)?;
            let steps = continuous::uniform_range_descent(&u, lr, eps, max_steps)?;
            let mut w = csv_writer(common.open("range_descent.csv")?);
            w.write_record(["t", "a", "b", "entropy", "covering_number"])?;
            for (t, s) in steps.iter().enumerate() {
                w.write_record([t.to_string(), num(s.a), num(s.b), num(s.entropy), s.covering_number.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(Verdict::Pass)
}
