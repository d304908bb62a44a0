//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on usage errors, malformed input files or
//! other failures, 2 when an estimation is degenerate or does not converge.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use potts_core::{
    build_separated_model, estimate_beta, icm, ml_classify, root_condition, sample_curve, sample_emission,
    simulate_potts, EmissionModel, EstimationResult, GridDims, IcmOptions, LabelField, Method, Neighborhood, PottsRng,
    RadiometricImage, SamplerConfig, ScoreContext, SolverOptions,
};

use crate::experiments::{self, ExperimentConfig};
use crate::formats::{self, format_emit, format_lmap, format_rimg, write_meta, write_text, Real};

#[derive(Debug, Parser)]
#[command(name = "potts", version, about = "Hidden Potts model simulation, segmentation and smoothness estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NeighborhoodArg {
    First,
    Second,
}

impl From<NeighborhoodArg> for Neighborhood {
    fn from(n: NeighborhoodArg) -> Self {
        match n {
            NeighborhoodArg::First => Neighborhood::First,
            NeighborhoodArg::Second => Neighborhood::Second,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Prior,
    Post,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Prior => Method::Prior,
            MethodArg::Post => Method::Post,
        }
    }
}

#[derive(Debug, Args)]
pub struct NeighborhoodOpt {
    #[arg(long, value_enum, default_value = "second")]
    pub neighborhood: NeighborhoodArg,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub f_tolerance: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub beta_tolerance: f64,
    #[arg(long, default_value_t = 100)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1.0)]
    pub bracket: f64,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            f_tolerance: self.f_tolerance,
            beta_tolerance: self.beta_tolerance,
            max_iterations: self.max_iterations,
            initial_bracket_halfwidth: self.bracket,
        }
    }
}

/// A label map plus, for the posterior score, the image and its model.
#[derive(Debug, Args)]
pub struct ScoreInputs {
    /// Label map (LMAP).
    #[arg(long)]
    pub map: PathBuf,
    /// Observed image (RIMG), required by the posterior score.
    #[arg(long, requires = "model")]
    pub image: Option<PathBuf>,
    /// Emission model (EMIT), required by the posterior score.
    #[arg(long, requires = "image")]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub nbhd: NeighborhoodOpt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a Potts field with Swendsen-Wang sweeps.
    Simulate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Number of classes L.
        #[arg(long)]
        classes: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = SamplerConfig::DEFAULT_SWEEPS)]
        sweeps: usize,
        #[command(flatten)]
        nbhd: NeighborhoodOpt,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit a Gaussian image from a label map.
    Emit {
        #[arg(long)]
        map: PathBuf,
        /// Emission model (EMIT). Without it the model is built from
        /// `--sigma`, `--k` and `--base-mean`.
        #[arg(long, conflicts_with_all = ["k", "write_model"])]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 15.0)]
        sigma: f64,
        /// Separation of consecutive class means, in units of sigma.
        #[arg(long)]
        k: Option<f64>,
        #[arg(long, default_value_t = 70.0)]
        base_mean: f64,
        /// Also save the built model (EMIT).
        #[arg(long)]
        write_model: Option<PathBuf>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-site maximum-likelihood classification.
    Classify {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Iterated Conditional Modes from an initial map.
    Icm {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        init: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = IcmOptions::DEFAULT_MAX_SWEEPS)]
        max_sweeps: usize,
        #[command(flatten)]
        nbhd: NeighborhoodOpt,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pseudolikelihood estimate of beta.
    Estimate {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[command(flatten)]
        inputs: ScoreInputs,
        #[command(flatten)]
        solver: SolverArgs,
        /// CSV output; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score function on an evenly spaced beta grid.
    Curve {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[command(flatten)]
        inputs: ScoreInputs,
        #[arg(long, default_value_t = 0.0)]
        beta_min: f64,
        #[arg(long, default_value_t = 1.0)]
        beta_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Variant label written to the CSV, e.g. `prior_ml`.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report whether a label map admits a unique pseudolikelihood root.
    Check {
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        nbhd: NeighborhoodOpt,
    },
    /// Run a Monte Carlo experiment and write its CSV tables.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Output directory for accuracy.csv, bias.csv and curves.csv.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

/// How a run that raised no error ends.
#[derive(Debug)]
enum Outcome {
    Done,
    EstimationFailed,
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::EstimationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn model_meta(model: &EmissionModel) -> String {
    model.means().iter().map(|&m| Real(m).to_string()).collect::<Vec<_>>().join(" ")
}

fn emit_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => write_text(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

struct LoadedInputs {
    field: LabelField,
    evidence: Option<(RadiometricImage, EmissionModel)>,
    nbhd: Neighborhood,
}

impl LoadedInputs {
    fn load(inputs: &ScoreInputs, method: Method) -> anyhow::Result<Self> {
        let field = formats::read_lmap(&inputs.map)?;
        let evidence = match (&inputs.image, &inputs.model) {
            (Some(image), Some(model)) => Some((formats::read_rimg(image)?, formats::read_emit(model)?)),
            _ => None,
        };
        if method == Method::Post && evidence.is_none() {
            bail!("--method post needs --image and --model");
        }
        if method == Method::Prior && evidence.is_some() {
            bail!("--method prior takes no --image or --model");
        }
        Ok(Self { field, evidence, nbhd: inputs.nbhd.neighborhood.into() })
    }

    fn context(&self) -> anyhow::Result<ScoreContext<'_>> {
        Ok(match &self.evidence {
            None => ScoreContext::prior(&self.field, self.nbhd),
            Some((image, model)) => ScoreContext::posterior(&self.field, self.nbhd, image, model)?,
        })
    }
}

fn estimation_row(method: Method, result: Option<&EstimationResult>) -> String {
    let header = "method,beta_hat,residual,iterations,degenerate\n";
    match result {
        Some(r) => {
            let beta = r.beta_hat.map_or_else(|| "NA".to_owned(), |b| Real(b).to_string());
            let residual = if r.residual.is_nan() { "NA".to_owned() } else { Real(r.residual).to_string() };
            format!("{header}{method},{beta},{residual},{},{}\n", r.iterations, r.degenerate)
        }
        // non-convergence
        None => format!("{header}{method},NA,NA,NA,false\n"),
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Simulate { rows, cols, classes, beta, seed, sweeps, nbhd, out } => {
            let dims = GridDims::new(rows, cols)?;
            let config = SamplerConfig { beta, sweeps, seed };
            let nbhd: Neighborhood = nbhd.neighborhood.into();
            let field = simulate_potts(dims, classes, nbhd, &config)?;
            write_text(&out, &format_lmap(&field))?;
            write_meta(
                &out,
                &[
                    ("command", "simulate".into()),
                    ("seed", seed.to_string()),
                    ("beta", beta.to_string()),
                    ("L", classes.to_string()),
                    ("sweeps", sweeps.to_string()),
                    ("rng", PottsRng::ALGORITHM.into()),
                    ("rows", rows.to_string()),
                    ("cols", cols.to_string()),
                    ("neighborhood", format!("{nbhd:?}").to_lowercase()),
                ],
            )?;
        }
        Command::Emit { map, model, sigma, k, base_mean, write_model, seed, out } => {
            let field = formats::read_lmap(&map)?;
            let model = match (model, k) {
                (Some(path), _) => formats::read_emit(&path)?,
                (None, Some(k)) => build_separated_model(field.num_classes(), base_mean, sigma, k)?,
                (None, None) => bail!("emit needs either --model or --k"),
            };
            if let Some(path) = &write_model {
                write_text(path, &format_emit(&model))?;
            }
            let image = sample_emission(&field, &model, &mut PottsRng::seed_from_u64(seed))?;
            write_text(&out, &format_rimg(&image))?;
            write_meta(
                &out,
                &[
                    ("command", "emit".into()),
                    ("seed", seed.to_string()),
                    ("rng", PottsRng::ALGORITHM.into()),
                    ("map", map.display().to_string()),
                    ("L", model.num_classes().to_string()),
                    ("sigma", model.sigma().to_string()),
                    ("means", model_meta(&model)),
                ],
            )?;
        }
        Command::Classify { image, model, out } => {
            let img = formats::read_rimg(&image)?;
            let m = formats::read_emit(&model)?;
            write_text(&out, &format_lmap(&ml_classify(&img, &m)))?;
            write_meta(
                &out,
                &[
                    ("command", "classify".into()),
                    ("image", image.display().to_string()),
                    ("model", model.display().to_string()),
                ],
            )?;
        }
        Command::Icm { image, model, init, beta, max_sweeps, nbhd, out } => {
            let img = formats::read_rimg(&image)?;
            let m = formats::read_emit(&model)?;
            let start = formats::read_lmap(&init)?;
            let opts = IcmOptions { beta, max_sweeps, nbhd: nbhd.neighborhood.into(), check_objective: false };
            let outcome = icm(&img, &m, &start, &opts)?;
            write_text(&out, &format_lmap(&outcome.field))?;
            let summary = format!("sweeps={}, converged={}", outcome.sweeps, outcome.converged);
            println!("{summary}");
            write_meta(
                &out,
                &[
                    ("command", "icm".into()),
                    ("image", image.display().to_string()),
                    ("model", model.display().to_string()),
                    ("init", init.display().to_string()),
                    ("beta", beta.to_string()),
                    ("max_sweeps", max_sweeps.to_string()),
                    ("sweeps", outcome.sweeps.to_string()),
                    ("converged", outcome.converged.to_string()),
                ],
            )?;
        }
        Command::Estimate { method, inputs, solver, out } => {
            let method: Method = method.into();
            let loaded = LoadedInputs::load(&inputs, method)?;
            let ctx = loaded.context()?;
            let (text, outcome) = match estimate_beta(&ctx, &solver.options()) {
                Ok(r) if r.degenerate => (estimation_row(method, Some(&r)), Outcome::EstimationFailed),
                Ok(r) => (estimation_row(method, Some(&r)), Outcome::Done),
                Err(potts_core::Error::NonConvergence { iterations, lo, hi }) => {
                    eprintln!("no convergence after {iterations} iterations, bracket [{lo}, {hi}]");
                    (estimation_row(method, None), Outcome::EstimationFailed)
                }
                Err(e) => return Err(e.into()),
            };
            emit_output(out.as_deref(), &text)?;
            if let Some(path) = &out {
                write_meta(
                    path,
                    &[
                        ("command", "estimate".into()),
                        ("method", method.to_string()),
                        ("map", inputs.map.display().to_string()),
                        ("f_tolerance", solver.f_tolerance.to_string()),
                        ("beta_tolerance", solver.beta_tolerance.to_string()),
                        ("max_iterations", solver.max_iterations.to_string()),
                        ("bracket", solver.bracket.to_string()),
                    ],
                )?;
            }
            return Ok(outcome);
        }
        Command::Curve { method, inputs, beta_min, beta_max, points, variant, out } => {
            let method: Method = method.into();
            if points < 2 || !beta_min.is_finite() || !beta_max.is_finite() || beta_min >= beta_max {
                bail!("need --points >= 2 and --beta-min < --beta-max");
            }
            let loaded = LoadedInputs::load(&inputs, method)?;
            let ctx = loaded.context()?;
            let step = (beta_max - beta_min) / (points - 1) as f64;
            let grid: Vec<f64> = (0..points).map(|i| beta_min + i as f64 * step).collect();
            let variant = variant.unwrap_or_else(|| method.to_string());
            let mut text = String::from("beta,score,variant\n");
            for (b, f) in sample_curve(&ctx, &grid)? {
                text.push_str(&format!("{},{},{variant}\n", Real(b), Real(f)));
            }
            emit_output(out.as_deref(), &text)?;
            if let Some(path) = &out {
                write_meta(
                    path,
                    &[
                        ("command", "curve".into()),
                        ("method", method.to_string()),
                        ("map", inputs.map.display().to_string()),
                        ("beta_min", beta_min.to_string()),
                        ("beta_max", beta_max.to_string()),
                        ("points", points.to_string()),
                        ("variant", variant),
                    ],
                )?;
            }
        }
        Command::Check { map, nbhd } => {
            let field = formats::read_lmap(&map)?;
            let nbhd: Neighborhood = nbhd.neighborhood.into();
            let ok = root_condition(&field, nbhd);
            let (low, high) = ScoreContext::prior(&field, nbhd).limits();
            println!("root_condition={ok}");
            println!("limit_negative_beta={low}");
            println!("limit_positive_beta={high}");
        }
        Command::Experiment { config, out, threads } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("{}", config.display()))?;
            let cfg = ExperimentConfig::parse(&text).with_context(|| format!("{}", config.display()))?;
            let output = experiments::run_experiment(&cfg, threads)?;
            experiments::write_outputs(&out, &output)?;
            let meta = out.join("experiment");
            write_meta(
                &meta,
                &[
                    ("command", "experiment".into()),
                    ("config", config.display().to_string()),
                    ("master_seed", cfg.master_seed.to_string()),
                    ("rng", PottsRng::ALGORITHM.into()),
                    ("sweeps", cfg.sweeps.to_string()),
                    ("replications", cfg.replications.to_string()),
                    ("threads", threads.to_string()),
                ],
            )?;
        }
    }
    Ok(Outcome::Done)
}
