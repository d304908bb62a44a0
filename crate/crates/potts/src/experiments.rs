//! Monte Carlo harness for estimator accuracy and contamination bias.
//!
//! Every replication runs the full pipeline: simulate a Potts field at the
//! true β, then for each separation `k` emit a Gaussian image, classify it
//! by maximum likelihood, refine the ML map with ICM at the true β, and
//! estimate β with both score functions on each of the three maps (the
//! true field, the ML map, the ICM map).
//!
//! Seeds: cell `c` (the position of `(L, β)` in the grid, L-major) and
//! replication `r` get `rep_seed = derive_seed(derive_seed(master, c), r)`.
//! The field is drawn with `derive_seed(rep_seed, 0)` and the emission noise
//! with `derive_seed(rep_seed, 1)`. The noise stream does not depend on `k`,
//! so the images for different separations share their standard normal
//! draws and differ only through the class means.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use potts_core::{
    build_separated_model, derive_seed, estimate_beta, icm, ml_classify, sample_curve, sample_emission, simulate_potts,
    EmissionModel, GridDims, IcmOptions, LabelField, Method, Neighborhood, PottsRng, RadiometricImage, SamplerConfig,
    ScoreContext, SolverOptions,
};
use rayon::prelude::*;

use crate::formats::{self, FileError, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    Pure,
    Ml,
    Icm,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::Pure, Scenario::Ml, Scenario::Icm];

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Pure => "pure",
            Scenario::Ml => "ml",
            Scenario::Icm => "icm",
        }
    }

    /// Curve variant name, e.g. `prior_ml`.
    pub fn variant(self, method: Method) -> String {
        match self {
            Scenario::Pure => method.as_str().to_owned(),
            other => format!("{}_{}", method.as_str(), other.as_str()),
        }
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pure" => Ok(Scenario::Pure),
            "ml" => Ok(Scenario::Ml),
            "icm" => Ok(Scenario::Icm),
            other => Err(format!("unknown scenario {other:?}, expected pure, ml or icm")),
        }
    }
}

pub const METHODS: [Method; 2] = [Method::Prior, Method::Post];

/// The `(L, β, k)` cell whose score curves are exported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveCell {
    pub num_classes: usize,
    pub beta: f64,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dims: GridDims,
    pub l_values: Vec<usize>,
    pub beta_values: Vec<f64>,
    pub k_values: Vec<f64>,
    pub sigma: f64,
    pub base_mean: f64,
    pub replications: usize,
    pub master_seed: u64,
    pub scenarios: Vec<Scenario>,
    /// Empty disables curve export.
    pub curve_betas: Vec<f64>,
    pub curve_cell: Option<CurveCell>,
    pub sweeps: usize,
    pub icm_max_sweeps: usize,
    pub nbhd: Neighborhood,
    pub solver: SolverOptions,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("{scenario} scenario, {method} estimator, L={num_classes}, beta={beta}, k={k}, replication {replication}: {source}")]
    Estimation {
        scenario: Scenario,
        method: Method,
        num_classes: usize,
        beta: f64,
        k: f64,
        replication: usize,
        source: potts_core::Error,
    },
    #[error(transparent)]
    Core(#[from] potts_core::Error),
    #[error(transparent)]
    File(#[from] FileError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl Default for ExperimentConfig {
    /// Desk scale: 128×128, 30 replications, all scenarios.
    fn default() -> Self {
        Self {
            dims: GridDims::new(128, 128).expect("positive"),
            l_values: vec![2, 3, 4],
            beta_values: vec![0.1, 0.2, 0.3, 0.4, 0.45, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
            k_values: vec![1.0, 2.0, 3.0, 4.0],
            sigma: 15.0,
            base_mean: 70.0,
            replications: 30,
            master_seed: 0,
            scenarios: Scenario::ALL.to_vec(),
            curve_betas: Vec::new(),
            curve_cell: None,
            sweeps: SamplerConfig::DEFAULT_SWEEPS,
            icm_max_sweeps: IcmOptions::DEFAULT_MAX_SWEEPS,
            nbhd: Neighborhood::Second,
            solver: SolverOptions::default(),
        }
    }
}

fn parse_list<T: FromStr>(value: &str) -> Result<Vec<T>, String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("cannot parse {s:?}")))
        .collect()
}

fn parse_one<T: FromStr>(value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("cannot parse {value:?}"))
}

impl ExperimentConfig {
    /// Reads `key = value` lines over the desk-scale defaults. Lists are
    /// comma-separated, `#` starts a comment.
    ///
    /// Keys: `dims` (`ROWSxCOLS`), `L_values`, `beta_values`, `k_values`,
    /// `sigma`, `base_mean`, `replications`, `master_seed`, `scenarios`,
    /// `curve_betas`, `curve_cell` (`L, beta, k`), `sweeps`,
    /// `icm_max_sweeps`, `neighborhood` (`first` or `second`).
    pub fn parse(text: &str) -> Result<Self, ExperimentError> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ExperimentError::Config { line: i + 1, message };
            let (key, value) =
                line.split_once('=').ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let result: Result<(), String> = (|| {
                match key {
                    "dims" => {
                        let (r, c) = value.split_once(['x', 'X']).ok_or("expected ROWSxCOLS")?;
                        let (r, c) = (parse_one(r.trim())?, parse_one(c.trim())?);
                        cfg.dims = GridDims::new(r, c).map_err(|e| e.to_string())?;
                    }
                    "L_values" => cfg.l_values = parse_list(value)?,
                    "beta_values" => cfg.beta_values = parse_list(value)?,
                    "k_values" => cfg.k_values = parse_list(value)?,
                    "sigma" => cfg.sigma = parse_one(value)?,
                    "base_mean" => cfg.base_mean = parse_one(value)?,
                    "replications" => cfg.replications = parse_one(value)?,
                    "master_seed" => cfg.master_seed = parse_one(value)?,
                    "scenarios" => cfg.scenarios = parse_list(value)?,
                    "curve_betas" => cfg.curve_betas = parse_list(value)?,
                    "curve_cell" => {
                        let parts: Vec<f64> = parse_list(value)?;
                        let [l, beta, k] = parts[..] else { return Err("expected L, beta, k".into()) };
                        if l.fract() != 0.0 || l < 2.0 {
                            return Err(format!("class count {l} is not an integer >= 2"));
                        }
                        cfg.curve_cell = Some(CurveCell { num_classes: l as usize, beta, k });
                    }
                    "sweeps" => cfg.sweeps = parse_one(value)?,
                    "icm_max_sweeps" => cfg.icm_max_sweeps = parse_one(value)?,
                    "neighborhood" => {
                        cfg.nbhd = match value {
                            "first" => Neighborhood::First,
                            "second" => Neighborhood::Second,
                            other => return Err(format!("unknown neighborhood {other:?}")),
                        }
                    }
                    other => return Err(format!("unknown key {other:?}")),
                }
                Ok(())
            })();
            result.map_err(err)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let fail = |m: &str| Err(ExperimentError::Invalid(m.to_owned()));
        if self.l_values.is_empty() || self.beta_values.is_empty() || self.k_values.is_empty() {
            return fail("L_values, beta_values and k_values must be non-empty");
        }
        if self.l_values.iter().any(|&l| !(2..=65536).contains(&l)) {
            return fail("every L must be in 2..=65536");
        }
        if self.beta_values.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
            return fail("beta values must be finite and non-negative");
        }
        if self.k_values.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
            return fail("k values must be positive");
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) || !self.base_mean.is_finite() {
            return fail("sigma must be positive and base_mean finite");
        }
        if self.replications == 0 || self.sweeps == 0 || self.icm_max_sweeps == 0 {
            return fail("replications, sweeps and icm_max_sweeps must be at least 1");
        }
        if self.scenarios.is_empty() {
            return fail("at least one scenario is required");
        }
        if !self.curve_betas.is_empty() {
            if self.curve_betas.iter().any(|b| !b.is_finite()) || self.curve_betas.windows(2).any(|w| w[0] >= w[1]) {
                return fail("curve_betas must be finite and strictly increasing");
            }
            let Some(cell) = self.curve_cell else { return fail("curve_betas needs curve_cell") };
            if !self.l_values.contains(&cell.num_classes)
                || !self.beta_values.contains(&cell.beta)
                || !self.k_values.contains(&cell.k)
            {
                return fail("curve_cell must be one of the grid cells");
            }
        }
        Ok(())
    }

    /// `(L, β)` cells in output order.
    fn cells(&self) -> Vec<(usize, f64)> {
        self.l_values.iter().flat_map(|&l| self.beta_values.iter().map(move |&b| (l, b))).collect()
    }

    fn has(&self, scenario: Scenario) -> bool {
        self.scenarios.contains(&scenario)
    }

    /// Scenarios in canonical order, without duplicates.
    fn scenario_order(&self) -> Vec<Scenario> {
        Scenario::ALL.into_iter().filter(|s| self.has(*s)).collect()
    }

    fn model(&self, num_classes: usize, k: f64) -> Result<EmissionModel, ExperimentError> {
        Ok(build_separated_model(num_classes, self.base_mean, self.sigma, k)?)
    }
}

/// One β̂ with the score slope at the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub k_index: usize,
    pub scenario: Scenario,
    pub method: Method,
    /// `None` when the map is degenerate.
    pub beta_hat: Option<f64>,
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub variant: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRecord {
    pub num_classes: usize,
    pub beta: f64,
    pub replication: usize,
    pub estimates: Vec<Estimate>,
    pub curves: Vec<Curve>,
}

impl ReplicationRecord {
    pub fn estimate(&self, k_index: usize, scenario: Scenario, method: Method) -> Option<&Estimate> {
        self.estimates.iter().find(|e| e.k_index == k_index && e.scenario == scenario && e.method == method)
    }
}

/// Seed for replication `replication` of grid cell `cell`.
pub fn replication_seed(master: u64, cell: usize, replication: usize) -> u64 {
    derive_seed(derive_seed(master, cell as u64), replication as u64)
}

struct Maps {
    ml: LabelField,
    icm: LabelField,
}

fn contaminated_maps(
    cfg: &ExperimentConfig,
    beta: f64,
    image: &RadiometricImage,
    model: &EmissionModel,
) -> Result<Maps, ExperimentError> {
    let ml = ml_classify(image, model);
    let opts = IcmOptions { beta, max_sweeps: cfg.icm_max_sweeps, nbhd: cfg.nbhd, check_objective: false };
    let icm = icm(image, model, &ml, &opts)?.field;
    Ok(Maps { ml, icm })
}

/// One pipeline pass for cell `cell` = `(num_classes, beta)`. Curves are
/// sampled when `curves` names the index of the separation to use.
pub fn run_replication(
    cfg: &ExperimentConfig,
    cell: usize,
    num_classes: usize,
    beta: f64,
    replication: usize,
    curves: Option<usize>,
) -> Result<ReplicationRecord, ExperimentError> {
    let seed = replication_seed(cfg.master_seed, cell, replication);
    let sampler = SamplerConfig { beta, sweeps: cfg.sweeps, seed: derive_seed(seed, 0) };
    let field = simulate_potts(cfg.dims, num_classes, cfg.nbhd, &sampler)?;
    let mut record = ReplicationRecord { num_classes, beta, replication, estimates: Vec::new(), curves: Vec::new() };

    let estimate = |ctx: &ScoreContext<'_>, scenario: Scenario, k_index: usize| {
        let method = ctx.method();
        let result = estimate_beta(ctx, &cfg.solver).map_err(|source| ExperimentError::Estimation {
            scenario,
            method,
            num_classes,
            beta,
            k: cfg.k_values[k_index],
            replication,
            source,
        })?;
        let slope = result.beta_hat.map(|b| ctx.derivative(b));
        Ok::<_, ExperimentError>(Estimate { k_index, scenario, method, beta_hat: result.beta_hat, slope })
    };

    let pure_prior = ScoreContext::prior(&field, cfg.nbhd);
    let mut pure_prior_estimate = None;
    let needs_maps = cfg.has(Scenario::Ml) || cfg.has(Scenario::Icm) || curves.is_some();
    for (k_index, &k) in cfg.k_values.iter().enumerate() {
        let model = cfg.model(num_classes, k)?;
        let mut rng = PottsRng::seed_from_u64(derive_seed(seed, 1));
        let image = sample_emission(&field, &model, &mut rng)?;
        let maps = if needs_maps { Some(contaminated_maps(cfg, beta, &image, &model)?) } else { None };

        for scenario in cfg.scenario_order() {
            let map = match scenario {
                Scenario::Pure => &field,
                Scenario::Ml => &maps.as_ref().expect("maps computed").ml,
                Scenario::Icm => &maps.as_ref().expect("maps computed").icm,
            };
            let prior = if scenario == Scenario::Pure {
                // k does not enter the prior score on the true field
                match pure_prior_estimate {
                    Some(e) => Estimate { k_index, ..e },
                    None => {
                        let e = estimate(&pure_prior, scenario, k_index)?;
                        pure_prior_estimate = Some(e);
                        e
                    }
                }
            } else {
                estimate(&ScoreContext::prior(map, cfg.nbhd), scenario, k_index)?
            };
            record.estimates.push(prior);
            let post = ScoreContext::posterior(map, cfg.nbhd, &image, &model)?;
            record.estimates.push(estimate(&post, scenario, k_index)?);
        }

        if curves == Some(k_index) {
            let maps = maps.as_ref().expect("maps computed");
            for scenario in Scenario::ALL {
                let map = match scenario {
                    Scenario::Pure => &field,
                    Scenario::Ml => &maps.ml,
                    Scenario::Icm => &maps.icm,
                };
                for method in METHODS {
                    let ctx = match method {
                        Method::Prior => ScoreContext::prior(map, cfg.nbhd),
                        Method::Post => ScoreContext::posterior(map, cfg.nbhd, &image, &model)?,
                    };
                    let points = sample_curve(&ctx, &cfg.curve_betas)?;
                    record.curves.push(Curve { variant: scenario.variant(method), points });
                }
            }
        }
    }
    Ok(record)
}

/// Summary statistics of one `(L, β, k, method, scenario)` cell. Statistics
/// are `None` when too few replications were non-degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRow {
    pub num_classes: usize,
    pub beta: f64,
    pub k: f64,
    pub method: Method,
    pub scenario: Scenario,
    pub rmse: Option<f64>,
    pub mean: Option<f64>,
    /// Sample standard deviation (denominator `r − 1`).
    pub std: Option<f64>,
    pub bias: Option<f64>,
    pub degenerate_count: usize,
}

/// Statistics of the estimates `values` of the true `beta`, summed in
/// the given order.
pub fn summarize(beta: f64, values: &[f64]) -> (Option<f64>, Option<f64>, Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None, None, None);
    }
    let r = values.len() as f64;
    let mean = values.iter().sum::<f64>() / r;
    let mse = values.iter().map(|v| (v - beta) * (v - beta)).sum::<f64>() / r;
    let std =
        (values.len() >= 2).then(|| (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (r - 1.0)).sqrt());
    (Some(mse.sqrt()), Some(mean), std, Some(mean - beta))
}

/// Folds replication records (in replication order) into accuracy rows,
/// ordered by L, β, k, scenario, method.
pub fn aggregate(cfg: &ExperimentConfig, records: &[ReplicationRecord]) -> Vec<AccuracyRow> {
    let mut rows = Vec::new();
    for (num_classes, beta) in cfg.cells() {
        let mut cell: Vec<&ReplicationRecord> =
            records.iter().filter(|r| r.num_classes == num_classes && r.beta == beta).collect();
        cell.sort_by_key(|r| r.replication);
        for (k_index, &k) in cfg.k_values.iter().enumerate() {
            for scenario in cfg.scenario_order() {
                for method in METHODS {
                    let estimates: Vec<Option<f64>> =
                        cell.iter().filter_map(|r| r.estimate(k_index, scenario, method)).map(|e| e.beta_hat).collect();
                    let values: Vec<f64> = estimates.iter().flatten().copied().collect();
                    let (rmse, mean, std, bias) = summarize(beta, &values);
                    rows.push(AccuracyRow {
                        num_classes,
                        beta,
                        k,
                        method,
                        scenario,
                        rmse,
                        mean,
                        std,
                        bias,
                        degenerate_count: estimates.len() - values.len(),
                    });
                }
            }
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub records: Vec<ReplicationRecord>,
    pub table: Vec<AccuracyRow>,
}

/// Runs every replication of every cell on up to `threads` workers
/// (`0`: one per core). The result does not depend on `threads`.
pub fn run_experiment(cfg: &ExperimentConfig, threads: usize) -> Result<ExperimentOutput, ExperimentError> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize, f64, usize, Option<usize>)> = cfg
        .cells()
        .into_iter()
        .enumerate()
        .flat_map(|(cell, (l, beta))| {
            let curves = cfg
                .curve_cell
                .filter(|c| !cfg.curve_betas.is_empty() && c.num_classes == l && c.beta == beta)
                .and_then(|c| cfg.k_values.iter().position(|&k| k == c.k));
            (0..cfg.replications).map(move |rep| (cell, l, beta, rep, curves))
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let records = pool.install(|| {
        jobs.par_iter()
            .map(|&(cell, l, beta, rep, curves)| run_replication(cfg, cell, l, beta, rep, curves))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let table = aggregate(cfg, &records);
    Ok(ExperimentOutput { records, table })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_owned(), |x| Real(x).to_string())
}

pub fn format_accuracy_csv(table: &[AccuracyRow]) -> String {
    let mut out = String::from("L,beta,k,method,scenario,rmse,mean,std,bias,degenerate_count\n");
    for r in table {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.num_classes,
            Real(r.beta),
            Real(r.k),
            r.method,
            r.scenario,
            opt(r.rmse),
            opt(r.mean),
            opt(r.std),
            opt(r.bias),
            r.degenerate_count
        )
        .unwrap();
    }
    out
}

pub fn format_bias_csv(table: &[AccuracyRow]) -> String {
    let mut out = String::from("L,k,beta,method,scenario,bias\n");
    for r in table {
        writeln!(out, "{},{},{},{},{},{}", r.num_classes, Real(r.k), Real(r.beta), r.method, r.scenario, opt(r.bias))
            .unwrap();
    }
    out
}

/// Long-format curve bundle of the configured curve cell.
pub fn format_curves_csv(records: &[ReplicationRecord]) -> String {
    let mut out = String::from("replication,variant,beta,score\n");
    let mut with_curves: Vec<&ReplicationRecord> = records.iter().filter(|r| !r.curves.is_empty()).collect();
    with_curves.sort_by_key(|r| r.replication);
    for r in with_curves {
        for curve in &r.curves {
            for (beta, score) in &curve.points {
                writeln!(out, "{},{},{},{}", r.replication, curve.variant, Real(*beta), Real(*score)).unwrap();
            }
        }
    }
    out
}

pub const OUTPUT_FILES: [&str; 3] = ["accuracy.csv", "bias.csv", "curves.csv"];

/// Writes `accuracy.csv`, `bias.csv` and `curves.csv` into `dir`.
pub fn write_outputs(dir: &Path, output: &ExperimentOutput) -> Result<(), FileError> {
    std::fs::create_dir_all(dir).map_err(|source| FileError::Io { path: dir.to_owned(), source })?;
    formats::write_text(&dir.join(OUTPUT_FILES[0]), &format_accuracy_csv(&output.table))?;
    formats::write_text(&dir.join(OUTPUT_FILES[1]), &format_bias_csv(&output.table))?;
    formats::write_text(&dir.join(OUTPUT_FILES[2]), &format_curves_csv(&output.records))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_hand_arithmetic() {
        let (rmse, mean, std, bias) = summarize(0.3, &[0.3, 0.3, 0.3]);
        assert_eq!((rmse, mean, std, bias), (Some(0.0), Some(0.3), Some(0.0), Some(0.0)));
        let (rmse, _, std, bias) = summarize(0.3, &[0.31, 0.29]);
        assert!((rmse.unwrap() - 0.01).abs() < 1e-12);
        assert!(bias.unwrap().abs() < 1e-12);
        assert!((std.unwrap() - 2f64.sqrt() * 0.01).abs() < 1e-12);
        assert_eq!(summarize(0.3, &[]), (None, None, None, None));
        assert_eq!(summarize(0.3, &[0.2]).2, None);
    }

    #[test]
    fn config_parsing() {
        let text = "# small\n dims = 16x24\nL_values = 2, 3\nbeta_values = 0.3\nk_values = 1,2\n\
                    replications = 3 # trailing\nscenarios = pure, icm\nmaster_seed = 7\n\
                    curve_betas = 0, 0.5\ncurve_cell = 3, 0.3, 2\nneighborhood = first\n";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!((cfg.dims.rows(), cfg.dims.cols()), (16, 24));
        assert_eq!(cfg.l_values, vec![2, 3]);
        assert_eq!(cfg.scenarios, vec![Scenario::Pure, Scenario::Icm]);
        assert_eq!(cfg.curve_cell, Some(CurveCell { num_classes: 3, beta: 0.3, k: 2.0 }));
        assert_eq!(cfg.nbhd, Neighborhood::First);
        assert_eq!(cfg.sigma, 15.0);

        let line = |t: &str| match ExperimentConfig::parse(t) {
            Err(ExperimentError::Config { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("sigma = 2\nbogus = 1\n"), 2);
        assert_eq!(line("\n\nreplications = many"), 3);
        assert_eq!(line("sigma 2"), 1);
        assert!(matches!(ExperimentConfig::parse("replications = 0"), Err(ExperimentError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("curve_betas = 0, 1"), Err(ExperimentError::Invalid(_))));
        assert!(matches!(ExperimentConfig::parse("beta_values = -0.1"), Err(ExperimentError::Invalid(_))));
    }
}
