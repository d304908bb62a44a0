//! Pseudolikelihood estimation of the smoothness parameter β.
//!
//! Both estimators solve `f(β) = 0` with
//!
//! ```text
//! f(β) = Σ_s U_s(x_s) − Σ_s E_β[U_s(X_s) | ·]
//! ```
//!
//! where the conditional law of `X_s` is `∝ exp{β U_s(l)}` for the prior
//! score and `∝ p(I_s | l) exp{β U_s(l)}` for the posterior score. The
//! derivative is `−Σ_s Var_β[U_s(X_s) | ·]`, so `f` is non-increasing and
//! strictly decreasing unless every site is degenerate.
//!
//! Per-site expectations are evaluated with the largest exponent
//! subtracted first, so any finite β is safe.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::emission::{EmissionModel, RadiometricImage};
use crate::lattice::{LabelField, Neighborhood};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Prior,
    Post,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Prior => "prior",
            Method::Post => "post",
        }
    }
}

impl core::fmt::Display for Method {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prior" => Ok(Method::Prior),
            "post" => Ok(Method::Post),
            other => Err(Error::Parameter(format!("unknown method {other:?}, expected prior or post"))),
        }
    }
}

/// A label field, optionally paired with an observed image and its
/// emission model, with the per-site tables the score functions need.
#[derive(Debug, Clone)]
pub struct ScoreContext<'a> {
    field: &'a LabelField,
    nbhd: Neighborhood,
    evidence: Option<(&'a RadiometricImage, &'a EmissionModel)>,
    /// `U_s(l)`, row-major by site then class.
    counts: Vec<u32>,
    /// `ln p(I_s | l)` laid out like `counts`; empty for the prior score.
    log_weights: Vec<f64>,
    interior: Vec<bool>,
    observed: f64,
    observed_interior: f64,
}

impl<'a> ScoreContext<'a> {
    pub fn prior(field: &'a LabelField, nbhd: Neighborhood) -> Self {
        Self::build(field, nbhd, None)
    }

    pub fn posterior(
        field: &'a LabelField,
        nbhd: Neighborhood,
        image: &'a RadiometricImage,
        model: &'a EmissionModel,
    ) -> Result<Self> {
        field.dims().ensure_same(&image.dims())?;
        if field.num_classes() != model.num_classes() {
            return Err(Error::ClassMismatch { field: field.num_classes(), model: model.num_classes() });
        }
        Ok(Self::build(field, nbhd, Some((image, model))))
    }

    fn build(
        field: &'a LabelField,
        nbhd: Neighborhood,
        evidence: Option<(&'a RadiometricImage, &'a EmissionModel)>,
    ) -> Self {
        let dims = field.dims();
        let l = field.num_classes();
        let n = dims.len();
        let mut counts = vec![0u32; n * l];
        let mut interior = Vec::with_capacity(n);
        let (mut observed, mut observed_interior) = (0u64, 0u64);
        for (s, chunk) in counts.chunks_exact_mut(l).enumerate() {
            field.fill_counts(s, nbhd, chunk);
            let own = chunk[field.labels()[s] as usize] as u64;
            let inner = dims.is_interior(dims.site(s));
            observed += own;
            if inner {
                observed_interior += own;
            }
            interior.push(inner);
        }
        let log_weights = match evidence {
            None => Vec::new(),
            Some((image, model)) => {
                let mut lw = vec![0f64; n * l];
                for (chunk, &v) in lw.chunks_exact_mut(l).zip(image.values()) {
                    model.log_likelihoods(v, chunk);
                }
                lw
            }
        };
        Self {
            field,
            nbhd,
            evidence,
            counts,
            log_weights,
            interior,
            observed: observed as f64,
            observed_interior: observed_interior as f64,
        }
    }

    pub fn field(&self) -> &'a LabelField {
        self.field
    }

    pub fn neighborhood(&self) -> Neighborhood {
        self.nbhd
    }

    pub fn evidence(&self) -> Option<(&'a RadiometricImage, &'a EmissionModel)> {
        self.evidence
    }

    pub fn method(&self) -> Method {
        if self.evidence.is_some() {
            Method::Post
        } else {
            Method::Prior
        }
    }

    /// `Σ_s U_s(x_s)`.
    pub fn observed_agreement(&self) -> f64 {
        self.observed
    }

    /// Conditional mean and variance of `U_s(X_s)` at one site.
    #[inline]
    fn site_moments(&self, site: usize, beta: f64) -> (f64, f64) {
        let l = self.field.num_classes();
        let counts = &self.counts[site * l..(site + 1) * l];
        let lw = if self.log_weights.is_empty() { None } else { Some(&self.log_weights[site * l..(site + 1) * l]) };
        let exponent = |i: usize| beta * counts[i] as f64 + lw.map_or(0.0, |w| w[i]);
        let mut top = f64::NEG_INFINITY;
        for i in 0..l {
            top = top.max(exponent(i));
        }
        let (mut total, mut first) = (0.0, 0.0);
        for (i, &c) in counts.iter().enumerate() {
            let w = libm::exp(exponent(i) - top);
            total += w;
            first += w * c as f64;
        }
        let mean = first / total;
        let mut second = 0.0;
        for (i, &c) in counts.iter().enumerate() {
            let d = c as f64 - mean;
            second += libm::exp(exponent(i) - top) * d * d;
        }
        (mean, second / total)
    }

    /// Score and its analytic derivative in one pass over the sites.
    pub fn score_and_derivative(&self, beta: f64) -> (f64, f64) {
        let (mut expected, mut var) = (0.0, 0.0);
        for s in 0..self.interior.len() {
            let (m, v) = self.site_moments(s, beta);
            expected += m;
            var += v;
        }
        (self.observed - expected, -var)
    }

    /// `f_prior(β)` or `f_post(β)` depending on whether evidence is attached.
    pub fn score(&self, beta: f64) -> f64 {
        let mut expected = 0.0;
        for s in 0..self.interior.len() {
            expected += self.site_moments(s, beta).0;
        }
        self.observed - expected
    }

    /// `−Σ_s Var_β[U_s(X_s) | ·]`.
    pub fn derivative(&self, beta: f64) -> f64 {
        self.score_and_derivative(beta).1
    }

    /// The score restricted to sites with a complete neighborhood.
    pub fn score_interior(&self, beta: f64) -> f64 {
        let mut expected = 0.0;
        for (s, _) in self.interior.iter().enumerate().filter(|(_, &inner)| inner) {
            expected += self.site_moments(s, beta).0;
        }
        self.observed_interior - expected
    }

    /// Limits of the score as β → −∞ and β → +∞:
    /// `Σ_s (U_s(x_s) − min_l U_s(l))` and `Σ_s (U_s(x_s) − max_l U_s(l))`.
    pub fn limits(&self) -> (f64, f64) {
        let l = self.field.num_classes();
        let (mut lo, mut hi) = (0u64, 0u64);
        for chunk in self.counts.chunks_exact(l) {
            lo += *chunk.iter().min().unwrap() as u64;
            hi += *chunk.iter().max().unwrap() as u64;
        }
        (self.observed - lo as f64, self.observed - hi as f64)
    }
}

pub fn score_prior(field: &LabelField, nbhd: Neighborhood, beta: f64) -> f64 {
    ScoreContext::prior(field, nbhd).score(beta)
}

pub fn score_post(ctx: &ScoreContext<'_>, beta: f64) -> Result<f64> {
    if ctx.evidence.is_none() {
        return Err(Error::Parameter("posterior score needs an image and an emission model".into()));
    }
    Ok(ctx.score(beta))
}

pub fn score_derivative(ctx: &ScoreContext<'_>, beta: f64) -> f64 {
    ctx.derivative(beta)
}

/// True iff some site has `U_s(x_s) > min_l U_s(l)` and some (possibly
/// other) site has `U_t(x_t) < max_l U_t(l)`. Under this condition both
/// score functions go from a positive to a negative limit and have exactly
/// one root.
pub fn root_condition(field: &LabelField, nbhd: Neighborhood) -> bool {
    let mut counts = vec![0u32; field.num_classes()];
    let (mut above_min, mut below_max) = (false, false);
    for (s, &x) in field.labels().iter().enumerate() {
        field.fill_counts(s, nbhd, &mut counts);
        let own = counts[x as usize];
        above_min |= own > *counts.iter().min().unwrap();
        below_max |= own < *counts.iter().max().unwrap();
        if above_min && below_max {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub f_tolerance: f64,
    pub beta_tolerance: f64,
    pub max_iterations: usize,
    pub initial_bracket_halfwidth: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { f_tolerance: 1e-8, beta_tolerance: 1e-10, max_iterations: 100, initial_bracket_halfwidth: 1.0 }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if !(positive(self.f_tolerance) && positive(self.beta_tolerance) && positive(self.initial_bracket_halfwidth))
            || self.max_iterations == 0
        {
            return Err(Error::Parameter(format!("solver options must be positive: {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationResult {
    pub method: Method,
    /// `None` when the field is degenerate.
    pub beta_hat: Option<f64>,
    /// `|f(β̂)|`, NaN when degenerate.
    pub residual: f64,
    pub iterations: usize,
    /// Final sign-change bracket `(lo, hi)` with `f(lo) ≥ 0 ≥ f(hi)`.
    pub bracket: Option<(f64, f64)>,
    pub degenerate: bool,
}

impl EstimationResult {
    fn degenerate(method: Method) -> Self {
        Self { method, beta_hat: None, residual: f64::NAN, iterations: 0, bracket: None, degenerate: true }
    }
}

/// Solves the pseudolikelihood equation for the context's method.
///
/// The root is bracketed by doubling `[−h, h]` outward until the score
/// changes sign, then refined by Newton steps on the analytic derivative,
/// with a bisection step whenever Newton would leave the bracket. Fields
/// failing [`root_condition`] produce a degenerate result rather than an
/// error; running out of iterations is an error carrying the best bracket.
pub fn estimate_beta(ctx: &ScoreContext<'_>, opts: &SolverOptions) -> Result<EstimationResult> {
    opts.validate()?;
    let method = ctx.method();
    if !root_condition(ctx.field, ctx.nbhd) {
        return Ok(EstimationResult::degenerate(method));
    }

    let exact = |beta: f64, iterations: usize| EstimationResult {
        method,
        beta_hat: Some(beta),
        residual: 0.0,
        iterations,
        bracket: Some((beta, beta)),
        degenerate: false,
    };

    let h = opts.initial_bracket_halfwidth;
    let (mut lo, mut hi) = (-h, h);
    let (mut f_lo, mut f_hi) = (ctx.score(lo), ctx.score(hi));
    let mut iterations = 0;
    let exhausted = |iterations: usize, lo: f64, hi: f64| Error::NonConvergence { iterations, lo, hi };

    while f_lo < 0.0 {
        (hi, f_hi) = (lo, f_lo);
        lo *= 2.0;
        f_lo = ctx.score(lo);
        iterations += 1;
        if iterations >= opts.max_iterations {
            return Err(exhausted(iterations, lo, hi));
        }
    }
    while f_hi > 0.0 {
        (lo, f_lo) = (hi, f_hi);
        hi *= 2.0;
        f_hi = ctx.score(hi);
        iterations += 1;
        if iterations >= opts.max_iterations {
            return Err(exhausted(iterations, lo, hi));
        }
    }
    if f_lo == 0.0 {
        return Ok(exact(lo, iterations));
    }
    if f_hi == 0.0 {
        return Ok(exact(hi, iterations));
    }

    let mut x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }
    loop {
        let (fx, dfx) = ctx.score_and_derivative(x);
        iterations += 1;
        let done = |x: f64, fx: f64, lo: f64, hi: f64, iterations: usize| EstimationResult {
            method,
            beta_hat: Some(x),
            residual: fx.abs(),
            iterations,
            bracket: Some((lo, hi)),
            degenerate: false,
        };
        if fx.abs() <= opts.f_tolerance {
            return Ok(done(x, fx, lo, hi, iterations));
        }
        if fx > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= opts.beta_tolerance {
            return Ok(done(x, fx, lo, hi, iterations));
        }
        if iterations >= opts.max_iterations {
            return Err(exhausted(iterations, lo, hi));
        }
        let newton = x - fx / dfx;
        let next = if dfx < 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        if (next - x).abs() <= opts.beta_tolerance {
            let f_next = ctx.score(next);
            return Ok(done(next, f_next, lo, hi, iterations + 1));
        }
        x = next;
    }
}

/// Evaluates the context's score on a strictly increasing β grid.
pub fn sample_curve(ctx: &ScoreContext<'_>, beta_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if beta_grid.is_empty() {
        return Err(Error::Parameter("beta grid is empty".into()));
    }
    if beta_grid.iter().any(|b| !b.is_finite()) || beta_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("beta grid must be finite and strictly increasing".into()));
    }
    Ok(beta_grid.iter().map(|&b| (b, ctx.score(b))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::emission::{build_separated_model, sample_emission};
    use crate::lattice::{GridDims, Site};
    use crate::PottsRng;
    use rand::Rng;

    fn dims(r: usize, c: usize) -> GridDims {
        GridDims::new(r, c).unwrap()
    }

    fn random_field(rng: &mut PottsRng, r: usize, c: usize, l: usize) -> LabelField {
        LabelField::from_fn(dims(r, c), l, |_| rng.random_range(0..l) as u16).unwrap()
    }

    /// Independent per-site summation straight from the formula, using
    /// explicit neighbor offsets and naive exponentials.
    fn brute_score(field: &LabelField, beta: f64, lw: Option<&dyn Fn(usize, usize) -> f64>) -> f64 {
        let (rows, cols) = (field.dims().rows() as i64, field.dims().cols() as i64);
        let l = field.num_classes();
        let mut total = 0.0;
        for r in 0..rows {
            for c in 0..cols {
                let mut u = vec![0f64; l];
                for dr in -1..=1i64 {
                    for dc in -1..=1i64 {
                        let (rr, cc) = (r + dr, c + dc);
                        if (dr, dc) != (0, 0) && rr >= 0 && cc >= 0 && rr < rows && cc < cols {
                            u[field.label(Site::new(rr as usize, cc as usize)) as usize] += 1.0;
                        }
                    }
                }
                let s = (r * cols + c) as usize;
                let w: Vec<f64> = (0..l).map(|k| (beta * u[k]).exp() * lw.map_or(1.0, |f| f(s, k).exp())).collect();
                let num: f64 = (0..l).map(|k| u[k] * w[k]).sum();
                let den: f64 = w.iter().sum();
                total += u[field.labels()[s] as usize] - num / den;
            }
        }
        total
    }

    #[test]
    fn prior_score_at_zero() {
        let f = LabelField::uniform(dims(3, 3), 2, 0).unwrap();
        assert_eq!(score_prior(&f, Neighborhood::Second, 0.0), 20.0);
        let mut rng = PottsRng::seed_from_u64(4);
        let f = random_field(&mut rng, 7, 5, 3);
        let ctx = ScoreContext::prior(&f, Neighborhood::Second);
        let degrees: f64 = (0..f.dims().len())
            .map(|s| crate::lattice::degree(f.dims(), f.dims().site(s), Neighborhood::Second).unwrap() as f64)
            .sum();
        assert!((ctx.score(0.0) - (ctx.observed_agreement() - degrees / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn prior_score_matches_brute_force() {
        let mut rng = PottsRng::seed_from_u64(8);
        let f = random_field(&mut rng, 6, 6, 3);
        let direct = brute_score(&f, 0.4, None);
        assert!((score_prior(&f, Neighborhood::Second, 0.4) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn posterior_score_matches_brute_force() {
        let mut rng = PottsRng::seed_from_u64(12);
        let f = random_field(&mut rng, 5, 7, 3);
        let model = build_separated_model(3, 70.0, 15.0, 1.0).unwrap();
        let img = sample_emission(&f, &model, &mut rng).unwrap();
        let ctx = ScoreContext::posterior(&f, Neighborhood::Second, &img, &model).unwrap();
        let lw = |s: usize, k: usize| model.class_log_likelihood(img.values()[s], k).unwrap();
        for beta in [-1.0, 0.0, 0.35, 1.2] {
            let direct = brute_score(&f, beta, Some(&lw));
            assert!((score_post(&ctx, beta).unwrap() - direct).abs() <= 1e-11 * direct.abs().max(1.0));
        }
        assert!(score_post(&ScoreContext::prior(&f, Neighborhood::Second), 0.0).is_err());
    }

    #[test]
    fn posterior_at_zero_on_crafted_2x2() {
        // Every site sees all three others: U_s(own)=1 on the diagonal layout.
        let f = LabelField::new(dims(2, 2), 2, vec![0, 1, 1, 0]).unwrap();
        let model = EmissionModel::new(vec![0.0, 1.0], 1.0).unwrap();
        let img = RadiometricImage::new(dims(2, 2), vec![0.2, 0.9, -0.4, 1.5]).unwrap();
        let ctx = ScoreContext::posterior(&f, Neighborhood::Second, &img, &model).unwrap();
        // U_s(l): label of s gets 1 (the diagonal), the other label gets 2.
        let mut expect = 0.0;
        for (s, &v) in img.values().iter().enumerate() {
            let own = f.labels()[s] as usize;
            let p = [(-0.5 * v * v).exp(), (-0.5 * (v - 1.0) * (v - 1.0)).exp()];
            let u = if own == 0 { [1.0, 2.0] } else { [2.0, 1.0] };
            expect += u[own] - (u[0] * p[0] + u[1] * p[1]) / (p[0] + p[1]);
        }
        assert!((ctx.score(0.0) - expect).abs() < 1e-14);
    }

    #[test]
    fn identical_emission_collapses_to_prior() {
        let mut rng = PottsRng::seed_from_u64(21);
        let f = random_field(&mut rng, 9, 8, 3);
        let model = EmissionModel::new(vec![5.0; 3], 2.0).unwrap();
        let img = sample_emission(&f, &model, &mut rng).unwrap();
        let post = ScoreContext::posterior(&f, Neighborhood::Second, &img, &model).unwrap();
        let prior = ScoreContext::prior(&f, Neighborhood::Second);
        for beta in [-3.0, -0.2, 0.0, 0.4, 2.5, 10.0] {
            assert!((post.score(beta) - prior.score(beta)).abs() < 1e-9);
            assert!((post.derivative(beta) - prior.derivative(beta)).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_likelihood_limit() {
        let mut rng = PottsRng::seed_from_u64(5);
        let f = random_field(&mut rng, 8, 8, 2);
        let model = EmissionModel::new(vec![0.0, 4.0], 1e-3).unwrap();
        let img = sample_emission(&f, &model, &mut rng).unwrap();
        let ctx = ScoreContext::posterior(&f, Neighborhood::Second, &img, &model).unwrap();
        for beta in [-2.0, 0.0, 0.5, 3.0] {
            assert!(ctx.score(beta).abs() < 1e-9);
        }
    }

    #[test]
    fn derivative_of_uniform_field() {
        let f = LabelField::uniform(dims(3, 3), 2, 0).unwrap();
        let ctx = ScoreContext::prior(&f, Neighborhood::Second);
        assert!((ctx.derivative(0.0) + 50.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let mut rng = PottsRng::seed_from_u64(31);
        let f = random_field(&mut rng, 6, 7, 3);
        let model = build_separated_model(3, 0.0, 1.0, 1.0).unwrap();
        let img = sample_emission(&f, &model, &mut rng).unwrap();
        let post = ScoreContext::posterior(&f, Neighborhood::Second, &img, &model).unwrap();
        let prior = ScoreContext::prior(&f, Neighborhood::Second);
        let h = 1e-5;
        for ctx in [&prior, &post] {
            for beta in [-1.5, -0.3, 0.0, 0.7, 1.9] {
                let fd = (ctx.score(beta + h) - ctx.score(beta - h)) / (2.0 * h);
                let d = ctx.derivative(beta);
                assert!(d < 0.0);
                assert!(((d - fd) / d).abs() < 1e-6, "{d} vs {fd}");
            }
        }
    }

    #[test]
    fn root_condition_cases() {
        let n = Neighborhood::Second;
        assert!(!root_condition(&LabelField::uniform(dims(9, 9), 2, 0).unwrap(), n));
        let checker = LabelField::from_fn(dims(9, 9), 2, |s| ((s.row + s.col) % 2) as u16).unwrap();
        assert!(!root_condition(&checker, n));
        let stripes = LabelField::from_fn(dims(9, 9), 2, |s| (s.row % 2) as u16).unwrap();
        assert!(!root_condition(&stripes, n));
        let cols = LabelField::from_fn(dims(9, 9), 2, |s| (s.col % 2) as u16).unwrap();
        assert!(!root_condition(&cols, n));
        let mut rng = PottsRng::seed_from_u64(1);
        let f = random_field(&mut rng, 6, 6, 2);
        assert!(root_condition(&f, n));
    }

    #[test]
    fn root_condition_matches_limit_signs() {
        let mut rng = PottsRng::seed_from_u64(77);
        for i in 0..200 {
            let l = 2 + i % 3;
            let (r, c) = (1 + i % 4, 1 + (i / 4) % 4);
            let f = random_field(&mut rng, r, c, l);
            let (lo, hi) = ScoreContext::prior(&f, Neighborhood::Second).limits();
            assert_eq!(root_condition(&f, Neighborhood::Second), lo > 0.0 && hi < 0.0);
        }
    }

    #[test]
    fn degenerate_fields_are_reported() {
        let f = LabelField::uniform(dims(5, 5), 2, 1).unwrap();
        let r = estimate_beta(&ScoreContext::prior(&f, Neighborhood::Second), &SolverOptions::default()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.beta_hat, None);
    }

    #[test]
    fn estimate_matches_grid_scan() {
        let mut rng = PottsRng::seed_from_u64(2024);
        for _ in 0..10 {
            let f = random_field(&mut rng, 6, 6, 2);
            let ctx = ScoreContext::prior(&f, Neighborhood::Second);
            let r = estimate_beta(&ctx, &SolverOptions::default()).unwrap();
            let beta = r.beta_hat.unwrap();
            assert!(r.residual <= 1e-8);
            let (lo, hi) = r.bracket.unwrap();
            assert!(lo <= beta && beta <= hi);
            // grid scan oracle with step 1e-4 on [-3, 3]
            let step = 1e-4;
            let mut b = -3.0;
            let mut prev = brute_score(&f, b, None);
            let mut crossing = None;
            while b < 3.0 {
                let next = brute_score(&f, b + step, None);
                if prev > 0.0 && next <= 0.0 {
                    crossing = Some(b + step);
                    break;
                }
                prev = next;
                b += step;
            }
            assert!((crossing.unwrap() - beta).abs() <= 2e-4, "{crossing:?} vs {beta}");
        }
    }

    #[test]
    fn iteration_cap_is_an_error() {
        let mut rng = PottsRng::seed_from_u64(3);
        let f = random_field(&mut rng, 10, 10, 3);
        let ctx = ScoreContext::prior(&f, Neighborhood::Second);
        let opts = SolverOptions { max_iterations: 1, initial_bracket_halfwidth: 1e-3, ..Default::default() };
        assert!(matches!(estimate_beta(&ctx, &opts), Err(Error::NonConvergence { .. })));
        assert!(estimate_beta(&ctx, &SolverOptions { f_tolerance: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn curves() {
        let mut rng = PottsRng::seed_from_u64(6);
        let f = random_field(&mut rng, 8, 8, 2);
        let ctx = ScoreContext::prior(&f, Neighborhood::Second);
        let c = sample_curve(&ctx, &[-1.0, 0.0, 1.0]).unwrap();
        assert!(c[0].1 > c[1].1 && c[1].1 > c[2].1);
        assert!(sample_curve(&ctx, &[]).is_err());
        assert!(sample_curve(&ctx, &[0.0, 0.0]).is_err());
        let top = ctx.limits().1;
        assert!((ctx.score(6.0) - top).abs() <= 0.01 * top.abs());
    }

    #[test]
    fn extreme_beta_is_finite() {
        let mut rng = PottsRng::seed_from_u64(19);
        let f = random_field(&mut rng, 6, 6, 3);
        let ctx = ScoreContext::prior(&f, Neighborhood::Second);
        let (lo, hi) = ctx.limits();
        assert!((ctx.score(-20.0) - lo).abs() < 1e-6);
        assert!((ctx.score(20.0) - hi).abs() < 1e-6);
        assert!(ctx.score(1e4).is_finite() && ctx.score(-1e4).is_finite());
        assert!(ctx.derivative(1e4).is_finite());
    }
}
