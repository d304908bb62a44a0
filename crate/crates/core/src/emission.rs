//! Gaussian class-conditional emission `p(· | l) = N(μ_l, σ²)` with a
//! common standard deviation, and per-site maximum-likelihood
//! classification.

use alloc::format;
use alloc::vec::Vec;

use rand::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::lattice::{check_num_classes, GridDims, LabelField};
use crate::{Error, Result};

/// `ln(√(2π))`
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

#[derive(Debug, Clone, PartialEq)]
pub struct EmissionModel {
    means: Vec<f64>,
    sigma: f64,
    log_norm: f64,
}

impl EmissionModel {
    pub fn new(means: Vec<f64>, sigma: f64) -> Result<Self> {
        check_num_classes(means.len())?;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Parameter(format!("sigma must be positive and finite, got {sigma}")));
        }
        if let Some(m) = means.iter().find(|m| !m.is_finite()) {
            return Err(Error::Parameter(format!("class means must be finite, got {m}")));
        }
        Ok(Self { means, sigma, log_norm: libm::log(sigma) + LN_SQRT_2PI })
    }

    pub fn num_classes(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `ln p(value | class)`, unchecked class index.
    #[inline]
    pub(crate) fn log_density(&self, value: f64, class: usize) -> f64 {
        let z = (value - self.means[class]) / self.sigma;
        -self.log_norm - 0.5 * z * z
    }

    /// Fills `out[l] = ln p(value | l)` for every class.
    #[inline]
    pub fn log_likelihoods(&self, value: f64, out: &mut [f64]) {
        for (l, o) in out.iter_mut().enumerate() {
            *o = self.log_density(value, l);
        }
    }

    pub fn class_log_likelihood(&self, value: f64, class: usize) -> Result<f64> {
        if class >= self.num_classes() {
            return Err(Error::ClassOutOfRange { class, num_classes: self.num_classes() });
        }
        Ok(self.log_density(value, class))
    }

    fn check_field(&self, field: &LabelField) -> Result<()> {
        if field.num_classes() != self.num_classes() {
            return Err(Error::ClassMismatch { field: field.num_classes(), model: self.num_classes() });
        }
        Ok(())
    }
}

/// Means `base_mean + l·k·σ` for `l = 0..L`: consecutive classes sit `k`
/// standard deviations apart.
pub fn build_separated_model(num_classes: usize, base_mean: f64, sigma: f64, k: f64) -> Result<EmissionModel> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Parameter(format!("separation k must be positive and finite, got {k}")));
    }
    check_num_classes(num_classes)?;
    let means = (0..num_classes).map(|l| base_mean + l as f64 * k * sigma).collect();
    EmissionModel::new(means, sigma)
}

pub fn class_log_likelihood(value: f64, model: &EmissionModel, class: usize) -> Result<f64> {
    model.class_log_likelihood(value, class)
}

/// Observed image: one real value per site.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiometricImage {
    dims: GridDims,
    values: Vec<f64>,
}

impl RadiometricImage {
    pub fn new(dims: GridDims, values: Vec<f64>) -> Result<Self> {
        if values.len() != dims.len() {
            return Err(Error::LengthMismatch { expected: dims.len(), actual: values.len() });
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Parameter(format!("image value {v} at position {i} is not finite")));
        }
        Ok(Self { dims, values })
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Draws `I_s ~ N(μ_{x_s}, σ²)` independently for every site.
pub fn sample_emission<R: RngCore>(field: &LabelField, model: &EmissionModel, rng: &mut R) -> Result<RadiometricImage> {
    model.check_field(field)?;
    let values = field
        .labels()
        .iter()
        .map(|&l| {
            let z: f64 = StandardNormal.sample(rng);
            model.means[l as usize] + model.sigma * z
        })
        .collect();
    RadiometricImage::new(field.dims(), values)
}

/// Per-site argmax of `ln p(I_s | l)`; ties go to the lowest class index.
pub fn ml_classify(image: &RadiometricImage, model: &EmissionModel) -> LabelField {
    let labels = image
        .values
        .iter()
        .map(|&v| {
            let mut best = 0;
            let mut best_ll = model.log_density(v, 0);
            for l in 1..model.num_classes() {
                let ll = model.log_density(v, l);
                if ll > best_ll {
                    best = l;
                    best_ll = ll;
                }
            }
            best as u16
        })
        .collect();
    LabelField::new(image.dims, model.num_classes(), labels).expect("labels are in range by construction")
}
