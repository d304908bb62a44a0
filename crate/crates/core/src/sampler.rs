//! Samplers for the Potts prior `P(x) ∝ exp{β U(x)}`.
//!
//! [`SwendsenWang`] is the production sampler. [`gibbs_sweep`] resamples
//! one site at a time from its conditional law and is kept as an
//! independent check on the cluster sampler.
//!
//! Near the critical region (second order, L=2: β ≈ 0.38) chains started
//! from i.i.d. labels take longer to equilibrate; the sweep count is the
//! caller's responsibility.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::lattice::{check_num_classes, GridDims, LabelField, Neighborhood};
use crate::union_find::DisjointSets;
use crate::{Error, PottsRng, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub beta: f64,
    /// Number of Swendsen-Wang sweeps applied to the initial field.
    pub sweeps: usize,
    pub seed: u64,
}

impl SamplerConfig {
    pub const DEFAULT_SWEEPS: usize = 1000;

    pub fn new(beta: f64, seed: u64) -> Self {
        Self { beta, sweeps: Self::DEFAULT_SWEEPS, seed }
    }

    pub fn with_sweeps(mut self, sweeps: usize) -> Self {
        self.sweeps = sweeps;
        self
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Parameter(format!("beta must be finite and non-negative, got {beta}")));
    }
    Ok(())
}

/// Swendsen-Wang cluster sampler with reusable union-find buffers.
#[derive(Debug, Clone, Default)]
pub struct SwendsenWang {
    sets: DisjointSets,
    cluster_label: Vec<u16>,
}

const UNASSIGNED: u16 = u16::MAX;

impl SwendsenWang {
    pub fn new() -> Self {
        Self::default()
    }

    /// One cluster update: bonds between equal neighbors open with
    /// probability `1 - exp(-beta)`, then every connected component draws
    /// a fresh uniform label.
    pub fn sweep<R: RngCore>(
        &mut self,
        field: &mut LabelField,
        beta: f64,
        nbhd: Neighborhood,
        rng: &mut R,
    ) -> Result<()> {
        check_beta(beta)?;
        let dims = field.dims();
        let num_classes = field.num_classes();
        self.sets.reset(dims.len());

        let p_open = -libm::expm1(-beta);
        if p_open > 0.0 {
            // u64 threshold: open iff a uniform u64 falls below p * 2^64.
            let threshold = (p_open * 18_446_744_073_709_551_616.0) as u64;
            let labels = field.labels();
            let (rows, cols) = (dims.rows(), dims.cols());
            for row in 0..rows {
                let base = row * cols;
                for &(dr, dc) in nbhd.forward_offsets() {
                    if row + dr as usize >= rows {
                        continue;
                    }
                    let shift = (dr * cols as isize + dc) as usize;
                    let first = usize::from(dc < 0);
                    let last = if dc > 0 { cols - 1 } else { cols };
                    for a in base + first..base + last {
                        let b = a.wrapping_add(shift);
                        if labels[a] == labels[b] && rng.next_u64() < threshold {
                            self.sets.union(a, b);
                        }
                    }
                }
            }
        }

        self.cluster_label.clear();
        self.cluster_label.resize(dims.len(), UNASSIGNED);
        // Unassigned sentinel needs L < 65536.
        debug_assert!(num_classes <= UNASSIGNED as usize);
        let labels = field.labels_mut();
        for (site, label) in labels.iter_mut().enumerate() {
            let root = self.sets.find(site);
            if self.cluster_label[root] == UNASSIGNED {
                self.cluster_label[root] = rng.random_range(0..num_classes) as u16;
            }
            *label = self.cluster_label[root];
        }
        Ok(())
    }
}

pub fn swendsen_wang_sweep<R: RngCore>(
    field: &mut LabelField,
    beta: f64,
    nbhd: Neighborhood,
    rng: &mut R,
) -> Result<()> {
    SwendsenWang::new().sweep(field, beta, nbhd, rng)
}

/// Raster-order single-site heat-bath sweep: each site is redrawn from
/// `P(x_s = l | neighbors) ∝ exp{β U_s(l)}` given the current field.
pub fn gibbs_sweep<R: RngCore>(field: &mut LabelField, beta: f64, nbhd: Neighborhood, rng: &mut R) -> Result<()> {
    if !beta.is_finite() {
        return Err(Error::Parameter(format!("beta must be finite, got {beta}")));
    }
    let num_classes = field.num_classes();
    let mut counts = alloc::vec![0u32; num_classes];
    let mut weights = alloc::vec![0f64; num_classes];
    for site in 0..field.dims().len() {
        field.fill_counts(site, nbhd, &mut counts);
        let top = *counts.iter().max().unwrap() as f64;
        let mut total = 0.0;
        for (w, &c) in weights.iter_mut().zip(&counts) {
            *w = libm::exp(beta * (c as f64 - top));
            total += *w;
        }
        let mut u = rng.random::<f64>() * total;
        let mut pick = num_classes - 1;
        for (l, &w) in weights.iter().enumerate() {
            if u < w {
                pick = l;
                break;
            }
            u -= w;
        }
        field.labels_mut()[site] = pick as u16;
    }
    Ok(())
}

/// Independent uniform labels.
pub fn uniform_field<R: RngCore>(dims: GridDims, num_classes: usize, rng: &mut R) -> Result<LabelField> {
    check_num_classes(num_classes)?;
    let labels = (0..dims.len()).map(|_| rng.random_range(0..num_classes) as u16).collect();
    LabelField::new(dims, num_classes, labels)
}

/// Draws a Potts field: `config.sweeps` Swendsen-Wang sweeps started from
/// i.i.d. uniform labels, all driven by a [`PottsRng`] seeded with
/// `config.seed`.
pub fn simulate_potts(
    dims: GridDims,
    num_classes: usize,
    nbhd: Neighborhood,
    config: &SamplerConfig,
) -> Result<LabelField> {
    check_beta(config.beta)?;
    if config.sweeps == 0 {
        return Err(Error::Parameter("sweeps must be at least 1".into()));
    }
    let mut rng = PottsRng::seed_from_u64(config.seed);
    let mut field = uniform_field(dims, num_classes, &mut rng)?;
    let mut sw = SwendsenWang::new();
    for _ in 0..config.sweeps {
        sw.sweep(&mut field, config.beta, nbhd, &mut rng)?;
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::global_agreement;

    fn dims(r: usize, c: usize) -> GridDims {
        GridDims::new(r, c).unwrap()
    }

    #[test]
    fn rejects_negative_beta() {
        let mut f = LabelField::uniform(dims(3, 3), 2, 0).unwrap();
        let mut rng = PottsRng::seed_from_u64(1);
        assert!(swendsen_wang_sweep(&mut f, -0.1, Neighborhood::Second, &mut rng).is_err());
        assert!(swendsen_wang_sweep(&mut f, f64::NAN, Neighborhood::Second, &mut rng).is_err());
        let cfg = SamplerConfig::new(0.3, 1).with_sweeps(0);
        assert!(simulate_potts(dims(3, 3), 2, Neighborhood::Second, &cfg).is_err());
    }

    #[test]
    fn strong_coupling_keeps_uniform_field_uniform() {
        let mut rng = PottsRng::seed_from_u64(3);
        let mut f = LabelField::uniform(dims(16, 16), 3, 1).unwrap();
        for _ in 0..20 {
            swendsen_wang_sweep(&mut f, 50.0, Neighborhood::Second, &mut rng).unwrap();
            let first = f.labels()[0];
            assert!(f.labels().iter().all(|&l| l == first));
        }
    }

    #[test]
    fn zero_coupling_gives_independent_uniform_labels() {
        let d = dims(128, 128);
        let mut rng = PottsRng::seed_from_u64(11);
        for sweep in [true, false] {
            let mut f = LabelField::uniform(d, 4, 0).unwrap();
            if sweep {
                swendsen_wang_sweep(&mut f, 0.0, Neighborhood::Second, &mut rng).unwrap();
            } else {
                gibbs_sweep(&mut f, 0.0, Neighborhood::Second, &mut rng).unwrap();
            }
            let n = d.len() as f64;
            let se = (n * 0.25 * 0.75).sqrt();
            for l in 0..4u16 {
                let c = f.labels().iter().filter(|&&x| x == l).count() as f64;
                assert!((c - n / 4.0).abs() < 3.0 * se, "label {l}: {c}");
            }
        }
    }

    #[test]
    fn single_site_gibbs_is_uniform() {
        let d = dims(1, 1);
        let mut rng = PottsRng::seed_from_u64(5);
        let mut f = LabelField::uniform(d, 3, 0).unwrap();
        let mut hits = [0usize; 3];
        let n = 30_000;
        for _ in 0..n {
            gibbs_sweep(&mut f, 2.0, Neighborhood::Second, &mut rng).unwrap();
            hits[f.labels()[0] as usize] += 1;
        }
        let se = (n as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for h in hits {
            assert!((h as f64 - n as f64 / 3.0).abs() < 3.5 * se);
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let cfg = SamplerConfig::new(0.3, 42).with_sweeps(50);
        let a = simulate_potts(dims(64, 64), 2, Neighborhood::Second, &cfg).unwrap();
        let b = simulate_potts(dims(64, 64), 2, Neighborhood::Second, &cfg).unwrap();
        assert_eq!(a, b);
        let c = simulate_potts(dims(64, 64), 2, Neighborhood::Second, &SamplerConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn higher_beta_is_smoother() {
        let d = dims(64, 64);
        let agree = |beta: f64| {
            let cfg = SamplerConfig::new(beta, 9).with_sweeps(100);
            global_agreement(&simulate_potts(d, 2, Neighborhood::Second, &cfg).unwrap(), Neighborhood::Second)
        };
        assert!(agree(0.1) < agree(0.3));
        assert!(agree(0.3) < agree(0.6));
    }
}
