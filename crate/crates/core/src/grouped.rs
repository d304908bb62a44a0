//! Grouped evaluation of the prior score over interior sites.
//!
//! Under the second-order neighborhood an interior site's contribution to
//! the prior score depends only on the partition of its 8 neighbors into
//! label groups. There are 22 such partitions, so the interior score is a
//! 23-term expression: `Σ U_s(x_s)` minus one closed-form ratio per
//! partition weighted by `K_i`, the number of interior sites showing that
//! partition.
//!
//! The ratios are transcribed term by term in [`PATCH_TERMS`]; each is
//! matched to its partition through the exponents of its denominator.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{histogram_signature, LabelField, NeighborCounts, Neighborhood, Signature};
use crate::{Error, Result};

/// `Σ_j coef_j · e^{exp_j β}`, as `(coef, exp)` pairs.
type ExpSum = &'static [(u32, u32)];

/// One closed-form ratio `num(β) / (den(β) + L − offset)`.
#[derive(Debug, Clone, Copy)]
pub struct PatchTerm {
    pub numerator: ExpSum,
    pub denominator: ExpSum,
    pub offset: u32,
}

macro_rules! term {
    ([$(($nc:expr, $ne:expr)),*] / [$(($dc:expr, $de:expr)),*] - $off:expr) => {
        PatchTerm { numerator: &[$(($nc, $ne)),*], denominator: &[$(($dc, $de)),*], offset: $off }
    };
}

/// Terms for `K_1 … K_22` in order.
pub const PATCH_TERMS: [PatchTerm; 22] = [
    term!([(8, 8)] / [(1, 8)] - 1),
    term!([(7, 7), (1, 1)] / [(1, 7), (1, 1)] - 2),
    term!([(6, 6), (2, 2)] / [(1, 6), (1, 2)] - 2),
    term!([(6, 6), (2, 1)] / [(1, 6), (2, 1)] - 3),
    term!([(5, 5), (3, 3)] / [(1, 5), (1, 3)] - 2),
    term!([(5, 5), (2, 2), (1, 1)] / [(1, 5), (1, 2), (1, 1)] - 3),
    term!([(5, 5), (3, 1)] / [(1, 5), (3, 1)] - 4),
    term!([(8, 4)] / [(2, 4)] - 2),
    term!([(4, 4), (3, 3), (1, 1)] / [(1, 4), (1, 3), (1, 1)] - 3),
    term!([(4, 4), (4, 2)] / [(1, 4), (2, 2)] - 3),
    term!([(4, 4), (2, 2), (2, 1)] / [(1, 4), (1, 2), (2, 1)] - 4),
    term!([(4, 4), (4, 1)] / [(1, 4), (4, 1)] - 5),
    term!([(6, 3), (2, 2)] / [(2, 3), (1, 2)] - 3),
    term!([(6, 3), (2, 1)] / [(2, 3), (2, 1)] - 4),
    term!([(3, 3), (4, 2), (1, 1)] / [(1, 3), (2, 2), (1, 1)] - 4),
    term!([(3, 3), (2, 2), (3, 1)] / [(1, 3), (1, 2), (3, 1)] - 5),
    term!([(3, 3), (5, 1)] / [(1, 3), (5, 1)] - 6),
    term!([(8, 2)] / [(4, 2)] - 4),
    term!([(6, 2), (2, 1)] / [(3, 2), (2, 1)] - 5),
    term!([(4, 2), (4, 1)] / [(2, 2), (4, 1)] - 6),
    term!([(2, 2), (6, 1)] / [(1, 2), (6, 1)] - 7),
    term!([(8, 1)] / [(8, 1)] - 8),
];

impl PatchTerm {
    /// The partition read off the denominator: `coef` parts of size `exp`.
    pub fn signature(&self) -> Signature {
        let mut parts = Vec::new();
        for &(coef, exp) in self.denominator {
            parts.extend(core::iter::repeat_n(exp, coef as usize));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Signature(parts)
    }

    /// Value of the ratio for `num_classes` labels, scaled so that no
    /// exponential exceeds 1.
    pub fn eval(&self, num_classes: usize, beta: f64) -> f64 {
        let top = self.denominator.iter().map(|&(_, e)| e as f64 * beta).fold(0.0f64, f64::max);
        let sum = |terms: ExpSum| terms.iter().map(|&(c, e)| c as f64 * libm::exp(e as f64 * beta - top)).sum::<f64>();
        let free = num_classes as f64 - self.offset as f64;
        sum(self.numerator) / (sum(self.denominator) + free * libm::exp(-top))
    }
}

/// Index into [`PATCH_TERMS`] of a degree-8 signature.
pub fn patch_index(signature: &Signature) -> Option<usize> {
    PATCH_TERMS.iter().position(|t| t.signature() == *signature)
}

/// `K_1 … K_22` and `Σ U_s(x_s)` over the interior sites of a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchCounts {
    pub k: [u64; 22],
    pub observed: u64,
}

pub fn patch_counts(field: &LabelField) -> Result<PatchCounts> {
    let dims = field.dims();
    if dims.rows() < 3 || dims.cols() < 3 {
        return Err(Error::NoInterior { rows: dims.rows(), cols: dims.cols() });
    }
    let mut counts = NeighborCounts(vec![0; field.num_classes()]);
    let mut out = PatchCounts { k: [0; 22], observed: 0 };
    for s in 0..dims.len() {
        if !dims.is_interior(dims.site(s)) {
            continue;
        }
        field.fill_counts(s, Neighborhood::Second, &mut counts.0);
        out.observed += counts.0[field.labels()[s] as usize] as u64;
        let index = patch_index(&histogram_signature(&counts)).expect("interior signature is a partition of 8");
        out.k[index] += 1;
    }
    Ok(out)
}

/// Interior-site prior score under the second-order neighborhood,
/// evaluated from the patch counts.
pub fn score_prior_grouped(field: &LabelField, beta: f64) -> Result<f64> {
    let patches = patch_counts(field)?;
    let l = field.num_classes();
    let expected: f64 = patches
        .k
        .iter()
        .zip(PATCH_TERMS.iter())
        .filter(|(&k, _)| k > 0)
        .map(|(&k, term)| k as f64 * term.eval(l, beta))
        .sum();
    Ok(patches.observed as f64 - expected)
}
