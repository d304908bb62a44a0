//! Grid geometry, neighborhoods and label-count statistics.
//!
//! Sites are addressed as `(row, col)` and stored row-major. Neighborhoods
//! are truncated at the grid border (free boundary), so border sites have
//! fewer neighbors than interior ones.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Rectangular grid of `rows x cols` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDims {
    rows: usize,
    cols: usize,
}

impl GridDims {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDims { rows, cols });
        }
        Ok(Self { rows, cols })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    /// Always false; present for clippy's `len_without_is_empty`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn index(&self, site: Site) -> usize {
        site.row * self.cols + site.col
    }

    #[inline]
    pub fn site(&self, index: usize) -> Site {
        Site { row: index / self.cols, col: index % self.cols }
    }

    pub fn contains(&self, site: Site) -> bool {
        site.row < self.rows && site.col < self.cols
    }

    pub(crate) fn check(&self, site: Site) -> Result<usize> {
        if self.contains(site) {
            Ok(self.index(site))
        } else {
            Err(Error::SiteOutOfBounds { row: site.row, col: site.col, rows: self.rows, cols: self.cols })
        }
    }

    pub(crate) fn ensure_same(&self, other: &GridDims) -> Result<()> {
        if self != other {
            return Err(Error::DimsMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(())
    }

    /// Sites whose full neighborhood lies inside the grid.
    pub fn is_interior(&self, site: Site) -> bool {
        site.row > 0 && site.col > 0 && site.row + 1 < self.rows && site.col + 1 < self.cols
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Site {
    pub row: usize,
    pub col: usize,
}

impl Site {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// Neighborhood system: the 4 or 8 nearest sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Neighborhood {
    First,
    #[default]
    Second,
}

const FIRST_ORDER: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
const SECOND_ORDER: [(isize, isize); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];
// Half of each neighborhood: every unordered pair is reached exactly once.
const FIRST_FORWARD: [(isize, isize); 2] = [(0, 1), (1, 0)];
const SECOND_FORWARD: [(isize, isize); 4] = [(0, 1), (1, -1), (1, 0), (1, 1)];

impl Neighborhood {
    pub fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Neighborhood::First => &FIRST_ORDER,
            Neighborhood::Second => &SECOND_ORDER,
        }
    }

    pub(crate) fn forward_offsets(self) -> &'static [(isize, isize)] {
        match self {
            Neighborhood::First => &FIRST_FORWARD,
            Neighborhood::Second => &SECOND_FORWARD,
        }
    }

    /// Degree of an interior site.
    pub fn max_degree(self) -> usize {
        self.offsets().len()
    }

    /// Calls `f` with the row-major index of every neighbor of `index`.
    #[inline]
    pub fn for_each_neighbor(self, dims: GridDims, index: usize, mut f: impl FnMut(usize)) {
        let row = (index / dims.cols) as isize;
        let col = (index % dims.cols) as isize;
        for &(dr, dc) in self.offsets() {
            let (r, c) = (row + dr, col + dc);
            if r >= 0 && c >= 0 && (r as usize) < dims.rows && (c as usize) < dims.cols {
                f(r as usize * dims.cols + c as usize);
            }
        }
    }

    /// Calls `f(a, b)` once for every unordered neighbor pair of the grid.
    #[inline]
    pub fn for_each_pair(self, dims: GridDims, mut f: impl FnMut(usize, usize)) {
        let (rows, cols) = (dims.rows as isize, dims.cols as isize);
        for row in 0..rows {
            for col in 0..cols {
                let a = (row * cols + col) as usize;
                for &(dr, dc) in self.forward_offsets() {
                    let (r, c) = (row + dr, col + dc);
                    if r < rows && c >= 0 && c < cols {
                        f(a, (r * cols + c) as usize);
                    }
                }
            }
        }
    }
}

/// A realization of the class field: one label in `[0, L)` per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelField {
    dims: GridDims,
    num_classes: usize,
    labels: Vec<u16>,
}

impl LabelField {
    pub fn new(dims: GridDims, num_classes: usize, labels: Vec<u16>) -> Result<Self> {
        check_num_classes(num_classes)?;
        if labels.len() != dims.len() {
            return Err(Error::LengthMismatch { expected: dims.len(), actual: labels.len() });
        }
        if let Some((index, &label)) = labels.iter().enumerate().find(|(_, &l)| l as usize >= num_classes) {
            return Err(Error::LabelOutOfRange { index, label: label as usize, num_classes });
        }
        Ok(Self { dims, num_classes, labels })
    }

    /// Every site carries `label`.
    pub fn uniform(dims: GridDims, num_classes: usize, label: u16) -> Result<Self> {
        Self::new(dims, num_classes, vec![label; dims.len()])
    }

    pub fn from_fn(dims: GridDims, num_classes: usize, mut f: impl FnMut(Site) -> u16) -> Result<Self> {
        let labels = (0..dims.len()).map(|i| f(dims.site(i))).collect();
        Self::new(dims, num_classes, labels)
    }

    #[inline]
    pub fn dims(&self) -> GridDims {
        self.dims
    }

    #[inline]
    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    #[inline]
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<u16> {
        self.labels
    }

    #[inline]
    pub fn label(&self, site: Site) -> u16 {
        self.labels[self.dims.index(site)]
    }

    #[inline]
    pub(crate) fn labels_mut(&mut self) -> &mut [u16] {
        &mut self.labels
    }

    pub fn set(&mut self, site: Site, label: u16) -> Result<()> {
        let index = self.dims.check(site)?;
        if label as usize >= self.num_classes {
            return Err(Error::LabelOutOfRange { index, label: label as usize, num_classes: self.num_classes });
        }
        self.labels[index] = label;
        Ok(())
    }

    /// Fills `counts[l]` with the number of neighbors of `index` labelled `l`.
    #[inline]
    pub(crate) fn fill_counts(&self, index: usize, nbhd: Neighborhood, counts: &mut [u32]) {
        counts.iter_mut().for_each(|c| *c = 0);
        nbhd.for_each_neighbor(self.dims, index, |t| counts[self.labels[t] as usize] += 1);
    }
}

pub(crate) fn check_num_classes(num_classes: usize) -> Result<()> {
    if num_classes < 2 || num_classes > u16::MAX as usize + 1 {
        return Err(Error::Parameter(alloc::format!("number of classes must be in [2, 65536], got {num_classes}")));
    }
    Ok(())
}

/// `U_s(l)` for every class `l` at one site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NeighborCounts(pub Vec<u32>);

impl NeighborCounts {
    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

pub fn neighbor_label_counts(field: &LabelField, site: Site, nbhd: Neighborhood) -> Result<NeighborCounts> {
    let index = field.dims.check(site)?;
    let mut counts = vec![0u32; field.num_classes];
    field.fill_counts(index, nbhd, &mut counts);
    Ok(NeighborCounts(counts))
}

/// `U(x)`: number of unordered neighbor pairs sharing a label.
pub fn global_agreement(field: &LabelField, nbhd: Neighborhood) -> u64 {
    let mut agree = 0u64;
    nbhd.for_each_pair(field.dims, |a, b| agree += (field.labels[a] == field.labels[b]) as u64);
    agree
}

/// Number of neighbors of `site` after border truncation.
pub fn degree(dims: GridDims, site: Site, nbhd: Neighborhood) -> Result<usize> {
    let index = dims.check(site)?;
    let mut d = 0;
    nbhd.for_each_neighbor(dims, index, |_| d += 1);
    Ok(d)
}

/// Nonzero neighbor counts sorted in descending order: an integer
/// partition of the site's degree, independent of which labels occur.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<u32>);

impl Signature {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

pub fn histogram_signature(counts: &NeighborCounts) -> Signature {
    let mut parts: Vec<u32> = counts.0.iter().copied().filter(|&c| c > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Signature(parts)
}
