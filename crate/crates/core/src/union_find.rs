//! Disjoint sets over `0..n` with path halving and union by size.

use alloc::vec::Vec;

/// `link[i] >= 0` is the parent of `i`; a root stores `-(set size)`.
#[derive(Debug, Clone, Default)]
pub struct DisjointSets {
    link: Vec<i32>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        let mut sets = Self::default();
        sets.reset(n);
        sets
    }

    /// Makes every element its own singleton set, reusing the buffer.
    pub fn reset(&mut self, n: usize) {
        assert!(n <= i32::MAX as usize);
        self.link.clear();
        self.link.resize(n, -1);
    }

    pub fn len(&self) -> usize {
        self.link.len()
    }

    pub fn is_empty(&self) -> bool {
        self.link.is_empty()
    }

    #[inline]
    pub fn find(&mut self, mut x: usize) -> usize {
        loop {
            let parent = self.link[x];
            if parent < 0 {
                return x;
            }
            let grand = self.link[parent as usize];
            if grand < 0 {
                return parent as usize;
            }
            self.link[x] = grand;
            x = grand as usize;
        }
    }

    /// Returns false if `a` and `b` were already joined.
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // sizes are stored negated
        if self.link[ra] > self.link[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.link[ra] += self.link[rb];
        self.link[rb] = ra as i32;
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        (-self.link[r]) as usize
    }
}
