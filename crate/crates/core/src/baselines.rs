//! Reference searches: a naive scan, and the sparse suffix array that keeps
//! every `step`-th suffix (`step = 1` gives the plain suffix array).

use crate::error::{Error, Result};
use crate::search::{suffix_range_in, MatchRange};
use crate::suffix_sort::build_full_sa;

/// Every start of `pattern` in `text`, overlapping matches included.
pub fn naive_locate(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    text.windows(pattern.len())
        .enumerate()
        .filter(|(_, w)| *w == pattern)
        .map(|(i, _)| i)
        .collect()
}

pub fn naive_count(text: &[u8], pattern: &[u8]) -> usize {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    text.windows(pattern.len()).filter(|w| *w == pattern).count()
}

#[derive(Clone, Debug)]
pub struct SparseSuffixArray<'t> {
    text: &'t [u8],
    step: usize,
    sa: Vec<u32>,
}

impl<'t> SparseSuffixArray<'t> {
    /// Suffixes at positions `0, step, 2 * step, ...` in suffix order.
    pub fn build(text: &'t [u8], step: usize) -> Result<Self> {
        if step == 0 || step > text.len() {
            return Err(Error::InvalidParams(format!(
                "step must be in 1..={}, got {step}",
                text.len()
            )));
        }
        let full = build_full_sa(text)?;
        let mut sa = full.into_vec();
        if step > 1 {
            sa.retain(|&s| (s as usize).is_multiple_of(step));
        }
        Ok(SparseSuffixArray { text, step, sa })
    }

    /// Plain suffix array over every position.
    pub fn plain(text: &'t [u8]) -> Result<Self> {
        Self::build(text, 1)
    }

    #[inline]
    pub fn step(&self) -> usize {
        self.step
    }

    #[inline]
    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    #[inline]
    pub fn text(&self) -> &'t [u8] {
        self.text
    }

    #[inline]
    pub fn min_pattern_len(&self) -> usize {
        self.step
    }

    fn check(&self, pattern: &[u8]) -> Result<()> {
        let required = self.step.max(1);
        if pattern.len() < required {
            return Err(Error::PatternTooShort {
                len: pattern.len(),
                required,
            });
        }
        Ok(())
    }

    /// One binary search per pattern offset in `0..step`, each hit verified
    /// against the skipped prefix.
    fn scan(&self, pattern: &[u8], mut emit: impl FnMut(usize)) -> Result<()> {
        self.check(pattern)?;
        let all = MatchRange {
            lo: 0,
            hi: self.sa.len(),
        };
        for offset in 0..self.step {
            let range = suffix_range_in(self.text, all, |r| self.sa[r] as usize, &pattern[offset..]);
            let prefix = &pattern[..offset];
            for r in range.ranks() {
                let s = self.sa[r] as usize;
                if s >= offset && &self.text[s - offset..s] == prefix {
                    emit(s - offset);
                }
            }
        }
        Ok(())
    }

    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        let mut hits = Vec::new();
        self.scan(pattern, |i| hits.push(i))?;
        // each occurrence aligns with exactly one offset, so no duplicates
        hits.sort_unstable();
        Ok(hits)
    }

    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        let mut n = 0;
        self.scan(pattern, |_| n += 1)?;
        Ok(n)
    }
}
