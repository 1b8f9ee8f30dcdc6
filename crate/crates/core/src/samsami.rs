//! The basic sampled suffix array with minimizers.
//!
//! Only suffixes starting at minimizer positions are kept, in suffix order.
//! A query of length `m >= q` looks up the minimizer offset `j` of its first
//! window, binary searches `pattern[j..]` and then checks the `j` bytes in
//! front of every hit against the text.

use crate::error::{Error, Result};
use crate::minimizer::{leftmost_min, sampled_positions, SamplingParams};
use crate::search::{suffix_range_in, MatchRange};
use crate::suffix_sort::{build_full_sa, extract_sampled};

/// Per-query counters, mostly for benchmarks and tests of the pruning path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Entries of the suffix range that were considered.
    pub candidates: usize,
    /// Candidates whose preceding bytes had to be read from the text.
    pub text_reads: usize,
    /// Candidates dropped by the delta annotation alone.
    pub pruned: usize,
}

#[derive(Clone, Debug)]
pub struct SamsamiIndex<'t> {
    text: &'t [u8],
    params: SamplingParams,
    sa: Vec<u32>,
}

impl<'t> SamsamiIndex<'t> {
    pub fn build(text: &'t [u8], params: SamplingParams) -> Result<Self> {
        let sampled = sampled_positions(text, params)?;
        let full = build_full_sa(text)?;
        let sa = extract_sampled(&full, &sampled);
        Ok(SamsamiIndex { text, params, sa })
    }

    /// Reassembles an index from a previously built offset array, checking
    /// only bounds; order is trusted.
    pub fn from_parts(text: &'t [u8], params: SamplingParams, sa: Vec<u32>) -> Result<Self> {
        params.check_text(text.len())?;
        if sa.len() > text.len() - params.q() + 1 {
            return Err(Error::CorruptIndex(format!(
                "{} sampled suffixes exceed the {} windows of the text",
                sa.len(),
                text.len() - params.q() + 1
            )));
        }
        if let Some(&bad) = sa.iter().find(|&&s| s as usize >= text.len()) {
            return Err(Error::CorruptIndex(format!(
                "sampled position {bad} outside a text of length {}",
                text.len()
            )));
        }
        Ok(SamsamiIndex { text, params, sa })
    }

    #[inline]
    pub fn params(&self) -> SamplingParams {
        self.params
    }

    #[inline]
    pub fn text(&self) -> &'t [u8] {
        self.text
    }

    #[inline]
    pub fn text_len(&self) -> usize {
        self.text.len()
    }

    /// Number of sampled suffixes, n'.
    #[inline]
    pub fn sampled_len(&self) -> usize {
        self.sa.len()
    }

    /// Sampled suffix starts in suffix order.
    #[inline]
    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    #[inline]
    pub fn min_pattern_len(&self) -> usize {
        self.params.q()
    }

    pub fn suffix_range(&self, query: &[u8]) -> MatchRange {
        self.suffix_range_within(self.full_range(), query)
    }

    pub(crate) fn full_range(&self) -> MatchRange {
        MatchRange {
            lo: 0,
            hi: self.sa.len(),
        }
    }

    pub(crate) fn suffix_range_within(&self, within: MatchRange, query: &[u8]) -> MatchRange {
        suffix_range_in(self.text, within, |r| self.sa[r] as usize, query)
    }

    /// Minimizer offset of the pattern's first window.
    pub(crate) fn anchor(&self, pattern: &[u8]) -> Result<usize> {
        let q = self.params.q();
        if pattern.len() < q {
            return Err(Error::PatternTooShort {
                len: pattern.len(),
                required: q,
            });
        }
        Ok(leftmost_min(&pattern[..q], self.params.p()))
    }

    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        self.locate_with_stats(pattern).map(|(hits, _)| hits)
    }

    pub fn locate_with_stats(&self, pattern: &[u8]) -> Result<(Vec<usize>, QueryStats)> {
        let mut stats = QueryStats::default();
        let mut hits = Vec::new();
        self.scan(pattern, &mut stats, |i| hits.push(i))?;
        hits.sort_unstable();
        Ok((hits, stats))
    }

    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        let mut stats = QueryStats::default();
        let mut n = 0;
        self.scan(pattern, &mut stats, |_| n += 1)?;
        Ok(n)
    }

    fn scan(&self, pattern: &[u8], stats: &mut QueryStats, emit: impl FnMut(usize)) -> Result<()> {
        let j = self.anchor(pattern)?;
        let range = self.suffix_range(&pattern[j..]);
        verify_candidates(
            self.text,
            pattern,
            j,
            range,
            |r| self.sa[r] as usize,
            |_| false,
            stats,
            emit,
        );
        Ok(())
    }
}

/// Checks every rank of `range` whose suffix matched `pattern[j..]` against
/// the `j` bytes before it. `prune(r)` may reject a rank without reading the
/// text.
#[allow(clippy::too_many_arguments)]
pub(crate) fn verify_candidates(
    text: &[u8],
    pattern: &[u8],
    j: usize,
    range: MatchRange,
    pos_at: impl Fn(usize) -> usize,
    prune: impl Fn(usize) -> bool,
    stats: &mut QueryStats,
    mut emit: impl FnMut(usize),
) {
    let prefix = &pattern[..j];
    for r in range.ranks() {
        stats.candidates += 1;
        let s = pos_at(r);
        // occurrence would start before the text
        if s < j {
            continue;
        }
        if prune(r) {
            stats.pruned += 1;
            continue;
        }
        if j > 0 {
            stats.text_reads += 1;
            if &text[s - j..s] != prefix {
                continue;
            }
        }
        emit(s - j);
    }
}
