//! Binary search of a query string over sorted text suffixes.

use std::cmp::Ordering;

/// Half-open rank interval `[lo, hi)` into a sorted suffix array.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MatchRange {
    pub lo: usize,
    pub hi: usize,
}

impl MatchRange {
    #[inline]
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    #[inline]
    pub fn ranks(&self) -> std::ops::Range<usize> {
        self.lo..self.hi
    }
}

/// Compares the first `query.len()` bytes of the suffix at `pos` with
/// `query`. A suffix that runs out early compares as smaller.
#[inline]
pub(crate) fn cmp_prefix(text: &[u8], pos: usize, query: &[u8]) -> Ordering {
    let end = text.len().min(pos + query.len());
    text[pos..end].cmp(query)
}

fn partition_point(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Ranks within `within` whose suffixes start with `query`; `pos_at` maps a
/// rank to its suffix start.
pub(crate) fn suffix_range_in(
    text: &[u8],
    within: MatchRange,
    pos_at: impl Fn(usize) -> usize,
    query: &[u8],
) -> MatchRange {
    let lo = partition_point(within.lo, within.hi, |r| {
        cmp_prefix(text, pos_at(r), query) == Ordering::Less
    });
    let hi = partition_point(lo, within.hi, |r| {
        cmp_prefix(text, pos_at(r), query) != Ordering::Greater
    });
    MatchRange { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorter_suffix_sorts_before_query() {
        assert_eq!(cmp_prefix(b"xab", 1, b"abc"), Ordering::Less);
        assert_eq!(cmp_prefix(b"xabc", 1, b"abc"), Ordering::Equal);
        assert_eq!(cmp_prefix(b"xabd", 1, b"abc"), Ordering::Greater);
    }

    #[test]
    fn range_over_sorted_suffixes() {
        let text = b"banana";
        let sa = [5usize, 3, 1, 0, 4, 2];
        let all = MatchRange { lo: 0, hi: 6 };
        let r = suffix_range_in(text, all, |r| sa[r], b"ana");
        assert_eq!((r.lo, r.hi), (1, 3));
        let r = suffix_range_in(text, all, |r| sa[r], b"nab");
        assert!(r.is_empty());
        let r = suffix_range_in(text, all, |r| sa[r], b"a");
        assert_eq!(r.len(), 3);
    }
}
