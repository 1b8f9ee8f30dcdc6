//! Sampled suffix array entries carrying a 4-bit distance to the previous
//! sampled position in text order.
//!
//! Each entry is packed as `(delta << 28) | position`. When the predecessor of
//! a candidate falls inside the aligned pattern, the per-pattern
//! [`PruneMask`] can reject it without touching the text.

use crate::error::{Error, Result};
use crate::minimizer::{prune_mask, PruneMask, MAX_DELTA};
use crate::samsami::{verify_candidates, QueryStats, SamsamiIndex};
use crate::search::{suffix_range_in, MatchRange};

pub const POSITION_BITS: u32 = 28;
pub const POSITION_MASK: u32 = (1 << POSITION_BITS) - 1;
/// Longest text the packed layout can address.
pub const MAX_TEXT_LEN: usize = 1 << POSITION_BITS;

#[inline]
pub fn pack_offset(pos: usize, delta: u8) -> u32 {
    debug_assert!(pos <= POSITION_MASK as usize && delta as usize <= MAX_DELTA);
    (u32::from(delta) << POSITION_BITS) | pos as u32
}

#[inline]
pub fn unpack_offset(word: u32) -> (usize, u8) {
    ((word & POSITION_MASK) as usize, (word >> POSITION_BITS) as u8)
}

/// Packed offsets aligned with the ranks of a [`SamsamiIndex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaAnnotation {
    packed: Vec<u32>,
}

impl DeltaAnnotation {
    #[inline]
    pub fn len(&self) -> usize {
        self.packed.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.packed.is_empty()
    }

    #[inline]
    pub fn packed(&self) -> &[u32] {
        &self.packed
    }

    #[inline]
    pub fn delta(&self, rank: usize) -> u8 {
        unpack_offset(self.packed[rank]).1
    }

    #[inline]
    pub fn position(&self, rank: usize) -> usize {
        unpack_offset(self.packed[rank]).0
    }

    pub fn deltas(&self) -> impl Iterator<Item = u8> + '_ {
        self.packed.iter().map(|&w| unpack_offset(w).1)
    }

    pub(crate) fn from_packed(packed: Vec<u32>) -> Self {
        DeltaAnnotation { packed }
    }
}

/// Distances between consecutive positions of an ascending list, 0 for the
/// first and for gaps above 15.
pub fn text_order_deltas(positions: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(positions.len());
    let mut prev: Option<u32> = None;
    for &s in positions {
        let d = match prev {
            Some(p) if (s - p) as usize <= MAX_DELTA => (s - p) as u8,
            _ => 0,
        };
        out.push(d);
        prev = Some(s);
    }
    out
}

pub fn annotate(idx: &SamsamiIndex<'_>) -> Result<DeltaAnnotation> {
    if idx.text_len() > MAX_TEXT_LEN {
        return Err(Error::TextTooLargeForDeltaVariant {
            len: idx.text_len(),
        });
    }
    let sa = idx.sa();
    let mut by_position: Vec<u32> = (0..sa.len() as u32).collect();
    by_position.sort_unstable_by_key(|&r| sa[r as usize]);
    let positions: Vec<u32> = by_position.iter().map(|&r| sa[r as usize]).collect();
    let deltas = text_order_deltas(&positions);

    let mut packed = vec![0u32; sa.len()];
    for (&rank, &d) in by_position.iter().zip(&deltas) {
        let rank = rank as usize;
        packed[rank] = pack_offset(sa[rank] as usize, d);
    }
    Ok(DeltaAnnotation { packed })
}

pub fn locate2(idx: &SamsamiIndex<'_>, ann: &DeltaAnnotation, pattern: &[u8]) -> Result<Vec<usize>> {
    locate2_with_stats(idx, ann, pattern).map(|(hits, _)| hits)
}

pub fn locate2_with_stats(
    idx: &SamsamiIndex<'_>,
    ann: &DeltaAnnotation,
    pattern: &[u8],
) -> Result<(Vec<usize>, QueryStats)> {
    let mut stats = QueryStats::default();
    let mut hits = Vec::new();
    scan(idx, ann, pattern, &mut stats, |i| hits.push(i))?;
    hits.sort_unstable();
    Ok((hits, stats))
}

pub fn count2(idx: &SamsamiIndex<'_>, ann: &DeltaAnnotation, pattern: &[u8]) -> Result<usize> {
    let mut stats = QueryStats::default();
    let mut n = 0;
    scan(idx, ann, pattern, &mut stats, |_| n += 1)?;
    Ok(n)
}

fn scan(
    idx: &SamsamiIndex<'_>,
    ann: &DeltaAnnotation,
    pattern: &[u8],
    stats: &mut QueryStats,
    emit: impl FnMut(usize),
) -> Result<()> {
    if ann.len() != idx.sampled_len() {
        return Err(Error::InvalidParams(format!(
            "annotation has {} entries, index has {}",
            ann.len(),
            idx.sampled_len()
        )));
    }
    let mask: PruneMask = prune_mask(pattern, idx.params())?;
    let j = mask.minimizer_offset();
    let packed = &ann.packed;
    let pos_at = |r: usize| (packed[r] & POSITION_MASK) as usize;
    let all = MatchRange {
        lo: 0,
        hi: packed.len(),
    };
    let range = suffix_range_in(idx.text(), all, pos_at, &pattern[j..]);
    verify_candidates(
        idx.text(),
        pattern,
        j,
        range,
        pos_at,
        |r| mask.rules_out((packed[r] >> POSITION_BITS) as usize),
        stats,
        emit,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimizer::SamplingParams;

    #[test]
    fn worked_example_deltas() {
        // 1-based 3, 10, 12, 15, 20
        assert_eq!(text_order_deltas(&[2, 9, 11, 14, 19]), vec![0, 7, 2, 3, 5]);
        assert_eq!(text_order_deltas(&[4]), vec![0]);
        assert_eq!(text_order_deltas(&[0, 16, 31]), vec![0, 0, 15]);
    }

    #[test]
    fn abracadabra_annotation() {
        let idx =
            SamsamiIndex::build(b"abracadabra", SamplingParams::new(4, 2).unwrap()).unwrap();
        let ann = annotate(&idx).unwrap();
        assert_eq!(ann.deltas().collect::<Vec<_>>(), vec![2, 0, 3, 2]);
        assert_eq!(
            (0..4).map(|r| ann.position(r)).collect::<Vec<_>>(),
            vec![7, 0, 3, 5]
        );
        assert_eq!(ann.packed()[0], (2 << 28) | 7);
    }

    #[test]
    fn single_sample_has_zero_delta() {
        let idx = SamsamiIndex::build(b"dcba", SamplingParams::new(4, 2).unwrap()).unwrap();
        let ann = annotate(&idx).unwrap();
        assert_eq!(ann.deltas().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn pack_round_trip_at_extremes() {
        for (pos, d) in [(0, 0), (POSITION_MASK as usize, 15), (12345, 7)] {
            assert_eq!(unpack_offset(pack_offset(pos, d)), (pos, d));
        }
    }

    #[test]
    fn locate2_matches_locate_on_abracadabra() {
        let idx =
            SamsamiIndex::build(b"abracadabra", SamplingParams::new(4, 2).unwrap()).unwrap();
        let ann = annotate(&idx).unwrap();
        for pat in [&b"adab"[..], b"abra", b"acad", b"abracadabra", b"bbbb"] {
            assert_eq!(locate2(&idx, &ann, pat).unwrap(), idx.locate(pat).unwrap());
            assert_eq!(count2(&idx, &ann, pat).unwrap(), idx.count(pat).unwrap());
        }
    }

    #[test]
    fn mismatched_annotation_is_rejected() {
        let idx =
            SamsamiIndex::build(b"abracadabra", SamplingParams::new(4, 2).unwrap()).unwrap();
        let ann = DeltaAnnotation::from_packed(vec![0]);
        assert!(locate2(&idx, &ann, b"abra").is_err());
    }
}
