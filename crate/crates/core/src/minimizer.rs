//! Lexicographic minimizers and the sampled-position set they induce.
//!
//! A window of `q` bytes is represented by its minimizer: the smallest of its
//! `q - p + 1` p-grams under unsigned bytewise order, leftmost on ties. Every
//! position that is the minimizer of at least one window of the text is
//! sampled. Equal windows always pick the same relative offset, so any
//! occurrence of a pattern of length `>= q` shares one sampled position with
//! the pattern's first window.
//!
//! All positions in this crate are 0-based.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest distance a 4-bit delta annotation can carry.
pub const MAX_DELTA: usize = 15;

/// Window length `q` and minimizer length `p`, with `1 <= p <= q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SamplingParams {
    q: usize,
    p: usize,
}

impl SamplingParams {
    pub fn new(q: usize, p: usize) -> Result<Self> {
        if p == 0 || p > q {
            return Err(Error::InvalidParams(format!(
                "need 1 <= p <= q, got q={q} p={p}"
            )));
        }
        Ok(SamplingParams { q, p })
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    /// Largest offset at which a window's minimizer can start.
    #[inline]
    pub fn max_minimizer_offset(&self) -> usize {
        self.q - self.p
    }

    pub(crate) fn check_text(&self, n: usize) -> Result<()> {
        if n < self.q {
            return Err(Error::TextTooShort {
                len: n,
                required: self.q,
            });
        }
        Ok(())
    }
}

/// Offset of the leftmost smallest `p`-gram of `window`.
pub fn window_minimizer(window: &[u8], p: usize) -> Result<usize> {
    if p == 0 || window.len() < p {
        return Err(Error::InvalidParams(format!(
            "window of length {} has no {p}-gram",
            window.len()
        )));
    }
    Ok(leftmost_min(window, p))
}

#[inline]
pub(crate) fn leftmost_min(window: &[u8], p: usize) -> usize {
    let mut best = 0;
    for g in 1..=window.len() - p {
        if window[g..g + p] < window[best..best + p] {
            best = g;
        }
    }
    best
}

/// Ascending set of minimizer positions of every length-`q` window of a text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledPositions {
    positions: Vec<u32>,
    text_len: usize,
}

impl SampledPositions {
    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.positions
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    #[inline]
    pub fn text_len(&self) -> usize {
        self.text_len
    }

    pub fn contains(&self, pos: usize) -> bool {
        u32::try_from(pos)
            .map(|pos| self.positions.binary_search(&pos).is_ok())
            .unwrap_or(false)
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.positions
    }

    /// Bit per text position, set where a suffix is sampled.
    pub(crate) fn marks(&self) -> Vec<bool> {
        let mut marks = vec![false; self.text_len];
        for &s in &self.positions {
            marks[s as usize] = true;
        }
        marks
    }
}

/// Minimizer positions of all windows of `text`, computed with a monotone
/// deque of candidate p-gram starts.
pub fn sampled_positions(text: &[u8], params: SamplingParams) -> Result<SampledPositions> {
    params.check_text(text.len())?;
    crate::check_text_len(text.len())?;
    Ok(SampledPositions {
        positions: minimizer_positions(text, params),
        text_len: text.len(),
    })
}

pub(crate) fn minimizer_positions(text: &[u8], params: SamplingParams) -> Vec<u32> {
    let (q, p) = (params.q, params.p);
    let span = q - p;
    let pgram = |g: usize| &text[g..g + p];

    let mut deque: VecDeque<usize> = VecDeque::with_capacity(span + 1);
    let mut out: Vec<u32> = Vec::new();
    for g in 0..=text.len() - p {
        while deque.back().is_some_and(|&b| pgram(b) > pgram(g)) {
            deque.pop_back();
        }
        deque.push_back(g);
        if g < span {
            continue;
        }
        let window = g - span;
        while deque.front().is_some_and(|&f| f < window) {
            deque.pop_front();
        }
        let min = deque[0] as u32;
        if out.last() != Some(&min) {
            out.push(min);
        }
    }
    out
}

/// Per-pattern table of which text-order distances to the previous sampled
/// position are compatible with an occurrence.
///
/// `possible(d)` is false only when no alignment of the pattern in any text
/// lets position `offset - d` of the pattern be a minimizer while `offset` is
/// the first minimizer at or after it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneMask {
    offset: usize,
    limit: usize,
    possible: [bool; MAX_DELTA + 1],
}

impl PruneMask {
    /// Minimizer offset of the pattern's first window.
    #[inline]
    pub fn minimizer_offset(&self) -> usize {
        self.offset
    }

    /// Largest distance covered by the mask, `min(15, offset)`.
    #[inline]
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Whether a predecessor at distance `d` can be consistent with a match.
    /// Distances outside `1..=limit` carry no information and report `true`.
    #[inline]
    pub fn is_possible(&self, d: usize) -> bool {
        if d == 0 || d > self.limit {
            return true;
        }
        self.possible[d]
    }

    #[inline]
    pub(crate) fn rules_out(&self, d: usize) -> bool {
        !self.is_possible(d)
    }
}

pub fn prune_mask(pattern: &[u8], params: SamplingParams) -> Result<PruneMask> {
    let (q, p) = (params.q, params.p);
    if pattern.len() < q {
        return Err(Error::PatternTooShort {
            len: pattern.len(),
            required: q,
        });
    }
    let j = leftmost_min(&pattern[..q], p);
    let limit = j.min(MAX_DELTA);
    let mut possible = [false; MAX_DELTA + 1];
    for (d, slot) in possible.iter_mut().enumerate().take(limit + 1).skip(1) {
        *slot = can_precede(pattern, params, j, j - d);
    }
    Ok(PruneMask {
        offset: j,
        limit,
        possible,
    })
}

/// Whether some window covering the p-gram at `g` but not the one at `j` can
/// select `g`, judging only by the pattern bytes it sees.
fn can_precede(pattern: &[u8], params: SamplingParams, j: usize, g: usize) -> bool {
    let (q, p) = (params.q as isize, params.p as isize);
    let (j, g) = (j as isize, g as isize);
    let gram = |h: isize| &pattern[h as usize..(h + p) as usize];
    let target = gram(g);
    // window end e (inclusive); the window starts at e - q + 1, possibly
    // before the pattern where bytes are unknown
    (g + p - 1..=j + p - 2).any(|e| {
        let first = (e - q + 1).max(0);
        let last = e - p + 1;
        !(first..=last).any(|h| {
            h != g && {
                let other = gram(h);
                other < target || (other == target && h < g)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(q: usize, p: usize) -> SamplingParams {
        SamplingParams::new(q, p).unwrap()
    }

    #[test]
    fn window_minimizer_examples() {
        assert_eq!(window_minimizer(b"ctgcc", 2).unwrap(), 3);
        assert_eq!(window_minimizer(b"aaaa", 2).unwrap(), 0);
        assert_eq!(window_minimizer(b"abracadabra", 2).unwrap(), 0);
        assert!(matches!(
            window_minimizer(b"a", 2),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn params_validation() {
        assert!(SamplingParams::new(0, 0).is_err());
        assert!(SamplingParams::new(3, 4).is_err());
        assert!(SamplingParams::new(4, 0).is_err());
        assert!(SamplingParams::new(1, 1).is_ok());
    }

    #[test]
    fn once_upon_a_time_samples_every_blank() {
        let s = sampled_positions(b"Once upon a time", params(5, 1)).unwrap();
        assert_eq!(s.as_slice(), &[4, 9, 11]);
    }

    #[test]
    fn abracadabra_samples() {
        let s = sampled_positions(b"abracadabra", params(4, 2)).unwrap();
        assert_eq!(s.as_slice(), &[0, 3, 5, 7]);
        assert!(s.contains(7));
        assert!(!s.contains(8));
    }

    #[test]
    fn q_equal_p_samples_every_window_start() {
        let s = sampled_positions(b"mississippi", params(3, 3)).unwrap();
        assert_eq!(s.as_slice(), (0..9).collect::<Vec<u32>>().as_slice());
    }

    #[test]
    fn text_of_exactly_q_has_one_sample() {
        let s = sampled_positions(b"dcba", params(4, 2)).unwrap();
        assert_eq!(s.as_slice(), &[2]);
    }

    #[test]
    fn short_text_is_rejected() {
        assert!(matches!(
            sampled_positions(b"abc", params(4, 1)),
            Err(Error::TextTooShort { len: 3, required: 4 })
        ));
    }

    #[test]
    fn prune_mask_worked_example() {
        let mask = prune_mask(b"ctgccact", params(5, 2)).unwrap();
        assert_eq!(mask.minimizer_offset(), 3);
        assert_eq!(mask.limit(), 3);
        assert!(!mask.is_possible(1));
        assert!(!mask.is_possible(2));
        assert!(mask.is_possible(3));
        assert!(mask.is_possible(0));
        assert!(mask.is_possible(4));
    }

    #[test]
    fn prune_mask_with_leading_minimizer_is_empty() {
        let mask = prune_mask(b"abzzz", params(4, 1)).unwrap();
        assert_eq!(mask.minimizer_offset(), 0);
        assert_eq!(mask.limit(), 0);
        assert!((0..=MAX_DELTA).all(|d| mask.is_possible(d)));
    }

    #[test]
    fn prune_mask_rejects_short_pattern() {
        assert!(matches!(
            prune_mask(b"ctg", params(5, 2)),
            Err(Error::PatternTooShort { .. })
        ));
    }
}
