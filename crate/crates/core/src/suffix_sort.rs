//! Full suffix array construction (SA-IS) and extraction of a sampled
//! sub-array.
//!
//! Suffixes are ordered bytewise with the end of the text smaller than every
//! byte, so a suffix that is a proper prefix of another sorts first.

use crate::error::{Error, Result};
use crate::minimizer::SampledPositions;

/// Lexicographically sorted permutation of all suffix start positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSuffixArray(Vec<u32>);

impl FullSuffixArray {
    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

pub fn build_full_sa(text: &[u8]) -> Result<FullSuffixArray> {
    if text.is_empty() {
        return Err(Error::TextTooShort {
            len: 0,
            required: 1,
        });
    }
    crate::check_text_len(text.len())?;
    Ok(FullSuffixArray(sais::suffix_array(text)))
}

/// Subsequence of `full` restricted to `sampled`, in suffix order.
pub fn extract_sampled(full: &FullSuffixArray, sampled: &SampledPositions) -> Vec<u32> {
    let marks = sampled.marks();
    let mut out = Vec::with_capacity(sampled.len());
    out.extend(full.0.iter().copied().filter(|&s| marks[s as usize]));
    out
}

mod sais {
    //! Induced sorting without an explicit sentinel, after the formulation in
    //! the AtCoder Library. Short inputs fall back to comparison sorting.

    const EMPTY: u32 = u32::MAX;
    const NAIVE_THRESHOLD: usize = 16;

    trait Symbol: Copy + Eq + Ord {
        fn rank(self) -> usize;
    }

    impl Symbol for u8 {
        #[inline]
        fn rank(self) -> usize {
            self as usize
        }
    }

    impl Symbol for u32 {
        #[inline]
        fn rank(self) -> usize {
            self as usize
        }
    }

    pub(super) fn suffix_array(text: &[u8]) -> Vec<u32> {
        sa_is(text, 255)
    }

    fn naive<S: Symbol>(s: &[S]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..s.len() as u32).collect();
        sa.sort_unstable_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        sa
    }

    fn sa_is<S: Symbol>(s: &[S], upper: usize) -> Vec<u32> {
        let n = s.len();
        match n {
            0 => return Vec::new(),
            1 => return vec![0],
            2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
            _ if n < NAIVE_THRESHOLD => return naive(s),
            _ => {}
        }

        // true = S-type
        let mut ls = vec![false; n];
        for i in (0..n - 1).rev() {
            ls[i] = if s[i] == s[i + 1] {
                ls[i + 1]
            } else {
                s[i] < s[i + 1]
            };
        }

        let mut sum_l = vec![0usize; upper + 1];
        let mut sum_s = vec![0usize; upper + 1];
        for i in 0..n {
            if !ls[i] {
                sum_s[s[i].rank()] += 1;
            } else {
                sum_l[s[i].rank() + 1] += 1;
            }
        }
        for i in 0..=upper {
            sum_s[i] += sum_l[i];
            if i < upper {
                sum_l[i + 1] += sum_s[i];
            }
        }

        let mut sa = vec![EMPTY; n];
        let mut buf = vec![0usize; upper + 1];
        let mut induce = |sa: &mut [u32], lms: &[u32]| {
            sa.fill(EMPTY);
            buf.copy_from_slice(&sum_s);
            for &d in lms {
                let d = d as usize;
                if d == n {
                    continue;
                }
                let c = s[d].rank();
                sa[buf[c]] = d as u32;
                buf[c] += 1;
            }
            buf.copy_from_slice(&sum_l);
            let c = s[n - 1].rank();
            sa[buf[c]] = (n - 1) as u32;
            buf[c] += 1;
            for i in 0..n {
                let v = sa[i];
                if v != EMPTY && v >= 1 && !ls[v as usize - 1] {
                    let c = s[v as usize - 1].rank();
                    sa[buf[c]] = v - 1;
                    buf[c] += 1;
                }
            }
            buf.copy_from_slice(&sum_l);
            for i in (0..n).rev() {
                let v = sa[i];
                if v != EMPTY && v >= 1 && ls[v as usize - 1] {
                    let c = s[v as usize - 1].rank() + 1;
                    buf[c] -= 1;
                    sa[buf[c]] = v - 1;
                }
            }
        };

        let mut lms_map = vec![EMPTY; n + 1];
        let mut lms: Vec<u32> = Vec::new();
        for i in 1..n {
            if !ls[i - 1] && ls[i] {
                lms_map[i] = lms.len() as u32;
                lms.push(i as u32);
            }
        }
        let m = lms.len();
        induce(&mut sa, &lms);

        if m > 0 {
            let mut sorted_lms: Vec<u32> = sa
                .iter()
                .copied()
                .filter(|&v| lms_map[v as usize] != EMPTY)
                .collect();
            let mut rec_s = vec![0u32; m];
            let mut rec_upper = 0u32;
            rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
            for i in 1..m {
                let mut l = sorted_lms[i - 1] as usize;
                let mut r = sorted_lms[i] as usize;
                let next = |x: usize| {
                    let k = lms_map[x] as usize + 1;
                    if k < m {
                        lms[k] as usize
                    } else {
                        n
                    }
                };
                let end_l = next(l);
                let end_r = next(r);
                let mut same = true;
                if end_l - l != end_r - r {
                    same = false;
                } else {
                    while l < end_l {
                        if s[l] != s[r] {
                            break;
                        }
                        l += 1;
                        r += 1;
                    }
                    if l == n || s[l] != s[r] {
                        same = false;
                    }
                }
                if !same {
                    rec_upper += 1;
                }
                rec_s[lms_map[sorted_lms[i] as usize] as usize] = rec_upper;
            }

            let rec_sa = sa_is(&rec_s, rec_upper as usize);
            for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
                *slot = lms[r as usize];
            }
            induce(&mut sa, &sorted_lms);
        }
        sa
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimizer::{sampled_positions, SamplingParams};

    fn naive_sa(text: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..text.len() as u32).collect();
        sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
        sa
    }

    #[test]
    fn abracadabra() {
        let sa = build_full_sa(b"abracadabra").unwrap();
        // 1-based: 11 8 1 4 6 9 2 5 7 10 3
        assert_eq!(sa.as_slice(), &[10, 7, 0, 3, 5, 8, 1, 4, 6, 9, 2]);
    }

    #[test]
    fn degenerate_texts() {
        assert_eq!(build_full_sa(b"aaa").unwrap().as_slice(), &[2, 1, 0]);
        assert_eq!(build_full_sa(b"b").unwrap().as_slice(), &[0]);
        assert!(matches!(
            build_full_sa(b""),
            Err(Error::TextTooShort { .. })
        ));
    }

    #[test]
    fn long_runs_and_periodic_texts_match_naive() {
        let cases: Vec<Vec<u8>> = vec![
            vec![b'a'; 1000],
            b"ab".repeat(700),
            b"abcabd".repeat(300),
            (0..2000u32).map(|i| (i * i % 251) as u8).collect(),
            (0..=255u8).rev().cycle().take(3000).collect(),
        ];
        for text in cases {
            assert_eq!(build_full_sa(&text).unwrap().as_slice(), naive_sa(&text));
        }
    }

    #[test]
    fn extract_abracadabra_samples() {
        let text = b"abracadabra";
        let full = build_full_sa(text).unwrap();
        let params = SamplingParams::new(4, 2).unwrap();
        let sampled = sampled_positions(text, params).unwrap();
        assert_eq!(extract_sampled(&full, &sampled), vec![7, 0, 3, 5]);

        let all = sampled_positions(text, SamplingParams::new(1, 1).unwrap()).unwrap();
        assert_eq!(extract_sampled(&full, &all), full.as_slice());
    }
}
