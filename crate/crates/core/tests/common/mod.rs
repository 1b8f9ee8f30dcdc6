//! Brute-force oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use samsami::bench::SplitMix64;

/// Minimizer positions by trying every p-gram of every window.
pub fn brute_sampled(text: &[u8], q: usize, p: usize) -> Vec<u32> {
    let mut set = BTreeSet::new();
    for w in 0..=text.len() - q {
        let mut best = w;
        for g in w + 1..=w + q - p {
            let mut smaller = false;
            for t in 0..p {
                if text[g + t] != text[best + t] {
                    smaller = text[g + t] < text[best + t];
                    break;
                }
            }
            if smaller {
                best = g;
            }
        }
        set.insert(best as u32);
    }
    set.into_iter().collect()
}

pub fn brute_window_min(window: &[u8], p: usize) -> usize {
    (0..=window.len() - p)
        .min_by(|&a, &b| window[a..a + p].cmp(&window[b..b + p]).then(a.cmp(&b)))
        .unwrap()
}

pub fn brute_sa(text: &[u8]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..text.len() as u32).collect();
    sa.sort_by(|&a, &b| text[a as usize..].cmp(&text[b as usize..]));
    sa
}

pub fn brute_locate(text: &[u8], pattern: &[u8]) -> Vec<usize> {
    (0..text.len().saturating_sub(pattern.len() - 1))
        .filter(|&i| text[i..].starts_with(pattern))
        .collect()
}

pub fn brute_qgrams(text: &[u8], q: usize) -> usize {
    text.windows(q).collect::<HashSet<_>>().len()
}

/// Bytes of an alphabet of `sigma` symbols; 96 means printable ASCII.
pub fn alphabet(sigma: usize) -> Vec<u8> {
    match sigma {
        2 => b"ab".to_vec(),
        4 => b"acgt".to_vec(),
        26 => (b'a'..=b'z').collect(),
        96 => (32u8..128).collect(),
        256 => (0..=255u8).collect(),
        _ => (0..sigma as u32).map(|c| c as u8).collect(),
    }
}

pub fn random_text(rng: &mut SplitMix64, n: usize, sigma: usize) -> Vec<u8> {
    let alpha = alphabet(sigma);
    (0..n)
        .map(|_| alpha[rng.below(alpha.len() as u64) as usize])
        .collect()
}

/// Text with long repeats, so that patterns occur many times.
pub fn repetitive_text(rng: &mut SplitMix64, n: usize, sigma: usize) -> Vec<u8> {
    let seed_len = 1 + rng.below(64) as usize;
    let seed = random_text(rng, seed_len, sigma);
    let alpha = alphabet(sigma);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if rng.below(8) == 0 {
            out.push(alpha[rng.below(alpha.len() as u64) as usize]);
        } else {
            out.extend_from_slice(&seed);
        }
    }
    out.truncate(n);
    out
}

pub fn rng_range(rng: &mut SplitMix64, lo: usize, hi: usize) -> usize {
    lo + rng.below((hi - lo + 1) as u64) as usize
}

/// Patterns of length `m`: half extracted from `text`, half random.
pub fn patterns(rng: &mut SplitMix64, text: &[u8], m: usize, count: usize, sigma: usize) -> Vec<Vec<u8>> {
    (0..count)
        .map(|k| {
            if k % 2 == 0 && m <= text.len() {
                let s = rng.below((text.len() - m + 1) as u64) as usize;
                text[s..s + m].to_vec()
            } else {
                random_text(rng, m, sigma)
            }
        })
        .collect()
}
