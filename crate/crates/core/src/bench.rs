//! Count-query benchmark over patterns drawn from the indexed text.
//!
//! Patterns are taken at uniformly random starts in `0..=n - m`, drawn from a
//! SplitMix64 generator: `state += 0x9e3779b97f4a7c15`, then the standard
//! xor-shift-multiply finalizer; a start is `(x * (n - m + 1)) >> 64` on the
//! 128-bit product.

use std::borrow::Cow;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::baselines::SparseSuffixArray;
use crate::delta::{annotate, count2, locate2, DeltaAnnotation};
use crate::error::{Error, Result};
use crate::hash::{build_table, count_hash, locate_hash, min_pattern_len as hash_min_len, PrefixRangeTable};
use crate::persist::{IndexBundle, HEADER_LEN};
use crate::phrase::PhraseIndex;
use crate::samsami::SamsamiIndex;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }
}

/// `count` substrings of length `m` at seeded random starts.
pub fn extract_patterns(text: &[u8], m: usize, count: usize, seed: u64) -> Result<Vec<Vec<u8>>> {
    if m == 0 || count == 0 {
        return Err(Error::InvalidParams("pattern length and count must be positive".into()));
    }
    if m > text.len() {
        return Err(Error::TextTooShort {
            len: text.len(),
            required: m,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let starts = (text.len() - m + 1) as u64;
    Ok((0..count)
        .map(|_| {
            let s = rng.below(starts) as usize;
            text[s..s + m].to_vec()
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Samsami,
    Samsami2,
    SamsamiHash,
    Phrase,
    Spasa,
    PlainSa,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Samsami,
        Variant::Samsami2,
        Variant::SamsamiHash,
        Variant::Phrase,
        Variant::Spasa,
        Variant::PlainSa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Samsami => "samsami",
            Variant::Samsami2 => "samsami2",
            Variant::SamsamiHash => "samsami-hash",
            Variant::Phrase => "phrase",
            Variant::Spasa => "spasa",
            Variant::PlainSa => "sa",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown variant {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub m: usize,
    pub patterns: usize,
    pub seed: u64,
    pub variants: Vec<Variant>,
    /// Prefix length for the hash variant when the index has no table.
    pub k: Option<usize>,
    /// Sampling step of the sparse suffix array.
    pub step: usize,
    /// Workers sharing the pattern set; 1 runs sequentially.
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub variant: Variant,
    pub q: usize,
    pub p: usize,
    pub k: usize,
    pub m: usize,
    pub patterns: usize,
    pub mean_us: f64,
    pub index_bytes: u64,
    /// Index plus text bytes over text bytes; the phrase variant needs no text.
    pub space_ratio: f64,
    pub occurrences: u64,
}

/// One searchable structure, borrowed from the bundle or built on demand.
pub enum Searcher<'a, 't> {
    Samsami(&'a SamsamiIndex<'t>),
    Samsami2(&'a SamsamiIndex<'t>, Cow<'a, DeltaAnnotation>),
    Hash(&'a SamsamiIndex<'t>, Cow<'a, PrefixRangeTable>),
    Phrase(Cow<'a, PhraseIndex>),
    Sparse(SparseSuffixArray<'t>),
}

impl<'a, 't> Searcher<'a, 't> {
    /// The searcher for `variant`. Structures missing from `bundle` are
    /// built in memory; `k` overrides the stored hash table's prefix length.
    pub fn new(bundle: &'a IndexBundle<'t>, variant: Variant, k: Option<usize>, step: usize) -> Result<Self> {
        Ok(searcher(bundle, variant, k, step)?.0)
    }

    pub fn min_pattern_len(&self) -> usize {
        match self {
            Searcher::Samsami(idx) | Searcher::Samsami2(idx, _) => idx.min_pattern_len(),
            Searcher::Hash(idx, table) => hash_min_len(idx, table),
            Searcher::Phrase(ph) => ph.min_pattern_len(),
            Searcher::Sparse(sa) => sa.min_pattern_len(),
        }
    }

    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        match self {
            Searcher::Samsami(idx) => idx.locate(pattern),
            Searcher::Samsami2(idx, ann) => locate2(idx, ann, pattern),
            Searcher::Hash(idx, table) => locate_hash(idx, table, pattern),
            Searcher::Phrase(ph) => ph.locate(pattern),
            Searcher::Sparse(sa) => sa.locate(pattern),
        }
    }

    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        match self {
            Searcher::Samsami(idx) => idx.count(pattern),
            Searcher::Samsami2(idx, ann) => count2(idx, ann, pattern),
            Searcher::Hash(idx, table) => count_hash(idx, table, pattern),
            Searcher::Phrase(ph) => ph.count(pattern),
            Searcher::Sparse(sa) => sa.count(pattern),
        }
    }
}

/// The searcher for `variant`, its serialized size and its hash prefix length.
fn searcher<'a, 't>(
    bundle: &'a IndexBundle<'t>,
    variant: Variant,
    k: Option<usize>,
    step: usize,
) -> Result<(Searcher<'a, 't>, u64, usize)> {
    let idx = &bundle.index;
    let base = (HEADER_LEN + 4 * idx.sampled_len()) as u64;
    Ok(match variant {
        Variant::Samsami => (Searcher::Samsami(idx), base, 0),
        Variant::Samsami2 => {
            let ann = match &bundle.delta {
                Some(a) => Cow::Borrowed(a),
                None => Cow::Owned(annotate(idx)?),
            };
            (Searcher::Samsami2(idx, ann), base, 0)
        }
        Variant::SamsamiHash => {
            let table = match (&bundle.hash, k) {
                (Some(t), Some(k)) if t.k() == k => Cow::Borrowed(t),
                (Some(t), None) => Cow::Borrowed(t),
                (_, Some(k)) => Cow::Owned(build_table(idx, k)?),
                (None, None) => {
                    return Err(Error::InvalidParams(
                        "samsami-hash needs --k or an index with a hash table".into(),
                    ))
                }
            };
            let (k, cap) = (table.k(), table.capacity() as u64);
            (Searcher::Hash(idx, table), base + 8 + 8 * cap, k)
        }
        Variant::Phrase => {
            let ph = match &bundle.phrase {
                Some(p) => Cow::Borrowed(p),
                None => Cow::Owned(PhraseIndex::build(idx.text(), idx.params())?),
            };
            let bytes = HEADER_LEN as u64
                + 8
                + ph.dictionary().phrases().map(|b| 4 + b.len() as u64).sum::<u64>()
                + 8
                + ph.encoded().stream().len() as u64
                + 8
                + 4 * ph.order().len() as u64;
            (Searcher::Phrase(ph), bytes, 0)
        }
        Variant::Spasa => {
            let sa = SparseSuffixArray::build(idx.text(), step)?;
            let bytes = 4 * sa.sa().len() as u64;
            (Searcher::Sparse(sa), bytes, 0)
        }
        Variant::PlainSa => {
            let sa = SparseSuffixArray::plain(idx.text())?;
            let bytes = 4 * sa.sa().len() as u64;
            (Searcher::Sparse(sa), bytes, 0)
        }
    })
}

fn timed_counts(engine: &Searcher<'_, '_>, patterns: &[Vec<u8>]) -> Result<(Vec<usize>, Duration)> {
    let start = Instant::now();
    let counts = patterns
        .iter()
        .map(|p| engine.count(p))
        .collect::<Result<Vec<_>>>()?;
    Ok((counts, start.elapsed()))
}

/// Counts for every pattern and the summed query time over all workers.
fn run_engine(
    engine: &Searcher<'_, '_>,
    patterns: &[Vec<u8>],
    threads: usize,
) -> Result<(Vec<usize>, Duration)> {
    if threads <= 1 || patterns.len() < 2 {
        return timed_counts(engine, patterns);
    }
    let chunk = patterns.len().div_ceil(threads);
    let shards: Vec<Result<(Vec<usize>, Duration)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = patterns
            .chunks(chunk)
            .map(|shard| scope.spawn(move || timed_counts(engine, shard)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("benchmark worker panicked"))
            .collect()
    });
    let mut counts = Vec::with_capacity(patterns.len());
    let mut total = Duration::ZERO;
    for shard in shards {
        let (c, t) = shard?;
        counts.extend(c);
        total += t;
    }
    Ok((counts, total))
}

/// Runs every configured variant over the same pattern set and checks that
/// all of them agree on every count.
pub fn run_bench(bundle: &IndexBundle<'_>, config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let text = bundle.index.text();
    let patterns = extract_patterns(text, config.m, config.patterns, config.seed)?;
    let params = bundle.index.params();
    let n = text.len() as f64;

    let mut rows = Vec::new();
    let mut reference: Option<(Variant, Vec<usize>)> = None;
    for &variant in &config.variants {
        let (engine, index_bytes, k) = searcher(bundle, variant, config.k, config.step)?;
        let (counts, elapsed) = run_engine(&engine, &patterns, config.threads)?;
        match &reference {
            None => reference = Some((variant, counts.clone())),
            Some((first, expected)) => {
                if let Some(i) = (0..counts.len()).find(|&i| counts[i] != expected[i]) {
                    return Err(Error::CountMismatch {
                        pattern: i,
                        left: first.name(),
                        left_count: expected[i],
                        right: variant.name(),
                        right_count: counts[i],
                    });
                }
            }
        }
        let text_bytes = if variant == Variant::Phrase { 0.0 } else { n };
        rows.push(BenchRow {
            variant,
            q: params.q(),
            p: params.p(),
            k,
            m: config.m,
            patterns: patterns.len(),
            mean_us: elapsed.as_secs_f64() * 1e6 / patterns.len() as f64,
            index_bytes,
            space_ratio: (index_bytes as f64 + text_bytes) / n,
            occurrences: counts.iter().map(|&c| c as u64).sum(),
        });
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(mut out: W, rows: &[BenchRow]) -> io::Result<()> {
    writeln!(
        out,
        "variant,q,p,k,m,patterns,mean_us,index_bytes,space_ratio,occurrences"
    )?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{:.4},{},{:.4},{}",
            r.variant, r.q, r.p, r.k, r.m, r.patterns, r.mean_us, r.index_bytes, r.space_ratio, r.occurrences
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimizer::SamplingParams;
    use crate::persist::BuildOptions;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 1234567, as published with the generator
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
        assert_eq!(rng.next_u64(), 9817491932198370423);
    }

    #[test]
    fn below_stays_in_range() {
        let mut rng = SplitMix64::new(7);
        assert!((0..1000).all(|_| rng.below(13) < 13));
    }

    #[test]
    fn patterns_are_deterministic() {
        let text = b"the quick brown fox jumps over the lazy dog";
        let a = extract_patterns(text, 8, 50, 42).unwrap();
        let b = extract_patterns(text, 8, 50, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.len() == 8 && text.windows(8).any(|w| w == &p[..])));
        assert_ne!(a, extract_patterns(text, 8, 50, 43).unwrap());
        assert!(extract_patterns(text, 100, 1, 1).is_err());
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("nope".parse::<Variant>().is_err());
    }

    #[test]
    fn all_variants_agree() {
        let text: Vec<u8> = b"abracadabra simsalabim ".repeat(40);
        let params = SamplingParams::new(5, 2).unwrap();
        let bundle = IndexBundle::build(&text, BuildOptions::new(params)).unwrap();
        let config = BenchConfig {
            m: 12,
            patterns: 200,
            seed: 9,
            variants: Variant::ALL.to_vec(),
            k: Some(3),
            step: 4,
            threads: 2,
        };
        let rows = run_bench(&bundle, &config).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.occurrences == rows[0].occurrences));
        assert!(rows[0].occurrences >= 200);
        let again = run_bench(&bundle, &config).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.occurrences).collect::<Vec<_>>(),
            again.iter().map(|r| r.occurrences).collect::<Vec<_>>()
        );
    }
}
