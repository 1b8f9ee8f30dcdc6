//! Full-text indexes over suffix arrays sampled with minimizers.
//!
//! [`SamsamiIndex`] keeps only the suffixes that start at the minimizer of
//! some length-`q` window and answers queries of length `>= q` with a single
//! binary search. Two refinements sit on top of it: a 4-bit distance
//! annotation that rejects some candidates without reading the text
//! ([`delta`]) and a prefix hash table that narrows the search range
//! ([`hash`]). [`phrase`] compresses the text into minimizer-delimited
//! phrases and searches the compressed form. [`baselines`] holds the naive
//! scan, the plain suffix array and the sparse suffix array.
//!
//! Positions are 0-based throughout.
//!
//! ```
//! use samsami::{annotate, locate2, SamplingParams, SamsamiIndex};
//!
//! let text = b"abracadabra";
//! let idx = SamsamiIndex::build(text, SamplingParams::new(4, 2)?)?;
//! assert_eq!(idx.locate(b"adab")?, vec![5]);
//!
//! let ann = annotate(&idx)?;
//! assert_eq!(locate2(&idx, &ann, b"abra")?, vec![0, 7]);
//! # Ok::<(), samsami::Error>(())
//! ```

pub mod baselines;
pub mod bench;
pub mod delta;
pub mod error;
pub mod hash;
pub mod minimizer;
pub mod persist;
pub mod phrase;
pub mod samsami;
pub mod search;
pub mod stats;
pub mod suffix_sort;

mod fnv;

pub use baselines::{naive_count, naive_locate, SparseSuffixArray};
pub use delta::{annotate, count2, locate2, DeltaAnnotation};
pub use error::{Error, Result};
pub use fnv::fnv1a64;
pub use hash::{build_table, count_hash, locate_hash, PrefixRangeTable};
pub use minimizer::{prune_mask, sampled_positions, window_minimizer, PruneMask, SampledPositions, SamplingParams};
pub use persist::{BuildOptions, IndexBundle, IndexFile};
pub use phrase::{decode_text, encode_text, encoded_locate, parse_phrases, PhraseDictionary, PhraseIndex};
pub use samsami::{QueryStats, SamsamiIndex};
pub use search::MatchRange;
pub use suffix_sort::{build_full_sa, extract_sampled, FullSuffixArray};

/// Longest text addressable with 32-bit offsets.
pub const MAX_TEXT_LEN: usize = u32::MAX as usize;

pub(crate) fn check_text_len(n: usize) -> Result<()> {
    if n > MAX_TEXT_LEN {
        return Err(Error::TextTooLarge {
            len: n,
            max: MAX_TEXT_LEN,
        });
    }
    Ok(())
}
