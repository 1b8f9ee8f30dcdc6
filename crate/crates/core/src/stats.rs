//! Corpus statistics: fraction of sampled suffixes per `(q, p)` and number of
//! distinct q-grams.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::minimizer::{sampled_positions, SamplingParams};
use crate::suffix_sort::{build_full_sa, FullSuffixArray};

/// `(q, p)` rows of the standard sampling-ratio grid.
pub const SAMPLING_GRID: &[(usize, usize)] = &[
    (4, 1),
    (4, 2),
    (5, 1),
    (5, 2),
    (6, 1),
    (6, 2),
    (8, 1),
    (8, 2),
    (10, 1),
    (10, 2),
    (10, 3),
    (12, 1),
    (12, 2),
    (12, 3),
    (16, 1),
    (16, 2),
    (16, 3),
    (24, 2),
    (24, 3),
    (32, 2),
    (32, 3),
    (40, 2),
    (40, 3),
    (64, 2),
    (64, 3),
    (64, 4),
    (80, 2),
    (80, 3),
    (80, 4),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingRow {
    pub q: usize,
    pub p: usize,
    pub sampled: usize,
    pub n: usize,
    pub percent: f64,
}

/// `100 * n' / n` for the given parameters.
pub fn sampling_ratio(text: &[u8], params: SamplingParams) -> Result<f64> {
    sampling_row(text, params).map(|row| row.percent)
}

pub fn sampling_row(text: &[u8], params: SamplingParams) -> Result<SamplingRow> {
    let sampled = sampled_positions(text, params)?.len();
    Ok(SamplingRow {
        q: params.q(),
        p: params.p(),
        sampled,
        n: text.len(),
        percent: 100.0 * sampled as f64 / text.len() as f64,
    })
}

/// One row per parameter pair, evaluated in parallel, in input order.
pub fn sampling_report(text: &[u8], grid: &[SamplingParams]) -> Result<Vec<SamplingRow>> {
    grid.par_iter().map(|&p| sampling_row(text, p)).collect()
}

pub fn write_sampling_csv<W: Write>(mut out: W, rows: &[SamplingRow]) -> io::Result<()> {
    writeln!(out, "q,p,n_sampled,n,percent")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{:.4}", r.q, r.p, r.sampled, r.n, r.percent)?;
    }
    Ok(())
}

/// Counts distinct q-grams of one text for several `q` from a single suffix
/// array.
pub struct QgramCounter<'t> {
    text: &'t [u8],
    sa: FullSuffixArray,
}

impl<'t> QgramCounter<'t> {
    pub fn new(text: &'t [u8]) -> Result<Self> {
        Ok(QgramCounter {
            text,
            sa: build_full_sa(text)?,
        })
    }

    /// Ranks whose suffix has length `>= q` and whose first `q` bytes differ
    /// from the previous such suffix.
    pub fn count(&self, q: usize) -> Result<usize> {
        let n = self.text.len();
        if q == 0 || q > n {
            return Err(Error::InvalidParams(format!("q must be in 1..={n}, got {q}")));
        }
        let mut prev: Option<&[u8]> = None;
        let mut distinct = 0;
        for &s in self.sa.as_slice() {
            let Some(gram) = self.text.get(s as usize..s as usize + q) else {
                continue;
            };
            if prev != Some(gram) {
                distinct += 1;
                prev = Some(gram);
            }
        }
        Ok(distinct)
    }
}

pub fn distinct_qgrams(text: &[u8], q: usize) -> Result<usize> {
    if q == 0 || q > text.len() {
        return Err(Error::InvalidParams(format!(
            "q must be in 1..={}, got {q}",
            text.len()
        )));
    }
    QgramCounter::new(text)?.count(q)
}

pub fn write_qgram_csv<W: Write>(mut out: W, rows: &[(usize, usize)]) -> io::Result<()> {
    writeln!(out, "q,count")?;
    for (q, count) in rows {
        writeln!(out, "{q},{count}")?;
    }
    Ok(())
}
