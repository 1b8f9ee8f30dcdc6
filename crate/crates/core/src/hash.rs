//! Open-addressing table from k-byte suffix prefixes to rank ranges of a
//! [`SamsamiIndex`], used to narrow the binary search.
//!
//! Slots hold only `(lo, hi)`; the key of an occupied slot is the first `k`
//! bytes of the suffix at rank `lo`, read back from the text on lookup.

use crate::error::{Error, Result};
use crate::fnv::fnv1a64;
use crate::samsami::{verify_candidates, QueryStats, SamsamiIndex};
use crate::search::MatchRange;

pub const EMPTY_SLOT: (u32, u32) = (u32::MAX, u32::MAX);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixRangeTable {
    k: usize,
    slots: Vec<(u32, u32)>,
    occupied: usize,
}

impl PrefixRangeTable {
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.slots.len()
    }

    #[inline]
    pub fn occupied(&self) -> usize {
        self.occupied
    }

    pub fn load_factor(&self) -> f64 {
        self.occupied as f64 / self.slots.len() as f64
    }

    #[inline]
    pub fn slots(&self) -> &[(u32, u32)] {
        &self.slots
    }

    /// Rebuilds a table from raw slots, as read from an index file.
    pub fn from_slots(k: usize, slots: Vec<(u32, u32)>, sampled_len: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::CorruptIndex("hash table with k = 0".into()));
        }
        if !slots.len().is_power_of_two() || slots.len() < 2 {
            return Err(Error::CorruptIndex(format!(
                "hash capacity {} is not a power of two >= 2",
                slots.len()
            )));
        }
        let mut occupied = 0;
        for &(lo, hi) in &slots {
            if (lo, hi) == EMPTY_SLOT {
                continue;
            }
            if lo >= hi || hi as usize > sampled_len {
                return Err(Error::CorruptIndex(format!(
                    "hash slot [{lo}, {hi}) outside {sampled_len} ranks"
                )));
            }
            occupied += 1;
        }
        if occupied * 2 > slots.len() {
            return Err(Error::CorruptIndex("hash table over half full".into()));
        }
        Ok(PrefixRangeTable { k, slots, occupied })
    }

    fn home(&self, key: &[u8]) -> usize {
        (fnv1a64(key) & (self.slots.len() as u64 - 1)) as usize
    }

    /// Rank range of suffixes starting with `key` (`key.len() == k`).
    pub fn lookup(&self, idx: &SamsamiIndex<'_>, key: &[u8]) -> Option<MatchRange> {
        debug_assert_eq!(key.len(), self.k);
        let text = idx.text();
        let mask = self.slots.len() - 1;
        let mut slot = self.home(key);
        loop {
            let (lo, hi) = self.slots[slot];
            if (lo, hi) == EMPTY_SLOT {
                return None;
            }
            let s = idx.sa()[lo as usize] as usize;
            if text.get(s..s + self.k) == Some(key) {
                return Some(MatchRange {
                    lo: lo as usize,
                    hi: hi as usize,
                });
            }
            slot = (slot + 1) & mask;
        }
    }
}

/// Groups of consecutive ranks whose suffixes share their first `k` bytes.
/// Suffixes shorter than `k` belong to no group.
fn prefix_groups(idx: &SamsamiIndex<'_>, k: usize) -> Vec<MatchRange> {
    let text = idx.text();
    let sa = idx.sa();
    let key = |r: usize| {
        let s = sa[r] as usize;
        text.get(s..s + k)
    };
    let mut groups: Vec<MatchRange> = Vec::new();
    let mut r = 0;
    while r < sa.len() {
        let Some(head) = key(r) else {
            r += 1;
            continue;
        };
        let lo = r;
        r += 1;
        while r < sa.len() && key(r) == Some(head) {
            r += 1;
        }
        groups.push(MatchRange { lo, hi: r });
    }
    groups
}

pub fn build_table(idx: &SamsamiIndex<'_>, k: usize) -> Result<PrefixRangeTable> {
    if k == 0 {
        return Err(Error::InvalidParams("prefix length k must be >= 1".into()));
    }
    let groups = prefix_groups(idx, k);
    let capacity = (2 * groups.len()).next_power_of_two().max(2);
    let mut table = PrefixRangeTable {
        k,
        slots: vec![EMPTY_SLOT; capacity],
        occupied: groups.len(),
    };
    let text = idx.text();
    let mask = capacity - 1;
    for g in groups {
        let s = idx.sa()[g.lo] as usize;
        let mut slot = table.home(&text[s..s + k]);
        while table.slots[slot] != EMPTY_SLOT {
            slot = (slot + 1) & mask;
        }
        table.slots[slot] = (g.lo as u32, g.hi as u32);
    }
    Ok(table)
}

/// Shortest pattern the hash variant accepts: `max(q - p + k, q)`.
pub fn min_pattern_len(idx: &SamsamiIndex<'_>, table: &PrefixRangeTable) -> usize {
    let params = idx.params();
    (params.q() - params.p() + table.k).max(params.q())
}

pub fn locate_hash(
    idx: &SamsamiIndex<'_>,
    table: &PrefixRangeTable,
    pattern: &[u8],
) -> Result<Vec<usize>> {
    locate_hash_with_stats(idx, table, pattern).map(|(hits, _)| hits)
}

pub fn locate_hash_with_stats(
    idx: &SamsamiIndex<'_>,
    table: &PrefixRangeTable,
    pattern: &[u8],
) -> Result<(Vec<usize>, QueryStats)> {
    let mut stats = QueryStats::default();
    let mut hits = Vec::new();
    scan(idx, table, pattern, &mut stats, |i| hits.push(i))?;
    hits.sort_unstable();
    Ok((hits, stats))
}

pub fn count_hash(idx: &SamsamiIndex<'_>, table: &PrefixRangeTable, pattern: &[u8]) -> Result<usize> {
    let mut stats = QueryStats::default();
    let mut n = 0;
    scan(idx, table, pattern, &mut stats, |_| n += 1)?;
    Ok(n)
}

fn scan(
    idx: &SamsamiIndex<'_>,
    table: &PrefixRangeTable,
    pattern: &[u8],
    stats: &mut QueryStats,
    emit: impl FnMut(usize),
) -> Result<()> {
    let required = min_pattern_len(idx, table);
    if pattern.len() < required {
        return Err(Error::PatternTooShort {
            len: pattern.len(),
            required,
        });
    }
    let j = idx.anchor(pattern)?;
    let Some(bucket) = table.lookup(idx, &pattern[j..j + table.k]) else {
        return Ok(());
    };
    let range = idx.suffix_range_within(bucket, &pattern[j..]);
    let sa = idx.sa();
    verify_candidates(
        idx.text(),
        pattern,
        j,
        range,
        |r| sa[r] as usize,
        |_| false,
        stats,
        emit,
    );
    Ok(())
}
