//! On-disk index layout.
//!
//! ```text
//! offset  size        field
//! 0       4           magic "SSMI"
//! 4       u32         version (1)
//! 8       u32         flags: bit0 delta, bit1 hash table, bit2 phrase section
//! 12      u32 x 3     q, p, k (k = 0 without a hash table)
//! 24      u64         n, text length
//! 32      u64         n', sampled suffixes
//! 40      u64         FNV-1a 64 checksum of the text
//! 48      n' x u32    offsets, (delta << 28) | position
//! [bit1]  u64         capacity, then capacity x (lo u32, hi u32)
//! [bit2]  u64         phrase count, then per phrase: u32 length + bytes
//!         u64         code stream length, then the stream
//!         u64         sorted suffix count, then that many u32 phrase ordinals
//! ```
//!
//! All integers are little-endian. The text itself is not stored.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::delta::{annotate, DeltaAnnotation, MAX_TEXT_LEN as MAX_DELTA_TEXT_LEN, POSITION_MASK};
use crate::error::{Error, Result};
use crate::fnv::fnv1a64;
use crate::hash::{build_table, PrefixRangeTable};
use crate::minimizer::SamplingParams;
use crate::phrase::{PhraseDictionary, PhraseIndex};
use crate::samsami::SamsamiIndex;

pub const MAGIC: [u8; 4] = *b"SSMI";
pub const VERSION: u32 = 1;
pub const FLAG_DELTA: u32 = 1;
pub const FLAG_HASH: u32 = 1 << 1;
pub const FLAG_PHRASE: u32 = 1 << 2;
const KNOWN_FLAGS: u32 = FLAG_DELTA | FLAG_HASH | FLAG_PHRASE;
pub const HEADER_LEN: usize = 48;

pub fn text_checksum(text: &[u8]) -> u64 {
    fnv1a64(text)
}

/// Which optional structures to build next to the sampled suffix array.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub params: SamplingParams,
    pub delta: bool,
    pub hash_k: Option<usize>,
    pub phrase: bool,
}

impl BuildOptions {
    pub fn new(params: SamplingParams) -> Self {
        BuildOptions {
            params,
            delta: false,
            hash_k: None,
            phrase: false,
        }
    }
}

/// A sampled suffix array with its optional companions, tied to a text.
#[derive(Clone, Debug)]
pub struct IndexBundle<'t> {
    pub index: SamsamiIndex<'t>,
    pub delta: Option<DeltaAnnotation>,
    pub hash: Option<PrefixRangeTable>,
    pub phrase: Option<PhraseIndex>,
}

impl<'t> IndexBundle<'t> {
    pub fn build(text: &'t [u8], opts: BuildOptions) -> Result<Self> {
        let index = SamsamiIndex::build(text, opts.params)?;
        let delta = opts.delta.then(|| annotate(&index)).transpose()?;
        let hash = opts.hash_k.map(|k| build_table(&index, k)).transpose()?;
        let phrase = opts
            .phrase
            .then(|| PhraseIndex::build(text, opts.params))
            .transpose()?;
        Ok(IndexBundle {
            index,
            delta,
            hash,
            phrase,
        })
    }

    pub fn flags(&self) -> u32 {
        let mut flags = 0;
        if self.delta.is_some() {
            flags |= FLAG_DELTA;
        }
        if self.hash.is_some() {
            flags |= FLAG_HASH;
        }
        if self.phrase.is_some() {
            flags |= FLAG_PHRASE;
        }
        flags
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let text = self.index.text();
        let n = text.len();
        if self.delta.is_some() && n > MAX_DELTA_TEXT_LEN {
            return Err(Error::TextTooLargeForDeltaVariant { len: n });
        }
        let params = self.index.params();
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * self.index.sampled_len());
        out.extend_from_slice(&MAGIC);
        put_u32(&mut out, VERSION);
        put_u32(&mut out, self.flags());
        put_u32(&mut out, params.q() as u32);
        put_u32(&mut out, params.p() as u32);
        put_u32(&mut out, self.hash.as_ref().map_or(0, |h| h.k() as u32));
        put_u64(&mut out, n as u64);
        put_u64(&mut out, self.index.sampled_len() as u64);
        put_u64(&mut out, text_checksum(text));

        match &self.delta {
            Some(ann) => ann.packed().iter().for_each(|&w| put_u32(&mut out, w)),
            None => self.index.sa().iter().for_each(|&s| put_u32(&mut out, s)),
        }

        if let Some(table) = &self.hash {
            put_u64(&mut out, table.capacity() as u64);
            for &(lo, hi) in table.slots() {
                put_u32(&mut out, lo);
                put_u32(&mut out, hi);
            }
        }

        if let Some(phrase) = &self.phrase {
            let dict = phrase.dictionary();
            put_u64(&mut out, dict.len() as u64);
            for bytes in dict.phrases() {
                put_u32(&mut out, bytes.len() as u32);
                out.extend_from_slice(bytes);
            }
            let stream = phrase.encoded().stream();
            put_u64(&mut out, stream.len() as u64);
            out.extend_from_slice(stream);
            put_u64(&mut out, phrase.order().len() as u64);
            phrase.order().iter().for_each(|&t| put_u32(&mut out, t));
        }
        Ok(out)
    }

    /// Writes the index and returns the number of bytes written.
    pub fn save<W: Write>(&self, mut dest: W) -> Result<u64> {
        let bytes = self.to_bytes()?;
        dest.write_all(&bytes)?;
        dest.flush()?;
        Ok(bytes.len() as u64)
    }

    pub fn save_to_path(&self, path: impl AsRef<Path>) -> Result<u64> {
        let file = fs::File::create(path)?;
        self.save(std::io::BufWriter::new(file))
    }
}

/// A parsed index file, not yet bound to its text.
#[derive(Clone, Debug)]
pub struct IndexFile {
    pub params: SamplingParams,
    pub flags: u32,
    pub text_len: u64,
    pub text_checksum: u64,
    /// Raw offset words as stored.
    pub offsets: Vec<u32>,
    pub hash: Option<PrefixRangeTable>,
    pub phrase: Option<PhraseIndex>,
}

impl IndexFile {
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, at: 0 };
        if bytes.len() < 8 {
            return Err(Error::UnsupportedFormat("file too short for a header".into()));
        }
        if r.take(4)? != MAGIC {
            return Err(Error::UnsupportedFormat("bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::UnsupportedFormat(format!("version {version}")));
        }
        let flags = r.u32()?;
        if flags & !KNOWN_FLAGS != 0 {
            return Err(Error::UnsupportedFormat(format!("unknown flags {flags:#x}")));
        }
        let q = r.u32()? as usize;
        let p = r.u32()? as usize;
        let k = r.u32()? as usize;
        let n = r.u64()?;
        let sampled = r.u64()?;
        let text_checksum = r.u64()?;

        let params = SamplingParams::new(q, p)
            .map_err(|e| Error::CorruptIndex(format!("header parameters: {e}")))?;
        if (q as u64) > n {
            return Err(Error::CorruptIndex(format!("q = {q} exceeds n = {n}")));
        }
        if sampled > n - q as u64 + 1 {
            return Err(Error::CorruptIndex(format!("n' = {sampled} too large for n = {n}")));
        }
        let delta = flags & FLAG_DELTA != 0;
        if delta && n > MAX_DELTA_TEXT_LEN as u64 {
            return Err(Error::CorruptIndex("delta layout on a text above 2^28".into()));
        }
        if n > u64::from(u32::MAX) + 1 {
            return Err(Error::CorruptIndex(format!("n = {n} exceeds 32-bit offsets")));
        }

        let offsets = r.u32_vec(sampled)?;
        let pos_mask = if delta { POSITION_MASK } else { u32::MAX };
        if let Some(&bad) = offsets.iter().find(|&&w| u64::from(w & pos_mask) >= n) {
            return Err(Error::CorruptIndex(format!(
                "offset position {} outside a text of length {n}",
                bad & pos_mask
            )));
        }

        let hash = if flags & FLAG_HASH != 0 {
            let capacity = r.u64()?;
            let slots = r.pairs(capacity)?;
            Some(PrefixRangeTable::from_slots(k, slots, sampled as usize)?)
        } else {
            if k != 0 {
                return Err(Error::CorruptIndex("k set without a hash table".into()));
            }
            None
        };

        let phrase = if flags & FLAG_PHRASE != 0 {
            let count = r.u64()?;
            let mut phrases = Vec::new();
            for _ in 0..count {
                let len = r.u32()? as usize;
                phrases.push(r.take(len)?.to_vec());
            }
            let dict = PhraseDictionary::from_phrases(phrases)
                .map_err(|e| Error::CorruptIndex(e.to_string()))?;
            let stream_len = r.u64()?;
            let stream = r.take(to_len(stream_len)?)?.to_vec();
            let order_len = r.u64()?;
            let order = r.u32_vec(order_len)?;
            let phrase = PhraseIndex::from_parts(params, dict, stream, order)
                .map_err(|e| Error::CorruptIndex(e.to_string()))?;
            if phrase.text_len() as u64 != n {
                return Err(Error::CorruptIndex(format!(
                    "phrase section decodes to {} bytes, header says {n}",
                    phrase.text_len()
                )));
            }
            Some(phrase)
        } else {
            None
        };

        if r.at != bytes.len() {
            return Err(Error::CorruptIndex(format!(
                "{} trailing bytes",
                bytes.len() - r.at
            )));
        }
        Ok(IndexFile {
            params,
            flags,
            text_len: n,
            text_checksum,
            offsets,
            hash,
            phrase,
        })
    }

    pub fn load_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }

    /// Binds the index to `text` after checking its length and checksum.
    pub fn attach(self, text: &[u8]) -> Result<IndexBundle<'_>> {
        if text.len() as u64 != self.text_len || text_checksum(text) != self.text_checksum {
            return Err(Error::TextMismatch {
                expected_len: self.text_len,
                expected_checksum: self.text_checksum,
            });
        }
        let delta = self.flags & FLAG_DELTA != 0;
        let sa: Vec<u32> = if delta {
            self.offsets.iter().map(|&w| w & POSITION_MASK).collect()
        } else {
            self.offsets.clone()
        };
        let index = SamsamiIndex::from_parts(text, self.params, sa)?;
        let delta = delta.then(|| DeltaAnnotation::from_packed(self.offsets));
        Ok(IndexBundle {
            index,
            delta,
            hash: self.hash,
            phrase: self.phrase,
        })
    }
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn to_len(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::CorruptIndex(format!("length {v} too large")))
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .at
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| {
                Error::CorruptIndex(format!(
                    "truncated: need {len} bytes at offset {}, file has {}",
                    self.at,
                    self.bytes.len()
                ))
            })?;
        let s = &self.bytes[self.at..end];
        self.at = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u32_vec(&mut self, count: u64) -> Result<Vec<u32>> {
        let bytes = self.take(to_len(count)?.checked_mul(4).ok_or_else(|| {
            Error::CorruptIndex(format!("count {count} too large"))
        })?)?;
        Ok(bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect())
    }

    fn pairs(&mut self, count: u64) -> Result<Vec<(u32, u32)>> {
        let words = self.u32_vec(count.checked_mul(2).ok_or_else(|| {
            Error::CorruptIndex(format!("capacity {count} too large"))
        })?)?;
        Ok(words.chunks_exact(2).map(|c| (c[0], c[1])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(q: usize, p: usize) -> BuildOptions {
        BuildOptions::new(SamplingParams::new(q, p).unwrap())
    }

    #[test]
    fn header_layout() {
        let text = b"abracadabra";
        let bytes = IndexBundle::build(text, opts(4, 2)).unwrap().to_bytes().unwrap();
        assert_eq!(&bytes[..4], b"SSMI");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(bytes[8..12].try_into().unwrap()), 0);
        assert_eq!(u32::from_le_bytes(bytes[12..16].try_into().unwrap()), 4);
        assert_eq!(u32::from_le_bytes(bytes[16..20].try_into().unwrap()), 2);
        assert_eq!(u64::from_le_bytes(bytes[24..32].try_into().unwrap()), 11);
        assert_eq!(u64::from_le_bytes(bytes[32..40].try_into().unwrap()), 4);
        assert_eq!(bytes.len(), HEADER_LEN + 16);
    }

    #[test]
    fn delta_offsets_on_disk() {
        let text = b"abracadabra";
        let mut o = opts(4, 2);
        o.delta = true;
        let bytes = IndexBundle::build(text, o).unwrap().to_bytes().unwrap();
        let words: Vec<u32> = bytes[HEADER_LEN..]
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        assert_eq!(
            words,
            vec![(2 << 28) | 7, 0, (3 << 28) | 3, (2 << 28) | 5]
        );
    }

    #[test]
    fn round_trip_all_sections() {
        let text = b"abracadabra abracadabra cadabra";
        let mut o = opts(4, 2);
        o.delta = true;
        o.hash_k = Some(2);
        o.phrase = true;
        let built = IndexBundle::build(text, o).unwrap();
        let bytes = built.to_bytes().unwrap();
        let loaded = IndexFile::from_bytes(&bytes).unwrap().attach(text).unwrap();
        assert_eq!(loaded.index.sa(), built.index.sa());
        assert_eq!(loaded.delta, built.delta);
        assert_eq!(loaded.hash, built.hash);
        assert_eq!(loaded.phrase.as_ref().unwrap().order(), built.phrase.as_ref().unwrap().order());
        assert_eq!(loaded.to_bytes().unwrap(), bytes);
    }

    #[test]
    fn rejects_bad_magic_version_and_flags() {
        let text = b"abracadabra";
        let good = IndexBundle::build(text, opts(4, 2)).unwrap().to_bytes().unwrap();

        let mut bad = good.clone();
        bad[..4].copy_from_slice(b"XXXX");
        assert!(matches!(IndexFile::from_bytes(&bad), Err(Error::UnsupportedFormat(_))));

        let mut bad = good.clone();
        bad[4] = 2;
        assert!(matches!(IndexFile::from_bytes(&bad), Err(Error::UnsupportedFormat(_))));

        let mut bad = good.clone();
        bad[8] = 0x10;
        assert!(matches!(IndexFile::from_bytes(&bad), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn rejects_truncation_and_bad_positions() {
        let text = b"abracadabra";
        let good = IndexBundle::build(text, opts(4, 2)).unwrap().to_bytes().unwrap();
        for cut in [10, HEADER_LEN, good.len() - 1] {
            assert!(matches!(
                IndexFile::from_bytes(&good[..cut]),
                Err(Error::CorruptIndex(_))
            ));
        }
        let mut bad = good.clone();
        bad[HEADER_LEN..HEADER_LEN + 4].copy_from_slice(&11u32.to_le_bytes());
        assert!(matches!(IndexFile::from_bytes(&bad), Err(Error::CorruptIndex(_))));

        let mut long = good.clone();
        long.push(0);
        assert!(matches!(IndexFile::from_bytes(&long), Err(Error::CorruptIndex(_))));
    }

    #[test]
    fn rejects_wrong_text() {
        let text = b"abracadabra";
        let bytes = IndexBundle::build(text, opts(4, 2)).unwrap().to_bytes().unwrap();
        let file = IndexFile::from_bytes(&bytes).unwrap();
        assert!(matches!(
            file.attach(b"abracadabrx"),
            Err(Error::TextMismatch { expected_len: 11, .. })
        ));
    }
}
