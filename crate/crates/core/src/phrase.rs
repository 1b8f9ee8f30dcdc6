//! Text compressed into minimizer-delimited phrases, and pattern search over
//! the compressed form.
//!
//! The text is cut at every sampled position, each distinct phrase gets an id
//! ranked by frequency, and ids are written with a tagged variable-byte code
//! (7 data bits per byte, least significant group first, high bit set on the
//! last byte). Phrase-aligned suffixes of the code stream are sorted
//! bytewise.
//!
//! A pattern is cut at its own minimizer positions. Every such cut lines up
//! with a phrase boundary of any occurrence, and no further text boundary can
//! fall between the first and the last cut: windows hanging over the left end
//! of an occurrence can only pick positions up to the first cut, windows
//! hanging over the right end only from the last cut on. The complete phrases
//! between the first and last cut are encoded and searched; the bytes before
//! and after are checked by decoding neighbouring phrases.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::minimizer::{minimizer_positions, sampled_positions, SamplingParams};
use crate::search::{suffix_range_in, MatchRange};
use crate::suffix_sort::build_full_sa;

/// A phrase as `start..start + len` in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhraseSpan {
    pub start: usize,
    pub len: usize,
}

/// Phrases of `text`: an optional leading phrase before the first sampled
/// position, then one phrase per sampled position.
pub fn parse_phrases(text: &[u8], params: SamplingParams) -> Result<Vec<PhraseSpan>> {
    let sampled = sampled_positions(text, params)?;
    Ok(spans_from_boundaries(sampled.as_slice(), text.len()))
}

fn spans_from_boundaries(boundaries: &[u32], n: usize) -> Vec<PhraseSpan> {
    let mut spans = Vec::with_capacity(boundaries.len() + 1);
    let mut cuts: Vec<usize> = boundaries.iter().map(|&b| b as usize).collect();
    if cuts.first() != Some(&0) {
        cuts.insert(0, 0);
    }
    cuts.push(n);
    for w in cuts.windows(2) {
        spans.push(PhraseSpan {
            start: w[0],
            len: w[1] - w[0],
        });
    }
    spans
}

pub fn encode_codeword(mut id: u32, out: &mut Vec<u8>) {
    while id >= 0x80 {
        out.push((id & 0x7f) as u8);
        id >>= 7;
    }
    out.push(id as u8 | 0x80);
}

/// Decodes one codeword from the front of `bytes`, returning the id and the
/// number of bytes consumed.
pub fn decode_codeword(bytes: &[u8]) -> Result<(u32, usize)> {
    let mut id: u64 = 0;
    for (i, &b) in bytes.iter().enumerate().take(5) {
        id |= u64::from(b & 0x7f) << (7 * i);
        if b & 0x80 != 0 {
            if i > 0 && b & 0x7f == 0 {
                return Err(Error::CorruptEncoding("non-canonical codeword".into()));
            }
            let id = u32::try_from(id)
                .map_err(|_| Error::CorruptEncoding("codeword exceeds 32 bits".into()))?;
            return Ok((id, i + 1));
        }
    }
    Err(Error::CorruptEncoding(if bytes.len() < 5 {
        "unterminated codeword".into()
    } else {
        "codeword longer than 5 bytes".into()
    }))
}

/// Distinct phrases indexed by id; ids rank phrases by decreasing frequency,
/// ties broken by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhraseDictionary {
    phrases: Vec<Vec<u8>>,
    ids: HashMap<Vec<u8>, u32>,
}

impl PhraseDictionary {
    /// Dictionary from phrases listed in id order.
    pub fn from_phrases(phrases: Vec<Vec<u8>>) -> Result<Self> {
        let mut ids = HashMap::with_capacity(phrases.len());
        for (id, phrase) in phrases.iter().enumerate() {
            if phrase.is_empty() {
                return Err(Error::CorruptEncoding(format!("phrase {id} is empty")));
            }
            if ids.insert(phrase.clone(), id as u32).is_some() {
                return Err(Error::CorruptEncoding(format!("phrase {id} is a duplicate")));
            }
        }
        Ok(PhraseDictionary { phrases, ids })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    #[inline]
    pub fn phrase(&self, id: u32) -> Option<&[u8]> {
        self.phrases.get(id as usize).map(Vec::as_slice)
    }

    #[inline]
    pub fn id_of(&self, phrase: &[u8]) -> Option<u32> {
        self.ids.get(phrase).copied()
    }

    pub fn codeword(&self, id: u32) -> Vec<u8> {
        let mut out = Vec::with_capacity(5);
        encode_codeword(id, &mut out);
        out
    }

    pub fn phrases(&self) -> impl ExactSizeIterator<Item = &[u8]> {
        self.phrases.iter().map(Vec::as_slice)
    }

    /// Sum of the lengths of all distinct phrases.
    pub fn total_bytes(&self) -> usize {
        self.phrases.iter().map(Vec::len).sum()
    }
}

/// Codeword stream plus, per phrase, its stream offset and text position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedText {
    stream: Vec<u8>,
    offsets: Vec<usize>,
    positions: Vec<u32>,
    ids: Vec<u32>,
    text_len: usize,
}

impl EncodedText {
    /// Parses a codeword stream against `dict`.
    pub fn from_stream(dict: &PhraseDictionary, stream: Vec<u8>) -> Result<Self> {
        let mut offsets = Vec::new();
        let mut positions = Vec::new();
        let mut ids = Vec::new();
        let mut at = 0;
        let mut text_pos = 0usize;
        while at < stream.len() {
            let (id, used) = decode_codeword(&stream[at..])?;
            let phrase = dict.phrase(id).ok_or_else(|| {
                Error::CorruptEncoding(format!("id {id} outside a dictionary of {}", dict.len()))
            })?;
            offsets.push(at);
            positions.push(
                u32::try_from(text_pos)
                    .map_err(|_| Error::CorruptEncoding("decoded text too long".into()))?,
            );
            ids.push(id);
            at += used;
            text_pos += phrase.len();
        }
        Ok(EncodedText {
            stream,
            offsets,
            positions,
            ids,
            text_len: text_pos,
        })
    }

    #[inline]
    pub fn stream(&self) -> &[u8] {
        &self.stream
    }

    #[inline]
    pub fn phrase_count(&self) -> usize {
        self.ids.len()
    }

    #[inline]
    pub fn text_len(&self) -> usize {
        self.text_len
    }

    /// Byte offset in the stream and text position of phrase `t`.
    #[inline]
    pub fn start(&self, t: usize) -> (usize, usize) {
        (self.offsets[t], self.positions[t] as usize)
    }

    #[inline]
    pub fn phrase_id(&self, t: usize) -> u32 {
        self.ids[t]
    }
}

pub fn encode_text(text: &[u8], params: SamplingParams) -> Result<(PhraseDictionary, EncodedText)> {
    let spans = parse_phrases(text, params)?;
    let bytes = |s: &PhraseSpan| &text[s.start..s.start + s.len];

    let mut freq: HashMap<&[u8], (usize, usize)> = HashMap::new();
    for (t, span) in spans.iter().enumerate() {
        freq.entry(bytes(span)).or_insert((0, t)).0 += 1;
    }
    let mut ranked: Vec<(&[u8], usize, usize)> =
        freq.into_iter().map(|(p, (c, first))| (p, c, first)).collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
    let dict = PhraseDictionary::from_phrases(ranked.iter().map(|r| r.0.to_vec()).collect())?;

    let mut stream = Vec::with_capacity(spans.len() * 2);
    for span in &spans {
        // every phrase is in the dictionary by construction
        encode_codeword(dict.id_of(bytes(span)).unwrap_or(u32::MAX), &mut stream);
    }
    let enc = EncodedText::from_stream(&dict, stream)?;
    Ok((dict, enc))
}

pub fn decode_text(dict: &PhraseDictionary, enc: &EncodedText) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(enc.text_len);
    let mut at = 0;
    while at < enc.stream.len() {
        let (id, used) = decode_codeword(&enc.stream[at..])?;
        let phrase = dict
            .phrase(id)
            .ok_or_else(|| Error::CorruptEncoding(format!("unknown phrase id {id}")))?;
        out.extend_from_slice(phrase);
        at += used;
    }
    Ok(out)
}

/// Phrase-compressed text with its phrase-aligned sorted suffixes.
#[derive(Clone, Debug)]
pub struct PhraseIndex {
    params: SamplingParams,
    dict: PhraseDictionary,
    enc: EncodedText,
    order: Vec<u32>,
}

impl PhraseIndex {
    pub fn build(text: &[u8], params: SamplingParams) -> Result<Self> {
        crate::check_text_len(text.len())?;
        let (dict, enc) = encode_text(text, params)?;
        // the leading phrase, if any, is not a sampled suffix
        let first_sampled = usize::from(!starts_sampled(text, params));
        let mut marks = vec![false; enc.stream.len()];
        for t in first_sampled..enc.phrase_count() {
            marks[enc.offsets[t]] = true;
        }
        let mut phrase_at = vec![u32::MAX; enc.stream.len()];
        for (t, &off) in enc.offsets.iter().enumerate() {
            phrase_at[off] = t as u32;
        }
        let order = build_full_sa(&enc.stream)?
            .into_vec()
            .into_iter()
            .filter(|&o| marks[o as usize])
            .map(|o| phrase_at[o as usize])
            .collect();
        Ok(PhraseIndex {
            params,
            dict,
            enc,
            order,
        })
    }

    /// Reassembles an index from its serialized parts.
    pub fn from_parts(
        params: SamplingParams,
        dict: PhraseDictionary,
        stream: Vec<u8>,
        order: Vec<u32>,
    ) -> Result<Self> {
        let enc = EncodedText::from_stream(&dict, stream)?;
        let mut seen = vec![false; enc.phrase_count()];
        for &t in &order {
            let slot = seen.get_mut(t as usize).ok_or_else(|| {
                Error::CorruptEncoding(format!("suffix entry {t} outside {} phrases", enc.phrase_count()))
            })?;
            if std::mem::replace(slot, true) {
                return Err(Error::CorruptEncoding(format!("suffix entry {t} repeated")));
            }
        }
        Ok(PhraseIndex {
            params,
            dict,
            enc,
            order,
        })
    }

    #[inline]
    pub fn params(&self) -> SamplingParams {
        self.params
    }

    #[inline]
    pub fn dictionary(&self) -> &PhraseDictionary {
        &self.dict
    }

    #[inline]
    pub fn encoded(&self) -> &EncodedText {
        &self.enc
    }

    /// Phrase ordinals in suffix order of the code stream.
    #[inline]
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    #[inline]
    pub fn text_len(&self) -> usize {
        self.enc.text_len
    }

    /// `2q - p + 1`
    #[inline]
    pub fn min_pattern_len(&self) -> usize {
        2 * self.params.q() - self.params.p() + 1
    }

    /// Whether the distinct phrases take more bytes than the code stream.
    pub fn dictionary_dominates(&self) -> bool {
        self.dict.total_bytes() > self.enc.stream.len()
    }

    pub fn decode(&self) -> Result<Vec<u8>> {
        decode_text(&self.dict, &self.enc)
    }

    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        let mut hits = Vec::new();
        self.scan(pattern, |i| hits.push(i))?;
        hits.sort_unstable();
        Ok(hits)
    }

    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        let mut n = 0;
        self.scan(pattern, |_| n += 1)?;
        Ok(n)
    }

    fn scan(&self, pattern: &[u8], mut emit: impl FnMut(usize)) -> Result<()> {
        let required = self.min_pattern_len();
        if pattern.len() < required {
            return Err(Error::PatternTooShort {
                len: pattern.len(),
                required,
            });
        }
        let cuts = minimizer_positions(pattern, self.params);
        debug_assert!(cuts.len() >= 2);
        let first = cuts[0] as usize;
        let last = cuts[cuts.len() - 1] as usize;

        let mut query = Vec::new();
        for w in cuts.windows(2) {
            match self.dict.id_of(&pattern[w[0] as usize..w[1] as usize]) {
                Some(id) => encode_codeword(id, &mut query),
                None => return Ok(()),
            }
        }
        let phrases_spanned = cuts.len() - 1;

        let all = MatchRange {
            lo: 0,
            hi: self.order.len(),
        };
        let pos_at = |r: usize| self.enc.offsets[self.order[r] as usize];
        let range = suffix_range_in(&self.enc.stream, all, pos_at, &query);
        let head = &pattern[..first];
        let tail = &pattern[last..];
        for r in range.ranks() {
            let t = self.order[r] as usize;
            let pos = self.enc.positions[t] as usize;
            if pos < first {
                continue;
            }
            if self.matches_before(t, head) && self.matches_from(t + phrases_spanned, tail) {
                emit(pos - first);
            }
        }
        Ok(())
    }

    fn phrase_bytes(&self, t: usize) -> &[u8] {
        &self.dict.phrases[self.enc.ids[t] as usize]
    }

    /// Whether the text ending right before phrase `t` ends with `want`.
    fn matches_before(&self, mut t: usize, mut want: &[u8]) -> bool {
        while !want.is_empty() {
            if t == 0 {
                return false;
            }
            t -= 1;
            let phrase = self.phrase_bytes(t);
            let take = phrase.len().min(want.len());
            if phrase[phrase.len() - take..] != want[want.len() - take..] {
                return false;
            }
            want = &want[..want.len() - take];
        }
        true
    }

    /// Whether the text starting at phrase `t` begins with `want`.
    fn matches_from(&self, mut t: usize, mut want: &[u8]) -> bool {
        while !want.is_empty() {
            if t >= self.enc.phrase_count() {
                return false;
            }
            let phrase = self.phrase_bytes(t);
            let take = phrase.len().min(want.len());
            if phrase[..take] != want[..take] {
                return false;
            }
            want = &want[take..];
            t += 1;
        }
        true
    }
}

fn starts_sampled(text: &[u8], params: SamplingParams) -> bool {
    crate::minimizer::leftmost_min(&text[..params.q()], params.p()) == 0
}

pub fn encoded_locate(index: &PhraseIndex, pattern: &[u8]) -> Result<Vec<usize>> {
    index.locate(pattern)
}
