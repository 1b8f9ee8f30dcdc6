mod common;

use samsami::bench::SplitMix64;
use samsami::delta::locate2;
use samsami::hash::locate_hash;
use samsami::persist::FLAG_DELTA;
use samsami::{BuildOptions, Error, IndexBundle, IndexFile, SamplingParams};

use common::repetitive_text;

fn all_sections(params: SamplingParams) -> BuildOptions {
    BuildOptions {
        params,
        delta: true,
        hash_k: Some(3),
        phrase: true,
    }
}

#[test]
fn rebuild_is_byte_identical() {
    let mut rng = SplitMix64::new(5);
    let text = repetitive_text(&mut rng, 20_000, 4);
    let opts = all_sections(SamplingParams::new(8, 2).unwrap());
    let a = IndexBundle::build(&text, opts).unwrap().to_bytes().unwrap();
    let b = IndexBundle::build(&text, opts).unwrap().to_bytes().unwrap();
    assert_eq!(a, b);
}

#[test]
fn file_round_trip_preserves_results() {
    let mut rng = SplitMix64::new(11);
    let text = repetitive_text(&mut rng, 30_000, 26);
    let params = SamplingParams::new(6, 2).unwrap();
    let built = IndexBundle::build(&text, all_sections(params)).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.ssmi");
    let written = built.save_to_path(&path).unwrap();
    assert_eq!(written, std::fs::metadata(&path).unwrap().len());

    let file = IndexFile::load_path(&path).unwrap();
    assert_eq!(file.flags & FLAG_DELTA, FLAG_DELTA);
    let loaded = file.attach(&text).unwrap();

    let ann = loaded.delta.as_ref().unwrap();
    let table = loaded.hash.as_ref().unwrap();
    let phrase = loaded.phrase.as_ref().unwrap();
    for s in (0..text.len() - 20).step_by(997) {
        let pat = &text[s..s + 20];
        let expected = built.index.locate(pat).unwrap();
        assert_eq!(loaded.index.locate(pat).unwrap(), expected);
        assert_eq!(locate2(&loaded.index, ann, pat).unwrap(), expected);
        assert_eq!(locate_hash(&loaded.index, table, pat).unwrap(), expected);
        assert_eq!(phrase.locate(pat).unwrap(), expected);
    }
}

#[test]
fn plain_index_round_trips_without_optional_sections() {
    let text = b"abracadabra";
    let built = IndexBundle::build(text, BuildOptions::new(SamplingParams::new(4, 2).unwrap())).unwrap();
    let bytes = built.to_bytes().unwrap();
    let loaded = IndexFile::from_bytes(&bytes).unwrap().attach(text).unwrap();
    assert_eq!(loaded.index.sa(), &[7, 0, 3, 5]);
    assert_eq!(loaded.index.params(), built.index.params());
    assert!(loaded.delta.is_none() && loaded.hash.is_none() && loaded.phrase.is_none());
    assert_eq!(loaded.index.locate(b"adab").unwrap(), vec![5]);
}

#[test]
fn corrupt_phrase_section_is_rejected() {
    let text = b"abracadabra abracadabra";
    let mut opts = BuildOptions::new(SamplingParams::new(4, 2).unwrap());
    opts.phrase = true;
    let mut bytes = IndexBundle::build(text, opts).unwrap().to_bytes().unwrap();
    // last order entry points past the phrase list
    let at = bytes.len() - 4;
    bytes[at..].copy_from_slice(&u32::MAX.to_le_bytes());
    assert!(matches!(IndexFile::from_bytes(&bytes), Err(Error::CorruptIndex(_))));
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(
        IndexFile::load_path("/nonexistent/index.ssmi"),
        Err(Error::Io(_))
    ));
}
