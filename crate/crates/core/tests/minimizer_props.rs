mod common;

use proptest::prelude::*;
use samsami::minimizer::MAX_DELTA;
use samsami::{prune_mask, sampled_positions, window_minimizer, SamplingParams};

use common::{brute_sampled, brute_window_min};

fn text_and_params() -> impl Strategy<Value = (Vec<u8>, usize, usize)> {
    prop_oneof![Just(2usize), Just(4), Just(26), Just(256)]
        .prop_flat_map(|sigma| {
            (
                prop::collection::vec(0..sigma as u32, 1..600),
                1usize..=16,
                1usize..=16,
            )
        })
        .prop_filter_map("needs 1 <= p <= q <= n", |(symbols, q, p)| {
            let text: Vec<u8> = symbols.into_iter().map(|c| c as u8).collect();
            (p <= q && q <= text.len()).then_some((text, q, p))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn sampled_matches_brute_force((text, q, p) in text_and_params()) {
        let params = SamplingParams::new(q, p).unwrap();
        let got = sampled_positions(&text, params).unwrap();
        let expected = brute_sampled(&text, q, p);
        prop_assert_eq!(got.as_slice(), expected.as_slice());
    }

    #[test]
    fn every_window_holds_a_sample((text, q, p) in text_and_params()) {
        let params = SamplingParams::new(q, p).unwrap();
        let sampled = sampled_positions(&text, params).unwrap();
        for w in 0..=text.len() - q {
            let hit = sampled.as_slice().iter().any(|&s| (w..=w + q - p).contains(&(s as usize)));
            prop_assert!(hit, "window {} has no sample", w);
        }
        prop_assert!(sampled.as_slice().iter().all(|&s| s as usize <= text.len() - p));
    }

    #[test]
    fn equal_windows_pick_equal_offsets((text, q, p) in text_and_params()) {
        let mut first_offset = std::collections::HashMap::new();
        for w in 0..=text.len() - q {
            let off = window_minimizer(&text[w..w + q], p).unwrap();
            let prev = *first_offset.entry(&text[w..w + q]).or_insert(off);
            prop_assert_eq!(prev, off);
        }
    }

    #[test]
    fn window_minimizer_matches_brute_force(
        window in prop::collection::vec(0u8..4, 1..40),
        p in 1usize..8,
    ) {
        prop_assume!(p <= window.len());
        prop_assert_eq!(window_minimizer(&window, p).unwrap(), brute_window_min(&window, p));
    }

    /// Whenever an occurrence's sampled anchor has a text-order predecessor
    /// inside the aligned pattern, the mask must allow that distance.
    #[test]
    fn prune_mask_is_sound(
        (text, q, p) in text_and_params(),
        extra in 0usize..12,
        start_seed in any::<u64>(),
    ) {
        let params = SamplingParams::new(q, p).unwrap();
        let m = (q + extra).min(text.len());
        let i = (start_seed % (text.len() - m + 1) as u64) as usize;
        let pattern = &text[i..i + m];
        let mask = prune_mask(pattern, params).unwrap();
        let j = mask.minimizer_offset();
        let sampled = brute_sampled(&text, q, p);
        let anchor = (i + j) as u32;
        let at = sampled.binary_search(&anchor);
        prop_assert!(at.is_ok(), "anchor not sampled");
        let at = at.unwrap();
        if at > 0 {
            let d = (anchor - sampled[at - 1]) as usize;
            if (1..=MAX_DELTA.min(j)).contains(&d) {
                prop_assert!(mask.is_possible(d), "distance {} wrongly ruled out", d);
            }
        }
    }
}
