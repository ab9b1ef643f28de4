mod common;

use common::{naive_delta_blocks, naive_prefix, naive_x_blocks, random_spec};
use morphblocks::blocks::{scan_delta_blocks, scan_x_blocks, ScanConfig, XBlockPattern};
use morphblocks::word::{prefix, LiteralStream};
use morphblocks::{Alphabet, Letter, WordStream};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const PREFIX: usize = 10_000;

#[test]
fn delta_scanner_matches_rescan() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let spec = random_spec(&mut rng, 5, 4);
        let w = naive_prefix(&spec, PREFIX);
        let n = spec.output_alphabet().len();
        let delta: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        if !delta.iter().any(|&b| b) {
            continue;
        }
        let mut stream = spec.stream();
        let got: Vec<(usize, usize)> = scan_delta_blocks(&mut stream, &delta, &ScanConfig::positions(PREFIX))
            .unwrap()
            .iter()
            .map(|b| (b.i, b.j))
            .collect();
        assert_eq!(got, naive_delta_blocks(&w, &delta), "{}", spec.morphism());
    }
}

#[test]
fn fixed_point_matches_expansion() {
    let mut rng = StdRng::seed_from_u64(0xf1ed);
    for _ in 0..50 {
        let spec = random_spec(&mut rng, 5, 4);
        let h = spec.morphism();
        let mut w = vec![spec.seed()];
        // every shorter h^k(a) is a prefix of the last one
        for _ in 0..5000 {
            let next = h.apply(&w).0;
            if next.len() > 100_000 {
                break;
            }
            w = next;
        }
        assert_eq!(prefix(&mut spec.fixed_point(), w.len()), w);
    }
}

#[test]
fn x_scanner_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..50 {
        let spec = random_spec(&mut rng, 4, 4);
        let w = naive_prefix(&spec, 3000);
        let n = spec.output_alphabet().len();
        let d = rng.gen_range(1..=3);
        let x: Vec<Letter> = (0..d).map(|_| Letter(rng.gen_range(0..n) as u16)).collect();
        let pattern = XBlockPattern::new(x.clone()).unwrap();
        let mut stream = LiteralStream::new(spec.output_alphabet().clone(), w.clone());
        let got: Vec<(usize, usize)> = scan_x_blocks(&mut stream, &pattern, &ScanConfig::positions(w.len()))
            .unwrap()
            .iter()
            .map(|b| (b.i, b.j))
            .collect();
        assert_eq!(got, naive_x_blocks(&w, &x));
    }
}

fn arb_word() -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..3, 1..400)
}

proptest! {
    #[test]
    fn delta_blocks_on_literals(w in arb_word(), mask in prop::collection::vec(any::<bool>(), 3)) {
        prop_assume!(mask.iter().any(|&b| b));
        let letters: Vec<Letter> = w.iter().map(|&i| Letter(i)).collect();
        let mut s = LiteralStream::new(Alphabet::digits(3), letters.clone());
        let got: Vec<(usize, usize)> = scan_delta_blocks(&mut s, &mask, &ScanConfig::positions(usize::MAX))
            .unwrap().iter().map(|b| (b.i, b.j)).collect();
        prop_assert_eq!(got, naive_delta_blocks(&letters, &mask));
    }

    #[test]
    fn x_blocks_on_literals(w in arb_word(), x in prop::collection::vec(0u16..3, 1..4)) {
        let letters: Vec<Letter> = w.iter().map(|&i| Letter(i)).collect();
        let x: Vec<Letter> = x.iter().map(|&i| Letter(i)).collect();
        let mut s = LiteralStream::new(Alphabet::digits(3), letters.clone());
        let got: Vec<(usize, usize)> = scan_x_blocks(&mut s, &XBlockPattern::new(x.clone()).unwrap(), &ScanConfig::positions(usize::MAX))
            .unwrap().iter().map(|b| (b.i, b.j)).collect();
        prop_assert_eq!(got, naive_x_blocks(&letters, &x));
    }

    #[test]
    fn blocks_are_maximal_and_ordered(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = random_spec(&mut rng, 4, 3);
        let n = spec.output_alphabet().len();
        let mut delta = vec![false; n];
        delta[0] = true;
        let w = naive_prefix(&spec, 2000);
        let mut stream = spec.stream();
        let blocks = scan_delta_blocks(&mut stream, &delta, &ScanConfig::positions(2000)).unwrap();
        for pair in blocks.windows(2) {
            prop_assert!(pair[0].j + 1 < pair[1].i);
        }
        for b in &blocks {
            prop_assert!(w[b.i..=b.j].iter().all(|l| delta[l.index()]));
            prop_assert!(b.i == 0 || !delta[w[b.i - 1].index()]);
            prop_assert!(!delta[w[b.j + 1].index()]);
        }
    }

    #[test]
    fn position_algebra(seed in any::<u64>(), q in 0usize..300) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = random_spec(&mut rng, 4, 4);
        let h = spec.morphism().clone();
        let mut fp = spec.fixed_point();
        let w = prefix(&mut fp, q + 1);
        // images of w_0 .. w_{q-1} fill exactly the positions before image(q)
        let (r, s) = fp.image_interval(q);
        let before: usize = w[..q].iter().map(|&l| h.rule(l).len()).sum();
        prop_assert_eq!(r, before);
        prop_assert_eq!(s + 1 - r, h.rule(w[q]).len());
        prop_assert_eq!(fp.inverse_image(r, s), (q, q));
        prop_assert_eq!(fp.preimage_of(s), q);
        prop_assert_eq!(prefix(&mut fp, s + 1)[r..=s].to_vec(), h.rule(w[q]).0.clone());
    }

    #[test]
    fn literal_stream_ends(text in "[01]{1,40}") {
        let mut s = LiteralStream::from_chars(&text).unwrap();
        prop_assert!(s.letter(text.len()).is_none());
        prop_assert_eq!(prefix(&mut s, 1000).len(), text.len());
    }
}
