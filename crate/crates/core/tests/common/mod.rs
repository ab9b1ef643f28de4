#![allow(dead_code)]

use morphblocks::{Alphabet, Coding, Letter, MorphicSpec, Morphism, Word};
use rand::Rng;

/// A prolongable spec on `letter 0` with up to `max_alpha` letters and
/// rules of length at most `max_len`, coded to two letters half the time.
pub fn random_spec(rng: &mut impl Rng, max_alpha: usize, max_len: usize) -> MorphicSpec {
    let n = rng.gen_range(1..=max_alpha);
    let mut rules = Vec::with_capacity(n);
    for a in 0..n {
        let len = rng.gen_range(if a == 0 { 2 } else { 1 }..=max_len);
        let mut w: Vec<Letter> = (0..len).map(|_| Letter(rng.gen_range(0..n) as u16)).collect();
        if a == 0 {
            w[0] = Letter(0);
        }
        rules.push(Word(w));
    }
    let h = Morphism::new(Alphabet::digits(n), rules).expect("valid rules");
    let coding = if rng.gen_bool(0.5) {
        let map = (0..n).map(|_| Letter(rng.gen_range(0..2))).collect();
        Some(Coding::new(n, Alphabet::digits(2), map).expect("valid coding"))
    } else {
        None
    };
    MorphicSpec::new(h, Letter(0), coding).expect("prolongable")
}

/// `h^k(seed)` expanded until it reaches `len` letters, then coded.
pub fn naive_prefix(spec: &MorphicSpec, len: usize) -> Vec<Letter> {
    let h = spec.morphism();
    let mut w = vec![spec.seed()];
    while w.len() < len {
        w = h.apply(&w).0;
    }
    w.truncate(len);
    match spec.coding() {
        Some(c) => w.iter().map(|&l| c.apply(l)).collect(),
        None => w,
    }
}

/// Maximal Δ-runs of a finite word that end before its last letter.
pub fn naive_delta_blocks(w: &[Letter], delta: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 0;
    while p < w.len() {
        if !delta[w[p].index()] {
            p += 1;
            continue;
        }
        let s = p;
        while p < w.len() && delta[w[p].index()] {
            p += 1;
        }
        if p < w.len() {
            out.push((s, p - 1));
        }
    }
    out
}

/// Maximal period-`d` runs containing `x`, closed before the end of `w`.
pub fn naive_x_blocks(w: &[Letter], x: &[Letter]) -> Vec<(usize, usize)> {
    let d = x.len();
    let n = w.len();
    let mut out = Vec::new();
    for s in 0..n {
        if s > 0 && s - 1 + d < n && w[s - 1] == w[s - 1 + d] {
            continue;
        }
        let mut e = s + d - 1;
        if e >= n {
            break;
        }
        while e + 1 < n && w[e + 1] == w[e + 1 - d] {
            e += 1;
        }
        if e + 1 == n {
            continue;
        }
        if (s..=e + 1 - d).any(|t| &w[t..t + d] == x) {
            out.push((s, e));
        }
    }
    out
}
