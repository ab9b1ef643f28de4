//! Linking maximal Δ-blocks into chains and reading off their stretches.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;

use crate::blocks::BlockOccurrence;
use crate::linalg::Vector;
use crate::word::{FixedPointStream, Letter, WordStream};

/// Boundary drift between a block and the image of its predecessor.
///
/// `sign > 0`: the block grew past the image and `word` lies inside it;
/// `sign < 0`: it shrank and `word` borders it; `sign == 0`: stationary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stretch {
    pub sign: i8,
    pub word: Vec<Letter>,
}

impl Stretch {
    fn empty() -> Stretch {
        Stretch {
            sign: 0,
            word: Vec::new(),
        }
    }

    pub fn signed_len(&self) -> i64 {
        self.sign as i64 * self.word.len() as i64
    }

    pub fn growth(&self) -> &'static str {
        match self.sign {
            1 => "growing",
            -1 => "shrinking",
            _ => "stationary",
        }
    }
}

/// Data of one step `u_k -> u_{k+1}` of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StretchRecord {
    pub left: Stretch,
    pub right: Stretch,
    /// Letter whose image holds the non-Δ letter just left of `u_{k+1}`.
    pub left_pivot: Letter,
    /// Letter whose image holds the non-Δ letter just right of `u_{k+1}`.
    pub right_pivot: Letter,
}

/// A chain `u_0, u_1, ...` of maximal Δ-blocks with `h(core(u_k)) ⊑ u_{k+1}`.
#[derive(Clone, Debug)]
pub struct DeltaChain {
    pub blocks: Vec<BlockOccurrence>,
    /// `steps[k]` describes `blocks[k] -> blocks[k+1]`.
    pub steps: Vec<StretchRecord>,
    /// Letters around the inverse image of the root; the deduplication key.
    pub signature: Vec<Letter>,
}

impl DeltaChain {
    pub fn root(&self) -> &BlockOccurrence {
        &self.blocks[0]
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LinkConfig {
    /// Roots are taken among blocks starting below this position.
    pub root_horizon: usize,
    /// Blocks were scanned up to this position.
    pub follow_horizon: usize,
}

/// Blocks long enough and far enough to take part in chains: `i > M`, `|u| > M^2`.
pub fn qualifies(b: &BlockOccurrence, max_image_len: usize) -> bool {
    b.i > max_image_len && b.len() > max_image_len * max_image_len
}

/// The block containing the image of the core `i+M ..= j-M` of `b`.
fn successor(
    stream: &mut FixedPointStream,
    blocks: &[BlockOccurrence],
    b: &BlockOccurrence,
    m: usize,
    horizon: usize,
) -> Option<usize> {
    let (s, _) = stream.image_interval(b.i + m);
    let (_, t) = stream.image_interval(b.j - m);
    if t + 1 >= horizon {
        return None;
    }
    let idx = blocks.partition_point(|c| c.i <= s);
    if idx == 0 {
        return None;
    }
    let c = &blocks[idx - 1];
    (c.j >= t).then_some(idx - 1)
}

fn stretch_record(stream: &mut FixedPointStream, from: &BlockOccurrence, to: &BlockOccurrence) -> StretchRecord {
    let (r, _) = stream.image_interval(from.i);
    let (_, n) = stream.image_interval(from.j);
    let read = |stream: &mut FixedPointStream, a: usize, b: usize| -> Vec<Letter> {
        (a..=b)
            .map(|p| stream.letter(p).expect("fixed points are infinite"))
            .collect()
    };
    let left = if to.i < r {
        Stretch {
            sign: 1,
            word: read(stream, to.i, r - 1),
        }
    } else if to.i > r {
        Stretch {
            sign: -1,
            word: read(stream, r, to.i - 1),
        }
    } else {
        Stretch::empty()
    };
    let right = if to.j > n {
        Stretch {
            sign: 1,
            word: read(stream, n + 1, to.j),
        }
    } else if to.j < n {
        Stretch {
            sign: -1,
            word: read(stream, to.j + 1, n),
        }
    } else {
        Stretch::empty()
    };
    let lq = stream.preimage_of(to.i - 1);
    let rq = stream.preimage_of(to.j + 1);
    let left_pivot = stream.letter(lq).expect("infinite");
    let right_pivot = stream.letter(rq).expect("infinite");
    StretchRecord {
        left,
        right,
        left_pivot,
        right_pivot,
    }
}

fn signature(stream: &mut FixedPointStream, root: &BlockOccurrence, m: usize) -> Vec<Letter> {
    let (a, b) = stream.inverse_image(root.i, root.j);
    let lo = a.saturating_sub(m);
    (lo..=b + m).map(|p| stream.letter(p).expect("infinite")).collect()
}

/// Partition qualifying blocks into chains, keeping one chain per signature
/// (the one with the smallest root).
///
/// `blocks` must be the maximal Δ-blocks of the fixed point of `stream`'s
/// morphism, in order, scanned up to `cfg.follow_horizon`.
pub fn link_blocks(stream: &mut FixedPointStream, blocks: &[BlockOccurrence], cfg: &LinkConfig) -> Vec<DeltaChain> {
    let m = stream.morphism().max_image_len();
    let mut next: HashMap<usize, usize> = HashMap::new();
    let mut targets: HashSet<usize> = HashSet::new();
    for (idx, b) in blocks.iter().enumerate() {
        if !qualifies(b, m) {
            continue;
        }
        if let Some(s) = successor(stream, blocks, b, m, cfg.follow_horizon) {
            if qualifies(&blocks[s], m) {
                next.insert(idx, s);
                targets.insert(s);
            }
        }
    }
    let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut chains = Vec::new();
    for (idx, b) in blocks.iter().enumerate() {
        if b.i >= cfg.root_horizon {
            break;
        }
        if !qualifies(b, m) || targets.contains(&idx) {
            continue;
        }
        let sig = signature(stream, b, m);
        if !seen.insert(sig.clone()) {
            continue;
        }
        let mut members = vec![*b];
        let mut cur = idx;
        while let Some(&s) = next.get(&cur) {
            members.push(blocks[s]);
            cur = s;
        }
        let steps = members
            .windows(2)
            .map(|w| stretch_record(stream, &w[0], &w[1]))
            .collect();
        chains.push(DeltaChain {
            blocks: members,
            steps,
            signature: sig,
        });
    }
    chains
}

/// Eventual period of the step records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Periodicity {
    /// Records `steps[preperiod..]` repeat with `period`.
    pub preperiod: usize,
    pub period: usize,
}

/// Smallest period, then smallest preperiod, confirmed by at least two full
/// periods of observed steps.
pub fn analyze_stretches(chain: &DeltaChain, max_preperiod: usize, max_period: usize) -> Option<Periodicity> {
    let steps = &chain.steps;
    for period in 1..=max_period {
        for preperiod in 0..=max_preperiod {
            if steps.len() < preperiod + 2 * period {
                break;
            }
            let periodic = (preperiod..steps.len() - period).all(|k| steps[k] == steps[k + period]);
            if periodic {
                return Some(Periodicity { preperiod, period });
            }
        }
    }
    None
}

/// Parikh vectors of prefixes `w_0 ... w_{p-1}` for each requested `p`.
pub fn prefix_parikh<S: WordStream + ?Sized>(
    stream: &mut S,
    positions: &BTreeSet<usize>,
    n: usize,
) -> HashMap<usize, Vector<BigInt>> {
    let mut out = HashMap::with_capacity(positions.len());
    let mut counts = vec![0u64; n];
    let mut p = 0usize;
    for &target in positions {
        while p < target {
            let l = stream.letter(p).expect("prefix within the stream");
            counts[l.index()] += 1;
            p += 1;
        }
        out.insert(target, Vector(counts.iter().map(|&c| BigInt::from(c)).collect()));
    }
    out
}

/// Positional check of `h(core(u_k)) ⊑ u_{k+1} ⊑ h(w_{i-M+1} ... w_{j+M-1})`.
pub fn sandwich_holds(stream: &mut FixedPointStream, from: &BlockOccurrence, to: &BlockOccurrence) -> bool {
    let m = stream.morphism().max_image_len();
    let inner_lo = stream.image_interval(from.i + m).0;
    let inner_hi = stream.image_interval(from.j - m).1;
    let outer_lo = stream.image_interval(from.i + 1 - m).0;
    let outer_hi = stream.image_interval(from.j + m - 1).1;
    outer_lo <= to.i && to.i <= inner_lo && inner_hi <= to.j && to.j <= outer_hi
}
