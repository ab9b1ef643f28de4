//! Maximal Δ-blocks and x-blocks of a word stream.
//!
//! A Δ-block is a maximal run of letters from a subalphabet Δ. An x-block is
//! a maximal factor `x' x^n x''` (`x'` a proper suffix, `x''` a proper prefix
//! of `x`, `n >= 1`), found here as a maximal run of period `|x|` that
//! contains a full copy of `x`.

use std::collections::VecDeque;

use num_rational::BigRational;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format;
use crate::word::{Alphabet, Letter, Origin, WordStream};

/// Default cap on the length of a single block.
pub const DEFAULT_BLOCK_HORIZON: usize = 10_000_000;
/// Default cap on positions read while looking for `Count(k)` blocks.
pub const DEFAULT_POSITION_HORIZON: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Delta,
    /// `lead` is `|x'|`, the offset of the first full copy of `x`.
    X {
        lead: usize,
    },
}

/// Maximal block `w_i ... w_j` (inclusive), the `k`-th found (from 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockOccurrence {
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub kind: BlockKind,
}

impl BlockOccurrence {
    pub fn len(&self) -> usize {
        self.j - self.i + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `j/i`, undefined for a block at position 0.
    pub fn ratio(&self) -> Option<BigRational> {
        (self.i > 0).then(|| BigRational::new(self.j.into(), self.i.into()))
    }
}

impl Serialize for BlockOccurrence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lead = match self.kind {
            BlockKind::Delta => None,
            BlockKind::X { lead } => Some(lead),
        };
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("i", &self.i)?;
        map.serialize_entry("j", &self.j)?;
        if let Some(lead) = lead {
            map.serialize_entry("lead", &lead)?;
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanLimit {
    /// Stop after this many blocks.
    Count(usize),
    /// Read only positions below this bound.
    Positions(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub limit: ScanLimit,
    /// Longest admissible block; longer ones raise `InfiniteBlock`.
    pub block_horizon: usize,
    /// Positions read before a `Count` scan gives up with `HorizonExceeded`.
    pub position_horizon: usize,
}

impl ScanConfig {
    pub fn count(k: usize) -> ScanConfig {
        ScanConfig {
            limit: ScanLimit::Count(k),
            block_horizon: DEFAULT_BLOCK_HORIZON,
            position_horizon: DEFAULT_POSITION_HORIZON,
        }
    }

    pub fn positions(n: usize) -> ScanConfig {
        ScanConfig {
            limit: ScanLimit::Positions(n),
            block_horizon: DEFAULT_BLOCK_HORIZON,
            position_horizon: DEFAULT_POSITION_HORIZON,
        }
    }

    pub fn with_block_horizon(mut self, h: usize) -> ScanConfig {
        self.block_horizon = h;
        self
    }

    fn readable(&self, p: usize) -> bool {
        match self.limit {
            ScanLimit::Positions(n) => p < n,
            ScanLimit::Count(_) => true,
        }
    }
}

/// Membership mask for a list of symbols of `alphabet`.
pub fn letter_mask(alphabet: &Alphabet, symbols: &[&str]) -> Result<Vec<bool>> {
    let mut mask = vec![false; alphabet.len()];
    for s in symbols {
        let l = alphabet
            .letter(s)
            .ok_or_else(|| Error::InvalidParams(format!("symbol {s:?} not in alphabet")))?;
        mask[l.index()] = true;
    }
    Ok(mask)
}

/// Streaming scanner for maximal Δ-blocks.
pub struct DeltaScanner<'a, S: WordStream + ?Sized> {
    stream: &'a mut S,
    delta: Vec<bool>,
    cfg: ScanConfig,
    pos: usize,
    k: usize,
    done: bool,
}

impl<'a, S: WordStream + ?Sized> DeltaScanner<'a, S> {
    pub fn new(stream: &'a mut S, delta: Vec<bool>, cfg: ScanConfig) -> Result<Self> {
        if delta.len() != stream.alphabet().len() {
            return Err(Error::InvalidParams("Δ mask does not match the alphabet".into()));
        }
        if !delta.iter().any(|&b| b) {
            return Err(Error::InvalidParams("Δ is empty".into()));
        }
        Ok(DeltaScanner {
            stream,
            delta,
            cfg,
            pos: 0,
            k: 0,
            done: false,
        })
    }

    fn read(&mut self, p: usize) -> Option<Letter> {
        if self.cfg.readable(p) {
            self.stream.letter(p)
        } else {
            None
        }
    }

    fn next_block(&mut self) -> Result<Option<BlockOccurrence>> {
        if let ScanLimit::Count(k) = self.cfg.limit {
            if self.k >= k {
                return Ok(None);
            }
        }
        // skip the gap
        let start = loop {
            if matches!(self.cfg.limit, ScanLimit::Count(_)) && self.pos >= self.cfg.position_horizon {
                return Err(Error::HorizonExceeded(format!(
                    "found {} blocks within {} positions",
                    self.k, self.cfg.position_horizon
                )));
            }
            match self.read(self.pos) {
                None => return Ok(None),
                Some(l) if self.delta[l.index()] => break self.pos,
                Some(_) => self.pos += 1,
            }
        };
        let mut end = start;
        loop {
            if end - start + 1 > self.cfg.block_horizon {
                return Err(Error::InfiniteBlock {
                    start,
                    horizon: self.cfg.block_horizon,
                });
            }
            match self.read(end + 1) {
                // an open run at the end of the readable prefix is not maximal
                None => return Ok(None),
                Some(l) if self.delta[l.index()] => end += 1,
                Some(_) => break,
            }
        }
        self.pos = end + 2;
        let block = BlockOccurrence {
            k: self.k,
            i: start,
            j: end,
            kind: BlockKind::Delta,
        };
        self.k += 1;
        Ok(Some(block))
    }
}

impl<S: WordStream + ?Sized> Iterator for DeltaScanner<'_, S> {
    type Item = Result<BlockOccurrence>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.next_block() {
            Ok(Some(b)) => Some(Ok(b)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn scan_delta_blocks<S: WordStream + ?Sized>(
    stream: &mut S,
    delta: &[bool],
    cfg: &ScanConfig,
) -> Result<Vec<BlockOccurrence>> {
    DeltaScanner::new(stream, delta.to_vec(), *cfg)?.collect()
}

/// The word `x` with its length `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XBlockPattern {
    x: Vec<Letter>,
}

impl XBlockPattern {
    pub fn new(x: Vec<Letter>) -> Result<XBlockPattern> {
        if x.is_empty() {
            return Err(Error::PatternDegenerate("empty pattern".into()));
        }
        Ok(XBlockPattern { x })
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<XBlockPattern> {
        let w = alphabet
            .parse_word(text)
            .map_err(|e| Error::PatternDegenerate(e.to_string()))?;
        XBlockPattern::new(w.0)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.x
    }

    pub fn period(&self) -> usize {
        self.x.len()
    }
}

/// Streaming scanner for maximal x-blocks.
///
/// Runs of period `d` are delimited by the mismatch positions `p >= d` with
/// `w_p != w_{p-d}`: between consecutive mismatches `m1 < m2` lies the maximal
/// run `[m1 - d + 1, m2 - 1]`.
pub struct XScanner<'a, S: WordStream + ?Sized> {
    stream: &'a mut S,
    pattern: XBlockPattern,
    cfg: ScanConfig,
    run_start: usize,
    pos: usize,
    k: usize,
    done: bool,
}

impl<'a, S: WordStream + ?Sized> XScanner<'a, S> {
    pub fn new(stream: &'a mut S, pattern: XBlockPattern, cfg: ScanConfig) -> Result<Self> {
        if pattern.x.iter().any(|l| l.index() >= stream.alphabet().len()) {
            return Err(Error::PatternDegenerate("pattern letter outside the alphabet".into()));
        }
        let d = pattern.period();
        Ok(XScanner {
            stream,
            pattern,
            cfg,
            run_start: 0,
            pos: d,
            k: 0,
            done: false,
        })
    }

    fn read(&mut self, p: usize) -> Option<Letter> {
        if self.cfg.readable(p) {
            self.stream.letter(p)
        } else {
            None
        }
    }

    /// Offset of the first copy of `x` in the run `[i, j]`, if any.
    fn first_copy(&mut self, i: usize, j: usize) -> Option<usize> {
        let d = self.pattern.period();
        if j + 1 < i + d {
            return None;
        }
        // periodicity: a copy exists iff one starts in the first d offsets
        let last = (j + 1 - d).min(i + d - 1);
        (i..=last)
            .find(|&s| (0..d).all(|t| self.stream.letter(s + t) == Some(self.pattern.x[t])))
            .map(|s| s - i)
    }

    fn next_block(&mut self) -> Result<Option<BlockOccurrence>> {
        let d = self.pattern.period();
        loop {
            if let ScanLimit::Count(k) = self.cfg.limit {
                if self.k >= k {
                    return Ok(None);
                }
            }
            // extend the current run to its mismatch
            let mismatch = loop {
                if self.pos - self.run_start > self.cfg.block_horizon {
                    return Err(Error::InfiniteBlock {
                        start: self.run_start,
                        horizon: self.cfg.block_horizon,
                    });
                }
                if matches!(self.cfg.limit, ScanLimit::Count(_)) && self.pos >= self.cfg.position_horizon {
                    return Err(Error::HorizonExceeded(format!(
                        "found {} x-blocks within {} positions",
                        self.k, self.cfg.position_horizon
                    )));
                }
                let Some(cur) = self.read(self.pos) else {
                    return Ok(None);
                };
                let back = self.stream.letter(self.pos - d).expect("earlier position readable");
                if cur != back {
                    break self.pos;
                }
                self.pos += 1;
            };
            let (i, j) = (self.run_start, mismatch - 1);
            self.run_start = mismatch + 1 - d;
            self.pos = mismatch + 1;
            if let Some(lead) = self.first_copy(i, j) {
                let block = BlockOccurrence {
                    k: self.k,
                    i,
                    j,
                    kind: BlockKind::X { lead },
                };
                self.k += 1;
                return Ok(Some(block));
            }
        }
    }
}

impl<S: WordStream + ?Sized> Iterator for XScanner<'_, S> {
    type Item = Result<BlockOccurrence>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.next_block() {
            Ok(Some(b)) => Some(Ok(b)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn scan_x_blocks<S: WordStream + ?Sized>(
    stream: &mut S,
    pattern: &XBlockPattern,
    cfg: &ScanConfig,
) -> Result<Vec<BlockOccurrence>> {
    XScanner::new(stream, pattern.clone(), *cfg)?.collect()
}

/// Default tail window for limsup estimates.
pub const DEFAULT_WINDOW: usize = 8;

/// Exact statistics of `j_k / i_k` over blocks with `i_k >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioStats {
    /// All blocks seen, including one at position 0.
    pub count: usize,
    pub max: Option<BigRational>,
    /// Ordinal of the block realizing `max` (first occurrence).
    pub max_at: Option<usize>,
    pub window: usize,
    recent: VecDeque<BigRational>,
    /// Upper bound valid for every ratio, when known.
    pub bound: Option<BigRational>,
}

impl RatioStats {
    pub fn new(window: usize) -> RatioStats {
        RatioStats {
            count: 0,
            max: None,
            max_at: None,
            window: window.max(1),
            recent: VecDeque::new(),
            bound: None,
        }
    }

    pub fn from_blocks<'b>(blocks: impl IntoIterator<Item = &'b BlockOccurrence>, window: usize) -> RatioStats {
        let mut s = RatioStats::new(window);
        for b in blocks {
            s.push(b);
        }
        s
    }

    pub fn push(&mut self, b: &BlockOccurrence) {
        self.count += 1;
        let Some(r) = b.ratio() else {
            return;
        };
        if self.max.as_ref().is_none_or(|m| r > *m) {
            self.max = Some(r.clone());
            self.max_at = Some(b.k);
        }
        if self.recent.len() == self.window {
            self.recent.pop_front();
        }
        self.recent.push_back(r);
    }

    /// Max over the last `window` ratios.
    pub fn tail(&self) -> Option<BigRational> {
        self.recent.iter().max().cloned()
    }

    pub fn ratios_in_window(&self) -> impl Iterator<Item = &BigRational> {
        self.recent.iter()
    }
}

impl Serialize for RatioStats {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("count", &self.count)?;
        map.serialize_entry("max", &self.max.as_ref().map(format::rational))?;
        map.serialize_entry("max_decimal", &self.max.as_ref().map(format::decimal12))?;
        map.serialize_entry("max_at", &self.max_at)?;
        map.serialize_entry("window", &self.window)?;
        let tail = self.tail();
        map.serialize_entry("tail", &tail.as_ref().map(format::rational))?;
        map.serialize_entry("tail_decimal", &tail.as_ref().map(format::decimal12))?;
        map.serialize_entry("bound", &self.bound.as_ref().map(format::rational))?;
        map.end()
    }
}

/// Split x-blocks by the phase `(i + |x'|) mod d` of their first full copy.
pub fn phase_partition(blocks: &[BlockOccurrence], d: usize) -> Vec<Vec<BlockOccurrence>> {
    assert!(d >= 1, "period must be positive");
    let mut phases = vec![Vec::new(); d];
    for b in blocks {
        let lead = match b.kind {
            BlockKind::X { lead } => lead,
            BlockKind::Delta => 0,
        };
        phases[(b.i + lead) % d].push(*b);
    }
    phases
}

/// Symbol used for the fresh letter of a block coding.
pub const FRESH_SYMBOL: &str = "α";

/// `w` read in `d`-letter windows from offset `m`; each window equal to `x`
/// is replaced by `d` copies of a fresh letter, other windows pass through.
pub struct BlockCodedStream<S> {
    inner: S,
    pattern: XBlockPattern,
    offset: usize,
    alphabet: Alphabet,
    fresh: Letter,
}

impl<S: WordStream> BlockCodedStream<S> {
    pub fn new(inner: S, pattern: XBlockPattern, offset: usize) -> Result<Self> {
        let d = pattern.period();
        if offset >= d {
            return Err(Error::PatternDegenerate(format!("phase {offset} not below period {d}")));
        }
        let mut symbols = inner.alphabet().symbols().to_vec();
        let mut fresh = FRESH_SYMBOL.to_string();
        while symbols.contains(&fresh) {
            fresh.push('\'');
        }
        symbols.push(fresh);
        let fresh = Letter::from_index(symbols.len() - 1);
        let alphabet = Alphabet::new(symbols)?;
        Ok(BlockCodedStream {
            inner,
            pattern,
            offset,
            alphabet,
            fresh,
        })
    }

    pub fn fresh_letter(&self) -> Letter {
        self.fresh
    }
}

impl<S: WordStream> WordStream for BlockCodedStream<S> {
    fn letter(&mut self, p: usize) -> Option<Letter> {
        let d = self.pattern.period();
        let base = self.offset + (p / d) * d;
        let mut matches = true;
        for t in 0..d {
            let l = self.inner.letter(base + t)?;
            if l != self.pattern.x[t] {
                matches = false;
            }
        }
        if matches {
            Some(self.fresh)
        } else {
            self.inner.letter(self.offset + p)
        }
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn origin(&self) -> Origin {
        Origin::Transformed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{prefix, LiteralStream, MorphicSpec, Morphism};

    fn literal(text: &str) -> LiteralStream {
        let a = Alphabet::new(["0", "1"]).unwrap();
        let w = a.parse_word(text).unwrap();
        LiteralStream::new(a, w.0)
    }

    fn pairs(blocks: &[BlockOccurrence]) -> Vec<(usize, usize)> {
        blocks.iter().map(|b| (b.i, b.j)).collect()
    }

    #[test]
    fn thue_morse_zero_blocks() {
        let mut s = literal("0110100110010110");
        let blocks = scan_delta_blocks(&mut s, &[true, false], &ScanConfig::count(10)).unwrap();
        assert_eq!(pairs(&blocks), vec![(0, 0), (3, 3), (5, 6), (9, 10), (12, 12)]);
    }

    #[test]
    fn all_delta_is_infinite() {
        let spec = MorphicSpec::new(Morphism::from_indices(&[&[0, 0], &[1]]).unwrap(), Letter(0), None).unwrap();
        let mut s = spec.fixed_point();
        let cfg = ScanConfig::count(1).with_block_horizon(1_000_000);
        let err = scan_delta_blocks(&mut s, &[true, false], &cfg).unwrap_err();
        assert_eq!(
            err,
            Error::InfiniteBlock {
                start: 0,
                horizon: 1_000_000
            }
        );
    }

    #[test]
    fn empty_delta_rejected() {
        let mut s = literal("01");
        assert!(scan_delta_blocks(&mut s, &[false, false], &ScanConfig::count(1)).is_err());
    }

    #[test]
    fn worked_x_example() {
        let mut s = literal("0100111010101000");
        let x = XBlockPattern::parse(s.alphabet(), "01").unwrap();
        let blocks = scan_x_blocks(&mut s, &x, &ScanConfig::count(100)).unwrap();
        assert_eq!(pairs(&blocks), vec![(0, 2), (3, 4), (6, 13)]);
        let stats = RatioStats::from_blocks(&blocks, DEFAULT_WINDOW);
        assert_eq!(stats.max, Some(BigRational::new(13.into(), 6.into())));
        let phases = phase_partition(&blocks, 2);
        assert_eq!(pairs(&phases[0]), vec![(0, 2)]);
        assert_eq!(pairs(&phases[1]), vec![(3, 4), (6, 13)]);
    }

    #[test]
    fn single_copy_block() {
        let a = Alphabet::new(["a", "b", "c"]).unwrap();
        let w = a.parse_word("abcccc").unwrap();
        let mut s = LiteralStream::new(a.clone(), w.0);
        let x = XBlockPattern::parse(&a, "ab").unwrap();
        let blocks = scan_x_blocks(&mut s, &x, &ScanConfig::count(10)).unwrap();
        assert_eq!(pairs(&blocks), vec![(0, 1)]);
    }

    #[test]
    fn thue_morse_ten_blocks() {
        let mut s = literal("0110100110010110");
        let x = XBlockPattern::parse(s.alphabet(), "10").unwrap();
        let blocks = scan_x_blocks(&mut s, &x, &ScanConfig::count(10)).unwrap();
        assert!(pairs(&blocks).contains(&(2, 5)));
    }

    #[test]
    fn empty_pattern_degenerate() {
        assert_eq!(XBlockPattern::new(vec![]).unwrap_err().name(), "PatternDegenerate");
    }

    #[test]
    fn ratio_stats_exact() {
        let blocks: Vec<BlockOccurrence> = [(0, 0), (3, 3), (5, 7), (9, 15), (17, 31)]
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| BlockOccurrence {
                k,
                i,
                j,
                kind: BlockKind::Delta,
            })
            .collect();
        let s = RatioStats::from_blocks(&blocks, 8);
        assert_eq!(s.count, 5);
        assert_eq!(s.max, Some(BigRational::new(31.into(), 17.into())));
        assert_eq!(s.max_at, Some(4));
        let single = RatioStats::from_blocks(
            &[BlockOccurrence {
                k: 0,
                i: 5,
                j: 5,
                kind: BlockKind::Delta,
            }],
            8,
        );
        assert_eq!(single.max, Some(BigRational::from_integer(1.into())));
    }

    #[test]
    fn block_coding_windows() {
        let s = literal("0100111010");
        let x = XBlockPattern::parse(s.alphabet(), "01").unwrap();
        let mut coded = BlockCodedStream::new(s, x, 0).unwrap();
        let out = coded.alphabet().clone().render(&prefix(&mut coded, 20), false);
        assert_eq!(out, "α α 0 0 1 1 1 0 1 0");
    }

    #[test]
    fn block_coding_without_pattern_shifts() {
        let s = literal("0000000");
        let x = XBlockPattern::parse(s.alphabet(), "01").unwrap();
        let mut coded = BlockCodedStream::new(s, x, 1).unwrap();
        assert_eq!(prefix(&mut coded, 10).len(), 6);
    }

    #[test]
    fn positions_limit_confirms_blocks() {
        let mut s = literal("0110100110010110");
        let blocks = scan_delta_blocks(&mut s, &[true, false], &ScanConfig::positions(7)).unwrap();
        assert_eq!(pairs(&blocks), vec![(0, 0), (3, 3)]);
    }
}
