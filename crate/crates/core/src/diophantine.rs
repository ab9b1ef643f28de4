//! Real numbers `ξ = Σ b^{-n_j}` read from digit streams: truncations,
//! the truncation exponent `v_b`, class C and the irrationality exponent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::format::{self, serde_exact};
use crate::word::{PredicateStream, WordStream};
use crate::Rational;

pub const DEFAULT_DIGITS: usize = 100_000;
pub const DEFAULT_TAIL_WINDOW: usize = 8;

/// Base-`b` digits `d_0 d_1 …` of a real number, `d_n` having weight `b^{-n}`.
pub struct DigitExpansion {
    base: u32,
    stream: Box<dyn WordStream>,
    digit_of: Vec<u32>,
    /// Digits at and beyond this position are unknown.
    known_len: Option<usize>,
}

impl std::fmt::Debug for DigitExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DigitExpansion")
            .field("base", &self.base)
            .field("known_len", &self.known_len)
            .finish()
    }
}

impl DigitExpansion {
    /// Read digits from a stream whose symbols are decimal numerals below `base`.
    pub fn from_stream(base: u32, stream: Box<dyn WordStream>) -> Result<DigitExpansion> {
        if base < 2 {
            return Err(Error::InvalidParams("base must be at least 2".into()));
        }
        let digit_of = stream
            .alphabet()
            .symbols()
            .iter()
            .map(|s| match s.parse::<u32>() {
                Ok(d) if d < base => Ok(d),
                _ => Err(Error::InvalidParams(format!("symbol {s:?} is not a base-{base} digit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DigitExpansion {
            base,
            stream,
            digit_of,
            known_len: None,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn known_len(&self) -> Option<usize> {
        self.known_len
    }

    pub fn digit(&mut self, n: usize) -> Option<u32> {
        if self.known_len.is_some_and(|k| n >= k) {
            return None;
        }
        self.stream.letter(n).map(|l| self.digit_of[l.index()])
    }

    /// `d_0 … d_{n-1}`, shorter when the expansion is known only partially.
    pub fn digits(&mut self, n: usize) -> Vec<u32> {
        (0..n).map_while(|p| self.digit(p)).collect()
    }

    /// Positions of the nonzero digits among the first `n`.
    pub fn nonzero_positions(&mut self, n: usize) -> Vec<usize> {
        self.digits(n)
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Expansion with digit 1 exactly at the given positions.
///
/// The digits are known up to the last index; later positions read as absent.
pub fn xi_from_indices(base: u32, indices: &[usize]) -> Result<DigitExpansion> {
    if indices.first() == Some(&0) {
        return Err(Error::InvalidParams("indices must be positive".into()));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams("indices must be strictly increasing".into()));
    }
    let set = indices.to_vec();
    let stream = PredicateStream::binary(move |n| set.binary_search(&n).is_ok());
    let mut exp = DigitExpansion::from_stream(base, Box::new(stream))?;
    exp.known_len = Some(indices.last().map_or(0, |&n| n + 1));
    Ok(exp)
}

/// Sum of the first `count` nonzero digit contributions, reading at most
/// `horizon` digits.
pub fn truncate_value(exp: &mut DigitExpansion, count: usize, horizon: usize) -> Result<Rational> {
    let base = BigInt::from(exp.base);
    let mut numer = BigInt::zero();
    let mut last = 0usize;
    let mut found = 0usize;
    let mut p = 0usize;
    while found < count {
        if p >= horizon {
            return Err(Error::HorizonExceeded(format!(
                "{found} of {count} nonzero digits within {horizon} positions"
            )));
        }
        let Some(d) = exp.digit(p) else { break };
        if d != 0 {
            numer = numer * num_traits::pow(base.clone(), p - last) + BigInt::from(d);
            last = p;
            found += 1;
        }
        p += 1;
    }
    Ok(BigRational::new(numer, num_traits::pow(base, last)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessBlock {
    pub digit: u32,
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "serde_exact::rational")]
    pub v: Rational,
}

#[derive(Clone, Debug)]
pub struct VbEstimate {
    /// Largest witness exponent among all blocks.
    pub best: Rational,
    /// Largest witness exponent among the last `window` blocks.
    pub tail: Rational,
    pub digits: usize,
    pub blocks: usize,
    /// Blocks that raised the running maximum.
    pub records: Vec<WitnessBlock>,
}

impl Serialize for VbEstimate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("best", &format::rational(&self.best))?;
        map.serialize_entry("tail", &format::decimal12(&self.tail))?;
        map.serialize_entry("digits", &self.digits)?;
        map.serialize_entry("blocks", &self.blocks)?;
        map.end()
    }
}

/// Witness exponents `(j-i+1)/(i-1)` of the maximal 0-blocks and
/// `(b-1)`-blocks inside `d_1 … d_n`.
///
/// Truncating before such a block gives `‖b^{i-1} ξ‖ ≤ 2 b^{-(j-i+1)}`. A run
/// still open at position `n` is dropped, unless it started within the first
/// `√n` digits, which is reported as an infinite block.
pub fn v_b_estimate(exp: &mut DigitExpansion, n: usize, window: usize) -> Result<VbEstimate> {
    let top = exp.base - 1;
    let digits = exp.digits(n + 1);
    let end = digits.len();
    let mut witnesses: Vec<WitnessBlock> = Vec::new();
    let mut p = 1;
    while p < end {
        let d = digits[p];
        if d != 0 && d != top {
            p += 1;
            continue;
        }
        let start = p;
        while p < end && digits[p] == d {
            p += 1;
        }
        if p == end {
            if start * start <= n.max(1) {
                return Err(Error::InfiniteBlock { start, horizon: n });
            }
            break;
        }
        if start >= 2 {
            let v = BigRational::new((p - start).into(), (start - 1).into());
            witnesses.push(WitnessBlock {
                digit: d,
                i: start,
                j: p - 1,
                v,
            });
        }
    }
    let mut records: Vec<WitnessBlock> = Vec::new();
    for w in &witnesses {
        if records.last().is_none_or(|r| w.v > r.v) {
            records.push(w.clone());
        }
    }
    let best = records.last().map_or_else(BigRational::zero, |r| r.v.clone());
    let tail = witnesses[witnesses.len().saturating_sub(window.max(1))..]
        .iter()
        .map(|w| &w.v)
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    Ok(VbEstimate {
        best,
        tail,
        digits: end.saturating_sub(1),
        blocks: witnesses.len(),
        records,
    })
}

/// Whether `n_{j+1}/n_j ≥ 2` along the observed indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassC {
    Holds,
    /// Holds for every `j ≥` the given index.
    Eventual(usize),
    Fails,
}

impl std::fmt::Display for ClassC {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassC::Holds => f.write_str("holds"),
            ClassC::Eventual(j) => write!(f, "eventual({j})"),
            ClassC::Fails => f.write_str("fails"),
        }
    }
}

impl Serialize for ClassC {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub status: ClassC,
    /// Smallest `j` with `n_{j+1} < 2 n_j`.
    pub first_violation: Option<usize>,
}

impl ClassCheck {
    pub fn applicable(&self) -> bool {
        self.status != ClassC::Fails
    }
}

/// Classify the observed ratios. The condition counts as eventual when it
/// holds on at least the second half of them.
pub fn class_c_check(indices: &[BigInt]) -> ClassCheck {
    let violations: Vec<usize> = indices
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] < &w[0] * 2)
        .map(|(j, _)| j)
        .collect();
    let observed = indices.len().saturating_sub(1);
    let status = match violations.last() {
        None => ClassC::Holds,
        Some(&last) if 2 * (last + 1) <= observed => ClassC::Eventual(last + 1),
        Some(_) => ClassC::Fails,
    };
    ClassCheck {
        status,
        first_violation: violations.first().copied(),
    }
}

/// Consecutive ratios `n_{j+1}/n_j`.
pub fn index_ratios(indices: &[BigInt]) -> Vec<Rational> {
    indices
        .windows(2)
        .filter(|w| w[0].is_positive())
        .map(|w| BigRational::new(w[1].clone(), w[0].clone()))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MuEstimate {
    #[serde(serialize_with = "serde_exact::opt_rational")]
    pub running_max: Option<Rational>,
    #[serde(serialize_with = "serde_exact::opt_rational")]
    pub tail: Option<Rational>,
    pub tail_decimal: Option<String>,
    pub observed: usize,
    /// False when class C fails; the value then need not equal the exponent.
    pub applicable: bool,
    /// The tail ratios keep growing by at least 1/2 per step.
    pub diverging: bool,
}

/// Running and tail-window maxima of `n_{j+1}/n_j`.
pub fn mu_estimate(indices: &[BigInt], window: usize) -> MuEstimate {
    let ratios = index_ratios(indices);
    let w = window.max(2);
    let tail_slice = &ratios[ratios.len().saturating_sub(w)..];
    let half = BigRational::new(1.into(), 2.into());
    let diverging = tail_slice.len() >= 3 && tail_slice.windows(2).all(|p| &p[1] - &p[0] >= half);
    let tail = if diverging {
        None
    } else {
        tail_slice.iter().max().cloned()
    };
    MuEstimate {
        running_max: ratios.iter().max().cloned(),
        tail_decimal: tail.as_ref().map(format::decimal12),
        tail,
        observed: ratios.len(),
        applicable: class_c_check(indices).applicable(),
        diverging,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigInt>,
    /// `(p_k, q_k)`.
    pub convergents: Vec<(BigInt, BigInt)>,
}

impl Serialize for ContinuedFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        let q: Vec<String> = self.quotients.iter().map(|a| a.to_string()).collect();
        map.serialize_entry("quotients", &q)?;
        map.end()
    }
}

pub fn continued_fraction(x: &Rational) -> Result<ContinuedFraction> {
    if x.is_negative() {
        return Err(Error::InvalidParams("continued fraction of a negative number".into()));
    }
    let (mut p, mut q) = (x.numer().clone(), x.denom().clone());
    let mut quotients = Vec::new();
    while !q.is_zero() {
        let (a, r) = p.div_rem(&q);
        quotients.push(a);
        p = q;
        q = r;
    }
    let mut convergents = Vec::with_capacity(quotients.len());
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    for a in &quotients {
        let p0 = a * &p1 + &p2;
        let q0 = a * &q1 + &q2;
        convergents.push((p0.clone(), q0.clone()));
        (p2, q2, p1, q1) = (p1, q1, p0, q0);
    }
    Ok(ContinuedFraction { quotients, convergents })
}

fn log2(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::MAX).log2();
    }
    let shifted: BigInt = x >> (bits - 64);
    shifted.to_f64().unwrap_or(1.0).log2() + (bits - 64) as f64
}

#[derive(Clone, Debug, PartialEq)]
pub enum CfEstimate {
    /// The truncations settle on a rational number.
    Rational(Rational),
    Estimate(f64),
    Insufficient,
}

impl Serialize for CfEstimate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CfEstimate::Rational(_) => serializer.serialize_str("n/a"),
            CfEstimate::Estimate(v) => serializer.serialize_str(&format!("{v:.6}")),
            CfEstimate::Insufficient => serializer.serialize_str("insufficient"),
        }
    }
}

/// Irrationality exponent read from quotient growth of the deepest truncation.
///
/// Uses `1 + max log q_{k+1} / log q_k` over convergents with
/// `q_k ≥ q_max^{9/10}`, after dropping the last two quotients, which only
/// reflect the truncation.
pub fn mu_from_cf(truncations: &[Rational]) -> Result<CfEstimate> {
    let Some(deepest) = truncations.last() else {
        return Ok(CfEstimate::Insufficient);
    };
    let cf = continued_fraction(deepest)?;
    if let Some(prev) = truncations.len().checked_sub(2).map(|i| &truncations[i]) {
        let before = continued_fraction(prev)?;
        let n = cf.quotients.len();
        if n >= 2 && before.quotients.len() == n && cf.quotients[..n - 1] == before.quotients[..n - 1] {
            let (p, q) = &cf.convergents[n - 2];
            return Ok(CfEstimate::Rational(BigRational::new(p.clone(), q.clone())));
        }
    }
    let keep = cf.convergents.len().saturating_sub(2);
    let dens: Vec<f64> = cf.convergents[..keep].iter().map(|(_, q)| log2(q)).collect();
    let Some(&top) = dens.last() else {
        return Ok(CfEstimate::Insufficient);
    };
    let best = dens
        .windows(2)
        .filter(|w| w[0] > 0.0 && w[0] >= 0.9 * top)
        .map(|w| w[1] / w[0])
        .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
    Ok(best.map_or(CfEstimate::Insufficient, |r| CfEstimate::Estimate(1.0 + r)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CfCheck {
    pub depth: usize,
    pub estimate: CfEstimate,
    pub quotients: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentReport {
    pub base: u32,
    pub v_b: VbEstimate,
    pub mu: MuEstimate,
    #[serde(rename = "class_C")]
    pub class_c: ClassC,
    pub first_violation: Option<usize>,
    /// `1 + v_b` tail against the μ tail, when class C applies.
    pub consistency_gap: Option<String>,
    pub witness_blocks: Vec<WitnessBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf: Option<CfCheck>,
}

/// Largest index used for the continued-fraction cross-check.
const CF_MAX_INDEX: usize = 4096;

pub fn exponent_report(exp: &mut DigitExpansion, n: usize, window: usize, with_cf: bool) -> Result<ExponentReport> {
    let v_b = v_b_estimate(exp, n, window)?;
    let positions = exp.nonzero_positions(n + 1);
    let indices: Vec<BigInt> = positions.iter().map(|&p| BigInt::from(p)).collect();
    let check = class_c_check(&indices);
    let mu = mu_estimate(&indices, window);
    let consistency_gap = match (&mu.tail, check.applicable()) {
        (Some(t), true) => Some(format::decimal12(&(BigRational::one() + &v_b.tail - t).abs())),
        _ => None,
    };
    let cf = if with_cf {
        let usable = positions.iter().take_while(|&&p| p <= CF_MAX_INDEX).count();
        let truncs = (1..=usable)
            .map(|j| truncate_value(exp, j, CF_MAX_INDEX + 1))
            .collect::<Result<Vec<_>>>()?;
        let estimate = mu_from_cf(&truncs)?;
        let quotients = truncs
            .last()
            .map_or(Ok(0), |t| continued_fraction(t).map(|c| c.quotients.len()))?;
        Some(CfCheck {
            depth: usable,
            estimate,
            quotients,
        })
    } else {
        None
    };
    Ok(ExponentReport {
        base: exp.base,
        witness_blocks: v_b.records.clone(),
        v_b,
        mu,
        class_c: check.status,
        first_violation: check.first_violation,
        consistency_gap,
        cf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::LiteralStream;

    fn ints(xs: &[u64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn r(p: i64, q: i64) -> Rational {
        BigRational::new(p.into(), q.into())
    }

    fn pow2_indices(count: u32) -> Vec<usize> {
        (0..count).map(|j| 1usize << j).collect()
    }

    #[test]
    fn digits_of_powers_of_two() {
        let mut e = xi_from_indices(2, &pow2_indices(6)).unwrap();
        assert_eq!(e.digits(18), vec![0, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0]);
        assert_eq!(xi_from_indices(2, &[3, 3]).unwrap_err().name(), "InvalidParams");
        assert_eq!(xi_from_indices(2, &[0, 3]).unwrap_err().name(), "InvalidParams");
    }

    #[test]
    fn truncations() {
        let mut e = xi_from_indices(2, &pow2_indices(10)).unwrap();
        assert_eq!(truncate_value(&mut e, 4, 1000).unwrap(), r(209, 256));
        let mut e = xi_from_indices(10, &[3]).unwrap();
        assert_eq!(truncate_value(&mut e, 1, 1000).unwrap(), r(1, 1000));
        let mut e = xi_from_indices(2, &[1]).unwrap();
        assert_eq!(truncate_value(&mut e, 1, 1000).unwrap(), r(1, 2));
        let ones: Vec<usize> = (1..=6).collect();
        let mut e = xi_from_indices(10, &ones).unwrap();
        assert_eq!(truncate_value(&mut e, 6, 1000).unwrap(), r(111_111, 1_000_000));
    }

    #[test]
    fn stream_digits_must_fit_base() {
        let s = LiteralStream::from_chars("0120").unwrap();
        assert_eq!(
            DigitExpansion::from_stream(2, Box::new(s)).unwrap_err().name(),
            "InvalidParams"
        );
    }

    #[test]
    fn vb_for_powers_of_two() {
        let mut e = xi_from_indices(2, &pow2_indices(17)).unwrap();
        let est = v_b_estimate(&mut e, 100_000, 8).unwrap();
        assert_eq!(est.tail, r(32767, 32768));
        assert!(est.records.iter().any(|w| (w.i, w.j) == (9, 15) && w.v == r(7, 8)));
    }

    #[test]
    fn all_zero_tail_is_infinite() {
        let mut e = xi_from_indices(2, &[1, 1000]).unwrap();
        let err = v_b_estimate(&mut e, 900, 8).unwrap_err();
        assert_eq!(err, Error::InfiniteBlock { start: 2, horizon: 900 });
    }

    #[test]
    fn class_c_statuses() {
        let pow2: Vec<BigInt> = (0..20).map(|j| BigInt::from(1u64 << j)).collect();
        assert_eq!(class_c_check(&pow2).status, ClassC::Holds);
        let perron2 = ints(&[1, 3, 6, 11, 20, 37, 70]);
        let c = class_c_check(&perron2);
        assert_eq!(c.status, ClassC::Fails);
        assert_eq!(c.first_violation, Some(2));
        assert_eq!(
            class_c_check(&ints(&[1, 3, 5, 10, 20, 40, 80])).status,
            ClassC::Eventual(2)
        );
        assert_eq!(ClassC::Eventual(2).to_string(), "eventual(2)");
    }

    #[test]
    fn mu_estimates() {
        let pow2: Vec<BigInt> = (0..20).map(|j| BigInt::from(1u64 << j)).collect();
        let m = mu_estimate(&pow2, 8);
        assert_eq!(m.tail, Some(r(2, 1)));
        assert!(m.applicable && !m.diverging);
        let mut fact = vec![BigInt::one()];
        for j in 2..20u32 {
            let next = fact.last().unwrap() * j;
            fact.push(next);
        }
        let m = mu_estimate(&fact, 8);
        assert!(m.diverging);
        assert_eq!(m.tail, None);
    }

    #[test]
    fn continued_fractions() {
        let q = |x: Rational| continued_fraction(&x).unwrap().quotients;
        assert_eq!(q(r(209, 256)), ints(&[0, 1, 4, 2, 4, 5]));
        assert_eq!(q(r(1, 2)), ints(&[0, 2]));
        assert_eq!(q(r(7, 3)), ints(&[2, 3]));
        let cf = continued_fraction(&r(209, 256)).unwrap();
        assert_eq!(cf.convergents.last().unwrap(), &(BigInt::from(209), BigInt::from(256)));
    }

    #[test]
    fn cf_cross_check() {
        let trunc = |idx: &[usize], base: u32| -> Vec<Rational> {
            let mut e = xi_from_indices(base, idx).unwrap();
            (1..=idx.len())
                .map(|j| truncate_value(&mut e, j, 10_000).unwrap())
                .collect()
        };
        match mu_from_cf(&trunc(&pow2_indices(6), 2)).unwrap() {
            CfEstimate::Estimate(v) => assert!((1.9..=2.1).contains(&v), "{v}"),
            other => panic!("{other:?}"),
        }
        let shifted: Vec<usize> = (0..6).map(|j| 3usize << j).collect();
        match mu_from_cf(&trunc(&shifted, 2)).unwrap() {
            CfEstimate::Estimate(v) => assert!((1.8..=2.2).contains(&v), "{v}"),
            other => panic!("{other:?}"),
        }
        let ones: Vec<usize> = (1..=8).collect();
        assert_eq!(mu_from_cf(&trunc(&ones, 10)).unwrap(), CfEstimate::Rational(r(1, 9)));
    }

    #[test]
    fn report_for_powers_of_two() {
        let mut e = xi_from_indices(2, &pow2_indices(17)).unwrap();
        let rep = exponent_report(&mut e, 100_000, 8, true).unwrap();
        assert_eq!(rep.class_c, ClassC::Holds);
        assert_eq!(rep.mu.tail, Some(r(2, 1)));
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["class_C"], "holds");
        assert_eq!(json["v_b"]["best"], "32767/32768");
    }
}
