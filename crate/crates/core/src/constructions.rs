//! Witness words: binary words whose one-positions `n_j` have a prescribed
//! `limsup n_{j+1}/n_j`.
//!
//! For a Perron number the word is `τ(g^ω(α))` with `g(α) = αβ0`, `g(β) = β`
//! and `g = h` on a digit alphabet whose incidence matrix realizes the
//! number; the gaps between ones are then `|h^j(0)|`. For a rational `p/q`
//! the ones sit on `m·p^h` with `p ≤ m ≤ qp`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::diophantine::{class_c_check, index_ratios, ClassC};
use crate::error::{Error, Result};
use crate::format::{self, serde_exact};
use crate::linalg::{dominant_eigen_interval, primitivity_check, EigenOptions};
use crate::word::{
    prefix, Alphabet, Coding, Letter, MorphicSpec, Morphism, PredicateStream, SpecDocument, Word, WordStream,
};
use crate::{IntMatrix, RatInterval, Rational};

/// Ones beyond this position are not checked against the generated word.
const VERIFY_LIMIT: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerronInput {
    /// An integer `μ ≥ 2`, realized by a fixed 2×2 matrix.
    Integer(u64),
    /// A primitive matrix whose spectral radius is the target.
    Matrix(IntMatrix),
}

impl PerronInput {
    /// The matrix used for `h`.
    pub fn matrix(&self) -> Result<IntMatrix> {
        match self {
            PerronInput::Integer(mu) if *mu < 2 => Err(Error::InvalidParams(format!("μ = {mu} is below 2"))),
            PerronInput::Integer(2) => Ok(IntMatrix::from_rows(vec![vec![1.into(), 1.into()]; 2])),
            PerronInput::Integer(mu) => {
                let m = BigInt::from(mu - 1);
                Ok(IntMatrix::from_rows(vec![
                    vec![m.clone(), m],
                    vec![BigInt::one(), BigInt::one()],
                ]))
            }
            PerronInput::Matrix(a) => {
                check_perron_matrix(a)?;
                Ok(a.clone())
            }
        }
    }

    fn target(&self, eigen: &RatInterval) -> String {
        match self {
            PerronInput::Integer(mu) => mu.to_string(),
            PerronInput::Matrix(_) => {
                let mid = (&eigen.lo + &eigen.hi) / BigRational::from_integer(2.into());
                format::decimal12(&mid)
            }
        }
    }
}

fn check_perron_matrix(a: &IntMatrix) -> Result<()> {
    if !a.is_square() || a.rows() < 2 {
        return Err(Error::NotPerron("matrix must be square of size at least 2".into()));
    }
    if a.to_rows().iter().flatten().any(|x| x < &BigInt::zero()) {
        return Err(Error::NotPerron("matrix has a negative entry".into()));
    }
    if (0..a.cols()).any(|j| a.column(j).sum().is_zero()) {
        return Err(Error::NotPerron("matrix has a zero column".into()));
    }
    if a.rows() + 3 > u16::MAX as usize {
        return Err(Error::NotPerron("matrix too large".into()));
    }
    if !primitivity_check(a) {
        return Err(Error::NotPerron("matrix is not primitive".into()));
    }
    Ok(())
}

/// Class-C status serialized as `holds`, `eventual(J)` or `fails`.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub kind: &'static str,
    /// Target value of `limsup n_{j+1}/n_j`, when known.
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecDocument>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_matrix")]
    pub matrix: Option<IntMatrix>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_interval")]
    pub eigen: Option<RatInterval>,
    #[serde(serialize_with = "positions")]
    pub ones: Vec<BigInt>,
    #[serde(serialize_with = "serde_exact::rationals")]
    pub ratios: Vec<Rational>,
    #[serde(rename = "class_C")]
    pub class_c: ClassC,
    pub first_violation: Option<usize>,
    /// Whether the generated word has ones exactly where predicted.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelReport>,
    #[serde(skip)]
    pub morphic: Option<MorphicSpec>,
}

impl ConstructionReport {
    fn new(kind: &'static str, target: Option<String>, ones: Vec<BigInt>) -> ConstructionReport {
        let check = class_c_check(&ones);
        ConstructionReport {
            kind,
            target,
            spec: None,
            matrix: None,
            eigen: None,
            ratios: index_ratios(&ones),
            ones,
            class_c: check.status,
            first_violation: check.first_violation,
            verified: false,
            kernel: None,
            morphic: None,
        }
    }

    /// Largest ratio over the last `window` entries.
    pub fn tail_ratio(&self, window: usize) -> Option<Rational> {
        self.ratios[self.ratios.len().saturating_sub(window)..]
            .iter()
            .max()
            .cloned()
    }
}

fn positions<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        match x.to_u64().filter(|v| *v < 1 << 53) {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

fn opt_matrix<S: Serializer>(m: &Option<IntMatrix>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Option<Vec<Vec<String>>> = m.as_ref().map(|m| {
        m.to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    });
    rows.serialize(s)
}

fn opt_interval<S: Serializer>(iv: &Option<RatInterval>, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Bounds {
        lo: String,
        hi: String,
    }
    iv.as_ref()
        .map(|iv| Bounds {
            lo: format::rational(&iv.lo),
            hi: format::rational(&iv.hi),
        })
        .serialize(s)
}

/// Rules over `markers ∪ Σ_k` realizing `a` on the digit part, letters in
/// ascending order. Marker letters come first.
fn digit_rules(a: &IntMatrix, markers: usize) -> Vec<Word> {
    (0..a.cols())
        .map(|j| {
            let mut w = Vec::new();
            for i in 0..a.rows() {
                let count = a.get(i, j).to_usize().expect("small matrix entries");
                w.extend(std::iter::repeat_n(Letter::from_index(markers + i), count));
            }
            Word(w)
        })
        .collect()
}

fn marker_alphabet(markers: &[&str], k: usize) -> Result<Alphabet> {
    let digits = (0..k).map(|i| i.to_string());
    Alphabet::new(markers.iter().map(|s| s.to_string()).chain(digits))
}

/// `β ↦ 1`, everything else `↦ 0`.
fn marker_coding(n: usize) -> Result<Coding> {
    let mut map = vec![Letter(0); n];
    map[1] = Letter(1);
    Coding::new(n, Alphabet::digits(2), map)
}

/// `|h^j(0)| = 1·A^j e_0` for `j < count`.
pub fn image_lengths(a: &IntMatrix, count: usize) -> Vec<BigInt> {
    let mut v = crate::IntVector::unit(a.cols(), 0);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(v.sum());
        v = a.mul_vec(&v);
    }
    out
}

/// Compare predicted one-positions with the generated word.
fn ones_match(spec: &MorphicSpec, ones: &[BigInt]) -> bool {
    let bound = ones
        .iter()
        .filter_map(|n| n.to_usize())
        .filter(|&n| n < VERIFY_LIMIT)
        .max()
        .map_or(0, |n| n + 1);
    let mut stream = spec.stream();
    let observed: Vec<BigInt> = prefix(&mut stream, bound)
        .iter()
        .enumerate()
        .filter(|(_, l)| l.index() == 1)
        .map(|(p, _)| BigInt::from(p))
        .collect();
    let expected: Vec<&BigInt> = ones.iter().filter(|n| *n < &BigInt::from(bound)).collect();
    observed.iter().eq(expected)
}

/// Word `τ(g^ω(α))` with ones at `n_{j+1} = n_j + |h^j(0)| + 1`, `n_0 = 1`.
pub fn perron_spec(input: &PerronInput, count: usize) -> Result<ConstructionReport> {
    let a = input.matrix()?;
    let k = a.rows();
    let alphabet = marker_alphabet(&["α", "β"], k)?;
    let (alpha, beta, zero) = (Letter(0), Letter(1), Letter(2));
    let mut rules = vec![Word(vec![alpha, beta, zero]), Word(vec![beta])];
    rules.extend(digit_rules(&a, 2));
    let morphism = Morphism::new(alphabet, rules)?;
    let spec = MorphicSpec::new(morphism, alpha, Some(marker_coding(k + 2)?))?;

    let lengths = image_lengths(&a, count.saturating_sub(1));
    let mut ones = vec![BigInt::one()];
    for x in &lengths {
        let next = ones.last().expect("nonempty") + x + 1;
        ones.push(next);
    }
    ones.truncate(count);

    let eigen = dominant_eigen_interval(&a, &EigenOptions::default())?;
    let mut report = ConstructionReport::new("perron", Some(input.target(&eigen)), ones);
    report.verified = perron_shape(&spec, 4) && ones_match(&spec, &report.ones);
    report.spec = Some(SpecDocument::from_spec(&spec));
    report.matrix = Some(a);
    report.eigen = Some(eigen);
    report.morphic = Some(spec);
    Ok(report)
}

/// Literal check of `α β 0 β h(0) β h²(0) β …` over `segments` segments.
fn perron_shape(spec: &MorphicSpec, segments: usize) -> bool {
    let h = spec.morphism();
    let (alpha, beta, zero) = (Letter(0), Letter(1), Letter(2));
    let mut expected = vec![alpha, beta];
    let mut seg = vec![zero];
    for _ in 0..segments {
        expected.extend_from_slice(&seg);
        expected.push(beta);
        seg = h.apply(&seg).0;
    }
    prefix(&mut spec.fixed_point(), expected.len()) == expected
}

/// Variant with `g(α) = α β 0 (γ0)^s β 0 (γ0)^t`, `γ` a second zero marker.
pub fn remark2_spec(input: &PerronInput, s: usize, t: usize, count: usize) -> Result<ConstructionReport> {
    let a = input.matrix()?;
    let k = a.rows();
    let alphabet = marker_alphabet(&["α", "β", "γ"], k)?;
    let (alpha, beta, gamma, zero) = (Letter(0), Letter(1), Letter(2), Letter(3));
    let mut head = vec![alpha, beta, zero];
    for _ in 0..s {
        head.extend([gamma, zero]);
    }
    head.extend([beta, zero]);
    for _ in 0..t {
        head.extend([gamma, zero]);
    }
    let mut rules = vec![Word(head), Word(vec![beta]), Word(vec![gamma])];
    rules.extend(digit_rules(&a, 3));
    let morphism = Morphism::new(alphabet, rules)?;
    let spec = MorphicSpec::new(morphism, alpha, Some(marker_coding(k + 3)?))?;

    let lengths = image_lengths(&a, count / 2 + 1);
    let mut ones = vec![BigInt::one()];
    for x in &lengths {
        for reps in [s, t] {
            let next = ones.last().expect("nonempty") + x * (reps + 1) + reps + 1;
            ones.push(next);
        }
    }
    ones.truncate(count);

    let mut report = ConstructionReport::new("remark2", None, ones);
    report.verified = remark2_shape(&spec, s, t) && ones_match(&spec, &report.ones);
    report.spec = Some(SpecDocument::from_spec(&spec));
    report.matrix = Some(a);
    report.morphic = Some(spec);
    Ok(report)
}

/// Literal check of the first two levels of the fixed point.
fn remark2_shape(spec: &MorphicSpec, s: usize, t: usize) -> bool {
    let h = spec.morphism();
    let (alpha, beta, gamma, zero) = (Letter(0), Letter(1), Letter(2), Letter(3));
    let mut expected = vec![alpha];
    let mut seg = vec![zero];
    for _ in 0..2 {
        for reps in [s, t] {
            expected.push(beta);
            expected.extend_from_slice(&seg);
            for _ in 0..reps {
                expected.push(gamma);
                expected.extend_from_slice(&seg);
            }
        }
        seg = h.apply(&seg).0;
    }
    expected.push(beta);
    prefix(&mut spec.fixed_point(), expected.len()) == expected
}

/// Whether `n = m·p^h` for some `h ≥ 0` and `p ≤ m ≤ qp`.
pub fn rational_member(p: u64, q: u64, n: u64) -> bool {
    let mut m = n;
    while m > q * p && m.is_multiple_of(p) {
        m /= p;
    }
    p <= m && m <= q * p
}

fn check_rational(p: u64, q: u64) -> Result<()> {
    if p < 2 || p <= q || q == 0 {
        return Err(Error::InvalidParams(format!(
            "need p > q ≥ 1 and p ≥ 2, got p={p}, q={q}"
        )));
    }
    Ok(())
}

/// The binary word with ones at the members of `⋃_h {p·p^h, …, qp·p^h}`.
pub fn rational_word_stream(p: u64, q: u64) -> Result<PredicateStream> {
    check_rational(p, q)?;
    Ok(PredicateStream::binary(move |n| rational_member(p, q, n as u64)))
}

/// First `count` ones of the rational word, with its kernel at `kernel_depth`.
pub fn rational_word(p: u64, q: u64, count: usize, kernel_depth: usize) -> Result<ConstructionReport> {
    let mut stream = rational_word_stream(p, q)?;
    let ones: Vec<BigInt> = (1u64..)
        .filter(|&n| rational_member(p, q, n))
        .take(count)
        .map(BigInt::from)
        .collect();
    let target = format::rational(&BigRational::new(p.into(), q.into()));
    let mut report = ConstructionReport::new("rational", Some(target), ones);
    report.verified = true;
    report.kernel = Some(p_kernel(&mut stream, p as usize, kernel_depth, 64)?);
    Ok(report)
}

/// Exact class-C witness with ones at `μ^j`.
pub fn power_word(mu: u64, count: usize) -> Result<ConstructionReport> {
    if mu < 2 {
        return Err(Error::InvalidParams(format!("μ = {mu} is below 2")));
    }
    let ones: Vec<BigInt> = (0..count).map(|j| num_traits::pow(BigInt::from(mu), j)).collect();
    let mut report = ConstructionReport::new("power", Some(mu.to_string()), ones);
    report.verified = true;
    Ok(report)
}

/// The word with ones at `μ^j`.
pub fn power_word_stream(mu: u64) -> Result<PredicateStream> {
    if mu < 2 {
        return Err(Error::InvalidParams(format!("μ = {mu} is below 2")));
    }
    Ok(PredicateStream::binary(move |n| {
        let mut m = n as u64;
        if m == 0 {
            return false;
        }
        while m.is_multiple_of(mu) {
            m /= mu;
        }
        m == 1
    }))
}

/// `0 ↦ 01`, `1 ↦ 10`.
pub fn thue_morse_spec() -> MorphicSpec {
    let h = Morphism::from_indices(&[&[0, 1], &[1, 0]]).expect("valid rules");
    MorphicSpec::new(h, Letter(0), None).expect("prolongable")
}

/// A kernel member `n ↦ u_{multiplier·n + offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelElement {
    pub multiplier: usize,
    pub offset: usize,
    /// Number of nonzero letters in the compared prefix.
    pub support: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub p: usize,
    pub depth: usize,
    pub elements: Vec<KernelElement>,
    /// Whether some element is constant on its compared prefix.
    pub has_constant: bool,
}

/// Closure of the stream under `n ↦ u_{p·n + r}`, elements compared on
/// prefixes of length `depth` and rechecked at `2·depth` on a match.
pub fn p_kernel(stream: &mut dyn WordStream, p: usize, depth: usize, max_elems: usize) -> Result<KernelReport> {
    if p < 2 {
        return Err(Error::InvalidParams("kernel base must be at least 2".into()));
    }
    let mut read = |m: usize, c: usize, len: usize| -> Result<Vec<Option<Letter>>> {
        (0..len)
            .map(|n| {
                let pos = m
                    .checked_mul(n)
                    .and_then(|x| x.checked_add(c))
                    .ok_or_else(|| Error::HorizonExceeded("kernel index overflow".into()))?;
                Ok(stream.letter(pos))
            })
            .collect()
    };
    let mut elements: Vec<(KernelElement, Vec<Option<Letter>>)> = Vec::new();
    let mut queue = VecDeque::from([(1usize, 0usize)]);
    while let Some((m, c)) = queue.pop_front() {
        let pre = read(m, c, depth)?;
        let mut same = false;
        for (e, other) in &elements {
            if *other == pre && read(m, c, 2 * depth)? == read(e.multiplier, e.offset, 2 * depth)? {
                same = true;
                break;
            }
        }
        if same {
            continue;
        }
        if elements.len() == max_elems {
            return Err(Error::HorizonExceeded(format!(
                "{p}-kernel exceeds {max_elems} elements at depth {depth}"
            )));
        }
        let support = pre.iter().filter(|l| l.is_some_and(|l| l.index() != 0)).count();
        elements.push((
            KernelElement {
                multiplier: m,
                offset: c,
                support,
            },
            pre,
        ));
        let mp = m
            .checked_mul(p)
            .ok_or_else(|| Error::HorizonExceeded("kernel index overflow".into()))?;
        for r in 0..p {
            queue.push_back((mp, m * r + c));
        }
    }
    let has_constant = elements.iter().any(|(_, pre)| pre.windows(2).all(|w| w[0] == w[1]));
    Ok(KernelReport {
        p,
        depth,
        elements: elements.into_iter().map(|(e, _)| e).collect(),
        has_constant,
    })
}
