//! Limsup of `j_k / i_k` over maximal Δ-blocks and x-blocks.
//!
//! The morphism is first replaced by a power `g = h^e` whose letter
//! reachability is stable. Long blocks of the fixed point then fall into
//! finitely many chains, each block containing the image of its predecessor
//! up to bounded edges. Along a chain the edge drifts are eventually
//! periodic, which gives a linear recurrence for block positions and
//! lengths; uniform morphisms have a rational closed form for its limit.

mod chains;
mod limits;

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::blocks::{
    phase_partition, scan_delta_blocks, scan_x_blocks, BlockCodedStream, BlockOccurrence, RatioStats, ScanConfig,
    XBlockPattern, DEFAULT_BLOCK_HORIZON, DEFAULT_WINDOW,
};
use crate::error::{Error, Result};
use crate::format::{self, parse_rational};
use crate::linalg::{bool_stabilize, growing_letters, incidence_matrix, primitivity_check, BoolMatrix, Matrix, Vector};
use crate::word::{prefix, FixedPointStream, Letter, MorphicSpec, WordStream};
use crate::{RatInterval, Rational};

pub use chains::{
    analyze_stretches, link_blocks, prefix_parikh, qualifies, sandwich_holds, DeltaChain, LinkConfig, Periodicity,
    Stretch, StretchRecord,
};
pub use limits::{
    exact_limit_primitive, exact_limsup_uniform, recurrence_lengths, recurrence_ratio, recurrence_window_max,
};

/// Largest image length accepted for the normalizing power.
const MAX_NORMALIZED_IMAGE: u64 = 1 << 20;

/// A spec whose morphism was replaced by the stabilizing power `h^exponent`.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub spec: MorphicSpec,
    pub exponent: usize,
}

/// Replace `h` by `h^e` with `alph(g^n(a)) = alph(g(a))` for all `n >= 1`.
/// The fixed point does not change.
pub fn normalize_spec(spec: &MorphicSpec) -> Result<Normalized> {
    let a = incidence_matrix(spec.morphism());
    let e = bool_stabilize(&BoolMatrix::pattern(&a)).e;
    let longest = (0..a.cols())
        .map(|j| a.pow(e as u32).column(j).sum())
        .max()
        .unwrap_or_else(BigInt::zero);
    if longest > BigInt::from(MAX_NORMALIZED_IMAGE) {
        return Err(Error::HorizonExceeded(format!(
            "normalizing power h^{e} has images of length {longest}"
        )));
    }
    Ok(Normalized {
        spec: spec.with_power(e)?,
        exponent: e,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Closed form when available, otherwise estimate.
    Auto,
    /// Closed form or an error.
    Exact,
    /// Tail statistics of the scanned blocks only.
    Empirical,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "auto" => Ok(Mode::Auto),
            "exact" => Ok(Mode::Exact),
            "empirical" => Ok(Mode::Empirical),
            other => Err(Error::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimsupOptions {
    pub mode: Mode,
    pub tol: Rational,
    pub root_horizon: usize,
    pub follow_horizon: usize,
    pub block_horizon: usize,
    pub window: usize,
    pub max_preperiod: usize,
    pub max_period: usize,
    /// Recurrence depth for estimates in the non-uniform, non-primitive case.
    pub recurrence_depth: usize,
}

impl Default for LimsupOptions {
    fn default() -> Self {
        LimsupOptions {
            mode: Mode::Auto,
            tol: parse_rational("1e-12").expect("literal"),
            root_horizon: 1 << 16,
            follow_horizon: 1 << 22,
            block_horizon: DEFAULT_BLOCK_HORIZON,
            window: DEFAULT_WINDOW,
            max_preperiod: 16,
            max_period: 16,
            recurrence_depth: 48,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimsupValue {
    Rational(Rational),
    Interval(RatInterval),
    Estimate(Rational),
}

impl LimsupValue {
    /// Largest value the limsup may take according to this result.
    pub fn upper(&self) -> &Rational {
        match self {
            LimsupValue::Rational(r) | LimsupValue::Estimate(r) => r,
            LimsupValue::Interval(iv) => &iv.hi,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LimsupValue::Rational(_) => "rational",
            LimsupValue::Interval(_) => "interval",
            LimsupValue::Estimate(_) => "estimate",
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            LimsupValue::Rational(r) | LimsupValue::Estimate(r) => format::to_f64(r),
            LimsupValue::Interval(iv) => (format::to_f64(&iv.lo) + format::to_f64(&iv.hi)) / 2.0,
        }
    }
}

impl Serialize for LimsupValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", self.kind())?;
        match self {
            LimsupValue::Rational(r) => {
                map.serialize_entry("value", &format::rational(r))?;
                map.serialize_entry("decimal", &format::decimal12(r))?;
            }
            LimsupValue::Interval(iv) => {
                map.serialize_entry("lo", &format::rational(&iv.lo))?;
                map.serialize_entry("hi", &format::rational(&iv.hi))?;
                let mid = (&iv.lo + &iv.hi) / BigRational::from_integer(2.into());
                map.serialize_entry("decimal", &format::decimal12(&mid))?;
            }
            LimsupValue::Estimate(r) => {
                map.serialize_entry("value", &format::decimal12(r))?;
            }
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    UniformClosedForm,
    PrimitiveEigen,
    Empirical,
    Bounded,
    Finite,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseReport {
    pub phase: usize,
    /// Ordinal within the chain of the first block used.
    pub base: usize,
    pub value: LimsupValue,
    pub method: Method,
    pub recurrence_verified: bool,
    #[serde(serialize_with = "format::serde_exact::bigints")]
    pub u: Vec<BigInt>,
    #[serde(serialize_with = "format::serde_exact::bigints")]
    pub v: Vec<BigInt>,
    #[serde(serialize_with = "format::serde_exact::bigints")]
    pub x: Vec<BigInt>,
    #[serde(serialize_with = "format::serde_exact::bigints")]
    pub y: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub left: String,
    pub right: String,
    pub left_pivot: String,
    pub right_pivot: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub root: BlockOccurrence,
    pub elements: usize,
    pub signature: String,
    pub preperiod: Option<usize>,
    pub period: Option<usize>,
    /// Upper bound `1 + M + 2M/|u_0|` on every ratio of the chain.
    #[serde(serialize_with = "format::serde_exact::rational")]
    pub bound: Rational,
    pub steps: Vec<StepReport>,
    pub phases: Vec<PhaseReport>,
    pub value: LimsupValue,
    pub method: Method,
}

#[derive(Clone, Debug, Serialize)]
pub struct XPhaseReport {
    pub phase: usize,
    pub blocks: usize,
    pub stats: RatioStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimsupReport {
    #[serde(flatten)]
    pub value: LimsupValue,
    pub method: Method,
    pub degree_bound: usize,
    pub classification: String,
    pub normalization_exponent: usize,
    pub horizon_exceeded: bool,
    pub empirical: RatioStats,
    pub chains: Vec<ChainReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub x_phases: Vec<XPhaseReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<bool>,
}

fn classification(value: &LimsupValue, degree: usize) -> String {
    match value {
        LimsupValue::Rational(_) => "rational".into(),
        LimsupValue::Interval(_) => format!("algebraic-deg<={degree}"),
        LimsupValue::Estimate(_) => "estimate-only".into(),
    }
}

/// Max over partial results; the weakest kind wins.
fn combine(parts: &[(LimsupValue, Method)]) -> Option<(LimsupValue, Method)> {
    let best = parts.iter().map(|(v, _)| v.upper()).max()?.clone();
    if parts.iter().any(|(v, _)| matches!(v, LimsupValue::Estimate(_))) {
        return Some((LimsupValue::Estimate(best), Method::Empirical));
    }
    let intervals: Vec<RatInterval> = parts
        .iter()
        .map(|(v, _)| match v {
            LimsupValue::Interval(iv) => iv.clone(),
            LimsupValue::Rational(r) | LimsupValue::Estimate(r) => RatInterval::point(r.clone()),
        })
        .collect();
    if parts.iter().any(|(v, _)| matches!(v, LimsupValue::Interval(_))) {
        let hull = intervals[1..].iter().fold(intervals[0].clone(), |acc, iv| acc.max(iv));
        return Some((LimsupValue::Interval(hull), Method::PrimitiveEigen));
    }
    let method = parts[0].1;
    Some((LimsupValue::Rational(best), method))
}

fn alph(word: &[Letter], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    for l in word {
        seen[l.index()] = true;
    }
    seen
}

fn render_letters(spec: &MorphicSpec, letters: &[Letter]) -> String {
    let a = spec.morphism().alphabet();
    a.render(letters, a.is_single_char())
}

/// Limsup of `j_k / i_k` over the maximal Δ-blocks of the word of `spec`.
///
/// `delta` is a mask over the output alphabet (the coded one when a coding is
/// present); it is pulled back to the pure word.
pub fn limsup_delta(spec: &MorphicSpec, delta: &[bool], opts: &LimsupOptions) -> Result<LimsupReport> {
    let out_len = spec.output_alphabet().len();
    if delta.len() != out_len {
        return Err(Error::InvalidParams("Δ mask does not match the alphabet".into()));
    }
    if !delta.iter().any(|&b| b) {
        return Err(Error::InvalidParams("Δ is empty".into()));
    }
    if delta.iter().all(|&b| b) {
        return Err(Error::InvalidParams("Δ must be a proper subalphabet".into()));
    }
    let pure_delta: Vec<bool> = match spec.coding() {
        Some(c) => c.preimage_mask(delta),
        None => delta.to_vec(),
    };
    let norm = normalize_spec(spec)?;
    let g = norm.spec.morphism();
    let n = g.len();
    let degree = n;
    let seed_image = g.rule(norm.spec.seed()).clone();
    let tail_image = g.apply(&seed_image[1..]);
    let recurring = alph(&tail_image, n);
    let occurring: Vec<bool> = alph(&seed_image, n)
        .iter()
        .zip(&recurring)
        .map(|(a, b)| *a || *b)
        .collect();

    // Δ^ω suffix: non-Δ letters occur only inside g(seed)
    if !(0..n).any(|c| recurring[c] && !pure_delta[c]) {
        let start = seed_image
            .iter()
            .rposition(|l| !pure_delta[l.index()])
            .map_or(0, |p| p + 1);
        return Err(Error::InfiniteBlock {
            start,
            horizon: opts.block_horizon,
        });
    }

    let base = |value: LimsupValue, method: Method, empirical: RatioStats| LimsupReport {
        classification: classification(&value, degree),
        value,
        method,
        degree_bound: degree,
        normalization_exponent: norm.exponent,
        horizon_exceeded: false,
        empirical,
        chains: Vec::new(),
        x_phases: Vec::new(),
        crosscheck: None,
    };

    let mut stream = norm.spec.fixed_point();
    let scan_cfg = ScanConfig::positions(opts.follow_horizon).with_block_horizon(opts.block_horizon);

    if opts.mode != Mode::Empirical {
        // finitely many Δ letters: all of them sit inside g(seed)
        if !(0..n).any(|c| recurring[c] && pure_delta[c]) {
            let cfg = ScanConfig::positions(seed_image.len() + 1).with_block_horizon(opts.block_horizon);
            let blocks = scan_delta_blocks(&mut stream, &pure_delta, &cfg)?;
            let stats = RatioStats::from_blocks(&blocks, opts.window);
            let max = stats
                .max
                .clone()
                .ok_or_else(|| Error::InvalidParams("no Δ-block starts after position 0".into()))?;
            return Ok(base(LimsupValue::Rational(max), Method::Finite, stats));
        }
        let growing = growing_letters(g);
        let unbounded = (0..n)
            .any(|c| growing[c] && occurring[c] && g.rule(Letter::from_index(c)).iter().all(|l| pure_delta[l.index()]));
        if !unbounded {
            let cfg = ScanConfig::positions(opts.follow_horizon.min(100_000)).with_block_horizon(opts.block_horizon);
            let blocks = scan_delta_blocks(&mut stream, &pure_delta, &cfg)?;
            let stats = RatioStats::from_blocks(&blocks, opts.window);
            return Ok(base(LimsupValue::Rational(BigRational::one()), Method::Bounded, stats));
        }
    }

    let blocks = scan_delta_blocks(&mut stream, &pure_delta, &scan_cfg)?;
    let stats = RatioStats::from_blocks(&blocks, opts.window);
    let tail = stats.tail();
    if opts.mode == Mode::Empirical {
        let t = tail.ok_or_else(|| Error::HorizonExceeded("no Δ-blocks within the horizon".into()))?;
        return Ok(base(LimsupValue::Estimate(t), Method::Empirical, stats));
    }

    let link_cfg = LinkConfig {
        root_horizon: opts.root_horizon,
        follow_horizon: opts.follow_horizon,
    };
    let chains = link_blocks(&mut stream, &blocks, &link_cfg);
    if chains.is_empty() {
        if opts.mode == Mode::Exact {
            return Err(Error::HorizonExceeded(
                "no chain of long blocks within the horizon".into(),
            ));
        }
        let t = tail.ok_or_else(|| Error::HorizonExceeded("no Δ-blocks within the horizon".into()))?;
        let mut report = base(LimsupValue::Estimate(t), Method::Empirical, stats);
        report.horizon_exceeded = true;
        return Ok(report);
    }

    let reports = analyze_chains(&norm.spec, &mut stream, &chains, opts)?;
    let parts: Vec<(LimsupValue, Method)> = reports.iter().map(|c| (c.value.clone(), c.method)).collect();
    let (value, method) = combine(&parts).expect("at least one chain");
    if opts.mode == Mode::Exact && matches!(value, LimsupValue::Estimate(_)) {
        return Err(Error::Unsupported(
            "no exact method applies: morphism is neither uniform nor primitive".into(),
        ));
    }
    let mut report = base(value, method, stats);
    report.chains = reports;
    Ok(report)
}

fn parikh_of(pp: &std::collections::HashMap<usize, Vector<BigInt>>, b: &BlockOccurrence) -> Vector<BigInt> {
    let end = &pp[&(b.j + 1)];
    let start = &pp[&b.i];
    Vector(end.0.iter().zip(&start.0).map(|(e, s)| e - s).collect())
}

fn sub(a: &Vector<BigInt>, b: &Vector<BigInt>) -> Vector<BigInt> {
    Vector(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
}

fn analyze_chains(
    spec: &MorphicSpec,
    stream: &mut FixedPointStream,
    chains: &[DeltaChain],
    opts: &LimsupOptions,
) -> Result<Vec<ChainReport>> {
    let g = spec.morphism();
    let n = g.len();
    let m_len = g.max_image_len();
    let a = incidence_matrix(g);

    let mut positions = BTreeSet::new();
    for c in chains {
        for b in &c.blocks {
            positions.insert(b.i);
            positions.insert(b.j + 1);
        }
    }
    let pp = prefix_parikh(stream, &positions, n);

    let mut reports = Vec::with_capacity(chains.len());
    for chain in chains {
        let root = *chain.root();
        let bound = BigRational::one()
            + BigRational::from_integer(m_len.into())
            + BigRational::new((2 * m_len).into(), root.len().into());
        let observed = RatioStats::from_blocks(&chain.blocks, opts.window);
        let periodicity = analyze_stretches(chain, opts.max_preperiod, opts.max_period);
        let mut phases = Vec::new();
        if let Some(per) = periodicity {
            let ap = a.pow(per.period as u32);
            for phase in 0..per.period {
                let k0 = per.preperiod + phase;
                let b0 = &chain.blocks[k0];
                let b1 = &chain.blocks[k0 + per.period];
                let u = parikh_of(&pp, b0);
                let v = pp[&b0.i].clone();
                let y = sub(&parikh_of(&pp, b1), &ap.mul_vec(&u));
                let x = sub(&pp[&b1.i], &ap.mul_vec(&v));
                let verified = verify_recurrence(&ap, &u, &v, &x, &y, chain, &pp, k0, per.period);
                let (value, method) = if !verified {
                    let t = tail_of(chain, k0, per.period, opts.window);
                    (LimsupValue::Estimate(t), Method::Empirical)
                } else {
                    phase_limit(g.uniform_width(), per.period, &ap, &u, &v, &x, &y, opts)?
                };
                phases.push(PhaseReport {
                    phase,
                    base: k0,
                    value,
                    method,
                    recurrence_verified: verified,
                    u: u.0,
                    v: v.0,
                    x: x.0,
                    y: y.0,
                });
            }
        }
        let (value, method) = if phases.is_empty() {
            let t = observed
                .tail()
                .or(observed.max.clone())
                .unwrap_or_else(BigRational::one);
            (LimsupValue::Estimate(t), Method::Empirical)
        } else {
            let parts: Vec<_> = phases.iter().map(|p| (p.value.clone(), p.method)).collect();
            combine(&parts).expect("nonempty")
        };
        let steps = chain
            .steps
            .iter()
            .map(|s| StepReport {
                left: describe(spec, &s.left),
                right: describe(spec, &s.right),
                left_pivot: spec.morphism().alphabet().symbol(s.left_pivot).to_string(),
                right_pivot: spec.morphism().alphabet().symbol(s.right_pivot).to_string(),
            })
            .collect();
        reports.push(ChainReport {
            root,
            elements: chain.blocks.len(),
            signature: render_letters(spec, &chain.signature),
            preperiod: periodicity.map(|p| p.preperiod),
            period: periodicity.map(|p| p.period),
            bound,
            steps,
            phases,
            value,
            method,
        });
    }
    Ok(reports)
}

fn describe(spec: &MorphicSpec, s: &Stretch) -> String {
    let sign = match s.sign {
        1 => "+",
        -1 => "-",
        _ => "",
    };
    format!("{sign}{}", render_letters(spec, &s.word))
}

/// Largest ratio among the observed blocks of one phase, last `window` of them.
fn tail_of(chain: &DeltaChain, k0: usize, period: usize, window: usize) -> Rational {
    let members: Vec<BlockOccurrence> = chain.blocks[k0..].iter().step_by(period).copied().collect();
    let stats = RatioStats::from_blocks(&members, window);
    stats.tail().unwrap_or_else(BigRational::one)
}

#[allow(clippy::too_many_arguments)]
fn verify_recurrence(
    ap: &Matrix<BigInt>,
    u: &Vector<BigInt>,
    v: &Vector<BigInt>,
    x: &Vector<BigInt>,
    y: &Vector<BigInt>,
    chain: &DeltaChain,
    pp: &std::collections::HashMap<usize, Vector<BigInt>>,
    k0: usize,
    period: usize,
) -> bool {
    let mut cu = u.clone();
    let mut cv = v.clone();
    let mut k = k0;
    while k < chain.blocks.len() {
        let b = &chain.blocks[k];
        if parikh_of(pp, b) != cu || pp[&b.i] != cv {
            return false;
        }
        cu = &ap.mul_vec(&cu) + y;
        cv = &ap.mul_vec(&cv) + x;
        k += period;
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn phase_limit(
    width: Option<usize>,
    period: usize,
    ap: &Matrix<BigInt>,
    u: &Vector<BigInt>,
    v: &Vector<BigInt>,
    x: &Vector<BigInt>,
    y: &Vector<BigInt>,
    opts: &LimsupOptions,
) -> Result<(LimsupValue, Method)> {
    if let Some(m) = width {
        let mp = num_traits::pow(BigInt::from(m), period);
        let r = exact_limsup_uniform(&mp, &u.sum(), &v.sum(), &y.sum(), &x.sum())?;
        return Ok((LimsupValue::Rational(r), Method::UniformClosedForm));
    }
    if primitivity_check(ap) {
        let iv = exact_limit_primitive(ap, u, v, x, y, &opts.tol)?;
        return Ok((LimsupValue::Interval(iv), Method::PrimitiveEigen));
    }
    let depth = opts.recurrence_depth.max(1);
    let est = recurrence_window_max(ap, u, v, x, y, depth.saturating_sub(16), depth)
        .ok_or_else(|| Error::DegenerateDenominator("recurrence start position not positive".into()))?;
    Ok((LimsupValue::Estimate(est), Method::Empirical))
}

/// Tail statistics of the Δ-blocks of an arbitrary stream, for words that
/// come without a morphism.
pub fn empirical_delta(stream: &mut dyn WordStream, delta: &[bool], opts: &LimsupOptions) -> Result<LimsupReport> {
    let cfg = ScanConfig::positions(opts.follow_horizon).with_block_horizon(opts.block_horizon);
    let blocks = scan_delta_blocks(stream, delta, &cfg)?;
    let stats = RatioStats::from_blocks(&blocks, opts.window);
    let tail = stats
        .tail()
        .ok_or_else(|| Error::HorizonExceeded("no Δ-block starts after position 0".into()))?;
    let value = LimsupValue::Estimate(tail);
    let degree = stream.alphabet().len();
    Ok(LimsupReport {
        classification: classification(&value, degree),
        value,
        method: Method::Empirical,
        degree_bound: degree,
        normalization_exponent: 1,
        horizon_exceeded: false,
        empirical: stats,
        chains: Vec::new(),
        x_phases: Vec::new(),
        crosscheck: None,
    })
}

/// Limsup over maximal x-blocks of the word of `spec`.
///
/// A one-letter `x` is the Δ-block case with `Δ = {x}`.
pub fn limsup_x(spec: &MorphicSpec, x: &XBlockPattern, opts: &LimsupOptions) -> Result<LimsupReport> {
    if x.period() == 1 {
        let mut delta = vec![false; spec.output_alphabet().len()];
        delta[x.letters()[0].index()] = true;
        return limsup_delta(spec, &delta, opts);
    }
    let spec = spec.clone();
    let mut factory = move || spec.stream();
    limsup_x_stream(&mut factory, x, opts)
}

/// Per-phase tail estimates over maximal x-blocks of a stream, with a
/// cross-check against the Δ-blocks of the block-coded streams.
pub fn limsup_x_stream(
    factory: &mut dyn FnMut() -> Box<dyn WordStream>,
    x: &XBlockPattern,
    opts: &LimsupOptions,
) -> Result<LimsupReport> {
    let d = x.period();
    let limit = opts.follow_horizon;
    let cfg = ScanConfig::positions(limit).with_block_horizon(opts.block_horizon);
    let mut stream = factory();
    let blocks = scan_x_blocks(&mut stream, x, &cfg)?;
    let readable = prefix(&mut stream, limit).len();
    let stats = RatioStats::from_blocks(&blocks, opts.window);
    let phases = phase_partition(&blocks, d);

    let mut crosscheck = true;
    let mut x_phases = Vec::with_capacity(d);
    let mut parts = Vec::new();
    for (m, members) in phases.iter().enumerate() {
        let coded = BlockCodedStream::new(factory(), x.clone(), m)?;
        let fresh = coded.fresh_letter();
        let mut coded = coded;
        let mut mask = vec![false; coded.alphabet().len()];
        mask[fresh.index()] = true;
        let alpha_cfg = ScanConfig::positions(readable.saturating_sub(m)).with_block_horizon(opts.block_horizon);
        let alpha_blocks = scan_delta_blocks(&mut coded, &mask, &alpha_cfg)?;
        let settled = |j: usize| j + 2 * d < readable;
        let left: Vec<&BlockOccurrence> = members.iter().filter(|b| settled(b.j)).collect();
        let right: Vec<(usize, usize)> = alpha_blocks
            .iter()
            .map(|b| (b.i + m, b.j + m))
            .filter(|&(_, j)| settled(j))
            .collect();
        let agree = left.len() == right.len()
            && left
                .iter()
                .zip(&right)
                .all(|(b, &(r, s))| b.i.abs_diff(r) < d && b.j.abs_diff(s) < d);
        crosscheck &= agree;
        let phase_stats = RatioStats::from_blocks(members, opts.window);
        if let Some(t) = phase_stats.tail() {
            parts.push((LimsupValue::Estimate(t), Method::Empirical));
        }
        x_phases.push(XPhaseReport {
            phase: m,
            blocks: members.len(),
            stats: phase_stats,
        });
    }
    let (value, method) =
        combine(&parts).ok_or_else(|| Error::HorizonExceeded("no x-block starts after position 0".into()))?;
    let degree = stream.alphabet().len();
    Ok(LimsupReport {
        classification: classification(&value, degree),
        value,
        method,
        degree_bound: degree,
        normalization_exponent: 1,
        horizon_exceeded: false,
        empirical: stats,
        chains: Vec::new(),
        x_phases,
        crosscheck: Some(crosscheck),
    })
}
