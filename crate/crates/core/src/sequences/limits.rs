//! Limits of `j_k / i_k` along a chain with fixed stretches.
//!
//! Along such a chain `[u_k] = A^k U + (Σ_{l<k} A^l) Y` and
//! `[v_k] = A^k V + (Σ_{l<k} A^l) X`, where `v_k` is the prefix before the
//! `k`-th block, so `j_k / i_k = 1 + (1·[u_k] - 1) / 1·[v_k]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{left_eigenvector, EigenOptions, Matrix, Vector};
use crate::{RatInterval, Rational};

/// `1 + ((m-1)|u| + y) / ((m-1)|v| + x)` for an `m`-uniform morphism.
pub fn exact_limsup_uniform(m: &BigInt, u: &BigInt, v: &BigInt, y: &BigInt, x: &BigInt) -> Result<Rational> {
    if *m < BigInt::from(2) {
        return Err(Error::InvalidParams("uniform width must be at least 2".into()));
    }
    let m1 = m - BigInt::one();
    let num = &m1 * u + y;
    let den = &m1 * v + x;
    if !den.is_positive() {
        return Err(Error::DegenerateDenominator(format!("(m-1)|v| + x = {den}")));
    }
    Ok(BigRational::one() + BigRational::new(num, den))
}

/// `(A^k W, Σ_{l<k} A^l Z)` by simultaneous iteration.
fn power_and_sum(
    a: &Matrix<BigInt>,
    w: &Vector<BigInt>,
    z: &Vector<BigInt>,
    k: usize,
) -> (Vector<BigInt>, Vector<BigInt>) {
    let mut pw = w.clone();
    let mut pz = z.clone();
    let mut acc = Vector::zeros(z.len());
    for _ in 0..k {
        acc = &acc + &pz;
        pz = a.mul_vec(&pz);
        pw = a.mul_vec(&pw);
    }
    (pw, acc)
}

/// `|u_k|` and `i_k = |v_k|` from the recurrence.
pub fn recurrence_lengths(
    a: &Matrix<BigInt>,
    u: &Vector<BigInt>,
    v: &Vector<BigInt>,
    x: &Vector<BigInt>,
    y: &Vector<BigInt>,
    k: usize,
) -> (BigInt, BigInt) {
    let (au, sy) = power_and_sum(a, u, y, k);
    let (av, sx) = power_and_sum(a, v, x, k);
    ((&au + &sy).sum(), (&av + &sx).sum())
}

/// `j_k / i_k` from the exact recurrence; `None` if `i_k <= 0`.
pub fn recurrence_ratio(
    a: &Matrix<BigInt>,
    u: &Vector<BigInt>,
    v: &Vector<BigInt>,
    x: &Vector<BigInt>,
    y: &Vector<BigInt>,
    k: usize,
) -> Option<Rational> {
    let (len, start) = recurrence_lengths(a, u, v, x, y, k);
    if !start.is_positive() {
        return None;
    }
    Some(BigRational::one() + BigRational::new(len - BigInt::one(), start))
}

/// Largest recurrence ratio over `k` in `from..=to`.
pub fn recurrence_window_max(
    a: &Matrix<BigInt>,
    u: &Vector<BigInt>,
    v: &Vector<BigInt>,
    x: &Vector<BigInt>,
    y: &Vector<BigInt>,
    from: usize,
    to: usize,
) -> Option<Rational> {
    let n = u.len();
    let (mut pu, mut pv) = (u.clone(), v.clone());
    let (mut py, mut px) = (y.clone(), x.clone());
    let (mut sy, mut sx) = (Vector::zeros(n), Vector::zeros(n));
    let mut best: Option<Rational> = None;
    for k in 0..=to {
        if k >= from {
            let start = (&pv + &sx).sum();
            if start.is_positive() {
                let len = (&pu + &sy).sum();
                let r = BigRational::one() + BigRational::new(len - BigInt::one(), start);
                if best.as_ref().is_none_or(|b| r > *b) {
                    best = Some(r);
                }
            }
        }
        sy = &sy + &py;
        sx = &sx + &px;
        py = a.mul_vec(&py);
        px = a.mul_vec(&px);
        pu = a.mul_vec(&pu);
        pv = a.mul_vec(&pv);
    }
    best
}

fn dot_interval(l: &[RatInterval], w: &Vector<BigInt>) -> RatInterval {
    l.iter().zip(&w.0).fold(RatInterval::zero(), |acc, (li, wi)| {
        let c = RatInterval::point(BigRational::from_integer(wi.clone()));
        &acc + &(li * &c)
    })
}

/// Certified enclosure of `1 + (ℓU + ℓY/(λ-1)) / (ℓV + ℓX/(λ-1))`, the limit of
/// the recurrence ratio for primitive `A`, with `ℓ` the left Perron vector.
pub fn exact_limit_primitive(
    a: &Matrix<BigInt>,
    u: &Vector<BigInt>,
    v: &Vector<BigInt>,
    x: &Vector<BigInt>,
    y: &Vector<BigInt>,
    tol: &Rational,
) -> Result<RatInterval> {
    if u.0.iter().any(Signed::is_negative) || v.0.iter().any(Signed::is_negative) {
        return Err(Error::InvalidParams("U and V must be nonnegative".into()));
    }
    if u.0.iter().all(Zero::is_zero) || v.0.iter().all(Zero::is_zero) {
        return Err(Error::InvalidParams("U and V must be nonzero".into()));
    }
    let mut inner_tol = tol.clone();
    let mut last: Option<RatInterval> = None;
    for _ in 0..8 {
        let eig = left_eigenvector(a, &EigenOptions::with_tol(inner_tol.clone()))?;
        let one = RatInterval::point(BigRational::one());
        let gap = &eig.lambda - &one;
        if !gap.is_positive() {
            return Err(Error::LambdaNotGreaterThanOne);
        }
        let lu = dot_interval(&eig.bounds, u);
        let lv = dot_interval(&eig.bounds, v);
        let lx = dot_interval(&eig.bounds, x);
        let ly = dot_interval(&eig.bounds, y);
        let num = &lu + &(&ly / &gap);
        let den = &lv + &(&lx / &gap);
        let ratio = num
            .checked_div(&den)
            .ok_or_else(|| Error::DegenerateDenominator("ℓV + ℓX/(λ-1) encloses zero".into()))?;
        if !den.is_positive() {
            return Err(Error::DegenerateDenominator("ℓV + ℓX/(λ-1) is not positive".into()));
        }
        let value = &one + &ratio;
        if value.width() <= *tol {
            return Ok(value);
        }
        last = Some(value);
        inner_tol /= BigRational::from_integer(BigInt::from(1u64 << 20));
    }
    last.ok_or(Error::PrecisionExhausted { iterations: 8 })
}
