//! Certified enclosures of Perron eigenvalues and left eigenvectors.
//!
//! Bounds come from Collatz–Wielandt quotients of an integer approximation of
//! the Perron vector: for irreducible `A` and any positive `x`,
//! `min (Ax)_i/x_i <= r(A) <= max (Ax)_i/x_i`. The approximation is seeded by a
//! floating-point power iteration and refined in exact arithmetic.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{boolean::primitivity_exponent, strongly_connected_components, Matrix, Vector};
use crate::error::{Error, Result};
use crate::format::parse_rational;
use crate::RatInterval;

#[derive(Clone, Debug)]
pub struct EigenOptions {
    pub tol: BigRational,
    pub max_iter: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: parse_rational("1e-12").expect("literal"),
            max_iter: 10_000,
        }
    }
}

impl EigenOptions {
    pub fn with_tol(tol: BigRational) -> EigenOptions {
        EigenOptions {
            tol,
            ..EigenOptions::default()
        }
    }

    fn target_bits(&self) -> u64 {
        // enough headroom that rounding never dominates the requested width
        let inv = if self.tol.is_positive() {
            (self.tol.denom() / self.tol.numer().max(&BigInt::one())).bits()
        } else {
            64
        };
        96 + 2 * inv
    }
}

/// Interval of width at most `tol` containing the spectral radius of a
/// nonnegative square matrix.
///
/// Reducible matrices are split into strongly connected components and the
/// largest component radius is taken.
pub fn dominant_eigen_interval(a: &Matrix<BigInt>, opts: &EigenOptions) -> Result<RatInterval> {
    check_nonnegative(a)?;
    let n = a.rows();
    let comps = strongly_connected_components(n, |i, j| !a.get(i, j).is_zero());
    let mut best: Option<RatInterval> = None;
    for comp in comps {
        let iv = if comp.len() == 1 {
            let v = BigRational::from_integer(a.get(comp[0], comp[0]).clone());
            RatInterval::point(v)
        } else {
            let sub = submatrix(a, &comp);
            irreducible_interval(&sub, opts)?
        };
        best = Some(match best {
            None => iv,
            Some(b) => b.max(&iv),
        });
    }
    best.ok_or_else(|| Error::InvalidParams("empty matrix".into()))
}

/// Dominant left eigenvector with certified componentwise bounds, normalized
/// so that the components sum to one.
#[derive(Clone, Debug)]
pub struct LeftEigen {
    pub lambda: RatInterval,
    /// Exact normalized approximation.
    pub center: Vec<BigRational>,
    /// Enclosure of each component of the true eigenvector.
    pub bounds: Vec<RatInterval>,
}

/// Left Perron vector of a primitive matrix.
///
/// Certification uses Birkhoff's contraction for the strictly positive power
/// `P = (A^T)^q`: with `φ` the largest cross ratio of `P` and `R` the spread of
/// `(Px)_i/x_i`, the Hilbert distance from `x` to the eigenvector is at most
/// `log R · (√φ + 1)/2`.
pub fn left_eigenvector(a: &Matrix<BigInt>, opts: &EigenOptions) -> Result<LeftEigen> {
    check_nonnegative(a)?;
    let q = primitivity_exponent(a).ok_or(Error::NonPrimitive)?;
    let lambda = dominant_eigen_interval(a, opts)?;
    let m = a.transpose();
    let p = m.pow(q as u32);
    let n = p.rows();

    // integer s >= sqrt(phi), then exponent k = ceil((s+1)/2)
    let phi = max_cross_ratio(&p);
    let phi_ceil = ceil(&phi);
    let s = phi_ceil.sqrt() + BigInt::one();
    let k = BigRational::from_integer((&s + BigInt::from(2)) / BigInt::from(2));

    let target = opts.target_bits() + phi_ceil.bits();
    let mut x = integer_start(&warm_start(&m), target);
    for _ in 0..opts.max_iter.max(1) {
        let y = p.mul_vec(&x);
        let ratios: Vec<BigRational> = (0..n)
            .map(|i| BigRational::new(y.0[i].clone(), x.0[i].clone()))
            .collect();
        let lo = ratios.iter().min().expect("nonempty").clone();
        let hi = ratios.iter().max().expect("nonempty").clone();
        let eps = hi / lo - BigRational::one();
        let slack = &k * &eps;
        if slack < BigRational::one() {
            let f = BigRational::one() / (BigRational::one() - slack);
            let total = x.sum();
            let center: Vec<BigRational> =
                x.0.iter()
                    .map(|xi| BigRational::new(xi.clone(), total.clone()))
                    .collect();
            let bounds: Vec<RatInterval> = center.iter().map(|c| RatInterval::new(c / &f, c * &f)).collect();
            if bounds.iter().all(|b| b.width() <= opts.tol) {
                return Ok(LeftEigen { lambda, center, bounds });
            }
        }
        x = rescale(y, target);
    }
    Err(Error::PrecisionExhausted {
        iterations: opts.max_iter,
    })
}

fn check_nonnegative(a: &Matrix<BigInt>) -> Result<()> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::InvalidParams("expected a nonempty square matrix".into()));
    }
    for i in 0..a.rows() {
        if a.row(i).iter().any(Signed::is_negative) {
            return Err(Error::InvalidParams("matrix has negative entries".into()));
        }
    }
    Ok(())
}

fn submatrix(a: &Matrix<BigInt>, idx: &[usize]) -> Matrix<BigInt> {
    Matrix::from_rows(
        idx.iter()
            .map(|&i| idx.iter().map(|&j| a.get(i, j).clone()).collect())
            .collect(),
    )
}

fn irreducible_interval(s: &Matrix<BigInt>, opts: &EigenOptions) -> Result<RatInterval> {
    let n = s.rows();
    // A + I is primitive and shares the Perron vector
    let shifted = s + &Matrix::identity(n);
    let target = opts.target_bits();
    let mut x = integer_start(&warm_start(s), target);
    for _ in 0..opts.max_iter.max(1) {
        let y = s.mul_vec(&x);
        let ratios = (0..n).map(|i| BigRational::new(y.0[i].clone(), x.0[i].clone()));
        let (mut lo, mut hi) = (None::<BigRational>, None::<BigRational>);
        for r in ratios {
            lo = Some(match lo {
                Some(l) if l <= r => l,
                _ => r.clone(),
            });
            hi = Some(match hi {
                Some(h) if h >= r => h,
                _ => r,
            });
        }
        let iv = RatInterval::new(lo.expect("nonempty"), hi.expect("nonempty"));
        if iv.width() <= opts.tol {
            return Ok(iv);
        }
        x = rescale(shifted.mul_vec(&x), target);
    }
    Err(Error::PrecisionExhausted {
        iterations: opts.max_iter,
    })
}

/// Floating-point Perron vector of `A + I`, normalized to max 1.
fn warm_start(a: &Matrix<BigInt>) -> Vec<f64> {
    let n = a.rows();
    let af: Matrix<f64> = a.map(|x| x.to_f64().unwrap_or(f64::MAX));
    let shifted = &af + &Matrix::identity(n);
    let mut v = Vector(vec![1.0f64; n]);
    for _ in 0..2000 {
        let w = shifted.mul_vec(&v);
        let top = w.0.iter().cloned().fold(0.0f64, f64::max);
        if !(top.is_finite() && top > 0.0) {
            break;
        }
        let w: Vec<f64> = w.0.iter().map(|x| x / top).collect();
        let delta = w.iter().zip(&v.0).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        v = Vector(w);
        if delta < 1e-16 {
            break;
        }
    }
    v.0
}

fn integer_start(v: &[f64], bits: u64) -> Vector<BigInt> {
    Vector(
        v.iter()
            .map(|&x| {
                let mant = (x.clamp(0.0, 1.0) * (1u64 << 62) as f64) as u64;
                let base = BigInt::from(mant.max(1));
                base << (bits.saturating_sub(62) as usize)
            })
            .collect(),
    )
}

/// Shift all entries right so the smallest keeps about `bits` bits.
fn rescale(v: Vector<BigInt>, bits: u64) -> Vector<BigInt> {
    let min_bits = v.0.iter().map(|x| x.bits()).min().unwrap_or(0);
    if min_bits <= bits + 64 {
        return v;
    }
    let shift = (min_bits - bits) as usize;
    Vector(
        v.0.into_iter()
            .map(|x| {
                let y = x >> shift;
                if y.sign() == Sign::NoSign {
                    BigInt::one()
                } else {
                    y
                }
            })
            .collect(),
    )
}

fn max_cross_ratio(p: &Matrix<BigInt>) -> BigRational {
    let n = p.rows();
    let mut best = BigRational::one();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let num = p.get(i, k) * p.get(j, l);
                    let den = p.get(j, k) * p.get(i, l);
                    let r = BigRational::new(num, den);
                    if r > best {
                        best = r;
                    }
                }
            }
        }
    }
    best
}

fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}
