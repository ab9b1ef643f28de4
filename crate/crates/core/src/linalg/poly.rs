use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Matrix;

/// Integer polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Polynomial {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `det(xI - A)` by the Faddeev–LeVerrier recursion; every division is exact.
pub fn char_poly(a: &Matrix<BigInt>) -> Polynomial {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: Matrix<BigInt> = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a * &m;
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let tr = (a * &next).trace();
        coeffs[n - k] = -tr / BigInt::from(k);
        m = next;
    }
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn small_examples() {
        assert_eq!(char_poly(&m(&[&[1, 1], &[1, 1]])), p(&[0, -2, 1]));
        assert_eq!(char_poly(&Matrix::identity(2)), p(&[1, -2, 1]));
        assert_eq!(char_poly(&m(&[&[2, 1], &[1, 1]])), p(&[1, -3, 1]));
    }

    #[test]
    fn three_by_three_matches_cofactor_expansion() {
        let a = m(&[&[1, 0, 0], &[1, 1, 0], &[0, 1, 2]]);
        // triangular: (x-1)^2 (x-2)
        assert_eq!(char_poly(&a), p(&[-2, 5, -4, 1]));
        let b = m(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        // det(xI - B) by cofactor expansion along the first row
        assert_eq!(char_poly(&b), p(&[4, -6, -2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, -2, 1]).to_string(), "x^2 - 2x");
        assert_eq!(p(&[1, -3, 1]).to_string(), "x^2 - 3x + 1");
        assert_eq!(p(&[0]).to_string(), "0");
    }
}
