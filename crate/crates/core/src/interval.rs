//! Closed intervals over an ordered field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Num, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Clone + PartialOrd + Num> Interval<T> {
    pub fn new(lo: T, hi: T) -> Interval<T> {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: T) -> Interval<T> {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&T::zero())
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval<T>) -> Interval<T> {
        Interval {
            lo: min(&self.lo, &other.lo),
            hi: max(&self.hi, &other.hi),
        }
    }

    /// Interval of `max(x, y)` for `x` in `self`, `y` in `other`.
    pub fn max(&self, other: &Interval<T>) -> Interval<T> {
        Interval {
            lo: max(&self.lo, &other.lo),
            hi: max(&self.hi, &other.hi),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > T::zero()
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn checked_div(&self, rhs: &Interval<T>) -> Option<Interval<T>> {
        if rhs.contains_zero() {
            return None;
        }
        let inv = Interval {
            lo: T::one() / rhs.hi.clone(),
            hi: T::one() / rhs.lo.clone(),
        };
        Some(self * &inv)
    }
}

fn min<T: Clone + PartialOrd>(a: &T, b: &T) -> T {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn max<T: Clone + PartialOrd>(a: &T, b: &T) -> T {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

impl<'a, T: Clone + PartialOrd + Num> Add for &'a Interval<T> {
    type Output = Interval<T>;

    fn add(self, rhs: &'a Interval<T>) -> Interval<T> {
        Interval {
            lo: self.lo.clone() + rhs.lo.clone(),
            hi: self.hi.clone() + rhs.hi.clone(),
        }
    }
}

impl<'a, T: Clone + PartialOrd + Num> Sub for &'a Interval<T> {
    type Output = Interval<T>;

    fn sub(self, rhs: &'a Interval<T>) -> Interval<T> {
        Interval {
            lo: self.lo.clone() - rhs.hi.clone(),
            hi: self.hi.clone() - rhs.lo.clone(),
        }
    }
}

impl<'a, T: Clone + PartialOrd + Num> Mul for &'a Interval<T> {
    type Output = Interval<T>;

    fn mul(self, rhs: &'a Interval<T>) -> Interval<T> {
        let products = [
            self.lo.clone() * rhs.lo.clone(),
            self.lo.clone() * rhs.hi.clone(),
            self.hi.clone() * rhs.lo.clone(),
            self.hi.clone() * rhs.hi.clone(),
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl<'a, T: Clone + PartialOrd + Num> Div for &'a Interval<T> {
    type Output = Interval<T>;

    /// Panics when the divisor contains zero; see [`Interval::checked_div`].
    fn div(self, rhs: &'a Interval<T>) -> Interval<T> {
        self.checked_div(rhs)
            .expect("interval division by an interval containing zero")
    }
}

impl<T: Clone + PartialOrd + Num + Neg<Output = T>> Neg for Interval<T> {
    type Output = Interval<T>;

    fn neg(self) -> Interval<T> {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl<T: Clone + PartialOrd + Num> Zero for Interval<T> {
    fn zero() -> Self {
        Interval::point(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl<T: Clone + PartialOrd + Num> Add for Interval<T> {
    type Output = Interval<T>;

    fn add(self, rhs: Interval<T>) -> Interval<T> {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(q(1, 2), q(1, 1));
        let b = Interval::new(q(-1, 1), q(2, 1));
        let p = &a * &b;
        assert_eq!(p, Interval::new(q(-1, 1), q(2, 1)));
        let s = &a - &b;
        assert_eq!(s, Interval::new(q(-3, 2), q(2, 1)));
        assert!(a.checked_div(&b).is_none());
        let d = &a / &Interval::new(q(2, 1), q(4, 1));
        assert_eq!(d, Interval::new(q(1, 8), q(1, 2)));
    }

    #[test]
    fn float_intervals() {
        let a = Interval::new(1.0f64, 2.0);
        assert_eq!(a.width(), 1.0);
        assert!(a.contains(&1.5));
        assert_eq!((-a).lo, -2.0);
    }
}
