use std::collections::HashMap;

use num_traits::Num;

use super::Matrix;

/// Square matrix over the boolean semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn identity(n: usize) -> BoolMatrix {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        BoolMatrix { n, bits }
    }

    /// Nonzero pattern of a square matrix.
    pub fn pattern<T: Num + Clone>(a: &Matrix<T>) -> BoolMatrix {
        assert!(a.is_square(), "pattern of a non-square matrix");
        let n = a.rows();
        let bits = (0..n * n).map(|k| !a.get(k / n, k % n).is_zero()).collect();
        BoolMatrix { n, bits }
    }

    pub fn from_rows(rows: &[&[bool]]) -> BoolMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "non-square boolean matrix");
        BoolMatrix {
            n,
            bits: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn mul(&self, rhs: &BoolMatrix) -> BoolMatrix {
        let n = self.n;
        let mut bits = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if !self.get(i, k) {
                    continue;
                }
                for j in 0..n {
                    if rhs.get(k, j) {
                        bits[i * n + j] = true;
                    }
                }
            }
        }
        BoolMatrix { n, bits }
    }

    pub fn pow(&self, k: usize) -> BoolMatrix {
        let mut acc = BoolMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_positive(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }
}

/// Outcome of the power-cycle search: `B^t = B^(t+c)`, and `B^e` idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stabilization {
    pub t: usize,
    pub c: usize,
    pub e: usize,
}

/// Find `t, c` with `B^t = B^(t+c)` by storing successive powers `B^1, B^2, ...`,
/// then the least `e >= t` divisible by `c`. `B^e` is idempotent.
pub fn bool_stabilize(b: &BoolMatrix) -> Stabilization {
    let mut seen: HashMap<BoolMatrix, usize> = HashMap::new();
    let mut power = b.clone();
    let mut s = 1;
    loop {
        if let Some(&t) = seen.get(&power) {
            let c = s - t;
            let k = (c - t % c) % c;
            return Stabilization { t, c, e: t + k };
        }
        seen.insert(power.clone(), s);
        power = power.mul(b);
        s += 1;
    }
}

/// Smallest `k <= (n-1)^2 + 1` with `A^k` strictly positive.
pub fn primitivity_exponent<T: Num + Clone>(a: &Matrix<T>) -> Option<usize> {
    let b = BoolMatrix::pattern(a);
    let n = b.size();
    if n == 0 {
        return None;
    }
    let bound = (n - 1) * (n - 1) + 1;
    let mut power = b.clone();
    for k in 1..=bound {
        if power.is_positive() {
            return Some(k);
        }
        power = power.mul(&b);
    }
    None
}

/// True when some power of `A` is strictly positive (Wielandt bound).
pub fn primitivity_check<T: Num + Clone>(a: &Matrix<T>) -> bool {
    primitivity_exponent(a).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn stabilize_examples() {
        let swap = BoolMatrix::from_rows(&[&[false, true], &[true, false]]);
        assert_eq!(bool_stabilize(&swap), Stabilization { t: 1, c: 2, e: 2 });
        assert!(swap.pow(2).is_idempotent());

        let id = BoolMatrix::identity(3);
        assert_eq!(bool_stabilize(&id).e, 1);

        let upper = BoolMatrix::from_rows(&[&[true, true], &[false, true]]);
        assert_eq!(bool_stabilize(&upper).e, 1);
    }

    #[test]
    fn nilpotent_part_settles() {
        // B^2 = B^3 = 0 pattern after a transient
        let b = BoolMatrix::from_rows(&[&[false, true, false], &[false, false, true], &[false, false, false]]);
        let s = bool_stabilize(&b);
        assert_eq!((s.t, s.c, s.e), (3, 1, 3));
        assert!(b.pow(s.e).is_idempotent());
    }

    #[test]
    fn primitivity_examples() {
        let ones: Matrix<BigInt> = Matrix::from_rows(vec![vec![1.into(), 1.into()], vec![1.into(), 1.into()]]);
        assert_eq!(primitivity_exponent(&ones), Some(1));
        let swap: Matrix<BigInt> = Matrix::from_rows(vec![vec![0.into(), 1.into()], vec![1.into(), 0.into()]]);
        assert!(!primitivity_check(&swap));
        let fib: Matrix<i64> = Matrix::from_rows(vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(primitivity_exponent(&fib), Some(2));
    }
}
