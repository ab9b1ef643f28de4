//! Parikh vectors, incidence matrices and their spectral data.
//!
//! [`Matrix`] and [`Vector`] are generic over the scalar; exact work uses
//! `BigInt` (see the crate-level aliases) and `f64` only seeds iterations.

mod boolean;
mod perron;
mod poly;

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{Num, One};

use crate::word::{Letter, Morphism};

pub use boolean::{bool_stabilize, primitivity_check, BoolMatrix, Stabilization};
pub use perron::{dominant_eigen_interval, left_eigenvector, EigenOptions, LeftEigen};
pub use poly::{char_poly, Polynomial};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Num + Clone> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Matrix<T> {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<U: Num + Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        Vector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        )
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        let mut out = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            if v.0[i].is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = o.clone() + v.0[i].clone() * self.get(i, j).clone();
            }
        }
        Vector(out)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Matrix<T> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<'a, T: Num + Clone> Mul for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * rhs.get(k, j).clone();
                }
            }
        }
        out
    }
}

impl<'a, T: Num + Clone> Add for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Column vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<T>(pub Vec<T>);

impl<T: Num + Clone> Vector<T> {
    pub fn zeros(n: usize) -> Vector<T> {
        Vector(vec![T::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Vector<T> {
        let mut v = Vector::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `1·v`.
    pub fn sum(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, x| acc + x.clone())
    }

    pub fn dot(&self, other: &Vector<T>) -> T {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

impl<'a, T: Num + Clone> Add for &'a Vector<T> {
    type Output = Vector<T>;

    fn add(self, rhs: &'a Vector<T>) -> Vector<T> {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

/// Letter counts of `word` over an alphabet of size `n`.
pub fn parikh(word: &[Letter], n: usize) -> Vector<BigInt> {
    let mut counts = vec![0u64; n];
    for l in word {
        counts[l.index()] += 1;
    }
    Vector(counts.into_iter().map(BigInt::from).collect())
}

/// Column `j` is the Parikh vector of `h(j)`.
pub fn incidence_matrix(h: &Morphism) -> Matrix<BigInt> {
    let n = h.len();
    let mut a = Matrix::zeros(n, n);
    for j in 0..n {
        for l in h.rule(Letter::from_index(j)).iter() {
            let v = a.get(l.index(), j) + BigInt::one();
            a.set(l.index(), j, v);
        }
    }
    a
}

/// Strongly connected components of the graph `i -> j` when `adj(i, j)`,
/// in reverse topological order (Tarjan).
pub fn strongly_connected_components(n: usize, adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    struct State {
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(v: usize, n: usize, adj: &dyn Fn(usize, usize) -> bool, st: &mut State) {
        st.index[v] = Some(st.next);
        st.low[v] = st.next;
        st.next += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for w in 0..n {
            if !adj(v, w) {
                continue;
            }
            match st.index[w] {
                None => {
                    visit(w, n, adj, st);
                    st.low[v] = st.low[v].min(st.low[w]);
                }
                Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                _ => {}
            }
        }
        if Some(st.low[v]) == st.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("tarjan stack");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.out.push(comp);
        }
    }

    let mut st = State {
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if st.index[v].is_none() {
            visit(v, n, &adj, &mut st);
        }
    }
    st.out
}

/// Letters `a` with `|h^k(a)|` unbounded in `k`.
///
/// A letter grows exactly when it reaches (in zero or more steps) a letter
/// that lies on a cycle of the dependency graph and has an image of length
/// at least two: such a letter regenerates itself plus something else.
pub fn growing_letters(h: &Morphism) -> Vec<bool> {
    let n = h.len();
    let edge = |i: usize, j: usize| h.rule(Letter::from_index(i)).contains(&Letter::from_index(j));
    let reach = reachability(n, edge);
    let expanding: Vec<bool> = (0..n)
        .map(|c| reach[c][c] && h.rule(Letter::from_index(c)).len() >= 2)
        .collect();
    (0..n)
        .map(|a| expanding[a] || (0..n).any(|c| reach[a][c] && expanding[c]))
        .collect()
}

/// `reach[i][j]` when `j` is reachable from `i` in one or more steps.
pub fn reachability(n: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<Vec<bool>> {
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| edge(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (dst, step) in reach[i].iter_mut().zip(via) {
                    *dst |= step;
                }
            }
        }
    }
    reach
}
