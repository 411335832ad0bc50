//! Dense matrices over a generic ring.
//!
//! Besides the usual products this module provides the two reductions the
//! counting formulas need: `M^Δ` (keep the diagonal) and `𝒮[M]` (sum of all
//! entries). `det(I - tM)` and `tr(M^m)` only depend on the strongly
//! connected pieces of the support graph of `M`, which keeps the symbolic
//! determinant small for the sparse level matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::One;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::poly::Polynomial;
use crate::scalar::{ExactDiv, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: idx.len(), cols: idx.len(), data }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// `M^Δ`: the diagonal part of `M`.
    pub fn diag(&self) -> Self {
        assert!(self.is_square());
        let mut m = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            m[(i, i)] = self[(i, i)].clone();
        }
        m
    }

    /// `𝒮[M]`: the sum of all entries.
    pub fn entry_sum(&self) -> T {
        self.data.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).fold(T::zero(), |a, b| a + b)
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Strongly connected components of the support graph that carry at
    /// least one cycle, each sorted ascending, in ascending order of their
    /// smallest index.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for i in 0..n {
            for j in 0..n {
                if !self[(i, j)].is_zero() {
                    g.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
                v.sort_unstable();
                v
            })
            .filter(|c| c.len() > 1 || !self[(c[0], c[0])].is_zero())
            .collect();
        comps.sort();
        comps
    }

    /// `tr(M^m)`, computed blockwise on the cyclic components.
    pub fn trace_of_power(&self, m: u32) -> T {
        self.cyclic_components()
            .iter()
            .map(|c| self.principal(c).pow(m).trace())
            .fold(T::zero(), |a, b| a + b)
    }
}

impl<T: ExactDiv> Matrix<T> {
    /// Determinant by Bareiss fraction-free elimination.
    pub fn det_bareiss(&self) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut m = self.clone();
        let mut prev = T::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return T::zero();
                };
                for j in 0..n {
                    m.data.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = m[(k, k)].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[(i, j)].clone() * pivot.clone() - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = v.div_exact(&prev);
                }
                m[(i, k)] = T::zero();
            }
            prev = pivot;
        }
        let d = m[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// `det(I - tM)` as a polynomial in `t`.
    pub fn det_one_minus_t(&self) -> Polynomial<T> {
        let mut acc = Polynomial::one();
        for comp in self.cyclic_components() {
            let block = self.principal(&comp);
            let k = comp.len();
            let mut poly = Matrix::<Polynomial<T>>::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    let mut c = vec![T::zero(), -block[(i, j)].clone()];
                    if i == j {
                        c[0] = T::one();
                    }
                    poly[(i, j)] = Polynomial::new(c);
                }
            }
            acc = &acc * &poly.det_bareiss();
        }
        acc
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T: Ring> Add<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Ring> Sub<&Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

/// Row-major, entries space-separated, one row per line.
impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let mut first = true;
            for x in row {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
