use std::ops::{Index, IndexMut};

use super::Scalar;
use crate::error::{Error, Result};

/// Row-major dense matrix over a [`Scalar`].
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].plus(&a.times(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self[(i / o.rows, j / o.cols)].times(&o[(i % o.rows, j % o.cols)])
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.to_complex().norm_sqr()).sum::<f64>().sqrt()
    }

    /// Solves `self · X = b` by Gaussian elimination.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        assert!(self.is_square(), "solve needs a square matrix");
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let m = b.cols;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let mut best = None;
            let mut weight = 0.0;
            for r in col..n {
                let w = a[(r, col)].pivot_weight();
                if w > weight {
                    weight = w;
                    best = Some(r);
                }
            }
            let p = best.ok_or_else(|| Error::Singular(format!("{n}x{n} system")))?;
            if p != col {
                a.swap_rows(p, col);
                x.swap_rows(p, col);
            }
            let inv = a[(col, col)].inverse().ok_or_else(|| Error::Singular("pivot".into()))?;
            for j in col..n {
                a[(col, j)] = a[(col, j)].times(&inv);
            }
            for j in 0..m {
                x[(col, j)] = x[(col, j)].times(&inv);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in col..n {
                    let v = a[(col, j)].times(&f);
                    a[(r, j)] = a[(r, j)].minus(&v);
                }
                for j in 0..m {
                    let v = x[(col, j)].times(&f);
                    x[(r, j)] = x[(r, j)].minus(&v);
                }
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.solve(&Self::identity(self.rows))
    }

    pub fn det(&self) -> S {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut best = None;
            let mut weight = 0.0;
            for r in col..n {
                let w = a[(r, col)].pivot_weight();
                if w > weight {
                    weight = w;
                    best = Some(r);
                }
            }
            let Some(p) = best else { return S::zero() };
            if p != col {
                a.swap_rows(p, col);
                det = det.negate();
            }
            let piv = a[(col, col)].clone();
            det = det.times(&piv);
            let inv = piv.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].times(&inv);
                for j in col..n {
                    let v = a[(col, j)].times(&f);
                    a[(r, j)] = a[(r, j)].minus(&v);
                }
            }
        }
        det
    }

    /// Positive definiteness of a Hermitian matrix via unpivoted LDLᴴ.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n {
            let piv = a[(k, k)].clone();
            if !piv.is_positive_real() {
                return false;
            }
            let inv = piv.inverse().expect("positive pivot");
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].times(&inv);
                for j in k..n {
                    let v = a[(k, j)].times(&f);
                    a[(i, j)] = a[(i, j)].minus(&v);
                }
            }
        }
        true
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldElement;
    use num_complex::Complex64;

    fn fe(s: &str) -> FieldElement {
        s.parse().unwrap()
    }

    #[test]
    fn exact_inverse_and_det() {
        let m = Mat::from_rows(vec![
            vec![fe("1"), fe("i"), fe("0")],
            vec![fe("√3"), fe("2"), fe("1/2")],
            vec![fe("0"), fe("1-i"), fe("3")],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
        let d = m.det();
        assert_eq!(d, fe("6 - 1/2 + 1/2i - 3√3 i"));
        let sing = Mat::from_rows(vec![vec![fe("1"), fe("2")], vec![fe("2"), fe("4")]]);
        assert!(sing.inverse().is_err());
        assert!(sing.det().is_zero());
    }

    #[test]
    fn positivity() {
        let h = Mat::from_rows(vec![vec![fe("2"), fe("i")], vec![fe("-i"), fe("1")]]);
        assert!(h.is_hermitian());
        assert!(h.is_positive_definite());
        let k = Mat::from_rows(vec![vec![fe("1"), fe("2i")], vec![fe("-2i"), fe("1")]]);
        assert!(!k.is_positive_definite());
        let f = h.map(|x| x.to_complex_float());
        assert!(f.is_positive_definite());
    }

    #[test]
    fn kron_shape() {
        let a: Mat<Complex64> = Mat::identity(2);
        let b = Mat::from_fn(3, 3, |i, j| Complex64::new((i + j) as f64, 0.0));
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k[(4, 5)], Complex64::new(3.0, 0.0));
        assert_eq!(k[(1, 4)], Complex64::new(0.0, 0.0));
    }
}
