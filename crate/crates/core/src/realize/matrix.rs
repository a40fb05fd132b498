//! Dense square matrices over [`CycloScalar`] and seeded random generation.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::scalars::CycloScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![CycloScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, CycloScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn pow(&self, exp: usize) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        (0..exp).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn column(&self, c: usize) -> Vec<CycloScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Vec<CycloScalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = CycloScalar::zero();
                for (c, x) in v.iter().enumerate() {
                    acc += &(self.get(r, c) * x);
                }
                acc
            })
            .collect()
    }

    /// Entrywise equality restricted to the given columns.
    pub fn columns_equal(&self, other: &Matrix, cols: std::ops::RangeInclusive<usize>) -> bool {
        cols.into_iter().all(|c| (0..self.rows).all(|r| self.get(r, c) == other.get(r, c)))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimension mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

/// Row-major text: rows in brackets, entries separated by commas.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

/// Small random rational: numerator in `-4..=4`, denominator in `1..=3`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> CycloScalar {
    CycloScalar::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            m.set(r, c, random_rational(rng));
        }
    }
    m
}

/// Random vector, redrawn until nonzero.
pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<CycloScalar> {
    loop {
        let v: Vec<_> = (0..dim).map(|_| random_rational(rng)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}
