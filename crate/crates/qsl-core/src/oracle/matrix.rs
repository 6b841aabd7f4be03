//! Minimal dense square-matrix types for the oracles.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;

/// Dense real square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.dim + c] += v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in (r + 1)..self.dim {
                worst = worst.max(math::abs(self.get(r, c) - self.get(c, r)));
            }
        }
        worst
    }
}

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Assemble from real and imaginary parts.
    pub fn from_parts(re: &RMatrix, im: &RMatrix) -> Self {
        assert_eq!(re.dim(), im.dim());
        let dim = re.dim();
        let data = re
            .data()
            .iter()
            .zip(im.data().iter())
            .map(|(&x, &y)| Complex64::new(x, y))
            .collect();
        Self { dim, data }
    }

    /// Purely imaginary multiple of a real matrix: `i * scale * m`.
    pub fn imaginary_scaled(m: &RMatrix, scale: f64) -> Self {
        let data = m.data().iter().map(|&x| Complex64::new(0.0, scale * x)).collect();
        Self { dim: m.dim(), data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                let row_b = &other.data[k * n..(k + 1) * n];
                let row_o = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in row_o.iter_mut().zip(row_b.iter()) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        Self { dim: self.dim, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a + b)
            .collect();
        Self { dim: self.dim, data }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        Self { dim: self.dim, data }
    }

    /// `[self, other] = self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|r| {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..n {
                    acc += self.data[r * n + c] * v[c];
                }
                acc
            })
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .fold(0.0f64, |acc, z| acc.max(math::hypot(z.re, z.im)))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(other.data.iter())
            .fold(0.0f64, |acc, (a, b)| {
                let d = a - b;
                acc.max(math::hypot(d.re, d.im))
            })
    }

    /// Largest entrywise deviation from `M^dag = -M`.
    pub fn anti_hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let d = self.data[r * n + c] + self.data[c * n + r].conj();
                worst = worst.max(math::hypot(d.re, d.im));
            }
        }
        worst
    }

    /// Largest entrywise deviation from unitarity, `max |M^dag M - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.dagger().mul(self).max_abs_diff(&Self::identity(self.dim))
    }
}
