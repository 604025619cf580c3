//! Minimal complex sparse matrices (coordinate map) for the truncated
//! representations, plus a dense LU inverse for the few non-diagonal
//! inversions the decoupling maps need.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square sparse matrix over Complex64 with entries keyed by (row, col).
#[derive(Clone, Debug, PartialEq)]
pub struct SpMat {
    dim: usize,
    entries: BTreeMap<(usize, usize), Complex64>,
}

impl SpMat {
    pub fn zeros(dim: usize) -> SpMat {
        SpMat { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> SpMat {
        let mut m = SpMat::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> SpMat {
        let mut m = SpMat::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        assert!(row < self.dim && col < self.dim);
        if v.norm_sqr() == 0.0 {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: Complex64) {
        let cur = self.get(row, col) + v;
        self.set(row, col, cur);
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries
            .get(&(row, col))
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim];
        for (&(r, c), &v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    pub fn matmul(&self, other: &SpMat) -> SpMat {
        assert_eq!(self.dim, other.dim);
        let mut out = SpMat::zeros(self.dim);
        // group rhs entries by row for the inner pass
        for (&(r1, c1), &v1) in &self.entries {
            for (&(r2, c2), &v2) in other.entries.range((c1, 0)..=(c1, usize::MAX)) {
                debug_assert_eq!(r2, c1);
                let _ = r2;
                out.add_to(r1, c2, v1 * v2);
            }
        }
        out
    }

    pub fn add(&self, other: &SpMat) -> SpMat {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&(r, c), &v) in &other.entries {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &SpMat) -> SpMat {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, f: Complex64) -> SpMat {
        let mut out = SpMat::zeros(self.dim);
        for (&(r, c), &v) in &self.entries {
            out.set(r, c, f * v);
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SpMat {
        let mut out = SpMat::zeros(self.dim);
        for (&(r, c), &v) in &self.entries {
            out.set(c, r, v.conj());
        }
        out
    }

    pub fn commutator(&self, other: &SpMat) -> SpMat {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(r, c)| r == c)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &SpMat) -> f64 {
        let mut m = 0.0f64;
        for (&k, &v) in &self.entries {
            m = m.max((v - other.get(k.0, k.1)).norm());
        }
        for (&k, &v) in &other.entries {
            m = m.max((v - self.get(k.0, k.1)).norm());
        }
        m
    }

    /// Exact inverse of a diagonal matrix.
    pub fn inverse_diagonal(&self) -> Result<SpMat> {
        if !self.is_diagonal() {
            return Err(Error::Singular("matrix is not diagonal".into()));
        }
        let mut out = SpMat::zeros(self.dim);
        for i in 0..self.dim {
            let d = self.get(i, i);
            if d.norm() < 1e-300 {
                return Err(Error::Singular(format!("zero diagonal entry at {}", i)));
            }
            out.set(i, i, d.inv());
        }
        Ok(out)
    }

    /// Dense LU inverse with partial pivoting.
    pub fn dense_inverse(&self) -> Result<SpMat> {
        let n = self.dim;
        let mut a = vec![vec![Complex64::new(0.0, 0.0); 2 * n]; n];
        for i in 0..n {
            a[i][n + i] = Complex64::new(1.0, 0.0);
        }
        for (&(r, c), &v) in &self.entries {
            a[r][c] = v;
        }
        for col in 0..n {
            let (piv, mag) = (col..n)
                .map(|r| (r, a[r][col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if mag < 1e-14 {
                return Err(Error::Singular(format!(
                    "pivot {:.3e} at column {} during inversion",
                    mag, col
                )));
            }
            a.swap(col, piv);
            let inv = a[col][col].inv();
            for j in col..2 * n {
                a[col][j] *= inv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r][col];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col..2 * n {
                    let t = a[col][j];
                    a[r][j] -= f * t;
                }
            }
        }
        let mut out = SpMat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let v = a[r][n + c];
                if v.norm() > 0.0 {
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }
}

pub fn norm2(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}
