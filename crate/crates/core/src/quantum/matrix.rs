//! Dense complex matrices, just enough linear algebra for the quantum
//! backend: products, Kronecker products, direct sums, dagger, and a
//! cyclic Jacobi eigensolver for Hermitian matrices.

use std::fmt;

use num_complex::Complex64;

use crate::error::QuantumError;
use crate::par;
use crate::perm::Permutation;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> CMatrix {
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C64) -> CMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> CMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn permutation(p: &Permutation) -> CMatrix {
        // column k carries e_{p(k)}
        let n = p.size();
        let mut m = CMatrix::zeros(n, n);
        for k in 0..n {
            m[(p.apply(k), k)] = ONE;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let rows = par::map_indices(n, |i| {
            let mut row = vec![ZERO; m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == ZERO {
                    continue;
                }
                let other_row = &other.data[l * m..(l + 1) * m];
                for (dst, &b) in row.iter_mut().zip(other_row) {
                    *dst += a * b;
                }
            }
            row
        });
        CMatrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Kronecker product; index convention `(i·p + k, j·q + l)`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (p, q) = (other.rows, other.cols);
        CMatrix::from_fn(self.rows * p, self.cols * q, |i, j| {
            self[(i / p, j / q)] * other[(i % p, j % q)]
        })
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &CMatrix) -> CMatrix {
        let mut m = CMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry magnitude of `self - other`.
    pub fn sup_distance(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.sup_distance(other) <= tol
    }

    /// Deviation from unitarity: `max(‖U†U - I‖∞, ‖UU† - I‖∞)`.
    pub fn unitarity_deviation(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let id = CMatrix::identity(self.rows);
        let a = self.dagger().mul(self).sup_distance(&id);
        let b = self.mul(&self.dagger()).sup_distance(&id);
        a.max(b)
    }

    pub fn check_unitary(&self, tol: f64) -> Result<(), QuantumError> {
        let deviation = self.unitarity_deviation();
        if deviation > tol {
            return Err(QuantumError::NotUnitary { deviation, tol });
        }
        Ok(())
    }

    /// Deviation of `V†V` from the identity.
    pub fn isometry_deviation(&self) -> f64 {
        self.dagger().mul(self).sup_distance(&CMatrix::identity(self.cols))
    }

    /// Is this a 0/1 matrix realizing the given permutation?
    pub fn is_permutation_of(&self, p: &Permutation, tol: f64) -> bool {
        self.approx_eq(&CMatrix::permutation(p), tol)
    }

    /// The column `k`, copied out.
    pub fn column(&self, k: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, k)]).collect()
    }

    /// Keep the first `k` columns.
    pub fn first_columns(&self, k: usize) -> CMatrix {
        assert!(k <= self.cols);
        CMatrix::from_fn(self.rows, k, |i, j| self[(i, j)])
    }

    /// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations,
    /// ascending. The caller vouches for Hermiticity.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert_eq!(self.rows, self.cols, "eigenvalues of a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let scale: f64 = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        let tol = 1e-14 * scale;
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[(p, q)].norm());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let beta = apq.norm();
                    if beta <= tol * 1e-2 {
                        continue;
                    }
                    // phase e^{iα} makes the pivot real, then a real
                    // rotation annihilates it
                    let phase = apq / beta;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (2.0 * beta);
                    let t = if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // J is the identity except (p,p)=(q,q)=c, (p,q)=s·e^{iα},
                    // (q,p)=-s·e^{-iα}; update A ← J†AJ
                    let jpq = phase * s;
                    let jqp = -phase.conj() * s;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c + akq * jqp;
                        a[(k, q)] = akp * jpq + akq * c;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c + aqk * jqp.conj();
                        a[(q, k)] = apk * jpq.conj() + aqk * c;
                    }
                }
            }
        }
        let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
        eigs
    }

    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        self.hermitian_eigenvalues().first().copied().unwrap_or(0.0)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.3}{:+.3}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
