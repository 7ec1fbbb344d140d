//! Dense complex linear algebra on 4×4 matrices.
//!
//! Everything here works in the two-qubit standard basis
//! `{|1,1⟩, |1,0⟩, |0,1⟩, |0,0⟩}` (index 0..=3). The eigensolver is a cyclic
//! complex Jacobi iteration, which for a fixed dimension of four is both
//! fast and unconditionally stable.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex64;

/// A column vector in the standard basis.
pub type Vector4 = [C64; 4];

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Basis index of `|1,1⟩`.
pub const UP_UP: usize = 0;
/// Basis index of `|1,0⟩`.
pub const UP_DOWN: usize = 1;
/// Basis index of `|0,1⟩`.
pub const DOWN_UP: usize = 2;
/// Basis index of `|0,0⟩`.
pub const DOWN_DOWN: usize = 3;

/// Row-major 4×4 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4 {
    entries: [[C64; 4]; 4],
}

impl Default for Matrix4 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Matrix4 {
    pub const fn zero() -> Self {
        Self {
            entries: [[ZERO; 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::from_diagonal([1.0; 4])
    }

    pub fn from_rows(entries: [[C64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn from_real_rows(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.entries[i][j] = C64::new(x, 0.0);
            }
        }
        m
    }

    pub fn from_diagonal(diag: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i][i] = C64::new(d, 0.0);
        }
        m
    }

    /// The projector-like outer product `|u⟩⟨v|`.
    pub fn outer(u: &Vector4, v: &Vector4) -> Self {
        Self {
            entries: u.map(|ui| v.map(|vj| ui * vj.conj())),
        }
    }

    pub fn rows(&self) -> &[[C64; 4]; 4] {
        &self.entries
    }

    pub fn diagonal(&self) -> [C64; 4] {
        std::array::from_fn(|i| self.entries[i][i])
    }

    pub fn column(&self, k: usize) -> Vector4 {
        std::array::from_fn(|i| self.entries[i][k])
    }

    pub fn trace(&self) -> C64 {
        self.diagonal().iter().sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|z| *z *= factor);
        m
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        m
    }

    pub fn apply(&self, v: &Vector4) -> Vector4 {
        std::array::from_fn(|i| (0..4).map(|k| self.entries[i][k] * v[k]).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_check(&self) -> HermitianCheck {
        let mut max_asymmetry: f64 = 0.0;
        for i in 0..4 {
            for j in i..4 {
                max_asymmetry = max_asymmetry.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        HermitianCheck { max_asymmetry }
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    acc += self.entries[i][j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// `(M + M†) / 2`.
    fn hermitian_part(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = (self.entries[i][j] + self.entries[j][i].conj()) * 0.5;
            }
        }
        m
    }

    /// Right-multiply columns `p`, `q` by the 2×2 block `w` (`M ← M·W`).
    fn rotate_columns(&mut self, p: usize, q: usize, w: &[[C64; 2]; 2]) {
        for row in self.entries.iter_mut() {
            let (xp, xq) = (row[p], row[q]);
            row[p] = xp * w[0][0] + xq * w[1][0];
            row[q] = xp * w[0][1] + xq * w[1][1];
        }
    }

    /// Left-multiply rows `p`, `q` by the adjoint of `w` (`M ← W†·M`).
    fn rotate_rows_adjoint(&mut self, p: usize, q: usize, w: &[[C64; 2]; 2]) {
        for k in 0..4 {
            let (xp, xq) = (self.entries[p][k], self.entries[q][k]);
            self.entries[p][k] = w[0][0].conj() * xp + w[1][0].conj() * xq;
            self.entries[q][k] = w[0][1].conj() * xp + w[1][1].conj() * xq;
        }
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i][j]
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;
    fn mul(self, rhs: Matrix4) -> Matrix4 {
        self.matmul(&rhs)
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;
    fn add(mut self, rhs: Matrix4) -> Matrix4 {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;
    fn sub(mut self, rhs: Matrix4) -> Matrix4 {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianCheck {
    pub max_asymmetry: f64,
}

impl HermitianCheck {
    pub fn passes(&self) -> bool {
        self.max_asymmetry <= tol::HERMITICITY
    }
}

/// Eigenvalues in ascending order; column `k` of `vectors` belongs to
/// `values[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem4 {
    pub values: [f64; 4],
    pub vectors: Matrix4,
}

impl EigenSystem4 {
    pub fn vector(&self, k: usize) -> Vector4 {
        self.vectors.column(k)
    }

    /// `Σₖ f(λₖ) |vₖ⟩⟨vₖ|`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Matrix4 {
        (0..4).fold(Matrix4::zero(), |acc, k| {
            let v = self.vector(k);
            acc + Matrix4::outer(&v, &v).scale(f(self.values[k]))
        })
    }

    pub fn reconstruct(&self) -> Matrix4 {
        self.map_spectrum(|x| x)
    }

    /// Largest entry of `|V†V - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        self.vectors
            .adjoint()
            .matmul(&self.vectors)
            .max_abs_diff(&Matrix4::identity())
    }
}

/// Unitary 2×2 block that diagonalizes the Hermitian block
/// `[[app, apq], [conj(apq), aqq]]`, plus the tangent of the rotation.
fn jacobi_rotation(app: f64, aqq: f64, apq: C64) -> ([[C64; 2]; 2], f64) {
    let r = apq.norm();
    let phase = apq.conj() / r;
    let theta = (aqq - app) / (2.0 * r);
    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
    let t = sign / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let w = [[C64::new(c, 0.0), C64::new(s, 0.0)], [-phase * s, phase * c]];
    (w, t)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn hermitian_eigen(m: &Matrix4) -> Result<EigenSystem4> {
    let check = m.hermitian_check();
    if !check.passes() {
        return Err(Error::NonHermitianInput {
            max_asymmetry: check.max_asymmetry,
        });
    }
    let mut a = m.hermitian_part();
    let mut v = Matrix4::identity();
    let threshold = tol::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);

    let mut off = a.off_diagonal_norm();
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off <= threshold {
            return Ok(sorted_system(&a, v));
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[(p, q)];
                if apq.norm() == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
                let (w, t) = jacobi_rotation(app, aqq, apq);
                let shift = t * apq.norm();
                a.rotate_columns(p, q, &w);
                a.rotate_rows_adjoint(p, q, &w);
                v.rotate_columns(p, q, &w);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(app - shift, 0.0);
                a[(q, q)] = C64::new(aqq + shift, 0.0);
            }
        }
        off = a.off_diagonal_norm();
    }
    if off <= threshold {
        return Ok(sorted_system(&a, v));
    }
    Err(Error::NoConvergence {
        sweeps: tol::JACOBI_MAX_SWEEPS,
        off_norm: off,
    })
}

fn sorted_system(a: &Matrix4, v: Matrix4) -> EigenSystem4 {
    let mut order = [0usize, 1, 2, 3];
    // Stable: ties keep pivot order.
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let mut vectors = Matrix4::zero();
    for (new, &old) in order.iter().enumerate() {
        for i in 0..4 {
            vectors[(i, new)] = v[(i, old)];
        }
    }
    EigenSystem4 {
        values: order.map(|k| a[(k, k)].re),
        vectors,
    }
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-PSD_CLAMP, 0)` are clamped to zero; anything more
/// negative is rejected.
pub fn psd_sqrt(rho: &Matrix4) -> Result<Matrix4> {
    let eig = hermitian_eigen(rho)?;
    let min = eig.values[0];
    if min < -tol::PSD_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(eig.map_spectrum(|x| x.max(0.0).sqrt()))
}

/// Singular values of an arbitrary 4×4 matrix, descending.
///
/// One-sided (Hestenes) Jacobi: right rotations orthogonalize the columns,
/// and the singular values are the final column norms. Small singular
/// values come out with absolute error of order `eps·‖G‖` because `G†G` is
/// never formed explicitly.
pub fn singular_values(g: &Matrix4) -> Result<[f64; 4]> {
    const ORTHOGONALITY: f64 = 1e-15;
    let mut g = *g;
    let col_dot = |g: &Matrix4, p: usize, q: usize| -> C64 { (0..4).map(|k| g[(k, p)].conj() * g[(k, q)]).sum() };
    let mut converged = false;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        converged = true;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let alpha = col_dot(&g, p, p).re;
                let beta = col_dot(&g, q, q).re;
                let gamma = col_dot(&g, p, q);
                if gamma.norm() == 0.0 || gamma.norm() <= ORTHOGONALITY * (alpha * beta).sqrt() {
                    continue;
                }
                converged = false;
                let (w, _) = jacobi_rotation(alpha, beta, gamma);
                g.rotate_columns(p, q, &w);
            }
        }
        if converged {
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: tol::JACOBI_MAX_SWEEPS,
            off_norm: f64::NAN,
        });
    }
    let mut sv: [f64; 4] = std::array::from_fn(|k| g.column(k).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// `σʸ ⊗ σʸ` in the standard basis.
#[derive(Debug, Clone, Copy)]
pub struct SpinFlipOperator;

impl SpinFlipOperator {
    pub fn matrix() -> Matrix4 {
        Matrix4::from_real_rows([
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ])
    }
}

/// Normalizes `v` to unit length.
pub fn normalized(v: Vector4) -> Vector4 {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / norm)
}

pub(crate) fn basis_vector(k: usize) -> Vector4 {
    std::array::from_fn(|i| if i == k { ONE } else { ZERO })
}
