use super::Tol;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, C64, ZERO};
use std::fmt;

/// Element of PSL(3,ℂ), stored as its determinant-1 lift (principal cube root).
#[derive(Clone, Copy, Debug)]
pub struct ProjTransform {
    lift: Mat3,
}

impl ProjTransform {
    pub fn new(m: Mat3) -> Result<Self> {
        if !linalg::is_finite_mat(&m) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let scale = linalg::frob_norm(&m);
        let d = linalg::det(&m);
        if scale == 0.0 || d.norm() <= 1e-13 * scale.powi(3) {
            return Err(Error::InvalidInput("matrix is singular".into()));
        }
        let alpha = d.cbrt();
        Ok(ProjTransform { lift: linalg::scale(&m, alpha.inv()) })
    }

    pub fn identity() -> Self {
        ProjTransform { lift: linalg::identity() }
    }

    pub fn diagonal(d: [C64; 3]) -> Result<Self> {
        ProjTransform::new(linalg::diag(d))
    }

    /// The determinant-1 lift.
    pub fn lift(&self) -> &Mat3 {
        &self.lift
    }

    pub fn compose(&self, other: &ProjTransform) -> ProjTransform {
        ProjTransform::new(linalg::mat_mul(&self.lift, &other.lift)).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> ProjTransform {
        // adjugate of a det-1 matrix is its inverse
        ProjTransform::new(linalg::adjugate(&self.lift)).expect("inverse of invertible map")
    }

    pub fn pow(&self, n: u32) -> ProjTransform {
        let mut out = ProjTransform::identity();
        for _ in 0..n {
            out = out.compose(self);
        }
        out
    }

    /// Equality up to a nonzero scalar.
    pub fn approx_eq(&self, other: &ProjTransform, tol: Tol) -> bool {
        matrix_distance(&self.lift, &other.lift) <= tol.0
    }

    pub fn is_diagonal(&self, tol: Tol) -> bool {
        let scale = linalg::max_abs(&self.lift);
        (0..3).all(|i| (0..3).all(|j| i == j || self.lift[i][j].norm() <= tol.0 * scale))
    }
}

impl fmt::Display for ProjTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, &self.lift)
    }
}

/// Distance between matrices up to scale: both scaled to unit Frobenius norm,
/// phase aligned, then compared entrywise (max modulus).
pub fn matrix_distance(a: &Mat3, b: &Mat3) -> f64 {
    let na = linalg::frob_norm(a);
    let nb = linalg::frob_norm(b);
    let inner: C64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| b[i][j].conj() * a[i][j]).sum();
    let phase = if inner.norm() == 0.0 { linalg::ONE } else { inner / inner.norm() };
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((a[i][j] / na - phase * b[i][j] / nb).norm());
        }
    }
    worst
}

pub(crate) fn write_matrix(f: &mut fmt::Formatter<'_>, m: &Mat3) -> fmt::Result {
    write!(f, "[")?;
    for (i, row) in m.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "[")?;
        for (j, x) in row.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", super::fmt_complex(*x))?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// Element of SP(3,ℂ): a nonzero 3×3 matrix up to scale, possibly singular.
/// Stored with its largest-modulus entry equal to 1.
#[derive(Clone, Copy, Debug)]
pub struct PseudoProjMap {
    matrix: Mat3,
    rank: usize,
}

impl PseudoProjMap {
    pub fn new(m: Mat3, tol: Tol) -> Result<Self> {
        if !linalg::is_finite_mat(&m) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let scale = linalg::max_abs(&m);
        if scale == 0.0 {
            return Err(Error::InvalidInput("zero matrix".into()));
        }
        // first entry of maximal modulus becomes 1; entries below tolerance are snapped to 0
        let (pi, pj) = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j].norm() >= scale * (1.0 - 1e-12))
            .unwrap();
        let pivot = m[pi][pj];
        let mut matrix = m.map(|row| row.map(|x| x / pivot));
        for row in matrix.iter_mut() {
            for x in row.iter_mut() {
                if x.norm() <= tol.0 {
                    *x = ZERO;
                }
            }
        }
        matrix[pi][pj] = linalg::ONE;
        let rank = linalg::rank(&matrix, tol.0);
        Ok(PseudoProjMap { matrix, rank })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn approx_eq(&self, other: &PseudoProjMap, tol: Tol) -> bool {
        matrix_distance(&self.matrix, &other.matrix) <= tol.0
    }

    /// The transformation this map represents when it has full rank.
    pub fn as_transform(&self) -> Option<ProjTransform> {
        if self.rank == 3 {
            ProjTransform::new(self.matrix).ok()
        } else {
            None
        }
    }
}

impl fmt::Display for PseudoProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, &self.matrix)
    }
}
