//! Möbius transformations as 2×2 complex matrices up to scale.

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};
use std::fmt;

pub type Mat2 = [[C64; 2]; 2];

/// `z ↦ (az + b)/(cz + d)`, stored normalized to `ad - bc = 1`.
#[derive(Clone, Copy, Debug)]
pub struct Moebius {
    m: Mat2,
}

impl Moebius {
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.iter().flatten().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("non-finite Möbius coefficient".into()));
        }
        let scale = m.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if scale == 0.0 || d.norm() <= 1e-13 * scale * scale {
            return Err(Error::InvalidInput("Möbius matrix is singular".into()));
        }
        let k = d.sqrt().inv();
        Ok(Moebius { m: m.map(|row| row.map(|x| x * k)) })
    }

    pub fn from_coeffs(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        Moebius::new([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Moebius { m: [[ONE, ZERO], [ZERO, ONE]] }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn compose(&self, other: &Moebius) -> Moebius {
        let (a, b) = (&self.m, &other.m);
        let mut out = [[ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Moebius::new(out).expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> Moebius {
        let m = &self.m;
        Moebius::new([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]).expect("inverse of invertible matrix")
    }

    /// Action on a point `[z : w]` of the projective line.
    pub fn apply(&self, p: [C64; 2]) -> [C64; 2] {
        let m = &self.m;
        [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
    }

    /// Equality up to a nonzero scalar, after normalizing both to unit norm.
    pub fn distance(&self, other: &Moebius) -> f64 {
        let na = self.m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let nb = other.m.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let inner: C64 = self.m.iter().flatten().zip(other.m.iter().flatten()).map(|(a, b)| b.conj() * a).sum();
        let phase = if inner.norm() == 0.0 { ONE } else { inner / inner.norm() };
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a / na - phase * b / nb).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Moebius, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::projective::fmt_complex;
        let m = &self.m;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            fmt_complex(m[0][0]),
            fmt_complex(m[0][1]),
            fmt_complex(m[1][0]),
            fmt_complex(m[1][1])
        )
    }
}
