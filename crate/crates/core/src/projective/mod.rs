//! Points, lines and transformations of the complex projective plane.

mod eigen;
mod limit;
mod transform;

pub use eigen::{classify_element, eigen_analysis, EigenData, ElementClass, ElementKind};
pub use limit::{kernel, power_limit, projection_morphism, Kernel};
pub use transform::{ProjTransform, PseudoProjMap};

use crate::error::{Error, Result};
use crate::linalg::{self, Vec3, C64, ONE};
use std::fmt;

/// Numerical tolerance for rank, equality and unitarity decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(1e-9)
    }
}

/// Scales a coordinate vector so its largest-modulus entry is exactly 1
/// (first index wins ties).
pub(crate) fn canonical(v: &Vec3) -> Vec3 {
    let max = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let k = v.iter().position(|x| x.norm() >= max * (1.0 - 1e-12)).unwrap_or(0);
    let pivot = v[k];
    let mut out = v.map(|x| x / pivot);
    out[k] = ONE;
    out
}

fn check_coords(v: &Vec3) -> Result<()> {
    if !v.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidInput("non-finite coordinate".into()));
    }
    if v.iter().all(|x| x.norm() == 0.0) {
        return Err(Error::InvalidInput("all coordinates are zero".into()));
    }
    Ok(())
}

/// A point `[x : y : z]`, stored by its canonical representative.
#[derive(Clone, Copy, Debug)]
pub struct ProjPoint {
    coords: Vec3,
}

impl ProjPoint {
    pub fn new(coords: Vec3) -> Result<Self> {
        check_coords(&coords)?;
        Ok(ProjPoint { coords: canonical(&coords) })
    }

    pub fn real(x: f64, y: f64, z: f64) -> Result<Self> {
        ProjPoint::new([linalg::r(x), linalg::r(y), linalg::r(z)])
    }

    pub fn coords(&self) -> &Vec3 {
        &self.coords
    }

    pub fn distance(&self, other: &ProjPoint) -> f64 {
        linalg::proj_dist(&self.coords, &other.coords)
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol: Tol) -> bool {
        self.distance(other) <= tol.0
    }

    pub fn lies_on(&self, line: &ProjLine, tol: Tol) -> bool {
        line.incidence(self) <= tol.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.coords, ':')
    }
}

/// A line `{ p : ⟨ℓ, p⟩ = 0 }`, given by dual coordinates.
#[derive(Clone, Copy, Debug)]
pub struct ProjLine {
    dual: Vec3,
}

impl ProjLine {
    pub fn new(dual: Vec3) -> Result<Self> {
        check_coords(&dual)?;
        Ok(ProjLine { dual: canonical(&dual) })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        ProjLine::new([linalg::r(a), linalg::r(b), linalg::r(c)])
    }

    pub fn dual_coords(&self) -> &Vec3 {
        &self.dual
    }

    pub fn distance(&self, other: &ProjLine) -> f64 {
        linalg::proj_dist(&self.dual, &other.dual)
    }

    pub fn approx_eq(&self, other: &ProjLine, tol: Tol) -> bool {
        self.distance(other) <= tol.0
    }

    /// Normalized incidence `|⟨ℓ, p⟩| / (|ℓ| |p|)`.
    pub fn incidence(&self, p: &ProjPoint) -> f64 {
        linalg::dot(&self.dual, &p.coords).norm() / (linalg::norm(&self.dual) * linalg::norm(&p.coords))
    }

    /// Two points spanning the line: the unit vectors off the pivot coordinate,
    /// corrected along the pivot. For `x = 0` this gives `e₂, e₃`.
    pub fn basis(&self) -> (Vec3, Vec3) {
        let k = self.dual.iter().position(|x| *x == ONE).unwrap_or(0);
        let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let make = |i: usize| {
            let mut v = [linalg::ZERO; 3];
            v[i] = ONE;
            v[k] = -self.dual[i] / self.dual[k];
            v
        };
        (make(free[0]), make(free[1]))
    }

    /// The intersection point of two distinct lines.
    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        let p = linalg::cross(&self.dual, &other.dual);
        if linalg::norm(&p) <= 1e-14 * linalg::norm(&self.dual) * linalg::norm(&other.dual) {
            return Err(Error::EqualPoints);
        }
        ProjPoint::new(p)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coords(f, &self.dual, ',')
    }
}

fn write_coords(f: &mut fmt::Formatter<'_>, v: &Vec3, sep: char) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, "{sep}")?;
        }
        write!(f, "{}", fmt_complex(*x))?;
    }
    write!(f, "]")
}

pub(crate) fn fmt_complex(x: C64) -> String {
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    let (re, im) = (clean(x.re), clean(x.im));
    if im == 0.0 {
        format!("{}", round_sig(re))
    } else if re == 0.0 {
        format!("{}i", round_sig(im))
    } else {
        format!("{}{:+}i", round_sig(re), round_sig(im))
    }
}

fn round_sig(v: f64) -> f64 {
    (v * 1e10).round() / 1e10
}

/// The unique line through two distinct points.
pub fn join(p: &ProjPoint, q: &ProjPoint, tol: Tol) -> Result<ProjLine> {
    if p.approx_eq(q, tol) {
        return Err(Error::EqualPoints);
    }
    ProjLine::new(linalg::cross(&p.coords, &q.coords))
}

/// Image of a point under a projective transformation.
pub fn apply(g: &ProjTransform, p: &ProjPoint) -> ProjPoint {
    ProjPoint::new(linalg::mat_vec(g.lift(), p.coords())).expect("invertible map sends nonzero to nonzero")
}

/// Image of a line under `g`: dual coordinates transform by the inverse transpose.
pub fn apply_to_line(g: &ProjTransform, l: &ProjLine) -> ProjLine {
    let inv = g.inverse();
    ProjLine::new(linalg::vec_mat(l.dual_coords(), inv.lift())).expect("invertible map sends nonzero to nonzero")
}
