//! Plane curves `F = 0`: the group action on equations, singularities,
//! inflections, intersections with lines, numeric invariants and duals.

mod dual;
mod singular;
mod solve;

pub use dual::{dual_curve, implicitize, DualCurve, Parametrization};
pub use singular::{inflection_points, singular_points, SingularKind, SingularPoint, EXACT_DEGREE_BOUND};

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::poly::HomPoly;
use crate::projective::{ProjLine, ProjPoint, ProjTransform, Tol};
use crate::roots;

/// `F(g·X)` for the determinant-1 lift of `g`.
pub fn pullback(f: &HomPoly, g: &ProjTransform) -> HomPoly {
    HomPoly::from_form(f.0.substitute(g.lift())).expect("substitution by an invertible map keeps F nonzero")
}

/// `pullback(F, g) = scale·F` up to the relative coefficient `residual`.
#[derive(Clone, Copy, Debug)]
pub struct InvarianceCertificate {
    pub scale: C64,
    pub residual: f64,
}

pub fn invariance_check(f: &HomPoly, g: &ProjTransform, tol: Tol) -> Result<InvarianceCertificate> {
    let (scale, residual) = f.proportionality(&pullback(f, g));
    if residual < tol.0 {
        Ok(InvarianceCertificate { scale, residual })
    } else {
        Err(Error::NotInvariant { generator: None, component: None, residual })
    }
}

/// Points of `F ∩ ℓ` with intersection multiplicities summing to `deg F`.
#[derive(Clone, Debug)]
pub struct IntersectionProfile {
    pub points: Vec<(ProjPoint, usize)>,
}

impl IntersectionProfile {
    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.1).sum()
    }
}

pub fn line_curve_intersection(f: &HomPoly, line: &ProjLine) -> Result<IntersectionProfile> {
    let (u, v) = line.basis();
    let coeffs = f.restrict(&u, &v);
    let scale = f.coeff_norm() * linalg::norm(&u).max(linalg::norm(&v)).powi(f.degree() as i32);
    if coeffs.iter().all(|c| c.norm() <= 1e-12 * scale) {
        return Err(Error::LineIsComponent);
    }
    let clusters = roots::binary_root_clusters(&coeffs).ok_or(Error::LineIsComponent)?;
    let mut points = Vec::with_capacity(clusters.len());
    for ([s, t], k) in clusters {
        let p = [0, 1, 2].map(|i| u[i] * s + v[i] * t);
        points.push((ProjPoint::new(p)?, k));
    }
    Ok(IntersectionProfile { points })
}

/// `(n-1)(n-2)/2 - d - s`.
pub fn clebsch_genus(n: i64, d: i64, s: i64) -> Result<i64> {
    if n < 1 || d < 0 || s < 0 {
        return Err(Error::InvalidInput(format!("need n ≥ 1 and d, s ≥ 0, got ({n}, {d}, {s})")));
    }
    let g = (n - 1) * (n - 2) / 2 - d - s;
    if g < 0 {
        return Err(Error::NegativeGenus { n, d, s });
    }
    Ok(g)
}

fn pluecker_args(n: i64, d: i64, s: i64) -> Result<()> {
    if n < 2 || d < 0 || s < 0 {
        return Err(Error::InvalidInput(format!("need n ≥ 2 and d, s ≥ 0, got ({n}, {d}, {s})")));
    }
    Ok(())
}

/// Degree of the dual curve: `n(n-1) - 2d - 3s`.
pub fn pluecker_class(n: i64, d: i64, s: i64) -> Result<i64> {
    pluecker_args(n, d, s)?;
    let c = n * (n - 1) - 2 * d - 3 * s;
    if c < 0 {
        return Err(Error::Inconsistent { n, d, s });
    }
    Ok(c)
}

/// Number of inflections: `3n(n-2) - 6d - 8s`.
pub fn pluecker_inflections(n: i64, d: i64, s: i64) -> Result<i64> {
    pluecker_args(n, d, s)?;
    let c = 3 * n * (n - 2) - 6 * d - 8 * s;
    if c < 0 {
        return Err(Error::Inconsistent { n, d, s });
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub degree: i64,
    pub nodes: i64,
    pub cusps: i64,
    pub class: i64,
    pub inflections: i64,
    pub genus: i64,
}

/// Counts nodes and cusps, then applies the genus and Plücker formulas.
/// Curves with singularities other than nodes and cusps are outside their scope.
pub fn curve_invariants(f: &HomPoly) -> Result<CurveInvariants> {
    let n = f.degree() as i64;
    let sing = singular_points(f)?;
    if sing.iter().any(|p| p.kind == SingularKind::Other) {
        return Err(Error::Unsupported("singularities other than nodes and cusps".into()));
    }
    let d = sing.iter().filter(|p| p.kind == SingularKind::Node).count() as i64;
    let s = sing.iter().filter(|p| p.kind == SingularKind::Cusp).count() as i64;
    Ok(CurveInvariants {
        degree: n,
        nodes: d,
        cusps: s,
        class: pluecker_class(n, d, s)?,
        inflections: pluecker_inflections(n, d, s)?,
        genus: clebsch_genus(n, d, s)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_real, r};

    fn poly(s: &str) -> HomPoly {
        s.parse().unwrap()
    }

    #[test]
    fn pullback_examples() {
        let z = poly("z");
        assert!(z.is_proportional(&pullback(&z, &ProjTransform::identity()), 1e-15));
        let cubic = poly("x*y^2 - z^3");
        let g = ProjTransform::diagonal([r(1.0 / 32.0), r(16.0), r(2.0)]).unwrap();
        let (lambda, res) = cubic.proportionality(&pullback(&cubic, &g));
        assert!((lambda - r(8.0)).norm() < 1e-12 && res < 1e-15);
        let conic = poly("y^2 - 4*x*z");
        let iota = ProjTransform::new(from_real([[1.0, 1.0, 1.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]])).unwrap();
        assert_eq!(pullback(&conic, &iota), conic);
    }

    #[test]
    fn invariance_examples() {
        let tol = Tol::default();
        let cubic = poly("x*y^2 - z^3");
        let g = ProjTransform::diagonal([r(2f64.powi(-5)), r(16.0), r(2.0)]).unwrap();
        assert!((invariance_check(&cubic, &g, tol).unwrap().scale - r(8.0)).norm() < 1e-12);
        let shear = ProjTransform::new(from_real([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])).unwrap();
        assert!((invariance_check(&poly("z"), &shear, tol).unwrap().scale - r(1.0)).norm() < 1e-15);
        // diag(2, 1, 1/2) already has determinant 1
        let d = ProjTransform::diagonal([r(2.0), r(1.0), r(0.5)]).unwrap();
        assert!((invariance_check(&poly("x"), &d, tol).unwrap().scale - r(2.0)).norm() < 1e-12);
    }

    #[test]
    fn non_invariant_reports_residual() {
        let g = ProjTransform::new(from_real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 0.0, 1.0]])).unwrap();
        match invariance_check(&poly("z"), &g, Tol::default()) {
            Err(Error::NotInvariant { residual, .. }) => assert!(residual > 0.1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn intersection_examples() {
        let cubic = poly("x*y^2 - z^3");
        let y0 = line_curve_intersection(&cubic, &ProjLine::real(0.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(y0.points.len(), 1);
        assert_eq!(y0.points[0].1, 3);
        assert!(y0.points[0].0.distance(&ProjPoint::real(1.0, 0.0, 0.0).unwrap()) < 1e-12);
        let x0 = line_curve_intersection(&cubic, &ProjLine::real(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(x0.points.len(), 1);
        assert_eq!(x0.points[0].1, 3);
        assert!(x0.points[0].0.distance(&ProjPoint::real(0.0, 1.0, 0.0).unwrap()) < 1e-12);
        let conic = poly("y^2 - 4*x*z");
        let z0 = line_curve_intersection(&conic, &ProjLine::real(0.0, 0.0, 1.0).unwrap()).unwrap();
        assert_eq!(z0.points.len(), 1);
        assert_eq!(z0.points[0].1, 2);
        assert!(z0.points[0].0.distance(&ProjPoint::real(1.0, 0.0, 0.0).unwrap()) < 1e-12);
    }

    #[test]
    fn line_component_detected() {
        let f = poly("x*y*z");
        assert!(matches!(
            line_curve_intersection(&f, &ProjLine::real(0.0, 0.0, 1.0).unwrap()),
            Err(Error::LineIsComponent)
        ));
        let g = poly("x^2 + y^2");
        assert!(line_curve_intersection(&g, &ProjLine::new([r(1.0), c(0.0, 1.0), r(0.0)]).unwrap()).is_err());
    }

    #[test]
    fn numeric_formulas() {
        assert_eq!(clebsch_genus(3, 0, 1).unwrap(), 0);
        assert_eq!(clebsch_genus(2, 0, 0).unwrap(), 0);
        assert_eq!(clebsch_genus(4, 0, 0).unwrap(), 3);
        assert!(matches!(clebsch_genus(3, 1, 1), Err(Error::NegativeGenus { .. })));
        assert_eq!(pluecker_class(3, 0, 1).unwrap(), 3);
        assert_eq!(pluecker_inflections(3, 0, 1).unwrap(), 1);
        assert_eq!(pluecker_class(2, 0, 0).unwrap(), 2);
        assert_eq!(pluecker_inflections(2, 0, 0).unwrap(), 0);
        assert_eq!(pluecker_class(3, 1, 0).unwrap(), 4);
        assert_eq!(pluecker_inflections(3, 1, 0).unwrap(), 3);
        assert!(matches!(pluecker_inflections(3, 0, 2), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn invariants_of_cuspidal_cubic() {
        let inv = curve_invariants(&poly("x*y^2 - z^3")).unwrap();
        assert_eq!(
            inv,
            CurveInvariants { degree: 3, nodes: 0, cusps: 1, class: 3, inflections: 1, genus: 0 }
        );
    }
}
