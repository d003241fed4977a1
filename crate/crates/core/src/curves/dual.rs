use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3, C64, ONE, ZERO};
use crate::poly::{BinaryForm, Exponent, HomPoly};
use crate::projective::Tol;
use crate::roots;
use nalgebra::DMatrix;
use std::f64::consts::PI;

/// Null-space fits with `σ_min / σ_max` above this are rejected.
const FIT_RESIDUAL: f64 = 1e-7;

/// A map `(s : t) ↦ [γ₀ : γ₁ : γ₂]` by binary forms of a common degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub components: [BinaryForm; 3],
}

fn form_norm(b: &BinaryForm) -> f64 {
    b.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `P / (s - ρ t)`, or `P / t` for the root at infinity.
fn divide_linear(p: &BinaryForm, root: roots::BinaryRoot) -> BinaryForm {
    let c = &p.coeffs;
    let d = p.degree();
    if root[1].norm() <= 1e-12 * root[0].norm() {
        return BinaryForm::new(c[..d].to_vec());
    }
    let rho = root[0] / root[1];
    let mut q = vec![ZERO; d];
    q[d - 1] = c[d];
    for i in (1..d).rev() {
        q[i - 1] = c[i] + rho * q[i];
    }
    BinaryForm::new(q)
}

impl Parametrization {
    pub fn new(components: [BinaryForm; 3]) -> Result<Self> {
        let d = components[0].degree();
        if d == 0 || components.iter().any(|c| c.degree() != d) {
            return Err(Error::InvalidInput("parametrization components need one common positive degree".into()));
        }
        if components.iter().all(|c| form_norm(c) == 0.0) {
            return Err(Error::InvalidInput("parametrization is identically zero".into()));
        }
        if !components.iter().all(|c| c.coeffs.iter().all(|x| x.is_finite())) {
            return Err(Error::InvalidInput("non-finite parametrization coefficient".into()));
        }
        Ok(Parametrization { components })
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn eval(&self, s: C64, t: C64) -> Vec3 {
        [0, 1, 2].map(|i| self.components[i].eval(s, t))
    }

    /// Drops linear factors shared by all three components (base points).
    fn reduced(mut self) -> Parametrization {
        'outer: while self.degree() > 1 {
            let lead = self.components.iter().max_by(|a, b| form_norm(a).total_cmp(&form_norm(b))).unwrap();
            let Some(candidates) = roots::binary_roots(&lead.coeffs) else { break };
            for r in candidates {
                let r = [r[0], r[1]].map(|x| x / (r[0].norm_sqr() + r[1].norm_sqr()).sqrt());
                let shared = self.components.iter().all(|c| c.eval(r[0], r[1]).norm() <= 1e-9 * form_norm(c));
                if shared {
                    self.components = self.components.map(|c| divide_linear(&c, r));
                    continue 'outer;
                }
            }
            break;
        }
        self
    }

    /// The tangent lines `γ_s × γ_t`, a parametrization of the dual curve.
    pub fn tangent_map(&self) -> Result<Parametrization> {
        let ds: Vec<BinaryForm> = self.components.iter().map(|c| c.d_s()).collect();
        let dt: Vec<BinaryForm> = self.components.iter().map(|c| c.d_t()).collect();
        let cross = |i: usize, j: usize| ds[i].mul(&dt[j]).sub(&ds[j].mul(&dt[i]));
        let comps = [cross(1, 2), cross(2, 0), cross(0, 1)];
        if comps.iter().all(|c| form_norm(c) <= 1e-12 * comps.iter().map(form_norm).fold(0.0, f64::max).max(1e-300)) {
            return Err(Error::Degenerate);
        }
        Ok(Parametrization::new(comps)?.reduced())
    }
}

/// The dual curve as an equation in dual coordinates, with the dual
/// parametrization when one was supplied.
#[derive(Clone, Debug)]
pub struct DualCurve {
    pub implicit: Option<HomPoly>,
    pub parametrization: Option<Parametrization>,
}

fn sample_params(n: usize) -> Vec<(C64, C64)> {
    (0..n)
        .map(|k| {
            let radius = 0.6 + 0.45 * (k % 3) as f64;
            (C64::from_polar(radius, 0.7 + 2.0 * PI * k as f64 / n as f64), ONE)
        })
        .collect()
}

fn symmetric_matrix(f: &HomPoly) -> Mat3 {
    let mut s = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            s[i][j] = if i == j { f.coeff(e) } else { f.coeff(e) / 2.0 };
        }
    }
    s
}

fn quadratic_form(s: &Mat3) -> Result<HomPoly> {
    let mut terms = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            terms.push((e, if i == j { s[i][j] } else { s[i][j] * 2.0 }));
        }
    }
    HomPoly::new(2, terms)
}

pub fn dual_curve(f: &HomPoly, param: Option<&Parametrization>, tol: Tol) -> Result<DualCurve> {
    if let Some(p) = param {
        let scale = f.coeff_norm();
        let on_curve = sample_params(8).into_iter().all(|(s, t)| {
            let v = linalg::unit(&p.eval(s, t));
            f.eval(&v).norm() <= 1e-8 * scale
        });
        if !on_curve {
            return Err(Error::InvalidInput("the parametrization does not lie on the curve".into()));
        }
    }
    match (f.degree(), param) {
        (2, _) => {
            let s = symmetric_matrix(f);
            if linalg::det(&s).norm() <= tol.0 * linalg::frob_norm(&s).powi(3) {
                return Err(Error::Degenerate);
            }
            let parametrization = param.map(|p| p.tangent_map()).transpose()?;
            Ok(DualCurve { implicit: Some(quadratic_form(&linalg::adjugate(&s))?), parametrization })
        }
        (1, _) => Err(Error::Unsupported("the dual of a line is a single point".into())),
        (_, Some(p)) => {
            let dual = p.tangent_map()?;
            let implicit = implicitize(&dual, 3).ok();
            Ok(DualCurve { implicit, parametrization: Some(dual) })
        }
        (n, None) => Err(Error::Unsupported(format!("the dual of a degree-{n} curve needs a parametrization"))),
    }
}

fn monomials(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

/// Lowest-degree equation (up to `max_degree`) vanishing on the image of `p`,
/// fitted as the null vector of monomials evaluated at sampled points.
pub fn implicitize(p: &Parametrization, max_degree: u32) -> Result<HomPoly> {
    for degree in 1..=max_degree {
        let mons = monomials(degree);
        let n = (mons.len() + 6).max(12);
        let points: Vec<Vec3> = sample_params(n)
            .into_iter()
            .map(|(s, t)| p.eval(s, t))
            .filter(|v| linalg::norm(v) > 1e-9)
            .map(|v| linalg::unit(&v))
            .collect();
        let a = DMatrix::from_fn(points.len(), mons.len(), |r, c| {
            let e = mons[c];
            let v = &points[r];
            v[0].powu(e[0]) * v[1].powu(e[1]) * v[2].powu(e[2])
        });
        let svd = a.svd(false, true);
        let sv = &svd.singular_values;
        let (jmin, smin) = sv.iter().enumerate().min_by(|x, y| x.1.total_cmp(y.1)).unwrap();
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        if smax == 0.0 || smin / smax >= FIT_RESIDUAL {
            continue;
        }
        let vt = svd.v_t.as_ref().expect("requested right singular vectors");
        let coeffs: Vec<C64> = (0..mons.len()).map(|c| vt[(jmin, c)].conj()).collect();
        let big = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let pivot = *coeffs.iter().find(|c| c.norm() >= big * (1.0 - 1e-12)).unwrap();
        let terms = mons
            .iter()
            .zip(&coeffs)
            .map(|(e, c)| (*e, c / pivot))
            .filter(|(_, c)| c.norm() > 1e-12);
        return HomPoly::new(degree, terms);
    }
    Err(Error::Unsupported(format!("no equation of degree at most {max_degree} fits the parametrization")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{singular_points, SingularKind};
    use crate::linalg::r;

    fn poly(s: &str) -> HomPoly {
        s.parse().unwrap()
    }

    /// `[t³ : s³ : t s²]`, which reads `[t³ : 1 : t]` in the chart `s = 1`.
    fn cuspidal_param() -> Parametrization {
        let b = |c: [f64; 4]| BinaryForm::new(c.iter().map(|&x| r(x)).collect());
        Parametrization::new([b([1.0, 0.0, 0.0, 0.0]), b([0.0, 0.0, 0.0, 1.0]), b([0.0, 0.0, 1.0, 0.0])]).unwrap()
    }

    #[test]
    fn dual_of_standard_conic() {
        let d = dual_curve(&poly("y^2 - 4*x*z"), None, Tol::default()).unwrap();
        // tangent line to [s² : 2st : t²] is [t² : -st : s²], so the dual is v² = u w
        assert!(d.implicit.unwrap().is_proportional(&poly("y^2 - x*z"), 1e-14));
    }

    #[test]
    fn sum_of_squares_is_self_dual() {
        let f = poly("x^2 + y^2 + z^2");
        let d = dual_curve(&f, None, Tol::default()).unwrap();
        assert!(d.implicit.unwrap().is_proportional(&f, 1e-14));
    }

    #[test]
    fn degenerate_conic_rejected() {
        assert!(matches!(dual_curve(&poly("x*y"), None, Tol::default()), Err(Error::Degenerate)));
    }

    #[test]
    fn cubic_needs_parametrization() {
        assert!(matches!(dual_curve(&poly("x*y^2 - z^3"), None, Tol::default()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dual_of_cuspidal_cubic_is_cuspidal_cubic() {
        let f = poly("x*y^2 - z^3");
        let d = dual_curve(&f, Some(&cuspidal_param()), Tol::default()).unwrap();
        assert_eq!(d.parametrization.as_ref().unwrap().degree(), 3);
        let g = d.implicit.unwrap();
        assert_eq!(g.degree(), 3);
        let sing = singular_points(&g).unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].kind, SingularKind::Cusp);
    }

    #[test]
    fn parametrization_off_the_curve_rejected() {
        let f = poly("x*y^2 + z^3");
        assert!(dual_curve(&f, Some(&cuspidal_param()), Tol::default()).is_err());
    }
}
