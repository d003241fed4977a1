//! The model objects: the Veronese conic with its PSL(2,ℂ) action, the
//! cuspidal cubic with its diagonal stabilizer, the pencil group through
//! `[1:0:0]`, and normal forms carrying arbitrary conics and cuspidal cubics
//! onto the models.

use crate::curves::{self, SingularKind};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, C64, ONE, ZERO};
use crate::moebius::Moebius;
use crate::poly::HomPoly;
use crate::projective::{ProjLine, ProjPoint, ProjTransform, Tol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CUBIC_FRAME_RETRIES: usize = 8;

/// `[z : w] ↦ [z² : 2zw : w²]`, onto the conic `y² = 4xz`.
pub fn veronese_embed(p: [C64; 2]) -> Result<ProjPoint> {
    let [z, w] = p;
    ProjPoint::new([z * z, z * w * 2.0, w * w])
}

/// The symmetric square of a Möbius transformation, acting on binary quadrics.
pub fn iota(m: &Moebius) -> ProjTransform {
    let [[a, b], [c, d]] = *m.matrix();
    ProjTransform::new([
        [a * a, a * b, b * b],
        [a * c * 2.0, a * d + b * c, b * d * 2.0],
        [c * c, c * d, d * d],
    ])
    .expect("ι of an invertible map is invertible")
}

/// `diag(a⁻⁵, a⁴, a)`, which rescales `xy² - z³` by `a³`.
pub fn cubic_stabilizer_element(a: C64) -> Result<ProjTransform> {
    if a == ZERO {
        return Err(Error::ZeroParameter);
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("non-finite parameter".into()));
    }
    ProjTransform::diagonal([a.powi(-5), a.powi(4), a])
}

/// `[[1, a, b], [0, 1, 0], [0, 0, 1]]`: fixes every line through `[1:0:0]`.
pub fn pencil_element(a: C64, b: C64) -> ProjTransform {
    ProjTransform::new([[ONE, a, b], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]]).expect("unipotent")
}

/// Whether a diagonal `g` lies in the stabilizer `{diag(a⁻⁵, a⁴, a)}`:
/// on the determinant-1 lift, `g₂₂ = g₃₃⁴` and `g₁₁ = g₃₃⁻⁵`.
pub fn stabilizer_constraint_check(g: &ProjTransform, tol: Tol) -> Result<bool> {
    if !g.is_diagonal(tol) {
        return Err(Error::NotDiagonal);
    }
    let l = g.lift();
    let (g11, g22, g33) = (l[0][0], l[1][1], l[2][2]);
    let close = |u: C64, v: C64| (u - v).norm() <= tol.0 * u.norm().max(v.norm());
    Ok(close(g22, g33.powi(4)) && close(g11, g33.powi(-5)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    VeroneseConic,
    CuspidalCubic,
}

impl Model {
    pub fn polynomial(&self) -> HomPoly {
        match self {
            Model::VeroneseConic => "y^2 - 4*x*z",
            Model::CuspidalCubic => "x*y^2 - z^3",
        }
        .parse()
        .expect("model polynomial")
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::VeroneseConic => "veronese-conic",
            Model::CuspidalCubic => "cuspidal-cubic",
        }
    }
}

/// `pullback(model, transform) ∝ F`, so `transform` carries the input curve
/// onto the model. `residual` is the relative coefficient mismatch after the
/// best scalar.
#[derive(Clone, Debug)]
pub struct NormalizationResult {
    pub transform: ProjTransform,
    pub model: Model,
    pub residual: f64,
}

fn finish(f: &HomPoly, t: Mat3, model: Model) -> Result<NormalizationResult> {
    let transform = ProjTransform::new(t).map_err(|_| Error::FrameDegenerate)?;
    let (_, residual) = f.proportionality(&curves::pullback(&model.polynomial(), &transform));
    Ok(NormalizationResult { transform, model, residual })
}

/// `P` with `Pᵀ S P = I` for a nonsingular complex symmetric `S`
/// (congruence, not unitary similarity).
fn congruence_to_identity(s: &Mat3) -> Option<Mat3> {
    let scale = linalg::frob_norm(s);
    let mut p = linalg::identity();
    let current = |p: &Mat3| linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(p), s), p);
    let col_add = |p: &mut Mat3, dst: usize, src: usize, f: C64| {
        for row in p.iter_mut() {
            row[dst] += row[src] * f;
        }
    };
    for k in 0..3 {
        let a = current(&p);
        let mut i = (k..3).max_by(|&x, &y| a[x][x].norm().total_cmp(&a[y][y].norm())).unwrap();
        let off = (k..3)
            .flat_map(|x| (k..3).map(move |y| (x, y)))
            .filter(|(x, y)| x != y)
            .max_by(|u, v| a[u.0][u.1].norm().total_cmp(&a[v.0][v.1].norm()));
        if let Some((x, y)) = off {
            if a[i][i].norm() < 0.5 * a[x][y].norm() {
                // small diagonal: e_x ± e_y has a diagonal entry of size about 2|a_xy|
                let plus = a[x][x] + a[x][y] * 2.0 + a[y][y];
                let minus = a[x][x] - a[x][y] * 2.0 + a[y][y];
                col_add(&mut p, x, y, if plus.norm() >= minus.norm() { ONE } else { -ONE });
                i = x;
            }
        }
        for row in p.iter_mut() {
            row.swap(k, i);
        }
        let a = current(&p);
        if a[k][k].norm() <= 1e-12 * scale {
            return None;
        }
        for j in k + 1..3 {
            col_add(&mut p, j, k, -a[k][j] / a[k][k]);
        }
    }
    let a = current(&p);
    for k in 0..3 {
        let r = a[k][k].sqrt().inv();
        for row in p.iter_mut() {
            row[k] *= r;
        }
    }
    Some(p)
}

fn conic_matrix(f: &HomPoly) -> Mat3 {
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

/// Carries a nondegenerate conic onto `y² = 4xz` by reducing both quadratic
/// forms to a sum of squares.
pub fn normalize_conic(f: &HomPoly, tol: Tol) -> Result<NormalizationResult> {
    if f.degree() != 2 {
        return Err(Error::WrongType(format!("expected a conic, got degree {}", f.degree())));
    }
    let s = conic_matrix(f);
    if linalg::det(&s).norm() <= tol.0 * linalg::frob_norm(&s).powi(3) {
        return Err(Error::Degenerate);
    }
    let p = congruence_to_identity(&s).ok_or(Error::Degenerate)?;
    let q = congruence_to_identity(&conic_matrix(&Model::VeroneseConic.polynomial())).expect("model is nondegenerate");
    let pinv = linalg::inverse(&p).ok_or(Error::Degenerate)?;
    finish(f, linalg::mat_mul(&q, &pinv), Model::VeroneseConic)
}

/// The frame a cuspidal cubic is normalized in.
#[derive(Clone, Debug)]
pub struct CubicFrame {
    pub cusp: ProjPoint,
    pub inflection: ProjPoint,
    pub cusp_tangent: ProjLine,
    pub inflection_tangent: ProjLine,
}

/// Cusp, inflection point and their tangents, after checking that the
/// singularities are exactly one cusp and the inflections exactly one point.
pub fn cubic_frame(f: &HomPoly) -> Result<CubicFrame> {
    if f.degree() != 3 {
        return Err(Error::WrongType(format!("expected a cubic, got degree {}", f.degree())));
    }
    let census = |e: Error| Error::WrongType(format!("singularity census failed: {e}"));
    let sing = curves::singular_points(f).map_err(census)?;
    let [cusp] = sing.as_slice() else {
        return Err(Error::WrongType(format!("expected one singular point, found {}", sing.len())));
    };
    if cusp.kind != SingularKind::Cusp {
        return Err(Error::WrongType(format!("the singular point is a {}, not a cusp", cusp.kind.name())));
    }
    let flexes = curves::inflection_points(f).map_err(census)?;
    let [flex] = flexes.as_slice() else {
        return Err(Error::WrongType(format!("expected one inflection point, found {}", flexes.len())));
    };
    let cusp_tangent = *cusp.tangent_cone.first().ok_or(Error::FrameDegenerate)?;
    let inflection_tangent = ProjLine::new(f.gradient(flex.coords())).map_err(|_| Error::FrameDegenerate)?;
    Ok(CubicFrame { cusp: cusp.location, inflection: *flex, cusp_tangent, inflection_tangent })
}

pub fn normalize_cuspidal_cubic(f: &HomPoly) -> Result<NormalizationResult> {
    normalize_cuspidal_cubic_seeded(f, 0)
}

/// Sends the cusp to `[1:0:0]`, the inflection point to `[0:1:0]`, the meet
/// of their tangents to `[0:0:1]` and a further curve point, cut out by a
/// random line, to `[1:1:1]`.
pub fn normalize_cuspidal_cubic_seeded(f: &HomPoly, seed: u64) -> Result<NormalizationResult> {
    let frame = cubic_frame(f)?;
    let corner = frame.cusp_tangent.meet(&frame.inflection_tangent).map_err(|_| Error::FrameDegenerate)?;
    let cols = [frame.cusp.coords(), frame.inflection.coords(), corner.coords()].map(linalg::unit);
    let b: Mat3 = [0, 1, 2].map(|i| [cols[0][i], cols[1][i], cols[2][i]]);
    if linalg::det(&b).norm() <= 1e-9 {
        return Err(Error::FrameDegenerate);
    }
    let binv = linalg::inverse(&b).ok_or(Error::FrameDegenerate)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CUBIC_FRAME_RETRIES {
        let line = ProjLine::new([0, 1, 2].map(|_| linalg::random_complex(&mut rng)))?;
        if line.incidence(&frame.cusp) < 1e-3 || line.incidence(&frame.inflection) < 1e-3 {
            continue;
        }
        let Ok(profile) = curves::line_curve_intersection(f, &line) else { continue };
        let extra = profile.points.iter().filter(|(_, k)| *k == 1).find_map(|(q, _)| {
            let qb = linalg::unit(&linalg::mat_vec(&binv, q.coords()));
            qb.iter().all(|x| x.norm() > 1e-3).then_some(qb)
        });
        if let Some(qb) = extra {
            let d = linalg::diag(qb.map(|x| x.inv()));
            return finish(f, linalg::mat_mul(&d, &binv), Model::CuspidalCubic);
        }
    }
    Err(Error::FrameDegenerate)
}
