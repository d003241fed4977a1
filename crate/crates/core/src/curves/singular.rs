use super::solve::{generic_frame, lift_root, resultant_z};
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3, C64, ZERO};
use crate::poly::{Form, HomPoly};
use crate::projective::{ProjLine, ProjPoint};
use crate::roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Highest degree handled by the closed-form singular and inflection solvers.
pub const EXACT_DEGREE_BOUND: u32 = 3;

/// Loose acceptance for solutions of polynomial systems, relative to the
/// coefficient norm at unit-norm points.
const SOLUTION_TOL: f64 = 1e-6;
const SEED: u64 = 0x6b6c_6569_6e;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularKind {
    Node,
    Cusp,
    Other,
}

impl SingularKind {
    pub fn name(&self) -> &'static str {
        match self {
            SingularKind::Node => "node",
            SingularKind::Cusp => "cusp",
            SingularKind::Other => "other",
        }
    }
}

/// Node: two tangent lines. Cusp: the single cuspidal tangent. Other: the
/// repeated tangent when the quadratic part is a square, none when it vanishes.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub location: ProjPoint,
    pub kind: SingularKind,
    pub tangent_cone: Vec<ProjLine>,
}

fn unit_point(p: &ProjPoint) -> Vec3 {
    linalg::unit(p.coords())
}

/// `|∇F(p)|` at a unit-norm `p`, relative to the coefficient norm.
pub(crate) fn gradient_residual(f: &HomPoly, p: &Vec3) -> f64 {
    let p = linalg::unit(p);
    linalg::norm(&f.gradient(&p)) / f.coeff_norm()
}

fn dedupe(points: &mut Vec<ProjPoint>, radius: f64) {
    let mut kept: Vec<ProjPoint> = Vec::new();
    for p in points.drain(..) {
        if kept.iter().all(|q| q.distance(&p) > radius) {
            kept.push(p);
        }
    }
    *points = kept;
}

fn ensure_exact_degree(f: &HomPoly) -> Result<()> {
    if f.degree() > EXACT_DEGREE_BOUND {
        return Err(Error::DegreeUnsupported { degree: f.degree(), max: EXACT_DEGREE_BOUND });
    }
    Ok(())
}

/// All points where the gradient vanishes, each typed by the quadratic part
/// of the curve in a complement of the point.
pub fn singular_points(f: &HomPoly) -> Result<Vec<SingularPoint>> {
    ensure_exact_degree(f)?;
    let locations = match f.degree() {
        0 | 1 => Vec::new(),
        2 => conic_singularities(f)?,
        _ => cubic_singularities(f)?,
    };
    Ok(locations.iter().map(|p| type_singularity(f, p)).collect())
}

fn conic_singularities(f: &HomPoly) -> Result<Vec<ProjPoint>> {
    let h = f.hessian(&[ZERO; 3]);
    let (rank, null) = linalg::rank_and_null_space(&h, 1e-9 * linalg::frob_norm(&h));
    match rank {
        3 => Ok(Vec::new()),
        2 => Ok(vec![ProjPoint::new(null[0])?]),
        _ => Err(Error::RepeatedFactor),
    }
}

fn cubic_singularities(f: &HomPoly) -> Result<Vec<ProjPoint>> {
    let partials: Vec<Form> = (0..3).map(|i| f.0.partial(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut combo = || {
        let w: Vec<C64> = (0..3).map(|_| linalg::random_complex(&mut rng)).collect();
        partials[0].scaled(w[0]).add(&partials[1].scaled(w[1])).add(&partials[2].scaled(w[2]))
    };
    let (fa, fb) = (combo(), combo());
    let frame = generic_frame(&[&fa, &fb], rng.gen());
    let (ra, rb) = (fa.substitute(&frame), fb.substitute(&frame));
    let res = resultant_z(&ra, &rb).ok_or(Error::RepeatedFactor)?;
    let clusters = roots::binary_root_clusters(&res).ok_or(Error::RepeatedFactor)?;

    let mut found = Vec::new();
    for (xy, _) in clusters {
        let best = lift_root(&ra, xy)
            .into_iter()
            .chain(lift_root(&rb, xy))
            .map(|q| linalg::mat_vec(&frame, &q))
            .map(|p| (gradient_residual(f, &p), p))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        if let Some((residual, p)) = best {
            if residual < SOLUTION_TOL {
                found.push(ProjPoint::new(p)?);
            }
        }
    }
    dedupe(&mut found, 1e-6);
    Ok(found)
}

/// Two vectors completing `c` to a basis: the unit vectors off its pivot.
fn complement(c: &Vec3) -> (Vec3, Vec3) {
    let k = (0..3).max_by(|&i, &j| c[i].norm().total_cmp(&c[j].norm())).unwrap();
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let e = |i: usize| {
        let mut v = [ZERO; 3];
        v[i] = linalg::ONE;
        v
    };
    (e(free[0]), e(free[1]))
}

fn bilinear(h: &linalg::Mat3, u: &Vec3, v: &Vec3) -> C64 {
    linalg::dot(u, &linalg::mat_vec(h, v))
}

fn type_singularity(f: &HomPoly, p: &ProjPoint) -> SingularPoint {
    let c = unit_point(p);
    let h = f.hessian(&c);
    let scale = f.coeff_norm();
    let (u1, u2) = complement(&c);
    let (a, b, d) = (bilinear(&h, &u1, &u1), bilinear(&h, &u1, &u2), bilinear(&h, &u2, &u2));
    let size = a.norm().max(b.norm()).max(d.norm());
    let line_through = |v: Vec3| ProjLine::new(linalg::cross(&c, &v)).ok();
    if size <= SOLUTION_TOL * scale {
        return SingularPoint { location: *p, kind: SingularKind::Other, tangent_cone: Vec::new() };
    }
    let disc = b * b - a * d;
    let along = |alpha: C64, beta: C64| -> Vec3 { [0, 1, 2].map(|i| u1[i] * alpha + u2[i] * beta) };
    if disc.norm() > SOLUTION_TOL * size * size {
        let sq = disc.sqrt();
        let dirs = if a.norm() >= d.norm() {
            [along(-b + sq, a), along(-b - sq, a)]
        } else {
            [along(d, -b + sq), along(d, -b - sq)]
        };
        let tangent_cone = dirs.into_iter().filter_map(line_through).collect();
        return SingularPoint { location: *p, kind: SingularKind::Node, tangent_cone };
    }
    // q is a square: the Hessian has rank one and its columns are the tangent line
    let col = (0..3)
        .map(|j| [h[0][j], h[1][j], h[2][j]])
        .max_by(|x, y| linalg::norm(x).total_cmp(&linalg::norm(y)))
        .unwrap();
    let tangent = ProjLine::new(col).ok();
    let dir = linalg::unit(&if a.norm() >= d.norm() { along(-b, a) } else { along(d, -b) });
    // on the tangent line F(c + t·v) reduces to its cubic part F(v)
    let kind = if f.degree() == 3 && f.eval(&dir).norm() > 1e-4 * scale {
        SingularKind::Cusp
    } else {
        SingularKind::Other
    };
    SingularPoint { location: *p, kind, tangent_cone: tangent.into_iter().collect() }
}

/// Smooth points where the Hessian determinant vanishes.
pub fn inflection_points(f: &HomPoly) -> Result<Vec<ProjPoint>> {
    ensure_exact_degree(f)?;
    match f.degree() {
        0 | 1 => return Err(Error::InvalidInput("inflection points need degree at least 2".into())),
        2 => {
            singular_points(f)?;
            return Ok(Vec::new());
        }
        _ => {}
    }
    let singular = singular_points(f)?;
    let hs = f.hessian_form();
    if hs.coeff_norm() <= 1e-12 * f.coeff_norm().powi(3) {
        return Err(Error::Unsupported("the Hessian vanishes identically (the curve is a union of concurrent lines)".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1f);
    let frame = generic_frame(&[&f.0, &hs], rng.gen());
    let (rf, rh) = (f.0.substitute(&frame), hs.substitute(&frame));
    let res = resultant_z(&rf, &rh)
        .ok_or_else(|| Error::Unsupported("the curve contains a line, every point of which is flat".into()))?;
    let projected = roots::binary_roots(&res).ok_or(Error::RepeatedFactor)?;

    let (fs, hsn) = (f.coeff_norm(), hs.coeff_norm());
    let mut found = Vec::new();
    for xy in projected {
        for q in lift_root(&rf, xy) {
            let p = refine_on_pair(&f.0, &hs, linalg::mat_vec(&frame, &q));
            let p = linalg::unit(&p);
            let on_both = f.eval(&p).norm() <= 1e-8 * fs && hs.eval(&p).norm() <= 1e-8 * hsn;
            let smooth = gradient_residual(f, &p) > 1e-4;
            let pt = ProjPoint::new(p)?;
            let away = singular.iter().all(|s| s.location.distance(&pt) > 1e-3);
            if on_both && smooth && away {
                found.push(pt);
            }
        }
    }
    dedupe(&mut found, 1e-6);
    Ok(found)
}

/// Newton iteration on `F = G = 0` in the affine chart of the largest coordinate.
pub(crate) fn refine_on_pair(f: &Form, g: &Form, start: Vec3) -> Vec3 {
    let k = (0..3).max_by(|&i, &j| start[i].norm().total_cmp(&start[j].norm())).unwrap();
    let mut p = start.map(|x| x / start[k]);
    let (i, j) = match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let (fi, fj, gi, gj) = (f.partial(i), f.partial(j), g.partial(i), g.partial(j));
    for _ in 0..60 {
        let (vf, vg) = (f.eval(&p), g.eval(&p));
        let (a, b, c, d) = (fi.eval(&p), fj.eval(&p), gi.eval(&p), gj.eval(&p));
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            break;
        }
        let di = (d * vf - b * vg) / det;
        let dj = (a * vg - c * vf) / det;
        if !di.is_finite() || !dj.is_finite() {
            break;
        }
        p[i] -= di;
        p[j] -= dj;
        if di.norm() + dj.norm() <= 1e-16 * linalg::norm(&p) {
            break;
        }
    }
    p
}
