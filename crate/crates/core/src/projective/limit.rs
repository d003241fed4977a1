use super::eigen::{basis_matrix, eigen_analysis};
use super::{ProjLine, ProjPoint, ProjTransform, PseudoProjMap, Tol};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, ZERO};
use crate::moebius::Moebius;

/// Limit of the rescaled powers `gⁿ` in SP(3,ℂ), computed from the Jordan data.
///
/// Writing `Aⁿ = Σ_λ λⁿ Σ_k C(n,k) λ^{-k} N_λᵏ P_λ`, the growth is led by the
/// eigenvalues of largest modulus and, among those, the largest nilpotency
/// exponent `k`. The rescaled sequence converges iff a single eigenvalue
/// attains that maximum, and the limit is then `N_λᵏ P_λ`.
pub fn power_limit(g: &ProjTransform, tol: Tol) -> Result<PseudoProjMap> {
    let eigen = eigen_analysis(g, tol)?;
    let a = g.lift();
    let scale = linalg::frob_norm(a);
    let v = basis_matrix(&eigen);
    let col_norms: f64 = (0..3).map(|j| (0..3).map(|i| v[i][j].norm_sqr()).sum::<f64>().sqrt()).product();
    if linalg::det(&v).norm() <= tol.0 * col_norms {
        return Err(Error::IllConditioned { tol: tol.0 });
    }
    let vinv = linalg::inverse(&v).ok_or(Error::IllConditioned { tol: tol.0 })?;

    struct Growth {
        modulus: f64,
        exponent: usize,
        leading: Mat3,
    }
    let mut growth = Vec::new();
    let mut offset = 0;
    for cl in &eigen.clusters {
        let mut sel = [[ZERO; 3]; 3];
        for i in offset..offset + cl.algebraic {
            sel[i][i] = linalg::ONE;
        }
        offset += cl.algebraic;
        let projector = linalg::mat_mul(&linalg::mat_mul(&v, &sel), &vinv);
        let nil = linalg::mat_mul(&linalg::shift(a, cl.value), &projector);
        let mut term = projector;
        let mut exponent = 0;
        // N is nilpotent on the generalized eigenspace, so the exponent stays below the multiplicity
        while exponent + 1 < cl.algebraic {
            let next = linalg::mat_mul(&nil, &term);
            if linalg::max_abs(&next) <= tol.0 * scale * linalg::max_abs(&term) {
                break;
            }
            term = next;
            exponent += 1;
        }
        growth.push(Growth { modulus: cl.value.norm(), exponent, leading: term });
    }

    let rho = growth.iter().map(|g| g.modulus).fold(0.0, f64::max);
    let dominant: Vec<&Growth> = growth.iter().filter(|g| (g.modulus - rho).abs() <= tol.0 * rho).collect();
    let top = dominant.iter().map(|g| g.exponent).max().unwrap_or(0);
    let winners: Vec<&&Growth> = dominant.iter().filter(|g| g.exponent == top).collect();
    if winners.len() != 1 {
        return Err(Error::NonConvergent(format!(
            "{} eigenvalues of maximal modulus {rho} share the leading growth order; the phases rotate",
            winners.len()
        )));
    }
    PseudoProjMap::new(winners[0].leading, tol)
}

/// Kernel of a pseudo-projective map: where the induced map is undefined.
#[derive(Clone, Copy, Debug)]
pub enum Kernel {
    Empty,
    Point(ProjPoint),
    Line(ProjLine),
}

pub fn kernel(p: &PseudoProjMap, tol: Tol) -> Kernel {
    let m = p.matrix();
    match p.rank() {
        3 => Kernel::Empty,
        2 => {
            let (_, ns) = linalg::rank_and_null_space(m, tol.0);
            Kernel::Point(ProjPoint::new(ns[0]).expect("nonzero null vector"))
        }
        _ => {
            // rank one: the rows are proportional and cut out the null plane
            let row = m
                .iter()
                .max_by(|a, b| linalg::norm(a).total_cmp(&linalg::norm(b)))
                .expect("three rows");
            Kernel::Line(ProjLine::new(*row).expect("nonzero row"))
        }
    }
}

/// Möbius action induced on `line` by central projection from the fixed point `p`.
/// Coordinates on the line are those of [`ProjLine::basis`].
pub fn projection_morphism(g: &ProjTransform, p: &ProjPoint, line: &ProjLine, tol: Tol) -> Result<Moebius> {
    if line.incidence(p) <= tol.0 {
        return Err(Error::PointOnLine);
    }
    let a = g.lift();
    let cond = linalg::frob_norm(a) * linalg::frob_norm(g.inverse().lift());
    if super::apply(g, p).distance(p) > tol.0 * cond {
        return Err(Error::NotFixed);
    }
    let (u, w) = line.basis();
    let pc = p.coords();
    let b: Mat3 = [[pc[0], u[0], w[0]], [pc[1], u[1], w[1]], [pc[2], u[2], w[2]]];
    let binv = linalg::inverse(&b).ok_or(Error::PointOnLine)?;
    let m = linalg::mat_mul(&linalg::mat_mul(&binv, a), &b);
    Moebius::new([[m[1][1], m[1][2]], [m[2][1], m[2][2]]])
}
