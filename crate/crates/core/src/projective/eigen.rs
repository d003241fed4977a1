use super::{ProjPoint, ProjTransform, Tol};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3, C64};
use crate::roots;
use std::f64::consts::PI;

/// One distinct eigenvalue of the determinant-1 lift together with a basis
/// of its generalized eigenspace.
#[derive(Clone, Debug)]
pub struct EigenCluster {
    pub value: C64,
    pub algebraic: usize,
    pub geometric: usize,
    pub basis: Vec<Vec3>,
}

#[derive(Clone, Debug)]
pub struct EigenData {
    /// With multiplicity, by descending modulus then descending argument.
    pub eigenvalues: [C64; 3],
    pub diagonalizable: bool,
    /// Eigenvectors, or a generalized eigenbasis when not diagonalizable,
    /// aligned with `eigenvalues`.
    pub basis: [ProjPoint; 3],
    pub clusters: Vec<EigenCluster>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Elliptic,
    Parabolic,
    Loxodromic,
}

impl ElementKind {
    pub fn name(&self) -> &'static str {
        match self {
            ElementKind::Elliptic => "elliptic",
            ElementKind::Parabolic => "parabolic",
            ElementKind::Loxodromic => "loxodromic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ElementClass {
    pub kind: ElementKind,
    pub eigen: EigenData,
}

fn arg_half_open(z: C64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// `true` when `a` should come before `b` in the eigenvalue order.
fn precedes(a: C64, b: C64, tol: f64) -> bool {
    let (ma, mb) = (a.norm(), b.norm());
    if (ma - mb).abs() > tol * ma.max(mb).max(1.0) {
        ma > mb
    } else {
        arg_half_open(a) > arg_half_open(b)
    }
}

/// Eigenstructure of the determinant-1 lift of `g`.
///
/// Roots of the characteristic cubic come from Cardano's formula plus Newton
/// refinement. Roots that agree to within `ε^{1/3}` are merged (a k-fold root
/// splinters by about `δ^{1/k}` under a perturbation `δ`) and replaced by a
/// simple root of the matching derivative of the characteristic polynomial.
/// Each merged eigenvalue is then confirmed by the kernel dimensions of the
/// powers of `A - μI`.
pub fn eigen_analysis(g: &ProjTransform, tol: Tol) -> Result<EigenData> {
    let a = g.lift();
    let c2 = linalg::trace(a);
    let c1 = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    let c0 = linalg::det(a);
    let raw = roots::cubic_roots(-c2, c1, -c0);

    let merge = tol.0.cbrt();
    let scale = linalg::frob_norm(a);
    let mut clusters = Vec::new();
    let charpoly = [-c0, c1, -c2, linalg::ONE];
    for (mean, members) in roots::cluster_values(&raw, merge) {
        let m = members.len();
        let mean = roots::refine_cluster(&charpoly, mean, m);
        let shifted = linalg::shift(a, mean);
        // Kernel dimensions of (A - μI)^k must grow like a Jordan structure:
        // nonincreasing increments, reaching exactly m at k = m.
        let mut power = linalg::identity();
        let mut dims = vec![0usize];
        let mut basis = Vec::new();
        for k in 1..=m {
            power = linalg::mat_mul(&power, &shifted);
            let (_, ns) = linalg::rank_and_null_space(&power, tol.0 * scale.powi(k as i32));
            dims.push(ns.len());
            basis = ns;
        }
        let d: Vec<isize> = dims.iter().map(|&x| x as isize).collect();
        let consistent = d.windows(3).all(|w| w[2] - w[1] <= w[1] - w[0])
            && d.windows(2).all(|w| w[1] > w[0] || w[1] == m as isize)
            && dims[m] == m;
        if !consistent {
            return Err(Error::IllConditioned { tol: tol.0 });
        }
        clusters.push(EigenCluster { value: mean, algebraic: m, geometric: dims[1], basis });
    }

    // insertion sort, three elements at most
    for i in 1..clusters.len() {
        let mut j = i;
        while j > 0 && precedes(clusters[j].value, clusters[j - 1].value, tol.0) {
            clusters.swap(j, j - 1);
            j -= 1;
        }
    }

    let mut eigenvalues = Vec::with_capacity(3);
    let mut vectors = Vec::with_capacity(3);
    for cl in &clusters {
        for v in &cl.basis {
            eigenvalues.push(cl.value);
            vectors.push(ProjPoint::new(*v).map_err(|_| Error::IllConditioned { tol: tol.0 })?);
        }
    }
    let diagonalizable = clusters.iter().all(|c| c.geometric == c.algebraic);
    Ok(EigenData {
        eigenvalues: [eigenvalues[0], eigenvalues[1], eigenvalues[2]],
        diagonalizable,
        basis: [vectors[0], vectors[1], vectors[2]],
        clusters,
    })
}

/// Elliptic, parabolic or loxodromic, decided on the determinant-1 lift.
pub fn classify_element(g: &ProjTransform, tol: Tol) -> Result<ElementClass> {
    let eigen = eigen_analysis(g, tol)?;
    let unitary = eigen.clusters.iter().all(|c| (c.value.norm() - 1.0).abs() < tol.0);
    let kind = match (unitary, eigen.diagonalizable) {
        (false, _) => ElementKind::Loxodromic,
        (true, true) => ElementKind::Elliptic,
        (true, false) => ElementKind::Parabolic,
    };
    Ok(ElementClass { kind, eigen })
}

/// Matrix whose columns are the generalized eigenbasis, cluster by cluster.
pub(crate) fn basis_matrix(eigen: &EigenData) -> Mat3 {
    let mut m = [[linalg::ZERO; 3]; 3];
    let mut col = 0;
    for cl in &eigen.clusters {
        for v in &cl.basis {
            for i in 0..3 {
                m[i][col] = v[i];
            }
            col += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_real, r, ONE};

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn identity_eigen() {
        let e = eigen_analysis(&ProjTransform::identity(), Tol::default()).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| close(l, ONE)));
        assert!(e.diagonalizable);
    }

    #[test]
    fn unipotent_is_not_diagonalizable() {
        let g = ProjTransform::new(from_real([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]])).unwrap();
        let e = eigen_analysis(&g, Tol::default()).unwrap();
        assert!(e.eigenvalues.iter().all(|&l| close(l, ONE)));
        assert!(!e.diagonalizable);
        assert_eq!(e.clusters.len(), 1);
        assert_eq!(e.clusters[0].geometric, 1);
    }

    #[test]
    fn diagonal_sorted_by_modulus() {
        let g = ProjTransform::diagonal([r(0.5), r(1.0), r(2.0)]).unwrap();
        let e = eigen_analysis(&g, Tol::default()).unwrap();
        assert!(close(e.eigenvalues[0], r(2.0)));
        assert!(close(e.eigenvalues[1], r(1.0)));
        assert!(close(e.eigenvalues[2], r(0.5)));
        assert!(e.diagonalizable);
        assert!(e.basis[0].approx_eq(&ProjPoint::real(0.0, 0.0, 1.0).unwrap(), Tol::default()));
    }

    #[test]
    fn ties_broken_by_argument() {
        let i = c(0.0, 1.0);
        let g = ProjTransform::diagonal([ONE, i, -i]).unwrap();
        let e = eigen_analysis(&g, Tol::default()).unwrap();
        assert!(close(e.eigenvalues[0], i));
        assert!(close(e.eigenvalues[1], ONE));
        assert!(close(e.eigenvalues[2], -i));
    }

    #[test]
    fn classification_examples() {
        let tol = Tol::default();
        let u = ProjTransform::new(from_real([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]])).unwrap();
        assert_eq!(classify_element(&u, tol).unwrap().kind, ElementKind::Parabolic);
        let l = ProjTransform::diagonal([r(0.5), r(1.0), r(2.0)]).unwrap();
        assert_eq!(classify_element(&l, tol).unwrap().kind, ElementKind::Loxodromic);
        let e = ProjTransform::diagonal([ONE, c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        assert_eq!(classify_element(&e, tol).unwrap().kind, ElementKind::Elliptic);
    }

    #[test]
    fn close_distinct_eigenvalues_are_ill_conditioned() {
        let g = ProjTransform::diagonal([r(1.0), r(1.0 + 1e-5), r(1.0 / (1.0 + 1e-5))]).unwrap();
        assert!(matches!(eigen_analysis(&g, Tol::default()), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn product_of_eigenvalues_is_one() {
        let g = ProjTransform::new([
            [c(1.0, 2.0), r(3.0), c(0.0, -1.0)],
            [r(0.5), c(2.0, 1.0), r(4.0)],
            [c(-1.0, 1.0), r(0.0), r(2.0)],
        ])
        .unwrap();
        let e = eigen_analysis(&g, Tol::default()).unwrap();
        let prod: C64 = e.eigenvalues.iter().product();
        assert!((prod - ONE).norm() < 1e-9);
    }
}
