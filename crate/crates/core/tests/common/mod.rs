//! Random inputs and hand-written oracles shared by the integration tests.
#![allow(dead_code)]

use kleincurve::linalg::{Mat3, Vec3, C64};
use kleincurve::projective::{self, ProjPoint};
use kleincurve::{HomPoly, ProjTransform};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn complex<R: Rng>(r: &mut R) -> C64 {
    c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

/// Nonzero complex number with modulus in `[lo, hi]`.
pub fn complex_in_annulus<R: Rng>(r: &mut R, lo: f64, hi: f64) -> C64 {
    C64::from_polar(r.gen_range(lo..hi), r.gen_range(0.0..std::f64::consts::TAU))
}

pub fn vector<R: Rng>(r: &mut R) -> Vec3 {
    [complex(r), complex(r), complex(r)]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut m = [[c(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    [0, 1, 2].map(|i| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2])
}

pub fn det(a: &Mat3) -> C64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Inverse by cofactors.
pub fn inverse(a: &Mat3) -> Mat3 {
    let d = det(a);
    let mut m = [[c(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            m[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / d;
        }
    }
    m
}

pub fn frob(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Random invertible matrix with condition number (Frobenius) at most `max_cond`.
pub fn well_conditioned<R: Rng>(r: &mut R, max_cond: f64) -> Mat3 {
    loop {
        let m = [vector(r), vector(r), vector(r)];
        if det(&m).norm() > 1e-3 && frob(&m) * frob(&inverse(&m)) <= max_cond {
            return m;
        }
    }
}

pub fn transform<R: Rng>(r: &mut R) -> ProjTransform {
    ProjTransform::new(well_conditioned(r, 30.0)).unwrap()
}

/// Distance between matrices up to a nonzero scalar, by best scalar fit.
pub fn up_to_scale(a: &Mat3, b: &Mat3) -> f64 {
    let (av, bv): (Vec<C64>, Vec<C64>) = (a.iter().flatten().copied().collect(), b.iter().flatten().copied().collect());
    let na = av.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let lambda: C64 = av.iter().zip(&bv).map(|(x, y)| x.conj() * y).sum::<C64>() / na;
    let nb = bv.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    av.iter().zip(&bv).map(|(x, y)| (y - lambda * x).norm()).fold(0.0, f64::max) / nb.max(1e-300)
}

/// Sine of the angle between two coordinate vectors.
pub fn point_distance(a: &Vec3, b: &Vec3) -> f64 {
    // sine of the angle via the residual of b off a; 1 - cos² cancels below √ε
    let n = |v: &Vec3| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let ip: C64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let k = ip / (n(a) * n(a));
    let res: Vec3 = [b[0] - k * a[0], b[1] - k * a[1], b[2] - k * a[2]];
    n(&res) / n(b)
}

pub fn point(p: &ProjPoint) -> Vec3 {
    *p.coords()
}

pub fn image(m: &Mat3, p: &Vec3) -> ProjPoint {
    ProjPoint::new(mat_vec(m, p)).unwrap()
}

pub fn apply(g: &ProjTransform, p: &Vec3) -> ProjPoint {
    projective::apply(g, &ProjPoint::new(*p).unwrap())
}

/// `xy² - z³`, evaluated by hand.
pub fn cubic_model(v: &Vec3) -> C64 {
    v[0] * v[1] * v[1] - v[2] * v[2] * v[2]
}

/// `y² - 4xz`, evaluated by hand.
pub fn conic_model(v: &Vec3) -> C64 {
    v[1] * v[1] - 4.0 * v[0] * v[2]
}

pub fn poly(s: &str) -> HomPoly {
    s.parse().unwrap()
}

/// The polynomial `F(h·X)` for a model given as a hand-evaluated closure,
/// recovered by interpolation on the monomial basis of degree `d`.
pub fn composed(model: impl Fn(&Vec3) -> C64, h: &Mat3, d: u32) -> HomPoly {
    let monomials: Vec<[u32; 3]> =
        (0..=d).flat_map(|i| (0..=d - i).map(move |j| [i, j, d - i - j])).collect();
    let n = monomials.len();
    let mut r = rng(0x5eed);
    let samples: Vec<Vec3> = (0..n).map(|_| vector(&mut r)).collect();
    let mut a: Vec<Vec<C64>> = samples
        .iter()
        .map(|v| monomials.iter().map(|e| v[0].powu(e[0]) * v[1].powu(e[1]) * v[2].powu(e[2])).collect())
        .collect();
    let mut b: Vec<C64> = samples.iter().map(|v| model(&mat_vec(h, v))).collect();
    // Gaussian elimination with partial pivoting
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        a.swap(col, p);
        b.swap(col, p);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            let t = b[col];
            b[row] -= f * t;
        }
    }
    let mut x = vec![c(0.0, 0.0); n];
    for col in (0..n).rev() {
        let s: C64 = (col + 1..n).map(|k| a[col][k] * x[k]).sum();
        x[col] = (b[col] - s) / a[col][col];
    }
    HomPoly::new(d, monomials.into_iter().zip(x)).unwrap()
}

/// `gⁿ` by repeated multiplication, rescaled to unit max entry after each step.
pub fn iterate_renormalized(m: &Mat3, n: usize) -> Mat3 {
    let mut acc = [[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]];
    for _ in 0..n {
        acc = mat_mul(&acc, m);
        let s = acc.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);
        acc = acc.map(|r| r.map(|x| x / s));
    }
    acc
}

/// Entrywise distance after dividing `a` by its entry at the pivot of `b`.
pub fn aligned_distance(a: &Mat3, b: &Mat3) -> f64 {
    let (pi, pj) = (0..9).map(|k| (k / 3, k % 3)).max_by(|x, y| b[x.0][x.1].norm().total_cmp(&b[y.0][y.1].norm())).unwrap();
    let s = a[pi][pj] / b[pi][pj];
    (0..9).map(|k| (a[k / 3][k % 3] / s - b[k / 3][k % 3]).norm()).fold(0.0, f64::max)
}
