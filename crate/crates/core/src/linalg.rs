//! Fixed-size complex linear algebra used throughout the crate.
//!
//! Everything here works on plain arrays: `Vec3` for homogeneous coordinates and
//! `Mat3` (row-major) for lifts of projective maps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C64 = Complex64;
pub type Vec3 = [C64; 3];
pub type Mat3 = [[C64; 3]; 3];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity() -> Mat3 {
    let mut m = [[ZERO; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn diag(d: [C64; 3]) -> Mat3 {
    let mut m = [[ZERO; 3]; 3];
    for i in 0..3 {
        m[i][i] = d[i];
    }
    m
}

pub fn from_real(rows: [[f64; 3]; 3]) -> Mat3 {
    rows.map(|row| row.map(r))
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

/// Row vector times matrix: `vᵀ A`.
pub fn vec_mat(v: &Vec3, a: &Mat3) -> Vec3 {
    [0, 1, 2].map(|j| (0..3).map(|k| v[k] * a[k][j]).sum())
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut t = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn scale(a: &Mat3, s: C64) -> Mat3 {
    a.map(|row| row.map(|x| x * s))
}

pub fn sub(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = *a;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] -= b[i][j];
        }
    }
    out
}

/// `A - μI`
pub fn shift(a: &Mat3, mu: C64) -> Mat3 {
    let mut out = *a;
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= mu;
    }
    out
}

pub fn det(a: &Mat3) -> C64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn trace(a: &Mat3) -> C64 {
    a[0][0] + a[1][1] + a[2][2]
}

/// Classical adjugate, `adj(A) A = det(A) I`.
pub fn adjugate(a: &Mat3) -> Mat3 {
    let mut adj = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            let minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[i][j] = minor * sign;
        }
    }
    adj
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn inverse(a: &Mat3) -> Option<Mat3> {
    let d = det(a);
    if d.norm() == 0.0 || !d.is_finite() {
        return None;
    }
    Some(scale(&adjugate(a), d.inv()))
}

pub fn frob_norm(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn is_finite_mat(a: &Mat3) -> bool {
    a.iter().flatten().all(|x| x.is_finite())
}

pub fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// Bilinear pairing `Σ uᵢvᵢ` (no conjugation), the incidence pairing of P² and its dual.
pub fn dot(u: &Vec3, v: &Vec3) -> C64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Hermitian inner product `Σ conj(uᵢ) vᵢ`.
pub fn hdot(u: &Vec3, v: &Vec3) -> C64 {
    u[0].conj() * v[0] + u[1].conj() * v[1] + u[2].conj() * v[2]
}

pub fn norm(v: &Vec3) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vscale(v: &Vec3, s: C64) -> Vec3 {
    v.map(|x| x * s)
}

pub fn unit(v: &Vec3) -> Vec3 {
    let n = norm(v);
    v.map(|x| x / n)
}

/// Fubini-Study style chordal distance between two nonzero vectors viewed as
/// projective points: `min_φ |â - e^{iφ} b̂|`, in `[0, √2]`.
pub fn proj_dist(a: &Vec3, b: &Vec3) -> f64 {
    let (a, b) = (unit(a), unit(b));
    let s = hdot(&b, &a);
    let phase = if s.norm() == 0.0 { ONE } else { s / s.norm() };
    norm(&[a[0] - phase * b[0], a[1] - phase * b[1], a[2] - phase * b[2]])
}

/// Complete-pivoting Gaussian elimination. Returns the numerical rank with
/// respect to the absolute pivot threshold `thr`, and a basis of the null space.
pub fn rank_and_null_space(m: &Mat3, thr: f64) -> (usize, Vec<Vec3>) {
    let mut a = *m;
    let mut cols = [0usize, 1, 2];
    let mut rank = 0;
    for k in 0..3 {
        let mut best = (k, k, -1.0);
        for i in k..3 {
            for j in k..3 {
                let v = a[i][j].norm();
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        if best.2 <= thr {
            break;
        }
        a.swap(k, best.0);
        if best.1 != k {
            for row in a.iter_mut() {
                row.swap(k, best.1);
            }
            cols.swap(k, best.1);
        }
        for i in k + 1..3 {
            let f = a[i][k] / a[k][k];
            for j in k..3 {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in rank..3 {
        let mut y = [ZERO; 3];
        y[free] = ONE;
        for i in (0..rank).rev() {
            let mut s = a[i][free];
            for j in i + 1..rank {
                s += a[i][j] * y[j];
            }
            y[i] = -s / a[i][i];
        }
        let mut x = [ZERO; 3];
        for idx in 0..3 {
            x[cols[idx]] = y[idx];
        }
        basis.push(x);
    }
    (rank, basis)
}

pub fn rank(m: &Mat3, thr: f64) -> usize {
    rank_and_null_space(m, thr).0
}

/// Determinant of a small dense complex matrix by partial-pivot elimination.
pub fn det_dense(mut a: Vec<Vec<C64>>) -> C64 {
    let n = a.len();
    let mut d = ONE;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .unwrap();
        if a[p][k].norm() == 0.0 {
            return ZERO;
        }
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= f * t;
            }
        }
    }
    d
}

/// Deterministic pseudo-random unitary matrix (Gram-Schmidt on random vectors).
pub fn random_unitary(seed: u64) -> Mat3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_unitary_from(&mut rng)
}

pub fn random_unitary_from<R: Rng>(rng: &mut R) -> Mat3 {
    loop {
        let mut cols: Vec<Vec3> = Vec::new();
        for _ in 0..3 {
            let mut v: Vec3 = [0, 1, 2].map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            for u in &cols {
                let p = hdot(u, &v);
                for i in 0..3 {
                    v[i] -= p * u[i];
                }
            }
            let n = norm(&v);
            if n < 1e-3 {
                break;
            }
            cols.push(v.map(|x| x / n));
        }
        if cols.len() == 3 {
            let mut m = [[ZERO; 3]; 3];
            for (j, col) in cols.iter().enumerate() {
                for i in 0..3 {
                    m[i][j] = col[i];
                }
            }
            return m;
        }
    }
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}
