//! Elimination for pairs of ternary forms: resultants in `z` after a random
//! unitary change of frame, evaluated at roots of unity and interpolated.

use crate::linalg::{self, Mat3, Vec3, C64, ZERO};
use crate::poly::Form;
use crate::roots;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Below this ratio of `|det|` to its Hadamard bound the resultant is treated as zero.
const VANISHING_RESULTANT: f64 = 1e-10;

/// A unitary frame `U` such that every form, written in the coordinates
/// `X = U·X'`, keeps a sizeable `z'ⁿ` coefficient.
pub(crate) fn generic_frame(forms: &[&Form], seed: u64) -> Mat3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (linalg::identity(), -1.0);
    for _ in 0..32 {
        let u = linalg::random_unitary_from(&mut rng);
        let axis = [u[0][2], u[1][2], u[2][2]];
        let worst = forms
            .iter()
            .map(|f| f.eval(&axis).norm() / f.coeff_norm())
            .fold(f64::INFINITY, f64::min);
        if worst > 0.05 {
            return u;
        }
        if worst > best.1 {
            best = (u, worst);
        }
    }
    best.0
}

/// Coefficients of `z ↦ F(x, y, z)`, indexed by the power of `z`.
pub(crate) fn z_coeffs(f: &Form, x: C64, y: C64) -> Vec<C64> {
    let mut out = vec![ZERO; f.degree as usize + 1];
    for (e, c) in &f.terms {
        out[e[2] as usize] += c * x.powu(e[0]) * y.powu(e[1]);
    }
    out
}

fn sylvester(f: &[C64], g: &[C64]) -> Vec<Vec<C64>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![ZERO; size];
        for (k, c) in f.iter().rev().enumerate() {
            row[shift + k] = *c;
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![ZERO; size];
        for (k, c) in g.iter().rev().enumerate() {
            row[shift + k] = *c;
        }
        rows.push(row);
    }
    rows
}

/// `Res_z(F, G)` as a binary form in `(x, y)` of degree `deg F · deg G`,
/// coefficients indexed by the power of `x`. `None` when it vanishes
/// identically, i.e. the forms share a component.
pub(crate) fn resultant_z(f: &Form, g: &Form) -> Option<Vec<C64>> {
    let n = (f.degree * g.degree) as usize;
    let samples = n + 1;
    let mut values = Vec::with_capacity(samples);
    let mut strength: f64 = 0.0;
    for k in 0..samples {
        let x = C64::from_polar(1.0, 2.0 * PI * k as f64 / samples as f64);
        let s = sylvester(&z_coeffs(f, x, linalg::ONE), &z_coeffs(g, x, linalg::ONE));
        let bound: f64 = s.iter().map(|row| row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()).product();
        let d = linalg::det_dense(s);
        if bound > 0.0 {
            strength = strength.max(d.norm() / bound);
        }
        values.push(d);
    }
    if strength < VANISHING_RESULTANT {
        return None;
    }
    // inverse discrete Fourier transform of the samples on the unit circle
    let coeffs = (0..samples)
        .map(|i| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * C64::from_polar(1.0, -2.0 * PI * (i * k) as f64 / samples as f64))
                .sum::<C64>()
                / samples as f64
        })
        .collect();
    Some(coeffs)
}

/// Points `[x : y : z]` over a projected root `(x : y)`: the roots in `z` of `F`.
pub(crate) fn lift_root(f: &Form, xy: roots::BinaryRoot) -> Vec<Vec3> {
    let zc = z_coeffs(f, xy[0], xy[1]);
    roots::poly_roots(&zc).into_iter().map(|z| [xy[0], xy[1], z]).collect()
}
