//! Univariate and binary-form root finding with multiplicity clustering.

use crate::linalg::{C64, ONE, ZERO};
use std::f64::consts::PI;

/// Radius used to merge root splinters into a double root. Higher
/// multiplicities splinter further under rounding (roughly as `δ^{1/k}`), so
/// a k-fold cluster may spread up to `max(CLUSTER_RADIUS, CLUSTER_NOISE^{1/k})`.
pub const CLUSTER_RADIUS: f64 = 1e-6;
const CLUSTER_NOISE: f64 = 1e-12;

pub fn cluster_radius(k: usize) -> f64 {
    CLUSTER_RADIUS.max(CLUSTER_NOISE.powf(1.0 / k as f64))
}

/// Evaluates `Σ cᵢ zⁱ` and its derivative.
fn horner(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &ci in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

fn error_bound(coeffs: &[C64], z: C64) -> f64 {
    let az = z.norm();
    let mut s = 0.0;
    for ci in coeffs.iter().rev() {
        s = s * az + ci.norm();
    }
    s * 8.0 * f64::EPSILON
}

/// All complex roots of `Σ cᵢ zⁱ` (ascending coefficients) by Aberth-Ehrlich
/// iteration. Leading zeros are trimmed; exact zero roots are split off.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    if lead_zeros == c.len() {
        return roots;
    }
    roots.extend(std::iter::repeat(ZERO).take(lead_zeros));
    let c = &c[lead_zeros..];
    let n = c.len() - 1;
    match n {
        0 => return roots,
        1 => {
            roots.push(-c[0] / c[1]);
            return roots;
        }
        2 => {
            roots.extend(quadratic_roots(c[2], c[1], c[0]));
            return roots;
        }
        _ => {}
    }
    let radius = (c[0].norm() / c[n].norm()).powf(1.0 / n as f64);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..2000 {
        if done.iter().all(|&d| d) {
            break;
        }
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(c, z[k]);
            if p.norm() <= error_bound(c, z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: C64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (ONE - ratio * sum);
            if !step.is_finite() {
                done[k] = true;
                continue;
            }
            z[k] -= step;
            if step.norm() <= f64::EPSILON * z[k].norm() {
                done[k] = true;
            }
        }
    }
    // Newton polish, kept only when the residual improves.
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(c, *zk);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *zk - p / dp;
            if horner(c, cand).0.norm() < p.norm() {
                *zk = cand;
            } else {
                break;
            }
        }
    }
    roots.extend(z);
    roots
}

/// Roots of `a z² + b z + c` with `a ≠ 0`, using the cancellation-free form.
pub fn quadratic_roots(a: C64, b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - a * c * 4.0).sqrt();
    let q1 = -(b + disc) * 0.5;
    let q2 = -(b - disc) * 0.5;
    let q = if q1.norm() >= q2.norm() { q1 } else { q2 };
    if q.norm() == 0.0 {
        return [ZERO, ZERO];
    }
    [q / a, c / q]
}

/// Roots of the monic cubic `z³ + a z² + b z + c` via Cardano's formula,
/// refined by Newton steps.
pub fn cubic_roots(a: C64, b: C64, c: C64) -> [C64; 3] {
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w1 = -q / 2.0 + disc;
    let w2 = -q / 2.0 - disc;
    let w = if w1.norm() >= w2.norm() { w1 } else { w2 };
    let u = w.cbrt();
    let omega = C64::from_polar(1.0, 2.0 * PI / 3.0);
    let shift = -a / 3.0;
    let mut roots = [ZERO; 3];
    let mut uk = u;
    for root in roots.iter_mut() {
        let vk = if uk.norm() == 0.0 { ZERO } else { -p / (uk * 3.0) };
        *root = uk + vk + shift;
        uk *= omega;
    }
    let coeffs = [c, b, a, ONE];
    for root in roots.iter_mut() {
        for _ in 0..4 {
            let (f, df) = horner(&coeffs, *root);
            if df.norm() == 0.0 || f.norm() == 0.0 {
                break;
            }
            let cand = *root - f / df;
            if horner(&coeffs, cand).0.norm() < f.norm() {
                *root = cand;
            } else {
                break;
            }
        }
    }
    roots
}

/// A root of a binary form in homogeneous coordinates `(s : t)`.
pub type BinaryRoot = [C64; 2];

fn unit2(v: BinaryRoot) -> BinaryRoot {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Chordal distance on the projective line.
pub fn chordal(a: BinaryRoot, b: BinaryRoot) -> f64 {
    let (a, b) = (unit2(a), unit2(b));
    (a[0] * b[1] - a[1] * b[0]).norm()
}

/// Roots of the binary form `Σ cᵢ sⁱ t^{n-i}` (so `coeffs[i]` multiplies `sⁱ`),
/// as projective points `(s : t)` with repetition. Returns `None` for the zero form.
pub fn binary_roots(coeffs: &[C64]) -> Option<Vec<BinaryRoot>> {
    let scale = coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let n = coeffs.len() - 1;
    let cleaned: Vec<C64> = coeffs
        .iter()
        .map(|&x| if x.norm() <= 1e-15 * scale { ZERO } else { x })
        .collect();
    let deg = cleaned.iter().rposition(|x| x.norm() > 0.0).unwrap();
    let mut out: Vec<BinaryRoot> = poly_roots(&cleaned[..=deg]).into_iter().map(|s| [s, ONE]).collect();
    out.extend(std::iter::repeat([ONE, ZERO]).take(n - deg));
    Some(out)
}

/// Groups roots into clusters (see [`cluster_radius`]) and replaces each by
/// its mean. Returns `(root, multiplicity)` pairs.
pub fn cluster_binary(roots: &[BinaryRoot]) -> Vec<(BinaryRoot, usize)> {
    let mut assigned = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if assigned[i] {
            continue;
        }
        let mut near: Vec<(usize, f64)> = (0..roots.len())
            .filter(|&j| !assigned[j])
            .map(|j| (j, chordal(roots[i], roots[j])))
            .collect();
        near.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut chosen = 1;
        for k in (2..=near.len()).rev() {
            let members: Vec<BinaryRoot> = near[..k].iter().map(|&(j, _)| roots[j]).collect();
            let m = binary_mean(&members);
            if members.iter().all(|&x| chordal(x, m) <= cluster_radius(k)) {
                chosen = k;
                break;
            }
        }
        let members: Vec<BinaryRoot> = near[..chosen].iter().map(|&(j, _)| roots[j]).collect();
        for &(j, _) in &near[..chosen] {
            assigned[j] = true;
        }
        out.push((binary_mean(&members), chosen));
    }
    out
}

/// Newton refinement of the centre of a `k`-fold root cluster as a simple root
/// of the `(k-1)`-th derivative, which is well conditioned where the
/// cluster mean is not. Steps leaving the cluster radius are rejected.
pub fn refine_cluster(coeffs: &[C64], z: C64, k: usize) -> C64 {
    if k < 2 {
        return z;
    }
    let mut d: Vec<C64> = coeffs.to_vec();
    for _ in 1..k {
        d = d.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    }
    if d.len() < 2 {
        return z;
    }
    let radius = cluster_radius(k) * z.norm().max(1.0);
    let mut x = z;
    for _ in 0..8 {
        let (f, df) = horner(&d, x);
        if f.norm() == 0.0 || df.norm() == 0.0 {
            break;
        }
        let cand = x - f / df;
        if (cand - z).norm() > radius || horner(&d, cand).0.norm() >= f.norm() {
            break;
        }
        x = cand;
    }
    x
}

/// Roots of a binary form grouped into clusters with multiplicities, each
/// cluster centre refined through the derivative of matching order.
pub fn binary_root_clusters(coeffs: &[C64]) -> Option<Vec<(BinaryRoot, usize)>> {
    let roots = binary_roots(coeffs)?;
    let clusters = cluster_binary(&roots);
    Some(
        clusters
            .into_iter()
            .map(|(r, k)| {
                if k < 2 {
                    return (r, k);
                }
                if r[1].norm() >= r[0].norm() {
                    let z = refine_cluster(coeffs, r[0] / r[1], k);
                    (unit2([z, ONE]), k)
                } else {
                    let rev: Vec<C64> = coeffs.iter().rev().copied().collect();
                    let w = refine_cluster(&rev, r[1] / r[0], k);
                    (unit2([ONE, w]), k)
                }
            })
            .collect(),
    )
}


fn binary_mean(members: &[BinaryRoot]) -> BinaryRoot {
    let first = unit2(members[0]);
    if first[1].norm() >= first[0].norm() {
        let m: C64 = members.iter().map(|v| v[0] / v[1]).sum::<C64>() / members.len() as f64;
        [m, ONE]
    } else {
        let m: C64 = members.iter().map(|v| v[1] / v[0]).sum::<C64>() / members.len() as f64;
        [ONE, m]
    }
}

/// Clusters plain complex numbers (used for eigenvalues) with a fixed radius,
/// relative to `max(1, |z|)`. Returns cluster means and member indices.
pub fn cluster_values(values: &[C64], radius: f64) -> Vec<(C64, Vec<usize>)> {
    let mut out: Vec<(C64, Vec<usize>)> = Vec::new();
    let mut assigned = vec![false; values.len()];
    for i in 0..values.len() {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        // grow transitively so the result does not depend on order
        let mut grew = true;
        while grew {
            grew = false;
            for j in 0..values.len() {
                if assigned[j] {
                    continue;
                }
                if members.iter().any(|&m| {
                    (values[m] - values[j]).norm() <= radius * values[m].norm().max(1.0)
                }) {
                    members.push(j);
                    assigned[j] = true;
                    grew = true;
                }
            }
        }
        let mean = members.iter().map(|&m| values[m]).sum::<C64>() / members.len() as f64;
        members.sort_unstable();
        out.push((mean, members));
    }
    out
}
