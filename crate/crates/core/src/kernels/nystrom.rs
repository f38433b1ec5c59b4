//! Nyström discretisation of `det(1 - M)` on `L²(Σ₁ ∪ Σ₂)`, where
//!
//! `M(z,z') = [1_{Σ₂}(z')1_{Σ₁}(z) Σ_j γ_j((z/z')^{k_{2j+1}} - (z/z')^{1+k_{2j}})
//!            - 1_{Σ₁}(z')1_{Σ₂}(z) G(z,z')] / (2πi(z - z'))`.
//!
//! Both contours are circles discretised by the trapezoid rule, which
//! converges geometrically for these analytic integrands.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::f64::consts::PI;

use super::krawtchouk::float_contours;
use super::KernelSpec;
use crate::algebra::rational::to_f64;
use crate::error::{precondition, Error, Result};
use crate::gaps::GapSet;

pub const NYSTROM_NODE_CAP: usize = 512;
const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NystromEstimate {
    pub value: f64,
    /// Nodes per contour in the final evaluation.
    pub nodes: usize,
    /// Difference from the evaluation with half as many nodes.
    pub change: f64,
}

struct Circle {
    center: Complex64,
    radius: f64,
}

impl Circle {
    fn nodes(&self, n: usize) -> Vec<(Complex64, Complex64)> {
        (0..n)
            .map(|p| {
                let e = Complex64::from_polar(1.0, 2.0 * PI * p as f64 / n as f64);
                (self.center + self.radius * e, Complex64::i() * self.radius * e * (2.0 * PI / n as f64))
            })
            .collect()
    }
}

/// `Σ₁` must surround the poles of `G` in its second argument. For the
/// Aztec kernel the prescribed circle around `a` suffices when every gap site
/// is positive at an odd level; otherwise `Σ₁` also has to surround `0`.
fn contours(spec: &KernelSpec, gaps: &GapSet) -> (Circle, Circle) {
    match spec {
        KernelSpec::Krawtchouk(s) => {
            let a = to_f64(&s.a);
            if s.eps == 1 && gaps.lowest() >= 1 {
                let r1 = 0.5f64.min((a + 1.0 / a) / 4.0);
                (
                    Circle { center: Complex64::new(a, 0.0), radius: r1 },
                    Circle { center: Complex64::new(0.0, 0.0), radius: 2.0 * (a + 1.0) },
                )
            } else {
                let ((c1, r1), (c2, r2)) = float_contours(a);
                (Circle { center: c1, radius: r1 }, Circle { center: c2, radius: r2 })
            }
        }
        KernelSpec::Hexagon(_) => (
            Circle { center: Complex64::new(0.0, 0.0), radius: 0.5 },
            Circle { center: Complex64::new(0.0, 0.0), radius: 2.0 },
        ),
    }
}

fn g_value(spec: &KernelSpec, u: Complex64, v: Complex64) -> Complex64 {
    match spec {
        KernelSpec::Krawtchouk(s) => s.weight_f64(v) / s.weight_f64(u),
        KernelSpec::Hexagon(s) => s.g_f64(u, v),
    }
}

fn det_complex(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm())).unwrap();
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c];
        det *= pivot;
        for i in c + 1..n {
            let f = a[i][c] / pivot;
            if f.norm() == 0.0 {
                continue;
            }
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= f * y;
            }
        }
    }
    det
}

fn discretised(spec: &KernelSpec, gaps: &GapSet, gammas: &[f64], n: usize) -> Complex64 {
    let (s1, s2) = contours(spec, gaps);
    let inner = s1.nodes(n);
    let outer = s2.nodes(n);
    let clusters = gaps.clusters();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); 2 * n]; 2 * n];
    for (p, row) in m.iter_mut().enumerate() {
        row[p] = Complex64::new(1.0, 0.0);
    }
    // z ∈ Σ₁, z' ∈ Σ₂.
    for (p, &(z, _)) in inner.iter().enumerate() {
        for (q, &(zp, dzp)) in outer.iter().enumerate() {
            let ratio = z / zp;
            let mut s = Complex64::new(0.0, 0.0);
            for ((lo, hi), g) in clusters.iter().zip(gammas) {
                let mut term = ratio.powi(*lo as i32);
                if let Some(hi) = hi {
                    term -= ratio.powi((*hi + 1) as i32);
                }
                s += *g * term;
            }
            m[p][n + q] -= s / (two_pi_i * (z - zp)) * dzp;
        }
    }
    // z ∈ Σ₂, z' ∈ Σ₁.
    for (p, &(z, _)) in outer.iter().enumerate() {
        for (q, &(zp, dzp)) in inner.iter().enumerate() {
            m[n + p][q] += g_value(spec, z, zp) / (two_pi_i * (z - zp)) * dzp;
        }
    }
    det_complex(m)
}

/// `det(1 - M)` for gap probabilities (all `γ = 1`).
pub fn fredholm_nystrom(spec: &KernelSpec, gaps: &GapSet, nodes: usize) -> Result<NystromEstimate> {
    let ones = vec![BigRational::from_integer(1.into()); gaps.q() + 1];
    fredholm_nystrom_thinned(spec, gaps, &ones, nodes)
}

/// Doubles the node count from `nodes` until successive values agree to
/// `1e-10`, up to 512 nodes per contour.
pub fn fredholm_nystrom_thinned(
    spec: &KernelSpec,
    gaps: &GapSet,
    gammas: &[BigRational],
    nodes: usize,
) -> Result<NystromEstimate> {
    precondition(nodes >= 8, || format!("need at least 8 nodes, got {nodes}"))?;
    precondition(gammas.len() == gaps.q() + 1, || "need one γ per cluster".to_string())?;
    if gammas.iter().all(|g| g.is_zero()) {
        return Ok(NystromEstimate { value: 1.0, nodes, change: 0.0 });
    }
    let gammas: Vec<f64> = gammas.iter().map(to_f64).collect();
    let mut n = nodes.min(NYSTROM_NODE_CAP);
    let mut prev = discretised(spec, gaps, &gammas, n);
    while n * 2 <= NYSTROM_NODE_CAP {
        n *= 2;
        let cur = discretised(spec, gaps, &gammas, n);
        let change = (cur - prev).norm();
        if change < TOLERANCE {
            return Ok(NystromEstimate { value: cur.re, nodes: n, change });
        }
        prev = cur;
    }
    Err(Error::NoConvergence { nodes: NYSTROM_NODE_CAP })
}
