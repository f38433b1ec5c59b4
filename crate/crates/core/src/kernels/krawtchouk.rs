//! The level-`2m-ε` kernel of the `a`-weighted Aztec diamond.
//!
//! With `W(z) = z^d / ((z-a)^{d+1} (1+az)^m)`, `d = N-m+ε-1`, the `u`-integral
//! picks up the pole at `u = v`, which yields `δ(n,n')`, and the pole at
//! `u = 0`. Writing `φ(u) = (u-a)^{d+1}(1+au)^m = Σ φ_i u^i`,
//!
//! `K(n,n') = δ(n,n') - Σ_{i ≤ n+d} φ_i · J(n'-n+i-d-1)`,
//!
//! where `J(t)` is the sum of the residues of `v^t W(v)` at `0` and `a`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use super::SupportWindow;
use crate::algebra::laurent::laurent_expand;
use crate::algebra::rational::to_f64;
use crate::algebra::Poly;
use crate::error::{precondition, Result};

#[derive(Debug)]
pub struct KrawtchoukKernelSpec {
    pub n: i64,
    pub m: i64,
    pub eps: u8,
    pub a: BigRational,
    d: i64,
    phi: Vec<BigRational>,
    residues: Mutex<HashMap<i64, BigRational>>,
}

impl Clone for KrawtchoukKernelSpec {
    fn clone(&self) -> Self {
        KrawtchoukKernelSpec {
            n: self.n,
            m: self.m,
            eps: self.eps,
            a: self.a.clone(),
            d: self.d,
            phi: self.phi.clone(),
            residues: Mutex::new(self.residues.lock().unwrap().clone()),
        }
    }
}

impl KrawtchoukKernelSpec {
    pub fn new(n: i64, m: i64, eps: u8, a: BigRational) -> Result<Self> {
        precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got (N,m) = ({n},{m})"))?;
        precondition(eps <= 1, || format!("ε must be 0 or 1, got {eps}"))?;
        precondition(a > BigRational::zero() && a <= BigRational::one(), || format!("need 0 < a ≤ 1, got {a}"))?;
        let d = n - m + eps as i64 - 1;
        let phi = (&Poly::linear_root(&a).pow((d + 1) as usize)
            * &Poly::new(vec![BigRational::one(), a.clone()]).pow(m as usize))
            .coeffs()
            .to_vec();
        Ok(KrawtchoukKernelSpec { n, m, eps, a, d, phi, residues: Mutex::new(HashMap::new()) })
    }

    /// Level `2m - ε` of the path picture.
    pub fn level(&self) -> i64 {
        2 * self.m - self.eps as i64
    }

    pub fn window(&self) -> SupportWindow {
        SupportWindow { lo: 1 - self.n, hi: self.m }
    }

    /// Numerator and denominator of `v^t W(v)` as polynomials.
    fn integrand(&self, t: i64) -> (Poly, Poly) {
        let e = t + self.d;
        let (num_pow, den_pow) = if e >= 0 { (e as usize, 0) } else { (0, (-e) as usize) };
        let num = Poly::monomial(BigRational::one(), num_pow);
        let den = &(&Poly::monomial(BigRational::one(), den_pow)
            * &Poly::linear_root(&self.a).pow((self.d + 1) as usize))
            * &Poly::new(vec![BigRational::one(), self.a.clone()]).pow(self.m as usize);
        (num, den)
    }

    /// Residues of `v^t W(v)` at `0` and `a`.
    fn residue_sum(&self, t: i64) -> BigRational {
        if let Some(v) = self.residues.lock().unwrap().get(&t) {
            return v.clone();
        }
        let (num, den) = self.integrand(t);
        let mut total = laurent_expand(&num, &den, &self.a, -1).residue();
        if t + self.d < 0 {
            total += laurent_expand(&num, &den, &BigRational::zero(), -1).residue();
        }
        self.residues.lock().unwrap().insert(t, total.clone());
        total
    }

    /// `W(z)` in floating point.
    pub fn weight_f64(&self, z: Complex64) -> Complex64 {
        let a = to_f64(&self.a);
        z.powi(self.d as i32) / ((z - a).powi((self.d + 1) as i32) * (1.0 + a * z).powi(self.m as i32))
    }
}

pub fn krawtchouk_entry(spec: &KrawtchoukKernelSpec, n: i64, np: i64) -> BigRational {
    let mut k = if n == np { BigRational::one() } else { BigRational::zero() };
    let top = (n + spec.d).min(spec.phi.len() as i64 - 1);
    for i in 0..=top {
        let c = &spec.phi[i as usize];
        if !c.is_zero() {
            k -= c * spec.residue_sum(np - n + i - spec.d - 1);
        }
    }
    k
}

/// Contours for floating-point checks: `Σ₁` around `0` and `a` but away from
/// `-1/a`, `Σ₂` a larger circle around the origin.
pub fn float_contours(a: f64) -> ((Complex64, f64), (Complex64, f64)) {
    let s = 0.5f64.min((a + 1.0 / a) / 4.0);
    ((Complex64::new(a / 2.0, 0.0), a / 2.0 + s), (Complex64::new(0.0, 0.0), 2.0 * (a + 1.0)))
}

/// Trapezoid-rule evaluation of the double contour integral, independent of
/// the residue bookkeeping.
pub fn krawtchouk_entry_quadrature(spec: &KrawtchoukKernelSpec, n: i64, np: i64, nodes: usize) -> f64 {
    let a = to_f64(&spec.a);
    let ((c1, r1), (c2, r2)) = float_contours(a);
    let circle = |c: Complex64, r: f64| -> Vec<(Complex64, Complex64)> {
        (0..nodes)
            .map(|p| {
                let e = Complex64::from_polar(1.0, 2.0 * PI * p as f64 / nodes as f64);
                (c + r * e, Complex64::i() * r * e * (2.0 * PI / nodes as f64))
            })
            .collect()
    };
    let vs = circle(c1, r1);
    let us = circle(c2, r2);
    let mut total = Complex64::new(0.0, 0.0);
    for &(u, du) in &us {
        let wu = spec.weight_f64(u);
        let fu = u.powi(-(n as i32) - 1) / wu;
        for &(v, dv) in &vs {
            total += fu * v.powi(np as i32) * spec.weight_f64(v) / (u - v) * du * dv;
        }
    }
    let norm = (2.0 * PI * Complex64::i()).powi(2);
    (total / norm).re
}
