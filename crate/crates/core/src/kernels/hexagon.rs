//! The level-`r` kernel of uniform lozenge tilings of a hexagon.
//!
//! `Y₁₁ = η₁ P_N(2z+1)` and `Y₂₁ = η₂ P_{N-1}(2z+1)` with Jacobi parameters
//! `(-M-N, L)`, and `R(v,u) = (Y₁₁(v)Y₂₁(u) - Y₁₁(u)Y₂₁(v))/(u-v)` is a
//! polynomial. Both contour integrals reduce to coefficient extraction:
//!
//! `K(n,n') = [u^n v^{M+N-1-n'}] R(v,u) (1+u)^r (1+v)^{L-r}`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SupportWindow;
use crate::algebra::rational::to_f64;
use crate::algebra::{binomial, Poly};
use crate::error::{precondition, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexKernelSpec {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub jacobi: JacobiData,
    /// `rv[q][p]` is the coefficient of `v^q u^p` in `R(v,u)`.
    rv: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiData {
    pub y11: Poly,
    pub y21: Poly,
    pub eta1: BigRational,
    pub eta2: BigRational,
}

fn bin(n: i64, k: i64) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

/// `P_k^{(α,β)}(2z+1) = Σ_s C(k+α, k-s) C(k+β, s) z^s (z+1)^{k-s}`.
pub fn jacobi_shifted(k: i64, alpha: i64, beta: i64) -> Poly {
    let z1 = Poly::from_ints(&[1, 1]);
    let mut acc = Poly::zero();
    for s in 0..=k {
        let c = bin(k + alpha, k - s) * bin(k + beta, s);
        if !c.is_zero() {
            acc = &acc + &(&Poly::monomial(c, s as usize) * &z1.pow((k - s) as usize));
        }
    }
    acc
}

impl JacobiData {
    pub fn new(l: i64, m: i64, n: i64) -> Result<Self> {
        let alpha = -m - n;
        let pn = jacobi_shifted(n, alpha, l);
        let pn1 = jacobi_shifted(n - 1, alpha, l);
        let s: BigRational = (0..=n).map(|s| bin(-m, n - s) * bin(n + l, s)).sum();
        if s.is_zero() {
            return Err(Error::DegenerateRatio("η₁ normalisation vanishes".into()));
        }
        let eta1 = s.recip();
        // η₂⁻¹ = -Res_{z=0} P_{N-1}(2z+1)(z+1)^L z^{-M-1}.
        let moment = (&pn1 * &Poly::from_ints(&[1, 1]).pow(l as usize)).coeff(m as usize);
        if moment.is_zero() {
            return Err(Error::DegenerateRatio("η₂ normalisation vanishes".into()));
        }
        let eta2 = -moment.recip();
        Ok(JacobiData { y11: pn.scale(&eta1), y21: pn1.scale(&eta2), eta1, eta2 })
    }
}

impl HexKernelSpec {
    pub fn new(l: i64, m: i64, n: i64, r: i64) -> Result<Self> {
        precondition(l > m && m >= 1 && n >= 1, || format!("need L > M ≥ 1 and N ≥ 1, got ({l},{m},{n})"))?;
        precondition(0 <= r && r <= l, || format!("need 0 ≤ r ≤ L, got r={r}"))?;
        let jacobi = JacobiData::new(l, m, n)?;
        let a = jacobi.y11.coeffs();
        let b = jacobi.y21.coeffs();
        let deg = a.len().max(b.len());
        let at = |v: &[BigRational], i: usize| v.get(i).cloned().unwrap_or_else(BigRational::zero);
        let mut rv = vec![vec![BigRational::zero(); deg]; deg];
        // (u^j v^i - u^i v^j)/(u - v) = Σ_l u^{i+l} v^{j-1-l} for i < j.
        for i in 0..deg {
            for j in i + 1..deg {
                let c = at(a, i) * at(b, j) - at(a, j) * at(b, i);
                if c.is_zero() {
                    continue;
                }
                for l in 0..j - i {
                    rv[j - 1 - l][i + l] += &c;
                }
            }
        }
        Ok(HexKernelSpec { l, m, n, r, jacobi, rv })
    }

    pub fn window(&self) -> SupportWindow {
        SupportWindow { lo: 0, hi: self.m + self.n - 1 }
    }

    /// `G(u,v) = (1+u)^r (1+v)^{L-r} v^{-M-N} (Y₁₁(v)Y₂₁(u) - Y₁₁(u)Y₂₁(v))`.
    pub fn g_f64(&self, u: Complex64, v: Complex64) -> Complex64 {
        let ev = |p: &Poly, z: Complex64| {
            p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + to_f64(c))
        };
        let (y11, y21) = (&self.jacobi.y11, &self.jacobi.y21);
        let cross = ev(y11, v) * ev(y21, u) - ev(y11, u) * ev(y21, v);
        (1.0 + u).powi(self.r as i32)
            * (1.0 + v).powi((self.l - self.r) as i32)
            * v.powi(-(self.m + self.n) as i32)
            * cross
    }
}

pub fn hexagon_entry(spec: &HexKernelSpec, n: i64, np: i64) -> BigRational {
    let mut k = BigRational::zero();
    let top = spec.m + spec.n - 1 - np;
    for (q, row) in spec.rv.iter().enumerate() {
        let bv = binomial(spec.l - spec.r, top - q as i64);
        if bv.is_zero() {
            continue;
        }
        for (p, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let bu = binomial(spec.r, n - p as i64);
            if !bu.is_zero() {
                k += c * BigRational::from_integer(bu * &bv);
            }
        }
    }
    k
}

/// `η₁` must make `Y₁₁` monic.
pub fn eta1_is_normalising(j: &JacobiData) -> bool {
    j.y11.leading().is_one()
}
