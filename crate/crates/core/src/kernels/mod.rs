//! Correlation kernels of the particle processes at one level, their exact
//! finite-section determinants, and a floating-point Nyström evaluation of
//! the equivalent integrable operator on two circles.

pub mod hexagon;
pub mod krawtchouk;
pub mod nystrom;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::det_rational;
use crate::error::{precondition, Error, Result};
use crate::gaps::GapSet;

pub use hexagon::{hexagon_entry, jacobi_shifted, HexKernelSpec, JacobiData};
pub use krawtchouk::{krawtchouk_entry, krawtchouk_entry_quadrature, KrawtchoukKernelSpec};
pub use nystrom::{fredholm_nystrom, fredholm_nystrom_thinned, NystromEstimate, NYSTROM_NODE_CAP};

/// Sites outside `[lo, hi]` never carry a particle at the kernel's level.
/// Every determinant is taken over the gap intersected with this window: the
/// Aztec contour integral has `K(n,n) = 1` for all `n` below the window, a
/// frozen sea that the physical process does not see.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SupportWindow {
    pub lo: i64,
    pub hi: i64,
}

impl SupportWindow {
    pub fn sites(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn widened(&self, by: i64) -> SupportWindow {
        SupportWindow { lo: self.lo - by, hi: self.hi + by }
    }
}

#[derive(Clone, Debug)]
pub enum KernelSpec {
    Krawtchouk(KrawtchoukKernelSpec),
    Hexagon(HexKernelSpec),
}

impl KernelSpec {
    pub fn entry(&self, n: i64, np: i64) -> BigRational {
        match self {
            KernelSpec::Krawtchouk(s) => krawtchouk_entry(s, n, np),
            KernelSpec::Hexagon(s) => hexagon_entry(s, n, np),
        }
    }

    pub fn window(&self) -> SupportWindow {
        match self {
            KernelSpec::Krawtchouk(s) => s.window(),
            KernelSpec::Hexagon(s) => s.window(),
        }
    }
}

impl From<KrawtchoukKernelSpec> for KernelSpec {
    fn from(s: KrawtchoukKernelSpec) -> Self {
        KernelSpec::Krawtchouk(s)
    }
}

impl From<HexKernelSpec> for KernelSpec {
    fn from(s: HexKernelSpec) -> Self {
        KernelSpec::Hexagon(s)
    }
}

/// `det(1 - Σ_i w_i 1_{{s_i}} K)` restricted to the listed sites.
fn weighted_det(spec: &KernelSpec, sites: &[(i64, BigRational)]) -> BigRational {
    if sites.is_empty() {
        return BigRational::one();
    }
    let m: Vec<Vec<BigRational>> = sites
        .iter()
        .enumerate()
        .map(|(i, (s, w))| {
            sites
                .iter()
                .enumerate()
                .map(|(j, (t, _))| {
                    let id = if i == j { BigRational::one() } else { BigRational::zero() };
                    id - w * spec.entry(*s, *t)
                })
                .collect()
        })
        .collect();
    det_rational(&m)
}

/// Gap sites paired with their cluster's thinning weight, clipped to `window`.
fn clipped_sites(gaps: &GapSet, gammas: &[BigRational], window: SupportWindow) -> Vec<(i64, BigRational)> {
    let mut out = Vec::new();
    for ((lo, hi), g) in gaps.clusters().into_iter().zip(gammas) {
        let hi = hi.unwrap_or(window.hi).min(window.hi);
        for s in lo.max(window.lo)..=hi {
            out.push((s, g.clone()));
        }
    }
    out
}

/// `det(1 - 1_I K)` over `I` clipped to the support window.
pub fn gap_determinant(spec: &KernelSpec, gaps: &GapSet) -> BigRational {
    gap_determinant_in(spec, gaps, spec.window())
}

/// Same determinant with an explicit truncation window.
pub fn gap_determinant_in(spec: &KernelSpec, gaps: &GapSet, window: SupportWindow) -> BigRational {
    let ones = vec![BigRational::one(); gaps.q() + 1];
    weighted_det(spec, &clipped_sites(gaps, &ones, window))
}

/// `det(1 - Σ_j γ_j 1_{I_j} K)`, one `γ` per cluster, top cluster first.
pub fn thinned_determinant(spec: &KernelSpec, gaps: &GapSet, gammas: &[BigRational]) -> Result<BigRational> {
    precondition(gammas.len() == gaps.q() + 1, || {
        format!("need one γ per cluster: {} clusters, {} values", gaps.q() + 1, gammas.len())
    })?;
    Ok(weighted_det(spec, &clipped_sites(gaps, gammas, spec.window())))
}

/// One-point function at `n` conditioned on no particle in `[k, ∞)`.
pub fn conditional_one_point(spec: &KernelSpec, k: i64, n: i64) -> Result<BigRational> {
    precondition(n < k, || format!("need n < k, got n={n}, k={k}"))?;
    let w = spec.window();
    let mut sites: Vec<(i64, BigRational)> = (k.max(w.lo)..=w.hi).map(|s| (s, BigRational::one())).collect();
    let base = weighted_det(spec, &sites);
    if base.is_zero() {
        return Err(Error::ZeroConditioningProbability);
    }
    if n < w.lo || n > w.hi {
        return Ok(BigRational::zero());
    }
    sites.push((n, BigRational::one()));
    Ok(BigRational::one() - weighted_det(spec, &sites) / base)
}
