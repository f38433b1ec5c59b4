//! Non-intersecting path counts for hexagons.
//!
//! Paths start at `(0,i)` and end at `(L,M+j)` with steps `(1,0)` and
//! `(1,1)`. Forcing every path through an allowed site `s` at level `r`
//! splits the count as `det(A·Bᵀ)` with `A[i][s] = C(r, s-i)` and
//! `B[j][s] = C(L-r, M+j-s)`.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::algebra::{binomial, det_integer};
use crate::error::{Error, Result};
use crate::regions::lozenge::LozengeTiling;
use crate::regions::paths::{paths_to_tiling, PathKind, PathSystem, Tiling};
use crate::regions::{CellRegion, RegionKind};

/// Single-path counts from `starts` at level `x0` to `ends` at level `x1`.
fn path_matrix(starts: &[i64], x0: i64, ends: &[i64], x1: i64) -> Vec<Vec<BigInt>> {
    starts.iter().map(|&i| ends.iter().map(|&s| binomial(x1 - x0, s - i)).collect()).collect()
}

fn mat_mul_t(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|ra| b.iter().map(|rb| ra.iter().zip(rb).map(|(x, y)| x * y).sum()).collect()).collect()
}

struct HexPaths {
    l: i64,
    m: i64,
    n: i64,
    /// Level of the constraint and the sites allowed there.
    level: i64,
    allowed: Vec<i64>,
}

impl HexPaths {
    fn new(region: &CellRegion) -> Result<Self> {
        let RegionKind::Hexagon { l, m, n } = region.kind else {
            return Err(Error::PreconditionViolation("lozenge oracle needs a hexagon region".into()));
        };
        let (level, excluded) = match &region.gap {
            Some(g) => (g.level, g.sites.clone()),
            None => (0, Vec::new()),
        };
        let allowed = (0..m + n).filter(|s| !excluded.contains(s)).collect();
        Ok(HexPaths { l, m, n, level, allowed })
    }

    fn ends(&self) -> Vec<i64> {
        (0..self.n).map(|j| self.m + j).collect()
    }

    /// Number of path families continuing from `pos` at level `x`.
    fn completions(&self, pos: &[i64], x: i64) -> BigInt {
        let ends = self.ends();
        if x >= self.level {
            return det_integer(&path_matrix(pos, x, &ends, self.l));
        }
        let a = path_matrix(pos, x, &self.allowed, self.level);
        let b = path_matrix(&self.allowed, self.level, &ends, self.l);
        let b: Vec<Vec<BigInt>> = (0..ends.len()).map(|j| b.iter().map(|row| row[j].clone()).collect()).collect();
        det_integer(&mat_mul_t(&a, &b))
    }
}

/// Number of lozenge tilings of a hexagon region, counted as path families
/// avoiding the region's excluded sites.
pub fn count_lozenge(region: &CellRegion) -> Result<BigInt> {
    let h = HexPaths::new(region)?;
    let starts: Vec<i64> = (0..h.n).collect();
    let c = h.completions(&starts, 0);
    debug_assert!(!c.is_negative());
    Ok(c)
}

/// Uniform sample, built level by level with each move weighted by its
/// number of completions.
pub fn sample_lozenge<R: Rng>(region: &CellRegion, rng: &mut R) -> Result<LozengeTiling> {
    let h = HexPaths::new(region)?;
    let mut pos: Vec<i64> = (0..h.n).collect();
    if h.completions(&pos, 0).is_zero() {
        return Err(Error::Untileable);
    }
    let nn = h.n as usize;
    let mut paths: Vec<Vec<(i64, i64)>> = pos.iter().map(|&y| vec![(0, y)]).collect();
    for x in 1..=h.l {
        let mut options: Vec<(BigUint, Vec<i64>)> = Vec::new();
        let mut total = BigUint::zero();
        for mask in 0u32..(1 << nn) {
            let next: Vec<i64> = (0..nn).map(|i| pos[i] + ((mask >> i) & 1) as i64).collect();
            if next.windows(2).any(|w| w[0] >= w[1]) {
                continue;
            }
            if x == h.level && next.iter().any(|s| !h.allowed.contains(s)) {
                continue;
            }
            let w = h.completions(&next, x).to_biguint().unwrap_or_default();
            if !w.is_zero() {
                total += &w;
                options.push((w, next));
            }
        }
        let mut pick = rng.gen_biguint_below(&total);
        let mut chosen = None;
        for (w, next) in options {
            if pick < w {
                chosen = Some(next);
                break;
            }
            pick -= w;
        }
        pos = chosen.expect("selection falls inside the total weight");
        for (p, &y) in paths.iter_mut().zip(&pos) {
            p.push((x, y));
        }
    }
    let ps = PathSystem { kind: PathKind::Hexagon { l: h.l, m: h.m, n: h.n }, paths };
    match paths_to_tiling(&ps, region)? {
        Tiling::Lozenge(t) => Ok(t),
        Tiling::Domino(_) => unreachable!(),
    }
}
