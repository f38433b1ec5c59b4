//! Hermite-Padé data and lozenge counts for reduced hexagons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{rat, serde_rational, to_integer};
use crate::algebra::{solve_linear_exact, LinearSystem, Poly};
use crate::error::{precondition, Error, Result};
use crate::gaps::GapSet;

/// MacMahon's box formula `Π (i+j+k-1)/(i+j+k-2)` over the `(L-M)×M×N` box.
pub fn macmahon(l: i64, m: i64, n: i64) -> Result<BigInt> {
    precondition(l > m && m >= 1 && n >= 1, || format!("need L > M ≥ 1 and N ≥ 1, got ({l},{m},{n})"))?;
    let mut acc = BigRational::one();
    for i in 1..=l - m {
        for j in 1..=m {
            for k in 1..=n {
                acc *= BigRational::new(BigInt::from(i + j + k - 1), BigInt::from(i + j + k - 2));
            }
        }
    }
    to_integer(&acc).ok_or_else(|| Error::NonIntegerResult(acc.to_string()))
}

/// Type I Hermite-Padé data: `q - z^{M+N} P + (1+z)^{L-r} z^k p = O((z+1)^L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitePadeSolution {
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub k: i64,
    /// `q_{M-1}`.
    pub q: Poly,
    /// Monic `P` of degree `L-M-N+k-r`.
    pub p_monic: Poly,
    /// `p_{N-1+r-k}`.
    pub p: Poly,
    /// `p(0) = G^{r,k+1}/G^{r,k}`.
    #[serde(with = "serde_rational")]
    pub ratio: BigRational,
}

/// Largest admissible `k` for a cut at `x = r`.
pub fn hexagon_k_max(m: i64, n: i64, r: i64) -> i64 {
    (m + n - 1).min(r + n - 1)
}

/// Smallest admissible `k` for a cut at `x = r`.
pub fn hexagon_k_min(l: i64, m: i64, n: i64, r: i64) -> i64 {
    n.max(n - l + m + r)
}

fn check_hexagon_cut(l: i64, m: i64, n: i64, r: i64, k: i64) -> Result<()> {
    precondition(l > m && m >= 1 && n >= 1, || format!("need L > M ≥ 1 and N ≥ 1, got ({l},{m},{n})"))?;
    precondition(1 <= r && r <= l - 1, || format!("need 1 ≤ r ≤ L-1, got r={r}"))?;
    let (lo, hi) = (hexagon_k_min(l, m, n, r), hexagon_k_max(m, n, r));
    precondition(lo <= k && k <= hi, || format!("need {lo} ≤ k ≤ {hi}, got k={k}"))
}

pub fn hexagon_hermite_pade(l: i64, m: i64, n: i64, r: i64, k: i64) -> Result<HermitePadeSolution> {
    check_hexagon_cut(l, m, n, r, k)?;
    let minus_one = rat(-1);
    let deg_big = (l - m - n + k - r) as usize;
    let np = (n + r - k) as usize;
    let nq = m as usize;
    let outer = Poly::from_ints(&[1, 1]).pow((l - r) as usize);
    let mut cols: Vec<Poly> = Vec::with_capacity(l as usize);
    for i in 0..nq {
        cols.push(Poly::monomial(BigRational::one(), i));
    }
    for i in 0..deg_big {
        cols.push(Poly::monomial(-BigRational::one(), (m + n) as usize + i));
    }
    for i in 0..np {
        cols.push(outer.shift_up(k as usize + i));
    }
    let cols: Vec<Poly> = cols.iter().map(|c| c.taylor_shift(&minus_one)).collect();
    let known = Poly::monomial(BigRational::one(), (m + n) as usize + deg_big).taylor_shift(&minus_one);
    let rows = l as usize;
    let matrix = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let rhs = (0..rows).map(|i| known.coeff(i)).collect();
    let x = solve_linear_exact(&LinearSystem::new(matrix, rhs))?;
    let q = Poly::new(x[..nq].to_vec());
    let mut pc = x[nq..nq + deg_big].to_vec();
    pc.push(BigRational::one());
    let p_monic = Poly::new(pc);
    let p = Poly::new(x[nq + deg_big..].to_vec());
    let ratio = p.coeff(0);
    Ok(HermitePadeSolution { l, m, n, r, k, q, p_monic, p, ratio })
}

/// Checks the defining order condition at `z = -1`.
pub fn hermite_defect_vanishes(s: &HermitePadeSolution) -> bool {
    let outer = Poly::from_ints(&[1, 1]).pow((s.l - s.r) as usize);
    let combo = &(&s.q - &s.p_monic.shift_up((s.m + s.n) as usize)) + &(&outer.shift_up(s.k as usize) * &s.p);
    let shifted = combo.taylor_shift(&rat(-1));
    (0..s.l as usize).all(|i| shifted.coeff(i).is_zero()) && s.p_monic.leading().is_one()
}

/// `G^{r,k}`, the number of lozenge tilings of the reduced hexagon.
pub fn hexagon_reduced_count(l: i64, m: i64, n: i64, r: i64, k: i64) -> Result<BigInt> {
    check_hexagon_cut(l, m, n, r, k)?;
    let mut acc = BigRational::from_integer(macmahon(l, m, n)?);
    for j in k..=hexagon_k_max(m, n, r) {
        let s = hexagon_hermite_pade(l, m, n, r, j)?;
        if s.ratio.is_zero() {
            return Err(Error::DegenerateRatio(format!("p(0) = 0 at (L,M,N,r,k) = ({l},{m},{n},{r},{j})")));
        }
        acc /= s.ratio;
    }
    to_integer(&acc).ok_or_else(|| Error::NonIntegerResult(acc.to_string()))
}

/// Solution of the hexagon multi-gap system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexMultiGapSolution {
    /// `q_{M-1}`.
    pub q: Poly,
    /// `p_{N-1}`.
    pub p: Poly,
    /// Coefficient of `z^{k_0+1}` in `(1+z)^r p(z)`.
    #[serde(with = "serde_rational")]
    pub alpha: BigRational,
    pub bumped: GapSet,
    /// `G^{r,I*}/G^{r,I} = 1 - α`.
    #[serde(with = "serde_rational")]
    pub ratio: BigRational,
}

/// Hypotheses on a finite gap at level `r` of the hexagon.
pub fn check_hexagon_multigap(l: i64, m: i64, n: i64, r: i64, gaps: &GapSet) -> Result<()> {
    precondition(l > m && m >= 1 && n >= 1, || format!("need L > M ≥ 1 and N ≥ 1, got ({l},{m},{n})"))?;
    precondition(1 <= r && r <= l - 1, || format!("need 1 ≤ r ≤ L-1, got r={r}"))?;
    let k0 = gaps.k0.ok_or_else(|| Error::PreconditionViolation("hexagon gaps must be bounded above".into()))?;
    let k1 = gaps.kj(1).unwrap();
    let size = k0 + 2 - k1 + gaps.lower_size();
    let cap = r.min(m).min(l - r);
    precondition(size <= cap, || format!("gap too large: {size} > min(r, M, L-r) = {cap}"))?;
    let low = gaps.lowest();
    precondition(low >= 0.max(r - l + m), || format!("need k_{{2q+1}} ≥ max(0, r-L+M), got {low}"))?;
    precondition(k0 < hexagon_k_max(m, n, r), || format!("need k_0 + 1 ≤ {}, got k_0 = {k0}", hexagon_k_max(m, n, r)))?;
    Ok(())
}

/// Solves for `q_{M-1}`, `p_{N-1}` and returns `G^{r,I*}/G^{r,I}` where `I*`
/// raises `k_0` by one.
pub fn hexagon_multigap_solve(l: i64, m: i64, n: i64, r: i64, gaps: &GapSet) -> Result<HexMultiGapSolution> {
    check_hexagon_multigap(l, m, n, r, gaps)?;
    let k0 = gaps.k0.unwrap();
    let rows = (m + n) as usize;
    let full = Poly::from_ints(&[1, 1]).pow(l as usize);
    let outer = Poly::from_ints(&[1, 1]).pow((l - r) as usize);
    let inner = Poly::from_ints(&[1, 1]).pow(r as usize);
    let mut cols: Vec<Poly> = Vec::with_capacity(rows);
    for i in 0..m as usize {
        cols.push(Poly::monomial(BigRational::one(), i));
    }
    for i in 0..n as usize {
        let moved = inner.shift_up(i);
        let mut cut = Poly::zero();
        for (lo, hi) in gaps.clusters() {
            cut = &cut + &moved.window(lo as usize, hi.unwrap() as usize);
        }
        cols.push(&full.shift_up(i) - &(&outer * &cut));
    }
    let known = outer.shift_up((k0 + 1) as usize);
    let matrix = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let rhs = (0..rows).map(|i| known.coeff(i)).collect();
    let x = solve_linear_exact(&LinearSystem::new(matrix, rhs))?;
    let q = Poly::new(x[..m as usize].to_vec());
    let p = Poly::new(x[m as usize..].to_vec());
    let alpha = (&inner * &p).coeff((k0 + 1) as usize);
    let ratio = BigRational::one() - &alpha;
    Ok(HexMultiGapSolution { q, p, alpha, bumped: gaps.bumped(0)?, ratio })
}

pub fn hexagon_multigap_ratio(l: i64, m: i64, n: i64, r: i64, gaps: &GapSet) -> Result<BigRational> {
    Ok(hexagon_multigap_solve(l, m, n, r, gaps)?.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn macmahon_small() {
        assert_eq!(macmahon(2, 1, 1).unwrap(), BigInt::from(2));
        // 2x2x2 box: 20 plane partitions.
        assert_eq!(macmahon(4, 2, 2).unwrap(), BigInt::from(20));
        assert!(macmahon(2, 1, 0).is_err());
    }

    #[test]
    fn hermite_defect() {
        let s = hexagon_hermite_pade(6, 2, 3, 2, 3).unwrap();
        assert!(hermite_defect_vanishes(&s));
    }
}
