//! Padé data and weighted tiling counts for reduced Aztec diamonds.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{pow_i, serde_rational, serde_rational_vec};
use crate::algebra::{binomial, laurent_expand, solve_linear_exact, LinearSystem, Poly};
use crate::error::{precondition, Error, Result};
use crate::gaps::GapSet;

/// Solution of the Padé problem `p - f·q = O((z+a)^m)` with
/// `f(z) = z^{m-j}(1-az)^{N-m+ε}`, `deg p ≤ m-j`, `deg q ≤ j-1`, `q(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadeSolution {
    pub n: i64,
    pub m: i64,
    pub j: i64,
    pub eps: u8,
    #[serde(with = "serde_rational")]
    pub a: BigRational,
    pub p: Poly,
    pub q: Poly,
    /// Coefficient of `z^{m-j}` in `p`.
    #[serde(with = "serde_rational")]
    pub kappa: BigRational,
    /// `j = m+1`: no approximation problem, `κ = 1` by convention.
    pub convention: bool,
}

/// `(1 + a²)`.
fn one_plus_a2(a: &BigRational) -> BigRational {
    BigRational::one() + a * a
}

/// `F_N(a) = (1+a²)^{N(N+1)/2}`, the weighted count of the full diamond.
pub fn aztec_full(n: i64, a: &BigRational) -> BigRational {
    pow_i(&one_plus_a2(a), n * (n + 1) / 2)
}

/// `(α + βz)^e`.
fn lin_pow(alpha: BigRational, beta: BigRational, e: i64) -> Poly {
    Poly::binomial_power(&alpha, &beta, e as usize)
}

/// `f(z) = z^{m-j}(1-az)^{N-m+ε}`.
pub fn pade_target(n: i64, m: i64, j: i64, eps: u8, a: &BigRational) -> Poly {
    lin_pow(BigRational::one(), -a.clone(), n - m + eps as i64).shift_up((m - j) as usize)
}

fn check_weight(a: &BigRational) -> Result<()> {
    precondition(a > &BigRational::zero() && a <= &BigRational::one(), || {
        format!("weight a must lie in (0, 1], got {a}")
    })
}

/// The Padé problem with `ε = 1`.
pub fn aztec_pade(n: i64, m: i64, j: i64, a: &BigRational) -> Result<PadeSolution> {
    aztec_pade_eps(n, m, j, 1, a)
}

/// The Padé problem for either parity of the level `2m - ε`.
pub fn aztec_pade_eps(n: i64, m: i64, j: i64, eps: u8, a: &BigRational) -> Result<PadeSolution> {
    precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}, N={n}"))?;
    precondition(1 <= j && j <= m + 1, || format!("need 1 ≤ j ≤ m+1, got j={j}, m={m}"))?;
    precondition(eps <= 1, || format!("ε must be 0 or 1, got {eps}"))?;
    check_weight(a)?;
    if j == m + 1 {
        return Ok(PadeSolution {
            n,
            m,
            j,
            eps,
            a: a.clone(),
            p: Poly::one(),
            q: Poly::one(),
            kappa: BigRational::one(),
            convention: true,
        });
    }
    let f = pade_target(n, m, j, eps, a);
    let at = -a.clone();
    let rows = m as usize;
    let np = (m - j + 1) as usize;
    let nq = (j - 1) as usize;
    // Column i holds the Taylor coefficients at -a of the unknown's monomial.
    let mut cols: Vec<Poly> = Vec::with_capacity(np + nq);
    for d in 0..np {
        cols.push(Poly::monomial(BigRational::one(), d).taylor_shift(&at));
    }
    for d in 1..=nq {
        cols.push((-&f.shift_up(d)).taylor_shift(&at));
    }
    let rhs_poly = f.taylor_shift(&at);
    let matrix: Vec<Vec<BigRational>> = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let rhs: Vec<BigRational> = (0..rows).map(|i| rhs_poly.coeff(i)).collect();
    let x = solve_linear_exact(&LinearSystem::new(matrix, rhs))?;
    let p = Poly::new(x[..np].to_vec());
    let mut qc = vec![BigRational::one()];
    qc.extend(x[np..].iter().cloned());
    let q = Poly::new(qc);
    let kappa = p.coeff((m - j) as usize);
    let sol = PadeSolution { n, m, j, eps, a: a.clone(), p, q, kappa, convention: false };
    debug_assert!(pade_defect_vanishes(&sol));
    Ok(sol)
}

/// Checks `p - f·q = O((z+a)^m)` by Laurent expansion at `-a`.
pub fn pade_defect_vanishes(sol: &PadeSolution) -> bool {
    if sol.convention {
        return true;
    }
    let f = pade_target(sol.n, sol.m, sol.j, sol.eps, &sol.a);
    let defect = &sol.p - &(&f * &sol.q);
    let s = laurent_expand(&defect, &Poly::one(), &(-sol.a.clone()), sol.m - 1);
    (0..sol.m).all(|k| s.coeff(k).is_zero()) && sol.q.coeff(0).is_one()
}

/// Which closed form of `κ` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KappaForm {
    /// `κ^{m,1}`: a truncated double sum.
    K1,
    /// `κ^{m,m}`: the reciprocal of a truncated Taylor sum.
    Km,
}

/// Closed forms for `κ_N^{m,1}` and `κ_N^{m,m}`.
pub fn kappa_closed_form(n: i64, m: i64, which: KappaForm, a: &BigRational) -> Result<BigRational> {
    precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}, N={n}"))?;
    check_weight(a)?;
    let b = one_plus_a2(a);
    let t = a * a / &b;
    let prefactor = pow_i(&b, n - m + 1);
    let big = |x: num_bigint::BigInt| BigRational::from_integer(x);
    match which {
        KappaForm::K1 => {
            let mut s = BigRational::zero();
            for v in 0..m {
                let sign = if (1 + m + v) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                for j in 0..=v {
                    s += &sign * big(binomial(m, j) * binomial(n - m + 1, v - j)) * pow_i(&t, v - j);
                }
            }
            Ok(prefactor * s)
        }
        KappaForm::Km => {
            let s: BigRational = (0..m).map(|j| big(binomial(n - m + j, j)) * pow_i(&t, j)).sum();
            Ok(prefactor / s)
        }
    }
}

/// `F_N^{m,k,ε}(a) = F_N(a) Π_{j=k}^{m} 1/κ^{m,j}`.
pub fn aztec_count_eps(n: i64, m: i64, k: i64, eps: u8, a: &BigRational) -> Result<BigRational> {
    precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}, N={n}"))?;
    precondition(1 <= k && k <= m + 1, || format!("need 1 ≤ k ≤ m+1, got k={k}, m={m}"))?;
    let mut acc = aztec_full(n, a);
    for j in k..=m {
        let sol = aztec_pade_eps(n, m, j, eps, a)?;
        if sol.kappa.is_zero() {
            return Err(Error::DegenerateRatio(format!("κ_{n}^{{{m},{j}}} = 0")));
        }
        acc /= sol.kappa;
    }
    Ok(acc)
}

/// Weighted count of tilings of the reduced diamond `A_N^{m,k}`.
pub fn aztec_count(n: i64, m: i64, k: i64, a: &BigRational) -> Result<BigRational> {
    aztec_count_eps(n, m, k, 1, a)
}

/// Regions whose count has an elementary closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    /// `A_N` itself.
    Full,
    /// `A_N^{m,1}`, which splits into two smaller diamonds.
    MirrorK1,
    /// `A_N^{N,N}`: only the top horizontal domino is removed.
    TopRemovedNN,
}

pub fn aztec_special_count(kind: SpecialKind, n: i64, m: i64, a: &BigRational) -> Result<BigRational> {
    check_weight(a)?;
    match kind {
        SpecialKind::Full => {
            precondition(n >= 0, || format!("need N ≥ 0, got {n}"))?;
            Ok(aztec_full(n, a))
        }
        SpecialKind::MirrorK1 => {
            precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}, N={n}"))?;
            Ok(pow_i(&one_plus_a2(a), n * (n + 1) / 2 - m * (n + 1 - m)))
        }
        SpecialKind::TopRemovedNN => {
            precondition(n >= 1, || format!("need N ≥ 1, got {n}"))?;
            Ok(aztec_full(n, a) - pow_i(a, 2 * n) * aztec_full(n - 1, a))
        }
    }
}

/// Solution of the two-point linear system for a gap with several clusters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiGapSolution {
    /// `a_0, …, a_{m-k_{2q+1}}`; `a_t` belongs to site `m - t`.
    #[serde(with = "serde_rational_vec")]
    pub a_coeffs: Vec<BigRational>,
    /// `q_{k_1 - 1}`.
    pub q: Poly,
    pub jstar: usize,
    pub bumped: GapSet,
    /// `F^{m,I*}/F^{m,I}`.
    #[serde(with = "serde_rational")]
    pub ratio: BigRational,
}

fn eps_j(j: usize) -> i64 {
    j.is_multiple_of(2) as i64
}

/// Checks the hypotheses on `(N, m, ε, I, j*)` for the Aztec multi-gap system.
pub fn check_aztec_multigap(n: i64, m: i64, eps: u8, gaps: &GapSet, jstar: usize) -> Result<()> {
    precondition(1 <= m && m <= n, || format!("need 1 ≤ m ≤ N, got m={m}, N={n}"))?;
    precondition(eps <= 1, || format!("ε must be 0 or 1, got {eps}"))?;
    precondition(gaps.k0.is_none(), || "the top cluster must be unbounded".into())?;
    let k1 = gaps.kj(1).unwrap();
    precondition(k1 <= m, || format!("need k_1 ≤ m, got k_1={k1}, m={m}"))?;
    let low = gaps.lowest();
    precondition(low >= m - n - eps as i64 + 1, || {
        format!("need k_{{2q+1}} ≥ m-N-ε+1 = {}, got {low}", m - n - eps as i64 + 1)
    })?;
    precondition(k1 >= 1 + gaps.lower_size(), || {
        format!("need k_1 ≥ 1 + Σ(k_{{2j}}+1-k_{{2j+1}}) = {}, got {k1}", 1 + gaps.lower_size())
    })?;
    precondition(jstar >= 1 && jstar <= gaps.len_index(), || format!("j* = {jstar} out of range"))?;
    precondition(gaps.can_bump(jstar), || format!("k_{jstar} cannot be raised in {gaps:?}"))?;
    Ok(())
}

/// Solves the Aztec multi-gap system and returns `F^{m,I*}/F^{m,I}` where
/// `I*` raises `k_{j*}` by one.
pub fn aztec_multigap_solve(
    n: i64,
    m: i64,
    eps: u8,
    gaps: &GapSet,
    jstar: usize,
    a: &BigRational,
) -> Result<MultiGapSolution> {
    check_weight(a)?;
    check_aztec_multigap(n, m, eps, gaps, jstar)?;
    let e = n - m + eps as i64;
    let k1 = gaps.kj(1).unwrap();
    let low = gaps.lowest();
    let kstar = gaps.kj(jstar).unwrap() + eps_j(jstar);
    let sign = if jstar.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    let na = (m - low + 1) as usize;
    let nq = k1 as usize;
    // Sites at or below m inside the gap go to the condition at -a; the holes
    // between clusters go to the condition at 0.
    let in_gap: Vec<bool> = (0..na).map(|t| gaps.contains(m - t as i64)).collect();

    let at = -a.clone();
    let damp = lin_pow(BigRational::one(), -a.clone(), e);
    let rows1 = m as usize;
    let rows2 = (k1 - low + 1) as usize;
    let mut matrix = vec![vec![BigRational::zero(); na + nq]; rows1 + rows2];
    let mut rhs = vec![BigRational::zero(); rows1 + rows2];

    for t in 0..na {
        let site = m - t as i64;
        if in_gap[t] {
            let col = Poly::monomial(-BigRational::one(), t).taylor_shift(&at);
            for i in 0..rows1 {
                matrix[i][t] = col.coeff(i);
            }
        } else {
            let d = (k1 - site) as usize;
            if d < rows2 {
                matrix[rows1 + d][t] = BigRational::one();
            }
        }
    }
    for d in 0..nq {
        let at_minus_a = damp.shift_up((m - k1) as usize + d).taylor_shift(&at);
        for i in 0..rows1 {
            matrix[i][na + d] = at_minus_a.coeff(i);
        }
        let at_zero = damp.shift_up(d);
        for i in 0..rows2 {
            matrix[rows1 + i][na + d] = at_zero.coeff(i);
        }
    }
    let known1 = Poly::monomial(sign.clone(), (m - kstar) as usize).taylor_shift(&at);
    for i in 0..rows1 {
        rhs[i] = -known1.coeff(i);
    }
    let d0 = k1 - kstar;
    if d0 >= 0 && (d0 as usize) < rows2 {
        rhs[rows1 + d0 as usize] = -sign.clone();
    }
    let x = solve_linear_exact(&LinearSystem::new(matrix, rhs))?;
    let a_coeffs = x[..na].to_vec();
    let q = Poly::new(x[na..].to_vec());
    let ratio = &a_coeffs[(m - kstar) as usize] + BigRational::one();
    Ok(MultiGapSolution { a_coeffs, q, jstar, bumped: gaps.bumped(jstar)?, ratio })
}

pub fn aztec_multigap_ratio(
    n: i64,
    m: i64,
    eps: u8,
    gaps: &GapSet,
    jstar: usize,
    a: &BigRational,
) -> Result<BigRational> {
    Ok(aztec_multigap_solve(n, m, eps, gaps, jstar, a)?.ratio)
}

/// Whether a gap at level `2m - ε` misses every site a particle can reach.
fn gap_is_vacuous(m: i64, gaps: &GapSet) -> bool {
    gaps.lowest() > m
}

/// Recovers `F^{m,I}` by chaining ratios along raises of the cluster bounds
/// until the gap leaves the reachable sites. Returns `None` when no such
/// chain of length at most `max_depth` exists.
pub fn aztec_multigap_count_by_telescoping(
    n: i64,
    m: i64,
    eps: u8,
    gaps: &GapSet,
    a: &BigRational,
    max_depth: usize,
) -> Result<Option<BigRational>> {
    if gap_is_vacuous(m, gaps) {
        return Ok(Some(aztec_full(n, a)));
    }
    if max_depth == 0 {
        return Ok(None);
    }
    for jstar in 1..=gaps.len_index() {
        if check_aztec_multigap(n, m, eps, gaps, jstar).is_err() {
            continue;
        }
        let sol = aztec_multigap_solve(n, m, eps, gaps, jstar, a)?;
        if sol.ratio.is_zero() {
            continue;
        }
        if let Some(above) = aztec_multigap_count_by_telescoping(n, m, eps, &sol.bumped, a, max_depth - 1)? {
            return Ok(Some(above / sol.ratio));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};

    #[test]
    fn smallest_table_entries() {
        let one = rat(1);
        let s = aztec_pade(2, 2, 1, &one).unwrap();
        assert_eq!(s.p, Poly::from_ints(&[1, 3]));
        assert_eq!(s.q, Poly::one());
        let s = aztec_pade(2, 2, 2, &one).unwrap();
        assert_eq!(s.p, Poly::constant(ratio(4, 3)));
        assert_eq!(s.q, Poly::new(vec![rat(1), ratio(1, 3)]));
    }

    #[test]
    fn convention_at_j_equal_m_plus_one() {
        let s = aztec_pade(3, 2, 3, &rat(1)).unwrap();
        assert!(s.convention);
        assert_eq!(s.kappa, rat(1));
    }

    #[test]
    fn q_zero_multigap_is_pade() {
        let a = ratio(2, 3);
        for (n, m, k) in [(4, 3, 2), (5, 2, 1), (3, 3, 3)] {
            let r = aztec_multigap_ratio(n, m, 1, &GapSet::semi_infinite(k), 1, &a).unwrap();
            assert_eq!(r, aztec_pade(n, m, k, &a).unwrap().kappa);
        }
    }
}
