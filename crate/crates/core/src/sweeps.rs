//! Parameter grids on which a closed formula is compared with an
//! independent count. Each case is self-contained so callers can run them
//! in any order or in parallel.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::format_rational;
use crate::approximants::{
    aztec_count_eps, aztec_full, aztec_multigap_ratio, check_aztec_multigap, check_hexagon_multigap, hexagon_k_max,
    hexagon_k_min, hexagon_multigap_ratio, hexagon_reduced_count, macmahon,
};
use crate::error::Result;
use crate::gaps::GapSet;
use crate::kernels::{gap_determinant, HexKernelSpec, KernelSpec, KrawtchoukKernelSpec};
use crate::oracle::{count_lozenge, count_weighted_domino};
use crate::regions::{build_aztec_region, build_hexagon_region, AztecVariant, HexagonVariant};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepCase {
    /// Padé product formula against the transfer count of the reduced diamond.
    AztecCount {
        n: i64,
        m: i64,
        k: i64,
        eps: u8,
        #[serde(serialize_with = "ser_rat")]
        a: BigRational,
    },
    /// Hermite-Padé product formula against the path determinant.
    HexagonCount {
        l: i64,
        m: i64,
        n: i64,
        r: i64,
        k: i64,
    },
    /// Box formula against the path determinant of the whole hexagon.
    MacMahon {
        l: i64,
        m: i64,
        n: i64,
    },
    AztecMultiGap {
        n: i64,
        m: i64,
        eps: u8,
        gaps: GapSet,
        jstar: usize,
        #[serde(serialize_with = "ser_rat")]
        a: BigRational,
    },
    HexagonMultiGap {
        l: i64,
        m: i64,
        n: i64,
        r: i64,
        gaps: GapSet,
    },
    /// `F_N(a)·det(1 - 1_I K)` against the transfer count.
    AztecKernel {
        n: i64,
        m: i64,
        eps: u8,
        gaps: GapSet,
        #[serde(serialize_with = "ser_rat")]
        a: BigRational,
    },
    /// `G·det(1 - 1_I K)` against the path determinant.
    HexagonKernel {
        l: i64,
        m: i64,
        n: i64,
        r: i64,
        gaps: GapSet,
    },
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub case: SweepCase,
    pub theorem: Option<String>,
    pub oracle: Option<String>,
    pub matches: bool,
    pub error: Option<String>,
}

fn checked_ratio(num: BigRational, den: BigRational) -> Option<BigRational> {
    (!den.is_zero()).then(|| num / den)
}

fn evaluate(case: &SweepCase) -> Result<(BigRational, Option<BigRational>)> {
    Ok(match case {
        SweepCase::AztecCount { n, m, k, eps, a } => {
            let variant =
                if *eps == 1 { AztecVariant::Reduced { m: *m, k: *k } } else { AztecVariant::Tilde { m: *m, k: *k } };
            let oracle = count_weighted_domino(&build_aztec_region(*n, &variant)?, a)?;
            (aztec_count_eps(*n, *m, *k, *eps, a)?, Some(oracle))
        }
        SweepCase::HexagonCount { l, m, n, r, k } => {
            let region = build_hexagon_region(*l, *m, *n, &HexagonVariant::Reduced { r: *r, k: *k })?;
            let oracle = BigRational::from_integer(count_lozenge(&region)?);
            (BigRational::from_integer(hexagon_reduced_count(*l, *m, *n, *r, *k)?), Some(oracle))
        }
        SweepCase::MacMahon { l, m, n } => {
            let oracle =
                BigRational::from_integer(count_lozenge(&build_hexagon_region(*l, *m, *n, &HexagonVariant::Full)?)?);
            (BigRational::from_integer(macmahon(*l, *m, *n)?), Some(oracle))
        }
        SweepCase::AztecMultiGap { n, m, eps, gaps, jstar, a } => {
            let theorem = aztec_multigap_ratio(*n, *m, *eps, gaps, *jstar, a)?;
            let count = |g: &GapSet| -> Result<BigRational> {
                let region = build_aztec_region(*n, &AztecVariant::MultiGap { m: *m, eps: *eps, gaps: g.clone() })?;
                count_weighted_domino(&region, a)
            };
            let oracle = checked_ratio(count(&gaps.bumped(*jstar)?)?, count(gaps)?);
            (theorem, oracle)
        }
        SweepCase::HexagonMultiGap { l, m, n, r, gaps } => {
            let theorem = hexagon_multigap_ratio(*l, *m, *n, *r, gaps)?;
            let count = |g: &GapSet| -> Result<BigRational> {
                let region = build_hexagon_region(*l, *m, *n, &HexagonVariant::MultiGap { r: *r, gaps: g.clone() })?;
                Ok(BigRational::from_integer(count_lozenge(&region)?))
            };
            let oracle = checked_ratio(count(&gaps.bumped(0)?)?, count(gaps)?);
            (theorem, oracle)
        }
        SweepCase::AztecKernel { n, m, eps, gaps, a } => {
            let spec: KernelSpec = KrawtchoukKernelSpec::new(*n, *m, *eps, a.clone())?.into();
            let theorem = aztec_full(*n, a) * gap_determinant(&spec, gaps);
            let variant = match (gaps.q(), gaps.k0) {
                (0, None) if *eps == 1 => AztecVariant::Reduced { m: *m, k: gaps.lowest() },
                (0, None) => AztecVariant::Tilde { m: *m, k: gaps.lowest() },
                _ => AztecVariant::MultiGap { m: *m, eps: *eps, gaps: gaps.clone() },
            };
            (theorem, Some(count_weighted_domino(&build_aztec_region(*n, &variant)?, a)?))
        }
        SweepCase::HexagonKernel { l, m, n, r, gaps } => {
            let spec: KernelSpec = HexKernelSpec::new(*l, *m, *n, *r)?.into();
            let theorem = BigRational::from_integer(macmahon(*l, *m, *n)?) * gap_determinant(&spec, gaps);
            let variant = match (gaps.q(), gaps.k0) {
                (0, None) => HexagonVariant::Reduced { r: *r, k: gaps.lowest() },
                _ => HexagonVariant::MultiGap { r: *r, gaps: gaps.clone() },
            };
            let region = build_hexagon_region(*l, *m, *n, &variant)?;
            (theorem, Some(BigRational::from_integer(count_lozenge(&region)?)))
        }
    })
}

/// Runs one case; errors are recorded in the outcome rather than raised.
pub fn run_case(case: &SweepCase) -> CaseOutcome {
    match evaluate(case) {
        Ok((theorem, oracle)) => CaseOutcome {
            case: case.clone(),
            matches: oracle.as_ref() == Some(&theorem),
            theorem: Some(format_rational(&theorem)),
            oracle: Some(oracle.map_or_else(|| "undefined".to_string(), |o| format_rational(&o))),
            error: None,
        },
        Err(e) => {
            CaseOutcome { case: case.clone(), theorem: None, oracle: None, matches: false, error: Some(e.to_string()) }
        }
    }
}

/// Reduced diamonds `A_N^{m,k}` (and the even-level regions when `ε = 0`)
/// for `N ≤ n_max`, `1 ≤ k ≤ m+1`.
pub fn aztec_count_grid(n_max: i64, weights: &[BigRational], eps: &[u8]) -> Vec<SweepCase> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n {
            for k in 1..=m + 1 {
                for &e in eps {
                    for a in weights {
                        out.push(SweepCase::AztecCount { n, m, k, eps: e, a: a.clone() });
                    }
                }
            }
        }
    }
    out
}

/// Whole hexagons and every admissible cut for `L ≤ l_max`, `N ≤ n_max`.
pub fn hexagon_count_grid(l_max: i64, n_max: i64) -> Vec<SweepCase> {
    let mut out = Vec::new();
    for l in 2..=l_max {
        for m in 1..l {
            for n in 1..=n_max {
                out.push(SweepCase::MacMahon { l, m, n });
                for r in 1..l {
                    for k in hexagon_k_min(l, m, n, r)..=hexagon_k_max(m, n, r) {
                        out.push(SweepCase::HexagonCount { l, m, n, r, k });
                    }
                }
            }
        }
    }
    out
}

/// Gap sets with one bounded lower cluster below a semi-infinite one, sites
/// within `[lo, hi]`.
fn two_cluster_sets(lo: i64, hi: i64) -> Vec<GapSet> {
    let mut out = Vec::new();
    for k1 in lo..=hi {
        for k2 in lo..k1 - 1 {
            for k3 in lo..=k2 {
                if let Ok(g) = GapSet::from_clusters(&[(k1, None), (k3, Some(k2))]) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Every two-cluster gap and raise index accepted by the multi-gap
/// hypotheses, for `N ≤ n_max`.
pub fn aztec_multigap_grid(n_max: i64, weights: &[BigRational]) -> Vec<SweepCase> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n {
            for eps in [0u8, 1] {
                for gaps in two_cluster_sets(m - n - eps as i64 + 1, m) {
                    for jstar in 1..=gaps.len_index() {
                        if check_aztec_multigap(n, m, eps, &gaps, jstar).is_err() {
                            continue;
                        }
                        for a in weights {
                            out.push(SweepCase::AztecMultiGap { n, m, eps, gaps: gaps.clone(), jstar, a: a.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Bounded gap sets with one or two clusters accepted by the hexagon
/// multi-gap hypotheses, for `L ≤ l_max`, `N ≤ n_max`. The hypotheses
/// allow gaps that no path family can avoid; those are listed by
/// [`impossible_hexagon_multigaps`] instead.
pub fn hexagon_multigap_grid(l_max: i64, n_max: i64) -> Vec<SweepCase> {
    hexagon_multigap_candidates(l_max, n_max).into_iter().filter(|c| hexagon_gap_is_possible(c) == Some(true)).collect()
}

/// Gaps satisfying the hexagon multi-gap hypotheses whose event has
/// probability zero.
pub fn impossible_hexagon_multigaps(l_max: i64, n_max: i64) -> Vec<SweepCase> {
    hexagon_multigap_candidates(l_max, n_max)
        .into_iter()
        .filter(|c| hexagon_gap_is_possible(c) == Some(false))
        .collect()
}

fn hexagon_gap_is_possible(case: &SweepCase) -> Option<bool> {
    let SweepCase::HexagonMultiGap { l, m, n, r, gaps } = case else { return None };
    let region = build_hexagon_region(*l, *m, *n, &HexagonVariant::MultiGap { r: *r, gaps: gaps.clone() }).ok()?;
    Some(!count_lozenge(&region).ok()?.is_zero())
}

fn hexagon_multigap_candidates(l_max: i64, n_max: i64) -> Vec<SweepCase> {
    let mut out = Vec::new();
    for l in 2..=l_max {
        for m in 1..l {
            for n in 1..=n_max {
                let top = m + n - 1;
                let mut sets = Vec::new();
                for k1 in 0..=top {
                    for k0 in k1..=top {
                        sets.push(GapSet::interval(k1, k0));
                        for k2 in 0..k1 - 1 {
                            for k3 in 0..=k2 {
                                if let Ok(g) = GapSet::from_clusters(&[(k1, Some(k0)), (k3, Some(k2))]) {
                                    sets.push(g);
                                }
                            }
                        }
                    }
                }
                for r in 1..l {
                    for gaps in &sets {
                        if check_hexagon_multigap(l, m, n, r, gaps).is_ok() {
                            out.push(SweepCase::HexagonMultiGap { l, m, n, r, gaps: gaps.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Semi-infinite gaps `[k, ∞)`, `1 ≤ k ≤ m+1`, and the two-cluster gaps
/// of [`aztec_multigap_grid`], for both parities.
pub fn aztec_kernel_grid(n_max: i64, weights: &[BigRational]) -> Vec<SweepCase> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in 1..=n {
            for eps in [0u8, 1] {
                let mut sets: Vec<GapSet> = (1..=m + 1).map(GapSet::semi_infinite).collect();
                sets.extend(two_cluster_sets(m - n - eps as i64 + 1, m).into_iter().filter(|g| {
                    check_aztec_multigap(n, m, eps, g, 1).is_ok() || check_aztec_multigap(n, m, eps, g, 3).is_ok()
                }));
                for gaps in sets {
                    for a in weights {
                        out.push(SweepCase::AztecKernel { n, m, eps, gaps: gaps.clone(), a: a.clone() });
                    }
                }
            }
        }
    }
    out
}

/// Admissible cuts `[k, ∞)` and bounded multi-gaps for every level.
pub fn hexagon_kernel_grid(l_max: i64, n_max: i64) -> Vec<SweepCase> {
    let mut out = Vec::new();
    for l in 2..=l_max {
        for m in 1..l {
            for n in 1..=n_max {
                for r in 1..l {
                    for k in hexagon_k_min(l, m, n, r)..=hexagon_k_max(m, n, r) + 1 {
                        out.push(SweepCase::HexagonKernel { l, m, n, r, gaps: GapSet::semi_infinite(k) });
                    }
                }
            }
        }
    }
    for case in hexagon_multigap_grid(l_max, n_max) {
        if let SweepCase::HexagonMultiGap { l, m, n, r, gaps } = case {
            out.push(SweepCase::HexagonKernel { l, m, n, r, gaps });
        }
    }
    out
}

/// Standard weights used by the sweeps.
pub fn default_weights() -> Vec<BigRational> {
    vec![BigRational::one(), BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())]
}
