use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pade_tilings::algebra::rational::to_f64;
use pade_tilings::algebra::{rat, ratio};
use pade_tilings::approximants::{aztec_count, aztec_pade, macmahon};
use pade_tilings::kernels::hexagon::eta1_is_normalising;
use pade_tilings::kernels::{
    conditional_one_point, fredholm_nystrom, gap_determinant, gap_determinant_in, krawtchouk_entry,
    krawtchouk_entry_quadrature, thinned_determinant, HexKernelSpec, KernelSpec, KrawtchoukKernelSpec,
};
use pade_tilings::oracle::{count_lozenge, count_weighted_domino};
use pade_tilings::regions::{build_aztec_region, build_hexagon_region, AztecVariant, HexagonVariant};
use pade_tilings::GapSet;

fn aztec(n: i64, m: i64, eps: u8, a: BigRational) -> KernelSpec {
    KrawtchoukKernelSpec::new(n, m, eps, a).unwrap().into()
}

fn full_weight(n: i64, a: &BigRational) -> BigRational {
    (0..n * (n + 1) / 2).fold(BigRational::one(), |acc, _| acc * (rat(1) + a * a))
}

#[test]
fn krawtchouk_trace_and_window() {
    for (n, m, eps, a) in [(3, 2, 1, rat(1)), (4, 1, 0, ratio(1, 2)), (5, 5, 0, ratio(3, 4)), (4, 3, 1, ratio(2, 3))] {
        let k = aztec(n, m, eps, a);
        let w = k.window();
        assert_eq!((w.lo, w.hi), (1 - n, m));
        let trace: BigRational = w.sites().map(|s| k.entry(s, s)).sum();
        assert_eq!(trace, rat(n), "N={n} m={m} ε={eps}");
        for s in [m + 1, m + 2, m + 5] {
            assert!(k.entry(s, s).is_zero(), "K({s},{s}) ≠ 0 for N={n} m={m} ε={eps}");
        }
        // Below the window the contour integral sees infinitely many frozen particles.
        for s in [-n, -n - 1, -n - 3] {
            assert!(k.entry(s, s).is_one(), "K({s},{s}) ≠ 1 for N={n} m={m} ε={eps}");
        }
    }
}

#[test]
fn krawtchouk_matches_quadrature() {
    for (n, m, eps, a) in [(3, 2, 1, ratio(1, 2)), (3, 2, 0, rat(1)), (4, 3, 1, ratio(3, 4))] {
        let spec = KrawtchoukKernelSpec::new(n, m, eps, a).unwrap();
        for (x, y) in [(0, 0), (1, -1), (-2, 2), (m, m - 1), (1 - n, 0), (-n, -n), (m + 2, m + 2)] {
            let exact = to_f64(&krawtchouk_entry(&spec, x, y));
            let float = krawtchouk_entry_quadrature(&spec, x, y, 512);
            assert!((exact - float).abs() < 1e-10, "K({x},{y}) exact {exact} vs quadrature {float}");
        }
    }
}

#[test]
fn hexagon_trace_and_window() {
    for (l, m, n, r) in [(4, 2, 2, 2), (6, 2, 3, 1), (7, 3, 3, 5), (5, 1, 2, 4)] {
        let spec = HexKernelSpec::new(l, m, n, r).unwrap();
        assert!(eta1_is_normalising(&spec.jacobi));
        let k: KernelSpec = spec.into();
        let trace: BigRational = k.window().sites().map(|s| k.entry(s, s)).sum();
        assert_eq!(trace, rat(n), "({l},{m},{n}) r={r}");
        for s in [-1, -2, -5, m + n, m + n + 1, m + n + 4] {
            assert!(k.entry(s, s).is_zero());
        }
        assert!(gap_determinant(&k, &GapSet::interval(m + n + 2, m + n + 3)).is_one());
    }
}

#[test]
fn aztec_gap_determinants_match_counts() {
    let k = aztec(2, 2, 1, rat(1));
    assert_eq!(gap_determinant(&k, &GapSet::semi_infinite(1)), ratio(1, 4));
    assert!(gap_determinant(&k, &GapSet::semi_infinite(3)).is_one());
    for n in 1..=5 {
        for a in [rat(1), ratio(1, 2)] {
            let fw = full_weight(n, &a);
            for m in 1..=n {
                for eps in [0u8, 1] {
                    let spec = aztec(n, m, eps, a.clone());
                    for k in 1..=m + 1 {
                        let det = gap_determinant(&spec, &GapSet::semi_infinite(k));
                        let variant =
                            if eps == 1 { AztecVariant::Reduced { m, k } } else { AztecVariant::Tilde { m, k } };
                        let region = build_aztec_region(n, &variant).unwrap();
                        assert_eq!(
                            &fw * &det,
                            count_weighted_domino(&region, &a).unwrap(),
                            "N={n} m={m} k={k} ε={eps}"
                        );
                        if eps == 1 {
                            assert_eq!(&fw * &det, aztec_count(n, m, k, &a).unwrap());
                        }
                        let wide = gap_determinant_in(&spec, &GapSet::semi_infinite(k), spec.window().widened(5));
                        assert_eq!(wide, det);
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_ratio_is_kappa() {
    let a = ratio(3, 4);
    for n in 2..=5 {
        for m in 1..=n {
            let spec = aztec(n, m, 1, a.clone());
            for k in 1..=m {
                let lo = gap_determinant(&spec, &GapSet::semi_infinite(k));
                let hi = gap_determinant(&spec, &GapSet::semi_infinite(k + 1));
                assert_eq!(hi / lo, aztec_pade(n, m, k, &a).unwrap().kappa);
            }
        }
    }
}

#[test]
fn hexagon_gap_determinants_match_counts() {
    let k: KernelSpec = HexKernelSpec::new(14, 5, 6, 11).unwrap().into();
    let region = build_hexagon_region(14, 5, 6, &HexagonVariant::Reduced { r: 11, k: 7 }).unwrap();
    let g = BigRational::from_integer(macmahon(14, 5, 6).unwrap());
    assert_eq!(
        g * gap_determinant(&k, &GapSet::semi_infinite(7)),
        BigRational::from_integer(count_lozenge(&region).unwrap())
    );

    let (l, m, n) = (6, 2, 3);
    let g = BigRational::from_integer(macmahon(l, m, n).unwrap());
    for r in 1..l {
        let spec: KernelSpec = HexKernelSpec::new(l, m, n, r).unwrap().into();
        for gaps in [GapSet::interval(1, 2), GapSet::from_clusters(&[(4, Some(4)), (0, Some(1))]).unwrap()] {
            let region = build_hexagon_region(l, m, n, &HexagonVariant::MultiGap { r, gaps: gaps.clone() }).unwrap();
            let count: BigInt = count_lozenge(&region).unwrap();
            assert_eq!(&g * gap_determinant(&spec, &gaps), BigRational::from_integer(count));
        }
    }
}

#[test]
fn thinning_and_single_sites() {
    let spec = aztec(4, 3, 1, ratio(1, 2));
    let gaps = GapSet::from_clusters(&[(3, None), (0, Some(1))]).unwrap();
    assert!(thinned_determinant(&spec, &gaps, &[rat(0), rat(0)]).unwrap().is_one());
    assert_eq!(thinned_determinant(&spec, &gaps, &[rat(1), rat(1)]).unwrap(), gap_determinant(&spec, &gaps));
    for k in -3..=3 {
        let single = GapSet::interval(k, k);
        assert_eq!(gap_determinant(&spec, &single), rat(1) - spec.entry(k, k));
    }
}

#[test]
fn conditioned_one_point_function() {
    let spec = aztec(3, 2, 1, rat(1));
    for n in -4..=0 {
        let expected = if (-2..=0).contains(&n) { rat(1) } else { rat(0) };
        assert_eq!(conditional_one_point(&spec, 1, n).unwrap(), expected, "n={n}");
    }
    for k in 1..=3 {
        let total: BigRational = (-4..k).map(|n| conditional_one_point(&spec, k, n).unwrap()).sum();
        assert_eq!(total, rat(3));
    }
    for n in -2..=2 {
        assert_eq!(conditional_one_point(&spec, 5, n).unwrap(), spec.entry(n, n));
    }
}

#[test]
fn nystrom_matches_exact_determinants() {
    let cases = [(2, 2, 1, rat(1), 1), (4, 3, 1, rat(1), 2), (3, 2, 0, ratio(1, 2), 1)];
    for (n, m, eps, a, k) in cases {
        let spec = aztec(n, m, eps, a);
        let gaps = GapSet::semi_infinite(k);
        let exact = to_f64(&gap_determinant(&spec, &gaps));
        let est = fredholm_nystrom(&spec, &gaps, 8).unwrap();
        assert!((est.value - exact).abs() < 1e-8, "N={n} m={m}: {} vs {exact}", est.value);
    }
    let spec = aztec(2, 2, 1, rat(1));
    let est = fredholm_nystrom(&spec, &GapSet::semi_infinite(1), 8).unwrap();
    assert!((est.value - 0.25).abs() < 1e-8);
    let hex: KernelSpec = HexKernelSpec::new(6, 2, 3, 3).unwrap().into();
    let gaps = GapSet::interval(3, 4);
    let exact = to_f64(&gap_determinant(&hex, &gaps));
    assert!((fredholm_nystrom(&hex, &gaps, 8).unwrap().value - exact).abs() < 1e-8);
}

#[test]
fn aztec_multigap_determinants_match_transfer_counts() {
    let a = ratio(2, 3);
    let mut checked = 0;
    for n in 3..=4 {
        let fw = full_weight(n, &a);
        for m in 1..=n {
            for eps in [0u8, 1] {
                let spec = aztec(n, m, eps, a.clone());
                let lo = m - n - eps as i64 + 1;
                let sets = [
                    GapSet::from_clusters(&[(m, None), (lo.max(1 - n), Some(lo.max(1 - n)))]).ok(),
                    GapSet::from_clusters(&[(m + 1, None), (lo.max(1 - n) + 1, Some(m - 1))]).ok(),
                ];
                for gaps in sets.into_iter().flatten() {
                    let region = build_aztec_region(n, &AztecVariant::MultiGap { m, eps, gaps: gaps.clone() }).unwrap();
                    let count = count_weighted_domino(&region, &a).unwrap();
                    assert_eq!(&fw * gap_determinant(&spec, &gaps), count, "N={n} m={m} ε={eps} {gaps:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 20, "only {checked} gap sets checked");
}
