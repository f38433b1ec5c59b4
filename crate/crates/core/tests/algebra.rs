use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use pade_tilings::algebra::{
    binomial, det_rational, laurent_expand, rat, ratio, solve_linear_exact, LinearSystem, Poly,
};
use pade_tilings::Error;
use proptest::prelude::*;

fn poly(cs: &[i64]) -> Poly {
    Poly::from_ints(cs)
}

#[test]
fn documented_values() {
    assert_eq!(binomial(5, 2), BigInt::from(10));
    assert_eq!(binomial(-7, 0), BigInt::from(1));
    assert_eq!(binomial(-2, 3), BigInt::from(-4));
    let s = laurent_expand(&poly(&[0, 0, 1]), &poly(&[-1, 3, -3, 1]), &rat(1), -1);
    assert_eq!((s.lowest_order, s.coeffs.clone()), (-3, vec![rat(1), rat(2), rat(1)]));
    let sys = LinearSystem::new(vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]], vec![rat(2), rat(0)]);
    assert_eq!(solve_linear_exact(&sys).unwrap(), vec![rat(1), rat(1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_recovers_planted_solution(
        n in 1usize..=6,
        entries in prop::collection::vec(-6i64..=6, 36),
        sol in prop::collection::vec((-9i64..=9, 1i64..=5), 6),
    ) {
        let a: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| rat(entries[i * 6 + j])).collect()).collect();
        let x0: Vec<BigRational> = sol[..n].iter().map(|&(p, q)| ratio(p, q)).collect();
        let b: Vec<BigRational> = a.iter().map(|row| row.iter().zip(&x0).map(|(u, v)| u * v).sum()).collect();
        let res = solve_linear_exact(&LinearSystem::new(a.clone(), b));
        if det_rational(&a).is_zero() {
            prop_assert!(matches!(res, Err(Error::SingularMatrix { .. })), "singular system did not fail");
        } else {
            prop_assert_eq!(res.unwrap(), x0);
        }
    }

    #[test]
    fn laurent_series_times_denominator(
        num in prop::collection::vec(-5i64..=5, 1..5),
        den in prop::collection::vec(-5i64..=5, 1..5),
        root_mult in 0usize..3,
        p in -3i64..=3,
        q in 1i64..=3,
    ) {
        let c = ratio(p, q);
        let den = &poly(&den) * &Poly::linear_root(&c).pow(root_mult);
        prop_assume!(!den.is_zero());
        let num = poly(&num);
        let order = 4;
        let s = laurent_expand(&num, &den, &c, order);
        // (z - c)^{-lowest} · den · S agrees with (z - c)^{-lowest} · num up to the truncation.
        let d = den.taylor_shift(&c);
        let nn = num.taylor_shift(&c);
        let shift = -s.lowest_order.min(0);
        for e in s.lowest_order..=order {
            let mut lhs = BigRational::zero();
            for (i, di) in d.coeffs().iter().enumerate() {
                lhs += di * s.coeff(e - i as i64);
            }
            let rhs = if e >= 0 { nn.coeff(e as usize) } else { BigRational::zero() };
            prop_assert_eq!(lhs, rhs, "order {} (shift {})", e, shift);
        }
    }

    #[test]
    fn pascal_rule(n in -10i64..=10, k in 0i64..=10) {
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
}
