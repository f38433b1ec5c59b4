//! Laurent expansion of rational functions at a finite point.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::{serde_rational, serde_rational_vec};

/// Truncated Laurent series `Σ c_i (z - point)^(lowest + i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentSeries {
    #[serde(with = "serde_rational")]
    pub point: BigRational,
    pub lowest_order: i64,
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<BigRational>,
}

impl LaurentSeries {
    /// Coefficient of `(z - point)^k`; zero outside the stored range.
    pub fn coeff(&self, k: i64) -> BigRational {
        if k < self.lowest_order {
            return BigRational::zero();
        }
        self.coeffs.get((k - self.lowest_order) as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn residue(&self) -> BigRational {
        self.coeff(-1)
    }

    pub fn highest_order(&self) -> i64 {
        self.lowest_order + self.coeffs.len() as i64 - 1
    }
}

fn low_order(p: &Poly) -> usize {
    p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(p.coeffs().len())
}

/// Expands `num/den` around `point` up to and including `(z-point)^order`.
///
/// Panics if `den` is the zero polynomial.
pub fn laurent_expand(num: &Poly, den: &Poly, point: &BigRational, order: i64) -> LaurentSeries {
    assert!(!den.is_zero(), "laurent_expand: zero denominator");
    let n = num.taylor_shift(point);
    let d = den.taylor_shift(point);
    let vd = low_order(&d);
    let d0 = &d.coeffs()[vd];
    if n.is_zero() {
        let lowest = order.min(0);
        return LaurentSeries {
            point: point.clone(),
            lowest_order: lowest,
            coeffs: vec![BigRational::zero(); (order - lowest + 1).max(0) as usize],
        };
    }
    let vn = low_order(&n);
    let lowest = vn as i64 - vd as i64;
    let count = (order - lowest + 1).max(0) as usize;
    // Power-series division of n/w^vn by d/w^vd.
    let nc = |i: usize| n.coeff(vn + i);
    let dc = |i: usize| d.coeff(vd + i);
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    for i in 0..count {
        let mut s = nc(i);
        for j in 1..=i {
            let dj = dc(j);
            if !dj.is_zero() {
                s -= &dj * &out[i - j];
            }
        }
        out.push(s / d0);
    }
    LaurentSeries { point: point.clone(), lowest_order: lowest, coeffs: out }
}

/// Coefficients `c_0..c_{len-1}` of the power series of `num/den` at `0`;
/// requires `den(0) != 0`.
pub fn series_at_zero(num: &Poly, den: &Poly, len: usize) -> Vec<BigRational> {
    let s = laurent_expand(num, den, &BigRational::zero(), len as i64 - 1);
    assert!(s.lowest_order >= 0 || s.coeffs.iter().all(|c| c.is_zero()));
    (0..len as i64).map(|k| s.coeff(k)).collect()
}
