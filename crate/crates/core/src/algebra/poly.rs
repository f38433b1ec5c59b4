//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are indexed by degree and trailing zeros are always
//! trimmed, so the zero polynomial has an empty coefficient vector and
//! degree `-1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::{rat, serde_rational_vec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| rat(c)).collect())
    }

    /// `c · z^d`.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        let mut v = vec![BigRational::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// `z - c`.
    pub fn linear_root(c: &BigRational) -> Self {
        Self::new(vec![-c.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `z^d`.
    pub fn shift_up(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); d];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Coefficients of `p(w + c)` as a polynomial in `w`, i.e. the Taylor
    /// coefficients of `p` at `c`.
    pub fn taylor_shift(&self, c: &BigRational) -> Self {
        let lin = Self::new(vec![c.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| &(&acc * &lin) + &Self::constant(a.clone()))
    }

    /// Keeps only the coefficients of degrees `lo..=hi`.
    pub fn window(&self, lo: usize, hi: usize) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i >= lo && i <= hi { c.clone() } else { BigRational::zero() })
                .collect(),
        )
    }

    /// `(1 + c z)^e` style binomial powers are common enough to get a helper.
    pub fn binomial_power(c0: &BigRational, c1: &BigRational, e: usize) -> Self {
        Self::new(vec![c0.clone(), c1.clone()]).pow(e)
    }

    pub fn from_bigints(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(Poly::zero().degree(), -1);
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), -1);
        assert_eq!(Poly::from_ints(&[1, 2, 0]).degree(), 1);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Poly::from_ints(&[1, -3, 0, 2]);
        let c = ratio(-1, 2);
        let s = p.taylor_shift(&c);
        let w = ratio(5, 7);
        assert_eq!(s.eval(&w), p.eval(&(&w + &c)));
    }

    #[test]
    fn window_truncates() {
        let p = Poly::from_ints(&[1, 2, 3, 4]);
        assert_eq!(p.window(1, 2), Poly::from_ints(&[0, 2, 3]));
    }
}
