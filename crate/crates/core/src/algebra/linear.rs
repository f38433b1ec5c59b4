//! Exact linear algebra by fraction-free elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{integer_row, serde_rational_vec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub matrix: Vec<RationalRow>,
    #[serde(with = "serde_rational_vec")]
    pub rhs: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalRow(#[serde(with = "serde_rational_vec")] pub Vec<BigRational>);

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Self {
        LinearSystem { matrix: matrix.into_iter().map(RationalRow).collect(), rhs }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }
}

/// Solves a square system exactly, checking `A·x = b` before returning.
pub fn solve_linear_exact(sys: &LinearSystem) -> Result<Vec<BigRational>> {
    let n = sys.matrix.len();
    if sys.rhs.len() != n || sys.matrix.iter().any(|r| r.0.len() != n) {
        return Err(Error::PreconditionViolation(format!(
            "linear system is not square ({} rows, rhs {})",
            n,
            sys.rhs.len()
        )));
    }
    // Integer augmented matrix; row scaling leaves the solution unchanged.
    let mut m: Vec<Vec<BigInt>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut full = row.0.clone();
            full.push(b.clone());
            integer_row(&full).0
        })
        .collect();
    bareiss_forward(&mut m, n)?;
    // Back substitution on the triangular integer system.
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                s -= BigRational::from_integer(m[i][j].clone()) * &x[j];
            }
        }
        x[i] = s / BigRational::from_integer(m[i][i].clone());
    }
    for (row, b) in sys.matrix.iter().zip(&sys.rhs) {
        let lhs: BigRational = row.0.iter().zip(&x).map(|(a, xi)| a * xi).sum();
        assert_eq!(&lhs, b, "exact solver residual is nonzero");
    }
    Ok(x)
}

/// In-place Bareiss elimination on the first `n` columns; returns the sign
/// of the row permutation.
fn bareiss_forward(m: &mut [Vec<BigInt>], n: usize) -> Result<i32> {
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        let piv = (k..n).find(|&r| !m[r][k].is_zero()).ok_or(Error::SingularMatrix { column: k })?;
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        let width = m[k].len();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign)
}

/// Determinant of an integer matrix.
pub fn det_integer(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    match bareiss_forward(&mut m, n) {
        Ok(sign) => {
            let d = m[n - 1][n - 1].clone();
            if sign < 0 {
                -d
            } else {
                d
            }
        }
        Err(_) => BigInt::zero(),
    }
}

/// Determinant of a rational matrix.
pub fn det_rational(a: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigInt::one();
    let ints: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let (r, l) = integer_row(row);
            scale *= l;
            r
        })
        .collect();
    BigRational::new(det_integer(&ints), scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn sys(a: &[&[i64]], b: &[i64]) -> LinearSystem {
        LinearSystem::new(
            a.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(),
            b.iter().map(|&x| rat(x)).collect(),
        )
    }

    #[test]
    fn identity() {
        let s = sys(&[&[1, 0], &[0, 1]], &[3, -4]);
        assert_eq!(solve_linear_exact(&s).unwrap(), vec![rat(3), rat(-4)]);
    }

    #[test]
    fn symmetric_two_by_two() {
        let s = sys(&[&[1, 1], &[1, -1]], &[2, 0]);
        assert_eq!(solve_linear_exact(&s).unwrap(), vec![rat(1), rat(1)]);
    }

    #[test]
    fn needs_pivoting() {
        let s = sys(&[&[0, 2, 1], &[1, 1, 1], &[2, 0, 3]], &[7, 6, 11]);
        assert_eq!(solve_linear_exact(&s).unwrap(), vec![rat(1), rat(2), rat(3)]);
    }

    #[test]
    fn singular_detected() {
        let s = sys(&[&[1, 2], &[2, 4]], &[1, 2]);
        assert!(matches!(solve_linear_exact(&s), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn determinants() {
        let a = vec![vec![BigInt::from(2), BigInt::from(1)], vec![BigInt::from(7), BigInt::from(4)]];
        assert_eq!(det_integer(&a), BigInt::from(1));
        let b = vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(0)]];
        assert_eq!(det_integer(&b), BigInt::from(-1));
    }
}
