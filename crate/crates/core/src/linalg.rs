//! Exact determinants and Pfaffians.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

/// Fraction-free (Bareiss) elimination; every division is exact.
pub fn det_integer(m: &[Vec<i64>]) -> Result<BigInt> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Gaussian elimination over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn det_rational(m: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = check_square(m)?;
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let v = &factor * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    Ok(det)
}

/// Pfaffian of a skew-symmetric matrix by expansion along the first row.
/// Only the strict upper triangle is read. Odd size gives zero.
pub fn pfaffian(m: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = check_square(m)?;
    let idx: Vec<usize> = (0..n).collect();
    Ok(pfaffian_on(m, &idx))
}

fn pfaffian_on(m: &[Vec<BigRational>], idx: &[usize]) -> BigRational {
    if idx.is_empty() {
        return BigRational::one();
    }
    if idx.len() % 2 == 1 {
        return BigRational::zero();
    }
    let first = idx[0];
    let mut total = BigRational::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let entry = &m[first][j];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let term = entry * pfaffian_on(m, &rest);
        if pos % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn is_skew_symmetric(m: &[Vec<BigRational>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].len() == n && (0..n).all(|j| m[i][j] == -m[j][i].clone()))
}

/// Sign of an integer determinant as `-1`, `0` or `1`.
pub fn sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
