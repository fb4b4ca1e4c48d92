//! Univariate polynomials in the base coordinate `t` with exact rational
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `c_0 + c_1 t + … + c_n t^n` with `c_n ≠ 0`; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The coordinate `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RationalPoly { coeffs };
        p.trim();
        p
    }

    /// Coefficients listed from the constant term upwards.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `c · t^n`
    pub fn monomial(c: BigRational, n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial at `-1`; handy against degree bounds.
    pub fn degree_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") / &lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor, computed by the subresultant
    /// remainder sequence on integer primitive parts. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let a = to_integer_primitive(self);
        let b = to_integer_primitive(other);
        let g = subresultant_gcd(a, b);
        from_integer(&g).monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Whether `p` has no repeated root: `gcd(p, p′)` is constant.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }
}

pub fn squarefree(p: &RationalPoly) -> Result<bool> {
    p.is_squarefree()
}

type IntPoly = Vec<BigInt>;

fn int_trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn int_content(p: &IntPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn int_primitive(p: &IntPoly) -> IntPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = int_content(p);
    if p.last().expect("nonempty").is_negative() {
        c = -c;
    }
    p.iter().map(|x| x / &c).collect()
}

/// `lc(b)^{deg a − deg b + 1} · a mod b`, exactly over the integers.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = 0u32;
    let total = (a.len() - b.len() + 1) as u32;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().expect("nonempty").clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        r.pop();
        int_trim(&mut r);
        steps += 1;
    }
    let extra = lb.pow(total - steps);
    r.iter().map(|x| x * &extra).collect()
}

fn subresultant_gcd(mut a: IntPoly, mut b: IntPoly) -> IntPoly {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return int_primitive(&a);
    }
    let content = int_content(&a).gcd(&int_content(&b));
    let mut a = int_primitive(&a);
    let mut b = int_primitive(&b);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.len() - b.len()) as u32;
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return int_primitive(&b)
                .into_iter()
                .map(|x| x * &content)
                .collect();
        }
        if r.len() == 1 {
            return vec![content];
        }
        let denom = &g * h.pow(delta);
        a = b;
        b = r.into_iter().map(|x| x / &denom).collect();
        g = a.last().expect("nonempty").clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta) / h.pow(delta - 1)
        };
    }
}

fn to_integer_primitive(p: &RationalPoly) -> IntPoly {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: IntPoly = p
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    int_primitive(&ints)
}

fn from_integer(p: &IntPoly) -> RationalPoly {
    RationalPoly::new(
        p.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;

            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialised as the list of coefficients (constant term first), each a
/// decimal integer or `p/q` string.
impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_ints(c)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[0, 0]), RationalPoly::zero());
        assert_eq!(RationalPoly::zero().degree(), None);
        assert_eq!(RationalPoly::zero().degree_or_neg(), -1);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a - &a, RationalPoly::zero());
        assert_eq!(p(&[3, 0, 2]).derivative(), p(&[0, 4]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        let x = BigRational::from_integer(2.into());
        assert_eq!(p(&[1, 0, 1]).eval(&x), BigRational::from_integer(5.into()));
        assert_eq!(p(&[4, 0, 0, 0]).to_string(), "4");
        assert_eq!(p(&[-27, 0, 1, 4]).to_string(), "4*t^3 + t^2 - 27");
    }

    #[test]
    fn division() {
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1]).div_rem(&RationalPoly::zero()).is_err());
    }

    #[test]
    fn gcd_examples() {
        // (t−1)²(t+2) and (t−1)(t+3)
        let a = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(a.gcd(&RationalPoly::zero()), a.monic());
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 2])), p(&[1]));
        let half = RationalPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
        ]);
        assert_eq!(half.gcd(&(&half * &p(&[5, 7, 1]))), half.monic());
    }

    #[test]
    fn squarefree_examples() {
        assert!(p(&[1, 0, 1]).is_squarefree().unwrap());
        assert!(!p(&[0, 0, 1]).is_squarefree().unwrap());
        assert!(!p(&[0, 0, 0, 4]).is_squarefree().unwrap());
        assert!(p(&[-27]).is_squarefree().unwrap());
        assert_eq!(
            RationalPoly::zero().is_squarefree(),
            Err(Error::ZeroPolynomial)
        );
    }
}
