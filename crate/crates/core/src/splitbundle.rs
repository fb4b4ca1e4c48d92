//! Split vector bundles on the projective line.
//!
//! Every vector bundle on P¹ is a direct sum of line bundles `O(a)`, so a
//! bundle is determined by its multiset of summand degrees. All operations
//! here are integer bookkeeping on that multiset.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `O(a_1) ⊕ … ⊕ O(a_n)` with `a_1 ≤ … ≤ a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

/// Dimensions of `H⁰` and `H¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub h0: i64,
    pub h1: i64,
}

/// `dim Hom(E, F)` and `dim Ext¹(E, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDims {
    pub hom: i64,
    pub ext1: i64,
}

/// `h⁰(O(a))`.
pub fn line_h0(a: i64) -> i64 {
    (a + 1).max(0)
}

/// `h¹(O(a))`.
pub fn line_h1(a: i64) -> i64 {
    (-a - 1).max(0)
}

impl SplitBundle {
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptyBundle);
        }
        degrees.sort_unstable();
        Ok(SplitBundle { degrees })
    }

    pub fn from_slice(degrees: &[i64]) -> Result<Self> {
        Self::new(degrees.to_vec())
    }

    /// The line bundle `O(a)`.
    pub fn line(a: i64) -> Self {
        SplitBundle { degrees: vec![a] }
    }

    /// `O(a)^{⊕ n}`; `n` must be positive.
    pub fn uniform(a: i64, n: usize) -> Result<Self> {
        Self::new(vec![a; n])
    }

    /// The balanced bundle of the given rank and degree: summands differ by at most one.
    pub fn balanced(rank: usize, degree: i64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::OutOfRange("balanced bundle needs rank >= 1".into()));
        }
        let n = rank as i64;
        let low = degree.div_euclid(n);
        let high_count = degree.rem_euclid(n) as usize;
        let mut degrees = vec![low; rank - high_count];
        degrees.extend(std::iter::repeat_n(low + 1, high_count));
        Ok(SplitBundle { degrees })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// `⌊E⌋`, the smallest summand degree.
    pub fn min_degree(&self) -> i64 {
        self.degrees[0]
    }

    /// `⌈E⌉`, the largest summand degree.
    pub fn max_degree(&self) -> i64 {
        self.degrees[self.degrees.len() - 1]
    }

    pub fn is_balanced(&self) -> bool {
        self.max_degree() - self.min_degree() <= 1
    }

    /// Number of distinct summand degrees.
    pub fn distinct_degrees(&self) -> usize {
        1 + self.degrees.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Multiplicity of `O(a)` as a summand.
    pub fn multiplicity(&self, a: i64) -> usize {
        self.degrees.iter().filter(|&&x| x == a).count()
    }

    pub fn dual(&self) -> Self {
        SplitBundle {
            degrees: self.degrees.iter().rev().map(|a| -a).collect(),
        }
    }

    pub fn twist(&self, k: i64) -> Self {
        SplitBundle {
            degrees: self.degrees.iter().map(|a| a + k).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        degrees.sort_unstable();
        SplitBundle { degrees }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut degrees = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.degrees {
            for b in &other.degrees {
                degrees.push(a + b);
            }
        }
        degrees.sort_unstable();
        SplitBundle { degrees }
    }

    /// `Sym^n E`: one summand per size-`n` multiset of summand indices.
    pub fn sym(&self, n: usize) -> Self {
        let mut out = Vec::new();
        collect_index_sums(&self.degrees, n, 0, 0, true, &mut out);
        out.sort_unstable();
        SplitBundle { degrees: out }
    }

    /// `∧^n E`: one summand per strictly increasing size-`n` index tuple.
    pub fn wedge(&self, n: usize) -> Result<Self> {
        if n > self.rank() {
            return Err(Error::WedgeExceedsRank {
                n,
                rank: self.rank(),
            });
        }
        let mut out = Vec::new();
        collect_index_sums(&self.degrees, n, 0, 0, false, &mut out);
        out.sort_unstable();
        Ok(SplitBundle { degrees: out })
    }

    pub fn det(&self) -> Self {
        Self::line(self.degree())
    }

    pub fn h0(&self) -> i64 {
        self.degrees.iter().map(|&a| line_h0(a)).sum()
    }

    pub fn h1(&self) -> i64 {
        self.degrees.iter().map(|&a| line_h1(a)).sum()
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology {
            h0: self.h0(),
            h1: self.h1(),
        }
    }

    /// Euler characteristic `h⁰ − h¹ = deg + rank`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degree() + self.rank() as i64
    }

    /// `Hom(E, E)` minus scalars, the dimension of `Aut(PE/P¹)`.
    pub fn aut_group_dim(&self) -> i64 {
        ext_dims(self, self).hom - 1
    }

    /// `E ⤳ other`: `self` specializes to `other` in a flat family.
    ///
    /// Holds iff ranks and degrees agree and the ascending prefix sums of
    /// `other` are bounded above by those of `self`.
    pub fn specializes_to(&self, other: &Self) -> bool {
        if self.rank() != other.rank() || self.degree() != other.degree() {
            return false;
        }
        let mut lhs = 0;
        let mut rhs = 0;
        for (a, b) in self.degrees.iter().zip(&other.degrees) {
            lhs += a;
            rhs += b;
            if rhs > lhs {
                return false;
            }
        }
        true
    }
}

fn collect_index_sums(
    degrees: &[i64],
    remaining: usize,
    start: usize,
    acc: i64,
    repeat: bool,
    out: &mut Vec<i64>,
) {
    if remaining == 0 {
        out.push(acc);
        return;
    }
    for i in start..degrees.len() {
        let next = if repeat { i } else { i + 1 };
        collect_index_sums(degrees, remaining - 1, next, acc + degrees[i], repeat, out);
    }
}

/// `(hom, ext¹) = (h⁰, h¹)` of `E^∨ ⊗ F`.
pub fn ext_dims(e: &SplitBundle, f: &SplitBundle) -> ExtDims {
    let mut hom = 0;
    let mut ext1 = 0;
    for a in &e.degrees {
        for b in &f.degrees {
            hom += line_h0(b - a);
            ext1 += line_h1(b - a);
        }
    }
    ExtDims { hom, ext1 }
}

impl TryFrom<Vec<i64>> for SplitBundle {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        SplitBundle::new(v)
    }
}

impl From<SplitBundle> for Vec<i64> {
    fn from(b: SplitBundle) -> Self {
        b.degrees
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Parses `3,5,7`, `(3,5,7)` or `3 5 7`.
impl FromStr for SplitBundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let degrees = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad summand degree {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SplitBundle::new(degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(d: &[i64]) -> SplitBundle {
        SplitBundle::from_slice(d).unwrap()
    }

    #[test]
    fn make_sorts() {
        let e = b(&[5, 3]);
        assert_eq!(e.degrees(), &[3, 5]);
        assert_eq!((e.rank(), e.degree()), (2, 8));
        assert_eq!((b(&[0]).rank(), b(&[0]).degree()), (1, 0));
        assert_eq!((b(&[2, 2, 2, 2]).rank(), b(&[2, 2, 2, 2]).degree()), (4, 8));
        assert_eq!(SplitBundle::new(vec![]), Err(Error::EmptyBundle));
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(b(&[3, 5]).sym(3), b(&[9, 11, 13, 15]));
        assert_eq!(
            b(&[6, 8, 8, 8, 8]).wedge(2).unwrap(),
            b(&[14, 14, 14, 14, 16, 16, 16, 16, 16, 16])
        );
        let e = b(&[3, 5, 7]);
        assert_eq!(e.det(), SplitBundle::line(15));
        assert_eq!(e.wedge(3).unwrap(), e.det());
        assert_eq!(e.tensor(&e.dual()), b(&[0, 0, 0, 2, 4, 2, -2, -4, -2]));
        assert_eq!(e.sym(0), SplitBundle::line(0));
        assert_eq!(e.wedge(0).unwrap(), SplitBundle::line(0));
        assert_eq!(e.wedge(4), Err(Error::WedgeExceedsRank { n: 4, rank: 3 }));
        assert_eq!(e.twist(-2), b(&[1, 3, 5]));
        assert_eq!(e.direct_sum(&b(&[4])), b(&[3, 4, 5, 7]));
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(b(&[-1, -1]).cohomology(), Cohomology { h0: 0, h1: 0 });
        assert_eq!(b(&[3, 5]).cohomology(), Cohomology { h0: 10, h1: 0 });
        // Euler characteristic 0 + 6 forces h0 = 10 here.
        assert_eq!(
            b(&[-4, -2, 0, 0, 2, 4]).cohomology(),
            Cohomology { h0: 10, h1: 4 }
        );
    }

    #[test]
    fn ext_examples() {
        let e = b(&[3, 5, 7]);
        assert_eq!(ext_dims(&e, &e).ext1, 5);
        assert_eq!(b(&[4, 4]).aut_group_dim(), 3);
        assert_eq!(ext_dims(&b(&[6, 9]), &b(&[6, 9])).ext1, 2);
        assert_eq!(ext_dims(&b(&[5, 10]), &b(&[5, 10])).ext1, 4);
    }

    #[test]
    fn specialization_examples() {
        assert!(b(&[0, 0]).specializes_to(&b(&[-1, 1])));
        assert!(!b(&[-1, 1]).specializes_to(&b(&[0, 0])));
        assert!(!b(&[3, 5]).specializes_to(&b(&[4, 4])));
        assert!(b(&[4, 4]).specializes_to(&b(&[3, 5])));
        assert!(!b(&[4, 4]).specializes_to(&b(&[3, 6])));
        assert!(!b(&[4, 4]).specializes_to(&b(&[3, 4, 1])));
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(SplitBundle::balanced(2, 8).unwrap(), b(&[4, 4]));
        assert_eq!(SplitBundle::balanced(3, 12).unwrap(), b(&[4, 4, 4]));
        assert_eq!(SplitBundle::balanced(5, 40).unwrap(), b(&[8, 8, 8, 8, 8]));
        assert_eq!(SplitBundle::balanced(3, -4).unwrap(), b(&[-2, -1, -1]));
        assert!(SplitBundle::balanced(0, 3).is_err());
    }

    #[test]
    fn parse_and_display() {
        let e: SplitBundle = "7,3, 5".parse().unwrap();
        assert_eq!(e.to_string(), "(3,5,7)");
        assert_eq!("(-1,-1)".parse::<SplitBundle>().unwrap(), b(&[-1, -1]));
        assert!("".parse::<SplitBundle>().is_err());
        assert!("1,x".parse::<SplitBundle>().is_err());
    }

    #[test]
    fn serde_roundtrip_keeps_canonical_form() {
        let e: SplitBundle = serde_json::from_str("[5,3]").unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), "[3,5]");
        assert!(serde_json::from_str::<SplitBundle>("[]").is_err());
    }
}
