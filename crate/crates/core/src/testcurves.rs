//! Test curves against the boundary divisors `T` (triple ramification),
//! `D` (two ramification points in one fiber) and `Δ` (singular source).
//!
//! A family of covers `α_b` glued at two sections to a fixed cover of
//! degree `d₂` and genus `g₂` has boundary degrees given by
//! [`attach_degrees`]. Three such families give a 3×3 intersection matrix
//! whose nonsingularity shows `T`, `D`, `Δ` are independent.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::det_integer;
use crate::sweep::{self, Parallelism};

/// Intersection data of the varying family `α` and the fixed cover.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FamilyInvariants {
    pub deg_t_alpha: i64,
    pub deg_d_alpha: i64,
    pub deg_delta_alpha: i64,
    /// `Br(α)` against a horizontal section.
    pub e: i64,
    pub g2: i64,
    pub d2: i64,
    /// `[p]·Ram(α)`
    pub p_ram: i64,
    /// `[q]·Ram(α)`
    pub q_ram: i64,
    /// `[p]²`
    pub p_sq: i64,
    /// `[q]²`
    pub q_sq: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryDegrees {
    pub t: i64,
    pub d: i64,
    pub delta: i64,
}

pub fn attach_degrees(inv: &FamilyInvariants) -> BoundaryDegrees {
    let ram = inv.p_ram + inv.q_ram;
    BoundaryDegrees {
        t: inv.deg_t_alpha + 3 * ram,
        d: inv.deg_d_alpha + (2 * inv.g2 + 2 * inv.d2 - 2) * inv.e + 4 * inv.e - 4 * ram,
        delta: inv.deg_delta_alpha + inv.p_sq + inv.q_sq,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryMatrix {
    pub row_labels: Vec<&'static str>,
    pub col_labels: Vec<&'static str>,
    pub rows: Vec<Vec<i64>>,
}

/// Intersection numbers of the test curves `B₁, B₂, B₃` with `T, D, Δ`
/// for `d ≥ 4`; for `d = 3` the `D` column and `B₃` are dropped and the
/// trigonal pencil row `(3g+6, 7g+6)` replaces `B₂`.
pub fn boundary_matrix(d: i64, g: i64) -> Result<BoundaryMatrix> {
    if d < 3 {
        return Err(Error::OutOfRange(format!(
            "test curves need d >= 3, got d={d}"
        )));
    }
    if g < 3 {
        return Err(Error::OutOfRange(format!(
            "test curves need g >= 3, got g={g}"
        )));
    }
    if d == 3 {
        return Ok(BoundaryMatrix {
            row_labels: vec!["B1", "B2"],
            col_labels: vec!["T", "Delta"],
            rows: vec![vec![6, 8 * g - 6], vec![3 * g + 6, 7 * g + 6]],
        });
    }
    Ok(BoundaryMatrix {
        row_labels: vec!["B1", "B2", "B3"],
        col_labels: vec!["T", "D", "Delta"],
        rows: vec![
            vec![6, 4 * d - 12, 8 * g - 6],
            vec![3 * g + 9, 8 * d - 24, 7 * g - 3],
            vec![6, 4 * d - 8, 8 * g - 14],
        ],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nonsingularity {
    pub det: String,
    pub nonsingular: bool,
}

pub fn determinant(m: &BoundaryMatrix) -> Result<BigInt> {
    det_integer(&m.rows)
}

pub fn is_nonsingular(m: &BoundaryMatrix) -> Result<Nonsingularity> {
    let det = determinant(m)?;
    Ok(Nonsingularity {
        nonsingular: !det.is_zero(),
        det: det.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixRow {
    pub d: i64,
    pub g: i64,
    pub det: String,
    pub nonsingular: bool,
}

pub fn matrix_sweep(
    d: i64,
    genera: std::ops::RangeInclusive<i64>,
    mode: Parallelism,
) -> Result<Vec<MatrixRow>> {
    sweep::try_map_ordered(genera.collect(), mode, |g| {
        let n = is_nonsingular(&boundary_matrix(d, g)?)?;
        Ok(MatrixRow {
            d,
            g,
            det: n.det,
            nonsingular: n.nonsingular,
        })
    })
}

/// Integer polynomial in the two symbols `d` and `g`, keyed by the
/// exponent pair `(i, j)` of `d^i g^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), i64>,
}

impl Poly2 {
    pub fn constant(c: i64) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: i64, d_exp: u32, g_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((d_exp, g_exp), c);
        }
        Poly2 { terms }
    }

    /// `a + b·d + c·g`
    pub fn linear(a: i64, b: i64, c: i64) -> Self {
        Self::constant(a)
            .add(&Self::term(b, 1, 0))
            .add(&Self::term(c, 0, 1))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, &v) in &other.terms {
            let e = terms.entry(k).or_insert(0);
            *e += v;
            if *e == 0 {
                terms.remove(&k);
            }
        }
        Poly2 { terms }
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            terms: self.terms.iter().map(|(&k, &v)| (k, -v)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly2::default();
        for (&(a, b), &u) in &self.terms {
            for (&(c, e), &v) in &other.terms {
                out = out.add(&Poly2::term(u * v, a + c, b + e));
            }
        }
        out
    }

    pub fn eval(&self, d: i64, g: i64) -> BigInt {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| BigInt::from(c) * BigInt::from(d).pow(i) * BigInt::from(g).pow(j))
            .sum()
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), &c)) in self.terms.iter().rev().enumerate() {
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}", c.abs())?;
            for (sym, e) in [("d", i), ("g", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{sym}")?,
                    _ => write!(f, "*{sym}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// The `d ≥ 4` intersection matrix with entries as polynomials in `(d, g)`.
pub fn symbolic_boundary_matrix() -> Vec<Vec<Poly2>> {
    vec![
        vec![
            Poly2::constant(6),
            Poly2::linear(-12, 4, 0),
            Poly2::linear(-6, 0, 8),
        ],
        vec![
            Poly2::linear(9, 0, 3),
            Poly2::linear(-24, 8, 0),
            Poly2::linear(-3, 0, 7),
        ],
        vec![
            Poly2::constant(6),
            Poly2::linear(-8, 4, 0),
            Poly2::linear(-14, 0, 8),
        ],
    ]
}

/// Cofactor expansion of a square matrix of polynomials.
pub fn symbolic_determinant(m: &[Vec<Poly2>]) -> Poly2 {
    match m.len() {
        0 => Poly2::constant(1),
        1 => m[0][0].clone(),
        n => {
            let mut total = Poly2::default();
            for col in 0..n {
                let minor: Vec<Vec<Poly2>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul(&symbolic_determinant(&minor));
                total = if col % 2 == 0 {
                    total.add(&term)
                } else {
                    total.sub(&term)
                };
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attach_examples() {
        let zero = FamilyInvariants::default();
        assert_eq!(
            attach_degrees(&zero),
            BoundaryDegrees {
                t: 0,
                d: 0,
                delta: 0
            }
        );
        let inv = FamilyInvariants {
            e: 1,
            d2: 2,
            ..zero
        };
        assert_eq!(
            attach_degrees(&inv),
            BoundaryDegrees {
                t: 0,
                d: 6,
                delta: 0
            }
        );
        let inv = FamilyInvariants {
            p_ram: 1,
            q_ram: 1,
            ..zero
        };
        assert_eq!(
            attach_degrees(&inv),
            BoundaryDegrees {
                t: 6,
                d: -8,
                delta: 0
            }
        );
        let inv = FamilyInvariants {
            deg_delta_alpha: 2,
            p_sq: -1,
            q_sq: -1,
            ..zero
        };
        assert_eq!(attach_degrees(&inv).delta, 0);
    }

    #[test]
    fn matrices() {
        assert_eq!(
            boundary_matrix(4, 5).unwrap().rows,
            vec![vec![6, 4, 34], vec![24, 8, 32], vec![6, 8, 26]]
        );
        assert_eq!(
            boundary_matrix(3, 5).unwrap().rows,
            vec![vec![6, 34], vec![21, 41]]
        );
        assert_eq!(
            boundary_matrix(5, 3).unwrap().rows,
            vec![vec![6, 8, 18], vec![18, 16, 18], vec![6, 12, 10]]
        );
        assert!(boundary_matrix(2, 5).is_err());
    }

    #[test]
    fn determinants() {
        let n = is_nonsingular(&boundary_matrix(4, 5).unwrap()).unwrap();
        assert_eq!(n.det, "2880");
        assert!(n.nonsingular);
        let m = BoundaryMatrix {
            row_labels: vec![],
            col_labels: vec![],
            rows: vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 1]],
        };
        assert!(!is_nonsingular(&m).unwrap().nonsingular);
        let m = BoundaryMatrix {
            rows: vec![vec![1, 2, 3], vec![1, 2, 3]],
            ..m
        };
        assert!(matches!(is_nonsingular(&m), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn symbolic_matches_numeric() {
        let p = symbolic_determinant(&symbolic_boundary_matrix());
        assert_eq!(p.eval(4, 5), BigInt::from(2880));
        for (d, g) in [(4, 3), (7, 11), (30, 100)] {
            assert_eq!(
                p.eval(d, g),
                determinant(&boundary_matrix(d, g).unwrap()).unwrap()
            );
        }
    }
}
