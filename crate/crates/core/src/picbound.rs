//! Upper bound on the rational Picard rank of the simply branched Hurwitz
//! space in degrees 3, 4 and 5.
//!
//! The open set where both `E` and `F` are generic is a quotient of an
//! open subset of a projective space by `G = Aut(PF/P¹) × Aut(PE/P¹)`, so
//!
//! ```text
//! rk Pic ≤ 1 + rk χ(G) + e
//! ```
//!
//! where `e` counts divisorial components of the complement. The bound is
//! compared against the number of boundary divisors, which are known to be
//! independent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::loci::{ce_rank, maroni_divisor, skew_model_bundle};
use crate::splitbundle::SplitBundle;
use crate::sweep::{self, Parallelism};
use crate::tschirnhausen::CoverClass;

/// Rank of the character group of `Aut(PE/P¹)`: one determinant per block
/// of equal summand degrees, modulo scalars.
pub fn chi_rank(e: &SplitBundle) -> i64 {
    e.distinct_degrees() as i64 - 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DivisorLabel {
    /// Maroni divisor, where `E` jumps.
    M,
    /// Casnati–Ekedahl divisor, where `F` jumps.
    CE,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorCount {
    pub e: i64,
    pub labels: Vec<DivisorLabel>,
}

/// Rejects degrees outside 3..=5 and the small genera that behave
/// exceptionally.
pub fn check_supported(c: &CoverClass) -> Result<()> {
    match c.d {
        3 => Ok(()),
        4 if c.g >= 4 => Ok(()),
        4 => Err(Error::Unsupported(format!(
            "d=4 requires g >= 4 (got g={}); the CE divisor is reducible at g=3",
            c.g
        ))),
        5 if c.g >= 5 => Ok(()),
        5 => Err(Error::Unsupported(format!(
            "d=5 requires g >= 5 (got g={}); low genera are handled case by case",
            c.g
        ))),
        d => Err(Error::Unsupported(format!(
            "Picard rank bound is only available for d in 3..=5, got d={d}"
        ))),
    }
}

/// Number of divisorial components of the complement of the locus where
/// `E` and `F` are both generic.
pub fn divisor_count(c: &CoverClass) -> Result<DivisorCount> {
    check_supported(c)?;
    let g = c.g;
    let mut labels = Vec::new();
    if g % (c.d - 1) == 0 {
        labels.push(DivisorLabel::M);
    }
    let ce = match c.d {
        4 => g % 2 == 1,
        5 => (g + 4) % 5 == 0,
        _ => false,
    };
    if ce {
        labels.push(DivisorLabel::CE);
    }
    Ok(DivisorCount {
        e: labels.len() as i64,
        labels,
    })
}

/// Generic first syzygy bundle `F`: rank from the syzygy-rank formula,
/// degree `g+3` for `d = 4` and `2g+8` for `d = 5`.
pub fn generic_syzygy(c: &CoverClass) -> Result<Option<SplitBundle>> {
    check_supported(c)?;
    let degree = match c.d {
        3 => return Ok(None),
        4 => c.g + 3,
        _ => 2 * c.g + 8,
    };
    let rank = ce_rank(c.d, 1)? as usize;
    Ok(Some(SplitBundle::balanced(rank, degree)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub d: i64,
    pub g: i64,
    pub e_gen: SplitBundle,
    pub f_gen: Option<SplitBundle>,
    pub chi_rank_e: i64,
    pub chi_rank_f: i64,
    pub e: i64,
    pub e_labels: Vec<DivisorLabel>,
    pub bound: i64,
    pub boundary_classes: i64,
    pub verdict: bool,
}

pub fn rank_bound(c: &CoverClass) -> Result<RankReport> {
    let count = divisor_count(c)?;
    let e_gen = c.generic_tschirnhausen();
    let f_gen = generic_syzygy(c)?;
    let chi_rank_e = chi_rank(&e_gen);
    let chi_rank_f = f_gen.as_ref().map_or(0, chi_rank);
    let bound = 1 + chi_rank_e + chi_rank_f + count.e;
    let boundary_classes = if c.d == 3 { 2 } else { 3 };
    Ok(RankReport {
        d: c.d,
        g: c.g,
        e_gen,
        f_gen,
        chi_rank_e,
        chi_rank_f,
        e: count.e,
        e_labels: count.labels,
        bound,
        boundary_classes,
        verdict: bound == boundary_classes,
    })
}

/// [`rank_bound`] over `g ∈ genera`, results in genus order.
pub fn rank_bound_sweep(
    d: i64,
    genera: std::ops::RangeInclusive<i64>,
    mode: Parallelism,
) -> Result<Vec<RankReport>> {
    sweep::try_map_ordered(genera.collect(), mode, |g| {
        rank_bound(&CoverClass::new(d, g)?)
    })
}

/// `dim P(V)` against `dim H† + dim G` for the parameter space `V` of
/// covers with generic `E` and `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionIdentity {
    pub d: i64,
    pub g: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// The bundle whose global sections parametrise covers with the given
/// `E` (and `F` for `d ≥ 4`).
pub fn section_bundle(d: i64, e: &SplitBundle, f: Option<&SplitBundle>) -> Result<SplitBundle> {
    match (d, f) {
        (3, _) => Ok(e.sym(3).twist(-e.degree())),
        (4, Some(f)) => Ok(f.dual().tensor(&e.sym(2))),
        (5, Some(f)) => Ok(skew_model_bundle(e, f)),
        _ => Err(Error::Unsupported(format!("no section bundle for d={d}"))),
    }
}

pub fn dimension_identity(c: &CoverClass) -> Result<DimensionIdentity> {
    check_supported(c)?;
    let e = c.generic_tschirnhausen();
    let f = generic_syzygy(c)?;
    let lhs = section_bundle(c.d, &e, f.as_ref())?.h0() - 1;
    let rhs = (2 * c.g + 2 * c.d - 2)
        + e.aut_group_dim()
        + f.as_ref().map_or(0, SplitBundle::aut_group_dim);
    Ok(DimensionIdentity {
        d: c.d,
        g: c.g,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

pub fn dimension_identity_sweep(
    d: i64,
    genera: std::ops::RangeInclusive<i64>,
    mode: Parallelism,
) -> Result<Vec<DimensionIdentity>> {
    sweep::try_map_ordered(genera.collect(), mode, |g| {
        dimension_identity(&CoverClass::new(d, g)?)
    })
}

/// Whether the Maroni label of [`divisor_count`] agrees with
/// [`maroni_divisor`] for this cover class.
pub fn maroni_label_consistent(c: &CoverClass) -> Result<bool> {
    let count = divisor_count(c)?;
    Ok(count.labels.contains(&DivisorLabel::M) == maroni_divisor(c).is_some())
}
