//! Constraints on Tschirnhausen bundles of degree-`d` genus-`g` covers,
//! enumeration of tame bundles, and the numerology of the associated
//! curves on Hirzebruch surfaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::splitbundle::SplitBundle;
use crate::sweep::{self, Parallelism};

/// Largest cover degree `enumerate_tame` accepts by default.
pub const DEFAULT_MAX_ENUM_DEGREE: i64 = 8;

/// A degree-`d` cover of P¹ by a genus-`g` curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoverClass {
    pub d: i64,
    pub g: i64,
}

impl CoverClass {
    pub fn new(d: i64, g: i64) -> Result<Self> {
        if d < 3 {
            return Err(Error::Unsupported(format!(
                "cover degree d={d}; need d >= 3"
            )));
        }
        if g < 2 {
            return Err(Error::Unsupported(format!("genus g={g}; need g >= 2")));
        }
        Ok(CoverClass { d, g })
    }

    /// Rank of the Tschirnhausen bundle, `d − 1`.
    pub fn tschirnhausen_rank(&self) -> usize {
        (self.d - 1) as usize
    }

    /// Degree of the Tschirnhausen bundle, `g + d − 1`.
    pub fn tschirnhausen_degree(&self) -> i64 {
        self.g + self.d - 1
    }

    /// The balanced (most generic) Tschirnhausen bundle.
    pub fn generic_tschirnhausen(&self) -> SplitBundle {
        SplitBundle::balanced(self.tschirnhausen_rank(), self.tschirnhausen_degree())
            .expect("rank is positive")
    }

    /// `⌊(g+d−1)/(d−1)⌋`, the minimal summand of the generic bundle.
    pub fn top_m(&self) -> i64 {
        self.tschirnhausen_degree().div_euclid(self.d - 1)
    }

    /// Integers `m` with `(g+d−1)/C(d,2) ≤ m ≤ (g+d−1)/(d−1)`.
    pub fn m_range(&self) -> std::ops::RangeInclusive<i64> {
        let deg = self.tschirnhausen_degree();
        let low = ceil_div(deg, binom2(self.d));
        low..=self.top_m()
    }

    pub(crate) fn check_tschirnhausen(&self, e: &SplitBundle, what: &'static str) -> Result<()> {
        if e.rank() != self.tschirnhausen_rank() || e.degree() != self.tschirnhausen_degree() {
            return Err(Error::RankDegree {
                what,
                expected_rank: self.tschirnhausen_rank(),
                expected_degree: self.tschirnhausen_degree(),
                rank: e.rank(),
                degree: e.degree(),
            });
        }
        Ok(())
    }
}

pub(crate) fn binom2(d: i64) -> i64 {
    d * (d - 1) / 2
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Which of the tameness inequalities a bundle satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameCheck {
    /// `⌈E⌉ ≤ (2g+2d−2)/d`.
    pub max_summand_ok: bool,
    /// `(g+d−1)/C(d,2) ≤ ⌊E⌋ ≤ (g+d−1)/(d−1)`.
    pub min_summand_ok: bool,
    /// Indices `i` (1-based) where `a_{i+1} − a_i > ⌊E⌋`.
    pub gap_violations: Vec<usize>,
}

impl TameCheck {
    pub fn is_tame(&self) -> bool {
        self.max_summand_ok && self.min_summand_ok && self.gap_violations.is_empty()
    }
}

pub fn is_tame(e: &SplitBundle, c: &CoverClass) -> Result<TameCheck> {
    c.check_tschirnhausen(e, "Tschirnhausen bundle")?;
    let deg = c.tschirnhausen_degree();
    let (lo, hi) = (e.min_degree(), e.max_degree());
    let max_summand_ok = hi * c.d <= 2 * c.g + 2 * c.d - 2;
    let min_summand_ok = deg <= lo * binom2(c.d) && lo * (c.d - 1) <= deg;
    let gap_violations = e
        .degrees()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] - w[0] > lo)
        .map(|(i, _)| i + 1)
        .collect();
    Ok(TameCheck {
        max_summand_ok,
        min_summand_ok,
        gap_violations,
    })
}

/// The tame bundles `T[m]` with a fixed minimal summand `m`, and their
/// most generic member `E[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameFamily {
    pub cover: CoverClass,
    pub m: i64,
    pub members: Vec<SplitBundle>,
    pub generic: SplitBundle,
}

pub fn enumerate_tame(c: &CoverClass) -> Result<Vec<TameFamily>> {
    enumerate_tame_with(c, DEFAULT_MAX_ENUM_DEGREE, Parallelism::available())
}

/// Exhaustive enumeration of tame bundles grouped by `⌊E⌋`. Families
/// for distinct `m` are built independently.
pub fn enumerate_tame_with(
    c: &CoverClass,
    max_degree: i64,
    mode: Parallelism,
) -> Result<Vec<TameFamily>> {
    if c.d > max_degree {
        return Err(Error::OutOfRange(format!(
            "tame enumeration is capped at d <= {max_degree}, got d={}",
            c.d
        )));
    }
    let ms: Vec<i64> = c.m_range().collect();
    let families = sweep::try_map_ordered(ms, mode, |m| tame_family(c, m))?;
    Ok(families.into_iter().flatten().collect())
}

/// `T[m]` with its generic member, or `None` when `T[m]` is empty.
pub fn tame_family(c: &CoverClass, m: i64) -> Result<Option<TameFamily>> {
    let members = tame_members(c, m);
    if members.is_empty() {
        return Ok(None);
    }
    let maxima: Vec<&SplitBundle> = members
        .iter()
        .filter(|cand| members.iter().all(|other| cand.specializes_to(other)))
        .collect();
    match maxima.as_slice() {
        [generic] => {
            let generic = (*generic).clone();
            Ok(Some(TameFamily {
                cover: *c,
                m,
                members,
                generic,
            }))
        }
        _ => Err(Error::NonUniqueGeneric {
            d: c.d,
            g: c.g,
            m,
            candidates: maximal_elements(&members),
        }),
    }
}

fn maximal_elements(members: &[SplitBundle]) -> Vec<SplitBundle> {
    members
        .iter()
        .filter(|cand| {
            !members
                .iter()
                .any(|other| other != *cand && other.specializes_to(cand))
        })
        .cloned()
        .collect()
}

/// All tame bundles with `⌊E⌋ = m`, ascending degree vectors built
/// summand by summand with the gap and top-summand bounds pruned early.
fn tame_members(c: &CoverClass, m: i64) -> Vec<SplitBundle> {
    let rank = c.tschirnhausen_rank();
    let deg = c.tschirnhausen_degree();
    // ⌈E⌉ ≤ (2g+2d−2)/d
    let cap = (2 * c.g + 2 * c.d - 2).div_euclid(c.d);
    let mut out = Vec::new();
    if m < 1 || m > cap {
        return out;
    }
    let mut current = vec![m];
    extend_tame(&mut current, rank, deg - m, m, cap, &mut out);
    out.retain(|e| is_tame(e, c).map(|t| t.is_tame()).unwrap_or(false));
    out
}

fn extend_tame(
    current: &mut Vec<i64>,
    rank: usize,
    remaining: i64,
    m: i64,
    cap: i64,
    out: &mut Vec<SplitBundle>,
) {
    let slots = (rank - current.len()) as i64;
    if slots == 0 {
        if remaining == 0 {
            out.push(SplitBundle::from_slice(current).expect("nonempty"));
        }
        return;
    }
    let prev = *current.last().expect("nonempty");
    let hi = cap.min(prev + m);
    for next in prev..=hi {
        // the remaining slots are each in [next, cap]
        if next * slots > remaining || cap * slots < remaining {
            continue;
        }
        current.push(next);
        extend_tame(current, rank, remaining - next, m, cap, out);
        current.pop();
    }
}

/// Arithmetic genus `C(d,2)·n − (d−1)` of a curve in `|dτ|` on `F_n`.
pub fn scroll_genus(d: i64, n: i64) -> i64 {
    binom2(d) * n - (d - 1)
}

/// Dimension `dm + 2d + g − 1` of the Severi variety of genus-`g` curves in `|dτ|` on `F_m`.
pub fn severi_dim(d: i64, g: i64, m: i64) -> i64 {
    d * m + 2 * d + g - 1
}

/// The thresholds on `m` beyond which the Hurwitz and Severi Picard
/// groups are compared. Two different equivalence thresholds appear in
/// the literature; both are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeveriThresholds {
    /// `⌊(g+d−1)/(d−1)⌋`
    pub one_way: i64,
    /// `⌈2(g+d−1)/(d−1)⌉`
    pub equivalence_by_rank: i64,
    /// `⌈2(g+d−1)/d⌉`
    pub equivalence_by_degree: i64,
}

pub fn severi_thresholds(c: &CoverClass) -> SeveriThresholds {
    let deg = c.tschirnhausen_degree();
    SeveriThresholds {
        one_way: deg.div_euclid(c.d - 1),
        equivalence_by_rank: ceil_div(2 * deg, c.d - 1),
        equivalence_by_degree: ceil_div(2 * deg, c.d),
    }
}
