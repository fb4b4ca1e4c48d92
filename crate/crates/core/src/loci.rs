//! Codimensions of Maroni loci `M(E)`, Casnati–Ekedahl loci `C(F)` and
//! their intersections `M(E, F)`, plus the degree-4 and degree-5
//! irreducibility constraints on the pair `(E, F)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::splitbundle::{ext_dims, SplitBundle};
use crate::tschirnhausen::{ceil_div, severi_dim, CoverClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocusKind {
    MaroniGeneric,
    MaroniDivisorTest,
    Mef4,
    Mef5,
    Ce4,
}

/// A named integer contribution to a codimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: &'static str,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    pub kind: LocusKind,
    pub d: i64,
    pub g: i64,
    pub e: Option<SplitBundle>,
    pub f: Option<SplitBundle>,
    pub codimension: i64,
    pub components: Vec<Term>,
}

impl LocusReport {
    pub fn term(&self, name: &str) -> Option<i64> {
        self.components
            .iter()
            .find(|t| t.name == name)
            .map(|t| t.value)
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of the `i`-th syzygy bundle `N_i` in the relative resolution of a
/// degree-`d` cover, `1 ≤ i ≤ d−2`. The last one is `det E`, of rank one.
pub fn ce_rank(d: i64, i: i64) -> Result<i64> {
    if d < 3 || i < 1 || i > d - 2 {
        return Err(Error::OutOfRange(format!(
            "syzygy index i={i} for d={d}; need d >= 3 and 1 <= i <= d-2"
        )));
    }
    if i == d - 2 {
        return Ok(1);
    }
    let num = i * (d - 2 - i) * binom(d, i + 1);
    assert_eq!(num % (d - 1), 0, "non-integral syzygy rank at d={d}, i={i}");
    Ok(num / (d - 1))
}

fn check_m(c: &CoverClass, m: i64) -> Result<()> {
    if !c.m_range().contains(&m) {
        return Err(Error::OutOfRange(format!(
            "m={m} outside [{}, {}] for d={}, g={}",
            c.m_range().start(),
            c.m_range().end(),
            c.d,
            c.g
        )));
    }
    Ok(())
}

/// Codimension of `M(E[m])` in the framed Hurwitz space, via the
/// Severi-variety fibration: `dim H† − (dim V_g(F_m, dτ) − (m+2))`.
pub fn maroni_codim_via_severi(c: &CoverClass, m: i64) -> Result<i64> {
    check_m(c, m)?;
    if m == c.top_m() {
        return Ok(0);
    }
    let hurwitz_dim = 2 * c.g + 2 * c.d - 2;
    let locus_dim = severi_dim(c.d, c.g, m) - (m + 2);
    Ok(hurwitz_dim - locus_dim)
}

/// Codimension of the Maroni locus of the generic bundle `E[m]`:
/// `g − (d−1)m + 1`, or zero at the top value of `m`.
pub fn maroni_generic_codim(c: &CoverClass, m: i64) -> Result<i64> {
    check_m(c, m)?;
    let closed = if m == c.top_m() {
        0
    } else {
        c.g - (c.d - 1) * m + 1
    };
    let via_severi = maroni_codim_via_severi(c, m)?;
    assert_eq!(
        closed, via_severi,
        "Maroni codimension paths disagree at d={}, g={}, m={m}",
        c.d, c.g
    );
    Ok(closed)
}

pub fn maroni_generic_report(c: &CoverClass, m: i64) -> Result<LocusReport> {
    let codimension = maroni_generic_codim(c, m)?;
    Ok(LocusReport {
        kind: LocusKind::MaroniGeneric,
        d: c.d,
        g: c.g,
        e: None,
        f: None,
        codimension,
        components: vec![
            Term {
                name: "m",
                value: m,
            },
            Term {
                name: "severi_dim",
                value: severi_dim(c.d, c.g, m),
            },
            Term {
                name: "fiber_dim",
                value: m + 2,
            },
            Term {
                name: "hurwitz_dim",
                value: 2 * c.g + 2 * c.d - 2,
            },
        ],
    })
}

/// The unique Maroni divisor, if any: it exists iff `(d−1) | g`, and then
/// it is `M(O(k−1) ⊕ O(k)^{d−3} ⊕ O(k+1))` with `k = g/(d−1) + 1`.
pub fn maroni_divisor(c: &CoverClass) -> Option<SplitBundle> {
    if c.g % (c.d - 1) != 0 {
        return None;
    }
    let k = c.g / (c.d - 1) + 1;
    let mut degrees = vec![k - 1];
    degrees.extend(std::iter::repeat_n(k, (c.d - 3) as usize));
    degrees.push(k + 1);
    Some(SplitBundle::new(degrees).expect("nonempty"))
}

/// Lower bound `(s − r) + 1` on the codimension of `M(E)` when `E` shares
/// its minimal summand `k` with the generic bundle but is not generic.
pub fn maroni_codim_lower_bound(c: &CoverClass, e: &SplitBundle) -> Result<i64> {
    c.check_tschirnhausen(e, "Maroni bound")?;
    let k = c.top_m();
    let generic = c.generic_tschirnhausen();
    if e.min_degree() != k {
        return Err(Error::Precondition(format!(
            "minimal summand of {e} is {}, expected {k}",
            e.min_degree()
        )));
    }
    if *e == generic {
        return Err(Error::Precondition(format!("{e} is the generic bundle")));
    }
    let s = e.dual().twist(k).h0();
    let r = generic.dual().twist(k).h0();
    Ok(s - r + 1)
}

fn check_shape(b: &SplitBundle, what: &'static str, rank: usize, degree: i64) -> Result<()> {
    if b.rank() != rank || b.degree() != degree {
        return Err(Error::RankDegree {
            what,
            expected_rank: rank,
            expected_degree: degree,
            rank: b.rank(),
            degree: b.degree(),
        });
    }
    Ok(())
}

fn check_rank(b: &SplitBundle, what: &'static str, rank: usize) -> Result<()> {
    if b.rank() != rank {
        return Err(Error::Rank {
            what,
            expected: rank,
            actual: b.rank(),
        });
    }
    Ok(())
}

/// Codimension of `M(E, F)` in degree four:
/// `ext¹(E,E) + ext¹(F,F) − h¹(F^∨ ⊗ Sym²E)`.
pub fn mef_codim_d4(e: &SplitBundle, f: &SplitBundle, c: &CoverClass) -> Result<LocusReport> {
    if c.d != 4 {
        return Err(Error::Unsupported(format!(
            "M(E,F) in degree 4 asked with d={}",
            c.d
        )));
    }
    check_shape(e, "E", 3, c.g + 3)?;
    check_shape(f, "F", 2, c.g + 3)?;
    let ext_e = ext_dims(e, e).ext1;
    let ext_f = ext_dims(f, f).ext1;
    let correction = f.dual().tensor(&e.sym(2)).h1();
    Ok(LocusReport {
        kind: LocusKind::Mef4,
        d: c.d,
        g: c.g,
        e: Some(e.clone()),
        f: Some(f.clone()),
        codimension: ext_e + ext_f - correction,
        components: vec![
            Term {
                name: "ext1_EE",
                value: ext_e,
            },
            Term {
                name: "ext1_FF",
                value: ext_f,
            },
            Term {
                name: "h1_Fdual_Sym2E",
                value: correction,
            },
        ],
    })
}

/// `∧²F ⊗ E ⊗ det E^∨`, the bundle whose sections are degree-5 skew models.
pub fn skew_model_bundle(e: &SplitBundle, f: &SplitBundle) -> SplitBundle {
    f.wedge(2)
        .expect("rank of F is at least 2")
        .tensor(e)
        .twist(-e.degree())
}

/// Codimension of `M(E, F)` in degree five:
/// `ext¹(E,E) + ext¹(F,F) − h¹(∧²F ⊗ E ⊗ det E^∨)`.
pub fn mef_codim_d5(e: &SplitBundle, f: &SplitBundle, c: &CoverClass) -> Result<LocusReport> {
    if c.d != 5 {
        return Err(Error::Unsupported(format!(
            "M(E,F) in degree 5 asked with d={}",
            c.d
        )));
    }
    check_shape(e, "E", 4, c.g + 4)?;
    check_shape(f, "F", 5, 2 * c.g + 8)?;
    let ext_e = ext_dims(e, e).ext1;
    let ext_f = ext_dims(f, f).ext1;
    let correction = skew_model_bundle(e, f).h1();
    Ok(LocusReport {
        kind: LocusKind::Mef5,
        d: c.d,
        g: c.g,
        e: Some(e.clone()),
        f: Some(f.clone()),
        codimension: ext_e + ext_f - correction,
        components: vec![
            Term {
                name: "ext1_EE",
                value: ext_e,
            },
            Term {
                name: "ext1_FF",
                value: ext_f,
            },
            Term {
                name: "h1_Wedge2F_E_detEdual",
                value: correction,
            },
        ],
    })
}

/// A rank-4 bundle `O(k)^r ⊕ O(k+1)^{4−r}` with `0 ≤ r ≤ 3`; the
/// all-equal bundle `O(c)^4` is the `r = 0` case with `k = c − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NearlyBalanced {
    pub k: i64,
    pub r: i64,
}

impl NearlyBalanced {
    pub fn of(e: &SplitBundle) -> Result<Self> {
        check_rank(e, "E", 4)?;
        let lo = e.min_degree();
        let hi = e.max_degree();
        if lo == hi {
            return Ok(NearlyBalanced { k: lo - 1, r: 0 });
        }
        if hi != lo + 1 {
            return Err(Error::Precondition(format!(
                "{e} is not of the form O(k)^r + O(k+1)^(4-r)"
            )));
        }
        Ok(NearlyBalanced {
            k: lo,
            r: e.multiplicity(lo) as i64,
        })
    }

    pub fn bundle(&self) -> SplitBundle {
        let mut degrees = vec![self.k; self.r as usize];
        degrees.extend(std::iter::repeat_n(self.k + 1, 4 - self.r as usize));
        SplitBundle::new(degrees).expect("rank four")
    }
}

/// `4g − 4(n₁+n₂+k) + r + 8`, the value of `h¹(E ⊗ O(n₁+n₂−(g+4)))` for
/// `E = O(k)^r ⊕ O(k+1)^{4−r}` when every summand of that twist is negative.
pub fn closed_form_h1(k: i64, r: i64, n1: i64, n2: i64, g: i64) -> Result<i64> {
    if !(0..=3).contains(&r) {
        return Err(Error::OutOfRange(format!("r={r}; need 0 <= r <= 3")));
    }
    if n1 + n2 + (k + 1) - (g + 4) >= 0 {
        return Err(Error::Precondition(format!(
            "n1+n2+(k+1)-(g+4) = {} is not negative",
            n1 + n2 + (k + 1) - (g + 4)
        )));
    }
    Ok(4 * g - 4 * (n1 + n2 + k) + r + 8)
}

/// [`closed_form_h1`] with `(k, r)` read off the bundle.
pub fn closed_form_h1_for(e: &SplitBundle, n1: i64, n2: i64, g: i64) -> Result<i64> {
    let shape = NearlyBalanced::of(e)?;
    closed_form_h1(shape.k, shape.r, n1, n2, g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CeVerdict {
    pub nonempty: bool,
    pub codim: Option<i64>,
}

/// Degree-4 Casnati–Ekedahl locus `C(F)`: nonempty iff
/// `⌊F⌋ ≥ ⌈(g+3)/3⌉`, and then of codimension `ext¹(F,F)`.
pub fn ce_nonempty_d4(f: &SplitBundle, c: &CoverClass) -> Result<CeVerdict> {
    if c.d != 4 {
        return Err(Error::Unsupported(format!(
            "C(F) in degree 4 asked with d={}",
            c.d
        )));
    }
    check_shape(f, "F", 2, c.g + 3)?;
    let nonempty = f.min_degree() >= ceil_div(c.g + 3, 3);
    Ok(CeVerdict {
        nonempty,
        codim: nonempty.then(|| ext_dims(f, f).ext1),
    })
}

pub fn ce_report_d4(f: &SplitBundle, c: &CoverClass) -> Result<LocusReport> {
    let v = ce_nonempty_d4(f, c)?;
    Ok(LocusReport {
        kind: LocusKind::Ce4,
        d: c.d,
        g: c.g,
        e: None,
        f: Some(f.clone()),
        codimension: v.codim.unwrap_or(0),
        components: vec![
            Term {
                name: "nonempty",
                value: v.nonempty as i64,
            },
            Term {
                name: "min_F",
                value: f.min_degree(),
            },
            Term {
                name: "min_F_needed",
                value: ceil_div(c.g + 3, 3),
            },
        ],
    })
}

/// `2⌊E⌋ ≥ ⌊F⌋`: otherwise both quadrics contain the section `[1:0:0]`.
pub fn d4_irreducibility_constraint(e: &SplitBundle, f: &SplitBundle) -> Result<bool> {
    check_rank(e, "E", 3)?;
    check_rank(f, "F", 2)?;
    Ok(2 * e.min_degree() >= f.min_degree())
}

/// A failing pair `(i, j)` of the degree-5 entry constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub i: usize,
    pub j: usize,
    pub slack: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D5Check {
    pub shape: NearlyBalanced,
    pub violations: Vec<PairViolation>,
}

impl D5Check {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `n_i + n_j + (k+1) − (g+4) ≥ 0` for all `i < j` except `(1, 2)`,
/// where `k + 1 = ⌈E⌉`. Pairs are 1-based.
pub fn d5_constraints(e: &SplitBundle, f: &SplitBundle, c: &CoverClass) -> Result<D5Check> {
    let shape = NearlyBalanced::of(e)?;
    check_rank(f, "F", 5)?;
    let n = f.degrees();
    let mut violations = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            if (i, j) == (0, 1) {
                continue;
            }
            let slack = n[i] + n[j] + shape.k + 1 - (c.g + 4);
            if slack < 0 {
                violations.push(PairViolation {
                    i: i + 1,
                    j: j + 1,
                    slack,
                });
            }
        }
    }
    Ok(D5Check { shape, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(d: &[i64]) -> SplitBundle {
        SplitBundle::from_slice(d).unwrap()
    }

    fn cc(d: i64, g: i64) -> CoverClass {
        CoverClass::new(d, g).unwrap()
    }

    #[test]
    fn ce_rank_values() {
        assert_eq!(ce_rank(4, 1).unwrap(), 2);
        assert_eq!(ce_rank(5, 1).unwrap(), 5);
        assert_eq!(ce_rank(6, 2).unwrap(), 16);
        assert_eq!(ce_rank(4, 2).unwrap(), 1);
        assert_eq!(ce_rank(3, 1).unwrap(), 1);
        assert!(ce_rank(5, 0).is_err());
        assert!(ce_rank(5, 4).is_err());
    }

    #[test]
    fn maroni_generic_values() {
        assert_eq!(maroni_generic_codim(&cc(3, 6), 3).unwrap(), 1);
        assert_eq!(maroni_generic_codim(&cc(5, 8), 2).unwrap(), 1);
        assert_eq!(maroni_generic_codim(&cc(4, 9), 4).unwrap(), 0);
        assert!(maroni_generic_codim(&cc(4, 9), 7).is_err());
        assert!(maroni_generic_codim(&cc(4, 9), 1).is_err());
    }

    #[test]
    fn maroni_divisor_values() {
        assert_eq!(maroni_divisor(&cc(4, 12)), Some(b(&[4, 5, 6])));
        assert_eq!(maroni_divisor(&cc(4, 11)), None);
        assert_eq!(maroni_divisor(&cc(3, 6)), Some(b(&[3, 5])));
        assert_eq!(maroni_divisor(&cc(5, 8)), Some(b(&[2, 3, 3, 4])));
    }

    #[test]
    fn maroni_lower_bound() {
        assert!(matches!(
            maroni_codim_lower_bound(&cc(4, 12), &b(&[5, 5, 5])),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            maroni_codim_lower_bound(&cc(5, 13), &b(&[3, 4, 5, 5])),
            Err(Error::Precondition(_))
        ));
        // E[2] = (2,2,3,3): s = h0(O^3 + O(-2)) = 3, r = 2.
        assert_eq!(
            maroni_codim_lower_bound(&cc(5, 6), &b(&[2, 2, 2, 4])).unwrap(),
            2
        );
        assert!(maroni_codim_lower_bound(&cc(4, 10), &b(&[4, 4, 6])).is_err());
    }

    #[test]
    fn mef_d4_values() {
        let c = cc(4, 12);
        let e = b(&[3, 5, 7]);
        let r = mef_codim_d4(&e, &b(&[6, 9]), &c).unwrap();
        assert_eq!(r.codimension, 5);
        assert_eq!(r.term("h1_Fdual_Sym2E"), Some(2));
        let r = mef_codim_d4(&e, &b(&[5, 10]), &c).unwrap();
        assert_eq!(r.codimension, 5);
        assert_eq!(r.term("ext1_FF"), Some(4));
        let r = mef_codim_d4(&b(&[3, 6, 7]), &b(&[6, 10]), &cc(4, 13)).unwrap();
        assert_eq!(r.term("h1_Fdual_Sym2E"), Some(3));
        assert!(mef_codim_d4(&e, &b(&[6, 10]), &c).is_err());
    }

    #[test]
    fn mef_d5_values() {
        let c = cc(5, 16);
        let e = b(&[5, 5, 5, 5]);
        assert_eq!(
            mef_codim_d5(&e, &b(&[8, 8, 8, 8, 8]), &c)
                .unwrap()
                .codimension,
            0
        );
        let r = mef_codim_d5(&e, &b(&[7, 8, 8, 8, 9]), &c).unwrap();
        assert_eq!(r.term("ext1_FF"), Some(1));
        assert_eq!(r.term("h1_Wedge2F_E_detEdual"), Some(0));
        assert_eq!(r.codimension, 1);
        assert!(mef_codim_d5(&e, &b(&[8, 8, 8, 8]), &c).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_h1(5, 1, 5, 5, 17).unwrap(), 17);
        let direct = b(&[5, 6, 6, 6]).twist(5 + 5 - 21).h1();
        assert_eq!(direct, 17);
        assert!(matches!(
            closed_form_h1(5, 1, 10, 10, 17),
            Err(Error::Precondition(_))
        ));
        assert!(closed_form_h1(5, 4, 1, 1, 17).is_err());
        assert!(closed_form_h1_for(&b(&[5, 5, 5, 8]), 5, 5, 19).is_err());
        assert_eq!(closed_form_h1_for(&b(&[5, 6, 6, 6]), 5, 5, 17).unwrap(), 17);
    }

    #[test]
    fn nearly_balanced_shapes() {
        assert_eq!(
            NearlyBalanced::of(&b(&[5, 5, 5, 5])).unwrap(),
            NearlyBalanced { k: 4, r: 0 }
        );
        assert_eq!(
            NearlyBalanced::of(&b(&[5, 6, 6, 6])).unwrap(),
            NearlyBalanced { k: 5, r: 1 }
        );
        assert_eq!(NearlyBalanced { k: 4, r: 0 }.bundle(), b(&[5, 5, 5, 5]));
        assert!(NearlyBalanced::of(&b(&[5, 6, 7, 7])).is_err());
        assert!(NearlyBalanced::of(&b(&[5, 6, 6])).is_err());
    }

    #[test]
    fn ce_d4_values() {
        let v = ce_nonempty_d4(&b(&[3, 6]), &cc(4, 6)).unwrap();
        assert_eq!(
            v,
            CeVerdict {
                nonempty: true,
                codim: Some(2)
            }
        );
        let v = ce_nonempty_d4(&b(&[2, 7]), &cc(4, 6)).unwrap();
        assert!(!v.nonempty);
        let v = ce_nonempty_d4(&b(&[6, 6]), &cc(4, 9)).unwrap();
        assert_eq!(v.codim, Some(0));
        assert!(ce_nonempty_d4(&b(&[6, 7]), &cc(4, 9)).is_err());
    }

    #[test]
    fn d4_constraint_values() {
        assert!(d4_irreducibility_constraint(&b(&[3, 5, 7]), &b(&[6, 9])).unwrap());
        assert!(!d4_irreducibility_constraint(&b(&[1, 2, 3]), &b(&[3, 4])).unwrap());
        assert!(d4_irreducibility_constraint(&b(&[2, 2, 2]), &b(&[4, 2])).unwrap());
        assert!(d4_irreducibility_constraint(&b(&[2, 2]), &b(&[4, 2])).is_err());
    }

    #[test]
    fn d5_constraint_values() {
        let ok = d5_constraints(&b(&[5, 5, 5, 5]), &b(&[8, 8, 8, 8, 8]), &cc(5, 16)).unwrap();
        assert!(ok.holds());
        let e = b(&[5, 6, 6, 6]);
        let ok = d5_constraints(&e, &b(&[7, 7, 8, 9, 9]), &cc(5, 17)).unwrap();
        assert!(ok.holds());
        let bad = d5_constraints(&e, &b(&[5, 5, 9, 10, 11]), &cc(5, 17)).unwrap();
        assert_eq!(
            bad.violations[0],
            PairViolation {
                i: 1,
                j: 3,
                slack: -1
            }
        );
        assert!(d5_constraints(&b(&[5, 6, 7, 7]), &b(&[8, 8, 8, 8, 8]), &cc(5, 16)).is_err());
    }
}
