//! Explicit equations of degree 3, 4 and 5 covers inside the projectivised
//! Tschirnhausen bundle, written in the affine chart of the base with
//! coordinate `t`.
//!
//! A coefficient that is a section of `O(n)` becomes a polynomial in `t` of
//! degree at most `n`; a negative `n` forces it to vanish. Sampling draws
//! every allowed coefficient uniformly from `{-B, …, B}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::RationalPoly;
use crate::splitbundle::SplitBundle;

/// Default magnitude bound for sampled integer coefficients.
pub const DEFAULT_COEFF_BOUND: i64 = 10;

/// One monomial of a relative form together with its degree bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormTerm {
    pub exponents: Vec<u32>,
    pub bound: i64,
    pub coefficient: RationalPoly,
}

/// A form of fixed degree in `arity` fiber coordinates whose coefficients
/// are polynomials in `t`. Monomials are kept in descending lexicographic
/// order of exponent vectors (`X³, X²Y, …`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeForm {
    pub arity: usize,
    pub degree: u32,
    terms: Vec<FormTerm>,
}

/// A section of `O(bound)` in the affine chart: zero, or degree `≤ bound`.
fn fits(p: &RationalPoly, bound: i64) -> bool {
    p.degree().is_none_or(|deg| deg as i64 <= bound)
}

fn monomials(arity: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(arity: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == arity {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            go(arity, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if arity > 0 {
        go(arity, degree, &mut Vec::new(), &mut out);
    }
    out
}

impl RelativeForm {
    /// The zero form, with per-monomial bounds from `bound`.
    pub fn zero(arity: usize, degree: u32, bound: impl Fn(&[u32]) -> i64) -> Self {
        let terms = monomials(arity, degree)
            .into_iter()
            .map(|exponents| FormTerm {
                bound: bound(&exponents),
                exponents,
                coefficient: RationalPoly::zero(),
            })
            .collect();
        RelativeForm {
            arity,
            degree,
            terms,
        }
    }

    /// Zero form whose monomial `x^α` carries the bound `α·m + shift`:
    /// a form in `Sym^degree E ⊗ O(shift)` for `E = ⊕ O(m_i)`.
    pub fn in_bundle(e: &SplitBundle, degree: u32, shift: i64) -> Self {
        let m = e.degrees().to_vec();
        Self::zero(e.rank(), degree, |alpha| {
            alpha
                .iter()
                .zip(&m)
                .map(|(&a, &mi)| a as i64 * mi)
                .sum::<i64>()
                + shift
        })
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    pub fn bounds(&self) -> Vec<i64> {
        self.terms.iter().map(|t| t.bound).collect()
    }

    fn index(&self, exponents: &[u32]) -> Result<usize> {
        self.terms
            .iter()
            .position(|t| t.exponents == exponents)
            .ok_or_else(|| Error::OutOfRange(format!("no monomial {exponents:?} in this form")))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Option<&RationalPoly> {
        self.terms
            .iter()
            .find(|t| t.exponents == exponents)
            .map(|t| &t.coefficient)
    }

    pub fn bound(&self, exponents: &[u32]) -> Option<i64> {
        self.terms
            .iter()
            .find(|t| t.exponents == exponents)
            .map(|t| t.bound)
    }

    /// Sets a coefficient, rejecting polynomials above the monomial's bound.
    pub fn set(&mut self, exponents: &[u32], p: RationalPoly) -> Result<()> {
        let i = self.index(exponents)?;
        let term = &mut self.terms[i];
        if !fits(&p, term.bound) {
            return Err(Error::Precondition(format!(
                "coefficient of {exponents:?} has degree {} above its bound {}",
                p.degree_or_neg(),
                term.bound
            )));
        }
        term.coefficient = p;
        Ok(())
    }

    /// Whether every stored coefficient respects its bound.
    pub fn respects_bounds(&self) -> bool {
        self.terms.iter().all(|t| fits(&t.coefficient, t.bound))
    }

    /// Monomials whose bound is negative, so their coefficient must vanish.
    pub fn forced_zero(&self) -> Vec<Vec<u32>> {
        self.terms
            .iter()
            .filter(|t| t.bound < 0)
            .map(|t| t.exponents.clone())
            .collect()
    }

    /// Same coefficients monomial by monomial, bounds ignored.
    pub fn same_polynomial(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.degree == other.degree
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|(a, b)| a.exponents == b.exponents && a.coefficient == b.coefficient)
    }

    pub fn eval(&self, t: &BigRational, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|term| {
                let mut v = term.coefficient.eval(t);
                for (xi, &e) in x.iter().zip(&term.exponents) {
                    for _ in 0..e {
                        v *= xi;
                    }
                }
                v
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Seeded source of integer coefficient polynomials.
pub struct CoefficientSampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl CoefficientSampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        CoefficientSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
        }
    }

    /// Polynomial of degree `≤ max_degree` with uniform coefficients;
    /// zero for negative `max_degree`.
    pub fn poly(&mut self, max_degree: i64) -> RationalPoly {
        if max_degree < 0 {
            return RationalPoly::zero();
        }
        let coeffs: Vec<i64> = (0..=max_degree)
            .map(|_| self.rng.gen_range(-self.bound..=self.bound))
            .collect();
        RationalPoly::from_ints(&coeffs)
    }

    pub fn fill(&mut self, form: &mut RelativeForm) {
        for term in &mut form.terms {
            term.coefficient = self.poly(term.bound);
        }
    }
}

fn check_rank_degree(b: &SplitBundle, what: &'static str, rank: usize, degree: i64) -> Result<()> {
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

/// Empty binary cubic in `Sym³E ⊗ det E^∨` for a trigonal Tschirnhausen bundle.
pub fn cubic_template(e: &SplitBundle, g: i64) -> Result<RelativeForm> {
    check_rank_degree(e, "E", 2, g + 2)?;
    Ok(RelativeForm::in_bundle(e, 3, -e.degree()))
}

/// A random trigonal curve `c₀X³ + c₁X²Y + c₂XY² + c₃Y³` in `PE`.
pub fn sample_d3(e: &SplitBundle, g: i64, seed: u64) -> Result<RelativeForm> {
    sample_d3_with(
        e,
        g,
        &mut CoefficientSampler::new(seed, DEFAULT_COEFF_BOUND),
    )
}

pub fn sample_d3_with(
    e: &SplitBundle,
    g: i64,
    sampler: &mut CoefficientSampler,
) -> Result<RelativeForm> {
    let mut form = cubic_template(e, g)?;
    sampler.fill(&mut form);
    Ok(form)
}

/// `18abcd − 4b³d + b²c² − 4ac³ − 27a²d²` of `aX³ + bX²Y + cXY² + dY³`.
pub fn discriminant_cubic(f: &RelativeForm) -> Result<RationalPoly> {
    if f.arity != 2 || f.degree != 3 {
        return Err(Error::NotCubic);
    }
    let get = |i: u32| f.coefficient(&[3 - i, i]).cloned().expect("cubic monomial");
    let (a, b, c, d) = (get(0), get(1), get(2), get(3));
    let k = |n: i64| RationalPoly::from_ints(&[n]);
    let terms = [
        &(&(&k(18) * &a) * &(&b * &c)) * &d,
        &(&k(-4) * &b.pow(3)) * &d,
        &b.pow(2) * &c.pow(2),
        &(&k(-4) * &a) * &c.pow(3),
        &(&k(-27) * &a.pow(2)) * &d.pow(2),
    ];
    Ok(terms.iter().fold(RationalPoly::zero(), |acc, t| &acc + t))
}

/// A sampled trigonal curve whose discriminant has full degree
/// `2 deg E` and no repeated roots, i.e. simple branching.
#[derive(Clone, Debug, Serialize)]
pub struct GenericCubic {
    pub form: RelativeForm,
    pub discriminant: RationalPoly,
    /// Draws used, including the accepted one.
    pub attempts: u32,
}

/// Draws cubics from one seeded stream until the discriminant certifies
/// simple branching; rejected draws are counted, never returned.
pub fn sample_d3_generic(
    e: &SplitBundle,
    g: i64,
    seed: u64,
    max_attempts: u32,
) -> Result<GenericCubic> {
    let mut sampler = CoefficientSampler::new(seed, DEFAULT_COEFF_BOUND);
    let target = 2 * e.degree();
    for attempt in 1..=max_attempts {
        let form = sample_d3_with(e, g, &mut sampler)?;
        let discriminant = discriminant_cubic(&form)?;
        if discriminant.degree_or_neg() == target && discriminant.is_squarefree()? {
            return Ok(GenericCubic {
                form,
                discriminant,
                attempts: attempt,
            });
        }
    }
    Err(Error::Precondition(format!(
        "no simply branched sample for E={e}, g={g}, seed={seed} in {max_attempts} draws"
    )))
}

/// The two relative quadrics `Q_a, Q_b` cutting out a tetragonal curve in
/// `PE`, with `F = O(a) ⊕ O(b)`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadricPair {
    pub qa: RelativeForm,
    pub qb: RelativeForm,
}

impl QuadricPair {
    /// Both `X²` coefficients are forced to vanish, so the section
    /// `[1:0:0]` lies on both quadrics and the curve is reducible.
    pub fn directrix_forced(&self) -> bool {
        let x2 = [2, 0, 0];
        self.qa.bound(&x2).is_some_and(|b| b < 0) && self.qb.bound(&x2).is_some_and(|b| b < 0)
    }
}

pub fn quadric_templates(e: &SplitBundle, f: &SplitBundle, g: i64) -> Result<QuadricPair> {
    check_rank_degree(e, "E", 3, g + 3)?;
    check_rank_degree(f, "F", 2, g + 3)?;
    Ok(QuadricPair {
        qa: RelativeForm::in_bundle(e, 2, -f.min_degree()),
        qb: RelativeForm::in_bundle(e, 2, -f.max_degree()),
    })
}

pub fn sample_d4(e: &SplitBundle, f: &SplitBundle, g: i64, seed: u64) -> Result<QuadricPair> {
    let mut pair = quadric_templates(e, f, g)?;
    let mut sampler = CoefficientSampler::new(seed, DEFAULT_COEFF_BOUND);
    sampler.fill(&mut pair.qa);
    sampler.fill(&mut pair.qb);
    Ok(pair)
}

/// A 5×5 skew matrix of linear forms on `PE` whose 4×4 sub-Pfaffians cut
/// out a pentagonal curve. Entry `L_{i,j}` (`1 ≤ i < j ≤ 5`) is a section
/// of `E ⊗ det E^∨ ⊗ O(n_i + n_j)`, stored by its four components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewCoverModel {
    pub e: SplitBundle,
    pub f: SplitBundle,
    pub g: i64,
    entries: BTreeMap<(usize, usize), Vec<RationalPoly>>,
}

fn check_pair(i: usize, j: usize) -> Result<()> {
    if !(1 <= i && i < j && j <= 5) {
        return Err(Error::OutOfRange(format!(
            "entry ({i},{j}); need 1 <= i < j <= 5"
        )));
    }
    Ok(())
}

impl SkewCoverModel {
    pub fn zero(e: &SplitBundle, f: &SplitBundle, g: i64) -> Result<Self> {
        check_rank_degree(e, "E", 4, g + 4)?;
        check_rank_degree(f, "F", 5, 2 * g + 8)?;
        let mut entries = BTreeMap::new();
        for i in 1..=5 {
            for j in i + 1..=5 {
                entries.insert((i, j), vec![RationalPoly::zero(); 4]);
            }
        }
        Ok(SkewCoverModel {
            e: e.clone(),
            f: f.clone(),
            g,
            entries,
        })
    }

    pub fn sample(e: &SplitBundle, f: &SplitBundle, g: i64, seed: u64) -> Result<Self> {
        let mut model = Self::zero(e, f, g)?;
        let mut sampler = CoefficientSampler::new(seed, DEFAULT_COEFF_BOUND);
        let keys: Vec<(usize, usize)> = model.entries.keys().copied().collect();
        for (i, j) in keys {
            let comps = (0..4)
                .map(|l| sampler.poly(model.entry_bound(i, j, l)))
                .collect();
            model.entries.insert((i, j), comps);
        }
        Ok(model)
    }

    /// Degree bound `m_l − (g+4) + n_i + n_j` of component `l` (0-based)
    /// of `L_{i,j}`.
    pub fn entry_bound(&self, i: usize, j: usize, l: usize) -> i64 {
        let n = self.f.degrees();
        self.e.degrees()[l] - (self.g + 4) + n[i - 1] + n[j - 1]
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<&[RationalPoly]> {
        check_pair(i, j)?;
        Ok(&self.entries[&(i, j)])
    }

    pub fn set_entry(&mut self, i: usize, j: usize, comps: Vec<RationalPoly>) -> Result<()> {
        check_pair(i, j)?;
        if comps.len() != 4 {
            return Err(Error::OutOfRange(format!(
                "{} components; need 4",
                comps.len()
            )));
        }
        for (l, c) in comps.iter().enumerate() {
            let bound = self.entry_bound(i, j, l);
            if !fits(c, bound) {
                return Err(Error::Precondition(format!(
                    "component {l} of L({i},{j}) has degree {} above its bound {bound}",
                    c.degree_or_neg()
                )));
            }
        }
        self.entries.insert((i, j), comps);
        Ok(())
    }

    pub fn respects_bounds(&self) -> bool {
        self.entries.iter().all(|(&(i, j), comps)| {
            comps
                .iter()
                .enumerate()
                .all(|(l, c)| fits(c, self.entry_bound(i, j, l)))
        })
    }

    /// `L_{a} · L_{b}` as a quadric in the fiber coordinates, bounded by
    /// the sum of the entry bounds.
    pub fn entry_product(&self, a: (usize, usize), b: (usize, usize)) -> Result<RelativeForm> {
        let la = self.entry(a.0, a.1)?;
        let lb = self.entry(b.0, b.1)?;
        let n = self.f.degrees();
        let shift = n[a.0 - 1] + n[a.1 - 1] + n[b.0 - 1] + n[b.1 - 1] - 2 * (self.g + 4);
        let mut form = RelativeForm::in_bundle(&self.e, 2, shift);
        accumulate_product(&mut form, la, lb, false);
        Ok(form)
    }

    /// The Pfaffian `Q_k` of the 4×4 skew submatrix omitting row and
    /// column `k`: a quadric with coefficients bounded by `m_l + m_l' − n_k`.
    pub fn pfaffian_sub(&self, k: usize) -> Result<RelativeForm> {
        if !(1..=5).contains(&k) {
            return Err(Error::OutOfRange(format!(
                "sub-Pfaffian index k={k}; need 1..=5"
            )));
        }
        let idx: Vec<usize> = (1..=5).filter(|&i| i != k).collect();
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let mut form = RelativeForm::in_bundle(&self.e, 2, -self.f.degrees()[k - 1]);
        accumulate_product(
            &mut form,
            &self.entries[&(a, b)],
            &self.entries[&(c, d)],
            false,
        );
        accumulate_product(
            &mut form,
            &self.entries[&(a, c)],
            &self.entries[&(b, d)],
            true,
        );
        accumulate_product(
            &mut form,
            &self.entries[&(a, d)],
            &self.entries[&(b, c)],
            false,
        );
        Ok(form)
    }

    /// Numeric skew matrix at base point `t` and fiber point `x`.
    pub fn evaluate(&self, t: &BigRational, x: &[BigRational]) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); 5]; 5];
        for (&(i, j), comps) in &self.entries {
            let v = comps
                .iter()
                .zip(x)
                .map(|(c, xi)| c.eval(t) * xi)
                .fold(BigRational::zero(), |a, b| a + b);
            m[j - 1][i - 1] = -v.clone();
            m[i - 1][j - 1] = v;
        }
        m
    }
}

fn accumulate_product(
    form: &mut RelativeForm,
    la: &[RationalPoly],
    lb: &[RationalPoly],
    subtract: bool,
) {
    for term in &mut form.terms {
        let vars: Vec<usize> = term
            .exponents
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect();
        let (p, q) = (vars[0], vars[1]);
        let mut c = &la[p] * &lb[q];
        if p != q {
            c = &c + &(&la[q] * &lb[p]);
        }
        term.coefficient = if subtract {
            &term.coefficient - &c
        } else {
            &term.coefficient + &c
        };
    }
}
