use serde_json::{json, Value};

use hurwitz::covermodels::{
    sample_d3, sample_d3_generic, sample_d4, GenericCubic, RelativeForm, SkewCoverModel,
};
use hurwitz::loci::{
    ce_report_d4, d4_irreducibility_constraint, d5_constraints, maroni_codim_lower_bound,
    maroni_codim_via_severi, maroni_divisor, maroni_generic_codim, mef_codim_d4, mef_codim_d5,
    LocusReport,
};
use hurwitz::picbound::{dimension_identity_sweep, generic_syzygy, rank_bound_sweep};
use hurwitz::splitbundle::ext_dims;
use hurwitz::testcurves::{
    boundary_matrix, is_nonsingular, symbolic_boundary_matrix, symbolic_determinant,
};
use hurwitz::tschirnhausen::{enumerate_tame_with, is_tame, DEFAULT_MAX_ENUM_DEGREE};
use hurwitz::{CoverClass, Error, Parallelism, RationalPoly, Result, SplitBundle};

use crate::report::{Record, Report};
use crate::{BundleOp, CoverKind, GenusRange};

fn bundle_str(b: &SplitBundle) -> Value {
    b.to_string().into()
}

fn opt_bundle(b: Option<&SplitBundle>) -> Value {
    b.map_or(Value::Null, bundle_str)
}

fn need<'a>(b: Option<&'a SplitBundle>, flag: &str, op: &str) -> Result<&'a SplitBundle> {
    b.ok_or_else(|| Error::Precondition(format!("`{op}` needs --{flag}")))
}

fn need_n(n: Option<i64>, op: &str) -> Result<i64> {
    n.ok_or_else(|| Error::Precondition(format!("`{op}` needs --n")))
}

fn need_usize(n: Option<i64>, op: &str) -> Result<usize> {
    let n = need_n(n, op)?;
    usize::try_from(n).map_err(|_| Error::OutOfRange(format!("`{op}` needs --n >= 0, got {n}")))
}

pub fn bundle(
    op: BundleOp,
    e: &SplitBundle,
    f: Option<&SplitBundle>,
    n: Option<i64>,
) -> Result<Report> {
    use BundleOp::*;
    let formula = match op {
        H0 => "h0(E) = sum_i max(a_i + 1, 0)",
        H1 => "h1(E) = sum_i max(-a_i - 1, 0)",
        Cohomology => "h0(E) = sum_i max(a_i + 1, 0); h1(E) = sum_i max(-a_i - 1, 0)",
        Chi => "chi(E) = deg E + rank E",
        Aut => "dim Aut(E) - 1 = h0(E^v (x) E) - 1",
        Dual => "E^v = sum O(-a_i)",
        Twist => "E(n) = sum O(a_i + n)",
        Sum => "E + F",
        Tensor => "E (x) F = sum O(a_i + b_j)",
        Sym => "Sym^n E = sum over multisets of n summands",
        Wedge => "wedge^n E = sum over n-subsets of summands",
        Det => "det E = O(deg E)",
        Ext => "Hom(E,F) = h0(E^v (x) F); Ext1(E,F) = h1(E^v (x) F)",
        Specializes => {
            "E ~> F iff same rank and degree and prefix sums of F never exceed those of E"
        }
    };
    let mut rec = Record::new().with("op", op.name()).with("E", bundle_str(e));
    if let Some(f) = f {
        rec.push("F", bundle_str(f));
    }
    if let Some(n) = n {
        rec.push("n", n);
    }
    match op {
        H0 => rec.push("result", e.h0()),
        H1 => rec.push("result", e.h1()),
        Cohomology => {
            rec.push("h0", e.h0());
            rec.push("h1", e.h1());
        }
        Chi => rec.push("result", e.euler_characteristic()),
        Aut => rec.push("result", e.aut_group_dim()),
        Dual => rec.push("result", bundle_str(&e.dual())),
        Twist => rec.push("result", bundle_str(&e.twist(need_n(n, "twist")?))),
        Sum => rec.push("result", bundle_str(&e.direct_sum(need(f, "F", "sum")?))),
        Tensor => rec.push("result", bundle_str(&e.tensor(need(f, "F", "tensor")?))),
        Sym => {
            let n = need_usize(n, "sym")?;
            if n == 0 {
                return Err(Error::OutOfRange("`sym` needs --n >= 1".into()));
            }
            rec.push("result", bundle_str(&e.sym(n)))
        }
        Wedge => {
            let n = need_usize(n, "wedge")?;
            if n == 0 {
                return Err(Error::OutOfRange("`wedge` needs --n >= 1".into()));
            }
            rec.push("result", bundle_str(&e.wedge(n)?))
        }
        Det => rec.push("result", bundle_str(&e.det())),
        Ext => {
            let x = ext_dims(e, need(f, "F", "ext")?);
            rec.push("hom", x.hom);
            rec.push("ext1", x.ext1);
        }
        Specializes => rec.push("result", e.specializes_to(need(f, "F", "specializes")?)),
    }
    let mut report = Report::new("bundle", formula);
    report.records.push(rec);
    Ok(report)
}

pub fn tame_enum(c: &CoverClass, e: Option<&SplitBundle>, mode: Parallelism) -> Result<Report> {
    let mut report = Report::new(
        "tame-enum",
        "rank d-1, degree g+d-1; d*max <= 2g+2d-2; deg <= min*C(d,2); min*(d-1) <= deg; gaps <= min; E[m] = most generic member of T[m]",
    );
    if let Some(e) = e {
        let t = is_tame(e, c)?;
        report.records.push(
            Record::new()
                .with("d", c.d)
                .with("g", c.g)
                .with("E", bundle_str(e))
                .with("tame", t.is_tame())
                .with("max_summand_ok", t.max_summand_ok)
                .with("min_summand_ok", t.min_summand_ok)
                .with("gap_violations", json!(t.gap_violations)),
        );
        return Ok(report);
    }
    for fam in enumerate_tame_with(c, DEFAULT_MAX_ENUM_DEGREE, mode)? {
        let members: Vec<String> = fam.members.iter().map(ToString::to_string).collect();
        report.records.push(
            Record::new()
                .with("d", c.d)
                .with("g", c.g)
                .with("m", fam.m)
                .with("count", fam.members.len())
                .with("generic", bundle_str(&fam.generic))
                .with("members", json!(members)),
        );
    }
    Ok(report)
}

pub fn maroni(
    c: &CoverClass,
    e: Option<&SplitBundle>,
    divisor: bool,
    mode: Parallelism,
) -> Result<Report> {
    if let Some(e) = e {
        let mut report = Report::new(
            "maroni",
            "codim M(E) >= (s - r) + 1 with s = h0(E^v(k)), r = h0(E_gen^v(k)), k = min summand of E_gen",
        );
        report.records.push(
            Record::new()
                .with("d", c.d)
                .with("g", c.g)
                .with("E", bundle_str(e))
                .with("lower_bound", maroni_codim_lower_bound(c, e)?),
        );
        return Ok(report);
    }
    if divisor {
        let mut report = Report::new(
            "maroni",
            "Maroni divisor exists iff (d-1) | g; then E = O(k-1) + O(k)^(d-3) + O(k+1), k = g/(d-1) + 1",
        );
        let div = maroni_divisor(c);
        report.records.push(
            Record::new()
                .with("d", c.d)
                .with("g", c.g)
                .with("exists", div.is_some())
                .with("E", opt_bundle(div.as_ref())),
        );
        return Ok(report);
    }
    let mut report = Report::new(
        "maroni",
        "codim M(E[m]) = g - (d-1)m + 1 (0 at the top m) = (2g+2d-2) - (dm+2d+g-1 - (m+2))",
    );
    let families = enumerate_tame_with(c, DEFAULT_MAX_ENUM_DEGREE, mode)?;
    for m in c.m_range() {
        let generic = families.iter().find(|f| f.m == m).map(|f| &f.generic);
        report.records.push(
            Record::new()
                .with("d", c.d)
                .with("g", c.g)
                .with("m", m)
                .with("generic", opt_bundle(generic))
                .with("codim", maroni_generic_codim(c, m)?)
                .with("via_severi", maroni_codim_via_severi(c, m)?),
        );
    }
    Ok(report)
}

fn push_terms(rec: &mut Record, r: &LocusReport) {
    for t in &r.components {
        rec.push(t.name, t.value);
    }
}

pub fn ce(c: &CoverClass, f: &SplitBundle) -> Result<Report> {
    let r = ce_report_d4(f, c)?;
    let mut rec = Record::new()
        .with("d", c.d)
        .with("g", c.g)
        .with("F", bundle_str(f));
    rec.push("nonempty", r.term("nonempty") == Some(1));
    rec.push(
        "codim",
        if r.term("nonempty") == Some(1) {
            json!(r.codimension)
        } else {
            Value::Null
        },
    );
    rec.push("min_F", r.term("min_F").unwrap_or_default());
    rec.push("min_F_needed", r.term("min_F_needed").unwrap_or_default());
    let mut report = Report::new(
        "ce",
        "C(F) nonempty iff min F >= ceil((g+3)/3); codim C(F) = ext1(F,F)",
    );
    report.records.push(rec);
    Ok(report)
}

pub fn mef(c: &CoverClass, e: &SplitBundle, f: &SplitBundle) -> Result<Report> {
    let mut rec = Record::new()
        .with("d", c.d)
        .with("g", c.g)
        .with("E", bundle_str(e))
        .with("F", bundle_str(f));
    let formula = match c.d {
        4 => {
            let r = mef_codim_d4(e, f, c)?;
            rec.push("codim", r.codimension);
            push_terms(&mut rec, &r);
            rec.push("min_constraint", d4_irreducibility_constraint(e, f)?);
            "codim M(E,F) = ext1(E,E) + ext1(F,F) - h1(F^v (x) Sym^2 E); irreducible only if 2 min E >= min F"
        }
        5 => {
            let r = mef_codim_d5(e, f, c)?;
            rec.push("codim", r.codimension);
            push_terms(&mut rec, &r);
            match d5_constraints(e, f, c) {
                Ok(check) => {
                    rec.push("pair_constraints", check.holds());
                    let v: Vec<Value> = check
                        .violations
                        .iter()
                        .map(|p| json!({"i": p.i, "j": p.j, "slack": p.slack}))
                        .collect();
                    rec.push("violations", v);
                }
                Err(_) => {
                    rec.push("pair_constraints", Value::Null);
                    rec.push("violations", Value::Null);
                }
            }
            "codim M(E,F) = ext1(E,E) + ext1(F,F) - h1(wedge^2 F (x) E (x) det E^v); n_i + n_j + max E - (g+4) >= 0 for (i,j) != (1,2)"
        }
        d => {
            return Err(Error::Unsupported(format!(
                "M(E,F) is available for d = 4 or 5, got d={d}"
            )))
        }
    };
    let mut report = Report::new("mef", formula);
    report.records.push(rec);
    Ok(report)
}

fn genera(range: GenusRange) -> std::ops::RangeInclusive<i64> {
    range.lo..=range.hi
}

pub fn picbound(d: i64, range: GenusRange, mode: Parallelism) -> Result<Report> {
    let mut report = Report::new(
        "picbound",
        "bound = 1 + rk chi(G_E) + rk chi(G_F) + e; verdict = (bound == number of boundary divisors)",
    );
    for r in rank_bound_sweep(d, genera(range), mode)? {
        let labels: Vec<String> = r.e_labels.iter().map(|l| format!("{l:?}")).collect();
        report.ok &= r.verdict;
        report.records.push(
            Record::new()
                .with("d", r.d)
                .with("g", r.g)
                .with("e_labels", json!(labels))
                .with("chi_e", r.chi_rank_e)
                .with("chi_f", r.chi_rank_f)
                .with("e", r.e)
                .with("bound", r.bound)
                .with("boundary", r.boundary_classes)
                .with("verdict", r.verdict),
        );
    }
    Ok(report)
}

pub fn dimcheck(d: i64, range: GenusRange, mode: Parallelism) -> Result<Report> {
    let mut report = Report::new(
        "dimcheck",
        "h0(V) - 1 = (2g+2d-2) + dim Aut(E) + dim Aut(F); V = Sym^3 E (x) det E^v | F^v (x) Sym^2 E | wedge^2 F (x) E (x) det E^v",
    );
    for r in dimension_identity_sweep(d, genera(range), mode)? {
        report.ok &= r.holds;
        report.records.push(
            Record::new()
                .with("d", r.d)
                .with("g", r.g)
                .with("lhs", r.lhs)
                .with("rhs", r.rhs)
                .with("holds", r.holds),
        );
    }
    Ok(report)
}

pub fn matrix(ds: GenusRange, gs: GenusRange, sweep: bool, symbolic: bool) -> Result<Report> {
    let mut report = Report::new(
        "matrix",
        "rows B1, B2, B3 against T, D, Delta: (6, 4d-12, 8g-6), (3g+9, 8d-24, 7g-3), (6, 4d-8, 8g-14); d=3: (6, 8g-6), (3g+6, 7g+6)",
    );
    if symbolic {
        let p = symbolic_determinant(&symbolic_boundary_matrix());
        report
            .records
            .push(Record::new().with("det_poly", p.to_string()));
        return Ok(report);
    }
    for d in genera(ds) {
        for g in genera(gs) {
            let m = boundary_matrix(d, g)?;
            let n = is_nonsingular(&m)?;
            report.ok &= n.nonsingular;
            let mut rec = Record::new().with("d", d).with("g", g);
            if !sweep {
                rec.push("rows", json!(m.rows));
            }
            rec.push("det", n.det);
            rec.push("nonsingular", n.nonsingular);
            report.records.push(rec);
        }
    }
    Ok(report)
}

fn coefficient_strings(form: &RelativeForm) -> Vec<String> {
    form.terms()
        .iter()
        .map(|t| t.coefficient.to_string())
        .collect()
}

fn degrees(form: &RelativeForm) -> Vec<Value> {
    form.terms()
        .iter()
        .map(|t| t.coefficient.degree().map_or(Value::Null, |d| json!(d)))
        .collect()
}

pub struct CoverOptions {
    pub kind: CoverKind,
    pub g: i64,
    pub e: Option<SplitBundle>,
    pub f: Option<SplitBundle>,
    pub seed: u64,
    pub attempts: u32,
    pub degenerate: bool,
}

pub fn cover(o: &CoverOptions) -> Result<Report> {
    let d = match o.kind {
        CoverKind::D3 => 3,
        CoverKind::D4 => 4,
        CoverKind::D5 => 5,
    };
    let c = CoverClass::new(d, o.g)?;
    let e = o.e.clone().unwrap_or_else(|| c.generic_tschirnhausen());
    let f = match &o.f {
        Some(f) => Some(f.clone()),
        None if d > 3 => generic_syzygy(&c)?,
        None => None,
    };
    let mut rec = Record::new()
        .with("d", d)
        .with("g", o.g)
        .with("E", bundle_str(&e))
        .with("F", opt_bundle(f.as_ref()))
        .with("seed", o.seed);
    match o.kind {
        CoverKind::D3 => {
            let expected = 2 * e.degree();
            let (sample, ok) = match sample_d3_generic(&e, o.g, o.seed, o.attempts) {
                Ok(s) => (s, true),
                Err(Error::Precondition(_)) => {
                    let form = sample_d3(&e, o.g, o.seed)?;
                    let discriminant = hurwitz::covermodels::discriminant_cubic(&form)?;
                    (
                        GenericCubic {
                            form,
                            discriminant,
                            attempts: o.attempts,
                        },
                        false,
                    )
                }
                Err(err) => return Err(err),
            };
            let squarefree =
                !sample.discriminant.is_zero() && sample.discriminant.is_squarefree()?;
            rec.push("bounds", json!(sample.form.bounds()));
            rec.push("coefficients", json!(coefficient_strings(&sample.form)));
            rec.push("forced_zero", json!(sample.form.forced_zero()));
            rec.push("discriminant", sample.discriminant.to_string());
            rec.push("discriminant_degree", sample.discriminant.degree_or_neg());
            rec.push("expected_degree", expected);
            rec.push("squarefree", squarefree);
            rec.push("attempts", sample.attempts);
            let mut report = Report::new(
                "cover",
                "c0 X^3 + c1 X^2 Y + c2 X Y^2 + c3 Y^3 in Sym^3 E (x) det E^v; disc = 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 of degree 2 deg E",
            );
            report.ok = ok && sample.discriminant.degree_or_neg() == expected && squarefree;
            report.records.push(rec);
            Ok(report)
        }
        CoverKind::D4 => {
            let f = f.expect("d=4 has F");
            let pair = sample_d4(&e, &f, o.g, o.seed)?;
            rec.push("qa_bounds", json!(pair.qa.bounds()));
            rec.push("qa", json!(coefficient_strings(&pair.qa)));
            rec.push("qb_bounds", json!(pair.qb.bounds()));
            rec.push("qb", json!(coefficient_strings(&pair.qb)));
            rec.push("directrix_forced", pair.directrix_forced());
            rec.push(
                "bounds_respected",
                pair.qa.respects_bounds() && pair.qb.respects_bounds(),
            );
            let mut report = Report::new(
                "cover",
                "two quadrics in Sym^2 E (x) O(-a), Sym^2 E (x) O(-b) for F = O(a) + O(b); X^2 coefficients forced to 0 in both iff 2 min E < min F",
            );
            report.records.push(rec);
            Ok(report)
        }
        CoverKind::D5 => {
            let f = f.expect("d=5 has F");
            let mut model = SkewCoverModel::sample(&e, &f, o.g, o.seed)?;
            if o.degenerate {
                model.set_entry(1, 2, vec![RationalPoly::zero(); 4])?;
                model.set_entry(1, 3, vec![RationalPoly::zero(); 4])?;
            }
            let mut bounds = Vec::new();
            let mut degs = Vec::new();
            let mut respected = model.respects_bounds();
            for k in 1..=5 {
                let q = model.pfaffian_sub(k)?;
                respected &= q.respects_bounds();
                bounds.push(json!(q.bounds()));
                degs.push(json!(degrees(&q)));
            }
            rec.push("sub_pfaffian_bounds", bounds);
            rec.push("sub_pfaffian_degrees", degs);
            rec.push("bounds_respected", respected);
            let mut ok = respected;
            if o.degenerate {
                let factors = model
                    .pfaffian_sub(5)?
                    .same_polynomial(&model.entry_product((2, 3), (1, 4))?);
                rec.push("q5_factors", factors);
                ok &= factors;
            }
            let mut report = Report::new(
                "cover",
                "L_ij in E (x) det E^v (x) O(n_i + n_j); Q_k = Pfaffian of the skew matrix without row and column k, bounded by m_l + m_l' - n_k",
            );
            report.ok = ok;
            report.records.push(rec);
            Ok(report)
        }
    }
}
