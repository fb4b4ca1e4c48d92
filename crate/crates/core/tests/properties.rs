use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hurwitz::covermodels::{discriminant_cubic, sample_d3, sample_d4, SkewCoverModel};
use hurwitz::linalg::{det_integer, det_rational, pfaffian};
use hurwitz::loci::ce_rank;
use hurwitz::picbound::{dimension_identity_sweep, rank_bound_sweep};
use hurwitz::splitbundle::ext_dims;
use hurwitz::testcurves::{attach_degrees, FamilyInvariants};
use hurwitz::tschirnhausen::tame_family;
use hurwitz::{CoverClass, Parallelism, RationalPoly, SplitBundle};

fn bundle_strategy(max_rank: usize, span: i64) -> impl Strategy<Value = SplitBundle> {
    prop::collection::vec(-span..=span, 1..=max_rank).prop_map(|v| SplitBundle::new(v).unwrap())
}

fn h0_of(v: &[i64]) -> i64 {
    v.iter().map(|&a| (a + 1).max(0)).sum()
}

/// Specialization by comparing `h⁰` of every relevant twist.
fn specializes_oracle(e: &SplitBundle, f: &SplitBundle) -> bool {
    if e.rank() != f.rank() || e.degree() != f.degree() {
        return false;
    }
    let lo = e.min_degree().min(f.min_degree());
    let hi = e.max_degree().max(f.max_degree());
    (-hi - 1..=-lo + 1).all(|t| {
        let tw = |b: &SplitBundle| b.degrees().iter().map(|a| a + t).collect::<Vec<_>>();
        h0_of(&tw(f)) >= h0_of(&tw(e))
    })
}

#[allow(clippy::needless_range_loop)]
fn rational_skew(n: usize, entries: &[(i64, i64)]) -> Vec<Vec<BigRational>> {
    let mut m = vec![vec![BigRational::from_integer(0.into()); n]; n];
    let mut it = entries.iter();
    for i in 0..n {
        for j in i + 1..n {
            let &(a, b) = it.next().unwrap();
            let v = BigRational::new(a.into(), b.into());
            m[j][i] = -v.clone();
            m[i][j] = v;
        }
    }
    m
}

proptest! {
    #[test]
    fn euler_characteristic(e in bundle_strategy(6, 15)) {
        prop_assert_eq!(e.h0() - e.h1(), e.degree() + e.rank() as i64);
        prop_assert_eq!(e.euler_characteristic(), e.degree() + e.rank() as i64);
    }

    #[test]
    fn serre_duality(e in bundle_strategy(6, 15)) {
        prop_assert_eq!(e.h1(), e.dual().twist(-2).h0());
    }

    #[test]
    fn algebra_is_functorial(e in bundle_strategy(4, 6), f in bundle_strategy(4, 6), n in 1usize..=3) {
        prop_assert_eq!(e.direct_sum(&f).h0(), e.h0() + f.h0());
        let ef = e.tensor(&f);
        prop_assert_eq!(ef.rank(), e.rank() * f.rank());
        prop_assert_eq!(ef.degree(), e.degree() * f.rank() as i64 + f.degree() * e.rank() as i64);
        prop_assert_eq!(e.dual().dual(), e.clone());
        prop_assert_eq!(ef.det().degree(), ef.degree());
        // rank C(r+n−1, n), degree n·C(r+n−1, n)·deg/r
        let r = e.rank() as i64;
        let n = n as i64;
        let binom = |a: i64, b: i64| (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1));
        let s = e.sym(n as usize);
        prop_assert_eq!(s.rank() as i64, binom(r + n - 1, n));
        prop_assert_eq!(s.degree() * r, n * binom(r + n - 1, n) * e.degree());
        if n <= r {
            let w = e.wedge(n as usize).unwrap();
            prop_assert_eq!(w.rank() as i64, binom(r, n));
            prop_assert_eq!(w.degree() * r, n * binom(r, n) * e.degree());
        } else {
            prop_assert!(e.wedge(n as usize).is_err());
        }
        let x = ext_dims(&e, &f);
        let hom = e.dual().tensor(&f);
        prop_assert_eq!((x.hom, x.ext1), (hom.h0(), hom.h1()));
    }

    #[test]
    fn twist_shifts_everything(e in bundle_strategy(5, 10), k in -5i64..=5) {
        let t = e.twist(k);
        prop_assert_eq!(t.degree(), e.degree() + k * e.rank() as i64);
        prop_assert_eq!(t.aut_group_dim(), e.aut_group_dim());
        prop_assert_eq!(t.distinct_degrees(), e.distinct_degrees());
    }

    #[test]
    fn specialization_matches_cohomology(
        a in prop::collection::vec(-4i64..=4, 1..=3),
        shuffle in prop::collection::vec(-3i64..=3, 1..=3),
    ) {
        // a second bundle of the same rank and degree
        let e = SplitBundle::new(a.clone()).unwrap();
        let mut b = a.clone();
        for (i, s) in shuffle.iter().enumerate() {
            let (x, y) = (i % b.len(), (i + 1) % b.len());
            b[x] += s;
            b[y] -= s;
        }
        let f = SplitBundle::new(b).unwrap();
        prop_assert_eq!(e.specializes_to(&f), specializes_oracle(&e, &f));
        prop_assert_eq!(f.specializes_to(&e), specializes_oracle(&f, &e));
        prop_assert!(e.specializes_to(&e));
        let balanced = SplitBundle::balanced(e.rank(), e.degree()).unwrap();
        prop_assert!(balanced.specializes_to(&e));
    }

    #[test]
    fn pfaffian_squares_to_determinant(
        entries in prop::collection::vec((-30i64..=30, 1i64..=7), 15)
    ) {
        for n in [2usize, 4, 6] {
            let m = rational_skew(n, &entries);
            let pf = pfaffian(&m).unwrap();
            prop_assert_eq!(&pf * &pf, det_rational(&m).unwrap());
        }
    }

    #[test]
    fn bareiss_agrees_with_rational_elimination(
        rows in prop::collection::vec(prop::collection::vec(-20i64..=20, 4), 4)
    ) {
        let q: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        prop_assert_eq!(
            BigRational::from_integer(det_integer(&rows).unwrap()),
            det_rational(&q).unwrap()
        );
    }

    #[test]
    fn attach_degrees_is_affine(
        x in prop::array::uniform10(-20i64..=20),
        y in prop::array::uniform10(-20i64..=20),
    ) {
        let inv = |v: [i64; 10]| FamilyInvariants {
            deg_t_alpha: v[0], deg_d_alpha: v[1], deg_delta_alpha: v[2], e: v[3], g2: 0, d2: 0,
            p_ram: v[6], q_ram: v[7], p_sq: v[8], q_sq: v[9],
        };
        let sum: [i64; 10] = std::array::from_fn(|i| x[i] + y[i]);
        let (a, b, s) = (attach_degrees(&inv(x)), attach_degrees(&inv(y)), attach_degrees(&inv(sum)));
        prop_assert_eq!(s.t, a.t + b.t);
        prop_assert_eq!(s.delta, a.delta + b.delta);
        // D is linear in the family data once (g₂, d₂) is fixed
        prop_assert_eq!(s.d, a.d + b.d);
    }

    #[test]
    fn cubic_coefficients_respect_bounds(a in 1i64..=8, extra in 0i64..=8, seed in any::<u64>()) {
        let b = a + extra.min(a);
        let e = SplitBundle::from_slice(&[a, b]).unwrap();
        let g = a + b - 2;
        prop_assume!(g >= 2);
        let f = sample_d3(&e, g, seed).unwrap();
        prop_assert!(f.respects_bounds());
        prop_assert_eq!(f.bounds(), vec![2 * a - b, a, b, 2 * b - a]);
        let disc = discriminant_cubic(&f).unwrap();
        prop_assert!(disc.degree_or_neg() <= 2 * e.degree());
    }

    #[test]
    fn sampled_models_respect_bounds(seed in any::<u64>()) {
        let pair = sample_d4(
            &SplitBundle::from_slice(&[3, 5, 7]).unwrap(),
            &SplitBundle::from_slice(&[6, 9]).unwrap(),
            12,
            seed,
        ).unwrap();
        prop_assert!(pair.qa.respects_bounds() && pair.qb.respects_bounds());
        let model = SkewCoverModel::sample(
            &SplitBundle::from_slice(&[2, 2, 3, 3]).unwrap(),
            &SplitBundle::from_slice(&[4, 4, 4, 4, 4]).unwrap(),
            6,
            seed,
        ).unwrap();
        prop_assert!(model.respects_bounds());
        for k in 1..=5 {
            prop_assert!(model.pfaffian_sub(k).unwrap().respects_bounds());
        }
    }

    #[test]
    fn sub_pfaffians_evaluate_to_minor_pfaffians(
        seed in any::<u64>(),
        t in -5i64..=5,
        x in prop::array::uniform4(-4i64..=4),
        k in 1usize..=5,
    ) {
        let e = SplitBundle::from_slice(&[5, 5, 5, 5]).unwrap();
        let f = SplitBundle::from_slice(&[8, 8, 8, 8, 8]).unwrap();
        let model = SkewCoverModel::sample(&e, &f, 16, seed).unwrap();
        let tq = BigRational::from_integer(t.into());
        let xq: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let full = model.evaluate(&tq, &xq);
        let minor: Vec<Vec<BigRational>> = (0..5)
            .filter(|&i| i != k - 1)
            .map(|i| (0..5).filter(|&j| j != k - 1).map(|j| full[i][j].clone()).collect())
            .collect();
        let qk = model.pfaffian_sub(k).unwrap().eval(&tq, &xq);
        prop_assert_eq!(&qk, &pfaffian(&minor).unwrap());
        prop_assert_eq!(&qk * &qk, det_rational(&minor).unwrap());
    }

    #[test]
    fn gcd_detects_repeated_factors(
        p in prop::collection::vec(-9i64..=9, 2..=5),
        q in prop::collection::vec(-9i64..=9, 1..=5),
    ) {
        let p = RationalPoly::from_ints(&p);
        let q = RationalPoly::from_ints(&q);
        prop_assume!(p.degree().unwrap_or(0) >= 1 && !q.is_zero());
        let pq = &p * &q;
        let g = pq.gcd(&(&p * &p));
        let (_, rem) = g.div_rem(&p).unwrap();
        prop_assert!(rem.is_zero());
        prop_assert!(!(&pq * &p).is_squarefree().unwrap());
    }

    #[test]
    fn bundle_literals_round_trip(e in bundle_strategy(6, 20)) {
        let text = e.to_string();
        prop_assert_eq!(text.parse::<SplitBundle>().unwrap(), e.clone());
        let json = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<SplitBundle>(&json).unwrap(), e);
    }
}

#[test]
fn syzygy_ranks_are_symmetric() {
    for d in 4..=20 {
        for i in 1..=d - 3 {
            assert_eq!(
                ce_rank(d, i).unwrap(),
                ce_rank(d, d - 2 - i).unwrap(),
                "d={d} i={i}"
            );
        }
    }
}

#[test]
fn generic_bundles_form_a_chain() {
    for d in 3..=5 {
        for g in 2..=40 {
            let c = CoverClass::new(d, g).unwrap();
            let gens: Vec<(i64, SplitBundle)> = c
                .m_range()
                .filter_map(|m| tame_family(&c, m).unwrap().map(|f| (m, f.generic)))
                .collect();
            for w in gens.windows(2) {
                let ((m0, lo), (m1, hi)) = (&w[0], &w[1]);
                if m1 - m0 != 1 {
                    continue;
                }
                assert!(
                    hi.specializes_to(lo),
                    "d={d} g={g}: E[{m1}]={hi} should specialize to E[{m0}]={lo}"
                );
                assert!(
                    !lo.specializes_to(hi),
                    "d={d} g={g}: E[{m0}]={lo} specializes to E[{m1}]={hi}"
                );
            }
        }
    }
}

#[test]
fn sweeps_agree_across_modes() {
    for d in 3..=5 {
        let g0 = [2, 4, 5][(d - 3) as usize];
        let seq = rank_bound_sweep(d, g0..=80, Parallelism::Sequential).unwrap();
        let par = rank_bound_sweep(d, g0..=80, Parallelism::Parallel).unwrap();
        assert_eq!(seq, par);
        let seq = dimension_identity_sweep(d, g0..=80, Parallelism::Sequential).unwrap();
        let par = dimension_identity_sweep(d, g0..=80, Parallelism::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}

#[test]
fn bigint_determinants_do_not_overflow() {
    let big = i64::MAX / 4;
    let m = vec![vec![big, 1], vec![1, big]];
    let want = BigInt::from(big) * BigInt::from(big) - 1;
    assert_eq!(det_integer(&m).unwrap(), want);
}
