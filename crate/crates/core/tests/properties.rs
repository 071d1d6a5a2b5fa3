use proptest::prelude::*;
use quintic_core::exactcore::root_sum;
use quintic_core::genring::{du, in_r, monomials_up_to, GenPoly, Mono, Realizer};
use quintic_core::graphs::{enumerate_bipartite, enumerate_tripartite, psi_integral, DecoratedGraph, Leaves};
use quintic_core::mirrordata::build_idata;
use quintic_core::{int, rat, CycNum, QSeries, Rat};
use std::sync::OnceLock;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn series(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(small_rat(), order).prop_map(move |c| QSeries::from_coeffs(c, order))
}

fn unit_series(order: usize) -> impl Strategy<Value = QSeries> {
    series(order).prop_map(move |s| QSeries::one(order).add_ref(&s.sub_ref(&QSeries::constant(s.coeff(0), order))))
}

proptest! {
    #[test]
    fn series_ring_axioms((a, b, c) in (1usize..8).prop_flat_map(|n| (series(n), series(n), series(n)))) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
    }

    #[test]
    fn truncation_is_min_order(a in series(3), b in series(7)) {
        prop_assert_eq!(a.mul_ref(&b).order(), 3);
        prop_assert_eq!(b.add_ref(&a).order(), 3);
    }

    #[test]
    fn qdq_is_a_derivation(a in series(7), b in series(7)) {
        prop_assert_eq!(a.mul_ref(&b).qdq(), a.qdq().mul_ref(&b).add_ref(&a.mul_ref(&b.qdq())));
    }

    #[test]
    fn exp_log_and_rational_powers(a in unit_series(7), n in -5i64..=5, d in 1i64..=4) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a.clone());
        let r = rat(n, d);
        let p = a.pow_rat(&r).unwrap().mul_ref(&a.pow_rat(&(-r)).unwrap());
        prop_assert_eq!(p, QSeries::one(7));
        prop_assert_eq!(a.pow_rat(&int(3)).unwrap(), a.pow_u(3));
    }

    #[test]
    fn rationals_stay_reduced(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert!(r.denom() > &0.into());
        prop_assert_eq!(num_integer::gcd(r.numer().clone(), r.denom().clone()), 1.into());
    }

    #[test]
    fn cyclotomic_trace(s in -60i64..60, a in -20i64..20, b in -20i64..20) {
        let sum = (0..5).fold(CycNum::from_rat(int(0)), |acc, al| acc + CycNum::zeta_pow(al * s));
        let expect = if s.rem_euclid(5) == 0 { int(5) } else { int(0) };
        prop_assert_eq!(sum.as_rat(), Some(expect.clone()));
        prop_assert_eq!(root_sum(s), expect);
        prop_assert_eq!(CycNum::zeta_pow(a) * CycNum::zeta_pow(b), CycNum::zeta_pow(a + b));
    }
}

fn realizer() -> &'static Realizer {
    static R: OnceLock<Realizer> = OnceLock::new();
    R.get_or_init(|| Realizer::new(&build_idata(15)))
}

/// Random homogeneous polynomial of the given degree.
fn homogeneous(deg: i32) -> impl Strategy<Value = GenPoly> {
    let monos: Vec<Mono> = monomials_up_to(deg).into_iter().filter(|m| m.degree() == deg).collect();
    let n = monos.len();
    prop::collection::vec((0..n, small_rat()), 1..5).prop_map(move |ts| {
        let mut p = GenPoly::zero();
        for (i, c) in ts {
            p.add_term(monos[i], c);
        }
        p
    })
}

fn any_homogeneous() -> impl Strategy<Value = GenPoly> {
    (0i32..=4).prop_flat_map(homogeneous)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn realization_commutes_with_du(f in any_homogeneous()) {
        let r = realizer();
        prop_assert_eq!(r.realize(&du(&f)).mul_ref(&r.l), r.realize(&f).qdq());
    }
}

proptest! {
    #[test]
    fn du_is_graded_leibniz(f in any_homogeneous(), g in any_homogeneous()) {
        prop_assert_eq!(du(&f.mul_ref(&g)), du(&f).mul_ref(&g).add_ref(&f.mul_ref(&du(&g))));
        if let Some(d) = f.homogeneous_degree() {
            let df = du(&f);
            prop_assert!(df.is_zero() || df.is_homogeneous_of(d + 1));
        }
    }

    #[test]
    fn r_is_closed_under_du(f in any_homogeneous()) {
        if in_r(&f).0 {
            prop_assert!(in_r(&du(&f)).0);
        }
    }
}

fn fixture_graphs() -> &'static Vec<DecoratedGraph> {
    static G: OnceLock<Vec<DecoratedGraph>> = OnceLock::new();
    G.get_or_init(|| {
        let mut v = enumerate_bipartite(2, 0, &[], Leaves::StableQuotient);
        v.extend(enumerate_bipartite(1, 0, &[1], Leaves::StableQuotient));
        v.extend(enumerate_tripartite(2, 0));
        v
    })
}

fn relabeled() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..fixture_graphs().len()).prop_flat_map(|i| {
        let n = fixture_graphs()[i].num_vertices();
        (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn canonical_form_ignores_labels((i, p) in relabeled()) {
        let g = &fixture_graphs()[i];
        let h = g.relabel(&p);
        prop_assert_eq!(h.canonical(), g.canonical());
        prop_assert_eq!(h.automorphisms(), g.automorphisms());
        prop_assert_eq!(h.genus(), g.genus());
    }

    #[test]
    fn distinct_graphs_have_distinct_forms((i, p) in relabeled(), j in 0usize..1000) {
        let all = fixture_graphs();
        let j = j % all.len();
        let same = all[i].canonical() == all[j].canonical();
        prop_assert_eq!(all[i].relabel(&p).canonical() == all[j].canonical(), same);
    }
}

/// Exponent vectors of length n summing to 3g - 3 + n.
fn psi_point() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (0u32..=3, 1usize..=5)
        .prop_filter("stable", |(g, n)| 2 * *g as i64 - 2 + *n as i64 > 0)
        .prop_flat_map(|(g, n)| {
            let dim = 3 * g + n as u32 - 3;
            (Just(g), prop::collection::vec(0..=dim, n - 1)).prop_map(move |(g, mut cuts)| {
                cuts.sort_unstable();
                cuts.push(dim);
                let mut prev = 0;
                let exps = cuts.iter().map(|&c| {
                    let e = c - prev;
                    prev = c;
                    e
                });
                (g, exps.collect())
            })
        })
}

proptest! {
    #[test]
    fn string_equation((g, a) in psi_point()) {
        let mut with0 = a.clone();
        with0.push(0);
        let mut s = int(0);
        for j in 0..a.len() {
            if a[j] > 0 {
                let mut b = a.clone();
                b[j] -= 1;
                s += psi_integral(g, &b);
            }
        }
        prop_assert_eq!(psi_integral(g, &with0), s);
    }

    #[test]
    fn dilaton_equation((g, a) in psi_point()) {
        let mut with1 = a.clone();
        with1.push(1);
        let factor = int(2 * g as i64 - 2 + a.len() as i64);
        prop_assert_eq!(psi_integral(g, &with1), factor * psi_integral(g, &a));
    }
}
