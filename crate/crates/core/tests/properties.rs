//! Property tests: each case draws a seed and builds its inputs with the
//! library's own seeded samplers.

use std::cmp::Ordering;

use hyperfield_core::hfcore::{Dir, SetValue};
use hyperfield_core::poly::{prevariety_member, HPoly, SeriesPoly};
use hyperfield_core::rat::{self, Rational};
use hyperfield_core::solve::harness::random_root;
use hyperfield_core::solve::{roots_univariate, LinearSystem};
use hyperfield_core::tropgeo::{fine_hypersurface, fine_intersect, stable_intersect};
use hyperfield_core::{
    Domain, FieldKind, GroupElem, HElem, HomDescriptor, Hyperfield, SeriesTrunc,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn group_elem(r: &mut ChaCha8Rng, rank: usize) -> GroupElem {
    GroupElem::new(
        (0..rank)
            .map(|_| rat::ratio(r.gen_range(-20..=20), r.gen_range(1..=6)))
            .collect(),
    )
}

fn zoo() -> Vec<Hyperfield> {
    vec![
        Hyperfield::Krasner,
        Hyperfield::Sign,
        Hyperfield::WeakSign,
        Hyperfield::Phase,
        Hyperfield::TropicalPhase,
        Hyperfield::quotient(5, &[1, 4]).unwrap(),
        Hyperfield::quotient(7, &[1, 2, 4]).unwrap(),
        Hyperfield::extension(Hyperfield::Krasner, 1),
        Hyperfield::extension(Hyperfield::Sign, 1),
        Hyperfield::extension(Hyperfield::TropicalPhase, 1),
        Hyperfield::extension(Hyperfield::rationals(), 1),
        Hyperfield::extension(Hyperfield::Krasner, 2),
    ]
}

fn nonzero_series(field: &FieldKind, r: &mut ChaCha8Rng) -> SeriesTrunc {
    loop {
        let s = SeriesTrunc::random(field, r, 3, 4, -2, 5);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random polynomial in `n` variables with exponents in `lo..=hi`.
fn random_poly(h: &Hyperfield, r: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> HPoly {
    let terms: Vec<(Vec<i64>, HElem)> = (0..r.gen_range(1..=4))
        .map(|_| {
            (
                (0..n).map(|_| r.gen_range(lo..=hi)).collect(),
                h.sample(r, 0.1),
            )
        })
        .collect();
    let mut seen = std::collections::BTreeMap::new();
    for (d, c) in terms {
        seen.insert(d, c);
    }
    HPoly::new(h.clone(), n, seen).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn level_order_is_total_and_antisymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.gen_range(1..=3);
        let (a, b) = (group_elem(&mut r, rank), group_elem(&mut r, rank));
        let ab = a.lex_compare(&b).unwrap();
        prop_assert_eq!(ab, b.lex_compare(&a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn level_order_is_translation_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = r.gen_range(1..=3);
        let (a, b, c) = (group_elem(&mut r, rank), group_elem(&mut r, rank), group_elem(&mut r, rank));
        prop_assert_eq!(
            a.lex_compare(&b).unwrap(),
            a.group_add(&c).unwrap().lex_compare(&b.group_add(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn fval_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let field = if r.gen_bool(0.5) { FieldKind::Rationals } else { FieldKind::Gaussian };
        let fval = HomDescriptor::fval(field.clone());
        let (x, y) = (nonzero_series(&field, &mut r), nonzero_series(&field, &mut r));
        let lhs = fval.apply_series(&x.mul(&y).unwrap()).unwrap();
        let rhs = fval.target.mul(&fval.apply_series(&x).unwrap(), &fval.apply_series(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn division_undoes_scalar_multiples(seed in any::<u64>(), n in 1i64..12) {
        let mut r = rng(seed);
        let rank = r.gen_range(1..=3);
        let a = group_elem(&mut r, rank);
        prop_assert_eq!(a.scalar_mul(&BigInt::from(n)).div(n).unwrap(), a);
    }

    #[test]
    fn hypersums_commute_and_associate(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in zoo() {
            let (a, b, c) = (h.sample(&mut r, 0.15), h.sample(&mut r, 0.15), h.sample(&mut r, 0.15));
            prop_assert_eq!(h.add_elems(&a, &b), h.add_elems(&b, &a), "{}", h.key());
            let left = h.hyperadd(&h.add_elems(&a, &b), &h.singleton(&c)).unwrap();
            let right = h.hyperadd(&h.singleton(&a), &h.add_elems(&b, &c)).unwrap();
            prop_assert_eq!(left, right, "{}: ({}, {}, {})", h.key(), h.fmt_elem(&a), h.fmt_elem(&b), h.fmt_elem(&c));
        }
    }

    #[test]
    fn hypersums_are_reversible(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in zoo() {
            let (a, b, c) = (h.sample(&mut r, 0.15), h.sample(&mut r, 0.15), h.sample(&mut r, 0.15));
            // bias toward memberships that hold
            let a = match hyperfield_core::hfcore::axioms::sample_member(&h, &h.add_elems(&b, &c), &mut r) {
                Some(x) if r.gen_bool(0.5) => x,
                _ => a,
            };
            let forward = h.set_contains(&h.add_elems(&b, &c), &a);
            let backward = h.set_contains(&h.add_elems(&a, &h.neg(&b)), &c);
            prop_assert_eq!(forward, backward, "{}: ({}, {}, {})", h.key(), h.fmt_elem(&a), h.fmt_elem(&b), h.fmt_elem(&c));
        }
    }

    #[test]
    fn lower_levels_dominate(seed in any::<u64>()) {
        let mut r = rng(seed);
        for base in [Hyperfield::Krasner, Hyperfield::Sign, Hyperfield::Phase, Hyperfield::rationals()] {
            let h = Hyperfield::extension(base.clone(), 1);
            let g1 = group_elem(&mut r, 1);
            let g2 = g1.group_add(&GroupElem::from_rational(rat::ratio(r.gen_range(1..9), 2))).unwrap();
            let a = HElem::pair(base.sample_unit(&mut r), g1);
            let b = HElem::pair(base.sample_unit(&mut r), g2);
            prop_assert_eq!(h.add_elems(&a, &b), h.singleton(&a));
        }
    }

    #[test]
    fn valuation_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = FieldKind::Rationals;
        let (x, y) = (nonzero_series(&q, &mut r), nonzero_series(&q, &mut r));
        let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().valuation().unwrap(), &vx + &vy);
        let s = x.add(&y).unwrap();
        if !s.is_zero() {
            let v = s.valuation().unwrap();
            prop_assert!(v >= vx.clone().min(vy.clone()));
            if vx != vy {
                prop_assert_eq!(v, vx.min(vy));
            }
        }
    }

    #[test]
    fn more_precision_never_changes_determined_terms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = FieldKind::Rationals;
        let (x, y) = (nonzero_series(&q, &mut r), nonzero_series(&q, &mut r));
        let lo = rat::ratio(r.gen_range(0..8), 2);
        let hi = &lo + rat::ratio(r.gen_range(1..6), 2);
        let coarse = x.truncate(&lo).mul(&y).unwrap();
        let fine = x.truncate(&hi).mul(&y).unwrap();
        match coarse.precision() {
            Some(p) => prop_assert_eq!(fine.truncate(p), coarse),
            None => prop_assert_eq!(fine, coarse),
        }
    }

    #[test]
    fn evaluation_ignores_fold_order(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in zoo() {
            let p = random_poly(&h, &mut r, 2, 0, 3);
            let a: Vec<HElem> = (0..2).map(|_| h.sample(&mut r, 0.1)).collect();
            let mut perm: Vec<usize> = (0..p.terms().len()).collect();
            for i in (1..perm.len()).rev() {
                perm.swap(i, r.gen_range(0..=i));
            }
            prop_assert_eq!(p.eval(&a).unwrap(), p.eval_in_order(&a, &perm).unwrap(), "{}", h.key());
        }
    }

    #[test]
    fn roots_are_scale_invariant_on_homogeneous_polynomials(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in zoo() {
            let p = random_poly(&h, &mut r, 2, 0, 3).homogenize();
            let a: Vec<HElem> = (0..3).map(|_| h.sample(&mut r, 0.1)).collect();
            let lambda = h.sample_unit(&mut r);
            let scaled: Vec<HElem> = a.iter().map(|x| h.mul(&lambda, x)).collect();
            prop_assert_eq!(p.is_root(&a).unwrap(), p.is_root(&scaled).unwrap(), "{}: {}", h.key(), p);
        }
    }

    #[test]
    fn homogenization_agrees_with_evaluation(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in zoo() {
            let p = random_poly(&h, &mut r, 2, 0, 3);
            let a: Vec<HElem> = (0..2).map(|_| h.sample(&mut r, 0.1)).collect();
            let mut lifted = vec![h.one()];
            lifted.extend(a.iter().cloned());
            prop_assert_eq!(p.eval(&a).unwrap(), p.homogenize().eval(&lifted).unwrap(), "{}", h.key());
        }
    }

    #[test]
    fn laurent_roots_agree_with_affinized_roots_on_the_torus(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in zoo() {
            let p = random_poly(&h, &mut r, 2, -2, 2);
            let a: Vec<HElem> = (0..2).map(|_| h.sample_unit(&mut r)).collect();
            prop_assert_eq!(p.is_root(&a).unwrap(), p.affinize().is_root(&a).unwrap(), "{}", h.key());
        }
    }

    #[test]
    fn univariate_roots_are_roots(seed in any::<u64>()) {
        let mut r = rng(seed);
        for h in [Hyperfield::extension(Hyperfield::Krasner, 1), Hyperfield::extension(Hyperfield::Sign, 1), Hyperfield::Sign, Hyperfield::quotient(7, &[1, 2, 4]).unwrap()] {
            let p = random_poly(&h, &mut r, 1, 0, 4);
            if p.is_zero() {
                continue;
            }
            for rec in roots_univariate(&p).unwrap() {
                prop_assert!(p.is_root(std::slice::from_ref(&rec.root)).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pushforwards_keep_images_of_roots(seed in any::<u64>()) {
        let mut r = rng(seed);
        let field = if r.gen_bool(0.5) { FieldKind::Rationals } else { FieldKind::Gaussian };
        let roots: Vec<SeriesTrunc> = (0..r.gen_range(1..=3)).map(|_| random_root(&field, &mut r, 3, 6)).collect();
        let p = SeriesPoly::from_roots(field.clone(), &roots).unwrap();
        let mut homs = vec![HomDescriptor::val(field.clone()), HomDescriptor::fval(field.clone()), HomDescriptor::trivial(Domain::Series(field.clone()))];
        match field {
            FieldKind::Rationals => homs.push(HomDescriptor::sval()),
            _ => homs.push(HomDescriptor::phval()),
        }
        for f in homs {
            let pushed = p.pushforward(&f).unwrap();
            for a in &roots {
                let img = f.apply_series(a).unwrap();
                prop_assert!(pushed.is_root(std::slice::from_ref(&img)).unwrap(), "{}: {} at {}", f.name(), pushed, f.target.fmt_elem(&img));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fine_points_project_into_cell_intersections(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sys = LinearSystem::random(&FieldKind::Rationals, &mut r, 3);
        let fval = HomDescriptor::fval(FieldKind::Rationals);
        let [p, q] = sys.polys().unwrap();
        let (pp, qq) = (p.pushforward(&fval).unwrap(), q.pushforward(&fval).unwrap());
        let (c1, c2) = (fine_hypersurface(&pp).unwrap(), fine_hypersurface(&qq).unwrap());
        let fi = fine_intersect(&c1, &c2).unwrap();
        for x in &fi.points {
            prop_assert!(prevariety_member(&[pp.clone(), qq.clone()], x).unwrap());
            let g: [Rational; 2] = [x[0].level().unwrap().lead().clone(), x[1].level().unwrap().lead().clone()];
            let hit = c1.cells().iter().any(|a| a.locus.contains(&g)) && c2.cells().iter().any(|b| b.locus.contains(&g));
            prop_assert!(hit);
        }
        prop_assert_eq!(stable_intersect(&c1, &c2, seed).unwrap(), stable_intersect(&c1, &c2, seed).unwrap());
    }
}

#[test]
fn phase_membership_matches_positive_combinations() {
    let mut r = rng(11);
    let h = Hyperfield::Phase;
    let mut checked = 0;
    while checked < 1000 {
        let dir = |r: &mut ChaCha8Rng| loop {
            if let Some(d) = Dir::from_i64(r.gen_range(-5..=5), r.gen_range(-5..=5)) {
                break d;
            }
        };
        let (s, e, d) = (dir(&mut r), dir(&mut r), dir(&mut r));
        if s.cross(&e) == BigInt::from(0) {
            continue;
        }
        let sum = h.add_elems(&HElem::Dir(s.clone()), &HElem::Dir(e.clone()));
        let SetValue::Arcs(arcs) = &sum else {
            panic!("phase sums are arcs")
        };
        let oracle = hyperfield_core::hfcore::phase::positive_combination(&d, &s, &e).is_some_and(
            |(l, m)| l > Rational::from_integer(0.into()) && m > Rational::from_integer(0.into()),
        );
        assert_eq!(arcs.contains(&d), oracle, "{s} ⊞ {e} ∋ {d}");
        checked += 1;
    }
}
