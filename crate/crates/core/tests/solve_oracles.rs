//! Solver results against independent oracles: lattice lengths of the
//! Newton polygon over T, classical root multiplicities over ℚ, and the
//! root images of constructed products.

use hyperfield_core::extension::realize;
use hyperfield_core::poly::HPoly;
use hyperfield_core::rat::{rat, Rational};
use hyperfield_core::solve::harness::{kapranov_harness, KapranovConfig};
use hyperfield_core::solve::{multiplicity, roots_univariate};
use hyperfield_core::{FieldKind, GroupElem, HElem, HomDescriptor, Hyperfield};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Horizontal length of the lower-hull edge of slope `−h`, by brute force
/// over all index pairs rather than a hull sweep.
fn lattice_length_oracle(levels: &[Option<Rational>], h: &Rational) -> usize {
    let vals: Vec<(usize, Rational)> = levels
        .iter()
        .enumerate()
        .filter_map(|(i, g)| g.as_ref().map(|g| (i, g + h * rat(i as i64))))
        .collect();
    let min = vals.iter().map(|(_, v)| v.clone()).min().unwrap();
    let at_min: Vec<usize> = vals
        .iter()
        .filter(|(_, v)| *v == min)
        .map(|(i, _)| *i)
        .collect();
    at_min.last().unwrap() - at_min.first().unwrap()
}

fn random_tropical(rng: &mut ChaCha8Rng) -> (HPoly, Vec<Option<Rational>>) {
    let deg = rng.gen_range(1..=6);
    let mut levels = Vec::new();
    for i in 0..=deg {
        let keep = i == deg || rng.gen_bool(0.75);
        levels.push(
            keep.then(|| Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=2).into())),
        );
    }
    let coeffs: Vec<HElem> = levels
        .iter()
        .map(|g| {
            g.as_ref().map_or(HElem::Zero, |g| {
                HElem::pair(HElem::One, GroupElem::from_rational(g.clone()))
            })
        })
        .collect();
    (
        HPoly::univariate(realize("T").unwrap(), &coeffs).unwrap(),
        levels,
    )
}

#[test]
fn tropical_multiplicity_matches_lattice_length() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (p, levels) = random_tropical(&mut rng);
        for r in roots_univariate(&p).unwrap() {
            if r.root.is_zero() {
                continue;
            }
            let h = r.root.level().unwrap().lead().clone();
            assert_eq!(
                r.multiplicity,
                lattice_length_oracle(&levels, &h),
                "{p} at {}",
                r.root
            );
        }
    }
}

#[test]
fn rational_multiplicity_is_classical() {
    // (x − 1)^3 (x + 2)^2 expanded
    let c = [-4, 8, -1, -5, 1, 1];
    let coeffs: Vec<HElem> = c.iter().map(|&x| HElem::int(x)).collect();
    let p = HPoly::univariate(Hyperfield::rationals(), &coeffs).unwrap();
    assert_eq!(multiplicity(&p, &HElem::int(1)).unwrap(), 3);
    assert_eq!(multiplicity(&p, &HElem::int(-2)).unwrap(), 2);
    assert_eq!(multiplicity(&p, &HElem::int(2)).unwrap(), 0);
}

#[test]
fn kapranov_trials_for_enriched_valuations() {
    let q = FieldKind::Rationals;
    for f in [
        HomDescriptor::val(q.clone()),
        HomDescriptor::sval(),
        HomDescriptor::fval(q.clone()),
    ] {
        let cfg = KapranovConfig {
            trials: 200,
            seed: 11,
            ..KapranovConfig::default()
        };
        let r = kapranov_harness(&f, &cfg).unwrap();
        assert!(
            r.passed(),
            "{}: {:#?}",
            f.name(),
            &r.failures[..r.failures.len().min(3)]
        );
    }
}

#[test]
fn phase_valuation_images_are_roots() {
    let cfg = KapranovConfig {
        trials: 50,
        seed: 3,
        ..KapranovConfig::default()
    };
    let r = kapranov_harness(&HomDescriptor::phval(), &cfg).unwrap();
    assert_eq!(r.mode, "containment");
    assert!(r.passed(), "{:?}", r.failures);
}
