//! Hyperfield axiom checking over exhaustive or sampled triples.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ArcSet, HElem, Hyperfield, SetValue};
use crate::extension::ExtSet;
use crate::ordgroup::GroupElem;
use crate::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// Every triple of a finite hyperfield.
    Exhaustive,
    Sampled {
        triples: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub instance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub hyperfield: String,
    pub exhaustive: bool,
    pub triples: usize,
    pub stringent: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A random element of `s`, biased toward boundary and zero cases.
pub fn sample_member<R: Rng + ?Sized>(h: &Hyperfield, s: &SetValue, rng: &mut R) -> Option<HElem> {
    match (h, s) {
        (_, SetValue::Finite(items)) => {
            let v: Vec<&HElem> = items.iter().collect();
            (!v.is_empty()).then(|| v[rng.gen_range(0..v.len())].clone())
        }
        (_, SetValue::Arcs(a)) => sample_arc_member(h, a, rng),
        (Hyperfield::Extension { base, rank }, SetValue::Ext(e)) => match e {
            ExtSet::ZeroOnly => Some(HElem::Zero),
            ExtSet::Level { level, base: b } => {
                let c = sample_member(base, b, rng)?;
                if !c.is_zero() {
                    return Some(HElem::pair(c, level.clone()));
                }
                if rng.gen_bool(0.3) {
                    return Some(HElem::Zero);
                }
                let bump = GroupElem::new(
                    (0..*rank)
                        .map(|i| {
                            if i == 0 {
                                rat::ratio(rng.gen_range(1..4), 2)
                            } else {
                                rat::rat(0)
                            }
                        })
                        .collect(),
                );
                Some(HElem::pair(base.sample_unit(rng), level + &bump))
            }
        },
        _ => None,
    }
}

fn sample_arc_member<R: Rng + ?Sized>(h: &Hyperfield, a: &ArcSet, rng: &mut R) -> Option<HElem> {
    if a.zero_included && (a.arcs.is_empty() && !a.whole_circle || rng.gen_bool(0.25)) {
        return Some(HElem::Zero);
    }
    if a.whole_circle {
        return Some(h.sample_unit(rng));
    }
    let arc = &a.arcs[rng.gen_range(0..a.arcs.len())];
    if arc.start == arc.end {
        return Some(HElem::Dir(arc.start.clone()));
    }
    if arc.start_closed && rng.gen_bool(0.3) {
        return Some(HElem::Dir(arc.start.clone()));
    }
    if arc.end_closed && rng.gen_bool(0.3) {
        return Some(HElem::Dir(arc.end.clone()));
    }
    // an interior point: a positive combination of the endpoints, or the
    // left normal when the endpoints are antipodal
    let (l, m) = (rng.gen_range(1..4i64), rng.gen_range(1..4i64));
    let (s, e) = (&arc.start, &arc.end);
    let d = if *e == s.neg() {
        s.rot90()
    } else {
        super::Dir::new(s.x() * l + e.x() * m, s.y() * l + e.y() * m)?
    };
    Some(HElem::Dir(d))
}

pub fn check_axioms(h: &Hyperfield, mode: SampleMode) -> AxiomReport {
    let mut v = Vec::new();
    let mut triples = 0usize;
    let exhaustive = matches!(mode, SampleMode::Exhaustive);
    match (mode, h.elements()) {
        (SampleMode::Exhaustive, Some(els)) => {
            for a in &els {
                check_element(h, a, Some(&els), &mut v);
                for b in &els {
                    for c in &els {
                        check_triple(h, a, b, c, &mut v);
                        triples += 1;
                    }
                }
            }
        }
        (SampleMode::Exhaustive, None) => v.push(Violation {
            axiom: "exhaustive".into(),
            instance: format!("{} is infinite; sample instead", h.key()),
        }),
        (SampleMode::Sampled { triples: n, seed }, _) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..n {
                let b = h.sample(&mut rng, 0.1);
                let c = h.sample(&mut rng, 0.1);
                let a = if rng.gen_bool(0.5) {
                    sample_member(h, &h.add_elems(&b, &c), &mut rng)
                        .unwrap_or_else(|| h.sample(&mut rng, 0.1))
                } else {
                    h.sample(&mut rng, 0.1)
                };
                check_element(h, &a, None, &mut v);
                if b != h.neg(&a) && h.set_contains_zero(&h.add_elems(&a, &b)) {
                    v.push(viol("unique inverse", h, &[&a, &b]));
                }
                check_triple(h, &a, &b, &c, &mut v);
                triples += 1;
            }
        }
    }
    AxiomReport {
        hyperfield: h.key(),
        exhaustive,
        triples,
        stringent: h.is_stringent(),
        violations: v,
    }
}

fn viol(axiom: &str, h: &Hyperfield, els: &[&HElem]) -> Violation {
    let parts: Vec<String> = els.iter().map(|e| h.fmt_elem(e)).collect();
    Violation {
        axiom: axiom.into(),
        instance: parts.join(", "),
    }
}

fn check_element(h: &Hyperfield, a: &HElem, all: Option<&[HElem]>, v: &mut Vec<Violation>) {
    if h.add_elems(&HElem::Zero, a) != h.singleton(a) {
        v.push(viol("identity", h, &[a]));
    }
    let na = h.neg(a);
    if !h.set_contains_zero(&h.add_elems(a, &na)) {
        v.push(viol("inverse", h, &[a]));
    }
    if let Some(all) = all {
        let n = all
            .iter()
            .filter(|b| h.set_contains_zero(&h.add_elems(a, b)))
            .count();
        if n != 1 {
            v.push(viol("unique inverse", h, &[a]));
        }
    }
    if !a.is_zero() {
        match h.inv(a) {
            Ok(i) if h.mul(a, &i) == h.one() => {}
            _ => v.push(viol("multiplicative inverse", h, &[a])),
        }
    }
}

fn check_triple(h: &Hyperfield, a: &HElem, b: &HElem, c: &HElem, v: &mut Vec<Violation>) {
    let ab = h.add_elems(a, b);
    if ab != h.add_elems(b, a) {
        v.push(viol("commutativity", h, &[a, b]));
    }
    let left = h.hyperadd(&ab, &h.singleton(c));
    let right = h.hyperadd(&h.singleton(a), &h.add_elems(b, c));
    if left.is_err() || left != right {
        v.push(viol("associativity", h, &[a, b, c]));
    }
    let bc = h.add_elems(b, c);
    let rev = h.add_elems(a, &h.neg(b));
    if h.set_contains(&bc, a) != h.set_contains(&rev, c) {
        v.push(viol("reversibility", h, &[a, b, c]));
    }
    let lhs = h.scale_set(a, &bc);
    let rhs = h.add_elems(&h.mul(a, b), &h.mul(a, c));
    if lhs != rhs {
        v.push(viol("distributivity", h, &[a, b, c]));
    }
}
