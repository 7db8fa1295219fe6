//! Hyperfield homomorphisms, including the enriched valuations on series.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SeriesTrunc;
use crate::error::{Error, Result};
use crate::hfcore::axioms::sample_member;
use crate::hfcore::{
    sign_elem, Dir, FieldKind, Gauss, HElem, Hyperfield, QuotientTable, SetValue, Violation,
};
use crate::ordgroup::GroupElem;
use crate::rat::{self, Rational};

/// Where a homomorphism takes its arguments from.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Domain {
    Hyper(Hyperfield),
    /// The truncated series field over a coefficient field.
    Series(FieldKind),
}

impl Domain {
    pub fn key(&self) -> String {
        match self {
            Domain::Hyper(h) => h.key(),
            Domain::Series(k) => format!("{}{{{{t}}}}", k.key()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum HomKind {
    Identity,
    /// `ω`: every unit to `1` in `K`.
    Trivial,
    /// Sign of a rational, into `S` or `W`.
    Sign,
    Val,
    SVal,
    FVal,
    PhVal,
    /// `f^Γ(c, g) = (f(c), g)`.
    Extended(Box<HomDescriptor>),
    /// Coset projection `GF(q)/U1 → GF(q)/U2` for `U1 ⊆ U2`.
    Quotient,
    Composite(Vec<HomDescriptor>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomDescriptor {
    pub kind: HomKind,
    pub source: Domain,
    pub target: Hyperfield,
}

fn ext1(base: Hyperfield) -> Hyperfield {
    Hyperfield::extension(base, 1)
}

impl HomDescriptor {
    pub fn identity(h: Hyperfield) -> Self {
        HomDescriptor {
            kind: HomKind::Identity,
            source: Domain::Hyper(h.clone()),
            target: h,
        }
    }

    /// `ω: H → K`.
    pub fn trivial(source: Domain) -> Self {
        HomDescriptor {
            kind: HomKind::Trivial,
            source,
            target: Hyperfield::Krasner,
        }
    }

    /// `sgn: ℚ → S` (or into `W` when `weak`).
    pub fn sign(weak: bool) -> Self {
        let target = if weak {
            Hyperfield::WeakSign
        } else {
            Hyperfield::Sign
        };
        HomDescriptor {
            kind: HomKind::Sign,
            source: Domain::Hyper(Hyperfield::rationals()),
            target,
        }
    }

    pub fn val(field: FieldKind) -> Self {
        HomDescriptor {
            kind: HomKind::Val,
            source: Domain::Series(field),
            target: ext1(Hyperfield::Krasner),
        }
    }

    pub fn sval() -> Self {
        HomDescriptor {
            kind: HomKind::SVal,
            source: Domain::Series(FieldKind::Rationals),
            target: ext1(Hyperfield::Sign),
        }
    }

    pub fn fval(field: FieldKind) -> Self {
        let target = ext1(Hyperfield::Field(field.clone()));
        HomDescriptor {
            kind: HomKind::FVal,
            source: Domain::Series(field),
            target,
        }
    }

    pub fn phval() -> Self {
        HomDescriptor {
            kind: HomKind::PhVal,
            source: Domain::Series(FieldKind::Gaussian),
            target: ext1(Hyperfield::Phase),
        }
    }

    /// Projection between quotients of `GF(q)`; an empty `u1` means `GF(q)` itself.
    pub fn quotient_map(q: u64, u1: &[i64], u2: &[i64]) -> Result<Self> {
        let target = Hyperfield::quotient(q, u2)?;
        let source = if u1.is_empty() {
            Hyperfield::gf(q)?
        } else {
            Hyperfield::quotient(q, u1)?
        };
        if let (Hyperfield::Quotient(s), Hyperfield::Quotient(t)) = (&source, &target) {
            if !s.subgroup().iter().all(|u| t.subgroup().contains(u)) {
                return Err(Error::NotSubgroup(
                    "source subgroup is not contained in the target subgroup".into(),
                ));
            }
        }
        Ok(HomDescriptor {
            kind: HomKind::Quotient,
            source: Domain::Hyper(source),
            target,
        })
    }

    pub fn extended(f: HomDescriptor, rank: usize) -> Result<Self> {
        let src = match &f.source {
            Domain::Hyper(h) => h.clone(),
            Domain::Series(_) => {
                return Err(Error::Unsupported(
                    "extending a homomorphism out of a series field".into(),
                ))
            }
        };
        if src.rank().is_some() || f.target.rank().is_some() {
            return Err(Error::Unsupported(
                "extending a homomorphism between extensions".into(),
            ));
        }
        let target = Hyperfield::extension(f.target.clone(), rank);
        Ok(HomDescriptor {
            kind: HomKind::Extended(Box::new(f)),
            source: Domain::Hyper(Hyperfield::extension(src, rank)),
            target,
        })
    }

    pub fn composite(parts: Vec<HomDescriptor>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Unsupported("empty composite".into()))?;
        for w in parts.windows(2) {
            if w[1].source != Domain::Hyper(w[0].target.clone()) {
                return Err(Error::KindMismatch(format!(
                    "{} does not feed {}",
                    w[0], w[1]
                )));
            }
        }
        let (source, target) = (first.source.clone(), parts.last().unwrap().target.clone());
        Ok(HomDescriptor {
            kind: HomKind::Composite(parts),
            source,
            target,
        })
    }

    pub fn name(&self) -> String {
        match &self.kind {
            HomKind::Identity => "id".into(),
            HomKind::Trivial => "omega".into(),
            HomKind::Sign => "sgn".into(),
            HomKind::Val => "val".into(),
            HomKind::SVal => "sval".into(),
            HomKind::FVal => "fval".into(),
            HomKind::PhVal => "phval".into(),
            HomKind::Extended(f) => format!("{}^G", f.name()),
            HomKind::Quotient => "proj".into(),
            HomKind::Composite(ps) => ps
                .iter()
                .rev()
                .map(|p| p.name())
                .collect::<Vec<_>>()
                .join("∘"),
        }
    }

    /// Image of a hyperfield element.
    pub fn apply_elem(&self, a: &HElem) -> Result<HElem> {
        if a.is_zero() {
            return Ok(HElem::Zero);
        }
        match (&self.kind, &self.source) {
            (HomKind::Identity, _) => Ok(a.clone()),
            (HomKind::Trivial, _) => Ok(HElem::One),
            (HomKind::Sign, _) => match a {
                HElem::Rat(r) => Ok(sign_elem(r)),
                _ => Err(Error::KindMismatch(format!("sgn of {a}"))),
            },
            (HomKind::Quotient, Domain::Hyper(src)) => {
                let t = quotient_table(&self.target);
                match (src, a) {
                    (Hyperfield::Field(_), HElem::Fin(v)) => Ok(HElem::Coset(t.coset_of(*v))),
                    (Hyperfield::Quotient(s), HElem::Coset(c)) => {
                        Ok(HElem::Coset(t.coset_of(s.rep(*c))))
                    }
                    _ => Err(Error::KindMismatch(format!("projection of {a}"))),
                }
            }
            (HomKind::Extended(f), _) => match a {
                HElem::Pair(c, g) => Ok(HElem::pair(f.apply_elem(c)?, g.clone())),
                _ => Err(Error::KindMismatch(format!(
                    "{a} is not an extension element"
                ))),
            },
            (HomKind::Composite(parts), _) => {
                parts.iter().try_fold(a.clone(), |x, f| f.apply_elem(&x))
            }
            _ => Err(Error::KindMismatch(format!(
                "{} takes series, not {a}",
                self.name()
            ))),
        }
    }

    /// Image of a series.
    pub fn apply_series(&self, s: &SeriesTrunc) -> Result<HElem> {
        if let HomKind::Composite(parts) = &self.kind {
            let first = parts[0].apply_series(s)?;
            return parts[1..].iter().try_fold(first, |x, f| f.apply_elem(&x));
        }
        if s.is_zero() {
            return Ok(HElem::Zero);
        }
        let (c, g) = s.leading_term()?;
        let g = GroupElem::from_rational(g);
        match &self.kind {
            HomKind::Trivial => Ok(HElem::One),
            HomKind::Val => Ok(HElem::pair(HElem::One, g)),
            HomKind::SVal => match &c {
                HElem::Rat(r) => Ok(HElem::pair(sign_elem(r), g)),
                _ => Err(Error::KindMismatch(
                    "sval needs rational coefficients".into(),
                )),
            },
            HomKind::FVal => Ok(HElem::pair(c, g)),
            HomKind::PhVal => Ok(HElem::pair(HElem::Dir(phase_of(&c)?), g)),
            _ => Err(Error::KindMismatch(format!(
                "{} does not act on series",
                self.name()
            ))),
        }
    }

    pub fn takes_series(&self) -> bool {
        matches!(self.source, Domain::Series(_))
    }
}

impl fmt::Display for HomDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} → {}",
            self.name(),
            self.source.key(),
            self.target.key()
        )
    }
}

fn quotient_table(h: &Hyperfield) -> &QuotientTable {
    match h {
        Hyperfield::Quotient(t) => t,
        _ => unreachable!("projection targets are quotients"),
    }
}

/// Primitive direction of a nonzero Gaussian (or rational) coefficient.
pub fn phase_of(c: &HElem) -> Result<Dir> {
    match c {
        HElem::Gauss(g) => Dir::from_rationals(&g.re, &g.im).ok_or(Error::NoInverseOfZero),
        HElem::Rat(r) => {
            Dir::from_rationals(r, &Rational::from_integer(0.into())).ok_or(Error::NoInverseOfZero)
        }
        _ => Err(Error::KindMismatch(format!("phase of {c}"))),
    }
}

/// A source value: a hyperfield element or a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceValue {
    Elem(HElem),
    Series(SeriesTrunc),
}

impl HomDescriptor {
    pub fn apply(&self, v: &SourceValue) -> Result<HElem> {
        match v {
            SourceValue::Elem(a) => self.apply_elem(a),
            SourceValue::Series(s) => self.apply_series(s),
        }
    }

    fn sample_source<R: Rng + ?Sized>(&self, rng: &mut R) -> SourceValue {
        match &self.source {
            Domain::Hyper(h) => SourceValue::Elem(h.sample(rng, 0.1)),
            Domain::Series(k) => {
                let n = rng.gen_range(1..4);
                SourceValue::Series(SeriesTrunc::random(k, rng, n, 2, -2, 4))
            }
        }
    }

    /// Source values mapping to `alpha`, for the sum-lifting condition.
    fn preimages<R: Rng + ?Sized>(&self, alpha: &HElem, rng: &mut R, n: usize) -> Vec<SourceValue> {
        if let Domain::Hyper(h) = &self.source {
            if let Some(els) = h.elements() {
                return els
                    .into_iter()
                    .filter(|e| self.apply_elem(e).ok().as_ref() == Some(alpha))
                    .map(SourceValue::Elem)
                    .collect();
            }
        }
        let mut out = Vec::new();
        if let (HomKind::Sign, HElem::Sign(s)) = (&self.kind, alpha) {
            for (p, q) in [(1, 1), (2, 1), (1, 2), (3, 1)] {
                out.push(SourceValue::Elem(HElem::from_rational(rat::ratio(
                    p * *s as i64,
                    q,
                ))));
            }
        }
        for _ in 0..n * 20 {
            let cand = match (&self.kind, &self.source, alpha) {
                (HomKind::Sign, _, HElem::Sign(s)) => {
                    let r = rat::ratio(rng.gen_range(1..50), rng.gen_range(1..10));
                    SourceValue::Elem(HElem::from_rational(r * rat::rat(*s as i64)))
                }
                (
                    HomKind::Val | HomKind::SVal | HomKind::FVal | HomKind::PhVal,
                    Domain::Series(k),
                    HElem::Pair(c, g),
                ) => {
                    let lead = match (&self.kind, c.as_ref()) {
                        (HomKind::FVal, c) => c.clone(),
                        (HomKind::SVal, HElem::Sign(s)) => HElem::from_rational(
                            rat::ratio(rng.gen_range(1..9), rng.gen_range(1..4))
                                * rat::rat(*s as i64),
                        ),
                        (HomKind::PhVal, HElem::Dir(d)) => {
                            let scale = rat::ratio(rng.gen_range(1..9), rng.gen_range(1..4));
                            HElem::from_gauss(Gauss::new(
                                Rational::from_integer(d.x().clone()) * &scale,
                                Rational::from_integer(d.y().clone()) * &scale,
                            ))
                        }
                        _ => k.sample_unit(rng),
                    };
                    let extra = rng.gen_range(0..3);
                    let tail = SeriesTrunc::random(k, rng, extra, 2, 0, 2)
                        .mul(&SeriesTrunc::t_pow(k.clone(), g.lead() + rat::ratio(1, 2)))
                        .expect("same field");
                    let s = SeriesTrunc::monomial(k.clone(), lead, g.lead().clone())
                        .add(&tail)
                        .expect("same field");
                    SourceValue::Series(s)
                }
                _ => self.sample_source(rng),
            };
            if self.apply(&cand).ok().as_ref() == Some(alpha) {
                out.push(cand);
                if out.len() >= n {
                    break;
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub hom: String,
    pub trials: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn source_sum(f: &HomDescriptor, a: &SourceValue, b: &SourceValue) -> Result<Vec<SourceValue>> {
    match (&f.source, a, b) {
        (_, SourceValue::Series(x), SourceValue::Series(y)) => {
            Ok(vec![SourceValue::Series(x.add(y)?)])
        }
        (Domain::Hyper(h), SourceValue::Elem(x), SourceValue::Elem(y)) => {
            let s = h.add_elems(x, y);
            Ok(match &s {
                SetValue::Finite(items) => items.iter().cloned().map(SourceValue::Elem).collect(),
                _ => {
                    let mut rng = ChaCha8Rng::seed_from_u64(0);
                    (0..8)
                        .filter_map(|_| sample_member(h, &s, &mut rng))
                        .map(SourceValue::Elem)
                        .collect()
                }
            })
        }
        _ => Err(Error::KindMismatch("mixed source values".into())),
    }
}

fn source_mul(f: &HomDescriptor, a: &SourceValue, b: &SourceValue) -> Result<SourceValue> {
    match (&f.source, a, b) {
        (_, SourceValue::Series(x), SourceValue::Series(y)) => Ok(SourceValue::Series(x.mul(y)?)),
        (Domain::Hyper(h), SourceValue::Elem(x), SourceValue::Elem(y)) => {
            Ok(SourceValue::Elem(h.mul(x, y)))
        }
        _ => Err(Error::KindMismatch("mixed source values".into())),
    }
}

/// Checks multiplicativity and `f(a ⊞ b) ⊆ f(a) ⊞ f(b)` on samples; with
/// `lift_sums`, also that every `γ ∈ α ⊞ β` is `f(a + b)` for some
/// preimages `a` of `α` and `b` of `β`.
pub fn hom_check(f: &HomDescriptor, trials: usize, seed: u64, lift_sums: bool) -> HomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tgt = &f.target;
    let mut violations = Vec::new();
    let mut skipped = 0;
    for _ in 0..trials {
        let a = f.sample_source(&mut rng);
        let b = if rng.gen_bool(0.3) {
            // near-cancelling partner
            match (&a, f.sample_source(&mut rng)) {
                (SourceValue::Series(x), SourceValue::Series(y)) => {
                    let shift = SeriesTrunc::t_pow(x.field().clone(), rat::rat(3));
                    SourceValue::Series(
                        x.neg()
                            .add(&y.mul(&shift).expect("same field"))
                            .expect("same field"),
                    )
                }
                (SourceValue::Elem(x), _) => match &f.source {
                    Domain::Hyper(h) => SourceValue::Elem(h.neg(x)),
                    Domain::Series(_) => unreachable!(),
                },
                (_, other) => other,
            }
        } else {
            f.sample_source(&mut rng)
        };
        let (fa, fb) = match (f.apply(&a), f.apply(&b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => {
                skipped += 1;
                continue;
            }
        };
        match source_mul(f, &a, &b).and_then(|p| f.apply(&p)) {
            Ok(fab) if fab == tgt.mul(&fa, &fb) => {}
            Ok(fab) => violations.push(Violation {
                axiom: "multiplicativity".into(),
                instance: format!(
                    "f(ab) = {} but f(a)f(b) = {}",
                    tgt.fmt_elem(&fab),
                    tgt.fmt_elem(&tgt.mul(&fa, &fb))
                ),
            }),
            Err(_) => skipped += 1,
        }
        let bound = tgt.add_elems(&fa, &fb);
        match source_sum(f, &a, &b) {
            Ok(sums) => {
                for s in sums {
                    match f.apply(&s) {
                        Ok(fs) if tgt.set_contains(&bound, &fs) => {}
                        Ok(fs) => violations.push(Violation {
                            axiom: "sum containment".into(),
                            instance: format!("{} ∉ {}", tgt.fmt_elem(&fs), tgt.fmt_set(&bound)),
                        }),
                        Err(_) => skipped += 1,
                    }
                }
            }
            Err(_) => skipped += 1,
        }
    }
    if lift_sums {
        violations.extend(lift_condition(f, &mut rng, trials));
    }
    HomReport {
        hom: f.to_string(),
        trials,
        skipped,
        violations,
    }
}

fn lift_condition<R: Rng + ?Sized>(
    f: &HomDescriptor,
    rng: &mut R,
    trials: usize,
) -> Vec<Violation> {
    let tgt = &f.target;
    // exhaustive over finite targets; sampled pairs otherwise
    let pairs: Vec<(HElem, HElem)> = match tgt.elements() {
        Some(els) => els
            .iter()
            .flat_map(|a| els.iter().map(move |b| (a.clone(), b.clone())))
            .collect(),
        None => (0..trials.min(50))
            .map(|_| (tgt.sample_unit(rng), tgt.sample_unit(rng)))
            .filter(|(a, b)| *b != tgt.neg(a))
            .collect(),
    };
    let mut out = Vec::new();
    for (alpha, beta) in pairs {
        let sum = tgt.add_elems(&alpha, &beta);
        let gammas: Vec<HElem> = match &sum {
            SetValue::Finite(items) => items.iter().cloned().collect(),
            _ => (0..4)
                .filter_map(|_| sample_member(tgt, &sum, rng))
                .collect(),
        };
        let pa = f.preimages(&alpha, rng, 12);
        let pb = f.preimages(&beta, rng, 12);
        for gamma in gammas {
            let found = pa.iter().any(|a| {
                pb.iter().any(|b| {
                    source_sum(f, a, b)
                        .map(|ss| ss.iter().any(|s| f.apply(s).ok().as_ref() == Some(&gamma)))
                        .unwrap_or(false)
                })
            });
            if !found {
                out.push(Violation {
                    axiom: "sum lifting".into(),
                    instance: format!(
                        "{} ∈ {} ⊞ {} has no preimages a, b with f(a+b) = {}",
                        tgt.fmt_elem(&gamma),
                        tgt.fmt_elem(&alpha),
                        tgt.fmt_elem(&beta),
                        tgt.fmt_elem(&gamma)
                    ),
                });
            }
        }
    }
    out
}
