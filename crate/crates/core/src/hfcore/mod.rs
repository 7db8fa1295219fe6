//! Hyperfields with exact set-valued addition.
//!
//! Every hypersum is a [`SetValue`] in canonical form, so two sums are equal
//! as sets exactly when they are equal as values.

pub mod axioms;
pub mod finite;
pub mod gauss;
pub mod phase;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc as Shared;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::extension::{self, ExtSet};
use crate::ordgroup::GroupElem;
use crate::rat::{self, Rational};

pub use axioms::{check_axioms, AxiomReport, SampleMode, Violation};
pub use finite::{FiniteField, QuotientTable};
pub use gauss::Gauss;
pub use phase::{Arc, ArcSet, Cone, Dir, Flavor};

/// Exact fields usable as hyperfields and as series coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    Rationals,
    Gaussian,
    Finite(FiniteField),
}

impl FieldKind {
    pub fn gf(q: u64) -> Result<Self> {
        Ok(FieldKind::Finite(FiniteField::new(q)?))
    }

    pub fn key(&self) -> String {
        match self {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Gaussian => "Qi".into(),
            FieldKind::Finite(f) => format!("GF{}", f.order()),
        }
    }

    pub fn one(&self) -> HElem {
        match self {
            FieldKind::Rationals => HElem::Rat(Rational::one()),
            FieldKind::Gaussian => HElem::Gauss(Gauss::real(Rational::one())),
            FieldKind::Finite(_) => HElem::Fin(1),
        }
    }

    /// Embeds an integer; `Zero` when it vanishes in the field.
    pub fn from_int(&self, n: i64) -> HElem {
        self.from_rational(&rat::rat(n))
            .expect("integers embed in every field")
    }

    /// Embeds a rational; fails when the denominator vanishes.
    pub fn from_rational(&self, r: &Rational) -> Result<HElem> {
        Ok(match self {
            FieldKind::Rationals => HElem::from_rational(r.clone()),
            FieldKind::Gaussian => HElem::from_gauss(Gauss::real(r.clone())),
            FieldKind::Finite(f) => {
                let reduce = |n: &num_bigint::BigInt| {
                    let p = num_bigint::BigInt::from(f.characteristic());
                    let m = ((n % &p) + &p) % &p;
                    f.from_int(i64::try_from(m).expect("reduced residue fits"))
                };
                let (n, d) = (reduce(r.numer()), reduce(r.denom()));
                let v = f.mul(n, f.inv(d).map_err(|_| Error::DivisionByZero)?);
                if v == 0 {
                    HElem::Zero
                } else {
                    HElem::Fin(v)
                }
            }
        })
    }

    pub fn is_element(&self, a: &HElem) -> bool {
        match (self, a) {
            (_, HElem::Zero) => true,
            (FieldKind::Rationals, HElem::Rat(r)) => !r.is_zero(),
            (FieldKind::Gaussian, HElem::Gauss(g)) => !g.is_zero(),
            (FieldKind::Finite(f), HElem::Fin(v)) => *v > 0 && *v < f.order(),
            _ => false,
        }
    }

    pub fn add(&self, a: &HElem, b: &HElem) -> HElem {
        match (a, b) {
            (HElem::Zero, x) | (x, HElem::Zero) => x.clone(),
            (HElem::Rat(x), HElem::Rat(y)) => HElem::from_rational(x + y),
            (HElem::Gauss(x), HElem::Gauss(y)) => HElem::from_gauss(x.add(y)),
            (HElem::Fin(x), HElem::Fin(y)) => match self {
                FieldKind::Finite(f) => HElem::from_fin(f.add(*x, *y)),
                _ => panic!("finite-field element in {}", self.key()),
            },
            _ => panic!("mixed field elements {a} and {b}"),
        }
    }

    pub fn neg(&self, a: &HElem) -> HElem {
        match a {
            HElem::Zero => HElem::Zero,
            HElem::Rat(x) => HElem::Rat(-x),
            HElem::Gauss(x) => HElem::Gauss(x.neg()),
            HElem::Fin(x) => match self {
                FieldKind::Finite(f) => HElem::Fin(f.neg(*x)),
                _ => panic!("finite-field element in {}", self.key()),
            },
            _ => panic!("{a} is not a field element"),
        }
    }

    pub fn sub(&self, a: &HElem, b: &HElem) -> HElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        match (a, b) {
            (HElem::Zero, _) | (_, HElem::Zero) => HElem::Zero,
            (HElem::Rat(x), HElem::Rat(y)) => HElem::Rat(x * y),
            (HElem::Gauss(x), HElem::Gauss(y)) => HElem::Gauss(x.mul(y)),
            (HElem::Fin(x), HElem::Fin(y)) => match self {
                FieldKind::Finite(f) => HElem::Fin(f.mul(*x, *y)),
                _ => panic!("finite-field element in {}", self.key()),
            },
            _ => panic!("mixed field elements {a} and {b}"),
        }
    }

    pub fn inv(&self, a: &HElem) -> Result<HElem> {
        match a {
            HElem::Zero => Err(Error::NoInverseOfZero),
            HElem::Rat(x) => Ok(HElem::Rat(x.recip())),
            HElem::Gauss(x) => Ok(HElem::Gauss(x.inv()?)),
            HElem::Fin(x) => match self {
                FieldKind::Finite(f) => Ok(HElem::Fin(f.inv(*x)?)),
                _ => panic!("finite-field element in {}", self.key()),
            },
            _ => panic!("{a} is not a field element"),
        }
    }

    pub fn div(&self, a: &HElem, b: &HElem) -> Result<HElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &HElem, k: i64) -> Result<HElem> {
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    pub fn units(&self) -> Option<Vec<HElem>> {
        match self {
            FieldKind::Finite(f) => Some(f.units().map(HElem::Fin).collect()),
            _ => None,
        }
    }

    pub fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> HElem {
        loop {
            let e = match self {
                FieldKind::Rationals => HElem::from_rational(small_rational(rng)),
                FieldKind::Gaussian => {
                    HElem::from_gauss(Gauss::new(small_rational(rng), small_rational(rng)))
                }
                FieldKind::Finite(f) => HElem::from_fin(rng.gen_range(1..f.order())),
            };
            if !e.is_zero() {
                return e;
            }
        }
    }
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

/// A hyperfield descriptor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Hyperfield {
    Field(FieldKind),
    Krasner,
    Sign,
    WeakSign,
    Phase,
    TropicalPhase,
    Quotient(Shared<QuotientTable>),
    /// `base ⋊ ℚ^rank`; `base` is never itself an extension.
    Extension {
        base: Box<Hyperfield>,
        rank: usize,
    },
}

/// An element of any hyperfield; `Zero` is shared by every kind.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum HElem {
    Zero,
    /// The unit of `K`.
    One,
    /// `±1` in `S` or `W`.
    Sign(i8),
    Rat(Rational),
    Gauss(Gauss),
    Fin(u32),
    Dir(Dir),
    Coset(u32),
    /// `(c, g)` in an extension; `c` is a base unit.
    Pair(Box<HElem>, GroupElem),
}

impl HElem {
    pub fn from_rational(r: Rational) -> HElem {
        if r.is_zero() {
            HElem::Zero
        } else {
            HElem::Rat(r)
        }
    }

    pub fn int(n: i64) -> HElem {
        HElem::from_rational(rat::rat(n))
    }

    pub fn from_gauss(g: Gauss) -> HElem {
        if g.is_zero() {
            HElem::Zero
        } else {
            HElem::Gauss(g)
        }
    }

    pub fn from_fin(v: u32) -> HElem {
        if v == 0 {
            HElem::Zero
        } else {
            HElem::Fin(v)
        }
    }

    pub fn dir(x: i64, y: i64) -> HElem {
        HElem::Dir(Dir::from_i64(x, y).expect("nonzero direction"))
    }

    pub fn pair(c: HElem, g: GroupElem) -> HElem {
        assert!(!c.is_zero(), "extension pairs carry a base unit");
        HElem::Pair(Box::new(c), g)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, HElem::Zero)
    }

    /// Base unit and level of an extension element.
    pub fn as_pair(&self) -> Option<(&HElem, &GroupElem)> {
        match self {
            HElem::Pair(c, g) => Some((c, g)),
            _ => None,
        }
    }

    pub fn level(&self) -> Option<&GroupElem> {
        self.as_pair().map(|(_, g)| g)
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HElem::Zero => write!(f, "0"),
            HElem::One => write!(f, "1"),
            HElem::Sign(s) => write!(f, "{s}"),
            HElem::Rat(r) => write!(f, "{r}"),
            HElem::Gauss(g) => write!(f, "{g}"),
            HElem::Fin(v) => write!(f, "{v}"),
            HElem::Dir(d) => write!(f, "{d}"),
            HElem::Coset(c) => write!(f, "[{c}]"),
            HElem::Pair(c, g) => {
                if g.rank() == 1 {
                    write!(f, "({c}, {g})")
                } else {
                    let gs: Vec<String> = g.coords().iter().map(rat::fmt_rational).collect();
                    write!(f, "({c}, {})", gs.join(", "))
                }
            }
        }
    }
}

/// Canonical result of a hypersum.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SetValue {
    /// Fields (always singletons), `K`, `S`, `W`, finite fields and quotients.
    Finite(BTreeSet<HElem>),
    /// `P` and `Φ`.
    Arcs(ArcSet),
    /// Extensions.
    Ext(ExtSet),
}

impl SetValue {
    pub fn empty() -> SetValue {
        SetValue::Finite(BTreeSet::new())
    }

    pub fn finite(items: impl IntoIterator<Item = HElem>) -> SetValue {
        SetValue::Finite(items.into_iter().collect())
    }

    pub fn as_finite(&self) -> Option<&BTreeSet<HElem>> {
        match self {
            SetValue::Finite(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_ext(&self) -> Option<&ExtSet> {
        match self {
            SetValue::Ext(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_arcs(&self) -> Option<&ArcSet> {
        match self {
            SetValue::Arcs(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for SetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetValue::Finite(s) => {
                let items: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            SetValue::Arcs(a) => write!(f, "{a}"),
            SetValue::Ext(e) => write!(f, "{e}"),
        }
    }
}

impl Hyperfield {
    pub fn rationals() -> Self {
        Hyperfield::Field(FieldKind::Rationals)
    }

    pub fn gaussian() -> Self {
        Hyperfield::Field(FieldKind::Gaussian)
    }

    pub fn gf(q: u64) -> Result<Self> {
        Ok(Hyperfield::Field(FieldKind::gf(q)?))
    }

    /// `GF(q)/U`; fails unless `U` is a multiplicative subgroup.
    pub fn quotient(q: u64, units: &[i64]) -> Result<Self> {
        Ok(Hyperfield::Quotient(Shared::new(QuotientTable::build(
            q, units,
        )?)))
    }

    /// `base ⋊ ℚ^rank`, flattening nested extensions.
    pub fn extension(base: Hyperfield, rank: usize) -> Self {
        assert!(rank >= 1, "extension rank must be positive");
        match base {
            Hyperfield::Extension { base, rank: r } => Hyperfield::Extension {
                base,
                rank: r + rank,
            },
            b => Hyperfield::Extension {
                base: Box::new(b),
                rank,
            },
        }
    }

    pub fn base(&self) -> Option<&Hyperfield> {
        match self {
            Hyperfield::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            Hyperfield::Extension { rank, .. } => Some(*rank),
            _ => None,
        }
    }

    pub fn field_kind(&self) -> Option<&FieldKind> {
        match self {
            Hyperfield::Field(k) => Some(k),
            _ => None,
        }
    }

    pub fn phase_flavor(&self) -> Option<Flavor> {
        match self {
            Hyperfield::Phase => Some(Flavor::Open),
            Hyperfield::TropicalPhase => Some(Flavor::Closed),
            _ => None,
        }
    }

    /// Short string key, e.g. `GF7/{1,2,4}` or `TR`.
    pub fn key(&self) -> String {
        match self {
            Hyperfield::Field(k) => k.key(),
            Hyperfield::Krasner => "K".into(),
            Hyperfield::Sign => "S".into(),
            Hyperfield::WeakSign => "W".into(),
            Hyperfield::Phase => "P".into(),
            Hyperfield::TropicalPhase => "Phi".into(),
            Hyperfield::Quotient(t) => {
                let us: Vec<String> = t.subgroup().iter().map(|u| u.to_string()).collect();
                format!("GF{}/{{{}}}", t.field().order(), us.join(","))
            }
            Hyperfield::Extension { base, rank } => match (base.as_ref(), *rank) {
                (Hyperfield::Krasner, 1) => "T".into(),
                (Hyperfield::Krasner, k) => format!("T^{k}"),
                (Hyperfield::Sign, 1) => "TR".into(),
                (Hyperfield::TropicalPhase, 1) => "TC".into(),
                (b, 1) => format!("{}⋊Q", b.key()),
                (b, k) => format!("{}⋊Q^{k}", b.key()),
            },
        }
    }

    pub fn one(&self) -> HElem {
        match self {
            Hyperfield::Field(k) => k.one(),
            Hyperfield::Krasner => HElem::One,
            Hyperfield::Sign | Hyperfield::WeakSign => HElem::Sign(1),
            Hyperfield::Phase | Hyperfield::TropicalPhase => HElem::Dir(Dir::one()),
            Hyperfield::Quotient(t) => HElem::Coset(t.coset_of(1)),
            Hyperfield::Extension { base, rank } => HElem::pair(base.one(), GroupElem::zero(*rank)),
        }
    }

    /// `−1`, the unique element with `0 ∈ 1 ⊞ (−1)`.
    pub fn minus_one(&self) -> HElem {
        self.neg(&self.one())
    }

    pub fn is_element(&self, a: &HElem) -> bool {
        match (self, a) {
            (_, HElem::Zero) => true,
            (Hyperfield::Field(k), _) => k.is_element(a),
            (Hyperfield::Krasner, HElem::One) => true,
            (Hyperfield::Sign | Hyperfield::WeakSign, HElem::Sign(s)) => *s == 1 || *s == -1,
            (Hyperfield::Phase | Hyperfield::TropicalPhase, HElem::Dir(_)) => true,
            (Hyperfield::Quotient(t), HElem::Coset(c)) => *c > 0 && (*c as usize) < t.size(),
            (Hyperfield::Extension { base, rank }, HElem::Pair(c, g)) => {
                g.rank() == *rank && !c.is_zero() && base.is_element(c)
            }
            _ => false,
        }
    }

    pub fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        if a.is_zero() || b.is_zero() {
            return HElem::Zero;
        }
        match (self, a, b) {
            (Hyperfield::Field(k), _, _) => k.mul(a, b),
            (Hyperfield::Krasner, _, _) => HElem::One,
            (Hyperfield::Sign | Hyperfield::WeakSign, HElem::Sign(x), HElem::Sign(y)) => {
                HElem::Sign(x * y)
            }
            (Hyperfield::Phase | Hyperfield::TropicalPhase, HElem::Dir(x), HElem::Dir(y)) => {
                HElem::Dir(x.mul(y))
            }
            (Hyperfield::Quotient(t), HElem::Coset(x), HElem::Coset(y)) => {
                HElem::Coset(t.mul(*x, *y))
            }
            (Hyperfield::Extension { base, .. }, HElem::Pair(c1, g1), HElem::Pair(c2, g2)) => {
                HElem::pair(base.mul(c1, c2), g1 + g2)
            }
            _ => panic!("{a} and {b} are not both elements of {}", self.key()),
        }
    }

    pub fn inv(&self, a: &HElem) -> Result<HElem> {
        match (self, a) {
            (_, HElem::Zero) => Err(Error::NoInverseOfZero),
            (Hyperfield::Field(k), _) => k.inv(a),
            (Hyperfield::Krasner, _) => Ok(HElem::One),
            (Hyperfield::Sign | Hyperfield::WeakSign, HElem::Sign(s)) => Ok(HElem::Sign(*s)),
            (Hyperfield::Phase | Hyperfield::TropicalPhase, HElem::Dir(d)) => {
                Ok(HElem::Dir(d.inv()))
            }
            (Hyperfield::Quotient(t), HElem::Coset(c)) => Ok(HElem::Coset(t.inv(*c)?)),
            (Hyperfield::Extension { base, .. }, HElem::Pair(c, g)) => {
                Ok(HElem::pair(base.inv(c)?, -g))
            }
            _ => panic!("{a} is not an element of {}", self.key()),
        }
    }

    pub fn div(&self, a: &HElem, b: &HElem) -> Result<HElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn neg(&self, a: &HElem) -> HElem {
        match (self, a) {
            (_, HElem::Zero) => HElem::Zero,
            (Hyperfield::Field(k), _) => k.neg(a),
            (Hyperfield::Krasner, _) => HElem::One,
            (Hyperfield::Sign | Hyperfield::WeakSign, HElem::Sign(s)) => HElem::Sign(-s),
            (Hyperfield::Phase | Hyperfield::TropicalPhase, HElem::Dir(d)) => HElem::Dir(d.neg()),
            (Hyperfield::Quotient(t), HElem::Coset(c)) => HElem::Coset(t.neg(*c)),
            (Hyperfield::Extension { base, .. }, HElem::Pair(c, g)) => {
                HElem::pair(base.neg(c), g.clone())
            }
            _ => panic!("{a} is not an element of {}", self.key()),
        }
    }

    /// `a^k`; negative powers of zero are undefined.
    pub fn pow(&self, a: &HElem, k: i64) -> Result<HElem> {
        if a.is_zero() {
            return match k {
                k if k < 0 => Err(Error::ZeroToNegativePower),
                0 => Ok(self.one()),
                _ => Ok(HElem::Zero),
            };
        }
        let base = if k < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    pub fn singleton(&self, a: &HElem) -> SetValue {
        match self {
            Hyperfield::Phase | Hyperfield::TropicalPhase => SetValue::Arcs(match a {
                HElem::Dir(d) => ArcSet::point(d.clone()),
                _ => ArcSet::zero(),
            }),
            Hyperfield::Extension { base, .. } => SetValue::Ext(ExtSet::singleton(base, a)),
            _ => SetValue::finite([a.clone()]),
        }
    }

    /// `a ⊞ b` for single elements.
    pub fn add_elems(&self, a: &HElem, b: &HElem) -> SetValue {
        if matches!(
            self,
            Hyperfield::Phase | Hyperfield::TropicalPhase | Hyperfield::Extension { .. }
        ) {
            return self
                .hyperadd(&self.singleton(a), &self.singleton(b))
                .expect("same kind");
        }
        if a.is_zero() {
            return self.singleton(b);
        }
        if b.is_zero() {
            return self.singleton(a);
        }
        match (self, a, b) {
            (Hyperfield::Field(k), _, _) => SetValue::finite([k.add(a, b)]),
            (Hyperfield::Krasner, _, _) => SetValue::finite([HElem::Zero, HElem::One]),
            (Hyperfield::Sign, HElem::Sign(x), HElem::Sign(y)) => {
                if x == y {
                    SetValue::finite([a.clone()])
                } else {
                    SetValue::finite([HElem::Zero, HElem::Sign(-1), HElem::Sign(1)])
                }
            }
            (Hyperfield::WeakSign, HElem::Sign(x), HElem::Sign(y)) => {
                if x == y {
                    SetValue::finite([HElem::Sign(-1), HElem::Sign(1)])
                } else {
                    SetValue::finite([HElem::Zero, HElem::Sign(-1), HElem::Sign(1)])
                }
            }
            (Hyperfield::Quotient(t), HElem::Coset(x), HElem::Coset(y)) => {
                SetValue::finite(t.add(*x, *y).iter().map(|&c| {
                    if c == 0 {
                        HElem::Zero
                    } else {
                        HElem::Coset(c)
                    }
                }))
            }
            _ => panic!("{a} and {b} are not both elements of {}", self.key()),
        }
    }

    /// `A ⊞ B = ⋃ a ⊞ b`.
    pub fn hyperadd(&self, a: &SetValue, b: &SetValue) -> Result<SetValue> {
        match (self, a, b) {
            (
                Hyperfield::Phase | Hyperfield::TropicalPhase,
                SetValue::Arcs(x),
                SetValue::Arcs(y),
            ) => Ok(SetValue::Arcs(x.add(y, self.phase_flavor().unwrap()))),
            (Hyperfield::Extension { base, .. }, SetValue::Ext(x), SetValue::Ext(y)) => {
                Ok(SetValue::Ext(extension::ext_hyperadd(base, x, y)?))
            }
            (
                Hyperfield::Field(_)
                | Hyperfield::Krasner
                | Hyperfield::Sign
                | Hyperfield::WeakSign
                | Hyperfield::Quotient(_),
                SetValue::Finite(x),
                SetValue::Finite(y),
            ) => {
                let mut out = BTreeSet::new();
                for p in x {
                    for q in y {
                        if let SetValue::Finite(s) = self.add_elems(p, q) {
                            out.extend(s);
                        }
                    }
                }
                Ok(SetValue::Finite(out))
            }
            _ => Err(Error::KindMismatch(format!(
                "set values {a} and {b} over {}",
                self.key()
            ))),
        }
    }

    pub fn set_contains(&self, s: &SetValue, a: &HElem) -> bool {
        match s {
            SetValue::Finite(items) => items.contains(a),
            SetValue::Arcs(arcs) => match a {
                HElem::Zero => arcs.contains_zero(),
                HElem::Dir(d) => arcs.contains(d),
                _ => false,
            },
            SetValue::Ext(e) => match self {
                Hyperfield::Extension { base, .. } => e.contains(base, a),
                _ => false,
            },
        }
    }

    pub fn set_contains_zero(&self, s: &SetValue) -> bool {
        self.set_contains(s, &HElem::Zero)
    }

    /// Left fold `a1 ⊞ (a2 ⊞ (… ⊞ an))` over singletons.
    pub fn nary_sum(&self, terms: &[HElem]) -> Result<SetValue> {
        let (last, rest) = terms.split_last().ok_or(Error::EmptySum)?;
        let mut acc = self.singleton(last);
        for t in rest.iter().rev() {
            acc = self.hyperadd(&self.singleton(t), &acc)?;
        }
        Ok(acc)
    }

    /// `a ⊙ S`.
    pub fn scale_set(&self, a: &HElem, s: &SetValue) -> SetValue {
        if a.is_zero() {
            return self.singleton(&HElem::Zero);
        }
        match (s, a) {
            (SetValue::Finite(items), _) => SetValue::finite(items.iter().map(|x| self.mul(a, x))),
            (SetValue::Arcs(arcs), HElem::Dir(d)) => {
                SetValue::Arcs(arcs.rotate(d, self.phase_flavor().unwrap()))
            }
            (SetValue::Ext(e), _) => match self {
                Hyperfield::Extension { base, .. } => SetValue::Ext(e.scale(base, a)),
                _ => panic!("extension set over {}", self.key()),
            },
            _ => panic!("cannot scale {s} by {a}"),
        }
    }

    /// All elements, for finite hyperfields.
    pub fn elements(&self) -> Option<Vec<HElem>> {
        let mut out = vec![HElem::Zero];
        match self {
            Hyperfield::Field(k) => out.extend(k.units()?),
            Hyperfield::Krasner => out.push(HElem::One),
            Hyperfield::Sign | Hyperfield::WeakSign => {
                out.extend([HElem::Sign(-1), HElem::Sign(1)])
            }
            Hyperfield::Quotient(t) => out.extend((1..t.size() as u32).map(HElem::Coset)),
            _ => return None,
        }
        Some(out)
    }

    pub fn is_finite(&self) -> bool {
        self.elements().is_some()
    }

    /// Whether `a ⊞ b` is a singleton unless `b = −a`: by table scan for
    /// finite hyperfields, structurally otherwise.
    pub fn is_stringent(&self) -> bool {
        if let Some(els) = self.elements() {
            return els.iter().all(|a| {
                els.iter().all(|b| {
                    let single = self
                        .add_elems(a, b)
                        .as_finite()
                        .is_some_and(|s| s.len() == 1);
                    single || *b == self.neg(a)
                })
            });
        }
        match self {
            Hyperfield::Field(_) => true,
            Hyperfield::Phase | Hyperfield::TropicalPhase => false,
            Hyperfield::Extension { base, .. } => base.is_stringent(),
            _ => unreachable!("finite kinds are scanned"),
        }
    }

    /// Random element; `zero_weight` in `[0,1]` biases toward zero.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, zero_weight: f64) -> HElem {
        if rng.gen_bool(zero_weight) {
            return HElem::Zero;
        }
        self.sample_unit(rng)
    }

    pub fn sample_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> HElem {
        match self {
            Hyperfield::Field(k) => k.sample_unit(rng),
            Hyperfield::Phase | Hyperfield::TropicalPhase => loop {
                let (x, y) = (rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4));
                if let Some(d) = Dir::from_i64(x, y) {
                    return HElem::Dir(d);
                }
            },
            Hyperfield::Extension { base, rank } => {
                let g = GroupElem::new(
                    (0..*rank)
                        .map(|_| rat::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2)))
                        .collect(),
                );
                HElem::pair(base.sample_unit(rng), g)
            }
            _ => {
                let els = self.elements().expect("finite");
                els[rng.gen_range(1..els.len())].clone()
            }
        }
    }

    /// Context-aware text: extension zero prints as `inf`.
    pub fn fmt_elem(&self, a: &HElem) -> String {
        match (self, a) {
            (Hyperfield::Extension { .. }, HElem::Zero) => "inf".into(),
            (Hyperfield::Quotient(t), HElem::Coset(c)) => t.rep(*c).to_string(),
            (Hyperfield::Extension { base, .. }, HElem::Pair(c, g)) => {
                let gs: Vec<String> = g.coords().iter().map(rat::fmt_rational).collect();
                format!("({}, {})", base.fmt_elem(c), gs.join(", "))
            }
            _ => a.to_string(),
        }
    }

    pub fn fmt_set(&self, s: &SetValue) -> String {
        match (self, s) {
            (_, SetValue::Finite(items)) => {
                let parts: Vec<String> = items.iter().map(|e| self.fmt_elem(e)).collect();
                format!("{{{}}}", parts.join(", "))
            }
            (Hyperfield::Extension { base, .. }, SetValue::Ext(e)) => e.fmt_with(base),
            _ => s.to_string(),
        }
    }
}

impl fmt::Display for Hyperfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// Sign of a nonzero rational as an `S`/`W` element.
pub fn sign_elem(r: &Rational) -> HElem {
    if r.is_positive() {
        HElem::Sign(1)
    } else if r.is_negative() {
        HElem::Sign(-1)
    } else {
        HElem::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64, y: i64) -> HElem {
        HElem::dir(x, y)
    }

    #[test]
    fn products() {
        let s = Hyperfield::Sign;
        assert_eq!(s.mul(&HElem::Sign(-1), &HElem::Sign(-1)), HElem::Sign(1));
        assert_eq!(Hyperfield::Phase.mul(&d(0, 1), &d(0, 1)), d(-1, 0));
        assert_eq!(
            Hyperfield::Krasner.mul(&HElem::One, &HElem::One),
            HElem::One
        );
        assert_eq!(s.mul(&HElem::Zero, &HElem::Sign(1)), HElem::Zero);
    }

    #[test]
    fn inverses() {
        assert_eq!(Hyperfield::Phase.inv(&d(1, 1)).unwrap(), d(1, -1));
        assert_eq!(
            Hyperfield::Sign.inv(&HElem::Sign(-1)).unwrap(),
            HElem::Sign(-1)
        );
        assert_eq!(
            Hyperfield::gf(7).unwrap().inv(&HElem::Fin(3)).unwrap(),
            HElem::Fin(5)
        );
        assert_eq!(
            Hyperfield::Sign.inv(&HElem::Zero),
            Err(Error::NoInverseOfZero)
        );
    }

    #[test]
    fn basic_hypersums() {
        let k = Hyperfield::Krasner;
        assert_eq!(
            k.add_elems(&HElem::One, &HElem::One),
            SetValue::finite([HElem::Zero, HElem::One])
        );
        let s = Hyperfield::Sign;
        assert_eq!(
            s.add_elems(&HElem::Sign(1), &HElem::Sign(-1)),
            SetValue::finite([HElem::Sign(-1), HElem::Zero, HElem::Sign(1)])
        );
        let w = Hyperfield::WeakSign;
        assert_eq!(
            w.add_elems(&HElem::Sign(1), &HElem::Sign(1)),
            SetValue::finite([HElem::Sign(-1), HElem::Sign(1)])
        );
        assert!(!k.set_contains_zero(&k.singleton(&HElem::One)));
        let q = Hyperfield::rationals();
        assert_eq!(
            q.add_elems(&HElem::int(2), &HElem::int(-2)),
            SetValue::finite([HElem::Zero])
        );
    }

    #[test]
    fn half_plane_sums_keep_their_side() {
        let h = Hyperfield::Phase;
        let d = [
            HElem::dir(-2, 3),
            HElem::dir(8, 19),
            HElem::dir(146, -57),
            HElem::dir(-8, -19),
        ];
        let whole = SetValue::Arcs(ArcSet {
            arcs: vec![],
            whole_circle: true,
            zero_included: true,
        });
        assert_eq!(h.nary_sum(&d).unwrap(), whole);
        let half = h.nary_sum(&d[1..]).unwrap();
        assert!(
            h.set_contains(&half, &HElem::dir(1, -1)) && !h.set_contains(&half, &HElem::dir(-1, 1))
        );
    }

    #[test]
    fn phase_sums() {
        let p = Hyperfield::Phase;
        let s = p.add_elems(&d(1, 0), &d(0, 1));
        assert!(p.set_contains(&s, &d(1, 1)));
        assert!(!p.set_contains(&s, &d(1, 0)) && !p.set_contains_zero(&s));
        let anti = p.add_elems(&d(2, 1), &d(-2, -1));
        assert!(p.set_contains_zero(&anti) && p.set_contains(&anti, &d(2, 1)));
        let phi = Hyperfield::TropicalPhase;
        let whole = phi.add_elems(&d(2, 1), &d(-2, -1));
        assert!(phi.set_contains(&whole, &d(0, 1)) && phi.set_contains_zero(&whole));
        assert_eq!(p.add_elems(&d(1, 1), &d(1, 1)), p.singleton(&d(1, 1)));
    }

    #[test]
    fn nary_sums() {
        let s = Hyperfield::Sign;
        let all = SetValue::finite([HElem::Sign(-1), HElem::Zero, HElem::Sign(1)]);
        assert_eq!(
            s.nary_sum(&[HElem::Sign(1), HElem::Sign(1), HElem::Sign(-1)])
                .unwrap(),
            all
        );
        assert_eq!(
            Hyperfield::Krasner.nary_sum(&[HElem::One]).unwrap(),
            SetValue::finite([HElem::One])
        );
        let p = Hyperfield::Phase;
        assert!(p.set_contains_zero(&p.nary_sum(&[d(0, -1), d(-1, 1), d(1, 0)]).unwrap()));
        assert_eq!(s.nary_sum(&[]), Err(Error::EmptySum));
    }

    #[test]
    fn stringency() {
        assert!(Hyperfield::Sign.is_stringent());
        assert!(Hyperfield::Krasner.is_stringent());
        assert!(!Hyperfield::WeakSign.is_stringent());
        assert!(!Hyperfield::Phase.is_stringent());
        assert!(!Hyperfield::TropicalPhase.is_stringent());
        assert!(Hyperfield::rationals().is_stringent());
        assert!(!Hyperfield::quotient(5, &[1, 4]).unwrap().is_stringent());
    }

    #[test]
    fn keys() {
        assert_eq!(
            Hyperfield::quotient(7, &[4, 2, 1]).unwrap().key(),
            "GF7/{1,2,4}"
        );
        assert_eq!(Hyperfield::extension(Hyperfield::Krasner, 2).key(), "T^2");
        assert_eq!(
            Hyperfield::extension(Hyperfield::extension(Hyperfield::rationals(), 1), 1).key(),
            "Q⋊Q^2"
        );
    }
}
