//! Tropical extensions `H ⋊ ℚ^k`.
//!
//! A hypersum in an extension is either `{0}` or a *level set*: units of the
//! base set `B` at one level `g`, plus, when `0 ∈ B`, every element above `g`
//! and zero itself.  Keeping zero inside `B` makes the level algebra exactly
//! the base algebra.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::hfcore::{HElem, Hyperfield, SetValue};
use crate::ordgroup::GroupElem;
use crate::series::hom::{HomDescriptor, HomKind};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtSet {
    ZeroOnly,
    Level {
        level: GroupElem,
        base: Box<SetValue>,
    },
}

impl ExtSet {
    pub fn singleton(base: &Hyperfield, a: &HElem) -> ExtSet {
        match a {
            HElem::Pair(c, g) => ExtSet::Level {
                level: g.clone(),
                base: Box::new(base.singleton(c)),
            },
            _ => ExtSet::ZeroOnly,
        }
    }

    pub fn level(&self) -> Option<&GroupElem> {
        match self {
            ExtSet::Level { level, .. } => Some(level),
            ExtSet::ZeroOnly => None,
        }
    }

    /// Base set with zero stripped; empty for `{0}`.
    pub fn base_set(&self, base: &Hyperfield) -> SetValue {
        match self {
            ExtSet::ZeroOnly => SetValue::empty(),
            ExtSet::Level { base: b, .. } => strip_zero(base, b),
        }
    }

    /// Whether every element above the level, and zero, belongs to the set.
    pub fn tail_above(&self, base: &Hyperfield) -> bool {
        match self {
            ExtSet::ZeroOnly => false,
            ExtSet::Level { base: b, .. } => base.set_contains_zero(b),
        }
    }

    pub fn contains(&self, base: &Hyperfield, a: &HElem) -> bool {
        match (self, a) {
            (ExtSet::ZeroOnly, _) => a.is_zero(),
            (ExtSet::Level { base: b, .. }, HElem::Zero) => base.set_contains_zero(b),
            (ExtSet::Level { level, base: b }, HElem::Pair(c, h)) => match h.cmp(level) {
                Ordering::Equal => base.set_contains(b, c),
                Ordering::Greater => base.set_contains_zero(b),
                Ordering::Less => false,
            },
            _ => false,
        }
    }

    pub fn scale(&self, base: &Hyperfield, a: &HElem) -> ExtSet {
        match (self, a) {
            (ExtSet::Level { level, base: b }, HElem::Pair(c, h)) => ExtSet::Level {
                level: level + h,
                base: Box::new(base.scale_set(c, b)),
            },
            _ => ExtSet::ZeroOnly,
        }
    }

    pub fn fmt_with(&self, base: &Hyperfield) -> String {
        match self {
            ExtSet::ZeroOnly => "{inf}".into(),
            ExtSet::Level { level, .. } => {
                let units = base.fmt_set(&self.base_set(base));
                if self.tail_above(base) {
                    format!("{{level {level}: {units}}} ∪ {{level > {level}}} ∪ {{inf}}")
                } else {
                    format!("{{level {level}: {units}}}")
                }
            }
        }
    }
}

impl fmt::Display for ExtSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtSet::ZeroOnly => write!(f, "{{inf}}"),
            ExtSet::Level { level, base } => write!(f, "{{level {level}: {base}}}"),
        }
    }
}

fn strip_zero(base: &Hyperfield, s: &SetValue) -> SetValue {
    match s {
        SetValue::Finite(items) => SetValue::finite(items.iter().filter(|e| !e.is_zero()).cloned()),
        SetValue::Arcs(a) => {
            let mut a = a.clone();
            a.zero_included = false;
            SetValue::Arcs(a)
        }
        SetValue::Ext(_) => {
            unreachable!("extension bases are flattened; {base} has no nested levels")
        }
    }
}

/// `A ⊞ B`: the lower level dominates; equal levels add in the base.
pub fn ext_hyperadd(base: &Hyperfield, a: &ExtSet, b: &ExtSet) -> Result<ExtSet> {
    match (a, b) {
        (ExtSet::ZeroOnly, x) | (x, ExtSet::ZeroOnly) => Ok(x.clone()),
        (
            ExtSet::Level {
                level: g1,
                base: b1,
            },
            ExtSet::Level {
                level: g2,
                base: b2,
            },
        ) => match g1.lex_compare(g2)? {
            Ordering::Less => Ok(a.clone()),
            Ordering::Greater => Ok(b.clone()),
            Ordering::Equal => Ok(ExtSet::Level {
                level: g1.clone(),
                base: Box::new(base.hyperadd(b1, b2)?),
            }),
        },
    }
}

/// `ext_mul` on elements; the same as [`Hyperfield::mul`] on an extension.
pub fn ext_mul(h: &Hyperfield, a: &HElem, b: &HElem) -> HElem {
    h.mul(a, b)
}

/// Named realizations: `T`, `TR`, `TC`, `T^k`.
pub fn realize(name: &str) -> Result<Hyperfield> {
    let unknown = || Error::UnknownHyperfield(name.to_string());
    match name {
        "T" => Ok(Hyperfield::extension(Hyperfield::Krasner, 1)),
        "TR" => Ok(Hyperfield::extension(Hyperfield::Sign, 1)),
        "TC" => Ok(Hyperfield::extension(Hyperfield::TropicalPhase, 1)),
        _ => {
            let k: usize = name
                .strip_prefix("T^")
                .ok_or_else(unknown)?
                .parse()
                .map_err(|_| unknown())?;
            if k == 0 {
                return Err(unknown());
            }
            Ok(Hyperfield::extension(Hyperfield::Krasner, k))
        }
    }
}

/// `f^Γ(c, g) = (f(c), g)` between the rank-`k` extensions of `f`'s ends.
pub fn extend_hom(f: &HomDescriptor, rank: usize) -> Result<HomDescriptor> {
    HomDescriptor::extended(f.clone(), rank)
}

/// Whether `kind` is an extended homomorphism.
pub fn is_extended(f: &HomDescriptor) -> bool {
    matches!(f.kind, HomKind::Extended(_))
}
