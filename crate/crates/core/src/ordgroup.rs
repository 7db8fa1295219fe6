//! Value groups: ℚ and ℚ^k under the lexicographic order.
//!
//! Invariant: coordinates are canonical rationals, so structural equality is
//! group equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{self, Rational};

/// Default ceiling on the rank of lexicographic value groups.
pub const DEFAULT_MAX_RANK: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElem {
    coords: Vec<Rational>,
}

impl GroupElem {
    pub fn new(coords: Vec<Rational>) -> Self {
        assert!(!coords.is_empty(), "value group rank must be at least 1");
        GroupElem { coords }
    }

    /// Rank-checked constructor honouring a maximum rank.
    pub fn with_max_rank(coords: Vec<Rational>, max_rank: usize) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::RankMismatch(0, 1));
        }
        if coords.len() > max_rank {
            return Err(Error::RankTooLarge(coords.len(), max_rank));
        }
        Ok(GroupElem { coords })
    }

    pub fn zero(rank: usize) -> Self {
        GroupElem::new(vec![Rational::zero(); rank])
    }

    pub fn from_rational(r: Rational) -> Self {
        GroupElem { coords: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        GroupElem::from_rational(rat::rat(n))
    }

    pub fn from_ints(ns: &[i64]) -> Self {
        GroupElem::new(ns.iter().map(|&n| rat::rat(n)).collect())
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// First coordinate; the whole value for rank 1.
    pub fn lead(&self) -> &Rational {
        &self.coords[0]
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.rank(), other.rank()))
        }
    }

    pub fn group_add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        Ok(GroupElem::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        self.same_rank(other)?;
        Ok(self.coords.cmp(&other.coords))
    }

    pub fn scalar_mul(&self, n: &BigInt) -> Self {
        let n = Rational::from_integer(n.clone());
        GroupElem::new(self.coords.iter().map(|c| c * &n).collect())
    }

    pub fn scalar_mul_i64(&self, n: i64) -> Self {
        self.scalar_mul(&BigInt::from(n))
    }

    /// Multiplication by a rational scalar (ℚ^k is a ℚ-vector space).
    pub fn scale(&self, r: &Rational) -> Self {
        GroupElem::new(self.coords.iter().map(|c| c * r).collect())
    }

    pub fn div(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&rat::ratio(1, n)))
    }
}

impl Ord for GroupElem {
    /// Lexicographic; callers compare equal ranks only.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.rank(), other.rank(), "rank mismatch");
        self.coords.cmp(&other.coords)
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &GroupElem {
    type Output = GroupElem;
    fn add(self, rhs: &GroupElem) -> GroupElem {
        self.group_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &GroupElem {
    type Output = GroupElem;
    fn sub(self, rhs: &GroupElem) -> GroupElem {
        self + &(-rhs)
    }
}

impl Neg for &GroupElem {
    type Output = GroupElem;
    fn neg(self) -> GroupElem {
        GroupElem::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let parts: Vec<String> = self.coords.iter().map(rat::fmt_rational).collect();
            write!(f, "[{}]", parts.join(", "))
        }
    }
}

impl Serialize for GroupElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rank()))?;
        for c in &self.coords {
            seq.serialize_element(&rat::fmt_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GroupElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("empty group element"));
        }
        let coords = raw
            .iter()
            .map(|s| rat::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(GroupElem::new(coords))
    }
}

impl GroupElem {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("group elements always serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn adds_componentwise() {
        let a = GroupElem::from_rational(ratio(1, 2));
        let b = GroupElem::from_rational(ratio(1, 3));
        assert_eq!(&a + &b, GroupElem::from_rational(ratio(5, 6)));
        assert_eq!(
            &GroupElem::from_ints(&[1, 0]) + &GroupElem::from_ints(&[0, 5]),
            GroupElem::from_ints(&[1, 5])
        );
        assert_eq!(
            &GroupElem::zero(2) + &GroupElem::from_ints(&[4, 7]),
            GroupElem::from_ints(&[4, 7])
        );
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = GroupElem::from_int(1);
        let b = GroupElem::from_ints(&[1, 2]);
        assert_eq!(a.group_add(&b), Err(Error::RankMismatch(1, 2)));
        assert!(a.lex_compare(&b).is_err());
        assert!(GroupElem::with_max_rank(vec![rat::rat(0); 4], DEFAULT_MAX_RANK).is_err());
    }

    #[test]
    fn lexicographic_order() {
        let cmp = |a: &[i64], b: &[i64]| {
            GroupElem::from_ints(a)
                .lex_compare(&GroupElem::from_ints(b))
                .unwrap()
        };
        assert_eq!(cmp(&[1, 9], &[2, 0]), Ordering::Less);
        assert_eq!(cmp(&[1, 1], &[1, 1]), Ordering::Equal);
        assert_eq!(cmp(&[0, 3], &[0, 2]), Ordering::Greater);
    }

    #[test]
    fn scalar_multiples_and_division() {
        let h = GroupElem::from_rational(ratio(1, 2));
        assert_eq!(h.scalar_mul_i64(3), GroupElem::from_rational(ratio(3, 2)));
        assert!(h.scalar_mul_i64(0).is_zero());
        assert_eq!(
            GroupElem::from_ints(&[1, 1]).div(2).unwrap(),
            GroupElem::new(vec![ratio(1, 2), ratio(1, 2)])
        );
        assert_eq!(h.div(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_uses_rational_strings() {
        let g = GroupElem::new(vec![ratio(-3, 4), rat::rat(2)]);
        assert_eq!(g.to_json().to_string(), r#"["-3/4","2"]"#);
        assert_eq!(GroupElem::from_json(&g.to_json()).unwrap(), g);
    }
}
