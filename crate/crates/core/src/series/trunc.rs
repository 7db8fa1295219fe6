use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hfcore::{FieldKind, Gauss, HElem};
use crate::rat::{self, Rational};

/// A Puiseux/Hahn series known up to `O(t^prec)`.
///
/// Invariants: coefficients are nonzero, every exponent is below `prec`,
/// and `prec = None` means the series is exact.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SeriesTrunc {
    field: FieldKind,
    terms: BTreeMap<Rational, HElem>,
    prec: Option<Rational>,
}

fn min_prec(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}

impl SeriesTrunc {
    pub fn new(
        field: FieldKind,
        terms: impl IntoIterator<Item = (Rational, HElem)>,
        prec: Option<Rational>,
    ) -> Self {
        let mut out = SeriesTrunc {
            field,
            terms: BTreeMap::new(),
            prec,
        };
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out.clip();
        out
    }

    pub fn zero(field: FieldKind) -> Self {
        SeriesTrunc {
            field,
            terms: BTreeMap::new(),
            prec: None,
        }
    }

    pub fn constant(field: FieldKind, c: HElem) -> Self {
        SeriesTrunc::monomial(field, c, Rational::zero())
    }

    pub fn one(field: FieldKind) -> Self {
        let c = field.one();
        SeriesTrunc::constant(field, c)
    }

    pub fn monomial(field: FieldKind, c: HElem, e: Rational) -> Self {
        SeriesTrunc::new(field, [(e, c)], None)
    }

    /// `t^e`.
    pub fn t_pow(field: FieldKind, e: Rational) -> Self {
        let c = field.one();
        SeriesTrunc::monomial(field, c, e)
    }

    /// Series over ℚ from integer `(coefficient, exponent)` pairs.
    pub fn from_ints(terms: &[(i64, i64)], prec: Option<i64>) -> Self {
        SeriesTrunc::new(
            FieldKind::Rationals,
            terms.iter().map(|&(c, e)| (rat::rat(e), HElem::int(c))),
            prec.map(rat::rat),
        )
    }

    fn add_term(&mut self, e: Rational, c: HElem) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&e) {
            Some(old) => self.field.add(&old, &c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(e, merged);
        }
    }

    fn clip(&mut self) {
        if let Some(p) = &self.prec {
            self.terms.retain(|e, _| e < p);
        }
    }

    pub fn field(&self) -> &FieldKind {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Rational, HElem> {
        &self.terms
    }

    pub fn precision(&self) -> Option<&Rational> {
        self.prec.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_none()
    }

    /// `O(t^p)` with no known terms.
    pub fn is_indeterminate(&self) -> bool {
        self.terms.is_empty() && self.prec.is_some()
    }

    /// Coefficient of `t^e`; `Zero` when absent.
    pub fn coeff(&self, e: &Rational) -> HElem {
        self.terms.get(e).cloned().unwrap_or(HElem::Zero)
    }

    /// Truncates to `O(t^p)` (never loosens an existing bound).
    pub fn truncate(&self, p: &Rational) -> Self {
        let mut out = self.clone();
        out.prec = min_prec(&out.prec, &Some(p.clone()));
        out.clip();
        out
    }

    /// Lower bound on the valuation; `None` for exact zero.
    fn val_lower_bound(&self) -> Option<Rational> {
        self.terms
            .keys()
            .next()
            .cloned()
            .or_else(|| self.prec.clone())
    }

    pub fn leading_term(&self) -> Result<(HElem, Rational)> {
        match self.terms.iter().next() {
            Some((e, c)) => Ok((c.clone(), e.clone())),
            None if self.prec.is_some() => Err(Error::InsufficientPrecision),
            None => Err(Error::ZeroLeadingTerm),
        }
    }

    pub fn valuation(&self) -> Result<Rational> {
        self.leading_term().map(|(_, e)| e)
    }

    fn check_field(&self, o: &Self) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "series over {} and {}",
                self.field.key(),
                o.field.key()
            )))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_field(o)?;
        let mut out = self.clone();
        out.prec = min_prec(&self.prec, &o.prec);
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out.clip();
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SeriesTrunc {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), self.field.neg(c)))
                .collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &HElem) -> Self {
        SeriesTrunc::new(
            self.field.clone(),
            self.terms
                .iter()
                .map(|(e, x)| (e.clone(), self.field.mul(c, x))),
            if c.is_zero() { None } else { self.prec.clone() },
        )
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_field(o)?;
        let (va, vb) = match (self.val_lower_bound(), o.val_lower_bound()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(SeriesTrunc::zero(self.field.clone())),
        };
        let pa = self.prec.as_ref().map(|p| p + &vb);
        let pb = o.prec.as_ref().map(|p| p + &va);
        let mut out = SeriesTrunc {
            field: self.field.clone(),
            terms: BTreeMap::new(),
            prec: min_prec(&pa, &pb),
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1 + e2;
                if out.prec.as_ref().is_none_or(|p| &e < p) {
                    let c = self.field.mul(c1, c2);
                    out.add_term(e, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = SeriesTrunc::one(self.field.clone());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse known at least up to `O(t^order)`.
    pub fn inv(&self, order: &Rational) -> Result<Self> {
        let (c, v) = self.leading_term().map_err(|e| match e {
            Error::ZeroLeadingTerm => Error::NoInverseOfZero,
            other => other,
        })?;
        let c_inv = self.field.inv(&c)?;
        // self = c t^v (1 + u), with u known up to relative order p - v
        let u: Vec<(Rational, HElem)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(e, x)| (e - &v, self.field.mul(x, &c_inv)))
            .collect();
        let intrinsic = self.prec.as_ref().map(|p| p - &v - &v);
        if u.is_empty() && intrinsic.is_none() {
            return Ok(SeriesTrunc::monomial(self.field.clone(), c_inv, -v));
        }
        let target = match &intrinsic {
            Some(i) => i.min(order).clone(),
            None => order.clone(),
        };
        let rel = &target + &v;
        let u_series = SeriesTrunc::new(self.field.clone(), u, Some(rel.clone()));
        let neg_u = u_series.neg();
        let mut sum = SeriesTrunc::one(self.field.clone()).truncate(&rel);
        let mut power = SeriesTrunc::one(self.field.clone());
        loop {
            power = power.mul(&neg_u)?.truncate(&rel);
            if power.terms.is_empty() {
                break;
            }
            sum = sum.add(&power)?;
        }
        let shifted = SeriesTrunc::new(
            self.field.clone(),
            sum.terms
                .iter()
                .map(|(e, x)| (e - &v, self.field.mul(x, &c_inv))),
            Some(target),
        );
        Ok(shifted)
    }

    pub fn div(&self, o: &Self, order: &Rational) -> Result<Self> {
        let va = match self.val_lower_bound() {
            Some(v) => v,
            None => return Ok(SeriesTrunc::zero(self.field.clone())),
        };
        let inv = o.inv(&(order - &va))?;
        Ok(self.mul(&inv)?.truncate(order))
    }

    /// Least common denominator of the exponents.
    pub fn exponent_denominator(&self) -> num_bigint::BigInt {
        rat::lcm_of_denominators(self.terms.keys())
    }

    /// Whether exponents share a bounded denominator (strict Puiseux check).
    pub fn is_puiseux_with(&self, max_den: u32) -> bool {
        self.exponent_denominator() <= num_bigint::BigInt::from(max_den)
    }

    /// Random exact series with `terms` terms, exponents `k/den` in `[lo, lo+span)`.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldKind,
        rng: &mut R,
        terms: usize,
        den: i64,
        lo: i64,
        span: i64,
    ) -> Self {
        let mut out = SeriesTrunc::zero(field.clone());
        for _ in 0..terms {
            let e = rat::ratio(rng.gen_range(lo * den..(lo + span) * den), den);
            out.add_term(e, field.sample_unit(rng));
        }
        out
    }
}

fn fmt_coeff(c: &HElem) -> String {
    match c {
        HElem::Gauss(g) if !g.re.is_zero() && !g.im.is_zero() => format!("({g})"),
        _ => c.to_string(),
    }
}

fn fmt_exp(e: &Rational) -> String {
    if e.is_one() {
        "t".into()
    } else if rat::is_integer(e) && !e.is_negative() {
        format!("t^{e}")
    } else {
        format!("t^({e})")
    }
}

fn is_negative_coeff(c: &HElem) -> bool {
    match c {
        HElem::Rat(r) => r.is_negative(),
        HElem::Gauss(g) => g.re.is_negative() || (g.re.is_zero() && g.im.is_negative()),
        _ => false,
    }
}

impl fmt::Display for SeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = is_negative_coeff(c);
            let mag = if neg { self.field.neg(c) } else { c.clone() };
            let sep = match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            let unit = mag == self.field.one();
            let body = match (e.is_zero(), unit) {
                (true, _) => fmt_coeff(&mag),
                (false, true) => fmt_exp(e),
                (false, false) => format!("{}*{}", fmt_coeff(&mag), fmt_exp(e)),
            };
            out.push_str(&body);
        }
        if let Some(p) = &self.prec {
            let o = format!(
                "O({})",
                if p.is_zero() {
                    "1".to_string()
                } else {
                    fmt_exp(p)
                }
            );
            if out.is_empty() {
                out = o;
            } else {
                out.push_str(" + ");
                out.push_str(&o);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

/// Gaussian shorthand used in tests and the parser.
pub fn gauss_elem(re: Rational, im: Rational) -> HElem {
    HElem::from_gauss(Gauss::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn q(terms: &[(i64, i64)], prec: Option<i64>) -> SeriesTrunc {
        SeriesTrunc::from_ints(terms, prec)
    }

    #[test]
    fn inverse_multiplies_back_to_one() {
        let a = q(&[(1, 0), (-1, 1), (1, 2)], None);
        let inv = a.inv(&rat(4)).unwrap();
        assert_eq!(inv, q(&[(1, 0), (1, 1), (-1, 3)], Some(4)));
        let back = a.mul(&inv).unwrap();
        assert_eq!(back, q(&[(1, 0)], Some(4)));
    }

    #[test]
    fn quotient_leading_expansion() {
        let num = q(&[(2, 0), (1, 2)], None);
        let den = q(&[(1, 0), (-1, 1), (1, 2)], None);
        let x = num.mul(&den.inv(&rat(3)).unwrap()).unwrap();
        assert_eq!(x, q(&[(2, 0), (2, 1), (1, 2)], Some(3)));
        assert_eq!(x.to_string(), "2 + 2*t + t^2 + O(t^3)");
    }

    #[test]
    fn cancellation_is_exact() {
        let a = q(&[(3, 2), (5, 7)], None);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn leading_terms() {
        assert_eq!(
            q(&[(3, 2), (5, 7)], None).leading_term().unwrap(),
            (HElem::int(3), rat(2))
        );
        let b = q(&[(-1, 0), (-2, 1), (-1, 2)], Some(3));
        assert_eq!(b.leading_term().unwrap(), (HElem::int(-1), rat(0)));
        assert_eq!(
            SeriesTrunc::zero(FieldKind::Rationals).leading_term(),
            Err(Error::ZeroLeadingTerm)
        );
        assert_eq!(
            q(&[], Some(2)).leading_term(),
            Err(Error::InsufficientPrecision)
        );
    }

    #[test]
    fn precision_tracking() {
        let a = q(&[(1, 1)], Some(3));
        let b = q(&[(1, 0), (1, 1)], Some(2));
        assert_eq!(a.add(&b).unwrap().precision(), Some(&rat(2)));
        // val(a) + prec(b) = 3, val(b) + prec(a) = 3
        assert_eq!(a.mul(&b).unwrap().precision(), Some(&rat(3)));
        let c = SeriesTrunc::new(
            FieldKind::Rationals,
            [(ratio(1, 2), HElem::int(-3)), (rat(1), HElem::int(1))],
            None,
        );
        assert_eq!(c.to_string(), "-3*t^(1/2) + t");
    }

    #[test]
    fn inverting_indeterminate_or_zero_fails() {
        assert_eq!(
            SeriesTrunc::zero(FieldKind::Rationals).inv(&rat(3)),
            Err(Error::NoInverseOfZero)
        );
        assert_eq!(
            q(&[], Some(1)).inv(&rat(3)),
            Err(Error::InsufficientPrecision)
        );
    }
}
