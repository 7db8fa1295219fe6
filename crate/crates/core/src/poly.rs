//! Polynomials over hyperfields and over the series field.
//!
//! An [`HPoly`] is plain data: a support with nonzero coefficients.  There is
//! no ring structure; evaluation is a hypersum of monomial values folded in
//! lexicographic support order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hfcore::{FieldKind, HElem, Hyperfield, SetValue};
use crate::series::{Domain, HomDescriptor, SeriesTrunc};

/// Name of variable `i` among `n`: `X, Y, Z` for up to three, else `X1..Xn`.
pub fn var_name(i: usize, n: usize) -> String {
    if n <= 3 {
        ["X", "Y", "Z"][i].to_string()
    } else {
        format!("X{}", i + 1)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPoly {
    hf: Hyperfield,
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<Vec<i64>, HElem>,
}

impl HPoly {
    /// Zero coefficients are dropped; repeated exponents are an error.
    pub fn new(
        hf: Hyperfield,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, HElem)>,
    ) -> Result<HPoly> {
        let mut map = BTreeMap::new();
        for (d, c) in terms {
            if d.len() != nvars {
                return Err(Error::RankMismatch(d.len(), nvars));
            }
            if !hf.is_element(&c) {
                return Err(Error::KindMismatch(format!("{c} is not in {}", hf.key())));
            }
            if c.is_zero() {
                continue;
            }
            if map.insert(d.clone(), c).is_some() {
                return Err(Error::KindMismatch(format!("repeated monomial {d:?}")));
            }
        }
        let laurent = map.keys().any(|d| d.iter().any(|&e| e < 0));
        Ok(HPoly {
            hf,
            nvars,
            laurent,
            terms: map,
        })
    }

    /// Univariate polynomial from coefficients `c_0, c_1, …`.
    pub fn univariate(hf: Hyperfield, coeffs: &[HElem]) -> Result<HPoly> {
        HPoly::new(
            hf,
            1,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as i64], c.clone())),
        )
    }

    pub fn hyperfield(&self) -> &Hyperfield {
        &self.hf
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, HElem> {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    pub fn coeff(&self, d: &[i64]) -> HElem {
        self.terms.get(d).cloned().unwrap_or(HElem::Zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree; zero for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().map(|d| d.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|d| d.iter().sum::<i64>());
        match degs.next() {
            Some(first) => degs.all(|x| x == first),
            None => true,
        }
    }

    /// Dense coefficients `c_0..c_deg` of a univariate polynomial.
    pub fn dense(&self) -> Result<Vec<HElem>> {
        if self.nvars != 1 || self.laurent {
            return Err(Error::Unsupported(
                "dense coefficients need a univariate ordinary polynomial".into(),
            ));
        }
        let mut out = vec![HElem::Zero; self.degree() as usize + 1];
        for (d, c) in &self.terms {
            out[d[0] as usize] = c.clone();
        }
        Ok(out)
    }

    fn monomial_value(&self, d: &[i64], c: &HElem, a: &[HElem]) -> Result<HElem> {
        let mut v = c.clone();
        for (x, &e) in a.iter().zip(d) {
            if e != 0 {
                v = self.hf.mul(&v, &self.hf.pow(x, e)?);
            }
        }
        Ok(v)
    }

    /// Monomial values `c_d ⊙ a^d` in support order.
    pub fn monomial_values(&self, a: &[HElem]) -> Result<Vec<HElem>> {
        if a.len() != self.nvars {
            return Err(Error::RankMismatch(a.len(), self.nvars));
        }
        if let Some(x) = a.iter().find(|x| !self.hf.is_element(x)) {
            return Err(Error::KindMismatch(format!(
                "{x} is not in {}",
                self.hf.key()
            )));
        }
        self.terms
            .iter()
            .map(|(d, c)| self.monomial_value(d, c, a))
            .collect()
    }

    pub fn eval(&self, a: &[HElem]) -> Result<SetValue> {
        let vals = self.monomial_values(a)?;
        if vals.is_empty() {
            return Ok(self.hf.singleton(&HElem::Zero));
        }
        self.hf.nary_sum(&vals)
    }

    /// Evaluation with the monomial values folded in the order `perm`.
    pub fn eval_in_order(&self, a: &[HElem], perm: &[usize]) -> Result<SetValue> {
        let vals = self.monomial_values(a)?;
        if vals.is_empty() {
            return Ok(self.hf.singleton(&HElem::Zero));
        }
        let ordered: Vec<HElem> = perm.iter().map(|&i| vals[i].clone()).collect();
        self.hf.nary_sum(&ordered)
    }

    pub fn is_root(&self, a: &[HElem]) -> Result<bool> {
        Ok(self.hf.set_contains_zero(&self.eval(a)?))
    }

    /// `f_*(p)`: coefficientwise image.
    pub fn pushforward(&self, f: &HomDescriptor) -> Result<HPoly> {
        if f.source != Domain::Hyper(self.hf.clone()) {
            return Err(Error::KindMismatch(format!(
                "{} does not start at {}",
                f.name(),
                self.hf.key()
            )));
        }
        let terms: Result<Vec<_>> = self
            .terms
            .iter()
            .map(|(d, c)| Ok((d.clone(), f.apply_elem(c)?)))
            .collect();
        HPoly::new(f.target.clone(), self.nvars, terms?)
    }

    /// Pads every monomial with a new leading variable up to total degree `deg p`.
    pub fn homogenize(&self) -> HPoly {
        let a = self.degree();
        let terms = self.terms.iter().map(|(d, c)| {
            let mut e = vec![a - d.iter().sum::<i64>()];
            e.extend(d);
            (e, c.clone())
        });
        HPoly::new(self.hf.clone(), self.nvars + 1, terms).expect("shifted support stays distinct")
    }

    /// Multiplies by the minimal monomial making every exponent nonnegative.
    pub fn affinize(&self) -> HPoly {
        let shift: Vec<i64> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|d| d[i]).min().unwrap_or(0).min(0))
            .collect();
        let terms = self.terms.iter().map(|(d, c)| {
            (
                d.iter().zip(&shift).map(|(x, s)| x - s).collect(),
                c.clone(),
            )
        });
        HPoly::new(self.hf.clone(), self.nvars, terms).expect("shifted support stays distinct")
    }

    /// Pretty text in the shared polynomial grammar.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let one = self.hf.one();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let mono: Vec<String> = d
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        let v = var_name(i, self.nvars);
                        match e {
                            1 => v,
                            e if e < 0 => format!("{v}^({e})"),
                            e => format!("{v}^{e}"),
                        }
                    })
                    .collect();
                let coef = coeff_text(&self.hf, c);
                match (mono.is_empty(), *c == one) {
                    (true, _) => coef,
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{coef}*{}", mono.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Coefficient text, parenthesized whenever it is not a bare atom.
pub fn coeff_text(hf: &Hyperfield, c: &HElem) -> String {
    let s = hf.fmt_elem(c);
    let atomic = s.starts_with('(') || s.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '/');
    if atomic {
        s
    } else {
        format!("({s})")
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `V(J)`: whether `a` is a root of every polynomial in `polys`.
pub fn prevariety_member(polys: &[HPoly], a: &[HElem]) -> Result<bool> {
    for p in polys {
        if !p.is_root(a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point of projective space, scaled so its first nonzero coordinate is one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint {
    coords: Vec<HElem>,
}

impl ProjPoint {
    pub fn coords(&self) -> &[HElem] {
        &self.coords
    }
}

pub fn proj_canonicalize(hf: &Hyperfield, raw: &[HElem]) -> Result<ProjPoint> {
    let lead = raw
        .iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::AllZeroCoordinates)?;
    let inv = hf.inv(lead)?;
    Ok(ProjPoint {
        coords: raw.iter().map(|c| hf.mul(&inv, c)).collect(),
    })
}

/// Root test for a homogeneous polynomial at a projective point.
pub fn proj_is_root(p: &HPoly, pt: &ProjPoint) -> Result<bool> {
    if !p.is_homogeneous() {
        return Err(Error::Unsupported(
            "projective roots need a homogeneous polynomial".into(),
        ));
    }
    p.is_root(&pt.coords)
}

/// A polynomial with truncated-series coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesPoly {
    field: FieldKind,
    nvars: usize,
    terms: BTreeMap<Vec<i64>, SeriesTrunc>,
}

impl SeriesPoly {
    pub fn new(
        field: FieldKind,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, SeriesTrunc)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, SeriesTrunc> = BTreeMap::new();
        for (d, c) in terms {
            if d.len() != nvars {
                return Err(Error::RankMismatch(d.len(), nvars));
            }
            let sum = match map.remove(&d) {
                Some(old) => old.add(&c)?,
                None => c,
            };
            if !sum.is_zero() || !sum.is_exact() {
                map.insert(d, sum);
            }
        }
        Ok(SeriesPoly {
            field,
            nvars,
            terms: map,
        })
    }

    /// `∏ (X − a_i)`, expanded.
    pub fn from_roots(field: FieldKind, roots: &[SeriesTrunc]) -> Result<Self> {
        let mut coeffs = vec![SeriesTrunc::one(field.clone())];
        for a in roots {
            let mut next = vec![SeriesTrunc::zero(field.clone()); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c)?;
                next[i] = next[i].sub(&c.mul(a)?)?;
            }
            coeffs = next;
        }
        SeriesPoly::new(
            field,
            1,
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (vec![i as i64], c)),
        )
    }

    pub fn field(&self) -> &FieldKind {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, SeriesTrunc> {
        &self.terms
    }

    pub fn coeff(&self, d: &[i64]) -> SeriesTrunc {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| SeriesTrunc::zero(self.field.clone()))
    }

    pub fn eval(&self, a: &[SeriesTrunc]) -> Result<SeriesTrunc> {
        if a.len() != self.nvars {
            return Err(Error::RankMismatch(a.len(), self.nvars));
        }
        let mut acc = SeriesTrunc::zero(self.field.clone());
        for (d, c) in &self.terms {
            let mut m = c.clone();
            for (x, &e) in a.iter().zip(d) {
                if e < 0 {
                    return Err(Error::Unsupported("negative powers of series".into()));
                }
                if e > 0 {
                    m = m.mul(&x.pow(e as u32)?)?;
                }
            }
            acc = acc.add(&m)?;
        }
        Ok(acc)
    }

    /// `f_*(p)` for a homomorphism on the series field.
    pub fn pushforward(&self, f: &HomDescriptor) -> Result<HPoly> {
        if f.source != Domain::Series(self.field.clone()) {
            return Err(Error::KindMismatch(format!(
                "{} does not act on series over {}",
                f.name(),
                self.field.key()
            )));
        }
        let terms: Result<Vec<_>> = self
            .terms
            .iter()
            .map(|(d, c)| Ok((d.clone(), f.apply_series(c)?)))
            .collect();
        let p = HPoly::new(f.target.clone(), self.nvars, terms?)?;
        if p.terms.len() != self.terms.len() {
            return Err(Error::InsufficientPrecision);
        }
        Ok(p)
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, c)| {
                let mono: Vec<String> = d
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            var_name(i, self.nvars)
                        } else {
                            format!("{}^{e}", var_name(i, self.nvars))
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
