//! Units `x` of a base hyperfield with `0 ∈ ⊞_j c_j ⊙ x^j`.

use num_traits::{One, Signed, Zero};

use super::qpoly;
use crate::error::{Error, Result};
use crate::hfcore::{FieldKind, Gauss, HElem, Hyperfield};
use crate::rat::Rational;

/// Solutions of a sparse base condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSolutions {
    /// Every solution, listed.
    Units(Vec<HElem>),
    /// A membership predicate for phase kinds, whose solution sets are arcs.
    Condition {
        hf: Hyperfield,
        terms: Vec<(i64, HElem)>,
    },
}

impl BaseSolutions {
    pub fn contains(&self, x: &HElem) -> bool {
        match self {
            BaseSolutions::Units(us) => us.contains(x),
            BaseSolutions::Condition { hf, terms } => {
                condition_holds(hf, terms, x).unwrap_or(false)
            }
        }
    }

    pub fn units(&self) -> Option<&[HElem]> {
        match self {
            BaseSolutions::Units(us) => Some(us),
            BaseSolutions::Condition { .. } => None,
        }
    }
}

/// Whether `0 ∈ ⊞_j c_j ⊙ x^j`.
pub fn condition_holds(h: &Hyperfield, terms: &[(i64, HElem)], x: &HElem) -> Result<bool> {
    let vals: Result<Vec<HElem>> = terms
        .iter()
        .map(|(j, c)| Ok(h.mul(c, &h.pow(x, *j)?)))
        .collect();
    Ok(h.set_contains_zero(&h.nary_sum(&vals?)?))
}

pub fn base_roots(h: &Hyperfield, terms: &[(i64, HElem)]) -> Result<BaseSolutions> {
    if terms.len() < 2 {
        return Ok(BaseSolutions::Units(vec![]));
    }
    match h {
        Hyperfield::Extension { .. } => {
            Err(Error::Unsupported("base solving over an extension".into()))
        }
        Hyperfield::Phase | Hyperfield::TropicalPhase => Ok(BaseSolutions::Condition {
            hf: h.clone(),
            terms: terms.to_vec(),
        }),
        Hyperfield::Field(FieldKind::Rationals) => {
            rational_solutions(terms).map(BaseSolutions::Units)
        }
        Hyperfield::Field(FieldKind::Gaussian) => {
            gaussian_solutions(terms).map(BaseSolutions::Units)
        }
        _ => {
            let units = h.elements().expect("remaining kinds are finite");
            let mut out = Vec::new();
            for x in units.into_iter().filter(|x| !x.is_zero()) {
                if condition_holds(h, terms, &x)? {
                    out.push(x);
                }
            }
            Ok(BaseSolutions::Units(out))
        }
    }
}

fn shifted_dense<T: Clone>(terms: &[(i64, T)], zero: T) -> Vec<T> {
    let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
    let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut out = vec![zero; (hi - lo) as usize + 1];
    for (j, c) in terms {
        out[(j - lo) as usize] = c.clone();
    }
    out
}

fn as_rational(c: &HElem) -> Rational {
    match c {
        HElem::Rat(r) => r.clone(),
        HElem::Zero => Rational::zero(),
        _ => unreachable!("rational field elements"),
    }
}

fn as_gauss(c: &HElem) -> Gauss {
    match c {
        HElem::Gauss(g) => g.clone(),
        HElem::Rat(r) => Gauss::real(r.clone()),
        HElem::Zero => Gauss::real(Rational::zero()),
        _ => unreachable!("gaussian field elements"),
    }
}

fn residual_text(p: &[Rational]) -> String {
    let parts: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})*x^{i}"))
        .collect();
    parts.join(" + ")
}

fn rational_solutions(terms: &[(i64, HElem)]) -> Result<Vec<HElem>> {
    let rterms: Vec<(i64, Rational)> = terms.iter().map(|(j, c)| (*j, as_rational(c))).collect();
    let dense = shifted_dense(&rterms, Rational::zero());
    let (roots, rest) = qpoly::rational_roots(&dense);
    if qpoly::degree(&rest).is_some_and(|d| d > 0) {
        return Err(Error::BaseSolveIncomplete(residual_text(&rest)));
    }
    Ok(roots
        .into_iter()
        .filter(|(r, _)| !r.is_zero())
        .map(|(r, _)| HElem::Rat(r))
        .collect())
}

/// Principal square root in ℚ(i), when one exists.
pub fn gauss_sqrt(z: &Gauss) -> Option<Gauss> {
    if z.is_zero() {
        return Some(z.clone());
    }
    let r = qpoly::rational_sqrt(&z.norm())?;
    let two = Rational::from_integer(2.into());
    let u = qpoly::rational_sqrt(&((&z.re + &r) / &two))?;
    let v = qpoly::rational_sqrt(&((&r - &z.re) / &two))?;
    let v = if z.im.is_negative() { -v } else { v };
    let s = Gauss::new(u, v);
    (s.mul(&s) == *z).then_some(s)
}

fn quadratic(c0: &Gauss, c1: &Gauss, c2: &Gauss) -> Option<Vec<Gauss>> {
    let four = Gauss::real(Rational::from_integer(4.into()));
    let disc = c1.mul(c1).add(&four.mul(c2).mul(c0).neg());
    let s = gauss_sqrt(&disc)?;
    let inv2a = Gauss::real(Rational::from_integer(2.into()))
        .mul(c2)
        .inv()
        .ok()?;
    let mut out = vec![
        c1.neg().add(&s).mul(&inv2a),
        c1.neg().add(&s.neg()).mul(&inv2a),
    ];
    out.dedup();
    Some(out)
}

fn gauss_residual_error(p: &[Gauss]) -> Error {
    let parts: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})*x^{i}"))
        .collect();
    Error::BaseSolveIncomplete(parts.join(" + "))
}

fn gaussian_solutions(terms: &[(i64, HElem)]) -> Result<Vec<HElem>> {
    let gterms: Vec<(i64, Gauss)> = terms.iter().map(|(j, c)| (*j, as_gauss(c))).collect();
    let mut dense = shifted_dense(&gterms, Gauss::real(Rational::zero()));
    let lead_inv = dense.last().unwrap().inv()?;
    dense = dense.iter().map(|c| c.mul(&lead_inv)).collect();
    let mut roots: Vec<Gauss> = Vec::new();
    if dense.iter().all(|c| c.im.is_zero()) {
        let real: Vec<Rational> = dense.iter().map(|c| c.re.clone()).collect();
        let (rs, rest) = qpoly::rational_roots(&real);
        roots.extend(
            rs.into_iter()
                .filter(|(r, _)| !r.is_zero())
                .map(|(r, _)| Gauss::real(r)),
        );
        dense = rest.into_iter().map(Gauss::real).collect();
    }
    let n = dense.len().saturating_sub(1);
    if n == 0 {
    } else if n == 1 {
        roots.push(dense[0].mul(&dense[1].inv()?).neg());
    } else if n == 2 {
        roots.extend(
            quadratic(&dense[0], &dense[1], &dense[2])
                .ok_or_else(|| gauss_residual_error(&dense))?,
        );
    } else if n.is_power_of_two() && dense[1..n].iter().all(|c| c.is_zero()) {
        let c = dense[0].mul(&dense[n].inv()?).neg();
        roots.extend(binomial_roots(&c, n).ok_or_else(|| gauss_residual_error(&dense))?);
    } else {
        return Err(gauss_residual_error(&dense));
    }
    roots.sort();
    roots.dedup();
    Ok(roots.into_iter().map(HElem::Gauss).collect())
}

/// All `x` with `x^k = c`, `k` a power of two.
fn binomial_roots(c: &Gauss, k: usize) -> Option<Vec<Gauss>> {
    let mut level = vec![c.clone()];
    let mut k = k;
    while k > 1 {
        let mut next = Vec::new();
        for z in &level {
            let s = gauss_sqrt(z)?;
            next.push(s.neg());
            next.push(s);
        }
        level = next;
        k /= 2;
    }
    Some(level)
}

/// `x^k = c` over ℚ(i): all roots for `k` a power of two; otherwise the
/// roots `ζ·b` with `ζ ∈ {±1, ±i}` and `b` rational.
pub fn gauss_kth_roots(c: &Gauss, k: u32) -> Vec<Gauss> {
    if k.is_power_of_two() {
        return binomial_roots(c, k as usize).unwrap_or_default();
    }
    let pow = |z: &Gauss, e: u32| (0..e).fold(Gauss::real(Rational::one()), |a, _| a.mul(z));
    let mut out = Vec::new();
    for (x, y) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
        let zeta = Gauss::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
        );
        let r = c.mul(&pow(&zeta, k).inv().expect("unit"));
        if !r.im.is_zero() {
            continue;
        }
        let b = if r.re.is_negative() && k % 2 == 1 {
            real_root(&-r.re.clone(), k).map(|b| -b)
        } else {
            real_root(&r.re, k)
        };
        if let Some(b) = b {
            let z = zeta.mul(&Gauss::real(b));
            if pow(&z, k) == *c && !out.contains(&z) {
                out.push(z);
            }
        }
    }
    out
}

/// All `x ∈ F^×` with `x^k = c`; `k ≠ 0`, `c ≠ 0`.  Over ℚ(i) this is
/// complete only in the cases [`gauss_kth_roots`] covers.
pub fn field_kth_roots(f: &FieldKind, c: &HElem, k: i64) -> Result<Vec<HElem>> {
    let c = if k < 0 { f.inv(c)? } else { c.clone() };
    let k = k.unsigned_abs() as u32;
    Ok(match f {
        FieldKind::Rationals => {
            let r = as_rational(&c);
            let mut out = Vec::new();
            if let Some(b) = real_root(&r.abs(), k) {
                if k % 2 == 1 {
                    out.push(HElem::from_rational(if r.is_negative() { -b } else { b }));
                } else if r.is_positive() {
                    out.push(HElem::from_rational(-b.clone()));
                    out.push(HElem::from_rational(b));
                }
            }
            out
        }
        FieldKind::Gaussian => gauss_kth_roots(&as_gauss(&c), k)
            .into_iter()
            .map(HElem::Gauss)
            .collect(),
        FieldKind::Finite(_) => {
            let mut out = Vec::new();
            for x in f.units().expect("finite") {
                if f.pow(&x, k as i64)? == c {
                    out.push(x);
                }
            }
            out
        }
    })
}

fn real_root(r: &Rational, k: u32) -> Option<Rational> {
    let n = r.numer().nth_root(k);
    let d = r.denom().nth_root(k);
    let cand = Rational::new(n, d);
    (num_traits::pow(cand.clone(), k as usize) == *r).then_some(cand)
}
