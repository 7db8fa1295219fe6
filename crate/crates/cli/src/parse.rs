//! Text grammar for hyperfield keys, elements, truncated series and
//! polynomials.  Every printer in the core crate produces text this module
//! reads back to the same value.
//!
//! ```text
//! key      := base | base "⋊Q" ["^" nat] | "T" ["^" nat] | "TR" | "TC"
//! base     := "Q" | "Qi" | "GF" nat ["/{" int ("," int)* "}"] | "K" | "S" | "W" | "P" | "Phi"
//! rational := nat ["/" nat]
//! gauss    := ["-"] gterm (("+" | "-") gterm)*      gterm := rational ["i"] | "i"
//! phase    := "0" | "dir(" int "," int ")"
//! pair     := "inf" | "0" | ["-"] "(" elem "," rational ("," rational)* ")"
//! series   := sterm (("+" | "-") sterm)*           sterm := coef ["*" tpow] | tpow | "O(" ("1" | tpow) ")"
//! tpow     := "t" ["^" (nat | "(" ["-"] rational ")")]
//! poly     := ["-"] term (("+" | "-") term)*       term  := factor ("*" factor)*
//! factor   := coef | var ["^" (int | "(" int ")")]   var := "X" | "Y" | "Z" | "X" nat
//! ```
//!
//! U+2212 (minus sign) is accepted wherever `-` is.

use std::collections::BTreeMap;

use hyperfield_core::hfcore::{Dir, FiniteField, Gauss};
use hyperfield_core::poly::{HPoly, SeriesPoly};
use hyperfield_core::{
    Error, FieldKind, GroupElem, HElem, Hyperfield, Rational, Result, SeriesTrunc,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parses a hyperfield key such as `GF7/{1,2,4}`, `TR` or `Qi⋊Q^2`.
pub fn parse_hyperfield(key: &str) -> Result<Hyperfield> {
    let key = key.trim();
    let unknown = || Error::UnknownHyperfield(key.to_string());
    if let Some((base, group)) = key.split_once('⋊') {
        let rank = match group.trim() {
            "Q" => 1,
            g => g
                .strip_prefix("Q^")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(unknown)?,
        };
        return Ok(Hyperfield::extension(parse_hyperfield(base)?, rank));
    }
    match key {
        "K" => return Ok(Hyperfield::Krasner),
        "S" => return Ok(Hyperfield::Sign),
        "W" => return Ok(Hyperfield::WeakSign),
        "P" => return Ok(Hyperfield::Phase),
        "Phi" | "Φ" => return Ok(Hyperfield::TropicalPhase),
        "T" => return Ok(Hyperfield::extension(Hyperfield::Krasner, 1)),
        "TR" => return Ok(Hyperfield::extension(Hyperfield::Sign, 1)),
        "TC" => return Ok(Hyperfield::extension(Hyperfield::TropicalPhase, 1)),
        _ => {}
    }
    if let Some(k) = key.strip_prefix("T^") {
        let k: usize = k.parse().ok().filter(|&k| k >= 1).ok_or_else(unknown)?;
        return Ok(Hyperfield::extension(Hyperfield::Krasner, k));
    }
    if let Some(rest) = key.strip_prefix("GF") {
        if let Some((q, units)) = rest.split_once('/') {
            let q: u64 = q.parse().map_err(|_| unknown())?;
            let inner = units
                .strip_prefix('{')
                .and_then(|u| u.strip_suffix('}'))
                .ok_or_else(unknown)?;
            let us = inner
                .split(',')
                .map(|u| {
                    u.trim()
                        .replace('−', "-")
                        .parse::<i64>()
                        .map_err(|_| unknown())
                })
                .collect::<Result<Vec<_>>>()?;
            return Hyperfield::quotient(q, &us);
        }
        return Ok(Hyperfield::Field(parse_field(key)?));
    }
    Ok(Hyperfield::Field(parse_field(key)?))
}

/// Parses a field key: `Q`, `Qi` or `GFq`.
pub fn parse_field(key: &str) -> Result<FieldKind> {
    match key.trim() {
        "Q" => Ok(FieldKind::Rationals),
        "Qi" => Ok(FieldKind::Gaussian),
        k => match k.strip_prefix("GF").and_then(|q| q.parse::<u64>().ok()) {
            Some(q) => FieldKind::gf(q),
            None => Err(Error::UnknownHyperfield(k.to_string())),
        },
    }
}

pub fn parse_elem(key: &str, text: &str) -> Result<HElem> {
    parse_elem_in(&parse_hyperfield(key)?, text)
}

pub fn parse_elem_in(h: &Hyperfield, text: &str) -> Result<HElem> {
    let mut p = Parser::new(text)?;
    let e = p.elem(h, false)?;
    p.finish()?;
    Ok(e)
}

/// Series over ℚ, or over ℚ(i) when a coefficient is non-real.
pub fn parse_series(text: &str) -> Result<SeriesTrunc> {
    let s = parse_series_in(&FieldKind::Gaussian, text)?;
    let real = s
        .terms()
        .values()
        .all(|c| matches!(c, HElem::Gauss(g) if g.im.is_zero()));
    if !real {
        return Ok(s);
    }
    let terms = s.terms().iter().map(|(e, c)| match c {
        HElem::Gauss(g) => (e.clone(), HElem::from_rational(g.re.clone())),
        _ => unreachable!("Gaussian coefficients"),
    });
    Ok(SeriesTrunc::new(
        FieldKind::Rationals,
        terms.collect::<Vec<_>>(),
        s.precision().cloned(),
    ))
}

pub fn parse_series_in(field: &FieldKind, text: &str) -> Result<SeriesTrunc> {
    let mut p = Parser::new(text)?;
    let s = p.series(field)?;
    p.finish()?;
    Ok(s)
}

/// Polynomial with the number of variables inferred from the names used.
pub fn parse_poly(key: &str, text: &str) -> Result<HPoly> {
    parse_poly_in(&parse_hyperfield(key)?, text, None)
}

pub fn parse_poly_in(h: &Hyperfield, text: &str, nvars: Option<usize>) -> Result<HPoly> {
    let mut p = Parser::new(text)?;
    let terms = p.poly_terms(|p| p.coefficient(h))?;
    p.finish()?;
    let n = infer_nvars(&terms, nvars)?;
    let one = h.one();
    let minus = h.minus_one();
    let mut out: BTreeMap<Vec<i64>, HElem> = BTreeMap::new();
    for t in terms {
        let mut c = t.coeffs.iter().fold(one.clone(), |acc, x| h.mul(&acc, x));
        if t.negated {
            c = h.mul(&c, &minus);
        }
        let d = t.exponents(n);
        if out.insert(d, c).is_some() {
            return Err(Error::Syntax {
                pos: t.pos,
                msg: "repeated monomial".into(),
            });
        }
    }
    HPoly::new(h.clone(), n, out)
}

pub fn parse_series_poly(
    field: &FieldKind,
    text: &str,
    nvars: Option<usize>,
) -> Result<SeriesPoly> {
    let mut p = Parser::new(text)?;
    let terms = p.poly_terms(|p| p.series_factor(field))?;
    p.finish()?;
    let n = infer_nvars(&terms, nvars)?;
    let mut out: BTreeMap<Vec<i64>, SeriesTrunc> = BTreeMap::new();
    for t in terms {
        let mut c = SeriesTrunc::one(field.clone());
        for x in &t.coeffs {
            c = c.mul(x)?;
        }
        if t.negated {
            c = c.neg();
        }
        let d = t.exponents(n);
        let sum = match out.remove(&d) {
            Some(prev) => prev.add(&c)?,
            None => c,
        };
        out.insert(d, sum);
    }
    SeriesPoly::new(field.clone(), n, out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum VarStyle {
    Letter,
    Indexed,
}

struct Term<C> {
    pos: usize,
    negated: bool,
    coeffs: Vec<C>,
    vars: Vec<(VarStyle, usize, i64)>,
}

impl<C> Term<C> {
    fn exponents(&self, n: usize) -> Vec<i64> {
        let mut d = vec![0; n];
        for (_, i, e) in &self.vars {
            d[*i] += e;
        }
        d
    }
}

fn infer_nvars<C>(terms: &[Term<C>], nvars: Option<usize>) -> Result<usize> {
    let mut style = None;
    let mut max = 0;
    for t in terms {
        for (s, i, _) in &t.vars {
            if style.is_some_and(|x| x != *s) {
                return Err(Error::Syntax {
                    pos: t.pos,
                    msg: "mixed variable names X,Y,Z and X1..Xn".into(),
                });
            }
            style = Some(*s);
            max = max.max(i + 1);
        }
    }
    let n = nvars.unwrap_or(max.max(1));
    if n < max {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("variable index {max} exceeds {n} variables"),
        });
    }
    Ok(n)
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), start));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^(),".contains(c) || c == '−' {
            out.push((Tok::Sym(if c == '−' { '-' } else { c }), i));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

fn invalid(h: &Hyperfield, literal: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidLiteral {
        literal: literal.into(),
        hyperfield: h.key(),
        reason: reason.into(),
    }
}

fn fin_code(ff: &FiniteField, n: &BigInt, h: &Hyperfield) -> Result<u32> {
    let q = ff.order();
    if ff.is_prime() {
        let r = n.mod_floor_u(q);
        return Ok(r);
    }
    match n.to_u32() {
        Some(v) if v < q => Ok(v),
        _ => Err(invalid(
            h,
            n.to_string(),
            format!("codes of GF{q} lie in 0..{q}"),
        )),
    }
}

trait ModFloor {
    fn mod_floor_u(&self, q: u32) -> u32;
}

impl ModFloor for BigInt {
    fn mod_floor_u(&self, q: u32) -> u32 {
        let m = BigInt::from(q);
        (((self % &m) + &m) % &m).to_u32().expect("reduced")
    }
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            i: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            t => self.err(format!("unexpected {t:?} after the end of the expression")),
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.bump() {
            Tok::Num(n) => Ok(n),
            _ => {
                self.i -= 1;
                self.err("expected a number")
            }
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = self.eat('-');
        let n = self.nat()?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.nat()?;
        if self.eat('/') {
            let at = self.pos();
            let d = self.nat()?;
            if d.is_zero() {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn signed_rational(&mut self) -> Result<Rational> {
        let neg = self.eat('-');
        let r = self.rational()?;
        Ok(if neg { -r } else { r })
    }

    /// One Gaussian summand: `r`, `ri`, `r*i` or `i`.
    fn gterm(&mut self) -> Result<Gauss> {
        if self.is_ident("i") {
            self.bump();
            return Ok(Gauss::i());
        }
        let r = self.rational()?;
        if self.is_ident("i") {
            self.bump();
            return Ok(Gauss::new(Rational::zero(), r));
        }
        if self.is_sym('*') && *self.peek_at(1) == Tok::Ident("i".into()) {
            self.bump();
            self.bump();
            return Ok(Gauss::new(Rational::zero(), r));
        }
        Ok(Gauss::real(r))
    }

    fn gauss(&mut self, atom: bool) -> Result<Gauss> {
        if atom {
            return self.gterm();
        }
        let neg = self.eat('-');
        let mut g = self.gterm()?;
        if neg {
            g = g.neg();
        }
        loop {
            let neg = if self.is_sym('+') {
                false
            } else if self.is_sym('-') {
                true
            } else {
                break;
            };
            // a sign followed by something other than a Gaussian summand ends the literal
            match self.peek_at(1) {
                Tok::Num(_) => {}
                Tok::Ident(s) if s == "i" => {}
                _ => break,
            }
            self.bump();
            let t = self.gterm()?;
            g = g.add(&if neg { t.neg() } else { t });
        }
        Ok(g)
    }

    /// An element of `h`; `atom` forbids top-level signs and sums.
    fn elem(&mut self, h: &Hyperfield, atom: bool) -> Result<HElem> {
        let start = self.pos();
        match h {
            Hyperfield::Field(FieldKind::Rationals) => {
                let r = if atom {
                    self.rational()?
                } else {
                    self.signed_rational()?
                };
                Ok(HElem::from_rational(r))
            }
            Hyperfield::Field(FieldKind::Gaussian) => Ok(HElem::from_gauss(self.gauss(atom)?)),
            Hyperfield::Field(FieldKind::Finite(ff)) => {
                let n = if atom { self.nat()? } else { self.int()? };
                Ok(HElem::from_fin(fin_code(ff, &n, h)?))
            }
            Hyperfield::Krasner => match self.nat()? {
                n if n.is_zero() => Ok(HElem::Zero),
                n if n.is_one() => Ok(HElem::One),
                n => Err(invalid(h, n.to_string(), "K has elements 0 and 1")),
            },
            Hyperfield::Sign | Hyperfield::WeakSign => {
                let n = if atom { self.nat()? } else { self.int()? };
                if n.is_zero() {
                    Ok(HElem::Zero)
                } else if n.abs().is_one() {
                    Ok(HElem::Sign(if n.is_positive() { 1 } else { -1 }))
                } else {
                    Err(invalid(h, n.to_string(), "signs are -1, 0 and 1"))
                }
            }
            Hyperfield::Phase | Hyperfield::TropicalPhase => {
                if self.is_ident("dir") {
                    self.bump();
                    self.expect('(')?;
                    let x = self.int()?;
                    self.expect(',')?;
                    let y = self.int()?;
                    self.expect(')')?;
                    Dir::new(x.clone(), y.clone())
                        .map(HElem::Dir)
                        .ok_or_else(|| {
                            invalid(
                                h,
                                format!("dir({x},{y})"),
                                "the zero vector has no direction",
                            )
                        })
                } else {
                    match self.nat()? {
                        n if n.is_zero() => Ok(HElem::Zero),
                        n => Err(invalid(h, n.to_string(), "phases are 0 or dir(p,q)")),
                    }
                }
            }
            Hyperfield::Quotient(t) => {
                let n = if atom { self.nat()? } else { self.int()? };
                let v = fin_code(t.field(), &n, h)?;
                Ok(if v == 0 {
                    HElem::Zero
                } else {
                    HElem::Coset(t.coset_of(v))
                })
            }
            Hyperfield::Extension { base, rank } => {
                if self.is_ident("inf") {
                    self.bump();
                    return Ok(HElem::Zero);
                }
                if matches!(self.peek(), Tok::Num(n) if n.is_zero()) {
                    self.bump();
                    return Ok(HElem::Zero);
                }
                let neg = !atom && self.eat('-');
                self.expect('(')?;
                let c = self.elem(base, false)?;
                if c.is_zero() {
                    return Err(invalid(
                        h,
                        "(0, ...)",
                        "extension pairs need a nonzero base unit",
                    ));
                }
                let mut g = Vec::new();
                while self.eat(',') {
                    g.push(self.signed_rational()?);
                }
                self.expect(')')?;
                if g.len() != *rank {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("expected {rank} level coordinate(s), found {}", g.len()),
                    });
                }
                let e = HElem::pair(c, GroupElem::new(g));
                Ok(if neg { h.neg(&e) } else { e })
            }
        }
    }

    /// Polynomial coefficient: a bare atom or a parenthesized element.
    fn coefficient(&mut self, h: &Hyperfield) -> Result<HElem> {
        if matches!(h, Hyperfield::Extension { .. }) {
            return self.elem(h, true);
        }
        if self.eat('(') {
            let e = self.elem(h, false)?;
            self.expect(')')?;
            return Ok(e);
        }
        self.elem(h, true)
    }

    fn variable(&self) -> Option<(VarStyle, usize)> {
        let Tok::Ident(s) = self.peek() else {
            return None;
        };
        match s.as_str() {
            "X" => Some((VarStyle::Letter, 0)),
            "Y" => Some((VarStyle::Letter, 1)),
            "Z" => Some((VarStyle::Letter, 2)),
            s => {
                let k: usize = s.strip_prefix('X')?.parse().ok()?;
                (k >= 1).then_some((VarStyle::Indexed, k - 1))
            }
        }
    }

    fn var_exponent(&mut self) -> Result<i64> {
        if !self.eat('^') {
            return Ok(1);
        }
        let paren = self.eat('(');
        let at = self.pos();
        let e = self.int()?;
        if paren {
            self.expect(')')?;
        }
        e.to_i64().ok_or(Error::Syntax {
            pos: at,
            msg: "exponent out of range".into(),
        })
    }

    fn poly_terms<C>(
        &mut self,
        mut coef: impl FnMut(&mut Parser) -> Result<C>,
    ) -> Result<Vec<Term<C>>> {
        let mut terms = Vec::new();
        let mut negated = self.eat('-');
        if !negated {
            self.eat('+');
        }
        loop {
            let mut t = Term {
                pos: self.pos(),
                negated,
                coeffs: Vec::new(),
                vars: Vec::new(),
            };
            loop {
                if let Some((style, i)) = self.variable() {
                    self.bump();
                    let e = self.var_exponent()?;
                    t.vars.push((style, i, e));
                } else {
                    t.coeffs.push(coef(self)?);
                }
                if !self.eat('*') {
                    break;
                }
            }
            terms.push(t);
            if self.eat('+') {
                negated = false;
            } else if self.eat('-') {
                negated = true;
            } else {
                break;
            }
        }
        Ok(terms)
    }

    /// Exponent after `t^`: a natural number or a parenthesized rational.
    fn t_exponent(&mut self) -> Result<Rational> {
        if !self.eat('^') {
            return Ok(Rational::one());
        }
        if self.eat('(') {
            let r = self.signed_rational()?;
            self.expect(')')?;
            return Ok(r);
        }
        if self.is_sym('-') {
            return self.signed_rational();
        }
        Ok(Rational::from_integer(self.nat()?))
    }

    fn series_coefficient(&mut self, field: &FieldKind) -> Result<HElem> {
        let h = Hyperfield::Field(field.clone());
        self.coefficient(&h)
    }

    fn series(&mut self, field: &FieldKind) -> Result<SeriesTrunc> {
        let mut terms: Vec<(Rational, HElem)> = Vec::new();
        let mut prec: Option<Rational> = None;
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        loop {
            let at = self.pos();
            if self.is_ident("O") {
                self.bump();
                self.expect('(')?;
                let p = if self.is_ident("t") {
                    self.bump();
                    self.t_exponent()?
                } else {
                    match self.nat()? {
                        n if n.is_one() => Rational::zero(),
                        _ => {
                            return Err(Error::Syntax {
                                pos: at + 2,
                                msg: "expected O(1) or O(t^p)".into(),
                            })
                        }
                    }
                };
                self.expect(')')?;
                if prec.replace(p).is_some() {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: "more than one O(...) term".into(),
                    });
                }
            } else {
                let (c, e) = if self.is_ident("t") {
                    self.bump();
                    (field.one(), self.t_exponent()?)
                } else {
                    let c = self.series_coefficient(field)?;
                    if self.eat('*') {
                        if !self.is_ident("t") {
                            return self.err("expected t");
                        }
                        self.bump();
                        (c, self.t_exponent()?)
                    } else {
                        (c, Rational::zero())
                    }
                };
                terms.push((e, if neg { field.neg(&c) } else { c }));
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(SeriesTrunc::new(field.clone(), terms, prec))
    }

    /// Factor of a series-polynomial term other than a variable.
    fn series_factor(&mut self, field: &FieldKind) -> Result<SeriesTrunc> {
        if self.eat('(') {
            let s = self.series(field)?;
            self.expect(')')?;
            return Ok(s);
        }
        if self.is_ident("t") {
            self.bump();
            return Ok(SeriesTrunc::t_pow(field.clone(), self.t_exponent()?));
        }
        let c = self.series_coefficient(field)?;
        Ok(SeriesTrunc::constant(field.clone(), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperfield_core::rat::{rat, ratio};

    #[test]
    fn keys_round_trip() {
        for k in [
            "Q",
            "Qi",
            "GF7",
            "GF9",
            "GF7/{1,2,4}",
            "K",
            "S",
            "W",
            "P",
            "Phi",
            "T",
            "T^2",
            "TR",
            "TC",
            "Q⋊Q",
            "Qi⋊Q^2",
            "W⋊Q",
        ] {
            assert_eq!(parse_hyperfield(k).unwrap().key(), k);
        }
        assert_eq!(parse_hyperfield("K⋊Q").unwrap().key(), "T");
        assert!(matches!(
            parse_hyperfield("R"),
            Err(Error::UnknownHyperfield(_))
        ));
    }

    #[test]
    fn tropical_real_line() {
        let p = parse_poly("TR", "(−1,0)*X + (1,2)").unwrap();
        assert_eq!(
            p.support().cloned().collect::<Vec<_>>(),
            vec![vec![0], vec![1]]
        );
        assert_eq!(
            p.coeff(&[1]),
            HElem::pair(HElem::Sign(-1), GroupElem::from_int(0))
        );
    }

    #[test]
    fn worked_series() {
        let s = parse_series("2 + 2*t + t^2 + O(t^3)").unwrap();
        assert_eq!(
            s,
            SeriesTrunc::from_ints(&[(2, 0), (2, 1), (1, 2)], Some(3))
        );
        let s = parse_series("3*t^(1/2) - t + O(t^2)").unwrap();
        assert_eq!(s.coeff(&ratio(1, 2)), HElem::int(3));
        assert_eq!(s.coeff(&rat(1)), HElem::int(-1));
        assert_eq!(
            parse_series("(1+2i)*t").unwrap().field(),
            &FieldKind::Gaussian
        );
    }

    #[test]
    fn gaussian_fine_line() {
        let p = parse_poly("Qi⋊Q", "X + Y + (−1,0)").unwrap();
        assert_eq!(p.nvars(), 2);
        let minus = p.coeff(&[0, 0]);
        assert_eq!(minus.to_string(), "(-1, 0)");
    }

    #[test]
    fn elements_of_each_kind() {
        assert_eq!(
            parse_elem("Qi", "1/2-3/4i").unwrap().to_string(),
            "1/2-3/4i"
        );
        assert_eq!(parse_elem("P", "dir(2,-4)").unwrap(), HElem::dir(1, -2));
        assert_eq!(parse_elem("GF7", "-1").unwrap(), HElem::Fin(6));
        assert_eq!(
            parse_elem("T^2", "(1, 1/2, -3)").unwrap().to_string(),
            "(1, 1/2, -3)"
        );
        assert_eq!(parse_elem("TR", "inf").unwrap(), HElem::Zero);
        assert_eq!(
            parse_elem("TR", "-(1, 2)").unwrap(),
            parse_elem("TR", "(-1, 2)").unwrap()
        );
    }

    #[test]
    fn errors_are_typed_and_positioned() {
        assert_eq!(
            parse_elem("P", "dir(0,0)").unwrap_err().code(),
            "invalid_literal"
        );
        assert_eq!(parse_elem("S", "2").unwrap_err().code(), "invalid_literal");
        match parse_poly("Q", "X + * Y") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_elem("Q", "1 $") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("Q", "X + X"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("Q", "X + X2"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn series_polynomials() {
        let p = parse_series_poly(&FieldKind::Rationals, "t*X + (1 + t^2)*Y + 1", None).unwrap();
        assert_eq!(
            p.coeff(&[0, 1]),
            SeriesTrunc::from_ints(&[(1, 0), (1, 2)], None)
        );
        let again = parse_series_poly(&FieldKind::Rationals, &p.to_string(), Some(2)).unwrap();
        assert_eq!(p, again);
    }
}
