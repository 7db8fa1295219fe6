//! Unit solutions `(c_X, c_Y)` of sparse base conditions
//! `0 ∈ ⊞_j u_j ⊙ c_X^{a_j} ⊙ c_Y^{b_j}`.
//!
//! Finite base hyperfields are enumerated.  Over fields the supported
//! shapes are: one equation in a single unit, pairs of binomials, and pairs
//! that are simultaneously linear in one unit.  Anything else is an
//! explicit [`Error::BaseSolveIncomplete`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hfcore::{FieldKind, HElem, Hyperfield};
use crate::solve::{base_roots, field_kth_roots};

/// Sparse Laurent polynomial in `(c_X, c_Y)`; no zero coefficients.
pub type Laurent2 = BTreeMap<[i64; 2], HElem>;

type Laurent1 = BTreeMap<i64, HElem>;

const UNIT_NAMES: [&str; 2] = ["c_X", "c_Y"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusPiece {
    Point([HElem; 2]),
    /// Positive-dimensional solution family.  `fixed[i] = None` leaves unit
    /// `i` constrained only by `equations`.
    Family {
        fixed: [Option<HElem>; 2],
        equations: Vec<String>,
    },
}

fn coeff_prefix(h: &Hyperfield, c: &HElem, first: bool) -> (String, String) {
    let one = h.one();
    let minus = h.minus_one();
    let text = h.fmt_elem(c);
    let sep = if first { "" } else { " + " };
    if *c == one {
        (sep.into(), String::new())
    } else if *c == minus && minus != one {
        (if first { "-".into() } else { " - ".into() }, String::new())
    } else if let Some(rest) = text.strip_prefix('-').filter(|r| !r.contains(['+', '-'])) {
        (
            if first { "-".into() } else { " - ".into() },
            rest.to_string(),
        )
    } else if text.contains(['+', '-']) {
        (sep.into(), format!("({text})"))
    } else {
        (sep.into(), text)
    }
}

/// `c_X + c_Y - 1`, highest total degree first.
pub fn laurent_text(h: &Hyperfield, p: &Laurent2) -> String {
    let mut terms: Vec<(&[i64; 2], &HElem)> = p.iter().collect();
    terms.sort_by(|a, b| (b.0[0] + b.0[1], b.0).cmp(&(a.0[0] + a.0[1], a.0)));
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = (0..2)
            .filter(|&k| e[k] != 0)
            .map(|k| {
                if e[k] == 1 {
                    UNIT_NAMES[k].to_string()
                } else {
                    format!("{}^{}", UNIT_NAMES[k], e[k])
                }
            })
            .collect();
        let (sep, coef) = coeff_prefix(h, c, i == 0);
        out.push_str(&sep);
        match (coef.is_empty(), mono.is_empty()) {
            (true, true) => out.push_str(&h.fmt_elem(&h.one())),
            (true, false) => out.push_str(&mono.join("*")),
            (false, true) => out.push_str(&coef),
            (false, false) => out.push_str(&format!("{coef}*{}", mono.join("*"))),
        }
    }
    out
}

/// Whether `0 ∈ ⊞_j u_j ⊙ c^{d_j}`.
pub fn condition_holds(h: &Hyperfield, p: &Laurent2, c: &[HElem; 2]) -> Result<bool> {
    let mut vals = Vec::with_capacity(p.len());
    for (e, u) in p {
        vals.push(h.mul(u, &h.mul(&h.pow(&c[0], e[0])?, &h.pow(&c[1], e[1])?)));
    }
    if vals.is_empty() {
        return Ok(true);
    }
    Ok(h.set_contains_zero(&h.nary_sum(&vals)?))
}

fn depends(p: &Laurent2, var: usize) -> bool {
    let mut it = p.keys().map(|e| e[var]);
    let first = it.next();
    it.any(|x| Some(x) != first)
}

fn span(p: &Laurent2, var: usize) -> i64 {
    let lo = p.keys().map(|e| e[var]).min().unwrap_or(0);
    let hi = p.keys().map(|e| e[var]).max().unwrap_or(0);
    hi - lo
}

fn u_add_term(f: &FieldKind, u: &mut Laurent1, e: i64, c: HElem) {
    let s = f.add(u.get(&e).unwrap_or(&HElem::Zero), &c);
    if s.is_zero() {
        u.remove(&e);
    } else {
        u.insert(e, s);
    }
}

fn u_mul(f: &FieldKind, a: &Laurent1, b: &Laurent1) -> Laurent1 {
    let mut out = Laurent1::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            u_add_term(f, &mut out, ea + eb, f.mul(ca, cb));
        }
    }
    out
}

fn u_sub(f: &FieldKind, a: &Laurent1, b: &Laurent1) -> Laurent1 {
    let mut out = a.clone();
    for (e, c) in b {
        u_add_term(f, &mut out, *e, f.neg(c));
    }
    out
}

fn u_eval(f: &FieldKind, u: &Laurent1, x: &HElem) -> Result<HElem> {
    let mut acc = HElem::Zero;
    for (e, c) in u {
        acc = f.add(&acc, &f.mul(c, &f.pow(x, *e)?));
    }
    Ok(acc)
}

fn u_roots(f: &FieldKind, u: &Laurent1) -> Result<Vec<HElem>> {
    let terms: Vec<(i64, HElem)> = u.iter().map(|(e, c)| (*e, c.clone())).collect();
    let sols = base_roots(&Hyperfield::Field(f.clone()), &terms)?;
    Ok(sols.units().map(<[HElem]>::to_vec).unwrap_or_default())
}

/// Substitute `c_var = x`; the result is univariate in the other unit.
fn restrict(f: &FieldKind, p: &Laurent2, var: usize, x: &HElem) -> Result<Laurent1> {
    let mut out = Laurent1::new();
    for (e, c) in p {
        u_add_term(f, &mut out, e[1 - var], f.mul(c, &f.pow(x, e[var])?));
    }
    Ok(out)
}

fn point(var: usize, v: HElem, w: HElem) -> [HElem; 2] {
    if var == 0 {
        [v, w]
    } else {
        [w, v]
    }
}

fn fixed(var: usize, x: HElem) -> [Option<HElem>; 2] {
    let mut out = [None, None];
    out[var] = Some(x);
    out
}

/// `(exponent vector, r)` with `c^v = r`, for a two-term equation.
fn binomial(f: &FieldKind, p: &Laurent2) -> Result<Option<([i64; 2], HElem)>> {
    if p.len() != 2 {
        return Ok(None);
    }
    let mut it = p.iter();
    let (a, ua) = it.next().expect("two terms");
    let (b, ub) = it.next().expect("two terms");
    Ok(Some(([a[0] - b[0], a[1] - b[1]], f.neg(&f.div(ub, ua)?))))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn solve_binomials(
    h: &Hyperfield,
    f: &FieldKind,
    mut r1: ([i64; 2], HElem),
    mut r2: ([i64; 2], HElem),
) -> Result<Vec<TorusPiece>> {
    let det = r1.0[0] * r2.0[1] - r1.0[1] * r2.0[0];
    if det == 0 {
        let g = gcd(r1.0[0], r1.0[1]);
        let w = [r1.0[0] / g, r1.0[1] / g];
        let k1 = g;
        let k2 = if w[0] != 0 {
            r2.0[0] / w[0]
        } else {
            r2.0[1] / w[1]
        };
        let mut out = Vec::new();
        for rho in field_kth_roots(f, &r1.1, k1)? {
            if f.pow(&rho, k2)? != r2.1 {
                continue;
            }
            let fixed = match w {
                [1, 0] | [-1, 0] => fixed(0, f.pow(&rho, w[0])?),
                [0, 1] | [0, -1] => fixed(1, f.pow(&rho, w[1])?),
                _ => [None, None],
            };
            let eq: Laurent2 = [(w, f.one()), ([0, 0], f.neg(&rho))].into_iter().collect();
            out.push(TorusPiece::Family {
                fixed,
                equations: vec![format!("{} = 0", laurent_text(h, &eq))],
            });
        }
        return Ok(out);
    }
    while r2.0[0] != 0 {
        let q = r1.0[0] / r2.0[0];
        r1.0 = [r1.0[0] - q * r2.0[0], r1.0[1] - q * r2.0[1]];
        r1.1 = f.mul(&r1.1, &f.pow(&r2.1, -q)?);
        std::mem::swap(&mut r1, &mut r2);
    }
    let mut out = Vec::new();
    for y in field_kth_roots(f, &r2.1, r2.0[1])? {
        let s = f.div(&r1.1, &f.pow(&y, r1.0[1])?)?;
        for x in field_kth_roots(f, &s, r1.0[0])? {
            out.push(TorusPiece::Point([x, y.clone()]));
        }
    }
    Ok(out)
}

/// Split `p = v^e (A(w)·v + B(w))` along unit `var`; `p` has span 1 in `var`.
fn linear_parts(f: &FieldKind, p: &Laurent2, var: usize) -> (Laurent1, Laurent1) {
    let lo = p.keys().map(|e| e[var]).min().unwrap_or(0);
    let (mut a, mut b) = (Laurent1::new(), Laurent1::new());
    for (e, c) in p {
        let target = if e[var] == lo { &mut b } else { &mut a };
        u_add_term(f, target, e[1 - var], c.clone());
    }
    (a, b)
}

fn solve_linear(
    h: &Hyperfield,
    f: &FieldKind,
    eqs: &[Laurent2; 2],
    var: usize,
) -> Result<Vec<TorusPiece>> {
    let (a1, b1) = linear_parts(f, &eqs[0], var);
    let (a2, b2) = linear_parts(f, &eqs[1], var);
    let res = u_sub(f, &u_mul(f, &a1, &b2), &u_mul(f, &a2, &b1));
    if res.is_empty() {
        return Ok(vec![family(h, eqs, [None, None])]);
    }
    let mut out = Vec::new();
    for w in u_roots(f, &res)? {
        let (va1, vb1) = (u_eval(f, &a1, &w)?, u_eval(f, &b1, &w)?);
        let (va2, vb2) = (u_eval(f, &a2, &w)?, u_eval(f, &b2, &w)?);
        let v = if !va1.is_zero() {
            f.neg(&f.div(&vb1, &va1)?)
        } else if !vb1.is_zero() {
            continue;
        } else if !va2.is_zero() {
            f.neg(&f.div(&vb2, &va2)?)
        } else if vb2.is_zero() {
            out.push(family(h, eqs, fixed(1 - var, w)));
            continue;
        } else {
            continue;
        };
        if !v.is_zero() {
            out.push(TorusPiece::Point(point(var, v, w)));
        }
    }
    Ok(out)
}

fn family(h: &Hyperfield, eqs: &[Laurent2], fixed: [Option<HElem>; 2]) -> TorusPiece {
    TorusPiece::Family {
        fixed,
        equations: eqs
            .iter()
            .map(|p| format!("{} = 0", laurent_text(h, p)))
            .collect(),
    }
}

fn system_text(h: &Hyperfield, eqs: &[Laurent2]) -> String {
    eqs.iter()
        .map(|p| format!("{} = 0", laurent_text(h, p)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn solve_field_pair(h: &Hyperfield, f: &FieldKind, eqs: &[Laurent2; 2]) -> Result<Vec<TorusPiece>> {
    let dep = |i: usize, v: usize| depends(&eqs[i], v);
    // An equation in one unit `w` alone.
    for i in 0..2 {
        for w in 0..2 {
            if dep(i, w) && !dep(i, 1 - w) {
                let mut out = Vec::new();
                let other = &eqs[1 - i];
                for x in u_roots(f, &restrict(f, &eqs[i], 1 - w, &f.one())?)? {
                    let rest = restrict(f, other, w, &x)?;
                    if rest.is_empty() {
                        out.push(family(h, &eqs[..], fixed(w, x)));
                        continue;
                    }
                    for v in u_roots(f, &rest)? {
                        out.push(TorusPiece::Point(point(1 - w, v, x.clone())));
                    }
                }
                return Ok(out);
            }
        }
    }
    if let (Some(r1), Some(r2)) = (binomial(f, &eqs[0])?, binomial(f, &eqs[1])?) {
        return solve_binomials(h, f, r1, r2);
    }
    for var in 0..2 {
        if span(&eqs[0], var) == 1 && span(&eqs[1], var) == 1 {
            return solve_linear(h, f, eqs, var);
        }
    }
    Err(Error::BaseSolveIncomplete(system_text(h, eqs)))
}

/// Every unit pair satisfying all `eqs`.  Points are verified and deduplicated.
pub fn solve_torus(h: &Hyperfield, eqs: &[Laurent2]) -> Result<Vec<TorusPiece>> {
    let eqs: Vec<Laurent2> = eqs.iter().filter(|p| !p.is_empty()).cloned().collect();
    let mut pieces = match (h, eqs.len()) {
        (_, 0) => vec![TorusPiece::Family {
            fixed: [None, None],
            equations: vec![],
        }],
        (Hyperfield::Phase | Hyperfield::TropicalPhase | Hyperfield::Extension { .. }, _) => {
            return Err(Error::Unsupported(format!("unit solving over {}", h.key())));
        }
        (Hyperfield::Field(f), 1) => {
            let p = &eqs[0];
            match (0..2).find(|&w| depends(p, w) && !depends(p, 1 - w)) {
                Some(w) => u_roots(f, &restrict(f, p, 1 - w, &f.one())?)?
                    .into_iter()
                    .map(|x| family(h, &eqs, fixed(w, x)))
                    .collect(),
                None => vec![family(h, &eqs, [None, None])],
            }
        }
        (Hyperfield::Field(f), 2) => solve_field_pair(h, f, &[eqs[0].clone(), eqs[1].clone()])?,
        (Hyperfield::Field(_), _) => return Err(Error::BaseSolveIncomplete(system_text(h, &eqs))),
        _ => {
            let units: Vec<HElem> = h
                .elements()
                .expect("finite")
                .into_iter()
                .filter(|x| !x.is_zero())
                .collect();
            let mut out = Vec::new();
            for x in &units {
                for y in &units {
                    let c = [x.clone(), y.clone()];
                    if eqs.iter().try_fold(true, |ok, p| {
                        Ok::<_, Error>(ok && condition_holds(h, p, &c)?)
                    })? {
                        out.push(TorusPiece::Point(c));
                    }
                }
            }
            out
        }
    };
    let mut seen = Vec::new();
    let mut kept = Vec::new();
    for piece in pieces.drain(..) {
        if let TorusPiece::Point(c) = &piece {
            if c.iter().any(HElem::is_zero) || seen.contains(c) {
                continue;
            }
            for p in &eqs {
                if !condition_holds(h, p, c)? {
                    return Err(Error::BaseSolveIncomplete(format!(
                        "spurious unit solution for {}",
                        system_text(h, &eqs)
                    )));
                }
            }
            seen.push(c.clone());
        }
        kept.push(piece);
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[([i64; 2], i64)]) -> Laurent2 {
        terms.iter().map(|(e, c)| (*e, HElem::int(*c))).collect()
    }

    fn points(ps: &[TorusPiece]) -> Vec<[HElem; 2]> {
        ps.iter()
            .filter_map(|p| match p {
                TorusPiece::Point(c) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn linear_pair() {
        let q = Hyperfield::rationals();
        // c_X + c_Y − 1 = 0, c_X + 2 c_Y + 1 = 0
        let e1 = lp(&[([1, 0], 1), ([0, 1], 1), ([0, 0], -1)]);
        let e2 = lp(&[([1, 0], 1), ([0, 1], 2), ([0, 0], 1)]);
        assert_eq!(
            points(&solve_torus(&q, &[e1, e2]).unwrap()),
            vec![[HElem::int(3), HElem::int(-2)]]
        );
    }

    #[test]
    fn binomial_pair_counts_determinant() {
        let g = Hyperfield::gaussian();
        let one = FieldKind::Gaussian.one();
        // c_X^2 = c_Y^2 and c_X c_Y = 1: four solutions over ℚ(i)
        let e1: Laurent2 = [
            ([2, 0], one.clone()),
            ([0, 2], FieldKind::Gaussian.neg(&one)),
        ]
        .into_iter()
        .collect();
        let e2: Laurent2 = [
            ([1, 1], one.clone()),
            ([0, 0], FieldKind::Gaussian.neg(&one)),
        ]
        .into_iter()
        .collect();
        assert_eq!(points(&solve_torus(&g, &[e1, e2]).unwrap()).len(), 4);
    }

    #[test]
    fn single_unit_equations_leave_a_free_unit() {
        let q = Hyperfield::rationals();
        let e = lp(&[([0, 1], 1), ([0, 0], 1)]);
        let out = solve_torus(&q, &[e.clone(), e]).unwrap();
        assert_eq!(out.len(), 1);
        match &out[0] {
            TorusPiece::Family { fixed, .. } => assert_eq!(fixed, &[None, Some(HElem::int(-1))]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finite_base_enumerates() {
        let s = Hyperfield::Sign;
        let e1: Laurent2 = [([1, 0], HElem::Sign(1)), ([0, 0], HElem::Sign(-1))]
            .into_iter()
            .collect();
        let e2: Laurent2 = [([0, 1], HElem::Sign(1)), ([1, 0], HElem::Sign(1))]
            .into_iter()
            .collect();
        let pts = points(&solve_torus(&s, &[e1, e2]).unwrap());
        assert_eq!(pts, vec![[HElem::Sign(1), HElem::Sign(-1)]]);
    }

    #[test]
    fn unsupported_shape_is_reported() {
        let q = Hyperfield::rationals();
        let e1 = lp(&[([2, 0], 1), ([0, 2], 1), ([0, 0], -5)]);
        let e2 = lp(&[([2, 1], 1), ([0, 0], 1), ([1, 2], 3)]);
        assert!(matches!(
            solve_torus(&q, &[e1, e2]),
            Err(Error::BaseSolveIncomplete(_))
        ));
        assert_eq!(
            laurent_text(&q, &lp(&[([1, 0], 1), ([0, 1], 1), ([0, 0], -1)])),
            "c_X + c_Y - 1"
        );
    }
}
