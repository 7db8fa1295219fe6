//! Dense univariate polynomials over ℚ: exact division, rational roots and
//! Sturm counts.  Coefficients are stored low degree first, trimmed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{self, Rational};

pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat::rat(i as i64))
            .collect(),
    )
}

/// `(quotient, remainder)` of `a / b`; `b` nonzero.
pub fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("nonzero divisor");
    let mut r = trim(a.to_vec());
    let lead = b[db].clone();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &lead;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            let t = &r[i + dr - db] - &f * c;
            r[i + dr - db] = t;
        }
        q[dr - db] = f;
        r = trim(r);
    }
    (trim(q), r)
}

/// Synthetic division by `x − root`.
pub fn deflate(p: &[Rational], root: &Rational) -> Vec<Rational> {
    divmod(p, &[-root.clone(), Rational::one()]).0
}

/// Integer coefficients with the same roots: denominators cleared, content removed.
pub fn primitive(p: &[Rational]) -> Vec<BigInt> {
    let l = rat::lcm_of_denominators(p.iter());
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Rational roots with multiplicity, and the cofactor left after removing
/// them.  Zero is reported like any other root.
pub fn rational_roots(p: &[Rational]) -> (Vec<(Rational, usize)>, Vec<Rational>) {
    let mut rest = trim(p.to_vec());
    let mut out = Vec::new();
    let mut zeros = 0;
    while rest.len() > 1 && rest[0].is_zero() {
        rest.remove(0);
        zeros += 1;
    }
    if zeros > 0 {
        out.push((Rational::zero(), zeros));
    }
    if degree(&rest).is_none_or(|d| d == 0) {
        return (out, rest);
    }
    match degree(&rest) {
        Some(1) => {
            out.push((-&rest[0] / &rest[1], 1));
            return (out, vec![rest[1].clone()]);
        }
        Some(2) => {
            let (a, b, c) = (&rest[2], &rest[1], &rest[0]);
            let disc = b * b - rat::rat(4) * a * c;
            if let Some(s) = rational_sqrt(&disc) {
                let two_a = rat::rat(2) * a;
                let (r1, r2) = ((-b - &s) / &two_a, (-b + &s) / &two_a);
                if r1 == r2 {
                    out.push((r1, 2));
                } else {
                    out.push((r1, 1));
                    out.push((r2, 1));
                }
                return (out, vec![a.clone()]);
            }
            return (out, rest);
        }
        _ => {}
    }
    let ints = primitive(&rest);
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let ps = rat::divisors(&a0);
    let qs = rat::divisors(&an);
    let mut cands: Vec<Rational> = Vec::new();
    for p in &ps {
        for q in &qs {
            let r = Rational::new(p.clone(), q.clone());
            if !cands.contains(&r) {
                cands.push(r.clone());
                cands.push(-r);
            }
        }
    }
    for c in cands {
        let mut m = 0;
        while degree(&rest).is_some_and(|d| d > 0) && eval(&rest, &c).is_zero() {
            rest = deflate(&rest, &c);
            m += 1;
        }
        if m > 0 {
            out.push((c, m));
        }
    }
    (out, rest)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![trim(p.to_vec())];
    let d = derivative(p);
    if d.is_empty() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = divmod(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            return chain;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
}

/// Distinct real roots in `(0, ∞)` when `positive`, else in `(−∞, 0)`.
pub fn count_real_roots(p: &[Rational], positive: bool) -> usize {
    let mut q = trim(p.to_vec());
    while q.len() > 1 && q[0].is_zero() {
        q.remove(0);
    }
    if degree(&q).is_none_or(|d| d == 0) {
        return 0;
    }
    let chain = sturm_chain(&q);
    let at_zero = sign_changes(
        chain
            .iter()
            .map(|c| rat::sign_of(c.first().unwrap_or(&Rational::zero()))),
    );
    let at_inf = sign_changes(chain.iter().map(|c| {
        let lc = rat::sign_of(c.last().unwrap());
        if positive || (c.len() - 1) % 2 == 0 {
            lc
        } else {
            -lc
        }
    }));
    if positive {
        at_zero - at_inf
    } else {
        at_inf - at_zero
    }
}

/// Exact square root of a nonnegative rational, when it is a square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x − 1)^2 (2x + 3) x
        let p = v(&[0, 3, -4, -1, 2]);
        let (mut rs, rest) = rational_roots(&p);
        rs.sort();
        assert_eq!(rs, vec![(ratio(-3, 2), 1), (rat(0), 1), (rat(1), 2)]);
        assert_eq!(degree(&rest), Some(0));
    }

    #[test]
    fn irreducible_residual() {
        let (rs, rest) = rational_roots(&v(&[1, -1, 1]));
        assert!(rs.is_empty());
        assert_eq!(degree(&rest), Some(2));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(count_real_roots(&v(&[1, -1, 1]), true), 0);
        assert_eq!(count_real_roots(&v(&[1, -1, 1]), false), 0);
        // (x − 1)(x − 2)(x + 3)
        let p = v(&[6, -7, 0, 1]);
        assert_eq!(count_real_roots(&p, true), 2);
        assert_eq!(count_real_roots(&p, false), 1);
        // x^2 − 2 has one irrational root on each side
        assert_eq!(count_real_roots(&v(&[-2, 0, 1]), true), 1);
    }

    #[test]
    fn division() {
        let (q, r) = divmod(&v(&[-1, 0, 1]), &v(&[-1, 1]));
        assert_eq!(q, v(&[1, 1]));
        assert!(r.is_empty());
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
    }
}
