//! Finite fields GF(p^k) and their quotients by multiplicative subgroups.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// GF(p^k); elements are integers whose base-`p` digits are polynomial
/// coefficients modulo a fixed monic irreducible of degree `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

fn poly_rem(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    let dl = den.len();
    let lead_inv = pow_mod(den[dl - 1], p - 2, p);
    while num.len() >= dl {
        let top = *num.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = num.len() - dl;
            for (i, &c) in den.iter().enumerate() {
                num[shift + i] = (num[shift + i] + p - f * c % p) % p;
            }
        }
        num.pop();
    }
    num
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    b = acc as u32;
    b
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push(n % p);
        n /= p;
    }
    v
}

fn irreducible(p: u32, k: u32) -> Vec<u32> {
    let pk = p.pow(k);
    for low in 0..pk {
        let mut f = digits(low, p, k as usize);
        f.push(1);
        let reducible = (1..=k / 2).any(|d| {
            (0..p.pow(d)).any(|g_low| {
                let mut g = digits(g_low, p, d as usize);
                g.push(1);
                poly_rem(f.clone(), &g, p).iter().all(|&c| c == 0)
            })
        });
        if !reducible {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_ORDER {
            return Err(Error::BadFieldOrder(q));
        }
        let (p, k) = prime_power(q).ok_or(Error::BadFieldOrder(q))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            irreducible(p, k)
        };
        Ok(FiniteField {
            p,
            k,
            q: q as u32,
            modulus,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn is_prime(&self) -> bool {
        self.k == 1
    }

    /// Reduces an arbitrary integer literal; digit-wise for prime powers.
    pub fn from_int(&self, n: i64) -> u32 {
        if self.k == 1 {
            n.rem_euclid(self.p as i64) as u32
        } else {
            n.rem_euclid(self.q as i64) as u32
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (
            digits(a, self.p, self.k as usize),
            digits(b, self.p, self.k as usize),
        );
        self.pack(da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        self.pack(
            digits(a, self.p, self.k as usize)
                .iter()
                .map(|x| (self.p - x) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (da, db) = (
            digits(a, self.p, self.k as usize),
            digits(b, self.p, self.k as usize),
        );
        let mut prod = vec![0u32; 2 * self.k as usize - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(prod, &self.modulus, self.p);
        r.resize(self.k as usize, 0);
        self.pack(r)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut acc, mut base) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::NoInverseOfZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    fn pack(&self, ds: Vec<u32>) -> u32 {
        ds.iter().rev().fold(0, |acc, d| acc * self.p + d)
    }

    pub fn units(&self) -> impl Iterator<Item = u32> {
        1..self.q
    }
}

/// Coset tables of `GF(q)/U`; coset 0 is `{0}` and cosets are numbered by
/// their least element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuotientTable {
    field: FiniteField,
    subgroup: Vec<u32>,
    coset_of: Vec<u32>,
    reps: Vec<u32>,
    add: Vec<Vec<BTreeSet<u32>>>,
    mul: Vec<Vec<u32>>,
    neg: Vec<u32>,
}

impl QuotientTable {
    pub fn build(q: u64, units: &[i64]) -> Result<Self> {
        let field = FiniteField::new(q)?;
        let sub: BTreeSet<u32> = units.iter().map(|&u| field.from_int(u)).collect();
        if sub.contains(&0) {
            return Err(Error::NotSubgroup("contains zero".into()));
        }
        if !sub.contains(&1) {
            return Err(Error::NotSubgroup("does not contain 1".into()));
        }
        for &a in &sub {
            for &b in &sub {
                if !sub.contains(&field.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a}·{b} leaves the set")));
                }
            }
        }
        let subgroup: Vec<u32> = sub.into_iter().collect();
        let mut coset_of = vec![u32::MAX; field.order() as usize];
        coset_of[0] = 0;
        let mut reps = vec![0u32];
        for a in field.units() {
            if coset_of[a as usize] == u32::MAX {
                let idx = reps.len() as u32;
                for &u in &subgroup {
                    coset_of[field.mul(a, u) as usize] = idx;
                }
                reps.push(a);
            }
        }
        let n = reps.len();
        let mut add = vec![vec![BTreeSet::new(); n]; n];
        let mut mul = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                for &u in &subgroup {
                    for &v in &subgroup {
                        let s = field.add(field.mul(reps[i], u), field.mul(reps[j], v));
                        add[i][j].insert(coset_of[s as usize]);
                    }
                }
                mul[i][j] = coset_of[field.mul(reps[i], reps[j]) as usize];
            }
        }
        let neg = reps
            .iter()
            .map(|&r| coset_of[field.neg(r) as usize])
            .collect();
        Ok(QuotientTable {
            field,
            subgroup,
            coset_of,
            reps,
            add,
            mul,
            neg,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn subgroup(&self) -> &[u32] {
        &self.subgroup
    }

    /// Number of cosets including `{0}`.
    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_of(&self, a: u32) -> u32 {
        self.coset_of[a as usize]
    }

    pub fn rep(&self, coset: u32) -> u32 {
        self.reps[coset as usize]
    }

    pub fn members(&self, coset: u32) -> Vec<u32> {
        (0..self.field.order())
            .filter(|&a| self.coset_of[a as usize] == coset)
            .collect()
    }

    pub fn add(&self, i: u32, j: u32) -> &BTreeSet<u32> {
        &self.add[i as usize][j as usize]
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.mul[i as usize][j as usize]
    }

    pub fn neg(&self, i: u32) -> u32 {
        self.neg[i as usize]
    }

    pub fn inv(&self, i: u32) -> Result<u32> {
        let r = self.field.inv(self.rep(i))?;
        Ok(self.coset_of(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_matches_brute_force() {
        let f = FiniteField::new(7).unwrap();
        let brute = (1..7).find(|x| (3 * x) % 7 == 1).unwrap();
        assert_eq!(f.inv(3).unwrap(), brute);
        assert_eq!(brute, 5);
    }

    #[test]
    fn prime_power_fields_are_fields() {
        for q in [4u64, 8, 9, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in f.units() {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "GF({q}) inverse of {a}");
            }
        }
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
    }

    #[test]
    fn quotient_cosets_by_enumeration() {
        let t = QuotientTable::build(7, &[1, 2, 4]).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.members(1), vec![1, 2, 4]);
        assert_eq!(t.members(2), vec![3, 5, 6]);
        let t5 = QuotientTable::build(5, &[1, 4]).unwrap();
        assert!(t5.add(1, 1).contains(&0));
        let t3 = QuotientTable::build(3, &[1]).unwrap();
        assert_eq!(t3.size(), 3);
        assert_eq!(t3.add(1, 1).iter().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn non_subgroups_are_rejected() {
        assert!(matches!(
            QuotientTable::build(7, &[1, 3]),
            Err(Error::NotSubgroup(_))
        ));
        assert!(matches!(
            QuotientTable::build(7, &[2, 4]),
            Err(Error::NotSubgroup(_))
        ));
        assert!(matches!(
            QuotientTable::build(7, &[0, 1]),
            Err(Error::NotSubgroup(_))
        ));
    }
}
