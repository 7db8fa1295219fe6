//! Multiplicities over finite quotient hyperfields against a brute-force
//! recursion on residues, including polynomials whose multiplicities exceed
//! their degree.

use std::collections::{BTreeSet, HashMap};

use hyperfield_core::poly::HPoly;
use hyperfield_core::solve::multiplicity;
use hyperfield_core::{HElem, Hyperfield};

/// `GF(q)/U` on residues: a class is named by its least member, `0` is zero.
struct Residues {
    q: i64,
    units: Vec<i64>,
}

impl Residues {
    fn class(&self, x: i64) -> i64 {
        let x = x.rem_euclid(self.q);
        if x == 0 {
            0
        } else {
            self.units.iter().map(|u| x * u % self.q).min().unwrap()
        }
    }

    fn members(&self, a: i64) -> Vec<i64> {
        if a == 0 {
            vec![0]
        } else {
            self.units.iter().map(|u| a * u % self.q).collect()
        }
    }

    fn add(&self, a: i64, b: i64) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for x in self.members(a) {
            for y in self.members(b) {
                out.insert(self.class(x + y));
            }
        }
        out
    }

    fn mul(&self, a: i64, b: i64) -> i64 {
        self.class(a * b)
    }

    fn elements(&self) -> Vec<i64> {
        (0..self.q)
            .map(|x| self.class(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    fn is_root(&self, p: &[i64], a: i64) -> bool {
        let mut acc = BTreeSet::from([p[0]]);
        let mut pow = 1;
        for c in &p[1..] {
            pow = self.mul(pow, a);
            let t = self.mul(*c, pow);
            acc = acc.iter().flat_map(|s| self.add(*s, t)).collect();
        }
        acc.contains(&0)
    }

    /// `1 + max mult(q)` over every `q` with `p ∈ (X ⊞ −a)·q`.
    fn mult(&self, p: &[i64], a: i64, memo: &mut HashMap<Vec<i64>, usize>) -> usize {
        if let Some(m) = memo.get(p) {
            return *m;
        }
        if !self.is_root(p, a) {
            return 0;
        }
        let d = p.len() - 1;
        let na = self.class(-a);
        let elems = self.elements();
        let mut best = 0;
        let mut q = vec![0; d];
        q[d - 1] = p[d];
        let free = d - 1;
        for code in 0..elems.len().pow(free as u32) {
            let mut c = code;
            for slot in q.iter_mut().take(free) {
                *slot = elems[c % elems.len()];
                c /= elems.len();
            }
            let divides = p[0] == self.mul(na, q[0])
                && (1..d).all(|i| self.add(q[i - 1], self.mul(na, q[i])).contains(&p[i]));
            if divides {
                best = best.max(self.mult(&q, a, memo));
            }
        }
        memo.insert(p.to_vec(), best + 1);
        best + 1
    }
}

fn to_poly(h: &Hyperfield, r: &Residues, p: &[i64]) -> HPoly {
    let elem = |x: i64| -> HElem {
        match h {
            Hyperfield::Quotient(t) if x != 0 => HElem::Coset(t.coset_of(x as u32)),
            _ => HElem::Zero,
        }
    };
    let coeffs: Vec<HElem> = p.iter().map(|&x| elem(r.class(x))).collect();
    HPoly::univariate(h.clone(), &coeffs).unwrap()
}

fn unit_elem(h: &Hyperfield, x: i64) -> HElem {
    match h {
        Hyperfield::Quotient(t) => HElem::Coset(t.coset_of(x as u32)),
        _ => unreachable!(),
    }
}

fn cases() -> Vec<(Hyperfield, Residues)> {
    vec![
        (
            Hyperfield::quotient(5, &[1, 4]).unwrap(),
            Residues {
                q: 5,
                units: vec![1, 4],
            },
        ),
        (
            Hyperfield::quotient(7, &[1, 2, 4]).unwrap(),
            Residues {
                q: 7,
                units: vec![1, 2, 4],
            },
        ),
        (
            Hyperfield::quotient(7, &[1, 6]).unwrap(),
            Residues {
                q: 7,
                units: vec![1, 6],
            },
        ),
    ]
}

#[test]
fn multiplicities_match_brute_force_through_degree_three() {
    for (h, r) in cases() {
        let elems = r.elements();
        let units: Vec<i64> = elems.iter().copied().filter(|&x| x != 0).collect();
        for d in 1..=3usize {
            let n = elems.len().pow(d as u32);
            for code in 0..n {
                let mut c = code;
                let mut p: Vec<i64> = (0..d)
                    .map(|_| {
                        let e = elems[c % elems.len()];
                        c /= elems.len();
                        e
                    })
                    .collect();
                for &lead in &units {
                    p.truncate(d);
                    p.push(lead);
                    let poly = to_poly(&h, &r, &p);
                    for &a in &units {
                        let want = r.mult(&p, a, &mut HashMap::new());
                        let got = multiplicity(&poly, &unit_elem(&h, a)).unwrap();
                        assert_eq!(got, want, "{} {poly} at {a}", h.key());
                    }
                }
            }
        }
    }
}

#[test]
fn non_stringent_quotients_exceed_the_degree_bound() {
    for (h, r, p) in [
        (
            Hyperfield::quotient(5, &[1, 4]).unwrap(),
            Residues {
                q: 5,
                units: vec![1, 4],
            },
            vec![1, 0, 1],
        ),
        (
            Hyperfield::quotient(7, &[1, 2, 4]).unwrap(),
            Residues {
                q: 7,
                units: vec![1, 2, 4],
            },
            vec![1, 1, 1],
        ),
    ] {
        let poly = to_poly(&h, &r, &p);
        let units: Vec<i64> = r.elements().into_iter().filter(|&x| x != 0).collect();
        let oracle: usize = units
            .iter()
            .map(|&a| r.mult(&p, a, &mut HashMap::new()))
            .sum();
        let got: usize = units
            .iter()
            .map(|&a| multiplicity(&poly, &unit_elem(&h, a)).unwrap())
            .sum();
        assert_eq!((got, oracle), (4, 4), "{} {poly}", h.key());
        assert!(!h.is_stringent());
    }
}
