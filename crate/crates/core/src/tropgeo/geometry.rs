//! Relatively open polyhedra of dimension ≤ 1 in ℚ², exactly.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::rat::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Gt,
}

/// `normal · (g_X, g_Y) + offset` related to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: [i64; 2],
    pub offset: Rational,
    pub rel: Relation,
}

fn r(n: i64) -> Rational {
    rat::rat(n)
}

fn dot(n: &[i64; 2], p: &[Rational; 2]) -> Rational {
    r(n[0]) * &p[0] + r(n[1]) * &p[1]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Primitive, first nonzero entry positive.
fn canonical_dir(d: [i64; 2]) -> [i64; 2] {
    let g = gcd(d[0], d[1]).max(1);
    let d = [d[0] / g, d[1] / g];
    if d[0] < 0 || (d[0] == 0 && d[1] < 0) {
        [-d[0], -d[1]]
    } else {
        d
    }
}

fn perp(d: &[i64; 2]) -> [i64; 2] {
    [-d[1], d[0]]
}

impl Constraint {
    pub fn new(normal: [i64; 2], offset: Rational, rel: Relation) -> Self {
        Constraint {
            normal,
            offset,
            rel,
        }
    }

    pub fn value(&self, g: &[Rational; 2]) -> Rational {
        dot(&self.normal, g) + &self.offset
    }

    pub fn holds(&self, g: &[Rational; 2]) -> bool {
        let v = self.value(g);
        match self.rel {
            Relation::Eq => v.is_zero(),
            Relation::Gt => v.is_positive(),
        }
    }

    /// `g_X - g_Y + 1 > 0`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, name) in ["g_X", "g_Y"].iter().enumerate() {
            let a = self.normal[k];
            if a == 0 {
                continue;
            }
            let sign = if a < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let sep = if out.is_empty() { "" } else { " " };
            let space = if out.is_empty() || sign.is_empty() {
                ""
            } else {
                " "
            };
            let mag = if a.abs() == 1 {
                String::new()
            } else {
                format!("{}*", a.abs())
            };
            out.push_str(&format!("{sep}{sign}{space}{mag}{name}"));
        }
        if !self.offset.is_zero() || out.is_empty() {
            let off = &self.offset;
            if out.is_empty() {
                out.push_str(&rat::fmt_rational(off));
            } else if off.is_negative() {
                out.push_str(&format!(" - {}", rat::fmt_rational(&-off.clone())));
            } else {
                out.push_str(&format!(" + {}", rat::fmt_rational(off)));
            }
        }
        let rel = match self.rel {
            Relation::Eq => "=",
            Relation::Gt => ">",
        };
        format!("{out} {rel} 0")
    }
}

/// A point, or a relatively open segment, ray or line
/// `{p : perp(dir)·p = offset}` between `start` and `end` along `dir`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum Locus {
    Point([Rational; 2]),
    Edge {
        dir: [i64; 2],
        offset: Rational,
        start: Option<[Rational; 2]>,
        end: Option<[Rational; 2]>,
    },
}

fn along(p0: &[Rational; 2], dir: &[i64; 2], s: &Rational) -> [Rational; 2] {
    [&p0[0] + s * r(dir[0]), &p0[1] + s * r(dir[1])]
}

fn max_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

impl Locus {
    /// The solution set of the constraints, when it is nonempty.  At least
    /// one equality must be present.
    pub fn from_constraints(cs: &[Constraint]) -> Option<Locus> {
        let eqs: Vec<&Constraint> = cs.iter().filter(|c| c.rel == Relation::Eq).collect();
        let first = eqs.first()?;
        let (a1, b1) = (first.normal[0], first.normal[1]);
        if let Some(second) = eqs
            .iter()
            .find(|c| a1 * c.normal[1] - b1 * c.normal[0] != 0)
        {
            let (a2, b2) = (second.normal[0], second.normal[1]);
            let det = r(a1 * b2 - b1 * a2);
            let (c1, c2) = (-first.offset.clone(), -second.offset.clone());
            let p = [
                (&c1 * r(b2) - &c2 * r(b1)) / &det,
                (&c2 * r(a1) - &c1 * r(a2)) / &det,
            ];
            return cs.iter().all(|c| c.holds(&p)).then_some(Locus::Point(p));
        }
        let p0 = if b1 != 0 {
            [Rational::zero(), -first.offset.clone() / r(b1)]
        } else {
            [-first.offset.clone() / r(a1), Rational::zero()]
        };
        if !eqs.iter().all(|c| c.holds(&p0)) {
            return None;
        }
        let dir = canonical_dir([-b1, a1]);
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for c in cs.iter().filter(|c| c.rel == Relation::Gt) {
            let v0 = c.value(&p0);
            let slope = r(c.normal[0] * dir[0] + c.normal[1] * dir[1]);
            if slope.is_zero() {
                if !v0.is_positive() {
                    return None;
                }
            } else if slope.is_positive() {
                lo = max_opt(lo, Some(-v0 / slope));
            } else {
                hi = min_opt(hi, Some(-v0 / slope));
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return None;
            }
        }
        Some(Locus::Edge {
            dir,
            offset: dot(&perp(&dir), &p0),
            start: lo.map(|s| along(&p0, &dir, &s)),
            end: hi.map(|s| along(&p0, &dir, &s)),
        })
    }

    pub fn dimension(&self) -> usize {
        match self {
            Locus::Point(_) => 0,
            Locus::Edge { .. } => 1,
        }
    }

    pub fn contains(&self, p: &[Rational; 2]) -> bool {
        match self {
            Locus::Point(q) => q == p,
            Locus::Edge {
                dir,
                offset,
                start,
                end,
            } => {
                let t = dot(dir, p);
                dot(&perp(dir), p) == *offset
                    && start.as_ref().is_none_or(|s| dot(dir, s) < t)
                    && end.as_ref().is_none_or(|e| t < dot(dir, e))
            }
        }
    }

    /// Some point of the locus: the point itself, or a point on the edge.
    pub fn sample_point(&self) -> [Rational; 2] {
        match self {
            Locus::Point(p) => p.clone(),
            Locus::Edge {
                dir,
                offset,
                start,
                end,
            } => match (start, end) {
                (Some(s), Some(e)) => [(&s[0] + &e[0]) / r(2), (&s[1] + &e[1]) / r(2)],
                (Some(s), None) => along(s, dir, &r(1)),
                (None, Some(e)) => along(e, dir, &r(-1)),
                (None, None) => line_point(dir, offset),
            },
        }
    }

    pub fn intersect(&self, other: &Locus) -> Option<Locus> {
        match (self, other) {
            (Locus::Point(p), o) | (o, Locus::Point(p)) => {
                o.contains(p).then(|| Locus::Point(p.clone()))
            }
            (
                Locus::Edge {
                    dir: d1,
                    offset: o1,
                    start: s1,
                    end: e1,
                },
                Locus::Edge {
                    dir: d2,
                    offset: o2,
                    start: s2,
                    end: e2,
                },
            ) => {
                if d1 == d2 {
                    if o1 != o2 {
                        return None;
                    }
                    let t = |p: &Option<[Rational; 2]>| p.as_ref().map(|p| (dot(d1, p), p.clone()));
                    let start = match (t(s1), t(s2)) {
                        (Some(a), Some(b)) => Some(if a.0 >= b.0 { a } else { b }),
                        (x, None) | (None, x) => x,
                    };
                    let end = match (t(e1), t(e2)) {
                        (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
                        (x, None) | (None, x) => x,
                    };
                    if let (Some(s), Some(e)) = (&start, &end) {
                        if s.0 >= e.0 {
                            return None;
                        }
                    }
                    return Some(Locus::Edge {
                        dir: *d1,
                        offset: o1.clone(),
                        start: start.map(|x| x.1),
                        end: end.map(|x| x.1),
                    });
                }
                let (n1, n2) = (perp(d1), perp(d2));
                let det = r(n1[0] * n2[1] - n1[1] * n2[0]);
                let p = [
                    (o1 * r(n2[1]) - o2 * r(n1[1])) / &det,
                    (o2 * r(n1[0]) - o1 * r(n2[0])) / &det,
                ];
                (self.contains(&p) && other.contains(&p)).then_some(Locus::Point(p))
            }
        }
    }

    /// Deterministic order: points before edges, then by coordinates.
    pub fn sort_key(&self) -> (usize, Vec<Rational>) {
        let flat = |p: &Option<[Rational; 2]>| match p {
            Some(p) => vec![r(1), p[0].clone(), p[1].clone()],
            None => vec![r(0)],
        };
        match self {
            Locus::Point(p) => (0, p.to_vec()),
            Locus::Edge {
                dir,
                offset,
                start,
                end,
            } => {
                let mut k = vec![r(dir[0]), r(dir[1]), offset.clone()];
                k.extend(flat(start));
                k.extend(flat(end));
                (1, k)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let pt = |p: &[Rational; 2]| json!([rat::fmt_rational(&p[0]), rat::fmt_rational(&p[1])]);
        match self {
            Locus::Point(p) => json!({"type": "point", "at": pt(p)}),
            Locus::Edge {
                dir, start, end, ..
            } => json!({
                "type": match (start, end) {
                    (Some(_), Some(_)) => "segment",
                    (None, None) => "line",
                    _ => "ray",
                },
                "direction": dir,
                "through": pt(&self.sample_point()),
                "start": start.as_ref().map(pt),
                "end": end.as_ref().map(pt),
            }),
        }
    }
}

fn line_point(dir: &[i64; 2], offset: &Rational) -> [Rational; 2] {
    let n = perp(dir);
    if n[1] != 0 {
        [Rational::zero(), offset / r(n[1])]
    } else {
        [offset / r(n[0]), Rational::zero()]
    }
}
