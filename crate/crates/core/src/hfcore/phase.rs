//! Exact phase arithmetic on primitive integer directions.
//!
//! A hypersum in the phase hyperfields is the image of a convex cone: the
//! relative interior for `P`, the closed cone for `Φ`.  Cones are kept in a
//! canonical form so that equal sets compare equal structurally.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::Rational;

/// Ray through a nonzero integer vector; `gcd(|x|,|y|) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Dir {
    x: BigInt,
    y: BigInt,
}

impl Dir {
    /// `None` for the zero vector.
    pub fn new(x: BigInt, y: BigInt) -> Option<Dir> {
        if x.is_zero() && y.is_zero() {
            return None;
        }
        let g = x.gcd(&y);
        Some(Dir {
            x: x / &g,
            y: y / &g,
        })
    }

    pub fn from_i64(x: i64, y: i64) -> Option<Dir> {
        Dir::new(BigInt::from(x), BigInt::from(y))
    }

    pub fn one() -> Dir {
        Dir {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    /// Direction of a nonzero rational vector.
    pub fn from_rationals(re: &Rational, im: &Rational) -> Option<Dir> {
        let l = re.denom().lcm(im.denom());
        let x = (re * Rational::from_integer(l.clone())).to_integer();
        let y = (im * Rational::from_integer(l)).to_integer();
        Dir::new(x, y)
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    /// Complex multiplication of representatives, then normalization.
    pub fn mul(&self, o: &Dir) -> Dir {
        Dir::new(
            &self.x * &o.x - &self.y * &o.y,
            &self.x * &o.y + &self.y * &o.x,
        )
        .expect("product of nonzero vectors is nonzero")
    }

    pub fn inv(&self) -> Dir {
        Dir {
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    pub fn neg(&self) -> Dir {
        Dir {
            x: -&self.x,
            y: -&self.y,
        }
    }

    pub fn rot90(&self) -> Dir {
        Dir {
            x: -&self.y,
            y: self.x.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> Dir {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Dir::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn cross(&self, o: &Dir) -> BigInt {
        &self.x * &o.y - &self.y * &o.x
    }

    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Counterclockwise order starting at the positive real axis.
    pub fn angle_cmp(&self, o: &Dir) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            let c = self.cross(o);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dir({},{})", self.x, self.y)
    }
}

/// Solves `d = λ·s + μ·e` exactly; `None` when `s`, `e` are parallel.
pub fn positive_combination(d: &Dir, s: &Dir, e: &Dir) -> Option<(Rational, Rational)> {
    let det = s.cross(e);
    if det.is_zero() {
        return None;
    }
    let lambda = Rational::new(d.cross(e), det.clone());
    let mu = Rational::new(s.cross(d), det);
    Some((lambda, mu))
}

/// Closed convex cone in the plane, canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Cone {
    Origin,
    Ray(Dir),
    /// Counterclockwise from the first to the second generator, angle in (0, π).
    Sector(Dir, Dir),
    /// Both directions of a line; the representative lies in the upper half.
    Line(Dir),
    /// Closed half-plane swept counterclockwise from the direction to its negative.
    HalfPlane(Dir),
    Plane,
}

impl Cone {
    /// The cone generated by finitely many directions.
    pub fn generated_by(dirs: impl IntoIterator<Item = Dir>) -> Cone {
        let mut ds: Vec<Dir> = dirs.into_iter().collect();
        ds.sort_by(|a, b| a.angle_cmp(b));
        ds.dedup();
        let n = ds.len();
        match n {
            0 => return Cone::Origin,
            1 => return Cone::Ray(ds.pop().unwrap()),
            _ => {}
        }
        let mut pi_gaps = Vec::new();
        for i in 0..n {
            let (a, b) = (&ds[i], &ds[(i + 1) % n]);
            let c = a.cross(b);
            if c.is_negative() {
                return Cone::Sector(b.clone(), a.clone());
            }
            if c.is_zero() {
                pi_gaps.push(i);
            }
        }
        match pi_gaps.len() {
            0 => Cone::Plane,
            1 => Cone::HalfPlane(ds[(pi_gaps[0] + 1) % n].clone()),
            _ => {
                let a = &ds[0];
                Cone::Line(if a.half() == 0 { a.clone() } else { a.neg() })
            }
        }
    }

    pub fn generators(&self) -> Vec<Dir> {
        match self {
            Cone::Origin => vec![],
            Cone::Ray(a) => vec![a.clone()],
            Cone::Sector(a, b) => vec![a.clone(), b.clone()],
            Cone::Line(a) => vec![a.clone(), a.neg()],
            Cone::HalfPlane(a) => vec![a.clone(), a.rot90(), a.neg()],
            Cone::Plane => {
                let e = Dir::one();
                vec![e.clone(), e.rot90(), e.neg(), e.neg().rot90()]
            }
        }
    }

    pub fn is_pointed(&self) -> bool {
        matches!(self, Cone::Origin | Cone::Ray(_) | Cone::Sector(..))
    }

    pub fn rotate(&self, u: &Dir) -> Cone {
        Cone::generated_by(self.generators().iter().map(|g| g.mul(u)))
    }
}

/// Which phase hyperfield an arc set lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Flavor {
    /// `P`: open arcs, antipodal sums are `{a, 0, -a}`.
    Open,
    /// `Φ`: closed arcs, antipodal sums are everything.
    Closed,
}

/// Counterclockwise arc of angle at most π; `start == end` is a single direction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Arc {
    pub start: Dir,
    pub end: Dir,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl Arc {
    pub fn point(d: Dir) -> Arc {
        Arc {
            start: d.clone(),
            end: d,
            start_closed: true,
            end_closed: true,
        }
    }

    pub fn contains(&self, d: &Dir) -> bool {
        if self.start == self.end {
            return *d == self.start;
        }
        if *d == self.start {
            return self.start_closed;
        }
        if *d == self.end {
            return self.end_closed;
        }
        match positive_combination(d, &self.start, &self.end) {
            Some((l, m)) => {
                self.start.cross(&self.end).is_positive() && l.is_positive() && m.is_positive()
            }
            // antipodal endpoints: the half-plane to the left of `start`
            None => self.start.cross(d).is_positive(),
        }
    }
}

/// Subset of `P` or `Φ`: sorted disjoint arcs plus whole-circle and zero flags.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ArcSet {
    pub arcs: Vec<Arc>,
    pub whole_circle: bool,
    pub zero_included: bool,
}

impl ArcSet {
    pub fn zero() -> ArcSet {
        ArcSet {
            arcs: vec![],
            whole_circle: false,
            zero_included: true,
        }
    }

    pub fn point(d: Dir) -> ArcSet {
        ArcSet {
            arcs: vec![Arc::point(d)],
            whole_circle: false,
            zero_included: false,
        }
    }

    pub fn from_cone(cone: &Cone, flavor: Flavor) -> ArcSet {
        let set = |arcs, whole, zero| ArcSet {
            arcs,
            whole_circle: whole,
            zero_included: zero,
        };
        let closed = flavor == Flavor::Closed;
        match cone {
            Cone::Origin => ArcSet::zero(),
            Cone::Ray(a) => ArcSet::point(a.clone()),
            Cone::Sector(a, b) => set(
                vec![Arc {
                    start: a.clone(),
                    end: b.clone(),
                    start_closed: closed,
                    end_closed: closed,
                }],
                false,
                false,
            ),
            _ if closed => set(vec![], true, true),
            Cone::Line(a) => set(
                vec![Arc::point(a.clone()), Arc::point(a.neg())],
                false,
                true,
            ),
            Cone::HalfPlane(a) => set(
                vec![Arc {
                    start: a.clone(),
                    end: a.neg(),
                    start_closed: false,
                    end_closed: false,
                }],
                false,
                false,
            ),
            Cone::Plane => set(vec![], true, true),
        }
    }

    /// The cone this canonical set is the image of.
    pub fn to_cone(&self) -> Cone {
        if self.whole_circle {
            return Cone::Plane;
        }
        Cone::generated_by(self.arcs.iter().flat_map(|a| {
            let mut g = vec![a.start.clone(), a.end.clone()];
            // a half-plane arc needs an interior direction to fix its side
            if a.start != a.end && a.start.cross(&a.end).is_zero() {
                g.push(a.start.rot90());
            }
            g
        }))
    }

    pub fn contains(&self, d: &Dir) -> bool {
        self.whole_circle || self.arcs.iter().any(|a| a.contains(d))
    }

    pub fn contains_zero(&self) -> bool {
        self.zero_included
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty() && !self.whole_circle && !self.zero_included
    }

    pub fn add(&self, other: &ArcSet, flavor: Flavor) -> ArcSet {
        let mut gens = self.to_cone().generators();
        gens.extend(other.to_cone().generators());
        ArcSet::from_cone(&Cone::generated_by(gens), flavor)
    }

    pub fn rotate(&self, u: &Dir, flavor: Flavor) -> ArcSet {
        ArcSet::from_cone(&self.to_cone().rotate(u), flavor)
    }

    /// Whether this set is a single direction.
    pub fn as_point(&self) -> Option<&Dir> {
        match self.arcs.as_slice() {
            [a] if a.start == a.end && !self.whole_circle && !self.zero_included => Some(&a.start),
            _ => None,
        }
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.whole_circle {
            parts.push("circle".to_string());
        }
        for a in &self.arcs {
            if a.start == a.end {
                parts.push(a.start.to_string());
            } else {
                let l = if a.start_closed { '[' } else { '(' };
                let r = if a.end_closed { ']' } else { ')' };
                parts.push(format!("arc{l}{}, {}{r}", a.start, a.end));
            }
        }
        if self.zero_included {
            parts.push("0".to_string());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: i64, y: i64) -> Dir {
        Dir::from_i64(x, y).unwrap()
    }

    #[test]
    fn normalization_and_products() {
        assert_eq!(d(4, -6), d(2, -3));
        assert!(Dir::from_i64(0, 0).is_none());
        assert_eq!(d(0, 1).mul(&d(0, 1)), d(-1, 0));
        assert_eq!(d(1, 1).inv(), d(1, -1));
        assert_eq!(d(1, 1).mul(&d(1, 1).inv()), Dir::one());
    }

    #[test]
    fn cone_shapes() {
        assert_eq!(Cone::generated_by(vec![]), Cone::Origin);
        assert_eq!(
            Cone::generated_by(vec![d(1, 0), d(2, 0)]),
            Cone::Ray(d(1, 0))
        );
        assert_eq!(
            Cone::generated_by(vec![d(0, 1), d(1, 0)]),
            Cone::Sector(d(1, 0), d(0, 1))
        );
        assert_eq!(
            Cone::generated_by(vec![d(0, -1), d(1, 0)]),
            Cone::Sector(d(0, -1), d(1, 0))
        );
        assert_eq!(
            Cone::generated_by(vec![d(-1, -1), d(1, 1)]),
            Cone::Line(d(1, 1))
        );
        assert_eq!(
            Cone::generated_by(vec![d(1, 0), d(-1, 0), d(0, 1)]),
            Cone::HalfPlane(d(1, 0))
        );
        assert_eq!(
            Cone::generated_by(vec![d(1, 0), d(-1, 0), d(0, -1)]),
            Cone::HalfPlane(d(-1, 0))
        );
        assert_eq!(
            Cone::generated_by(vec![d(1, 0), d(-1, 1), d(-1, -1)]),
            Cone::Plane
        );
    }

    #[test]
    fn open_arc_membership_by_linear_solve() {
        let arc = ArcSet::point(d(0, -1)).add(&ArcSet::point(d(-1, 1)), Flavor::Open);
        assert!(arc.contains(&d(-1, 0)));
        assert!(!arc.contains(&d(0, -1)) && !arc.contains(&d(1, 0)));
        assert_eq!(
            positive_combination(&d(-1, 0), &d(0, -1), &d(-1, 1)),
            Some((crate::rat::rat(1), crate::rat::rat(1)))
        );
    }

    #[test]
    fn canonical_sums() {
        let p = |a: ArcSet, b: ArcSet| a.add(&b, Flavor::Open);
        let s = p(ArcSet::point(d(1, 0)), ArcSet::point(d(0, 1)));
        assert_eq!(s.arcs.len(), 1);
        assert!(s.contains(&d(1, 1)) && !s.contains(&d(1, 0)) && !s.contains_zero());
        let anti = p(ArcSet::point(d(1, 2)), ArcSet::point(d(-1, -2)));
        assert!(anti.contains_zero() && anti.contains(&d(1, 2)) && anti.contains(&d(-1, -2)));
        assert!(!anti.contains(&d(1, 0)));
        let phi = ArcSet::point(d(1, 2)).add(&ArcSet::point(d(-1, -2)), Flavor::Closed);
        assert!(phi.whole_circle && phi.zero_included);
        let closed = ArcSet::point(d(1, 0)).add(&ArcSet::point(d(0, 1)), Flavor::Closed);
        assert!(closed.contains(&d(1, 0)) && closed.contains(&d(0, 1)));
    }
}
