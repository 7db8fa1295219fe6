//! Fine tropical plane curves over `F⋊ℚ`, their intersections, stable
//! intersection by base perturbation, a series-side oracle, and
//! polyhedral-homotopy start systems.

mod geometry;
mod homotopy;
pub mod svg;
pub mod torus;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use geometry::{Constraint, Locus, Relation};
pub use homotopy::{
    homotopy_start, lift_system, mixed_volume, HomotopyStart, MixedCell, StartSolution,
};
pub use torus::{laurent_text, solve_torus, Laurent2, TorusPiece};

use crate::error::{Error, Result};
use crate::hfcore::{FieldKind, HElem, Hyperfield};
use crate::ordgroup::GroupElem;
use crate::poly::{HPoly, SeriesPoly};
use crate::rat::{self, Rational};
use crate::series::{HomDescriptor, SeriesTrunc};
use crate::solve::LinearSystem;

/// Supports with more terms than this are rejected by cell enumeration.
pub const MAX_SUPPORT: usize = 16;

/// Relative order kept when dividing series in the oracle.
const ORACLE_ORDER: i64 = 8;

/// A relatively open cell of the tropical curve with its initial-form
/// condition: `0 ∈ ⊞_{j∈J} u_j ⊙ c^{d_j}` over the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineCell {
    /// The exponents `J` attaining the minimum; `|J| ≥ 2`.
    pub support: Vec<[i64; 2]>,
    pub constraints: Vec<Constraint>,
    pub locus: Locus,
    pub condition: Laurent2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineCurve {
    source: HPoly,
    cells: Vec<FineCell>,
}

/// Rank-one level of an extension coefficient.
fn level_of(c: &HElem) -> Result<Rational> {
    let g = c
        .level()
        .ok_or_else(|| Error::KindMismatch(format!("{c} is not an extension unit")))?;
    if g.rank() != 1 {
        return Err(Error::Unsupported(
            "fine curves over rank > 1 extensions".into(),
        ));
    }
    Ok(g.lead().clone())
}

fn base_unit(c: &HElem) -> HElem {
    c.as_pair().map(|(u, _)| u.clone()).expect("extension unit")
}

fn exps(d: &[i64]) -> [i64; 2] {
    [d[0], d[1]]
}

/// The fine curve of a two-variable polynomial over a rank-one extension.
pub fn fine_hypersurface(p: &HPoly) -> Result<FineCurve> {
    let hf = p.hyperfield();
    if !matches!(hf, Hyperfield::Extension { rank: 1, .. }) {
        return Err(Error::Unsupported(format!("fine curves over {}", hf.key())));
    }
    if p.nvars() != 2 {
        return Err(Error::Unsupported(format!(
            "fine curves in {} variables",
            p.nvars()
        )));
    }
    let terms: Vec<([i64; 2], Rational, HElem)> = p
        .terms()
        .iter()
        .map(|(d, c)| Ok((exps(d), level_of(c)?, base_unit(c))))
        .collect::<Result<_>>()?;
    let m = terms.len();
    if m > MAX_SUPPORT {
        return Err(Error::Unsupported(format!(
            "support of {m} terms exceeds {MAX_SUPPORT}"
        )));
    }
    let mut cells = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() < 2 {
            continue;
        }
        let inside: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let (d0, l0, _) = &terms[inside[0]];
        let row = |k: usize, rel: Relation| {
            let (d, l, _) = &terms[k];
            Constraint::new([d[0] - d0[0], d[1] - d0[1]], l - l0, rel)
        };
        let mut constraints: Vec<Constraint> =
            inside[1..].iter().map(|&k| row(k, Relation::Eq)).collect();
        constraints.extend(
            (0..m)
                .filter(|k| mask & (1 << k) == 0)
                .map(|k| row(k, Relation::Gt)),
        );
        if let Some(locus) = Locus::from_constraints(&constraints) {
            cells.push(FineCell {
                support: inside.iter().map(|&k| terms[k].0).collect(),
                constraints,
                locus,
                condition: inside
                    .iter()
                    .map(|&k| (terms[k].0, terms[k].2.clone()))
                    .collect(),
            });
        }
    }
    cells.sort_by(|a, b| {
        a.locus
            .sort_key()
            .cmp(&b.locus.sort_key())
            .then(a.support.cmp(&b.support))
    });
    Ok(FineCurve {
        source: p.clone(),
        cells,
    })
}

impl FineCurve {
    pub fn source(&self) -> &HPoly {
        &self.source
    }

    pub fn cells(&self) -> &[FineCell] {
        &self.cells
    }

    pub fn hyperfield(&self) -> &Hyperfield {
        self.source.hyperfield()
    }

    pub fn base(&self) -> &Hyperfield {
        self.hyperfield().base().expect("extension")
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Membership of a fine point, decided cell by cell.
    pub fn contains(&self, pt: &[HElem; 2]) -> Result<bool> {
        let Some(((cx, gx), (cy, gy))) = pt[0].as_pair().zip(pt[1].as_pair()) else {
            return Ok(false);
        };
        let g = [gx.lead().clone(), gy.lead().clone()];
        for cell in &self.cells {
            if cell.locus.contains(&g)
                && torus::condition_holds(self.base(), &cell.condition, &[cx.clone(), cy.clone()])?
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn to_json(&self) -> Value {
        let base = self.base();
        json!({
            "hyperfield": self.hyperfield().key(),
            "source": self.source.to_text(),
            "cells": self.cells.iter().map(|c| json!({
                "support": c.support,
                "constraints": c.constraints.iter().map(Constraint::to_text).collect::<Vec<_>>(),
                "locus": c.locus.to_json(),
                "condition": format!("{} = 0", laurent_text(base, &c.condition)),
            })).collect::<Vec<_>>(),
        })
    }
}

/// A cell of the classical tropical curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropCell {
    pub support: Vec<[i64; 2]>,
    pub locus: Locus,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TropCurve {
    pub cells: Vec<TropCell>,
}

impl TropCurve {
    pub fn vertices(&self) -> Vec<[Rational; 2]> {
        self.cells
            .iter()
            .filter_map(|c| match &c.locus {
                Locus::Point(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cells": self.cells.iter().map(|c| json!({"support": c.support, "locus": c.locus.to_json()})).collect::<Vec<_>>(),
        })
    }
}

/// Forget base units and conditions.
pub fn trop_project(c: &FineCurve) -> TropCurve {
    TropCurve {
        cells: c
            .cells
            .iter()
            .map(|cell| TropCell {
                support: cell.support.clone(),
                locus: cell.locus.clone(),
            })
            .collect(),
    }
}

/// A positive-dimensional piece of a fine intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDescription {
    pub locus: Locus,
    pub units: TorusPiece,
    pub cells: (Vec<[i64; 2]>, Vec<[i64; 2]>),
}

impl ComponentDescription {
    pub fn to_json(&self, base: &Hyperfield) -> Value {
        let units = match &self.units {
            TorusPiece::Point(c) => {
                json!({"c_X": base.fmt_elem(&c[0]), "c_Y": base.fmt_elem(&c[1])})
            }
            TorusPiece::Family { fixed, equations } => json!({
                "c_X": fixed[0].as_ref().map_or("free".to_string(), |x| base.fmt_elem(x)),
                "c_Y": fixed[1].as_ref().map_or("free".to_string(), |x| base.fmt_elem(x)),
                "equations": equations,
            }),
        };
        json!({"locus": self.locus.to_json(), "units": units, "cells": [self.cells.0, self.cells.1]})
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FineIntersection {
    /// Isolated fine points, sorted.
    pub points: Vec<[HElem; 2]>,
    pub components: Vec<ComponentDescription>,
}

impl FineIntersection {
    pub fn levels(&self) -> Vec<[Rational; 2]> {
        let set: BTreeSet<[Rational; 2]> = self
            .points
            .iter()
            .map(|p| {
                [
                    p[0].level().expect("pair").lead().clone(),
                    p[1].level().expect("pair").lead().clone(),
                ]
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn to_json(&self, h: &Hyperfield) -> Value {
        let base = h.base().expect("extension");
        json!({
            "points": self.points.iter().map(|p| point_json(h, p)).collect::<Vec<_>>(),
            "components": self.components.iter().map(|c| c.to_json(base)).collect::<Vec<_>>(),
        })
    }
}

/// A point as `[[c_X, g_X...], [c_Y, g_Y...]]`, all entries strings;
/// zero coordinates print as `"inf"`.
pub fn point_json(h: &Hyperfield, p: &[HElem; 2]) -> Value {
    let coord = |e: &HElem| match (h.base(), e) {
        (Some(base), HElem::Pair(c, g)) => {
            let mut v = vec![base.fmt_elem(c)];
            v.extend(g.coords().iter().map(crate::rat::fmt_rational));
            json!(v)
        }
        _ => json!(h.fmt_elem(e)),
    };
    json!([coord(&p[0]), coord(&p[1])])
}

fn fine_point(c: &[HElem; 2], g: &[Rational; 2]) -> [HElem; 2] {
    [
        HElem::pair(c[0].clone(), GroupElem::from_rational(g[0].clone())),
        HElem::pair(c[1].clone(), GroupElem::from_rational(g[1].clone())),
    ]
}

/// Cell-by-cell intersection: tropical loci first, then the conjoined
/// initial-form conditions solved over the base.
pub fn fine_intersect(c1: &FineCurve, c2: &FineCurve) -> Result<FineIntersection> {
    if c1.hyperfield() != c2.hyperfield() {
        return Err(Error::KindMismatch(format!(
            "{} vs {}",
            c1.hyperfield().key(),
            c2.hyperfield().key()
        )));
    }
    let base = c1.base();
    let mut points = BTreeSet::new();
    let mut components = Vec::new();
    for a in &c1.cells {
        for b in &c2.cells {
            let Some(locus) = a.locus.intersect(&b.locus) else {
                continue;
            };
            for piece in solve_torus(base, &[a.condition.clone(), b.condition.clone()])? {
                match (&locus, piece) {
                    (Locus::Point(g), TorusPiece::Point(c)) => {
                        points.insert(fine_point(&c, g));
                    }
                    (_, units) => components.push(ComponentDescription {
                        locus: locus.clone(),
                        units,
                        cells: (a.support.clone(), b.support.clone()),
                    }),
                }
            }
        }
    }
    Ok(FineIntersection {
        points: points.into_iter().collect(),
        components,
    })
}

/// Attempts at a generic base perturbation before giving up.
const PERTURB_ATTEMPTS: usize = 8;

fn generic_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n: i64 = rng.gen_range(1_000..1_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat::ratio(n, rng.gen_range(1_000..1_000_000))
}

fn perturb_units<R: Rng + ?Sized>(p: &HPoly, rng: &mut R) -> Result<HPoly> {
    let hf = p.hyperfield().clone();
    let f = match hf.base() {
        Some(Hyperfield::Field(f)) => f.clone(),
        _ => {
            return Err(Error::Unsupported(format!(
                "base perturbation over {}",
                hf.key()
            )))
        }
    };
    let terms: Vec<(Vec<i64>, HElem)> = p
        .terms()
        .iter()
        .map(|(d, c)| {
            let (u, g) = c.as_pair().expect("extension unit");
            let rho = match &f {
                FieldKind::Finite(_) => f.sample_unit(rng),
                _ => f.from_rational(&generic_rational(rng))?,
            };
            Ok((d.clone(), HElem::pair(f.mul(u, &rho), g.clone())))
        })
        .collect::<Result<_>>()?;
    HPoly::new(hf, p.nvars(), terms)
}

/// Tropical points of the stable intersection.  When the fine intersection
/// has components, the base units of `c2`'s source are perturbed by seeded
/// generic values; levels are never touched.
pub fn stable_intersect(c1: &FineCurve, c2: &FineCurve, seed: u64) -> Result<Vec<[Rational; 2]>> {
    let direct = fine_intersect(c1, c2)?;
    if direct.components.is_empty() {
        return Ok(direct.levels());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PERTURB_ATTEMPTS {
        let moved = fine_hypersurface(&perturb_units(c2.source(), &mut rng)?)?;
        let fi = fine_intersect(c1, &moved)?;
        if fi.components.is_empty() {
            return Ok(fi.levels());
        }
    }
    Err(Error::LiftNotGeneric)
}

fn is_linear(p: &SeriesPoly) -> bool {
    p.nvars() == 2
        && p.terms()
            .keys()
            .all(|d| matches!(d.as_slice(), [1, 0] | [0, 1] | [0, 0]))
}

fn quotient(n: &SeriesTrunc, d: &SeriesTrunc) -> Result<SeriesTrunc> {
    if n.is_zero() {
        return Ok(SeriesTrunc::zero(n.field().clone()));
    }
    let order = n.valuation()? - d.valuation()? + rat::rat(ORACLE_ORDER);
    n.div(d, &order)
}

/// `Y·c + r(X)` with `c` a series: returns `(c, r)` as `(coefficient, X-terms)`.
fn as_substitution(q: &SeriesPoly) -> Option<(SeriesTrunc, Vec<(i64, SeriesTrunc)>)> {
    let mut c = None;
    let mut rest = Vec::new();
    for (d, s) in q.terms() {
        match d.as_slice() {
            [0, 1] => c = Some(s.clone()),
            [i, 0] => rest.push((*i, s.clone())),
            _ => return None,
        }
    }
    c.map(|c| (c, rest))
}

/// Series solutions of a linear 2×2 system, or of `{a·X + b, c·Y + r(X)}`,
/// each coordinate to relative order 8.
pub fn oracle_series_solutions(
    p: &SeriesPoly,
    q: &SeriesPoly,
) -> Result<Vec<(SeriesTrunc, SeriesTrunc)>> {
    let f = p.field().clone();
    let (x, y) = if is_linear(p) && is_linear(q) {
        let row = |s: &SeriesPoly| [s.coeff(&[1, 0]), s.coeff(&[0, 1]), s.coeff(&[0, 0])];
        LinearSystem::new([row(p), row(q)]).solve()?
    } else {
        let univariate = |s: &SeriesPoly| {
            s.nvars() == 2
                && s.terms()
                    .keys()
                    .all(|d| d[1] == 0 && (0..=1).contains(&d[0]))
        };
        let (lin, sub) = match (univariate(p), univariate(q)) {
            (true, _) => (p, q),
            (_, true) => (q, p),
            _ => {
                return Err(Error::Unsupported(
                    "oracle shapes: linear 2×2 or (a·X + b, c·Y + r(X))".into(),
                ))
            }
        };
        let (a, b) = (lin.coeff(&[1, 0]), lin.coeff(&[0, 0]));
        if a.is_zero() {
            return Err(Error::NoIsolatedSolution);
        }
        let x = quotient(&b.neg(), &a)?;
        let (c, rest) = as_substitution(sub)
            .ok_or_else(|| Error::Unsupported("second generator must be c·Y + r(X)".into()))?;
        if c.is_zero() {
            return Err(Error::NoIsolatedSolution);
        }
        let mut r = SeriesTrunc::zero(f.clone());
        for (i, s) in rest {
            r = r.add(&s.mul(&x.pow(i as u32)?)?)?;
        }
        let y = quotient(&r.neg(), &c)?;
        (x, y)
    };
    Ok(vec![(x, y)])
}

/// [`oracle_series_solutions`] mapped through the fine valuation.
pub fn oracle_intersect_series(p: &SeriesPoly, q: &SeriesPoly) -> Result<Vec<[HElem; 2]>> {
    let fval = HomDescriptor::fval(p.field().clone());
    oracle_series_solutions(p, q)?
        .iter()
        .map(|(x, y)| Ok([fval.apply_series(x)?, fval.apply_series(y)?]))
        .collect()
}

#[cfg(test)]
mod tests;
