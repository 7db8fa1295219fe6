//! Start systems for polyhedral homotopy: mixed cells of a lifted square
//! system and the solutions of their initial systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{
    fine_hypersurface, fine_point, laurent_text, point_json, solve_torus, Locus, TorusPiece,
};
use crate::error::{Error, Result};
use crate::hfcore::{HElem, Hyperfield};
use crate::poly::{HPoly, SeriesPoly};
use crate::rat::{self, Rational};
use crate::series::{HomDescriptor, SeriesTrunc};

type Cells = (Vec<[i64; 2]>, Vec<[i64; 2]>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedCell {
    pub cells: Cells,
    pub at: [Rational; 2],
    pub mixed_volume: u64,
    /// Initial-form conditions of the two cells, as text.
    pub initial_system: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StartSolution {
    pub point: [HElem; 2],
    pub cells: Cells,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyStart {
    pub hyperfield: Hyperfield,
    pub solutions: Vec<StartSolution>,
    pub mixed_cells: Vec<MixedCell>,
    /// Sum of the mixed cells' volumes.
    pub mixed_volume: u64,
    /// Mixed volume of the two Newton polygons.
    pub bkk: u64,
}

impl HomotopyStart {
    pub fn to_json(&self) -> Value {
        let h = &self.hyperfield;
        json!({
            "hyperfield": h.key(),
            "mixed_volume": self.mixed_volume,
            "bkk": self.bkk,
            "mixed_cells": self.mixed_cells.iter().map(|m| json!({
                "cells": [m.cells.0, m.cells.1],
                "at": [rat::fmt_rational(&m.at[0]), rat::fmt_rational(&m.at[1])],
                "mixed_volume": m.mixed_volume,
                "initial_system": m.initial_system,
            })).collect::<Vec<_>>(),
            "start_solutions": self.solutions.iter().map(|s| json!({
                "point": point_json(h, &s.point),
                "cells": [s.cells.0, s.cells.1],
            })).collect::<Vec<_>>(),
        })
    }
}

fn cross(o: &[i64; 2], a: &[i64; 2], b: &[i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area of the convex hull, by the shoelace formula.
fn double_area(points: &[[i64; 2]]) -> i64 {
    let h = hull(points);
    if h.len() < 3 {
        return 0;
    }
    let n = h.len();
    (0..n)
        .map(|i| h[i][0] * h[(i + 1) % n][1] - h[(i + 1) % n][0] * h[i][1])
        .sum::<i64>()
        .abs()
}

/// `MV(A, B) = area(A + B) − area(A) − area(B)`.
pub fn mixed_volume(a: &[[i64; 2]], b: &[[i64; 2]]) -> u64 {
    let sum: Vec<[i64; 2]> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| [p[0] + q[0], p[1] + q[1]]))
        .collect();
    let twice = double_area(&sum) - double_area(a) - double_area(b);
    debug_assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as u64
}

/// Multiply each coefficient by `t^γ` with a seeded rational `γ ∈ [0, 4]`.
pub fn lift_system(polys: &[HPoly; 2], seed: u64) -> Result<[SeriesPoly; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lift = |p: &HPoly| -> Result<SeriesPoly> {
        let f = match p.hyperfield() {
            Hyperfield::Field(f) => f.clone(),
            h => {
                return Err(Error::Unsupported(format!(
                    "lifting coefficients over {}",
                    h.key()
                )))
            }
        };
        let terms: Vec<(Vec<i64>, SeriesTrunc)> = p
            .terms()
            .iter()
            .map(|(d, c)| {
                let den = rng.gen_range(1..=7);
                let gamma = rat::ratio(rng.gen_range(0..=4 * den), den);
                (
                    d.clone(),
                    SeriesTrunc::monomial(f.clone(), c.clone(), gamma),
                )
            })
            .collect();
        SeriesPoly::new(f, p.nvars(), terms)
    };
    Ok([lift(&polys[0])?, lift(&polys[1])?])
}

/// Mixed cells are the cell pairs whose tropical loci meet in a point with a
/// nonzero mixed volume; each must have exactly that many base solutions.
/// A fine intersection of positive dimension means the lift is not generic.
pub fn homotopy_start(system: &[SeriesPoly; 2]) -> Result<HomotopyStart> {
    let field = system[0].field().clone();
    let fval = HomDescriptor::fval(field);
    let pushed = [system[0].pushforward(&fval)?, system[1].pushforward(&fval)?];
    let curves = [
        fine_hypersurface(&pushed[0])?,
        fine_hypersurface(&pushed[1])?,
    ];
    let hf = curves[0].hyperfield().clone();
    let base = curves[0].base().clone();
    let mut solutions = Vec::new();
    let mut mixed_cells = Vec::new();
    for a in curves[0].cells() {
        for b in curves[1].cells() {
            let Some(locus) = a.locus.intersect(&b.locus) else {
                continue;
            };
            let pieces = solve_torus(&base, &[a.condition.clone(), b.condition.clone()])?;
            let g = match &locus {
                Locus::Point(g) => g.clone(),
                Locus::Edge { .. } if pieces.is_empty() => continue,
                Locus::Edge { .. } => return Err(Error::LiftNotGeneric),
            };
            let mut pts = Vec::new();
            for piece in pieces {
                match piece {
                    TorusPiece::Point(c) => pts.push(c),
                    TorusPiece::Family { .. } => return Err(Error::LiftNotGeneric),
                }
            }
            let mv = mixed_volume(&a.support, &b.support);
            let initial_system = [
                format!("{} = 0", laurent_text(&base, &a.condition)),
                format!("{} = 0", laurent_text(&base, &b.condition)),
            ];
            if pts.len() as u64 != mv {
                return Err(Error::BaseSolveIncomplete(format!(
                    "initial system {{{}, {}}} has {} solutions over {}, mixed volume {mv}",
                    initial_system[0],
                    initial_system[1],
                    pts.len(),
                    base.key()
                )));
            }
            if mv == 0 {
                continue;
            }
            let cells = (a.support.clone(), b.support.clone());
            for c in pts {
                solutions.push(StartSolution {
                    point: fine_point(&c, &g),
                    cells: cells.clone(),
                });
            }
            mixed_cells.push(MixedCell {
                cells,
                at: g,
                mixed_volume: mv,
                initial_system,
            });
        }
    }
    let support = |p: &SeriesPoly| p.terms().keys().map(|d| [d[0], d[1]]).collect::<Vec<_>>();
    Ok(HomotopyStart {
        hyperfield: hf,
        mixed_volume: mixed_cells.iter().map(|m| m.mixed_volume).sum(),
        bkk: mixed_volume(&support(&system[0]), &support(&system[1])),
        solutions,
        mixed_cells,
    })
}
