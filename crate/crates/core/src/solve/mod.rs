//! Univariate roots over tropical extensions and base hyperfields, root
//! multiplicities by set-valued division, and verification harnesses.

mod base;
pub mod harness;
pub mod qpoly;

use std::collections::HashMap;

use serde_json::{json, Value};

pub use base::{
    base_roots, condition_holds, field_kth_roots, gauss_kth_roots, gauss_sqrt, BaseSolutions,
};
pub use harness::{
    fundamental_harness, kapranov_harness, mult_bound_check, rac_check_instance, rac_check_series,
    standard_systems, HarnessReport, KapranovConfig, LinearSystem, MultBoundReport, RacOutcome,
    System, TrialRecord,
};

use crate::error::{Error, Result};
use crate::hfcore::{HElem, Hyperfield, SetValue};
use crate::ordgroup::GroupElem;
use crate::poly::HPoly;
use crate::rat::Rational;

/// Default degree bound for [`multiplicity`].
pub const MULT_DEGREE_BOUND: usize = 8;

/// A candidate root level `h` and the indices `J` attaining
/// `min_i (val c_i + i·h)`; `|J| ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonCell {
    pub level: GroupElem,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootRecord {
    pub root: HElem,
    pub multiplicity: usize,
    pub cell: Option<NewtonCell>,
}

impl RootRecord {
    pub fn to_json(&self, hf: &Hyperfield) -> Value {
        json!({
            "root": hf.fmt_elem(&self.root),
            "element": crate::json::elem_to_json(hf, &self.root),
            "multiplicity": self.multiplicity,
            "cell": self.cell.as_ref().map(|c| json!({
                "level": c.level.to_json(),
                "indices": c.indices,
            })),
        })
    }
}

fn ext_parts(hf: &Hyperfield) -> Result<(&Hyperfield, usize)> {
    match hf {
        Hyperfield::Extension { base, rank } => Ok((base, *rank)),
        _ => Err(Error::KindMismatch(format!(
            "{} is not a tropical extension",
            hf.key()
        ))),
    }
}

/// `(i, g_i)` for the nonzero coefficients of a univariate extension polynomial.
fn level_points(p: &HPoly) -> Result<Vec<(usize, GroupElem)>> {
    ext_parts(p.hyperfield())?;
    let dense = p.dense()?;
    Ok(dense
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.level().map(|g| (i, g.clone())))
        .collect())
}

/// `(b − a) × (c − a) ≤ 0` in the lex-ordered group: `b` is not strictly below `ac`.
fn turns_clockwise(a: &(usize, GroupElem), b: &(usize, GroupElem), c: &(usize, GroupElem)) -> bool {
    let (dx1, dx2) = ((b.0 - a.0) as i64, (c.0 - a.0) as i64);
    let lhs = (&b.1 - &a.1).scalar_mul_i64(dx2);
    let rhs = (&c.1 - &a.1).scalar_mul_i64(dx1);
    lhs >= rhs
}

/// Lower hull vertices of the Newton polygon, left to right.
fn lower_hull(pts: &[(usize, GroupElem)]) -> Vec<(usize, GroupElem)> {
    let mut hull: Vec<(usize, GroupElem)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && turns_clockwise(&hull[hull.len() - 2], &hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull
}

pub fn newton_cells(p: &HPoly) -> Result<Vec<NewtonCell>> {
    let pts = level_points(p)?;
    let hull = lower_hull(&pts);
    let mut cells = Vec::new();
    for w in hull.windows(2) {
        let ((i, gi), (j, gj)) = (&w[0], &w[1]);
        let h = -&(gj - gi).div((j - i) as i64)?;
        let vals: Vec<GroupElem> = pts
            .iter()
            .map(|(k, g)| g + &h.scalar_mul_i64(*k as i64))
            .collect();
        let min = vals.iter().min().expect("nonempty").clone();
        let indices = pts
            .iter()
            .zip(&vals)
            .filter(|(_, v)| **v == min)
            .map(|((k, _), _)| *k)
            .collect();
        cells.push(NewtonCell { level: h, indices });
    }
    cells.sort_by(|a, b| a.level.cmp(&b.level));
    Ok(cells)
}

/// Lattice length of each Newton cell: `max J − min J`.
pub fn cell_length(c: &NewtonCell) -> usize {
    c.indices.last().unwrap() - c.indices.first().unwrap()
}

/// Roots with multiplicities.  Over an extension the roots come from the
/// Newton cells; over a base hyperfield from [`base_roots`] on the whole
/// support.  The zero root, when present, is listed first.
pub fn roots_univariate(p: &HPoly) -> Result<Vec<RootRecord>> {
    if p.nvars() != 1 || p.is_zero() {
        return Err(Error::Unsupported(
            "roots of a nonzero univariate polynomial".into(),
        ));
    }
    let hf = p.hyperfield();
    let dense = p.dense()?;
    let mut out = Vec::new();
    let low = dense.iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 {
        out.push(RootRecord {
            root: HElem::Zero,
            multiplicity: low,
            cell: None,
        });
    }
    match hf {
        Hyperfield::Extension { base, .. } => {
            for cell in newton_cells(p)? {
                let terms: Vec<(i64, HElem)> = cell
                    .indices
                    .iter()
                    .map(|&j| (j as i64, dense[j].as_pair().expect("unit").0.clone()))
                    .collect();
                let sols = base_roots(base, &terms)?;
                let units = sols.units().ok_or_else(|| {
                    Error::Unsupported(format!("root sets over {} are arcs", base.key()))
                })?;
                for x in units {
                    let root = HElem::pair(x.clone(), cell.level.clone());
                    let m = multiplicity(p, &root)?;
                    out.push(RootRecord {
                        root,
                        multiplicity: m,
                        cell: Some(cell.clone()),
                    });
                }
            }
        }
        _ => {
            let terms: Vec<(i64, HElem)> =
                p.terms().iter().map(|(d, c)| (d[0], c.clone())).collect();
            let sols = base_roots(hf, &terms)?;
            let units = sols.units().ok_or_else(|| {
                Error::Unsupported(format!("root sets over {} are arcs", hf.key()))
            })?;
            for x in units {
                let m = multiplicity(p, x)?;
                out.push(RootRecord {
                    root: x.clone(),
                    multiplicity: m,
                    cell: None,
                });
            }
        }
    }
    for r in &out {
        debug_assert!(p.is_root(std::slice::from_ref(&r.root)).unwrap_or(false));
    }
    Ok(out)
}

/// Roots repeated by multiplicity, sorted.
pub fn root_multiset(records: &[RootRecord]) -> Vec<HElem> {
    let mut out: Vec<HElem> = records
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.root.clone(), r.multiplicity))
        .collect();
    out.sort();
    out
}

/// `mult_a(p)`: zero unless `a` is a root, else `1 + max mult_a(q)` over
/// quotients `q` with `p ∈ (X ⊞ −a) ⊡ q`.
pub fn multiplicity(p: &HPoly, a: &HElem) -> Result<usize> {
    multiplicity_bounded(p, a, MULT_DEGREE_BOUND)
}

pub fn multiplicity_bounded(p: &HPoly, a: &HElem, bound: usize) -> Result<usize> {
    let dense = p.dense()?;
    let deg = dense.len() - 1;
    if deg > bound {
        return Err(Error::DegreeBound(deg, bound));
    }
    if !p.is_root(std::slice::from_ref(a))? {
        return Ok(0);
    }
    if a.is_zero() {
        return Ok(dense.iter().position(|c| !c.is_zero()).unwrap_or(0));
    }
    let mut ctx = Divider {
        hf: p.hyperfield(),
        a,
        ainv: p.hyperfield().inv(a)?,
        memo: HashMap::new(),
    };
    ctx.mult(&dense)
}

struct Divider<'a> {
    hf: &'a Hyperfield,
    a: &'a HElem,
    ainv: HElem,
    memo: HashMap<Vec<HElem>, usize>,
}

/// Cap on bottom-up candidates kept per coefficient.
const CANDIDATE_CAP: usize = 48;

impl Divider<'_> {
    fn is_root(&self, c: &[HElem]) -> Result<bool> {
        let vals: Vec<HElem> = c
            .iter()
            .enumerate()
            .map(|(i, ci)| Ok(self.hf.mul(ci, &self.hf.pow(self.a, i as i64)?)))
            .collect::<Result<_>>()?;
        Ok(self.hf.set_contains_zero(&self.hf.nary_sum(&vals)?))
    }

    fn mult(&mut self, c: &[HElem]) -> Result<usize> {
        let c = trim_top(c);
        if c.len() <= 1 || !self.is_root(&c)? {
            return Ok(0);
        }
        if let Some(&m) = self.memo.get(&c) {
            return Ok(m);
        }
        let n = c.len() - 1;
        let hints = self.bottom_up(&c)?;
        let mut best = 0;
        let mut q = vec![HElem::Zero; n];
        q[n - 1] = c[n].clone();
        self.search(&c, &hints, &mut q, n - 1, &mut best)?;
        let m = 1 + best;
        self.memo.insert(c, m);
        Ok(m)
    }

    /// Depth-first over `q_{k−1} ∈ c_k ⊞ a⊙q_k`, with `q_0 = −a⁻¹c_0` pinned.
    fn search(
        &mut self,
        c: &[HElem],
        hints: &[Vec<HElem>],
        q: &mut Vec<HElem>,
        k: usize,
        best: &mut usize,
    ) -> Result<()> {
        let n = c.len() - 1;
        if *best + 1 >= n {
            return Ok(());
        }
        let set = self.hf.add_elems(&c[k], &self.hf.mul(self.a, &q[k]));
        if k == 0 {
            return Ok(());
        }
        if k == 1 {
            let q0 = self.hf.neg(&self.hf.mul(&self.ainv, &c[0]));
            if self.hf.set_contains(&set, &q0) {
                q[0] = q0;
                let m = self.mult(q)?;
                *best = (*best).max(m);
            }
            return Ok(());
        }
        for cand in candidates(self.hf, &set, &hints[k - 1])? {
            q[k - 1] = cand;
            self.search(c, hints, q, k - 1, best)?;
            if *best + 1 >= n {
                break;
            }
        }
        Ok(())
    }

    /// Values reachable from `q_0 = −a⁻¹c_0` by `q_k ∈ a⁻¹⊙(q_{k−1} ⊞ −c_k)`.
    fn bottom_up(&self, c: &[HElem]) -> Result<Vec<Vec<HElem>>> {
        let n = c.len() - 1;
        let mut out = vec![vec![self.hf.neg(&self.hf.mul(&self.ainv, &c[0]))]];
        for k in 1..n {
            let mut next: Vec<HElem> = Vec::new();
            for x in &out[k - 1] {
                let s = self
                    .hf
                    .scale_set(&self.ainv, &self.hf.add_elems(x, &self.hf.neg(&c[k])));
                for y in candidates(self.hf, &s, &[])? {
                    if !next.contains(&y) && next.len() < CANDIDATE_CAP {
                        next.push(y);
                    }
                }
            }
            out.push(next);
        }
        Ok(out)
    }
}

fn trim_top(c: &[HElem]) -> Vec<HElem> {
    let mut v = c.to_vec();
    while v.len() > 1 && v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

/// Finitely many representatives of a hypersum: every element of a finite
/// set; for a level set, its base units at the level, and when the tail is
/// present, zero and those `hints` lying in the set.
fn candidates(hf: &Hyperfield, s: &SetValue, hints: &[HElem]) -> Result<Vec<HElem>> {
    match s {
        SetValue::Finite(items) => Ok(items.iter().cloned().collect()),
        SetValue::Arcs(_) => Err(Error::Unsupported(
            "multiplicities over phase hyperfields".into(),
        )),
        SetValue::Ext(e) => {
            let (base, _) = ext_parts(hf)?;
            let Some(level) = e.level() else {
                return Ok(vec![HElem::Zero]);
            };
            let units = e.base_set(base);
            let units = units
                .as_finite()
                .ok_or_else(|| Error::Unsupported("multiplicities over phase extensions".into()))?;
            let mut out: Vec<HElem> = units
                .iter()
                .map(|u| HElem::pair(u.clone(), level.clone()))
                .collect();
            if e.tail_above(base) {
                out.push(HElem::Zero);
                for h in hints {
                    if !out.contains(h) && hf.set_contains(s, h) {
                        out.push(h.clone());
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Sum of multiplicities over the listed roots.
pub fn total_multiplicity(records: &[RootRecord]) -> usize {
    records.iter().map(|r| r.multiplicity).sum()
}

/// Level of a root record as a rational, for rank-one extensions.
pub fn root_level(r: &RootRecord) -> Option<&Rational> {
    r.root.level().map(|g| g.lead())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::realize;
    use crate::rat::{rat, ratio};

    fn pair(c: HElem, g: Rational) -> HElem {
        HElem::pair(c, GroupElem::from_rational(g))
    }

    fn qq() -> Hyperfield {
        Hyperfield::extension(Hyperfield::rationals(), 1)
    }

    #[test]
    fn cells_of_a_fine_quadratic() {
        let p = HPoly::univariate(
            qq(),
            &[
                pair(HElem::int(1), rat(1)),
                pair(HElem::int(-1), rat(0)),
                pair(HElem::int(1), rat(0)),
            ],
        )
        .unwrap();
        let cells = newton_cells(&p).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(
            (cells[0].level.clone(), cells[0].indices.clone()),
            (GroupElem::from_int(0), vec![1, 2])
        );
        assert_eq!(
            (cells[1].level.clone(), cells[1].indices.clone()),
            (GroupElem::from_int(1), vec![0, 1])
        );
        let mut roots: Vec<HElem> = roots_univariate(&p)
            .unwrap()
            .into_iter()
            .map(|r| r.root)
            .collect();
        roots.sort();
        assert_eq!(
            roots,
            vec![pair(HElem::int(1), rat(0)), pair(HElem::int(1), rat(1))]
        );
    }

    #[test]
    fn krasner_binomial_has_a_double_root() {
        let kq = Hyperfield::extension(Hyperfield::Krasner, 1);
        let p = HPoly::univariate(
            kq,
            &[
                pair(HElem::One, rat(3)),
                HElem::Zero,
                pair(HElem::One, rat(0)),
            ],
        )
        .unwrap();
        let cells = newton_cells(&p).unwrap();
        assert_eq!(
            cells,
            vec![NewtonCell {
                level: GroupElem::from_rational(ratio(3, 2)),
                indices: vec![0, 2]
            }]
        );
        let rs = roots_univariate(&p).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(
            (rs[0].root.clone(), rs[0].multiplicity),
            (pair(HElem::One, ratio(3, 2)), 2)
        );
    }

    #[test]
    fn linear_cell() {
        let t = realize("T").unwrap();
        let p =
            HPoly::univariate(t, &[pair(HElem::One, rat(0)), pair(HElem::One, rat(0))]).unwrap();
        assert_eq!(newton_cells(&p).unwrap()[0].indices, vec![0, 1]);
        let mono = HPoly::new(
            realize("T").unwrap(),
            1,
            [(vec![2], pair(HElem::One, rat(0)))],
        )
        .unwrap();
        assert!(newton_cells(&mono).unwrap().is_empty());
    }

    #[test]
    fn small_multiplicities() {
        let k = HPoly::univariate(Hyperfield::Krasner, &[HElem::One, HElem::One]).unwrap();
        assert_eq!(multiplicity(&k, &HElem::One).unwrap(), 1);
        let s = HPoly::univariate(
            Hyperfield::Sign,
            &[HElem::Sign(1), HElem::Sign(-1), HElem::Sign(1)],
        )
        .unwrap();
        // p ∈ (X ⊞ −1) ⊡ (X ⊞ −1): two sign changes
        assert_eq!(multiplicity(&s, &HElem::Sign(1)).unwrap(), 2);
        assert_eq!(multiplicity(&s, &HElem::Sign(-1)).unwrap(), 0);
        // (x − 1)^2 (x + 2) over ℚ
        let q = HPoly::univariate(
            Hyperfield::rationals(),
            &[HElem::int(2), HElem::int(-3), HElem::int(0), HElem::int(1)],
        )
        .unwrap();
        assert_eq!(multiplicity(&q, &HElem::int(1)).unwrap(), 2);
        assert_eq!(multiplicity(&q, &HElem::int(-2)).unwrap(), 1);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let coeffs = vec![HElem::One; 10];
        let p = HPoly::univariate(Hyperfield::Krasner, &coeffs).unwrap();
        assert_eq!(
            multiplicity(&p, &HElem::One),
            Err(Error::DegreeBound(9, MULT_DEGREE_BOUND))
        );
    }

    #[test]
    fn zero_root() {
        let p = HPoly::new(
            Hyperfield::Sign,
            1,
            [(vec![2], HElem::Sign(1)), (vec![3], HElem::Sign(-1))],
        )
        .unwrap();
        let rs = roots_univariate(&p).unwrap();
        assert_eq!((rs[0].root.clone(), rs[0].multiplicity), (HElem::Zero, 2));
        assert_eq!(rs[1].root, HElem::Sign(1));
    }
}
