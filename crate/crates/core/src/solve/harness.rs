//! Instance-level checks: the multiplicity bound, relative algebraic
//! closedness, and root/variety images under enriched valuations.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{qpoly, root_multiset, roots_univariate};
use crate::error::{Error, Result};
use crate::hfcore::{FieldKind, Gauss, HElem, Hyperfield};
use crate::poly::{prevariety_member, HPoly, SeriesPoly};
use crate::rat::{self, Rational};
use crate::series::hom::{HomKind, SourceValue};
use crate::series::{Domain, HomDescriptor, SeriesTrunc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub harness: String,
    pub hom: String,
    /// `exact` compares multisets; `containment` only checks images are roots.
    pub mode: String,
    pub trials: usize,
    pub failures: Vec<TrialRecord>,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultBoundReport {
    pub hyperfield: String,
    pub applicable: bool,
    pub exhaustive: bool,
    pub checked: usize,
    pub note: String,
    pub violations: Vec<String>,
}

impl MultBoundReport {
    pub fn passed(&self) -> bool {
        self.applicable && self.violations.is_empty()
    }
}

fn has_phase(h: &Hyperfield) -> bool {
    match h {
        Hyperfield::Phase | Hyperfield::TropicalPhase => true,
        Hyperfield::Extension { base, .. } => has_phase(base),
        _ => false,
    }
}

/// Checks `Σ mult_a(p) ≤ deg p` on polynomials of degree `1..=max_degree`:
/// every coefficient vector when there are at most `trials` of them,
/// otherwise `trials` seeded random ones.
pub fn mult_bound_check(
    h: &Hyperfield,
    trials: usize,
    max_degree: usize,
    seed: u64,
) -> MultBoundReport {
    let mut report = MultBoundReport {
        hyperfield: h.key(),
        applicable: true,
        exhaustive: false,
        checked: 0,
        note: String::new(),
        violations: vec![],
    };
    if has_phase(h) {
        report.applicable = false;
        report.note = "root set infinite (arc)".into();
        return report;
    }
    let check = |p: &HPoly, report: &mut MultBoundReport| {
        report.checked += 1;
        match roots_univariate(p) {
            Ok(rs) => {
                let total = super::total_multiplicity(&rs);
                if total as i64 > p.degree() {
                    report
                        .violations
                        .push(format!("{p}: multiplicities sum to {total}"));
                }
            }
            Err(e) => report.violations.push(format!("{p}: {e}")),
        }
    };
    if let Some(els) = h.elements() {
        let total: usize = (1..=max_degree)
            .map(|d| els.len().pow(d as u32) * (els.len() - 1))
            .sum();
        if total <= trials {
            report.exhaustive = true;
            for d in 1..=max_degree {
                for idx in 0..els.len().pow(d as u32) {
                    let mut coeffs: Vec<HElem> = (0..d)
                        .map(|k| els[(idx / els.len().pow(k as u32)) % els.len()].clone())
                        .collect();
                    for top in els.iter().filter(|e| !e.is_zero()) {
                        coeffs.push(top.clone());
                        let p = HPoly::univariate(h.clone(), &coeffs).expect("elements");
                        check(&p, &mut report);
                        coeffs.pop();
                    }
                }
            }
            return report;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let d = rng.gen_range(1..=max_degree);
        let mut coeffs: Vec<HElem> = (0..d).map(|_| h.sample(&mut rng, 0.25)).collect();
        coeffs.push(h.sample_unit(&mut rng));
        let p = HPoly::univariate(h.clone(), &coeffs).expect("sampled elements");
        check(&p, &mut report);
    }
    report
}

/// Result of searching the fiber `f⁻¹(β)` for a root of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RacOutcome {
    Lift(SourceValue),
    /// Real roots of the requested sign exist but none is rational.
    RealRootsExist {
        count: usize,
    },
    /// The fiber was searched completely; no root lies in it.
    Counterexample(String),
    /// The finite corpus held no lift.
    NotFound(String),
}

/// RAC check for a homomorphism out of a hyperfield, on a univariate `p`.
pub fn rac_check_instance(f: &HomDescriptor, p: &HPoly, beta: &HElem) -> Result<RacOutcome> {
    let Domain::Hyper(src) = &f.source else {
        return Err(Error::Unsupported(
            "series sources need a root corpus; use rac_check_series".into(),
        ));
    };
    let image = p.pushforward(f)?;
    if !image.is_root(std::slice::from_ref(beta))? {
        return Err(Error::KindMismatch(format!(
            "{} is not a root of {image}",
            f.target.fmt_elem(beta)
        )));
    }
    if beta.is_zero() {
        return Ok(if p.is_root(&[HElem::Zero])? {
            RacOutcome::Lift(SourceValue::Elem(HElem::Zero))
        } else {
            RacOutcome::Counterexample("the fiber of 0 is {0}, which is not a root".into())
        });
    }
    if let Some(fiber) = finite_fiber(f, src, beta)? {
        for a in &fiber {
            if p.is_root(std::slice::from_ref(a))? {
                return Ok(RacOutcome::Lift(SourceValue::Elem(a.clone())));
            }
        }
        let shown: Vec<String> = fiber.iter().map(|a| src.fmt_elem(a)).collect();
        return Ok(RacOutcome::Counterexample(format!(
            "no root among the fiber {{{}}}",
            shown.join(", ")
        )));
    }
    match (&f.kind, src, beta) {
        (HomKind::Sign, Hyperfield::Field(FieldKind::Rationals), HElem::Sign(s)) => {
            let dense: Vec<Rational> = p
                .dense()?
                .iter()
                .map(|c| match c {
                    HElem::Rat(r) => r.clone(),
                    _ => Rational::from_integer(0.into()),
                })
                .collect();
            let (roots, _) = qpoly::rational_roots(&dense);
            if let Some((r, _)) = roots.into_iter().find(|(r, _)| rat::sign_of(r) == *s) {
                return Ok(RacOutcome::Lift(SourceValue::Elem(HElem::Rat(r))));
            }
            let count = qpoly::count_real_roots(&dense, *s > 0);
            if count > 0 {
                Ok(RacOutcome::RealRootsExist { count })
            } else {
                let side = if *s > 0 { "positive" } else { "negative" };
                Ok(RacOutcome::Counterexample(format!(
                    "Sturm count: {p} has no {side} real root"
                )))
            }
        }
        _ => Err(Error::Unsupported(format!("fiber search for {}", f.name()))),
    }
}

/// The fiber of `beta` when the source (or the base of an extended map) is finite.
fn finite_fiber(f: &HomDescriptor, src: &Hyperfield, beta: &HElem) -> Result<Option<Vec<HElem>>> {
    if let Some(els) = src.elements() {
        let mut out = Vec::new();
        for e in els {
            if f.apply_elem(&e)? == *beta {
                out.push(e);
            }
        }
        return Ok(Some(out));
    }
    if let (HomKind::Extended(g), Hyperfield::Extension { base, .. }, HElem::Pair(b, level)) =
        (&f.kind, src, beta)
    {
        if let Some(els) = base.elements() {
            let mut out = Vec::new();
            for e in els.into_iter().filter(|e| !e.is_zero()) {
                if g.apply_elem(&e)? == **b {
                    out.push(HElem::pair(e, level.clone()));
                }
            }
            return Ok(Some(out));
        }
    }
    Ok(None)
}

/// RAC check for a map out of the series field, searching a constructed corpus.
pub fn rac_check_series(
    f: &HomDescriptor,
    p: &SeriesPoly,
    beta: &HElem,
    corpus: &[SeriesTrunc],
) -> Result<RacOutcome> {
    for a in corpus {
        if f.apply_series(a)? == *beta && p.eval(std::slice::from_ref(a))?.terms().is_empty() {
            return Ok(RacOutcome::Lift(SourceValue::Series(a.clone())));
        }
    }
    Ok(RacOutcome::NotFound(format!(
        "no lift of {} in a corpus of {}",
        f.target.fmt_elem(beta),
        corpus.len()
    )))
}

/// Harness settings shared by the Kapranov trials.
#[derive(Clone, Debug)]
pub struct KapranovConfig {
    pub trials: usize,
    pub max_factors: usize,
    pub max_den: i64,
    pub precision: i64,
    pub seed: u64,
}

impl Default for KapranovConfig {
    fn default() -> Self {
        KapranovConfig {
            trials: 200,
            max_factors: 5,
            max_den: 4,
            precision: 8,
            seed: 0,
        }
    }
}

fn small_unit<R: Rng + ?Sized>(field: &FieldKind, rng: &mut R) -> HElem {
    loop {
        let r = rat::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let c = match field {
            FieldKind::Gaussian => {
                HElem::from_gauss(Gauss::new(r, rat::ratio(rng.gen_range(-3..=3), 1)))
            }
            _ => HElem::from_rational(r),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random exact series: a leading term `c·t^e` with `e ∈ [−2, 2]` of
/// denominator `≤ max_den`, plus up to two higher terms below `precision`.
pub fn random_root<R: Rng + ?Sized>(
    field: &FieldKind,
    rng: &mut R,
    max_den: i64,
    precision: i64,
) -> SeriesTrunc {
    let den = rng.gen_range(1..=max_den);
    let e = rat::ratio(rng.gen_range(-2 * den..=2 * den), den);
    let lead = small_unit(field, rng);
    random_tail(
        field,
        rng,
        SeriesTrunc::monomial(field.clone(), lead, e),
        max_den,
        precision,
    )
}

fn random_tail<R: Rng + ?Sized>(
    field: &FieldKind,
    rng: &mut R,
    lead: SeriesTrunc,
    max_den: i64,
    precision: i64,
) -> SeriesTrunc {
    let e = lead.valuation().expect("nonzero leading term");
    let mut s = lead;
    for _ in 0..rng.gen_range(0..=2) {
        let den = rng.gen_range(1..=max_den);
        let step = rat::ratio(rng.gen_range(1..=3 * den), den);
        let exp = &e + step;
        if exp < rat::rat(precision) {
            let m = SeriesTrunc::monomial(field.clone(), small_unit(field, rng), exp);
            s = s.add(&m).expect("same field");
        }
    }
    s
}

fn fmt_multiset(h: &Hyperfield, xs: &[HElem]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| h.fmt_elem(x)).collect();
    format!("[{}]", parts.join(", "))
}

/// Random roots for one trial; some share leading data with an earlier
/// root so images repeat and multiplicities are exercised.
pub fn random_root_set<R: Rng + ?Sized>(
    field: &FieldKind,
    rng: &mut R,
    cfg: &KapranovConfig,
) -> Vec<SeriesTrunc> {
    let n = rng.gen_range(1..=cfg.max_factors);
    let mut roots: Vec<SeriesTrunc> = Vec::new();
    for _ in 0..n {
        let r = if !roots.is_empty() && rng.gen_bool(0.3) {
            let (c, e) = roots[rng.gen_range(0..roots.len())]
                .leading_term()
                .expect("nonzero");
            random_tail(
                field,
                rng,
                SeriesTrunc::monomial(field.clone(), c, e),
                cfg.max_den,
                cfg.precision,
            )
        } else {
            random_root(field, rng, cfg.max_den, cfg.precision)
        };
        roots.push(r);
    }
    roots
}

/// One Kapranov instance: `p = ∏ (X − a_i)`; the push-forward's root multiset
/// against the images `f(a_i)`, or only containment for phase targets.
pub fn kapranov_instance(f: &HomDescriptor, roots: &[SeriesTrunc]) -> Result<Option<TrialRecord>> {
    let Domain::Series(field) = &f.source else {
        return Err(Error::Unsupported(
            "Kapranov trials need a homomorphism on series".into(),
        ));
    };
    let p = SeriesPoly::from_roots(field.clone(), roots)?;
    let image = p.pushforward(f)?;
    let mut expected: Vec<HElem> = roots
        .iter()
        .map(|a| f.apply_series(a))
        .collect::<Result<_>>()?;
    expected.sort();
    let h = &f.target;
    let instance = format!(
        "roots [{}]",
        roots
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    );
    if has_phase(h) {
        for b in &expected {
            if !image.is_root(std::slice::from_ref(b))? {
                return Ok(Some(TrialRecord {
                    instance,
                    expected: format!("{} is a root of {image}", h.fmt_elem(b)),
                    got: "not a root".into(),
                    status: "fail".into(),
                }));
            }
        }
        return Ok(None);
    }
    let got = match roots_univariate(&image) {
        Ok(rs) => root_multiset(&rs),
        Err(e) => {
            return Ok(Some(TrialRecord {
                instance,
                expected: fmt_multiset(h, &expected),
                got: format!("error: {e}"),
                status: "fail".into(),
            }))
        }
    };
    if got == expected {
        Ok(None)
    } else {
        Ok(Some(TrialRecord {
            instance,
            expected: fmt_multiset(h, &expected),
            got: fmt_multiset(h, &got),
            status: "fail".into(),
        }))
    }
}

pub fn kapranov_harness(f: &HomDescriptor, cfg: &KapranovConfig) -> Result<HarnessReport> {
    let Domain::Series(field) = &f.source else {
        return Err(Error::Unsupported(
            "Kapranov trials need a homomorphism on series".into(),
        ));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = Vec::new();
    for _ in 0..cfg.trials {
        let roots = random_root_set(field, &mut rng, cfg);
        if let Some(t) = kapranov_instance(f, &roots)? {
            failures.push(t);
        }
    }
    let mode = if has_phase(&f.target) {
        "containment"
    } else {
        "exact"
    };
    Ok(HarnessReport {
        harness: "kapranov".into(),
        hom: f.name(),
        mode: mode.into(),
        trials: cfg.trials,
        failures,
    })
}

/// `a X + b Y + c = 0` for each of two rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub rows: [[SeriesTrunc; 3]; 2],
}

/// Relative precision kept when dividing series.
const DIV_ORDER: i64 = 8;

impl LinearSystem {
    pub fn new(rows: [[SeriesTrunc; 3]; 2]) -> Self {
        LinearSystem { rows }
    }

    pub fn field(&self) -> &FieldKind {
        self.rows[0][0].field()
    }

    /// `X + Y − 1`, `tX + (1 + t²)Y + 1` over ℚ.
    pub fn worked_example() -> Self {
        let s = |t: &[(i64, i64)]| SeriesTrunc::from_ints(t, None);
        LinearSystem::new([
            [s(&[(1, 0)]), s(&[(1, 0)]), s(&[(-1, 0)])],
            [s(&[(1, 1)]), s(&[(1, 0), (1, 2)]), s(&[(1, 0)])],
        ])
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldKind, rng: &mut R, max_den: i64) -> Self {
        loop {
            let mut entry = || {
                let den = rng.gen_range(1..=max_den);
                let e = rat::ratio(rng.gen_range(-2 * den..=2 * den), den);
                let lead = SeriesTrunc::monomial(field.clone(), small_unit(field, rng), e);
                random_tail(field, rng, lead, max_den, DIV_ORDER)
            };
            let rows = [[entry(), entry(), entry()], [entry(), entry(), entry()]];
            let sys = LinearSystem::new(rows);
            if sys.determinant().is_ok_and(|d| !d.is_zero()) {
                return sys;
            }
        }
    }

    fn determinant(&self) -> Result<SeriesTrunc> {
        let [[a1, b1, _], [a2, b2, _]] = &self.rows;
        a1.mul(b2)?.sub(&a2.mul(b1)?)
    }

    pub fn polys(&self) -> Result<[SeriesPoly; 2]> {
        let mk = |r: &[SeriesTrunc; 3]| {
            SeriesPoly::new(
                self.field().clone(),
                2,
                [
                    (vec![1, 0], r[0].clone()),
                    (vec![0, 1], r[1].clone()),
                    (vec![0, 0], r[2].clone()),
                ],
            )
        };
        Ok([mk(&self.rows[0])?, mk(&self.rows[1])?])
    }

    /// Numerators of Cramer's rule: `D·X = N_X`, `D·Y = N_Y`.
    fn cramer(&self) -> Result<(SeriesTrunc, SeriesTrunc, SeriesTrunc)> {
        let [[a1, b1, c1], [a2, b2, c2]] = &self.rows;
        let d = self.determinant()?;
        if d.is_zero() {
            return Err(Error::NoIsolatedSolution);
        }
        let nx = b1.mul(c2)?.sub(&b2.mul(c1)?)?;
        let ny = c1.mul(a2)?.sub(&c2.mul(a1)?)?;
        Ok((d, nx, ny))
    }

    /// The unique solution, each coordinate to relative order `DIV_ORDER`.
    pub fn solve(&self) -> Result<(SeriesTrunc, SeriesTrunc)> {
        let (d, nx, ny) = self.cramer()?;
        let quot = |n: &SeriesTrunc| -> Result<SeriesTrunc> {
            if n.is_zero() {
                return Ok(SeriesTrunc::zero(self.field().clone()));
            }
            let order = n.valuation()? - d.valuation()? + rat::rat(DIV_ORDER);
            n.div(&d, &order)
        };
        Ok((quot(&nx)?, quot(&ny)?))
    }

    /// Univariate members of the ideal: `D·X − N_X` and `D·Y − N_Y`.
    pub fn eliminants(&self) -> Result<[SeriesPoly; 2]> {
        let (d, nx, ny) = self.cramer()?;
        let f = self.field().clone();
        Ok([
            SeriesPoly::new(f.clone(), 1, [(vec![1], d.clone()), (vec![0], nx.neg())])?,
            SeriesPoly::new(f, 1, [(vec![1], d), (vec![0], ny.neg())])?,
        ])
    }

    pub fn describe(&self) -> String {
        let r = |row: &[SeriesTrunc; 3]| format!("({})*X + ({})*Y + ({})", row[0], row[1], row[2]);
        format!("{{{}, {}}}", r(&self.rows[0]), r(&self.rows[1]))
    }
}

/// `I = ⟨p(X), Y − q(X)⟩` with `p = ∏ (X − r_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSystem {
    pub x_roots: Vec<SeriesTrunc>,
    pub q: Vec<SeriesTrunc>,
}

impl SubstitutionSystem {
    fn field(&self) -> &FieldKind {
        self.x_roots[0].field()
    }

    fn q_at(&self, x: &SeriesTrunc) -> Result<SeriesTrunc> {
        let qp = SeriesPoly::new(
            self.field().clone(),
            1,
            self.q
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as i64], c.clone())),
        )?;
        qp.eval(std::slice::from_ref(x))
    }

    pub fn solutions(&self) -> Result<Vec<(SeriesTrunc, SeriesTrunc)>> {
        self.x_roots
            .iter()
            .map(|x| Ok((x.clone(), self.q_at(x)?)))
            .collect()
    }

    pub fn generators(&self) -> Result<[SeriesPoly; 2]> {
        let f = self.field().clone();
        let px = SeriesPoly::from_roots(f.clone(), &self.x_roots)?;
        let p2 = SeriesPoly::new(
            f.clone(),
            2,
            px.terms().iter().map(|(d, c)| (vec![d[0], 0], c.clone())),
        )?;
        let mut terms = vec![(vec![0, 1], SeriesTrunc::one(f.clone()))];
        terms.extend(
            self.q
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as i64, 0], c.neg())),
        );
        Ok([p2, SeriesPoly::new(f, 2, terms)?])
    }

    /// `∏ (X − r_i)` and `∏ (Y − q(r_i))`.
    pub fn eliminants(&self) -> Result<[SeriesPoly; 2]> {
        let f = self.field().clone();
        let ys: Vec<SeriesTrunc> = self.solutions()?.into_iter().map(|(_, y)| y).collect();
        Ok([
            SeriesPoly::from_roots(f.clone(), &self.x_roots)?,
            SeriesPoly::from_roots(f, &ys)?,
        ])
    }
}

/// Solutions, generators and eliminants of a system.
type SystemParts = (
    Vec<(SeriesTrunc, SeriesTrunc)>,
    [SeriesPoly; 2],
    [SeriesPoly; 2],
);

/// Zero-dimensional systems the fundamental harness can solve exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum System {
    Linear(Box<LinearSystem>),
    Substitution(SubstitutionSystem),
}

impl System {
    fn parts(&self) -> Result<SystemParts> {
        match self {
            System::Linear(l) => Ok((vec![l.solve()?], l.polys()?, l.eliminants()?)),
            System::Substitution(s) => Ok((s.solutions()?, s.generators()?, s.eliminants()?)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            System::Linear(l) => l.describe(),
            System::Substitution(s) => format!(
                "roots [{}], Y = q(X) with q = [{}]",
                s.x_roots
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
                s.q.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join("; ")
            ),
        }
    }
}

fn fmt_points(h: &Hyperfield, pts: &BTreeSet<Vec<HElem>>) -> String {
    let parts: Vec<String> = pts
        .iter()
        .map(|p| {
            format!(
                "({})",
                p.iter()
                    .map(|x| h.fmt_elem(x))
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Images `f(V(I))` against the points of `V(f_*(I))` found among the
/// solver's candidates: roots of the pushed-forward eliminants, filtered by
/// membership in the prevariety of all pushed-forward generators.
pub fn fundamental_instance(f: &HomDescriptor, sys: &System) -> Result<Option<TrialRecord>> {
    let (sols, gens, elims) = sys.parts()?;
    let expected: BTreeSet<Vec<HElem>> = sols
        .iter()
        .map(|(x, y)| Ok(vec![f.apply_series(x)?, f.apply_series(y)?]))
        .collect::<Result<_>>()?;
    let pushed: Vec<HPoly> = gens
        .iter()
        .map(|g| g.pushforward(f))
        .collect::<Result<_>>()?;
    let mut cands: Vec<Vec<HElem>> = Vec::new();
    for e in &elims {
        let img = e.pushforward(f)?;
        cands.push(
            roots_univariate(&img)?
                .into_iter()
                .map(|r| r.root)
                .collect(),
        );
    }
    let mut got = BTreeSet::new();
    for x in &cands[0] {
        for y in &cands[1] {
            let pt = vec![x.clone(), y.clone()];
            if prevariety_member(&pushed, &pt)? {
                got.insert(pt);
            }
        }
    }
    if got == expected {
        Ok(None)
    } else {
        Ok(Some(TrialRecord {
            instance: sys.describe(),
            expected: fmt_points(&f.target, &expected),
            got: fmt_points(&f.target, &got),
            status: "fail".into(),
        }))
    }
}

pub fn fundamental_harness(f: &HomDescriptor, systems: &[System]) -> Result<HarnessReport> {
    let mut failures = Vec::new();
    for s in systems {
        if let Some(t) = fundamental_instance(f, s)? {
            failures.push(t);
        }
    }
    Ok(HarnessReport {
        harness: "fundamental".into(),
        hom: f.name(),
        mode: "exact".into(),
        trials: systems.len(),
        failures,
    })
}

/// The worked example plus `n` seeded random linear systems.
pub fn standard_systems(field: &FieldKind, n: usize, seed: u64) -> Vec<System> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![System::Linear(Box::new(LinearSystem::worked_example()))];
    out.extend((0..n).map(|_| System::Linear(Box::new(LinearSystem::random(field, &mut rng, 4)))));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::realize;
    use crate::ordgroup::GroupElem;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn bound_holds_on_small_hyperfields() {
        for h in [Hyperfield::Krasner, Hyperfield::Sign] {
            let r = mult_bound_check(&h, 5000, 3, 1);
            assert!(
                r.passed() && r.exhaustive,
                "{}: {:?}",
                h.key(),
                r.violations
            );
        }
        let r = mult_bound_check(&Hyperfield::Phase, 10, 2, 1);
        assert!(!r.applicable && r.note.contains("arc"));
    }

    #[test]
    fn sign_is_not_rac() {
        let p = HPoly::univariate(
            Hyperfield::rationals(),
            &[HElem::int(1), HElem::int(-1), HElem::int(1)],
        )
        .unwrap();
        let out = rac_check_instance(&HomDescriptor::sign(false), &p, &HElem::Sign(1)).unwrap();
        assert!(matches!(out, RacOutcome::Counterexample(_)), "{out:?}");
        let p2 = HPoly::univariate(
            Hyperfield::rationals(),
            &[HElem::int(-2), HElem::int(0), HElem::int(1)],
        )
        .unwrap();
        let out = rac_check_instance(&HomDescriptor::sign(false), &p2, &HElem::Sign(1)).unwrap();
        assert_eq!(out, RacOutcome::RealRootsExist { count: 1 });
    }

    #[test]
    fn fval_lift_from_corpus() {
        let t = SeriesTrunc::t_pow(q(), rat::rat(1));
        let one_t = SeriesTrunc::from_ints(&[(1, 0), (1, 1)], None);
        let p = SeriesPoly::from_roots(q(), &[t.clone(), one_t.clone()]).unwrap();
        let beta = HElem::pair(HElem::int(1), GroupElem::from_int(1));
        let out =
            rac_check_series(&HomDescriptor::fval(q()), &p, &beta, &[one_t, t.clone()]).unwrap();
        assert_eq!(out, RacOutcome::Lift(SourceValue::Series(t)));
    }

    #[test]
    fn kapranov_examples() {
        let s = |t: &[(i64, i64)]| SeriesTrunc::from_ints(t, None);
        let fv = HomDescriptor::fval(q());
        assert_eq!(
            kapranov_instance(&fv, &[s(&[(1, 1)]), s(&[(1, 0), (1, 1)])]).unwrap(),
            None
        );
        let v = HomDescriptor::val(q());
        assert_eq!(
            kapranov_instance(&v, &[s(&[(1, 1)]), s(&[(1, 1)])]).unwrap(),
            None
        );
        let sv = HomDescriptor::sval();
        assert_eq!(
            kapranov_instance(&sv, &[s(&[(1, 0), (1, 1)]), s(&[(-1, 0), (1, 1)])]).unwrap(),
            None
        );
    }

    #[test]
    fn worked_example_solution() {
        let (x, y) = LinearSystem::worked_example().solve().unwrap();
        assert_eq!(
            x.truncate(&rat::rat(3)).to_string(),
            "2 + 2*t + t^2 + O(t^3)"
        );
        assert_eq!(
            y.truncate(&rat::rat(3)).to_string(),
            "-1 - 2*t - t^2 + O(t^3)"
        );
    }

    #[test]
    fn fundamental_examples() {
        let sys = standard_systems(&q(), 0, 0);
        assert!(fundamental_harness(&HomDescriptor::fval(q()), &sys)
            .unwrap()
            .passed());
        assert!(fundamental_harness(&HomDescriptor::val(q()), &sys)
            .unwrap()
            .passed());
        let sub = System::Substitution(SubstitutionSystem {
            x_roots: vec![SeriesTrunc::t_pow(q(), rat::rat(1))],
            q: vec![
                SeriesTrunc::zero(q()),
                SeriesTrunc::zero(q()),
                SeriesTrunc::one(q()),
            ],
        });
        let r = fundamental_harness(&HomDescriptor::fval(q()), &[sub]).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn quotient_extension_rac() {
        let w = HomDescriptor::trivial(Domain::Hyper(Hyperfield::quotient(7, &[1, 2, 4]).unwrap()));
        let wg = HomDescriptor::extended(w, 1).unwrap();
        let t = realize("T").unwrap();
        let src = wg.source.clone();
        let Domain::Hyper(src) = src else {
            unreachable!()
        };
        let p = HPoly::univariate(
            src.clone(),
            &[
                HElem::pair(HElem::Coset(1), GroupElem::from_int(0)),
                HElem::pair(HElem::Coset(1), GroupElem::from_int(0)),
            ],
        )
        .unwrap();
        let beta = HElem::pair(HElem::One, GroupElem::from_int(0));
        assert!(p.pushforward(&wg).unwrap().hyperfield() == &t);
        assert!(matches!(
            rac_check_instance(&wg, &p, &beta).unwrap(),
            RacOutcome::Lift(_)
        ));
    }
}
