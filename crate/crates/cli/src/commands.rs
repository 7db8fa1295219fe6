//! Subcommands.  Each produces a JSON value plus a pass/fail flag; text and
//! SVG renderings are derived from the same computation.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperfield_core::hfcore::{check_axioms, SampleMode};
use hyperfield_core::json::{poly_from_json, poly_to_json, set_to_json, SCHEMA_VERSION};
use hyperfield_core::poly::{HPoly, SeriesPoly};
use hyperfield_core::rat::{self, Rational};
use hyperfield_core::series::{hom_check, Domain};
use hyperfield_core::solve::{
    fundamental_harness, kapranov_harness, mult_bound_check, rac_check_instance, roots_univariate,
    standard_systems, KapranovConfig, RacOutcome,
};
use hyperfield_core::tropgeo::{
    fine_hypersurface, fine_intersect, homotopy_start, lift_system, oracle_series_solutions,
    point_json, stable_intersect, svg, trop_project, FineCurve,
};
use hyperfield_core::{Error, FieldKind, HElem, HomDescriptor, Hyperfield, Result};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::parse::{
    parse_elem_in, parse_field, parse_hyperfield, parse_poly_in, parse_series_poly,
};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "hfx",
    version,
    about = "Exact hyperfield, tropical-extension and fine-curve computations"
)]
pub struct Cli {
    /// Hyperfield key, e.g. `S`, `GF7/{1,2,4}`, `TR`, `Q⋊Q`.
    #[arg(long, global = true)]
    pub hyperfield: Option<String>,
    /// Coefficient field of series inputs: `Q`, `Qi` or `GFq`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Series truncation order `p/q`.
    #[arg(long, global = true)]
    pub precision: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Write the formatted result here; JSON still goes to standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hypersum value of a polynomial at a point.
    Eval {
        poly: String,
        /// One coordinate per flag, in variable order.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Roots of a univariate polynomial with multiplicities.
    Roots { poly: String },
    /// Coefficientwise image of a polynomial under a homomorphism.
    Pushforward {
        poly: String,
        #[command(flatten)]
        hom: HomArgs,
    },
    /// Tropical curve of a plane polynomial.
    Tropicalize { input: String },
    /// Fine tropical curve with base-unit conditions per cell.
    FineCurve {
        input: String,
        /// Also render the curve to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Fine intersection of two plane curves.
    Intersect {
        first: String,
        second: String,
        /// Add the stable intersection's tropical points.
        #[arg(long)]
        stable: bool,
    },
    /// Start solutions of polyhedral homotopy for a square plane system.
    HomotopyStart { first: String, second: String },
    #[command(subcommand)]
    Verify(Verify),
    /// Hyperfield axioms; same as `verify axioms`.
    Axioms(AxiomArgs),
}

#[derive(Args, Debug, Clone)]
pub struct HomArgs {
    /// `val`, `sval`, `fval`, `phval`, `sgn`, `wsgn`, `omega`, `id` or `proj`.
    #[arg(long)]
    pub hom: String,
    /// Target key for `proj`, e.g. `GF7/{1,2,4}`.
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct AxiomArgs {
    /// Check every triple; only for finite hyperfields.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Verify {
    Axioms(AxiomArgs),
    /// Root multisets of products of linear factors against their images.
    Kapranov {
        #[command(flatten)]
        hom: HomArgs,
    },
    /// Images of solution sets of plane systems against push-forward prevarieties.
    Fundamental {
        #[command(flatten)]
        hom: HomArgs,
    },
    /// Total multiplicity never exceeds the degree.
    Mult {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Whether a root of a push-forward lifts to a root in its fiber.
    Rac {
        poly: String,
        /// Target root to lift.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[command(flatten)]
        hom: HomArgs,
    },
    /// Multiplicativity and sum containment of a homomorphism.
    Hom {
        #[command(flatten)]
        hom: HomArgs,
        /// Also check that every sum in the target lifts.
        #[arg(long)]
        lift_sums: bool,
    },
}

/// Result of a subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub svg: Option<String>,
    pub passed: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Outcome {
        Outcome {
            json,
            text,
            svg: None,
            passed: true,
        }
    }

    /// The result in the requested format.
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&versioned(&self.json)).expect("values serialize")
            )),
            Format::Text => Ok(format!("{}\n", self.text)),
            Format::Svg => self
                .svg
                .clone()
                .ok_or_else(|| Error::Unsupported("this command has no SVG rendering".into())),
        }
    }
}

/// Top-level objects carry the schema version they conform to.
fn versioned(v: &Value) -> Value {
    let mut v = v.clone();
    if let Some(obj) = v.as_object_mut() {
        obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

/// Machine-readable error object.
pub fn error_json(e: &Error) -> Value {
    versioned(&json!({"error": {"code": e.code(), "message": e.to_string()}}))
}

/// A plane-curve input: a polynomial over a hyperfield, or over a series field.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyInput {
    Hyper(HPoly),
    Series(SeriesPoly),
}

impl PolyInput {
    /// Polynomial over an extension; series inputs go through `fval`.
    fn over_extension(&self) -> Result<HPoly> {
        match self {
            PolyInput::Hyper(p) => Ok(p.clone()),
            PolyInput::Series(p) => p.pushforward(&HomDescriptor::fval(p.field().clone())),
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Json(format!("{}: {e}", path.display()))
}

/// Reads `{"hyperfield": key, "poly": text}` or `{"field": key, "poly": text}`
/// from a file, or parses `arg` itself using the global flags.  Over a
/// hyperfield, `poly` may also be a `{support, coeffs}` object.
pub fn resolve_input(cli: &Cli, arg: &str, nvars: Option<usize>) -> Result<PolyInput> {
    let path = Path::new(arg);
    if arg.ends_with(".json") && path.is_file() {
        let raw = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let v: Value = serde_json::from_str(&raw)
            .map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
        if let (Some(k), true) = (v["hyperfield"].as_str(), v["poly"].is_object()) {
            return Ok(PolyInput::Hyper(poly_from_json(
                &parse_hyperfield(k)?,
                &v["poly"],
            )?));
        }
        let text = v["poly"]
            .as_str()
            .ok_or_else(|| Error::Json(format!("{}: missing \"poly\"", path.display())))?;
        return match (v["hyperfield"].as_str(), v["field"].as_str()) {
            (Some(k), None) => Ok(PolyInput::Hyper(parse_poly_in(
                &parse_hyperfield(k)?,
                text,
                nvars,
            )?)),
            (None, Some(k)) => Ok(PolyInput::Series(parse_series_poly(
                &parse_field(k)?,
                text,
                nvars,
            )?)),
            _ => Err(Error::Json(format!(
                "{}: give exactly one of \"hyperfield\" or \"field\"",
                path.display()
            ))),
        };
    }
    match (&cli.hyperfield, &cli.field) {
        (Some(k), None) => Ok(PolyInput::Hyper(parse_poly_in(
            &parse_hyperfield(k)?,
            arg,
            nvars,
        )?)),
        (None, Some(k)) => Ok(PolyInput::Series(parse_series_poly(
            &parse_field(k)?,
            arg,
            nvars,
        )?)),
        (Some(_), Some(_)) => Err(Error::Unsupported(
            "--hyperfield and --field are exclusive".into(),
        )),
        (None, None) => Err(Error::Unsupported(
            "give --hyperfield or --field for inline polynomials".into(),
        )),
    }
}

fn hyperfield(cli: &Cli) -> Result<Hyperfield> {
    let key = cli
        .hyperfield
        .as_deref()
        .ok_or_else(|| Error::Unsupported("--hyperfield is required".into()))?;
    parse_hyperfield(key)
}

fn series_field(cli: &Cli) -> Result<FieldKind> {
    cli.field
        .as_deref()
        .map_or(Ok(FieldKind::Rationals), parse_field)
}

fn precision(cli: &Cli) -> Result<Option<Rational>> {
    cli.precision
        .as_deref()
        .map(rat::parse_rational)
        .transpose()
}

/// Resolves a homomorphism name; series sources use `--field`.
pub fn parse_hom(cli: &Cli, args: &HomArgs) -> Result<HomDescriptor> {
    let field = || series_field(cli);
    Ok(match args.hom.as_str() {
        "val" => HomDescriptor::val(field()?),
        "sval" => HomDescriptor::sval(),
        "fval" => HomDescriptor::fval(field()?),
        "phval" => HomDescriptor::phval(),
        "sgn" => HomDescriptor::sign(false),
        "wsgn" => HomDescriptor::sign(true),
        "omega" => HomDescriptor::trivial(match &cli.hyperfield {
            Some(k) => Domain::Hyper(parse_hyperfield(k)?),
            None => Domain::Series(field()?),
        }),
        "id" => HomDescriptor::identity(hyperfield(cli)?),
        "proj" => {
            let target = args
                .target
                .as_deref()
                .ok_or_else(|| Error::Unsupported("proj needs --target".into()))?;
            let units = |h: &Hyperfield| match h {
                Hyperfield::Quotient(t) => Ok((
                    t.field().order() as u64,
                    t.subgroup().iter().map(|&u| u as i64).collect(),
                )),
                Hyperfield::Field(FieldKind::Finite(f)) => Ok((f.order() as u64, Vec::new())),
                h => Err(Error::KindMismatch(format!(
                    "{} is not a finite field or quotient",
                    h.key()
                ))),
            };
            let (q1, u1): (u64, Vec<i64>) = units(&hyperfield(cli)?)?;
            let (q2, u2) = units(&parse_hyperfield(target)?)?;
            if q1 != q2 {
                return Err(Error::KindMismatch(format!(
                    "GF{q1} does not project to GF{q2}"
                )));
            }
            HomDescriptor::quotient_map(q1, &u1, &u2)?
        }
        other => {
            return Err(Error::Unsupported(format!(
                "unknown homomorphism {other:?}"
            )))
        }
    })
}

fn levels_json(levels: &[[Rational; 2]]) -> Value {
    json!(levels
        .iter()
        .map(|g| [rat::fmt_rational(&g[0]), rat::fmt_rational(&g[1])])
        .collect::<Vec<_>>())
}

fn fine_curve(cli: &Cli, arg: &str) -> Result<(PolyInput, FineCurve)> {
    let input = resolve_input(cli, arg, Some(2))?;
    let curve = fine_hypersurface(&input.over_extension()?)?;
    Ok((input, curve))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eval { poly, at } => {
            let h = hyperfield(cli)?;
            let p = parse_poly_in(&h, poly, Some(at.len().max(1)))?;
            let pt: Vec<HElem> = at
                .iter()
                .map(|a| parse_elem_in(&h, a))
                .collect::<Result<_>>()?;
            let value = p.eval(&pt)?;
            let is_root = h.set_contains_zero(&value);
            let shown = h.fmt_set(&value);
            Ok(Outcome::ok(
                json!({
                    "hyperfield": h.key(),
                    "poly": p.to_text(),
                    "value": shown,
                    "value_json": set_to_json(&h, &value),
                    "is_root": is_root,
                }),
                shown,
            ))
        }
        Command::Roots { poly } => {
            let h = hyperfield(cli)?;
            let p = parse_poly_in(&h, poly, Some(1))?;
            let records = roots_univariate(&p)?;
            let listed: Vec<String> = records
                .iter()
                .flat_map(|r| {
                    std::iter::repeat_n(h.fmt_elem(&r.root).replace(", ", ","), r.multiplicity)
                })
                .collect();
            Ok(Outcome::ok(
                json!({
                    "hyperfield": h.key(),
                    "poly": p.to_text(),
                    "roots": records.iter().map(|r| r.to_json(&h)).collect::<Vec<_>>(),
                }),
                format!("[{}]", listed.join(",")),
            ))
        }
        Command::Pushforward { poly, hom } => {
            let f = parse_hom(cli, hom)?;
            let nvars = None;
            let pushed = match &f.source {
                Domain::Series(k) => parse_series_poly(k, poly, nvars)?.pushforward(&f)?,
                Domain::Hyper(h) => parse_poly_in(h, poly, nvars)?.pushforward(&f)?,
            };
            Ok(Outcome::ok(
                json!({
                    "hom": f.name(),
                    "hyperfield": pushed.hyperfield().key(),
                    "poly": pushed.to_text(),
                    "poly_json": poly_to_json(&pushed),
                }),
                pushed.to_text(),
            ))
        }
        Command::Tropicalize { input } => {
            let (_, curve) = fine_curve(cli, input)?;
            let trop = trop_project(&curve);
            let vertices = levels_json(&trop.vertices());
            let mut json = trop.to_json();
            json["vertices"] = vertices.clone();
            Ok(Outcome {
                text: format!("vertices {vertices}"),
                svg: Some(svg::trop_curve_svg(&trop)),
                json,
                passed: true,
            })
        }
        Command::FineCurve { input, svg: path } => {
            let (_, curve) = fine_curve(cli, input)?;
            let picture = svg::fine_curve_svg(&curve);
            if let Some(path) = path {
                fs::write(path, &picture).map_err(|e| io_error(path, e))?;
            }
            let text = curve
                .cells()
                .iter()
                .map(|c| {
                    format!(
                        "{}: {}",
                        c.locus.to_json(),
                        hyperfield_core::tropgeo::laurent_text(curve.base(), &c.condition)
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome {
                json: curve.to_json(),
                text,
                svg: Some(picture),
                passed: true,
            })
        }
        Command::Intersect {
            first,
            second,
            stable,
        } => {
            let (a, c1) = fine_curve(cli, first)?;
            let (b, c2) = fine_curve(cli, second)?;
            let fi = fine_intersect(&c1, &c2)?;
            let h = c1.hyperfield().clone();
            let mut json = fi.to_json(&h);
            let mut text = vec![format!("points {}", json["points"])];
            if *stable {
                let levels = stable_intersect(&c1, &c2, cli.seed)?;
                json["projected"] = levels_json(&levels);
                text.push(format!("projected {}", json["projected"]));
            }
            if let (PolyInput::Series(p), PolyInput::Series(q)) = (&a, &b) {
                json["oracle"] = oracle_json(cli, p, q)?;
            }
            Ok(Outcome::ok(json, text.join("\n")))
        }
        Command::HomotopyStart { first, second } => {
            let a = resolve_input(cli, first, Some(2))?;
            let b = resolve_input(cli, second, Some(2))?;
            let system = match (a, b) {
                (PolyInput::Series(p), PolyInput::Series(q)) => [p, q],
                (PolyInput::Hyper(p), PolyInput::Hyper(q)) => lift_system(&[p, q], cli.seed)?,
                _ => {
                    return Err(Error::KindMismatch(
                        "mixed series and hyperfield inputs".into(),
                    ))
                }
            };
            let start = homotopy_start(&system)?;
            let mut json = start.to_json();
            json["system"] = json!([system[0].to_string(), system[1].to_string()]);
            let text = format!(
                "{} start solutions, mixed volume {}",
                start.solutions.len(),
                start.mixed_volume
            );
            Ok(Outcome::ok(json, text))
        }
        Command::Axioms(args) | Command::Verify(Verify::Axioms(args)) => {
            let h = hyperfield(cli)?;
            let mode = if args.exhaustive {
                if !h.is_finite() {
                    return Err(Error::Unsupported(format!(
                        "{} is infinite; drop --exhaustive",
                        h.key()
                    )));
                }
                SampleMode::Exhaustive
            } else {
                SampleMode::Sampled {
                    triples: cli.trials.unwrap_or(1000),
                    seed: cli.seed,
                }
            };
            let report = check_axioms(&h, mode);
            let passed = report.passed();
            let text = format!(
                "{} axioms: {} ({} triples)",
                h.key(),
                verdict(passed),
                report.triples
            );
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                svg: None,
                passed,
            })
        }
        Command::Verify(Verify::Kapranov { hom }) => {
            let f = parse_hom(cli, hom)?;
            let prec = precision(cli)?.map_or(Ok(8), |p| {
                p.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::Unsupported("precision out of range".into()))
            })?;
            let cfg = KapranovConfig {
                trials: cli.trials.unwrap_or(200),
                precision: prec,
                seed: cli.seed,
                ..Default::default()
            };
            let report = kapranov_harness(&f, &cfg)?;
            let passed = report.passed();
            let text = format!(
                "kapranov {}: {} ({} trials)",
                f.name(),
                verdict(passed),
                report.trials
            );
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                svg: None,
                passed,
            })
        }
        Command::Verify(Verify::Fundamental { hom }) => {
            let f = parse_hom(cli, hom)?;
            let Domain::Series(k) = &f.source else {
                return Err(Error::Unsupported(
                    "the fundamental harness needs a valuation out of a series field".into(),
                ));
            };
            let systems = standard_systems(k, cli.trials.unwrap_or(50), cli.seed);
            let report = fundamental_harness(&f, &systems)?;
            let passed = report.passed();
            let text = format!(
                "fundamental {}: {} ({} systems)",
                f.name(),
                verdict(passed),
                report.trials
            );
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                svg: None,
                passed,
            })
        }
        Command::Verify(Verify::Mult { max_degree }) => {
            let h = hyperfield(cli)?;
            let report = mult_bound_check(&h, cli.trials.unwrap_or(100), *max_degree, cli.seed);
            let passed = report.passed();
            let text = format!(
                "multiplicity bound over {}: {} ({} polynomials)",
                h.key(),
                verdict(passed),
                report.checked
            );
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                svg: None,
                passed,
            })
        }
        Command::Verify(Verify::Rac { poly, beta, hom }) => {
            let f = parse_hom(cli, hom)?;
            let Domain::Hyper(src) = &f.source else {
                return Err(Error::Unsupported(
                    "rac checks over series sources need a root corpus".into(),
                ));
            };
            let p = parse_poly_in(src, poly, Some(1))?;
            let b = parse_elem_in(&f.target, beta)?;
            let outcome = rac_check_instance(&f, &p, &b)?;
            let (status, detail, passed) = match &outcome {
                RacOutcome::Lift(v) => ("lift", format!("{v:?}"), true),
                RacOutcome::RealRootsExist { count } => {
                    ("real_roots_exist", format!("{count} real roots"), true)
                }
                RacOutcome::Counterexample(s) => ("counterexample", s.clone(), false),
                RacOutcome::NotFound(s) => ("not_found", s.clone(), false),
            };
            let pushed = p.pushforward(&f)?;
            Ok(Outcome {
                json: json!({
                    "instance": format!("{}_*({}) at {}", f.name(), p.to_text(), f.target.fmt_elem(&b)),
                    "pushforward": pushed.to_text(),
                    "is_root": pushed.is_root(std::slice::from_ref(&b))?,
                    "status": status,
                    "got": detail,
                }),
                text: format!("{status}: {detail}"),
                svg: None,
                passed,
            })
        }
        Command::Verify(Verify::Hom { hom, lift_sums }) => {
            let f = parse_hom(cli, hom)?;
            let report = hom_check(&f, cli.trials.unwrap_or(500), cli.seed, *lift_sums);
            let passed = report.passed();
            let text = format!(
                "{}: {} ({} trials)",
                f.name(),
                verdict(passed),
                report.trials
            );
            Ok(Outcome {
                json: serde_json::to_value(&report).expect("serializable"),
                text,
                svg: None,
                passed,
            })
        }
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

/// Series solutions (truncated at `--precision` when given) and their fine valuations.
fn oracle_json(cli: &Cli, p: &SeriesPoly, q: &SeriesPoly) -> Result<Value> {
    let sols = match oracle_series_solutions(p, q) {
        Ok(s) => s,
        Err(e @ (Error::Unsupported(_) | Error::NoIsolatedSolution)) => return Ok(error_json(&e)),
        Err(e) => return Err(e),
    };
    let prec = precision(cli)?;
    let cut = |s: &hyperfield_core::SeriesTrunc| {
        prec.as_ref().map_or_else(|| s.clone(), |p| s.truncate(p))
    };
    let fval = HomDescriptor::fval(p.field().clone());
    let h = fval.target.clone();
    let mut series = Vec::new();
    let mut points = Vec::new();
    for (x, y) in &sols {
        series.push(json!([cut(x).to_string(), cut(y).to_string()]));
        points.push(point_json(
            &h,
            &[fval.apply_series(x)?, fval.apply_series(y)?],
        ));
    }
    Ok(json!({"series": series, "points": points}))
}

/// Runs the command line and writes its outputs; returns the exit status.
pub fn main_with(cli: &Cli, stdout: &mut dyn std::io::Write) -> i32 {
    let result = run(cli).and_then(|o| {
        let body = o.render(cli.format)?;
        match &cli.out {
            Some(path) => {
                fs::write(path, &body).map_err(|e| io_error(path, e))?;
                let json = Outcome::render(&o, Format::Json)?;
                Ok((json, o.passed))
            }
            None => Ok((body, o.passed)),
        }
    });
    match result {
        Ok((body, passed)) => {
            let _ = stdout.write_all(body.as_bytes());
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&error_json(&e)).expect("serializable")
            );
            2
        }
    }
}
