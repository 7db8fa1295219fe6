//! Tagged-union JSON for elements, hypersum values and polynomials, matching
//! the schemas under `schema/v1/`.  Every object carries a `"type"` tag;
//! rationals, big integers and group coordinates are strings.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extension::ExtSet;
use crate::hfcore::{Arc, ArcSet, Dir, Gauss, HElem, Hyperfield, SetValue};
use crate::ordgroup::GroupElem;
use crate::poly::HPoly;
use crate::rat;

pub const SCHEMA_VERSION: u32 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing field `{key}` in {v}")))
}

fn big(v: &Value) -> Result<BigInt> {
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(format!("expected integer string, got {v}")))
}

fn dir_json(d: &Dir) -> Value {
    json!({"x": d.x().to_string(), "y": d.y().to_string()})
}

pub fn elem_to_json(h: &Hyperfield, a: &HElem) -> Value {
    match a {
        HElem::Zero => json!({"type": "zero"}),
        HElem::One => json!({"type": "one"}),
        HElem::Sign(s) => json!({"type": "sign", "value": s}),
        HElem::Rat(r) => json!({"type": "rational", "value": rat::to_json(r)}),
        HElem::Gauss(g) => {
            json!({"type": "gaussian", "re": rat::to_json(&g.re), "im": rat::to_json(&g.im)})
        }
        HElem::Fin(c) => json!({"type": "finite", "code": c}),
        HElem::Dir(d) => {
            let mut v = dir_json(d);
            v["type"] = json!("dir");
            v
        }
        HElem::Coset(c) => {
            let rep = match h {
                Hyperfield::Quotient(t) => t.rep(*c),
                _ => *c,
            };
            json!({"type": "coset", "rep": rep})
        }
        HElem::Pair(c, g) => {
            let base = h.base().unwrap_or(h);
            json!({"type": "pair", "coeff": elem_to_json(base, c), "level": g.to_json()})
        }
    }
}

/// Inverse of [`elem_to_json`]; rejects values that are not elements of `h`.
pub fn elem_from_json(h: &Hyperfield, v: &Value) -> Result<HElem> {
    let tag = field(v, "type")?
        .as_str()
        .ok_or_else(|| bad("`type` must be a string"))?;
    let a = match tag {
        "zero" => HElem::Zero,
        "one" => HElem::One,
        "sign" => match field(v, "value")?.as_i64() {
            Some(s @ (1 | -1)) => HElem::Sign(s as i8),
            _ => return Err(bad("sign value must be 1 or -1")),
        },
        "rational" => HElem::from_rational(rat::from_json(field(v, "value")?)?),
        "gaussian" => HElem::from_gauss(Gauss::new(
            rat::from_json(field(v, "re")?)?,
            rat::from_json(field(v, "im")?)?,
        )),
        "finite" => HElem::Fin(
            field(v, "code")?
                .as_u64()
                .ok_or_else(|| bad("finite code must be a count"))? as u32,
        ),
        "dir" => HElem::Dir(
            Dir::new(big(field(v, "x")?)?, big(field(v, "y")?)?).ok_or_else(|| bad("dir(0,0)"))?,
        ),
        "coset" => {
            let rep = field(v, "rep")?
                .as_u64()
                .ok_or_else(|| bad("coset rep must be a count"))?;
            match h {
                Hyperfield::Quotient(t) if rep > 0 && rep < t.field().order() as u64 => {
                    HElem::Coset(t.coset_of(rep as u32))
                }
                Hyperfield::Quotient(_) => HElem::Zero,
                _ => return Err(bad(format!("cosets do not live in {}", h.key()))),
            }
        }
        "pair" => {
            let base = h
                .base()
                .ok_or_else(|| bad(format!("pairs do not live in {}", h.key())))?;
            HElem::pair(
                elem_from_json(base, field(v, "coeff")?)?,
                GroupElem::from_json(field(v, "level")?)?,
            )
        }
        other => return Err(bad(format!("unknown element type `{other}`"))),
    };
    if a.is_zero() || h.is_element(&a) {
        Ok(a)
    } else {
        Err(bad(format!("{v} is not an element of {}", h.key())))
    }
}

fn arc_json(a: &Arc) -> Value {
    json!({
        "start": dir_json(&a.start),
        "end": dir_json(&a.end),
        "start_closed": a.start_closed,
        "end_closed": a.end_closed,
    })
}

fn arcs_json(s: &ArcSet) -> Value {
    json!({
        "type": "arcs",
        "zero": s.zero_included,
        "whole_circle": s.whole_circle,
        "arcs": s.arcs.iter().map(arc_json).collect::<Vec<_>>(),
    })
}

/// `level` sets hold base units at one level; a base set containing zero
/// also covers everything above that level.
pub fn set_to_json(h: &Hyperfield, s: &SetValue) -> Value {
    match s {
        SetValue::Finite(items) => {
            json!({"type": "finite", "elements": items.iter().map(|a| elem_to_json(h, a)).collect::<Vec<_>>()})
        }
        SetValue::Arcs(a) => arcs_json(a),
        SetValue::Ext(ExtSet::ZeroOnly) => json!({"type": "zero_only"}),
        SetValue::Ext(ExtSet::Level { level, base }) => {
            let b = h.base().unwrap_or(h);
            json!({"type": "level", "level": level.to_json(), "base": set_to_json(b, base)})
        }
    }
}

pub fn poly_to_json(p: &HPoly) -> Value {
    let h = p.hyperfield();
    let (support, coeffs): (Vec<&Vec<i64>>, Vec<Value>) = p
        .terms()
        .iter()
        .map(|(d, c)| (d, elem_to_json(h, c)))
        .unzip();
    json!({"hyperfield": h.key(), "nvars": p.nvars(), "support": support, "coeffs": coeffs})
}

/// Reads `{nvars, support, coeffs}` over `h`; the `hyperfield` key is not
/// consulted.
pub fn poly_from_json(h: &Hyperfield, v: &Value) -> Result<HPoly> {
    let support: Vec<Vec<i64>> = serde_json::from_value(field(v, "support")?.clone())
        .map_err(|e| bad(format!("support: {e}")))?;
    let coeffs = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("coeffs must be an array"))?;
    if support.len() != coeffs.len() {
        return Err(bad(format!(
            "{} exponents for {} coefficients",
            support.len(),
            coeffs.len()
        )));
    }
    let nvars = match v.get("nvars") {
        Some(n) => n.as_u64().ok_or_else(|| bad("nvars must be a count"))? as usize,
        None => support.first().map_or(1, Vec::len),
    };
    let terms = support
        .into_iter()
        .zip(coeffs)
        .map(|(d, c)| Ok((d, elem_from_json(h, c)?)))
        .collect::<Result<Vec<_>>>()?;
    HPoly::new(h.clone(), nvars, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::realize;

    #[test]
    fn pairs_nest_their_coefficients() {
        let t = realize("TR").unwrap();
        let a = HElem::pair(HElem::Sign(-1), GroupElem::from_rational(rat::ratio(3, 2)));
        let v = elem_to_json(&t, &a);
        assert_eq!(
            v,
            json!({"type": "pair", "coeff": {"type": "sign", "value": -1}, "level": ["3/2"]})
        );
        assert_eq!(elem_from_json(&t, &v).unwrap(), a);
    }

    #[test]
    fn cosets_use_representatives() {
        let h = Hyperfield::quotient(7, &[1, 2, 4]).unwrap();
        let a = HElem::Coset(match &h {
            Hyperfield::Quotient(t) => t.coset_of(5),
            _ => unreachable!(),
        });
        let v = elem_to_json(&h, &a);
        assert_eq!(v["rep"], json!(3));
        assert_eq!(elem_from_json(&h, &v).unwrap(), a);
        assert!(elem_from_json(&Hyperfield::Sign, &v).is_err());
    }

    #[test]
    fn sums_serialize_by_kind() {
        let q = Hyperfield::extension(Hyperfield::rationals(), 1);
        let a = HElem::pair(HElem::int(1), GroupElem::from_int(0));
        let b = HElem::pair(HElem::int(-1), GroupElem::from_int(0));
        let v = set_to_json(&q, &q.add_elems(&a, &b));
        assert_eq!(v["type"], "level");
        assert_eq!(v["base"]["type"], "finite");
        let p = Hyperfield::Phase;
        let v = set_to_json(&p, &p.add_elems(&HElem::dir(1, 0), &HElem::dir(0, 1)));
        assert_eq!(v["type"], "arcs");
        assert_eq!(v["arcs"][0]["start_closed"], false);
    }

    #[test]
    fn polynomials_round_trip() {
        let h = Hyperfield::Sign;
        let p = HPoly::new(
            h.clone(),
            2,
            [(vec![2, 0], HElem::Sign(1)), (vec![0, 1], HElem::Sign(-1))],
        )
        .unwrap();
        let v = poly_to_json(&p);
        assert_eq!(v["support"], json!([[0, 1], [2, 0]]));
        assert_eq!(poly_from_json(&h, &v).unwrap(), p);
        assert!(poly_from_json(&h, &json!({"support": [[1]], "coeffs": []})).is_err());
    }
}
