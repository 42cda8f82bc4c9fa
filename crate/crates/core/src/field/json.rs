//! JSON encodings for fields, elements and polynomials.
//!
//! Rationals are `"n"` or `"n/d"` strings, prime-field elements are least
//! residues, extension elements are coefficient arrays over the base.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use super::{Field, FieldKind, IrreducibilityBudget, Poly, Value};
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn field_to_json(f: &Field) -> Json {
    match f.kind() {
        FieldKind::Rationals => json!({"kind": "Q"}),
        FieldKind::Prime(p) => json!({"kind": "GF", "p": p}),
        FieldKind::Extension { base, modulus, certified } => json!({
            "kind": "Ext",
            "base": field_to_json(base),
            "modulus": modulus.iter().map(|c| value_to_json(base, c)).collect::<Vec<_>>(),
            "certified": certified,
        }),
    }
}

/// Parses a field. Extensions are checked for irreducibility unless they carry
/// `"certified": false`, which records an asserted (unproved) modulus.
pub fn field_from_json(j: &Json, budget: &IrreducibilityBudget) -> Result<Field> {
    if let Some(s) = j.as_str() {
        return parse_field_shorthand(s);
    }
    let kind = j.get("kind").and_then(Json::as_str).ok_or_else(|| bad("field needs a \"kind\""))?;
    match kind {
        "Q" => Ok(Field::rationals()),
        "GF" => {
            let p = j.get("p").and_then(Json::as_u64).ok_or_else(|| bad("GF needs an integer \"p\""))?;
            Field::prime(p)
        }
        "Ext" => {
            let base = field_from_json(j.get("base").ok_or_else(|| bad("Ext needs \"base\""))?, budget)?;
            let modulus = poly_from_json(&base, j.get("modulus").ok_or_else(|| bad("Ext needs \"modulus\""))?)?;
            match j.get("certified").map(|c| c.as_bool().ok_or_else(|| bad("\"certified\" must be boolean"))) {
                Some(Ok(false)) => Field::extension(&base, &modulus, false),
                None | Some(Ok(true)) => Field::extension_checked(&base, &modulus, budget, false),
                Some(Err(e)) => Err(e),
            }
        }
        other => Err(bad(format!("unknown field kind {:?}", other))),
    }
}

/// `Q`, `gf2`, `GF(3)`, `F5` and similar spellings.
pub fn parse_field_shorthand(s: &str) -> Result<Field> {
    let t = s.trim().to_ascii_lowercase();
    if t == "q" || t == "rationals" {
        return Ok(Field::rationals());
    }
    let digits = t
        .trim_start_matches("gf")
        .trim_start_matches('f')
        .trim_start_matches('(')
        .trim_end_matches(')');
    let p: u64 = digits.parse().map_err(|_| bad(format!("unrecognised field {:?}", s)))?;
    Field::prime(p)
}

pub fn value_to_json(f: &Field, v: &Value) -> Json {
    match v {
        Value::Q(q) => Json::String(q.to_string()),
        Value::P(x) => json!(x),
        Value::E(c) => {
            let b = f.base().expect("extension value");
            Json::Array(c.iter().map(|x| value_to_json(b, x)).collect())
        }
    }
}

pub fn value_from_json(f: &Field, j: &Json) -> Result<Value> {
    match f.kind() {
        FieldKind::Rationals => match j {
            Json::String(s) => parse_rational(s).map(Value::Q),
            Json::Number(n) => n
                .as_i64()
                .map(|x| f.from_i64(x))
                .ok_or_else(|| bad(format!("rational must be an integer or a string, got {}", n))),
            _ => Err(bad(format!("expected a rational, got {}", j))),
        },
        FieldKind::Prime(_) => match j {
            Json::Number(n) => {
                n.as_i64().map(|x| f.from_i64(x)).ok_or_else(|| bad(format!("expected an integer, got {}", n)))
            }
            Json::String(s) => Ok(f.from_rational(&parse_rational(s)?)?),
            _ => Err(bad(format!("expected a residue, got {}", j))),
        },
        FieldKind::Extension { base, .. } => match j {
            Json::Array(items) => {
                if items.len() > f.degree() {
                    return Err(bad(format!("extension element has {} > {} coefficients", items.len(), f.degree())));
                }
                let mut c = items.iter().map(|x| value_from_json(base, x)).collect::<Result<Vec<_>>>()?;
                c.resize(f.degree(), base.zero());
                Ok(Value::E(c))
            }
            other => Ok(f.embed(base, &value_from_json(base, other)?)?),
        },
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad(format!("bad rational {:?}", s)))?;
    let d: BigInt = d.parse().map_err(|_| bad(format!("bad rational {:?}", s)))?;
    if d == BigInt::from(0) {
        return Err(bad(format!("zero denominator in {:?}", s)));
    }
    Ok(BigRational::new(n, d))
}

pub fn poly_to_json(p: &Poly) -> Json {
    Json::Array(p.coeffs().iter().map(|c| value_to_json(p.field(), c)).collect())
}

pub fn poly_from_json(f: &Field, j: &Json) -> Result<Poly> {
    let items = j.as_array().ok_or_else(|| bad("polynomial must be a coefficient array"))?;
    let c = items.iter().map(|x| value_from_json(f, x)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(f, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let b = IrreducibilityBudget::default();
        let f2 = Field::prime(2).unwrap();
        let gf4 = Field::extension(&f2, &Poly::from_i64(&f2, &[1, 1, 1]), true).unwrap();
        for f in [Field::rationals(), f2.clone(), gf4.clone()] {
            let j = field_to_json(&f);
            assert_eq!(field_from_json(&j, &b).unwrap(), f);
        }
        let w = gf4.generator().unwrap();
        assert_eq!(value_from_json(&gf4, &value_to_json(&gf4, &w)).unwrap(), w);
        let q = Field::rationals();
        let v = Value::Q(BigRational::new((-3).into(), 7.into()));
        assert_eq!(value_to_json(&q, &v), json!("-3/7"));
        assert_eq!(value_from_json(&q, &json!("-3/7")).unwrap(), v);
    }

    #[test]
    fn reducible_modulus_rejected() {
        let j = json!({"kind": "Ext", "base": {"kind": "GF", "p": 2}, "modulus": [1, 0, 1]});
        assert!(matches!(field_from_json(&j, &IrreducibilityBudget::default()), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn shorthand() {
        assert_eq!(parse_field_shorthand("gf2").unwrap(), Field::prime(2).unwrap());
        assert_eq!(parse_field_shorthand("Q").unwrap(), Field::rationals());
        assert!(parse_field_shorthand("gf4").is_err());
    }
}
