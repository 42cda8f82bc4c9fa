use std::collections::BTreeMap;

use serde_json::{json, Map, Value as Json};

use super::ShiftVector;
use crate::error::{Error, Result};
use crate::field::json::{field_from_json, field_to_json, poly_from_json, poly_to_json};
use crate::field::{Field, IrreducibilityBudget, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arity {
    Finite(usize),
    /// Infinitely many variables; only finitely many differ from the default generator.
    Unbounded,
}

/// `(f_1(t_1), ..., f_n(t_n))` with every `f_i` monic and univariate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SepMaxIdeal {
    field: Field,
    arity: Arity,
    generators: BTreeMap<usize, Poly>,
    default: Option<Poly>,
    assert_irreducible: bool,
}

impl SepMaxIdeal {
    pub fn new(
        field: &Field,
        arity: Arity,
        generators: BTreeMap<usize, Poly>,
        default: Option<Poly>,
    ) -> Result<SepMaxIdeal> {
        let check = |i: usize, f: &Poly| -> Result<()> {
            if f.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !f.is_monic() || f.degree() == Some(0) {
                return Err(Error::InvalidInput(format!("generator at {} must be monic of degree >= 1", i)));
            }
            Ok(())
        };
        for (&i, f) in &generators {
            if i == 0 {
                return Err(Error::InvalidInput("indices start at 1".into()));
            }
            check(i, f)?;
        }
        let mut generators = generators;
        match arity {
            Arity::Finite(n) => {
                if n == 0 {
                    return Err(Error::InvalidInput("arity must be positive".into()));
                }
                if default.is_some() {
                    return Err(Error::InvalidInput("a default generator needs unbounded arity".into()));
                }
                if let Some(&i) = generators.keys().find(|&&i| i > n) {
                    return Err(Error::IndexOutOfArity(i));
                }
                if let Some(i) = (1..=n).find(|i| !generators.contains_key(i)) {
                    return Err(Error::InvalidInput(format!("missing generator at index {}", i)));
                }
            }
            Arity::Unbounded => {
                let d = default
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("unbounded arity needs a default generator".into()))?;
                check(0, d)?;
                if *d == Poly::t(field) {
                    return Err(Error::InvalidInput("default generator must differ from t".into()));
                }
                generators.retain(|_, f| f != d);
            }
        }
        Ok(SepMaxIdeal { field: field.clone(), arity, generators, default, assert_irreducible: false })
    }

    /// Finite-arity ideal from generators listed for indices 1, 2, ...
    pub fn finite(field: &Field, gens: Vec<Poly>) -> Result<SepMaxIdeal> {
        let n = gens.len();
        let map = gens.into_iter().enumerate().map(|(k, f)| (k + 1, f)).collect();
        SepMaxIdeal::new(field, Arity::Finite(n), map, None)
    }

    /// Declares that generators whose irreducibility cannot be decided are irreducible.
    pub fn asserting_irreducible(mut self, yes: bool) -> Self {
        self.assert_irreducible = yes;
        self
    }

    pub fn asserts_irreducible(&self) -> bool {
        self.assert_irreducible
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn n(&self) -> Option<usize> {
        match self.arity {
            Arity::Finite(n) => Some(n),
            Arity::Unbounded => None,
        }
    }

    pub fn default_generator(&self) -> Option<&Poly> {
        self.default.as_ref()
    }

    /// Indices carrying an explicit generator, ascending.
    pub fn explicit_indices(&self) -> Vec<usize> {
        self.generators.keys().copied().collect()
    }

    pub fn generators(&self) -> &BTreeMap<usize, Poly> {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        Ok(self.generators.get(&i).or(self.default.as_ref()).cloned().expect("validated"))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        match self.arity {
            _ if i == 0 => Err(Error::IndexOutOfArity(0)),
            Arity::Finite(n) if i > n => Err(Error::IndexOutOfArity(i)),
            _ => Ok(()),
        }
    }

    /// `sigma^gamma(m)`: the generator at `i` becomes `f_i(t - gamma_i)`.
    pub fn sigma_apply(&self, gamma: &ShiftVector) -> Result<SepMaxIdeal> {
        let mut out = self.clone();
        for (i, g) in gamma.iter() {
            let f = self.generator(i)?.shift(-g);
            if out.default.as_ref() == Some(&f) {
                out.generators.remove(&i);
            } else {
                out.generators.insert(i, f);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Json {
        let gens: Map<String, Json> = self.generators.iter().map(|(i, f)| (i.to_string(), poly_to_json(f))).collect();
        let mut o = json!({
            "field": field_to_json(&self.field),
            "arity": match self.arity { Arity::Finite(n) => json!(n), Arity::Unbounded => json!("inf") },
            "generators": gens,
        });
        if let Some(d) = &self.default {
            o["default"] = poly_to_json(d);
        }
        if self.assert_irreducible {
            o["assert_irreducible"] = json!(true);
        }
        o
    }

    pub fn from_json(j: &Json, budget: &IrreducibilityBudget) -> Result<SepMaxIdeal> {
        let bad = |m: &str| Error::InvalidInput(m.to_string());
        let field = field_from_json(j.get("field").ok_or_else(|| bad("ideal needs \"field\""))?, budget)?;
        let arity = match j.get("arity") {
            Some(Json::String(s)) if s == "inf" => Arity::Unbounded,
            Some(x) => Arity::Finite(x.as_u64().ok_or_else(|| bad("arity must be a positive integer or \"inf\""))? as usize),
            None => {
                let n = j.get("generators").and_then(Json::as_object).map(|o| o.len()).unwrap_or(0);
                Arity::Finite(n)
            }
        };
        let gens = j
            .get("generators")
            .and_then(Json::as_object)
            .ok_or_else(|| bad("ideal needs a \"generators\" object"))?;
        let mut map = BTreeMap::new();
        for (k, v) in gens {
            let i: usize = k.parse().map_err(|_| bad("generator keys must be indices"))?;
            map.insert(i, poly_from_json(&field, v)?);
        }
        let default = match j.get("default") {
            Some(d) if !d.is_null() => Some(poly_from_json(&field, d)?),
            _ => None,
        };
        let assert = match j.get("assert_irreducible") {
            None | Some(Json::Null) => false,
            Some(v) => v.as_bool().ok_or_else(|| bad("\"assert_irreducible\" must be boolean"))?,
        };
        Ok(SepMaxIdeal::new(&field, arity, map, default)?.asserting_irreducible(assert))
    }
}
