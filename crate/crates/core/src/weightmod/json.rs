//! JSON encoding of windowed modules. The orbit is stored as its ideal and
//! recomputed on load; twists follow from the orbit and are not stored.

use std::sync::Arc;

use serde_json::{json, Map, Value as Json};

use super::{Action, Dir, SemiMap, WeightModule};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::json::{value_from_json, value_to_json};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::orbit::{orbit_info, SepMaxIdeal, ShiftVector};

fn bad(m: impl Into<String>) -> Error {
    Error::InvalidInput(m.into())
}

pub fn matrix_to_json(m: &Matrix) -> Json {
    let f = m.field();
    Json::Array((0..m.rows()).map(|r| Json::Array(m.row(r).iter().map(|v| value_to_json(f, v)).collect())).collect())
}

pub fn matrix_from_json(f: &Field, j: &Json, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = j.as_array().ok_or_else(|| bad("a matrix is a list of rows"))?;
    if rs.len() != rows {
        return Err(bad(format!("expected {} rows, found {}", rows, rs.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let r = r.as_array().ok_or_else(|| bad("a matrix row is a list"))?;
        if r.len() != cols {
            return Err(bad(format!("expected {} columns, found {}", cols, r.len())));
        }
        for v in r {
            data.push(value_from_json(f, v)?);
        }
    }
    Ok(Matrix::new(f, rows, cols, data))
}

pub fn module_to_json(m: &WeightModule) -> Json {
    let spaces: Map<String, Json> = m.weights().iter().zip(m.dims()).map(|(g, d)| (g.key(), json!(d))).collect();
    let table = |dir: Dir| -> Map<String, Json> {
        m.indices()
            .iter()
            .map(|&i| {
                let row: Map<String, Json> = m
                    .weights()
                    .iter()
                    .map(|g| {
                        let v = match m.action(i, g, dir) {
                            Some(Action::Map(a)) => matrix_to_json(&a.matrix),
                            _ => json!("out"),
                        };
                        (g.key(), v)
                    })
                    .collect();
                (i.to_string(), Json::Object(row))
            })
            .collect()
    };
    json!({
        "schema": crate::SCHEMA,
        "ideal": m.orbit().input.to_json(),
        "indices": m.indices(),
        "window": m.weights().iter().map(ShiftVector::key).collect::<Vec<_>>(),
        "spaces": spaces,
        "x": table(Dir::Up),
        "d": table(Dir::Down),
    })
}

pub fn module_from_json(j: &Json, budget: &Budget) -> Result<WeightModule> {
    if let Some(s) = j.get("schema") {
        if s.as_str() != Some(crate::SCHEMA) {
            return Err(bad(format!("unknown schema {}", s)));
        }
    }
    let ideal = SepMaxIdeal::from_json(j.get("ideal").ok_or_else(|| bad("module needs \"ideal\""))?, &budget.irreducibility)?;
    let info = Arc::new(orbit_info(&ideal, &budget.irreducibility)?);
    let f = info.field().clone();
    let indices: Vec<usize> = j
        .get("indices")
        .and_then(Json::as_array)
        .ok_or_else(|| bad("module needs \"indices\""))?
        .iter()
        .map(|v| v.as_u64().map(|x| x as usize).ok_or_else(|| bad("indices are positive integers")))
        .collect::<Result<_>>()?;
    let mut weights: Vec<ShiftVector> = j
        .get("window")
        .and_then(Json::as_array)
        .ok_or_else(|| bad("module needs \"window\""))?
        .iter()
        .map(ShiftVector::from_json)
        .collect::<Result<_>>()?;
    weights.sort();
    let spaces = j.get("spaces").and_then(Json::as_object).ok_or_else(|| bad("module needs \"spaces\""))?;
    let dims: Vec<usize> = weights
        .iter()
        .map(|g| {
            spaces
                .get(&g.key())
                .and_then(Json::as_u64)
                .map(|d| d as usize)
                .ok_or_else(|| bad(format!("no space dimension for weight {:?}", g.key())))
        })
        .collect::<Result<_>>()?;
    let table = |name: &str, dir: Dir| -> Result<Vec<Vec<Action>>> {
        let t = j.get(name).and_then(Json::as_object).ok_or_else(|| bad(format!("module needs {:?}", name)))?;
        indices
            .iter()
            .map(|&i| {
                let row = t
                    .get(&i.to_string())
                    .and_then(Json::as_object)
                    .ok_or_else(|| bad(format!("{:?} has no entry for index {}", name, i)))?;
                weights
                    .iter()
                    .enumerate()
                    .map(|(k, g)| {
                        let e = row.get(&g.key()).ok_or_else(|| bad(format!("{}[{}] misses {:?}", name, i, g.key())))?;
                        if e.as_str() == Some("out") {
                            return Ok(Action::Out);
                        }
                        let delta = if dir == Dir::Up { 1 } else { -1 };
                        let tgt = info.normalize(&g.step(i, delta));
                        let t = weights
                            .iter()
                            .position(|h| *h == tgt)
                            .ok_or_else(|| bad(format!("{}[{}] at {:?} leaves the window", name, i, g.key())))?;
                        let m = matrix_from_json(&f, e, dims[t], dims[k])?;
                        let tw = if dir == Dir::Up { info.twist(i) } else { info.twist(i).neg() };
                        Ok(Action::Map(SemiMap::new(m, tw)))
                    })
                    .collect()
            })
            .collect()
    };
    let x = table("x", Dir::Up)?;
    let d = table("d", Dir::Down)?;
    WeightModule::from_tables(info, indices, weights, dims, x, d)
}
