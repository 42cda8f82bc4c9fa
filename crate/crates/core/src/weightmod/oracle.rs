//! Finite oracles: submodule closure, simplicity and indecomposability of a
//! windowed module, treated as a finite diagram.

use serde_json::{json, Value as Json};

use super::endo::{indecomposability, Diagram, Indecomposability};
use super::WeightModule;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Value;
use crate::linalg::Subspace;
use crate::orbit::ShiftVector;

/// Smallest action-stable family of subspaces containing the seeds. Weight
/// spaces are `D/m`-spaces, so residue-field scalars are included for free.
pub fn submodule_closure(m: &WeightModule, seeds: &[(ShiftVector, Vec<Value>)]) -> Result<Vec<Subspace>> {
    let f = m.field();
    let rf = m.residue();
    let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::new(f, d)).collect();
    let mut queue: Vec<(usize, Vec<Value>)> = Vec::new();
    for (g, v) in seeds {
        let k = m
            .position(&m.orbit().normalize(g))
            .ok_or_else(|| Error::InvalidInput(format!("seed weight {} is not in the window", g)))?;
        if v.len() != m.dims()[k] {
            return Err(Error::InvalidInput(format!("seed at {} has the wrong length", g)));
        }
        if spaces[k].insert(v) {
            queue.push((k, v.clone()));
        }
    }
    let trans = m.transitions();
    let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); m.dims().len()];
    for (n, t) in trans.iter().enumerate() {
        out_of[t.0].push(n);
    }
    while let Some((k, v)) = queue.pop() {
        for &n in &out_of[k] {
            let (_, t, _, _, a) = trans[n];
            let w = a.apply(rf, &v);
            if spaces[t].insert(&w) {
                queue.push((t, w));
            }
        }
    }
    Ok(spaces)
}

pub fn closure_profile(spaces: &[Subspace]) -> Vec<usize> {
    spaces.iter().map(Subspace::dim).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub simple: bool,
    /// False when only a spanning sample of vectors was tried.
    pub exact: bool,
    pub vectors_checked: u64,
    /// A vector generating a proper submodule, with that submodule's profile.
    pub witness: Option<(ShiftVector, Vec<Value>, Vec<usize>)>,
}

impl SimplicityReport {
    pub fn to_json(&self, m: &WeightModule) -> Json {
        let f = m.field();
        json!({
            "schema": crate::SCHEMA,
            "simple": self.simple,
            "exact": self.exact,
            "vectors_checked": self.vectors_checked,
            "witness": self.witness.as_ref().map(|(g, v, prof)| json!({
                "weight": g.key(),
                "vector": v.iter().map(|x| crate::field::json::value_to_json(f, x)).collect::<Vec<_>>(),
                "profile": prof,
            })),
        })
    }
}

/// Representatives of the projective points of `F^d`: first nonzero entry 1.
fn projective_points(elems: &[Value], d: usize, one: &Value) -> Vec<Vec<Value>> {
    let zero = &elems[0];
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let mut idx = vec![0usize; free];
        loop {
            let mut v = vec![zero.clone(); d];
            v[lead] = one.clone();
            for (s, &i) in idx.iter().enumerate() {
                v[lead + 1 + s] = elems[i].clone();
            }
            out.push(v);
            let mut p = 0;
            while p < free {
                idx[p] += 1;
                if idx[p] < elems.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == free {
                break;
            }
        }
    }
    out
}

/// A module is simple when every nonzero homogeneous vector generates it.
/// Exhaustive when every weight space is a line or the field is finite and
/// the point count is within budget; otherwise basis vectors and their sum
/// are tried and the report is marked inexact.
pub fn is_simple_finite(m: &WeightModule, budget: &Budget) -> Result<SimplicityReport> {
    let f = m.field();
    if m.total_dim() == 0 {
        return Ok(SimplicityReport { simple: false, exact: true, vectors_checked: 0, witness: None });
    }
    let full: Vec<usize> = m.dims().to_vec();
    let count: Option<u128> = match f.order() {
        Some(q) => m
            .dims()
            .iter()
            .filter(|&&d| d > 0)
            .try_fold(0u128, |acc, &d| (q.checked_pow(d as u32)?.checked_sub(1)? / (q - 1)).checked_add(acc)),
        None => None,
    };
    let lines_only = m.dims().iter().all(|&d| d <= 1);
    let exhaustive = lines_only || count.map_or(false, |c| c <= budget.max_enum as u128);
    let elems = if exhaustive && !lines_only { f.elements() } else { None };
    let mut checked = 0u64;
    for (k, g) in m.weights().iter().enumerate() {
        let d = m.dims()[k];
        if d == 0 {
            continue;
        }
        let vectors: Vec<Vec<Value>> = match &elems {
            Some(el) => projective_points(el, d, &f.one()),
            None => {
                let mut vs: Vec<Vec<Value>> = (0..d)
                    .map(|c| (0..d).map(|r| if r == c { f.one() } else { f.zero() }).collect())
                    .collect();
                if d > 1 {
                    vs.push(vec![f.one(); d]);
                }
                vs
            }
        };
        for v in vectors {
            checked += 1;
            let prof = closure_profile(&submodule_closure(m, &[(g.clone(), v.clone())])?);
            if prof != full {
                return Ok(SimplicityReport {
                    simple: false,
                    exact: true,
                    vectors_checked: checked,
                    witness: Some((g.clone(), v, prof)),
                });
            }
        }
    }
    Ok(SimplicityReport { simple: true, exact: exhaustive, vectors_checked: checked, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecomposabilityReport {
    pub indecomposable: bool,
    pub method: &'static str,
    /// Dimension over `K` of the endomorphism algebra.
    pub end_dim: usize,
}

impl IndecomposabilityReport {
    pub fn to_json(&self) -> Json {
        json!({
            "schema": crate::SCHEMA,
            "indecomposable": self.indecomposable,
            "method": self.method,
            "end_dim": self.end_dim,
        })
    }
}

/// Decides whether the windowed module has a local endomorphism algebra.
pub fn is_indecomposable_finite(m: &WeightModule, budget: &Budget) -> Result<IndecomposabilityReport> {
    let d = Diagram::from_module(m);
    let end_dim = super::endo::hom_dim(&d, &d)?;
    match indecomposability(&d, budget)? {
        Indecomposability::Indecomposable { method } => {
            Ok(IndecomposabilityReport { indecomposable: true, method, end_dim })
        }
        Indecomposability::Decomposable { method } => {
            Ok(IndecomposabilityReport { indecomposable: false, method, end_dim })
        }
        Indecomposability::Undecided => {
            if m.residue().base().is_finite() {
                Err(Error::EnumerationBudgetExceeded(format!(
                    "idempotent search over an endomorphism algebra of dimension {}",
                    end_dim
                )))
            } else {
                Err(Error::Unsupported("endomorphism algebra not decided by the available criteria".into()))
            }
        }
    }
}
