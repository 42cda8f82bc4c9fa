//! Simple weight modules with support a given orbit.
//!
//! In characteristic 0 these are `S(O)` for a nondegenerate orbit and one
//! `S(O, p)` per skeleton object otherwise. In characteristic `p` they are
//! parametrized by `(Gamma, xi, N)`: a set of active break indices, a choice
//! of raising or lowering generator for each, and a maximal ideal `N` of the
//! skew ring `R_{Gamma,xi}` generated by the active `d_i` and the invertible
//! `c_j`. Explicit modules are built when `R_{Gamma,xi}` has at most one
//! variable; the quotient `R/RN` is then finite over the residue field.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::Poly;
use crate::linalg::Matrix;
use crate::orbit::{OrbitInfo, ShiftVector};
use crate::weightmod::{
    from_skeleton_module, is_simple_finite, CyclicData, Dir, LinearData, SemiMap, SkeletonModule, WeightModule, Window,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleDescriptor {
    /// `S(O)`, nondegenerate characteristic 0.
    SO,
    /// `S(O, p)`, degenerate characteristic 0; `p` is a skeleton object.
    SOp { p: ShiftVector },
    CharP {
        gamma: BTreeSet<usize>,
        /// `0`: `d_i = a_i`; `1`: `d_i = b_i`.
        xi: BTreeMap<usize, u8>,
        /// Break indices outside `Gamma` and the non-break indices.
        j_set: BTreeSet<usize>,
    },
}

impl SimpleDescriptor {
    /// Generators of `R_{Gamma,xi}`, e.g. `["a_1", "c_2^±1"]`.
    pub fn presentation(&self) -> Vec<String> {
        match self {
            SimpleDescriptor::CharP { gamma, xi, j_set } => gamma
                .iter()
                .map(|i| format!("{}_{}", if xi[i] == 0 { "a" } else { "b" }, i))
                .chain(j_set.iter().map(|j| format!("c_{}^±1", j)))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Indices of the variables of `R_{Gamma,xi}`.
    fn variables(&self) -> Vec<usize> {
        match self {
            SimpleDescriptor::CharP { gamma, j_set, .. } => gamma.iter().chain(j_set).copied().collect(),
            _ => Vec::new(),
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            SimpleDescriptor::SO => json!({ "kind": "S_O" }),
            SimpleDescriptor::SOp { p } => json!({ "kind": "S_O_p", "p": p.key() }),
            SimpleDescriptor::CharP { gamma, xi, j_set } => json!({
                "kind": "char_p",
                "gamma": gamma,
                "xi": xi.iter().map(|(i, x)| (i.to_string(), json!(x))).collect::<serde_json::Map<_, _>>(),
                "j": j_set,
                "presentation": self.presentation(),
                "N": "symbolic",
            }),
        }
    }
}

/// All simple modules with support the orbit, up to the choice of `N`.
pub fn classify_simples(info: &OrbitInfo) -> Vec<SimpleDescriptor> {
    if info.characteristic() == 0 {
        if !info.degenerate {
            return vec![SimpleDescriptor::SO];
        }
        return info.skeleton.iter().map(|p| SimpleDescriptor::SOp { p: p.clone() }).collect();
    }
    let breaks: Vec<usize> = info.break_set.iter().copied().collect();
    let non_breaks: BTreeSet<usize> = info.indices().into_iter().filter(|i| !info.break_set.contains(i)).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << breaks.len()) {
        let gamma: BTreeSet<usize> =
            breaks.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
        let g: Vec<usize> = gamma.iter().copied().collect();
        for xs in 0u32..(1 << g.len()) {
            let xi: BTreeMap<usize, u8> = g.iter().enumerate().map(|(b, &i)| (i, (xs >> b & 1) as u8)).collect();
            out.push(SimpleDescriptor::CharP { gamma: gamma.clone(), xi, j_set: non_breaks.clone() });
        }
    }
    out
}

fn require_char0(info: &OrbitInfo) -> Result<()> {
    if info.characteristic() != 0 {
        return Err(Error::WrongCharacteristic("expected characteristic 0".into()));
    }
    Ok(())
}

/// `S(O) = D/m` spread over the orbit: `x_i` is the identity and `d_i`
/// multiplies by the value of `t_i` one step down.
pub fn build_s_o(info: &Arc<OrbitInfo>, window: &Window) -> Result<WeightModule> {
    require_char0(info)?;
    if info.degenerate {
        return Err(Error::DegenerateOrbit);
    }
    let data = LinearData::zero(info.field(), &info.skeleton, &info.break_set, &[1]);
    from_skeleton_module(&SkeletonModule::Linear(data), info, window)
}

/// `S(O, p)`: the one-dimensional skeleton module at `p`, expanded; it lives
/// on the region of `p` and every transition leaving the region is zero.
pub fn build_s_o_p(info: &Arc<OrbitInfo>, p: &ShiftVector, window: &Window) -> Result<WeightModule> {
    require_char0(info)?;
    let pos = info
        .skeleton
        .iter()
        .position(|d| d == p)
        .ok_or_else(|| Error::NotASkeletonObject(p.key()))?;
    let dims: Vec<usize> = (0..info.skeleton.len()).map(|k| usize::from(k == pos)).collect();
    let data = LinearData::zero(info.field(), &info.skeleton, &info.break_set, &dims);
    from_skeleton_module(&SkeletonModule::Linear(data), info, window)
}

/// The skeleton module `R_{Gamma,xi}/R N` as data over the skew skeleton ring.
pub fn char_p_skeleton_data(info: &OrbitInfo, desc: &SimpleDescriptor, n: Option<&Poly>) -> Result<CyclicData> {
    let SimpleDescriptor::CharP { gamma, xi, j_set } = desc else {
        return Err(Error::WrongCharacteristic("descriptor is for characteristic 0".into()));
    };
    if info.characteristic() == 0 {
        return Err(Error::WrongCharacteristic("expected characteristic p".into()));
    }
    if !gamma.is_subset(&info.break_set) || gamma.iter().any(|i| !xi.contains_key(i)) || xi.len() != gamma.len() {
        return Err(Error::InvalidInput("Gamma must be a set of break indices with xi defined on it".into()));
    }
    let expected_j: BTreeSet<usize> = info.indices().into_iter().filter(|i| !info.break_set.contains(i)).collect();
    if *j_set != expected_j {
        return Err(Error::InvalidInput("descriptor does not match the orbit".into()));
    }
    let f = info.field();
    let vars = desc.variables();
    let dim;
    let mut z_map = None;
    match (vars.len(), n) {
        (0, None) => dim = 1,
        (0, Some(_)) => {
            return Err(Error::InvalidInput("R_{Gamma,xi} is the residue field here; N must be omitted".into()))
        }
        (1, None) => return Err(Error::InvalidInput("N is required: R_{Gamma,xi} has one variable".into())),
        (1, Some(g)) => {
            if g.field() != f {
                return Err(Error::FieldMismatch);
            }
            let g = g.monic();
            match g.degree() {
                None | Some(0) => return Err(Error::InvalidInput("N must be a proper ideal".into())),
                _ => {}
            }
            if f.is_zero(&g.coeff(0)) {
                return Err(Error::InvalidInput("the generator of N must have nonzero constant term".into()));
            }
            let k = vars[0];
            dim = g.degree().expect("nonzero");
            z_map = Some((k, SemiMap::new(Matrix::companion(&g), info.twist(k))));
        }
        _ => {
            return Err(Error::QuotientNotFiniteDimensional(format!(
                "R_{{Gamma,xi}} has {} variables; a principal N has an infinite quotient",
                vars.len()
            )))
        }
    }
    let mut data = CyclicData { field: f.clone(), dim, a: BTreeMap::new(), b: BTreeMap::new(), c: BTreeMap::new() };
    for &i in &info.break_set {
        let zero = SemiMap::new(Matrix::zeros(f, dim, dim), info.twist(i));
        data.a.insert(i, zero.clone());
        data.b.insert(i, zero);
    }
    if let Some((k, z)) = z_map {
        if gamma.contains(&k) {
            if xi[&k] == 0 {
                data.a.insert(k, z);
            } else {
                data.b.insert(k, SemiMap::new(z.matrix, info.twist(k).neg()));
            }
        } else {
            data.c.insert(k, z);
        }
    }
    data.check_relations(info)?;
    Ok(data)
}

/// `S(O, Gamma, xi, N)` on the whole orbit; maximality of `N` is certified by
/// the simplicity oracle.
pub fn build_s_char_p(
    info: &Arc<OrbitInfo>,
    desc: &SimpleDescriptor,
    n: Option<&Poly>,
    budget: &Budget,
) -> Result<WeightModule> {
    let data = char_p_skeleton_data(info, desc, n)?;
    let window = Window::boxed_on(info, info.indices(), 0)?;
    let m = from_skeleton_module(&SkeletonModule::Cyclic(data), info, &window)?;
    if (m.k_dim() as u64) > budget.max_enum {
        return Err(Error::EnumerationBudgetExceeded(format!("module of dimension {}", m.k_dim())));
    }
    let report = is_simple_finite(&m, budget)?;
    if !report.simple {
        return Err(Error::NotMaximal("the quotient has a proper submodule".into()));
    }
    if !report.exact {
        return Err(Error::EnumerationBudgetExceeded("simplicity could not be checked exhaustively".into()));
    }
    Ok(m)
}

/// Structural certificate for the characteristic 0 simples: inside the
/// support every transition is invertible, and every transition leaving it
/// is zero.
pub fn structural_simplicity(m: &WeightModule) -> bool {
    for &i in m.indices() {
        for g in m.weights() {
            if m.dim(g) == 0 {
                continue;
            }
            for dir in [Dir::Up, Dir::Down] {
                let Some(a) = m.action(i, g, dir).and_then(|a| a.map()) else { continue };
                let h = m.neighbor(g, i, dir);
                if m.dim(&h) > 0 && !a.matrix.is_invertible() {
                    return false;
                }
            }
        }
    }
    true
}
