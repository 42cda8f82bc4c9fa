//! Representation type of a block and its indecomposable modules.

pub mod brute;
pub mod quiver;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::orbit::{OrbitInfo, ShiftVector};
use crate::weightmod::{from_skeleton_module, to_skeleton_module, LinearData, SkeletonModule, WeightModule, Window};

pub use brute::{brute_force_indecomposables, dimension_vectors, BruteForceResult};
pub use quiver::{
    band, fingerprint, ind0_polys, isomorphic, m_i, q1_indecomposables, q2_indecomposables, simple, string, Quiver,
    QuiverRep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepKind {
    Finite,
    Tame,
    Wild,
}

impl RepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepKind::Finite => "finite",
            RepKind::Tame => "tame",
            RepKind::Wild => "wild",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepType {
    pub kind: RepKind,
    pub reason: &'static str,
}

impl RepType {
    pub fn to_json(&self) -> Json {
        json!({ "schema": crate::SCHEMA, "type": self.kind.as_str(), "reason": self.reason })
    }
}

pub const REASON_NONDEGENERATE: &str = "nondegenerate orbit: the block is equivalent to modules over the residue field";
pub const REASON_ORDER1: &str = "break of order 1: four indecomposables over the quiver Q1";
pub const REASON_ORDER2: &str = "break of order 2: string and band modules over the quiver Q2";
pub const REASON_ORDER3: &str = "break of order at least 3: the skeleton algebra is wild";
pub const REASON_CHARP_N1: &str = "characteristic p, n = 1: tame";
pub const REASON_CHARP_WILD: &str = "characteristic p, n >= 2: the skeleton algebra has at least two generators";

/// Representation type of the block of locally finite weight modules
/// supported on the orbit.
pub fn classify_block(info: &OrbitInfo) -> RepType {
    if info.characteristic() == 0 {
        return match info.order() {
            0 => RepType { kind: RepKind::Finite, reason: REASON_NONDEGENERATE },
            1 => RepType { kind: RepKind::Finite, reason: REASON_ORDER1 },
            2 => RepType { kind: RepKind::Tame, reason: REASON_ORDER2 },
            _ => RepType { kind: RepKind::Wild, reason: REASON_ORDER3 },
        };
    }
    match info.n() {
        Some(1) => RepType { kind: RepKind::Tame, reason: REASON_CHARP_N1 },
        _ => RepType { kind: RepKind::Wild, reason: REASON_CHARP_WILD },
    }
}

fn require_order(info: &OrbitInfo, k: usize) -> Result<Vec<usize>> {
    if info.characteristic() != 0 {
        return Err(Error::WrongCharacteristic("expected characteristic 0".into()));
    }
    if info.order() != k {
        return Err(Error::WrongBreakOrder { expected: k, found: info.order() });
    }
    Ok(info.break_set.iter().copied().collect())
}

/// Skeleton object of each vertex: `Q1` vertices `1, 2` are `0, e_i`; `Q2`
/// vertices `0, 1, 2, 3` are `0, e_j, e_i + e_j, e_i`.
fn vertex_objects(quiver: Quiver, breaks: &[usize]) -> Vec<ShiftVector> {
    match quiver {
        Quiver::Q1 => vec![ShiftVector::zero(), ShiftVector::unit(breaks[0])],
        Quiver::Q2 => {
            let (i, j) = (breaks[0], breaks[1]);
            vec![
                ShiftVector::zero(),
                ShiftVector::unit(j),
                ShiftVector::from_pairs(&[(i, 1), (j, 1)]),
                ShiftVector::unit(i),
            ]
        }
    }
}

/// Crossing generators as `(arrow, lower object, index, raising)`.
fn crossings(quiver: Quiver, breaks: &[usize]) -> Vec<(&'static str, ShiftVector, usize, bool)> {
    match quiver {
        Quiver::Q1 => {
            let i = breaks[0];
            vec![("a", ShiftVector::zero(), i, true), ("b", ShiftVector::zero(), i, false)]
        }
        Quiver::Q2 => {
            let (i, j) = (breaks[0], breaks[1]);
            let o = ShiftVector::zero();
            let ei = ShiftVector::unit(i);
            let ej = ShiftVector::unit(j);
            vec![
                ("b3", o.clone(), i, true),
                ("a3", o.clone(), i, false),
                ("a1", ej.clone(), i, true),
                ("b1", ej, i, false),
                ("a0", o.clone(), j, true),
                ("b0", o, j, false),
                ("b2", ei.clone(), j, true),
                ("a2", ei, j, false),
            ]
        }
    }
}

fn quiver_of(info: &OrbitInfo) -> Result<Quiver> {
    match info.order() {
        1 => Ok(Quiver::Q1),
        2 => Ok(Quiver::Q2),
        k => Err(Error::WrongBreakOrder { expected: 2, found: k }),
    }
}

/// Skeleton data of a quiver representation.
pub fn rep_to_skeleton(info: &OrbitInfo, rep: &QuiverRep) -> Result<LinearData> {
    let breaks = require_order(info, rep.quiver.vertices() / 2)?;
    if rep.field != *info.field() {
        return Err(Error::FieldMismatch);
    }
    rep.check_relations()?;
    let objs = vertex_objects(rep.quiver, &breaks);
    let mut dims = BTreeMap::new();
    for (v, o) in objs.iter().enumerate() {
        dims.insert(o.clone(), rep.dims[v]);
    }
    let mut a = BTreeMap::new();
    let mut b = BTreeMap::new();
    for (arrow, lo, i, up) in crossings(rep.quiver, &breaks) {
        let m = rep.arrow(arrow).clone();
        if up {
            a.insert((lo, i), m);
        } else {
            b.insert((lo, i), m);
        }
    }
    let data = LinearData { field: info.field().clone(), index_set: info.break_set.clone(), dims, a, b };
    data.check_relations()?;
    Ok(data)
}

/// The quiver representation of skeleton data.
pub fn skeleton_to_rep(info: &OrbitInfo, data: &LinearData) -> Result<QuiverRep> {
    let quiver = quiver_of(info)?;
    let breaks: Vec<usize> = info.break_set.iter().copied().collect();
    let objs = vertex_objects(quiver, &breaks);
    let dims: Vec<usize> = objs.iter().map(|o| data.dims[o]).collect();
    let mut rep = QuiverRep::zero(quiver, info.field(), &dims, "skeleton");
    for (arrow, lo, i, up) in crossings(quiver, &breaks) {
        let m = if up { &data.a[&(lo, i)] } else { &data.b[&(lo, i)] };
        rep.set(arrow, m.clone());
    }
    Ok(rep)
}

pub fn build_from_rep(info: &Arc<OrbitInfo>, rep: &QuiverRep, window: &Window) -> Result<WeightModule> {
    let data = rep_to_skeleton(info, rep)?;
    from_skeleton_module(&SkeletonModule::Linear(data), info, window)
}

/// `S(O, m)`, `S(O, sigma_i m)`, `M(O, x_i)`, `M(O, d_i)`.
pub fn build_order1_modules(info: &Arc<OrbitInfo>, window: &Window) -> Result<Vec<(String, WeightModule)>> {
    require_order(info, 1)?;
    let names = ["S(O,m)", "S(O,sigma_i m)", "M(O,x_i)", "M(O,d_i)"];
    q1_indecomposables(info.field())
        .iter()
        .zip(names)
        .map(|(rep, name)| Ok((name.to_string(), build_from_rep(info, rep, window)?)))
        .collect()
}

pub fn build_order2_module(info: &Arc<OrbitInfo>, rep: &QuiverRep, window: &Window) -> Result<WeightModule> {
    require_order(info, 2)?;
    if rep.quiver != Quiver::Q2 {
        return Err(Error::InvalidInput("an order-2 break needs a Q2 representation".into()));
    }
    build_from_rep(info, rep, window)
}

/// `F` followed by the vertex identification.
pub fn module_to_rep(m: &WeightModule) -> Result<QuiverRep> {
    match to_skeleton_module(m)? {
        SkeletonModule::Linear(d) => skeleton_to_rep(m.orbit(), &d),
        SkeletonModule::Cyclic(_) => Err(Error::WrongCharacteristic("cyclic orbits have no quiver".into())),
    }
}
