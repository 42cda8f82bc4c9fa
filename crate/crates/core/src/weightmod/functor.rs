//! Passage between windowed weight modules and modules over the skeleton
//! algebra. `to_skeleton_module` restricts to the skeleton objects and reads off
//! the generator images; `from_skeleton_module` spreads skeleton data over a
//! window in a fixed normal form:
//!
//! * linear orbits: `V_g` is the space at the canonical representative of `g`;
//!   `X_i = 1` and `D_i = (t_i - 1)` except on the crossings `g_i: 0 -> 1` of a
//!   break index, where `X_i = a` and `D_i = b`;
//! * cyclic orbits: every `V_g` is the skeleton space `W`; `X_k(0)` is `a_k`
//!   or `c_k`, all other `X_k` are the identity, and `D_k` is forced by
//!   `X_k D_k = t_k - 1` away from `g_k = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{Dir, SemiMap, WeightModule, Window};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::orbit::{canonical_skeleton_rep, OrbitInfo, ResidueField, ShiftVector};

/// Module over `A(F, I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearData {
    pub field: Field,
    pub index_set: BTreeSet<usize>,
    pub dims: BTreeMap<ShiftVector, usize>,
    /// `a_{alpha,i}: V_alpha -> V_{alpha+e_i}`, keyed by `(alpha, i)` with `alpha_i = 0`.
    pub a: BTreeMap<(ShiftVector, usize), Matrix>,
    /// `b_{alpha,i}: V_{alpha+e_i} -> V_alpha`.
    pub b: BTreeMap<(ShiftVector, usize), Matrix>,
}

/// Module over `B(F, I, J, tau)`: one space with semilinear generator actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicData {
    pub field: Field,
    pub dim: usize,
    pub a: BTreeMap<usize, SemiMap>,
    pub b: BTreeMap<usize, SemiMap>,
    pub c: BTreeMap<usize, SemiMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonModule {
    Linear(LinearData),
    Cyclic(CyclicData),
}

impl LinearData {
    /// Zero maps on the given spaces.
    pub fn zero(field: &Field, objects: &[ShiftVector], index_set: &BTreeSet<usize>, dims: &[usize]) -> LinearData {
        let dims: BTreeMap<ShiftVector, usize> = objects.iter().cloned().zip(dims.iter().copied()).collect();
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for (alpha, &d) in &dims {
            for &i in index_set {
                if alpha.get(i) == 0 {
                    let up = dims[&alpha.with(i, 1)];
                    a.insert((alpha.clone(), i), Matrix::zeros(field, up, d));
                    b.insert((alpha.clone(), i), Matrix::zeros(field, d, up));
                }
            }
        }
        LinearData { field: field.clone(), index_set: index_set.clone(), dims, a, b }
    }

    /// The generator leaving `alpha` along `i`, with its target.
    pub fn step(&self, alpha: &ShiftVector, i: usize) -> (&Matrix, ShiftVector) {
        if alpha.get(i) == 0 {
            (&self.a[&(alpha.clone(), i)], alpha.with(i, 1))
        } else {
            let lo = alpha.with(i, 0);
            (&self.b[&(lo.clone(), i)], lo)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn check_relations(&self) -> Result<()> {
        for alpha in self.dims.keys() {
            for &i in &self.index_set {
                let key = (alpha.with(i, 0), i);
                let missing = || Error::InvalidInput(format!("skeleton data lacks objects around {}", alpha));
                let lo = *self.dims.get(&key.0).ok_or_else(missing)?;
                let hi = *self.dims.get(&key.0.with(i, 1)).ok_or_else(missing)?;
                if self.a.get(&key).map(Matrix::shape) != Some((hi, lo))
                    || self.b.get(&key).map(Matrix::shape) != Some((lo, hi))
                {
                    return Err(Error::InvalidInput(format!("generator at {} along {} has the wrong shape", key.0, i)));
                }
                let (u, beta) = self.step(alpha, i);
                let (v, _) = self.step(&beta, i);
                if !v.mul(u).is_zero() {
                    return Err(Error::RelationViolation(format!("ab = 0 fails at {} along {}", alpha, i)));
                }
                for &j in &self.index_set {
                    if j <= i {
                        continue;
                    }
                    let (p1, m1) = self.step(alpha, i);
                    let (p2, _) = self.step(&m1, j);
                    let (q1, n1) = self.step(alpha, j);
                    let (q2, _) = self.step(&n1, i);
                    if p2.mul(p1) != q2.mul(q1) {
                        return Err(Error::RelationViolation(format!(
                            "square at {} on indices {}, {} does not commute",
                            alpha, i, j
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl CyclicData {
    pub fn check_relations(&self, info: &OrbitInfo) -> Result<()> {
        let rf = &info.residue;
        let n = self.dim;
        let mut gens: Vec<(String, &SemiMap)> = Vec::new();
        for i in info.indices() {
            let want = info.twist(i);
            if info.break_set.contains(&i) {
                for (name, g) in [("a", self.a.get(&i)), ("b", self.b.get(&i))] {
                    let g = g.ok_or_else(|| Error::InvalidInput(format!("missing {}_{}", name, i)))?;
                    if g.matrix.shape() != (n, n) || !g.twist.is_zero() {
                        return Err(Error::InvalidInput(format!("{}_{} must be a linear {}x{} map", name, i, n, n)));
                    }
                    gens.push((format!("{}_{}", name, i), g));
                }
                let (a, b) = (&self.a[&i], &self.b[&i]);
                if !a.compose(rf, b).matrix.is_zero() || !b.compose(rf, a).matrix.is_zero() {
                    return Err(Error::RelationViolation(format!("a_{0} b_{0} = b_{0} a_{0} = 0 fails", i)));
                }
            } else {
                let c = self.c.get(&i).ok_or_else(|| Error::InvalidInput(format!("missing c_{}", i)))?;
                if c.matrix.shape() != (n, n) || c.twist != want {
                    return Err(Error::InvalidInput(format!("c_{} has the wrong shape or twist", i)));
                }
                if !c.matrix.is_invertible() && n > 0 {
                    return Err(Error::RelationViolation(format!("c_{} is not invertible", i)));
                }
                gens.push((format!("c_{}", i), c));
            }
        }
        for (k, (nu, u)) in gens.iter().enumerate() {
            for (nv, v) in &gens[k + 1..] {
                if nu[2..] == nv[2..] {
                    continue;
                }
                if u.compose(rf, v) != v.compose(rf, u) {
                    return Err(Error::RelationViolation(format!("{} and {} do not commute", nu, nv)));
                }
            }
        }
        Ok(())
    }
}

impl SkeletonModule {
    pub fn total_dim(&self) -> usize {
        match self {
            SkeletonModule::Linear(l) => l.total_dim(),
            SkeletonModule::Cyclic(c) => c.dim,
        }
    }

    pub fn check_relations(&self, info: &OrbitInfo) -> Result<()> {
        match self {
            SkeletonModule::Linear(l) => l.check_relations(),
            SkeletonModule::Cyclic(c) => c.check_relations(info),
        }
    }

    /// Blockwise direct sum.
    pub fn direct_sum(&self, o: &SkeletonModule) -> Result<SkeletonModule> {
        match (self, o) {
            (SkeletonModule::Linear(p), SkeletonModule::Linear(q)) if p.dims.keys().eq(q.dims.keys()) => {
                let f = &p.field;
                let bd = |x: &Matrix, y: &Matrix| Matrix::block_diag(f, &[x, y]);
                Ok(SkeletonModule::Linear(LinearData {
                    field: f.clone(),
                    index_set: p.index_set.clone(),
                    dims: p.dims.iter().map(|(k, d)| (k.clone(), d + q.dims[k])).collect(),
                    a: p.a.iter().map(|(k, m)| (k.clone(), bd(m, &q.a[k]))).collect(),
                    b: p.b.iter().map(|(k, m)| (k.clone(), bd(m, &q.b[k]))).collect(),
                }))
            }
            (SkeletonModule::Cyclic(p), SkeletonModule::Cyclic(q)) => {
                let f = &p.field;
                let bd = |x: &SemiMap, y: &SemiMap| {
                    SemiMap::new(Matrix::block_diag(f, &[&x.matrix, &y.matrix]), x.twist.clone())
                };
                let merge = |x: &BTreeMap<usize, SemiMap>, y: &BTreeMap<usize, SemiMap>| {
                    x.iter().map(|(k, m)| (*k, bd(m, &y[k]))).collect()
                };
                Ok(SkeletonModule::Cyclic(CyclicData {
                    field: f.clone(),
                    dim: p.dim + q.dim,
                    a: merge(&p.a, &q.a),
                    b: merge(&p.b, &q.b),
                    c: merge(&p.c, &q.c),
                }))
            }
            _ => Err(Error::ObjectMismatch("direct sum of modules over different skeleta".into())),
        }
    }
}

fn action<'a>(m: &'a WeightModule, i: usize, g: &ShiftVector, dir: Dir) -> Result<&'a SemiMap> {
    m.action(i, g, dir)
        .and_then(|a| a.map())
        .ok_or_else(|| Error::WindowTooSmall(format!("no action of index {} at {}", i, g)))
}

/// Restriction to the skeleton: the functor `F` followed by the identification
/// of the skeleton with `A(F, I)` or `B(F, I, J, tau)`.
pub fn to_skeleton_module(m: &WeightModule) -> Result<SkeletonModule> {
    let info = m.orbit();
    let f = info.field().clone();
    let rf = &info.residue;
    for &i in &info.break_set {
        if !m.indices().contains(&i) {
            return Err(Error::WindowTooSmall(format!("break index {} is not in the window", i)));
        }
    }
    if info.is_linear() {
        let mut dims = BTreeMap::new();
        for alpha in &info.skeleton {
            if !m.contains(alpha) {
                return Err(Error::WindowTooSmall(format!("skeleton object {} outside the window", alpha)));
            }
            dims.insert(alpha.clone(), m.dim(alpha));
        }
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for alpha in &info.skeleton {
            for &i in &info.break_set {
                if alpha.get(i) != 0 {
                    continue;
                }
                a.insert((alpha.clone(), i), action(m, i, alpha, Dir::Up)?.matrix.clone());
                b.insert((alpha.clone(), i), action(m, i, &alpha.with(i, 1), Dir::Down)?.matrix.clone());
            }
        }
        return Ok(SkeletonModule::Linear(LinearData { field: f, index_set: info.break_set.clone(), dims, a, b }));
    }
    let zero = ShiftVector::zero();
    let dim = m.dim(&zero);
    let mut data = CyclicData { field: f.clone(), dim, a: BTreeMap::new(), b: BTreeMap::new(), c: BTreeMap::new() };
    for k in info.indices() {
        if !m.indices().contains(&k) {
            return Err(Error::WindowTooSmall(format!("index {} is not in the window", k)));
        }
        let r = info.period(k).expect("cyclic") as i64;
        let mut up = SemiMap::identity(&f, dim);
        for s in 0..r {
            up = action(m, k, &zero.with(k, s), Dir::Up)?.compose(rf, &up);
        }
        if info.break_set.contains(&k) {
            let mut down = action(m, k, &zero, Dir::Down)?.clone();
            for s in (1..r).rev() {
                down = action(m, k, &zero.with(k, s), Dir::Down)?.compose(rf, &down);
            }
            data.a.insert(k, up);
            data.b.insert(k, down);
        } else {
            data.c.insert(k, up);
        }
    }
    Ok(SkeletonModule::Cyclic(data))
}

/// Expands skeleton data over a window in the normal form described above.
pub fn from_skeleton_module(data: &SkeletonModule, info: &Arc<OrbitInfo>, window: &Window) -> Result<WeightModule> {
    data.check_relations(info)?;
    let f = info.field().clone();
    match data {
        SkeletonModule::Linear(l) => {
            if !info.is_linear() {
                return Err(Error::ObjectMismatch("linear skeleton data on a cyclic orbit".into()));
            }
            if l.index_set != info.break_set || !l.dims.keys().eq(info.skeleton.iter()) {
                return Err(Error::ObjectMismatch("skeleton data does not match the orbit".into()));
            }
            for &i in &info.break_set {
                if !window.indices.contains(&i) {
                    return Err(Error::WindowTooSmall(format!("break index {} is not in the window", i)));
                }
            }
            let rep = |g: &ShiftVector| canonical_skeleton_rep(info, g);
            WeightModule::build(
                info.clone(),
                window,
                |g| Ok(l.dims[&rep(g)]),
                |i, g| {
                    let n = l.dims[&rep(g)];
                    if info.break_set.contains(&i) && g.get(i) == 0 {
                        Ok(SemiMap::linear(l.a[&(rep(g), i)].clone()))
                    } else {
                        Ok(SemiMap::identity(&f, n))
                    }
                },
                |i, g| {
                    let n = l.dims[&rep(g)];
                    if info.break_set.contains(&i) && g.get(i) == 1 {
                        Ok(SemiMap::linear(l.b[&(rep(&g.step(i, -1)), i)].clone()))
                    } else {
                        Ok(SemiMap::scalar(&f, n, &f.sub(&info.t_scalar(g, i), &f.one())))
                    }
                },
            )
        }
        SkeletonModule::Cyclic(c) => {
            if info.is_linear() {
                return Err(Error::ObjectMismatch("cyclic skeleton data on a linear orbit".into()));
            }
            let full = Window::boxed_on(info, window.indices.clone(), 0)?;
            if full.weights != window.weights || info.indices().iter().any(|i| !window.indices.contains(i)) {
                return Err(Error::WindowTooSmall("a cyclic orbit needs the whole orbit as window".into()));
            }
            let rf = &info.residue;
            let n = c.dim;
            let minus_one = f.neg(&f.one());
            WeightModule::build(
                info.clone(),
                window,
                |_| Ok(n),
                |k, g| {
                    if g.get(k) != 0 {
                        return Ok(SemiMap::identity(&f, n));
                    }
                    Ok(if info.break_set.contains(&k) { c.a[&k].clone() } else { c.c[&k].clone() })
                },
                |k, g| {
                    let r = info.period(k).expect("cyclic");
                    let crossing = if r == 1 { true } else { g.get(k) == 1 };
                    if !crossing {
                        return Ok(SemiMap::scalar(&f, n, &f.sub(&info.t_scalar(g, k), &f.one())));
                    }
                    if info.break_set.contains(&k) {
                        Ok(c.b[&k].scaled(&minus_one))
                    } else {
                        let inv = c.c[&k]
                            .inverse(rf)
                            .ok_or_else(|| Error::RelationViolation(format!("c_{} is not invertible", k)))?;
                        Ok(inv.scaled(&info.t_scalar(&info.normalize(&g.step(k, -1)), k)))
                    }
                },
            )
        }
    }
}

fn x_path(m: &WeightModule, from: &ShiftVector, to: &ShiftVector, rf: &ResidueField) -> Result<SemiMap> {
    let f = m.field();
    let mut cur = from.clone();
    let mut acc = SemiMap::identity(f, m.dim(from));
    let idx: BTreeSet<usize> = from.support().chain(to.support()).collect();
    for i in idx {
        while cur.get(i) < to.get(i) {
            acc = action(m, i, &cur, Dir::Up)?.compose(rf, &acc);
            cur = cur.step(i, 1);
        }
    }
    Ok(acc)
}

/// Isomorphisms `P_g: V_g -> V_rep(g)` along invertible `x`-paths.
pub fn transport(m: &WeightModule) -> Result<Vec<Matrix>> {
    let info = m.orbit();
    let rf = &info.residue;
    let not_inv = |g: &ShiftVector| Error::InvalidInput(format!("transport to {} is not invertible", g));
    let mut out = Vec::with_capacity(m.weights().len());
    for g in m.weights() {
        if info.is_linear() {
            let delta = canonical_skeleton_rep(info, g);
            let idx: BTreeSet<usize> = g.support().chain(delta.support()).collect();
            let mut mu = ShiftVector::zero();
            for i in idx {
                mu.set(i, g.get(i).min(delta.get(i)));
            }
            let to_delta = x_path(m, &mu, &delta, rf)?;
            let to_g = x_path(m, &mu, g, rf)?;
            let back = to_g.inverse(rf).ok_or_else(|| not_inv(g))?;
            let p = to_delta.compose(rf, &back);
            debug_assert!(p.is_linear());
            out.push(p.matrix);
        } else {
            let mut cur = g.clone();
            let mut acc = SemiMap::identity(m.field(), m.dim(g));
            for (k, _) in g.iter() {
                let r = info.period(k).expect("cyclic") as i64;
                while cur.get(k) != 0 {
                    acc = action(m, k, &cur, Dir::Up)?.compose(rf, &acc);
                    cur = info.normalize(&cur.step(k, 1));
                    if cur.get(k) == 0 || cur.get(k) >= r {
                        break;
                    }
                }
            }
            if !acc.is_linear() || !acc.matrix.is_invertible() {
                return Err(not_inv(g));
            }
            out.push(acc.matrix);
        }
    }
    Ok(out)
}

/// The module rewritten in the transported bases; for a module in the image of
/// `from_skeleton_module` this is the identity.
pub fn transported(m: &WeightModule) -> Result<WeightModule> {
    m.conjugate(&transport(m)?)
}

/// `F'(F(M))` compared with `M` after transport.
pub fn round_trip_weight(m: &WeightModule) -> Result<bool> {
    let back = from_skeleton_module(&to_skeleton_module(m)?, m.orbit_arc(), &m.window())?;
    Ok(back == transported(m)?)
}

/// `F(F'(data))` compared with `data`.
pub fn round_trip_skeleton(data: &SkeletonModule, info: &Arc<OrbitInfo>, window: &Window) -> Result<bool> {
    Ok(to_skeleton_module(&from_skeleton_module(data, info, window)?)? == *data)
}
