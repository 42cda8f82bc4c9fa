//! Windowed weight modules: a finite set of weights, a residue-field vector
//! space at each, and the actions of `x_i` and `d_i` between neighbours.
//!
//! `V_gamma` is a vector space over `F = D/m` (the base residue field) through
//! `sigma^gamma`; on it `t_i` acts as the scalar `tbar_i + gamma_i`. In the
//! cyclic case `x_i` may be semilinear, `x_i(l v) = sigma_i(l) x_i(v)`.

pub mod endo;
pub mod functor;
pub mod json;
pub mod oracle;
pub mod verify;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Value};
use crate::linalg::Matrix;
use crate::orbit::{OrbitInfo, ResidueField, ShiftVector};

pub use functor::{from_skeleton_module, to_skeleton_module, CyclicData, LinearData, SkeletonModule};
pub use oracle::{
    is_indecomposable_finite, is_simple_finite, submodule_closure, IndecomposabilityReport, SimplicityReport,
};
pub use verify::{verify_relations, RelationReport};

/// `v -> matrix · sigma^twist(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiMap {
    pub matrix: Matrix,
    pub twist: ShiftVector,
}

impl SemiMap {
    pub fn new(matrix: Matrix, twist: ShiftVector) -> Self {
        SemiMap { matrix, twist }
    }

    pub fn linear(matrix: Matrix) -> Self {
        SemiMap { matrix, twist: ShiftVector::zero() }
    }

    pub fn identity(f: &Field, n: usize) -> Self {
        SemiMap::linear(Matrix::identity(f, n))
    }

    pub fn scalar(f: &Field, n: usize, c: &Value) -> Self {
        SemiMap::linear(Matrix::scalar(f, n, c))
    }

    pub fn zero(f: &Field, rows: usize, cols: usize) -> Self {
        SemiMap::linear(Matrix::zeros(f, rows, cols))
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_linear(&self) -> bool {
        self.twist.is_zero()
    }

    /// `self ∘ other`.
    pub fn compose(&self, rf: &ResidueField, other: &SemiMap) -> SemiMap {
        let moved = twist_matrix(rf, &other.matrix, &self.twist);
        SemiMap { matrix: self.matrix.mul(&moved), twist: self.twist.add(&other.twist) }
    }

    pub fn apply(&self, rf: &ResidueField, v: &[Value]) -> Vec<Value> {
        let tv: Vec<Value> = v.iter().map(|x| rf.apply_shift(x, &self.twist)).collect();
        self.matrix.mul_vec(&tv)
    }

    pub fn inverse(&self, rf: &ResidueField) -> Option<SemiMap> {
        let inv = self.matrix.inverse()?;
        let back = self.twist.neg();
        Some(SemiMap { matrix: twist_matrix(rf, &inv, &back), twist: back })
    }

    /// `c · self` (scalar applied after the map).
    pub fn scaled(&self, c: &Value) -> SemiMap {
        SemiMap { matrix: self.matrix.scale(c), twist: self.twist.clone() }
    }

    /// Matrix difference; twists must agree.
    pub fn sub(&self, other: &SemiMap) -> Option<SemiMap> {
        if self.twist != other.twist {
            return None;
        }
        Some(SemiMap { matrix: self.matrix.sub(&other.matrix), twist: self.twist.clone() })
    }
}

/// Applies `sigma^e` to every entry.
pub fn twist_matrix(rf: &ResidueField, m: &Matrix, e: &ShiftVector) -> Matrix {
    if e.is_zero() {
        return m.clone();
    }
    m.map(|x| rf.apply_shift(x, e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Map(SemiMap),
    /// The target weight lies outside the window.
    Out,
}

impl Action {
    pub fn map(&self) -> Option<&SemiMap> {
        match self {
            Action::Map(m) => Some(m),
            Action::Out => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    /// `x_i`
    Up,
    /// `d_i`
    Down,
}

#[derive(Clone, Debug)]
pub struct WeightModule {
    orbit: Arc<OrbitInfo>,
    indices: Vec<usize>,
    weights: Vec<ShiftVector>,
    dims: Vec<usize>,
    pos: HashMap<ShiftVector, usize>,
    x: Vec<Vec<Action>>,
    d: Vec<Vec<Action>>,
}

impl PartialEq for WeightModule {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.orbit, &o.orbit) || *self.orbit == *o.orbit)
            && self.indices == o.indices
            && self.weights == o.weights
            && self.dims == o.dims
            && self.x == o.x
            && self.d == o.d
    }
}

/// The weights and indices a module is materialized on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub indices: Vec<usize>,
    /// Normalized, ascending, without repeats.
    pub weights: Vec<ShiftVector>,
}

impl Window {
    pub fn new(info: &OrbitInfo, indices: Vec<usize>, weights: Vec<ShiftVector>) -> Window {
        let mut weights: Vec<ShiftVector> = weights.iter().map(|g| info.normalize(g)).collect();
        weights.sort();
        weights.dedup();
        Window { indices, weights }
    }

    /// Coordinate box of the given radius on the orbit's indices; the whole
    /// orbit when cyclic.
    pub fn boxed(info: &OrbitInfo, radius: i64) -> Result<Window> {
        Window::boxed_on(info, info.indices(), radius)
    }

    pub fn boxed_on(info: &OrbitInfo, indices: Vec<usize>, radius: i64) -> Result<Window> {
        if !info.is_linear() {
            return Ok(Window::new(info, indices, info.orbit_points()?));
        }
        if radius < 0 {
            return Err(Error::InvalidInput("window radius must be nonnegative".into()));
        }
        let mut pts = vec![ShiftVector::zero()];
        for &i in &indices {
            pts = pts.iter().flat_map(|g| (-radius..=radius).map(move |s| g.with(i, s))).collect();
        }
        Ok(Window::new(info, indices, pts))
    }

    pub fn contains(&self, g: &ShiftVector) -> bool {
        self.weights.binary_search(g).is_ok()
    }
}

impl WeightModule {
    /// Builds a module on `weights`, asking the closures for each in-window action.
    pub fn build(
        orbit: Arc<OrbitInfo>,
        window: &Window,
        mut dim: impl FnMut(&ShiftVector) -> Result<usize>,
        mut x: impl FnMut(usize, &ShiftVector) -> Result<SemiMap>,
        mut d: impl FnMut(usize, &ShiftVector) -> Result<SemiMap>,
    ) -> Result<WeightModule> {
        let indices = window.indices.clone();
        let weights = window.weights.clone();
        let dims = weights.iter().map(&mut dim).collect::<Result<Vec<_>>>()?;
        let pos: HashMap<ShiftVector, usize> = weights.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        let mut xs = Vec::with_capacity(indices.len());
        let mut ds = Vec::with_capacity(indices.len());
        for &i in &indices {
            let mut xrow = Vec::with_capacity(weights.len());
            let mut drow = Vec::with_capacity(weights.len());
            for (k, g) in weights.iter().enumerate() {
                let up = orbit.normalize(&g.step(i, 1));
                xrow.push(match pos.get(&up) {
                    Some(&t) => Action::Map(checked(x(i, g)?, dims[t], dims[k], "x", i, g, &orbit.twist(i))?),
                    None => Action::Out,
                });
                let down = orbit.normalize(&g.step(i, -1));
                drow.push(match pos.get(&down) {
                    Some(&t) => Action::Map(checked(d(i, g)?, dims[t], dims[k], "d", i, g, &orbit.twist(i).neg())?),
                    None => Action::Out,
                });
            }
            xs.push(xrow);
            ds.push(drow);
        }
        Ok(WeightModule { orbit, indices, weights, dims, pos, x: xs, d: ds })
    }

    /// Assembles a module from explicit tables (weights sorted and normalized).
    pub fn from_tables(
        orbit: Arc<OrbitInfo>,
        indices: Vec<usize>,
        weights: Vec<ShiftVector>,
        dims: Vec<usize>,
        x: Vec<Vec<Action>>,
        d: Vec<Vec<Action>>,
    ) -> Result<WeightModule> {
        let pos: HashMap<ShiftVector, usize> = weights.iter().cloned().enumerate().map(|(k, g)| (g, k)).collect();
        if pos.len() != weights.len() || dims.len() != weights.len() {
            return Err(Error::InvalidInput("window has repeated weights or mismatched spaces".into()));
        }
        let m = WeightModule { orbit, indices, weights, dims, pos, x, d };
        for (ii, &i) in m.indices.iter().enumerate() {
            for (k, g) in m.weights.iter().enumerate() {
                for dir in [Dir::Up, Dir::Down] {
                    let tgt = m.neighbor(g, i, dir);
                    let act = match dir {
                        Dir::Up => &m.x[ii][k],
                        Dir::Down => &m.d[ii][k],
                    };
                    match (m.pos.get(&tgt), act) {
                        (Some(&t), Action::Map(a)) => {
                            if a.matrix.shape() != (m.dims[t], m.dims[k]) {
                                return Err(Error::InvalidInput(format!(
                                    "action of index {} at {} has shape {:?}, expected {:?}",
                                    i,
                                    g,
                                    a.matrix.shape(),
                                    (m.dims[t], m.dims[k])
                                )));
                            }
                            if a.matrix.field() != m.field() {
                                return Err(Error::FieldMismatch);
                            }
                            let tw = if dir == Dir::Up { m.orbit.twist(i) } else { m.orbit.twist(i).neg() };
                            if a.twist != tw {
                                return Err(Error::InvalidInput(format!("action at {} carries the wrong twist", g)));
                            }
                        }
                        (None, Action::Out) => {}
                        (Some(_), Action::Out) => {
                            return Err(Error::InvalidInput(format!("in-window action at {} tagged out", g)))
                        }
                        (None, Action::Map(_)) => {
                            return Err(Error::InvalidInput(format!("action at {} leaves the window", g)))
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn orbit(&self) -> &OrbitInfo {
        &self.orbit
    }

    pub fn orbit_arc(&self) -> &Arc<OrbitInfo> {
        &self.orbit
    }

    pub fn field(&self) -> &Field {
        self.orbit.field()
    }

    pub fn residue(&self) -> &ResidueField {
        &self.orbit.residue
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn weights(&self) -> &[ShiftVector] {
        &self.weights
    }

    pub fn window(&self) -> Window {
        Window { indices: self.indices.clone(), weights: self.weights.clone() }
    }

    pub fn position(&self, g: &ShiftVector) -> Option<usize> {
        self.pos.get(&self.orbit.normalize(g)).copied()
    }

    pub fn contains(&self, g: &ShiftVector) -> bool {
        self.position(g).is_some()
    }

    pub fn dim(&self, g: &ShiftVector) -> usize {
        self.position(g).map(|k| self.dims[k]).unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total dimension over `F`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Total dimension over the ground field `K`.
    pub fn k_dim(&self) -> usize {
        self.total_dim() * self.orbit.residue.degree()
    }

    /// Weights with nonzero spaces.
    pub fn support(&self) -> Vec<ShiftVector> {
        self.weights.iter().zip(&self.dims).filter(|(_, &d)| d > 0).map(|(g, _)| g.clone()).collect()
    }

    pub fn neighbor(&self, g: &ShiftVector, i: usize, dir: Dir) -> ShiftVector {
        let s = if dir == Dir::Up { 1 } else { -1 };
        self.orbit.normalize(&g.step(i, s))
    }

    fn index_pos(&self, i: usize) -> Option<usize> {
        self.indices.iter().position(|&j| j == i)
    }

    /// Action of `x_i` (Up) or `d_i` (Down) out of weight `g`. `None` when the
    /// index or weight is not represented.
    pub fn action(&self, i: usize, g: &ShiftVector, dir: Dir) -> Option<&Action> {
        let ii = self.index_pos(i)?;
        let k = self.position(g)?;
        Some(match dir {
            Dir::Up => &self.x[ii][k],
            Dir::Down => &self.d[ii][k],
        })
    }

    pub fn x(&self, i: usize, g: &ShiftVector) -> Option<&SemiMap> {
        self.action(i, g, Dir::Up)?.map()
    }

    pub fn d(&self, i: usize, g: &ShiftVector) -> Option<&SemiMap> {
        self.action(i, g, Dir::Down)?.map()
    }

    /// Replaces one action (shape-checked); for fault injection and tests.
    pub fn set_action(&mut self, i: usize, g: &ShiftVector, dir: Dir, a: SemiMap) -> Result<()> {
        let ii = self.index_pos(i).ok_or(Error::IndexOutOfArity(i))?;
        let k = self.position(g).ok_or_else(|| Error::WindowTooSmall(format!("{} not in window", g)))?;
        let t = self
            .position(&self.neighbor(g, i, dir))
            .ok_or_else(|| Error::WindowTooSmall("target outside window".into()))?;
        if a.matrix.shape() != (self.dims[t], self.dims[k]) {
            return Err(Error::InvalidInput("shape mismatch".into()));
        }
        let tw = if dir == Dir::Up { self.orbit.twist(i) } else { self.orbit.twist(i).neg() };
        if a.twist != tw {
            return Err(Error::InvalidInput("wrong twist".into()));
        }
        match dir {
            Dir::Up => self.x[ii][k] = Action::Map(a),
            Dir::Down => self.d[ii][k] = Action::Map(a),
        }
        Ok(())
    }

    /// Every in-window transition as (source position, target position, index, direction, map).
    pub fn transitions(&self) -> Vec<(usize, usize, usize, Dir, &SemiMap)> {
        let mut out = Vec::new();
        for (ii, &i) in self.indices.iter().enumerate() {
            for (k, g) in self.weights.iter().enumerate() {
                for (dir, table) in [(Dir::Up, &self.x), (Dir::Down, &self.d)] {
                    if let Action::Map(a) = &table[ii][k] {
                        let t = self.pos[&self.neighbor(g, i, dir)];
                        out.push((k, t, i, dir, a));
                    }
                }
            }
        }
        out
    }

    /// Blockwise direct sum; both modules must share orbit, indices and window.
    pub fn direct_sum(&self, o: &WeightModule) -> Result<WeightModule> {
        if *self.orbit != *o.orbit || self.indices != o.indices || self.weights != o.weights {
            return Err(Error::ObjectMismatch("direct sum needs a common orbit, index set and window".into()));
        }
        let f = self.field().clone();
        let sum = |a: &Action, b: &Action| -> Result<Action> {
            match (a, b) {
                (Action::Map(p), Action::Map(q)) => {
                    if p.twist != q.twist {
                        return Err(Error::ObjectMismatch("twists differ".into()));
                    }
                    Ok(Action::Map(SemiMap::new(Matrix::block_diag(&f, &[&p.matrix, &q.matrix]), p.twist.clone())))
                }
                _ => Ok(Action::Out),
            }
        };
        let combine = |ta: &Vec<Vec<Action>>, tb: &Vec<Vec<Action>>| -> Result<Vec<Vec<Action>>> {
            ta.iter().zip(tb).map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| sum(a, b)).collect()).collect()
        };
        Ok(WeightModule {
            orbit: self.orbit.clone(),
            indices: self.indices.clone(),
            weights: self.weights.clone(),
            dims: self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect(),
            pos: self.pos.clone(),
            x: combine(&self.x, &o.x)?,
            d: combine(&self.d, &o.d)?,
        })
    }

    /// Conjugates every action by per-weight isomorphisms `p[k]: V_k -> V'_k`.
    pub fn conjugate(&self, p: &[Matrix]) -> Result<WeightModule> {
        let rf = self.residue();
        let inv: Vec<Matrix> = p
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::InvalidInput("transport is not invertible".into())))
            .collect::<Result<_>>()?;
        let mut out = self.clone();
        out.dims = p.iter().map(|m| m.rows()).collect();
        for (ii, &i) in self.indices.iter().enumerate() {
            for (k, g) in self.weights.iter().enumerate() {
                for dir in [Dir::Up, Dir::Down] {
                    let table = if dir == Dir::Up { &mut out.x } else { &mut out.d };
                    if let Action::Map(a) = &table[ii][k] {
                        let t = self.pos[&self.neighbor(g, i, dir)];
                        let m = p[t].mul(&a.matrix).mul(&twist_matrix(rf, &inv[k], &a.twist));
                        table[ii][k] = Action::Map(SemiMap::new(m, a.twist.clone()));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn checked(
    a: SemiMap,
    rows: usize,
    cols: usize,
    what: &str,
    i: usize,
    g: &ShiftVector,
    twist: &ShiftVector,
) -> Result<SemiMap> {
    if a.twist != *twist {
        return Err(Error::InvalidInput(format!("{}_{} at {} carries the wrong twist", what, i, g)));
    }
    if a.matrix.shape() != (rows, cols) {
        return Err(Error::InvalidInput(format!(
            "{}_{} at {} has shape {:?}, expected ({}, {})",
            what,
            i,
            g,
            a.matrix.shape(),
            rows,
            cols
        )));
    }
    Ok(a)
}
