//! Homomorphism spaces of finite diagrams of semilinear maps, and
//! indecomposability through the endomorphism algebra.
//!
//! A diagram is a list of spaces over the residue field `F` with arrows
//! `v -> M sigma^e(v)`. A homomorphism is a family of `F`-linear maps
//! commuting with every arrow; the twisted arrows make the condition only
//! `K`-linear, so the system is solved over `K` in coordinates.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{is_irreducible, Irreducibility, Poly, Value};
use crate::linalg::Matrix;
use crate::orbit::ResidueField;

use super::{SemiMap, WeightModule};

#[derive(Clone, Debug)]
pub struct Diagram {
    pub rf: ResidueField,
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize, SemiMap)>,
}

/// One map per node.
pub type Morphism = Vec<Matrix>;

impl Diagram {
    pub fn from_module(m: &WeightModule) -> Diagram {
        let arrows = m.transitions().into_iter().map(|(s, t, _, _, a)| (s, t, a.clone())).collect();
        Diagram { rf: m.residue().clone(), dims: m.dims().to_vec(), arrows }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn identity(&self) -> Morphism {
        self.dims.iter().map(|&d| Matrix::identity(self.rf.field(), d)).collect()
    }
}

fn same_shape(a: &Diagram, b: &Diagram) -> Result<()> {
    let ok = a.rf.field() == b.rf.field()
        && a.dims.len() == b.dims.len()
        && a.arrows.len() == b.arrows.len()
        && a.arrows.iter().zip(&b.arrows).all(|(x, y)| x.0 == y.0 && x.1 == y.1 && x.2.twist == y.2.twist);
    if ok {
        Ok(())
    } else {
        Err(Error::ObjectMismatch("diagrams have different shapes".into()))
    }
}

/// `K`-basis of `Hom(a, b)`.
pub fn hom_basis(a: &Diagram, b: &Diagram) -> Result<Vec<Morphism>> {
    same_shape(a, b)?;
    let rf = &a.rf;
    let f = rf.field();
    let k = rf.base();
    let deg = rf.degree();
    let kbasis: Vec<Value> = (0..deg)
        .map(|j| {
            let c: Vec<Value> = (0..deg).map(|l| if l == j { k.one() } else { k.zero() }).collect();
            rf.from_k_coords(&c)
        })
        .collect();
    let mut offset = Vec::with_capacity(a.dims.len());
    let mut n = 0;
    for v in 0..a.dims.len() {
        offset.push(n);
        n += a.dims[v] * b.dims[v] * deg;
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let unknown = |v: usize, r: usize, c: usize, j: usize| offset[v] + (r * a.dims[v] + c) * deg + j;
    let mut rows: Vec<Vec<Value>> = Vec::new();
    for ((s, t, am), (_, _, bm)) in a.arrows.iter().zip(&b.arrows) {
        let (s, t) = (*s, *t);
        // phi_t A - B tau(phi_s), an entry (r, c) of size b.dims[t] x a.dims[s].
        let (er, ec) = (b.dims[t], a.dims[s]);
        if er == 0 || ec == 0 {
            continue;
        }
        let mut eq: Vec<Vec<Value>> = vec![vec![f.zero(); n]; er * ec];
        for r in 0..er {
            for q in 0..a.dims[t] {
                for c in 0..ec {
                    let x = am.matrix.get(q, c);
                    if f.is_zero(x) {
                        continue;
                    }
                    for (j, kb) in kbasis.iter().enumerate() {
                        let u = unknown(t, r, q, j);
                        let cell = &mut eq[r * ec + c][u];
                        *cell = f.add(cell, &f.mul(kb, x));
                    }
                }
            }
        }
        for (j, kb) in kbasis.iter().enumerate() {
            let tk = rf.apply_shift(kb, &bm.twist);
            for q in 0..b.dims[s] {
                for c in 0..ec {
                    let u = unknown(s, q, c, j);
                    for r in 0..er {
                        let y = bm.matrix.get(r, q);
                        if f.is_zero(y) {
                            continue;
                        }
                        let cell = &mut eq[r * ec + c][u];
                        *cell = f.sub(cell, &f.mul(y, &tk));
                    }
                }
            }
        }
        for e in eq {
            let coords: Vec<Vec<Value>> = e.iter().map(|x| rf.to_k_coords(x)).collect();
            for l in 0..deg {
                let row: Vec<Value> = coords.iter().map(|c| c[l].clone()).collect();
                if row.iter().any(|x| !k.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() { Matrix::zeros(k, 1, n) } else { Matrix::from_rows(k, rows, n) };
    let null = sys.nullspace();
    Ok(null
        .into_iter()
        .map(|vec| {
            (0..a.dims.len())
                .map(|v| {
                    let mut m = Matrix::zeros(f, b.dims[v], a.dims[v]);
                    for r in 0..b.dims[v] {
                        for c in 0..a.dims[v] {
                            let co: Vec<Value> = (0..deg).map(|j| vec[unknown(v, r, c, j)].clone()).collect();
                            m.set(r, c, rf.from_k_coords(&co));
                        }
                    }
                    m
                })
                .collect()
        })
        .collect())
}

pub fn hom_dim(a: &Diagram, b: &Diagram) -> Result<usize> {
    Ok(hom_basis(a, b)?.len())
}

pub fn compose(x: &Morphism, y: &Morphism) -> Morphism {
    x.iter().zip(y).map(|(p, q)| p.mul(q)).collect()
}

fn is_nilpotent(x: &Morphism) -> bool {
    x.iter().all(Matrix::is_nilpotent)
}

fn is_invertible(x: &Morphism) -> bool {
    x.iter().all(Matrix::is_invertible)
}

fn combine(rf: &ResidueField, basis: &[Morphism], coeffs: &[Value], proto: &Morphism) -> Morphism {
    let f = rf.field();
    let mut acc: Morphism = proto.iter().map(|m| Matrix::zeros(f, m.rows(), m.cols())).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        if rf.base().is_zero(c) {
            continue;
        }
        let c = rf.from_base(c);
        acc = acc.iter().zip(b).map(|(x, y)| x.add(&y.scale(&c))).collect();
    }
    acc
}

/// `Tr_{F/K}` of an element of `F`.
fn field_trace(rf: &ResidueField, a: &Value) -> Value {
    let k = rf.base();
    let deg = rf.degree();
    let mut t = k.zero();
    for j in 0..deg {
        let c: Vec<Value> = (0..deg).map(|l| if l == j { k.one() } else { k.zero() }).collect();
        let prod = rf.field().mul(a, &rf.from_k_coords(&c));
        t = k.add(&t, &rf.to_k_coords(&prod)[j]);
    }
    t
}

fn k_trace(rf: &ResidueField, x: &Morphism) -> Value {
    let f = rf.field();
    let mut t = f.zero();
    for m in x {
        for d in 0..m.rows() {
            t = f.add(&t, m.get(d, d));
        }
    }
    field_trace(rf, &t)
}

fn flatten(rf: &ResidueField, x: &Morphism) -> Vec<Value> {
    x.iter().flat_map(|m| m.data().iter().flat_map(|v| rf.to_k_coords(v))).collect()
}

/// Minimal polynomial over `K` of an endomorphism.
pub fn min_poly(rf: &ResidueField, x: &Morphism) -> Poly {
    let k = rf.base();
    let id: Morphism = x.iter().map(|m| Matrix::identity(rf.field(), m.rows())).collect();
    let mut powers = vec![flatten(rf, &id)];
    let mut cur = id;
    loop {
        cur = compose(x, &cur);
        let v = flatten(rf, &cur);
        let len = v.len();
        let cols = powers.len() + 1;
        let mut data = Vec::with_capacity(len * cols);
        for r in 0..len {
            for p in &powers {
                data.push(p[r].clone());
            }
            data.push(v[r].clone());
        }
        let m = Matrix::new(k, len.max(1), cols, if len == 0 { vec![k.zero(); cols] } else { data });
        if let Some(rel) = m.nullspace().into_iter().find(|r| !k.is_zero(&r[cols - 1])) {
            let lead = rel[cols - 1].clone();
            let coeffs: Vec<Value> = rel.iter().map(|c| k.div(c, &lead).expect("nonzero")).collect();
            return Poly::new(k, coeffs);
        }
        powers.push(v);
    }
}

fn squarefree_part(f: &Poly) -> Poly {
    let g = f.gcd(&f.derivative());
    if g.degree() == Some(0) {
        return f.monic();
    }
    f.divmod(&g).expect("nonzero gcd").0.monic()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    Indecomposable { method: &'static str },
    Decomposable { method: &'static str },
    Undecided,
}

/// Decides whether the endomorphism algebra of `d` is local.
pub fn indecomposability(d: &Diagram, budget: &Budget) -> Result<Indecomposability> {
    use Indecomposability::*;
    if d.total_dim() == 0 {
        return Ok(Decomposable { method: "zero module" });
    }
    let rf = &d.rf;
    let k = rf.base();
    let e = hom_basis(d, d)?;
    let m = e.len();
    if m == 1 {
        return Ok(Indecomposable { method: "one-dimensional endomorphism algebra" });
    }
    let id = d.identity();

    let mut candidates: Vec<Morphism> = e.clone();
    let ones: Vec<Value> = vec![k.one(); m];
    candidates.push(combine(rf, &e, &ones, &id));
    let ramp: Vec<Value> = (1..=m as i64).map(|c| k.from_i64(c)).collect();
    candidates.push(combine(rf, &e, &ramp, &id));
    for x in &candidates {
        if !is_nilpotent(x) && !is_invertible(x) {
            return Ok(Decomposable { method: "element neither nilpotent nor invertible" });
        }
    }
    for x in &candidates {
        let q = squarefree_part(&min_poly(rf, x));
        if q.degree().unwrap_or(0) > 1
            && is_irreducible(&q, &budget.irreducibility).ok() == Some(Irreducibility::Reducible)
        {
            return Ok(Decomposable { method: "minimal polynomial with two prime factors" });
        }
    }

    if let Some(q) = k.order() {
        let total = (q as f64).powi(m as i32);
        if total <= budget.max_enum as f64 {
            let elems = k.elements().expect("finite");
            let mut idx = vec![0usize; m];
            loop {
                let coeffs: Vec<Value> = idx.iter().map(|&i| elems[i].clone()).collect();
                let x = combine(rf, &e, &coeffs, &id);
                if compose(&x, &x) == x && x.iter().any(|b| !b.is_zero()) && x != id {
                    return Ok(Decomposable { method: "exhaustive idempotent search" });
                }
                let mut pos = 0;
                loop {
                    if pos == m {
                        return Ok(Indecomposable { method: "exhaustive idempotent search" });
                    }
                    idx[pos] += 1;
                    if idx[pos] < elems.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
    }

    if k.characteristic() == 0 {
        // The trace form of a faithful representation has the radical as kernel.
        let tr: Vec<Vec<Value>> =
            e.iter().map(|x| e.iter().map(|y| k_trace(rf, &compose(x, y))).collect()).collect();
        let t = Matrix::from_rows(k, tr, m);
        let quotient_dim = t.rank();
        if quotient_dim == 1 {
            return Ok(Indecomposable { method: "semisimple quotient is the ground field" });
        }
        let in_radical = |x: &Morphism| e.iter().all(|y| k.is_zero(&k_trace(rf, &compose(x, y))));
        let commutative = e.iter().enumerate().all(|(i, x)| {
            e[i + 1..].iter().all(|y| {
                let c: Morphism = compose(x, y).iter().zip(compose(y, x)).map(|(p, q)| p.sub(&q)).collect();
                in_radical(&c)
            })
        });
        if commutative {
            for x in &candidates {
                let q = squarefree_part(&min_poly(rf, x));
                if q.degree() == Some(quotient_dim)
                    && is_irreducible(&q, &budget.irreducibility).ok() == Some(Irreducibility::Irreducible)
                {
                    return Ok(Indecomposable { method: "semisimple quotient is a field" });
                }
            }
        }
    }
    Ok(Undecided)
}
