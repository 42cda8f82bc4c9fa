//! The quivers with relations governing blocks with a break of order 1 and 2,
//! their representations and the lists of indecomposables.
//!
//! `Q1`: vertices 1, 2; `a: 1 -> 2`, `b: 2 -> 1`; `ab = ba = 0`.
//!
//! `Q2`: vertices `Z/4`; `a_l: l -> l+1`, `b_l: l+1 -> l`; `a_l b_l = b_l a_l = 0`
//! and `a_{l+1} a_l = b_{l+2} b_{l+3}` (both paths `l -> l+2`).

use std::collections::BTreeMap;

use serde_json::{json, Map, Value as Json};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::json::{field_to_json, poly_to_json};
use crate::field::{is_irreducible, Field, Irreducibility, Poly};
use crate::linalg::Matrix;
use crate::orbit::ResidueField;
use crate::weightmod::endo::{self, Diagram};
use crate::weightmod::json::{matrix_from_json, matrix_to_json};
use crate::weightmod::SemiMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quiver {
    Q1,
    Q2,
}

pub enum Relation {
    /// Arrows in order of application.
    Zero(Vec<&'static str>),
    Commute(Vec<&'static str>, Vec<&'static str>),
}

const Q2_A: [&str; 4] = ["a0", "a1", "a2", "a3"];
const Q2_B: [&str; 4] = ["b0", "b1", "b2", "b3"];

impl Quiver {
    pub fn vertices(self) -> usize {
        match self {
            Quiver::Q1 => 2,
            Quiver::Q2 => 4,
        }
    }

    /// Display labels: `1, 2` for `Q1`, `0..3` for `Q2`.
    pub fn label(self, v: usize) -> usize {
        match self {
            Quiver::Q1 => v + 1,
            Quiver::Q2 => v,
        }
    }

    /// `(name, source, target)`.
    pub fn arrows(self) -> Vec<(&'static str, usize, usize)> {
        match self {
            Quiver::Q1 => vec![("a", 0, 1), ("b", 1, 0)],
            Quiver::Q2 => {
                let mut v: Vec<_> = (0..4).map(|l| (Q2_A[l], l, (l + 1) % 4)).collect();
                v.extend((0..4).map(|l| (Q2_B[l], (l + 1) % 4, l)));
                v
            }
        }
    }

    pub fn relations(self) -> Vec<Relation> {
        match self {
            Quiver::Q1 => vec![Relation::Zero(vec!["b", "a"]), Relation::Zero(vec!["a", "b"])],
            Quiver::Q2 => {
                let mut r = Vec::new();
                for l in 0..4 {
                    r.push(Relation::Zero(vec![Q2_B[l], Q2_A[l]]));
                    r.push(Relation::Zero(vec![Q2_A[l], Q2_B[l]]));
                    r.push(Relation::Commute(vec![Q2_A[l], Q2_A[(l + 1) % 4]], vec![Q2_B[(l + 3) % 4], Q2_B[(l + 2) % 4]]));
                }
                r
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Quiver::Q1 => "q1",
            Quiver::Q2 => "q2",
        }
    }

    pub fn parse(s: &str) -> Result<Quiver> {
        match s.to_ascii_lowercase().as_str() {
            "q1" => Ok(Quiver::Q1),
            "q2" => Ok(Quiver::Q2),
            _ => Err(Error::InvalidInput(format!("unknown quiver {:?}", s))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    pub quiver: Quiver,
    pub field: Field,
    pub dims: Vec<usize>,
    pub arrows: BTreeMap<&'static str, Matrix>,
    pub name: String,
}

impl QuiverRep {
    pub fn zero(quiver: Quiver, field: &Field, dims: &[usize], name: impl Into<String>) -> QuiverRep {
        let arrows = quiver
            .arrows()
            .into_iter()
            .map(|(a, s, t)| (a, Matrix::zeros(field, dims[t], dims[s])))
            .collect();
        QuiverRep { quiver, field: field.clone(), dims: dims.to_vec(), arrows, name: name.into() }
    }

    pub fn arrow(&self, name: &str) -> &Matrix {
        &self.arrows[name]
    }

    pub fn set(&mut self, name: &'static str, m: Matrix) {
        self.arrows.insert(name, m);
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn path(&self, p: &[&str]) -> Matrix {
        let mut acc: Option<Matrix> = None;
        for a in p {
            let m = self.arrow(a);
            acc = Some(match acc {
                None => m.clone(),
                Some(x) => m.mul(&x),
            });
        }
        acc.expect("nonempty path")
    }

    /// Shapes, then every relation.
    pub fn check_relations(&self) -> Result<()> {
        if self.dims.len() != self.quiver.vertices() {
            return Err(Error::InvalidInput("wrong number of vertices".into()));
        }
        for (a, s, t) in self.quiver.arrows() {
            let m = self.arrows.get(a).ok_or_else(|| Error::InvalidInput(format!("missing arrow {}", a)))?;
            if m.shape() != (self.dims[t], self.dims[s]) {
                return Err(Error::InvalidInput(format!("arrow {} has the wrong shape", a)));
            }
            if m.field() != &self.field {
                return Err(Error::FieldMismatch);
            }
        }
        for r in self.quiver.relations() {
            match r {
                Relation::Zero(p) => {
                    if !self.path(&p).is_zero() {
                        return Err(Error::RelationViolation(format!("{} != 0", p.join("."))));
                    }
                }
                Relation::Commute(p, q) => {
                    if self.path(&p) != self.path(&q) {
                        return Err(Error::RelationViolation(format!("{} != {}", p.join("."), q.join("."))));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn diagram(&self) -> Diagram {
        let arrows = self
            .quiver
            .arrows()
            .into_iter()
            .map(|(a, s, t)| (s, t, SemiMap::linear(self.arrows[a].clone())))
            .collect();
        Diagram { rf: ResidueField::trivial(&self.field), dims: self.dims.clone(), arrows }
    }

    pub fn direct_sum(&self, o: &QuiverRep) -> QuiverRep {
        let arrows = self
            .arrows
            .iter()
            .map(|(a, m)| (*a, Matrix::block_diag(&self.field, &[m, &o.arrows[a]])))
            .collect();
        QuiverRep {
            quiver: self.quiver,
            field: self.field.clone(),
            dims: self.dims.iter().zip(&o.dims).map(|(x, y)| x + y).collect(),
            arrows,
            name: format!("{} + {}", self.name, o.name),
        }
    }

    pub fn to_json(&self) -> Json {
        let arrows: Map<String, Json> = self.arrows.iter().map(|(a, m)| (a.to_string(), matrix_to_json(m))).collect();
        json!({
            "schema": crate::SCHEMA,
            "quiver": self.quiver.name(),
            "name": self.name,
            "field": field_to_json(&self.field),
            "dims": self.dims,
            "arrows": arrows,
        })
    }

    pub fn from_json(j: &Json, budget: &Budget) -> Result<QuiverRep> {
        let bad = |m: &str| Error::InvalidInput(m.to_string());
        let quiver = Quiver::parse(j.get("quiver").and_then(Json::as_str).ok_or_else(|| bad("rep needs \"quiver\""))?)?;
        let field = crate::field::json::field_from_json(
            j.get("field").ok_or_else(|| bad("rep needs \"field\""))?,
            &budget.irreducibility,
        )?;
        let dims: Vec<usize> = j
            .get("dims")
            .and_then(Json::as_array)
            .ok_or_else(|| bad("rep needs \"dims\""))?
            .iter()
            .map(|d| d.as_u64().map(|x| x as usize).ok_or_else(|| bad("dims are natural numbers")))
            .collect::<Result<_>>()?;
        if dims.len() != quiver.vertices() {
            return Err(bad("wrong number of dims for the quiver"));
        }
        let given = j.get("arrows").and_then(Json::as_object);
        let mut rep = QuiverRep::zero(quiver, &field, &dims, j.get("name").and_then(Json::as_str).unwrap_or("rep"));
        for (a, s, t) in quiver.arrows() {
            if let Some(m) = given.and_then(|o| o.get(a)) {
                rep.set(a, matrix_from_json(&field, m, dims[t], dims[s])?);
            }
        }
        if let Some(o) = given {
            if let Some(k) = o.keys().find(|k| !quiver.arrows().iter().any(|(a, _, _)| a == k)) {
                return Err(Error::InvalidInput(format!("unknown arrow {:?}", k)));
            }
        }
        rep.check_relations()?;
        Ok(rep)
    }
}

fn one_by_one(f: &Field, x: bool) -> Matrix {
    Matrix::scalar(f, 1, &if x { f.one() } else { f.zero() })
}

pub fn simple(quiver: Quiver, field: &Field, v: usize) -> QuiverRep {
    let mut dims = vec![0; quiver.vertices()];
    dims[v] = 1;
    QuiverRep::zero(quiver, field, &dims, format!("S{}", quiver.label(v)))
}

/// `S1, S2, Ma, Mb`.
pub fn q1_indecomposables(field: &Field) -> Vec<QuiverRep> {
    let mut ma = QuiverRep::zero(Quiver::Q1, field, &[1, 1], "Ma");
    ma.set("a", one_by_one(field, true));
    let mut mb = QuiverRep::zero(Quiver::Q1, field, &[1, 1], "Mb");
    mb.set("b", one_by_one(field, true));
    vec![simple(Quiver::Q1, field, 0), simple(Quiver::Q1, field, 1), ma, mb]
}

/// Places a chain of one-dimensional spaces: `links[k]` joins basis vector
/// `k` (at vertex `verts[k]`) to `k + 1` by the named arrow.
fn from_links(field: &Field, verts: &[usize], links: &[&'static str], name: String) -> QuiverRep {
    let mut dims = vec![0; 4];
    let mut slot = Vec::with_capacity(verts.len());
    for &v in verts {
        slot.push(dims[v]);
        dims[v] += 1;
    }
    let mut rep = QuiverRep::zero(Quiver::Q2, field, &dims, name);
    for (k, &a) in links.iter().enumerate() {
        let (src, tgt) = if a.starts_with('a') { (k, k + 1) } else { (k + 1, k) };
        let mut m = rep.arrow(a).clone();
        m.set(slot[tgt], slot[src], field.one());
        rep.set(a, m);
    }
    rep
}

/// `M_i`: one vector per vertex, two `a`-steps up from `i` and two `b`-steps down.
pub fn m_i(field: &Field, i: usize) -> QuiverRep {
    let mut rep = QuiverRep::zero(Quiver::Q2, field, &[1, 1, 1, 1], format!("M{}", i));
    for a in [Q2_A[i], Q2_A[(i + 1) % 4], Q2_B[(i + 3) % 4], Q2_B[(i + 2) % 4]] {
        rep.set(a, one_by_one(field, true));
    }
    rep
}

/// `M_{n,j,eps}`: `e_k` at vertex `j + k - 1`; the link from a vertex of
/// parity `eps` goes forward by `a`, the other links backward by `b`.
pub fn string(field: &Field, n: usize, j: usize, eps: usize) -> QuiverRep {
    let verts: Vec<usize> = (0..n).map(|k| (j + k) % 4).collect();
    let links: Vec<&'static str> = (0..n.saturating_sub(1))
        .map(|k| {
            let l = verts[k];
            if l % 2 == eps {
                Q2_A[l]
            } else {
                Q2_B[l]
            }
        })
        .collect();
    from_links(field, &verts, &links, format!("M({},{},{})", n, j, eps))
}

/// `M_{f,1}` (`s = 1`) or `M_{f,2}` (`s = 2`).
pub fn band(f: &Poly, s: usize) -> QuiverRep {
    let field = f.field();
    let e = f.degree().expect("nonzero polynomial");
    let name = format!("M(f={},{})", poly_label(f), s);
    let mut rep = QuiverRep::zero(Quiver::Q2, field, &[e; 4], name);
    let id = Matrix::identity(field, e);
    let (ids, comp): (&[&'static str], &'static str) =
        if s == 1 { (&["a0", "a2", "b1"], "b3") } else { (&["b0", "b2", "a1"], "a3") };
    for a in ids {
        rep.set(a, id.clone());
    }
    rep.set(comp, Matrix::companion(f));
    rep
}

fn poly_label(f: &Poly) -> String {
    poly_to_json(f).to_string()
}

/// `Ind_0 F[x]`: powers of monic irreducibles other than `x`, of degree at
/// most `max_deg`. Needs a finite field.
pub fn ind0_polys(field: &Field, max_deg: usize, budget: &Budget) -> Result<Vec<Poly>> {
    let q = field
        .order()
        .ok_or_else(|| Error::Unsupported("Ind_0 is infinite over an infinite field; give the polynomials".into()))?;
    let elems = field.elements().expect("finite");
    let mut irr = Vec::new();
    for d in 1..=max_deg {
        let count = (q as f64).powi(d as i32);
        if count > budget.max_enum as f64 {
            return Err(Error::EnumerationBudgetExceeded(format!("{} monic polynomials of degree {}", count, d)));
        }
        let mut idx = vec![0usize; d];
        loop {
            let mut c: Vec<_> = idx.iter().map(|&i| elems[i].clone()).collect();
            c.push(field.one());
            let f = Poly::new(field, c);
            let is_x = d == 1 && field.is_zero(&f.coeff(0));
            if !is_x && is_irreducible(&f, &budget.irreducibility)? == Irreducibility::Irreducible {
                irr.push(f);
            }
            let mut p = 0;
            while p < d {
                idx[p] += 1;
                if idx[p] < elems.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == d {
                break;
            }
        }
    }
    let mut out = Vec::new();
    for g in irr {
        let dg = g.degree().expect("nonzero");
        let mut f = g.clone();
        let mut d = dg;
        while d <= max_deg {
            out.push(f.clone());
            f = f.mul(&g);
            d += dg;
        }
    }
    out.sort_by_key(|f| f.degree());
    Ok(out)
}

/// `S_i`, `M_i`, strings of length `2..=max_string` and the bands for `polys`.
pub fn q2_indecomposables(field: &Field, max_string: usize, polys: &[Poly]) -> Vec<QuiverRep> {
    let mut out: Vec<QuiverRep> = (0..4).map(|v| simple(Quiver::Q2, field, v)).collect();
    out.extend((0..4).map(|i| m_i(field, i)));
    for n in 2..=max_string {
        for j in 0..4 {
            for eps in 0..2 {
                out.push(string(field, n, j, eps));
            }
        }
    }
    for f in polys {
        out.push(band(f, 1));
        out.push(band(f, 2));
    }
    out
}

/// Dimension vector, arrow ranks and Hom dimensions against a reference list.
pub fn fingerprint(rep: &QuiverRep, against: &[QuiverRep]) -> Result<(Vec<usize>, Vec<usize>, Vec<(usize, usize)>)> {
    let ranks = rep.arrows.values().map(Matrix::rank).collect();
    let d = rep.diagram();
    let homs = against
        .iter()
        .map(|o| {
            let e = o.diagram();
            Ok((endo::hom_dim(&d, &e)?, endo::hom_dim(&e, &d)?))
        })
        .collect::<Result<_>>()?;
    Ok((rep.dims.clone(), ranks, homs))
}

/// Exhaustive search for an isomorphism among the homomorphisms.
pub fn isomorphic(x: &QuiverRep, y: &QuiverRep, budget: &Budget) -> Result<bool> {
    if x.dims != y.dims {
        return Ok(false);
    }
    let basis = endo::hom_basis(&x.diagram(), &y.diagram())?;
    if basis.len() == 0 {
        return Ok(x.total_dim() == 0);
    }
    let f = &x.field;
    let q = f
        .order()
        .ok_or_else(|| Error::Unsupported("exhaustive isomorphism search needs a finite field".into()))?;
    if (q as f64).powi(basis.len() as i32) > budget.max_enum as f64 {
        return Err(Error::EnumerationBudgetExceeded(format!("Hom space of dimension {}", basis.len())));
    }
    let elems = f.elements().expect("finite");
    let mut idx = vec![0usize; basis.len()];
    loop {
        let mut acc: Vec<Matrix> = x.dims.iter().zip(&y.dims).map(|(&c, &r)| Matrix::zeros(f, r, c)).collect();
        for (b, &i) in basis.iter().zip(&idx) {
            if i == 0 {
                continue;
            }
            acc = acc.iter().zip(b).map(|(s, m)| s.add(&m.scale(&elems[i]))).collect();
        }
        if acc.iter().all(Matrix::is_invertible) {
            return Ok(true);
        }
        let mut p = 0;
        while p < idx.len() {
            idx[p] += 1;
            if idx[p] < elems.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == idx.len() {
            return Ok(false);
        }
    }
}
