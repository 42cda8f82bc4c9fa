//! Brute-force enumeration of representations over a finite field, up to
//! isomorphism, filtered to the indecomposable ones.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, Value};
use crate::linalg::Matrix;
use crate::weightmod::endo::{indecomposability, Indecomposability};

use super::quiver::{Quiver, QuiverRep};

#[derive(Clone, Debug)]
pub struct BruteForceResult {
    /// Arrow tuples satisfying the relations.
    pub tuples: u64,
    /// Isomorphism classes among them.
    pub classes: usize,
    /// Lex-least representative of each indecomposable class.
    pub indecomposables: Vec<QuiverRep>,
}

fn pow_checked(q: u64, e: usize, budget: &Budget, what: &str) -> Result<u64> {
    let mut n: u64 = 1;
    for _ in 0..e {
        n = n.checked_mul(q).filter(|&x| x <= budget.max_enum).ok_or_else(|| {
            Error::EnumerationBudgetExceeded(format!("{}: {}^{} exceeds {}", what, q, e, budget.max_enum))
        })?;
    }
    Ok(n)
}

fn matrix_from_index(f: &Field, elems: &[Value], rows: usize, cols: usize, mut idx: u64) -> Matrix {
    let q = elems.len() as u64;
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        data.push(elems[(idx % q) as usize].clone());
        idx /= q;
    }
    Matrix::new(f, rows, cols, data)
}

/// `GL(d, F)` with inverses.
pub fn general_linear(f: &Field, d: usize, budget: &Budget) -> Result<Vec<(Matrix, Matrix)>> {
    let q = f.order().ok_or_else(|| Error::Unsupported("needs a finite field".into()))? as u64;
    let elems = f.elements().expect("finite");
    let total = pow_checked(q, d * d, budget, "matrices")?;
    let mut out = Vec::new();
    for i in 0..total {
        let m = matrix_from_index(f, &elems, d, d, i);
        if let Some(inv) = m.inverse() {
            out.push((m, inv));
        }
    }
    Ok(out)
}

struct Layout {
    arrows: Vec<(&'static str, usize, usize)>,
    entries: usize,
}

impl Layout {
    fn new(quiver: Quiver, dims: &[usize]) -> Layout {
        let arrows = quiver.arrows();
        let entries = arrows.iter().map(|&(_, s, t)| dims[s] * dims[t]).sum();
        Layout { arrows, entries }
    }

    fn decode(&self, quiver: Quiver, f: &Field, elems: &[Value], dims: &[usize], mut code: u64) -> QuiverRep {
        let q = elems.len() as u64;
        let mut rep = QuiverRep::zero(quiver, f, dims, "");
        for &(a, s, t) in &self.arrows {
            let n = (dims[s] * dims[t]) as u32;
            let block = q.pow(n);
            rep.set(a, matrix_from_index(f, elems, dims[t], dims[s], code % block));
            code /= block;
        }
        rep
    }

    fn encode(&self, f: &Field, rep: &QuiverRep) -> u64 {
        let q = f.order().expect("finite") as u64;
        let mut code = 0u64;
        let mut scale = 1u64;
        for &(a, _, _) in &self.arrows {
            let m = rep.arrow(a);
            for v in m.data() {
                code += f.index_of(v) * scale;
                scale *= q;
            }
        }
        code
    }
}

/// Enumerates every relation-satisfying representation of dimension vector
/// `dims`, sorts them into orbits of the base-change group and keeps one
/// lex-least representative per indecomposable class.
pub fn brute_force_indecomposables(quiver: Quiver, f: &Field, dims: &[usize], budget: &Budget) -> Result<BruteForceResult> {
    if dims.len() != quiver.vertices() {
        return Err(Error::InvalidInput(format!("{} needs {} dimensions", quiver.name(), quiver.vertices())));
    }
    let q = f.order().ok_or_else(|| Error::Unsupported("brute force needs a finite field".into()))? as u64;
    let elems = f.elements().expect("finite");
    let layout = Layout::new(quiver, dims);
    let total = pow_checked(q, layout.entries, budget, "arrow tuples")?;
    let groups: Vec<Vec<(Matrix, Matrix)>> =
        dims.iter().map(|&d| general_linear(f, d, budget)).collect::<Result<_>>()?;
    let order: f64 = groups.iter().map(|g| g.len() as f64).product();
    if order > budget.max_enum as f64 {
        return Err(Error::EnumerationBudgetExceeded(format!("base-change group of order {}", order)));
    }
    let mut seen = vec![false; total as usize];
    let mut tuples = 0u64;
    let mut classes = 0usize;
    let mut out = Vec::new();
    for code in 0..total {
        if seen[code as usize] {
            continue;
        }
        let rep = layout.decode(quiver, f, &elems, dims, code);
        if rep.check_relations().is_err() {
            continue;
        }
        classes += 1;
        let mut idx = vec![0usize; dims.len()];
        loop {
            let mut img = rep.clone();
            for &(a, s, t) in &layout.arrows {
                let g_t = &groups[t][idx[t]].0;
                let g_s_inv = &groups[s][idx[s]].1;
                img.set(a, g_t.mul(rep.arrow(a)).mul(g_s_inv));
            }
            let c = layout.encode(f, &img) as usize;
            if !seen[c] {
                seen[c] = true;
                tuples += 1;
            }
            let mut p = 0;
            while p < idx.len() {
                idx[p] += 1;
                if idx[p] < groups[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == idx.len() {
                break;
            }
        }
        if rep.total_dim() == 0 {
            continue;
        }
        match indecomposability(&rep.diagram(), budget)? {
            Indecomposability::Indecomposable { .. } => {
                let mut rep = rep;
                rep.name = format!("class {}", out.len() + 1);
                out.push(rep);
            }
            Indecomposability::Decomposable { .. } => {}
            Indecomposability::Undecided => {
                return Err(Error::EnumerationBudgetExceeded("endomorphism algebra too large to search".into()))
            }
        }
    }
    Ok(BruteForceResult { tuples, classes, indecomposables: out })
}

/// Every dimension vector with entries at most `max_entry` and total at most `max_total`, except zero.
pub fn dimension_vectors(quiver: Quiver, max_entry: usize, max_total: usize) -> Vec<Vec<usize>> {
    let n = quiver.vertices();
    let mut out = Vec::new();
    let mut v = vec![0usize; n];
    loop {
        let s: usize = v.iter().sum();
        if s > 0 && s <= max_total {
            out.push(v.clone());
        }
        let mut p = 0;
        while p < n {
            v[p] += 1;
            if v[p] <= max_entry {
                break;
            }
            v[p] = 0;
            p += 1;
        }
        if p == n {
            break;
        }
    }
    out
}
