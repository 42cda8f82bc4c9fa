use std::collections::BTreeMap;

use super::{ShiftVector, SepMaxIdeal};
use crate::error::{Error, Result};
use crate::field::{is_irreducible, Field, Irreducibility, IrreducibilityBudget, Value};

/// `D/m` for a separable ideal, built as a tower over `K` by adjoining a root
/// of each nonlinear generator in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    base: Field,
    field: Field,
    /// Index adjoined at each level, with the field reached after adjoining it.
    levels: Vec<(usize, Field)>,
    tbar: BTreeMap<usize, Value>,
    default_tbar: Option<Value>,
    certified: bool,
}

impl ResidueField {
    pub fn build(m: &SepMaxIdeal, budget: &IrreducibilityBudget) -> Result<ResidueField> {
        let k = m.field().clone();
        let mut cur = k.clone();
        let mut levels = Vec::new();
        let mut roots: Vec<(usize, Field, Value)> = Vec::new();
        let mut certified = true;
        for i in m.explicit_indices() {
            let f = m.generator(i)?.embed_into(&cur)?;
            if f.degree() == Some(1) {
                roots.push((i, cur.clone(), cur.neg(&f.coeff(0))));
                continue;
            }
            let ext = match is_irreducible(&f, budget)? {
                Irreducibility::Irreducible => Field::extension(&cur, &f, true)?,
                Irreducibility::Reducible => {
                    return Err(Error::NotMaximal(format!("generator at {} splits over the residue tower", i)))
                }
                Irreducibility::Unknown if m.asserts_irreducible() => {
                    certified = false;
                    Field::extension(&cur, &f, false)?
                }
                Irreducibility::Unknown => {
                    return Err(Error::UncertifiedIrreducibility(format!(
                        "generator at {} ({}) over {}",
                        i,
                        m.generator(i)?,
                        cur
                    )))
                }
            };
            cur = ext;
            roots.push((i, cur.clone(), cur.generator().expect("extension")));
            levels.push((i, cur.clone()));
        }
        let default_tbar = match m.default_generator() {
            None => None,
            Some(d) if d.degree() == Some(1) => Some(cur.embed(&k, &k.neg(&d.coeff(0)))?),
            Some(_) => {
                return Err(Error::Unsupported("default generator must be linear".into()));
            }
        };
        let tbar = roots
            .into_iter()
            .map(|(i, f, v)| Ok((i, cur.embed(&f, &v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(ResidueField { base: k, field: cur, levels, tbar, default_tbar, certified })
    }

    /// A field viewed as its own residue field: no tower, no twists.
    pub fn trivial(field: &Field) -> ResidueField {
        ResidueField {
            base: field.clone(),
            field: field.clone(),
            levels: Vec::new(),
            tbar: BTreeMap::new(),
            default_tbar: None,
            certified: field.is_certified(),
        }
    }

    /// `K`.
    pub fn base(&self) -> &Field {
        &self.base
    }

    /// `D/m`.
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// `[D/m : K]`.
    pub fn degree(&self) -> usize {
        self.field.degree_over(&self.base).expect("tower over K")
    }

    /// Residue of `t_i`.
    pub fn tbar(&self, i: usize) -> Value {
        self.tbar
            .get(&i)
            .or(self.default_tbar.as_ref())
            .cloned()
            .unwrap_or_else(|| panic!("no residue for t_{}", i))
    }

    /// Embeds an element of `K`.
    pub fn from_base(&self, v: &Value) -> Value {
        self.field.embed(&self.base, v).expect("K lies in the tower")
    }

    pub fn to_k_coords(&self, v: &Value) -> Vec<Value> {
        self.field.coords_over(&self.base, v)
    }

    pub fn from_k_coords(&self, c: &[Value]) -> Value {
        self.field.from_coords_over(&self.base, c)
    }

    /// The automorphism `sigma^e`, i.e. `tbar_k -> tbar_k - e_k`. Only defined
    /// for `e` supported on indices whose generator is shift-invariant.
    pub fn apply_shift(&self, v: &Value, e: &ShiftVector) -> Value {
        if e.is_zero() {
            return v.clone();
        }
        self.auto_at(self.levels.len(), v, e)
    }

    fn auto_at(&self, level: usize, v: &Value, e: &ShiftVector) -> Value {
        if level == 0 {
            return v.clone();
        }
        let (idx, field) = &self.levels[level - 1];
        let below = if level == 1 { &self.base } else { &self.levels[level - 2].1 };
        let Value::E(c) = v else { unreachable!("extension value") };
        let ek = e.get(*idx);
        let x = field.generator().expect("extension");
        let image = field.sub(&x, &field.from_i64(ek));
        let mut acc = field.zero();
        let mut power = field.one();
        for cj in c {
            let cj = self.auto_at(level - 1, cj, e);
            let cj = field.embed(below, &cj).expect("tower");
            acc = field.add(&acc, &field.mul(&cj, &power));
            power = field.mul(&power, &image);
        }
        acc
    }
}
