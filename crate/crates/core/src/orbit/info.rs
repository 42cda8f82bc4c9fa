use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use serde_json::{json, Value as Json};

use super::{Arity, ResidueField, SepMaxIdeal, ShiftVector};
use crate::error::{Error, Result};
use crate::field::json::field_to_json;
use crate::field::{rational_as_integer, Field, IrreducibilityBudget, Poly, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    Linear,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tau {
    /// `sigma_i` fixes the ideal, so scalars are twisted when crossing index `i`.
    Sigma,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub input: SepMaxIdeal,
    /// Normalized base point: the maximal break when degenerate.
    pub base: SepMaxIdeal,
    /// `base = sigma^offset(input)`.
    pub offset: ShiftVector,
    pub kind: OrbitKind,
    pub break_set: BTreeSet<usize>,
    pub degenerate: bool,
    /// Cyclic orbits only: `r_i` for every index.
    pub periods: BTreeMap<usize, u64>,
    /// Cyclic orbits only.
    pub tau: BTreeMap<usize, Tau>,
    /// Skeleton objects, relative to `base`, ascending.
    pub skeleton: Vec<ShiftVector>,
    pub residue: ResidueField,
    pub certified: bool,
}

/// Orbit invariants of `m`.
pub fn orbit_info(m: &SepMaxIdeal, budget: &IrreducibilityBudget) -> Result<OrbitInfo> {
    let k = m.field();
    let p = k.characteristic();
    let mut offset = ShiftVector::zero();
    let mut break_set = BTreeSet::new();
    let mut periods = BTreeMap::new();
    let mut tau = BTreeMap::new();
    let kind;
    if p == 0 {
        kind = OrbitKind::Linear;
        if let Some(d) = m.default_generator() {
            if d.degree() != Some(1) {
                return Err(Error::Unsupported("default generator must be linear".into()));
            }
            if integer_root(d).is_some() {
                return Err(Error::InvalidInput(
                    "default generator is an integer shift of t: infinitely many breaks".into(),
                ));
            }
        }
        for i in m.explicit_indices() {
            if let Some(c) = integer_root(&m.generator(i)?) {
                break_set.insert(i);
                offset.set(i, -c);
            }
        }
    } else {
        kind = OrbitKind::Cyclic;
        let n = match m.arity() {
            Arity::Finite(n) => n,
            Arity::Unbounded => return Err(Error::InfiniteCharPOrbit),
        };
        let t = Poly::t(k);
        for i in 1..=n {
            let f = m.generator(i)?;
            let r = if f.shift(1) == f { 1 } else { p };
            periods.insert(i, r);
            tau.insert(i, if r == 1 { Tau::Sigma } else { Tau::One });
            if f.degree() == Some(1) {
                if let Some(s) = (0..p).find(|&s| f.shift(s as i64) == t) {
                    break_set.insert(i);
                    offset.set(i, ((p - s) % p) as i64);
                }
            }
        }
    }
    let base = m.sigma_apply(&offset)?;
    let residue = ResidueField::build(&base, budget)?;
    let degenerate = !break_set.is_empty();
    let skeleton = if kind == OrbitKind::Linear && degenerate {
        let idx: Vec<usize> = break_set.iter().copied().collect();
        let mut s: Vec<ShiftVector> = (0..1u64 << idx.len())
            .map(|mask| {
                let pairs: Vec<(usize, i64)> =
                    idx.iter().enumerate().map(|(b, &i)| (i, ((mask >> b) & 1) as i64)).collect();
                ShiftVector::from_pairs(&pairs)
            })
            .collect();
        s.sort();
        s
    } else {
        vec![ShiftVector::zero()]
    };
    let certified = residue.certified() && k.is_certified();
    Ok(OrbitInfo {
        input: m.clone(),
        base,
        offset,
        kind,
        break_set,
        degenerate,
        periods,
        tau,
        skeleton,
        residue,
        certified,
    })
}

/// `c` when `f = t - c` with `c` an integer of the prime field (characteristic 0).
fn integer_root(f: &Poly) -> Option<i64> {
    if f.degree() != Some(1) {
        return None;
    }
    let k = f.field();
    let c = k.neg(&f.coeff(0));
    match k.prime_part(&c)? {
        Value::Q(q) => rational_as_integer(&q)?.to_i64(),
        _ => None,
    }
}

impl OrbitInfo {
    pub fn field(&self) -> &Field {
        self.residue.field()
    }

    pub fn base_field(&self) -> &Field {
        self.residue.base()
    }

    pub fn characteristic(&self) -> u64 {
        self.base_field().characteristic()
    }

    pub fn is_linear(&self) -> bool {
        self.kind == OrbitKind::Linear
    }

    pub fn n(&self) -> Option<usize> {
        self.base.n()
    }

    /// The indices that carry structure: `1..=n`, or the explicit ones when
    /// the arity is unbounded.
    pub fn indices(&self) -> Vec<usize> {
        match self.base.n() {
            Some(n) => (1..=n).collect(),
            None => {
                let mut v: BTreeSet<usize> = self.base.explicit_indices().into_iter().collect();
                v.extend(self.break_set.iter().copied());
                v.into_iter().collect()
            }
        }
    }

    pub fn order(&self) -> usize {
        self.break_set.len()
    }

    pub fn period(&self, i: usize) -> Option<u64> {
        self.periods.get(&i).copied()
    }

    /// Twist carried by `x_i` (the identity twist unless `sigma_i` fixes the ideal).
    pub fn twist(&self, i: usize) -> ShiftVector {
        if self.tau.get(&i) == Some(&Tau::Sigma) {
            ShiftVector::unit(i)
        } else {
            ShiftVector::zero()
        }
    }

    pub fn tbar(&self, i: usize) -> Value {
        self.residue.tbar(i)
    }

    /// Scalar by which `t_i` acts on the weight space at `gamma`.
    pub fn t_scalar(&self, gamma: &ShiftVector, i: usize) -> Value {
        let f = self.field();
        f.add(&self.tbar(i), &f.from_i64(gamma.get(i)))
    }

    /// Generator at index `i` of `sigma^gamma(base)`, over `K`.
    pub fn weight_generator(&self, gamma: &ShiftVector, i: usize) -> Result<Poly> {
        Ok(self.base.generator(i)?.shift(-gamma.get(i)))
    }

    /// Reduces a cyclic weight into the representative box `0 <= gamma_i < r_i`.
    pub fn normalize(&self, gamma: &ShiftVector) -> ShiftVector {
        if self.is_linear() {
            return gamma.clone();
        }
        let mut out = ShiftVector::zero();
        for (i, x) in gamma.iter() {
            let r = self.period(i).unwrap_or(1) as i64;
            out.set(i, x.rem_euclid(r));
        }
        out
    }

    /// All points of a cyclic orbit, ascending.
    pub fn orbit_points(&self) -> Result<Vec<ShiftVector>> {
        if self.is_linear() {
            return Err(Error::InfiniteDimension("linear orbits are infinite".into()));
        }
        let mut pts = vec![ShiftVector::zero()];
        for (&i, &r) in &self.periods {
            pts = pts.iter().flat_map(|g| (0..r as i64).map(move |s| g.with(i, s))).collect();
        }
        pts.sort();
        Ok(pts)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "schema": crate::SCHEMA,
            "kind": match self.kind { OrbitKind::Linear => "linear", OrbitKind::Cyclic => "cyclic" },
            "degenerate": self.degenerate,
            "break_set": self.break_set.iter().collect::<Vec<_>>(),
            "order": self.break_set.len(),
            "base": self.base.to_json(),
            "offset": self.offset.to_json(),
            "periods": self.periods.iter().map(|(i, r)| (i.to_string(), json!(r))).collect::<serde_json::Map<_, _>>(),
            "tau": self.tau.iter().map(|(i, t)| (i.to_string(), json!(match t { Tau::Sigma => "sigma", Tau::One => "one" }))).collect::<serde_json::Map<_, _>>(),
            "skeleton": self.skeleton.iter().map(ShiftVector::to_json).collect::<Vec<_>>(),
            "residue_field": field_to_json(self.field()),
            "residue_degree": self.residue.degree(),
            "certified": self.certified,
        })
    }
}

/// Skeleton object equivalent to `gamma`: `delta_i = 1` exactly when `i` breaks
/// and `gamma_i >= 1`.
pub fn canonical_skeleton_rep(info: &OrbitInfo, gamma: &ShiftVector) -> ShiftVector {
    if !(info.is_linear() && info.degenerate) {
        return ShiftVector::zero();
    }
    let pairs: Vec<(usize, i64)> =
        info.break_set.iter().map(|&i| (i, if gamma.get(i) >= 1 { 1 } else { 0 })).collect();
    ShiftVector::from_pairs(&pairs)
}

/// The skeleton object whose region contains `gamma`: the unique `delta` with
/// `gamma_i - delta_i = (-1)^(delta_i + 1) k`, `k >= 0`, on every break index.
pub fn region_of(info: &OrbitInfo, gamma: &ShiftVector) -> ShiftVector {
    if !(info.is_linear() && info.degenerate) {
        return ShiftVector::zero();
    }
    let hits: Vec<&ShiftVector> = info
        .skeleton
        .iter()
        .filter(|delta| {
            info.break_set.iter().all(|&i| {
                let d = delta.get(i);
                let sign = if d == 1 { 1 } else { -1 };
                (gamma.get(i) - d) * sign >= 0
            })
        })
        .collect();
    assert_eq!(hits.len(), 1, "regions partition the orbit");
    hits[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q() -> Field {
        Field::rationals()
    }

    fn lin(k: &Field, c: Value) -> Poly {
        Poly::linear(k, &c)
    }

    #[test]
    fn one_break_and_half() {
        let k = q();
        let half = Value::Q(BigRational::new(1.into(), 2.into()));
        let m = SepMaxIdeal::finite(&k, vec![Poly::t(&k), lin(&k, half)]).unwrap();
        let info = orbit_info(&m, &IrreducibilityBudget::default()).unwrap();
        assert_eq!(info.break_set, BTreeSet::from([1]));
        assert_eq!(info.skeleton, vec![ShiftVector::zero(), ShiftVector::unit(1)]);
        assert!(info.degenerate && info.is_linear());
    }

    #[test]
    fn normalizes_to_maximal_break() {
        let k = q();
        let m = SepMaxIdeal::finite(&k, vec![Poly::from_i64(&k, &[-3, 1]), Poly::from_i64(&k, &[5, 1])]).unwrap();
        let info = orbit_info(&m, &IrreducibilityBudget::default()).unwrap();
        assert_eq!(info.offset, ShiftVector::dense(&[-3, 5]));
        assert_eq!(info.base.generator(1).unwrap(), Poly::t(&k));
        assert_eq!(info.base.generator(2).unwrap(), Poly::t(&k));
        assert_eq!(info.skeleton.len(), 4);
    }

    #[test]
    fn gf4_orbit_is_a_point() {
        let f2 = Field::prime(2).unwrap();
        let m = SepMaxIdeal::finite(&f2, vec![Poly::from_i64(&f2, &[1, 1, 1])]).unwrap();
        let info = orbit_info(&m, &IrreducibilityBudget::default()).unwrap();
        assert!(!info.degenerate);
        assert_eq!(info.kind, OrbitKind::Cyclic);
        assert_eq!(info.periods[&1], 1);
        assert_eq!(info.tau[&1], Tau::Sigma);
        assert_eq!(info.residue.degree(), 2);
        // sigma acts on D/m as the Frobenius: tbar -> tbar - 1 = tbar^2.
        let t = info.tbar(1);
        let img = info.residue.apply_shift(&t, &ShiftVector::unit(1));
        assert_eq!(img, info.field().mul(&t, &t));
    }

    #[test]
    fn char_p_break_offset() {
        let f3 = Field::prime(3).unwrap();
        let m = SepMaxIdeal::finite(&f3, vec![Poly::from_i64(&f3, &[-1, 1])]).unwrap();
        let info = orbit_info(&m, &IrreducibilityBudget::default()).unwrap();
        assert!(info.degenerate);
        assert_eq!(info.periods[&1], 3);
        assert_eq!(info.base.generator(1).unwrap(), Poly::t(&f3));
        assert_eq!(info.orbit_points().unwrap().len(), 3);
    }

    #[test]
    fn unbounded_char_p_rejected() {
        let f2 = Field::prime(2).unwrap();
        let m = SepMaxIdeal::new(&f2, Arity::Unbounded, BTreeMap::new(), Some(Poly::from_i64(&f2, &[1, 1, 1])))
            .unwrap();
        assert_eq!(orbit_info(&m, &IrreducibilityBudget::default()), Err(Error::InfiniteCharPOrbit));
    }

    #[test]
    fn regions_on_small_examples() {
        let k = q();
        let m = SepMaxIdeal::finite(&k, vec![Poly::t(&k)]).unwrap();
        let info = orbit_info(&m, &IrreducibilityBudget::default()).unwrap();
        assert_eq!(region_of(&info, &ShiftVector::zero()), ShiftVector::zero());
        assert_eq!(region_of(&info, &ShiftVector::unit(1)), ShiftVector::unit(1));
        let m3 = SepMaxIdeal::finite(&k, vec![Poly::t(&k), Poly::t(&k), Poly::from_i64(&k, &[1, 1, 0, 1])])
            .unwrap();
        let info3 = orbit_info(&m3, &IrreducibilityBudget::default()).unwrap();
        let g = ShiftVector::dense(&[3, -2, 5]);
        assert_eq!(canonical_skeleton_rep(&info3, &g), ShiftVector::unit(1));
    }
}
