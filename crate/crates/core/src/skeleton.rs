//! The skeleton algebras: `A(F, I)` for linear orbits and `B(F, I, J, tau)` for
//! cyclic ones, with normal-form morphism arithmetic and the table of the
//! functor `G` into the orbit category.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::field::json::{field_to_json, value_to_json};
use crate::field::{Field, FieldElem, Value};
use crate::orbit::{OrbitInfo, OrbitKind, ResidueField, ShiftVector, Tau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// Morphism of `A(F, I)`: a scalar times a monomial with at most one letter
/// per index. Objects are 0/1 vectors on `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkelMorphismA {
    pub source: ShiftVector,
    pub target: ShiftVector,
    pub coeff: FieldElem,
    pub letters: BTreeMap<usize, Letter>,
}

fn check_bits(o: &ShiftVector) -> Result<()> {
    if o.iter().all(|(_, x)| x == 0 || x == 1) {
        Ok(())
    } else {
        Err(Error::NotASkeletonObject(format!("{} is not a 0/1 vector", o)))
    }
}

impl SkelMorphismA {
    pub fn identity(field: &Field, alpha: &ShiftVector) -> Result<Self> {
        check_bits(alpha)?;
        Ok(SkelMorphismA {
            source: alpha.clone(),
            target: alpha.clone(),
            coeff: FieldElem::new(field, field.one()),
            letters: BTreeMap::new(),
        })
    }

    /// `a_{alpha,i}: alpha -> alpha + e_i`.
    pub fn a(field: &Field, alpha: &ShiftVector, i: usize) -> Result<Self> {
        check_bits(alpha)?;
        if alpha.get(i) != 0 {
            return Err(Error::ObjectMismatch(format!("a_{{{},{}}} needs bit {} clear", alpha, i, i)));
        }
        Ok(SkelMorphismA {
            source: alpha.clone(),
            target: alpha.with(i, 1),
            coeff: FieldElem::new(field, field.one()),
            letters: BTreeMap::from([(i, Letter::A)]),
        })
    }

    /// `b_{alpha,i}: alpha + e_i -> alpha`.
    pub fn b(field: &Field, alpha: &ShiftVector, i: usize) -> Result<Self> {
        check_bits(alpha)?;
        if alpha.get(i) != 0 {
            return Err(Error::ObjectMismatch(format!("b_{{{},{}}} needs bit {} clear", alpha, i, i)));
        }
        Ok(SkelMorphismA {
            source: alpha.with(i, 1),
            target: alpha.clone(),
            coeff: FieldElem::new(field, field.one()),
            letters: BTreeMap::from([(i, Letter::B)]),
        })
    }

    pub fn zero(field: &Field, source: &ShiftVector, target: &ShiftVector) -> Self {
        SkelMorphismA {
            source: source.clone(),
            target: target.clone(),
            coeff: FieldElem::new(field, field.zero()),
            letters: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scaled(&self, c: &Value) -> Self {
        let f = &self.coeff.field;
        let v = f.mul(&self.coeff.value, c);
        if f.is_zero(&v) {
            return SkelMorphismA::zero(f, &self.source, &self.target);
        }
        SkelMorphismA { coeff: FieldElem::new(f, v), ..self.clone() }
    }

    /// `self ∘ v`.
    pub fn compose(&self, v: &SkelMorphismA) -> Result<SkelMorphismA> {
        if self.source != v.target {
            return Err(Error::ObjectMismatch(format!(
                "cannot compose: source {} differs from target {}",
                self.source, v.target
            )));
        }
        if self.coeff.field != v.coeff.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.coeff.field;
        if self.is_zero() || v.is_zero() || self.letters.keys().any(|i| v.letters.contains_key(i)) {
            return Ok(SkelMorphismA::zero(f, &v.source, &self.target));
        }
        let mut letters = v.letters.clone();
        letters.extend(self.letters.iter().map(|(&i, &l)| (i, l)));
        Ok(SkelMorphismA {
            source: v.source.clone(),
            target: self.target.clone(),
            coeff: FieldElem::new(f, f.mul(&self.coeff.value, &v.coeff.value)),
            letters,
        })
    }
}

impl fmt::Display for SkelMorphismA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let w: Vec<String> = self
            .letters
            .iter()
            .map(|(i, l)| format!("{}{}", if *l == Letter::A { "a" } else { "b" }, i))
            .collect();
        let w = if w.is_empty() { "1".to_string() } else { w.join("·") };
        write!(f, "{}·{}: {} -> {}", self.coeff, w, self.source, self.target)
    }
}

/// Basis of `Hom(alpha, beta)` in `A(F, I)`: always a single monomial.
pub fn hom_space_a(field: &Field, alpha: &ShiftVector, beta: &ShiftVector) -> Result<Vec<SkelMorphismA>> {
    check_bits(alpha)?;
    check_bits(beta)?;
    let mut letters = BTreeMap::new();
    let idx: BTreeSet<usize> = alpha.support().chain(beta.support()).collect();
    for i in idx {
        match (alpha.get(i), beta.get(i)) {
            (0, 1) => {
                letters.insert(i, Letter::A);
            }
            (1, 0) => {
                letters.insert(i, Letter::B);
            }
            _ => {}
        }
    }
    Ok(vec![SkelMorphismA {
        source: alpha.clone(),
        target: beta.clone(),
        coeff: FieldElem::new(field, field.one()),
        letters,
    }])
}

/// All objects `{0,1}^I`, ascending.
pub fn objects_a(index_set: &BTreeSet<usize>) -> Vec<ShiftVector> {
    let idx: Vec<usize> = index_set.iter().copied().collect();
    let mut out: Vec<ShiftVector> = (0..1u64 << idx.len())
        .map(|mask| {
            let pairs: Vec<(usize, i64)> = idx.iter().enumerate().map(|(b, &i)| (i, ((mask >> b) & 1) as i64)).collect();
            ShiftVector::from_pairs(&pairs)
        })
        .collect();
    out.sort();
    out
}

/// `dim_F A(F, I)`.
pub fn total_dimension_a(field: &Field, index_set: &BTreeSet<usize>) -> Result<usize> {
    let objs = objects_a(index_set);
    let mut n = 0;
    for a in &objs {
        for b in &objs {
            n += hom_space_a(field, a, b)?.len();
        }
    }
    Ok(n)
}

// ---- B(F, I, J, tau) -------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Power {
    A(u32),
    B(u32),
    C(i64),
}

/// `coeff · word`, the word a commuting product of generator powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkelMorphismB {
    pub coeff: Value,
    pub word: BTreeMap<usize, Power>,
}

/// Context for arithmetic in `B(F, I, J, tau)`.
#[derive(Clone, Debug)]
pub struct SkeletonB {
    pub residue: ResidueField,
    pub i_set: BTreeSet<usize>,
    pub j_set: BTreeSet<usize>,
    pub tau: BTreeMap<usize, Tau>,
}

impl SkeletonB {
    pub fn from_info(info: &OrbitInfo) -> Result<SkeletonB> {
        if info.kind != OrbitKind::Cyclic {
            return Err(Error::WrongCharacteristic("B needs a cyclic orbit".into()));
        }
        let i_set = info.break_set.clone();
        let j_set = info.indices().into_iter().filter(|i| !i_set.contains(i)).collect();
        Ok(SkeletonB { residue: info.residue.clone(), i_set, j_set, tau: info.tau.clone() })
    }

    pub fn field(&self) -> &Field {
        self.residue.field()
    }

    pub fn scalar(&self, c: Value) -> SkelMorphismB {
        SkelMorphismB { coeff: c, word: BTreeMap::new() }
    }

    pub fn generator(&self, i: usize, p: Power) -> Result<SkelMorphismB> {
        let ok = match p {
            Power::A(_) | Power::B(_) => self.i_set.contains(&i),
            Power::C(_) => self.j_set.contains(&i),
        };
        if !ok {
            return Err(Error::ObjectMismatch(format!("no such generator at index {}", i)));
        }
        let mut word = BTreeMap::new();
        if !matches!(p, Power::A(0) | Power::B(0) | Power::C(0)) {
            word.insert(i, p);
        }
        Ok(SkelMorphismB { coeff: self.field().one(), word })
    }

    /// Twist exponent carried by a word.
    pub fn twist_of(&self, word: &BTreeMap<usize, Power>) -> ShiftVector {
        let mut e = ShiftVector::zero();
        for (&i, p) in word {
            if self.tau.get(&i) != Some(&Tau::Sigma) {
                continue;
            }
            let k = match *p {
                Power::A(k) => k as i64,
                Power::B(k) => -(k as i64),
                Power::C(m) => m,
            };
            e.set(i, k);
        }
        e
    }

    /// `word · lambda = (moved lambda) · word`.
    pub fn move_left(&self, word: &BTreeMap<usize, Power>, lambda: &Value) -> Value {
        self.residue.apply_shift(lambda, &self.twist_of(word))
    }

    /// `lambda · word = word · (moved lambda)`.
    pub fn move_right(&self, word: &BTreeMap<usize, Power>, lambda: &Value) -> Value {
        self.residue.apply_shift(lambda, &self.twist_of(word).neg())
    }

    /// `u · v`.
    pub fn compose(&self, u: &SkelMorphismB, v: &SkelMorphismB) -> SkelMorphismB {
        let f = self.field();
        let zero = SkelMorphismB { coeff: f.zero(), word: BTreeMap::new() };
        if f.is_zero(&u.coeff) || f.is_zero(&v.coeff) {
            return zero;
        }
        let coeff = f.mul(&u.coeff, &self.move_left(&u.word, &v.coeff));
        let mut word = u.word.clone();
        for (&i, &p) in &v.word {
            let merged = match (word.get(&i).copied(), p) {
                (None, p) => Some(p),
                (Some(Power::A(k)), Power::A(l)) => Some(Power::A(k + l)),
                (Some(Power::B(k)), Power::B(l)) => Some(Power::B(k + l)),
                (Some(Power::C(m)), Power::C(n)) => Some(Power::C(m + n)),
                (Some(Power::A(_)), Power::B(_)) | (Some(Power::B(_)), Power::A(_)) => return zero,
                _ => unreachable!("index kinds are disjoint"),
            };
            match merged {
                Some(Power::C(0)) => {
                    word.remove(&i);
                }
                Some(p) => {
                    word.insert(i, p);
                }
                None => {}
            }
        }
        SkelMorphismB { coeff, word }
    }
}

// ---- descriptor ------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    /// `X_{n,i}: n -> sigma_i(n)`, the action of `x_i`.
    X,
    /// `Y_{n,i}: sigma_i(n) -> n`, the action of `d_i`.
    Y,
}

/// One arrow of the orbit category, anchored at the weight `at` (`n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub op: Op,
    pub index: usize,
    pub at: ShiftVector,
}

impl Step {
    pub fn source(&self) -> ShiftVector {
        match self.op {
            Op::X => self.at.clone(),
            Op::Y => self.at.step(self.index, 1),
        }
    }

    pub fn target(&self) -> ShiftVector {
        match self.op {
            Op::X => self.at.step(self.index, 1),
            Op::Y => self.at.clone(),
        }
    }
}

/// Image of a skeleton generator: a composite of steps, listed in the order they apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorEntry {
    pub generator: String,
    pub word: Vec<Step>,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonAlgebra {
    A {
        field: Field,
        index_set: BTreeSet<usize>,
        objects: Vec<ShiftVector>,
        functor: Vec<FunctorEntry>,
    },
    B {
        field: Field,
        i_set: BTreeSet<usize>,
        j_set: BTreeSet<usize>,
        tau: BTreeMap<usize, Tau>,
        /// No index twists scalars, so the category is linear over `F`.
        linear: bool,
        functor: Vec<FunctorEntry>,
    },
}

pub fn build_skeleton(info: &OrbitInfo) -> Result<SkeletonAlgebra> {
    let field = info.field().clone();
    match info.kind {
        OrbitKind::Linear => {
            let objects = info.skeleton.clone();
            let mut functor = Vec::new();
            for alpha in &objects {
                functor.push(FunctorEntry { generator: format!("1_{}", alpha.key()), word: vec![], inverse: false });
            }
            for alpha in &objects {
                for &i in &info.break_set {
                    if alpha.get(i) != 0 {
                        continue;
                    }
                    functor.push(FunctorEntry {
                        generator: format!("a_{{{},{}}}", alpha.key(), i),
                        word: vec![Step { op: Op::X, index: i, at: alpha.clone() }],
                        inverse: false,
                    });
                    functor.push(FunctorEntry {
                        generator: format!("b_{{{},{}}}", alpha.key(), i),
                        word: vec![Step { op: Op::Y, index: i, at: alpha.clone() }],
                        inverse: false,
                    });
                }
            }
            Ok(SkeletonAlgebra::A { field, index_set: info.break_set.clone(), objects, functor })
        }
        OrbitKind::Cyclic => {
            let sk = SkeletonB::from_info(info)?;
            let mut functor = vec![FunctorEntry { generator: "1_omega".into(), word: vec![], inverse: false }];
            for i in info.indices() {
                let r = info.period(i).expect("cyclic period") as i64;
                let up: Vec<Step> =
                    (0..r).map(|s| Step { op: Op::X, index: i, at: ShiftVector::unit(i).with(i, s) }).collect();
                let down: Vec<Step> = (0..r)
                    .rev()
                    .map(|s| Step { op: Op::Y, index: i, at: ShiftVector::unit(i).with(i, s) })
                    .collect();
                if sk.i_set.contains(&i) {
                    functor.push(FunctorEntry { generator: format!("a_{}", i), word: up, inverse: false });
                    functor.push(FunctorEntry { generator: format!("b_{}", i), word: down, inverse: false });
                } else {
                    functor.push(FunctorEntry { generator: format!("c_{}", i), word: up.clone(), inverse: false });
                    functor.push(FunctorEntry { generator: format!("c_{}^-1", i), word: up, inverse: true });
                }
            }
            let linear = sk.tau.values().all(|t| *t == Tau::One);
            Ok(SkeletonAlgebra::B { field, i_set: sk.i_set, j_set: sk.j_set, tau: sk.tau, linear, functor })
        }
    }
}

fn steps_json(word: &[Step]) -> Json {
    Json::Array(
        word.iter()
            .map(|s| {
                json!({
                    "op": match s.op { Op::X => "X", Op::Y => "Y" },
                    "index": s.index,
                    "at": s.at.to_json(),
                })
            })
            .collect(),
    )
}

impl SkeletonAlgebra {
    pub fn to_json(&self) -> Json {
        let functor = |entries: &[FunctorEntry]| -> Json {
            Json::Array(
                entries
                    .iter()
                    .map(|e| json!({"generator": e.generator, "word": steps_json(&e.word), "inverse": e.inverse}))
                    .collect(),
            )
        };
        match self {
            SkeletonAlgebra::A { field, index_set, objects, functor: f } => json!({
                "schema": crate::SCHEMA,
                "algebra": "A",
                "field": field_to_json(field),
                "index_set": index_set.iter().collect::<Vec<_>>(),
                "objects": objects.iter().map(|o| json!({"object": o.to_json(), "image": o.to_json()})).collect::<Vec<_>>(),
                "dimension": 1usize << (2 * index_set.len()),
                "functor": functor(f),
            }),
            SkeletonAlgebra::B { field, i_set, j_set, tau, linear, functor: f } => json!({
                "schema": crate::SCHEMA,
                "algebra": "B",
                "field": field_to_json(field),
                "i_set": i_set.iter().collect::<Vec<_>>(),
                "j_set": j_set.iter().collect::<Vec<_>>(),
                "tau": tau.iter().map(|(i, t)| (i.to_string(), json!(if *t == Tau::Sigma { "sigma" } else { "one" }))).collect::<serde_json::Map<_, _>>(),
                "linear": linear,
                "objects": [{"object": "omega", "image": ShiftVector::zero().to_json()}],
                "functor": functor(f),
            }),
        }
    }
}

/// JSON for a single `B` morphism (used in reports).
pub fn morphism_b_json(sk: &SkeletonB, m: &SkelMorphismB) -> Json {
    let word: serde_json::Map<String, Json> = m
        .word
        .iter()
        .map(|(i, p)| {
            let s = match p {
                Power::A(k) => format!("a^{}", k),
                Power::B(k) => format!("b^{}", k),
                Power::C(k) => format!("c^{}", k),
            };
            (i.to_string(), json!(s))
        })
        .collect();
    json!({"coeff": value_to_json(sk.field(), &m.coeff), "word": word})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{IrreducibilityBudget, Poly};
    use crate::orbit::{orbit_info, SepMaxIdeal};

    #[test]
    fn ab_vanishes_and_squares_commute() {
        let q = Field::rationals();
        let z = ShiftVector::zero();
        let a = SkelMorphismA::a(&q, &z, 1).unwrap();
        let b = SkelMorphismA::b(&q, &z, 1).unwrap();
        assert!(b.compose(&a).unwrap().is_zero());
        assert!(a.compose(&b).unwrap().is_zero());
        let a1 = SkelMorphismA::a(&q, &z, 1).unwrap();
        let a2_at_e1 = SkelMorphismA::a(&q, &ShiftVector::unit(1), 2).unwrap();
        let a2 = SkelMorphismA::a(&q, &z, 2).unwrap();
        let a1_at_e2 = SkelMorphismA::a(&q, &ShiftVector::unit(2), 1).unwrap();
        assert_eq!(a2_at_e1.compose(&a1).unwrap(), a1_at_e2.compose(&a2).unwrap());
        assert!(matches!(a.compose(&a), Err(Error::ObjectMismatch(_))));
    }

    #[test]
    fn dimensions() {
        let q = Field::rationals();
        assert_eq!(total_dimension_a(&q, &BTreeSet::from([1])).unwrap(), 4);
        assert_eq!(total_dimension_a(&q, &BTreeSet::from([1, 2])).unwrap(), 16);
        let h = hom_space_a(&q, &ShiftVector::unit(1), &ShiftVector::unit(1)).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].letters.is_empty());
    }

    #[test]
    fn gf4_descriptor() {
        let f2 = Field::prime(2).unwrap();
        let m = SepMaxIdeal::finite(&f2, vec![Poly::from_i64(&f2, &[1, 1, 1])]).unwrap();
        let info = orbit_info(&m, &IrreducibilityBudget::default()).unwrap();
        let SkeletonAlgebra::B { j_set, tau, linear, functor, .. } = build_skeleton(&info).unwrap() else {
            panic!("expected B")
        };
        assert_eq!(j_set, BTreeSet::from([1]));
        assert_eq!(tau[&1], Tau::Sigma);
        assert!(!linear);
        let c = functor.iter().find(|e| e.generator == "c_1").unwrap();
        assert_eq!(c.word, vec![Step { op: Op::X, index: 1, at: ShiftVector::zero() }]);

        let sk = SkeletonB::from_info(&info).unwrap();
        let c1 = sk.generator(1, Power::C(1)).unwrap();
        let cinv = sk.generator(1, Power::C(-1)).unwrap();
        assert_eq!(sk.compose(&c1, &cinv), sk.scalar(sk.field().one()));
        // c·w = sigma(w)·c, and moving back restores w.
        let w = info.tbar(1);
        let moved = sk.move_left(&c1.word, &w);
        assert_ne!(moved, w);
        assert_eq!(sk.move_right(&c1.word, &moved), w);
    }
}
