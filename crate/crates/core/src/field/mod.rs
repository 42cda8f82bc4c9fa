//! Exact base fields: the rationals, prime fields and finite towers of simple
//! extensions over either.
//!
//! Elements are plain [`Value`]s; all arithmetic goes through the owning
//! [`Field`], which knows how to reduce.

mod irreducible;
pub mod json;
mod poly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use irreducible::{is_irreducible, Irreducibility, IrreducibilityBudget};
pub use poly::{poly_arith, Poly, PolyArith, PolyArithOutput};
pub(crate) use poly::raw;

/// Canonical representative of a field element.
///
/// `Q` is a reduced fraction, `P` a least residue, `E` the coefficient vector of
/// a reduced polynomial in the adjoined root, padded to the extension degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Q(BigRational),
    P(u64),
    E(Vec<Value>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension {
        base: Field,
        /// Monic, ascending, length = degree + 1.
        modulus: Vec<Value>,
        certified: bool,
    },
}

#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({})", p),
            FieldKind::Extension { base, modulus, .. } => {
                write!(f, "{}[x]/({})", base, base.fmt_poly(modulus, "x"))
            }
        }
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest supported prime; keeps products inside u128 comfortably and
/// enumeration sizes sane.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME {
            return Err(Error::Unsupported(format!("prime {} exceeds {}", p, MAX_PRIME)));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{} is not prime", p)));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// `base[x]/(modulus)`. Irreducibility is the caller's business; see
    /// [`Field::extension_checked`].
    pub fn extension(base: &Field, modulus: &Poly, certified: bool) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        match modulus.degree() {
            Some(d) if d >= 2 => {}
            _ => return Err(Error::InvalidInput("extension modulus must have degree >= 2".into())),
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidInput("extension modulus must be monic".into()));
        }
        Ok(Field(Arc::new(FieldKind::Extension {
            base: base.clone(),
            modulus: modulus.coeffs().to_vec(),
            certified,
        })))
    }

    /// Extension after an irreducibility check. `assume` turns an undecided
    /// check into an uncertified extension instead of an error.
    pub fn extension_checked(
        base: &Field,
        modulus: &Poly,
        budget: &IrreducibilityBudget,
        assume: bool,
    ) -> Result<Field> {
        match is_irreducible(modulus, budget)? {
            Irreducibility::Irreducible => Field::extension(base, modulus, true),
            Irreducibility::Reducible => {
                Err(Error::NotMaximal(format!("{} is reducible over {}", modulus, base)))
            }
            Irreducibility::Unknown if assume => Field::extension(base, modulus, false),
            Irreducibility::Unknown => Err(Error::UncertifiedIrreducibility(format!(
                "{} over {}",
                modulus, base
            ))),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } => base.characteristic(),
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn prime_field(&self) -> Field {
        match &*self.0 {
            FieldKind::Extension { base, .. } => base.prime_field(),
            _ => self.clone(),
        }
    }

    /// Degree over the immediate base (1 for prime fields).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn absolute_degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { base, .. } => self.degree() * base.absolute_degree(),
            _ => 1,
        }
    }

    /// True when every level of the tower carries an irreducibility certificate.
    pub fn is_certified(&self) -> bool {
        match &*self.0 {
            FieldKind::Extension { base, certified, .. } => *certified && base.is_certified(),
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Number of elements, when finite and representable.
    pub fn order(&self) -> Option<u128> {
        let p = self.characteristic();
        if p == 0 {
            return None;
        }
        (p as u128).checked_pow(self.absolute_degree() as u32)
    }

    /// `sub` is this field or one of its ancestors in the tower.
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        if self == sub {
            return true;
        }
        match self.base() {
            Some(b) => b.contains_subfield(sub),
            None => false,
        }
    }

    pub fn degree_over(&self, sub: &Field) -> Option<usize> {
        if self == sub {
            return Some(1);
        }
        let b = self.base()?;
        Some(self.degree() * b.degree_over(sub)?)
    }

    pub fn modulus(&self) -> Option<Poly> {
        match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => Some(Poly::new(base, modulus.clone())),
            _ => None,
        }
    }

    // ---- constants -------------------------------------------------------

    pub fn zero(&self) -> Value {
        match &*self.0 {
            FieldKind::Rationals => Value::Q(BigRational::zero()),
            FieldKind::Prime(_) => Value::P(0),
            FieldKind::Extension { base, .. } => Value::E(vec![base.zero(); self.degree()]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        match &*self.0 {
            FieldKind::Rationals => Value::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => Value::P(n.rem_euclid(*p as i64) as u64),
            FieldKind::Extension { base, .. } => self.lift(base.from_i64(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match &*self.0 {
            FieldKind::Rationals => Value::Q(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Value::P(r.to_u64().expect("residue fits"))
            }
            FieldKind::Extension { base, .. } => self.lift(base.from_bigint(n)),
        }
    }

    /// Image of a rational number; fails in characteristic p when the
    /// denominator vanishes.
    pub fn from_rational(&self, q: &BigRational) -> Result<Value> {
        match &*self.0 {
            FieldKind::Rationals => Ok(Value::Q(q.clone())),
            _ => {
                let n = self.from_bigint(q.numer());
                let d = self.from_bigint(q.denom());
                self.div(&n, &d)
                    .ok_or_else(|| Error::InvalidInput(format!("{} has no image in {}", q, self)))
            }
        }
    }

    /// The adjoined root of an extension.
    pub fn generator(&self) -> Option<Value> {
        match &*self.0 {
            FieldKind::Extension { base, .. } => {
                let mut c = vec![base.zero(); self.degree()];
                c[1] = base.one();
                Some(Value::E(c))
            }
            _ => None,
        }
    }

    fn lift(&self, base_value: Value) -> Value {
        let FieldKind::Extension { base, .. } = &*self.0 else { unreachable!() };
        let mut c = vec![base.zero(); self.degree()];
        c[0] = base_value;
        Value::E(c)
    }

    /// Embeds a value of the subfield `sub` (an ancestor in the tower).
    pub fn embed(&self, sub: &Field, v: &Value) -> Result<Value> {
        if self == sub {
            return Ok(v.clone());
        }
        match &*self.0 {
            FieldKind::Extension { base, .. } => Ok(self.lift(base.embed(sub, v)?)),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// The value as an element of the prime field, if it lies there.
    pub fn prime_part(&self, v: &Value) -> Option<Value> {
        match (&*self.0, v) {
            (FieldKind::Extension { base, .. }, Value::E(c)) => {
                if c[1..].iter().all(|x| base.is_zero(x)) {
                    base.prime_part(&c[0])
                } else {
                    None
                }
            }
            (FieldKind::Extension { .. }, _) => None,
            _ => Some(v.clone()),
        }
    }

    /// Coordinates over the subfield `sub` in the tower power basis.
    pub fn coords_over(&self, sub: &Field, v: &Value) -> Vec<Value> {
        if self == sub {
            return vec![v.clone()];
        }
        let base = self.base().expect("subfield lies in tower");
        let Value::E(c) = v else { panic!("extension value expected") };
        c.iter().flat_map(|x| base.coords_over(sub, x)).collect()
    }

    pub fn from_coords_over(&self, sub: &Field, coords: &[Value]) -> Value {
        if self == sub {
            return coords[0].clone();
        }
        let base = self.base().expect("subfield lies in tower");
        let k = base.degree_over(sub).expect("subfield lies in tower");
        Value::E(coords.chunks(k).map(|ch| base.from_coords_over(sub, ch)).collect())
    }

    /// Checks that `v` is a well-formed canonical value of this field.
    pub fn validate(&self, v: &Value) -> Result<()> {
        let ok = match (&*self.0, v) {
            (FieldKind::Rationals, Value::Q(_)) => true,
            (FieldKind::Prime(p), Value::P(x)) => x < p,
            (FieldKind::Extension { base, .. }, Value::E(c)) => {
                if c.len() != self.degree() {
                    false
                } else {
                    for x in c {
                        base.validate(x)?;
                    }
                    true
                }
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("value {:?} is not an element of {}", v, self)))
        }
    }

    // ---- arithmetic ------------------------------------------------------

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Q(q) => q.is_zero(),
            Value::P(x) => *x == 0,
            Value::E(c) => {
                let b = self.base().expect("extension value");
                c.iter().all(|x| b.is_zero(x))
            }
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Value::Q(x), Value::Q(y)) => Value::Q(x + y),
            (FieldKind::Prime(p), Value::P(x), Value::P(y)) => Value::P((x + y) % p),
            (FieldKind::Extension { base, .. }, Value::E(x), Value::E(y)) => {
                Value::E(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("value does not belong to {}", self),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (&*self.0, a) {
            (FieldKind::Rationals, Value::Q(x)) => Value::Q(-x),
            (FieldKind::Prime(p), Value::P(x)) => Value::P((p - x) % p),
            (FieldKind::Extension { base, .. }, Value::E(x)) => {
                Value::E(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("value does not belong to {}", self),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Value::Q(x), Value::Q(y)) => Value::Q(x * y),
            (FieldKind::Prime(p), Value::P(x), Value::P(y)) => {
                Value::P(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension { base, modulus, .. }, Value::E(x), Value::E(y)) => {
                let prod = raw::mul(base, x, y);
                let r = raw::rem_monic(base, &prod, modulus);
                Value::E(self.pad(r))
            }
            _ => panic!("value does not belong to {}", self),
        }
    }

    fn pad(&self, mut c: Vec<Value>) -> Vec<Value> {
        let base = self.base().expect("extension");
        c.resize(self.degree(), base.zero());
        c
    }

    pub fn inv(&self, a: &Value) -> Option<Value> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (FieldKind::Rationals, Value::Q(x)) => Some(Value::Q(x.recip())),
            (FieldKind::Prime(p), Value::P(x)) => {
                let (g, s, _) = ext_gcd_i128(*x as i128, *p as i128);
                debug_assert_eq!(g, 1);
                Some(Value::P(s.rem_euclid(*p as i128) as u64))
            }
            (FieldKind::Extension { base, modulus, .. }, Value::E(x)) => {
                let (g, s) = raw::inverse_mod(base, &raw::trimmed(base, x.clone()), modulus)?;
                let gi = base.inv(&g)?;
                let s = raw::scale(base, &s, &gi);
                Some(Value::E(self.pad(s)))
            }
            _ => panic!("value does not belong to {}", self),
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Option<Value> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn sum<'a>(&self, it: impl IntoIterator<Item = &'a Value>) -> Value {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    // ---- enumeration (finite fields) ------------------------------------

    /// All elements in index order; `None` for infinite fields.
    pub fn elements(&self) -> Option<Vec<Value>> {
        let n = self.order()?;
        if n > 1 << 24 {
            return None;
        }
        Some((0..n as u64).map(|i| self.element_at(i)).collect())
    }

    /// The element with index `i`; index 0 is zero and index 1 is one.
    pub fn element_at(&self, mut i: u64) -> Value {
        match &*self.0 {
            FieldKind::Rationals => panic!("the rationals are not enumerable"),
            FieldKind::Prime(_) => Value::P(i),
            FieldKind::Extension { base, .. } => {
                let q = base.order().expect("finite") as u64;
                let mut c = Vec::with_capacity(self.degree());
                for _ in 0..self.degree() {
                    c.push(base.element_at(i % q));
                    i /= q;
                }
                Value::E(c)
            }
        }
    }

    pub fn index_of(&self, v: &Value) -> u64 {
        match (&*self.0, v) {
            (FieldKind::Prime(_), Value::P(x)) => *x,
            (FieldKind::Extension { base, .. }, Value::E(c)) => {
                let q = base.order().expect("finite") as u64;
                c.iter().rev().fold(0u64, |acc, x| acc * q + base.index_of(x))
            }
            _ => panic!("index_of needs a finite field value"),
        }
    }

    // ---- formatting ------------------------------------------------------

    pub fn fmt_value(&self, v: &Value) -> String {
        match (&*self.0, v) {
            (FieldKind::Rationals, Value::Q(q)) => q.to_string(),
            (FieldKind::Prime(_), Value::P(x)) => x.to_string(),
            (FieldKind::Extension { base, .. }, Value::E(c)) => {
                let var = format!("x{}", self.tower_height());
                format!("({})", base.fmt_poly(c, &var))
            }
            _ => format!("{:?}", v),
        }
    }

    fn tower_height(&self) -> usize {
        match self.base() {
            Some(b) => 1 + b.tower_height(),
            None => 0,
        }
    }

    pub(crate) fn fmt_poly(&self, c: &[Value], var: &str) -> String {
        let mut terms = Vec::new();
        for (k, x) in c.iter().enumerate().rev() {
            if self.is_zero(x) {
                continue;
            }
            let coef = self.fmt_value(x);
            let term = match k {
                0 => coef,
                1 if self.is_one(x) => var.to_string(),
                1 => format!("{}*{}", coef, var),
                _ if self.is_one(x) => format!("{}^{}", var, k),
                _ => format!("{}*{}^{}", coef, var, k),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0, s0, t0)
}

/// A value bundled with its field, for APIs that hand single scalars around.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub field: Field,
    pub value: Value,
}

impl FieldElem {
    pub fn new(field: &Field, value: Value) -> Self {
        FieldElem { field: field.clone(), value }
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_value(&self.value))
    }
}

/// Integer value of a rational with denominator one.
pub fn rational_as_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// `|n|` when it fits in u64.
pub(crate) fn abs_u64(n: &BigInt) -> Option<u64> {
    n.abs().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        let f2 = Field::prime(2).unwrap();
        Field::extension(&f2, &Poly::from_i64(&f2, &[1, 1, 1]), true).unwrap()
    }

    #[test]
    fn prime_check() {
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn gf4_generator_is_cube_root_of_unity() {
        let k = gf4();
        let w = k.generator().unwrap();
        assert_eq!(k.pow(&w, 3), k.one());
        assert_ne!(w, k.one());
        assert_eq!(k.order(), Some(4));
    }

    #[test]
    fn inverse_in_tower() {
        let k = gf4();
        let y = Poly::new(&k, vec![k.generator().unwrap(), k.one(), k.one()]);
        let k2 = Field::extension(&k, &y, false).unwrap();
        for v in k2.elements().unwrap().iter().skip(1) {
            assert_eq!(k2.mul(v, &k2.inv(v).unwrap()), k2.one());
        }
    }

    #[test]
    fn element_indexing_round_trip() {
        let k = gf4();
        for i in 0..4 {
            assert_eq!(k.index_of(&k.element_at(i)), i);
        }
        assert_eq!(k.element_at(0), k.zero());
        assert_eq!(k.element_at(1), k.one());
    }

    #[test]
    fn coordinates_round_trip() {
        let k = gf4();
        let f2 = k.base().unwrap().clone();
        let w = k.generator().unwrap();
        let c = k.coords_over(&f2, &w);
        assert_eq!(c, vec![Value::P(0), Value::P(1)]);
        assert_eq!(k.from_coords_over(&f2, &c), w);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f5 = Field::prime(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f5.from_rational(&half).unwrap(), Value::P(3));
        let f2 = Field::prime(2).unwrap();
        assert!(f2.from_rational(&half).is_err());
    }
}
