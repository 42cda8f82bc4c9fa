//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use super::{Field, Value};
use crate::error::{Error, Result};

/// Slice-level routines shared by [`Poly`] and extension-field arithmetic.
/// Vectors are ascending and trimmed (no trailing zeros) unless noted.
pub(crate) mod raw {
    use super::*;

    pub fn trimmed(f: &Field, mut a: Vec<Value>) -> Vec<Value> {
        while a.last().is_some_and(|x| f.is_zero(x)) {
            a.pop();
        }
        a
    }

    pub fn add(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
        let n = a.len().max(b.len());
        let z = f.zero();
        let out = (0..n)
            .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        trimmed(f, out)
    }

    pub fn neg(f: &Field, a: &[Value]) -> Vec<Value> {
        a.iter().map(|x| f.neg(x)).collect()
    }

    pub fn sub(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
        add(f, a, &neg(f, b))
    }

    pub fn scale(f: &Field, a: &[Value], c: &Value) -> Vec<Value> {
        trimmed(f, a.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn mul(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        trimmed(f, out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(f: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
        let b = trimmed(f, b.to_vec());
        let db = b.len() - 1;
        let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
        let mut r = trimmed(f, a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![f.zero(); r.len() - db];
        while r.len() >= b.len() {
            let k = r.len() - 1 - db;
            let c = f.mul(r.last().unwrap(), &lead_inv);
            for (i, y) in b.iter().enumerate() {
                r[k + i] = f.sub(&r[k + i], &f.mul(&c, y));
            }
            q[k] = c;
            r.pop();
            r = trimmed(f, r);
        }
        (trimmed(f, q), r)
    }

    pub fn rem_monic(f: &Field, a: &[Value], m: &[Value]) -> Vec<Value> {
        divrem(f, a, m).1
    }

    /// `(g, s)` with `s·a ≡ g (mod m)` and `g` a nonzero constant, or `None`
    /// when `a` and `m` share a factor.
    pub fn inverse_mod(f: &Field, a: &[Value], m: &[Value]) -> Option<(Value, Vec<Value>)> {
        let (mut r0, mut r1) = (trimmed(f, m.to_vec()), trimmed(f, a.to_vec()));
        let (mut s0, mut s1): (Vec<Value>, Vec<Value>) = (Vec::new(), vec![f.one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(f, &r0, &r1);
            let s2 = sub(f, &s0, &mul(f, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let s0 = divrem(f, &s0, m).1;
        Some((r0[0].clone(), s0))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Value>,
}

impl Poly {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(field: &Field, coeffs: Vec<Value>) -> Poly {
        Poly { field: field.clone(), coeffs: raw::trimmed(field, coeffs) }
    }

    pub fn from_i64(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Value) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `t - c`.
    pub fn linear(field: &Field, c: &Value) -> Poly {
        Poly::new(field, vec![field.neg(c), field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Value {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, g: &Poly) -> Poly {
        self.same(g);
        Poly { field: self.field.clone(), coeffs: raw::add(&self.field, &self.coeffs, &g.coeffs) }
    }

    pub fn sub(&self, g: &Poly) -> Poly {
        self.same(g);
        Poly { field: self.field.clone(), coeffs: raw::sub(&self.field, &self.coeffs, &g.coeffs) }
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field.clone(), coeffs: raw::neg(&self.field, &self.coeffs) }
    }

    pub fn mul(&self, g: &Poly) -> Poly {
        self.same(g);
        Poly { field: self.field.clone(), coeffs: raw::mul(&self.field, &self.coeffs, &g.coeffs) }
    }

    pub fn scale(&self, c: &Value) -> Poly {
        Poly { field: self.field.clone(), coeffs: raw::scale(&self.field, &self.coeffs, c) }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        if self.field != g.field {
            return Err(Error::FieldMismatch);
        }
        if g.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let (q, r) = raw::divrem(&self.field, &self.coeffs, &g.coeffs);
        Ok((Poly { field: self.field.clone(), coeffs: q }, Poly { field: self.field.clone(), coeffs: r }))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).expect("nonzero")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, g: &Poly) -> Poly {
        self.same(g);
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn eval(&self, x: &Value) -> Value {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `f(t + k)`.
    pub fn shift(&self, k: i64) -> Poly {
        let f = &self.field;
        let tk = vec![f.from_i64(k), f.one()];
        let mut acc: Vec<Value> = Vec::new();
        for c in self.coeffs.iter().rev() {
            acc = raw::add(f, &raw::mul(f, &acc, &tk), std::slice::from_ref(c));
        }
        Poly { field: f.clone(), coeffs: acc }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, x)| f.mul(&f.from_i64(k as i64), x)).collect();
        Poly::new(f, c)
    }

    /// Coefficients embedded into an extension of the current field.
    pub fn embed_into(&self, target: &Field) -> Result<Poly> {
        let c = self.coeffs.iter().map(|x| target.embed(&self.field, x)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target, c))
    }

    fn same(&self, g: &Poly) {
        assert!(self.field == g.field, "polynomials over different fields");
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_poly(&self.coeffs, "t"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyArith {
    Add,
    Mul,
    DivMod,
    Gcd,
    Eval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArithOutput {
    Poly(Poly),
    Pair(Poly, Poly),
    Elem(Value),
}

/// Checked entry point: rejects operands over different fields.
pub fn poly_arith(op: PolyArith, f: &Poly, g: &Poly) -> Result<PolyArithOutput> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyArith::Add => PolyArithOutput::Poly(f.add(g)),
        PolyArith::Mul => PolyArithOutput::Poly(f.mul(g)),
        PolyArith::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyArithOutput::Pair(q, r)
        }
        PolyArith::Gcd => PolyArithOutput::Poly(f.gcd(g)),
        PolyArith::Eval => {
            if g.degree().is_some_and(|d| d > 0) {
                return Err(Error::InvalidInput("eval point must be a constant".into()));
            }
            PolyArithOutput::Elem(f.eval(&g.coeff(0)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn divmod_by_hand() {
        let k = f2();
        let (q, r) = Poly::from_i64(&k, &[1, 1, 1]).divmod(&Poly::from_i64(&k, &[1, 1])).unwrap();
        assert_eq!(q, Poly::t(&k));
        assert_eq!(r, Poly::one(&k));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let q = Field::rationals();
        let f = Poly::from_i64(&q, &[2, 4]);
        assert_eq!(f.gcd(&Poly::zero(&q)), f.monic());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.monic().coeff(0), Value::Q(half));
    }

    #[test]
    fn eval_mod_two() {
        let k = f2();
        assert_eq!(Poly::from_i64(&k, &[1, 1, 1]).eval(&k.one()), Value::P(1));
    }

    #[test]
    fn shifts() {
        let q = Field::rationals();
        assert_eq!(Poly::from_i64(&q, &[-3, 1]).shift(3), Poly::t(&q));
        let k = f2();
        let f = Poly::from_i64(&k, &[1, 1, 1]);
        assert_eq!(f.shift(1), f);
    }

    #[test]
    fn mismatch_and_zero_division() {
        let a = Poly::t(&Field::rationals());
        let b = Poly::t(&f2());
        assert_eq!(poly_arith(PolyArith::Add, &a, &b), Err(Error::FieldMismatch));
        assert_eq!(a.divmod(&Poly::zero(&Field::rationals())), Err(Error::DivisionByZeroPoly));
    }
}
