//! Irreducibility of univariate polynomials.
//!
//! Finite fields: exact, by trial division. Rationals: exact up to degree 3 by
//! the rational root test. Anything else is reported as unknown.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{abs_u64, Field, FieldKind, Poly, Value};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityBudget {
    /// Largest degree handled by full trial division.
    pub max_degree: usize,
    /// Largest field order handled by full trial division.
    pub max_order: u128,
    /// Cap on candidate divisors tried in total.
    pub max_candidates: u64,
}

impl Default for IrreducibilityBudget {
    fn default() -> Self {
        IrreducibilityBudget { max_degree: 8, max_order: 81, max_candidates: 1 << 22 }
    }
}

/// Bound on |constant term| and |leading term| for the rational root test.
const RATIONAL_DIVISOR_BOUND: u64 = 1_000_000_000_000;

pub fn is_irreducible(f: &Poly, budget: &IrreducibilityBudget) -> Result<Irreducibility> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidInput("irreducibility needs degree >= 1".into())),
    };
    if d == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let field = f.field();
    if field.is_finite() {
        return finite_field(f, d, budget);
    }
    match field.kind() {
        FieldKind::Rationals => Ok(rational(f, d)),
        _ => Ok(Irreducibility::Unknown),
    }
}

fn finite_field(f: &Poly, d: usize, budget: &IrreducibilityBudget) -> Result<Irreducibility> {
    let field = f.field();
    let q = field.order().ok_or_else(|| Error::EnumerationBudgetExceeded("field order".into()))?;
    if q > budget.max_candidates as u128 {
        return Err(Error::EnumerationBudgetExceeded(format!("field of order {}", q)));
    }
    // Roots first: cheap, and decisive for degree 2 and 3.
    let q64 = q as u64;
    for i in 0..q64 {
        if field.is_zero(&f.eval(&field.element_at(i))) {
            return Ok(Irreducibility::Reducible);
        }
    }
    if d <= 3 {
        return Ok(Irreducibility::Irreducible);
    }
    if d > budget.max_degree || q > budget.max_order {
        return Err(Error::EnumerationBudgetExceeded(format!(
            "trial division of degree {} over a field of order {}",
            d, q
        )));
    }
    let mut spent: u64 = q64;
    for k in 2..=d / 2 {
        let count = q
            .checked_pow(k as u32)
            .filter(|c| *c <= (budget.max_candidates - spent.min(budget.max_candidates)) as u128)
            .ok_or_else(|| Error::EnumerationBudgetExceeded(format!("divisors of degree {}", k)))?
            as u64;
        spent += count;
        for idx in 0..count {
            let g = monic_from_index(field, k, idx, q64);
            if f.rem(&g)?.is_zero() {
                return Ok(Irreducibility::Reducible);
            }
        }
    }
    Ok(Irreducibility::Irreducible)
}

/// The monic polynomial of degree `k` whose lower coefficients spell `idx` in base `q`.
pub(crate) fn monic_from_index(field: &Field, k: usize, mut idx: u64, q: u64) -> Poly {
    let mut c = Vec::with_capacity(k + 1);
    for _ in 0..k {
        c.push(field.element_at(idx % q));
        idx /= q;
    }
    c.push(field.one());
    Poly::new(field, c)
}

fn rational(f: &Poly, d: usize) -> Irreducibility {
    match has_rational_root(f) {
        Some(true) => Irreducibility::Reducible,
        Some(false) if d <= 3 => Irreducibility::Irreducible,
        _ => Irreducibility::Unknown,
    }
}

/// Rational root test. `None` when coefficients are too large to enumerate divisors.
fn has_rational_root(f: &Poly) -> Option<bool> {
    let qs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|v| match v {
            Value::Q(q) => q.clone(),
            _ => unreachable!("rational coefficients"),
        })
        .collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return Some(true);
    }
    let a0 = abs_u64(&ints[0]).filter(|x| *x <= RATIONAL_DIVISOR_BOUND)?;
    let an = abs_u64(ints.last().unwrap()).filter(|x| *x <= RATIONAL_DIVISOR_BOUND)?;
    let field = f.field();
    for p in divisors(a0) {
        for q in divisors(an) {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                if field.is_zero(&f.eval(&Value::Q(r))) {
                    return Some(true);
                }
            }
        }
    }
    Some(false)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(f: &Poly) -> Irreducibility {
        is_irreducible(f, &IrreducibilityBudget::default()).unwrap()
    }

    #[test]
    fn small_cases() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(check(&Poly::from_i64(&f2, &[1, 1, 1])), Irreducibility::Irreducible);
        let q = Field::rationals();
        assert_eq!(check(&Poly::from_i64(&q, &[0, 0, 1])), Irreducibility::Reducible);
        assert_eq!(check(&Poly::from_i64(&q, &[-2, 0, 1])), Irreducibility::Irreducible);
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2) has no rational root.
        assert_eq!(check(&Poly::from_i64(&q, &[4, 0, 0, 0, 1])), Irreducibility::Unknown);
    }

    #[test]
    fn quartic_without_roots_over_f2() {
        let f2 = Field::prime(2).unwrap();
        // (x^2+x+1)^2 = x^4+x^2+1
        assert_eq!(check(&Poly::from_i64(&f2, &[1, 0, 1, 0, 1])), Irreducibility::Reducible);
        assert_eq!(check(&Poly::from_i64(&f2, &[1, 1, 0, 0, 1])), Irreducibility::Irreducible);
    }

    #[test]
    fn budget_guard() {
        let f2 = Field::prime(2).unwrap();
        let mut c = vec![0i64; 13];
        c[0] = 1;
        c[1] = 1;
        c[12] = 1;
        let f = Poly::from_i64(&f2, &c);
        assert!(matches!(
            is_irreducible(&f, &IrreducibilityBudget::default()),
            Err(Error::EnumerationBudgetExceeded(_))
        ));
    }
}
