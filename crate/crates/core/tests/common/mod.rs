#![allow(dead_code)]

use std::sync::Arc;

use weylmod::field::json::parse_rational;
use weylmod::field::{Field, IrreducibilityBudget, Poly, Value};
use weylmod::orbit::{orbit_info, OrbitInfo, SepMaxIdeal};

pub fn q() -> Field {
    Field::rationals()
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn rat(s: &str) -> Value {
    q().from_rational(&parse_rational(s).unwrap()).unwrap()
}

/// Coefficients low to high, each a rational literal reduced into `f`.
pub fn poly(f: &Field, c: &[&str]) -> Poly {
    let b = f.prime_field();
    let vals = c.iter().map(|s| f.embed(&b, &b.from_rational(&parse_rational(s).unwrap()).unwrap()).unwrap()).collect();
    Poly::new(f, vals)
}

pub fn orbit(f: &Field, gens: &[&[&str]]) -> Arc<OrbitInfo> {
    let m = SepMaxIdeal::finite(f, gens.iter().map(|c| poly(f, c)).collect()).unwrap();
    Arc::new(orbit_info(&m, &IrreducibilityBudget::default()).unwrap())
}
