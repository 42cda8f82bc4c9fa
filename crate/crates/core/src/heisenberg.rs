//! `S(O)` for `A_infinity` as a graded module over the Heisenberg algebra with
//! central charge 1, via `e_k = d_k` and `e_{-k} = x_k` for `k > 0`. The
//! weight `gamma` has degree `-sum k gamma_k`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::field::{Field, Poly};
use crate::orbit::{orbit_info, Arity, OrbitInfo, SepMaxIdeal, ShiftVector};
use crate::simples::build_s_o;
use crate::weightmod::{Dir, SemiMap, WeightModule, Window};
use crate::Budget;

/// The orbit of `(t_k - lambda)_k` for every `k`.
pub fn a_infinity_orbit(lambda: &num_rational::BigRational, budget: &Budget) -> Result<Arc<OrbitInfo>> {
    let q = Field::rationals();
    let l = q.from_rational(lambda)?;
    let m = SepMaxIdeal::new(&q, Arity::Unbounded, BTreeMap::new(), Some(Poly::linear(&q, &l)))?;
    let info = orbit_info(&m, &budget.irreducibility)?;
    if info.degenerate {
        return Err(Error::DegenerateOrbit);
    }
    Ok(Arc::new(info))
}

/// Default orbit: `lambda = 1/2`.
pub fn default_orbit(budget: &Budget) -> Result<Arc<OrbitInfo>> {
    a_infinity_orbit(&num_rational::BigRational::new(1.into(), 2.into()), budget)
}

pub fn degree(g: &ShiftVector) -> i64 {
    -g.iter().map(|(k, x)| k as i64 * x).sum::<i64>()
}

/// Number of tuples `(i_1, ..., i_l)`, `0 <= l <= len`, with `sum k i_k = i`,
/// `i_l != 0` and `|i_k| <= bound`; the empty tuple counts when `i = 0`.
pub fn graded_count(i: i64, len: usize, bound: u64) -> u128 {
    let b = bound as i64;
    let mut total: u128 = u128::from(i == 0);
    // ways[s]: tuples of the first k - 1 entries summing to s.
    let mut ways: BTreeMap<i64, u128> = BTreeMap::from([(0, 1)]);
    for k in 1..=len as i64 {
        for x in -b..=b {
            if x != 0 {
                total += ways.get(&(i - k * x)).copied().unwrap_or(0);
            }
        }
        let mut next = BTreeMap::new();
        for (&s, &w) in &ways {
            for x in -b..=b {
                *next.entry(s + k * x).or_insert(0) += w;
            }
        }
        ways = next;
    }
    total
}

/// The weights counted by `graded_count`, by generating every tuple and
/// keeping those of the right degree.
pub fn graded_basis(i: i64, len: usize, bound: u64) -> Vec<ShiftVector> {
    let b = bound as i64;
    let mut out = Vec::new();
    fn rec(k: usize, len: usize, b: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        if k > len {
            return;
        }
        for x in -b..=b {
            cur.push(x);
            rec(k + 1, len, b, cur, out);
            cur.pop();
        }
    }
    let mut tuples = Vec::new();
    rec(1, len, b, &mut Vec::new(), &mut tuples);
    for t in tuples {
        if t.last() == Some(&0) {
            continue;
        }
        let s: i64 = t.iter().enumerate().map(|(k, x)| (k as i64 + 1) * x).sum();
        if s == i {
            out.push(ShiftVector::dense(&t));
        }
    }
    out.sort();
    out
}

/// `e_k` on `V_g` as an action of `S(O)`.
fn generator(m: &WeightModule, k: i64, g: &ShiftVector) -> Option<(SemiMap, ShiftVector)> {
    let (i, dir) = if k > 0 { (k as usize, Dir::Down) } else { ((-k) as usize, Dir::Up) };
    let a = m.action(i, g, dir)?.map()?.clone();
    Some((a, m.neighbor(g, i, dir)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergReport {
    pub brackets_checked: usize,
    pub bracket_failures: usize,
    pub grading_checked: usize,
    pub grading_failures: usize,
    /// Scalar by which `[e_1, e_{-1}]` acts, where defined.
    pub central_charge: Option<String>,
    pub first_failure: Option<String>,
}

impl HeisenbergReport {
    pub fn passed(&self) -> bool {
        self.bracket_failures == 0 && self.grading_failures == 0
    }

    pub fn to_json(&self) -> Json {
        json!({
            "schema": crate::SCHEMA,
            "passed": self.passed(),
            "brackets_checked": self.brackets_checked,
            "bracket_failures": self.bracket_failures,
            "grading_checked": self.grading_checked,
            "grading_failures": self.grading_failures,
            "central_charge": self.central_charge,
            "first_failure": self.first_failure,
        })
    }
}

/// `S(O)` on a box of the given radius over the indices `1..=max_index`.
pub fn build_window(info: &Arc<OrbitInfo>, max_index: usize, radius: i64) -> Result<WeightModule> {
    let w = Window::boxed_on(info, (1..=max_index).collect(), radius)?;
    build_s_o(info, &w)
}

/// Checks `[e_a, e_b] = delta_{a,-b}` and `e_a V_d ⊆ V_{d+a}` wherever both
/// sides are defined on the window.
pub fn heisenberg_action_check(m: &WeightModule) -> HeisenbergReport {
    let rf = m.residue();
    let f = m.field();
    let mut r = HeisenbergReport {
        brackets_checked: 0,
        bracket_failures: 0,
        grading_checked: 0,
        grading_failures: 0,
        central_charge: None,
        first_failure: None,
    };
    let gens: Vec<i64> = m.indices().iter().flat_map(|&k| [k as i64, -(k as i64)]).collect();
    for g in m.weights() {
        for &a in &gens {
            if let Some((_, h)) = generator(m, a, g) {
                r.grading_checked += 1;
                if degree(&h) != degree(g) + a {
                    r.grading_failures += 1;
                    r.first_failure.get_or_insert_with(|| format!("grading of e_{} at {}", a, g));
                }
            }
        }
        for (p, &a) in gens.iter().enumerate() {
            for &b in &gens[p + 1..] {
                let ab = generator(m, b, g).and_then(|(u, h)| generator(m, a, &h).map(|(v, _)| v.compose(rf, &u)));
                let ba = generator(m, a, g).and_then(|(u, h)| generator(m, b, &h).map(|(v, _)| v.compose(rf, &u)));
                let (Some(ab), Some(ba)) = (ab, ba) else { continue };
                r.brackets_checked += 1;
                let want = if a == -b { f.from_i64(a.signum()) } else { f.zero() };
                let bracket = ab.sub(&ba);
                let ok = bracket
                    .as_ref()
                    .map_or(false, |c| c.is_linear() && c.matrix == crate::linalg::Matrix::scalar(f, m.dim(g), &want));
                if ok && a == 1 && b == -1 && r.central_charge.is_none() {
                    r.central_charge = Some(f.fmt_value(&want));
                }
                if !ok {
                    r.bracket_failures += 1;
                    r.first_failure.get_or_insert_with(|| format!("[e_{}, e_{}] at {}", a, b, g));
                }
            }
        }
    }
    r
}
