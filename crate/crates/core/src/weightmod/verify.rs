use serde_json::{json, Value as Json};

use super::{Dir, SemiMap, WeightModule};
use crate::linalg::Matrix;
use crate::orbit::ShiftVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// First failing location, e.g. `i=1 at (1:2)`.
    pub first_failure: Option<String>,
}

impl RelationResult {
    fn new(name: &'static str) -> Self {
        RelationResult { name, checked: 0, failed: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(at());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub results: Vec<RelationResult>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.results.iter().map(|r| r.failed).sum()
    }

    pub fn get(&self, name: &str) -> Option<&RelationResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Json {
        json!({
            "schema": crate::SCHEMA,
            "passed": self.passed(),
            "relations": self.results.iter().map(|r| json!({
                "name": r.name,
                "checked": r.checked,
                "failed": r.failed,
                "first_failure": r.first_failure,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks the Weyl relations at every window point where all weights
/// involved are in the window:
///
/// * `twist`: each action carries the twist dictated by the orbit;
/// * `weight_poly`: `D_i(g+e_i) X_i(g)` is annihilated by the generator of `sigma^g(m)` at `i`;
/// * `dx_eq_t`: `D_i(g+e_i) X_i(g)` is the scalar by which `t_i` acts on `V_g`;
/// * `commutator`: `D_i X_i - X_i D_i = 1`;
/// * `commute_xx`, `commute_dd`, `commute_xd`: mixed commutators vanish.
pub fn verify_relations(m: &WeightModule) -> RelationReport {
    let info = m.orbit();
    let rf = m.residue();
    let f = m.field();
    let mut twist = RelationResult::new("twist");
    let mut weight_poly = RelationResult::new("weight_poly");
    let mut dx_eq_t = RelationResult::new("dx_eq_t");
    let mut commutator = RelationResult::new("commutator");
    let mut xx = RelationResult::new("commute_xx");
    let mut dd = RelationResult::new("commute_dd");
    let mut xd = RelationResult::new("commute_xd");

    let step = |g: &ShiftVector, i: usize, dir: Dir| -> Option<(&SemiMap, ShiftVector)> {
        let a = m.action(i, g, dir)?.map()?;
        Some((a, m.neighbor(g, i, dir)))
    };

    for &i in m.indices() {
        for g in m.weights() {
            let n = m.dim(g);
            for dir in [Dir::Up, Dir::Down] {
                if let Some((a, _)) = step(g, i, dir) {
                    let want = if dir == Dir::Up { info.twist(i) } else { info.twist(i).neg() };
                    twist.record(a.twist == want, || format!("i={} at {}", i, g));
                }
            }
            let up = step(g, i, Dir::Up).and_then(|(x, h)| step(&h, i, Dir::Down).map(|(d, _)| d.compose(rf, x)));
            let down =
                step(g, i, Dir::Down).and_then(|(d, h)| step(&h, i, Dir::Up).map(|(x, _)| x.compose(rf, d)));
            let tscal = info.t_scalar(g, i);
            if let Some(dx) = &up {
                let ok = match info.weight_generator(g, i) {
                    Ok(p) => {
                        let p = p.embed_into(f).expect("K lies in the residue field");
                        dx.is_linear() && dx.matrix.eval_poly(&p).is_zero()
                    }
                    Err(_) => false,
                };
                weight_poly.record(ok, || format!("i={} at {}", i, g));
                let ok = dx.is_linear() && dx.matrix == Matrix::scalar(f, n, &tscal);
                dx_eq_t.record(ok, || format!("i={} at {}", i, g));
            }
            if let (Some(dx), Some(xd)) = (&up, &down) {
                let ok = dx.is_linear()
                    && xd.is_linear()
                    && dx.matrix.sub(&xd.matrix) == Matrix::identity(f, n);
                commutator.record(ok, || format!("i={} at {}", i, g));
            }
        }
    }

    let idx = m.indices();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            for g in m.weights() {
                let pairs = [(Dir::Up, Dir::Up), (Dir::Down, Dir::Down), (Dir::Up, Dir::Down), (Dir::Down, Dir::Up)];
                for (di, dj) in pairs {
                    let res = match (di, dj) {
                        (Dir::Up, Dir::Up) => &mut xx,
                        (Dir::Down, Dir::Down) => &mut dd,
                        _ => &mut xd,
                    };
                    let path = |first: (usize, Dir), second: (usize, Dir)| -> Option<SemiMap> {
                        let (u, h) = step(g, first.0, first.1)?;
                        let (v, _) = step(&h, second.0, second.1)?;
                        Some(v.compose(rf, u))
                    };
                    if let (Some(p), Some(q)) = (path((i, di), (j, dj)), path((j, dj), (i, di))) {
                        res.record(p == q, || format!("i={}, j={} at {}", i, j, g));
                    }
                }
            }
        }
    }

    RelationReport { results: vec![twist, weight_poly, dx_eq_t, commutator, xx, dd, xd] }
}
