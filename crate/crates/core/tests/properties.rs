mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use weylmod::field::{Field, Poly, Value};
use weylmod::heisenberg::graded_count;
use weylmod::indecomp::*;
use weylmod::linalg::Matrix;
use weylmod::orbit::{OrbitInfo, SepMaxIdeal, ShiftVector};
use weylmod::simples::build_s_o;
use weylmod::skeleton::{Power, SkeletonB};
use weylmod::weightmod::json::{module_from_json, module_to_json};
use weylmod::weightmod::{submodule_closure, SemiMap, WeightModule, Window};
use weylmod::Budget;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

fn poly_mod(p: u64, c: &[i64]) -> Poly {
    Poly::from_i64(&fp(p), c)
}

fn rational_poly(c: &[(i64, i64)]) -> Poly {
    let f = q();
    Poly::new(&f, c.iter().map(|&(n, d)| rat(&format!("{}/{}", n, d))).collect())
}

proptest! {
    #[test]
    fn divmod_identity_mod_p(p in small_prime(), f in prop::collection::vec(-9i64..9, 0..8), g in prop::collection::vec(-9i64..9, 1..5)) {
        let (f, g) = (poly_mod(p, &f), poly_mod(p, &g));
        prop_assume!(g.degree().is_some());
        let (quo, rem) = f.divmod(&g).unwrap();
        prop_assert_eq!(quo.mul(&g).add(&rem), f);
        prop_assert!(rem.degree().map_or(true, |r| r < g.degree().unwrap()));
    }

    #[test]
    fn divmod_identity_rational(f in prop::collection::vec((-9i64..9, 1i64..5), 0..6), g in prop::collection::vec((-9i64..9, 1i64..5), 1..4)) {
        let (f, g) = (rational_poly(&f), rational_poly(&g));
        prop_assume!(g.degree().is_some());
        let (quo, rem) = f.divmod(&g).unwrap();
        prop_assert_eq!(quo.mul(&g).add(&rem), f);
        prop_assert!(rem.degree().map_or(true, |r| r < g.degree().unwrap()));
    }

    #[test]
    fn shift_by_characteristic_is_identity(p in small_prime(), c in prop::collection::vec(-9i64..9, 0..7), k in -3i64..3) {
        let f = poly_mod(p, &c);
        prop_assert_eq!(f.shift(p as i64), f.clone());
        prop_assert_eq!(f.shift(k).shift(-k), f);
    }

    #[test]
    fn sigma_apply_is_an_action(
        roots in prop::collection::vec((-9i64..9, 1i64..4), 1..4),
        a in prop::collection::vec(-3i64..3, 3),
        b in prop::collection::vec(-3i64..3, 3),
    ) {
        let k = q();
        let gens = roots.iter().map(|&(n, d)| Poly::linear(&k, &rat(&format!("{}/{}", n, d)))).collect();
        let m = SepMaxIdeal::finite(&k, gens).unwrap();
        let n = roots.len();
        let (a, b) = (ShiftVector::dense(&a[..n]), ShiftVector::dense(&b[..n]));
        prop_assert_eq!(m.sigma_apply(&ShiftVector::zero()).unwrap(), m.clone());
        let ab = m.sigma_apply(&a).unwrap().sigma_apply(&b).unwrap();
        prop_assert_eq!(ab, m.sigma_apply(&a.add(&b)).unwrap());
    }

    #[test]
    fn graded_count_is_monotone(i in -4i64..4, len in 0usize..4, bound in 0u64..4) {
        let c = graded_count(i, len, bound);
        prop_assert!(graded_count(i, len + 1, bound) >= c);
        prop_assert!(graded_count(i, len, bound + 1) >= c);
    }
}

/// Orbit of `t^2 + t + 1` over GF(2): the shift acts as the Frobenius of GF(4).
fn twisted_orbit() -> Arc<OrbitInfo> {
    orbit(&fp(2), &[&["1", "1", "1"]])
}

fn matrix_from(f: &Field, n: usize, codes: &[u64]) -> Matrix {
    Matrix::new(f, n, n, codes[..n * n].iter().map(|&c| f.element_at(c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semimaps_compose_like_functions(
        codes in prop::collection::vec(0u64..4, 12),
        twists in prop::collection::vec(0i64..2, 3),
        v in prop::collection::vec(0u64..4, 2),
    ) {
        let info = twisted_orbit();
        let rf = &info.residue;
        let f = info.field();
        let maps: Vec<SemiMap> = (0..3)
            .map(|k| SemiMap::new(matrix_from(f, 2, &codes[4 * k..]), ShiftVector::from_pairs(&[(1, twists[k])])))
            .collect();
        let (a, b, c) = (&maps[0], &maps[1], &maps[2]);
        prop_assert_eq!(a.compose(rf, b).compose(rf, c), a.compose(rf, &b.compose(rf, c)));
        let v: Vec<Value> = v.iter().map(|&x| f.element_at(x)).collect();
        prop_assert_eq!(a.compose(rf, b).apply(rf, &v), a.apply(rf, &b.apply(rf, &v)));
        if let Some(inv) = a.inverse(rf) {
            prop_assert_eq!(inv.compose(rf, a), SemiMap::identity(f, 2));
            prop_assert_eq!(a.compose(rf, &inv), SemiMap::identity(f, 2));
        }
    }

    #[test]
    fn moving_scalars_across_words_is_invertible(
        which in 0usize..3,
        powers in prop::collection::vec(-4i64..4, 2),
        code in 0u64..512,
    ) {
        let f2 = fp(2);
        let info = match which {
            0 => orbit(&f2, &[&["1", "1", "0", "1"]]),
            1 => orbit(&fp(3), &[&["1", "0", "1"]]),
            _ => orbit(&f2, &[&["1", "1", "1"], &["0", "1"]]),
        };
        let sk = SkeletonB::from_info(&info).unwrap();
        let f = sk.field().clone();
        let lambda = f.element_at(code % f.order().unwrap() as u64);
        let mut word = BTreeMap::new();
        for (k, &j) in sk.j_set.iter().enumerate() {
            word.insert(j, Power::C(powers[k]));
        }
        for (k, &i) in sk.i_set.iter().enumerate() {
            let e = powers[k].unsigned_abs() as u32;
            word.insert(i, if powers[k] >= 0 { Power::A(e) } else { Power::B(e) });
        }
        let moved = sk.move_left(&word, &lambda);
        prop_assert_eq!(sk.move_right(&word, &moved), lambda.clone());
        prop_assert_eq!(sk.move_left(&word, &sk.move_right(&word, &lambda)), lambda);
    }
}

/// Modules over `(t_1, t_2)` in characteristic 0 with small windows.
fn order2_modules() -> Vec<WeightModule> {
    let info = orbit(&q(), &[&["0", "1"], &["0", "1"]]);
    let w = Window::boxed(&info, 2).unwrap();
    let f = poly(&q(), &["-2", "1"]);
    q2_indecomposables(&q(), 3, &[f.clone(), f.mul(&f)])
        .iter()
        .map(|r| build_order2_module(&info, r, &w).unwrap())
        .collect()
}

fn seeds(m: &WeightModule, raw: &[(usize, Vec<i64>)]) -> Vec<(ShiftVector, Vec<Value>)> {
    let support = m.support();
    raw.iter()
        .map(|(k, v)| {
            let g = support[k % support.len()].clone();
            let f = m.field();
            let vec = (0..m.dim(&g)).map(|c| f.from_i64(v[c % v.len()])).collect();
            (g, vec)
        })
        .collect()
}

fn all_vectors(spaces: &[weylmod::linalg::Subspace], m: &WeightModule) -> Vec<(ShiftVector, Vec<Value>)> {
    spaces
        .iter()
        .zip(m.weights())
        .flat_map(|(s, g)| s.basis().iter().map(move |v| (g.clone(), v.clone())))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_monotone_and_idempotent(
        which in 0usize..64,
        raw in prop::collection::vec((0usize..100, prop::collection::vec(-2i64..3, 1..4)), 1..5),
        cut in 0usize..5,
    ) {
        let mods = order2_modules();
        let m = &mods[which % mods.len()];
        let big = seeds(m, &raw);
        let small = &big[..cut.min(big.len())];
        let cs = submodule_closure(m, small).unwrap();
        let cb = submodule_closure(m, &big).unwrap();
        for (s, b) in cs.iter().zip(&cb) {
            for v in s.basis() {
                prop_assert!(b.contains(v));
            }
        }
        let again = submodule_closure(m, &all_vectors(&cb, m)).unwrap();
        prop_assert_eq!(
            again.iter().map(|s| s.dim()).collect::<Vec<_>>(),
            cb.iter().map(|s| s.dim()).collect::<Vec<_>>()
        );
        let full: Vec<(ShiftVector, Vec<Value>)> = m
            .weights()
            .iter()
            .flat_map(|g| {
                let d = m.dim(g);
                (0..d).map(move |c| (g.clone(), (0..d).map(|r| m.field().from_i64(i64::from(r == c))).collect()))
            })
            .collect();
        let whole = submodule_closure(m, &full).unwrap();
        prop_assert_eq!(whole.iter().map(|s| s.dim()).collect::<Vec<_>>(), m.dims().to_vec());
    }

    #[test]
    fn module_json_round_trips(which in 0usize..64) {
        let mods = order2_modules();
        let m = &mods[which % mods.len()];
        let j = module_to_json(m);
        let back = module_from_json(&j, &Budget::default()).unwrap();
        prop_assert_eq!(module_to_json(&back), j);
        prop_assert_eq!(back.dims(), m.dims());
    }

    #[test]
    fn quiver_json_round_trips(p in prop::sample::select(vec![2u64, 3]), which in 0usize..200) {
        let f = fp(p);
        let polys = ind0_polys(&f, 2, &Budget::default()).unwrap();
        let list = q2_indecomposables(&f, 5, &polys);
        let r = &list[which % list.len()];
        let back = QuiverRep::from_json(&r.to_json(), &Budget::default()).unwrap();
        prop_assert_eq!(&back, r);
    }

    #[test]
    fn t_satisfies_its_weight_generator(
        roots in prop::collection::vec((1i64..9, 2i64..5), 1..3),
    ) {
        prop_assume!(roots.iter().all(|&(n, d)| n % d != 0));
        let k = q();
        let gens = roots.iter().map(|&(n, d)| Poly::linear(&k, &rat(&format!("{}/{}", n, d)))).collect();
        let m = SepMaxIdeal::finite(&k, gens).unwrap();
        let info = Arc::new(weylmod::orbit::orbit_info(&m, &Budget::default().irreducibility).unwrap());
        let w = Window::boxed(&info, 2).unwrap();
        let module = build_s_o(&info, &w).unwrap();
        let rf = module.residue();
        for g in module.weights() {
            for &i in module.indices() {
                let (Some(x), Some(d)) = (module.x(i, g), module.d(i, &g.step(i, 1))) else { continue };
                let t = d.compose(rf, x);
                let gen = info.weight_generator(g, i).unwrap();
                prop_assert!(k.is_zero(&gen.eval(t.matrix.get(0, 0))));
            }
        }
    }
}
