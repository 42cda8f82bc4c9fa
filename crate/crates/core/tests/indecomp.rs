mod common;

use common::*;
use weylmod::indecomp::*;
use weylmod::orbit::ShiftVector;
use weylmod::weightmod::functor::round_trip_weight;
use weylmod::weightmod::{is_indecomposable_finite, is_simple_finite, submodule_closure, verify_relations, Window};
use weylmod::Budget;

fn count_in(list: &[QuiverRep], dims: &[usize]) -> usize {
    list.iter().filter(|r| r.dims == dims).count()
}

#[test]
fn q1_matches_brute_force() {
    let f2 = fp(2);
    let list = q1_indecomposables(&f2);
    for r in &list {
        r.check_relations().unwrap();
    }
    for d in dimension_vectors(Quiver::Q1, 2, 4) {
        let bf = brute_force_indecomposables(Quiver::Q1, &f2, &d, &Budget::default()).unwrap();
        assert_eq!(bf.indecomposables.len(), count_in(&list, &d), "{:?}", d);
    }
    let bf = brute_force_indecomposables(Quiver::Q1, &f2, &[1, 1], &Budget::default()).unwrap();
    assert_eq!(bf.tuples, 3);
    assert_eq!(bf.indecomposables.len(), 2);
}

#[test]
fn q2_unit_vector() {
    let f2 = fp(2);
    let polys = ind0_polys(&f2, 1, &Budget::default()).unwrap();
    assert_eq!(polys.len(), 1);
    let list = q2_indecomposables(&f2, 4, &polys);
    for r in &list {
        r.check_relations().unwrap();
    }
    assert_eq!(count_in(&list, &[1, 1, 1, 1]), 14);
    let bf = brute_force_indecomposables(Quiver::Q2, &f2, &[1, 1, 1, 1], &Budget::default()).unwrap();
    assert_eq!(bf.indecomposables.len(), 14);
}

#[test]
fn order1_four_modules() {
    let info = orbit(&q(), &[&["0", "1"], &["-1/2", "1"]]);
    assert_eq!(classify_block(&info).kind, RepKind::Finite);
    let w = Window::boxed(&info, 3).unwrap();
    let mods = build_order1_modules(&info, &w).unwrap();
    for (name, m) in &mods {
        assert!(verify_relations(m).passed(), "{} {:?}", name, verify_relations(m));
        assert!(round_trip_weight(m).unwrap(), "{}", name);
        assert!(is_indecomposable_finite(m, &Budget::default()).unwrap().indecomposable, "{}", name);
    }
    let reps: Vec<QuiverRep> = mods.iter().map(|(_, m)| module_to_rep(m).unwrap()).collect();
    assert_eq!(reps, q1_indecomposables(info.field()).into_iter().map(|mut r| { r.name = "skeleton".into(); r }).collect::<Vec<_>>());
    let mx = &mods[2].1;
    assert!(!is_simple_finite(mx, &Budget::default()).unwrap().simple);
    let prof: Vec<usize> = submodule_closure(mx, &[(ShiftVector::zero(), vec![mx.field().one()])])
        .unwrap()
        .iter()
        .map(|s| s.dim())
        .collect();
    assert_eq!(prof, mx.dims());
}

#[test]
fn order2_corner() {
    let info = orbit(&q(), &[&["0", "1"], &["0", "1"]]);
    let w = Window::boxed(&info, 3).unwrap();
    let s0 = simple(Quiver::Q2, info.field(), 0);
    let m = build_order2_module(&info, &s0, &w).unwrap();
    assert!(verify_relations(&m).passed());
    for g in m.weights() {
        assert_eq!(m.dim(g), usize::from(g.get(1) <= 0 && g.get(2) <= 0));
    }
    for i in 1..=2 {
        assert!(m.x(i, &ShiftVector::zero()).unwrap().matrix.is_zero());
    }
    let f = poly(info.field(), &["-2", "1"]);
    let mf = build_order2_module(&info, &band(&f, 1), &w).unwrap();
    assert!(verify_relations(&mf).passed());
    assert!(mf.dims().iter().all(|&d| d == 1));
    assert_eq!(mf.x(1, &ShiftVector::zero()).unwrap().matrix.get(0, 0), &rat("2"));
    for r in q2_indecomposables(info.field(), 5, &[f.clone(), f.mul(&f)]) {
        let m = build_order2_module(&info, &r, &w).unwrap();
        assert!(verify_relations(&m).passed(), "{}", r.name);
        assert!(round_trip_weight(&m).unwrap(), "{}", r.name);
        let mut back = module_to_rep(&m).unwrap();
        back.name = r.name.clone();
        assert_eq!(back, r);
    }
}
