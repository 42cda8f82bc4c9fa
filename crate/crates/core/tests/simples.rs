mod common;

use common::*;
use weylmod::orbit::ShiftVector;
use weylmod::simples::*;
use weylmod::weightmod::functor::{round_trip_skeleton, round_trip_weight, to_skeleton_module};
use weylmod::weightmod::{is_simple_finite, submodule_closure, verify_relations, Window};
use weylmod::{Budget, Error};

#[test]
fn s_o_half() {
    let info = orbit(&q(), &[&["-1/2", "1"]]);
    assert!(!info.degenerate);
    assert_eq!(classify_simples(&info), vec![SimpleDescriptor::SO]);
    let w = Window::boxed(&info, 4).unwrap();
    let m = build_s_o(&info, &w).unwrap();
    assert!(verify_relations(&m).passed(), "{:?}", verify_relations(&m));
    assert!(structural_simplicity(&m));
    // t acts on V_g as 1/2 + g.
    for g in m.weights() {
        if let (Some(x), Some(_)) = (m.x(1, g), m.d(1, &g.step(1, 1))) {
            let dx = m.d(1, &g.step(1, 1)).unwrap().compose(m.residue(), x);
            assert_eq!(dx.matrix.get(0, 0), &rat(&format!("{}/2", 1 + 2 * g.get(1))));
        }
    }
    let zero = (ShiftVector::zero(), vec![m.field().one()]);
    let prof: Vec<usize> = submodule_closure(&m, &[zero]).unwrap().iter().map(|s| s.dim()).collect();
    assert_eq!(prof, m.dims());
    assert!(round_trip_weight(&m).unwrap());
}

#[test]
fn s_o_p_quadrants() {
    let info = orbit(&q(), &[&["0", "1"], &["0", "1"]]);
    let list = classify_simples(&info);
    assert_eq!(list.len(), 4);
    let w = Window::boxed(&info, 3).unwrap();
    for d in &list {
        let SimpleDescriptor::SOp { p } = d else { panic!() };
        let m = build_s_o_p(&info, p, &w).unwrap();
        assert!(verify_relations(&m).passed());
        assert!(structural_simplicity(&m));
        assert!(round_trip_weight(&m).unwrap());
        let data = to_skeleton_module(&m).unwrap();
        assert!(round_trip_skeleton(&data, &info, &w).unwrap());
        for g in m.weights() {
            let inside = (1..=2).all(|i| (g.get(i) >= 1) == (p.get(i) == 1));
            assert_eq!(m.dim(g), usize::from(inside), "{} {}", p, g);
        }
    }
    assert!(matches!(build_s_o_p(&info, &ShiftVector::dense(&[2]), &w), Err(Error::NotASkeletonObject(_))));
}

#[test]
fn gf2_dimension_six() {
    let f2 = fp(2);
    let info = orbit(&f2, &[&["1", "1", "1"]]);
    let list = classify_simples(&info);
    assert_eq!(list.len(), 1);
    let n = poly(info.field(), &["1", "1", "0", "1"]);
    let m = build_s_char_p(&info, &list[0], Some(&n), &Budget::default()).unwrap();
    assert_eq!(m.k_dim(), 6);
    assert!(verify_relations(&m).passed(), "{:?}", verify_relations(&m));
    assert!(is_simple_finite(&m, &Budget::default()).unwrap().simple);
    // c^2 + 1 = (c + 1)^2.
    let bad = poly(info.field(), &["1", "0", "1"]);
    assert!(matches!(build_s_char_p(&info, &list[0], Some(&bad), &Budget::default()), Err(Error::NotMaximal(_))));
}

#[test]
fn dimension_p() {
    for p in [2u64, 3, 5] {
        let f = fp(p);
        for a in 0..p {
            let info = orbit(&f, &[&[&(-(a as i64)).to_string(), "1"]]);
            for d in classify_simples(&info) {
                let SimpleDescriptor::CharP { gamma, .. } = &d else { panic!() };
                let ns: Vec<Option<_>> = if gamma.is_empty() {
                    vec![None]
                } else {
                    (1..p).map(|l| Some(poly(info.field(), &[&(-(l as i64)).to_string(), "1"]))).collect()
                };
                for n in ns {
                    let m = build_s_char_p(&info, &d, n.as_ref(), &Budget::default()).unwrap();
                    assert_eq!(m.k_dim(), p as usize);
                    assert!(verify_relations(&m).passed());
                }
            }
        }
    }
}

#[test]
fn char_p_json_round_trip() {
    use weylmod::weightmod::json::{module_from_json, module_to_json};
    let info = orbit(&fp(2), &[&["1", "1", "1"]]);
    let d = classify_simples(&info).remove(0);
    let n = poly(info.field(), &["1", "1", "0", "1"]);
    let m = build_s_char_p(&info, &d, Some(&n), &Budget::default()).unwrap();
    let j = module_to_json(&m);
    let back = module_from_json(&j, &Budget::default()).unwrap();
    assert_eq!(module_to_json(&back), j);
    assert!(verify_relations(&back).passed());
    assert!(is_simple_finite(&back, &Budget::default()).unwrap().simple);
}
