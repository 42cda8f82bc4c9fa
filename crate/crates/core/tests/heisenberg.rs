use weylmod::heisenberg::*;
use weylmod::weightmod::verify_relations;
use weylmod::Budget;

#[test]
fn small_counts() {
    assert_eq!(graded_count(0, 2, 1), 1);
    assert_eq!(graded_count(0, 2, 2), 3);
    assert_eq!(graded_count(1, 1, 1), 1);
}

#[test]
fn dp_matches_enumeration() {
    for i in -4..=4 {
        for l in 0..=4 {
            for b in 0..=4 {
                let n = graded_basis(i, l, b);
                assert_eq!(graded_count(i, l, b), n.len() as u128, "i={} L={} B={}", i, l, b);
                assert!(n.iter().all(|g| degree(g) == -i));
            }
        }
    }
}

#[test]
fn brackets_on_radius_two() {
    let info = default_orbit(&Budget::default()).unwrap();
    let m = build_window(&info, 4, 2).unwrap();
    let r = heisenberg_action_check(&m);
    assert!(r.passed(), "{:?}", r);
    assert!(r.brackets_checked > 0);
    assert_eq!(r.central_charge.as_deref(), Some("1"));
    assert!(verify_relations(&m).passed());
}
