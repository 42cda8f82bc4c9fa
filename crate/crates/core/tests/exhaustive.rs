mod common;

use std::collections::{BTreeSet, VecDeque};

use common::*;
use weylmod::field::{is_irreducible, Field, Irreducibility, IrreducibilityBudget, Poly, Value};
use weylmod::orbit::{canonical_skeleton_rep, region_of, OrbitInfo, SepMaxIdeal, ShiftVector};
use weylmod::skeleton::{hom_space_a, objects_a, SkelMorphismA};
use weylmod::weightmod::Window;

fn ext(base: &Field, coeffs: &[i64]) -> Field {
    Field::extension(base, &Poly::from_i64(base, coeffs), true).unwrap()
}

fn gf4() -> Field {
    ext(&fp(2), &[1, 1, 1])
}

fn gf8() -> Field {
    ext(&fp(2), &[1, 1, 0, 1])
}

fn gf9() -> Field {
    ext(&fp(3), &[1, 0, 1])
}

/// Finite fields of order at most 64, towers included.
fn small_fields() -> Vec<Field> {
    let f4 = gf4();
    let w = f4.generator().unwrap();
    // y^2 + y + w over GF(4).
    let gf16 = Field::extension(&f4, &Poly::new(&f4, vec![w, f4.one(), f4.one()]), true).unwrap();
    let f8 = gf8();
    let gf64 = Field::extension(&f8, &Poly::from_i64(&f8, &[1, 1, 1]), true).unwrap();
    vec![fp(2), fp(3), f4, fp(5), fp(7), f8, gf9(), gf16, ext(&fp(5), &[2, 0, 1]), ext(&fp(3), &[1, 2, 0, 1]), gf64]
}

#[test]
fn field_axioms() {
    for f in small_fields() {
        let el = f.elements().unwrap();
        assert_eq!(el.len() as u128, f.order().unwrap());
        let distinct: BTreeSet<String> = el.iter().map(|x| f.fmt_value(x)).collect();
        assert_eq!(distinct.len(), el.len(), "{}", f);
        for x in &el {
            if !f.is_zero(x) {
                assert!(f.is_one(&f.mul(x, &f.inv(x).unwrap())), "{} {}", f, f.fmt_value(x));
            }
        }
        for a in &el {
            for b in &el {
                let ab = f.add(a, b);
                for c in &el {
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    assert_eq!(f.mul(&ab, c), f.add(&f.mul(a, c), &f.mul(b, c)));
                }
            }
        }
    }
}

fn monics(f: &Field, deg: usize) -> Vec<Poly> {
    let el = f.elements().unwrap();
    let q = el.len();
    (0..q.pow(deg as u32))
        .map(|mut code| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(el[code % q].clone());
                code /= q;
            }
            c.push(f.one());
            Poly::new(f, c)
        })
        .collect()
}

/// Reducible iff some monic factor of degree at most half divides.
fn has_factor(f: &Poly, divisors: &[Vec<Poly>]) -> bool {
    let d = f.degree().unwrap();
    (1..=d / 2).any(|k| divisors[k].iter().any(|g| f.divmod(g).unwrap().1.degree().is_none()))
}

#[test]
fn irreducibility_matches_factor_search() {
    let budget = IrreducibilityBudget::default();
    for f in [fp(2), fp(3), gf4(), fp(5), fp(7), gf8(), gf9()] {
        let divisors: Vec<Vec<Poly>> = (0..=2).map(|k| monics(&f, k)).collect();
        for deg in 1..=4 {
            for p in monics(&f, deg) {
                let want = if has_factor(&p, &divisors) { Irreducibility::Reducible } else { Irreducibility::Irreducible };
                assert_eq!(is_irreducible(&p, &budget).unwrap(), want, "{} over {}", p, f);
            }
        }
    }
}

fn elements_of(f: &Field) -> Vec<Value> {
    f.elements().unwrap()
}

/// Orbit of `m` under the unit shifts, by breadth-first search.
fn orbit_by_search(m: &SepMaxIdeal, n: usize) -> usize {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([m.clone()]);
    seen.insert(format!("{:?}", m.generators()));
    while let Some(x) = queue.pop_front() {
        for i in 1..=n {
            let y = x.sigma_apply(&ShiftVector::unit(i)).unwrap();
            if seen.insert(format!("{:?}", y.generators())) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn idx_next(idx: &mut [usize], count: usize) {
    for k in idx.iter_mut() {
        *k += 1;
        if *k < count {
            return;
        }
        *k = 0;
    }
}

#[test]
fn char_p_orbit_sizes() {
    let budget = IrreducibilityBudget::default();
    for p in [2u64, 3, 5] {
        let f = fp(p);
        let el = elements_of(&f);
        // Generators: every linear t - a, plus one irreducible quadratic.
        let quad = (0..p as i64)
            .flat_map(|b| (0..p as i64).map(move |c| [c, b, 1]))
            .map(|c| Poly::from_i64(&f, &c))
            .find(|g| is_irreducible(g, &budget).unwrap() == Irreducibility::Irreducible)
            .unwrap();
        let mut gens: Vec<Poly> = el.iter().map(|a| Poly::linear(&f, a)).collect();
        gens.push(quad);
        for n in 1..=3usize {
            let count = if p == 5 && n == 3 { 3 } else { gens.len() };
            let mut idx = vec![0usize; n];
            loop {
                let m = SepMaxIdeal::finite(&f, idx.iter().map(|&k| gens[k].clone()).collect()).unwrap();
                // Repeating the quadratic splits it over the residue tower.
                let Ok(info) = weylmod::orbit::orbit_info(&m, &budget) else {
                    assert!(idx.iter().filter(|&&k| k == gens.len() - 1).count() > 1);
                    idx_next(&mut idx, count);
                    if idx.iter().all(|&k| k == 0) {
                        break;
                    }
                    continue;
                };
                let product: u64 = (1..=n).map(|i| info.period(i).unwrap()).product();
                let points = info.orbit_points().unwrap().len() as u64;
                assert_eq!(points, product, "{:?}", m.generators());
                assert_eq!(orbit_by_search(&m, n) as u64, product, "{:?}", m.generators());
                idx_next(&mut idx, count);
                if idx.iter().all(|&k| k == 0) {
                    break;
                }
            }
        }
    }
}

fn regions_partition(info: &OrbitInfo, radius: i64) {
    let w = Window::boxed(info, radius).unwrap();
    let mut used = BTreeSet::new();
    for g in &w.weights {
        let r = region_of(info, g);
        assert!(info.skeleton.contains(&r), "{} maps to {}", g, r);
        assert_eq!(canonical_skeleton_rep(info, g), r);
        // The representative lies in its own region.
        assert_eq!(region_of(info, &r), r);
        used.insert(r);
    }
    assert_eq!(used.len(), info.skeleton.len());
}

#[test]
fn regions_partition_windows() {
    let q = q();
    regions_partition(&orbit(&q, &[&["0", "1"]]), 4);
    regions_partition(&orbit(&q, &[&["-3", "1"], &["-1/2", "1"]]), 3);
    regions_partition(&orbit(&q, &[&["0", "1"], &["2", "1"]]), 3);
    regions_partition(&orbit(&q, &[&["0", "1"], &["0", "1"], &["1", "0", "1"]]), 2);
    regions_partition(&orbit(&q, &[&["0", "1"], &["1", "1"], &["-2", "1"]]), 2);
}

#[test]
fn skeleton_composition_is_associative() {
    let f = q();
    for n in 0..=3usize {
        let objs = objects_a(&(1..=n).collect());
        let hom = |a: &ShiftVector, b: &ShiftVector| -> SkelMorphismA { hom_space_a(&f, a, b).unwrap().remove(0) };
        for a in &objs {
            for b in &objs {
                let u = hom(a, b);
                for c in &objs {
                    let v = hom(b, c);
                    let vu = v.compose(&u).unwrap();
                    for d in &objs {
                        let w = hom(c, d);
                        assert_eq!(w.compose(&v).unwrap().compose(&u).unwrap(), w.compose(&vu).unwrap());
                    }
                }
            }
        }
    }
}
