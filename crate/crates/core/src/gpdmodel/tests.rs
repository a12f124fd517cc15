use super::*;
use crate::coherator::{load_script, stdlib, stdlib_script, Stdlib};
use crate::globe::{realize_sum, Table};
use crate::group::FiniteGroup;
use crate::homotopy::{pi0, pi_n, weak_equiv};

fn lib(n: usize) -> Stdlib {
    stdlib(n).expect("library loads")
}

fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

fn based(g: FiniteGroupoid, base: usize) -> BasedGroupoid {
    BasedGroupoid { groupoid: g, base }
}

#[test]
fn the_validator_names_the_failing_law() {
    // One object, two arrows, composition constant at arrow 1: no identity.
    let err = FiniteGroupoid::new("bad", 1, vec![(0, 0); 2], vec![vec![Some(1); 2]; 2], vec![0, 1]).unwrap_err();
    assert!(err.to_string().contains("identity"), "{err}");
    let err = FiniteGroupoid::new("bad", 2, vec![(0, 1)], vec![vec![None]], vec![0]).unwrap_err();
    assert!(err.to_string().contains("identity") || err.to_string().contains("inverse"), "{err}");
    let err = FiniteGroupoid::new("bad", 1, vec![(0, 0)], vec![vec![None]], vec![0]).unwrap_err();
    assert!(err.to_string().contains("undefined"), "{err}");
    // Z3 with a broken inverse table.
    let g = FiniteGroupoid::from_group(&z(3));
    let mut file = g.to_file();
    file.inverse = vec![0, 1, 2];
    let err = FiniteGroupoid::parse_json(&serde_json::to_string(&file).unwrap()).unwrap_err();
    assert!(err.to_string().contains("inverse law"), "{err}");
}

#[test]
fn groupoid_files_round_trip() {
    let g = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::from_group(&z(2)), FiniteGroupoid::codiscrete(2)]);
    assert_eq!(FiniteGroupoid::parse_json(&g.to_json()).unwrap(), g);
    let err = FiniteGroupoid::parse_json("{\n  \"objects\": 1,\n  \"arrows\": [[0, 0]],\n  \"compose\": [[0]],\n  \"inverse\": [0,\n}")
        .unwrap_err();
    assert!(err.to_string().contains("line 6"), "{err}");
}

#[test]
fn the_globe_diagram_is_cofibrant_and_contractible() {
    let d = globe_diagram(4).unwrap();
    assert_eq!(d.spheres[1].objects, 2);
    assert!(d.spheres[1].edges.is_empty());
    assert!(d.boundaries[1].is_injective_on_objects());
    // S(1): two objects joined by two parallel edges.
    let s1 = &d.spheres[2];
    assert_eq!((s1.objects, s1.edges.len()), (2, 2));
    assert_eq!(s1.loop_rank(0), 1);
    assert!(s1.free_groupoid().is_none());
    assert_eq!(d.boundaries[2].objects, vec![0, 1]);
    for n in 3..=4 {
        assert_eq!(d.spheres[n].edges.len(), 1);
        assert!(d.spheres[n].free_groupoid().unwrap().is_contractible());
    }
    let p1 = &d.collapses[1];
    assert!(p1.is_equivalence(&d.disks[1].free_groupoid().unwrap(), &d.disks[0].free_groupoid().unwrap()));
    let p2 = &d.collapses[2];
    assert!(p2.is_equivalence(&d.disks[2].free_groupoid().unwrap(), &d.disks[1].free_groupoid().unwrap()));
}

/// Reduced words in the two edges of S(1) that start and end at object 0.
/// A free group of rank r has 2r(2r-1)^(k-1) reduced words of length k.
fn reduced_loops(g: &Graph, base: usize, len: usize) -> usize {
    // Letters are (edge, forward).
    fn go(g: &Graph, at: usize, base: usize, last: Option<(usize, bool)>, left: usize) -> usize {
        if left == 0 {
            return usize::from(at == base);
        }
        let mut n = 0;
        for (e, &(s, t)) in g.edges.iter().enumerate() {
            for fwd in [true, false] {
                let (from, to) = if fwd { (s, t) } else { (t, s) };
                if from != at || last == Some((e, !fwd)) {
                    continue;
                }
                n += go(g, to, base, Some((e, fwd)), left - 1);
            }
        }
        n
    }
    go(g, base, base, None, len)
}

#[test]
fn the_one_sphere_has_infinite_cyclic_vertex_groups() {
    let d = globe_diagram(2).unwrap();
    let s1 = &d.spheres[2];
    // Loops of length 2k at a vertex: the k-th power of the generator and of its inverse.
    for k in 1..=5 {
        assert_eq!(reduced_loops(s1, 0, 2 * k), 2);
        assert_eq!(reduced_loops(s1, 0, 2 * k - 1), 0);
    }
}

fn tables(width: usize, dim: usize) -> Vec<Table> {
    let mut out = Vec::new();
    for w in 1..=width {
        let uppers = (0..w).fold(vec![vec![]], |acc: Vec<Vec<usize>>, _| {
            acc.into_iter().flat_map(|p| (0..=dim).map(move |d| [p.clone(), vec![d]].concat())).collect()
        });
        let lowers = (1..w).fold(vec![vec![]], |acc: Vec<Vec<usize>>, _| {
            acc.into_iter().flat_map(|p| (0..dim).map(move |d| [p.clone(), vec![d]].concat())).collect()
        });
        for u in &uppers {
            for l in &lowers {
                if let Ok(t) = Table::new(u.clone(), l.clone()) {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[test]
fn every_small_sum_is_thin_and_contractible() {
    let all = tables(4, 4);
    assert!(all.len() > 100);
    for t in &all {
        let s = sum_groupoid(t).unwrap();
        assert!(s.groupoid.is_thin() && s.groupoid.is_contractible(), "{t}");
        // Oracle: one object per run of legs between 0-dimensional gluings,
        // plus one, unless the sum is a point.
        let zeros = t.lower().iter().filter(|&&g| g == 0).count();
        let expected = if t.dimension() == 0 { 1 } else { zeros + 2 };
        assert_eq!(s.groupoid.objects(), expected, "{t}");
    }
}

#[test]
fn liftings_are_total_and_unique() {
    let l = lib(3);
    let images = interpret_tower(&l.tower).unwrap();
    for (f, g) in sample_admissible_pairs(&l.tower, 7, 200) {
        let sum = sum_groupoid(f.target()).unwrap();
        let (fi, gi) = (interpret_term(&l.tower, &images, &f).unwrap(), interpret_term(&l.tower, &images, &g).unwrap());
        let n = f.source_dim();
        let h = lifting_oracle(&fi, &gi, n, &sum).unwrap();
        assert_eq!(all_fillers(&fi, &gi, n, &sum), vec![h]);
    }
}

#[test]
fn composition_lifts_to_the_composite_arrow() {
    let l = lib(2);
    let images = interpret_tower(&l.tower).unwrap();
    let comp = &images[l.bundle.comp(1, 0).unwrap().index()];
    // In D1 +_0 D1 the second leg runs 2 → 0 and the first 0 → 1.
    let sum = sum_groupoid(&Table::new(vec![1, 1], vec![0]).unwrap()).unwrap();
    assert_eq!(sum.legs[1].objects, vec![2, 0]);
    assert_eq!(sum.legs[0].objects, vec![0, 1]);
    assert_eq!(*comp, vec![2, 1]);
    let unit = &images[l.bundle.unit(0).unwrap().index()];
    assert_eq!(*unit, vec![0, 0]);
    let x = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
    check_composition(&x, &l.tower, &l.bundle).unwrap();
}

#[test]
fn tower_interpretation_is_deterministic_and_name_independent() {
    let l = lib(3);
    let a = interpret_tower(&l.tower).unwrap();
    assert_eq!(a, interpret_tower(&l.tower).unwrap());
    assert_eq!(a.len(), l.tower.len());
    let reread = load_script(&stdlib_script(3)).unwrap();
    let b = interpret_tower(&reread).unwrap();
    for id in l.tower.ids() {
        let other = reread.lookup(&l.tower.gen(id).name).unwrap();
        assert_eq!(a[id.index()], b[other.index()]);
    }
}

#[test]
fn fundamental_models_of_small_groupoids() {
    let l = lib(3);
    let point = fundamental(&FiniteGroupoid::point(), &l.tower).unwrap();
    assert_eq!((point.count(0), point.count(1), point.count(3)), (1, 1, 1));
    assert!(point.check(&l.tower).is_clean());

    let c2 = fundamental(&FiniteGroupoid::codiscrete(2), &l.tower).unwrap();
    assert!(c2.check(&l.tower).is_clean());
    assert_eq!(pi0(&c2).unwrap().len(), 1);
    for x in 0..2 {
        assert_eq!(pi_n(&c2, &l.tower, &l.bundle, 1, x).unwrap().order(), 1);
        assert_eq!(pi_n(&c2, &l.tower, &l.bundle, 2, x).unwrap().order(), 1);
    }

    let z4 = fundamental(&FiniteGroupoid::from_group(&z(4)), &l.tower).unwrap();
    assert!(z4.check(&l.tower).is_clean());
    assert_eq!(pi0(&z4).unwrap().len(), 1);
    assert!(pi_n(&z4, &l.tower, &l.bundle, 1, 0).unwrap().is_isomorphic(&z(4)));
    assert_eq!(pi_n(&z4, &l.tower, &l.bundle, 2, 0).unwrap().order(), 1);
}

#[test]
fn path_objects() {
    let p = path_object(&FiniteGroupoid::point()).unwrap();
    assert_eq!((p.path.objects(), p.path.arrow_count()), (1, 1));
    let x = FiniteGroupoid::from_group(&z(2));
    let p = path_object(&x).unwrap();
    // Oracle: commutative squares v f = f' u over all choices of f, f', u, v.
    let mut squares = 0;
    for f in 0..2 {
        for f2 in 0..2 {
            for u in 0..2 {
                for v in 0..2 {
                    squares += usize::from(x.compose(v, f) == x.compose(f2, u));
                }
            }
        }
    }
    assert_eq!(p.path.objects(), 2);
    assert_eq!(p.path.arrow_count(), squares);
    for g in corpus() {
        path_object(&g).unwrap().validate(&g).unwrap();
    }
}

#[test]
fn loop_objects_and_the_fundamental_group() {
    let l = lib(2);
    let d = globe_diagram(2).unwrap();
    let images = interpret_tower(&l.tower).unwrap();
    let comp = images[l.bundle.comp(1, 0).unwrap().index()].clone();

    let z3 = FiniteGroupoid::from_group(&z(3));
    let omega = loop_object(&based(z3.clone(), 0)).unwrap();
    assert_eq!(omega.groupoid.objects(), 3);
    assert_eq!(omega.groupoid.arrow_count(), 3);
    assert_eq!(omega.groupoid.iso_classes(), 3);
    let q = quillen_pi1(&based(z3.clone(), 0), &d, &comp).unwrap();
    assert!(q.via_homotopies.is_isomorphic(&z(3)));
    assert!(q.via_loops.is_isomorphic(&z(3)));
    assert_eq!(quillen_pi(&based(z3, 0), 2).unwrap().order(), 1);

    for base in 0..2 {
        let q = quillen_pi1(&based(FiniteGroupoid::codiscrete(2), base), &d, &comp).unwrap();
        assert_eq!(q.via_homotopies.order(), 1);
    }
    let s3 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
    for n in 2..=4 {
        assert_eq!(quillen_pi(&based(s3.clone(), 0), n).unwrap().order(), 1);
    }
}

#[test]
fn comparison_on_a_disconnected_groupoid() {
    let l = lib(3);
    let x = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::from_group(&z(2)), FiniteGroupoid::from_group(&z(3))]);
    let c = compare(&x, &l.tower, &l.bundle).unwrap();
    assert_eq!((c.pi0, c.iso_classes), (2, 2));
    assert!(c.objects[0].pi1.is_isomorphic(&z(2)));
    assert!(c.objects[1].pi1.is_isomorphic(&z(3)));
    assert!(c.objects.iter().all(|o| o.higher.iter().all(|&(_, k)| k == 1)));
}

#[test]
fn the_corpus_is_complete() {
    // Oracle: connected pieces are one-object groups of order at most eight
    // (fourteen of them) or two-object groupoids with vertex group of order
    // at most two. Count multisets of up to three pieces, `p` marking an
    // empty slot.
    let orders = [1, 2, 3, 4, 5, 6, 7, 8, 4, 6, 8, 8, 8, 8];
    let mut pieces: Vec<(usize, usize)> = orders.iter().map(|&o| (1, o)).collect();
    pieces.extend([(2, 4), (2, 8)]);
    let p = pieces.len();
    let mut expected = 0;
    for a in 0..p {
        for b in a..=p {
            for c in b..=p {
                let chosen: Vec<_> = [a, b, c].into_iter().filter(|&k| k < p).collect();
                let objects: usize = chosen.iter().map(|&k| pieces[k].0).sum();
                let arrows: usize = chosen.iter().map(|&k| pieces[k].1).sum();
                expected += usize::from(objects <= 3 && arrows <= 8);
            }
        }
    }
    let all = corpus();
    // Two named examples follow the exhaustive part.
    assert_eq!(all.len(), expected + 2);
    assert!(all[..expected].iter().all(|g| g.objects() <= 3 && g.arrow_count() <= 8));
}

#[test]
fn charac_we_on_the_functor_suite() {
    let l = lib(3);
    for s in functor_suite() {
        let (mx, my) = (fundamental(&s.source, &l.tower).unwrap(), fundamental(&s.target, &l.tower).unwrap());
        let f = fundamental_morphism(&s.functor, &mx, &my, &l.tower).unwrap();
        let r = weak_equiv(&f, &l.tower, &l.bundle).unwrap();
        assert_eq!(r.conditions, [s.is_equivalence(); 4], "{}", s.name);
        check_naturality(&s.functor, &s.source, &s.target, &l.tower, &l.bundle).unwrap();
    }
}

#[test]
fn cells_of_sums_match_the_realization() {
    let t = Table::new(vec![2, 1, 2], vec![0, 0]).unwrap();
    let s = sum_groupoid(&t).unwrap();
    let real = realize_sum(&t);
    for c in 0..real.carrier.count(1) {
        let m = s.cell(1, c);
        assert_eq!(s.cell(0, real.carrier.src(1, c)), vec![m[0]]);
        assert_eq!(s.cell(0, real.carrier.tgt(1, c)), vec![m[1]]);
    }
}
