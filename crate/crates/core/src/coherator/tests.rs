use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dsl::{elaborate_term, parse_term};
use super::expr::{normalize, random_expr, reduce};
use super::*;
use crate::error::Error;
use crate::globe::{Side, Table, Word};

fn table(s: &str) -> Table {
    s.parse().unwrap()
}

/// Elaborates `text` as a term `D_n → target`.
fn term(tower: &Tower, text: &str, n: usize, target: &str) -> Term {
    elaborate_term(tower, &parse_term(text).unwrap(), n, &table(target)).unwrap()
}

fn gen<'a>(tower: &'a Tower, name: &str) -> &'a LiftGenerator {
    tower.gen(tower.lookup(name).unwrap())
}

fn lib(n: usize) -> Stdlib {
    stdlib(n).unwrap()
}

#[test]
fn library_sizes_and_levels() {
    let s = lib(3);
    assert_eq!(s.tower.len(), 28);
    let level = |name: &str| gen(&s.tower, name).level;
    for name in ["comp_1_0", "comp_2_1", "comp_3_2", "unit_0", "unit_1", "unit_2", "inv_1_0", "inv_2_1", "inv_3_2"] {
        assert_eq!(level(name), 1, "{name}");
    }
    for name in ["comp_2_0", "comp_3_1", "inv_2_0", "inv_3_1", "assoc_1", "assoc_2", "runit_1", "lunit_2", "rinv_1", "linv_2"] {
        assert_eq!(level(name), 2, "{name}");
    }
    for name in ["comp_3_0", "inv_3_0", "pentagon_1", "exchange_2", "triangle_1"] {
        assert_eq!(level(name), 3, "{name}");
    }
    assert_eq!(s.coherences.pentagon.keys().copied().collect::<Vec<_>>(), vec![1]);
    assert_eq!(s.coherences.exchange.keys().copied().collect::<Vec<_>>(), vec![2]);
}

#[test]
fn composition_boundaries() {
    let s = lib(3);
    let t = &s.tower;
    let c = gen(t, "comp_1_0");
    assert_eq!(t.glob_source(&t.app(t.lookup("comp_1_0").unwrap())).unwrap(), c.src);
    assert_eq!(c.src, term(t, "eps2 * s1", 0, "D1 +0 D1"));
    assert_eq!(c.tgt, term(t, "eps1 * t1", 0, "D1 +0 D1"));
    let k = t.app(t.lookup("unit_0").unwrap());
    let id0 = t.cell(&Table::disk(0), 0, 0).unwrap();
    assert_eq!(t.glob_source(&k).unwrap(), id0);
    assert_eq!(t.glob_target(&k).unwrap(), id0);
    let w = t.app(t.lookup("inv_1_0").unwrap());
    assert_eq!(t.glob_source(&w).unwrap(), t.word(&Word::face(Side::Tgt, 0, 1)));
    assert_eq!(t.glob_target(&w).unwrap(), t.word(&Word::face(Side::Src, 0, 1)));
    assert!(t.glob_source(&id0).is_err());
}

#[test]
fn parallel_examples() {
    let t = Tower::new(3);
    let f = term(&t, "eps2 * s1", 0, "D1 +0 D1");
    let g = term(&t, "eps1 * t1", 0, "D1 +0 D1");
    assert!(t.parallel(&f, &g).unwrap());
    let s1 = term(&t, "s1", 0, "D1");
    let t1 = term(&t, "t1", 0, "D1");
    assert!(t.parallel(&s1, &s1).unwrap());
    assert!(t.parallel(&s1, &t1).unwrap());
    assert!(t.parallel(&s1, &f).is_err());
}

#[test]
fn admissibility_verdicts() {
    let t = Tower::new(3);
    for i in 1..=3 {
        let target = format!("D{i} +{} D{i}", i - 1);
        let f = term(&t, &format!("eps2 * s{i}"), i - 1, &target);
        let g = term(&t, &format!("eps1 * t{i}"), i - 1, &target);
        assert!(t.admissible(&f, &g).is_admissible());
    }
    let f = term(&t, "s2 * s1", 0, "D2");
    let g = term(&t, "t2 * t1", 0, "D2");
    let v = t.admissible(&f, &g);
    assert_eq!(v, Verdict::DimensionTooHigh { target_dim: 2, n: 0 });
    assert!(v.to_string().contains("dimension of target exceeds n+1"));
    // (σ₂, τ₂) is parallel: both boundaries are the iterated faces of D2.
    let a = term(&t, "s2", 1, "D2");
    let b = term(&t, "t2", 1, "D2");
    assert!(t.admissible(&a, &b).is_admissible());
}

#[test]
fn non_parallel_pairs_are_reported() {
    let t = Tower::new(3);
    let f = term(&t, "eps1", 1, "D1 +0 D1");
    let g = term(&t, "eps2", 1, "D1 +0 D1");
    assert_eq!(t.admissible(&f, &g), Verdict::NotParallel(Side::Src));
    let mut t2 = t.clone();
    assert!(matches!(t2.declare_lift("bad", f, g), Err(Error::Inadmissible(_))));
}

#[test]
fn declaration_errors() {
    let mut t = Tower::new(1);
    let f = term(&t, "eps2 * s1", 0, "D1 +0 D1");
    let g = term(&t, "eps1 * t1", 0, "D1 +0 D1");
    t.declare_lift("c", f.clone(), g.clone()).unwrap();
    assert_eq!(t.declare_lift("c", f.clone(), g.clone()), Err(Error::DuplicateName("c".into())));
    let a = term(&t, "s1", 0, "D1");
    let b = term(&t, "t1", 0, "D1");
    let id1 = t.cell(&Table::disk(1), 1, 0).unwrap();
    t.declare_lift("e", a, b).unwrap();
    assert_eq!(t.declare_lift("too_high", id1.clone(), id1), Err(Error::Truncation { dim: 2, truncation: 1 }));
}

#[test]
fn codimension_two_levels() {
    let s = lib(4);
    assert_eq!(gen(&s.tower, "comp_1_0").level, 1);
    assert_eq!(gen(&s.tower, "comp_2_0").level, 2);
    assert_eq!(gen(&s.tower, "pentagon_1").level, 3);
    assert_eq!(gen(&s.tower, "comp_4_0").level, 4);
}

/// For every generator, `h ∘ σ` and `h ∘ τ` reduce to its declared pair, by
/// both the big-step builders and the small-step rules.
#[test]
fn lifting_equations_hold_everywhere() {
    let s = lib(4);
    let t = &s.tower;
    for id in t.ids() {
        let h = t.gen(id);
        let app = t.app(id);
        assert_eq!(t.glob_source(&app).unwrap(), h.src, "{}", h.name);
        assert_eq!(t.glob_target(&app).unwrap(), h.tgt, "{}", h.name);
        for side in [Side::Src, Side::Tgt] {
            let face = t.word(&Word::face(side, h.source_dim - 1, h.source_dim));
            let e = Expr::comp(Expr::from_term(&app), Expr::from_term(&face));
            let want = if side == Side::Src { &h.src } else { &h.tgt };
            for strategy in [Strategy::LeftmostInnermost, Strategy::RightmostOutermost] {
                let r = reduce(t, &e, strategy, 10_000).unwrap();
                assert_eq!(r.normal.to_term().as_ref(), Some(want), "{}", h.name);
            }
        }
    }
}

#[test]
fn colimit_projection_rule() {
    let s = lib(2);
    let t = &s.tower;
    let pair = table("D1 +0 D1");
    let three = table("D1 +0 D1 +0 D1");
    let c = t.app(t.lookup("comp_1_0").unwrap());
    let tail = t.tuple(&pair, vec![t.eps(&three, 2).unwrap(), t.eps(&three, 3).unwrap()]).unwrap();
    let y = t.compose_term(&tail, &c).unwrap();
    let g = t.tuple(&pair, vec![t.eps(&three, 1).unwrap(), y.clone()]).unwrap();
    // [g1; g2] ∘ (ε₂ ∘ σ₁) = g2 ∘ σ₁ = ε₃ ∘ σ₁.
    let e2s1 = term(t, "eps2 * s1", 0, "D1 +0 D1");
    let want = t.leg_word(&three, 3, &Word::face(Side::Src, 0, 1)).unwrap();
    assert_eq!(t.compose_term(&g, &e2s1).unwrap(), want);
    assert_eq!(t.precompose_word(&y, &Word::face(Side::Src, 0, 1)).unwrap(), want);
    let e = Expr::comp(Expr::from_morph(&g), Expr::from_term(&e2s1));
    let r = reduce(t, &e, Strategy::RightmostOutermost, 100).unwrap();
    assert_eq!(r.normal.to_term(), Some(want));
}

// ----- the displayed derivations -----

fn word_term(t: &Tower, side: Side, from: usize, to: usize) -> Term {
    t.word(&Word::face(side, from, to))
}

#[test]
fn codimension_one_compositions_are_parallel() {
    let s = lib(4);
    let t = &s.tower;
    for i in 2..=4 {
        let target = table(&format!("D{i} +{} D{i}", i - 1));
        let h = gen(t, &format!("comp_{i}_{}", i - 1));
        let face = |k, side| t.leg_word(&target, k, &Word::face(side, i - 2, i)).unwrap();
        // ε₂σσ = ε₂τσ = ε₁σσ = ε₁τσ, and dually for targets.
        let lower_src = face(2, Side::Src);
        assert_eq!(lower_src, face(1, Side::Src));
        assert_eq!(t.glob_source(&h.src).unwrap(), lower_src);
        assert_eq!(t.glob_source(&h.tgt).unwrap(), lower_src);
        assert_eq!(t.glob_target(&h.src).unwrap(), face(1, Side::Tgt));
        assert_eq!(t.glob_target(&h.tgt).unwrap(), face(2, Side::Tgt));
    }
}

#[test]
fn codimension_two_derivations() {
    let s = lib(4);
    let t = &s.tower;
    for i in 2..=4 {
        let target = table(&format!("D{i} +{} D{i}", i - 2));
        let h = gen(t, &format!("comp_{i}_{}", i - 2));
        let e2ss = t.leg_word(&target, 2, &Word::face(Side::Src, i - 2, i)).unwrap();
        let e1tt = t.leg_word(&target, 1, &Word::face(Side::Tgt, i - 2, i)).unwrap();
        for b in [&h.src, &h.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), e2ss);
            assert_eq!(t.glob_target(b).unwrap(), e1tt);
        }
        let w = gen(t, &format!("inv_{i}_{}", i - 2));
        for b in [&w.src, &w.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), word_term(t, Side::Tgt, i - 2, i));
            assert_eq!(t.glob_target(b).unwrap(), word_term(t, Side::Src, i - 2, i));
        }
    }
}

#[test]
fn associativity_derivation() {
    let s = lib(4);
    let t = &s.tower;
    for i in 1..=3 {
        let target = format!("D{i} +{0} D{i} +{0} D{i}", i - 1);
        let h = gen(t, &format!("assoc_{i}"));
        let e3s = term(t, &format!("eps3 * s{i}"), i - 1, &target);
        let e1t = term(t, &format!("eps1 * t{i}"), i - 1, &target);
        for b in [&h.src, &h.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), e3s);
            assert_eq!(t.glob_target(b).unwrap(), e1t);
        }
    }
}

#[test]
fn unit_and_inverse_constraint_derivations() {
    let s = lib(4);
    let t = &s.tower;
    for i in 1..=3 {
        let src = word_term(t, Side::Src, i - 1, i);
        let tgt = word_term(t, Side::Tgt, i - 1, i);
        for name in ["runit", "lunit"] {
            let h = gen(t, &format!("{name}_{i}"));
            for b in [&h.src, &h.tgt] {
                assert_eq!(t.glob_source(b).unwrap(), src, "{name}_{i}");
                assert_eq!(t.glob_target(b).unwrap(), tgt, "{name}_{i}");
            }
        }
        let d = gen(t, &format!("rinv_{i}"));
        for b in [&d.src, &d.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), tgt);
            assert_eq!(t.glob_target(b).unwrap(), tgt);
        }
        let g = gen(t, &format!("linv_{i}"));
        for b in [&g.src, &g.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), src);
            assert_eq!(t.glob_target(b).unwrap(), src);
        }
    }
}

#[test]
fn pentagon_derivation() {
    let s = lib(4);
    let t = &s.tower;
    for i in 1..=2 {
        let four = format!("D{i} +{0} D{i} +{0} D{i} +{0} D{i}", i - 1);
        let c = format!("comp_{i}_{}", i - 1);
        let h = gen(t, &format!("pentagon_{i}"));
        assert!(t.admissible(&h.src, &h.tgt).is_admissible());
        let left = term(t, &format!("[[eps1; eps2] * {c}; eps3; eps4] * [[eps1; eps2] * {c}; eps3] * {c}"), i, &four);
        let right = term(t, &format!("[eps1; eps2; [eps3; eps4] * {c}] * [eps1; [eps2; eps3] * {c}] * {c}"), i, &four);
        for b in [&h.src, &h.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), left);
            assert_eq!(t.glob_target(b).unwrap(), right);
        }
    }
}

#[test]
fn exchange_derivation() {
    let s = lib(4);
    let t = &s.tower;
    for i in 2..=3 {
        let target = format!("D{i} +{} D{i} +{} D{i} +{} D{i}", i - 1, i - 2, i - 1);
        let lower = format!("comp_{}_{}", i - 1, i - 2);
        let h = gen(t, &format!("exchange_{i}"));
        let src = term(t, &format!("[eps2 * s{i}; eps4 * s{i}] * {lower}"), i - 1, &target);
        let tgt = term(t, &format!("[eps1 * t{i}; eps3 * t{i}] * {lower}"), i - 1, &target);
        for b in [&h.src, &h.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), src);
            assert_eq!(t.glob_target(b).unwrap(), tgt);
        }
        // The target pair is the vertical composite of two horizontal ones.
        let ch = format!("comp_{i}_{}", i - 2);
        let cv = format!("comp_{i}_{}", i - 1);
        assert_eq!(h.tgt, term(t, &format!("[[eps1; eps2] * {cv}; [eps3; eps4] * {cv}] * {ch}"), i, &target));
    }
}

#[test]
fn triangle_derivation() {
    let s = lib(4);
    let t = &s.tower;
    for i in 1..=2 {
        let two = format!("D{i} +{} D{i}", i - 1);
        let c = format!("comp_{i}_{}", i - 1);
        let h = gen(t, &format!("triangle_{i}"));
        let src = term(t, &format!("[eps1 * [id; s{i} * unit_{}] * {c}; eps2] * {c}", i - 1), i, &two);
        let tgt = term(t, &c, i, &two);
        for b in [&h.src, &h.tgt] {
            assert_eq!(t.glob_source(b).unwrap(), src);
            assert_eq!(t.glob_target(b).unwrap(), tgt);
        }
    }
}

#[test]
fn bundle_validates_by_both_routes() {
    let s = lib(4);
    s.bundle.validate(&s.tower).unwrap();
    assert_eq!(s.bundle.role_of(&s.tower, s.tower.lookup("comp_3_1").unwrap()).unwrap(), Some(Role::Comp { i: 3, j: 1 }));
    assert_eq!(s.bundle.role_of(&s.tower, s.tower.lookup("assoc_1").unwrap()).unwrap(), None);
}

// ----- rewriting -----

#[test]
fn strategies_agree_with_big_step() {
    let s = lib(3);
    let t = &s.tower;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let e = random_expr(t, &mut rng, 4);
        let big = normalize(t, &e).unwrap();
        let limit = 10 * e.size();
        let a = reduce(t, &e, Strategy::LeftmostInnermost, limit).unwrap();
        let b = reduce(t, &e, Strategy::RightmostOutermost, limit).unwrap();
        assert_eq!(a.normal, b.normal);
        assert_eq!(a.normal.to_morph().unwrap(), big);
        // Normal forms are fixed points.
        assert_eq!(reduce(t, &a.normal, Strategy::LeftmostInnermost, 0).unwrap().steps, 0);
    }
}

// ----- scripts -----

#[test]
fn printed_towers_reload_identically() {
    for n in 2..=4 {
        let s = lib(n);
        let printed = print_tower(&s.tower);
        let reloaded = load_script(&printed).unwrap();
        assert_eq!(reloaded, s.tower);
        assert_eq!(load_script(&stdlib_script(n)).unwrap(), s.tower);
    }
}

#[test]
fn script_errors_carry_positions() {
    let e = load_script("dim 3\nlift c : D1 -> D1 +0 D1 ; src = eps2 * s1 ; tgt = eps1 * t1 ]").unwrap_err();
    assert_eq!((e.kind, e.line, e.col), (DslErrorKind::Parse, 2, 61));
    let e = load_script("lift c : D1 -> D1 +0 D1 ; src = eps3 * s1 ; tgt = eps1 * t1").unwrap_err();
    assert_eq!((e.kind, e.line), (DslErrorKind::Type, 1));
    let e = load_script("lift c : D1 -> D2 ; src = s2 * s1 ; tgt = t2 * t1").unwrap_err();
    assert_eq!(e.kind, DslErrorKind::Inadmissible);
    assert!(e.message.contains("dimension of target exceeds n+1"));
    let e = load_script("dim 1\nlift u : D2 -> D1 ; src = id ; tgt = id").unwrap_err();
    assert_eq!(e.kind, DslErrorKind::Truncation);
    let e = load_script("lift u : D1 -> D0 ; src = id ; tgt = id\nlift u : D1 -> D0 ; src = id ; tgt = id").unwrap_err();
    assert_eq!((e.kind, e.line), (DslErrorKind::Duplicate, 2));
    let e = load_script("lift s1 : D1 -> D0 ; src = id ; tgt = id").unwrap_err();
    assert_eq!((e.kind, e.col), (DslErrorKind::Parse, 6));
    let e = load_script("dim 3lift u : D1 -> D0 ; src = id ; tgt = id").unwrap_err();
    assert_eq!((e.kind, e.line, e.col), (DslErrorKind::Parse, 1, 6));
}

#[test]
fn auto_lifts_factor_through_faces() {
    let s = lib(3);
    let mut t = s.tower.clone();
    // A pair of 1-cells living in the first leg of a 2-dimensional sum.
    // Two outer 0-cells of a 2-dimensional sum: the pair is carried by the 1-faces.
    let target = table("D2 +0 D2");
    let f = t.leg_word(&target, 2, &Word::face(Side::Src, 0, 2)).unwrap();
    let g = t.leg_word(&target, 1, &Word::face(Side::Tgt, 0, 2)).unwrap();
    assert_eq!(t.admissible(&f, &g), Verdict::DimensionTooHigh { target_dim: 2, n: 0 });
    let lifted = t.auto_lift(&f, &g).unwrap();
    assert_eq!(t.glob_source(&lifted).unwrap(), f);
    assert_eq!(t.glob_target(&lifted).unwrap(), g);
    assert_eq!(t.auto_lift(&f, &g).unwrap(), lifted);
    assert!(t.lookup("auto.0").is_some());
    assert_eq!(t.gen(t.lookup("auto.0").unwrap()).target, table("D1 +0 D1"));
    // A pair touching full 2-cells of both legs cannot be carried lower.
    let a = t.leg_word(&target, 1, &Word::face(Side::Src, 1, 2)).unwrap();
    let b = t.leg_word(&target, 2, &Word::face(Side::Src, 1, 2)).unwrap();
    assert!(t.auto_lift(&a, &b).is_err());
}

#[test]
fn tower_functors() {
    let s = lib(2);
    let id = TowerFunctor::identity(&s.tower);
    assert_eq!(TowerFunctor::by_name(&s.tower, &s.tower).unwrap(), id);
    // A second tower declaring its composition under another name.
    let script = stdlib_script(2).replace("comp_1_0", "mul");
    let other = load_script(&script).unwrap();
    let mut assignment: BTreeMap<String, Term> = BTreeMap::new();
    for h in s.tower.generators() {
        let name = if h.name == "comp_1_0" { "mul".to_string() } else { h.name.clone() };
        assignment.insert(h.name.clone(), other.app(other.lookup(&name).unwrap()));
    }
    let f = TowerFunctor::new(&s.tower, &other, &assignment).unwrap();
    let c = s.tower.lookup("comp_1_0").unwrap();
    assert_eq!(f.image(c), &other.app(other.lookup("mul").unwrap()));
    // A unit sent to something that is not a lifting of its pair.
    let mut bad = assignment.clone();
    bad.insert("unit_0".into(), other.app(other.lookup("inv_1_0").unwrap()));
    assert!(TowerFunctor::new(&s.tower, &other, &bad).is_err());
    let mut bad = assignment;
    bad.insert("comp_1_0".into(), other.eps(&table("D1 +0 D1"), 1).unwrap());
    assert_eq!(TowerFunctor::new(&s.tower, &other, &bad), Err(Error::FunctorEquation { name: "comp_1_0".into(), side: "source" }));
}
