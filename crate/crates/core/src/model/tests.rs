use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coherator::expr::{normalize, random_expr};
use crate::coherator::{stdlib, Stdlib};
use crate::group::FiniteGroup;

fn lib(n: usize) -> Stdlib {
    stdlib(n).expect("library loads")
}

fn strict(kind: StrictKind, lib: &Stdlib) -> Model {
    build_strict(kind, &lib.tower, &lib.bundle).expect("strict model builds")
}

fn id(lib: &Stdlib, name: &str) -> GenId {
    lib.tower.lookup(name).expect("generator exists")
}

fn xmod_z2() -> CrossedModule {
    CrossedModule::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)).unwrap()
}

#[test]
fn composition_in_kg1_is_the_group_law() {
    let l = lib(3);
    let g = FiniteGroup::cyclic(3);
    let m = strict(StrictKind::Kg1(g.clone()), &l);
    let comp = l.tower.app(id(&l, "comp_1_0"));
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(m.eval(&l.tower, &comp, &[a, b]).unwrap(), g.table()[a][b]);
        }
    }
}

#[test]
fn unit_is_degenerate() {
    let l = lib(3);
    let m = strict(StrictKind::Kg1(FiniteGroup::cyclic(3)), &l);
    let unit = l.tower.app(id(&l, "unit_0"));
    assert_eq!(m.eval(&l.tower, &unit, &[0]).unwrap(), 0);
    let unit1 = l.tower.app(id(&l, "unit_1"));
    // A 2-cell above the top is the identity on its 1-cell.
    assert_eq!(m.eval(&l.tower, &unit1, &[2]).unwrap(), 2);
    assert_eq!(m.src(2, 2), 2);
}

#[test]
fn inverse_is_forced_by_the_inverse_constraint() {
    let l = lib(3);
    let g = FiniteGroup::cyclic(3);
    let m = strict(StrictKind::Kg1(g.clone()), &l);
    let w = l.tower.app(id(&l, "inv_1_0"));
    let rinv = l.tower.app(id(&l, "rinv_1"));
    for a in 0..3 {
        let inv = m.eval(&l.tower, &w, &[a]).unwrap();
        assert_eq!(g.mul(a, inv), g.identity());
        let cell = m.eval(&l.tower, &rinv, &[a]).unwrap();
        assert_eq!(m.src(2, cell), g.identity());
        assert_eq!(m.tgt(2, cell), g.identity());
    }
}

#[test]
fn builtin_models_check_clean() {
    let l = lib(3);
    for kind in [
        StrictKind::Kg1(FiniteGroup::cyclic(2)),
        StrictKind::Discrete(2),
        StrictKind::Kg1(FiniteGroup::symmetric(3)),
        StrictKind::Kan(FiniteGroup::cyclic(4), 2),
        StrictKind::CrossedModule(xmod_z2()),
        StrictKind::CrossedModule(CrossedModule::conjugation(FiniteGroup::cyclic(3)).unwrap()),
    ] {
        let m = strict(kind, &l);
        let report = m.check(&l.tower);
        assert!(report.is_clean(), "{}: {:?}", m.name(), report.violations.first());
        assert!(report.checked > 0);
    }
}

#[test]
fn identity_inverse_is_caught() {
    let l = lib(3);
    let m = strict(StrictKind::Kg1(FiniteGroup::cyclic(3)), &l);
    let mut file = ModelFile::tabulate(&m, &l.tower).unwrap();
    let rows = file.interp.get_mut("inv_1_0").unwrap();
    for row in rows.iter_mut() {
        row.1 = row.0[0];
    }
    let bad = file.into_model("bad").unwrap();
    let report = bad.check(&l.tower);
    assert!(report.violations.iter().any(|v| v.generator == "rinv_1" && v.input == vec![1]));
    assert!(!report.violations.iter().any(|v| v.generator == "inv_1_0"));
}

#[test]
fn model_files_round_trip() {
    let l = lib(3);
    let m = strict(StrictKind::CrossedModule(xmod_z2()), &l);
    let file = ModelFile::tabulate(&m, &l.tower).unwrap();
    let back = ModelFile::parse(&file.to_json()).unwrap();
    assert_eq!(back, file);
    let loaded = back.into_model("loaded").unwrap();
    assert!(loaded.check(&l.tower).is_clean());
    assert!(ModelFile::parse("{\"dimension\": 1}").is_err());
}

#[test]
fn unit_filler_default_fills_coherences() {
    let l = lib(3);
    let m = strict(StrictKind::Kg1(FiniteGroup::cyclic(2)), &l);
    let mut file = ModelFile::tabulate(&m, &l.tower).unwrap();
    file.interp.retain(|name, _| name.starts_with("comp") || name.starts_with("inv") || name == "unit_0");
    file.default = Some("unit-filler".into());
    assert!(file.clone().into_model("filled").unwrap().check(&l.tower).is_clean());
    file.default = None;
    let partial = file.into_model("partial").unwrap();
    assert!(partial.check(&l.tower).violations.iter().any(|v| v.generator == "assoc_1"));
}

#[test]
fn strict_validation() {
    let l = lib(3);
    assert!(build_strict(StrictKind::Kan(FiniteGroup::symmetric(3), 2), &l.tower, &l.bundle).is_err());
    assert!(build_strict(StrictKind::Kan(FiniteGroup::cyclic(2), 3), &l.tower, &l.bundle).is_err());
    let s3 = FiniteGroup::symmetric(3);
    // Trivial action with a non-central image violates equivariance.
    assert!(CrossedModule::new(s3.clone(), s3.clone(), (0..6).collect(), vec![(0..6).collect(); 6]).is_err());
}

#[test]
fn lifts_with_distinct_sides_are_refused_by_the_filler() {
    use crate::globe::{Side, Word};
    let mut l = lib(3);
    // A second lifting of (s, t) into D2: a 2-cell between the two faces of a 2-cell.
    let s = l.tower.word(&Word::face(Side::Src, 1, 2));
    let t = l.tower.word(&Word::face(Side::Tgt, 1, 2));
    l.tower.declare_lift("across", s, t).unwrap();
    let conj = CrossedModule::conjugation(FiniteGroup::cyclic(3)).unwrap();
    match build_strict(StrictKind::CrossedModule(conj), &l.tower, &l.bundle) {
        Err(Error::FillerPolicy { name, witness }) => {
            assert_eq!(name, "across");
            // Cell 3 is (a, g) = (1, 0), a 2-cell from 0 to ∂(1) = 1.
            assert_eq!(witness, vec![3]);
        }
        other => panic!("expected a filler failure, got {other:?}"),
    }
    // With trivial boundary every 2-cell is a loop, so the lift is a unit.
    assert!(build_strict(StrictKind::CrossedModule(xmod_z2()), &l.tower, &l.bundle).is_ok());
}

#[test]
fn fiber_products_match_brute_force() {
    let l = lib(3);
    let m = strict(StrictKind::CrossedModule(CrossedModule::conjugation(FiniteGroup::cyclic(3)).unwrap()), &l);
    let mut tables = Vec::new();
    for w in 1..=3usize {
        let mut uppers = vec![vec![]];
        for _ in 0..w {
            uppers = uppers.into_iter().flat_map(|u: Vec<usize>| (0..=3).map(move |d| [u.clone(), vec![d]].concat())).collect();
        }
        for upper in uppers {
            let mut lowers = vec![vec![]];
            for _ in 1..w {
                lowers = lowers.into_iter().flat_map(|u: Vec<usize>| (0..3).map(move |d| [u.clone(), vec![d]].concat())).collect();
            }
            for lower in lowers {
                if let Ok(t) = Table::new(upper.clone(), lower) {
                    tables.push(t);
                }
            }
        }
    }
    assert!(tables.len() > 50);
    for t in tables {
        let fast = m.fiber_product(&t).len();
        // Oracle: filter the full cartesian product by the matching condition.
        let mut all: Vec<Vec<usize>> = vec![vec![]];
        for k in 1..=t.width() {
            let n = m.count(t.leg_dim(k));
            all = all.into_iter().flat_map(|p| (0..n).map(move |x| [p.clone(), vec![x]].concat())).collect();
        }
        let brute = all.iter().filter(|p| m.check_tuple(&t, p).is_ok()).count();
        assert_eq!(fast, brute, "{t}");
    }
}

fn builtin_models(l: &Stdlib) -> Vec<Model> {
    vec![
        strict(StrictKind::Discrete(3), l),
        strict(StrictKind::Kg1(FiniteGroup::symmetric(3)), l),
        strict(StrictKind::Kan(FiniteGroup::cyclic(4), 2), l),
        strict(StrictKind::CrossedModule(CrossedModule::conjugation(FiniteGroup::cyclic(3)).unwrap()), l),
    ]
}

#[test]
fn evaluation_commutes_with_normalization() {
    let l = lib(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in builtin_models(&l) {
        let mut tested = 0;
        while tested < 500 {
            let e = random_expr(&l.tower, &mut rng, 4);
            let nf = normalize(&l.tower, &e).unwrap();
            let inputs = m.fiber_product(&nf.target);
            if inputs.is_empty() {
                continue;
            }
            let input = &inputs[tested % inputs.len()];
            assert_eq!(m.eval_expr(&l.tower, &e, input).unwrap(), m.eval_morph(&l.tower, &nf, input).unwrap());
            tested += 1;
        }
    }
}

#[test]
fn restriction_along_identity_changes_nothing() {
    let l = lib(3);
    let tower = Arc::new(l.tower.clone());
    let m = strict(StrictKind::Kg1(FiniteGroup::symmetric(3)), &l);
    let r = m.restrict(tower.clone(), TowerFunctor::identity(&l.tower));
    assert_eq!(ModelFile::tabulate(&m, &l.tower).unwrap(), ModelFile::tabulate(&r, &l.tower).unwrap());
}

/// A second composition of 1-cells, `(a ∗ b) ∗ unit`, lifting the same pair.
fn alternative_composition(l: &Stdlib) -> Term {
    use crate::globe::{Side, Word};
    let t = &l.tower;
    let c = t.app(id(l, "comp_1_0"));
    let pair = Table::new(vec![1, 1], vec![0]).unwrap();
    let base = t.leg_word(&pair, 2, &Word::face(Side::Src, 0, 1)).unwrap();
    let unit = t.compose_term(&Morph::from_term(base), &t.app(id(l, "unit_0"))).unwrap();
    let inner = t.tuple(&pair, vec![t.eps(&pair, 2).unwrap(), unit]).unwrap();
    let right = t.compose_term(&inner, &c).unwrap();
    let outer = t.tuple(&pair, vec![t.eps(&pair, 1).unwrap(), right]).unwrap();
    t.compose_term(&outer, &c).unwrap()
}

#[test]
fn restriction_along_a_swapped_composition() {
    let l = lib(3);
    let small = crate::coherator::load_script(
        "dim 3\nlift comp_1_0 : D1 -> D1 +0 D1 ; src = eps2 * s1 ; tgt = eps1 * t1\nlift unit_0 : D1 -> D0 ; src = id ; tgt = id\nlift inv_1_0 : D1 -> D1 ; src = t1 ; tgt = s1\n",
    )
    .unwrap();
    let alt = alternative_composition(&l);
    let mut assignment = BTreeMap::new();
    for name in ["unit_0", "inv_1_0"] {
        assignment.insert(name.to_string(), l.tower.app(id(&l, name)));
    }
    assignment.insert("comp_1_0".to_string(), alt.clone());
    let f = TowerFunctor::new(&small, &l.tower, &assignment).unwrap();
    let m = strict(StrictKind::Kg1(FiniteGroup::symmetric(3)), &l);
    let r = m.restrict(Arc::new(l.tower.clone()), f.clone());
    assert_eq!(r.carrier(), m.carrier());
    let comp = small.lookup("comp_1_0").unwrap();
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(r.interpret(&small, comp, &[a, b]).unwrap(), m.eval(&l.tower, &alt, &[a, b]).unwrap());
        }
    }
    assert!(r.check(&small).is_clean());
    // Naturality: evaluating after restriction is evaluating the translated term.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let e = random_expr(&small, &mut rng, 3);
        let nf = normalize(&small, &e).unwrap();
        let translated = f.translate_morph(&l.tower, &nf).unwrap();
        for input in m.fiber_product(&nf.target).into_iter().take(4) {
            assert_eq!(r.eval_morph(&small, &nf, &input).unwrap(), m.eval_morph(&l.tower, &translated, &input).unwrap());
        }
    }
}

#[test]
fn morphisms_are_validated() {
    let l = lib(3);
    let z2 = strict(StrictKind::Kg1(FiniteGroup::cyclic(2)), &l);
    let z4 = strict(StrictKind::Kg1(FiniteGroup::cyclic(4)), &l);
    assert!(ModelMorphism::from_group_hom(z2.clone(), z4.clone(), 1, &[0, 2], &l.tower).is_ok());
    let err = ModelMorphism::from_group_hom(z2.clone(), z4, 1, &[0, 1], &l.tower).unwrap_err();
    assert!(matches!(err, Error::InvalidMorphism(_)));
    let point = strict(StrictKind::Discrete(1), &l);
    assert!(ModelMorphism::collapse(z2.clone(), point, &l.tower).is_ok());
    assert!(ModelMorphism::identity(&z2, &l.tower).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every crossed module with trivial boundary over small cyclic groups
    /// gives a clean strict model.
    #[test]
    fn trivial_crossed_modules_are_models(g in 1usize..4, a in 1usize..4) {
        let l = lib(3);
        let x = CrossedModule::trivial(FiniteGroup::cyclic(g), FiniteGroup::cyclic(a)).unwrap();
        let m = strict(StrictKind::CrossedModule(x), &l);
        prop_assert!(m.check(&l.tower).is_clean());
    }
}
