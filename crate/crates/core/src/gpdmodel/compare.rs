//! Comparing the homotopy of a groupoid with that of its fundamental model.

use super::diagram::globe_diagram;
use super::groupoid::{FiniteGroupoid, GroupoidFunctor};
use super::interp::{composite_through, fundamental, interpret_tower, DiskMap};
use super::quillen::{quillen_pi, quillen_pi1, BasedGroupoid, QuillenPi1};
use crate::coherator::{PregroupoidBundle, Tower};
use crate::error::{Error, Result};
use crate::group::{groups_up_to_order_eight, FiniteGroup};
use crate::homotopy::{iterated_unit, pi0, pi_groupoid, HomotopyClasses};
use crate::model::{Model, ModelMorphism};

/// Both sides of the comparison at one object.
#[derive(Clone, Debug)]
pub struct ObjectComparison {
    pub object: usize,
    pub aut: FiniteGroup,
    /// `π_1` of the fundamental model.
    pub pi1: FiniteGroup,
    pub quillen: QuillenPi1,
    /// Orders of `π_n` of the fundamental model for `2 ≤ n ≤` the truncation
    /// (the last one as a set of classes).
    pub higher: Vec<(usize, usize)>,
    /// Orders of `π_n` through iterated loop objects, same range.
    pub quillen_higher: Vec<(usize, usize)>,
}

/// The outcome of a successful comparison.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub name: String,
    pub iso_classes: usize,
    pub pi0: usize,
    pub objects: Vec<ObjectComparison>,
}

fn disagree(x: &FiniteGroupoid, what: String) -> Error {
    Error::Inconsistent(format!("{}: {what}", x.name()))
}

/// The interpreted composition of 1-cells.
fn composition_image(tower: &Tower, bundle: &PregroupoidBundle) -> Result<DiskMap> {
    let images = interpret_tower(tower)?;
    Ok(images[bundle.comp(1, 0)?.index()].clone())
}

/// Computes the homotopy of the fundamental model of `x` through the generic
/// machinery, and that of `x` inside groupoids, and checks that they agree.
pub fn compare(x: &FiniteGroupoid, tower: &Tower, bundle: &PregroupoidBundle) -> Result<Comparison> {
    let top = tower.truncation();
    let diagram = globe_diagram(top.max(2))?;
    let comp = composition_image(tower, bundle)?;
    let model = fundamental(x, tower)?;

    let components = x.components();
    let p0 = pi0(&model)?;
    for a in 0..x.objects() {
        for b in 0..x.objects() {
            if (p0.class_of(a) == p0.class_of(b)) != (components[a] == components[b]) {
                return Err(disagree(x, format!("objects {a} and {b} are classified differently")));
            }
        }
    }
    let pi1 = pi_groupoid(&model, tower, bundle, 1)?;
    let mut objects = Vec::new();
    for o in 0..x.objects() {
        let aut = x.aut(o);
        let loops = x.hom(o, o);
        let pi1_here = pi1.group_at(o)?;
        let classes = pi1.hom(o, o);
        let map: Vec<usize> =
            loops.iter().map(|&l| classes.iter().position(|&k| k == pi1.classes.class_of(l)).expect("a loop class")).collect();
        if !aut.is_isomorphism(&pi1_here, &map) {
            return Err(disagree(x, format!("the vertex group at {o} and pi_1 of the model differ")));
        }
        let quillen = quillen_pi1(&BasedGroupoid { groupoid: x.clone(), base: o }, &diagram, &comp)?;
        if !aut.is_isomorphism(&quillen.via_homotopies, &quillen.loop_class) {
            return Err(disagree(x, format!("the vertex group at {o} and the homotopy-class pi_1 differ")));
        }
        let mut higher = Vec::new();
        let mut quillen_higher = Vec::new();
        for n in 2..=top {
            let order = if n < top {
                let g = pi_groupoid(&model, tower, bundle, n)?;
                g.group_at(iterated_unit(&model, tower, bundle, o, 0, n - 1)?)?.order()
            } else {
                top_classes_at(&model, tower, bundle, o, n)?
            };
            higher.push((n, order));
            let q = quillen_pi(&BasedGroupoid { groupoid: x.clone(), base: o }, n)?.order();
            quillen_higher.push((n, q));
            if order != 1 || q != 1 {
                return Err(disagree(x, format!("pi_{n} at {o} is not trivial ({order} and {q})")));
            }
        }
        objects.push(ObjectComparison { object: o, aut, pi1: pi1_here, quillen, higher, quillen_higher });
    }
    Ok(Comparison { name: x.name().to_string(), iso_classes: x.iso_classes(), pi0: p0.len(), objects })
}

/// Number of homotopy classes of `n`-cells from the iterated unit at `o` to itself.
fn top_classes_at(model: &Model, tower: &Tower, bundle: &PregroupoidBundle, o: usize, n: usize) -> Result<usize> {
    let u = iterated_unit(model, tower, bundle, o, 0, n - 1)?;
    let classes = HomotopyClasses::new(model, n)?;
    Ok((0..classes.len())
        .filter(|&k| {
            let r = classes.rep(k);
            model.src(n, r) == u && model.tgt(n, r) == u
        })
        .count())
}

/// The morphism of fundamental models induced by a functor.
pub fn fundamental_morphism(f: &GroupoidFunctor, source: &Model, target: &Model, tower: &Tower) -> Result<ModelMorphism> {
    ModelMorphism::from_fn(source.clone(), target.clone(), tower, |d, c| if d == 0 { f.objects[c] } else { f.arrows[c] })
}

/// Checks that the comparison isomorphisms commute with the maps induced by
/// `f` on both sides, on `π_0` and on `π_1` at every object.
pub fn check_naturality(
    f: &GroupoidFunctor,
    x: &FiniteGroupoid,
    y: &FiniteGroupoid,
    tower: &Tower,
    bundle: &PregroupoidBundle,
) -> Result<()> {
    let (mx, my) = (fundamental(x, tower)?, fundamental(y, tower)?);
    let pf = fundamental_morphism(f, &mx, &my, tower)?;
    let cy = y.components();
    let py = pi0(&my)?;
    let (gx, gy) = (pi_groupoid(&mx, tower, bundle, 1)?, pi_groupoid(&my, tower, bundle, 1)?);
    for a in 0..x.objects() {
        // On π_0, the component of f(a) corresponds to the class of Π(f)(a).
        let image_class = py.class_of(pf.apply(0, a));
        for b in 0..y.objects() {
            if (cy[b] == cy[f.objects[a]]) != (py.class_of(b) == image_class) {
                return Err(disagree(x, format!("the pi_0 square does not commute at {a}")));
            }
        }
        for l in x.hom(a, a) {
            let via_model = gy.classes.class_of(pf.apply(1, gx.classes.rep(gx.classes.class_of(l))));
            let via_groupoid = gy.classes.class_of(f.arrows[l]);
            if via_model != via_groupoid {
                return Err(disagree(x, format!("the pi_1 square does not commute at the loop {l}")));
            }
        }
    }
    Ok(())
}

/// The interpreted composition of 1-cells agrees with the composition of the
/// groupoid on every composable pair.
pub fn check_composition(x: &FiniteGroupoid, tower: &Tower, bundle: &PregroupoidBundle) -> Result<()> {
    let comp = composition_image(tower, bundle)?;
    for g in 0..x.arrow_count() {
        for f in (0..x.arrow_count()).filter(|&f| x.tgt(f) == x.src(g)) {
            if composite_through(x, &comp, g, f)? != x.compose(g, f).expect("composable") {
                return Err(disagree(x, format!("the interpreted composite of {g} and {f} is wrong")));
            }
        }
    }
    Ok(())
}

/// Every groupoid with at most three objects and eight arrows, up to
/// isomorphism, followed by a few named examples.
pub fn corpus() -> Vec<FiniteGroupoid> {
    let groups = groups_up_to_order_eight();
    // (objects, groupoid) for every connected piece that can occur.
    let mut pieces: Vec<(usize, FiniteGroupoid)> = groups.iter().map(|g| (1, FiniteGroupoid::from_group(g))).collect();
    pieces.push((2, FiniteGroupoid::codiscrete(2)));
    pieces.push((2, FiniteGroupoid::connected(2, &FiniteGroup::cyclic(2))));
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_corpus(&pieces, 0, 0, 0, &mut chosen, &mut out);
    out.push(FiniteGroupoid::codiscrete(3));
    out.push(FiniteGroupoid::connected(3, &FiniteGroup::cyclic(2)).with_name("3xZ2"));
    out
}

fn extend_corpus(
    pieces: &[(usize, FiniteGroupoid)],
    from: usize,
    objects: usize,
    arrows: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<FiniteGroupoid>,
) {
    if !chosen.is_empty() {
        let parts: Vec<FiniteGroupoid> = chosen.iter().map(|&k| pieces[k].1.clone()).collect();
        out.push(FiniteGroupoid::disjoint_union(&parts));
    }
    for k in from..pieces.len() {
        let (o, g) = &pieces[k];
        if objects + o <= 3 && arrows + g.arrow_count() <= 8 {
            chosen.push(k);
            extend_corpus(pieces, k, objects + o, arrows + g.arrow_count(), chosen, out);
            chosen.pop();
        }
    }
}

/// A functor between corpus groupoids with its expected verdict.
#[derive(Clone, Debug)]
pub struct SuiteFunctor {
    pub name: String,
    pub source: FiniteGroupoid,
    pub target: FiniteGroupoid,
    pub functor: GroupoidFunctor,
}

impl SuiteFunctor {
    fn new(name: &str, source: FiniteGroupoid, target: FiniteGroupoid, objects: Vec<usize>, arrows: Vec<usize>) -> SuiteFunctor {
        let functor = GroupoidFunctor::new(&source, &target, objects, arrows).expect("suite functors are functors");
        SuiteFunctor { name: name.to_string(), source, target, functor }
    }

    pub fn is_equivalence(&self) -> bool {
        self.functor.is_equivalence(&self.source, &self.target)
    }
}

/// Equivalences and non-equivalences between small groupoids.
pub fn functor_suite() -> Vec<SuiteFunctor> {
    let z = FiniteGroup::cyclic;
    let one = |g: &FiniteGroup| FiniteGroupoid::from_group(g);
    let point = FiniteGroupoid::point();
    let code2 = FiniteGroupoid::codiscrete(2);
    let z2_on_two = FiniteGroupoid::connected(2, &z(2));
    let z2z3 = FiniteGroupoid::disjoint_union(&[one(&z(2)), one(&z(3))]);
    let mut out = Vec::new();
    for x in [point.clone(), one(&z(3)), one(&FiniteGroup::symmetric(3)), code2.clone(), z2z3.clone()] {
        let id = GroupoidFunctor::identity(&x);
        out.push(SuiteFunctor::new(&format!("identity of {}", x.name()), x.clone(), x, id.objects, id.arrows));
    }
    out.push(SuiteFunctor::new("Z3 squaring", one(&z(3)), one(&z(3)), vec![0], vec![0, 2, 1]));
    out.push(SuiteFunctor::new("codiscrete-2 to point", code2.clone(), point.clone(), vec![0, 0], vec![0; 4]));
    out.push(SuiteFunctor::new("point into codiscrete-2", point.clone(), code2.clone(), vec![1], vec![3]));
    // Arrows of the connected groupoid are (i, j, a) at (2i + j) * 2 + a.
    out.push(SuiteFunctor::new("Z2 into 2xZ2", one(&z(2)), z2_on_two.clone(), vec![0], vec![0, 1]));
    out.push(SuiteFunctor::new("2xZ2 onto Z2", z2_on_two.clone(), one(&z(2)), vec![0, 0], (0..8).map(|f| f % 2).collect()));
    out.push(SuiteFunctor::new("Z2 doubling into Z4", one(&z(2)), one(&z(4)), vec![0], vec![0, 2]));
    out.push(SuiteFunctor::new("Z4 onto Z2", one(&z(4)), one(&z(2)), vec![0], vec![0, 1, 0, 1]));
    out.push(SuiteFunctor::new("Z2 to point", one(&z(2)), point.clone(), vec![0], vec![0, 0]));
    out.push(SuiteFunctor::new("discrete-2 to point", FiniteGroupoid::discrete(2), point.clone(), vec![0, 0], vec![0, 0]));
    out.push(SuiteFunctor::new("point into discrete-2", point.clone(), FiniteGroupoid::discrete(2), vec![0], vec![0]));
    out.push(SuiteFunctor::new("Z2 + Z3 to point", z2z3, point, vec![0, 0], vec![0; 5]));
    out.push(SuiteFunctor::new("2xZ2 collapsing the group", z2_on_two, code2, vec![0, 1], (0..8).map(|f| f / 2).collect()));
    out
}
