//! Path objects, loop objects and homotopy groups computed inside the model
//! category of groupoids.

use super::diagram::GlobeDiagram;
use super::groupoid::{FiniteGroupoid, GroupoidFunctor};
use super::interp::{composite_through, DiskMap};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// The arrow groupoid of `X` with its factorization of the diagonal.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub path: FiniteGroupoid,
    /// Morphisms of `path` as `(f, u, f')` squares from `f` to `f'`.
    pub squares: Vec<(usize, usize, usize)>,
    /// `X → P`, objects to identities.
    pub r: GroupoidFunctor,
    /// The two evaluations `P → X`: `p0` at the source, `p1` at the target.
    pub p0: GroupoidFunctor,
    pub p1: GroupoidFunctor,
}

/// Objects are the arrows of `x`; a morphism `f → f'` is a commutative square,
/// determined by its side `u` between the sources.
pub fn path_object(x: &FiniteGroupoid) -> Result<PathObject> {
    let n = x.arrow_count();
    let mut squares = Vec::new();
    for f in 0..n {
        for u in (0..n).filter(|&u| x.src(u) == x.src(f)) {
            for f2 in (0..n).filter(|&f2| x.src(f2) == x.tgt(u)) {
                squares.push((f, u, f2));
            }
        }
    }
    let index = |sq: (usize, usize, usize)| squares.iter().position(|&s| s == sq).expect("squares are closed");
    let arrows: Vec<(usize, usize)> = squares.iter().map(|&(f, _, f2)| (f, f2)).collect();
    let compose = squares
        .iter()
        .map(|&(g, v, g2)| {
            squares.iter().map(|&(f, u, f2)| (f2 == g).then(|| index((f, x.compose(v, u).expect("sides meet"), g2)))).collect()
        })
        .collect();
    let inverse = squares.iter().map(|&(f, u, f2)| index((f2, x.inv(u), f))).collect();
    let path = FiniteGroupoid::new(format!("P({})", x.name()), n, arrows, compose, inverse)?;
    // The far side of a square (f, u, f') is f' u f⁻¹.
    let far = |(f, u, f2): (usize, usize, usize)| {
        let uf = x.compose(u, x.inv(f)).expect("meets");
        x.compose(f2, uf).expect("meets")
    };
    let r = GroupoidFunctor::new(
        x,
        &path,
        (0..x.objects()).map(|o| x.id(o)).collect(),
        (0..n).map(|g| index((x.id(x.src(g)), g, x.id(x.tgt(g))))).collect(),
    )?;
    let p0 = GroupoidFunctor::new(&path, x, (0..n).map(|f| x.src(f)).collect(), squares.iter().map(|s| s.1).collect())?;
    let p1 = GroupoidFunctor::new(&path, x, (0..n).map(|f| x.tgt(f)).collect(), squares.iter().map(|&s| far(s)).collect())?;
    Ok(PathObject { path, squares, r, p0, p1 })
}

impl PathObject {
    /// `r` is a cofibration and an equivalence, both evaluations retract it,
    /// and `(p1, p0)` lifts isomorphisms.
    pub fn validate(&self, x: &FiniteGroupoid) -> Result<()> {
        let bad = |m: &str| Err(Error::Inconsistent(format!("path object of {}: {m}", x.name())));
        if !self.r.is_injective_on_objects() {
            return bad("r is not injective on objects");
        }
        if !self.r.is_equivalence(x, &self.path) {
            return bad("r is not an equivalence");
        }
        let id = GroupoidFunctor::identity(x);
        if self.p0.after(&self.r) != id || self.p1.after(&self.r) != id {
            return bad("the evaluations do not retract r");
        }
        for f in 0..x.arrow_count() {
            for a in (0..x.arrow_count()).filter(|&a| x.src(a) == x.src(f)) {
                for b in (0..x.arrow_count()).filter(|&b| x.src(b) == x.tgt(f)) {
                    let lifted =
                        (0..self.path.arrow_count()).any(|m| self.path.src(m) == f && self.p0.arrows[m] == a && self.p1.arrows[m] == b);
                    if !lifted {
                        return bad("(p1, p0) is not an isofibration");
                    }
                }
            }
        }
        Ok(())
    }
}

/// A groupoid with a chosen object.
#[derive(Clone, Debug)]
pub struct BasedGroupoid {
    pub groupoid: FiniteGroupoid,
    pub base: usize,
}

/// The pullback of the path object along the doubled base point, based at
/// the identity of the base.
pub fn loop_object(x: &BasedGroupoid) -> Result<BasedGroupoid> {
    let g = &x.groupoid;
    let p = path_object(g)?;
    let objects: Vec<usize> = (0..p.path.objects()).filter(|&f| p.p0.objects[f] == x.base && p.p1.objects[f] == x.base).collect();
    let id_x = g.id(x.base);
    let arrows: Vec<usize> = (0..p.path.arrow_count())
        .filter(|&m| objects.contains(&p.path.src(m)) && p.p0.arrows[m] == id_x && p.p1.arrows[m] == id_x)
        .collect();
    let obj = |f: usize| objects.iter().position(|&o| o == f).expect("restricted to the fiber");
    let arr = |m: usize| arrows.iter().position(|&a| a == m).expect("closed in the fiber");
    let ends = arrows.iter().map(|&m| (obj(p.path.src(m)), obj(p.path.tgt(m)))).collect();
    let compose = arrows.iter().map(|&b| arrows.iter().map(|&a| p.path.compose(b, a).map(arr)).collect()).collect();
    let inverse = arrows.iter().map(|&m| arr(p.path.inv(m))).collect();
    let omega = FiniteGroupoid::new(format!("Omega({})", g.name()), objects.len(), ends, compose, inverse)?;
    Ok(BasedGroupoid { groupoid: omega, base: obj(id_x) })
}

/// The fundamental group computed two ways inside groupoids.
#[derive(Clone, Debug)]
pub struct QuillenPi1 {
    /// Classes of maps `D(1) → X` with both ends at the base, composed
    /// through the interpreted composition of 1-cells.
    pub via_homotopies: FiniteGroup,
    /// Components of the loop object, composed by concatenating loops.
    pub via_loops: FiniteGroup,
    /// The canonical bijection between the two.
    pub bijection: Vec<usize>,
    /// Class of every loop at the base, loops in increasing order.
    pub loop_class: Vec<usize>,
}

/// Computes both groups and checks that the canonical bijection between them
/// is an isomorphism. `comp` is the interpretation of the composition of
/// 1-cells in the groupoid extension.
pub fn quillen_pi1(x: &BasedGroupoid, diagram: &GlobeDiagram, comp: &DiskMap) -> Result<QuillenPi1> {
    let g = &x.groupoid;
    let base = x.base;
    // Maps D(1) → X at the base are loops; a 2-homotopy between l and l'
    // is a map D(2) → X restricting to (l, l') along i_2.
    let loops = g.hom(base, base);
    let i2 = &diagram.boundaries[2];
    let homotopic = |l: usize, l2: usize| {
        (0..g.arrow_count()).any(|h| {
            // D(2) has a single edge, sent to h.
            let edge_image = [h];
            let restricted: Vec<usize> = i2.edges.iter().map(|&e| edge_image[e]).collect();
            restricted == [l, l2]
        })
    };
    let mut reps: Vec<usize> = Vec::new();
    for &l in &loops {
        if !reps.iter().any(|&r| homotopic(r, l)) {
            reps.push(l);
        }
    }
    let class = |l: usize| reps.iter().position(|&r| homotopic(r, l)).ok_or_else(|| Error::Inconsistent("loop without a class".into()));
    let mut table = Vec::new();
    for &a in &reps {
        let row = reps.iter().map(|&b| class(composite_through(g, comp, a, b)?)).collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let via_homotopies = FiniteGroup::from_table("pi_1", table)?;

    let omega = loop_object(x)?;
    let comps = omega.groupoid.components();
    let k = omega.groupoid.iso_classes();
    // Objects of the loop object are the loops at the base, in order.
    let comp_of = |l: usize| comps[loops.iter().position(|&m| m == l).expect("a loop")];
    let mut table = vec![vec![usize::MAX; k]; k];
    for &a in &loops {
        for &b in &loops {
            let c = comp_of(g.compose(a, b).expect("loops compose"));
            let cell = &mut table[comp_of(a)][comp_of(b)];
            if *cell != usize::MAX && *cell != c {
                return Err(Error::Inconsistent("concatenation does not descend to components".into()));
            }
            *cell = c;
        }
    }
    let via_loops = FiniteGroup::from_table("pi_0(Omega)", table)?;
    let bijection: Vec<usize> = reps.iter().map(|&r| comp_of(r)).collect();
    let loop_class = loops.iter().map(|&l| class(l)).collect::<Result<Vec<_>>>()?;
    if !via_homotopies.is_isomorphism(&via_loops, &bijection) {
        return Err(Error::Inconsistent(format!("the two fundamental groups of {} at {base} differ", g.name())));
    }
    Ok(QuillenPi1 { via_homotopies, via_loops, bijection, loop_class })
}

/// `π_n(X, x)` for `n ≥ 1` computed as `π_{n-1}` of the loop object, down to
/// vertex groups.
pub fn quillen_pi(x: &BasedGroupoid, n: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidArgument("π_0 is a set".into())),
        1 => Ok(x.groupoid.aut(x.base)),
        _ => quillen_pi(&loop_object(x)?, n - 1),
    }
}
