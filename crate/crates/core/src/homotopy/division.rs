//! Whiskering by a fixed cell is a bijection on homotopy classes.
//!
//! The inverse is built from correction liftings: for every dimension between
//! the whiskering dimension and `n`, a cell repairing the source and one
//! repairing the target of the naive inverse. The corrections are liftings
//! declared on demand in the tower and evaluated in the model.

use std::collections::BTreeMap;

use super::{iterated_unit, pi_groupoid, refuse_top, HomotopyClasses};
use crate::coherator::{Morph, PregroupoidBundle, Term, Tower};
use crate::error::{Error, Result};
use crate::globe::{Side, Table, Word};
use crate::group::FiniteGroup;
use crate::model::Model;

/// Which side the fixed cell is composed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Whisker {
    /// `α ↦ γ ∗ α`.
    Left,
    /// `α ↦ α ∗ γ`.
    Right,
}

/// The whiskering map and its constructed inverse, on cells and on classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub n: usize,
    pub i: usize,
    pub side: Whisker,
    pub gamma: usize,
    /// Ends of the original hom-set.
    pub u: usize,
    pub v: usize,
    /// Ends of the whiskered hom-set.
    pub u2: usize,
    pub v2: usize,
    /// `α ↦ K(α)` for every `n`-cell `α : u → v`.
    pub forward: BTreeMap<usize, usize>,
    /// `β ↦ L(β)` for every `n`-cell `β : u2 → v2`.
    pub backward: BTreeMap<usize, usize>,
    pub class_forward: BTreeMap<usize, usize>,
    pub class_backward: BTreeMap<usize, usize>,
}

struct Ops<'a> {
    model: &'a Model,
    bundle: &'a PregroupoidBundle,
}

impl Ops<'_> {
    fn comp(&self, tower: &Tower, m: usize, k: usize, a: usize, b: usize) -> Result<usize> {
        self.model.interpret(tower, self.bundle.comp(m, k)?, &[a, b])
    }

    fn inv(&self, tower: &Tower, m: usize, k: usize, a: usize) -> Result<usize> {
        self.model.interpret(tower, self.bundle.inv(m, k)?, &[a])
    }

    fn tcomp(&self, tower: &Tower, m: usize, k: usize, a: Term, b: Term) -> Result<Term> {
        let pair = tower.tuple(&Table::new(vec![m, m], vec![k])?, vec![a, b])?;
        tower.compose_term(&pair, &tower.app(self.bundle.comp(m, k)?))
    }

    fn tinv(&self, tower: &Tower, m: usize, k: usize, a: Term) -> Result<Term> {
        tower.compose_term(&Morph::from_term(a), &tower.app(self.bundle.inv(m, k)?))
    }

    fn tunit(&self, tower: &Tower, to: usize, a: Term) -> Result<Term> {
        let from = a.source_dim();
        (from..to).try_fold(a, |t, d| tower.compose_term(&Morph::from_term(t), &tower.app(self.bundle.unit(d)?)))
    }
}

fn tface(tower: &Tower, side: Side, t: &Term, e: usize) -> Result<Term> {
    tower.precompose_word(t, &Word::face(side, e, t.source_dim()))
}

/// Whiskers `n`-cells `u → v` along dimension `i` with `gamma` and builds
/// the inverse on homotopy classes, checking both composites are identities.
#[allow(clippy::too_many_arguments)]
pub fn divide(
    model: &Model,
    tower: &mut Tower,
    bundle: &PregroupoidBundle,
    n: usize,
    i: usize,
    gamma: usize,
    u: usize,
    v: usize,
    side: Whisker,
) -> Result<Division> {
    if n < 2 || i + 1 >= n {
        return Err(Error::InvalidArgument(format!("whiskering needs n >= 2 and i < n - 1, got n = {n}, i = {i}")));
    }
    refuse_top(tower, n)?;
    if gamma >= model.count(n) || u >= model.count(n - 1) || v >= model.count(n - 1) {
        return Err(Error::InvalidArgument("cell index out of range".into()));
    }
    if !model.parallel(n - 1, u, v) {
        return Err(Error::InvalidArgument(format!("{}-cells {u} and {v} are not parallel", n - 1)));
    }
    let (glue_gamma, glue_u) = match side {
        Whisker::Left => (Side::Src, Side::Tgt),
        Whisker::Right => (Side::Tgt, Side::Src),
    };
    let g_face = model.face(glue_gamma, n, gamma, i);
    if g_face != model.face(glue_u, n - 1, u, i) || g_face != model.face(glue_u, n - 1, v, i) {
        return Err(Error::InvalidArgument(format!(
            "the {i}-dimensional {} of the whiskering cell does not meet the {} of the hom-set ends",
            if side == Whisker::Left { "source" } else { "target" },
            if side == Whisker::Left { "target" } else { "source" },
        )));
    }
    let ops = Ops { model, bundle };
    let (u1, v1) = (model.src(n, gamma), model.tgt(n, gamma));

    // The correction liftings live on D_{n-1} +_i D_{n-1}, with u in leg `ul`.
    let p = Table::new(vec![n - 1, n - 1], vec![i])?;
    let (e1, e2) = (tower.eps(&p, 1)?, tower.eps(&p, 2)?);
    let (eu, mut s) = match side {
        Whisker::Left => {
            let inner = ops.tcomp(tower, n - 1, i, e1.clone(), e2.clone())?;
            let w = ops.tinv(tower, n - 1, i, e1)?;
            (e2, ops.tcomp(tower, n - 1, i, w, inner)?)
        }
        Whisker::Right => {
            let inner = ops.tcomp(tower, n - 1, i, e1.clone(), e2.clone())?;
            let w = ops.tinv(tower, n - 1, i, e2)?;
            (e1, ops.tcomp(tower, n - 1, i, inner, w)?)
        }
    };
    let mut corrections = Vec::new();
    for j in i + 2..=n {
        let c = tower.auto_lift(&tface(tower, Side::Src, &eu, j - 1)?, &tface(tower, Side::Src, &s, j - 1)?)?;
        let d = tower.auto_lift(&tface(tower, Side::Tgt, &s, j - 1)?, &tface(tower, Side::Tgt, &eu, j - 1)?)?;
        if j < n {
            let right = ops.tcomp(tower, n - 1, j - 1, s, ops.tunit(tower, n - 1, c.clone())?)?;
            s = ops.tcomp(tower, n - 1, j - 1, ops.tunit(tower, n - 1, d.clone())?, right)?;
        }
        corrections.push((j, c, d));
    }
    let tower = &*tower;
    let (in_u, in_v) = match side {
        Whisker::Left => (vec![u1, u], vec![v1, v]),
        Whisker::Right => (vec![u, u1], vec![v, v1]),
    };
    let mut cs = Vec::new();
    for (j, c, d) in &corrections {
        let cj = model.eval(tower, c, &in_u)?;
        let dj = model.eval(tower, d, &in_v)?;
        cs.push((*j, iterated_unit(model, tower, bundle, cj, *j, n)?, iterated_unit(model, tower, bundle, dj, *j, n)?));
    }
    let whisker = |a: usize| match side {
        Whisker::Left => ops.comp(tower, n, i, gamma, a),
        Whisker::Right => ops.comp(tower, n, i, a, gamma),
    };
    let (u2, v2) = match side {
        Whisker::Left => (ops.comp(tower, n - 1, i, u1, u)?, ops.comp(tower, n - 1, i, v1, v)?),
        Whisker::Right => (ops.comp(tower, n - 1, i, u, u1)?, ops.comp(tower, n - 1, i, v, v1)?),
    };
    let w_gamma = ops.inv(tower, n, i, gamma)?;
    let lift_back = |b: usize| -> Result<usize> {
        let mut alpha = match side {
            Whisker::Left => ops.comp(tower, n, i, w_gamma, b)?,
            Whisker::Right => ops.comp(tower, n, i, b, w_gamma)?,
        };
        for &(j, kc, kd) in &cs {
            let right = ops.comp(tower, n, j - 1, alpha, kc)?;
            alpha = ops.comp(tower, n, j - 1, kd, right)?;
        }
        if model.src(n, alpha) != u || model.tgt(n, alpha) != v {
            return Err(Error::Inconsistent(format!("the corrected inverse of {b} does not land in the hom-set of ({u}, {v})")));
        }
        Ok(alpha)
    };

    let classes = HomotopyClasses::new(model, n)?;
    let hom = |a: usize, b: usize| (0..model.count(n)).filter(move |&c| model.src(n, c) == a && model.tgt(n, c) == b);
    let mut forward = BTreeMap::new();
    for a in hom(u, v) {
        forward.insert(a, whisker(a)?);
    }
    let mut backward = BTreeMap::new();
    for b in hom(u2, v2) {
        backward.insert(b, lift_back(b)?);
    }
    let class_forward = induced(&classes, &forward, "whiskering")?;
    let class_backward = induced(&classes, &backward, "its inverse")?;
    for (&a, &ka) in &forward {
        if classes.class_of(backward[&ka]) != classes.class_of(a) {
            return Err(Error::LawViolation(format!("L(K({a})) is not homotopic to {a}")));
        }
    }
    for (&b, &lb) in &backward {
        if classes.class_of(forward[&lb]) != classes.class_of(b) {
            return Err(Error::LawViolation(format!("K(L({b})) is not homotopic to {b}")));
        }
    }
    Ok(Division { n, i, side, gamma, u, v, u2, v2, forward, backward, class_forward, class_backward })
}

/// The map induced on classes, checking it does not depend on representatives.
fn induced(classes: &HomotopyClasses, cells: &BTreeMap<usize, usize>, what: &str) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for (&a, &b) in cells {
        let (ka, kb) = (classes.class_of(a), classes.class_of(b));
        if *out.entry(ka).or_insert(kb) != kb {
            return Err(Error::LawViolation(format!("{what} does not respect homotopy at {a}")));
        }
    }
    Ok(out)
}

/// A verified group isomorphism between two homotopy groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    pub n: usize,
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    /// `map[k]` is the image of the `k`-th element of `source`.
    pub map: Vec<usize>,
}

fn verified(n: usize, source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<BaseChange> {
    if !source.is_isomorphism(&target, &map) {
        return Err(Error::LawViolation(format!("base change in dimension {n} is not a group isomorphism")));
    }
    Ok(BaseChange { n, source, target, map })
}

/// The isomorphism `π_n(G, u) → π_n(G, x)` where `x` is the iterated source
/// (or, with `Side::Tgt`, target) 0-cell of the `(n-1)`-cell `u`.
pub fn base_change_iso(model: &Model, tower: &mut Tower, bundle: &PregroupoidBundle, n: usize, u: usize, side: Side) -> Result<BaseChange> {
    if n == 0 || u >= model.count(n - 1) {
        return Err(Error::InvalidArgument(format!("base change needs n >= 1 and an existing {}-cell", n.saturating_sub(1))));
    }
    let pi = pi_groupoid(model, tower, bundle, n)?;
    let x = model.face(side, n - 1, u, 0);
    let kx = iterated_unit(model, tower, bundle, x, 0, n - 1)?;
    let source = pi.group_at(u)?;
    let target = pi.group_at(kx)?;
    if n == 1 {
        return verified(n, source.clone(), target, (0..source.order()).collect());
    }
    let gamma_x = iterated_unit(model, tower, bundle, x, 0, n)?;
    let gamma_u = model.interpret(tower, bundle.unit(n - 1)?, &[u])?;
    let (near, far) = match side {
        Side::Src => (Whisker::Right, Whisker::Left),
        Side::Tgt => (Whisker::Left, Whisker::Right),
    };
    let first = divide(model, tower, bundle, n, 0, gamma_x, u, u, near)?;
    let second = divide(model, tower, bundle, n, 0, gamma_u, kx, kx, far)?;
    if first.u2 != second.u2 {
        return Err(Error::Inconsistent("the two whiskered bases differ".into()));
    }
    let src_elems = pi.hom(u, u);
    let tgt_elems = pi.hom(kx, kx);
    let map = src_elems
        .iter()
        .map(|a| {
            let b = second.class_backward[&first.class_forward[a]];
            tgt_elems.iter().position(|&t| t == b).ok_or_else(|| Error::Inconsistent("base change leaves the target group".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    verified(n, source, target, map)
}

/// The isomorphism `π_n(G, x) → π_n(G, y)` induced by a 1-cell `w : x → y`.
pub fn transport(model: &Model, tower: &mut Tower, bundle: &PregroupoidBundle, n: usize, w: usize) -> Result<BaseChange> {
    if n == 0 || w >= model.count(1) {
        return Err(Error::InvalidArgument("transport needs n >= 1 and an existing 1-cell".into()));
    }
    let (x, y) = (model.src(1, w), model.tgt(1, w));
    if n == 1 {
        // Conjugation by the class of w.
        let pi = pi_groupoid(model, tower, bundle, 1)?;
        let (gx, gy) = (pi.hom(x, x), pi.hom(y, y));
        let k = pi.classes.class_of(w);
        let map = gx
            .iter()
            .map(|&a| {
                let c = pi.comp(k, a).and_then(|ka| pi.comp(ka, pi.inverses[k])).expect("composable");
                gy.iter().position(|&e| e == c).expect("conjugate lands in the target group")
            })
            .collect();
        return verified(n, pi.group_at(x)?, pi.group_at(y)?, map);
    }
    let wn = iterated_unit(model, tower, bundle, w, 1, n - 1)?;
    let to_x = base_change_iso(model, tower, bundle, n, wn, Side::Src)?;
    let to_y = base_change_iso(model, tower, bundle, n, wn, Side::Tgt)?;
    let mut back = vec![0; to_x.map.len()];
    for (a, &b) in to_x.map.iter().enumerate() {
        back[b] = a;
    }
    let map = (0..to_x.target.order()).map(|b| to_y.map[back[b]]).collect();
    verified(n, to_x.target, to_y.target, map)
}
