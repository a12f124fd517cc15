//! Strict models: discrete sets, one-object groups, Eilenberg-MacLane
//! towers and crossed modules.
//!
//! Structural generators are recognized by their boundary pair and get the
//! strict operations. Every other generator is filled by a unit, which is
//! only legitimate when both sides of its pair already agree; that is checked
//! on every input.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Interpretation, Model};
use crate::coherator::{GenId, PregroupoidBundle, Role, Term, Tower};
use crate::error::{Error, Result};
use crate::globe::GlobularSet;
use crate::group::FiniteGroup;

/// A crossed module `∂ : A → G` with a left action of `G` on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub group: FiniteGroup,
    pub module: FiniteGroup,
    /// `boundary[a] = ∂(a)`.
    pub boundary: Vec<usize>,
    /// `action[g][a] = g ▷ a`.
    pub action: Vec<Vec<usize>>,
}

impl CrossedModule {
    /// Validates the homomorphism, action, equivariance and Peiffer conditions.
    pub fn new(group: FiniteGroup, module: FiniteGroup, boundary: Vec<usize>, action: Vec<Vec<usize>>) -> Result<CrossedModule> {
        let bad = |m: String| Err(Error::InvalidModel(format!("crossed module: {m}")));
        let (ng, na) = (group.order(), module.order());
        if !module.is_homomorphism(&group, &boundary) {
            return bad("the boundary is not a homomorphism".into());
        }
        if action.len() != ng || action.iter().any(|row| !module.is_isomorphism(&module, row)) {
            return bad("the action is not by automorphisms".into());
        }
        for g in 0..ng {
            for h in 0..ng {
                for a in 0..na {
                    if action[group.mul(g, h)][a] != action[g][action[h][a]] {
                        return bad(format!("the action is not compatible with the product at ({g}, {h})"));
                    }
                }
            }
        }
        if action[group.identity()].iter().enumerate().any(|(a, &b)| a != b) {
            return bad("the identity acts non-trivially".into());
        }
        for g in 0..ng {
            for a in 0..na {
                let lhs = boundary[action[g][a]];
                let rhs = group.mul(group.mul(g, boundary[a]), group.inv(g));
                if lhs != rhs {
                    return bad(format!("equivariance fails at ({g}, {a})"));
                }
            }
        }
        for a in 0..na {
            for b in 0..na {
                if action[boundary[a]][b] != module.mul(module.mul(a, b), module.inv(a)) {
                    return bad(format!("the Peiffer identity fails at ({a}, {b})"));
                }
            }
        }
        Ok(CrossedModule { group, module, boundary, action })
    }

    /// `A → G` with trivial boundary and trivial action (needs `A` abelian).
    pub fn trivial(group: FiniteGroup, module: FiniteGroup) -> Result<CrossedModule> {
        let boundary = vec![group.identity(); module.order()];
        let action = vec![(0..module.order()).collect(); group.order()];
        CrossedModule::new(group, module, boundary, action)
    }

    /// `G → G` by the identity, `G` acting by conjugation.
    pub fn conjugation(group: FiniteGroup) -> Result<CrossedModule> {
        let n = group.order();
        let action = (0..n).map(|g| (0..n).map(|a| group.mul(group.mul(g, a), group.inv(g))).collect()).collect();
        CrossedModule::new(group.clone(), group, (0..n).collect(), action)
    }

    fn cell(&self, a: usize, g: usize) -> usize {
        a * self.group.order() + g
    }

    fn split(&self, c: usize) -> (usize, usize) {
        (c / self.group.order(), c % self.group.order())
    }
}

/// The strict structures available as builtin models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictKind {
    /// A set of points, every higher cell an identity.
    Discrete(usize),
    /// One object, 1-cells a group.
    Kg1(FiniteGroup),
    /// Trivial below dimension `n`, an abelian group of `n`-cells.
    Kan(FiniteGroup, usize),
    /// One object, 1-cells `G`, 2-cells pairs `(a, g) : g ⇒ ∂(a)g`.
    CrossedModule(CrossedModule),
}

impl StrictKind {
    pub fn top(&self) -> usize {
        match self {
            StrictKind::Discrete(_) => 0,
            StrictKind::Kg1(_) => 1,
            StrictKind::Kan(_, n) => *n,
            StrictKind::CrossedModule(_) => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            StrictKind::Discrete(k) => format!("Discrete({k})"),
            StrictKind::Kg1(g) => format!("KG1({})", g.name()),
            StrictKind::Kan(a, n) => format!("K({}, {n})", a.name()),
            StrictKind::CrossedModule(x) => format!("XMod({} -> {})", x.module.name(), x.group.name()),
        }
    }

    fn carrier(&self) -> Result<GlobularSet> {
        match self {
            StrictKind::Discrete(k) => GlobularSet::new(vec![*k], vec![], vec![]),
            StrictKind::Kg1(g) => GlobularSet::new(vec![1, g.order()], vec![vec![0; g.order()]], vec![vec![0; g.order()]]),
            StrictKind::Kan(a, n) => {
                let mut counts = vec![1; *n];
                counts.push(a.order());
                let faces: Vec<Vec<usize>> = (1..=*n).map(|d| vec![0; counts[d]]).collect();
                GlobularSet::new(counts, faces.clone(), faces)
            }
            StrictKind::CrossedModule(x) => {
                let (ng, na) = (x.group.order(), x.module.order());
                let (mut src, mut tgt) = (Vec::new(), Vec::new());
                for c in 0..ng * na {
                    let (a, g) = x.split(c);
                    src.push(g);
                    tgt.push(x.group.mul(x.boundary[a], g));
                }
                GlobularSet::new(vec![1, ng, ng * na], vec![vec![0; ng], src], vec![vec![0; ng], tgt])
            }
        }
    }

    /// Composite of `i`-cells `a` (applied second) and `b` along dimension `j`.
    fn compose(&self, i: usize, j: usize, a: usize, b: usize) -> usize {
        let top = self.top();
        if i > top {
            return if j >= top { a } else { self.compose(top, j, a, b) };
        }
        match self {
            StrictKind::Discrete(_) => a,
            StrictKind::Kg1(g) => g.mul(a, b),
            StrictKind::Kan(g, n) => {
                if i < *n {
                    0
                } else {
                    g.mul(a, b)
                }
            }
            StrictKind::CrossedModule(x) => match (i, j) {
                (1, _) => x.group.mul(a, b),
                (2, 1) => {
                    let ((p, _), (q, g)) = (x.split(a), x.split(b));
                    x.cell(x.module.mul(p, q), g)
                }
                _ => {
                    let ((p, h), (q, g)) = (x.split(a), x.split(b));
                    x.cell(x.module.mul(p, x.action[h][q]), x.group.mul(h, g))
                }
            },
        }
    }

    /// The identity `(i+1)`-cell on an `i`-cell.
    fn unit(&self, i: usize, x: usize) -> usize {
        if i >= self.top() {
            return x;
        }
        match self {
            StrictKind::Discrete(_) => x,
            StrictKind::Kg1(g) => g.identity(),
            StrictKind::Kan(g, n) => {
                if i + 1 < *n {
                    0
                } else {
                    g.identity()
                }
            }
            StrictKind::CrossedModule(xm) => match i {
                0 => xm.group.identity(),
                _ => xm.cell(xm.module.identity(), x),
            },
        }
    }

    /// Inverse of an `i`-cell for composition along dimension `j`.
    fn inverse(&self, i: usize, j: usize, a: usize) -> usize {
        let top = self.top();
        if i > top {
            return if j >= top { a } else { self.inverse(top, j, a) };
        }
        match self {
            StrictKind::Discrete(_) => a,
            StrictKind::Kg1(g) => g.inv(a),
            StrictKind::Kan(g, n) => {
                if i < *n {
                    0
                } else {
                    g.inv(a)
                }
            }
            StrictKind::CrossedModule(x) => match (i, j) {
                (1, _) => x.group.inv(a),
                (2, 1) => {
                    let (p, g) = x.split(a);
                    x.cell(x.module.inv(p), x.group.mul(x.boundary[p], g))
                }
                _ => {
                    let (p, g) = x.split(a);
                    let gi = x.group.inv(g);
                    x.cell(x.action[gi][x.module.inv(p)], gi)
                }
            },
        }
    }

    fn validate(&self, tower: &Tower) -> Result<()> {
        match self {
            StrictKind::Discrete(0) => Err(Error::InvalidModel("a discrete model needs at least one point".into())),
            StrictKind::Kan(a, n) => {
                if !a.is_abelian() {
                    return Err(Error::InvalidModel(format!("K(A, {n}) needs an abelian group, {} is not", a.name())));
                }
                if *n < 2 || *n >= tower.truncation() {
                    return Err(Error::InvalidModel(format!(
                        "K(A, n) needs 2 <= n < {} (the truncation), got n = {n}",
                        tower.truncation()
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Interpretation of a tower in a strict structure.
#[derive(Debug)]
pub struct StrictInterpretation {
    kind: StrictKind,
    roles: HashMap<(Term, Term), Role>,
}

impl StrictInterpretation {
    pub fn kind(&self) -> &StrictKind {
        &self.kind
    }

    fn role(&self, tower: &Tower, gen: GenId) -> Option<Role> {
        let h = tower.gen(gen);
        self.roles.get(&(h.src.clone(), h.tgt.clone())).copied()
    }
}

impl Interpretation for StrictInterpretation {
    fn interpret(&self, model: &Model, tower: &Tower, gen: GenId, input: &[usize]) -> Result<usize> {
        let k = &self.kind;
        match self.role(tower, gen) {
            Some(Role::Comp { i, j }) => Ok(k.compose(i, j, input[0], input[1])),
            Some(Role::Unit { i }) => Ok(k.unit(i, input[0])),
            Some(Role::Inv { i, j }) => Ok(k.inverse(i, j, input[0])),
            None => {
                let h = tower.gen(gen);
                let f = model.eval_unchecked(tower, &h.src, input)?;
                let g = model.eval_unchecked(tower, &h.tgt, input)?;
                if f != g {
                    return Err(Error::FillerPolicy { name: h.name.clone(), witness: input.to_vec() });
                }
                Ok(k.unit(h.source_dim - 1, f))
            }
        }
    }
}

/// Builds the strict model of `kind` over `tower`, checking the unit-filler
/// policy on every non-structural generator and every input.
pub fn build_strict(kind: StrictKind, tower: &Tower, bundle: &PregroupoidBundle) -> Result<Model> {
    build_strict_multi(kind, tower, &[bundle])
}

/// As [`build_strict`], recognizing the operations of several bundles.
pub fn build_strict_multi(kind: StrictKind, tower: &Tower, bundles: &[&PregroupoidBundle]) -> Result<Model> {
    kind.validate(tower)?;
    let carrier = kind.carrier()?;
    let mut roles = HashMap::new();
    for b in bundles {
        roles.extend(b.role_table(tower)?);
    }
    let label = kind.label();
    let model = Model::new(label, carrier, Arc::new(StrictInterpretation { kind, roles }));
    for id in tower.ids() {
        let h = tower.gen(id);
        for input in model.fiber_product(&h.target) {
            model.interp.interpret(&model, tower, id, &input)?;
        }
    }
    Ok(model)
}
