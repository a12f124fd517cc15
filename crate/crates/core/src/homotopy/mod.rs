//! Homotopy of finite models: the homotopy relation, the groupoids of
//! homotopy classes, homotopy groups, whiskering bijections and weak
//! equivalences.

mod division;
mod weq;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::coherator::{PregroupoidBundle, Tower};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::model::Model;

pub use division::{base_change_iso, divide, transport, BaseChange, Division, Whisker};
pub use weq::{weak_equiv, WeqReport};

/// Whether some `(n+1)`-cell goes from `a` to `b`.
pub fn homotopic(model: &Model, n: usize, a: usize, b: usize) -> Result<bool> {
    if !model.parallel(n, a, b) {
        return Err(Error::InvalidArgument(format!("{n}-cells {a} and {b} are not parallel")));
    }
    Ok((0..model.count(n + 1)).any(|c| model.src(n + 1, c) == a && model.tgt(n + 1, c) == b))
}

/// The quotient of the `n`-cells by the homotopy relation, as a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyClasses {
    pub n: usize,
    class_of: Vec<usize>,
    reps: Vec<usize>,
}

impl HomotopyClasses {
    /// Computes the classes by exhaustive scan, failing if the relation
    /// given by the `(n+1)`-cells is not an equivalence relation.
    pub fn new(model: &Model, n: usize) -> Result<HomotopyClasses> {
        let count = model.count(n);
        let mut related = vec![vec![false; count]; count];
        for c in 0..model.count(n + 1) {
            related[model.src(n + 1, c)][model.tgt(n + 1, c)] = true;
        }
        let mut class_of = vec![usize::MAX; count];
        let mut reps = Vec::new();
        for a in 0..count {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for b in a..count {
                if related[a][b] {
                    class_of[b] = id;
                }
            }
        }
        for a in 0..count {
            for b in 0..count {
                if related[a][b] != (class_of[a] == class_of[b]) {
                    return Err(Error::LawViolation(format!("homotopy of {n}-cells is not an equivalence relation at ({a}, {b})")));
                }
            }
        }
        Ok(HomotopyClasses { n, class_of, reps })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, cell: usize) -> usize {
        self.class_of[cell]
    }

    /// Smallest cell of a class.
    pub fn rep(&self, class: usize) -> usize {
        self.reps[class]
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &k)| k == class).map(|(c, _)| c)
    }
}

/// Connected components of the 0-cells.
pub fn pi0(model: &Model) -> Result<HomotopyClasses> {
    HomotopyClasses::new(model, 0)
}

/// The groupoid of `(n-1)`-cells and homotopy classes of `n`-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiGroupoid {
    pub n: usize,
    pub objects: usize,
    pub classes: HomotopyClasses,
    /// `(source, target)` object of every class.
    pub ends: Vec<(usize, usize)>,
    /// `(a, b) ↦ a ∗ b`, defined when the source of `a` is the target of `b`.
    pub compose: BTreeMap<(usize, usize), usize>,
    pub units: Vec<usize>,
    pub inverses: Vec<usize>,
}

fn refuse_top(tower: &Tower, n: usize) -> Result<()> {
    if n + 1 > tower.truncation() {
        return Err(Error::Truncation { dim: n + 1, truncation: tower.truncation() });
    }
    Ok(())
}

/// Checks that the `(n+1)`-cells witness an equivalence relation through the
/// interpretations of the unit, inverse and composition generators.
fn check_relation_witnesses(model: &Model, tower: &Tower, bundle: &PregroupoidBundle, n: usize) -> Result<()> {
    let (unit, inv, comp) = (bundle.unit(n)?, bundle.inv(n + 1, n)?, bundle.comp(n + 1, n)?);
    let m = n + 1;
    let bad = |what: &str, cells: &[usize]| Error::LawViolation(format!("{what} witness fails on {cells:?} in dimension {m}"));
    for a in 0..model.count(n) {
        let k = model.interpret(tower, unit, &[a])?;
        if model.src(m, k) != a || model.tgt(m, k) != a {
            return Err(bad("reflexivity", &[a]));
        }
    }
    for h in 0..model.count(m) {
        let w = model.interpret(tower, inv, &[h])?;
        if model.src(m, w) != model.tgt(m, h) || model.tgt(m, w) != model.src(m, h) {
            return Err(bad("symmetry", &[h]));
        }
        for g in 0..model.count(m) {
            if model.src(m, g) != model.tgt(m, h) {
                continue;
            }
            let c = model.interpret(tower, comp, &[g, h])?;
            if model.src(m, c) != model.src(m, h) || model.tgt(m, c) != model.tgt(m, g) {
                return Err(bad("transitivity", &[g, h]));
            }
        }
    }
    Ok(())
}

/// Builds the groupoid of homotopy classes of `n`-cells with the operations
/// of `bundle`, verifying well-definedness and the groupoid laws exactly.
pub fn pi_groupoid(model: &Model, tower: &Tower, bundle: &PregroupoidBundle, n: usize) -> Result<PiGroupoid> {
    if n == 0 {
        return Err(Error::InvalidArgument("the groupoid of homotopy classes starts at n = 1".into()));
    }
    refuse_top(tower, n)?;
    check_relation_witnesses(model, tower, bundle, n)?;
    let classes = HomotopyClasses::new(model, n)?;
    let objects = model.count(n - 1);
    let ends: Vec<(usize, usize)> = (0..classes.len())
        .map(|k| {
            let r = classes.rep(k);
            (model.src(n, r), model.tgt(n, r))
        })
        .collect();
    let (comp, unit, inv) = (bundle.comp(n, n - 1)?, bundle.unit(n - 1)?, bundle.inv(n, n - 1)?);
    let cells = model.count(n);
    let mut compose = BTreeMap::new();
    for a in 0..cells {
        for b in 0..cells {
            if model.src(n, a) != model.tgt(n, b) {
                continue;
            }
            let c = classes.class_of(model.interpret(tower, comp, &[a, b])?);
            let key = (classes.class_of(a), classes.class_of(b));
            if let Some(&prev) = compose.get(&key) {
                if prev != c {
                    return Err(Error::LawViolation(format!("composition of {n}-cells is not compatible with homotopy at ({a}, {b})")));
                }
            }
            compose.insert(key, c);
        }
    }
    let units = (0..objects).map(|u| Ok(classes.class_of(model.interpret(tower, unit, &[u])?))).collect::<Result<Vec<_>>>()?;
    let mut inverses = vec![usize::MAX; classes.len()];
    for a in 0..cells {
        let k = classes.class_of(a);
        let w = classes.class_of(model.interpret(tower, inv, &[a])?);
        if inverses[k] != usize::MAX && inverses[k] != w {
            return Err(Error::LawViolation(format!("inverse of {n}-cells is not compatible with homotopy at {a}")));
        }
        inverses[k] = w;
    }
    let g = PiGroupoid { n, objects, classes, ends, compose, units, inverses };
    g.check_laws()?;
    Ok(g)
}

impl PiGroupoid {
    /// `a ∗ b` (first `b`, then `a`).
    pub fn comp(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    /// Classes from `u` to `v`, in increasing order.
    pub fn hom(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.ends.len()).filter(|&k| self.ends[k] == (u, v)).collect()
    }

    fn check_laws(&self) -> Result<()> {
        let bad = |m: String| Err(Error::LawViolation(format!("in the groupoid of {}-classes: {m}", self.n)));
        for (k, &(s, t)) in self.ends.iter().enumerate() {
            if self.comp(k, self.units[s]) != Some(k) || self.comp(self.units[t], k) != Some(k) {
                return bad(format!("unit law fails at class {k}"));
            }
            let w = self.inverses[k];
            if self.ends[w] != (t, s) || self.comp(k, w) != Some(self.units[t]) || self.comp(w, k) != Some(self.units[s]) {
                return bad(format!("inverse law fails at class {k}"));
            }
        }
        for (&(a, b), &ab) in &self.compose {
            if self.ends[ab] != (self.ends[b].0, self.ends[a].1) {
                return bad(format!("composite of {a} and {b} has the wrong ends"));
            }
            for c in self.hom_into(self.ends[b].0) {
                let (Some(bc), Some(ab_c)) = (self.comp(b, c), self.comp(ab, c)) else {
                    return bad(format!("composite of {b} and {c} is missing"));
                };
                if self.comp(a, bc) != Some(ab_c) {
                    return bad(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
        Ok(())
    }

    fn hom_into(&self, v: usize) -> Vec<usize> {
        (0..self.ends.len()).filter(|&k| self.ends[k].1 == v).collect()
    }

    /// The automorphism group of an object, elements listed by class order.
    pub fn group_at(&self, u: usize) -> Result<FiniteGroup> {
        let elems = self.hom(u, u);
        let pos = |k: usize| elems.iter().position(|&e| e == k).expect("closed under composition");
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.comp(a, b).expect("composable"))).collect()).collect();
        FiniteGroup::from_table(format!("pi_{}", self.n), table)
    }

    /// A canonical textual form: equal groupoids print identically.
    pub fn canonical(&self) -> String {
        let mut s = format!("n {}\nobjects {}\n", self.n, self.objects);
        for (k, (a, b)) in self.ends.iter().enumerate() {
            writeln!(s, "class {k} rep {} : {a} -> {b}", self.classes.rep(k)).expect("writing to a string");
        }
        for ((a, b), c) in &self.compose {
            writeln!(s, "comp {a} {b} = {c}").expect("writing to a string");
        }
        for (u, k) in self.units.iter().enumerate() {
            writeln!(s, "unit {u} = {k}").expect("writing to a string");
        }
        for (a, w) in self.inverses.iter().enumerate() {
            writeln!(s, "inv {a} = {w}").expect("writing to a string");
        }
        s
    }
}

/// The iterated unit on a 0-cell, an `m`-cell.
pub fn iterated_unit(model: &Model, tower: &Tower, bundle: &PregroupoidBundle, x: usize, from: usize, m: usize) -> Result<usize> {
    (from..m).try_fold(x, |c, d| model.interpret(tower, bundle.unit(d)?, &[c]))
}

/// `π_n` at a 0-cell: the automorphisms of the iterated unit in the
/// groupoid of `n`-classes. For `n = 0`, use [`pi0`].
pub fn pi_n(model: &Model, tower: &Tower, bundle: &PregroupoidBundle, n: usize, base: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("π_0 is a set; use pi0".into()));
    }
    if base >= model.count(0) {
        return Err(Error::InvalidArgument(format!("no 0-cell {base}")));
    }
    let g = pi_groupoid(model, tower, bundle, n)?;
    let u = iterated_unit(model, tower, bundle, base, 0, n - 1)?;
    let group = g.group_at(u)?;
    if n >= 2 && !group.is_abelian() {
        return Err(Error::LawViolation(format!("π_{n} at {base} is not abelian")));
    }
    Ok(group)
}
