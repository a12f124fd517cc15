//! Finite models of a tower: truncated carriers, interpretations of the
//! lifting generators, evaluation of terms through fiber products, and
//! exhaustive model checking.

mod file;
mod morphism;
mod strict;

use std::fmt;
use std::sync::Arc;

use crate::coherator::{Expr, GenId, Morph, Term, Tower, TowerFunctor};
use crate::error::{Error, Result};
use crate::globe::{realize_sum, GlobularSet, Side, Table, Word};

pub use file::{ModelFile, TableInterpretation};
pub use morphism::ModelMorphism;
pub use strict::{build_strict, build_strict_multi, CrossedModule, StrictInterpretation, StrictKind};

/// How a model interprets the generators of a tower.
pub trait Interpretation: fmt::Debug + Send + Sync {
    /// The cell assigned to `gen` on a tuple of the fiber product over its target.
    fn interpret(&self, model: &Model, tower: &Tower, gen: GenId, input: &[usize]) -> Result<usize>;
}

/// A finite model: a truncated globular carrier, degenerate above its top
/// dimension, together with an interpretation of the generators.
#[derive(Clone, Debug)]
pub struct Model {
    name: String,
    carrier: GlobularSet,
    interp: Arc<dyn Interpretation>,
}

impl Model {
    pub fn new(name: impl Into<String>, carrier: GlobularSet, interp: Arc<dyn Interpretation>) -> Model {
        Model { name: name.into(), carrier, interp }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn carrier(&self) -> &GlobularSet {
        &self.carrier
    }

    pub fn interpretation(&self) -> &Arc<dyn Interpretation> {
        &self.interp
    }

    /// Highest dimension with non-degenerate cells.
    pub fn top(&self) -> usize {
        self.carrier.top()
    }

    /// Number of `d`-cells; above the top every cell is the identity on a top cell.
    pub fn count(&self, d: usize) -> usize {
        self.carrier.count(d.min(self.top()))
    }

    pub fn src(&self, d: usize, c: usize) -> usize {
        self.boundary(Side::Src, d, c)
    }

    pub fn tgt(&self, d: usize, c: usize) -> usize {
        self.boundary(Side::Tgt, d, c)
    }

    pub fn boundary(&self, side: Side, d: usize, c: usize) -> usize {
        assert!(d >= 1, "0-cells have no boundary");
        if d > self.top() {
            c
        } else {
            self.carrier.boundary(side, d, c)
        }
    }

    /// Iterated face of a `d`-cell down to dimension `e`.
    pub fn face(&self, side: Side, d: usize, c: usize, e: usize) -> usize {
        let top = self.top();
        if e >= top.min(d) {
            return c;
        }
        self.carrier.face(side, d.min(top), c, e)
    }

    /// Action of a coglobular word on a cell of dimension `w.to`.
    pub fn act(&self, w: &Word, c: usize) -> usize {
        match w.side {
            None => c,
            Some(side) => self.face(side, w.to, c, w.from),
        }
    }

    /// Whether two `d`-cells are parallel.
    pub fn parallel(&self, d: usize, a: usize, b: usize) -> bool {
        d == 0 || (self.src(d, a) == self.src(d, b) && self.tgt(d, a) == self.tgt(d, b))
    }

    /// Checks that `tuple` lies in the fiber product over `table`.
    pub fn check_tuple(&self, table: &Table, tuple: &[usize]) -> Result<()> {
        if tuple.len() != table.width() {
            return Err(Error::NotInFiberProduct(format!("{} cells for the sum {table}", tuple.len())));
        }
        for (k, &x) in tuple.iter().enumerate() {
            let d = table.leg_dim(k + 1);
            if x >= self.count(d) {
                return Err(Error::NotInFiberProduct(format!("cell {x} of dimension {d} does not exist")));
            }
        }
        for (k, &g) in table.lower().iter().enumerate() {
            let a = self.face(Side::Src, table.leg_dim(k + 1), tuple[k], g);
            let b = self.face(Side::Tgt, table.leg_dim(k + 2), tuple[k + 1], g);
            if a != b {
                return Err(Error::NotInFiberProduct(format!(
                    "{tuple:?}: source of component {} and target of component {} differ in dimension {g}",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(())
    }

    /// Every tuple of the iterated fiber product over `table`, in lexicographic order.
    pub fn fiber_product(&self, table: &Table) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(table.width());
        self.extend_tuples(table, &mut cur, &mut out);
        out
    }

    fn extend_tuples(&self, table: &Table, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = cur.len();
        if k == table.width() {
            out.push(cur.clone());
            return;
        }
        let d = table.leg_dim(k + 1);
        for x in 0..self.count(d) {
            if k > 0 {
                let g = table.lower()[k - 1];
                if self.face(Side::Src, table.leg_dim(k), cur[k - 1], g) != self.face(Side::Tgt, d, x, g) {
                    continue;
                }
            }
            cur.push(x);
            self.extend_tuples(table, cur, out);
            cur.pop();
        }
    }

    /// Interprets a single generator, checking the input tuple first.
    pub fn interpret(&self, tower: &Tower, gen: GenId, input: &[usize]) -> Result<usize> {
        self.check_tuple(&tower.gen(gen).target, input)?;
        self.interp.interpret(self, tower, gen, input)
    }

    /// Evaluates `t : D_m → T` on a tuple of the fiber product over `T`.
    pub fn eval(&self, tower: &Tower, t: &Term, input: &[usize]) -> Result<usize> {
        self.check_tuple(t.target(), input)?;
        self.eval_unchecked(tower, t, input)
    }

    fn eval_unchecked(&self, tower: &Tower, t: &Term, input: &[usize]) -> Result<usize> {
        match t {
            Term::Cell { target, dim, cell } => {
                let (k, w) = realize_sum(target).presentation(*dim, *cell);
                Ok(self.act(&w, input[k - 1]))
            }
            Term::App { gen, args, .. } => {
                let inner = args.comps.iter().map(|c| self.eval_unchecked(tower, c, input)).collect::<Result<Vec<_>>>()?;
                self.interp.interpret(self, tower, *gen, &inner)
            }
        }
    }

    /// Evaluates every component of a morphism of sums.
    pub fn eval_morph(&self, tower: &Tower, m: &Morph, input: &[usize]) -> Result<Vec<usize>> {
        self.check_tuple(&m.target, input)?;
        m.comps.iter().map(|c| self.eval_unchecked(tower, c, input)).collect()
    }

    /// Evaluates an unnormalized expression, composite by composite.
    pub fn eval_expr(&self, tower: &Tower, e: &Expr, input: &[usize]) -> Result<Vec<usize>> {
        match e {
            Expr::Cell { target, dim, cell } => {
                self.check_tuple(target, input)?;
                let (k, w) = realize_sum(target).presentation(*dim, *cell);
                Ok(vec![self.act(&w, input[k - 1])])
            }
            Expr::App { gen, args, .. } => {
                let inner = self.eval_expr(tower, args, input)?;
                Ok(vec![self.interpret(tower, *gen, &inner)?])
            }
            Expr::Tuple { comps, .. } => comps.iter().map(|c| Ok(self.eval_expr(tower, c, input)?[0])).collect(),
            // Contravariant: the outer map acts on the input first.
            Expr::Comp(g, f) => {
                let mid = self.eval_expr(tower, g, input)?;
                self.eval_expr(tower, f, &mid)
            }
        }
    }

    /// Exhaustively checks the two lifting equations of every generator.
    pub fn check(&self, tower: &Tower) -> Report {
        let mut report = Report::default();
        for id in tower.ids() {
            let h = tower.gen(id);
            let m = h.source_dim;
            for input in self.fiber_product(&h.target) {
                report.checked += 1;
                let fail = |message: String| Violation { generator: h.name.clone(), input: input.clone(), message };
                let out = match self.interp.interpret(self, tower, id, &input) {
                    Ok(out) => out,
                    Err(e) => {
                        report.violations.push(fail(e.to_string()));
                        continue;
                    }
                };
                if out >= self.count(m) {
                    report.violations.push(fail(format!("output {out} is not a {m}-cell")));
                    continue;
                }
                for (side, term) in [(Side::Src, &h.src), (Side::Tgt, &h.tgt)] {
                    match self.eval_unchecked(tower, term, &input) {
                        Ok(expected) => {
                            let got = self.boundary(side, m, out);
                            if got != expected {
                                let which = if side == Side::Src { "source" } else { "target" };
                                report
                                    .violations
                                    .push(fail(format!("{which} of the output is {got}, the lifting equation requires {expected}")));
                            }
                        }
                        Err(e) => report.violations.push(fail(e.to_string())),
                    }
                }
            }
        }
        report
    }

    /// The model over `source` obtained by precomposing with a tower functor.
    pub fn restrict(&self, target_tower: Arc<Tower>, functor: TowerFunctor) -> Model {
        let interp = Restricted { base: self.clone(), tower: target_tower, functor };
        Model { name: format!("restricted {}", self.name), carrier: self.carrier.clone(), interp: Arc::new(interp) }
    }

    /// Replaces the interpretation, keeping the carrier.
    pub fn with_interpretation(&self, name: impl Into<String>, interp: Arc<dyn Interpretation>) -> Model {
        Model { name: name.into(), carrier: self.carrier.clone(), interp }
    }
}

/// One failed lifting equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub generator: String,
    pub input: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {:?}: {}", self.generator, self.input, self.message)
    }
}

/// Outcome of checking a model against a tower.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Interpretation of a model pulled back along a tower functor.
#[derive(Debug)]
struct Restricted {
    base: Model,
    tower: Arc<Tower>,
    functor: TowerFunctor,
}

impl Interpretation for Restricted {
    fn interpret(&self, _model: &Model, _tower: &Tower, gen: GenId, input: &[usize]) -> Result<usize> {
        self.base.eval_unchecked(&self.tower, self.functor.image(gen), input)
    }
}

#[cfg(test)]
mod tests;
