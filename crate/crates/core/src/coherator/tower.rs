//! Cellular towers: named liftings added level by level over Θ₀.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::term::{GenId, Morph, Term};
use crate::error::{Error, Result};
use crate::globe::{realize_sum, Side, Table, Word, DEFAULT_TRUNCATION};
use crate::theta0::{self, Theta0Morphism};

/// A lifting `h : D_{n+1} → S` of an admissible pair `(f, g) : D_n → S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftGenerator {
    pub name: String,
    pub source_dim: usize,
    pub target: Table,
    pub src: Term,
    pub tgt: Term,
    pub level: usize,
}

/// Outcome of an admissibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Admissible,
    /// The two terms do not share source and target.
    TypeMismatch(String),
    /// The globular boundaries of the two terms differ on the given side.
    NotParallel(Side),
    /// The target sum is too high-dimensional for the source disk.
    DimensionTooHigh {
        target_dim: usize,
        n: usize,
    },
}

impl Verdict {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Verdict::Admissible)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Admissible => write!(f, "admissible"),
            Verdict::TypeMismatch(m) => write!(f, "not a pair of parallel terms: {m}"),
            Verdict::NotParallel(Side::Src) => write!(f, "not parallel: globular sources differ"),
            Verdict::NotParallel(Side::Tgt) => write!(f, "not parallel: globular targets differ"),
            Verdict::DimensionTooHigh { target_dim, n } => {
                write!(f, "dimension of target exceeds n+1 ({target_dim} > {n}+1)")
            }
        }
    }
}

/// An append-only cellular tower truncated at a fixed dimension.
#[derive(Clone, Debug)]
pub struct Tower {
    truncation: usize,
    gens: Vec<LiftGenerator>,
    index: HashMap<String, GenId>,
    auto_lifts: HashMap<(Term, Term), Term>,
    auto_count: usize,
}

impl Default for Tower {
    fn default() -> Self {
        Tower::new(DEFAULT_TRUNCATION)
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation && self.gens == other.gens
    }
}

impl Tower {
    pub fn new(truncation: usize) -> Tower {
        Tower { truncation, gens: Vec::new(), index: HashMap::new(), auto_lifts: HashMap::new(), auto_count: 0 }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generators(&self) -> &[LiftGenerator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen(&self, id: GenId) -> &LiftGenerator {
        &self.gens[id.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.gens.len() as u32).map(GenId)
    }

    pub fn max_level(&self) -> usize {
        self.gens.iter().map(|g| g.level).max().unwrap_or(0)
    }

    // ----- Θ₀ building blocks -----

    /// The Θ₀ term classifying an m-cell of the sum `target`.
    pub fn cell(&self, target: &Table, dim: usize, cell: usize) -> Result<Term> {
        let real = realize_sum(target);
        if dim > real.carrier.top() || cell >= real.carrier.count(dim) {
            return Err(Error::IllTyped(format!("{target} has no {dim}-cell {cell}")));
        }
        Ok(Term::Cell { target: target.clone(), dim, cell })
    }

    /// `ε_k ∘ w : D_{w.from} → T`.
    pub fn leg_word(&self, table: &Table, k: usize, w: &Word) -> Result<Term> {
        if k == 0 || k > table.width() || table.leg_dim(k) != w.to {
            return Err(Error::IllTyped(format!("no leg {k} of dimension {} in {table}", w.to)));
        }
        let real = realize_sum(table);
        Ok(Term::Cell { target: table.clone(), dim: w.from, cell: real.leg_image(k, w) })
    }

    pub fn eps(&self, table: &Table, k: usize) -> Result<Term> {
        if k == 0 || k > table.width() {
            return Err(Error::IllTyped(format!("{table} has no leg {k}")));
        }
        self.leg_word(table, k, &Word::identity(table.leg_dim(k)))
    }

    /// The word `D_from → D_to` as a term.
    pub fn word(&self, w: &Word) -> Term {
        Term::Cell { target: Table::disk(w.to), dim: w.from, cell: w.disk_cell() }
    }

    pub fn identity(&self, table: &Table) -> Morph {
        let comps = (1..=table.width()).map(|k| self.eps(table, k).expect("legs exist")).collect();
        Morph { source: table.clone(), target: table.clone(), comps }
    }

    /// The generator itself, `h : D_{n+1} → S`.
    pub fn app(&self, gen: GenId) -> Term {
        let g = self.gen(gen);
        Term::App { gen, dim: g.source_dim, args: Arc::new(self.identity(&g.target)) }
    }

    // ----- composition -----

    /// `t ∘ w` for a coglobular word `w : D_m → D_p` and `t : D_p → T`.
    pub fn precompose_word(&self, t: &Term, w: &Word) -> Result<Term> {
        if w.to != t.source_dim() {
            return Err(Error::IllTyped(format!("word into D{} precomposed to a term out of D{}", w.to, t.source_dim())));
        }
        let Some(side) = w.side else { return Ok(t.clone()) };
        match t {
            Term::Cell { target, dim, cell } => {
                let real = realize_sum(target);
                Ok(Term::Cell { target: target.clone(), dim: w.from, cell: real.carrier.face(side, *dim, *cell, w.from) })
            }
            Term::App { gen, args, .. } => {
                let g = self.gen(*gen);
                let boundary = match side {
                    Side::Src => &g.src,
                    Side::Tgt => &g.tgt,
                };
                let rest = self.precompose_word(boundary, &Word::face(side, w.from, w.to - 1))?;
                self.compose_term(args, &rest)
            }
        }
    }

    /// `g ∘ t` for `t : D_m → T` and `g : T → U`.
    pub fn compose_term(&self, g: &Morph, t: &Term) -> Result<Term> {
        if t.target() != &g.source {
            return Err(Error::IllTyped(format!("cannot compose a map out of {} after a map into {}", g.source, t.target())));
        }
        match t {
            Term::Cell { target, dim, cell } => {
                let (k, w) = realize_sum(target).presentation(*dim, *cell);
                self.precompose_word(&g.comps[k - 1], &w)
            }
            Term::App { gen, dim, args } => Ok(Term::App { gen: *gen, dim: *dim, args: Arc::new(self.compose(g, args)?) }),
        }
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morph, f: &Morph) -> Result<Morph> {
        if f.target != g.source {
            return Err(Error::IllTyped(format!("cannot compose a map out of {} after a map into {}", g.source, f.target)));
        }
        let comps = f.comps.iter().map(|t| self.compose_term(g, t)).collect::<Result<Vec<_>>>()?;
        Ok(Morph { source: f.source.clone(), target: g.target.clone(), comps })
    }

    /// The tuple `[c_1; …; c_w]` out of `source`, checking the gluing conditions.
    pub fn tuple(&self, source: &Table, comps: Vec<Term>) -> Result<Morph> {
        if comps.len() != source.width() {
            return Err(Error::IllTyped(format!("{} components for a tuple out of {source}", comps.len())));
        }
        let target = comps[0].target().clone();
        for (k, c) in comps.iter().enumerate() {
            if c.source_dim() != source.leg_dim(k + 1) || c.target() != &target {
                return Err(Error::IllTyped(format!(
                    "tuple component {} maps D{} -> {}, expected D{} -> {target}",
                    k + 1,
                    c.source_dim(),
                    c.target(),
                    source.leg_dim(k + 1)
                )));
            }
        }
        for (k, &g) in source.lower().iter().enumerate() {
            let a = self.precompose_word(&comps[k], &Word::face(Side::Src, g, source.leg_dim(k + 1)))?;
            let b = self.precompose_word(&comps[k + 1], &Word::face(Side::Tgt, g, source.leg_dim(k + 2)))?;
            if a != b {
                return Err(Error::Matching { k: k + 1, dim: g });
            }
        }
        Ok(Morph { source: source.clone(), target, comps })
    }

    /// `t ∘ σ_n` for `t` out of `D_n`.
    pub fn glob_source(&self, t: &Term) -> Result<Term> {
        self.glob_boundary(t, Side::Src)
    }

    /// `t ∘ τ_n` for `t` out of `D_n`.
    pub fn glob_target(&self, t: &Term) -> Result<Term> {
        self.glob_boundary(t, Side::Tgt)
    }

    pub fn glob_boundary(&self, t: &Term, side: Side) -> Result<Term> {
        let n = t.source_dim();
        if n == 0 {
            return Err(Error::IllTyped("a term out of D0 has no globular boundary".into()));
        }
        self.precompose_word(t, &Word::face(side, n - 1, n))
    }

    /// Whether `f` and `g` are globularly parallel.
    pub fn parallel(&self, f: &Term, g: &Term) -> Result<bool> {
        if f.source_dim() != g.source_dim() || f.target() != g.target() {
            return Err(Error::IllTyped("parallelism needs terms with equal source and target".into()));
        }
        Ok(self.parallel_side(f, g)?.is_none())
    }

    fn parallel_side(&self, f: &Term, g: &Term) -> Result<Option<Side>> {
        if f.source_dim() == 0 {
            return Ok(None);
        }
        for side in [Side::Src, Side::Tgt] {
            if self.glob_boundary(f, side)? != self.glob_boundary(g, side)? {
                return Ok(Some(side));
            }
        }
        Ok(None)
    }

    pub fn admissible(&self, f: &Term, g: &Term) -> Verdict {
        if f.source_dim() != g.source_dim() || f.target() != g.target() {
            return Verdict::TypeMismatch(format!("D{} -> {} against D{} -> {}", f.source_dim(), f.target(), g.source_dim(), g.target()));
        }
        match self.parallel_side(f, g) {
            Ok(Some(side)) => return Verdict::NotParallel(side),
            Ok(None) => {}
            Err(e) => return Verdict::TypeMismatch(e.to_string()),
        }
        let n = f.source_dim();
        let target_dim = f.target().dimension();
        if target_dim > n + 1 {
            return Verdict::DimensionTooHigh { target_dim, n };
        }
        Verdict::Admissible
    }

    fn level_of(&self, terms: &[&Term]) -> usize {
        let gens: BTreeSet<GenId> = terms.iter().flat_map(|t| t.generators()).collect();
        1 + gens.iter().map(|g| self.gen(*g).level).max().unwrap_or(0)
    }

    fn check_term(&self, t: &Term) -> Result<()> {
        for g in t.generators() {
            if g.index() >= self.gens.len() {
                return Err(Error::UnknownGenerator(format!("#{}", g.0)));
            }
        }
        Ok(())
    }

    /// Adds the lifting `name` of the admissible pair `(f, g)`.
    pub fn declare_lift(&mut self, name: &str, f: Term, g: Term) -> Result<GenId> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.check_term(&f)?;
        self.check_term(&g)?;
        let n = f.source_dim();
        if n + 1 > self.truncation {
            return Err(Error::Truncation { dim: n + 1, truncation: self.truncation });
        }
        let verdict = self.admissible(&f, &g);
        if !verdict.is_admissible() {
            return Err(Error::Inadmissible(verdict.to_string()));
        }
        let level = self.level_of(&[&f, &g]);
        let id = GenId(self.gens.len() as u32);
        self.gens.push(LiftGenerator { name: name.to_string(), source_dim: n + 1, target: f.target().clone(), src: f, tgt: g, level });
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// A lifting of `(f, g)`, declared on demand under a generated `auto.<n>` name.
    ///
    /// When the target sum is too high-dimensional but both terms only touch a
    /// lower-dimensional sub-sum of faces, the lifting is declared into that
    /// sub-sum and pushed forward along the face inclusion.
    pub fn auto_lift(&mut self, f: &Term, g: &Term) -> Result<Term> {
        let key = (f.clone(), g.clone());
        if let Some(t) = self.auto_lifts.get(&key) {
            return Ok(t.clone());
        }
        let verdict = self.admissible(f, g);
        let term = match verdict {
            Verdict::Admissible => {
                let name = self.fresh_auto_name();
                let id = self.declare_lift(&name, f.clone(), g.clone())?;
                self.app(id)
            }
            Verdict::DimensionTooHigh { .. } => {
                let (inclusion, f2, g2) = self
                    .factor_through_faces(f, g)
                    .ok_or_else(|| Error::Inadmissible(format!("{verdict}, and no lower-dimensional face sub-sum carries the pair")))?;
                let name = self.fresh_auto_name();
                let id = self.declare_lift(&name, f2, g2)?;
                self.compose_term(&inclusion, &self.app(id))?
            }
            other => return Err(Error::Inadmissible(other.to_string())),
        };
        self.auto_lifts.insert(key, term.clone());
        Ok(term)
    }

    fn fresh_auto_name(&mut self) -> String {
        loop {
            let name = format!("auto.{}", self.auto_count);
            self.auto_count += 1;
            if !self.index.contains_key(&name) {
                return name;
            }
        }
    }

    /// Finds a sum `T'` of faces of the legs of `T` with an injective inclusion
    /// `T' → T` through which both terms factor, and with `dim T' ≤ n + 1`.
    fn factor_through_faces(&self, f: &Term, g: &Term) -> Option<(Morph, Term, Term)> {
        let target = f.target().clone();
        let real = realize_sum(&target);
        let n = f.source_dim();
        let mut leaves = BTreeSet::new();
        f.leaf_cells(&mut leaves);
        g.leaf_cells(&mut leaves);
        let width = target.width();
        // Per leg: highest dimension needed and which sides are needed there.
        let mut need: Vec<Option<(usize, bool, bool, bool)>> = vec![None; width];
        for &(d, c) in &leaves {
            let (k, w) = real.presentation(d, c);
            let entry = need[k - 1].get_or_insert((d, false, false, false));
            if d > entry.0 {
                *entry = (d, false, false, false);
            }
            if d == entry.0 {
                match w.side {
                    None => entry.3 = true,
                    Some(Side::Src) => entry.1 = true,
                    Some(Side::Tgt) => entry.2 = true,
                }
            }
        }
        let lower = target.lower();
        let mut upper = Vec::with_capacity(width);
        let mut sides = Vec::with_capacity(width);
        for k in 0..width {
            let full = target.upper()[k];
            let mut floor = 0;
            if k > 0 {
                floor = floor.max(lower[k - 1] + 1);
            }
            if k + 1 < width {
                floor = floor.max(lower[k] + 1);
            }
            let (dim, side) = match need[k] {
                None => (0, Side::Src),
                Some((_, _, _, true)) => (full, Side::Src),
                Some((d, true, true, _)) => (d + 1, Side::Src),
                Some((d, false, true, _)) => (d, Side::Tgt),
                Some((d, _, _, _)) => (d, Side::Src),
            };
            upper.push(dim.max(floor).min(full));
            sides.push(side);
        }
        let sub = Table::new(upper.clone(), lower.to_vec()).ok()?;
        if sub.dimension() > n + 1 {
            return None;
        }
        let comps = (0..width)
            .map(|k| self.leg_word(&target, k + 1, &Word::face(sides[k], upper[k], target.upper()[k])))
            .collect::<Result<Vec<_>>>()
            .ok()?;
        let inclusion = self.tuple(&sub, comps).ok()?;
        let theta = theta0::pair(
            &inclusion
                .comps
                .iter()
                .map(|c| match c {
                    Term::Cell { target, dim, cell } => Theta0Morphism::from_cell(target, *dim, *cell),
                    Term::App { .. } => unreachable!("face inclusions are Θ₀ maps"),
                })
                .collect::<Result<Vec<_>>>()
                .ok()?,
            &sub,
        )
        .ok()?;
        let mut preimage: HashMap<(usize, usize), usize> = HashMap::new();
        for (d, cells) in theta.map.iter().enumerate() {
            for (c, &img) in cells.iter().enumerate() {
                if preimage.insert((d, img), c).is_some() {
                    return None;
                }
            }
        }
        let back = |d: usize, c: usize| preimage.get(&(d, c)).copied();
        let f2 = f.map_leaves(&sub, &back)?;
        let g2 = g.map_leaves(&sub, &back)?;
        Some((inclusion, f2, g2))
    }

    /// Rebuilds `t` through the public constructors, confirming it is well typed.
    pub fn check_well_typed(&self, t: &Term) -> Result<()> {
        match t {
            Term::Cell { target, dim, cell } => self.cell(target, *dim, *cell).map(|_| ()),
            Term::App { gen, dim, args } => {
                if gen.index() >= self.gens.len() {
                    return Err(Error::UnknownGenerator(format!("#{}", gen.0)));
                }
                let g = self.gen(*gen);
                if g.source_dim != *dim || g.target != args.source {
                    return Err(Error::IllTyped(format!("`{}` applied with the wrong type", g.name)));
                }
                for c in &args.comps {
                    self.check_well_typed(c)?;
                }
                self.tuple(&args.source, args.comps.clone()).map(|_| ())
            }
        }
    }
}
