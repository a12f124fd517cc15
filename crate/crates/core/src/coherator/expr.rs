//! Unnormalized expressions and a small-step rewriting system whose normal
//! forms are exactly the [`Term`]s produced by the big-step builders.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::term::{GenId, Morph, Term};
use super::tower::Tower;
use crate::error::{Error, Result};
use crate::globe::{realize_sum, Side, Table, Word};

/// A composite built from Θ₀ cells, generators, tuples and composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Cell {
        target: Table,
        dim: usize,
        cell: usize,
    },
    /// A generator followed by a map out of its target.
    App {
        gen: GenId,
        dim: usize,
        args: Box<Expr>,
    },
    Tuple {
        source: Table,
        target: Table,
        comps: Vec<Expr>,
    },
    /// `Comp(g, f)` is `g ∘ f`.
    Comp(Box<Expr>, Box<Expr>),
}

/// Order in which redexes are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostInnermost,
    RightmostOutermost,
}

/// Result of a small-step normalization run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub normal: Expr,
    pub steps: usize,
}

fn word_of_disk_cell(m: usize, p: usize, cell: usize) -> Word {
    if m == p {
        Word::identity(p)
    } else {
        Word::face(if cell == 0 { Side::Src } else { Side::Tgt }, m, p)
    }
}

impl Expr {
    pub fn comp(g: Expr, f: Expr) -> Expr {
        Expr::Comp(Box::new(g), Box::new(f))
    }

    pub fn from_term(t: &Term) -> Expr {
        match t {
            Term::Cell { target, dim, cell } => Expr::Cell { target: target.clone(), dim: *dim, cell: *cell },
            Term::App { gen, dim, args } => Expr::App { gen: *gen, dim: *dim, args: Box::new(Expr::from_morph(args)) },
        }
    }

    /// Width-one morphisms become their component, wider ones a tuple.
    pub fn from_morph(m: &Morph) -> Expr {
        match m.as_term() {
            Some(t) => Expr::from_term(t),
            None => {
                Expr::Tuple { source: m.source.clone(), target: m.target.clone(), comps: m.comps.iter().map(Expr::from_term).collect() }
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Cell { .. } => 1,
            Expr::App { args, .. } => 1 + args.size(),
            Expr::Tuple { comps, .. } => 1 + comps.iter().map(Expr::size).sum::<usize>(),
            Expr::Comp(g, f) => 1 + g.size() + f.size(),
        }
    }

    pub fn source(&self) -> Table {
        match self {
            Expr::Cell { dim, .. } | Expr::App { dim, .. } => Table::disk(*dim),
            Expr::Tuple { source, .. } => source.clone(),
            Expr::Comp(_, f) => f.source(),
        }
    }

    pub fn target(&self) -> Table {
        match self {
            Expr::Cell { target, .. } | Expr::Tuple { target, .. } => target.clone(),
            Expr::App { args, .. } => args.target(),
            Expr::Comp(g, _) => g.target(),
        }
    }

    /// Reads a normal form back as a morphism.
    pub fn to_morph(&self) -> Option<Morph> {
        match self {
            Expr::Tuple { source, target, comps } => {
                let comps = comps.iter().map(Expr::to_term).collect::<Option<Vec<_>>>()?;
                Some(Morph { source: source.clone(), target: target.clone(), comps })
            }
            other => other.to_term().map(Morph::from_term),
        }
    }

    pub fn to_term(&self) -> Option<Term> {
        match self {
            Expr::Cell { target, dim, cell } => Some(Term::Cell { target: target.clone(), dim: *dim, cell: *cell }),
            Expr::App { gen, dim, args } => Some(Term::App { gen: *gen, dim: *dim, args: Arc::new(args.to_morph()?) }),
            _ => None,
        }
    }
}

/// One rewrite at the root, if a rule applies.
fn rewrite_root(tower: &Tower, e: &Expr) -> Result<Option<Expr>> {
    match e {
        Expr::Tuple { comps, .. } if comps.len() == 1 => Ok(Some(comps[0].clone())),
        Expr::Comp(g, f) => {
            if let Expr::Comp(a, b) = g.as_ref() {
                return Ok(Some(Expr::comp((**a).clone(), Expr::comp((**b).clone(), (**f).clone()))));
            }
            match f.as_ref() {
                Expr::App { gen, dim, args } => {
                    Ok(Some(Expr::App { gen: *gen, dim: *dim, args: Box::new(Expr::comp((**g).clone(), (**args).clone())) }))
                }
                Expr::Tuple { source, comps, .. } => Ok(Some(Expr::Tuple {
                    source: source.clone(),
                    target: g.target(),
                    comps: comps.iter().map(|c| Expr::comp((**g).clone(), c.clone())).collect(),
                })),
                Expr::Cell { target: ftarget, dim: m, cell } => match g.as_ref() {
                    Expr::Cell { .. } => {
                        let p = ftarget.as_disk().ok_or_else(|| Error::IllTyped("cell composite through a sum".into()))?;
                        let gt = g.to_term().expect("cells are terms");
                        let t = tower.precompose_word(&gt, &word_of_disk_cell(*m, p, *cell))?;
                        Ok(Some(Expr::from_term(&t)))
                    }
                    Expr::Tuple { comps, .. } => {
                        let (k, w) = realize_sum(ftarget).presentation(*m, *cell);
                        let comp = comps[k - 1].clone();
                        Ok(Some(if w.is_identity() {
                            comp
                        } else {
                            Expr::comp(comp, Expr::Cell { target: Table::disk(w.to), dim: w.from, cell: w.disk_cell() })
                        }))
                    }
                    Expr::App { gen, args, dim } => {
                        let w = word_of_disk_cell(*m, *dim, *cell);
                        let Some(side) = w.side else { return Ok(Some((**g).clone())) };
                        let h = tower.gen(*gen);
                        let boundary = Expr::from_term(if side == Side::Src { &h.src } else { &h.tgt });
                        let rest = Word::face(side, *m, dim - 1);
                        let inner = if rest.is_identity() {
                            boundary
                        } else {
                            Expr::comp(boundary, Expr::Cell { target: Table::disk(rest.to), dim: rest.from, cell: rest.disk_cell() })
                        };
                        Ok(Some(Expr::comp((**args).clone(), inner)))
                    }
                    Expr::Comp(..) => unreachable!("handled by reassociation"),
                },
                Expr::Comp(..) => Ok(None),
            }
        }
        _ => Ok(None),
    }
}

fn children(e: &Expr) -> Vec<&Expr> {
    match e {
        Expr::Cell { .. } => vec![],
        Expr::App { args, .. } => vec![args],
        Expr::Tuple { comps, .. } => comps.iter().collect(),
        Expr::Comp(g, f) => vec![g, f],
    }
}

fn replace_child(e: &Expr, i: usize, new: Expr) -> Expr {
    match e {
        Expr::Cell { .. } => unreachable!("cells have no children"),
        Expr::App { gen, dim, .. } => Expr::App { gen: *gen, dim: *dim, args: Box::new(new) },
        Expr::Tuple { source, target, comps } => {
            let mut comps = comps.clone();
            comps[i] = new;
            Expr::Tuple { source: source.clone(), target: target.clone(), comps }
        }
        Expr::Comp(g, f) => {
            if i == 0 {
                Expr::comp(new, (**f).clone())
            } else {
                Expr::comp((**g).clone(), new)
            }
        }
    }
}

/// Performs one rewrite step under `strategy`; `None` on a normal form.
pub fn step(tower: &Tower, e: &Expr, strategy: Strategy) -> Result<Option<Expr>> {
    match strategy {
        Strategy::LeftmostInnermost => {
            for (i, c) in children(e).into_iter().enumerate() {
                if let Some(new) = step(tower, c, strategy)? {
                    return Ok(Some(replace_child(e, i, new)));
                }
            }
            rewrite_root(tower, e)
        }
        Strategy::RightmostOutermost => {
            if let Some(new) = rewrite_root(tower, e)? {
                return Ok(Some(new));
            }
            let cs = children(e);
            for i in (0..cs.len()).rev() {
                if let Some(new) = step(tower, cs[i], strategy)? {
                    return Ok(Some(replace_child(e, i, new)));
                }
            }
            Ok(None)
        }
    }
}

/// Rewrites to normal form, counting steps. Fails once `limit` steps are exceeded.
pub fn reduce(tower: &Tower, e: &Expr, strategy: Strategy, limit: usize) -> Result<Reduction> {
    let mut cur = e.clone();
    let mut steps = 0;
    while let Some(next) = step(tower, &cur, strategy)? {
        steps += 1;
        if steps > limit {
            return Err(Error::Inconsistent(format!("rewriting exceeded {limit} steps")));
        }
        cur = next;
    }
    Ok(Reduction { normal: cur, steps })
}

/// Big-step evaluation of an expression to its normal morphism.
pub fn normalize(tower: &Tower, e: &Expr) -> Result<Morph> {
    match e {
        Expr::Cell { target, dim, cell } => Ok(Morph::from_term(tower.cell(target, *dim, *cell)?)),
        Expr::App { gen, dim, args } => {
            if gen.index() >= tower.len() {
                return Err(Error::UnknownGenerator(format!("#{}", gen.0)));
            }
            let h = tower.gen(*gen);
            let args = normalize(tower, args)?;
            if h.source_dim != *dim || args.source != h.target {
                return Err(Error::IllTyped(format!("`{}` applied with the wrong type", h.name)));
            }
            Ok(Morph::from_term(Term::App { gen: *gen, dim: *dim, args: Arc::new(args) }))
        }
        Expr::Tuple { source, comps, .. } => {
            let comps = comps
                .iter()
                .map(|c| {
                    let m = normalize(tower, c)?;
                    m.as_term().cloned().ok_or_else(|| Error::IllTyped("tuple component out of a non-disk sum".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            tower.tuple(source, comps)
        }
        Expr::Comp(g, f) => tower.compose(&normalize(tower, g)?, &normalize(tower, f)?),
    }
}

/// A random well-typed expression over `tower`.
///
/// It starts from a face word or a generator and post-composes a random chain
/// of maps drawn from the generators' boundaries, reassociated and re-tupled
/// at random so that many different rewrite paths exist.
pub fn random_expr<R: Rng>(tower: &Tower, rng: &mut R, max_len: usize) -> Expr {
    let pool = morph_pool(tower);
    let mut chain: Vec<Morph> = Vec::new();
    let start = random_start(tower, rng);
    let mut current = start.target.clone();
    chain.push(start);
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let options: Vec<&Morph> = pool.iter().filter(|m| m.source == current).collect();
        let Some(next) = options.choose(rng) else { break };
        current = next.target.clone();
        chain.push((*next).clone());
    }
    let exprs: Vec<Expr> = chain.iter().map(|m| scramble(tower, m, rng, 2)).collect();
    associate(exprs, rng)
}

fn random_start<R: Rng>(tower: &Tower, rng: &mut R) -> Morph {
    let n = tower.len();
    if n == 0 || rng.gen_bool(0.15) {
        let to = rng.gen_range(1..=tower.truncation().max(1));
        let from = rng.gen_range(0..to);
        let side = if rng.gen_bool(0.5) { Side::Src } else { Side::Tgt };
        return Morph::from_term(tower.word(&Word::face(side, from, to)));
    }
    let id = GenId(rng.gen_range(0..n) as u32);
    let h = tower.app(id);
    let dim = h.source_dim();
    let from = rng.gen_range(0..=dim);
    let side = if rng.gen_bool(0.5) { Side::Src } else { Side::Tgt };
    let term = tower.precompose_word(&h, &Word::face(side, from, dim)).expect("faces of a generator are well typed");
    Morph::from_term(term)
}

/// Morphisms occurring inside the tower: generators, their boundary terms and
/// every argument tuple appearing in those.
fn morph_pool(tower: &Tower) -> Vec<Morph> {
    let mut pool = Vec::new();
    fn walk(t: &Term, pool: &mut Vec<Morph>) {
        pool.push(Morph::from_term(t.clone()));
        if let Term::App { args, .. } = t {
            pool.push((**args).clone());
            for c in &args.comps {
                walk(c, pool);
            }
        }
    }
    for id in tower.ids() {
        let h = tower.gen(id);
        pool.push(Morph::from_term(tower.app(id)));
        walk(&h.src, &mut pool);
        walk(&h.tgt, &mut pool);
    }
    pool.sort();
    pool.dedup();
    pool
}

/// An unnormalized expression denoting `m`.
fn scramble<R: Rng>(tower: &Tower, m: &Morph, rng: &mut R, depth: usize) -> Expr {
    if m.comps.len() > 1 || rng.gen_bool(0.2) {
        let comps = m.comps.iter().map(|t| scramble_term(tower, t, rng, depth)).collect();
        return Expr::Tuple { source: m.source.clone(), target: m.target.clone(), comps };
    }
    scramble_term(tower, &m.comps[0], rng, depth)
}

fn scramble_term<R: Rng>(tower: &Tower, t: &Term, rng: &mut R, depth: usize) -> Expr {
    match t {
        Term::App { gen, dim, args } if depth > 0 => {
            let inner = scramble(tower, args, rng, depth - 1);
            let args = if rng.gen_bool(0.3) {
                let id = Expr::from_morph(&tower.identity(&args.source));
                Expr::comp(inner, id)
            } else {
                inner
            };
            Expr::App { gen: *gen, dim: *dim, args: Box::new(args) }
        }
        Term::Cell { target, dim, cell } if rng.gen_bool(0.3) => {
            // Split a cell through its presentation: leg ∘ word.
            let (k, w) = realize_sum(target).presentation(*dim, *cell);
            let leg = tower.eps(target, k).expect("presented legs exist");
            if w.is_identity() {
                Expr::from_term(&leg)
            } else {
                Expr::comp(Expr::from_term(&leg), Expr::from_term(&tower.word(&w)))
            }
        }
        other => Expr::from_term(other),
    }
}

/// Combines a chain `[f0, f1, …]` (apply `f0` first) into a randomly bracketed composite.
fn associate<R: Rng>(mut exprs: Vec<Expr>, rng: &mut R) -> Expr {
    while exprs.len() > 1 {
        let i = rng.gen_range(0..exprs.len() - 1);
        let f = exprs.remove(i);
        let g = exprs.remove(i);
        exprs.insert(i, Expr::comp(g, f));
    }
    exprs.pop().expect("chains are nonempty")
}
