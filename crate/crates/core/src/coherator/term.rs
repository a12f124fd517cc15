//! Normal-form morphisms of a free globular extension.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::globe::Table;

/// Index of a lifting generator inside its tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A disk-sourced morphism `D_m → T` in normal form.
///
/// Either a Θ₀ map (an m-cell of the realized sum `T`) or a generator applied
/// and followed by a tuple out of the generator's target. A generator is never
/// followed by a proper face of its source disk: those composites reduce.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Cell { target: Table, dim: usize, cell: usize },
    App { gen: GenId, dim: usize, args: Arc<Morph> },
}

/// A morphism `S → T` out of a globular sum: one normal-form term per leg of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morph {
    pub source: Table,
    pub target: Table,
    pub comps: Vec<Term>,
}

impl Term {
    pub fn source_dim(&self) -> usize {
        match self {
            Term::Cell { dim, .. } | Term::App { dim, .. } => *dim,
        }
    }

    pub fn source(&self) -> Table {
        Table::disk(self.source_dim())
    }

    pub fn target(&self) -> &Table {
        match self {
            Term::Cell { target, .. } => target,
            Term::App { args, .. } => &args.target,
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Cell { .. } => 1,
            Term::App { args, .. } => 1 + args.size(),
        }
    }

    /// Generators occurring anywhere in the term.
    pub fn generators(&self) -> BTreeSet<GenId> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut BTreeSet<GenId>) {
        if let Term::App { gen, args, .. } = self {
            out.insert(*gen);
            for c in &args.comps {
                c.collect_generators(out);
            }
        }
    }

    /// Θ₀ cells of the target reached by the term (leaves of the tree).
    pub fn leaf_cells(&self, out: &mut BTreeSet<(usize, usize)>) {
        match self {
            Term::Cell { dim, cell, .. } => {
                out.insert((*dim, *cell));
            }
            Term::App { args, .. } => {
                for c in &args.comps {
                    c.leaf_cells(out);
                }
            }
        }
    }

    /// Replaces every leaf cell through `f`, retargeting to `target`.
    pub fn map_leaves(&self, target: &Table, f: &dyn Fn(usize, usize) -> Option<usize>) -> Option<Term> {
        Some(match self {
            Term::Cell { dim, cell, .. } => Term::Cell { target: target.clone(), dim: *dim, cell: f(*dim, *cell)? },
            Term::App { gen, dim, args } => Term::App { gen: *gen, dim: *dim, args: Arc::new(args.map_leaves(target, f)?) },
        })
    }
}

impl Morph {
    pub fn size(&self) -> usize {
        self.comps.iter().map(Term::size).sum()
    }

    /// Views a disk-sourced morphism as a single term.
    pub fn as_term(&self) -> Option<&Term> {
        (self.comps.len() == 1).then(|| &self.comps[0])
    }

    pub fn from_term(t: Term) -> Morph {
        Morph { source: t.source(), target: t.target().clone(), comps: vec![t] }
    }

    pub fn map_leaves(&self, target: &Table, f: &dyn Fn(usize, usize) -> Option<usize>) -> Option<Morph> {
        let comps = self.comps.iter().map(|c| c.map_leaves(target, f)).collect::<Option<Vec<_>>>()?;
        Some(Morph { source: self.source.clone(), target: target.clone(), comps })
    }
}
