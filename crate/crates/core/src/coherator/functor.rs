//! Morphisms of towers: an image term for every generator, validated against
//! the lifting equations.

use std::collections::BTreeMap;

use super::term::{GenId, Morph, Term};
use super::tower::Tower;
use crate::error::{Error, Result};

/// A validated functor between free extensions, determined by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFunctor {
    images: Vec<Term>,
}

impl TowerFunctor {
    /// The identity on `tower`.
    pub fn identity(tower: &Tower) -> TowerFunctor {
        TowerFunctor { images: tower.ids().map(|id| tower.app(id)).collect() }
    }

    /// Validates `assignment` (indexed by source generator name) generator by generator.
    pub fn new(source: &Tower, target: &Tower, assignment: &BTreeMap<String, Term>) -> Result<TowerFunctor> {
        let mut f = TowerFunctor { images: Vec::with_capacity(source.len()) };
        for h in source.generators() {
            let image = assignment.get(&h.name).ok_or_else(|| Error::Uninterpreted(h.name.clone()))?.clone();
            if image.source_dim() != h.source_dim || image.target() != &h.target {
                return Err(Error::IllTyped(format!("image of `{}` has the wrong type", h.name)));
            }
            target.check_well_typed(&image)?;
            let fs = f.translate_term(target, &h.src)?;
            let gs = f.translate_term(target, &h.tgt)?;
            if target.glob_source(&image)? != fs {
                return Err(Error::FunctorEquation { name: h.name.clone(), side: "source" });
            }
            if target.glob_target(&image)? != gs {
                return Err(Error::FunctorEquation { name: h.name.clone(), side: "target" });
            }
            f.images.push(image);
        }
        Ok(f)
    }

    /// Maps every generator to the target generator of the same name.
    pub fn by_name(source: &Tower, target: &Tower) -> Result<TowerFunctor> {
        let assignment = source
            .generators()
            .iter()
            .map(|h| {
                let id = target.lookup(&h.name).ok_or_else(|| Error::UnknownGenerator(h.name.clone()))?;
                Ok((h.name.clone(), target.app(id)))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        TowerFunctor::new(source, target, &assignment)
    }

    pub fn image(&self, id: GenId) -> &Term {
        &self.images[id.index()]
    }

    pub fn translate_term(&self, target: &Tower, t: &Term) -> Result<Term> {
        match t {
            Term::Cell { .. } => Ok(t.clone()),
            Term::App { gen, args, .. } => {
                let image = self.images.get(gen.index()).ok_or_else(|| Error::Uninterpreted(format!("#{}", gen.0)))?;
                let args = self.translate_morph(target, args)?;
                target.compose_term(&args, image)
            }
        }
    }

    pub fn translate_morph(&self, target: &Tower, m: &Morph) -> Result<Morph> {
        let comps = m.comps.iter().map(|c| self.translate_term(target, c)).collect::<Result<Vec<_>>>()?;
        Ok(Morph { source: m.source.clone(), target: m.target.clone(), comps })
    }
}
