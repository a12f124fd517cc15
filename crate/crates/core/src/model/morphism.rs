//! Morphisms of models: cell maps commuting with faces and with every
//! generator's interpretation.

use super::Model;
use crate::coherator::Tower;
use crate::error::{Error, Result};

/// A validated morphism `source → target` over a fixed tower.
#[derive(Clone, Debug)]
pub struct ModelMorphism {
    pub source: Model,
    pub target: Model,
    /// `maps[d][c]` for `0 ≤ d ≤` the tower's truncation.
    pub maps: Vec<Vec<usize>>,
}

impl ModelMorphism {
    pub fn new(source: Model, target: Model, maps: Vec<Vec<usize>>, tower: &Tower) -> Result<ModelMorphism> {
        let f = ModelMorphism { source, target, maps };
        f.validate(tower)?;
        Ok(f)
    }

    /// Builds the cell maps dimension by dimension from a function.
    pub fn from_fn(source: Model, target: Model, tower: &Tower, f: impl Fn(usize, usize) -> usize) -> Result<ModelMorphism> {
        let maps = (0..=tower.truncation()).map(|d| (0..source.count(d)).map(|c| f(d, c)).collect()).collect();
        ModelMorphism::new(source, target, maps, tower)
    }

    /// The identity of a model.
    pub fn identity(model: &Model, tower: &Tower) -> Result<ModelMorphism> {
        ModelMorphism::from_fn(model.clone(), model.clone(), tower, |_, c| c)
    }

    /// The morphism of one-object models induced by a group homomorphism
    /// placed in dimension `n` (everything below is a single cell).
    pub fn from_group_hom(source: Model, target: Model, n: usize, hom: &[usize], tower: &Tower) -> Result<ModelMorphism> {
        ModelMorphism::from_fn(source, target, tower, |d, c| if d < n { 0 } else { hom[c] })
    }

    /// The map to a one-point model.
    pub fn collapse(source: Model, point: Model, tower: &Tower) -> Result<ModelMorphism> {
        ModelMorphism::from_fn(source, point, tower, |_, _| 0)
    }

    pub fn apply(&self, d: usize, c: usize) -> usize {
        self.maps[d][c]
    }

    fn validate(&self, tower: &Tower) -> Result<()> {
        let n = tower.truncation();
        let (g, h) = (&self.source, &self.target);
        if self.maps.len() != n + 1 {
            return Err(Error::InvalidMorphism(format!("expected cell maps in dimensions 0..={n}")));
        }
        for d in 0..=n {
            if self.maps[d].len() != g.count(d) {
                return Err(Error::InvalidMorphism(format!("the map in dimension {d} has the wrong length")));
            }
            if let Some(c) = self.maps[d].iter().position(|&x| x >= h.count(d)) {
                return Err(Error::InvalidMorphism(format!("cell {c} of dimension {d} is sent outside the target")));
            }
            if d == 0 {
                continue;
            }
            for c in 0..g.count(d) {
                let fc = self.maps[d][c];
                if self.maps[d - 1][g.src(d, c)] != h.src(d, fc) || self.maps[d - 1][g.tgt(d, c)] != h.tgt(d, fc) {
                    return Err(Error::InvalidMorphism(format!("cell {c} of dimension {d}: faces are not preserved")));
                }
            }
        }
        for id in tower.ids() {
            let gen = tower.gen(id);
            let m = gen.source_dim;
            for input in g.fiber_product(&gen.target) {
                let image: Vec<usize> = input.iter().enumerate().map(|(k, &x)| self.maps[gen.target.leg_dim(k + 1)][x]).collect();
                let lhs = self.maps[m][g.interpret(tower, id, &input)?];
                let rhs = h.interpret(tower, id, &image)?;
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!("does not commute with `{}` on {input:?}", gen.name)));
                }
            }
        }
        Ok(())
    }
}
