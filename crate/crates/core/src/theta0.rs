//! The category Θ₀: tables of dimensions with maps of their realized globular sums.

use crate::error::{Error, Result};
use crate::globe::{realize_sum, Side, Table, Word};

/// A map of globular sets between two realized sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theta0Morphism {
    pub source: Table,
    pub target: Table,
    /// `map[d][c]` is the image of the d-cell `c` of the source carrier.
    pub map: Vec<Vec<usize>>,
}

impl Theta0Morphism {
    pub fn identity(table: &Table) -> Theta0Morphism {
        let real = realize_sum(table);
        let map = real.carrier.counts().iter().map(|&n| (0..n).collect()).collect();
        Theta0Morphism { source: table.clone(), target: table.clone(), map }
    }

    /// The map `D_m → T` classifying an m-cell of the carrier of `T`.
    pub fn from_cell(target: &Table, m: usize, cell: usize) -> Result<Theta0Morphism> {
        let real = realize_sum(target);
        if m > real.carrier.top() || cell >= real.carrier.count(m) {
            return Err(Error::ObjectMismatch(format!("{target} has no {m}-cell {cell}")));
        }
        let map =
            (0..=m)
                .map(|d| {
                    if d == m {
                        vec![cell]
                    } else {
                        vec![real.carrier.face(Side::Src, m, cell, d), real.carrier.face(Side::Tgt, m, cell, d)]
                    }
                })
                .collect();
        Ok(Theta0Morphism { source: Table::disk(m), target: target.clone(), map })
    }

    /// Cocone leg `ε_k : D_{i_k} → T`, counted from 1.
    pub fn leg(table: &Table, k: usize) -> Result<Theta0Morphism> {
        if k == 0 || k > table.width() {
            return Err(Error::ObjectMismatch(format!("{table} has no leg {k}")));
        }
        let real = realize_sum(table);
        Theta0Morphism::from_cell(table, table.leg_dim(k), real.top_cell(k))
    }

    /// For a disk-sourced map, the top cell it classifies.
    pub fn classified_cell(&self) -> Option<(usize, usize)> {
        let m = self.source.as_disk()?;
        Some((m, self.map[m][0]))
    }

    /// Checks that the cell map commutes with sources and targets.
    pub fn validate(&self) -> Result<()> {
        let s = realize_sum(&self.source);
        let t = realize_sum(&self.target);
        for d in 0..=s.carrier.top() {
            if self.map.len() <= d || self.map[d].len() != s.carrier.count(d) {
                return Err(Error::InvalidMorphism(format!("cell map incomplete in dimension {d}")));
            }
            for c in 0..s.carrier.count(d) {
                let img = self.map[d][c];
                if d > t.carrier.top() || img >= t.carrier.count(d) {
                    return Err(Error::InvalidMorphism(format!("{d}-cell {c} maps outside the target")));
                }
                if d >= 1 {
                    for side in [Side::Src, Side::Tgt] {
                        if self.map[d - 1][s.carrier.boundary(side, d, c)] != t.carrier.boundary(side, d, img) {
                            return Err(Error::InvalidMorphism(format!("{d}-cell {c} does not commute with {side:?}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `g ∘ f`, cellwise.
pub fn compose(g: &Theta0Morphism, f: &Theta0Morphism) -> Result<Theta0Morphism> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(format!("{} is not {}", f.target, g.source)));
    }
    let map = f.map.iter().enumerate().map(|(d, cells)| cells.iter().map(|&c| g.map[d][c]).collect()).collect();
    Ok(Theta0Morphism { source: f.source.clone(), target: g.target.clone(), map })
}

/// The unique map out of a globular sum restricting to the given disk maps.
pub fn pair(components: &[Theta0Morphism], source: &Table) -> Result<Theta0Morphism> {
    if components.len() != source.width() {
        return Err(Error::ObjectMismatch(format!("{} components for {source}", components.len())));
    }
    let target = components[0].target.clone();
    for (k, f) in components.iter().enumerate() {
        if f.source != Table::disk(source.leg_dim(k + 1)) || f.target != target {
            return Err(Error::ObjectMismatch(format!("component {} has type {} -> {}", k + 1, f.source, f.target)));
        }
    }
    for (k, &g) in source.lower().iter().enumerate() {
        let a = components[k].map[g][Side::Src.index()];
        let b = components[k + 1].map[g][Side::Tgt.index()];
        if a != b {
            return Err(Error::Matching { k: k + 1, dim: g });
        }
    }
    let real = realize_sum(source);
    let map = (0..=real.carrier.top())
        .map(|d| {
            (0..real.carrier.count(d))
                .map(|c| {
                    let (k, w) = real.presentation(d, c);
                    components[k - 1].map[d][w.disk_cell()]
                })
                .collect()
        })
        .collect();
    let result = Theta0Morphism { source: source.clone(), target, map };
    result.validate()?;
    // The presentation choice must not matter: every leg restriction agrees.
    for (k, f) in components.iter().enumerate() {
        let restricted = compose(&result, &Theta0Morphism::leg(source, k + 1)?)?;
        if &restricted != f {
            let dim = source.lower().get(k).or(source.lower().get(k.wrapping_sub(1))).copied().unwrap_or(0);
            return Err(Error::Matching { k: k + 1, dim });
        }
    }
    Ok(result)
}

/// The map between disk representables induced by a coglobular word.
pub fn globe_functor(w: &Word) -> Theta0Morphism {
    let target = Table::disk(w.to);
    Theta0Morphism::from_cell(&target, w.from, w.disk_cell()).expect("words name cells of their target disk")
}
