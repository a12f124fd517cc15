//! Models given by explicit finite tables, and their JSON form.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Interpretation, Model};
use crate::coherator::stdlib::unit_name;
use crate::coherator::{GenId, Tower};
use crate::error::{Error, Result};
use crate::globe::GlobularSet;

/// Cells of one dimension: a count for dimension 0, face arrays above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub src: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tgt: Vec<usize>,
}

/// On-disk model: carrier up to `dimension` plus per-generator rows
/// `[input tuple, output cell]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub dimension: usize,
    pub cells: Vec<CellsEntry>,
    pub interp: BTreeMap<String, Vec<(Vec<usize>, usize)>>,
    /// `"unit-filler"` fills missing rows with identities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<String>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialize")
    }

    pub fn carrier(&self) -> Result<GlobularSet> {
        if self.cells.len() != self.dimension + 1 {
            return Err(Error::InvalidModel(format!("`cells` has {} entries for dimension {}", self.cells.len(), self.dimension)));
        }
        let points = self.cells[0].count.ok_or_else(|| Error::InvalidModel("dimension 0 needs a `count`".into()))?;
        let mut counts = vec![points];
        for (d, e) in self.cells.iter().enumerate().skip(1) {
            if e.src.len() != e.tgt.len() || e.count.is_some_and(|c| c != e.src.len()) {
                return Err(Error::InvalidModel(format!("dimension {d}: `src`, `tgt` and `count` disagree")));
            }
            counts.push(e.src.len());
        }
        let src = self.cells[1..].iter().map(|e| e.src.clone()).collect();
        let tgt = self.cells[1..].iter().map(|e| e.tgt.clone()).collect();
        GlobularSet::new(counts, src, tgt).map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn into_model(self, name: impl Into<String>) -> Result<Model> {
        let carrier = self.carrier()?;
        let unit_filler = match self.default.as_deref() {
            None => false,
            Some("unit-filler") => true,
            Some(other) => return Err(Error::InvalidModel(format!("unknown default policy `{other}`"))),
        };
        let rows = self.interp.into_iter().map(|(name, rows)| (name, rows.into_iter().collect())).collect();
        Ok(Model::new(name, carrier, Arc::new(TableInterpretation { rows, unit_filler })))
    }

    /// Tabulates every generator of `tower` in `model`.
    pub fn tabulate(model: &Model, tower: &Tower) -> Result<ModelFile> {
        let carrier = model.carrier();
        let mut cells = vec![CellsEntry { count: Some(carrier.count(0)), src: vec![], tgt: vec![] }];
        for d in 1..=carrier.top() {
            let n = carrier.count(d);
            cells.push(CellsEntry {
                count: None,
                src: (0..n).map(|c| carrier.src(d, c)).collect(),
                tgt: (0..n).map(|c| carrier.tgt(d, c)).collect(),
            });
        }
        let mut interp = BTreeMap::new();
        for id in tower.ids() {
            let h = tower.gen(id);
            let rows = model
                .fiber_product(&h.target)
                .into_iter()
                .map(|input| Ok((input.clone(), model.interpret(tower, id, &input)?)))
                .collect::<Result<Vec<_>>>()?;
            interp.insert(h.name.clone(), rows);
        }
        Ok(ModelFile { dimension: carrier.top(), cells, interp, default: None })
    }
}

/// Lookup-table interpretation keyed by generator name.
#[derive(Debug)]
pub struct TableInterpretation {
    rows: HashMap<String, HashMap<Vec<usize>, usize>>,
    unit_filler: bool,
}

impl Interpretation for TableInterpretation {
    fn interpret(&self, model: &Model, tower: &Tower, gen: GenId, input: &[usize]) -> Result<usize> {
        let h = tower.gen(gen);
        if let Some(&out) = self.rows.get(&h.name).and_then(|rows| rows.get(input)) {
            return Ok(out);
        }
        if !self.unit_filler {
            return Err(Error::Uninterpreted(format!("{} on {input:?}", h.name)));
        }
        let f = model.eval_unchecked(tower, &h.src, input)?;
        let g = model.eval_unchecked(tower, &h.tgt, input)?;
        if f != g {
            return Err(Error::FillerPolicy { name: h.name.clone(), witness: input.to_vec() });
        }
        let n = h.source_dim - 1;
        if n >= model.top() {
            return Ok(f);
        }
        let unit =
            tower.lookup(&unit_name(n)).filter(|&u| u != gen).ok_or_else(|| Error::Uninterpreted(format!("{} on {input:?}", h.name)))?;
        model.interpret(tower, unit, &[f])
    }
}
