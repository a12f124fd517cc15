//! The globe category, tables of dimensions, finite globular sets and
//! globular sums realized as colimits of disk representables.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation dimension.
pub const DEFAULT_TRUNCATION: usize = 6;

/// Source or target side of a boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Src,
    Tgt,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Src => Side::Tgt,
            Side::Tgt => Side::Src,
        }
    }

    /// Index of the face cell of this side inside a disk (0 for source, 1 for target).
    pub fn index(self) -> usize {
        match self {
            Side::Src => 0,
            Side::Tgt => 1,
        }
    }
}

/// A single coglobular generator `σ_k` or `τ_k : D_{k-1} → D_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub side: Side,
    pub index: usize,
}

/// A morphism `D_from → D_to` of the globe category in normal form.
///
/// Under the coglobular relations a nonempty composite only depends on its
/// first-applied letter, so every word is `σ^to_from`, `τ^to_from` or the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub from: usize,
    pub to: usize,
    /// `None` exactly when `from == to`.
    pub side: Option<Side>,
}

impl Word {
    pub fn identity(d: usize) -> Word {
        Word { from: d, to: d, side: None }
    }

    /// `σ^to_from` or `τ^to_from`; the identity when the dimensions agree.
    pub fn face(side: Side, from: usize, to: usize) -> Word {
        assert!(from <= to, "word from D{from} to D{to} goes downwards");
        Word { from, to, side: if from == to { None } else { Some(side) } }
    }

    pub fn letter(l: Letter) -> Word {
        assert!(l.index >= 1, "coglobular letters start at index 1");
        Word::face(l.side, l.index - 1, l.index)
    }

    pub fn is_identity(&self) -> bool {
        self.side.is_none()
    }

    /// Normal form of a composite listed in application order (first applied first).
    pub fn from_letters(from: usize, letters: &[Letter]) -> Result<Word> {
        let mut w = Word::identity(from);
        for l in letters {
            w = compose_words(&Word::letter(*l), &w)?;
        }
        Ok(w)
    }

    /// Canonical letters in application order: every letter carries the determining side.
    pub fn letters(&self) -> Vec<Letter> {
        match self.side {
            None => Vec::new(),
            Some(side) => (self.from + 1..=self.to).map(|index| Letter { side, index }).collect(),
        }
    }

    /// The cell of the disk `D_to` picked out by this word.
    pub fn disk_cell(&self) -> usize {
        self.side.map_or(0, Side::index)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            None => write!(f, "id_D{}", self.from),
            Some(Side::Src) => write!(f, "s^{}_{}", self.to, self.from),
            Some(Side::Tgt) => write!(f, "t^{}_{}", self.to, self.from),
        }
    }
}

/// `w2 ∘ w1` (apply `w1` first).
pub fn compose_words(w2: &Word, w1: &Word) -> Result<Word> {
    if w1.to != w2.from {
        return Err(Error::DimensionMismatch(format!("cannot compose {w2} after {w1}: D{} is not D{}", w1.to, w2.from)));
    }
    let side = w1.side.or(w2.side);
    Ok(Word { from: w1.from, to: w2.to, side })
}

/// Arity signature of a globular pasting scheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Table {
    upper: Vec<usize>,
    lower: Vec<usize>,
}

impl Table {
    pub fn new(upper: Vec<usize>, lower: Vec<usize>) -> Result<Table> {
        if upper.is_empty() {
            return Err(Error::InvalidTable("a table needs at least one disk".into()));
        }
        if lower.len() + 1 != upper.len() {
            return Err(Error::InvalidTable(format!(
                "{} disks need {} gluing dimensions, got {}",
                upper.len(),
                upper.len() - 1,
                lower.len()
            )));
        }
        for (k, &l) in lower.iter().enumerate() {
            if upper[k] <= l || upper[k + 1] <= l {
                return Err(Error::InvalidTable(format!(
                    "gluing dimension {l} at position {} is not below both neighbours {} and {}",
                    k + 1,
                    upper[k],
                    upper[k + 1]
                )));
            }
        }
        Ok(Table { upper, lower })
    }

    pub fn disk(d: usize) -> Table {
        Table { upper: vec![d], lower: Vec::new() }
    }

    pub fn upper(&self) -> &[usize] {
        &self.upper
    }

    pub fn lower(&self) -> &[usize] {
        &self.lower
    }

    pub fn width(&self) -> usize {
        self.upper.len()
    }

    /// Dimension of the k-th disk, counting from 1.
    pub fn leg_dim(&self, k: usize) -> usize {
        self.upper[k - 1]
    }

    pub fn as_disk(&self) -> Option<usize> {
        (self.upper.len() == 1).then(|| self.upper[0])
    }

    pub fn dimension(&self) -> usize {
        dimension(self)
    }
}

/// Greatest integer appearing in the table.
pub fn dimension(table: &Table) -> usize {
    table.upper.iter().chain(table.lower.iter()).copied().max().unwrap_or(0)
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.upper[0])?;
        for (l, u) in self.lower.iter().zip(&self.upper[1..]) {
            write!(f, " +{l} D{u}")?;
        }
        Ok(())
    }
}

impl FromStr for Table {
    type Err = Error;

    /// Parses the literal syntax `D2 +1 D2 +0 D1`.
    fn from_str(s: &str) -> Result<Table> {
        let bad = |msg: String| Error::InvalidTable(format!("{msg} in table literal `{s}`"));
        let mut upper = Vec::new();
        let mut lower = Vec::new();
        for (i, tok) in s.split_whitespace().enumerate() {
            if i % 2 == 0 {
                let d = tok.strip_prefix('D').ok_or_else(|| bad(format!("expected `D<n>`, found `{tok}`")))?;
                upper.push(d.parse().map_err(|_| bad(format!("bad disk dimension `{tok}`")))?);
            } else {
                let d = tok.strip_prefix('+').ok_or_else(|| bad(format!("expected `+<n>`, found `{tok}`")))?;
                lower.push(d.parse().map_err(|_| bad(format!("bad gluing dimension `{tok}`")))?);
            }
        }
        Table::new(upper, lower)
    }
}

/// A finite globular set truncated at `top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobularSet {
    counts: Vec<usize>,
    /// `src[d][c]` for `d ≥ 1`; index 0 unused.
    src: Vec<Vec<usize>>,
    tgt: Vec<Vec<usize>>,
}

impl GlobularSet {
    /// Builds and validates. `src[d-1]`/`tgt[d-1]` list the faces of the d-cells.
    pub fn new(counts: Vec<usize>, src: Vec<Vec<usize>>, tgt: Vec<Vec<usize>>) -> Result<GlobularSet> {
        if counts.is_empty() {
            return Err(Error::InvalidGlobularSet("no dimensions".into()));
        }
        let top = counts.len() - 1;
        if src.len() != top || tgt.len() != top {
            return Err(Error::InvalidGlobularSet(format!("expected {top} face maps")));
        }
        let mut s = vec![Vec::new()];
        let mut t = vec![Vec::new()];
        s.extend(src);
        t.extend(tgt);
        let set = GlobularSet { counts, src: s, tgt: t };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<()> {
        for d in 1..self.counts.len() {
            if self.src[d].len() != self.counts[d] || self.tgt[d].len() != self.counts[d] {
                return Err(Error::InvalidGlobularSet(format!("face maps of dimension {d} have the wrong length")));
            }
            for c in 0..self.counts[d] {
                if self.src[d][c] >= self.counts[d - 1] || self.tgt[d][c] >= self.counts[d - 1] {
                    return Err(Error::InvalidGlobularSet(format!("cell {c} of dimension {d} has a face out of range")));
                }
                if d >= 2 {
                    let (s, t) = (self.src[d][c], self.tgt[d][c]);
                    if self.src[d - 1][s] != self.src[d - 1][t] || self.tgt[d - 1][s] != self.tgt[d - 1][t] {
                        return Err(Error::InvalidGlobularSet(format!("cell {c} of dimension {d} violates the globular relations")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.counts[d]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn src(&self, d: usize, c: usize) -> usize {
        self.src[d][c]
    }

    pub fn tgt(&self, d: usize, c: usize) -> usize {
        self.tgt[d][c]
    }

    pub fn boundary(&self, side: Side, d: usize, c: usize) -> usize {
        match side {
            Side::Src => self.src[d][c],
            Side::Tgt => self.tgt[d][c],
        }
    }

    /// Iterated face `s^d_e` or `t^d_e` of a d-cell.
    pub fn face(&self, side: Side, d: usize, c: usize, e: usize) -> usize {
        (e + 1..=d).rev().fold(c, |cell, k| self.boundary(side, k, cell))
    }

    /// Action of a coglobular word on a cell of dimension `w.to`.
    pub fn act(&self, w: &Word, c: usize) -> usize {
        match w.side {
            None => c,
            Some(side) => self.face(side, w.to, c, w.from),
        }
    }

    /// The representable globular set of the disk `D_m`: cells `0 = σ`-face and
    /// `1 = τ`-face below the top, a single top cell.
    pub fn disk(m: usize) -> GlobularSet {
        let mut counts = vec![2; m];
        counts.push(1);
        let mut src = vec![Vec::new()];
        let mut tgt = vec![Vec::new()];
        for &n in &counts[1..] {
            src.push(vec![0; n]);
            tgt.push(vec![1; n]);
        }
        GlobularSet { counts, src, tgt }
    }
}

/// Realization of a globular sum as a glued globular set with its cocone.
#[derive(Debug)]
pub struct SumRealization {
    pub table: Table,
    pub carrier: GlobularSet,
    /// `legs[k][d][c]`: image of cell `c` of dimension `d` of the (k+1)-th disk.
    pub legs: Vec<Vec<Vec<usize>>>,
    /// Canonical presentation of every carrier cell as (leg, word), legs counted from 1.
    pub presentations: Vec<Vec<(usize, Word)>>,
}

impl SumRealization {
    pub fn leg_image(&self, k: usize, w: &Word) -> usize {
        self.legs[k - 1][w.from][w.disk_cell()]
    }

    pub fn top_cell(&self, k: usize) -> usize {
        let d = self.table.leg_dim(k);
        self.legs[k - 1][d][0]
    }

    pub fn presentation(&self, d: usize, c: usize) -> (usize, Word) {
        self.presentations[d][c]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller index as root so the lowest leg owns glued cells.
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

fn build_sum(table: &Table) -> SumRealization {
    let top = table.dimension();
    let width = table.width();
    // Disjoint union of disk cells, numbered leg by leg, dimension by dimension.
    let mut offset: Vec<Vec<usize>> = vec![vec![0; top + 1]; width];
    let mut total = vec![0usize; top + 1];
    for (k, &m) in table.upper().iter().enumerate() {
        offset[k][..=m].copy_from_slice(&total[..=m]);
        for (d, t) in total[..=m].iter_mut().enumerate() {
            *t += if d < m { 2 } else { 1 };
        }
    }
    let mut uf: Vec<UnionFind> = total.iter().map(|&n| UnionFind((0..n).collect())).collect();
    for (k, &g) in table.lower().iter().enumerate() {
        // The source side of leg k is glued to the target side of leg k+1 along D_g.
        for d in 0..=g {
            if d < g {
                for c in 0..2 {
                    uf[d].union(offset[k][d] + c, offset[k + 1][d] + c);
                }
            } else {
                uf[d].union(offset[k][d] + Side::Src.index(), offset[k + 1][d] + Side::Tgt.index());
            }
        }
    }
    let mut counts = vec![0; top + 1];
    let mut class_id: Vec<HashMap<usize, usize>> = vec![HashMap::new(); top + 1];
    let mut legs = vec![Vec::new(); width];
    let mut presentations: Vec<Vec<(usize, Word)>> = vec![Vec::new(); top + 1];
    for (k, &m) in table.upper().iter().enumerate() {
        for d in 0..=m {
            let n = if d < m { 2 } else { 1 };
            let mut images = Vec::with_capacity(n);
            for c in 0..n {
                let root = uf[d].find(offset[k][d] + c);
                let id = *class_id[d].entry(root).or_insert_with(|| {
                    let id = counts[d];
                    counts[d] += 1;
                    let w = if d == m { Word::identity(m) } else { Word::face(if c == 0 { Side::Src } else { Side::Tgt }, d, m) };
                    presentations[d].push((k + 1, w));
                    id
                });
                images.push(id);
            }
            legs[k].push(images);
        }
    }
    let mut src = vec![Vec::new()];
    let mut tgt = vec![Vec::new()];
    for d in 1..=top {
        let mut s = vec![usize::MAX; counts[d]];
        let mut t = vec![usize::MAX; counts[d]];
        for (k, &m) in table.upper().iter().enumerate() {
            if d > m {
                continue;
            }
            let n = if d < m { 2 } else { 1 };
            for c in 0..n {
                let id = legs[k][d][c];
                // In a disk every d-cell has the σ/τ faces of dimension d-1 as source/target.
                s[id] = legs[k][d - 1][0];
                t[id] = legs[k][d - 1][1];
            }
        }
        src.push(s);
        tgt.push(t);
    }
    let carrier = GlobularSet { counts, src, tgt };
    debug_assert!(carrier.validate().is_ok());
    SumRealization { table: table.clone(), carrier, legs, presentations }
}

/// Realizes (and caches) the globular sum of a table.
pub fn realize_sum(table: &Table) -> Arc<SumRealization> {
    static CACHE: OnceLock<Mutex<HashMap<Table, Arc<SumRealization>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("sum cache poisoned").get(table) {
        return r.clone();
    }
    let r = Arc::new(build_sum(table));
    cache.lock().expect("sum cache poisoned").entry(table.clone()).or_insert(r).clone()
}

/// Canonical presentations `ε_k ∘ w` of the m-cells of a realized sum.
pub fn disk_cells_as_words(real: &SumRealization, m: usize) -> Vec<(usize, Word)> {
    real.presentations.get(m).cloned().unwrap_or_default()
}
