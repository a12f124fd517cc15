//! The four characterizations of weak equivalences, evaluated independently.

use std::fmt;

use super::{iterated_unit, pi0, pi_groupoid, HomotopyClasses, PiGroupoid};
use crate::coherator::{PregroupoidBundle, Tower};
use crate::error::{Error, Result};
use crate::model::ModelMorphism;

/// Verdicts of the four conditions, each with the first failure found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeqReport {
    pub conditions: [bool; 4],
    pub reasons: [Option<String>; 4],
}

impl WeqReport {
    pub fn is_weak_equivalence(&self) -> bool {
        self.conditions[0]
    }
}

impl fmt::Display for WeqReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = [
            "pi_0 bijective, pi_n(G, x) isomorphisms",
            "pi_0 bijective, pi_n(G, u) isomorphisms",
            "Pi_1 an equivalence, pi_n(u, v) bijections",
            "Pi_1 full and essentially surjective, pi_n(u, v) surjections",
        ];
        for k in 0..4 {
            write!(f, "({}) {}: {}", k + 1, NAMES[k], self.conditions[k])?;
            if let Some(r) = &self.reasons[k] {
                write!(f, " [{r}]")?;
            }
            writeln!(f)?;
        }
        write!(f, "weak equivalence: {}", self.conditions[0])
    }
}

type Check = std::result::Result<(), String>;

/// The map induced on classes of `n`-cells, or an error if it is not well defined.
fn class_map(f: &ModelMorphism, g: &HomotopyClasses, h: &HomotopyClasses, n: usize) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; g.len()];
    for c in 0..f.source.count(n) {
        let (k, img) = (g.class_of(c), h.class_of(f.apply(n, c)));
        if out[k] != usize::MAX && out[k] != img {
            return Err(Error::InvalidMorphism(format!("does not respect homotopy of {n}-cells at {c}")));
        }
        out[k] = img;
    }
    Ok(out)
}

/// Compares `classes ↦ map` between two hom-sets.
fn compare_homs(map: &[usize], from: &[usize], to: &[usize], injective: bool, what: impl Fn() -> String) -> Check {
    let mut hit = vec![false; to.len()];
    for &a in from {
        let Some(p) = to.iter().position(|&b| b == map[a]) else {
            return Err(format!("{} leaves its hom-set", what()));
        };
        if hit[p] && injective {
            return Err(format!("{} is not injective", what()));
        }
        hit[p] = true;
    }
    if hit.iter().any(|h| !h) {
        return Err(format!("{} is not surjective", what()));
    }
    Ok(())
}

struct Level {
    g: PiGroupoid,
    h: PiGroupoid,
    map: Vec<usize>,
}

impl Level {
    fn build(f: &ModelMorphism, tower: &Tower, bundle: &PregroupoidBundle, n: usize) -> Result<Level> {
        let g = pi_groupoid(&f.source, tower, bundle, n)?;
        let h = pi_groupoid(&f.target, tower, bundle, n)?;
        let map = class_map(f, &g.classes, &h.classes, n)?;
        Ok(Level { g, h, map })
    }

    /// `π_n(u, v) → π_n(fu, fv)` for every pair of parallel `(n-1)`-cells
    /// (or only `u = v` with `loops_only`), as a bijection or a surjection.
    fn homs(&self, f: &ModelMorphism, injective: bool, loops_only: bool) -> Check {
        let n = self.g.n;
        let m = &f.source;
        for u in 0..self.g.objects {
            for v in 0..self.g.objects {
                if (loops_only && u != v) || !m.parallel(n - 1, u, v) {
                    continue;
                }
                let (fu, fv) = (f.apply(n - 1, u), f.apply(n - 1, v));
                compare_homs(&self.map, &self.g.hom(u, v), &self.h.hom(fu, fv), injective, || {
                    format!("pi_{n}({u}, {v}) -> pi_{n}({fu}, {fv})")
                })?;
            }
        }
        Ok(())
    }

    /// Every object of the target is connected to the image of a source object.
    fn essentially_surjective(&self, f: &ModelMorphism) -> Check {
        for y in 0..self.h.objects {
            let reached = (0..self.g.objects).any(|x| !self.h.hom(f.apply(self.g.n - 1, x), y).is_empty());
            if !reached {
                return Err(format!("object {y} of Pi_{} is not reached up to isomorphism", self.g.n));
            }
        }
        Ok(())
    }
}

fn pi0_bijective(f: &ModelMorphism) -> Result<Check> {
    let (g, h) = (pi0(&f.source)?, pi0(&f.target)?);
    let map = class_map(f, &g, &h, 0)?;
    let all: Vec<usize> = (0..g.len()).collect();
    let to: Vec<usize> = (0..h.len()).collect();
    Ok(compare_homs(&map, &all, &to, true, || "pi_0".to_string()))
}

/// Evaluates the four equivalent characterizations of a weak equivalence
/// separately at every dimension the tower's truncation admits. Any
/// disagreement between them is an error.
pub fn weak_equiv(f: &ModelMorphism, tower: &Tower, bundle: &PregroupoidBundle) -> Result<WeqReport> {
    let top = tower.truncation();
    if top < 2 {
        return Err(Error::Truncation { dim: 2, truncation: top });
    }
    let levels = (1..top).map(|n| Level::build(f, tower, bundle, n)).collect::<Result<Vec<_>>>()?;
    let level = |n: usize| &levels[n - 1];
    let p0 = pi0_bijective(f)?;

    // (1): isomorphisms at iterated units of objects only.
    let c1 = p0.clone().and_then(|()| {
        for l in &levels {
            let n = l.g.n;
            for x in 0..f.source.count(0) {
                let u = iterated_unit(&f.source, tower, bundle, x, 0, n - 1).map_err(|e| e.to_string())?;
                let fu = f.apply(n - 1, u);
                compare_homs(&l.map, &l.g.hom(u, u), &l.h.hom(fu, fu), true, || format!("pi_{n} at object {x}"))?;
            }
        }
        Ok(())
    });

    // (2): isomorphisms at every base cell.
    let c2 = p0.and_then(|()| levels.iter().try_for_each(|l| l.homs(f, true, true)));

    // (3): Π_1 fully faithful and essentially surjective, bijections above.
    let one = level(1);
    let c3 = one
        .homs(f, true, false)
        .and_then(|()| one.essentially_surjective(f))
        .and_then(|()| levels[1..].iter().try_for_each(|l| l.homs(f, true, false)));

    // (4): Π_1 full and essentially surjective, surjections up to the truncation,
    // the last one on classes as sets.
    let mut c4 = one
        .homs(f, false, false)
        .and_then(|()| one.essentially_surjective(f))
        .and_then(|()| levels[1..].iter().try_for_each(|l| l.homs(f, false, false)));
    if c4.is_ok() {
        c4 = top_surjective(f, top)?;
    }

    let checks = [c1, c2, c3, c4];
    let conditions = checks.each_ref().map(|c| c.is_ok());
    let reasons = checks.map(|c| c.err());
    let report = WeqReport { conditions, reasons };
    if conditions.iter().any(|&c| c != conditions[0]) {
        return Err(Error::Inconsistent(format!("the characterizations of weak equivalence disagree:\n{report}")));
    }
    Ok(report)
}

/// Surjectivity of `π_N(u, v) → π_N(fu, fv)` on homotopy classes as sets.
fn top_surjective(f: &ModelMorphism, n: usize) -> Result<Check> {
    let (g, h) = (HomotopyClasses::new(&f.source, n)?, HomotopyClasses::new(&f.target, n)?);
    let map = class_map(f, &g, &h, n)?;
    let (m, t) = (&f.source, &f.target);
    let ends = |model: &crate::model::Model, cl: &HomotopyClasses, k: usize| {
        let r = cl.rep(k);
        (model.src(n, r), model.tgt(n, r))
    };
    for u in 0..m.count(n - 1) {
        for v in 0..m.count(n - 1) {
            if !m.parallel(n - 1, u, v) {
                continue;
            }
            let (fu, fv) = (f.apply(n - 1, u), f.apply(n - 1, v));
            let from: Vec<usize> = (0..g.len()).filter(|&k| ends(m, &g, k) == (u, v)).collect();
            let to: Vec<usize> = (0..h.len()).filter(|&k| ends(t, &h, k) == (fu, fv)).collect();
            if let Err(e) = compare_homs(&map, &from, &to, false, || format!("pi_{n}({u}, {v}) -> pi_{n}({fu}, {fv})")) {
                return Ok(Err(e));
            }
        }
    }
    Ok(Ok(()))
}
