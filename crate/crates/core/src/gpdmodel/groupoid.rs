//! Finite groupoids given by explicit composition tables, and functors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A finite groupoid with every law checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    name: String,
    objects: usize,
    arrows: Vec<(usize, usize)>,
    /// `compose[g][f] = g ∘ f` when the target of `f` is the source of `g`.
    compose: Vec<Vec<Option<usize>>>,
    inverse: Vec<usize>,
    identity: Vec<usize>,
}

/// The on-disk form of a groupoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidFile {
    #[serde(default)]
    pub name: Option<String>,
    pub objects: usize,
    /// `[source, target]` of every arrow.
    pub arrows: Vec<[usize; 2]>,
    /// `compose[g][f]`, `null` where `g ∘ f` is undefined.
    pub compose: Vec<Vec<Option<usize>>>,
    pub inverse: Vec<usize>,
}

impl GroupoidFile {
    /// Reads the JSON form; errors carry the line and column.
    pub fn parse(text: &str) -> Result<GroupoidFile> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGroupoid(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

impl FiniteGroupoid {
    pub fn new(
        name: impl Into<String>,
        objects: usize,
        arrows: Vec<(usize, usize)>,
        compose: Vec<Vec<Option<usize>>>,
        inverse: Vec<usize>,
    ) -> Result<FiniteGroupoid> {
        let bad = |m: String| Err(Error::InvalidGroupoid(m));
        let n = arrows.len();
        if let Some(f) = arrows.iter().position(|&(s, t)| s >= objects || t >= objects) {
            return bad(format!("arrow {f} has an end outside the {objects} objects"));
        }
        if compose.len() != n || compose.iter().any(|row| row.len() != n) {
            return bad(format!("the composition table must be {n} by {n}"));
        }
        if inverse.len() != n {
            return bad(format!("the inverse table must have {n} entries"));
        }
        for g in 0..n {
            for f in 0..n {
                match (compose[g][f], arrows[g].0 == arrows[f].1) {
                    (Some(h), true) => {
                        if h >= n || arrows[h] != (arrows[f].0, arrows[g].1) {
                            return bad(format!("{g} ∘ {f} = {h} has the wrong ends"));
                        }
                    }
                    (None, false) => {}
                    (Some(_), false) => return bad(format!("{g} ∘ {f} is defined but the arrows do not meet")),
                    (None, true) => return bad(format!("{g} ∘ {f} is undefined but the arrows meet")),
                }
            }
        }
        let c = |g: usize, f: usize| compose[g][f].expect("checked composable");
        for h in 0..n {
            for g in (0..n).filter(|&g| arrows[g].1 == arrows[h].0) {
                for f in (0..n).filter(|&f| arrows[f].1 == arrows[g].0) {
                    if c(h, c(g, f)) != c(c(h, g), f) {
                        return bad(format!("associativity fails at ({h}, {g}, {f})"));
                    }
                }
            }
        }
        let mut identity = Vec::with_capacity(objects);
        for x in 0..objects {
            let is_unit = |e: usize| {
                arrows[e] == (x, x) && (0..n).all(|f| arrows[f].1 != x || c(e, f) == f) && (0..n).all(|g| arrows[g].0 != x || c(g, e) == g)
            };
            match (0..n).find(|&e| is_unit(e)) {
                Some(e) => identity.push(e),
                None => return bad(format!("object {x} has no identity arrow")),
            }
        }
        for f in 0..n {
            let w = inverse[f];
            let (s, t) = arrows[f];
            if w >= n || arrows[w] != (t, s) || c(w, f) != identity[s] || c(f, w) != identity[t] {
                return bad(format!("inverse law fails at arrow {f}"));
            }
        }
        Ok(FiniteGroupoid { name: name.into(), objects, arrows, compose, inverse, identity })
    }

    /// The connected groupoid on `k` objects with vertex group `g`: arrows
    /// `i → j` labelled by `g`, encoded as `(i * k + j) * |g| + a`.
    pub fn connected(k: usize, g: &FiniteGroup) -> FiniteGroupoid {
        let m = g.order();
        let code = |i: usize, j: usize, a: usize| (i * k + j) * m + a;
        let mut arrows = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for _ in 0..m {
                    arrows.push((i, j));
                }
            }
        }
        let n = arrows.len();
        let split = |f: usize| (f / m / k, f / m % k, f % m);
        let compose = (0..n)
            .map(|gg| {
                let (j2, l, b) = split(gg);
                (0..n)
                    .map(|f| {
                        let (i, j, a) = split(f);
                        (j == j2).then(|| code(i, l, g.mul(b, a)))
                    })
                    .collect()
            })
            .collect();
        let inverse = (0..n)
            .map(|f| {
                let (i, j, a) = split(f);
                code(j, i, g.inv(a))
            })
            .collect();
        let name = match (k, m) {
            (1, _) => g.name().to_string(),
            (_, 1) => format!("codiscrete-{k}"),
            _ => format!("{k}x{}", g.name()),
        };
        FiniteGroupoid::new(name, k, arrows, compose, inverse).expect("connected groupoids satisfy the laws")
    }

    pub fn from_group(g: &FiniteGroup) -> FiniteGroupoid {
        FiniteGroupoid::connected(1, g)
    }

    pub fn codiscrete(k: usize) -> FiniteGroupoid {
        FiniteGroupoid::connected(k, &FiniteGroup::trivial())
    }

    pub fn point() -> FiniteGroupoid {
        FiniteGroupoid::codiscrete(1).with_name("point")
    }

    pub fn discrete(k: usize) -> FiniteGroupoid {
        let parts = vec![FiniteGroupoid::point(); k];
        FiniteGroupoid::disjoint_union(&parts).with_name(format!("discrete-{k}"))
    }

    /// Side-by-side union; objects and arrows of later parts are shifted.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> FiniteGroupoid {
        let (mut objects, mut arrows, mut inverse) = (0, Vec::new(), Vec::new());
        let mut offsets = Vec::new();
        for p in parts {
            offsets.push((objects, arrows.len()));
            arrows.extend(p.arrows.iter().map(|&(s, t)| (s + objects, t + objects)));
            inverse.extend(p.inverse.iter().map(|&w| w + offsets.last().expect("just pushed").1));
            objects += p.objects;
        }
        let n = arrows.len();
        let mut compose = vec![vec![None; n]; n];
        for (p, &(_, a0)) in parts.iter().zip(&offsets) {
            for (g, row) in p.compose.iter().enumerate() {
                for (f, h) in row.iter().enumerate() {
                    compose[a0 + g][a0 + f] = h.map(|h| h + a0);
                }
            }
        }
        let name = parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(" + ");
        FiniteGroupoid::new(name, objects, arrows, compose, inverse).expect("unions of groupoids are groupoids")
    }

    pub fn parse_json(text: &str) -> Result<FiniteGroupoid> {
        FiniteGroupoid::from_file(GroupoidFile::parse(text)?)
    }

    /// Checks the laws of a parsed file.
    pub fn from_file(file: GroupoidFile) -> Result<FiniteGroupoid> {
        let arrows = file.arrows.iter().map(|&[s, t]| (s, t)).collect();
        FiniteGroupoid::new(file.name.unwrap_or_else(|| "groupoid".into()), file.objects, arrows, file.compose, file.inverse)
    }

    pub fn to_file(&self) -> GroupoidFile {
        GroupoidFile {
            name: Some(self.name.clone()),
            objects: self.objects,
            arrows: self.arrows.iter().map(|&(s, t)| [s, t]).collect(),
            compose: self.compose.clone(),
            inverse: self.inverse.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("groupoid files serialize")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteGroupoid {
        self.name = name.into();
        self
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].0
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].1
    }

    /// `g ∘ f`, when defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inverse[f]
    }

    /// Arrows `x → y` in increasing order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f] == (x, y)).collect()
    }

    /// The vertex group at `x`, elements listed as in `hom(x, x)`.
    pub fn aut(&self, x: usize) -> FiniteGroup {
        let elems = self.hom(x, x);
        let pos = |f: usize| elems.iter().position(|&e| e == f).expect("closed under composition");
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos(self.compose(a, b).expect("loops compose"))).collect()).collect();
        FiniteGroup::from_table(format!("Aut({x})"), table).expect("vertex groups are groups")
    }

    /// Component index of every object, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.objects];
        let mut next = 0;
        for x in 0..self.objects {
            if comp[x] != usize::MAX {
                continue;
            }
            for y in x..self.objects {
                if comp[y] == usize::MAX && !self.hom(x, y).is_empty() {
                    comp[y] = next;
                }
            }
            next += 1;
        }
        comp
    }

    /// Number of isomorphism classes of objects.
    pub fn iso_classes(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// At most one arrow between any two objects.
    pub fn is_thin(&self) -> bool {
        (0..self.objects).all(|x| (0..self.objects).all(|y| self.hom(x, y).len() <= 1))
    }

    /// Equivalent to the point: nonempty, connected and thin.
    pub fn is_contractible(&self) -> bool {
        self.objects > 0 && self.iso_classes() == 1 && self.is_thin()
    }
}

/// A functor between finite groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl GroupoidFunctor {
    /// Validates ends, identities and composition.
    pub fn new(source: &FiniteGroupoid, target: &FiniteGroupoid, objects: Vec<usize>, arrows: Vec<usize>) -> Result<GroupoidFunctor> {
        let bad = |m: String| Err(Error::InvalidMorphism(m));
        if objects.len() != source.objects || arrows.len() != source.arrow_count() {
            return bad("functor tables do not match the source".into());
        }
        if objects.iter().any(|&y| y >= target.objects) || arrows.iter().any(|&g| g >= target.arrow_count()) {
            return bad("functor sends something outside the target".into());
        }
        for f in 0..source.arrow_count() {
            let (s, t) = source.arrows[f];
            if target.arrows[arrows[f]] != (objects[s], objects[t]) {
                return bad(format!("arrow {f} is sent to an arrow with the wrong ends"));
            }
        }
        for x in 0..source.objects {
            if arrows[source.id(x)] != target.id(objects[x]) {
                return bad(format!("the identity of {x} is not preserved"));
            }
        }
        for g in 0..source.arrow_count() {
            for f in 0..source.arrow_count() {
                if let Some(h) = source.compose(g, f) {
                    if target.compose(arrows[g], arrows[f]) != Some(arrows[h]) {
                        return bad(format!("composition {g} ∘ {f} is not preserved"));
                    }
                }
            }
        }
        Ok(GroupoidFunctor { objects, arrows })
    }

    pub fn identity(x: &FiniteGroupoid) -> GroupoidFunctor {
        GroupoidFunctor { objects: (0..x.objects).collect(), arrows: (0..x.arrow_count()).collect() }
    }

    /// The functor to the point.
    pub fn collapse(x: &FiniteGroupoid) -> GroupoidFunctor {
        GroupoidFunctor { objects: vec![0; x.objects], arrows: vec![0; x.arrow_count()] }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            objects: first.objects.iter().map(|&x| self.objects[x]).collect(),
            arrows: first.arrows.iter().map(|&f| self.arrows[f]).collect(),
        }
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = self.objects.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Bijective on every hom-set.
    pub fn is_fully_faithful(&self, source: &FiniteGroupoid, target: &FiniteGroupoid) -> bool {
        (0..source.objects).all(|x| {
            (0..source.objects).all(|y| {
                let mut image: Vec<usize> = source.hom(x, y).iter().map(|&f| self.arrows[f]).collect();
                image.sort_unstable();
                image == target.hom(self.objects[x], self.objects[y])
            })
        })
    }

    pub fn is_essentially_surjective(&self, target: &FiniteGroupoid) -> bool {
        (0..target.objects).all(|y| self.objects.iter().any(|&x| !target.hom(x, y).is_empty()))
    }

    /// An equivalence of groupoids: the weak equivalences of the folk structure.
    pub fn is_equivalence(&self, source: &FiniteGroupoid, target: &FiniteGroupoid) -> bool {
        self.is_fully_faithful(source, target) && self.is_essentially_surjective(target)
    }
}
