//! The globe diagram in groupoids, its boundary spheres, and the groupoids
//! realizing globular sums.
//!
//! Every groupoid met here is free on a graph, so colimits are computed as
//! colimits of graphs and realized afterwards. A free groupoid on a forest is
//! finite (codiscrete on each tree); on a graph with cycles it is infinite and
//! only its vertex-group ranks are reported.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::groupoid::{FiniteGroupoid, GroupoidFunctor};
use crate::error::{Error, Result};
use crate::globe::{realize_sum, Side, Table, Word};

/// A directed multigraph, presenting the free groupoid on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub objects: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A map of graphs: objects to objects, edges to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMap {
    pub objects: Vec<usize>,
    pub edges: Vec<usize>,
}

impl GraphMap {
    pub fn identity(g: &Graph) -> GraphMap {
        GraphMap { objects: (0..g.objects).collect(), edges: (0..g.edges.len()).collect() }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GraphMap) -> GraphMap {
        GraphMap {
            objects: first.objects.iter().map(|&x| self.objects[x]).collect(),
            edges: first.edges.iter().map(|&e| self.edges[e]).collect(),
        }
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = self.objects.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    fn check(&self, from: &Graph, to: &Graph) -> Result<()> {
        let ok = self.objects.len() == from.objects
            && self.edges.len() == from.edges.len()
            && from.edges.iter().zip(&self.edges).all(|(&(s, t), &e)| to.edges.get(e) == Some(&(self.objects[s], self.objects[t])));
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistent("a graph map does not respect ends".into()))
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, a: usize) -> usize {
        let p = self.0[a];
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.0[a] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense class numbers in order of smallest member.
    fn classes(&mut self) -> (usize, Vec<usize>) {
        let n = self.0.len();
        let mut id = HashMap::new();
        let out = (0..n)
            .map(|a| {
                let r = self.find(a);
                let next = id.len();
                *id.entry(r).or_insert(next)
            })
            .collect();
        (id.len(), out)
    }
}

/// A colimit of graphs over a diagram of parts glued by pairs of maps.
/// Returns the colimit and the cocone.
fn colimit(parts: &[Graph], gluings: &[(usize, usize, GraphMap, GraphMap, &Graph)]) -> (Graph, Vec<GraphMap>) {
    let (mut obj_off, mut edge_off) = (vec![], vec![]);
    let (mut no, mut ne) = (0, 0);
    for p in parts {
        obj_off.push(no);
        edge_off.push(ne);
        no += p.objects;
        ne += p.edges.len();
    }
    let (mut uo, mut ue) = (UnionFind::new(no), UnionFind::new(ne));
    for (a, b, fa, fb, shape) in gluings {
        for x in 0..shape.objects {
            uo.union(obj_off[*a] + fa.objects[x], obj_off[*b] + fb.objects[x]);
        }
        for e in 0..shape.edges.len() {
            ue.union(edge_off[*a] + fa.edges[e], edge_off[*b] + fb.edges[e]);
        }
    }
    let (objects, oclass) = uo.classes();
    let (nedges, eclass) = ue.classes();
    let mut edges = vec![(0, 0); nedges];
    for (k, p) in parts.iter().enumerate() {
        for (e, &(s, t)) in p.edges.iter().enumerate() {
            edges[eclass[edge_off[k] + e]] = (oclass[obj_off[k] + s], oclass[obj_off[k] + t]);
        }
    }
    let cocone = parts
        .iter()
        .enumerate()
        .map(|(k, p)| GraphMap {
            objects: (0..p.objects).map(|x| oclass[obj_off[k] + x]).collect(),
            edges: (0..p.edges.len()).map(|e| eclass[edge_off[k] + e]).collect(),
        })
        .collect();
    (Graph { objects, edges }, cocone)
}

impl Graph {
    pub fn empty() -> Graph {
        Graph { objects: 0, edges: vec![] }
    }

    /// Component index of every object.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.objects);
        for &(s, t) in &self.edges {
            uf.union(s, t);
        }
        uf.classes().1
    }

    /// Rank of the free vertex group of the component of `x`: edges minus
    /// objects plus one.
    pub fn loop_rank(&self, x: usize) -> usize {
        let comp = self.components();
        let objects = comp.iter().filter(|&&c| c == comp[x]).count();
        let edges = self.edges.iter().filter(|&&(s, _)| comp[s] == comp[x]).count();
        edges + 1 - objects
    }

    pub fn is_forest(&self) -> bool {
        let comps = self.components().into_iter().max().map_or(0, |m| m + 1);
        self.edges.len() + comps == self.objects
    }

    /// The free groupoid, when finite: codiscrete on each tree.
    pub fn free_groupoid(&self) -> Option<FiniteGroupoid> {
        if !self.is_forest() {
            return None;
        }
        let comp = self.components();
        let mut arrows = Vec::new();
        for x in 0..self.objects {
            for y in 0..self.objects {
                if comp[x] == comp[y] {
                    arrows.push((x, y));
                }
            }
        }
        let n = arrows.len();
        let index: HashMap<(usize, usize), usize> = arrows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let compose =
            (0..n).map(|g| (0..n).map(|f| (arrows[g].0 == arrows[f].1).then(|| index[&(arrows[f].0, arrows[g].1)])).collect()).collect();
        let inverse = arrows.iter().map(|&(s, t)| index[&(t, s)]).collect();
        Some(FiniteGroupoid::new("free", self.objects, arrows, compose, inverse).expect("codiscrete groupoids are groupoids"))
    }

    /// Extends a graph map to the free groupoids, when both are finite.
    pub fn free_functor(&self, map: &GraphMap, target: &Graph) -> Option<GroupoidFunctor> {
        let (a, b) = (self.free_groupoid()?, target.free_groupoid()?);
        let arrows = (0..a.arrow_count()).map(|f| b.hom(map.objects[a.src(f)], map.objects[a.tgt(f)])[0]).collect();
        GroupoidFunctor::new(&a, &b, map.objects.clone(), arrows).ok()
    }
}

/// The graph presenting `D(n)`: a point for `n = 0`, one edge `0 → 1` above.
pub fn disk_graph(n: usize) -> Graph {
    if n == 0 {
        Graph { objects: 1, edges: vec![] }
    } else {
        Graph { objects: 2, edges: vec![(0, 1)] }
    }
}

/// The image of a coglobular word `D(from) → D(to)`.
pub fn word_map(w: &Word) -> GraphMap {
    match (w.side, w.from) {
        (None, _) => GraphMap::identity(&disk_graph(w.to)),
        (Some(side), 0) => GraphMap { objects: vec![if side == Side::Src { 0 } else { 1 }], edges: vec![] },
        (Some(_), _) => GraphMap::identity(&disk_graph(w.to)),
    }
}

/// The globe diagram truncated at `N`, with its spheres and factorizations.
#[derive(Clone, Debug)]
pub struct GlobeDiagram {
    pub top: usize,
    /// `disks[n]` presents `D(n)`.
    pub disks: Vec<Graph>,
    /// `spheres[n]` presents `S(n - 1)`, so `spheres[0]` is empty.
    pub spheres: Vec<Graph>,
    /// The two hemisphere inclusions `D(n - 1) → S(n - 1)` for `n ≥ 1`.
    pub hemispheres: Vec<(GraphMap, GraphMap)>,
    /// `i_n : S(n - 1) → D(n)`.
    pub boundaries: Vec<GraphMap>,
    /// `p_n : D(n) → D(n - 1)` for `n ≥ 1`, on the free groupoids since
    /// `p_1` sends the edge to an identity.
    pub collapses: Vec<GroupoidFunctor>,
}

impl GlobeDiagram {
    /// `σ_n` or `τ_n : D(n - 1) → D(n)`.
    pub fn face(&self, side: Side, n: usize) -> GraphMap {
        word_map(&Word::face(side, n - 1, n))
    }
}

/// Builds `D(0)` as the point and factors each boundary inclusion through a
/// codiscrete two-object groupoid, then validates the result.
pub fn globe_diagram(top: usize) -> Result<GlobeDiagram> {
    if top == 0 {
        return Err(Error::InvalidArgument("the globe diagram needs N >= 1".into()));
    }
    let disks: Vec<Graph> = (0..=top).map(disk_graph).collect();
    let mut spheres = vec![Graph::empty()];
    let mut hemispheres = vec![(GraphMap::identity(&Graph::empty()), GraphMap::identity(&Graph::empty()))];
    let mut boundaries = vec![GraphMap { objects: vec![], edges: vec![] }];
    let point = disks[0].free_groupoid().expect("disks are finite");
    let mut collapses = vec![GroupoidFunctor::identity(&point)];
    for n in 1..=top {
        // S(n-1) = D(n-1) glued to itself along i_{n-1}.
        let shape = &spheres[n - 1];
        let i_prev = &boundaries[n - 1];
        let parts = [disks[n - 1].clone(), disks[n - 1].clone()];
        let (sphere, cocone) = colimit(&parts, &[(0, 1, i_prev.clone(), i_prev.clone(), shape)]);
        let (j1, j2) = (cocone[0].clone(), cocone[1].clone());
        // i_n is induced by (σ_n, τ_n).
        let (s, t) = (word_map(&Word::face(Side::Src, n - 1, n)), word_map(&Word::face(Side::Tgt, n - 1, n)));
        let mut objects = vec![usize::MAX; sphere.objects];
        let mut edges = vec![usize::MAX; sphere.edges.len()];
        for (j, f) in [(&j1, &s), (&j2, &t)] {
            for (x, &y) in j.objects.iter().enumerate() {
                if objects[y] != usize::MAX && objects[y] != f.objects[x] {
                    return Err(Error::Inconsistent(format!("σ_{n} and τ_{n} disagree on the boundary")));
                }
                objects[y] = f.objects[x];
            }
            for (e, &y) in j.edges.iter().enumerate() {
                edges[y] = f.edges[e];
            }
        }
        let i_n = GraphMap { objects, edges };
        i_n.check(&sphere, &disks[n])?;
        let disk = disks[n].free_groupoid().expect("disks are finite");
        collapses.push(if n == 1 { GroupoidFunctor::collapse(&disk) } else { GroupoidFunctor::identity(&disk) });
        spheres.push(sphere);
        hemispheres.push((j1, j2));
        boundaries.push(i_n);
    }
    let d = GlobeDiagram { top, disks, spheres, hemispheres, boundaries, collapses };
    validate_diagram(&d)?;
    Ok(d)
}

/// Checks the coglobular relations, that every `i_n` is a cofibration, that
/// every `D(n)` is weakly contractible, and that `p_n ∘ i_n` is the fold map.
pub fn validate_diagram(d: &GlobeDiagram) -> Result<()> {
    let bad = |m: String| Err(Error::Inconsistent(m));
    for n in 1..d.top {
        for side in [Side::Src, Side::Tgt] {
            let lower = d.face(side, n);
            if d.face(Side::Src, n + 1).after(&lower) != d.face(Side::Tgt, n + 1).after(&lower) {
                return bad(format!("coglobular relation fails at n = {n}"));
            }
        }
    }
    for n in 0..=d.top {
        let disk = d.disks[n].free_groupoid().expect("disks are finite");
        if !disk.is_contractible() {
            return bad(format!("D({n}) is not weakly contractible"));
        }
        if n == 0 {
            continue;
        }
        let i_n = &d.boundaries[n];
        i_n.check(&d.spheres[n], &d.disks[n])?;
        if !i_n.is_injective_on_objects() {
            return bad(format!("i_{n} is not injective on objects"));
        }
        let lower = d.disks[n - 1].free_groupoid().expect("disks are finite");
        let p = GroupoidFunctor::new(&disk, &lower, d.collapses[n].objects.clone(), d.collapses[n].arrows.clone())?;
        if !p.is_equivalence(&disk, &lower) {
            return bad(format!("p_{n} is not an equivalence"));
        }
        // The fold map S(n-1) → D(n-1) restricts to the identity on both hemispheres.
        let edge_arrow = |g: &Graph, e: usize| {
            let (s, t) = g.edges[e];
            g.free_groupoid().expect("disks are finite").hom(s, t)[0]
        };
        for j in [&d.hemispheres[n].0, &d.hemispheres[n].1] {
            let objects_fold = (0..d.disks[n - 1].objects).all(|x| p.objects[i_n.objects[j.objects[x]]] == x);
            let edges_fold = (0..d.disks[n - 1].edges.len())
                .all(|e| p.arrows[edge_arrow(&d.disks[n], i_n.edges[j.edges[e]])] == edge_arrow(&d.disks[n - 1], e));
            if !objects_fold || !edges_fold {
                return bad(format!("p_{n} ∘ i_{n} is not the fold map"));
            }
        }
    }
    Ok(())
}

/// The groupoid realizing a globular sum, with the inclusion of every leg.
#[derive(Clone, Debug)]
pub struct SumGroupoid {
    pub table: Table,
    pub graph: Graph,
    pub legs: Vec<GraphMap>,
    pub groupoid: FiniteGroupoid,
}

impl SumGroupoid {
    /// The functor `D(m) → F(T)` of an `m`-cell of the sum, as its object map.
    pub fn cell(&self, dim: usize, cell: usize) -> Vec<usize> {
        let (k, w) = realize_sum(&self.table).presentation(dim, cell);
        self.legs[k - 1].after(&word_map(&w)).objects
    }
}

/// Computes the colimit of disks for `table` and checks that it is thin and
/// contractible.
pub fn sum_groupoid(table: &Table) -> Result<Arc<SumGroupoid>> {
    static CACHE: OnceLock<Mutex<HashMap<Table, Arc<SumGroupoid>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("cache lock").get(table) {
        return Ok(s.clone());
    }
    let parts: Vec<Graph> = table.upper().iter().map(|&d| disk_graph(d)).collect();
    let shapes: Vec<Graph> = table.lower().iter().map(|&d| disk_graph(d)).collect();
    let gluings: Vec<_> = table
        .lower()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let a = word_map(&Word::face(Side::Src, g, table.leg_dim(k + 1)));
            let b = word_map(&Word::face(Side::Tgt, g, table.leg_dim(k + 2)));
            (k, k + 1, a, b, &shapes[k])
        })
        .collect();
    let (graph, legs) = colimit(&parts, &gluings);
    let groupoid = graph
        .free_groupoid()
        .filter(|g| g.is_contractible())
        .ok_or_else(|| Error::Inconsistent(format!("the sum {table} is not realized by a thin contractible groupoid")))?;
    let s = Arc::new(SumGroupoid { table: table.clone(), graph, legs, groupoid });
    cache.lock().expect("cache lock").insert(table.clone(), s.clone());
    Ok(s)
}
