//! Interpreting a tower in groupoids, and the fundamental model of a groupoid.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::diagram::{sum_groupoid, word_map, SumGroupoid};
use super::groupoid::FiniteGroupoid;
use crate::coherator::expr::{normalize, random_expr};
use crate::coherator::{GenId, Term, Tower};
use crate::error::{Error, Result};
use crate::globe::{realize_sum, GlobularSet, Side, Table, Word};
use crate::model::{Interpretation, Model};

/// A functor `D(m) → F(T)`, by its object map (one object for `m = 0`,
/// source and target objects above). Targets are thin, so this determines it.
pub type DiskMap = Vec<usize>;

fn precompose_face(map: &DiskMap, side: Side, m: usize) -> DiskMap {
    word_map(&Word::face(side, m - 1, m)).objects.iter().map(|&x| map[x]).collect()
}

/// The filler of an admissible pair `(f, g)` of maps `D(n) → F(S)`: a map
/// `D(n + 1) → F(S)` with `f` as source and `g` as target.
pub fn lifting_oracle(f: &DiskMap, g: &DiskMap, n: usize, sum: &SumGroupoid) -> Result<DiskMap> {
    let h = if n == 0 { vec![f[0], g[0]] } else { f.clone() };
    if precompose_face(&h, Side::Src, n + 1) != *f || precompose_face(&h, Side::Tgt, n + 1) != *g {
        return Err(Error::Inconsistent(format!("no filler for {f:?} and {g:?} in the sum {}", sum.table)));
    }
    Ok(h)
}

/// Every map `D(n + 1) → F(S)` filling `(f, g)`, found by enumeration.
pub fn all_fillers(f: &DiskMap, g: &DiskMap, n: usize, sum: &SumGroupoid) -> Vec<DiskMap> {
    let k = sum.groupoid.objects();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let h = vec![a, b];
            if precompose_face(&h, Side::Src, n + 1) == *f && precompose_face(&h, Side::Tgt, n + 1) == *g {
                out.push(h);
            }
        }
    }
    out
}

/// The image of a term of a tower in the groupoid extension.
pub fn interpret_term(tower: &Tower, images: &[DiskMap], t: &Term) -> Result<DiskMap> {
    match t {
        Term::Cell { target, dim, cell } => Ok(sum_groupoid(target)?.cell(*dim, *cell)),
        Term::App { gen, args, .. } => {
            let h = tower.gen(*gen);
            let inner = sum_groupoid(&h.target)?;
            let comps = args.comps.iter().map(|c| interpret_term(tower, images, c)).collect::<Result<Vec<_>>>()?;
            let objects = induced_objects(&inner, &comps)?;
            let image = images.get(gen.index()).ok_or_else(|| Error::UnknownGenerator(h.name.clone()))?;
            Ok(image.iter().map(|&x| objects[x]).collect())
        }
    }
}

/// The object map of `F(T) → F(T')` (or into a groupoid) induced by one map
/// per leg, checking the legs agree where they are glued.
fn induced_objects(sum: &SumGroupoid, legs: &[DiskMap]) -> Result<Vec<usize>> {
    let mut out = vec![usize::MAX; sum.graph.objects];
    for (leg, map) in sum.legs.iter().zip(legs) {
        for (x, &y) in leg.objects.iter().enumerate() {
            if out[y] != usize::MAX && out[y] != map[x] {
                return Err(Error::Inconsistent(format!("components disagree on the gluing of {}", sum.table)));
            }
            out[y] = map[x];
        }
    }
    Ok(out)
}

/// Interprets every generator by the lifting oracle, level by level, and
/// checks both lifting equations.
pub fn interpret_tower(tower: &Tower) -> Result<Vec<DiskMap>> {
    let mut images: Vec<DiskMap> = Vec::with_capacity(tower.len());
    for id in tower.ids() {
        images.push(interpret_generator(tower, &images, id)?);
    }
    Ok(images)
}

fn interpret_generator(tower: &Tower, images: &[DiskMap], id: GenId) -> Result<DiskMap> {
    let h = tower.gen(id);
    let sum = sum_groupoid(&h.target)?;
    let f = interpret_term(tower, images, &h.src)?;
    let g = interpret_term(tower, images, &h.tgt)?;
    let image = lifting_oracle(&f, &g, h.source_dim - 1, &sum)?;
    if precompose_face(&image, Side::Src, h.source_dim) != f || precompose_face(&image, Side::Tgt, h.source_dim) != g {
        return Err(Error::FunctorEquation { name: h.name.clone(), side: "source or target" });
    }
    Ok(image)
}

/// The arrow `p → q` of `x` that a functor `F(T) → X` assigns, given by the
/// cells of a tuple of the fiber product over `T`.
pub fn functor_arrow(x: &FiniteGroupoid, sum: &SumGroupoid, tuple: &[usize], p: usize, q: usize) -> Result<usize> {
    let table = &sum.table;
    let mut objects = vec![usize::MAX; sum.graph.objects];
    let mut edges = vec![usize::MAX; sum.graph.edges.len()];
    for (k, leg) in sum.legs.iter().enumerate() {
        let c = tuple[k];
        let ends = if table.leg_dim(k + 1) == 0 { vec![c] } else { vec![x.src(c), x.tgt(c)] };
        for (o, &y) in leg.objects.iter().enumerate() {
            if objects[y] != usize::MAX && objects[y] != ends[o] {
                return Err(Error::NotInFiberProduct(format!("{tuple:?} does not glue over {table}")));
            }
            objects[y] = ends[o];
        }
        for &e in &leg.edges {
            if edges[e] != usize::MAX && edges[e] != c {
                return Err(Error::NotInFiberProduct(format!("{tuple:?} does not glue over {table}")));
            }
            edges[e] = c;
        }
    }
    // Walk the tree from p, composing edge images.
    let mut reach: Vec<Option<usize>> = vec![None; sum.graph.objects];
    reach[p] = Some(x.id(objects[p]));
    let mut stack = vec![p];
    while let Some(a) = stack.pop() {
        let here = reach[a].expect("visited");
        for (e, &(s, t)) in sum.graph.edges.iter().enumerate() {
            let step = if s == a {
                Some((t, edges[e]))
            } else if t == a {
                Some((s, x.inv(edges[e])))
            } else {
                None
            };
            if let Some((b, arrow)) = step {
                if reach[b].is_none() {
                    reach[b] = Some(x.compose(arrow, here).expect("edges glue"));
                    stack.push(b);
                }
            }
        }
    }
    reach[q].ok_or_else(|| Error::Inconsistent(format!("the sum {table} is disconnected")))
}

/// The fundamental model's interpretation: precomposition with the images
/// of the generators in the groupoid extension.
#[derive(Debug)]
pub struct Fundamental {
    groupoid: FiniteGroupoid,
    images: Mutex<HashMap<(Term, Term), DiskMap>>,
}

impl Fundamental {
    fn image(&self, tower: &Tower, gen: GenId) -> Result<DiskMap> {
        let h = tower.gen(gen);
        let key = (h.src.clone(), h.tgt.clone());
        if let Some(m) = self.images.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        // Generators declared after construction are interpreted on demand.
        let images = interpret_tower(tower)?;
        let mut cache = self.images.lock().expect("cache lock");
        for id in tower.ids() {
            let g = tower.gen(id);
            cache.insert((g.src.clone(), g.tgt.clone()), images[id.index()].clone());
        }
        Ok(cache[&key].clone())
    }
}

impl Interpretation for Fundamental {
    fn interpret(&self, _model: &Model, tower: &Tower, gen: GenId, input: &[usize]) -> Result<usize> {
        let h = tower.gen(gen);
        let image = self.image(tower, gen)?;
        let sum = sum_groupoid(&h.target)?;
        functor_arrow(&self.groupoid, &sum, input, image[0], image[1])
    }
}

/// The carrier of the fundamental model: objects, then arrows in every
/// positive dimension (degenerate above dimension one).
pub fn fundamental_carrier(x: &FiniteGroupoid) -> GlobularSet {
    let arrows = 0..x.arrow_count();
    GlobularSet::new(
        vec![x.objects(), x.arrow_count()],
        vec![arrows.clone().map(|f| x.src(f)).collect()],
        vec![arrows.map(|f| x.tgt(f)).collect()],
    )
    .expect("arrows have ends among the objects")
}

/// The fundamental model of a finite groupoid over `tower`.
pub fn fundamental(x: &FiniteGroupoid, tower: &Tower) -> Result<Model> {
    let images = interpret_tower(tower)?;
    let cache = tower.ids().map(|id| {
        let g = tower.gen(id);
        ((g.src.clone(), g.tgt.clone()), images[id.index()].clone())
    });
    let interp = Fundamental { groupoid: x.clone(), images: Mutex::new(cache.collect()) };
    Ok(Model::new(format!("Pi({})", x.name()), fundamental_carrier(x), Arc::new(interp)))
}

/// The arrow that the composition of 1-cells assigns to `(g, f)` with
/// `f : a → b` and `g : b → c`, through the tower's interpretation.
pub fn composite_through(x: &FiniteGroupoid, image: &DiskMap, g: usize, f: usize) -> Result<usize> {
    let table = Table::new(vec![1, 1], vec![0])?;
    let sum = sum_groupoid(&table)?;
    functor_arrow(x, &sum, &[g, f], image[0], image[1])
}

/// Seeded admissible pairs: pairs of cells of random small sums, and
/// diagonal pairs of random normalized composites of the tower.
pub fn sample_admissible_pairs(tower: &Tower, seed: u64, count: usize) -> Vec<(Term, Term)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pair = if rng.gen_bool(0.5) {
            random_cell_pair(tower, &mut rng)
        } else {
            normalize(tower, &random_expr(tower, &mut rng, 3)).ok().and_then(|m| m.as_term().cloned()).map(|t| (t.clone(), t))
        };
        if let Some((f, g)) = pair {
            if tower.admissible(&f, &g).is_admissible() {
                out.push((f, g));
            }
        }
    }
    out
}

fn random_cell_pair(tower: &Tower, rng: &mut ChaCha8Rng) -> Option<(Term, Term)> {
    let width = rng.gen_range(1..=3);
    let upper: Vec<usize> = (0..width).map(|_| rng.gen_range(0..=3)).collect();
    let lower: Vec<usize> = (1..width).map(|_| rng.gen_range(0..=2)).collect();
    let table = Table::new(upper, lower).ok()?;
    let n = table.dimension().saturating_sub(rng.gen_range(0..=1));
    let cells = realize_sum(&table).carrier.count(n);
    let f = tower.cell(&table, n, rng.gen_range(0..cells)).ok()?;
    let g = tower.cell(&table, n, rng.gen_range(0..cells)).ok()?;
    Some((f, g))
}
