//! Finite groups given by multiplication tables, a small catalogue, and
//! isomorphism search.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group on elements `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table (`table[a][b] = a·b`).
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("a group has at least one element".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not closed".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), table, identity, inverses })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1, "cyclic groups have positive order");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(format!("Z{n}"), table).expect("cyclic tables are groups")
    }

    /// The symmetric group on `k` letters, elements in lexicographic order of permutations.
    pub fn symmetric(k: usize) -> FiniteGroup {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
        // (a·b)(x) = a(b(x)).
        let table = perms.iter().map(|a| perms.iter().map(|b| index(&b.iter().map(|&x| a[x]).collect())).collect()).collect();
        FiniteGroup::from_table(format!("S{k}"), table).expect("permutation tables are groups")
    }

    pub fn klein() -> FiniteGroup {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        FiniteGroup::from_table("K4", table).expect("xor table is a group")
    }

    /// The symmetries of a regular `n`-gon, `r^k s^e` encoded as `k + n * e`.
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 1, "dihedral groups need n >= 1");
        let table = (0..2 * n)
            .map(|x| {
                let (a, e) = (x % n, x / n);
                (0..2 * n)
                    .map(|y| {
                        let (b, f) = (y % n, y / n);
                        let k = if e == 0 { a + b } else { a + n - b } % n;
                        k + n * ((e + f) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("D{n}"), table).expect("dihedral tables are groups")
    }

    /// The quaternion group, `±1, ±i, ±j, ±k` encoded as `unit + 4 * negative`.
    pub fn quaternion() -> FiniteGroup {
        // Products of the units 1, i, j, k as (sign flip, unit).
        const UNITS: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (flip, u) = UNITS[x % 4][y % 4];
                        u + 4 * ((x / 4 + y / 4 + flip) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("Q8", table).expect("quaternion table is a group")
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// Direct product, elements `(a, b)` encoded as `a * |h| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let m = h.order();
        let n = g.order() * m;
        let table = (0..n).map(|x| (0..n).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect()).collect();
        FiniteGroup::from_table(format!("{}x{}", g.name, h.name), table).expect("products of groups are groups")
    }

    /// Parses names such as `Z3`, `S3`, `K4`, `1` or `Z2xZ2`.
    pub fn parse(name: &str) -> Result<FiniteGroup> {
        let name = name.trim();
        if let Some((a, b)) = name.split_once('x') {
            return Ok(FiniteGroup::product(&FiniteGroup::parse(a)?, &FiniteGroup::parse(b)?));
        }
        let bad = || Error::InvalidGroup(format!("unknown group `{name}` (expected Z<n>, S<n>, D<n>, K4, Q8 or products AxB)"));
        if name == "1" {
            return Ok(FiniteGroup::trivial());
        }
        if name == "K4" {
            return Ok(FiniteGroup::klein());
        }
        if name == "Q8" {
            return Ok(FiniteGroup::quaternion());
        }
        let (kind, num) = name.split_at(1);
        let n: usize = num.parse().map_err(|_| bad())?;
        match kind {
            "Z" if (1..=64).contains(&n) => Ok(FiniteGroup::cyclic(n)),
            "S" if (1..=5).contains(&n) => Ok(FiniteGroup::symmetric(n)),
            "D" if (1..=32).contains(&n) => Ok(FiniteGroup::dihedral(n)),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteGroup {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A small generating set, greedily chosen.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        let mut order: Vec<usize> = (0..self.order()).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        for a in order {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Checks that `map` is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < target.order())
            && (0..self.order()).all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    pub fn is_isomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        if self.order() != target.order() || !self.is_homomorphism(target, map) {
            return false;
        }
        let mut seen = vec![false; target.order()];
        map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    /// An isomorphism `self → other`, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order() != other.order() || self.is_abelian() != other.is_abelian() {
            return None;
        }
        let mut profile_a: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        let mut profile_b: Vec<usize> = (0..other.order()).map(|a| other.element_order(a)).collect();
        profile_a.sort_unstable();
        profile_b.sort_unstable();
        if profile_a != profile_b {
            return None;
        }
        let gens = self.generators();
        let mut images = Vec::with_capacity(gens.len());
        self.search(other, &gens, &mut images)
    }

    fn search(&self, other: &FiniteGroup, gens: &[usize], images: &mut Vec<usize>) -> Option<Vec<usize>> {
        if images.len() == gens.len() {
            let map = self.extend(other, gens, images)?;
            return self.is_isomorphism(other, &map).then_some(map);
        }
        let g = gens[images.len()];
        let ord = self.element_order(g);
        for cand in 0..other.order() {
            if other.element_order(cand) != ord {
                continue;
            }
            images.push(cand);
            if let Some(m) = self.search(other, gens, images) {
                return Some(m);
            }
            images.pop();
        }
        None
    }

    /// Extends generator images to a map by breadth-first words; `None` if inconsistent.
    fn extend(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// A catalogue name for the isomorphism class, when the group is small enough.
    pub fn recognize(&self) -> Option<String> {
        catalogue().into_iter().find(|c| c.order() == self.order() && c.is_isomorphic(self)).map(|c| c.name)
    }

    /// Human-readable one-line summary, for example `S3 (order 6, nonabelian)`.
    pub fn describe(&self) -> String {
        let kind = if self.is_abelian() { "abelian" } else { "nonabelian" };
        match self.recognize() {
            Some(name) if name == "1" => "trivial (order 1)".to_string(),
            Some(name) => format!("{name} (order {}, {kind})", self.order()),
            None => format!("unrecognized (order {}, {kind})", self.order()),
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Groups recognized by name: the trivial group, cyclic groups up to order 12,
/// the Klein four-group and the symmetric groups S3 and S4.
pub fn catalogue() -> Vec<FiniteGroup> {
    let mut out = vec![FiniteGroup::trivial().with_name("1")];
    out.extend((2..=12).map(FiniteGroup::cyclic));
    out.push(FiniteGroup::klein());
    out.push(FiniteGroup::symmetric(3));
    out.push(FiniteGroup::symmetric(4));
    out.push(FiniteGroup::dihedral(4));
    out.push(FiniteGroup::quaternion());
    out
}

/// One representative of every isomorphism class of groups of order at most
/// eight.
pub fn groups_up_to_order_eight() -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    let mut out: Vec<FiniteGroup> = (1..=8).map(z).collect();
    out[0] = FiniteGroup::trivial().with_name("1");
    out.push(FiniteGroup::klein());
    out.push(FiniteGroup::symmetric(3));
    out.push(FiniteGroup::product(&z(2), &z(4)));
    out.push(FiniteGroup::product(&FiniteGroup::product(&z(2), &z(2)), &z(2)));
    out.push(FiniteGroup::dihedral(4));
    out.push(FiniteGroup::quaternion());
    out
}
