//! Chosen compositions, units and inverses of a tower.

use std::collections::BTreeMap;

use super::stdlib::{comp_name, inv_name, unit_name};
use super::term::{GenId, Morph, Term};
use super::tower::Tower;
use crate::error::{Error, Result};
use crate::globe::{Side, Table, Word};

/// Which structural operation a generator plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Composition of `i`-cells along a common `j`-cell.
    Comp { i: usize, j: usize },
    /// Unit on an `i`-cell.
    Unit { i: usize },
    /// Inverse of an `i`-cell with respect to `j`-composition.
    Inv { i: usize, j: usize },
}

/// A pregroupoidal selection of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PregroupoidBundle {
    pub comp: BTreeMap<(usize, usize), GenId>,
    pub unit: BTreeMap<usize, GenId>,
    pub inv: BTreeMap<(usize, usize), GenId>,
}

impl PregroupoidBundle {
    /// Looks the operations up under their library names, for every dimension
    /// the tower's truncation allows.
    pub fn from_names(tower: &Tower) -> Result<PregroupoidBundle> {
        let get = |name: String| tower.lookup(&name).ok_or(Error::UnknownGenerator(name));
        let mut b = PregroupoidBundle::default();
        for i in 1..=tower.truncation() {
            b.unit.insert(i - 1, get(unit_name(i - 1))?);
            for j in 0..i {
                b.comp.insert((i, j), get(comp_name(i, j))?);
                b.inv.insert((i, j), get(inv_name(i, j))?);
            }
        }
        b.validate(tower)?;
        Ok(b)
    }

    pub fn comp(&self, i: usize, j: usize) -> Result<GenId> {
        self.comp.get(&(i, j)).copied().ok_or_else(|| Error::UnknownGenerator(format!("composition of {i}-cells along {j}-cells")))
    }

    pub fn unit(&self, i: usize) -> Result<GenId> {
        self.unit.get(&i).copied().ok_or_else(|| Error::UnknownGenerator(format!("unit on {i}-cells")))
    }

    pub fn inv(&self, i: usize, j: usize) -> Result<GenId> {
        self.inv.get(&(i, j)).copied().ok_or_else(|| Error::UnknownGenerator(format!("inverse of {i}-cells along {j}-cells")))
    }

    pub fn roles(&self) -> impl Iterator<Item = (Role, GenId)> + '_ {
        let c = self.comp.iter().map(|(&(i, j), &g)| (Role::Comp { i, j }, g));
        let u = self.unit.iter().map(|(&i, &g)| (Role::Unit { i }, g));
        let w = self.inv.iter().map(|(&(i, j), &g)| (Role::Inv { i, j }, g));
        c.chain(u).chain(w)
    }

    /// The source and target a generator in `role` must have, built directly
    /// from the term constructors.
    pub fn expected_pair(&self, tower: &Tower, role: Role) -> Result<(Term, Term)> {
        match role {
            Role::Comp { i, j } => {
                let t = Table::new(vec![i, i], vec![j])?;
                let face = |side| Word::face(side, i - 1, i);
                if j + 1 == i {
                    let s = tower.leg_word(&t, 2, &face(Side::Src))?;
                    let g = tower.leg_word(&t, 1, &face(Side::Tgt))?;
                    return Ok((s, g));
                }
                let lower = tower.app(self.comp(i - 1, j)?);
                let pair = Table::new(vec![i - 1, i - 1], vec![j])?;
                let side_pair = |side| -> Result<Term> {
                    let m = tower.tuple(&pair, vec![tower.leg_word(&t, 1, &face(side))?, tower.leg_word(&t, 2, &face(side))?])?;
                    tower.compose_term(&m, &lower)
                };
                Ok((side_pair(Side::Src)?, side_pair(Side::Tgt)?))
            }
            Role::Unit { i } => {
                let id = tower.cell(&Table::disk(i), i, 0)?;
                Ok((id.clone(), id))
            }
            Role::Inv { i, j } => {
                let face = |side| tower.word(&Word::face(side, i - 1, i));
                if j + 1 == i {
                    return Ok((face(Side::Tgt), face(Side::Src)));
                }
                let lower = tower.app(self.inv(i - 1, j)?);
                let s = tower.compose_term(&Morph::from_term(face(Side::Src)), &lower)?;
                let g = tower.compose_term(&Morph::from_term(face(Side::Tgt)), &lower)?;
                Ok((s, g))
            }
        }
    }

    /// Checks every selected generator against its defining equations.
    pub fn validate(&self, tower: &Tower) -> Result<()> {
        for (role, id) in self.roles() {
            let h = tower.gen(id);
            let (s, t) = self.expected_pair(tower, role)?;
            if h.src != s {
                return Err(Error::FunctorEquation { name: h.name.clone(), side: "source" });
            }
            if h.tgt != t {
                return Err(Error::FunctorEquation { name: h.name.clone(), side: "target" });
            }
        }
        Ok(())
    }

    /// Declares a second, independent choice of every operation, each a fresh
    /// lifting named `<prefix><library name>` whose boundary is computed from
    /// the new choice one dimension down. Returns the new bundle.
    pub fn declare_alternative(&self, tower: &mut Tower, prefix: &str) -> Result<PregroupoidBundle> {
        let mut alt = PregroupoidBundle::default();
        let top = self.unit.keys().max().map_or(0, |&i| i + 1);
        for i in 1..=top {
            let role = Role::Unit { i: i - 1 };
            let (s, t) = alt.expected_pair(tower, role)?;
            alt.unit.insert(i - 1, tower.declare_lift(&format!("{prefix}{}", unit_name(i - 1)), s, t)?);
            for j in 0..i {
                let (s, t) = alt.expected_pair(tower, Role::Comp { i, j })?;
                alt.comp.insert((i, j), tower.declare_lift(&format!("{prefix}{}", comp_name(i, j)), s, t)?);
                let (s, t) = alt.expected_pair(tower, Role::Inv { i, j })?;
                alt.inv.insert((i, j), tower.declare_lift(&format!("{prefix}{}", inv_name(i, j)), s, t)?);
            }
        }
        alt.validate(tower)?;
        Ok(alt)
    }

    /// Every `(source, target)` pair of the bundle's operations, with its role.
    pub fn role_table(&self, tower: &Tower) -> Result<Vec<((Term, Term), Role)>> {
        self.roles().map(|(role, _)| Ok((self.expected_pair(tower, role)?, role))).collect()
    }

    /// The role of `id` if its boundary pair is that of one of the bundle's operations.
    pub fn role_of(&self, tower: &Tower, id: GenId) -> Result<Option<Role>> {
        let h = tower.gen(id);
        for ((s, t), role) in self.role_table(tower)? {
            if s == h.src && t == h.tgt {
                return Ok(Some(role));
            }
        }
        Ok(None)
    }
}
