//! The standard library of structural maps: compositions, units, inverses and
//! their first coherence constraints, generated as a tower script.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::bundle::PregroupoidBundle;
use super::dsl::{load_script, DslError};
use super::term::GenId;
use super::tower::Tower;

/// Name of the composition of `i`-cells along `j`-cells.
pub fn comp_name(i: usize, j: usize) -> String {
    format!("comp_{i}_{j}")
}

/// Name of the unit on `i`-cells (an `(i+1)`-cell).
pub fn unit_name(i: usize) -> String {
    format!("unit_{i}")
}

/// Name of the inverse of `i`-cells with respect to `j`-composition.
pub fn inv_name(i: usize, j: usize) -> String {
    format!("inv_{i}_{j}")
}

/// Coherence constraints shipped with the library, indexed by the dimension of
/// the cells they relate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coherences {
    pub assoc: BTreeMap<usize, GenId>,
    pub runit: BTreeMap<usize, GenId>,
    pub lunit: BTreeMap<usize, GenId>,
    pub rinv: BTreeMap<usize, GenId>,
    pub linv: BTreeMap<usize, GenId>,
    pub pentagon: BTreeMap<usize, GenId>,
    pub triangle: BTreeMap<usize, GenId>,
    pub exchange: BTreeMap<usize, GenId>,
}

/// A generated library: tower, operation bundle and constraints.
#[derive(Clone, Debug)]
pub struct Stdlib {
    pub tower: Tower,
    pub bundle: PregroupoidBundle,
    pub coherences: Coherences,
}

fn lift(out: &mut String, name: &str, source_dim: usize, target: &str, src: &str, tgt: &str) {
    writeln!(out, "lift {name} : D{source_dim} -> {target} ; src = {src} ; tgt = {tgt}").expect("writing to a string");
}

fn sum(legs: &[usize], glue: &[usize]) -> String {
    let mut s = format!("D{}", legs[0]);
    for (k, g) in glue.iter().enumerate() {
        write!(s, " +{g} D{}", legs[k + 1]).expect("writing to a string");
    }
    s
}

/// The library script for truncation `n`.
pub fn stdlib_script(n: usize) -> String {
    let mut out = format!("# structural maps up to dimension {n}\ndim {n}\n");
    for i in 1..=n {
        let c = comp_name(i, i - 1);
        lift(&mut out, &c, i, &sum(&[i, i], &[i - 1]), &format!("eps2 * s{i}"), &format!("eps1 * t{i}"));
        lift(&mut out, &unit_name(i - 1), i, &format!("D{}", i - 1), "id", "id");
        lift(&mut out, &inv_name(i, i - 1), i, &format!("D{i}"), &format!("t{i}"), &format!("s{i}"));
        for j in (0..i.saturating_sub(1)).rev() {
            let lower = comp_name(i - 1, j);
            lift(
                &mut out,
                &comp_name(i, j),
                i,
                &sum(&[i, i], &[j]),
                &format!("[eps1 * s{i}; eps2 * s{i}] * {lower}"),
                &format!("[eps1 * t{i}; eps2 * t{i}] * {lower}"),
            );
            let lower_inv = inv_name(i - 1, j);
            lift(&mut out, &inv_name(i, j), i, &format!("D{i}"), &format!("s{i} * {lower_inv}"), &format!("t{i} * {lower_inv}"));
        }
    }
    for i in 1..n {
        let c = comp_name(i, i - 1);
        let u = unit_name(i - 1);
        let w = inv_name(i, i - 1);
        let three = sum(&[i, i, i], &[i - 1, i - 1]);
        let one = format!("D{i}");
        lift(
            &mut out,
            &format!("assoc_{i}"),
            i + 1,
            &three,
            &format!("[[eps1; eps2] * {c}; eps3] * {c}"),
            &format!("[eps1; [eps2; eps3] * {c}] * {c}"),
        );
        lift(&mut out, &format!("runit_{i}"), i + 1, &one, &format!("[id; s{i} * {u}] * {c}"), "id");
        lift(&mut out, &format!("lunit_{i}"), i + 1, &one, &format!("[t{i} * {u}; id] * {c}"), "id");
        lift(&mut out, &format!("rinv_{i}"), i + 1, &one, &format!("[id; {w}] * {c}"), &format!("t{i} * {u}"));
        lift(&mut out, &format!("linv_{i}"), i + 1, &one, &format!("[{w}; id] * {c}"), &format!("s{i} * {u}"));
    }
    for i in 1..n.saturating_sub(1) {
        let c = comp_name(i, i - 1);
        let cv = comp_name(i + 1, i);
        let ch = comp_name(i + 1, i - 1);
        let a = format!("assoc_{i}");
        let k = unit_name(i);
        let four = sum(&[i, i, i, i], &[i - 1, i - 1, i - 1]);
        let c3 = format!(
            "[[eps1 * {k}; [eps2; eps3; eps4] * {a}] * {ch}; [eps1; [eps2; eps3] * {c}; eps4] * {a}; [[eps1; eps2; eps3] * {a}; eps4 * {k}] * {ch}] * [[eps1; eps2] * {cv}; eps3] * {cv}"
        );
        let c2 = format!("[[eps1; eps2; [eps3; eps4] * {c}] * {a}; [[eps1; eps2] * {c}; eps3; eps4] * {a}] * {cv}");
        lift(&mut out, &format!("pentagon_{i}"), i + 2, &four, &c3, &c2);
        let two = sum(&[i, i], &[i - 1]);
        let d2 = format!("[[eps1 * {k}; eps2 * lunit_{i}] * {ch}; [eps1; eps1 * s{i} * {}; eps2] * {a}] * {cv}", unit_name(i - 1));
        let d1 = format!("[eps1 * runit_{i}; eps2 * {k}] * {ch}");
        lift(&mut out, &format!("triangle_{i}"), i + 2, &two, &d2, &d1);
    }
    for i in 2..n {
        let cv = comp_name(i, i - 1);
        let ch = comp_name(i, i - 2);
        let target = sum(&[i, i, i, i], &[i - 1, i - 2, i - 1]);
        lift(
            &mut out,
            &format!("exchange_{i}"),
            i + 1,
            &target,
            &format!("[[eps1; eps3] * {ch}; [eps2; eps4] * {ch}] * {cv}"),
            &format!("[[eps1; eps2] * {cv}; [eps3; eps4] * {cv}] * {ch}"),
        );
    }
    out
}

/// Generates and loads the library for truncation `n ≥ 2`.
pub fn stdlib(n: usize) -> Result<Stdlib, DslError> {
    let tower = load_script(&stdlib_script(n))?;
    let bundle = PregroupoidBundle::from_names(&tower).expect("the library declares every bundle operation");
    let by_prefix = |prefix: &str| -> BTreeMap<usize, GenId> {
        tower
            .generators()
            .iter()
            .enumerate()
            .filter_map(|(idx, g)| {
                let rest = g.name.strip_prefix(prefix)?.strip_prefix('_')?;
                Some((rest.parse().ok()?, GenId(idx as u32)))
            })
            .collect()
    };
    let coherences = Coherences {
        assoc: by_prefix("assoc"),
        runit: by_prefix("runit"),
        lunit: by_prefix("lunit"),
        rinv: by_prefix("rinv"),
        linv: by_prefix("linv"),
        pentagon: by_prefix("pentagon"),
        triangle: by_prefix("triangle"),
        exchange: by_prefix("exchange"),
    };
    Ok(Stdlib { tower, bundle, coherences })
}
