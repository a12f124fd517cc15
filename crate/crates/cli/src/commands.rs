//! One function per verb. Each returns a report in both renderings.

use std::fmt::Write as _;
use std::path::Path;

use globular::coherator::dsl::{elaborate, parse_table, parse_term};
use globular::coherator::expr::{normalize, random_expr, reduce};
use globular::coherator::{print_morph, print_term, stdlib, stdlib_script, Expr, Strategy};
use globular::gpdmodel::{compare, globe_diagram, interpret_tower, quillen_pi, quillen_pi1, BasedGroupoid};
use globular::homotopy::{divide, pi0, Whisker};
use globular::{pi_n, weak_equiv, FiniteGroup, Table};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{ModelArgs, SideArg};
use crate::error::{CliError, CliResult};
use crate::inputs;

/// A finished report. `ok` is false when a check failed.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn pass(text: String, json: Value) -> Output {
        Output { text, json, ok: true }
    }
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({
        "name": g.recognize(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "table": g.table(),
    })
}

/// Default truncation of generated libraries.
pub const DEFAULT_DIM: usize = 3;

pub fn check(path: &Path, samples: usize, seed: u64) -> CliResult<Output> {
    let tower = inputs::tower(path)?;
    let (count, levels) = (tower.len(), tower.max_level());
    let mut text = format!("{count} generators, levels 1–{levels}, all admissible\n");
    let mut disagreements = Vec::new();
    if !tower.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..samples {
            let e = random_expr(&tower, &mut rng, 4);
            let limit = 10 * e.size();
            let outcome = (|| {
                let big = normalize(&tower, &e)?;
                let a = reduce(&tower, &e, Strategy::LeftmostInnermost, limit)?;
                let b = reduce(&tower, &e, Strategy::RightmostOutermost, limit)?;
                Ok::<_, globular::Error>(a.normal == b.normal && a.normal.to_morph().as_ref() == Some(&big))
            })();
            match outcome {
                Ok(true) => {}
                Ok(false) => disagreements.push(format!("sample {k}: the strategies disagree")),
                Err(e) => disagreements.push(format!("sample {k}: {e}")),
            }
        }
        writeln!(text, "rewriting: {samples} random terms (seed {seed}), {} disagreements", disagreements.len()).expect("string");
    }
    for d in &disagreements {
        writeln!(text, "  {d}").expect("string");
    }
    let json = json!({
        "file": path.display().to_string(),
        "generators": count,
        "levels": levels,
        "truncation": tower.truncation(),
        "samples": samples,
        "seed": seed,
        "disagreements": disagreements,
    });
    Ok(Output { ok: disagreements.is_empty(), text, json })
}

pub fn stdlib_cmd(dim: usize, out: Option<&Path>) -> CliResult<Output> {
    if dim < 2 {
        return Err(CliError::Parse(format!("--dim must be at least 2, got {dim}")));
    }
    let script = stdlib_script(dim);
    let lib = stdlib(dim).map_err(|e| CliError::script(Path::new("<stdlib>"), e))?;
    let count = lib.tower.len();
    let json = json!({ "dim": dim, "generators": count, "out": out.map(|p| p.display().to_string()) });
    match out {
        Some(path) => {
            inputs::write(path, &script)?;
            Ok(Output::pass(format!("wrote {count} generators to {}\n", path.display()), json))
        }
        None => Ok(Output::pass(script, json)),
    }
}

fn table_arg(flag: &str, text: Option<&str>) -> CliResult<Option<Table>> {
    text.map(|t| parse_table(t).map_err(|e| CliError::script(Path::new(flag), e))).transpose()
}

pub fn normalize_cmd(path: &Path, term: &str, source: Option<&str>, target: Option<&str>) -> CliResult<Output> {
    let tower = inputs::tower(path)?;
    let raw = parse_term(term).map_err(|e| CliError::script(Path::new("--term"), e))?;
    let (s, t) = (table_arg("--source", source)?, table_arg("--target", target)?);
    let m = elaborate(&tower, &raw, s.as_ref(), t.as_ref()).map_err(|e| CliError::script(Path::new("--term"), e))?;
    let normal = normalize(&tower, &Expr::from_morph(&m)).map_err(|e| CliError::check("--term", e))?;
    let printed = print_morph(&tower, &normal);
    let json = json!({ "normal": printed, "source": normal.source.to_string(), "target": normal.target.to_string() });
    Ok(Output::pass(format!("{printed} : {} -> {}\n", normal.source, normal.target), json))
}

pub fn admissible(path: &Path, src: &str, tgt: &str, n: Option<usize>, target: Option<&str>) -> CliResult<Output> {
    let tower = inputs::tower(path)?;
    let target = table_arg("--target", target)?;
    let source = n.map(Table::disk);
    let term = |flag: &str, text: &str| {
        let raw = parse_term(text).map_err(|e| CliError::script(Path::new(flag), e))?;
        let m = elaborate(&tower, &raw, source.as_ref(), target.as_ref()).map_err(|e| CliError::script(Path::new(flag), e))?;
        m.as_term().cloned().ok_or_else(|| CliError::Parse(format!("{flag}: `{text}` does not start from a disk")))
    };
    let (f, g) = (term("--src", src)?, term("--tgt", tgt)?);
    let verdict = tower.admissible(&f, &g);
    let ok = verdict.is_admissible();
    let text = if ok { format!("admissible: D{} -> {}\n", f.source_dim(), f.target()) } else { format!("not admissible: {verdict}\n") };
    let json = json!({
        "admissible": ok,
        "verdict": verdict.to_string(),
        "src": print_term(&tower, &f),
        "tgt": print_term(&tower, &g),
    });
    Ok(Output { text, json, ok })
}

pub fn model_check(path: &Path, args: &ModelArgs) -> CliResult<Output> {
    let tower = inputs::tower(path)?;
    let bundle = inputs::bundle(&tower, path)?;
    let model = inputs::model(args, &tower, &bundle)?;
    let report = model.check(&tower);
    let mut text = format!("{}: {} lifting equations checked, {} violations\n", model.name(), report.checked, report.violations.len());
    for v in report.violations.iter().take(20) {
        writeln!(text, "  {v}").expect("string");
    }
    let json = json!({
        "model": model.name(),
        "checked": report.checked,
        "violations": report.violations.iter().map(|v| json!({
            "generator": v.generator, "input": v.input, "message": v.message,
        })).collect::<Vec<_>>(),
    });
    Ok(Output { ok: report.is_clean(), text, json })
}

pub fn pi(path: &Path, args: &ModelArgs, n: usize, base: usize) -> CliResult<Output> {
    let tower = inputs::tower(path)?;
    let bundle = inputs::bundle(&tower, path)?;
    let model = inputs::model(args, &tower, &bundle)?;
    if base >= model.count(0) {
        return Err(CliError::Parse(format!("--base {base}: the model has {} 0-cells", model.count(0))));
    }
    if n == 0 {
        let classes = pi0(&model).map_err(|e| CliError::check(model.name(), e))?;
        let json = json!({ "n": 0, "classes": classes.len() });
        return Ok(Output::pass(format!("pi_0 = {} classes\n", classes.len()), json));
    }
    let g = pi_n(&model, &tower, &bundle, n, base).map_err(|e| CliError::check(model.name(), e))?;
    let text = format!("pi_{n} = {}\n{g}", g.describe());
    Ok(Output::pass(text, json!({ "n": n, "base": base, "group": group_json(&g) })))
}

pub fn weq(path: &Path, morphism: &Path) -> CliResult<Output> {
    let tower = inputs::tower(path)?;
    let bundle = inputs::bundle(&tower, path)?;
    let f = inputs::morphism(morphism, &tower, &bundle)?;
    let report = weak_equiv(&f, &tower, &bundle).map_err(|e| CliError::check(morphism.display(), e))?;
    let json = json!({
        "source": f.source.name(),
        "target": f.target.name(),
        "conditions": report.conditions,
        "reasons": report.reasons,
        "weak_equivalence": report.is_weak_equivalence(),
    });
    Ok(Output::pass(format!("{report}\n"), json))
}

pub fn fundamental(path: &Path, dim: usize) -> CliResult<Output> {
    let x = inputs::groupoid(path)?;
    let lib = stdlib(dim).map_err(|e| CliError::script(Path::new("<stdlib>"), e))?;
    let c = compare(&x, &lib.tower, &lib.bundle).map_err(|e| CliError::check(path.display(), e))?;
    let mut text = format!("{}: {} objects, {} isomorphism classes, pi_0 has {} classes\n", c.name, x.objects(), c.iso_classes, c.pi0);
    let mut objects = Vec::new();
    for o in &c.objects {
        writeln!(text, "object {}: Aut = {}, pi_1 = {}", o.object, o.aut.describe(), o.pi1.describe()).expect("string");
        writeln!(
            text,
            "  loop side: homotopy classes {}, pi_0 of the loop object {}",
            o.quillen.via_homotopies.describe(),
            o.quillen.via_loops.describe()
        )
        .expect("string");
        let higher: Vec<String> = o.higher.iter().map(|(n, k)| format!("pi_{n} order {k}")).collect();
        writeln!(text, "  {}", higher.join(", ")).expect("string");
        objects.push(json!({
            "object": o.object,
            "aut": group_json(&o.aut),
            "pi1": group_json(&o.pi1),
            "pi1_via_homotopies": group_json(&o.quillen.via_homotopies),
            "pi1_via_loops": group_json(&o.quillen.via_loops),
            "higher": o.higher,
            "higher_via_loops": o.quillen_higher,
        }));
    }
    text.push_str("the comparison holds\n");
    let json = json!({ "name": c.name, "iso_classes": c.iso_classes, "pi0": c.pi0, "dim": dim, "objects": objects });
    Ok(Output::pass(text, json))
}

pub fn gpd_pi(path: &Path, x: usize, n: usize) -> CliResult<Output> {
    let g = inputs::groupoid(path)?;
    if x >= g.objects() {
        return Err(CliError::Parse(format!("--x {x}: the groupoid has {} objects", g.objects())));
    }
    let based = BasedGroupoid { groupoid: g.clone(), base: x };
    let fail = |e| CliError::check(path.display(), e);
    match n {
        0 => {
            let k = g.iso_classes();
            Ok(Output::pass(format!("pi_0 = {k} classes\n"), json!({ "n": 0, "classes": k })))
        }
        1 => {
            let lib = stdlib(2).map_err(|e| CliError::script(Path::new("<stdlib>"), e))?;
            let images = interpret_tower(&lib.tower).map_err(fail)?;
            let comp = &images[lib.bundle.comp(1, 0).map_err(fail)?.index()];
            let diagram = globe_diagram(2).map_err(fail)?;
            let q = quillen_pi1(&based, &diagram, comp).map_err(fail)?;
            let text = format!(
                "pi_1 via homotopy classes = {}\npi_1 via the loop object = {}\nthe canonical bijection is an isomorphism\n",
                q.via_homotopies.describe(),
                q.via_loops.describe()
            );
            let json = json!({
                "n": 1,
                "via_homotopies": group_json(&q.via_homotopies),
                "via_loops": group_json(&q.via_loops),
                "bijection": q.bijection,
            });
            Ok(Output::pass(text, json))
        }
        _ => {
            let pi = quillen_pi(&based, n).map_err(fail)?;
            Ok(Output::pass(format!("pi_{n} = {}\n", pi.describe()), json!({ "n": n, "group": group_json(&pi) })))
        }
    }
}

pub struct DivideArgs {
    pub n: usize,
    pub i: usize,
    pub gamma: usize,
    pub u: usize,
    pub v: usize,
    pub side: SideArg,
}

pub fn divide_cmd(path: &Path, args: &ModelArgs, d: &DivideArgs) -> CliResult<Output> {
    let mut tower = inputs::tower(path)?;
    let bundle = inputs::bundle(&tower, path)?;
    let model = inputs::model(args, &tower, &bundle)?;
    let side = match d.side {
        SideArg::Left => Whisker::Left,
        SideArg::Right => Whisker::Right,
    };
    let before = tower.len();
    let div = divide(&model, &mut tower, &bundle, d.n, d.i, d.gamma, d.u, d.v, side).map_err(|e| match e {
        globular::Error::InvalidArgument(m) => CliError::Parse(m),
        e => CliError::check(model.name(), e),
    })?;
    let mut text = format!(
        "whiskering by {} ({:?}) along dimension {}: hom({}, {}) -> hom({}, {}) of {}-cells\n",
        div.gamma, div.side, div.i, div.u, div.v, div.u2, div.v2, div.n
    );
    writeln!(text, "K: {}", render(&div.forward)).expect("string");
    writeln!(text, "L: {}", render(&div.backward)).expect("string");
    writeln!(text, "on classes: K {} and L {}", render(&div.class_forward), render(&div.class_backward)).expect("string");
    writeln!(text, "{} correction liftings declared", tower.len() - before).expect("string");
    text.push_str("L∘K = id and K∘L = id on homotopy classes\n");
    let json = json!({
        "n": div.n, "i": div.i, "gamma": div.gamma, "u": div.u, "v": div.v, "u2": div.u2, "v2": div.v2,
        "forward": div.forward, "backward": div.backward,
        "class_forward": div.class_forward, "class_backward": div.class_backward,
        "corrections": tower.len() - before,
    });
    Ok(Output::pass(text, json))
}

fn render(map: &std::collections::BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn dim_or_default(dim: Option<usize>) -> usize {
    dim.unwrap_or(DEFAULT_DIM)
}
