//! Reading towers, models, groupoids and morphisms from disk.

use std::fs;
use std::path::{Path, PathBuf};

use globular::coherator::load_script;
use globular::gpdmodel::{fundamental, fundamental_morphism, FiniteGroupoid, GroupoidFile, GroupoidFunctor};
use globular::model::{CrossedModule, ModelFile};
use globular::{build_strict, FiniteGroup, Model, ModelMorphism, PregroupoidBundle, StrictKind, Tower};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::args::ModelArgs;
use crate::error::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { file: path.to_path_buf(), source })
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { file: path.to_path_buf(), source })
}

fn json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

pub fn tower(path: &Path) -> CliResult<Tower> {
    load_script(&read(path)?).map_err(|e| CliError::script(path, e))
}

/// The operation bundle, found by the library's naming scheme.
pub fn bundle(tower: &Tower, path: &Path) -> CliResult<PregroupoidBundle> {
    PregroupoidBundle::from_names(tower)
        .map_err(|e| CliError::Check(format!("{}: no composition, unit and inverse operations: {e}", path.display())))
}

pub fn group(name: &str) -> CliResult<FiniteGroup> {
    FiniteGroup::parse(name).map_err(|e| CliError::Parse(e.to_string()))
}

/// `A,n` for an Eilenberg-MacLane model.
pub fn kan(spec: &str) -> CliResult<(FiniteGroup, usize)> {
    let bad = || CliError::Parse(format!("--kan expects `A,n` (for example `Z2,2`), got `{spec}`"));
    let (a, n) = spec.rsplit_once(',').ok_or_else(bad)?;
    let n = n.trim().parse().map_err(|_| bad())?;
    Ok((group(a)?, n))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct XmodFile {
    group: String,
    module: String,
    /// Defaults to the trivial boundary.
    #[serde(default)]
    boundary: Option<Vec<usize>>,
    /// `action[g][a]`; defaults to the trivial action.
    #[serde(default)]
    action: Option<Vec<Vec<usize>>>,
}

pub fn xmod(path: &Path) -> CliResult<CrossedModule> {
    let file: XmodFile = json(path)?;
    let (g, a) = (group(&file.group)?, group(&file.module)?);
    let boundary = file.boundary.unwrap_or_else(|| vec![g.identity(); a.order()]);
    let action = file.action.unwrap_or_else(|| vec![(0..a.order()).collect(); g.order()]);
    CrossedModule::new(g, a, boundary, action).map_err(|e| CliError::check(path.display(), e))
}

pub fn groupoid(path: &Path) -> CliResult<FiniteGroupoid> {
    let file = GroupoidFile::parse(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let name = file.name.clone().unwrap_or_else(|| path.file_stem().map_or("groupoid".into(), |s| s.to_string_lossy().into_owned()));
    let file = GroupoidFile { name: Some(name), ..file };
    FiniteGroupoid::from_file(file).map_err(|e| CliError::check(path.display(), e))
}

fn strict(kind: StrictKind, tower: &Tower, bundle: &PregroupoidBundle) -> CliResult<Model> {
    let label = kind.label();
    build_strict(kind, tower, bundle).map_err(|e| CliError::check(label, e))
}

fn model_file(path: &Path) -> CliResult<Model> {
    let text = read(path)?;
    let file = ModelFile::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    file.into_model(path.display().to_string()).map_err(|e| CliError::check(path.display(), e))
}

/// The one model selected on the command line.
pub fn model(args: &ModelArgs, tower: &Tower, bundle: &PregroupoidBundle) -> CliResult<Model> {
    let given = [args.model.is_some(), args.kg1.is_some(), args.kan.is_some(), args.discrete.is_some(), args.xmod.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(CliError::Parse("give exactly one model: a file, --kg1, --kan, --discrete or --xmod".into()));
    }
    if let Some(path) = &args.model {
        return model_file(path);
    }
    let kind = if let Some(g) = &args.kg1 {
        StrictKind::Kg1(group(g)?)
    } else if let Some(spec) = &args.kan {
        let (a, n) = kan(spec)?;
        StrictKind::Kan(a, n)
    } else if let Some(k) = args.discrete {
        StrictKind::Discrete(k)
    } else {
        StrictKind::CrossedModule(xmod(args.xmod.as_ref().expect("counted above"))?)
    };
    strict(kind, tower, bundle)
}

/// Where a morphism file finds its models. Paths are relative to the file.
#[derive(Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum ModelSpec {
    Kg1(String),
    Kan(String),
    Discrete(usize),
    Xmod(PathBuf),
    Model(PathBuf),
    /// The fundamental model of a groupoid file.
    Groupoid(PathBuf),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorSpec {
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

/// A morphism of models: explicit cell maps, or a functor between groupoids.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    source: ModelSpec,
    target: ModelSpec,
    /// `maps[d][c]`, at least up to the higher of the two top dimensions.
    #[serde(default)]
    maps: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    functor: Option<FunctorSpec>,
}

enum Resolved {
    Model(Model),
    Groupoid(FiniteGroupoid, Model),
}

impl Resolved {
    fn model(&self) -> &Model {
        match self {
            Resolved::Model(m) | Resolved::Groupoid(_, m) => m,
        }
    }
}

fn resolve(spec: &ModelSpec, dir: &Path, tower: &Tower, bundle: &PregroupoidBundle) -> CliResult<Resolved> {
    let model = match spec {
        ModelSpec::Kg1(g) => strict(StrictKind::Kg1(group(g)?), tower, bundle)?,
        ModelSpec::Kan(s) => {
            let (a, n) = kan(s)?;
            strict(StrictKind::Kan(a, n), tower, bundle)?
        }
        ModelSpec::Discrete(k) => strict(StrictKind::Discrete(*k), tower, bundle)?,
        ModelSpec::Xmod(p) => strict(StrictKind::CrossedModule(xmod(&dir.join(p))?), tower, bundle)?,
        ModelSpec::Model(p) => model_file(&dir.join(p))?,
        ModelSpec::Groupoid(p) => {
            let x = groupoid(&dir.join(p))?;
            let m = fundamental(&x, tower).map_err(|e| CliError::check(x.name(), e))?;
            return Ok(Resolved::Groupoid(x, m));
        }
    };
    Ok(Resolved::Model(model))
}

pub fn morphism(path: &Path, tower: &Tower, bundle: &PregroupoidBundle) -> CliResult<ModelMorphism> {
    let file: MorphismFile = json(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let source = resolve(&file.source, dir, tower, bundle)?;
    let target = resolve(&file.target, dir, tower, bundle)?;
    let invalid = |e: globular::Error| CliError::check(path.display(), e);
    match (file.maps, file.functor, &source, &target) {
        (Some(mut maps), None, _, _) => {
            let top = source.model().top().max(target.model().top());
            if maps.len() <= top {
                return Err(CliError::Parse(format!("{}: `maps` must cover dimensions 0 to {top}", path.display())));
            }
            // Both models are degenerate above their tops.
            while maps.len() <= tower.truncation() {
                maps.push(maps.last().expect("nonempty").clone());
            }
            maps.truncate(tower.truncation() + 1);
            ModelMorphism::new(source.model().clone(), target.model().clone(), maps, tower).map_err(invalid)
        }
        (None, Some(f), Resolved::Groupoid(x, mx), Resolved::Groupoid(y, my)) => {
            let functor = GroupoidFunctor::new(x, y, f.objects, f.arrows).map_err(invalid)?;
            fundamental_morphism(&functor, mx, my, tower).map_err(invalid)
        }
        (None, Some(_), _, _) => Err(CliError::Parse(format!("{}: `functor` needs groupoids on both sides", path.display()))),
        _ => Err(CliError::Parse(format!("{}: give exactly one of `maps` and `functor`", path.display()))),
    }
}
