mod common;

use std::fs;

use common::{globular, mutants, reference_parse, render, stderr, stdout};
use globular::coherator::dsl::parse_script;
use globular::coherator::{load_script, print_tower, stdlib, stdlib_script};
use globular::model::ModelFile;
use globular::{build_strict, FiniteGroup, StrictKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn workdir() -> TempDir {
    tempfile::tempdir().expect("temporary directory")
}

fn stdlib_file(dir: &TempDir, n: usize) -> String {
    let name = format!("stdlib{n}.tower");
    let o = globular(&["stdlib", "--dim", &n.to_string(), "--out", &name], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    name
}

#[test]
fn stdlib_round_trips_through_check() {
    let dir = workdir();
    for n in 2..=4 {
        let name = stdlib_file(&dir, n);
        let o = globular(&["check", &name], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let reread = load_script(&fs::read_to_string(dir.path().join(&name)).unwrap()).unwrap();
        let original = stdlib(n).unwrap().tower;
        assert_eq!(reread.generators(), original.generators());
        assert_eq!(reread.truncation(), n);
    }
}

#[test]
fn check_reports_generators_and_levels() {
    let dir = workdir();
    let name = stdlib_file(&dir, 3);
    let o = globular(&["check", &name], dir.path());
    let count = stdlib(3).unwrap().tower.len();
    assert!(stdout(&o).starts_with(&format!("{count} generators, levels 1–3, all admissible")), "{}", stdout(&o));
}

#[test]
fn pi_of_a_builtin_model() {
    let dir = workdir();
    let name = stdlib_file(&dir, 3);
    let o = globular(&["pi", &name, "--kg1", "S3", "--n", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pi_1 = S3 (order 6, nonabelian)"));
    let o = globular(&["--format", "json", "pi", &name, "--kan", "Z4,2", "--n", "2"], dir.path());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["group"]["name"], "Z4");
    assert_eq!(v["group"]["order"], 4);
}

#[test]
fn admissibility_failures_name_the_clause() {
    let dir = workdir();
    let name = stdlib_file(&dir, 3);
    let o = globular(&["admissible", &name, "--n", "1", "--target", "D3", "--src", "s3 * s2", "--tgt", "s3 * s2"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("dimension of target exceeds n+1"));
    let o = globular(&["admissible", &name, "--n", "0", "--target", "D1 +0 D1", "--src", "eps2 * s1", "--tgt", "eps2 * t1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn normal_forms_are_printed() {
    let dir = workdir();
    let name = stdlib_file(&dir, 2);
    let o = globular(&["normalize", &name, "--term", "[eps1; eps2] * comp_1_0", "--source", "D1", "--target", "D1 +0 D1"], dir.path());
    assert_eq!(stdout(&o), "comp_1_0 : D1 -> D1 +0 D1\n");
    let o = globular(&["normalize", &name, "--term", "(s2 * t1)", "--source", "D0", "--target", "D2"], dir.path());
    // The coglobular relations identify the two composites of faces.
    assert_eq!(stdout(&o), "t2 * t1 : D0 -> D2\n", "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let dir = workdir();
    assert_eq!(globular(&["check", "missing.tower"], dir.path()).status.code(), Some(3));
    fs::write(dir.path().join("dup.tower"), "dim 2\nlift a : D1 -> D0 ; src = id ; tgt = id\nlift a : D1 -> D0 ; src = id ; tgt = id\n")
        .unwrap();
    let o = globular(&["check", "dup.tower"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("dup.tower:3:1:"), "{}", stderr(&o));
    fs::write(dir.path().join("bad.tower"), "dim 2\nlift a : D2 -> D1 +0 D1 ; src = eps1 ; tgt = eps2\n").unwrap();
    let o = globular(&["check", "bad.tower"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.tower:2:"));
    fs::write(dir.path().join("ill.tower"), "dim 2\nlift a : D1 -> D0 ; src = eps3 ; tgt = id\n").unwrap();
    assert_eq!(globular(&["check", "ill.tower"], dir.path()).status.code(), Some(2));
    let name = stdlib_file(&dir, 2);
    let o = globular(&["pi", &name, "--kg1", "Z2", "--kan", "Z2,2", "--n", "1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_files_are_checked_exhaustively() {
    let dir = workdir();
    let name = stdlib_file(&dir, 3);
    let l = stdlib(3).unwrap();
    let m = build_strict(StrictKind::Kg1(FiniteGroup::cyclic(3)), &l.tower, &l.bundle).unwrap();
    let mut file = ModelFile::tabulate(&m, &l.tower).unwrap();
    fs::write(dir.path().join("z3.json"), file.to_json()).unwrap();
    let o = globular(&["model-check", &name, "z3.json"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("0 violations"));
    // Break one row of the composition.
    let rows = file.interp.get_mut("comp_1_0").unwrap();
    rows[1].1 = (rows[1].1 + 1) % 3;
    fs::write(dir.path().join("broken.json"), file.to_json()).unwrap();
    let o = globular(&["model-check", &name, "broken.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    fs::write(dir.path().join("garbled.json"), "{\n \"dimension\": 1,\n \"cells\": [\n}").unwrap();
    let o = globular(&["model-check", &name, "garbled.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

const Z2: &str = r#"{"name": "Z2", "objects": 1, "arrows": [[0,0],[0,0]], "compose": [[0,1],[1,0]], "inverse": [0,1]}"#;

#[test]
fn groupoid_verbs() {
    let dir = workdir();
    fs::write(dir.path().join("z2.json"), Z2).unwrap();
    let o = globular(&["fundamental", "z2.json", "--dim", "3"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("pi_1 = Z2"));
    let o = globular(&["gpd-pi", "z2.json", "--x", "0", "--n", "1"], dir.path());
    assert!(stdout(&o).contains("via the loop object = Z2"));
    let o = globular(&["gpd-pi", "z2.json", "--x", "0", "--n", "3"], dir.path());
    assert_eq!(stdout(&o), "pi_3 = trivial (order 1)\n");
    // Not a groupoid: the inverse of the generator is wrong.
    fs::write(dir.path().join("bad.json"), Z2.replace("\"inverse\": [0,1]", "\"inverse\": [0,0]")).unwrap();
    let o = globular(&["fundamental", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("inverse law"));
    fs::write(dir.path().join("cut.json"), &Z2[..40]).unwrap();
    let o = globular(&["fundamental", "cut.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"));
}

#[test]
fn weq_reports_all_four_conditions() {
    let dir = workdir();
    let name = stdlib_file(&dir, 3);
    fs::write(dir.path().join("z2.json"), Z2).unwrap();
    let files = [
        ("double.json", r#"{"source": {"kg1": "Z2"}, "target": {"kg1": "Z4"}, "maps": [[0], [0, 2]]}"#, false),
        ("square.json", r#"{"source": {"kg1": "Z3"}, "target": {"kg1": "Z3"}, "maps": [[0], [0, 2, 1]]}"#, true),
        (
            "onto.json",
            r#"{"source": {"groupoid": "z2.json"}, "target": {"groupoid": "z2.json"}, "functor": {"objects": [0], "arrows": [0, 1]}}"#,
            true,
        ),
    ];
    for (file, text, expected) in files {
        fs::write(dir.path().join(file), text).unwrap();
        let o = globular(&["--format", "json", "weq", &name, file], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["conditions"], serde_json::json!([expected, expected, expected, expected]), "{file}");
    }
    fs::write(dir.path().join("nohom.json"), r#"{"source": {"kg1": "Z2"}, "target": {"kg1": "Z3"}, "maps": [[0], [0, 1]]}"#).unwrap();
    assert_eq!(globular(&["weq", &name, "nohom.json"], dir.path()).status.code(), Some(1));
}

#[test]
fn division_on_a_crossed_module_file() {
    let dir = workdir();
    let name = stdlib_file(&dir, 3);
    fs::write(dir.path().join("inv.json"), r#"{"group": "Z2", "module": "Z3", "action": [[0, 1, 2], [0, 2, 1]]}"#).unwrap();
    let o = globular(&["divide", &name, "--xmod", "inv.json", "--n", "2", "--i", "0", "--gamma", "3", "--u", "0", "--v", "0"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("L∘K = id and K∘L = id"));
    let o = globular(&["divide", &name, "--xmod", "inv.json", "--n", "1", "--i", "0", "--gamma", "0", "--u", "0", "--v", "0"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

/// Valid scripts give the reference reading; invalid ones fail on the same line.
#[test]
fn the_parser_agrees_with_the_reference_grammar() {
    let mut valid = Vec::new();
    for n in 2..=5 {
        valid.push(stdlib_script(n));
        valid.push(print_tower(&stdlib(n).unwrap().tower));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut accepted, mut rejected) = (0, 0);
    for m in mutants(&stdlib_script(3), &mut rng, 3000).into_iter().chain(valid) {
        match (reference_parse(&m), parse_script(&m)) {
            (Ok(want), Ok(got)) => {
                assert_eq!(render(&got), want, "{m}");
                accepted += 1;
            }
            (Err(line), Err(e)) => {
                assert_eq!(e.line, line, "{m}\n{e}");
                rejected += 1;
            }
            (want, got) => panic!("disagreement on\n{m}\nreference {want:?}\nkernel {got:?}"),
        }
    }
    assert!(accepted > 50 && rejected > 1000, "{accepted} accepted, {rejected} rejected");
}
