//! End-to-end runs of the `workbench` binary on files built with the library.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;
use tempfile::TempDir;

use workbench::diagram::{embed_discrete, product_const, CatDiagram, DiagramMap, SetDiagram, Tower};
use workbench::dwyer::full_inclusion;
use workbench::equivariant::{diagram_from_group_action, semidirect, FinGroup, GroupAction};
use workbench::fincat::{CatFunctor, FinCat};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench")).args(args).output().expect("the binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: String) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_string_lossy().into_owned()
    }
}

fn pretty<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).unwrap()
}

#[test]
fn lists_every_suite() {
    let out = run(&["verify", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), workbench::harness::suites().len());
    assert!(text.contains("hom-change-no-orbit") && text.contains("[negative control]"));
}

#[test]
fn verify_writes_stable_reports() {
    let files = Files::new();
    let (a, b) = (files.path("a.json"), files.path("b.json"));
    for path in [&a, &b] {
        let out = run(&["verify", "csd2-posets", "--seed", "5", "--json", path]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let report: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["anchor"], "csd2-poset-valued");
}

#[test]
fn negative_controls_exit_zero() {
    let out = run(&["verify", "hom-change-no-orbit"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "csd2-posets", "--bound", "99"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "no-such-op"]).status.code(), Some(2));
    assert_eq!(run(&["cat", "classify", "/nonexistent/c.json"]).status.code(), Some(2));
}

#[test]
fn classifies_categories() {
    let files = Files::new();
    let z2 = files.put("z2.json", FinCat::cyclic_group(2).to_json());
    let out = stdout_json(&run(&["cat", "classify", &z2]));
    assert_eq!(out, serde_json::json!({"is_poset": false, "is_acyclic": false}));
    let posets = stdout_json(&run(&["cat", "posets", "3"]));
    assert_eq!(posets.as_array().unwrap().len(), 5);
}

#[test]
fn hand_written_categories_may_omit_identity_composites() {
    let files = Files::new();
    let text = r#"{"objects": ["a", "b"],
                   "morphisms": [{"name": "1a", "src": "a", "tgt": "a"},
                                 {"name": "1b", "src": "b", "tgt": "b"},
                                 {"name": "f", "src": "a", "tgt": "b"}],
                   "identities": {"a": "1a", "b": "1b"},
                   "compose": []}"#;
    let path = files.put("arrow.json", text.into());
    let out = stdout_json(&run(&["cat", "classify", &path]));
    assert_eq!(out["is_poset"], true);
}

fn arrow_files(files: &Files, at: usize) -> (String, String, String) {
    let b = Arc::new(FinCat::chain(1));
    let i = full_inclusion(&b, &[at]);
    (
        files.put("a.json", i.source().to_json()),
        files.put("b.json", b.to_json()),
        files.put("i.json", pretty(&i.to_raw())),
    )
}

#[test]
fn dwyer_check_accepts_sieves_and_rejects_cosieves() {
    let files = Files::new();
    let (a, b, i) = arrow_files(&files, 0);
    let out = run(&["dwyer", "check", &a, &b, &i]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["witness"]["cosieve"], serde_json::json!(["0", "1"]));

    let files = Files::new();
    let (a, b, i) = arrow_files(&files, 1);
    let out = run(&["dwyer", "check", &a, &b, &i]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["holds"], false);
}

#[test]
fn dwyer_pushout_passes_its_oracle() {
    let files = Files::new();
    let (a, b, i) = arrow_files(&files, 0);
    let c = Arc::new(FinCat::cyclic_group(2));
    let source = full_inclusion(&Arc::new(FinCat::chain(1)), &[0]).source().clone();
    let f = CatFunctor::new(source, c.clone(), vec![0], vec![0]).unwrap();
    let c_path = files.put("c.json", c.to_json());
    let f_path = files.put("f.json", pretty(&f.to_raw()));
    let out = run(&["dwyer", "pushout", &a, &b, &i, &c_path, &f_path, "--oracle-bound", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["pushout"]["objects"].as_array().unwrap().len(), 2);
    assert_eq!(v["oracle"]["failure"], Value::Null);
}

#[test]
fn nerve_then_homology_and_compute_alias() {
    let files = Files::new();
    let arrow = files.put("arrow.json", FinCat::chain(1).to_json());
    let direct = run(&["sset", "nerve", &arrow]);
    let alias = run(&["compute", "nerve", &arrow]);
    assert!(direct.status.success());
    assert_eq!(direct.stdout, alias.stdout);
    let nerve = files.put("n.json", String::from_utf8(direct.stdout).unwrap());
    let h = stdout_json(&run(&["sset", "homology", &nerve]));
    assert_eq!(h[0]["betti"], 1);
    assert_eq!(h[1]["betti"], 0);

    let sd = files.put("sd.json", String::from_utf8(run(&["sset", "sd", &nerve]).stdout).unwrap());
    let c = stdout_json(&run(&["sset", "c", &sd]));
    assert_eq!(c["objects"].as_array().unwrap().len(), 3);
}

#[test]
fn exports_graphviz() {
    let files = Files::new();
    let arrow = files.put("arrow.json", FinCat::chain(1).to_json());
    let out = run(&["export", "dot", "category", &arrow]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("->").count(), 1);
    let json = run(&["export", "json", "category", &arrow]);
    assert_eq!(String::from_utf8(json.stdout).unwrap().trim(), FinCat::chain(1).to_json());
}

#[test]
fn orbits_and_colimits() {
    let files = Files::new();
    let index = Arc::new(FinCat::chain(1));
    let point = files.put("point.json", SetDiagram::point(index.clone()).to_json());
    let two = files.put("two.json", SetDiagram::constant(index, &["p", "q"]).to_json());
    assert!(run(&["diagram", "orbit", &point]).status.success());
    let out = run(&["diagram", "orbit", &two]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["classes"].as_array().unwrap().len(), 2);
    let colim = stdout_json(&run(&["diagram", "colim", &two]));
    assert_eq!(colim[0], serde_json::json!(["0:p", "1:p"]));
}

#[test]
fn towers_and_pullbacks_of_identities() {
    let files = Files::new();
    let index = Arc::new(FinCat::cyclic_group(2));
    let orbit = files.put("o.json", SetDiagram::constant(index.clone(), &["*"]).to_json());
    let x = Arc::new(CatDiagram::constant(index, Arc::new(FinCat::chain(1))));
    let id = DiagramMap::identity(x.clone());
    let tower = Tower::new(vec![x.clone(), x.clone(), x], vec![id.clone(), id.clone()]).unwrap();
    let t = files.put("t.json", pretty(&tower.to_raw()));
    let f = files.put("f.json", pretty(&id.to_raw()));
    assert!(run(&["diagram", "q2", &orbit, &t]).status.success());
    assert!(run(&["diagram", "pullback", &orbit, &f, &f]).status.success());
}

#[test]
fn attaching_a_vertex() {
    let files = Files::new();
    let index = Arc::new(FinCat::terminal());
    let o = SetDiagram::point(index.clone());
    let k = Arc::new(FinCat::empty());
    let l = Arc::new(FinCat::terminal());
    let i = CatFunctor::new(k.clone(), l.clone(), vec![], vec![]).unwrap();
    let x = Arc::new(CatDiagram::constant(index, Arc::new(FinCat::chain(1))));
    let ok = product_const(&embed_discrete(&o), &k);
    let empty = ok.diagram.value(0).clone();
    let f = DiagramMap::new(
        ok.diagram.clone(),
        x.clone(),
        vec![CatFunctor::new(empty, x.value(0).clone(), vec![], vec![]).unwrap()],
    )
    .unwrap();
    let args = [
        files.put("o.json", o.to_json()),
        files.put("o2.json", o.to_json()),
        files.put("k.json", k.to_json()),
        files.put("l.json", l.to_json()),
        files.put("i.json", pretty(&i.to_raw())),
        files.put("f.json", pretty(&f.to_raw())),
    ];
    let mut argv = vec!["diagram", "q1"];
    argv.extend(args.iter().map(String::as_str));
    let out = run(&argv);
    assert!(out.status.success(), "{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));

    let product = run(&["diagram", "product", &args[0], &args[2]]);
    assert!(product.status.success());
}

fn swap_files(files: &Files) -> (String, String) {
    let g = Arc::new(FinGroup::cyclic(2));
    let a = GroupAction::trivial(g, Arc::new(FinCat::terminal()));
    let sd = semidirect(&a).unwrap();
    let c = Arc::new(FinCat::discrete(["p", "q"]));
    let swap = CatFunctor::new(c.clone(), c.clone(), vec![1, 0], vec![1, 0]).unwrap();
    let x = diagram_from_group_action(&sd, c.clone(), &[CatFunctor::identity(c), swap]).unwrap();
    (files.put("action.json", a.to_json()), files.put("x.json", x.to_json()))
}

#[test]
fn corepresentation_from_the_command_line() {
    let files = Files::new();
    let (action, x) = swap_files(&files);
    let sd = stdout_json(&run(&["equivariant", "semidirect", &action]));
    assert_eq!(sd["morphisms"].as_array().unwrap().len(), 2);

    let free = run(&["equivariant", "corepresent", &action, &x]);
    assert!(free.status.success(), "{}", String::from_utf8_lossy(&free.stdout));
    let fixed = stdout_json(&run(&["equivariant", "fixed", &action, &x, "--subgroup", "g1"]));
    assert_eq!(fixed["source"]["objects"].as_array().unwrap().len(), 0);
    assert!(run(&["equivariant", "corepresent", &action, &x, "--subgroup", "g1"]).status.success());

    let orbit = stdout_json(&run(&["equivariant", "orbit", &action, "--object", "*"]));
    assert_eq!(orbit["values"].as_object().unwrap().values().next().unwrap().as_array().unwrap().len(), 2);
    assert_eq!(run(&["equivariant", "orbit", &action, "--subgroup", "nope"]).status.code(), Some(2));
}
