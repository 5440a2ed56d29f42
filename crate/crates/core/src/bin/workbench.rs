//! Command-line front door: verification suites and one-off computations on
//! JSON inputs. Results go to stdout as JSON; failed checks exit with 1 and
//! errors with 2.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use workbench::diagram::{
    colim_set, embed_discrete, hom_change_check, hom_diagram, is_orbit, product_const, pullback_preservation_check,
    q1_check, q2_check, CatDiagram, RawCatDiagram, RawDiagramMap, RawSetDiagram, RawTower, SetDiagram,
};
use workbench::dwyer::{dwyer_pushout, find_dwyer_witness, pushout_oracle, DwyerWitness};
use workbench::equivariant::{
    corepresentation_check, fixed_points, orbit_diagram, semidirect, GroupAction, RawGroupAction, Semidirect, Subgroup,
};
use workbench::fincat::{
    acyclify, enumerate_posets, internal_hom, posetify, product, CatFunctor, FinCat, RawCategory, RawFunctor,
};
use workbench::harness::{self, budget_from_env, export, Corpus, Exportable, Format};
use workbench::simplicial::{categorify, ex, homology, nerve, subdivide, FinSSet};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path} is not valid JSON for this input: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Workbench(#[from] workbench::Error),
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command produced: its JSON output and whether a check held.
struct Outcome {
    output: String,
    holds: bool,
}

impl Outcome {
    fn value(v: Value) -> Self {
        Outcome { output: pretty(&v), holds: true }
    }

    fn check(holds: bool, mut v: Value) -> Self {
        v["holds"] = json!(holds);
        Outcome { output: pretty(&v), holds }
    }
}

#[derive(Parser)]
#[command(
    name = "workbench",
    version,
    about = "Finite categories, simplicial sets and orbit diagrams, checked by brute force"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a registered verification suite.
    Verify {
        suite: Option<String>,
        /// List the registered suites.
        #[arg(long)]
        list: bool,
        /// Run every suite at its default bound.
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the full report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run any operation by name, e.g. `compute nerve c.json`.
    Compute {
        op: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Finite categories.
    #[command(subcommand)]
    Cat(CatCmd),
    /// Dwyer maps and their pushouts.
    #[command(subcommand)]
    Dwyer(DwyerCmd),
    /// Simplicial sets.
    #[command(subcommand)]
    Sset(SsetCmd),
    /// Set- and Cat-valued diagrams.
    #[command(subcommand)]
    Diagram(DiagramCmd),
    /// Group actions on index categories.
    #[command(subcommand)]
    Equivariant(EquivariantCmd),
    /// Re-serialize an input as canonical JSON or Graphviz.
    Export {
        format: Format,
        #[arg(value_parser = ["category", "sset", "set-diagram", "cat-diagram", "action"])]
        kind: String,
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatCmd {
    /// Poset and acyclicity flags.
    Classify {
        input: PathBuf,
    },
    /// The reflection into posets with its quotient functor.
    Posetify {
        input: PathBuf,
    },
    /// The reflection into acyclic categories with its quotient functor.
    Acyclify {
        input: PathBuf,
    },
    Product {
        left: PathBuf,
        right: PathBuf,
    },
    /// The functor category from `source` to `target`.
    Hom {
        source: PathBuf,
        target: PathBuf,
    },
    /// All posets on `n` elements up to isomorphism.
    Posets {
        n: usize,
    },
}

#[derive(Subcommand)]
enum DwyerCmd {
    /// Whether `i: A → B` is a Dwyer map, with its witness.
    Check { a: PathBuf, b: PathBuf, i: PathBuf },
    /// The pushout of `F: A → C` along the Dwyer map `i: A → B`.
    Pushout {
        a: PathBuf,
        b: PathBuf,
        i: PathBuf,
        c: PathBuf,
        f: PathBuf,
        /// Also test the universal property against all categories of this size.
        #[arg(long)]
        oracle_bound: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SsetCmd {
    /// The nerve of a category.
    Nerve {
        input: PathBuf,
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Barycentric subdivision.
    Sd { input: PathBuf },
    Ex {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        trunc: usize,
    },
    /// The fundamental category.
    C { input: PathBuf },
    /// Integral homology.
    Homology {
        input: PathBuf,
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DiagramCmd {
    /// Colimit of a Set-valued diagram, as equivalence classes.
    Colim { input: PathBuf },
    /// Whether a Set-valued diagram is an orbit.
    Orbit { input: PathBuf },
    /// The category of equivariant families `O → X`.
    Hom { orbit: PathBuf, diagram: PathBuf },
    /// The diagram `O × K`, the source of attaching maps.
    Product { orbit: PathBuf, k: PathBuf },
    /// Whether `𝓗om(O, D) × K ≅ 𝓗om(O, D × K)`.
    HomChange { orbit: PathBuf, diagram: PathBuf, k: PathBuf },
    /// Attach the cell `O × i` along `f: O × K → X` and test `𝓗om(O′, −)` on it.
    Q1 { orbit: PathBuf, test_orbit: PathBuf, k: PathBuf, l: PathBuf, i: PathBuf, attaching_map: PathBuf },
    /// Whether `𝓗om(O, −)` commutes with the union of a tower.
    Q2 { orbit: PathBuf, tower: PathBuf },
    /// Whether `𝓗om(O, −)` preserves the pullback of `f` and `g`.
    Pullback { orbit: PathBuf, f: PathBuf, g: PathBuf },
}

#[derive(Clone, clap::Args)]
struct OrbitSpec {
    /// Object of the index category; defaults to the first.
    #[arg(long)]
    object: Option<String>,
    /// Comma-separated subgroup generators; defaults to the trivial subgroup.
    #[arg(long, value_delimiter = ',')]
    subgroup: Vec<String>,
}

#[derive(Subcommand)]
enum EquivariantCmd {
    /// The semidirect category `G ⋊ I`.
    Semidirect { action: PathBuf },
    /// The orbit diagram `O_{k,H}` over `G ⋊ I`.
    Orbit {
        action: PathBuf,
        #[command(flatten)]
        spec: OrbitSpec,
    },
    /// The fixed points `X(k)^H` of a diagram over `G ⋊ I`.
    Fixed {
        action: PathBuf,
        diagram: PathBuf,
        #[command(flatten)]
        spec: OrbitSpec,
    },
    /// Whether `𝓗om(O_{k,H}, X) ≅ X(k)^H` by evaluation.
    Corepresent {
        action: PathBuf,
        diagram: PathBuf,
        #[command(flatten)]
        spec: OrbitSpec,
    },
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn raw<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn category(path: &Path) -> Result<Arc<FinCat>> {
    Ok(Arc::new(read::<RawCategory>(path)?.validate()?))
}

fn functor(path: &Path, source: &Arc<FinCat>, target: &Arc<FinCat>) -> Result<CatFunctor> {
    Ok(read::<RawFunctor>(path)?.validate(source.clone(), target.clone())?)
}

fn sset(path: &Path) -> Result<FinSSet> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    Ok(FinSSet::from_json(&text)?)
}

fn set_diagram(path: &Path) -> Result<SetDiagram> {
    Ok(read::<RawSetDiagram>(path)?.validate()?)
}

fn cat_diagram(path: &Path) -> Result<CatDiagram> {
    Ok(read::<RawCatDiagram>(path)?.validate()?)
}

fn action(path: &Path) -> Result<GroupAction> {
    Ok(read::<RawGroupAction>(path)?.validate()?)
}

fn witness_json(w: &DwyerWitness) -> Value {
    let b = w.target();
    let a = w.source();
    let retraction: serde_json::Map<String, Value> = w
        .cosieve
        .iter()
        .map(|&o| (b.object_name(o).to_string(), json!(a.object_name(w.r(o).expect("defined on the cosieve")))))
        .collect();
    json!({
        "cosieve": w.cosieve.iter().map(|&o| b.object_name(o)).collect::<Vec<_>>(),
        "retraction": retraction,
    })
}

fn functor_json(f: &CatFunctor) -> Value {
    json!({"source": raw(&f.source().to_raw()), "target": raw(&f.target().to_raw()), "map": raw(&f.to_raw())})
}

fn run_cat(cmd: CatCmd) -> Result<Outcome> {
    Ok(Outcome::value(match cmd {
        CatCmd::Classify { input } => {
            let c = category(&input)?.classify();
            json!({"is_poset": c.is_poset, "is_acyclic": c.is_acyclic})
        }
        CatCmd::Posetify { input } => functor_json(&posetify(&category(&input)?).1),
        CatCmd::Acyclify { input } => functor_json(&acyclify(&category(&input)?).1),
        CatCmd::Product { left, right } => raw(&product(&category(&left)?, &category(&right)?).cat.to_raw()),
        CatCmd::Hom { source, target } => {
            raw(&internal_hom(&*category(&source)?, &*category(&target)?, budget_from_env() as u128)?.cat.to_raw())
        }
        CatCmd::Posets { n } => json!(enumerate_posets(n)?.iter().map(|p| raw(&p.to_raw())).collect::<Vec<_>>()),
    }))
}

fn run_dwyer(cmd: DwyerCmd) -> Result<Outcome> {
    match cmd {
        DwyerCmd::Check { a, b, i } => {
            let (a, b) = (category(&a)?, category(&b)?);
            let i = functor(&i, &a, &b)?;
            match find_dwyer_witness(&i) {
                Ok(Some(w)) => Ok(Outcome::check(true, json!({"witness": witness_json(&w)}))),
                Ok(None) => Ok(Outcome::check(false, json!({"reason": "no retraction onto the image exists"}))),
                Err(e @ (workbench::Error::NotSieve | workbench::Error::NotMonomorphism(_))) => {
                    Ok(Outcome::check(false, json!({"reason": e.to_string()})))
                }
                Err(e) => Err(e.into()),
            }
        }
        DwyerCmd::Pushout { a, b, i, c, f, oracle_bound } => {
            let (a, b, c) = (category(&a)?, category(&b)?, category(&c)?);
            let i = functor(&i, &a, &b)?;
            let f = functor(&f, &a, &c)?;
            let w = find_dwyer_witness(&i)?.ok_or_else(|| CliError::Usage("`i` is not a Dwyer map".into()))?;
            let p = dwyer_pushout(&w, &f)?;
            let mut out = json!({
                "pushout": raw(&p.cat.to_raw()),
                "from_b": raw(&p.from_b.to_raw()),
                "from_c": raw(&p.from_c.to_raw()),
            });
            let Some(bound) = oracle_bound else {
                return Ok(Outcome::value(out));
            };
            let r = pushout_oracle((&i, &f), (&p.cat, &p.from_b, &p.from_c), bound, budget_from_env() as u128)?;
            out["oracle"] = json!({
                "bound": bound,
                "test_categories": r.test_categories,
                "compatible_pairs": r.compatible_pairs,
                "failure": r.failure,
            });
            Ok(Outcome::check(r.passed, out))
        }
    }
}

fn run_sset(cmd: SsetCmd) -> Result<Outcome> {
    let budget = budget_from_env();
    Ok(Outcome::value(match cmd {
        SsetCmd::Nerve { input, trunc } => {
            let c = category(&input)?;
            let trunc = trunc.unwrap_or(c.object_count().saturating_sub(1).max(1));
            raw(&nerve(&c, trunc)?.to_raw())
        }
        SsetCmd::Sd { input } => raw(&subdivide(&sset(&input)?)?.to_raw()),
        SsetCmd::Ex { input, trunc } => raw(&ex(&sset(&input)?, trunc, budget)?.sset.to_raw()),
        SsetCmd::C { input } => raw(&categorify(&sset(&input)?, budget)?.cat.to_raw()),
        SsetCmd::Homology { input, max_dim } => {
            let x = sset(&input)?;
            let max_dim = max_dim.unwrap_or(x.dimension().unwrap_or(0));
            let groups = homology(&x, max_dim)?;
            json!(groups
                .iter()
                .enumerate()
                .map(|(k, g)| json!({"dim": k, "betti": g.betti, "torsion": g.torsion}))
                .collect::<Vec<_>>())
        }
    }))
}

fn run_diagram(cmd: DiagramCmd) -> Result<Outcome> {
    let budget = budget_from_env();
    match cmd {
        DiagramCmd::Colim { input } => {
            let d = set_diagram(&input)?;
            Ok(Outcome::value(json!(classes(&d))))
        }
        DiagramCmd::Orbit { input } => {
            let d = set_diagram(&input)?;
            Ok(Outcome::check(is_orbit(&d), json!({"classes": classes(&d)})))
        }
        DiagramCmd::Hom { orbit, diagram } => {
            let h = hom_diagram(&set_diagram(&orbit)?, &cat_diagram(&diagram)?, budget)?;
            Ok(Outcome::value(raw(&h.cat.to_raw())))
        }
        DiagramCmd::Product { orbit, k } => {
            let p = product_const(&embed_discrete(&set_diagram(&orbit)?), &category(&k)?);
            Ok(Outcome::value(raw(&p.diagram.to_raw())))
        }
        DiagramCmd::HomChange { orbit, diagram, k } => {
            let holds = hom_change_check(&set_diagram(&orbit)?, &cat_diagram(&diagram)?, &category(&k)?, budget)?;
            Ok(Outcome::check(holds, json!({})))
        }
        DiagramCmd::Q1 { orbit, test_orbit, k, l, i, attaching_map } => {
            let (k, l) = (category(&k)?, category(&l)?);
            let i = functor(&i, &k, &l)?;
            let w = find_dwyer_witness(&i)?.ok_or_else(|| CliError::Usage("`i` is not a Dwyer map".into()))?;
            let f = read::<RawDiagramMap>(&attaching_map)?.validate()?;
            let out = q1_check(&set_diagram(&orbit)?, &set_diagram(&test_orbit)?, &w, &f, budget)?;
            Ok(Outcome::check(out.holds, json!({"detail": out.detail})))
        }
        DiagramCmd::Q2 { orbit, tower } => {
            let t = read::<RawTower>(&tower)?.validate()?;
            let out = q2_check(&set_diagram(&orbit)?, &t, budget)?;
            Ok(Outcome::check(out.holds, json!({"detail": out.detail})))
        }
        DiagramCmd::Pullback { orbit, f, g } => {
            let f = read::<RawDiagramMap>(&f)?.validate()?;
            let g = read::<RawDiagramMap>(&g)?.validate()?;
            Ok(Outcome::check(pullback_preservation_check(&set_diagram(&orbit)?, &f, &g, budget)?, json!({})))
        }
    }
}

/// Colimit classes, each element written `object:element`.
fn classes(d: &SetDiagram) -> Vec<Vec<String>> {
    colim_set(d)
        .iter()
        .map(|class| class.iter().map(|&(i, x)| format!("{}:{}", d.index().object_name(i), d.value(i)[x])).collect())
        .collect()
}

fn orbit_spec(sd: &Semidirect, spec: &OrbitSpec) -> Result<(usize, Subgroup)> {
    let a = sd.action();
    let k = match &spec.object {
        None => 0,
        Some(name) => a.index().object_index(name).ok_or_else(|| workbench::Error::UnknownName(name.clone()))?,
    };
    if a.index().object_count() == 0 {
        return Err(CliError::Usage("the index category has no objects".into()));
    }
    let gens = spec
        .subgroup
        .iter()
        .map(|g| a.group().element_index(g).ok_or_else(|| workbench::Error::UnknownName(g.clone())))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((k, Subgroup::generated(a.group().clone(), &gens)?))
}

fn run_equivariant(cmd: EquivariantCmd) -> Result<Outcome> {
    match cmd {
        EquivariantCmd::Semidirect { action: a } => Ok(Outcome::value(raw(&semidirect(&action(&a)?)?.cat.to_raw()))),
        EquivariantCmd::Orbit { action: a, spec } => {
            let sd = semidirect(&action(&a)?)?;
            let (k, h) = orbit_spec(&sd, &spec)?;
            Ok(Outcome::value(raw(&orbit_diagram(&sd, k, &h)?.to_raw())))
        }
        EquivariantCmd::Fixed { action: a, diagram, spec } => {
            let sd = semidirect(&action(&a)?)?;
            let (k, h) = orbit_spec(&sd, &spec)?;
            let fixed = fixed_points(&sd, &cat_diagram(&diagram)?, k, &h)?;
            Ok(Outcome::value(functor_json(&fixed.inclusion)))
        }
        EquivariantCmd::Corepresent { action: a, diagram, spec } => {
            let sd = semidirect(&action(&a)?)?;
            let (k, h) = orbit_spec(&sd, &spec)?;
            let out = corepresentation_check(&sd, k, &h, &cat_diagram(&diagram)?, budget_from_env())?;
            Ok(Outcome::check(out.holds, json!({"detail": out.detail})))
        }
    }
}

fn run_export(format: Format, kind: &str, input: &Path) -> Result<Outcome> {
    let output = match kind {
        "category" => export(Exportable::Category(&*category(input)?), format)?,
        "sset" => export(Exportable::SSet(&sset(input)?), format)?,
        "set-diagram" => export(Exportable::SetDiagram(&set_diagram(input)?), format)?,
        "cat-diagram" => export(Exportable::CatDiagram(&cat_diagram(input)?), format)?,
        "action" => export(Exportable::Action(&action(input)?), format)?,
        other => return Err(CliError::Usage(format!("unknown kind `{other}`"))),
    };
    Ok(Outcome { output: output.trim_end().to_string(), holds: true })
}

fn run_verify(
    suite: Option<String>,
    list: bool,
    all: bool,
    bound: Option<usize>,
    seed: u64,
    json_path: Option<PathBuf>,
) -> Result<Outcome> {
    if list {
        let lines: Vec<String> = harness::suites()
            .iter()
            .map(|s| {
                format!(
                    "{:<26} {:<28} bound {} (max {}, {}){}",
                    s.name,
                    s.anchor,
                    s.default_bound,
                    s.max_bound,
                    s.bound_meaning,
                    if s.negative_control { " [negative control]" } else { "" }
                )
            })
            .collect();
        return Ok(Outcome { output: lines.join("\n"), holds: true });
    }
    let names: Vec<&str> = match (&suite, all) {
        (Some(s), _) => vec![s.as_str()],
        (None, true) => harness::suites().iter().map(|s| s.name).collect(),
        (None, false) => return Err(CliError::Usage("name a suite, or pass --list or --all".into())),
    };
    let budget = budget_from_env();
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    for name in names {
        let info = harness::suite(name)?;
        let corpus = Corpus { budget, ..Corpus::new(seed, bound.unwrap_or(info.default_bound)) };
        let report = harness::run_suite(name, &corpus)?;
        lines.push(report.summary());
        reports.push(report);
    }
    if let Some(path) = json_path {
        let text = match reports.as_slice() {
            [one] => one.to_json(),
            many => serde_json::to_string_pretty(many).expect("reports serialize"),
        };
        fs::write(&path, text + "\n").map_err(|source| CliError::Io { path, source })?;
    }
    Ok(Outcome { output: lines.join("\n"), holds: reports.iter().all(|r| r.passed) })
}

/// Where each `compute` operation lives: `(command group, subcommand)`.
const OPERATIONS: &[(&str, &str, &str)] = &[
    ("classify", "cat", "classify"),
    ("posetify", "cat", "posetify"),
    ("acyclify", "cat", "acyclify"),
    ("product", "cat", "product"),
    ("internal-hom", "cat", "hom"),
    ("posets", "cat", "posets"),
    ("dwyer-check", "dwyer", "check"),
    ("dwyer-pushout", "dwyer", "pushout"),
    ("nerve", "sset", "nerve"),
    ("sd", "sset", "sd"),
    ("ex", "sset", "ex"),
    ("c", "sset", "c"),
    ("homology", "sset", "homology"),
    ("colim", "diagram", "colim"),
    ("orbit", "diagram", "orbit"),
    ("hom", "diagram", "hom"),
    ("orbit-product", "diagram", "product"),
    ("hom-change", "diagram", "hom-change"),
    ("q1", "diagram", "q1"),
    ("q2", "diagram", "q2"),
    ("pullback", "diagram", "pullback"),
    ("semidirect", "equivariant", "semidirect"),
    ("orbit-diagram", "equivariant", "orbit"),
    ("fixed", "equivariant", "fixed"),
    ("corepresent", "equivariant", "corepresent"),
];

fn run_compute(op: &str, args: Vec<String>) -> Result<Outcome> {
    let Some(&(_, group, sub)) = OPERATIONS.iter().find(|(name, ..)| *name == op) else {
        let known: Vec<&str> = OPERATIONS.iter().map(|(n, ..)| *n).collect();
        return Err(CliError::Usage(format!("unknown operation `{op}`; known: {}", known.join(", "))));
    };
    let argv = ["workbench", group, sub].into_iter().map(String::from).chain(args);
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    run(cli.command)
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Verify { suite, list, all, bound, seed, json } => run_verify(suite, list, all, bound, seed, json),
        Command::Compute { op, args } => run_compute(&op, args),
        Command::Cat(c) => run_cat(c),
        Command::Dwyer(c) => run_dwyer(c),
        Command::Sset(c) => run_sset(c),
        Command::Diagram(c) => run_diagram(c),
        Command::Equivariant(c) => run_equivariant(c),
        Command::Export { format, kind, input } => run_export(format, &kind, &input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            // a reader that closed early (`| head`) is not an error
            if let Err(e) = writeln!(std::io::stdout().lock(), "{}", out.output) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
