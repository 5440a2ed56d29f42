//! The registered suites and their instance generators.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use super::corpus::{
    cat_diagrams, cells, equivariant_values, group_actions, non_orbits, orbits, poset_pool, sample, shipped_indices,
    simplicial_corpus, value_pool, Cell, Corpus,
};
use super::{Job, SuiteInfo, Verdict};
use crate::diagram::{
    attaching_map, embed_discrete, hom_change_check, hom_change_holds, hom_diagram, is_orbit, product_const,
    pullback_preservation_check, pushout_diagram, q1_check, q2_check, restrict_subcategory, CatDiagram, DiagramMap,
    SetDiagram, Tower,
};
use crate::dwyer::{dwyer_pushout, find_dwyer_witness, full_inclusion, pushout_oracle, test_categories, DwyerWitness};
use crate::equivariant::{corepresentation_check, orbit_diagram, semidirect, Subgroup};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_posets, functors, CatClass, CatFunctor, FinCat, Morphism};
use crate::simplicial::{
    boundary, categorify, categorify_map, counit, enumerate_maps, ex, generating_sets, homology, horn, nerve,
    nerve_functor, nerve_indexed, standard, subdivide, transpose_from_sd, transpose_to_ex, unit, FinSSet, SSetMap,
    Subdivision,
};

const fn info(
    name: &'static str,
    anchor: &'static str,
    statement: &'static str,
    negative_control: bool,
    (default_bound, max_bound): (usize, usize),
    bound_meaning: &'static str,
) -> SuiteInfo {
    SuiteInfo { name, anchor, statement, negative_control, default_bound, max_bound, bound_meaning }
}

pub(super) const REGISTRY: &[SuiteInfo] = &[
    info(
        "dwyer-pushout-lemma",
        "dwyer-pushout-description",
        "The explicit pushout of a functor along a Dwyer map is a pushout in Cat.",
        false,
        (4, 4),
        "objects of the poset B",
    ),
    info(
        "dwyer-pushout-spurious",
        "dwyer-pushout-description",
        "Adding an isolated object to the explicit pushout breaks the universal property.",
        true,
        (2, 3),
        "objects of the poset B",
    ),
    info(
        "generating-cells",
        "generating-cells-are-dwyer",
        "Every generating cofibration and trivial cofibration of Cat is a Dwyer map between posets.",
        false,
        (2, 2),
        "simplex dimension",
    ),
    info(
        "csd2-posets",
        "csd2-poset-valued",
        "c Sd² of a simplex, its boundary or a horn is a poset.",
        false,
        (2, 2),
        "simplex dimension",
    ),
    info(
        "hom-change",
        "hom-change",
        "For an orbit O and a poset K, 𝓗om(O, D) × K → 𝓗om(O, D × K) is an isomorphism.",
        false,
        (2, 3),
        "elements per value of the orbits",
    ),
    info(
        "hom-change-no-orbit",
        "hom-change",
        "Without the orbit hypothesis the hom-change comparison can fail.",
        true,
        (2, 3),
        "elements per value of the diagrams",
    ),
    info(
        "orbit-cell-pushouts",
        "orbit-cell-pushouts",
        "𝓗om(O′, −) sends the attachment of a cell O × i to a pushout along a Dwyer map between posets, with \
         objects splitting as the old objects plus 𝓗om(O′, O) × (L ∖ K).",
        false,
        (2, 2),
        "elements per value of the orbits",
    ),
    info(
        "orbit-towers",
        "orbit-towers",
        "𝓗om(O, −) commutes with the union of a tower of cell attachments.",
        false,
        (4, 4),
        "stages per tower",
    ),
    info(
        "adjunction-laws",
        "adjunction-laws",
        "The triangle identities of c ⊣ N and the transposition bijection of Sd ⊣ Ex hold.",
        false,
        (2, 2),
        "dimension of the source of the transposed maps",
    ),
    info(
        "corepresentation",
        "fixed-point-corepresentation",
        "𝓗om(O_{k,H}, X) ≅ X(k)^H by evaluation at the class of the identity, and O_{k,H} is an orbit.",
        false,
        (3, 3),
        "group order",
    ),
    info(
        "pullback-preservation",
        "hom-preserves-pullbacks",
        "𝓗om(O, −) preserves pullbacks of diagrams.",
        false,
        (2, 2),
        "elements per value of the orbits",
    ),
    info(
        "subcategory-preservation",
        "poset-acyclic-restriction",
        "Cell attachments and towers of poset-valued (acyclic-valued) diagrams stay poset-valued (acyclic-valued).",
        false,
        (3, 4),
        "stages per tower",
    ),
    info(
        "homology",
        "homology-invariance",
        "Sd preserves homology, and the nerve of c Sd² Δ[n] is acyclic.",
        false,
        (2, 2),
        "simplex dimension",
    ),
];

/// The corpus description and the instances of a suite.
pub(super) fn jobs(info: &SuiteInfo, c: &Corpus) -> Result<(String, Vec<Job>)> {
    match info.name {
        "dwyer-pushout-lemma" => dwyer_pushouts(c, false),
        "dwyer-pushout-spurious" => dwyer_pushouts(c, true),
        "generating-cells" => generating(c),
        "csd2-posets" => csd2_posets(c),
        "hom-change" => hom_change(c, true),
        "hom-change-no-orbit" => hom_change(c, false),
        "orbit-cell-pushouts" => cell_pushouts(c, &value_pool(), None),
        "orbit-towers" => towers(c, &value_pool(), None),
        "adjunction-laws" => adjunctions(c),
        "corepresentation" => corepresentation(c),
        "pullback-preservation" => pullbacks(c),
        "subcategory-preservation" => restriction(c),
        "homology" => homology_suite(c),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

const ATTACHMENTS_PER_INDEX: usize = 48;
const TOWERS_PER_LENGTH: usize = 8;

fn raw<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn cat_json(c: &FinCat) -> Value {
    raw(&c.to_raw())
}

fn functor_json(f: &CatFunctor) -> Value {
    json!({"source": cat_json(f.source()), "target": cat_json(f.target()), "map": raw(&f.to_raw())})
}

fn map_json(f: &DiagramMap) -> Value {
    raw(&f.to_raw())
}

fn sset_json(x: &FinSSet) -> Value {
    raw(&x.to_raw())
}

fn functor_from(source: &Arc<FinCat>, target: &Arc<FinCat>, d: crate::fincat::FunctorData) -> CatFunctor {
    CatFunctor::new(source.clone(), target.clone(), d.obj_map, d.mor_map).expect("enumerated functors are valid")
}

/// Automorphisms of `c`, by morphism map.
fn automorphisms(c: &Arc<FinCat>, budget: u128) -> Result<Vec<Vec<usize>>> {
    Ok(functors(c, c, budget)?
        .into_iter()
        .map(|d| functor_from(c, c, d))
        .filter(CatFunctor::is_isomorphism)
        .map(|f| f.mor_map().to_vec())
        .collect())
}

/// `d ⊔ {extra}` with its inclusion.
fn with_isolated_object(d: &FinCat) -> (Arc<FinCat>, Vec<usize>) {
    let n_obj = d.object_count();
    let n = d.morphism_count();
    let mut objects = d.objects().to_vec();
    let mut taken: HashSet<String> = objects.iter().cloned().collect();
    let extra = crate::fincat::fresh_name("extra".into(), &mut taken);
    objects.push(extra.clone());
    let mut morphisms = d.morphisms().to_vec();
    let mut names: HashSet<String> = morphisms.iter().map(|m| m.name.clone()).collect();
    morphisms.push(Morphism {
        name: crate::fincat::fresh_name(format!("id:{extra}"), &mut names),
        src: n_obj,
        tgt: n_obj,
    });
    let mut identities = d.identities().to_vec();
    identities.push(n);
    let cat = FinCat::from_fn(objects, morphisms, identities, |g, f| match (g == n, f == n) {
        (true, true) => Some(n),
        (false, false) => d.compose(g, f),
        _ => None,
    })
    .expect("a coproduct with the terminal category");
    (Arc::new(cat), (0..n).collect())
}

/// Down-sets of `b`, one per orbit of its automorphism group.
fn canonical_sieves(b: &Arc<FinCat>, budget: u128) -> Result<Vec<Vec<usize>>> {
    let n = b.object_count();
    let autos: Vec<Vec<usize>> = functors(b, b, budget)?
        .into_iter()
        .map(|d| functor_from(b, b, d))
        .filter(CatFunctor::is_isomorphism)
        .map(|f| f.obj_map().to_vec())
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let inside = |o: usize| mask >> o & 1 == 1;
        let down = (0..n).all(|a| !inside(a) || (0..n).all(|x| !b.le(x, a) || inside(x)));
        let image = |s: &Vec<usize>| (0..n).filter(|&o| inside(o)).fold(0u32, |m, o| m | 1 << s[o]);
        if down && autos.iter().all(|s| image(s) >= mask) {
            out.push((0..n).filter(|&o| inside(o)).collect());
        }
    }
    Ok(out)
}

fn dwyer_pushouts(c: &Corpus, spurious: bool) -> Result<(String, Vec<Job>)> {
    let budget = c.budget as u128;
    let max_c_objects = if spurious { 2 } else { 3 };
    let family: Vec<Arc<FinCat>> = test_categories(3)?
        .iter()
        .filter(|t| t.object_count() <= max_c_objects)
        .filter(|t| t.non_identities().count() <= 2 || t.is_poset())
        .cloned()
        .collect();
    let c_autos: Vec<Vec<Vec<usize>>> = family.iter().map(|t| automorphisms(t, budget)).collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for n in 1..=c.bound {
        for (p, b) in enumerate_posets(n)?.into_iter().enumerate() {
            let b = Arc::new(b);
            for keep in canonical_sieves(&b, budget)? {
                let Some(w) = find_dwyer_witness(&full_inclusion(&b, &keep))? else {
                    continue;
                };
                let a = w.source().clone();
                for (t, (cat, autos)) in family.iter().zip(&c_autos).enumerate() {
                    let mut seen = HashSet::new();
                    for d in functors(&a, cat, budget)? {
                        let key = autos
                            .iter()
                            .map(|s| d.mor_map.iter().map(|&m| s[m]).collect::<Vec<_>>())
                            .min()
                            .expect("identity");
                        if !seen.insert(key) {
                            continue;
                        }
                        let f = functor_from(&a, cat, d);
                        let label = format!("B=poset{n}.{p} A={keep:?} C=cat{t}");
                        jobs.push(dwyer_job(jobs.len(), label, w.clone(), f, spurious));
                    }
                }
            }
        }
    }
    let what = if spurious { "explicit pushout plus an isolated object" } else { "explicit pushout" };
    let desc = format!(
        "{what}; Dwyer sieves into posets with at most {} objects up to automorphism; functors into categories with at \
         most {max_c_objects} objects and at most 3 non-identity morphisms, either posets or with at most 2 \
         non-identity morphisms, up to automorphism of the target; oracle bound 3",
        c.bound
    );
    Ok((desc, jobs))
}

fn dwyer_job(n: usize, label: String, w: DwyerWitness, f: CatFunctor, spurious: bool) -> Job {
    let (w2, f2) = (w.clone(), f.clone());
    Job::new(
        n,
        label,
        move || {
            let p = dwyer_pushout(&w, &f)?;
            let (d, j_b, j_c) = if spurious {
                let (d, incl) = with_isolated_object(&p.cat);
                let lift = |g: &CatFunctor| {
                    CatFunctor::from_morphisms(
                        g.source().clone(),
                        d.clone(),
                        g.mor_map().iter().map(|&m| incl[m]).collect(),
                    )
                };
                (d.clone(), lift(&p.from_b)?, lift(&p.from_c)?)
            } else {
                (p.cat.clone(), p.from_b.clone(), p.from_c.clone())
            };
            let r = pushout_oracle((&w.inclusion, &f), (&d, &j_b, &j_c), 3, 1 << 30)?;
            Ok(match r.failure {
                None => Verdict::Holds,
                Some(why) => Verdict::Fails(why),
            })
        },
        move || json!({"inclusion": functor_json(&w2.inclusion), "functor": functor_json(&f2)}),
    )
}

fn generating(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let g = generating_sets(c.bound, c.budget)?;
    let mut jobs = Vec::new();
    for (f, label) in g.i_cat.into_iter().zip(g.i_labels).chain(g.j_cat.into_iter().zip(g.j_labels)) {
        let f2 = f.clone();
        jobs.push(Job::new(
            jobs.len(),
            format!("cSd²({label})"),
            move || {
                if !f.source().is_poset() || !f.target().is_poset() {
                    return Ok(Verdict::Fails("source or target is not a poset".into()));
                }
                Ok(match find_dwyer_witness(&f)? {
                    Some(w) => Verdict::from_bool(w.verify().is_ok(), "witness does not verify"),
                    None => Verdict::Fails("no Dwyer witness".into()),
                })
            },
            move || functor_json(&f2),
        ));
    }
    Ok((format!("images under c Sd² of ∂Δ[n] → Δ[n] and Λ^k[n] → Δ[n] for n ≤ {}", c.bound), jobs))
}

/// Simplices, boundaries and horns of dimension at most `max_n`.
fn cells_of_simplices(max_n: usize) -> Vec<(String, FinSSet)> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.push((format!("Δ[{n}]"), standard(n)));
        out.push((format!("∂Δ[{n}]"), boundary(n)));
        for k in 0..=n {
            if n > 0 {
                out.push((format!("Λ^{k}[{n}]"), horn(n, k)));
            }
        }
    }
    out
}

fn csd2_posets(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let jobs = cells_of_simplices(c.bound)
        .into_iter()
        .enumerate()
        .map(|(n, (label, x))| {
            let x = Arc::new(x);
            let x2 = x.clone();
            Job::new(
                n,
                label,
                move || {
                    let sd2 = subdivide(&subdivide(&x)?)?;
                    Ok(Verdict::from_bool(categorify(&sd2, budget)?.cat.is_poset(), "c Sd² is not a poset"))
                },
                move || sset_json(&x2),
            )
        })
        .collect();
    Ok((format!("Δ[n], ∂Δ[n] and Λ^k[n] for n ≤ {}", c.bound), jobs))
}

/// Instances whose hom categories could exceed this many morphisms are left
/// out: their dense composition tables would not fit in memory.
const MAX_HOM_MORPHISMS: u128 = 1 << 12;

/// `Π_i (|mor D(i)| · |mor K|)^|O(i)|`, an upper bound on the morphisms of
/// `𝓗om(O, D × K)` and of `𝓗om(O, D) × K`.
fn hom_size_bound(o: &SetDiagram, d: &CatDiagram, k: &FinCat) -> u128 {
    (0..o.index().object_count()).fold(1u128, |acc, i| {
        let per_slot = (d.value(i).morphism_count() * k.morphism_count()) as u128;
        acc.saturating_mul(per_slot.saturating_pow(o.value(i).len() as u32))
    })
}

fn hom_change(c: &Corpus, with_orbits: bool) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let stream = if with_orbits { "hom-change" } else { "hom-change-no-orbit" };
    let mut rng = c.rng(stream);
    let ks: Vec<Arc<FinCat>> = (1..=3).flat_map(|n| enumerate_posets(n).expect("small posets")).map(Arc::new).collect();
    let mut jobs = Vec::new();
    for (name, index) in shipped_indices() {
        let os = if with_orbits { orbits(&index, c.bound, budget)? } else { non_orbits(&index, c.bound, budget)? };
        let ds = sample(cat_diagrams(&index, &value_pool(), 2, &mut rng, budget)?, 6, &mut rng);
        let mut triples = Vec::new();
        for (a, o) in os.iter().enumerate() {
            for (b, d) in ds.iter().enumerate() {
                for (e, k) in ks.iter().enumerate().filter(|(_, k)| hom_size_bound(o, d, k) <= MAX_HOM_MORPHISMS) {
                    triples.push((a, b, e, o.clone(), d.clone(), k.clone()));
                }
            }
        }
        for (a, b, e, o, d, k) in sample(triples, 40, &mut rng) {
            let (o2, d2, k2) = (o.clone(), d.clone(), k.clone());
            jobs.push(Job::new(
                jobs.len(),
                format!("{name} O{a} D{b} K{e}"),
                move || {
                    let holds = if with_orbits {
                        hom_change_check(&o, &d, &k, budget)?
                    } else {
                        hom_change_holds(&o, &d, &k, budget)?
                    };
                    Ok(Verdict::from_bool(holds, "comparison is not an isomorphism"))
                },
                move || json!({"orbit": raw(&o2.to_raw()), "diagram": raw(&d2.to_raw()), "poset": cat_json(&k2)}),
            ));
        }
    }
    let what = if with_orbits { "orbits" } else { "diagrams whose colimit is not a point" };
    Ok((
        format!(
            "{what} with values of size ≤ {} over the five shipped indices, sampled Cat-valued diagrams, posets with ≤ 3 \
             objects; 40 triples per index with hom categories of at most {MAX_HOM_MORPHISMS} morphisms",
            c.bound
        ),
        jobs,
    ))
}

/// A cell attachment: orbit, cell and attaching map, with the orbit for the check.
#[derive(Clone)]
struct Attachment {
    o: SetDiagram,
    cell: Cell,
    f: DiagramMap,
}

/// A random attaching map `O × K → X`, or `None` when there is none.
fn random_attachment(
    o: &SetDiagram,
    cell: &Cell,
    x: &Arc<CatDiagram>,
    rng: &mut impl Rng,
    budget: usize,
) -> Result<Option<Attachment>> {
    let k = cell.witness.source().clone();
    let h = hom_diagram(o, x, budget)?;
    let fs = functors(&k, &h.cat, budget as u128)?;
    if fs.is_empty() {
        return Ok(None);
    }
    let pick = fs[rng.random_range(0..fs.len())].clone();
    let f = functor_from(&k, &h.cat, pick);
    let ok = product_const(&embed_discrete(o), &k);
    let f = attaching_map(&h, x, &f, &ok)?;
    Ok(Some(Attachment { o: o.clone(), cell: cell.clone(), f }))
}

fn attachment_json(a: &Attachment, o2: &SetDiagram) -> Value {
    json!({
        "orbit": raw(&a.o.to_raw()),
        "cell": a.cell.label,
        "inclusion": functor_json(&a.cell.witness.inclusion),
        "attaching_map": map_json(&a.f),
        "test_orbit": raw(&o2.to_raw()),
    })
}

/// Cell-attachment instances: `per_index` per shipped index with values in `pool`.
fn attachments(
    c: &Corpus,
    pool: &[Arc<FinCat>],
    stream: &str,
    per_index: usize,
) -> Result<Vec<(String, Attachment, SetDiagram)>> {
    let budget = c.budget;
    let mut rng = c.rng(stream);
    let cs = cells(1, 2, budget)?;
    let mut out = Vec::new();
    for (name, index) in shipped_indices() {
        let os = orbits(&index, c.bound.min(2), budget)?;
        let xs: Vec<Arc<CatDiagram>> =
            sample(cat_diagrams(&index, pool, 2, &mut rng, budget)?, 8, &mut rng).into_iter().map(Arc::new).collect();
        let mut made = 0;
        let mut tries = 0;
        while made < per_index && tries < 20 * per_index {
            tries += 1;
            let (a, b, e, t) = (
                rng.random_range(0..os.len()),
                rng.random_range(0..xs.len()),
                rng.random_range(0..cs.len()),
                rng.random_range(0..os.len()),
            );
            if let Some(att) = random_attachment(&os[a], &cs[e], &xs[b], &mut rng, budget)? {
                out.push((format!("{name} O{a} X{b} {} O′{t}", cs[e].label), att, os[t].clone()));
                made += 1;
            }
        }
    }
    Ok(out)
}

fn cell_pushouts(c: &Corpus, pool: &[Arc<FinCat>], class: Option<CatClass>) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let stream = format!("cells-{}", class_label(class));
    let jobs = attachments(c, pool, &stream, ATTACHMENTS_PER_INDEX)?
        .into_iter()
        .enumerate()
        .map(|(n, (label, att, o2))| {
            let (att2, o22) = (att.clone(), o2.clone());
            Job::new(
                n,
                label,
                move || {
                    let out = q1_check(&att.o, &o2, &att.cell.witness, &att.f, budget)?;
                    Ok(match (out.holds, class) {
                        (false, _) => Verdict::Fails(out.detail.unwrap_or_default()),
                        (true, Some(k)) => Verdict::from_bool(restrict_subcategory(&out, k), "leaves the subcategory"),
                        (true, None) => Verdict::Holds,
                    })
                },
                move || attachment_json(&att2, &o22),
            )
        })
        .collect();
    Ok((
        format!(
            "{ATTACHMENTS_PER_INDEX} random cell attachments per shipped index: orbits with values of size ≤ {}, generating cells in \
             dimension ≤ 1 and Dwyer sieves into posets with ≤ 2 objects, random attaching maps",
            c.bound.min(2)
        ),
        jobs,
    ))
}

/// A tower of `stages` stages grown by random cell attachments from seed `seed`.
fn build_tower(
    index: &Arc<FinCat>,
    pool: &[Arc<FinCat>],
    stages: usize,
    seed: u64,
    budget: usize,
) -> Result<Option<(Tower, SetDiagram)>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let os = orbits(index, 2, budget)?;
    // small cells keep towers of four stages tractable
    let cs: Vec<Cell> = cells(1, 2, budget)?.into_iter().filter(|c| c.witness.target().object_count() <= 2).collect();
    let xs = cat_diagrams(index, pool, 1, &mut rng, budget)?;
    let mut stage = Arc::new(xs[rng.random_range(0..xs.len())].clone());
    let mut all = vec![stage.clone()];
    let mut links = Vec::new();
    for _ in 1..stages {
        // a stage may admit no map from a given O × K; redraw a few times
        let mut found = None;
        for _ in 0..16 {
            let o = &os[rng.random_range(0..os.len())];
            let cell = &cs[rng.random_range(0..cs.len())];
            found = random_attachment(o, cell, &stage, &mut rng, budget)?;
            if found.is_some() {
                break;
            }
        }
        let Some(att) = found else { return Ok(None) };
        let glued = pushout_diagram(&att.o, &att.cell.witness, &att.f)?;
        stage = glued.result.clone();
        all.push(stage.clone());
        links.push(glued.from_x);
    }
    let o2 = os[rng.random_range(0..os.len())].clone();
    Ok(Some((Tower::new(all, links)?, o2)))
}

fn tower_json(t: &Tower, o2: &SetDiagram) -> Value {
    json!({"tower": raw(&t.to_raw()), "test_orbit": raw(&o2.to_raw())})
}

fn towers(c: &Corpus, pool: &[Arc<FinCat>], class: Option<CatClass>) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let mut rng = c.rng(&format!("towers-{}", class_label(class)));
    let pool: Arc<Vec<Arc<FinCat>>> = Arc::new(pool.to_vec());
    let mut jobs = Vec::new();
    for (name, index) in shipped_indices() {
        for stages in 1..=c.bound {
            for copy in 0..TOWERS_PER_LENGTH {
                let seed: u64 = rng.random();
                let (index2, pool2) = (index.clone(), pool.clone());
                let (index3, pool3) = (index.clone(), pool.clone());
                jobs.push(Job::new(
                    jobs.len(),
                    format!("{name} stages={stages} #{copy}"),
                    move || {
                        let Some((t, o2)) = build_tower(&index2, &pool2, stages, seed, budget)? else {
                            return Ok(Verdict::Fails("no attaching map was available".into()));
                        };
                        let out = q2_check(&o2, &t, budget)?;
                        Ok(match (out.holds, class) {
                            (false, _) => Verdict::Fails(out.detail.unwrap_or_default()),
                            (true, Some(k)) => {
                                Verdict::from_bool(restrict_subcategory(&out, k), "leaves the subcategory")
                            }
                            (true, None) => Verdict::Holds,
                        })
                    },
                    move || match build_tower(&index3, &pool3, stages, seed, budget) {
                        Ok(Some((t, o2))) => tower_json(&t, &o2),
                        Ok(None) => json!({"seed": seed, "stages": stages}),
                        Err(e) => json!({"seed": seed, "stages": stages, "error": e.to_string()}),
                    },
                ));
            }
        }
    }
    Ok((
        format!(
            "{TOWERS_PER_LENGTH} towers per length 1 ..= {} per shipped index, grown by random attachments of cells with targets of \
             ≤ 2 objects along orbits with values of size ≤ 2",
            c.bound
        ),
        jobs,
    ))
}

fn class_label(class: Option<CatClass>) -> &'static str {
    match class {
        None => "any",
        Some(k) if k.is_poset => "posets",
        Some(_) => "acyclic",
    }
}

fn restriction(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let acyclic: Vec<Arc<FinCat>> =
        poset_pool().into_iter().chain([Arc::new(super::corpus::parallel_pair())]).collect();
    let cells_corpus = Corpus { bound: 2, ..c.clone() };
    let mut jobs = Vec::new();
    let mut desc = Vec::new();
    for (class, pool) in [(CatClass::POS, poset_pool()), (CatClass::AC, acyclic)] {
        let label = class_label(Some(class));
        let (d1, j1) = cell_pushouts(&cells_corpus, &pool, Some(class))?;
        let (d2, j2) = towers(c, &pool, Some(class))?;
        desc.push(format!("{label}: {d1}; {d2}"));
        for (k, j) in j1.into_iter().chain(j2).enumerate() {
            jobs.push(Job { id: format!("{label}/{k:06}:{}", j.id), ..j });
        }
    }
    Ok((desc.join(" | "), jobs))
}

fn adjunctions(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let corpus = simplicial_corpus();
    let mut jobs = Vec::new();
    for x in &corpus {
        let (x1, x2) = (x.sset.clone(), x.sset.clone());
        jobs.push(Job::new(
            jobs.len(),
            format!("c ⊣ N at {}", x.label),
            move || triangle_identities(&x1, budget),
            move || sset_json(&x2),
        ));
    }
    for x in corpus.iter().filter(|x| x.sset.dimension().unwrap_or(0) <= c.bound) {
        for y in &corpus {
            let (x1, y1) = (x.sset.clone(), y.sset.clone());
            let (x2, y2) = (x.sset.clone(), y.sset.clone());
            jobs.push(Job::new(
                jobs.len(),
                format!("Sd ⊣ Ex at ({}, {})", x.label, y.label),
                move || transposition(&x1, &y1, budget),
                move || json!({"source": sset_json(&x2), "target": sset_json(&y2)}),
            ));
        }
    }
    Ok((
        format!(
            "the {} simplicial sets of the corpus (≤ 8 nondegenerate simplices each); transpositions from those of \
             dimension ≤ {}",
            corpus.len(),
            c.bound
        ),
        jobs,
    ))
}

/// `ε_{cX} ∘ c η_X = id` and `N ε_C ∘ η_{NC} = id` for `C = cX`.
fn triangle_identities(x: &Arc<FinSSet>, budget: usize) -> Result<Verdict> {
    let trunc = x.truncation_dim().max(2);
    let cx = categorify(x, budget)?;
    let ncx = nerve_indexed(&cx.cat, trunc)?;
    let eta = unit(x, &cx, &ncx)?;
    let cncx = categorify(&ncx.sset, budget)?;
    let eps = counit(&cx.cat, &ncx, &cncx)?;
    if categorify_map(&eta, &cx, &cncx)?.then(&eps)? != CatFunctor::identity(cx.cat.clone()) {
        return Ok(Verdict::Fails("ε ∘ c η is not the identity".into()));
    }
    let nc = Arc::new(ncx.sset.clone());
    let ncnc = nerve_indexed(&cncx.cat, trunc)?;
    let eta_nc = unit(&nc, &cncx, &ncnc)?;
    let n_eps = nerve_functor(&eps, &ncnc, &ncx)?;
    let composite = eta_nc.then(&n_eps)?;
    Ok(Verdict::from_bool(composite.levels() == SSetMap::identity(nc).levels(), "N ε ∘ η is not the identity"))
}

/// Transposition is a bijection between maps `Sd X → Y` and `X → Ex Y`.
fn transposition(x: &Arc<FinSSet>, y: &Arc<FinSSet>, budget: usize) -> Result<Verdict> {
    let sd = Subdivision::new(x)?;
    let e = ex(y, x.truncation_dim(), budget)?;
    let left = enumerate_maps(&sd.sset, &e.base, budget)?;
    let right = enumerate_maps(x, &e.sset, budget)?;
    if left.len() != right.len() {
        return Ok(Verdict::Fails(format!("{} maps Sd X → Y but {} maps X → Ex Y", left.len(), right.len())));
    }
    for f in &left {
        if &transpose_from_sd(&transpose_to_ex(f, &sd, &e)?, &sd, &e)? != f {
            return Ok(Verdict::Fails("a map Sd X → Y does not round-trip".into()));
        }
    }
    for g in &right {
        if transpose_to_ex(&transpose_from_sd(g, &sd, &e)?, &sd, &e)?.levels() != g.levels() {
            return Ok(Verdict::Fails("a map X → Ex Y does not round-trip".into()));
        }
    }
    Ok(Verdict::Holds)
}

fn corepresentation(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let mut jobs = Vec::new();
    for named in group_actions().into_iter().filter(|a| a.action.group().order() <= c.bound) {
        let sd = Arc::new(semidirect(&named.action)?);
        let a = sd.action().clone();
        for (xl, x) in equivariant_values(&sd, budget)? {
            let x = Arc::new(x);
            for k in 0..a.index().object_count() {
                for h in
                    Subgroup::all(a.group()).into_iter().filter(|h| h.elements().iter().all(|&g| a.act(g).obj(k) == k))
                {
                    let label = format!("{} X={xl} k={} H={:?}", named.label, a.index().object_name(k), h.elements());
                    let (sd1, x1, h1) = (sd.clone(), x.clone(), h.clone());
                    let (sd2, x2) = (sd.clone(), x.clone());
                    jobs.push(Job::new(
                        jobs.len(),
                        label,
                        move || {
                            if !is_orbit(&orbit_diagram(&sd1, k, &h1)?) {
                                return Ok(Verdict::Fails("O_{k,H} is not an orbit".into()));
                            }
                            let out = corepresentation_check(&sd1, k, &h1, &x1, budget)?;
                            Ok(Verdict::from_bool(out.holds, out.detail.as_deref().unwrap_or("")))
                        },
                        move || {
                            json!({
                                "action": raw(&sd2.action().to_raw()),
                                "diagram": raw(&x2.to_raw()),
                                "object": k,
                                "subgroup": h.elements(),
                            })
                        },
                    ));
                }
            }
        }
    }
    Ok((
        format!(
            "groups of order ≤ {} (1, Z/2, Z/3) acting on index categories with ≤ 2 objects; constant, discrete orbit \
             and automorphism-twisted diagrams; every object and every subgroup of its stabilizer",
            c.bound
        ),
        jobs,
    ))
}

fn pullbacks(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let mut rng = c.rng("pullbacks");
    let ks: Vec<Arc<FinCat>> = (1..=2).flat_map(|n| enumerate_posets(n).expect("small posets")).map(Arc::new).collect();
    let mut jobs = Vec::new();
    for (name, index) in shipped_indices() {
        let os = orbits(&index, c.bound, budget)?;
        let xs: Vec<Arc<CatDiagram>> = sample(cat_diagrams(&index, &value_pool(), 2, &mut rng, budget)?, 8, &mut rng)
            .into_iter()
            .map(Arc::new)
            .collect();
        let mut made = 0;
        let mut tries = 0;
        while made < 16 && tries < 400 {
            tries += 1;
            let x = &xs[rng.random_range(0..xs.len())];
            let mut legs = Vec::new();
            for _ in 0..2 {
                let o = &os[rng.random_range(0..os.len())];
                let k = &ks[rng.random_range(0..ks.len())];
                let h = hom_diagram(o, x, budget)?;
                let fs = functors(k, &h.cat, budget as u128)?;
                if fs.is_empty() {
                    break;
                }
                let f = functor_from(k, &h.cat, fs[rng.random_range(0..fs.len())].clone());
                legs.push(attaching_map(&h, x, &f, &product_const(&embed_discrete(o), k))?);
            }
            if legs.len() < 2 {
                continue;
            }
            // every third cospan uses the identity as one leg
            if made % 3 == 2 {
                legs[1] = DiagramMap::identity(x.clone());
            }
            let o2 = os[rng.random_range(0..os.len())].clone();
            let (f, g) = (legs[0].clone(), legs[1].clone());
            let (f2, g2, o22) = (f.clone(), g.clone(), o2.clone());
            jobs.push(Job::new(
                jobs.len(),
                format!("{name} #{made}"),
                move || {
                    Ok(Verdict::from_bool(pullback_preservation_check(&o2, &f, &g, budget)?, "pullback not preserved"))
                },
                move || json!({"left": map_json(&f2), "right": map_json(&g2), "orbit": raw(&o22.to_raw())}),
            ));
            made += 1;
        }
    }
    Ok((
        format!(
            "16 cospans per shipped index of attaching maps O × K → X (K a poset with ≤ 2 objects) and identities; \
             orbits with values of size ≤ {}",
            c.bound
        ),
        jobs,
    ))
}

/// Length of the longest chain of strict inequalities in a poset.
fn height(c: &FinCat) -> usize {
    let n = c.object_count();
    let mut memo: Vec<Option<usize>> = vec![None; n];
    fn go(c: &FinCat, a: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[a] {
            return h;
        }
        let h = (0..c.object_count()).filter(|&b| b != a && c.le(a, b)).map(|b| 1 + go(c, b, memo)).max().unwrap_or(0);
        memo[a] = Some(h);
        h
    }
    (0..n).map(|a| go(c, a, &mut memo)).max().unwrap_or(0)
}

fn homology_suite(c: &Corpus) -> Result<(String, Vec<Job>)> {
    let budget = c.budget;
    let mut jobs = Vec::new();
    for x in simplicial_corpus() {
        let (x1, x2) = (x.sset.clone(), x.sset.clone());
        jobs.push(Job::new(
            jobs.len(),
            format!("Sd at {}", x.label),
            move || Ok(Verdict::from_bool(homology(&subdivide(&x1)?, 2)? == homology(&x1, 2)?, "homology changes")),
            move || sset_json(&x2),
        ));
    }
    for n in 0..=c.bound {
        jobs.push(Job::new(
            jobs.len(),
            format!("N c Sd² Δ[{n}]"),
            move || {
                let p = categorify(&subdivide(&subdivide(&standard(n))?)?, budget)?.cat;
                let h = homology(&nerve(&p, height(&p).max(1))?, 2)?;
                let point = h[0].betti == 1 && h[0].torsion.is_empty() && h[1..].iter().all(|g| g.is_zero());
                Ok(Verdict::from_bool(point, "homology is not that of a point"))
            },
            move || json!({"simplex": n}),
        ));
    }
    Ok((format!("the simplicial corpus, and c Sd² Δ[n] for n ≤ {}", c.bound), jobs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieves_up_to_symmetry() {
        // the discrete pair has down-sets ∅, {a}, {a, b} up to the swap
        let d = Arc::new(FinCat::discrete(["a", "b"]));
        assert_eq!(canonical_sieves(&d, 1 << 20).unwrap().len(), 3);
        let chain = Arc::new(FinCat::chain(2));
        assert_eq!(canonical_sieves(&chain, 1 << 20).unwrap().len(), 4);
    }

    #[test]
    fn isolated_object() {
        let (d, incl) = with_isolated_object(&FinCat::chain(1));
        assert_eq!(d.object_count(), 3);
        assert_eq!(incl.len(), 3);
    }

    #[test]
    fn poset_heights() {
        assert_eq!(height(&FinCat::chain(3)), 3);
        assert_eq!(height(&FinCat::discrete(["a"])), 0);
    }
}
