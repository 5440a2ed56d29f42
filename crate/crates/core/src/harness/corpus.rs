//! Deterministic instance generators shared by the verification suites.

use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{is_orbit, CatDiagram, SetDiagram};
use crate::dwyer::{find_dwyer_witness, full_inclusion, is_sieve, DwyerWitness};
use crate::equivariant::{diagram_from_group_action, FinGroup, GroupAction, Semidirect};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_posets, functors, CatFunctor, FinCat, Morphism};
use crate::simplicial::{boundary, generating_sets, horn, ordered_complex, standard, FinSSet};

/// Default cap on enumerated families, overridable by `WORKBENCH_BUDGET`.
pub const DEFAULT_BUDGET: usize = 1 << 16;

/// Reads `WORKBENCH_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> usize {
    std::env::var("WORKBENCH_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Seed, size bound and enumeration budget for one run of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub bound: usize,
    pub budget: usize,
}

impl Corpus {
    pub fn new(seed: u64, bound: usize) -> Self {
        Corpus { seed, bound, budget: budget_from_env() }
    }

    /// An RNG private to `stream`, so generators do not perturb each other.
    pub fn rng(&self, stream: &str) -> ChaCha8Rng {
        let salt = stream.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x1000_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }
}

/// Keeps at most `n` items, chosen by `rng` but listed in their original order.
pub fn sample<T>(items: Vec<T>, n: usize, rng: &mut impl Rng) -> Vec<T> {
    if items.len() <= n {
        return items;
    }
    let mut keep: Vec<usize> = (0..items.len()).collect();
    keep.shuffle(rng);
    keep.truncate(n);
    keep.sort_unstable();
    let mut keep = keep.into_iter().peekable();
    items
        .into_iter()
        .enumerate()
        .filter_map(|(i, x)| {
            if keep.peek() == Some(&i) {
                keep.next();
                Some(x)
            } else {
                None
            }
        })
        .collect()
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Two parallel arrows `u, v: a → b`.
pub fn parallel_pair() -> FinCat {
    let morphisms = vec![
        Morphism { name: "id:a".into(), src: 0, tgt: 0 },
        Morphism { name: "id:b".into(), src: 1, tgt: 1 },
        Morphism { name: "u".into(), src: 0, tgt: 1 },
        Morphism { name: "v".into(), src: 0, tgt: 1 },
    ];
    FinCat::from_fn(vec!["a".into(), "b".into()], morphisms, vec![0, 1], |g, f| match (g, f) {
        (0, 0) => Some(0),
        (1, x) if x != 0 => Some(x),
        (x, 0) if x >= 2 => Some(x),
        _ => None,
    })
    .expect("parallel pair")
}

/// `b ← a → c`, which has the automorphism swapping `b` and `c`.
pub fn span() -> FinCat {
    FinCat::poset(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]).expect("span")
}

/// The five index categories every diagram-level suite runs over.
pub fn shipped_indices() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("terminal", Arc::new(FinCat::terminal())),
        ("arrow", Arc::new(FinCat::chain(1))),
        ("z2", Arc::new(FinCat::cyclic_group(2))),
        ("parallel-pair", Arc::new(parallel_pair())),
        ("span", Arc::new(span())),
    ]
}

/// Every Set-valued diagram with values of size at most `max_size`, listed
/// by value sizes and then by actions.
pub fn set_diagrams(index: &Arc<FinCat>, max_size: usize, budget: usize) -> Result<Vec<SetDiagram>> {
    let n_obj = index.object_count();
    let movers: Vec<usize> = index.non_identities().collect();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; n_obj];
    loop {
        let values: Vec<Vec<String>> = sizes.iter().map(|&s| names("x", s)).collect();
        // every choice of a function per non-identity morphism
        let ranges: Vec<(usize, usize)> = movers.iter().map(|&m| (sizes[index.src(m)], sizes[index.tgt(m)])).collect();
        let total: u128 = ranges.iter().map(|&(s, t)| (t as u128).pow(s as u32)).product();
        if total > budget as u128 {
            return Err(Error::SizeLimitExceeded { required: total, budget: budget as u128 });
        }
        for code in 0..total {
            let mut c = code;
            let mut action: Vec<Vec<usize>> =
                (0..index.morphism_count()).map(|m| (0..sizes[index.src(m)]).collect()).collect();
            for (&m, &(s, t)) in movers.iter().zip(&ranges) {
                action[m] = (0..s)
                    .map(|_| {
                        let v = (c % t as u128) as usize;
                        c /= t as u128;
                        v
                    })
                    .collect();
            }
            if let Ok(d) = SetDiagram::new(index.clone(), values.clone(), action) {
                out.push(d);
                if out.len() > budget {
                    return Err(Error::SizeLimitExceeded { required: out.len() as u128, budget: budget as u128 });
                }
            }
        }
        // next size vector
        let Some(p) = sizes.iter().position(|&s| s < max_size) else {
            break;
        };
        for s in &mut sizes[..p] {
            *s = 0;
        }
        sizes[p] += 1;
    }
    Ok(out)
}

/// Orbits with values of size at most `max_size`.
pub fn orbits(index: &Arc<FinCat>, max_size: usize, budget: usize) -> Result<Vec<SetDiagram>> {
    Ok(set_diagrams(index, max_size, budget)?.into_iter().filter(is_orbit).collect())
}

/// Diagrams whose colimit is empty or has two or more elements.
pub fn non_orbits(index: &Arc<FinCat>, max_size: usize, budget: usize) -> Result<Vec<SetDiagram>> {
    Ok(set_diagrams(index, max_size, budget)?.into_iter().filter(|d| !is_orbit(d)).collect())
}

/// Small categories used as diagram values.
pub fn value_pool() -> Vec<Arc<FinCat>> {
    vec![
        Arc::new(FinCat::terminal()),
        Arc::new(FinCat::chain(1)),
        Arc::new(FinCat::discrete(["p", "q"])),
        Arc::new(FinCat::cyclic_group(2)),
    ]
}

/// Posets used as diagram values.
pub fn poset_pool() -> Vec<Arc<FinCat>> {
    vec![
        Arc::new(FinCat::terminal()),
        Arc::new(FinCat::chain(1)),
        Arc::new(FinCat::discrete(["p", "q"])),
        Arc::new(span()),
    ]
}

/// Cat-valued diagrams over `index` with values in `pool`: at most `limit`
/// per choice of values, sampled when the functor choices exceed it.
pub fn cat_diagrams(
    index: &Arc<FinCat>,
    pool: &[Arc<FinCat>],
    limit: usize,
    rng: &mut impl Rng,
    budget: usize,
) -> Result<Vec<CatDiagram>> {
    let n_obj = index.object_count();
    let movers: Vec<usize> = index.non_identities().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n_obj];
    loop {
        let values: Vec<Arc<FinCat>> = choice.iter().map(|&c| pool[c].clone()).collect();
        let options: Vec<Vec<CatFunctor>> = movers
            .iter()
            .map(|&m| {
                let (s, t) = (&values[index.src(m)], &values[index.tgt(m)]);
                Ok(functors(s, t, budget as u128)?
                    .into_iter()
                    .map(|d| {
                        CatFunctor::new(s.clone(), t.clone(), d.obj_map, d.mor_map)
                            .expect("enumerated functors are valid")
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        let total: u128 = options.iter().map(|o| o.len() as u128).product();
        let codes: Vec<u128> = if total <= limit as u128 {
            (0..total).collect()
        } else {
            let mut picked: Vec<u128> = (0..limit).map(|_| rng.random_range(0..total)).collect();
            picked.sort_unstable();
            picked.dedup();
            picked
        };
        for code in codes {
            let mut c = code;
            let mut action: Vec<CatFunctor> =
                (0..index.morphism_count()).map(|m| CatFunctor::identity(values[index.src(m)].clone())).collect();
            for (&m, opts) in movers.iter().zip(&options) {
                action[m] = opts[(c % opts.len() as u128) as usize].clone();
                c /= opts.len() as u128;
            }
            if let Ok(d) = CatDiagram::new(index.clone(), values.clone(), action) {
                out.push(d);
            }
        }
        let Some(p) = choice.iter().position(|&c| c + 1 < pool.len()) else {
            break;
        };
        for c in &mut choice[..p] {
            *c = 0;
        }
        choice[p] += 1;
    }
    Ok(out)
}

/// A named Dwyer map between posets, used as a cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub label: String,
    pub witness: DwyerWitness,
}

/// The generating cells in dimension at most `max_n`, followed by sieve
/// inclusions into posets with at most `poset_size` objects that are Dwyer.
pub fn cells(max_n: usize, poset_size: usize, budget: usize) -> Result<Vec<Cell>> {
    let g = generating_sets(max_n, budget)?;
    let mut out = Vec::new();
    for (f, label) in g.i_cat.iter().zip(&g.i_labels).chain(g.j_cat.iter().zip(&g.j_labels)) {
        let witness = find_dwyer_witness(f)?.ok_or_else(|| Error::InvalidWitness(format!("{label} is not Dwyer")))?;
        out.push(Cell { label: format!("cSd²({label})"), witness });
    }
    for n in 1..=poset_size {
        for (p, b) in enumerate_posets(n)?.into_iter().enumerate() {
            let b = Arc::new(b);
            for mask in 1..(1u32 << n) - 1 {
                let keep: Vec<usize> = (0..n).filter(|&o| mask >> o & 1 == 1).collect();
                let i = full_inclusion(&b, &keep);
                if !is_sieve(&i)? {
                    continue;
                }
                if let Some(witness) = find_dwyer_witness(&i)? {
                    out.push(Cell { label: format!("poset{n}.{p}/{mask:b}"), witness });
                }
            }
        }
    }
    Ok(out)
}

/// A named simplicial set of the corpus.
#[derive(Clone, Debug)]
pub struct NamedSSet {
    pub label: String,
    pub sset: Arc<FinSSet>,
}

/// Standard simplices, boundaries and horns up to dimension 2, and two
/// small ordered complexes: every member has at most 8 nondegenerate simplices.
pub fn simplicial_corpus() -> Vec<NamedSSet> {
    let mut out: Vec<NamedSSet> = Vec::new();
    let mut push = |label: String, x: FinSSet| out.push(NamedSSet { label, sset: Arc::new(x) });
    for n in 0..=2 {
        push(format!("Δ[{n}]"), standard(n));
    }
    for n in 1..=2 {
        push(format!("∂Δ[{n}]"), boundary(n));
    }
    for k in 0..=2 {
        push(format!("Λ^{k}[2]"), horn(2, k));
    }
    let v = names("v", 3);
    push("path".into(), ordered_complex(&v, &[vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]]).expect("path"));
    push("two-points".into(), ordered_complex(&v[..2], &[vec![0], vec![1]]).expect("two points"));
    out
}

/// A group acting on an index category, labelled for reports.
#[derive(Clone, Debug)]
pub struct NamedAction {
    pub label: String,
    pub action: GroupAction,
}

/// The chaotic groupoid on two objects.
fn chaotic_pair() -> FinCat {
    let morphisms = vec![
        Morphism { name: "id:a".into(), src: 0, tgt: 0 },
        Morphism { name: "id:b".into(), src: 1, tgt: 1 },
        Morphism { name: "ab".into(), src: 0, tgt: 1 },
        Morphism { name: "ba".into(), src: 1, tgt: 0 },
    ];
    FinCat::from_fn(vec!["a".into(), "b".into()], morphisms, vec![0, 1], |g, f| {
        let (s, t) = ([0, 1, 0, 1][f], [0, 1, 1, 0][g]);
        if [0, 1, 1, 0][f] != [0, 1, 0, 1][g] {
            return None;
        }
        Some(match (s, t) {
            (0, 0) => 0,
            (1, 1) => 1,
            (0, 1) => 2,
            _ => 3,
        })
    })
    .expect("chaotic groupoid")
}

/// Groups of order at most 3 acting on index categories with at most two objects.
pub fn group_actions() -> Vec<NamedAction> {
    let groups = [("1", FinGroup::trivial()), ("Z/2", FinGroup::cyclic(2)), ("Z/3", FinGroup::cyclic(3))];
    let indices: Vec<(&str, Arc<FinCat>)> = vec![
        ("terminal", Arc::new(FinCat::terminal())),
        ("arrow", Arc::new(FinCat::chain(1))),
        ("two-points", Arc::new(FinCat::discrete(["a", "b"]))),
        ("chaotic-pair", Arc::new(chaotic_pair())),
    ];
    let mut out = Vec::new();
    for (gl, g) in &groups {
        let g = Arc::new(g.clone());
        for (il, i) in &indices {
            out.push(NamedAction {
                label: format!("{gl} trivially on {il}"),
                action: GroupAction::trivial(g.clone(), i.clone()),
            });
        }
    }
    let z2 = Arc::new(FinGroup::cyclic(2));
    let two = indices[2].1.clone();
    out.push(NamedAction {
        label: "Z/2 swapping two-points".into(),
        action: GroupAction::on_discrete(z2.clone(), two, |g, o| if g == 0 { o } else { 1 - o }).expect("swap"),
    });
    let pair = indices[3].1.clone();
    let swap = CatFunctor::new(pair.clone(), pair.clone(), vec![1, 0], vec![1, 0, 3, 2]).expect("swap functor");
    out.push(NamedAction {
        label: "Z/2 swapping chaotic-pair".into(),
        action: GroupAction::new(z2.clone(), pair.clone(), vec![CatFunctor::identity(pair), swap])
            .expect("swap action"),
    });
    let z3 = Arc::new(FinCat::cyclic_group(3));
    let inv = CatFunctor::from_morphisms(z3.clone(), z3.clone(), vec![0, 2, 1]).expect("inversion");
    out.push(NamedAction {
        label: "Z/2 inverting Z/3".into(),
        action: GroupAction::new(z2, z3.clone(), vec![CatFunctor::identity(z3), inv]).expect("inversion action"),
    });
    out
}

/// Automorphisms `φ` of `c` with `φ^n = id`, listed by morphism map.
pub fn automorphisms_of_order_dividing(c: &Arc<FinCat>, n: usize, budget: usize) -> Result<Vec<CatFunctor>> {
    let id = CatFunctor::identity(c.clone());
    let mut out = Vec::new();
    for d in functors(c, c, budget as u128)? {
        let f = CatFunctor::new(c.clone(), c.clone(), d.obj_map, d.mor_map)?;
        if !f.is_isomorphism() {
            continue;
        }
        let mut power = id.clone();
        for _ in 0..n {
            power = power.then(&f)?;
        }
        if power == id {
            out.push(f);
        }
    }
    Ok(out)
}

/// Cat-valued diagrams over `G ⋊ I`: constants, discrete orbit diagrams, and
/// for a terminal `I` every action of a cyclic `G` on a pool value.
pub fn equivariant_values(sd: &Semidirect, budget: usize) -> Result<Vec<(String, CatDiagram)>> {
    let mut out = Vec::new();
    for (p, c) in value_pool().into_iter().enumerate() {
        out.push((format!("constant pool{p}"), CatDiagram::constant(sd.cat.clone(), c)));
    }
    let a = sd.action();
    for k in 0..a.index().object_count() {
        for h in crate::equivariant::Subgroup::all(a.group()) {
            if h.elements().iter().all(|&g| a.act(g).obj(k) == k) {
                let o = crate::equivariant::orbit_diagram(sd, k, &h)?;
                let label = format!("discrete O({}, {:?})", a.index().object_name(k), h.elements());
                out.push((label, crate::diagram::embed_discrete(&o)));
            }
        }
    }
    let g = a.group();
    if a.index().object_count() == 1 && (1..=g.order()).all(|x| g.mul(1 % g.order(), x - 1) == x % g.order()) {
        // cyclic with generator 1: act[x] = φ^x
        for (p, c) in value_pool().into_iter().enumerate() {
            for (q, phi) in automorphisms_of_order_dividing(&c, g.order(), budget)?.into_iter().enumerate() {
                let mut act = vec![CatFunctor::identity(c.clone())];
                for x in 1..g.order() {
                    let next = act[x - 1].then(&phi)?;
                    act.push(next);
                }
                // only actions compatible with the action on I survive validation
                if let Ok(d) = diagram_from_group_action(sd, c.clone(), &act) {
                    out.push((format!("pool{p} via automorphism {q}"), d));
                }
            }
        }
    }
    Ok(out)
}

/// Picks one element uniformly, or `None` for an empty slice.
pub fn pick<'a, T>(items: &'a [T], rng: &mut impl Rng) -> Option<&'a T> {
    items.choose(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::colim_set;

    #[test]
    fn shipped_indices_are_valid_and_distinct() {
        let idx = shipped_indices();
        assert_eq!(idx.len(), 5);
        assert!(idx[4].1.is_poset());
        assert_eq!(idx[3].1.hom(0, 1).len(), 2);
    }

    #[test]
    fn orbit_counts_match_a_direct_count() {
        let b = DEFAULT_BUDGET;
        // over the arrow an orbit is any X(0) → 1
        let arrow = Arc::new(FinCat::chain(1));
        assert_eq!(orbits(&arrow, 2, b).unwrap().len(), 3);
        // over Z/2 with sets of size ≤ 2: the point and the free orbit
        let z2 = Arc::new(FinCat::cyclic_group(2));
        assert_eq!(orbits(&z2, 2, b).unwrap().len(), 2);
        for d in non_orbits(&z2, 2, b).unwrap() {
            assert_ne!(colim_set(&d).len(), 1);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let c = Corpus::new(7, 2);
        let idx = Arc::new(parallel_pair());
        let a = cat_diagrams(&idx, &value_pool(), 5, &mut c.rng("x"), DEFAULT_BUDGET).unwrap();
        let b = cat_diagrams(&idx, &value_pool(), 5, &mut c.rng("x"), DEFAULT_BUDGET).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_raw() == y.to_raw()));
    }

    #[test]
    fn cells_are_dwyer_maps_between_posets() {
        let cs = cells(1, 2, DEFAULT_BUDGET).unwrap();
        assert!(cs.len() >= 3);
        for c in &cs {
            assert!(c.witness.source().is_poset() && c.witness.target().is_poset(), "{}", c.label);
        }
    }

    #[test]
    fn simplicial_corpus_is_small() {
        for x in simplicial_corpus() {
            assert!(x.sset.nondegenerate_count() <= 8, "{}", x.label);
        }
    }

    #[test]
    fn group_actions_are_valid() {
        let acts = group_actions();
        assert_eq!(acts.len(), 15);
        let sd = crate::equivariant::semidirect(&acts[14].action).unwrap();
        // Z/3 ⋊ Z/2 is the symmetric group on three letters
        assert_eq!(sd.cat.morphism_count(), 6);
        assert!(!equivariant_values(&sd, DEFAULT_BUDGET).unwrap().is_empty());
    }
}
