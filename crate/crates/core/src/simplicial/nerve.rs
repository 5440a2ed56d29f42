use std::collections::HashMap;
use std::sync::Arc;

use super::{FinSSet, Level, SSetMap, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat, Mor, Obj};

/// A nerve together with the composable string behind each simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sset: FinSSet,
    strings: Vec<Vec<Vec<Mor>>>,
    index: Vec<HashMap<Vec<Mor>, usize>>,
}

impl Nerve {
    /// The string of morphisms (first applied first) of `x ∈ N_n`, empty for vertices.
    pub fn string(&self, n: usize, x: usize) -> &[Mor] {
        &self.strings[n][x]
    }

    /// The simplex of a nonempty composable string.
    pub fn simplex(&self, string: &[Mor]) -> Option<usize> {
        self.index.get(string.len())?.get(string).copied()
    }

    /// The simplex `o_0 ≤ … ≤ o_n` of a nerve of a poset.
    pub fn chain(&self, c: &FinCat, objs: &[Obj]) -> Option<usize> {
        match objs {
            [] => None,
            [o] => Some(*o),
            _ => {
                let string = objs
                    .windows(2)
                    .map(|w| match c.hom(w[0], w[1]) {
                        [m] => Some(*m),
                        _ => None,
                    })
                    .collect::<Option<Vec<_>>>()?;
                self.simplex(&string)
            }
        }
    }
}

/// `N(c)` truncated at `trunc`.
pub fn nerve(c: &FinCat, trunc: usize) -> Result<FinSSet> {
    Ok(nerve_indexed(c, trunc)?.sset)
}

/// Length of the longest string of non-identity morphisms, if the category is acyclic.
fn longest_chain(c: &FinCat) -> Option<usize> {
    if !c.classify().is_acyclic {
        return None;
    }
    let n = c.object_count();
    let mut memo: Vec<Option<usize>> = vec![None; n];
    fn depth(c: &FinCat, o: Obj, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[o] {
            return d;
        }
        let d =
            c.homs_from(o).filter(|&&m| !c.is_identity(m)).map(|&m| 1 + depth(c, c.tgt(m), memo)).max().unwrap_or(0);
        memo[o] = Some(d);
        d
    }
    Some((0..n).map(|o| depth(c, o, &mut memo)).max().unwrap_or(0))
}

pub fn nerve_indexed(c: &FinCat, trunc: usize) -> Result<Nerve> {
    let mut strings: Vec<Vec<Vec<Mor>>> = vec![vec![vec![]; c.object_count()]];
    let mut index: Vec<HashMap<Vec<Mor>, usize>> = vec![HashMap::new()];
    for n in 1..=trunc {
        let level: Vec<Vec<Mor>> = if n == 1 {
            (0..c.morphism_count()).map(|m| vec![m]).collect()
        } else {
            let mut out = Vec::new();
            for s in &strings[n - 1] {
                for &m in c.homs_from(c.tgt(*s.last().unwrap())) {
                    let mut t = s.clone();
                    t.push(m);
                    out.push(t);
                    if out.len() > DEFAULT_BUDGET {
                        return Err(Error::SizeLimitExceeded {
                            required: out.len() as u128,
                            budget: DEFAULT_BUDGET as u128,
                        });
                    }
                }
            }
            out
        };
        index.push(level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
        strings.push(level);
    }
    let mut levels = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let names = if n == 0 {
            c.objects().to_vec()
        } else if n == 1 {
            c.morphisms().iter().map(|m| m.name.clone()).collect()
        } else {
            strings[n]
                .iter()
                .map(|s| {
                    let parts: Vec<&str> = s.iter().map(|&m| c.morphism(m).name.as_str()).collect();
                    format!("({})", parts.join(","))
                })
                .collect()
        };
        let face = |s: &[Mor], i: usize| -> usize {
            if n == 1 {
                return if i == 0 { c.tgt(s[0]) } else { c.src(s[0]) };
            }
            let mut t = s.to_vec();
            if i == 0 {
                t.remove(0);
            } else if i == n {
                t.pop();
            } else {
                let gf = c.comp(t[i], t[i - 1]);
                t[i - 1] = gf;
                t.remove(i);
            }
            index[n - 1][&t]
        };
        let faces =
            if n == 0 { vec![] } else { (0..=n).map(|i| strings[n].iter().map(|s| face(s, i)).collect()).collect() };
        let degens = if n == trunc {
            vec![]
        } else if n == 0 {
            vec![(0..c.object_count()).map(|o| index[1][&vec![c.identity(o)]]).collect()]
        } else {
            (0..=n)
                .map(|i| {
                    strings[n]
                        .iter()
                        .map(|s| {
                            let at = if i == 0 { c.src(s[0]) } else { c.tgt(s[i - 1]) };
                            let mut t = s.clone();
                            t.insert(i, c.identity(at));
                            index[n + 1][&t]
                        })
                        .collect()
                })
                .collect()
        };
        levels.push(Level { names, faces, degens });
    }
    let complete = longest_chain(c).is_some_and(|l| trunc >= l);
    let sset = FinSSet::from_levels(levels, complete)?;
    Ok(Nerve { sset, strings, index })
}

/// `N(f)` between nerves truncated at the same dimension.
pub fn nerve_functor(f: &CatFunctor, source: &Nerve, target: &Nerve) -> Result<SSetMap> {
    let trunc = source.sset.truncation_dim().min(target.sset.truncation_dim());
    let mut levels = vec![f.obj_map().to_vec()];
    for n in 1..=trunc {
        levels.push(
            (0..source.sset.count(n))
                .map(|x| {
                    let s: Vec<Mor> = source.string(n, x).iter().map(|&m| f.mor(m)).collect();
                    target.simplex(&s).expect("functor preserves composable strings")
                })
                .collect(),
        );
    }
    SSetMap::new(Arc::new(source.sset.clone()), Arc::new(target.sset.clone()), levels)
}

/// The simplex index map `objects ↦ chain` for the nerve of a poset, used by
/// subdivision and Ex.
pub fn nerve_of_poset_objects(c: &FinCat, nerve: &Nerve, n: usize, x: usize) -> Vec<Obj> {
    if n == 0 {
        return vec![x];
    }
    let s = nerve.string(n, x);
    let mut objs = vec![c.src(s[0])];
    objs.extend(s.iter().map(|&m| c.tgt(m)));
    objs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::product;
    use crate::simplicial::{standard, FinSSet};

    fn same_shape(a: &FinSSet, b: &FinSSet) -> bool {
        (0..=a.truncation_dim().min(b.truncation_dim())).all(|n| a.count(n) == b.count(n))
            && (0..=a.truncation_dim()).all(|n| a.nondegenerate(n).len() == b.nondegenerate(n).len())
    }

    #[test]
    fn nerve_of_arrow_is_interval() {
        let n = nerve(&FinCat::chain(1), 1).unwrap();
        assert!(n.is_complete());
        assert!(same_shape(&n, &standard(1)));
        let t = nerve(&FinCat::terminal(), 0).unwrap();
        assert!(t.is_complete());
        assert!(same_shape(&t, &standard(0)));
    }

    #[test]
    fn nerve_of_square() {
        let one = Arc::new(FinCat::chain(1));
        let sq = product(&one, &one).cat;
        let n = nerve(&sq, 3).unwrap();
        assert_eq!(n.nondegenerate(0).len(), 4);
        assert_eq!(n.nondegenerate(1).len(), 5);
        assert_eq!(n.nondegenerate(2).len(), 2);
        assert_eq!(n.nondegenerate(3).len(), 0);
        assert!(n.is_complete());
    }

    #[test]
    fn group_nerve_is_incomplete() {
        let n = nerve(&FinCat::cyclic_group(2), 3).unwrap();
        assert!(!n.is_complete());
        // strings of length k over a group of order 2
        assert_eq!(n.count(3), 8);
    }

    #[test]
    fn truncation_below_longest_chain_is_incomplete() {
        assert!(!nerve(&FinCat::chain(3), 2).unwrap().is_complete());
        assert!(nerve(&FinCat::chain(3), 3).unwrap().is_complete());
    }

    #[test]
    fn nerve_of_functor_is_simplicial() {
        let c = Arc::new(FinCat::chain(1));
        let d = Arc::new(FinCat::chain(2));
        let f = CatFunctor::from_morphisms(c.clone(), d.clone(), vec![3, 4, 5]).unwrap();
        let nc = nerve_indexed(&c, 3).unwrap();
        let nd = nerve_indexed(&d, 3).unwrap();
        assert!(nerve_functor(&f, &nc, &nd).is_ok());
    }
}
