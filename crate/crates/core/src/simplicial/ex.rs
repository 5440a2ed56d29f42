//! Kan's Ex functor and the transposition maps of Sd ⊣ Ex.
//!
//! `Ex(Y)_n` is the set of simplicial maps `N(P[n]) → Y`, where `P[n]` is the
//! poset of nonempty subsets of `[n]` (so `N(P[n]) ≅ Sd Δ[n]`). Each map is
//! stored by its values on the nondegenerate simplices of `N(P[n])`.

use std::collections::HashMap;
use std::sync::Arc;

use super::maps::enumerate_cell_images;
use super::nerve::{nerve_indexed, nerve_of_poset_objects, Nerve};
use super::{FinSSet, Level, SSetMap, Skeleton, Subdivision};
use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// Data for one level of `Ex(Y)`.
#[derive(Clone, Debug)]
struct ExLevel {
    poset: FinCat,
    nerve: Nerve,
    skeleton: Skeleton,
    /// Cell images of each element.
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExLevel {
    /// Value of element `e` on the simplex `x ∈ N(P[n])_k`.
    fn value(&self, y: &FinSSet, e: usize, k: usize, x: usize) -> usize {
        let r = &self.skeleton.normal_form[k][x];
        y.degenerate(self.elements[e][r.cell], &r.surj)
    }

    fn simplex_of_masks(&self, masks: &[u32]) -> usize {
        let objs: Vec<usize> = masks.iter().map(|&m| m as usize - 1).collect();
        self.nerve.chain(&self.poset, &objs).expect("weakly increasing chain of subsets")
    }

    /// Cell images of `e ∘ N(h)` where `h: P[m] → P[n]` is given on masks.
    fn precompose(&self, y: &FinSSet, e: usize, src: &ExLevel, h: impl Fn(u32) -> u32) -> Vec<usize> {
        src.skeleton
            .cell_simplex
            .iter()
            .map(|&(k, x)| {
                let masks: Vec<u32> =
                    nerve_of_poset_objects(&src.poset, &src.nerve, k, x).into_iter().map(|o| h(o as u32 + 1)).collect();
                self.value(y, e, k, self.simplex_of_masks(&masks))
            })
            .collect()
    }
}

/// `Ex(Y)` truncated at some dimension, with its construction data.
#[derive(Clone, Debug)]
pub struct Ex {
    pub sset: Arc<FinSSet>,
    /// `Y`, materialized up to the truncation.
    pub base: Arc<FinSSet>,
    levels: Vec<ExLevel>,
}

fn subset_poset(n: usize) -> FinCat {
    let count = (1usize << (n + 1)) - 1;
    let names = (1..=count as u32)
        .map(|m| (0..=n).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect::<String>())
        .collect();
    FinCat::from_order(names, |a, b| (a + 1) & (b + 1) == a + 1)
}

/// `i`-th coface `[n-1] → [n]` on subset masks.
fn coface(i: usize) -> impl Fn(u32) -> u32 {
    move |m| {
        let low = m & ((1 << i) - 1);
        let high = m >> i;
        low | (high << (i + 1))
    }
}

/// `i`-th codegeneracy `[n+1] → [n]` on subset masks.
fn codegeneracy(i: usize) -> impl Fn(u32) -> u32 {
    move |m| {
        let low = m & ((1 << (i + 1)) - 1);
        let high = m >> (i + 1);
        low | (high << i)
    }
}

/// `Ex(Y)` truncated at `trunc`, enumerating at most `budget` elements per level.
pub fn ex(y: &FinSSet, trunc: usize, budget: usize) -> Result<Ex> {
    if !y.is_complete() {
        return Err(Error::IncompleteInput(y.truncation_dim()));
    }
    let base = Arc::new(y.extended(trunc.max(y.truncation_dim()))?);
    let mut levels: Vec<ExLevel> = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let poset = subset_poset(n);
        let nerve = nerve_indexed(&poset, trunc)?;
        let skeleton = nerve.sset.skeleton();
        let elements = enumerate_cell_images(&skeleton, &base, budget)?;
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        levels.push(ExLevel { poset, nerve, skeleton, elements, index });
    }
    let mut out = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let lv = &levels[n];
        let names = if n == 0 {
            lv.elements.iter().map(|e| base.name(0, e[0]).to_string()).collect()
        } else {
            (0..lv.elements.len()).map(|k| format!("ex{n}:{k}")).collect()
        };
        let faces = if n == 0 {
            vec![]
        } else {
            (0..=n)
                .map(|i| {
                    (0..lv.elements.len())
                        .map(|e| levels[n - 1].index[&lv.precompose(&base, e, &levels[n - 1], coface(i))])
                        .collect()
                })
                .collect()
        };
        let degens = if n == trunc {
            vec![]
        } else {
            (0..=n)
                .map(|i| {
                    (0..lv.elements.len())
                        .map(|e| levels[n + 1].index[&lv.precompose(&base, e, &levels[n + 1], codegeneracy(i))])
                        .collect()
                })
                .collect()
        };
        out.push(Level { names, faces, degens });
    }
    let sset = Arc::new(FinSSet::from_levels(out, false)?);
    Ok(Ex { sset, base, levels })
}

/// The adjunct `X → Ex Y` of a map `f: Sd X → Y`.
pub fn transpose_to_ex(f: &SSetMap, sd: &Subdivision, ex: &Ex) -> Result<SSetMap> {
    let x_cells = &sd.base;
    let images = x_cells
        .cell_simplex
        .iter()
        .enumerate()
        .map(|(c, &(n, _))| {
            let lv = ex.levels.get(n).ok_or_else(|| Error::Malformed("Ex is truncated below the source".into()))?;
            let x = super::SimplexRef::nondegenerate(c, n);
            let key: Vec<usize> = lv
                .skeleton
                .cell_simplex
                .iter()
                .map(|&(k, s)| {
                    let masks: Vec<u32> =
                        nerve_of_poset_objects(&lv.poset, &lv.nerve, k, s).into_iter().map(|o| o as u32 + 1).collect();
                    f.apply(k, sd.simplex_of(&x, &masks))
                })
                .collect();
            lv.index.get(&key).copied().ok_or_else(|| Error::Malformed("adjunct is not an element of Ex".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::from_cells_with(x_cells, sd.source.clone(), ex.sset.clone(), &images)
}

/// The adjunct `Sd X → Y` of a map `g: X → Ex Y`.
pub fn transpose_from_sd(g: &SSetMap, sd: &Subdivision, ex: &Ex) -> Result<SSetMap> {
    let cell_images: Vec<usize> = sd
        .cells
        .iter()
        .map(|(x, chain)| {
            let (n, idx) = sd.base.cell_simplex[*x];
            let lv = &ex.levels[n];
            let e = g.apply(n, idx);
            let k = chain.len() - 1;
            lv.value(&ex.base, e, k, lv.simplex_of_masks(chain))
        })
        .collect();
    let trunc = sd.sset.truncation_dim().min(ex.base.truncation_dim());
    let levels = (0..=trunc)
        .map(|n| {
            (0..sd.sset.count(n))
                .map(|s| {
                    let r = sd.normal_form(n, s);
                    ex.base.degenerate(cell_images[r.cell], &r.surj)
                })
                .collect()
        })
        .collect();
    SSetMap::new(sd.sset.clone(), ex.base.clone(), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary, enumerate_maps, horn, standard};

    #[test]
    fn coface_and_codegeneracy_masks() {
        // δ_1: {0,1} ↦ {0,2}
        assert_eq!(coface(1)(0b11), 0b101);
        // σ_0: {0,1,2} ↦ {0,1}; {1} ↦ {0}
        assert_eq!(codegeneracy(0)(0b111), 0b11);
        assert_eq!(codegeneracy(0)(0b10), 0b1);
    }

    #[test]
    fn small_ex_counts() {
        let e0 = ex(&standard(0), 2, 10_000).unwrap();
        for n in 0..=2 {
            assert_eq!(e0.sset.count(n), 1);
        }
        assert_eq!(ex(&boundary(1), 1, 10_000).unwrap().sset.count(1), 2);
        assert_eq!(ex(&standard(1), 1, 10_000).unwrap().sset.count(1), 5);
        assert!(!e0.sset.is_complete());
    }

    #[test]
    fn transposition_is_a_bijection() {
        let x = standard(1);
        let y = Arc::new(horn(2, 1));
        let sd = Subdivision::new(&x).unwrap();
        let e = ex(&y, 1, 100_000).unwrap();
        let left = enumerate_maps(&sd.sset, &e.base, 100_000).unwrap();
        let xa = Arc::new(x.clone());
        let right = enumerate_maps(&xa, &e.sset, 100_000).unwrap();
        assert_eq!(left.len(), right.len());
        for f in &left {
            let g = transpose_to_ex(f, &sd, &e).unwrap();
            assert_eq!(&transpose_from_sd(&g, &sd, &e).unwrap(), f);
        }
        for g in &right {
            let f = transpose_from_sd(g, &sd, &e).unwrap();
            assert_eq!(transpose_to_ex(&f, &sd, &e).unwrap().levels(), g.levels());
        }
    }
}
