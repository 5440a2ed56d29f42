//! Barycentric subdivision.
//!
//! A nondegenerate k-simplex of `Sd X` is a pair `(x, S_0 ⊊ … ⊊ S_k)` with
//! `x` a nondegenerate n-simplex of `X` and `S_k = [n]`. An arbitrary pair
//! `(x, weakly increasing chain)` is brought to this form by restricting `x`
//! to the top subset, pushing the chain forward along the degeneracy part of
//! the restricted simplex, and collapsing repeated entries.

use std::collections::HashMap;
use std::sync::Arc;

use super::cells::Materialized;
use super::{Cell, CellComplex, FinSSet, SSetMap, SimplexRef, Skeleton};
use crate::error::{Error, Result};

/// `Sd X` with enough bookkeeping to subdivide maps and transpose along Sd ⊣ Ex.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub sset: Arc<FinSSet>,
    /// The subdivided set `X`.
    pub source: Arc<FinSSet>,
    /// Presentation of the subdivided set `X`.
    pub base: Skeleton,
    /// `(cell of X, strict chain of vertex subsets)` per cell of `Sd X`.
    pub cells: Vec<(usize, Vec<u32>)>,
    complex: CellComplex,
    lookup: HashMap<(usize, Vec<u32>), usize>,
    materialized: Materialized,
}

fn subset_name(mask: u32) -> String {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b.to_string()).collect::<Vec<_>>().join("")
}

/// Strict chains of nonempty subsets of `[n]` ending at `[n]`.
fn chains_to_top(n: usize) -> Vec<Vec<u32>> {
    let full: u32 = (1u32 << (n + 1)) - 1;
    let mut out = Vec::new();
    fn go(bottom: u32, chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let mut c = chain.clone();
        c.reverse();
        out.push(c);
        // proper nonempty subsets of `bottom`
        let mut t = (bottom - 1) & bottom;
        while t != 0 {
            chain.push(t);
            go(t, chain, out);
            chain.pop();
            t = (t - 1) & bottom;
        }
    }
    go(full, &mut vec![full], &mut out);
    out
}

impl Subdivision {
    pub fn new(x: &FinSSet) -> Result<Self> {
        if !x.is_complete() {
            return Err(Error::IncompleteInput(x.truncation_dim()));
        }
        let base = x.skeleton();
        let mut cells: Vec<(usize, Vec<u32>)> = Vec::new();
        for (c, cell) in base.complex.cells.iter().enumerate() {
            for chain in chains_to_top(cell.dim) {
                cells.push((c, chain));
            }
        }
        cells.sort_by(|a, b| (a.1.len(), a.0, &a.1).cmp(&(b.1.len(), b.0, &b.1)));
        let lookup: HashMap<(usize, Vec<u32>), usize> =
            cells.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut sd = Subdivision {
            sset: Arc::new(FinSSet::empty()),
            source: Arc::new(x.clone()),
            base,
            cells,
            complex: CellComplex::default(),
            lookup,
            materialized: CellComplex::default().materialize_indexed(0, true)?,
        };
        let mut complex = CellComplex::default();
        for (x, chain) in &sd.cells {
            let xcell = &sd.base.complex.cells[*x];
            let dim = chain.len() - 1;
            let me = SimplexRef::nondegenerate(*x, xcell.dim);
            let faces = if dim == 0 {
                vec![]
            } else {
                (0..=dim)
                    .map(|i| {
                        let mut c = chain.clone();
                        c.remove(i);
                        sd.normalize(&me, &c)
                    })
                    .collect()
            };
            let parts: Vec<String> = chain.iter().map(|&s| subset_name(s)).collect();
            complex.cells.push(Cell { name: format!("{}[{}]", xcell.name, parts.join("<")), dim, faces });
        }
        debug_assert!(complex.validate().is_ok());
        let trunc = x.truncation_dim();
        sd.materialized = complex.materialize_indexed(trunc, true)?;
        sd.sset = Arc::new(sd.materialized.sset.clone());
        sd.complex = complex;
        Ok(sd)
    }

    pub fn complex(&self) -> &CellComplex {
        &self.complex
    }

    /// Normal form in `Sd X` of the pair `(x, chain)` where `x` is any simplex
    /// of `X` in normal form and `chain` is a weakly increasing chain of
    /// nonempty subsets of its vertices.
    pub fn normalize(&self, x: &SimplexRef, chain: &[u32]) -> SimplexRef {
        let top = *chain.last().expect("nonempty chain");
        let verts: Vec<usize> = (0..32).filter(|b| top >> b & 1 == 1).collect();
        let r = self.base.complex.restrict(x, &verts);
        let pushed: Vec<u32> = chain
            .iter()
            .map(|&s| {
                let mut out = 0u32;
                for (pos, &v) in verts.iter().enumerate() {
                    if s >> v & 1 == 1 {
                        out |= 1 << r.surj[pos];
                    }
                }
                out
            })
            .collect();
        let mut strict: Vec<u32> = Vec::new();
        let mut surj = Vec::with_capacity(pushed.len());
        for s in pushed {
            if strict.last() != Some(&s) {
                strict.push(s);
            }
            surj.push(strict.len() - 1);
        }
        let cell = self.lookup[&(r.cell, strict)];
        SimplexRef { cell, surj }
    }

    /// Index in `Sd X` of the simplex `(x, chain)`.
    pub fn simplex_of(&self, x: &SimplexRef, chain: &[u32]) -> usize {
        let r = self.normalize(x, chain);
        self.materialized.index[r.dim()][&r]
    }

    /// Normal form of a stored simplex of `Sd X`.
    pub fn normal_form(&self, n: usize, s: usize) -> &SimplexRef {
        &self.materialized.refs[n][s]
    }
}

/// `Sd X` for complete `X`.
pub fn subdivide(x: &FinSSet) -> Result<FinSSet> {
    Ok((*Subdivision::new(x)?.sset).clone())
}

/// `Sd f: Sd X → Sd Y` for `f: X → Y`, given both subdivisions.
pub fn subdivide_map(f: &SSetMap, sd_x: &Subdivision, sd_y: &Subdivision) -> Result<SSetMap> {
    let cell_images: Vec<usize> = sd_x
        .cells
        .iter()
        .map(|(x, chain)| {
            let (n, idx) = sd_x.base.cell_simplex[*x];
            let y = &sd_y.base.normal_form[n][f.apply(n, idx)];
            sd_y.simplex_of(y, chain)
        })
        .collect();
    let trunc = sd_x.sset.truncation_dim().min(sd_y.sset.truncation_dim());
    let levels = (0..=trunc)
        .map(|n| sd_x.materialized.refs[n].iter().map(|r| sd_y.sset.degenerate(cell_images[r.cell], &r.surj)).collect())
        .collect();
    SSetMap::new(sd_x.sset.clone(), sd_y.sset.clone(), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::simplicial::{boundary, enumerate_maps, horn, nerve, standard};

    #[test]
    fn chain_counts() {
        // strict chains ending at [n]: ordered set partitions style counts 1, 3, 13
        assert_eq!(chains_to_top(0).len(), 1);
        assert_eq!(chains_to_top(1).len(), 3);
        assert_eq!(chains_to_top(2).len(), 13);
    }

    #[test]
    fn small_subdivisions() {
        let p = subdivide(&standard(0)).unwrap();
        assert_eq!(p.count(0), 1);
        assert_eq!(p.nondegenerate_count(), 1);
        let s1 = subdivide(&standard(1)).unwrap();
        assert_eq!(s1.nondegenerate(0).len(), 3);
        assert_eq!(s1.nondegenerate(1).len(), 2);
        let b1 = subdivide(&boundary(1)).unwrap();
        assert_eq!(b1.nondegenerate_count(), 2);
        assert!(s1.validate().is_ok());
    }

    #[test]
    fn sd_simplex_matches_subset_poset_nerve() {
        // Sd Δ[2] ≅ N(P[2]): 7 vertices, 12 edges, 6 triangles
        let sd = subdivide(&standard(2)).unwrap();
        let names: Vec<String> = (1u32..8).map(subset_name).collect();
        let pairs: Vec<(usize, usize)> = (1u32..8)
            .flat_map(|a| (1u32..8).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && a & b == a)
            .map(|(a, b)| (a as usize - 1, b as usize - 1))
            .collect();
        let p = FinCat::poset(names, &pairs).unwrap();
        let n = nerve(&p, 2).unwrap();
        for k in 0..=2 {
            assert_eq!(sd.nondegenerate(k).len(), n.nondegenerate(k).len());
            assert_eq!(sd.count(k), n.count(k));
        }
    }

    #[test]
    fn second_subdivision_sizes() {
        let sd = Subdivision::new(&standard(1)).unwrap();
        let sd2 = subdivide(&sd.sset).unwrap();
        assert_eq!(sd2.nondegenerate(0).len(), 5);
        let sd2_tri = subdivide(&subdivide(&standard(2)).unwrap()).unwrap();
        assert_eq!(sd2_tri.nondegenerate(0).len(), 25);
    }

    #[test]
    fn subdivision_is_functorial() {
        let h = Arc::new(horn(2, 0));
        let s = Arc::new(standard(2));
        let sdh = Subdivision::new(&h).unwrap();
        let sds = Subdivision::new(&s).unwrap();
        let id = SSetMap::identity(s.clone());
        let sd_id = subdivide_map(&id, &sds, &sds).unwrap();
        assert_eq!(sd_id, SSetMap::identity(sds.sset.clone()));
        for f in enumerate_maps(&h, &s, 1000).unwrap() {
            let g = subdivide_map(&f, &sdh, &sds).unwrap();
            assert_eq!(g.is_injective(), f.is_injective());
        }
    }
}
