//! The fundamental category `c X` and the adjunction `c ⊣ N`.

use std::sync::Arc;

use super::nerve::Nerve;
use super::{FinSSet, SSetMap};
use crate::error::{Error, Result};
use crate::fincat::{present, CatFunctor, FinCat, Mor, Morphism, Presentation, Presented, Relation};

/// `c X` with the generator behind each edge of `X`.
#[derive(Clone, Debug)]
pub struct Categorified {
    pub cat: Arc<FinCat>,
    presented: Presented,
    /// Generator index of each 1-simplex, `None` for degenerate edges.
    edge_generator: Vec<Option<usize>>,
    generator_edge: Vec<usize>,
    edge_source: Vec<usize>,
}

impl Categorified {
    /// The morphism of `c X` represented by the 1-simplex `e`.
    pub fn edge_morphism(&self, e: usize) -> Mor {
        let src = self.edge_source[e];
        match self.edge_generator[e] {
            Some(g) => self.presented.generator(src, g),
            None => self.cat.identity(src),
        }
    }

    /// Edges of `X` spelling a representative path of `m`, first edge first.
    pub fn word(&self, m: Mor) -> Vec<usize> {
        self.presented.words[m].iter().map(|&g| self.generator_edge[g]).collect()
    }
}

/// `c X`: objects are vertices, morphisms are paths of edges modulo the
/// relations `d_1 σ = d_0 σ ∘ d_2 σ` and degenerate edges being identities.
///
/// Complete inputs are exact. Truncated inputs are accepted from dimension 2,
/// since `c` only sees the 2-skeleton.
pub fn categorify(x: &FinSSet, budget: usize) -> Result<Categorified> {
    if !x.is_complete() && x.truncation_dim() < 2 {
        return Err(Error::IncompleteInput(x.truncation_dim()));
    }
    let x = if x.truncation_dim() < 2 { x.extended(2)? } else { x.clone() };
    let degenerate = x.degenerate_flags(1);
    let mut generators = Vec::new();
    let mut edge_generator = vec![None; x.count(1)];
    let mut generator_edge = Vec::new();
    for e in 0..x.count(1) {
        if !degenerate[e] {
            edge_generator[e] = Some(generators.len());
            generator_edge.push(e);
            generators.push(Morphism { name: x.name(1, e).to_string(), src: x.face(1, 1, e), tgt: x.face(1, 0, e) });
        }
    }
    let word = |e: usize| -> Vec<usize> { edge_generator[e].into_iter().collect() };
    let mut relations = Vec::new();
    for s in x.nondegenerate(2) {
        let (d0, d1, d2) = (x.face(2, 0, s), x.face(2, 1, s), x.face(2, 2, s));
        let mut lhs = word(d2);
        lhs.extend(word(d0));
        relations.push(Relation { src: x.face(1, 1, d2), lhs, rhs: word(d1) });
    }
    let p = Presentation { objects: x.names(0).to_vec(), generators, relations };
    let presented = present(&p, budget)?;
    let edge_source = (0..x.count(1)).map(|e| x.face(1, 1, e)).collect();
    Ok(Categorified { cat: Arc::new(presented.cat.clone()), presented, edge_generator, generator_edge, edge_source })
}

/// `c f: c X → c Y`.
pub fn categorify_map(f: &SSetMap, cx: &Categorified, cy: &Categorified) -> Result<CatFunctor> {
    let obj_map = f.level(0).to_vec();
    let mor_map = (0..cx.cat.morphism_count())
        .map(|m| {
            cx.word(m).iter().fold(cy.cat.identity(obj_map[cx.cat.src(m)]), |acc, &e| {
                cy.cat.comp(cy.edge_morphism(f.apply(1, e)), acc)
            })
        })
        .collect();
    CatFunctor::new(cx.cat.clone(), cy.cat.clone(), obj_map, mor_map)
}

/// The unit `η_X: X → N(c X)`; `ncx` must be truncated at least as high as `X`.
pub fn unit(x: &Arc<FinSSet>, cx: &Categorified, ncx: &Nerve) -> Result<SSetMap> {
    let trunc = x.truncation_dim().min(ncx.sset.truncation_dim());
    let mut levels = vec![(0..x.count(0)).collect::<Vec<_>>()];
    for n in 1..=trunc {
        levels.push(
            (0..x.count(n))
                .map(|s| {
                    let string: Vec<Mor> = (1..=n).map(|j| cx.edge_morphism(x.restrict(n, s, &[j - 1, j]))).collect();
                    ncx.simplex(&string).expect("edges of a simplex compose")
                })
                .collect(),
        );
    }
    SSetMap::new(x.clone(), Arc::new(ncx.sset.clone()), levels)
}

/// The counit `ε_C: c(N C) → C`, where `cnc` categorifies the nerve `nc` of `c`.
pub fn counit(c: &Arc<FinCat>, nc: &Nerve, cnc: &Categorified) -> Result<CatFunctor> {
    let obj_map: Vec<usize> = (0..cnc.cat.object_count()).collect();
    let mor_map = (0..cnc.cat.morphism_count())
        .map(|m| cnc.word(m).iter().fold(c.identity(cnc.cat.src(m)), |acc, &e| c.comp(nc.string(1, e)[0], acc)))
        .collect();
    CatFunctor::new(cnc.cat.clone(), c.clone(), obj_map, mor_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::is_isomorphic;
    use crate::simplicial::nerve::nerve_indexed;
    use crate::simplicial::{boundary, horn, standard, subdivide};

    #[test]
    fn categorify_simplices_gives_chains() {
        for n in 0..=3 {
            let c = categorify(&standard(n), 1000).unwrap();
            assert!(is_isomorphic(&c.cat, &FinCat::chain(n)));
        }
    }

    #[test]
    fn boundary_of_triangle_is_free() {
        // ∂Δ[2]: the two paths 0→2 stay distinct
        let c = categorify(&boundary(2), 1000).unwrap();
        assert_eq!(c.cat.hom(0, 2).len(), 2);
    }

    #[test]
    fn counit_on_nerve_is_iso() {
        for c in [FinCat::chain(1), FinCat::cyclic_group(3), FinCat::chain(2)] {
            let c = Arc::new(c);
            let nc = nerve_indexed(&c, 2).unwrap();
            let cnc = categorify(&nc.sset, 1000).unwrap();
            assert!(counit(&c, &nc, &cnc).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn sd_squared_horn_is_poset() {
        let x = subdivide(&subdivide(&horn(2, 1)).unwrap()).unwrap();
        assert!(categorify(&x, 10_000).unwrap().cat.is_poset());
    }

    #[test]
    fn triangle_identities() {
        let x = Arc::new(horn(2, 0));
        let cx = categorify(&x, 1000).unwrap();
        let ncx = nerve_indexed(&cx.cat, 2).unwrap();
        let eta = unit(&x, &cx, &ncx).unwrap();
        let cncx = categorify(&ncx.sset, 1000).unwrap();
        let c_eta = categorify_map(&eta, &cx, &cncx).unwrap();
        let eps = counit(&cx.cat, &ncx, &cncx).unwrap();
        let composite = c_eta.then(&eps).unwrap();
        assert_eq!(composite, CatFunctor::identity(cx.cat.clone()));
    }
}
