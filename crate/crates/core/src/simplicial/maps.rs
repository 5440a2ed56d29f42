use std::collections::HashMap;
use std::sync::Arc;

use super::{FinSSet, Skeleton};
use crate::error::{Error, Result};

/// A simplicial map, stored level by level up to the smaller truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetMap {
    source: Arc<FinSSet>,
    target: Arc<FinSSet>,
    levels: Vec<Vec<usize>>,
}

impl SSetMap {
    /// Checks that `levels` commute with every face and degeneracy.
    pub fn new(source: Arc<FinSSet>, target: Arc<FinSSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        let trunc = source.truncation_dim().min(target.truncation_dim());
        if levels.len() != trunc + 1 {
            return Err(Error::Malformed(format!("expected {} levels, got {}", trunc + 1, levels.len())));
        }
        for (n, lv) in levels.iter().enumerate() {
            if lv.len() != source.count(n) || lv.iter().any(|&y| y >= target.count(n)) {
                return Err(Error::Malformed(format!("level {n} is not a map")));
            }
        }
        for n in 0..=trunc {
            for x in 0..source.count(n) {
                let fx = levels[n][x];
                if n > 0 {
                    for i in 0..=n {
                        if levels[n - 1][source.face(n, i, x)] != target.face(n, i, fx) {
                            return Err(Error::SimplicialIdentity(format!(
                                "map does not commute with d{i} at {}",
                                source.name(n, x)
                            )));
                        }
                    }
                }
                if n < trunc {
                    for i in 0..=n {
                        if levels[n + 1][source.degeneracy(n, i, x)] != target.degeneracy(n, i, fx) {
                            return Err(Error::SimplicialIdentity(format!(
                                "map does not commute with s{i} at {}",
                                source.name(n, x)
                            )));
                        }
                    }
                }
            }
        }
        Ok(SSetMap { source, target, levels })
    }

    /// Extends an assignment on nondegenerate cells (in skeleton order) to a map.
    pub fn from_cells(source: Arc<FinSSet>, target: Arc<FinSSet>, images: &[usize]) -> Result<Self> {
        let sk = source.skeleton();
        Self::from_cells_with(&sk, source, target, images)
    }

    pub(crate) fn from_cells_with(
        sk: &Skeleton,
        source: Arc<FinSSet>,
        target: Arc<FinSSet>,
        images: &[usize],
    ) -> Result<Self> {
        if images.len() != sk.complex.cells.len() {
            return Err(Error::Malformed("one image per nondegenerate simplex is required".into()));
        }
        let trunc = source.truncation_dim().min(target.truncation_dim());
        for (c, cell) in sk.complex.cells.iter().enumerate() {
            if cell.dim <= trunc && images[c] >= target.count(cell.dim) {
                return Err(Error::Malformed(format!("image of {} is out of range", cell.name)));
            }
        }
        let levels = (0..=trunc)
            .map(|n| sk.normal_form[n].iter().map(|r| target.degenerate(images[r.cell], &r.surj)).collect())
            .collect();
        Self::new(source, target, levels)
    }

    pub fn identity(x: Arc<FinSSet>) -> Self {
        let levels = (0..=x.truncation_dim()).map(|n| (0..x.count(n)).collect()).collect();
        SSetMap { source: x.clone(), target: x, levels }
    }

    pub fn source(&self) -> &Arc<FinSSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinSSet> {
        &self.target
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SSetMap) -> Result<SSetMap> {
        if *self.target != *other.source {
            return Err(Error::Malformed("maps are not composable".into()));
        }
        let trunc = self.levels.len().min(other.levels.len());
        let levels = (0..trunc).map(|n| self.levels[n].iter().map(|&y| other.levels[n][y]).collect()).collect();
        SSetMap::new(self.source.clone(), other.target.clone(), levels)
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().enumerate().all(|(n, lv)| {
            let mut seen = vec![false; self.target.count(n)];
            lv.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    /// Images of the source's nondegenerate cells, in skeleton order.
    pub fn cell_images(&self) -> Vec<usize> {
        self.source.skeleton().cell_simplex.iter().map(|&(n, x)| self.levels[n][x]).collect()
    }
}

/// Cell images of every simplicial map from a complete `source`, by
/// backtracking over nondegenerate cells in dimension order.
pub(crate) fn enumerate_cell_images(sk: &Skeleton, target: &FinSSet, budget: usize) -> Result<Vec<Vec<usize>>> {
    let max_dim = sk.complex.max_dim().unwrap_or(0);
    if sk.complex.cells.is_empty() {
        return Ok(vec![vec![]]);
    }
    if max_dim > target.truncation_dim() {
        return Err(Error::Malformed(format!(
            "target is truncated at {} below the source dimension {max_dim}",
            target.truncation_dim()
        )));
    }
    let indices: Vec<HashMap<Vec<usize>, Vec<usize>>> =
        (0..=max_dim).map(|n| if n == 0 { HashMap::new() } else { target.face_index(n) }).collect();
    let all_vertices: Vec<usize> = (0..target.count(0)).collect();
    let mut out = Vec::new();
    let mut images = vec![usize::MAX; sk.complex.cells.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        c: usize,
        sk: &Skeleton,
        target: &FinSSet,
        indices: &[HashMap<Vec<usize>, Vec<usize>>],
        all_vertices: &[usize],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        if c == sk.complex.cells.len() {
            out.push(images.clone());
            if out.len() > budget {
                return Err(Error::SizeLimitExceeded { required: out.len() as u128, budget: budget as u128 });
            }
            return Ok(());
        }
        let cell = &sk.complex.cells[c];
        let candidates: &[usize] = if cell.dim == 0 {
            all_vertices
        } else {
            let want: Vec<usize> = cell.faces.iter().map(|r| target.degenerate(images[r.cell], &r.surj)).collect();
            match indices[cell.dim].get(&want) {
                Some(v) => v,
                None => &[],
            }
        };
        for &y in candidates {
            images[c] = y;
            go(c + 1, sk, target, indices, all_vertices, images, out, budget)?;
        }
        images[c] = usize::MAX;
        Ok(())
    }
    go(0, sk, target, &indices, &all_vertices, &mut images, &mut out, budget)?;
    Ok(out)
}

/// Every simplicial map from a complete `source` to `target`.
///
/// A complete target truncated below the source is first re-materialized at
/// the source's truncation, and the maps land in that copy.
pub fn enumerate_maps(source: &Arc<FinSSet>, target: &Arc<FinSSet>, budget: usize) -> Result<Vec<SSetMap>> {
    if !source.is_complete() {
        return Err(Error::IncompleteInput(source.truncation_dim()));
    }
    let target = if target.is_complete() && target.truncation_dim() < source.truncation_dim() {
        &Arc::new(target.extended(source.truncation_dim())?)
    } else {
        target
    };
    let sk = source.skeleton();
    enumerate_cell_images(&sk, target, budget)?
        .into_iter()
        .map(|imgs| SSetMap::from_cells_with(&sk, source.clone(), target.clone(), &imgs))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary, horn, standard};

    #[test]
    fn maps_between_simplices_are_monotone_functions() {
        // Δ[1] → Δ[2]: monotone maps [1] → [2], six of them
        let s1 = Arc::new(standard(1));
        let s2 = Arc::new(standard(2));
        assert_eq!(enumerate_maps(&s1, &s2, 1000).unwrap().len(), 6);
        // Δ[2] → Δ[1]: four monotone maps [2] → [1]
        assert_eq!(enumerate_maps(&s2, &s1, 1000).unwrap().len(), 4);
    }

    #[test]
    fn horn_into_simplex() {
        // maps Λ^1[2] → Δ[1] are pairs of composable edges: monotone triples
        let h = Arc::new(horn(2, 1));
        let s1 = Arc::new(standard(1));
        assert_eq!(enumerate_maps(&h, &s1, 1000).unwrap().len(), 4);
    }

    #[test]
    fn boundary_inclusion_is_injective() {
        let b = Arc::new(boundary(2));
        let s = Arc::new(standard(2));
        let maps = enumerate_maps(&b, &s, 10_000).unwrap();
        assert!(maps.iter().filter(|m| m.is_injective()).count() >= 1);
        let id = SSetMap::identity(s.clone());
        for m in &maps {
            assert_eq!(&m.then(&id).unwrap(), m);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s1 = Arc::new(standard(1));
        let s2 = Arc::new(standard(2));
        assert!(matches!(enumerate_maps(&s1, &s2, 3), Err(Error::SizeLimitExceeded { .. })));
    }
}
