//! Truncated finite simplicial sets and the functors N, c, Sd and Ex.
//!
//! A [`FinSSet`] stores every simplex up to its truncation dimension together
//! with all face and degeneracy maps between the stored levels. A *complete*
//! set has no nondegenerate simplices above the truncation, so it can be
//! re-materialized at any higher dimension from its cell presentation.

mod categorify;
mod cells;
mod ex;
mod generating;
mod homology;
mod json;
mod maps;
mod nerve;
mod standard;
mod subdivide;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use categorify::{categorify, categorify_map, counit, unit, Categorified};
pub use cells::Materialized;
pub use cells::{surjections, Cell, CellComplex, SimplexRef};
pub use ex::{ex, transpose_from_sd, transpose_to_ex, Ex};
pub use generating::{csd2_map, name_inclusion, MAX_GENERATING_DIM};
pub use generating::{generating_sets, GeneratingSets};
pub use homology::{homology, smith_diagonal, HomologyGroup};
pub use json::{RawFace, RawSSet, RawSimplex};
pub use maps::{enumerate_maps, SSetMap};
pub use nerve::{nerve, nerve_functor, nerve_indexed, nerve_of_poset_objects, Nerve};
pub use standard::{boundary, horn, ordered_complex, standard, MAX_STANDARD_DIM};
pub use subdivide::{subdivide, subdivide_map, Subdivision};

/// Default cap on materialized simplices per level and on enumerations.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub(crate) names: Vec<String>,
    /// `faces[i][x] = d_i x`; empty at level 0.
    pub(crate) faces: Vec<Vec<usize>>,
    /// `degens[i][x] = s_i x`; empty at the top level.
    pub(crate) degens: Vec<Vec<usize>>,
}

/// A finite simplicial set truncated at some dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSSet {
    levels: Vec<Level>,
    complete: bool,
}

/// The Eilenberg–Zilber presentation of a [`FinSSet`]: its nondegenerate
/// cells and the normal form of every stored simplex.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub complex: CellComplex,
    /// `(dimension, index)` of each cell.
    pub cell_simplex: Vec<(usize, usize)>,
    /// Normal form of each stored simplex, per level.
    pub normal_form: Vec<Vec<SimplexRef>>,
}

impl FinSSet {
    pub(crate) fn from_levels(levels: Vec<Level>, complete: bool) -> Result<Self> {
        let s = FinSSet { levels, complete };
        s.validate()?;
        Ok(s)
    }

    /// The empty simplicial set.
    pub fn empty() -> Self {
        FinSSet { levels: vec![Level { names: vec![], faces: vec![], degens: vec![] }], complete: true }
    }

    pub fn truncation_dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn count(&self, n: usize) -> usize {
        self.levels[n].names.len()
    }

    pub fn name(&self, n: usize, x: usize) -> &str {
        &self.levels[n].names[x]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.levels[n].names
    }

    pub fn index_of(&self, n: usize, name: &str) -> Option<usize> {
        self.levels.get(n)?.names.iter().position(|s| s == name)
    }

    /// `d_i x` for `x` in level `n ≥ 1`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].faces[i][x]
    }

    /// `s_i x` for `x` in level `n < truncation_dim`.
    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].degens[i][x]
    }

    pub fn faces_of(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.face(n, i, x)).collect()
    }

    /// Checks every simplicial identity on the stored levels.
    pub fn validate(&self) -> Result<()> {
        let top = self.truncation_dim();
        for (n, lv) in self.levels.iter().enumerate() {
            let cnt = lv.names.len();
            let want_faces = if n == 0 { 0 } else { n + 1 };
            let want_degens = if n == top { 0 } else { n + 1 };
            if lv.faces.len() != want_faces || lv.degens.len() != want_degens {
                return Err(Error::Malformed(format!("level {n} has the wrong number of structure maps")));
            }
            for (i, f) in lv.faces.iter().enumerate() {
                if f.len() != cnt || f.iter().any(|&y| y >= self.count(n - 1)) {
                    return Err(Error::Malformed(format!("face d{i} at level {n} is not a map")));
                }
            }
            for (i, s) in lv.degens.iter().enumerate() {
                if s.len() != cnt || s.iter().any(|&y| y >= self.count(n + 1)) {
                    return Err(Error::Malformed(format!("degeneracy s{i} at level {n} is not a map")));
                }
            }
        }
        let fail = |what: String| Err(Error::SimplicialIdentity(what));
        for n in 2..=top {
            for x in 0..self.count(n) {
                for j in 0..=n {
                    for i in 0..j {
                        if self.face(n - 1, i, self.face(n, j, x)) != self.face(n - 1, j - 1, self.face(n, i, x)) {
                            return fail(format!("d{i} d{j} ≠ d{} d{i} at {}", j - 1, self.name(n, x)));
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for x in 0..self.count(n) {
                for j in 0..=n {
                    let sx = self.degeneracy(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i, sx);
                        let rhs = if i == j || i == j + 1 {
                            x
                        } else if i < j {
                            self.degeneracy(n - 1, j - 1, self.face(n, i, x))
                        } else {
                            self.degeneracy(n - 1, j, self.face(n, i - 1, x))
                        };
                        if lhs != rhs {
                            return fail(format!("d{i} s{j} relation fails at {}", self.name(n, x)));
                        }
                    }
                    if n + 1 < top {
                        for i in 0..=j {
                            let a = self.degeneracy(n + 1, i, sx);
                            let b = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x));
                            if a != b {
                                return fail(format!("s{i} s{j} ≠ s{} s{i} at {}", j + 1, self.name(n, x)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `x` in level `n` is not in the image of any degeneracy.
    pub fn degenerate_flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; self.count(n)];
        if n > 0 {
            for s in &self.levels[n - 1].degens {
                for &y in s {
                    flags[y] = true;
                }
            }
        }
        flags
    }

    /// Nondegenerate simplices of dimension `n`; none above the truncation.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        if n > self.truncation_dim() {
            return vec![];
        }
        let flags = self.degenerate_flags(n);
        (0..self.count(n)).filter(|&x| !flags[x]).collect()
    }

    /// Number of nondegenerate simplices across all stored levels.
    pub fn nondegenerate_count(&self) -> usize {
        (0..=self.truncation_dim()).map(|n| self.nondegenerate(n).len()).sum()
    }

    /// Highest dimension carrying a nondegenerate simplex.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.truncation_dim()).rev().find(|&n| !self.nondegenerate(n).is_empty())
    }

    /// Eilenberg–Zilber normal forms of every stored simplex.
    pub fn skeleton(&self) -> Skeleton {
        let top = self.truncation_dim();
        let mut complex = CellComplex::default();
        let mut cell_simplex = Vec::new();
        let mut normal_form: Vec<Vec<SimplexRef>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            // one degeneracy witness per degenerate simplex
            let mut witness: Vec<Option<(usize, usize)>> = vec![None; self.count(n)];
            if n > 0 {
                for (i, s) in self.levels[n - 1].degens.iter().enumerate() {
                    for (z, &y) in s.iter().enumerate() {
                        witness[y].get_or_insert((i, z));
                    }
                }
            }
            let mut level = Vec::with_capacity(self.count(n));
            for x in 0..self.count(n) {
                let r = match witness[x] {
                    Some((i, z)) => CellComplex::degeneracy(&normal_form[n - 1][z], i),
                    None => {
                        let faces = if n == 0 {
                            vec![]
                        } else {
                            (0..=n).map(|i| normal_form[n - 1][self.face(n, i, x)].clone()).collect()
                        };
                        complex.cells.push(Cell { name: self.name(n, x).to_string(), dim: n, faces });
                        cell_simplex.push((n, x));
                        SimplexRef::nondegenerate(complex.cells.len() - 1, n)
                    }
                };
                level.push(r);
            }
            normal_form.push(level);
        }
        Skeleton { complex, cell_simplex, normal_form }
    }

    /// The same complete set materialized up to dimension `trunc`.
    pub fn extended(&self, trunc: usize) -> Result<FinSSet> {
        if !self.complete {
            return Err(Error::IncompleteInput(self.truncation_dim()));
        }
        if trunc == self.truncation_dim() {
            return Ok(self.clone());
        }
        let sk = self.skeleton();
        let max = sk.complex.max_dim().unwrap_or(0);
        if trunc < max {
            return Err(Error::Malformed(format!("cannot truncate below dimension {max}")));
        }
        sk.complex.materialize(trunc, true)
    }

    /// Materializes a cell presentation, validating it first.
    pub fn from_cells(complex: &CellComplex, trunc: usize, complete: bool) -> Result<FinSSet> {
        complex.validate()?;
        complex.materialize(trunc, complete)
    }

    /// Applies the degeneracy operator `surj: [m] → [p]` to `y ∈ X_p`.
    pub fn degenerate(&self, y: usize, surj: &[usize]) -> usize {
        match surj.windows(2).position(|w| w[0] == w[1]) {
            None => y,
            Some(k) => {
                let mut shorter = surj.to_vec();
                shorter.remove(k + 1);
                let z = self.degenerate(y, &shorter);
                self.degeneracy(shorter.len() - 1, k, z)
            }
        }
    }

    /// Restriction of `x ∈ X_n` to the face spanned by the given increasing vertex positions.
    pub fn restrict(&self, n: usize, x: usize, vertices: &[usize]) -> usize {
        let mut cur = x;
        let mut dim = n;
        for j in (0..=n).rev() {
            if !vertices.contains(&j) {
                cur = self.face(dim, j, cur);
                dim -= 1;
            }
        }
        cur
    }

    /// The vertices of `x ∈ X_n`, in order.
    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|j| self.restrict(n, x, &[j])).collect()
    }

    /// Index from face tuples to simplices at level `n ≥ 1`.
    pub(crate) fn face_index(&self, n: usize) -> HashMap<Vec<usize>, Vec<usize>> {
        let mut idx: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for x in 0..self.count(n) {
            idx.entry(self.faces_of(n, x)).or_default().push(x);
        }
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_set_is_valid() {
        let e = FinSSet::empty();
        assert!(e.validate().is_ok());
        assert_eq!(e.nondegenerate_count(), 0);
        assert_eq!(e.extended(3).unwrap().count(3), 0);
    }

    #[test]
    fn standard_simplex_levels() {
        // Δ[2]_m has C(m+3, 2) simplices: monotone maps [m] → [2]
        let d2 = standard(2).extended(4).unwrap();
        assert_eq!(d2.count(0), 3);
        assert_eq!(d2.count(1), 6);
        assert_eq!(d2.count(2), 10);
        assert_eq!(d2.count(4), 21);
        assert!(d2.validate().is_ok());
        assert_eq!(d2.nondegenerate_count(), 7);
    }

    #[test]
    fn skeleton_round_trip() {
        let h = horn(3, 1);
        let sk = h.skeleton();
        let again = sk.complex.materialize(h.truncation_dim(), true).unwrap();
        assert_eq!(again, h);
    }

    #[test]
    fn degenerate_and_vertices() {
        let d1 = standard(1).extended(3).unwrap();
        let edge = d1.nondegenerate(1)[0];
        let x = d1.degenerate(edge, &[0, 0, 1, 1]);
        assert_eq!(d1.vertices(3, x), vec![0, 0, 1, 1]);
        assert_eq!(d1.restrict(3, x, &[1, 2]), edge);
    }

    #[test]
    fn broken_identity_is_rejected() {
        let mut bad = standard(1);
        bad.levels[1].faces[0][0] = 0;
        // d0 of the degenerate edge at vertex 0 must be 0; swap to break d s relations
        bad.levels[1].faces[0].swap(0, 1);
        assert!(matches!(bad.validate(), Err(Error::SimplicialIdentity(_))));
    }
}
