use std::collections::{BTreeSet, HashMap};

use super::{Cell, CellComplex, FinSSet, SimplexRef};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`standard`], [`boundary`] and [`horn`].
pub const MAX_STANDARD_DIM: usize = 8;

/// The simplicial set of an ordered simplicial complex on `vertex_count`
/// vertices. Each simplex is a strictly increasing vertex list; the family
/// must be closed under taking faces.
pub fn ordered_complex(vertex_names: &[String], simplices: &[Vec<usize>]) -> Result<FinSSet> {
    let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for s in simplices {
        if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= vertex_names.len()) {
            return Err(Error::Malformed(format!("{s:?} is not an increasing vertex list")));
        }
        all.insert((s.len() - 1, s.clone()));
    }
    let index: HashMap<Vec<usize>, usize> = all.iter().enumerate().map(|(i, (_, s))| (s.clone(), i)).collect();
    let mut complex = CellComplex::default();
    for (dim, s) in &all {
        let mut faces = Vec::new();
        if *dim > 0 {
            for i in 0..=*dim {
                let mut f = s.clone();
                f.remove(i);
                let cell = *index.get(&f).ok_or_else(|| Error::Malformed(format!("face {f:?} of {s:?} is missing")))?;
                faces.push(SimplexRef::nondegenerate(cell, dim - 1));
            }
        }
        let name = if *dim == 0 {
            vertex_names[s[0]].clone()
        } else {
            let parts: Vec<&str> = s.iter().map(|&v| vertex_names[v].as_str()).collect();
            let sep = if parts.iter().all(|p| p.chars().count() == 1) { "" } else { "," };
            parts.join(sep)
        };
        complex.cells.push(Cell { name, dim: *dim, faces });
    }
    let trunc = complex.max_dim().unwrap_or(0);
    complex.materialize(trunc, true)
}

fn subsets(n: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    (1u32..(1 << (n + 1)))
        .map(|mask| (0..=n).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| keep(s))
        .collect()
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..=n).map(|v| v.to_string()).collect()
}

fn check_dim(n: usize) {
    assert!(n <= MAX_STANDARD_DIM, "dimension {n} exceeds the bound {MAX_STANDARD_DIM}");
}

/// `Δ[n]`.
pub fn standard(n: usize) -> FinSSet {
    check_dim(n);
    ordered_complex(&vertex_names(n), &subsets(n, |_| true)).expect("simplex is a complex")
}

/// `∂Δ[n]`: every proper face of `Δ[n]`.
pub fn boundary(n: usize) -> FinSSet {
    check_dim(n);
    ordered_complex(&vertex_names(n), &subsets(n, |s| s.len() <= n)).expect("boundary is a complex")
}

/// `Λ^k[n]`: the boundary without the face opposite vertex `k`.
pub fn horn(n: usize, k: usize) -> FinSSet {
    check_dim(n);
    assert!(k <= n, "horn index {k} exceeds dimension {n}");
    let opposite: Vec<usize> = (0..=n).filter(|&v| v != k).collect();
    ordered_complex(&vertex_names(n), &subsets(n, |s| s.len() <= n && s != opposite.as_slice()))
        .expect("horn is a complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(standard(0).count(0), 1);
        let b1 = boundary(1);
        assert_eq!(b1.count(0), 2);
        assert!(b1.nondegenerate(1).is_empty());
        let h = horn(2, 1);
        assert_eq!(h.count(0), 3);
        let edges: Vec<&str> = h.nondegenerate(1).iter().map(|&e| h.name(1, e)).collect();
        assert_eq!(edges, vec!["01", "12"]);
    }

    #[test]
    fn boundary_of_zero_simplex_is_empty() {
        assert_eq!(boundary(0).count(0), 0);
    }

    #[test]
    fn missing_face_is_rejected() {
        let names = vertex_names(2);
        assert!(ordered_complex(&names, &[vec![0], vec![0, 1]]).is_err());
    }
}
