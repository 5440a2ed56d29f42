use serde::{Deserialize, Serialize};

use super::FinSSet;
use crate::error::{Error, Result};

/// `H_k ≅ Z^betti ⊕ ⨁ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<u64> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut changed = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    changed = true;
                }
            }
            if !changed {
                // divisibility of the rest of the block by the pivot
                let bad =
                    (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the pivot
            let best_r = (t..rows).filter(|&i| a[i][t] != 0).min_by_key(|&i| a[i][t].unsigned_abs()).unwrap_or(t);
            a.swap(t, best_r);
            let best_c = (t..cols).filter(|&j| a[t][j] != 0).min_by_key(|&j| a[t][j].unsigned_abs()).unwrap_or(t);
            for row in a.iter_mut() {
                row.swap(t, best_c);
            }
        }
        diag.push(a[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

fn boundary_matrix(x: &FinSSet, k: usize, rows: &[usize], cols: &[usize]) -> Vec<Vec<i128>> {
    // rows: nondegenerate (k-1)-simplices, columns: nondegenerate k-simplices
    let mut pos = vec![usize::MAX; x.count(k - 1)];
    for (r, &y) in rows.iter().enumerate() {
        pos[y] = r;
    }
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (c, &s) in cols.iter().enumerate() {
        for i in 0..=k {
            let r = pos[x.face(k, i, s)];
            if r != usize::MAX {
                m[r][c] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Integral homology `H_0 … H_max_k` of the normalized chain complex.
pub fn homology(x: &FinSSet, max_k: usize) -> Result<Vec<HomologyGroup>> {
    if !x.is_complete() {
        return Err(Error::IncompleteInput(x.truncation_dim()));
    }
    let top = x.truncation_dim().max(max_k + 1);
    let x = x.extended(top)?;
    let cells: Vec<Vec<usize>> = (0..=max_k + 1).map(|n| x.nondegenerate(n)).collect();
    // invariant factors of ∂_k for k = 1 ..= max_k + 1
    let mut factors: Vec<Vec<u64>> = vec![vec![]];
    for k in 1..=max_k + 1 {
        factors.push(smith_diagonal(boundary_matrix(&x, k, &cells[k - 1], &cells[k])));
    }
    Ok((0..=max_k)
        .map(|k| {
            let rank_out = if k == 0 { 0 } else { factors[k].len() };
            let rank_in = factors[k + 1].len();
            HomologyGroup {
                betti: cells[k].len() - rank_out - rank_in,
                torsion: factors[k + 1].iter().copied().filter(|&d| d > 1).collect(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;
    use crate::simplicial::{boundary, nerve, standard, subdivide};

    fn point(max_k: usize) -> Vec<HomologyGroup> {
        (0..=max_k).map(|k| HomologyGroup { betti: usize::from(k == 0), torsion: vec![] }).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_diagonal(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_diagonal(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_diagonal(vec![vec![0, 0]]), Vec::<u64>::new());
    }

    #[test]
    fn simplices_are_points() {
        for n in 0..=3 {
            assert_eq!(homology(&standard(n), 3).unwrap(), point(3));
        }
    }

    #[test]
    fn circle_homology() {
        let h = homology(&boundary(2), 2).unwrap();
        assert_eq!(h[0].betti, 1);
        assert_eq!(h[1].betti, 1);
        assert!(h[2].is_zero());
        let sphere = homology(&boundary(3), 3).unwrap();
        assert_eq!(sphere.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn four_cycle_poset_is_a_circle() {
        let p = FinCat::poset(
            ["a", "b", "x", "y"].iter().map(|s| s.to_string()).collect(),
            &[(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        let h = homology(&nerve(&p, 1).unwrap(), 2).unwrap();
        assert_eq!(h.iter().map(|g| g.betti).collect::<Vec<_>>(), vec![1, 1, 0]);
    }

    #[test]
    fn subdivision_preserves_homology() {
        for x in [boundary(2), standard(2)] {
            assert_eq!(homology(&subdivide(&x).unwrap(), 2).unwrap(), homology(&x, 2).unwrap());
        }
    }
}
