//! Nondegenerate-cell presentations of simplicial sets.
//!
//! Every simplex is uniquely a degeneracy of a nondegenerate simplex
//! (Eilenberg–Zilber). A [`CellComplex`] lists the nondegenerate cells with
//! their faces, each face given as a [`SimplexRef`]: a cell together with a
//! monotone surjection `[m] → [dim cell]` encoding the degeneracy operator.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{FinSSet, Level};
use crate::error::{Error, Result};

/// A simplex written as `cell · surj`, where `surj` has length `dim + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexRef {
    pub cell: usize,
    pub surj: Vec<usize>,
}

impl SimplexRef {
    pub fn nondegenerate(cell: usize, dim: usize) -> Self {
        SimplexRef { cell, surj: (0..=dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.surj.windows(2).all(|w| w[0] != w[1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<SimplexRef>,
}

/// A materialized complex with the normal form of every simplex.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub sset: FinSSet,
    pub refs: Vec<Vec<SimplexRef>>,
    pub index: Vec<HashMap<SimplexRef, usize>>,
}

/// Nondegenerate cells and their faces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
}

impl CellComplex {
    pub fn max_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    /// `d_i` of a simplex given in normal form.
    pub fn face(&self, r: &SimplexRef, i: usize) -> SimplexRef {
        let p = self.cells[r.cell].dim;
        let tau: Vec<usize> = r.surj.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
        match missing_value(&tau, p) {
            None => SimplexRef { cell: r.cell, surj: tau },
            Some(j) => {
                let f = &self.cells[r.cell].faces[j];
                let surj = tau.iter().map(|&v| f.surj[if v > j { v - 1 } else { v }]).collect();
                SimplexRef { cell: f.cell, surj }
            }
        }
    }

    /// `s_i` of a simplex given in normal form.
    pub fn degeneracy(r: &SimplexRef, i: usize) -> SimplexRef {
        let mut surj = r.surj.clone();
        surj.insert(i, r.surj[i]);
        SimplexRef { cell: r.cell, surj }
    }

    /// Restriction of `r` along the injection whose image is `vertices`
    /// (strictly increasing positions in `0..=dim r`).
    pub fn restrict(&self, r: &SimplexRef, vertices: &[usize]) -> SimplexRef {
        let mut out = r.clone();
        for j in (0..=r.dim()).rev() {
            if !vertices.contains(&j) {
                out = self.face(&out, j);
            }
        }
        out
    }

    /// Checks face shapes and the identities `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        for (c, cell) in self.cells.iter().enumerate() {
            let expected = if cell.dim == 0 { 0 } else { cell.dim + 1 };
            if cell.faces.len() != expected {
                return Err(Error::SimplicialIdentity(format!("cell {} has {} faces", cell.name, cell.faces.len())));
            }
            for f in &cell.faces {
                if f.cell >= self.cells.len() || f.surj.len() != cell.dim {
                    return Err(Error::SimplicialIdentity(format!("bad face reference in cell {}", cell.name)));
                }
                let q = self.cells[f.cell].dim;
                let monotone = f.surj.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
                if f.surj[0] != 0 || *f.surj.last().unwrap() != q || !monotone {
                    return Err(Error::SimplicialIdentity(format!(
                        "face of {} is not a surjection onto a cell",
                        cell.name
                    )));
                }
            }
            let me = SimplexRef::nondegenerate(c, cell.dim);
            for j in 0..=cell.dim {
                for i in 0..j {
                    if cell.dim < 2 {
                        continue;
                    }
                    let a = self.face(&self.face(&me, j), i);
                    let b = self.face(&self.face(&me, i), j - 1);
                    if a != b {
                        return Err(Error::SimplicialIdentity(format!(
                            "d{i} d{j} ≠ d{} d{i} on cell {}",
                            j - 1,
                            cell.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Materializes every simplex of dimension `≤ trunc`.
    pub fn materialize(&self, trunc: usize, complete: bool) -> Result<FinSSet> {
        Ok(self.materialize_indexed(trunc, complete)?.sset)
    }

    /// Like [`CellComplex::materialize`], keeping the normal form of each simplex.
    pub fn materialize_indexed(&self, trunc: usize, complete: bool) -> Result<Materialized> {
        let max_dim = self.max_dim().unwrap_or(0);
        if complete && max_dim > trunc {
            return Err(Error::Malformed(format!("cells of dimension {max_dim} above the truncation {trunc}")));
        }
        let mut refs: Vec<Vec<SimplexRef>> = Vec::with_capacity(trunc + 1);
        let mut index: Vec<HashMap<SimplexRef, usize>> = Vec::with_capacity(trunc + 1);
        for m in 0..=trunc {
            let mut level = Vec::new();
            for (c, cell) in self.cells.iter().enumerate() {
                if cell.dim <= m {
                    for surj in surjections(m, cell.dim) {
                        level.push(SimplexRef { cell: c, surj });
                    }
                }
            }
            index.push(level.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect());
            refs.push(level);
        }
        let mut levels = Vec::with_capacity(trunc + 1);
        for m in 0..=trunc {
            let names = refs[m].iter().map(|r| self.ref_name(r)).collect();
            let faces = if m == 0 {
                vec![]
            } else {
                (0..=m).map(|i| refs[m].iter().map(|r| index[m - 1][&self.face(r, i)]).collect()).collect()
            };
            let degens = if m == trunc {
                vec![]
            } else {
                (0..=m)
                    .map(|i| refs[m].iter().map(|r| index[m + 1][&CellComplex::degeneracy(r, i)]).collect())
                    .collect()
            };
            levels.push(Level { names, faces, degens });
        }
        Ok(Materialized { sset: FinSSet { levels, complete }, refs, index })
    }

    pub fn ref_name(&self, r: &SimplexRef) -> String {
        let name = &self.cells[r.cell].name;
        if r.is_nondegenerate() {
            name.clone()
        } else {
            let s: Vec<String> = r.surj.iter().map(|v| v.to_string()).collect();
            format!("s[{}]({})", s.join(""), name)
        }
    }
}

fn missing_value(tau: &[usize], p: usize) -> Option<usize> {
    let mut seen = vec![false; p + 1];
    for &v in tau {
        seen[v] = true;
    }
    seen.iter().position(|&s| !s)
}

/// Monotone surjections `[m] → [p]` in lexicographic order.
pub fn surjections(m: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > m {
        return out;
    }
    let mut cur = vec![0];
    fn go(m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == p {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        // positions left to fill after this one
        let after = m - cur.len();
        if p - last <= after {
            cur.push(last);
            go(m, p, cur, out);
            cur.pop();
        }
        if last < p {
            cur.push(last + 1);
            go(m, p, cur, out);
            cur.pop();
        }
    }
    go(m, p, &mut cur, &mut out);
    out
}
