use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Cell, CellComplex, FinSSet, SimplexRef};
use crate::error::{Error, Result};

/// Serialized form: the nondegenerate simplices with their faces.
///
/// ```json
/// {"truncation_dim": 1, "complete": true,
///  "simplices": [{"name": "a", "dim": 0, "faces": []},
///                {"name": "e", "dim": 1, "faces": ["b", "a"]},
///                {"name": "l", "dim": 1, "faces": [{"simplex": "a", "degeneracy": [0]}, "a"]}]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSSet {
    pub truncation_dim: usize,
    pub complete: bool,
    pub simplices: Vec<RawSimplex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSimplex {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<RawFace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawFace {
    Simplex(String),
    Degenerate { simplex: String, degeneracy: Vec<usize> },
}

impl RawSSet {
    pub fn validate(&self) -> Result<FinSSet> {
        let mut index = HashMap::new();
        for (i, s) in self.simplices.iter().enumerate() {
            if index.insert(s.name.as_str(), i).is_some() {
                return Err(Error::Malformed(format!("duplicate simplex name `{}`", s.name)));
            }
        }
        let lookup = |n: &str| index.get(n).copied().ok_or_else(|| Error::UnknownName(n.to_string()));
        let cells = self
            .simplices
            .iter()
            .map(|s| {
                let faces = s
                    .faces
                    .iter()
                    .map(|f| match f {
                        RawFace::Simplex(n) => {
                            let c = lookup(n)?;
                            Ok(SimplexRef::nondegenerate(c, self.simplices[c].dim))
                        }
                        RawFace::Degenerate { simplex, degeneracy } => {
                            Ok(SimplexRef { cell: lookup(simplex)?, surj: degeneracy.clone() })
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                if faces.iter().any(|f| f.surj.is_empty()) {
                    return Err(Error::Malformed(format!("empty degeneracy in `{}`", s.name)));
                }
                Ok(Cell { name: s.name.clone(), dim: s.dim, faces })
            })
            .collect::<Result<Vec<_>>>()?;
        FinSSet::from_cells(&CellComplex { cells }, self.truncation_dim, self.complete)
    }
}

impl FinSSet {
    pub fn to_raw(&self) -> RawSSet {
        let sk = self.skeleton();
        let cx = &sk.complex;
        let simplices = cx
            .cells
            .iter()
            .map(|c| RawSimplex {
                name: c.name.clone(),
                dim: c.dim,
                faces: c
                    .faces
                    .iter()
                    .map(|f| {
                        let name = cx.cells[f.cell].name.clone();
                        if f.is_nondegenerate() {
                            RawFace::Simplex(name)
                        } else {
                            RawFace::Degenerate { simplex: name, degeneracy: f.surj.clone() }
                        }
                    })
                    .collect(),
            })
            .collect();
        RawSSet { truncation_dim: self.truncation_dim(), complete: self.is_complete(), simplices }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<FinSSet> {
        let raw: RawSSet = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.validate()
    }
}
