use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use std::sync::Arc;

use super::{CatFunctor, FinCat, Morphism};
use crate::error::{Error, Result};

/// Serialized form of a finite category.
///
/// ```json
/// {"objects": ["0", "1"],
///  "morphisms": [{"name": "f", "src": "0", "tgt": "1"}, ...],
///  "identities": {"0": "id0", "1": "id1"},
///  "compose": [["g", "f", "gf"], ...]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

impl RawCategory {
    /// Resolves names and validates every category axiom.
    pub fn validate(&self) -> Result<FinCat> {
        let obj_index: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let mor_index: HashMap<&str, usize> =
            self.morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i)).collect();
        let obj = |n: &str| obj_index.get(n).copied().ok_or_else(|| Error::UnknownName(n.to_string()));
        let mor = |n: &str| mor_index.get(n).copied().ok_or_else(|| Error::UnknownName(n.to_string()));
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Ok(Morphism { name: m.name.clone(), src: obj(&m.src)?, tgt: obj(&m.tgt)? }))
            .collect::<Result<Vec<_>>>()?;
        let mut identities = vec![usize::MAX; self.objects.len()];
        for (o, m) in &self.identities {
            identities[obj(o)?] = mor(m)?;
        }
        if let Some(o) = identities.iter().position(|&m| m == usize::MAX) {
            return Err(Error::Malformed(format!("object `{}` has no identity", self.objects[o])));
        }
        let triples =
            self.compose.iter().map(|[g, f, gf]| Ok((mor(g)?, mor(f)?, mor(gf)?))).collect::<Result<Vec<_>>>()?;
        FinCat::from_triples(self.objects.clone(), morphisms, identities, &triples)
    }
}

impl FinCat {
    pub fn to_raw(&self) -> RawCategory {
        let name = |m: usize| self.morphism(m).name.clone();
        let mut compose = Vec::new();
        for g in 0..self.morphism_count() {
            for f in 0..self.morphism_count() {
                if let Some(gf) = self.compose(g, f) {
                    compose.push([name(g), name(f), name(gf)]);
                }
            }
        }
        RawCategory {
            objects: self.objects().to_vec(),
            morphisms: self
                .morphisms()
                .iter()
                .map(|m| RawMorphism {
                    name: m.name.clone(),
                    src: self.object_name(m.src).to_string(),
                    tgt: self.object_name(m.tgt).to_string(),
                })
                .collect(),
            identities: (0..self.object_count())
                .map(|o| (self.object_name(o).to_string(), name(self.identity(o))))
                .collect(),
            compose,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<FinCat> {
        let raw: RawCategory = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.validate()
    }

    /// Graphviz rendering: the Hasse diagram for posets, every non-identity
    /// morphism otherwise.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for o in self.objects() {
            out.push_str(&format!("  {};\n", quote(o)));
        }
        let poset = self.is_poset();
        for m in self.non_identities() {
            let (a, b) = (self.src(m), self.tgt(m));
            if poset {
                let covered = (0..self.object_count()).any(|c| c != a && c != b && self.le(a, c) && self.le(c, b));
                if !covered {
                    out.push_str(&format!("  {} -> {};\n", quote(self.object_name(a)), quote(self.object_name(b))));
                }
            } else {
                out.push_str(&format!(
                    "  {} -> {} [label={}];\n",
                    quote(self.object_name(a)),
                    quote(self.object_name(b)),
                    quote(&self.morphism(m).name)
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized functor: object and morphism maps by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFunctor {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl RawFunctor {
    /// Resolves names against `source` and `target` and checks functoriality.
    pub fn validate(&self, source: Arc<FinCat>, target: Arc<FinCat>) -> Result<CatFunctor> {
        let lookup = |map: &BTreeMap<String, String>, key: &str, find: &dyn Fn(&str) -> Option<usize>| {
            let v = map.get(key).ok_or_else(|| Error::UnknownName(key.to_string()))?;
            find(v).ok_or_else(|| Error::UnknownName(v.clone()))
        };
        let obj_map = source
            .objects()
            .iter()
            .map(|o| lookup(&self.objects, o, &|n| target.object_index(n)))
            .collect::<Result<Vec<_>>>()?;
        let mor_map = source
            .morphisms()
            .iter()
            .map(|m| lookup(&self.morphisms, &m.name, &|n| target.morphism_index(n)))
            .collect::<Result<Vec<_>>>()?;
        CatFunctor::new(source, target, obj_map, mor_map)
    }
}

impl CatFunctor {
    pub fn to_raw(&self) -> RawFunctor {
        let (s, t) = (self.source(), self.target());
        RawFunctor {
            objects: (0..s.object_count())
                .map(|o| (s.object_name(o).to_string(), t.object_name(self.obj(o)).to_string()))
                .collect(),
            morphisms: (0..s.morphism_count())
                .map(|m| (s.morphism(m).name.clone(), t.morphism(self.mor(m)).name.clone()))
                .collect(),
        }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
