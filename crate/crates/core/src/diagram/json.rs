//! JSON forms of Set- and Cat-valued diagrams, keyed by names.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CatDiagram, DiagramMap, SetDiagram, Tower};
use crate::error::{Error, Result};
use crate::fincat::{FinCat, RawCategory, RawFunctor};

/// A Set-valued diagram: elements per index object, and for each index
/// morphism a map of element names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSetDiagram {
    pub index: RawCategory,
    pub values: BTreeMap<String, Vec<String>>,
    /// Identity actions may be omitted.
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

/// A Cat-valued diagram: a category per index object and a functor per
/// index morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCatDiagram {
    pub index: RawCategory,
    pub values: BTreeMap<String, RawCategory>,
    /// Identity actions may be omitted.
    #[serde(default)]
    pub actions: BTreeMap<String, RawFunctor>,
}

fn unknown(name: &str) -> Error {
    Error::UnknownName(name.to_string())
}

impl RawSetDiagram {
    pub fn validate(&self) -> Result<SetDiagram> {
        let index = Arc::new(self.index.validate()?);
        let values = index
            .objects()
            .iter()
            .map(|o| self.values.get(o).cloned().ok_or_else(|| unknown(o)))
            .collect::<Result<Vec<_>>>()?;
        let mut action = Vec::with_capacity(index.morphism_count());
        for m in 0..index.morphism_count() {
            let (s, t) = (index.src(m), index.tgt(m));
            let name = &index.morphism(m).name;
            let map = match self.actions.get(name) {
                Some(map) => map,
                None if index.identity(s) == m => {
                    action.push((0..values[s].len()).collect());
                    continue;
                }
                None => return Err(unknown(name)),
            };
            let row = values[s]
                .iter()
                .map(|e| {
                    let y = map.get(e).ok_or_else(|| unknown(e))?;
                    values[t].iter().position(|v| v == y).ok_or_else(|| unknown(y))
                })
                .collect::<Result<Vec<_>>>()?;
            action.push(row);
        }
        SetDiagram::new(index, values, action)
    }

    pub fn from_json(s: &str) -> Result<SetDiagram> {
        let raw: RawSetDiagram = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.validate()
    }
}

impl SetDiagram {
    pub fn to_raw(&self) -> RawSetDiagram {
        let index = self.index();
        let values =
            (0..index.object_count()).map(|i| (index.object_name(i).to_string(), self.value(i).to_vec())).collect();
        let actions = (0..index.morphism_count())
            .map(|m| {
                let (s, t) = (index.src(m), index.tgt(m));
                let map = self
                    .value(s)
                    .iter()
                    .enumerate()
                    .map(|(e, n)| (n.clone(), self.value(t)[self.act(m, e)].clone()))
                    .collect();
                (index.morphism(m).name.clone(), map)
            })
            .collect();
        RawSetDiagram { index: index.to_raw(), values, actions }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("diagrams serialize")
    }
}

impl RawCatDiagram {
    pub fn validate(&self) -> Result<CatDiagram> {
        let index = Arc::new(self.index.validate()?);
        let values = index
            .objects()
            .iter()
            .map(|o| self.values.get(o).ok_or_else(|| unknown(o))?.validate().map(Arc::new))
            .collect::<Result<Vec<Arc<FinCat>>>>()?;
        let action = (0..index.morphism_count())
            .map(|m| {
                let (s, t) = (index.src(m), index.tgt(m));
                let name = &index.morphism(m).name;
                match self.actions.get(name) {
                    Some(f) => f.validate(values[s].clone(), values[t].clone()),
                    None if index.identity(s) == m => Ok(crate::fincat::CatFunctor::identity(values[s].clone())),
                    None => Err(unknown(name)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        CatDiagram::new(index, values, action)
    }

    pub fn from_json(s: &str) -> Result<CatDiagram> {
        let raw: RawCatDiagram = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.validate()
    }
}

impl CatDiagram {
    pub fn to_raw(&self) -> RawCatDiagram {
        let index = self.index();
        RawCatDiagram {
            index: index.to_raw(),
            values: (0..index.object_count())
                .map(|i| (index.object_name(i).to_string(), self.value(i).to_raw()))
                .collect(),
            actions: (0..index.morphism_count())
                .map(|m| (index.morphism(m).name.clone(), self.action(m).to_raw()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("diagrams serialize")
    }
}

/// A map of Cat-valued diagrams: one functor per index object, by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDiagramMap {
    pub source: RawCatDiagram,
    pub target: RawCatDiagram,
    pub components: BTreeMap<String, RawFunctor>,
}

impl RawDiagramMap {
    pub fn validate(&self) -> Result<DiagramMap> {
        let source = Arc::new(self.source.validate()?);
        let target = Arc::new(self.target.validate()?);
        let components = source
            .index()
            .objects()
            .iter()
            .enumerate()
            .map(|(i, o)| {
                self.components
                    .get(o)
                    .ok_or_else(|| unknown(o))?
                    .validate(source.value(i).clone(), target.value(i).clone())
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(source, target, components)
    }
}

impl DiagramMap {
    pub fn to_raw(&self) -> RawDiagramMap {
        let index = self.source.index();
        RawDiagramMap {
            source: self.source.to_raw(),
            target: self.target.to_raw(),
            components: (0..index.object_count())
                .map(|i| (index.object_name(i).to_string(), self.components[i].to_raw()))
                .collect(),
        }
    }
}

/// A tower by its stages and, for each link, one functor per index object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTower {
    pub stages: Vec<RawCatDiagram>,
    pub links: Vec<BTreeMap<String, RawFunctor>>,
}

impl RawTower {
    pub fn validate(&self) -> Result<Tower> {
        let stages = self.stages.iter().map(|s| s.validate().map(Arc::new)).collect::<Result<Vec<_>>>()?;
        if self.links.len() + 1 != stages.len() {
            return Err(Error::Malformed("a tower of n stages has n - 1 links".into()));
        }
        let links = self
            .links
            .iter()
            .enumerate()
            .map(|(a, link)| {
                let (s, t) = (&stages[a], &stages[a + 1]);
                let components = s
                    .index()
                    .objects()
                    .iter()
                    .enumerate()
                    .map(|(i, o)| {
                        link.get(o).ok_or_else(|| unknown(o))?.validate(s.value(i).clone(), t.value(i).clone())
                    })
                    .collect::<Result<Vec<_>>>()?;
                DiagramMap::new(s.clone(), t.clone(), components)
            })
            .collect::<Result<Vec<_>>>()?;
        Tower::new(stages, links)
    }
}

impl Tower {
    pub fn to_raw(&self) -> RawTower {
        RawTower {
            stages: self.stages.iter().map(|s| s.to_raw()).collect(),
            links: self.links.iter().map(|l| l.to_raw().components).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_diagram_round_trip() {
        let g = Arc::new(FinCat::cyclic_group(2));
        let free = SetDiagram::representable(g, 0);
        assert_eq!(RawSetDiagram::from_json(&free.to_json()).unwrap(), free);
    }

    #[test]
    fn cat_diagram_round_trip() {
        let g = Arc::new(FinCat::cyclic_group(3));
        let x = CatDiagram::constant(g, Arc::new(FinCat::chain(2)));
        let back = RawCatDiagram::from_json(&x.to_json()).unwrap();
        assert_eq!(back.to_raw(), x.to_raw());
    }

    #[test]
    fn maps_and_towers_round_trip() {
        let g = Arc::new(FinCat::cyclic_group(2));
        let x = Arc::new(CatDiagram::constant(g, Arc::new(FinCat::chain(1))));
        let id = DiagramMap::identity(x.clone());
        let back = id.to_raw().validate().unwrap();
        assert_eq!(back.to_raw(), id.to_raw());
        let t = Tower::new(vec![x.clone(), x], vec![id]).unwrap();
        assert_eq!(t.to_raw().validate().unwrap().to_raw(), t.to_raw());
    }

    #[test]
    fn identities_may_be_omitted_but_others_not() {
        let arrow = FinCat::chain(1);
        let (a, b) = (arrow.object_name(0).to_string(), arrow.object_name(1).to_string());
        let f = arrow.morphism(arrow.hom(0, 1)[0]).name.clone();
        let mut raw = RawSetDiagram {
            index: arrow.to_raw(),
            values: [(a, vec!["x".into()]), (b, vec!["y".into(), "z".into()])].into_iter().collect(),
            actions: [(f.clone(), [("x".to_string(), "z".to_string())].into_iter().collect())].into_iter().collect(),
        };
        let d = raw.validate().unwrap();
        assert_eq!(d.act(d.index().morphism_index(&f).unwrap(), 0), 1);
        raw.actions.clear();
        assert!(raw.validate().is_err());
    }
}
