//! JSON forms of groups and group actions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FinGroup, GroupAction};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, RawCategory, RawFunctor};

/// A group by element names and its multiplication table: `table[a][b] = a · b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroup {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

/// An action by one endofunctor per group element; the identity may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroupAction {
    pub group: RawGroup,
    pub index: RawCategory,
    #[serde(default)]
    pub act: BTreeMap<String, RawFunctor>,
}

impl RawGroup {
    pub fn validate(&self) -> Result<FinGroup> {
        let n = self.elements.len();
        if self.table.len() != n || self.table.iter().any(|row| row.len() != n) {
            return Err(Error::Malformed("multiplication table must be square over the elements".into()));
        }
        let pos: BTreeMap<&str, usize> = self.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter().map(|e| pos.get(e.as_str()).copied().ok_or_else(|| Error::UnknownName(e.clone()))).collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        FinGroup::new(self.elements.clone(), |a, b| table[a][b])
    }
}

impl FinGroup {
    pub fn to_raw(&self) -> RawGroup {
        let n = self.order();
        RawGroup {
            elements: self.elements().to_vec(),
            table: (0..n).map(|a| (0..n).map(|b| self.name(self.mul(a, b)).to_string()).collect()).collect(),
        }
    }
}

impl RawGroupAction {
    pub fn validate(&self) -> Result<GroupAction> {
        let group = Arc::new(self.group.validate()?);
        let index = Arc::new(self.index.validate()?);
        let act = (0..group.order())
            .map(|g| match self.act.get(group.name(g)) {
                Some(f) => f.validate(index.clone(), index.clone()),
                None if g == group.identity() => Ok(CatFunctor::identity(index.clone())),
                None => Err(Error::UnknownName(group.name(g).to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, index, act)
    }

    pub fn from_json(s: &str) -> Result<GroupAction> {
        let raw: RawGroupAction = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.validate()
    }
}

impl GroupAction {
    pub fn to_raw(&self) -> RawGroupAction {
        let g = self.group();
        RawGroupAction {
            group: g.to_raw(),
            index: self.index().to_raw(),
            act: (0..g.order()).map(|x| (g.name(x).to_string(), self.act(x).to_raw())).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("actions serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCat;

    #[test]
    fn round_trip() {
        let a = GroupAction::translation(Arc::new(FinGroup::dihedral(2)));
        let back = RawGroupAction::from_json(&a.to_json()).unwrap();
        assert_eq!(back.to_raw(), a.to_raw());
    }

    #[test]
    fn rejects_a_non_group_table() {
        let mut raw = FinGroup::cyclic(3).to_raw();
        raw.table[1][1] = "g0".into();
        assert!(raw.validate().is_err());
        let action = RawGroupAction { group: raw, index: FinCat::terminal().to_raw(), act: BTreeMap::new() };
        assert!(action.validate().is_err());
    }
}
