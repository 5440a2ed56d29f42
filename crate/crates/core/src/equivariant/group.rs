//! Finite groups by multiplication table, and their subgroups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    elements: Vec<String>,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FinGroup {
    /// Validates closure, associativity, the unit and inverses exhaustively.
    pub fn new(elements: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::GroupAxiom("a group has at least one element".into()));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = elements.iter().find(|e| !seen.insert(e.as_str())) {
            return Err(Error::GroupAxiom(format!("element `{dup}` is listed twice")));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                if ab >= n {
                    return Err(Error::GroupAxiom(format!("{} · {} leaves the group", elements[a], elements[b])));
                }
                table.push(ab);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::GroupAxiom(format!(
                            "({0} · {1}) · {2} ≠ {0} · ({1} · {2})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or_else(|| Error::GroupAxiom(format!("`{}` has no inverse", elements[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinGroup { elements, table, inverse, identity })
    }

    pub fn trivial() -> Self {
        FinGroup::cyclic(1)
    }

    /// `Z/n` with elements `g0 .. g(n-1)`.
    pub fn cyclic(n: usize) -> Self {
        FinGroup::new((0..n).map(|i| format!("g{i}")).collect(), |a, b| (a + b) % n).expect("cyclic group")
    }

    /// The dihedral group of order `2n`: `r^k` is `k`, `s r^k` is `n + k`.
    pub fn dihedral(n: usize) -> Self {
        let names = (0..n).map(|k| format!("r{k}")).chain((0..n).map(|k| format!("sr{k}"))).collect();
        FinGroup::new(names, |a, b| {
            let (fa, ka) = (a >= n, a % n);
            let (fb, kb) = (b >= n, b % n);
            // s^fa r^ka s^fb r^kb = s^(fa+fb) r^(±ka + kb)
            let k = if fb { (n - ka + kb) % n } else { (ka + kb) % n };
            if fa != fb {
                n + k
            } else {
                k
            }
        })
        .expect("dihedral group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// The group as a one-object category.
    pub fn as_category(&self) -> FinCat {
        FinCat::group(self.elements.clone(), |a, b| self.mul(a, b), self.identity).expect("groups are categories")
    }
}

/// A subset of a group closed under products and inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: Arc<FinGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: Arc<FinGroup>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&g| g >= group.order()) {
            return Err(Error::NotSubgroup(format!("element index {bad} is out of range")));
        }
        if !elements.contains(&group.identity()) {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        for &a in &elements {
            if elements.binary_search(&group.inverse(a)).is_err() {
                return Err(Error::NotSubgroup(format!("missing the inverse of `{}`", group.name(a))));
            }
            for &b in &elements {
                if elements.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::NotSubgroup(format!("not closed: {} · {}", group.name(a), group.name(b))));
                }
            }
        }
        Ok(Subgroup { group, elements })
    }

    pub fn trivial(group: Arc<FinGroup>) -> Self {
        let e = group.identity();
        Subgroup { group, elements: vec![e] }
    }

    pub fn whole(group: Arc<FinGroup>) -> Self {
        let elements = (0..group.order()).collect();
        Subgroup { group, elements }
    }

    /// The subgroup generated by `gens`.
    pub fn generated(group: Arc<FinGroup>, gens: &[usize]) -> Result<Self> {
        let mut elements = vec![group.identity()];
        let mut i = 0;
        while i < elements.len() {
            for &g in gens {
                if g >= group.order() {
                    return Err(Error::NotSubgroup(format!("element index {g} is out of range")));
                }
                let next = group.mul(elements[i], g);
                if !elements.contains(&next) {
                    elements.push(next);
                }
            }
            i += 1;
        }
        Subgroup::new(group, elements)
    }

    /// Every subgroup, smallest first.
    pub fn all(group: &Arc<FinGroup>) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        let mut frontier = vec![Subgroup::trivial(group.clone())];
        while let Some(h) = frontier.pop() {
            if out.contains(&h) {
                continue;
            }
            for g in 0..group.order() {
                if !h.contains(g) {
                    let mut gens = h.elements.clone();
                    gens.push(g);
                    frontier
                        .push(Subgroup::generated(group.clone(), &gens).expect("generated subgroups are subgroups"));
                }
            }
            out.push(h);
        }
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        out
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_are_checked() {
        assert!(FinGroup::new(vec!["a".into(), "b".into()], |_, _| 0).is_err());
        assert!(FinGroup::new(vec!["a".into(), "b".into()], |a, b| (a + b) % 2).is_ok());
        assert!(FinGroup::new(vec![], |a, _| a).is_err());
    }

    #[test]
    fn dihedral_is_a_nonabelian_group() {
        let d3 = FinGroup::dihedral(3);
        assert_eq!(d3.order(), 6);
        let commute = (0..6).all(|a| (0..6).all(|b| d3.mul(a, b) == d3.mul(b, a)));
        assert!(!commute);
    }

    #[test]
    fn subgroup_lattices() {
        let z4 = Arc::new(FinGroup::cyclic(4));
        assert_eq!(Subgroup::all(&z4).len(), 3);
        let d3 = Arc::new(FinGroup::dihedral(3));
        // trivial, three reflections, rotations, whole
        assert_eq!(Subgroup::all(&d3).len(), 6);
        assert!(Subgroup::new(z4.clone(), vec![0, 1]).is_err());
        assert_eq!(Subgroup::generated(z4, &[2]).unwrap().elements(), &[0, 2]);
    }
}
