//! Finite groups acting on index categories: the Grothendieck construction
//! `G ⋊ I`, orbit diagrams `O_{k,H}`, fixed points and the corepresentation
//! of `X ↦ X(k)^H`.

mod group;
mod json;

use std::collections::HashMap;
use std::sync::Arc;

use crate::diagram::{hom_diagram, CatDiagram, CheckOutcome, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat, Mor, Morphism, Obj};

pub use group::{FinGroup, Subgroup};
pub use json::{RawGroup, RawGroupAction};

/// A strict action of a finite group on a finite category.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: Arc<FinGroup>,
    index: Arc<FinCat>,
    act: Vec<CatFunctor>,
}

impl GroupAction {
    /// Checks that `act[g]` are endofunctors with `act(e) = id` and `act(gh) = act(g) ∘ act(h)`.
    pub fn new(group: Arc<FinGroup>, index: Arc<FinCat>, act: Vec<CatFunctor>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::Malformed("one functor per group element is required".into()));
        }
        for (g, f) in act.iter().enumerate() {
            if **f.source() != *index || **f.target() != *index {
                return Err(Error::NotFunctor(format!("action of `{}` is not an endofunctor", group.name(g))));
            }
        }
        let id = CatFunctor::identity(index.clone());
        if act[group.identity()].mor_map() != id.mor_map() {
            return Err(Error::NotFunctor("the identity element acts non-trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if act[h].then(&act[g])?.mor_map() != act[group.mul(g, h)].mor_map() {
                    return Err(Error::NotFunctor(format!(
                        "act({0} · {1}) ≠ act({0}) ∘ act({1})",
                        group.name(g),
                        group.name(h)
                    )));
                }
            }
        }
        Ok(GroupAction { group, index, act })
    }

    pub fn trivial(group: Arc<FinGroup>, index: Arc<FinCat>) -> Self {
        let act = vec![CatFunctor::identity(index.clone()); group.order()];
        GroupAction { group, index, act }
    }

    /// `G` acting on the discrete category of its elements by left translation.
    pub fn translation(group: Arc<FinGroup>) -> Self {
        let index = Arc::new(FinCat::discrete(group.elements().iter().cloned()));
        let act = (0..group.order())
            .map(|g| {
                let map: Vec<usize> = (0..group.order()).map(|x| group.mul(g, x)).collect();
                CatFunctor::new(index.clone(), index.clone(), map.clone(), map).expect("translations are functors")
            })
            .collect();
        GroupAction { group, index, act }
    }

    /// An action on a discrete category given by permuting objects.
    pub fn on_discrete(group: Arc<FinGroup>, index: Arc<FinCat>, perm: impl Fn(usize, Obj) -> Obj) -> Result<Self> {
        if index.morphism_count() != index.object_count() {
            return Err(Error::Malformed("index category is not discrete".into()));
        }
        let act = (0..group.order())
            .map(|g| {
                let obj: Vec<Obj> = (0..index.object_count()).map(|o| perm(g, o)).collect();
                if obj.iter().any(|&o| o >= index.object_count()) {
                    return Err(Error::Malformed("permutation leaves the object set".into()));
                }
                let mor = obj.iter().map(|&o| index.identity(o)).collect();
                CatFunctor::new(index.clone(), index.clone(), obj, mor)
            })
            .collect::<Result<Vec<_>>>()?;
        GroupAction::new(group, index, act)
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    pub fn act(&self, g: usize) -> &CatFunctor {
        &self.act[g]
    }

    /// `G_i = {g : g·i = i}`.
    pub fn stabilizer(&self, i: Obj) -> Subgroup {
        let elements = (0..self.group.order()).filter(|&g| self.act[g].obj(i) == i).collect();
        Subgroup::new(self.group.clone(), elements).expect("stabilizers are subgroups")
    }

    fn require_stabilizing(&self, k: Obj, h: &Subgroup) -> Result<()> {
        if **h.group() != *self.group {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        if h.elements().iter().any(|&g| self.act[g].obj(k) != k) {
            return Err(Error::NotSubgroupOfStabilizer(self.index.object_name(k).to_string()));
        }
        Ok(())
    }
}

/// `G ⋊ I`: the objects of `I`, and morphisms `i → j` the pairs
/// `(g, α: g·i → j)` composed by `(g′, α′) ∘ (g, α) = (g′g, α′ ∘ g′·α)`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub cat: Arc<FinCat>,
    action: GroupAction,
    pairs: Vec<(usize, Mor)>,
    lookup: HashMap<(usize, Mor), Mor>,
}

impl Semidirect {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// The pair `(g, α)` behind a morphism.
    pub fn pair(&self, m: Mor) -> (usize, Mor) {
        self.pairs[m]
    }

    pub fn morphism_of(&self, g: usize, alpha: Mor) -> Option<Mor> {
        self.lookup.get(&(g, alpha)).copied()
    }

    /// `I → G ⋊ I`, `α ↦ (e, α)`.
    pub fn embedding(&self) -> CatFunctor {
        let e = self.action.group.identity();
        let index = &self.action.index;
        let mor = (0..index.morphism_count()).map(|a| self.lookup[&(e, a)]).collect();
        CatFunctor::new(index.clone(), self.cat.clone(), (0..index.object_count()).collect(), mor)
            .expect("the unit embedding is a functor")
    }

    /// The element `(h, id_k)` of `End(k)` for `h` in the stabilizer of `k`.
    pub fn stabilizer_element(&self, h: usize, k: Obj) -> Option<Mor> {
        self.morphism_of(h, self.action.index.identity(k))
    }
}

pub fn semidirect(a: &GroupAction) -> Result<Semidirect> {
    let (g, index) = (&a.group, &a.index);
    let mut pairs = Vec::new();
    let mut morphisms = Vec::new();
    for i in 0..index.object_count() {
        for x in 0..g.order() {
            for &alpha in index.homs_from(a.act[x].obj(i)) {
                pairs.push((x, alpha));
                morphisms.push(Morphism {
                    name: format!("({},{})", g.name(x), index.morphism(alpha).name),
                    src: i,
                    tgt: index.tgt(alpha),
                });
            }
        }
    }
    let lookup: HashMap<(usize, Mor), Mor> = pairs.iter().enumerate().map(|(m, &p)| (p, m)).collect();
    let identities = (0..index.object_count()).map(|i| lookup[&(g.identity(), index.identity(i))]).collect();
    let cat = FinCat::from_fn(index.objects().to_vec(), morphisms, identities, |second, first| {
        let ((x2, a2), (x1, a1)) = (pairs[second], pairs[first]);
        let moved = a.act[x2].mor(a1);
        let alpha = index.compose(a2, moved)?;
        lookup.get(&(g.mul(x2, x1), alpha)).copied()
    })?;
    Ok(Semidirect { cat: Arc::new(cat), action: a.clone(), pairs, lookup })
}

/// `O_{k,H} = (G ⋊ I)(k, -)/H`, with `H` acting on the right by
/// `(g, α) · h = (gh, α)`. Each class is named by its least member.
pub fn orbit_diagram(sd: &Semidirect, k: Obj, h: &Subgroup) -> Result<SetDiagram> {
    sd.action.require_stabilizing(k, h)?;
    let (cat, group) = (&sd.cat, &sd.action.group);
    // class representative of each morphism out of k
    let mut rep: HashMap<Mor, Mor> = HashMap::new();
    let mut values: Vec<Vec<String>> = Vec::with_capacity(cat.object_count());
    let mut position: HashMap<Mor, usize> = HashMap::new();
    for i in 0..cat.object_count() {
        let mut reps = Vec::new();
        for &m in cat.hom(k, i) {
            let (g, alpha) = sd.pairs[m];
            let least = h
                .elements()
                .iter()
                .map(|&x| sd.lookup[&(group.mul(g, x), alpha)])
                .min()
                .expect("subgroups are non-empty");
            rep.insert(m, least);
            if least == m {
                reps.push(m);
            }
        }
        reps.sort_unstable();
        for (p, &m) in reps.iter().enumerate() {
            position.insert(m, p);
        }
        values.push(reps.iter().map(|&m| format!("[{}]", cat.morphism(m).name)).collect());
    }
    let mut action = Vec::with_capacity(cat.morphism_count());
    for m in 0..cat.morphism_count() {
        let (i, j) = (cat.src(m), cat.tgt(m));
        let mut row = vec![usize::MAX; values[i].len()];
        for &x in cat.hom(k, i) {
            let image = position[&rep[&cat.comp(m, x)]];
            let slot = &mut row[position[&rep[&x]]];
            if *slot != usize::MAX && *slot != image {
                return Err(Error::NotFunctorial(format!(
                    "postcomposition with `{}` is not constant on classes at `{}`",
                    cat.morphism(m).name,
                    cat.object_name(j)
                )));
            }
            *slot = image;
        }
        action.push(row);
    }
    SetDiagram::new(cat.clone(), values, action)
}

/// `X(k)^H` together with its inclusion into `X(k)`.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub cat: Arc<FinCat>,
    pub inclusion: CatFunctor,
}

/// The subcategory of `X(k)` fixed by `X(h, id_k)` for every `h ∈ H`.
pub fn fixed_points(sd: &Semidirect, x: &CatDiagram, k: Obj, h: &Subgroup) -> Result<FixedPoints> {
    if **x.index() != *sd.cat {
        return Err(Error::IndexMismatch);
    }
    sd.action.require_stabilizing(k, h)?;
    let value = x.value(k);
    let actions: Vec<&CatFunctor> = h
        .elements()
        .iter()
        .map(|&g| x.action(sd.stabilizer_element(g, k).expect("stabilizing elements give endomorphisms")))
        .collect();
    let objects: Vec<Obj> = (0..value.object_count()).filter(|&o| actions.iter().all(|f| f.obj(o) == o)).collect();
    let morphisms: Vec<Mor> = (0..value.morphism_count()).filter(|&m| actions.iter().all(|f| f.mor(m) == m)).collect();
    let (cat, old) = value.subcategory(&objects, &morphisms)?;
    let cat = Arc::new(cat);
    let inclusion = CatFunctor::new(cat.clone(), value.clone(), objects, old)?;
    Ok(FixedPoints { cat, inclusion })
}

/// Evaluation at the class of `(e, id_k)` is an isomorphism
/// `𝓗om(O_{k,H}, X) → X(k)^H`, on objects and on morphisms.
pub fn corepresentation_check(
    sd: &Semidirect,
    k: Obj,
    h: &Subgroup,
    x: &CatDiagram,
    budget: usize,
) -> Result<CheckOutcome> {
    let orbit = orbit_diagram(sd, k, h)?;
    let hom = hom_diagram(&orbit, x, budget)?;
    let fixed = fixed_points(sd, x, k, h)?;
    let outcome = CheckOutcome { holds: true, detail: None, values: vec![hom.cat.clone(), fixed.cat.clone()] };

    let unit = sd.stabilizer_element(sd.action.group.identity(), k).expect("identities exist");
    let unit_class = orbit.value(k).iter().position(|n| *n == format!("[{}]", sd.cat.morphism(unit).name));
    let Some(slot) = unit_class.and_then(|e| hom.slots.iter().position(|&s| s == (k, e))) else {
        return Ok(outcome.fail("the class of the identity is missing from the orbit"));
    };
    let inverse = |map: &[usize], len: usize| {
        let mut inv = vec![None; len];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = Some(new);
        }
        inv
    };
    let fixed_obj = inverse(fixed.inclusion.obj_map(), x.value(k).object_count());
    let fixed_mor = inverse(fixed.inclusion.mor_map(), x.value(k).morphism_count());
    let obj_map: Option<Vec<Obj>> = hom.object_families.iter().map(|f| fixed_obj[f[slot]]).collect();
    let mor_map: Option<Vec<Mor>> = hom.morphism_families.iter().map(|f| fixed_mor[f[slot]]).collect();
    let (Some(obj_map), Some(mor_map)) = (obj_map, mor_map) else {
        return Ok(outcome.fail("an equivariant family evaluates outside the fixed points"));
    };
    match CatFunctor::new(hom.cat.clone(), fixed.cat.clone(), obj_map, mor_map) {
        Ok(f) if f.is_isomorphism() => Ok(outcome),
        Ok(_) => Ok(outcome.fail("evaluation is not bijective")),
        Err(e) => Ok(outcome.fail(format!("evaluation is not a functor: {e}"))),
    }
}

/// A diagram over `G ⋊ I` from values, translations `X(i) → X(g·i)` and the
/// `I`-action; `X(g, α) = X(α) ∘ t(g, i)`. Functoriality is checked.
pub fn equivariant_diagram(
    sd: &Semidirect,
    values: Vec<Arc<FinCat>>,
    translate: impl Fn(usize, Obj) -> CatFunctor,
    along: impl Fn(Mor) -> CatFunctor,
) -> Result<CatDiagram> {
    let action = (0..sd.cat.morphism_count())
        .map(|m| {
            let (g, alpha) = sd.pairs[m];
            translate(g, sd.cat.src(m)).then(&along(alpha))
        })
        .collect::<Result<Vec<_>>>()?;
    CatDiagram::new(sd.cat.clone(), values, action)
}

/// `X` over `G ⋊ 1` for `G` acting on `C` through `act[g]`.
pub fn diagram_from_group_action(sd: &Semidirect, c: Arc<FinCat>, act: &[CatFunctor]) -> Result<CatDiagram> {
    if sd.action.index.object_count() != 1 {
        return Err(Error::Malformed("index category must be terminal".into()));
    }
    equivariant_diagram(sd, vec![c.clone()], |g, _| act[g].clone(), |_| CatFunctor::identity(c.clone()))
}
