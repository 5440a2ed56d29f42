//! Categories presented by generators and relations.
//!
//! The quotient of the free category is computed by coset enumeration
//! (Haselgrove–Leech–Trotter style): morphisms are classes of paths, the
//! generators act on them by postcomposition, and every relation is imposed
//! at every class. Coincidences are merged by union-find. The enumeration is
//! bounded; exceeding the bound is reported, never looped on.

use std::collections::HashSet;

use super::{fresh_name, identity_name, FinCat, Mor, Morphism, Obj};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Generators and relations for a finite category.
///
/// Words are paths of generator indices in the order they are traversed
/// (first generator applied first). A relation identifies two paths with the
/// same endpoints; `src` pins the start object so empty words are allowed.
#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub generators: Vec<Morphism>,
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub src: Obj,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

/// A presented category with a representative word for every morphism.
#[derive(Clone, Debug)]
pub struct Presented {
    pub cat: FinCat,
    pub words: Vec<Vec<usize>>,
    table: Vec<Vec<u32>>,
    gen_slot: Vec<usize>,
}

impl Presented {
    /// The morphism denoted by the path `word` starting at `src`.
    pub fn eval(&self, src: Obj, word: &[usize]) -> Mor {
        let mut x = self.cat.identity(src);
        for &g in word {
            x = self.table[x][self.gen_slot[g]] as usize;
        }
        x
    }

    /// The morphism denoted by a single generator.
    pub fn generator(&self, src: Obj, g: usize) -> Mor {
        self.eval(src, &[g])
    }
}

impl Presentation {
    fn path_end(&self, src: Obj, word: &[usize]) -> Result<Obj> {
        let mut at = src;
        for &g in word {
            let gen = self.generators.get(g).ok_or_else(|| Error::Malformed(format!("unknown generator {g}")))?;
            if gen.src != at {
                return Err(Error::Malformed(format!("word is not a path at generator {}", gen.name)));
            }
            at = gen.tgt;
        }
        Ok(at)
    }
}

struct Engine {
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    word: Vec<Vec<usize>>,
    parent: Vec<usize>,
    table: Vec<Vec<u32>>,
    live: usize,
}

impl Engine {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn new_class(&mut self, src: Obj, tgt: Obj, word: Vec<usize>, slots: usize) -> usize {
        let id = self.src.len();
        self.src.push(src);
        self.tgt.push(tgt);
        self.word.push(word);
        self.parent.push(id);
        self.table.push(vec![NONE; slots]);
        self.live += 1;
        id
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.live -= 1;
            let dropped = std::mem::take(&mut self.table[drop]);
            for (slot, &y) in dropped.iter().enumerate() {
                if y == NONE {
                    continue;
                }
                let z = self.table[keep][slot];
                if z == NONE {
                    self.table[keep][slot] = y;
                } else {
                    queue.push((y as usize, z as usize));
                }
            }
        }
    }
}

/// Computes the category presented by `p`, refusing to hold more than
/// `budget` live morphism classes.
pub fn present(p: &Presentation, budget: usize) -> Result<Presented> {
    let nobj = p.objects.len();
    let mut gens_from = vec![Vec::new(); nobj];
    let mut gen_slot = vec![0; p.generators.len()];
    for (g, gen) in p.generators.iter().enumerate() {
        if gen.src >= nobj || gen.tgt >= nobj {
            return Err(Error::Malformed(format!("generator {} has an unknown endpoint", gen.name)));
        }
        gen_slot[g] = gens_from[gen.src].len();
        gens_from[gen.src].push(g);
    }
    let mut rels_at = vec![Vec::new(); nobj];
    for r in &p.relations {
        let a = p.path_end(r.src, &r.lhs)?;
        let b = p.path_end(r.src, &r.rhs)?;
        if a != b {
            return Err(Error::Malformed("relation sides end at different objects".into()));
        }
        if r.lhs != r.rhs {
            rels_at[r.src].push(r);
        }
    }

    let mut e = Engine { src: vec![], tgt: vec![], word: vec![], parent: vec![], table: vec![], live: 0 };
    for o in 0..nobj {
        e.new_class(o, o, vec![], gens_from[o].len());
    }
    let hard_limit = budget.saturating_mul(16).max(1024);
    let mut p_idx = 0;
    while p_idx < e.src.len() {
        if e.find(p_idx) != p_idx {
            p_idx += 1;
            continue;
        }
        let x = p_idx;
        for r in &rels_at[e.tgt[x]] {
            let a = trace_define(&mut e, &p.generators, &gens_from, &gen_slot, x, &r.lhs);
            let b = trace_define(&mut e, &p.generators, &gens_from, &gen_slot, x, &r.rhs);
            e.coincidence(a, b);
            if e.find(x) != x {
                break;
            }
        }
        if e.find(x) == x {
            for (slot, &g) in gens_from[e.tgt[x]].clone().iter().enumerate() {
                if e.table[x][slot] == NONE {
                    let mut w = e.word[x].clone();
                    w.push(g);
                    let gt = p.generators[g].tgt;
                    let y = e.new_class(e.src[x], gt, w, gens_from[gt].len());
                    e.table[x][slot] = y as u32;
                }
            }
        }
        if e.live > budget || e.src.len() > hard_limit {
            return Err(Error::ClosureBudgetExceeded(budget));
        }
        p_idx += 1;
    }

    // collect live classes
    let mut index = vec![usize::MAX; e.src.len()];
    let mut live = Vec::new();
    for c in 0..e.src.len() {
        if e.find(c) == c {
            index[c] = live.len();
            live.push(c);
        }
    }
    let mut table = Vec::with_capacity(live.len());
    for &c in &live {
        let row: Vec<u32> = (0..e.table[c].len())
            .map(|slot| {
                let y = e.table[c][slot] as usize;
                index[e.find(y)] as u32
            })
            .collect();
        table.push(row);
    }
    let mut taken = HashSet::new();
    let mut identities = vec![0; nobj];
    let morphisms: Vec<Morphism> = live
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let name = if e.word[c].is_empty() {
                identities[e.src[c]] = i;
                identity_name(&p.objects[e.src[c]])
            } else {
                let parts: Vec<&str> = e.word[c].iter().map(|&g| p.generators[g].name.as_str()).collect();
                parts.join(";")
            };
            Morphism { name: fresh_name(name, &mut taken), src: e.src[c], tgt: e.tgt[c] }
        })
        .collect();
    let words: Vec<Vec<usize>> = live.iter().map(|&c| e.word[c].clone()).collect();
    let apply = |word: &[usize], mut x: usize| {
        for &g in word {
            x = table[x][gen_slot[g]] as usize;
        }
        x
    };
    let cat = FinCat::from_fn(p.objects.clone(), morphisms, identities, |g, f| Some(apply(&words[g], f)))?;
    Ok(Presented { cat, words, table, gen_slot })
}

fn trace_define(
    e: &mut Engine,
    generators: &[Morphism],
    gens_from: &[Vec<usize>],
    gen_slot: &[usize],
    start: usize,
    word: &[usize],
) -> usize {
    let mut x = e.find(start);
    for &g in word {
        let slot = gen_slot[g];
        let y = e.table[x][slot];
        x = if y == NONE {
            let mut w = e.word[x].clone();
            w.push(g);
            let gt = generators[g].tgt;
            let y = e.new_class(e.src[x], gt, w, gens_from[gt].len());
            e.table[x][slot] = y as u32;
            y
        } else {
            e.find(y as usize)
        };
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::is_isomorphic;

    fn gen(name: &str, src: Obj, tgt: Obj) -> Morphism {
        Morphism { name: name.into(), src, tgt }
    }

    #[test]
    fn free_arrow() {
        let p =
            Presentation { objects: vec!["a".into(), "b".into()], generators: vec![gen("f", 0, 1)], relations: vec![] };
        let c = present(&p, 100).unwrap();
        assert!(is_isomorphic(&c.cat, &FinCat::chain(1)));
    }

    #[test]
    fn commuting_triangle_is_chain() {
        let p = Presentation {
            objects: vec!["0".into(), "1".into(), "2".into()],
            generators: vec![gen("a", 0, 1), gen("b", 1, 2), gen("c", 0, 2)],
            relations: vec![Relation { src: 0, lhs: vec![0, 1], rhs: vec![2] }],
        };
        let c = present(&p, 100).unwrap();
        assert_eq!(c.cat.morphism_count(), 6);
        assert!(is_isomorphic(&c.cat, &FinCat::chain(2)));
    }

    #[test]
    fn cyclic_group_from_loop() {
        let p = Presentation {
            objects: vec!["*".into()],
            generators: vec![gen("g", 0, 0)],
            relations: vec![Relation { src: 0, lhs: vec![0, 0, 0], rhs: vec![] }],
        };
        let c = present(&p, 100).unwrap();
        assert!(is_isomorphic(&c.cat, &FinCat::cyclic_group(3)));
    }

    #[test]
    fn idempotent_loop() {
        let p = Presentation {
            objects: vec!["*".into()],
            generators: vec![gen("e", 0, 0)],
            relations: vec![Relation { src: 0, lhs: vec![0, 0], rhs: vec![0] }],
        };
        let c = present(&p, 100).unwrap();
        assert_eq!(c.cat.morphism_count(), 2);
    }

    #[test]
    fn free_loop_exceeds_budget() {
        let p = Presentation { objects: vec!["*".into()], generators: vec![gen("g", 0, 0)], relations: vec![] };
        assert_eq!(present(&p, 50).unwrap_err(), Error::ClosureBudgetExceeded(50));
    }

    #[test]
    fn symmetric_group_s3() {
        // ⟨s, t | s² = t² = 1, (st)³ = 1⟩ has order 6
        let p = Presentation {
            objects: vec!["*".into()],
            generators: vec![gen("s", 0, 0), gen("t", 0, 0)],
            relations: vec![
                Relation { src: 0, lhs: vec![0, 0], rhs: vec![] },
                Relation { src: 0, lhs: vec![1, 1], rhs: vec![] },
                Relation { src: 0, lhs: vec![0, 1, 0, 1, 0, 1], rhs: vec![] },
            ],
        };
        assert_eq!(present(&p, 1000).unwrap().cat.morphism_count(), 6);
    }
}
