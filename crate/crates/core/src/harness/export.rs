//! Bit-stable JSON and Graphviz output for the workbench's objects.

use crate::diagram::{CatDiagram, SetDiagram};
use crate::equivariant::GroupAction;
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FinCat};
use crate::simplicial::FinSSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(Error::Malformed(format!("unknown format `{other}`"))),
        }
    }
}

/// Anything the workbench can write out.
#[derive(Clone, Copy, Debug)]
pub enum Exportable<'a> {
    Category(&'a FinCat),
    Functor(&'a CatFunctor),
    SSet(&'a FinSSet),
    SetDiagram(&'a SetDiagram),
    CatDiagram(&'a CatDiagram),
    Action(&'a GroupAction),
}

fn pretty<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices and nondegenerate edges of a simplicial set.
fn sset_dot(x: &FinSSet) -> String {
    let mut out = String::from("digraph {\n");
    for v in 0..x.count(0) {
        out.push_str(&format!("  {};\n", quote(x.name(0, v))));
    }
    if x.truncation_dim() >= 1 {
        for e in x.nondegenerate(1) {
            let (s, t) = (x.face(1, 1, e), x.face(1, 0, e));
            out.push_str(&format!(
                "  {} -> {} [label={}];\n",
                quote(x.name(0, s)),
                quote(x.name(0, t)),
                quote(x.name(1, e))
            ));
        }
    }
    out.push_str("}\n");
    out
}

/// Serializes `obj`. Graphviz output exists for categories (Hasse diagrams
/// of posets) and for the 1-skeleton of simplicial sets.
pub fn export(obj: Exportable<'_>, format: Format) -> Result<String> {
    match (obj, format) {
        (Exportable::Category(c), Format::Json) => Ok(c.to_json()),
        (Exportable::Category(c), Format::Dot) => Ok(c.to_dot()),
        (Exportable::Functor(f), Format::Json) => Ok(pretty(&f.to_raw())),
        (Exportable::SSet(x), Format::Json) => Ok(x.to_json()),
        (Exportable::SSet(x), Format::Dot) => Ok(sset_dot(x)),
        (Exportable::SetDiagram(d), Format::Json) => Ok(d.to_json()),
        (Exportable::CatDiagram(d), Format::Json) => Ok(d.to_json()),
        (Exportable::Action(a), Format::Json) => Ok(a.to_json()),
        _ => Err(Error::Malformed("no Graphviz form for this object".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::csd2;
    use crate::simplicial::standard;

    fn count(s: &str, pat: &str) -> usize {
        s.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn arrow_renders_as_one_edge() {
        let dot = export(Exportable::Category(&FinCat::chain(1)), Format::Dot).unwrap();
        assert_eq!(count(&dot, "->"), 1);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 2);
    }

    #[test]
    fn subdivided_interval_renders_its_hasse_diagram() {
        let p = csd2(&standard(1), 1 << 16).unwrap();
        let dot = export(Exportable::Category(&p), Format::Dot).unwrap();
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 5);
        assert_eq!(count(&dot, "->"), 4);
    }

    #[test]
    fn json_is_stable_and_round_trips() {
        let x = standard(2);
        let a = export(Exportable::SSet(&x), Format::Json).unwrap();
        assert_eq!(a, export(Exportable::SSet(&FinSSet::from_json(&a).unwrap()), Format::Json).unwrap());
        assert!(export(
            Exportable::SetDiagram(&SetDiagram::point(std::sync::Arc::new(FinCat::terminal()))),
            Format::Dot
        )
        .is_err());
    }
}
