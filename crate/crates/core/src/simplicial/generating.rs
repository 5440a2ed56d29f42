use std::sync::Arc;

use super::{boundary, categorify, categorify_map, horn, standard, subdivide_map, FinSSet, SSetMap, Subdivision};
use crate::error::{Error, Result};
use crate::fincat::CatFunctor;

/// Largest dimension accepted by [`generating_sets`].
pub const MAX_GENERATING_DIM: usize = 3;

/// Boundary and horn inclusions, and their images under `c Sd²`.
#[derive(Clone, Debug)]
pub struct GeneratingSets {
    pub i_sset: Vec<SSetMap>,
    pub j_sset: Vec<SSetMap>,
    pub i_cat: Vec<CatFunctor>,
    pub j_cat: Vec<CatFunctor>,
    /// `"∂Δ[n]→Δ[n]"` per entry of `i_*`.
    pub i_labels: Vec<String>,
    /// `"Λ^k[n]→Δ[n]"` per entry of `j_*`.
    pub j_labels: Vec<String>,
}

/// The inclusion of a subcomplex built by [`super::ordered_complex`] with the
/// same vertex names, matched by cell name.
pub fn name_inclusion(sub: &Arc<FinSSet>, whole: &Arc<FinSSet>) -> Result<SSetMap> {
    let sk = sub.skeleton();
    let images = sk
        .cell_simplex
        .iter()
        .map(|&(n, x)| whole.index_of(n, sub.name(n, x)).ok_or_else(|| Error::UnknownName(sub.name(n, x).to_string())))
        .collect::<Result<Vec<_>>>()?;
    SSetMap::from_cells(sub.clone(), whole.clone(), &images)
}

/// `c Sd² f`.
pub fn csd2_map(f: &SSetMap, budget: usize) -> Result<CatFunctor> {
    let sd_a = Subdivision::new(f.source())?;
    let sd_b = Subdivision::new(f.target())?;
    let sd_f = subdivide_map(f, &sd_a, &sd_b)?;
    let sd2_a = Subdivision::new(&sd_a.sset)?;
    let sd2_b = Subdivision::new(&sd_b.sset)?;
    let sd2_f = subdivide_map(&sd_f, &sd2_a, &sd2_b)?;
    let ca = categorify(&sd2_a.sset, budget)?;
    let cb = categorify(&sd2_b.sset, budget)?;
    categorify_map(&sd2_f, &ca, &cb)
}

pub fn generating_sets(max_n: usize, budget: usize) -> Result<GeneratingSets> {
    if max_n > MAX_GENERATING_DIM {
        return Err(Error::SizeLimitExceeded { required: max_n as u128, budget: MAX_GENERATING_DIM as u128 });
    }
    let mut g = GeneratingSets {
        i_sset: vec![],
        j_sset: vec![],
        i_cat: vec![],
        j_cat: vec![],
        i_labels: vec![],
        j_labels: vec![],
    };
    for n in 0..=max_n {
        let whole = Arc::new(standard(n));
        let i = name_inclusion(&Arc::new(boundary(n)), &whole)?;
        g.i_cat.push(csd2_map(&i, budget)?);
        g.i_sset.push(i);
        g.i_labels.push(format!("∂Δ[{n}]→Δ[{n}]"));
        if n >= 1 {
            for k in 0..=n {
                let j = name_inclusion(&Arc::new(horn(n, k)), &whole)?;
                g.j_cat.push(csd2_map(&j, budget)?);
                g.j_sset.push(j);
                g.j_labels.push(format!("Λ^{k}[{n}]→Δ[{n}]"));
            }
        }
    }
    Ok(g)
}
