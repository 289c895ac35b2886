//! Embedded resolution: principalization of the ideal of `Z` while
//! tracking its strict transform, stopped at the stage where the strict
//! transform coincides with the iterated maximal contact.

use super::engine::run;
use super::invariant::chain_indices;
use super::{ActionKind, BlowupTree, Config, InvEntry, MarkedIdeal, Mode};
use crate::error::{Error, Result};
use crate::toroidal_chart::{restrict_to_hypersurface, Chart};
use crate::Poly;

/// A chart of the transformed `Z`.
#[derive(Clone, Debug)]
pub struct ResolvedChart {
    /// Node of the tree whose ambient chart contains this chart.
    pub node: String,
    /// The maximal contact chain cutting out `Z` on that chart.
    pub chain: Vec<String>,
    pub chart: Chart,
}

#[derive(Clone, Debug)]
pub struct EmbeddedResolution {
    /// Number of blowups preceding the stage where `Z` is blown up.
    pub stage: usize,
    pub charts: Vec<ResolvedChart>,
    pub tree: BlowupTree,
}

/// Resolves `Z = V(I_Z)` of codimension `d` on `chart`.
pub fn resolve_embedded(chart: &Chart, ideal: &[Poly], d: usize, config: &Config) -> Result<EmbeddedResolution> {
    let tree = run(Mode::Principalize, chart, &MarkedIdeal::new(ideal.to_vec(), 1), Some(ideal), config)?;
    let one = InvEntry::Finite(crate::Rational::from_integer(1.into()));
    let mut found = Vec::new();
    for n in &tree.nodes {
        let Some(action) = &n.action else { continue };
        let Some(inv) = &n.invariant else { continue };
        let pattern = inv.entries.len() == d + 1
            && inv.entries[..d].iter().all(|e| *e == one)
            && inv.entries[d] == InvEntry::Infinite;
        if action.kind == ActionKind::ZeroIdeal && pattern {
            found.push(n);
        }
    }
    let Some(first) = found.first() else {
        return Err(Error::NotSynchronized("the strict transform is never blown up".into()));
    };
    let stage = first.depth;
    if let Some(other) = found.iter().find(|n| n.depth != stage) {
        return Err(Error::NotSynchronized(format!(
            "chart {} at stage {stage} and chart {} at stage {}",
            first.id, other.id, other.depth
        )));
    }
    let mut charts = Vec::new();
    for n in found {
        let chain = n.levels.last().expect("levels").chain.clone();
        let idx = chain_indices(&n.chart, &chain);
        let ring = n.chart.ring();
        let chain_ideal: Vec<Poly> = idx.iter().map(|&i| n.chart.var(i)).collect();
        let strict = n.strict_transform.as_deref().unwrap_or(&[]);
        if !ring.equal(strict, &chain_ideal) {
            return Err(Error::NotSynchronized(format!(
                "on chart {} the strict transform [{}] is not cut out by the contact chain",
                n.id,
                n.chart.format_all(strict).join(", ")
            )));
        }
        let mut z = n.chart.clone();
        for name in &chain {
            let i = z.var_index(name).expect("chain variable present");
            z = restrict_to_hypersurface(&z, i, &[])?.0;
        }
        z.id = format!("{}|Z", n.id);
        charts.push(ResolvedChart { node: n.id.clone(), chain, chart: z });
    }
    Ok(EmbeddedResolution { stage, charts, tree })
}
