//! Post hoc verification of a finished tree.

use super::{BlowupTree, Mode, Status, Step, TraceNode};
use crate::log_calculus::{is_admissible, max_logord, Order, Scope};

/// Re-checks the final state of every leaf: for principalization the
/// pullback equals the accumulated exceptional factor, which is a unit
/// times a monomial; for order reduction the level 0 ideal has order below
/// the mark.
pub fn check_leaves(tree: &BlowupTree) -> Result<(), String> {
    for n in tree.leaves() {
        if n.status == Status::LeafEmpty {
            continue;
        }
        let ring = n.chart.ring();
        match tree.mode {
            Mode::Principalize => {
                if !ring.equal(&n.pullback, std::slice::from_ref(&n.exceptional)) {
                    return Err(format!("{}: pullback is not the exceptional factor", n.id));
                }
                if !exceptional_is_unit_times_monomial(n) {
                    return Err(format!("{}: exceptional factor is not a monomial up to units", n.id));
                }
            }
            Mode::OrderReduce => {
                let o = max_logord(Scope::full(&n.chart), &n.levels[0].ideal.ideal);
                if !matches!(o, Order::Finite(v) if v < tree.ideal.mark) {
                    return Err(format!("{}: order {o} not below {}", n.id, tree.ideal.mark));
                }
            }
        }
    }
    Ok(())
}

/// The exceptional factor generates the same ideal as one monomial: its
/// monomial part is read off from the derivation closure.
fn exceptional_is_unit_times_monomial(n: &TraceNode) -> bool {
    let scope = Scope::full(&n.chart);
    let gens = std::slice::from_ref(&n.exceptional);
    match crate::log_calculus::clean_part(scope, gens) {
        Ok((_, cln)) => n.chart.ring().is_unit(&cln),
        Err(_) => false,
    }
}

/// Along every non-trivial blowup the invariant strictly drops.
pub fn check_invariant_decrease(tree: &BlowupTree) -> Result<(), String> {
    for n in &tree.nodes {
        let Step::Blowup { trivial: false, .. } = n.step else { continue };
        let Some(inv) = &n.invariant else { continue };
        let parent = n.parent.as_deref().and_then(|p| tree.node(p)).ok_or_else(|| format!("{}: no parent", n.id))?;
        let Some(pinv) = &parent.invariant else { continue };
        if inv >= pinv {
            return Err(format!("{}: invariant {inv} does not drop below {pinv} of {}", n.id, parent.id));
        }
    }
    Ok(())
}

/// Every recorded center is admissible for every level's marked ideal.
pub fn check_admissibility(tree: &BlowupTree) -> Result<(), String> {
    for n in &tree.nodes {
        let Some(center) = n.action.as_ref().and_then(|a| a.center.as_ref()) else { continue };
        for (j, l) in n.levels.iter().enumerate() {
            if l.ideal.ideal.is_empty() {
                continue;
            }
            match is_admissible(&n.chart, &l.ideal, center) {
                Ok(true) => {}
                Ok(false) => return Err(format!("{}: center not admissible for level {j}", n.id)),
                Err(e) => return Err(format!("{}: {e}", n.id)),
            }
        }
    }
    Ok(())
}
