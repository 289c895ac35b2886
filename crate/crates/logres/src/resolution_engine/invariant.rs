//! Invariant strings and the recursive invariant of a marked ideal.

use std::fmt;
use std::str::FromStr;

use super::descend::{descend, Descend};
use crate::error::{Error, Result};
use crate::exact_algebra::parse::{format_rational, parse_rational};
use crate::log_calculus::{clean_part, max_logord, MarkedIdeal, Order, Scope};
use crate::toroidal_chart::Chart;
use crate::{Poly, Rational};

/// One entry of an invariant string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InvEntry {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for InvEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvEntry::Finite(q) => write!(f, "{}", format_rational(q)),
            InvEntry::Infinite => write!(f, "inf"),
        }
    }
}

/// A finite string of entries compared lexicographically, a proper prefix
/// being smaller than its extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantString {
    pub entries: Vec<InvEntry>,
}

impl InvariantString {
    pub fn new(entries: Vec<InvEntry>) -> Self {
        InvariantString { entries }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for InvariantString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for InvariantString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { position: 0, message: format!("invariant `{s}` is not parenthesized") })?;
        if inner.trim().is_empty() {
            return Ok(InvariantString::default());
        }
        let entries = inner
            .split(',')
            .map(|p| {
                let p = p.trim();
                if p == "inf" {
                    Ok(InvEntry::Infinite)
                } else {
                    parse_rational(p).map(InvEntry::Finite)
                }
            })
            .collect::<Result<_>>()?;
        Ok(InvariantString { entries })
    }
}

pub(crate) fn ratio(b: u64, a: u64) -> Rational {
    Rational::new(b.into(), a.into())
}

/// The invariant of `(I, a)` with auxiliary integer `k0`, evaluated at the
/// worst locus of the chart. Where no global maximal contact exists the
/// chart is covered by localizations and the largest value is taken.
pub fn invariant(chart: &Chart, m: &MarkedIdeal, k0: usize) -> Result<InvariantString> {
    Ok(InvariantString::new(recurse(chart, &[], &m.ideal, m.mark, k0)?))
}

fn recurse(chart: &Chart, chain: &[String], ideal: &[Poly], a: u64, k0: usize) -> Result<Vec<InvEntry>> {
    let excluded = chain_indices(chart, chain);
    let scope = Scope::new(chart, &excluded);
    let ideal = chart.ring().canonical(ideal);
    if ideal.is_empty() {
        return Ok(vec![InvEntry::Infinite]);
    }
    let ord = max_logord(scope, &ideal);
    if matches!(ord, Order::Finite(o) if o < a) {
        return Ok(Vec::new());
    }
    if ord == Order::Infinite && k0 == 0 {
        return Ok(vec![InvEntry::Infinite]);
    }
    let (_, cln) = clean_part(scope, &ideal)?;
    let b =
        max_logord(scope, &cln).finite().ok_or_else(|| Error::NotBalanced("clean part has infinite order".into()))?;
    if ord == Order::Infinite && b < a {
        return Ok(vec![InvEntry::Finite(ratio(b, a))]);
    }
    match descend(chart, &excluded, &cln, b)? {
        Descend::Contact(c) => {
            let mut next = chain.to_vec();
            next.push(c.chart.names()[c.var].clone());
            let mut out = vec![InvEntry::Finite(ratio(b, a))];
            out.extend(recurse(&c.chart, &next, &c.restriction.ideal, c.restriction.mark, k0.saturating_sub(1))?);
            Ok(out)
        }
        Descend::Cover(parts) => {
            let mut best: Option<Vec<InvEntry>> = None;
            for p in parts {
                let v = recurse(&p.chart, chain, &p.map.apply_all(&ideal)?, a, k0)?;
                if best.as_ref().is_none_or(|b| v > *b) {
                    best = Some(v);
                }
            }
            Ok(best.unwrap_or_default())
        }
    }
}

/// Indices of the named ordinary variables present on the chart.
pub(crate) fn chain_indices(chart: &Chart, chain: &[String]) -> Vec<usize> {
    chain.iter().filter_map(|n| chart.var_index(n)).collect()
}
