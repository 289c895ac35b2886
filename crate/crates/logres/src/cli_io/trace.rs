//! Versioned JSON serialization of a blowup tree.

use serde::{Deserialize, Serialize};

use super::problem::{offset_of, GeneratorSpec};
use crate::error::{Error, Result};
use crate::exact_algebra::format_rational;
use crate::log_calculus::{KummerCenter, MarkedIdeal};
use crate::resolution_engine::{BlowupTree, Step, TraceNode};
use crate::toroidal_chart::Chart;
use crate::Poly;

pub const TRACE_FORMAT: &str = "logres-trace";
pub const TRACE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDocument {
    pub format: String,
    pub version: u32,
    pub mode: String,
    pub mark: u64,
    /// Canonical generators of the input ideal on the root chart.
    pub ideal: Vec<String>,
    pub nodes: Vec<NodeDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub id: String,
    pub ordinary: Vec<String>,
    pub monomial: Vec<GeneratorSpec>,
    pub rank: usize,
    pub relations: Vec<String>,
    pub inverted: Vec<String>,
    pub characters: Vec<CharacterDoc>,
}

/// A character as its rational forms together with the integer weights of
/// all variables over a common modulus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    pub lattice: Vec<String>,
    pub ordinary: Vec<String>,
    pub modulus: i64,
    pub weights: Vec<i64>,
}

/// A Kummer center: ordinary generators by name and monomial generators
/// as `(lattice vector, root index)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterDoc {
    pub ordinary: Vec<String>,
    pub monomial: Vec<(Vec<i64>, i64)>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StepDoc {
    Root,
    Blowup { center: CenterDoc, generator: String, exceptional: String, trivial: bool },
    Localization { description: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedDoc {
    pub ideal: Vec<String>,
    pub mark: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDoc {
    pub ideal: Vec<String>,
    pub mark: u64,
    pub chain: Vec<String>,
    pub entry: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescentDoc {
    pub level: usize,
    pub contact: String,
    pub shift: String,
    pub order: u64,
    pub coefficient: MarkedDoc,
    pub restriction: MarkedDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub kind: String,
    pub level: usize,
    pub center: Option<CenterDoc>,
    pub text: String,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub parent: Option<String>,
    pub depth: usize,
    pub step: StepDoc,
    pub chart: ChartDoc,
    pub levels: Vec<LevelDoc>,
    pub descents: Vec<DescentDoc>,
    pub substitutions: Vec<String>,
    pub action: Option<ActionDoc>,
    pub exceptional: String,
    pub pullback: Vec<String>,
    pub strict_transform: Option<Vec<String>>,
    pub status: String,
    pub invariant: Option<String>,
    pub k0: usize,
    pub children: Vec<String>,
}

fn canonical(chart: &Chart, gens: &[Poly]) -> Vec<String> {
    chart.format_all(&chart.ring().canonical(gens))
}

fn rationals(qs: &[crate::Rational]) -> Vec<String> {
    qs.iter().map(format_rational).collect()
}

pub fn chart_doc(chart: &Chart) -> ChartDoc {
    ChartDoc {
        id: chart.id.clone(),
        ordinary: chart.ordinary.clone(),
        monomial: chart
            .monomial
            .iter()
            .zip(&chart.vectors)
            .map(|(name, v)| GeneratorSpec { name: name.clone(), vector: v.clone() })
            .collect(),
        rank: chart.rank,
        relations: chart.format_all(&chart.relations),
        inverted: chart.format_all(&chart.inverted),
        characters: chart
            .characters
            .iter()
            .map(|c| {
                let (modulus, weights) = c.display(chart);
                CharacterDoc { lattice: rationals(&c.lattice), ordinary: rationals(&c.ordinary), modulus, weights }
            })
            .collect(),
    }
}

pub fn center_doc(chart: &Chart, center: &KummerCenter) -> CenterDoc {
    let names = chart.names();
    CenterDoc {
        ordinary: center.ordinary.iter().map(|&i| names[i].clone()).collect(),
        monomial: center.monomial.iter().map(|v| (v.clone(), center.root)).collect(),
        text: center.describe(chart),
    }
}

fn marked_doc(chart: &Chart, m: &MarkedIdeal) -> MarkedDoc {
    MarkedDoc { ideal: canonical(chart, &m.ideal), mark: m.mark }
}

/// Blowup centers are expressed on the parent chart, everything else on
/// the node's own chart.
fn node_doc(tree: &BlowupTree, n: &TraceNode) -> NodeDoc {
    let chart = &n.chart;
    let parent_chart = n.parent.as_deref().and_then(|p| tree.node(p)).map(|p| &p.chart);
    let step = match &n.step {
        Step::Root => StepDoc::Root,
        Step::Blowup { center, generator, exceptional, trivial, .. } => StepDoc::Blowup {
            center: center_doc(parent_chart.unwrap_or(chart), center),
            generator: generator.clone(),
            exceptional: chart.format(exceptional),
            trivial: *trivial,
        },
        Step::Localization { description } => StepDoc::Localization { description: description.clone() },
    };
    NodeDoc {
        id: n.id.clone(),
        parent: n.parent.clone(),
        depth: n.depth,
        step,
        chart: chart_doc(chart),
        levels: n
            .levels
            .iter()
            .map(|l| LevelDoc {
                ideal: canonical(chart, &l.ideal.ideal),
                mark: l.ideal.mark,
                chain: l.chain.clone(),
                entry: l.entry.as_ref().map(format_rational),
            })
            .collect(),
        descents: n
            .descents
            .iter()
            .map(|d| DescentDoc {
                level: d.level,
                contact: d.contact.clone(),
                shift: chart.format(&d.shift),
                order: d.order,
                coefficient: marked_doc(chart, &d.coefficient),
                restriction: marked_doc(chart, &d.restriction),
            })
            .collect(),
        substitutions: n.substitutions.clone(),
        action: n.action.as_ref().map(|a| ActionDoc {
            kind: a.kind.as_str().to_string(),
            level: a.level,
            center: a.center.as_ref().map(|c| center_doc(chart, c)),
            text: a.center_text.clone(),
            trivial: a.trivial,
        }),
        exceptional: chart.format(&n.exceptional),
        pullback: canonical(chart, &n.pullback),
        strict_transform: n.strict_transform.as_ref().map(|s| canonical(chart, s)),
        status: n.status.as_str().to_string(),
        invariant: n.invariant.as_ref().map(|i| i.to_string()),
        k0: n.k0,
        children: n.children.clone(),
    }
}

pub fn trace_document(tree: &BlowupTree) -> TraceDocument {
    TraceDocument {
        format: TRACE_FORMAT.to_string(),
        version: TRACE_VERSION,
        mode: tree.mode.as_str().to_string(),
        mark: tree.ideal.mark,
        ideal: canonical(&tree.root, &tree.ideal.ideal),
        nodes: tree.nodes.iter().map(|n| node_doc(tree, n)).collect(),
    }
}

impl TraceDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes") + "\n"
    }
}

/// Serializes a finished tree.
pub fn emit_trace(tree: &BlowupTree) -> String {
    trace_document(tree).to_json()
}

/// Reads a trace, checking its format tag and version.
pub fn parse_trace(text: &str) -> Result<TraceDocument> {
    let doc: TraceDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: offset_of(text, e.line(), e.column()),
        message: format!("line {} column {}: {e}", e.line(), e.column()),
    })?;
    if doc.format != TRACE_FORMAT || doc.version != TRACE_VERSION {
        return Err(Error::Invalid(format!("unsupported trace {} version {}", doc.format, doc.version)));
    }
    Ok(doc)
}
