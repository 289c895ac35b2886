//! Order reduction, principalization, the invariant string and embedded
//! resolution, organized as a tree of charts.

mod checks;
mod descend;
mod embedded;
mod engine;
mod invariant;

pub use checks::{check_admissibility, check_invariant_decrease, check_leaves};
pub use embedded::{resolve_embedded, EmbeddedResolution, ResolvedChart};
pub use engine::{order_reduce, principalize, run};
pub use invariant::{invariant, InvEntry, InvariantString};

use crate::log_calculus::{KummerCenter, MarkedIdeal};
use crate::toroidal_chart::Chart;
use crate::{Poly, Rational};

/// Engine limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest number of blowups along any path.
    pub max_depth: usize,
    /// Largest number of nodes in the tree.
    pub max_nodes: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_depth: 64, max_nodes: 20_000 }
    }
}

/// What the tree computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    OrderReduce,
    Principalize,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::OrderReduce => "order-reduce",
            Mode::Principalize => "principalize",
        }
    }
}

/// State of a node once processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Interior node: it was blown up or covered by localizations.
    Active,
    /// Order reduction finished on this chart.
    LeafReduced,
    /// The pullback of the ideal is the accumulated exceptional factor.
    LeafPrincipal,
    /// The zero ideal at the bottom level: the whole chart is blown up
    /// and nothing remains.
    LeafEmpty,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Active => "active",
            Status::LeafReduced => "leaf-reduced",
            Status::LeafPrincipal => "leaf-principal",
            Status::LeafEmpty => "leaf-empty",
        }
    }

    pub fn is_leaf(self) -> bool {
        self != Status::Active
    }
}

/// The rule that produced a node's action.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    /// Blowing up the contact chain together with `M(I)^(1/a)`.
    InitialCleaning,
    /// Blowing up the contact chain together with `m^(1/a)` for the
    /// principal monomial part `(m)` of a balanced ideal of reduced order.
    FinalCleaning,
    /// Blowing up the contact chain alone, the restricted ideal being zero.
    ZeroIdeal,
    /// Covering the chart by localizations on which a maximal contact
    /// exists.
    Cover,
}

impl ActionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ActionKind::InitialCleaning => "initial-cleaning",
            ActionKind::FinalCleaning => "final-cleaning",
            ActionKind::ZeroIdeal => "zero-ideal",
            ActionKind::Cover => "cover",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Action {
    pub kind: ActionKind,
    /// Index of the level whose rule fired.
    pub level: usize,
    /// The blowup center, absent for covers.
    pub center: Option<KummerCenter>,
    pub center_text: String,
    pub trivial: bool,
}

/// How a node was reached from its parent.
#[derive(Clone, Debug)]
pub enum Step {
    Root,
    Blowup { center: KummerCenter, center_text: String, generator: String, exceptional: Poly, trivial: bool },
    Localization { description: String },
}

/// One level of the maximal contact recursion: a marked ideal living on
/// the hypersurface cut out by `chain`.
#[derive(Clone, Debug)]
pub struct LevelRecord {
    pub ideal: MarkedIdeal,
    pub chain: Vec<String>,
    /// `b / a` while a deeper level reduces this one's clean part.
    pub entry: Option<Rational>,
}

/// A descent to a maximal contact hypersurface performed at a node.
#[derive(Clone, Debug)]
pub struct DescentRecord {
    /// Index of the level created.
    pub level: usize,
    pub contact: String,
    pub shift: Poly,
    /// Maximal order `b` of the clean part being reduced.
    pub order: u64,
    pub coefficient: MarkedIdeal,
    pub restriction: MarkedIdeal,
}

#[derive(Clone, Debug)]
pub struct TraceNode {
    pub id: String,
    pub parent: Option<String>,
    /// Number of blowups from the root.
    pub depth: usize,
    pub step: Step,
    pub chart: Chart,
    /// Levels when the action was decided.
    pub levels: Vec<LevelRecord>,
    pub descents: Vec<DescentRecord>,
    pub substitutions: Vec<String>,
    pub action: Option<Action>,
    /// Accumulated exceptional factor: the pullback of the root ideal is
    /// this factor times the level 0 ideal.
    pub exceptional: Poly,
    /// Canonical generators of the pullback of the root ideal.
    pub pullback: Vec<Poly>,
    pub strict_transform: Option<Vec<Poly>>,
    pub status: Status,
    /// Absent on nodes that are covered by localizations.
    pub invariant: Option<InvariantString>,
    /// Number of maximal contact passages in effect at the action.
    pub k0: usize,
    pub children: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BlowupTree {
    pub mode: Mode,
    pub root: Chart,
    pub ideal: MarkedIdeal,
    pub nodes: Vec<TraceNode>,
}

impl BlowupTree {
    pub fn node(&self, id: &str) -> Option<&TraceNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TraceNode> {
        self.nodes.iter().filter(|n| n.status.is_leaf())
    }

    /// Number of blowups performed.
    pub fn blowup_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.action.as_ref().is_some_and(|a| a.center.is_some())).count()
    }

    /// Nodes in root-to-node order.
    pub fn path_to(&self, id: &str) -> Vec<&TraceNode> {
        let mut out = Vec::new();
        let mut cur = self.node(id);
        while let Some(n) = cur {
            out.push(n);
            cur = n.parent.as_deref().and_then(|p| self.node(p));
        }
        out.reverse();
        out
    }
}
