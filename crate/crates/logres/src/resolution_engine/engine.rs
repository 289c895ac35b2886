//! The worklist driving order reduction over a tree of charts.

use std::collections::VecDeque;

use super::descend::{descend, Descend, LocalMap, Localized};
use super::invariant::{chain_indices, ratio};
use super::{
    Action, ActionKind, BlowupTree, Config, DescentRecord, InvEntry, InvariantString, LevelRecord, Mode, Status, Step,
    TraceNode,
};
use crate::error::{Error, Result};
use crate::kummer_blowup::{blow_up, controlled_transform, strict_transform, BlowupChart};
use crate::log_calculus::{clean_part, max_logord, monomial_saturation, KummerCenter, MarkedIdeal, Order, Scope};
use crate::toroidal_chart::{Chart, Provenance};
use crate::Poly;

struct Level {
    ideal: Vec<Poly>,
    mark: u64,
    chain: Vec<String>,
    cleaned: bool,
    entry: Option<crate::Rational>,
}

struct State {
    id: String,
    parent: Option<String>,
    depth: usize,
    step: Step,
    chart: Chart,
    levels: Vec<Level>,
    /// Pullback of the root ideal, up to units.
    pulled: Vec<Poly>,
    exc: Poly,
    strict: Option<Vec<Poly>>,
}

impl State {
    fn transport(&mut self, map: &LocalMap) -> Result<()> {
        for l in &mut self.levels {
            l.ideal = map.apply_all(&l.ideal)?;
        }
        self.exc = map.apply(&self.exc)?;
        self.strict = self.strict.as_ref().map(|s| map.apply_all(s)).transpose()?;
        self.pulled = map.apply_all(&self.pulled)?;
        Ok(())
    }
}

enum Outcome {
    Leaf(Status),
    Blowup { kind: ActionKind, level: usize, center: KummerCenter, entry: InvEntry },
    Cover { level: usize, parts: Vec<Localized> },
}

/// Order reduction of `(I, a)`: every leaf has maximal logarithmic order
/// below `a` or is empty.
pub fn order_reduce(chart: &Chart, m: &MarkedIdeal, config: &Config) -> Result<BlowupTree> {
    run(Mode::OrderReduce, chart, m, None, config)
}

/// Principalization of `I`: order reduction of `(I, 1)`, after which the
/// pullback of `I` on every leaf is its accumulated exceptional factor.
pub fn principalize(chart: &Chart, ideal: &[Poly], config: &Config) -> Result<BlowupTree> {
    run(Mode::Principalize, chart, &MarkedIdeal::new(ideal.to_vec(), 1), None, config)
}

/// Runs the engine, optionally tracking the strict transform of `strict`.
pub fn run(mode: Mode, chart: &Chart, m: &MarkedIdeal, strict: Option<&[Poly]>, config: &Config) -> Result<BlowupTree> {
    let n = chart.nvars();
    if m.ideal.iter().chain(strict.unwrap_or(&[])).any(|f| f.nvars() != n) {
        return Err(Error::Invalid("generator lives in a different number of variables".into()));
    }
    if mode == Mode::Principalize && m.mark != 1 {
        return Err(Error::Invalid("principalization uses mark 1".into()));
    }
    let root_ideal = chart.ring().canonical(&m.ideal);
    let root = State {
        id: chart.id.clone(),
        parent: None,
        depth: 0,
        step: Step::Root,
        chart: chart.clone(),
        levels: vec![Level { ideal: root_ideal.clone(), mark: m.mark, chain: Vec::new(), cleaned: false, entry: None }],
        pulled: root_ideal.clone(),
        exc: Poly::one(n),
        strict: strict.map(|s| chart.ring().canonical(s)),
    };
    let mut queue = VecDeque::from([root]);
    let mut nodes: Vec<TraceNode> = Vec::new();
    while let Some(mut st) = queue.pop_front() {
        if nodes.len() >= config.max_nodes {
            return Err(Error::DepthExceeded(config.max_nodes));
        }
        let mut descents = Vec::new();
        let mut substitutions = Vec::new();
        let outcome = decide(mode, &mut st, &mut descents, &mut substitutions)?;
        let ring = st.chart.ring();
        let levels: Vec<LevelRecord> = st
            .levels
            .iter()
            .map(|l| LevelRecord {
                ideal: MarkedIdeal::new(ring.canonical(&l.ideal), l.mark),
                chain: l.chain.clone(),
                entry: l.entry.clone(),
            })
            .collect();
        let pullback = ring.canonical(&st.pulled);
        let mut node = TraceNode {
            id: st.id.clone(),
            parent: st.parent.clone(),
            depth: st.depth,
            step: st.step.clone(),
            chart: st.chart.clone(),
            levels,
            descents,
            substitutions,
            action: None,
            exceptional: st.exc.clone(),
            pullback,
            strict_transform: st.strict.as_ref().map(|s| ring.canonical(s)),
            status: Status::Active,
            invariant: None,
            k0: st.levels.len() - 1,
            children: Vec::new(),
        };
        match outcome {
            Outcome::Leaf(status) => {
                check_leaf(mode, &node, status, m.mark)?;
                node.status = status;
                node.invariant = Some(InvariantString::default());
                log::debug!("{}: {}", node.id, status.as_str());
            }
            Outcome::Blowup { kind, level, center, entry } => {
                if st.depth >= config.max_depth {
                    return Err(Error::DepthExceeded(config.max_depth));
                }
                let result = blow_up(&st.chart, &center)?;
                let center_text = result.center.describe(&st.chart);
                log::debug!("{}: {} blowup {}", node.id, kind.as_str(), center_text);
                let mut entries: Vec<InvEntry> = st.levels[..level]
                    .iter()
                    .map(|l| InvEntry::Finite(l.entry.clone().expect("level in descent")))
                    .collect();
                entries.push(entry);
                node.invariant = Some(InvariantString::new(entries));
                node.action = Some(Action {
                    kind,
                    level,
                    center: Some(result.center.clone()),
                    center_text: center_text.clone(),
                    trivial: result.trivial,
                });
                for bc in &result.charts {
                    let child = blowup_child(&st, bc, kind, level, &result.center, &center_text, result.trivial)?;
                    node.children.push(child.id.clone());
                    queue.push_back(child);
                }
            }
            Outcome::Cover { level, parts } => {
                log::debug!("{}: covered by {} localizations", node.id, parts.len());
                node.action = Some(Action {
                    kind: ActionKind::Cover,
                    level,
                    center: None,
                    center_text: parts.iter().map(|p| p.description.clone()).collect::<Vec<_>>().join("; "),
                    trivial: false,
                });
                for (i, part) in parts.into_iter().enumerate() {
                    let id = format!("{}.{}", st.id, char::from(b'a' + u8::try_from(i % 26).expect("small")));
                    let mut chart = part.chart;
                    chart.id = id.clone();
                    chart.provenance = Some(Provenance { parent: st.id.clone(), step: part.description.clone() });
                    let mut child = State {
                        id: id.clone(),
                        parent: Some(st.id.clone()),
                        depth: st.depth,
                        step: Step::Localization { description: part.description },
                        chart,
                        levels: st
                            .levels
                            .iter()
                            .map(|l| Level {
                                ideal: l.ideal.clone(),
                                mark: l.mark,
                                chain: l.chain.clone(),
                                cleaned: l.cleaned,
                                entry: l.entry.clone(),
                            })
                            .collect(),
                        pulled: st.pulled.clone(),
                        exc: st.exc.clone(),
                        strict: st.strict.clone(),
                    };
                    child.transport(&part.map)?;
                    node.children.push(id);
                    queue.push_back(child);
                }
            }
        }
        nodes.push(node);
    }
    Ok(BlowupTree { mode, root: chart.clone(), ideal: MarkedIdeal::new(root_ideal, m.mark), nodes })
}

/// Walks the level stack until a blowup, a cover or a leaf is reached.
fn decide(
    mode: Mode,
    st: &mut State,
    descents: &mut Vec<DescentRecord>,
    substitutions: &mut Vec<String>,
) -> Result<Outcome> {
    loop {
        let k = st.levels.len() - 1;
        let chain = st.levels[k].chain.clone();
        let excluded = chain_indices(&st.chart, &chain);
        let a = st.levels[k].mark;
        let ideal = st.chart.ring().canonical(&st.levels[k].ideal);
        st.levels[k].ideal = ideal.clone();
        let scope = Scope::new(&st.chart, &excluded);
        if ideal.is_empty() {
            if k == 0 {
                return Ok(Outcome::Leaf(Status::LeafEmpty));
            }
            let center = KummerCenter::new(excluded, Vec::new(), 1);
            return Ok(Outcome::Blowup { kind: ActionKind::ZeroIdeal, level: k, center, entry: InvEntry::Infinite });
        }
        if !st.levels[k].cleaned {
            let m = monomial_saturation(scope, &ideal)?;
            if m.iter().any(|v| v.iter().all(|&x| x == 0)) {
                st.levels[k].cleaned = true;
                continue;
            }
            let center = KummerCenter::new(excluded, m, root_index(a)?);
            return Ok(Outcome::Blowup {
                kind: ActionKind::InitialCleaning,
                level: k,
                center,
                entry: InvEntry::Infinite,
            });
        }
        let (m, cln) = clean_part(scope, &ideal)?;
        let b = max_logord(scope, &cln)
            .finite()
            .ok_or_else(|| Error::NotBalanced(format!("clean part on {} has infinite order", st.chart.id)))?;
        if b >= a {
            match descend(&st.chart, &excluded, &cln, b)? {
                Descend::Contact(c) => {
                    let name = c.chart.names()[c.var].clone();
                    if !c.shift.is_zero() {
                        substitutions.push(format!("{name} -> {name} - ({})", st.chart.format(&c.shift)));
                        st.transport(&LocalMap::Polynomial(c.map.clone()))?;
                    }
                    st.chart = c.chart;
                    st.levels[k].entry = Some(ratio(b, a));
                    let mut next = chain;
                    next.push(name.clone());
                    descents.push(DescentRecord {
                        level: k + 1,
                        contact: name,
                        shift: c.shift,
                        order: b,
                        coefficient: c.coefficient,
                        restriction: c.restriction.clone(),
                    });
                    st.levels.push(Level {
                        ideal: c.restriction.ideal,
                        mark: c.restriction.mark,
                        chain: next,
                        cleaned: false,
                        entry: None,
                    });
                    continue;
                }
                Descend::Cover(parts) => return Ok(Outcome::Cover { level: k, parts }),
            }
        }
        if m.iter().any(|&x| x != 0) {
            let center = KummerCenter::new(excluded, vec![m], root_index(a)?);
            let entry = InvEntry::Finite(ratio(b, a));
            return Ok(Outcome::Blowup { kind: ActionKind::FinalCleaning, level: k, center, entry });
        }
        if k == 0 {
            return Ok(Outcome::Leaf(match mode {
                Mode::OrderReduce => Status::LeafReduced,
                Mode::Principalize => Status::LeafPrincipal,
            }));
        }
        st.levels.pop();
        st.levels[k - 1].entry = None;
    }
}

fn root_index(a: u64) -> Result<i64> {
    i64::try_from(a).map_err(|_| Error::Invalid(format!("mark {a} too large")))
}

fn blowup_child(
    st: &State,
    bc: &BlowupChart,
    kind: ActionKind,
    level: usize,
    center: &KummerCenter,
    center_text: &str,
    trivial: bool,
) -> Result<State> {
    let full_chain = &st.levels.last().expect("at least one level").chain;
    let keep = full_chain.iter().position(|n| !bc.chart.ordinary.contains(n)).map_or(st.levels.len(), |i| i + 1);
    let mut levels = Vec::with_capacity(keep);
    for (j, l) in st.levels[..keep].iter().enumerate() {
        let t = controlled_transform(&MarkedIdeal::new(l.ideal.clone(), l.mark), bc)?;
        levels.push(Level {
            ideal: t.ideal,
            mark: l.mark,
            chain: l.chain.clone(),
            cleaned: l.cleaned || (kind == ActionKind::InitialCleaning && j == level),
            entry: if j + 1 == keep { None } else { l.entry.clone() },
        });
    }
    let a0 = u32::try_from(st.levels[0].mark).map_err(|_| Error::Invalid("mark too large".into()))?;
    Ok(State {
        id: bc.chart.id.clone(),
        parent: Some(st.id.clone()),
        depth: st.depth + 1,
        step: Step::Blowup {
            center: center.clone(),
            center_text: center_text.to_string(),
            generator: bc.generator.clone(),
            exceptional: bc.exceptional.clone(),
            trivial,
        },
        chart: bc.chart.clone(),
        levels,
        pulled: bc.map.apply_all(&st.pulled),
        exc: &bc.map.apply(&st.exc) * &bc.exceptional.pow(a0),
        strict: st.strict.as_ref().map(|s| strict_transform(s, bc)),
    })
}

fn check_leaf(mode: Mode, node: &TraceNode, status: Status, mark: u64) -> Result<()> {
    let ring = node.chart.ring();
    let ok = match (mode, status) {
        (_, Status::LeafEmpty) => true,
        (Mode::Principalize, _) => ring.equal(&node.pullback, std::slice::from_ref(&node.exceptional)),
        (Mode::OrderReduce, _) => {
            let scope = Scope::full(&node.chart);
            matches!(max_logord(scope, &node.levels[0].ideal.ideal), Order::Finite(o) if o < mark)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!("final state check failed on chart {}", node.id)))
    }
}
