//! Acceptance runner: one PASS or FAIL line per criterion, each with its
//! measured time and time limit. Exits nonzero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config as RunnerConfig, TestCaseError, TestRng, TestRunner};

use common::*;
use logres::cli_io::parse_problem;
use logres::exact_algebra::{groebner_basis, ideal_contains, MonomialOrder};
use logres::kummer_blowup::{blow_up, controlled_transform, pushforward_center};
use logres::log_calculus::{
    coefficient_ideal, integral_closure_of_center_power, is_admissible, max_logord, monomial_saturation, KummerCenter,
    MarkedIdeal, Order, Scope,
};
use logres::resolution_engine::{
    check_admissibility, check_invariant_decrease, check_leaves, order_reduce, principalize, BlowupTree, Config,
    Status, Step, TraceNode,
};
use logres::toroidal_chart::{add_free_variable, derive_ideal, kummer_cover_pullback, Chart};
use logres::{Poly, Rational};

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

struct Fixture {
    name: String,
    chart: Chart,
    ideal: Vec<Poly>,
    mark: u64,
}

fn load(path: PathBuf) -> Fixture {
    let spec = parse_problem(&std::fs::read_to_string(&path).expect("fixture readable")).expect("fixture parses");
    let chart = spec.build_chart().expect("fixture chart");
    let ideal = spec.ideal(&chart).expect("fixture ideal");
    let name = path.file_stem().expect("file name").to_string_lossy().into_owned();
    Fixture { name, chart, ideal, mark: spec.mark }
}

fn fixture(name: &str) -> Fixture {
    load(root().join(format!("{name}.json")))
}

fn corpus() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(root().join("corpus"))
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths.into_iter().map(load).collect()
}

fn top_level() -> Vec<Fixture> {
    ["cusp", "notenough", "sec23", "sec25", "uv", "x2u"].iter().map(|n| fixture(n)).collect()
}

fn equal(chart: &Chart, a: &[Poly], b: &[&str]) -> bool {
    chart.ring().equal(a, &chart.parse_all(b).expect("expected ideal parses"))
}

fn generator(n: &TraceNode) -> Option<&str> {
    match &n.step {
        Step::Blowup { generator, .. } => Some(generator),
        _ => None,
    }
}

fn child_with_generator<'a>(tree: &'a BlowupTree, parent: &TraceNode, g: &str) -> Result<&'a TraceNode, String> {
    parent
        .children
        .iter()
        .filter_map(|id| tree.node(id))
        .find(|n| generator(n) == Some(g))
        .ok_or_else(|| format!("no {g}-chart below {}", parent.id))
}

fn root_center(tree: &BlowupTree) -> String {
    tree.nodes[0].action.as_ref().map(|a| a.center_text.clone()).unwrap_or_default()
}

fn criterion_1() -> Outcome {
    let f = fixture("sec23");
    let tree = principalize(&f.chart, &f.ideal, &Config::default()).map_err(|e| e.to_string())?;
    ensure(tree.blowup_count() == 1, || format!("{} blowups", tree.blowup_count()))?;
    ensure(root_center(&tree) == "(x, u^2)", || format!("center {}", root_center(&tree)))?;
    let leaves: Vec<&TraceNode> = tree.leaves().collect();
    ensure(leaves.len() == 2 && leaves.iter().all(|n| n.status == Status::LeafPrincipal), || "leaves".into())?;
    let x = child_with_generator(&tree, &tree.nodes[0], "x")?;
    let c = &x.chart;
    ensure(equal(c, &c.relations, &["v*x - u^2"]), || format!("x-chart relations {:?}", c.format_all(&c.relations)))?;
    ensure(equal(c, &x.pullback, &["x"]), || format!("x-chart pullback {:?}", c.format_all(&x.pullback)))?;
    let u = child_with_generator(&tree, &tree.nodes[0], "u^2")?;
    let c = &u.chart;
    ensure(c.relations.is_empty() && c.characters.is_empty(), || "u^2-chart is not smooth".into())?;
    ensure(equal(c, &u.pullback, &["u^2"]), || format!("u^2-chart pullback {:?}", c.format_all(&u.pullback)))?;
    Ok("center (x, u^2); x-chart relation v*x - u^2, pullback (x); u^2-chart smooth, pullback (u^2)".into())
}

fn criterion_2() -> Outcome {
    let f = fixture("sec25");
    let m = MarkedIdeal::new(f.ideal.clone(), f.mark);
    let tree = order_reduce(&f.chart, &m, &Config::default()).map_err(|e| e.to_string())?;
    let root = &tree.nodes[0];
    let c = &f.chart;
    let d = root.descents.first().ok_or("no descent at the root")?;
    ensure(d.contact == "x", || format!("contact {}", d.contact))?;
    ensure(d.coefficient.mark == 2 && equal(c, &d.coefficient.ideal, &["x^2", "u"]), || "coefficient ideal".into())?;
    ensure(d.restriction.mark == 2 && equal(c, &d.restriction.ideal, &["u"]), || "restriction".into())?;
    let saturation = monomial_saturation(Scope::new(c, &[0]), &d.restriction.ideal).map_err(|e| e.to_string())?;
    let cleaning = KummerCenter::new(Vec::new(), saturation, 2);
    ensure(cleaning.describe(c) == "(u^(1/2))", || format!("cleaning center {}", cleaning.describe(c)))?;
    let pushed = pushforward_center(&[0], &cleaning);
    ensure(pushed.describe(c) == "(x, u^(1/2))", || format!("pushforward {}", pushed.describe(c)))?;
    ensure(root_center(&tree) == "(x, u^(1/2))", || format!("tree center {}", root_center(&tree)))?;
    let (cover, closure) = integral_closure_of_center_power(c, &pushed, 2).map_err(|e| e.to_string())?;
    let root_name = cover.chart.monomial[0].clone();
    let power: Vec<Poly> = ["x^2".to_string(), format!("x*{root_name}"), format!("{root_name}^2")]
        .iter()
        .map(|s| cover.chart.parse(s).expect("parses"))
        .collect();
    let mut downstairs = cover.map.apply_all(&c.parse_all(&["x^2", "u"]).expect("parses"));
    downstairs.push(cover.chart.parse(&format!("x*{root_name}")).expect("parses"));
    let ring = cover.chart.ring();
    ensure(ring.equal(&closure, &power) && ring.equal(&closure, &downstairs), || "(x, u^(1/2))^2".into())?;
    ensure(is_admissible(c, &m, &pushed).map_err(|e| e.to_string())?, || "center is not admissible".into())?;
    let w = tree.nodes.iter().find(|n| !n.chart.characters.is_empty()).ok_or("no chart with a character")?;
    ensure(w.chart.character_display() == vec![(2, vec![1, 1])], || format!("{:?}", w.chart.character_display()))?;
    let wname = w.chart.monomial[0].clone();
    ensure(equal(&w.chart, &w.pullback, &[&format!("{wname}^2")]), || "w-chart pullback".into())?;
    Ok(format!("contact x; C = (x^2, u) mark 2; restriction (u); center (x, u^(1/2)); Z/2 weights (1, 1) on ({}, {wname}); pullback ({wname}^2)", w.chart.ordinary[0]))
}

fn criterion_3() -> Outcome {
    let f = fixture("notenough");
    let c = &f.chart;
    ensure(equal(c, &derive_ideal(c, &f.ideal, 1), &["x^2", "u^3"]), || "D^(<=1)".into())?;
    ensure(equal(c, &derive_ideal(c, &f.ideal, 2), &["x", "u^3"]), || "D^(<=2)".into())?;
    let m = MarkedIdeal::new(f.ideal.clone(), f.mark);
    let coefficient = coefficient_ideal(Scope::full(c), &m);
    ensure(coefficient.mark == 6, || format!("mark {}", coefficient.mark))?;
    ensure(equal(c, &coefficient.ideal, &["x^6", "x^4*u^3", "x^2*u^6", "u^9"]), || "C(I, 3)".into())?;
    let restricted: Vec<Poly> = coefficient.ideal.iter().map(|g| g.set_zero(0)).collect();
    ensure(equal(c, &restricted, &["u^9"]), || "restriction".into())?;
    let tree = order_reduce(c, &m, &Config::default()).map_err(|e| e.to_string())?;
    ensure(root_center(&tree) == "(x, u^(3/2))", || format!("center {}", root_center(&tree)))?;
    let center = tree.nodes[0].action.as_ref().and_then(|a| a.center.clone()).ok_or("no center")?;
    let result = blow_up(c, &center).map_err(|e| e.to_string())?;
    for bc in &result.charts {
        let t = controlled_transform(&m, bc).map_err(|e| e.to_string())?;
        let order = max_logord(Scope::full(&bc.chart), &t.ideal);
        let expected = if bc.generator == "x" { Order::Finite(0) } else { Order::Finite(1) };
        ensure(order == expected, || format!("{}-chart transform has order {order}", bc.generator))?;
    }
    Ok("D^(<=1) = (x^2, u^3); D^(<=2) = (x, u^3); C(I, 3) with mark 6; restriction (u^9); center (x, u^(3/2)); transforms (1) and order 1".into())
}

/// Oracle for the monomial saturation on a chart whose monoid is free:
/// close under the derivations written out term by term until the ideal
/// stops growing, then test every monomial up to the degree of the
/// stable basis for membership.
fn saturation_oracle(chart: &Chart, ideal: &[Poly]) -> Vec<Vec<i64>> {
    let n = chart.ordinary.len();
    let nv = chart.nvars();
    let derivative = |f: &Poly, i: usize| -> Poly {
        let terms = f.terms().iter().filter(|t| t.exps[i] > 0).map(|t| {
            let mut e = t.exps.clone();
            let k = Rational::from_integer(e[i].into());
            if i < n {
                e[i] -= 1;
            }
            (&t.coeff * &k, e)
        });
        Poly::from_terms(nv, terms)
    };
    let mut current: Vec<Poly> = ideal.to_vec();
    loop {
        let mut next = current.clone();
        for f in &current {
            next.extend((0..nv).map(|i| derivative(f, i)).filter(|g| !g.is_zero()));
        }
        let grew = next.iter().any(|g| !ideal_contains(&current, g));
        current = groebner_basis(&next, MonomialOrder::DegRevLex);
        if !grew {
            break;
        }
    }
    if current.is_empty() {
        return Vec::new();
    }
    let bound = current.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let mut members: Vec<Vec<u32>> = Vec::new();
    let r = chart.monomial.len();
    let mut stack = vec![vec![0u32; r]];
    while let Some(e) = stack.pop() {
        let mut exps = vec![0u32; n];
        exps.extend(&e);
        if ideal_contains(&current, &Poly::monomial(nv, Rational::from_integer(1.into()), exps)) {
            members.push(e.clone());
        }
        if e.iter().sum::<u32>() < bound {
            for j in (0..r).rev() {
                if e[j..].iter().skip(1).all(|&x| x == 0) {
                    let mut f = e.clone();
                    f[j] += 1;
                    stack.push(f);
                }
            }
        }
    }
    let divides = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut minimal: Vec<Vec<i64>> = members
        .iter()
        .filter(|a| !members.iter().any(|b| b != *a && divides(b, a)))
        .map(|a| a.iter().map(|&x| i64::from(x)).collect())
        .collect();
    minimal.sort();
    minimal.dedup();
    minimal
}

fn saturation_chart(kind: usize) -> Chart {
    match kind {
        0 => Chart::smooth("X", &["x"], &["u"]),
        1 => Chart::smooth("X", &["x"], &["u", "v"]),
        2 => Chart::smooth("X", &["x", "y"], &["u"]),
        _ => Chart::smooth("X", &["x", "y"], &["u", "v"]),
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = RunnerConfig { cases, failure_persistence: None, ..RunnerConfig::default() };
    TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm))
}

fn check_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), String>,
) -> Result<(), String> {
    runner(cases).run(&strategy, |v| test(v).map_err(TestCaseError::fail)).map_err(|e| e.to_string())
}

fn criterion_4() -> Outcome {
    let cases = 60;
    let proper = std::cell::Cell::new(0);
    let strategy = (0usize..4).prop_flat_map(|kind| {
        let nv = saturation_chart(kind).nvars();
        (proptest::strategy::Just(kind), raw_ideal(nv, 2, 3, 3))
    });
    check_property(cases, strategy, |(kind, raws)| {
        let chart = saturation_chart(kind);
        let raws: Vec<RawPoly> =
            raws.into_iter().map(|r| r.into_iter().filter(|(_, e)| e.iter().sum::<u32>() <= 4).collect()).collect();
        let ideal = build_all(chart.nvars(), &raws);
        let mut engine = monomial_saturation(Scope::full(&chart), &ideal).map_err(|e| e.to_string())?;
        engine.sort();
        let oracle = saturation_oracle(&chart, &ideal);
        if engine.iter().all(|v| v.iter().any(|&x| x != 0)) {
            proper.set(proper.get() + 1);
        }
        ensure(engine == oracle, || format!("I = {:?}: engine {engine:?}, oracle {oracle:?}", chart.format_all(&ideal)))
    })?;
    Ok(format!("{cases} random ideals agree with the brute-force saturation, {} with a proper one", proper.get()))
}

fn criterion_5() -> Outcome {
    let cases = 32;
    let monomials =
        proptest::collection::vec((0u32..=2, 0u32..=2).prop_map(|(a, b)| vec![(1i64, vec![0, 0, a, b])]), 1..=2);
    check_property(cases, (monomials, raw_ideal(4, 2, 3, 2), 1u32..=2), |(n, i, order)| {
        derivatives_commute_with_monomials(&chart_xy_uv(), &build_all(4, &n), &build_all(4, &i), order)
    })
    .map_err(|e| format!("D(N*I): {e}"))?;
    let smooth_strata = proptest::sample::select(vec![vec![1usize], vec![2], vec![1, 2]]);
    check_property(cases, (raw_ideal(3, 3, 3, 2), smooth_strata, 1u32..=2), |(i, zs, order)| {
        let chart = Chart::smooth("X", &["x"], &["u", "v"]);
        derivatives_commute_with_strata(&chart, &zs, &build_all(3, &i), order)
    })
    .map_err(|e| format!("strata: {e}"))?;
    let cone_strata = proptest::sample::select(vec![vec![2usize, 3], vec![1, 2], vec![1, 2, 3]]);
    check_property(cases, (raw_ideal(4, 2, 3, 2), cone_strata, 1u32..=2), |(i, zs, order)| {
        derivatives_commute_with_strata(&chart_x_cone(), &zs, &build_all(4, &i), order)
    })
    .map_err(|e| format!("singular strata: {e}"))?;
    let transforms = std::cell::Cell::new(0);
    check_property(cases, (1u32..=3, raw_ideal(2, 3, 3, 2)), |(d, i)| {
        let mut gens = build_all(2, &i);
        gens.push(build(2, &vec![(1, vec![d, 0])]));
        order_does_not_increase(&chart_x_u(), &gens).map(|seen| transforms.set(transforms.get() + seen))
    })
    .map_err(|e| format!("order: {e}"))?;
    check_property(cases, (raw_ideal(2, 3, 3, 2), 1u64..=2), |(i, a)| {
        cleaning_gives_clean_ideals(&chart_x_u(), &build_all(2, &i), a)
    })
    .map_err(|e| format!("cleaning: {e}"))?;
    check_property(cases, (raw_ideal(2, 3, 2, 2), 1u64..=3), |(i, a)| {
        admissibility_is_stable_under_squaring(&chart_x_u(), &build_all(2, &i), a)
    })
    .map_err(|e| format!("admissibility: {e}"))?;
    Ok(format!("6 properties, {cases} cases each, {} admissible blowups checked for order", transforms.get()))
}

const NEW: &str = "x_new";

/// Walks the tree of `I + (x_new)` alongside the tree of `I`. Each blowup
/// of the extended tree has the center of its partner plus `x_new`, and its
/// first chart is the `x_new`-chart, a principal leaf; the remaining
/// charts correspond in order. A zero ideal leaf corresponds to the
/// blowup of `(x_new)` alone.
fn compare_embedded(base: &BlowupTree, ext: &BlowupTree, b: &TraceNode, e: &TraceNode) -> Result<(), String> {
    let names = |chart: &Chart, c: &KummerCenter| -> Vec<String> {
        c.ordinary.iter().map(|&i| chart.names()[i].clone()).collect()
    };
    let new_leaf = |id: &String| -> Result<(), String> {
        let n = ext.node(id).ok_or("missing node")?;
        ensure(generator(n) == Some(NEW) && n.status == Status::LeafPrincipal, || {
            format!("{id} is not the {NEW}-chart")
        })
    };
    if b.status == Status::LeafEmpty {
        let c = e.action.as_ref().and_then(|a| a.center.as_ref()).ok_or_else(|| format!("{} has no center", e.id))?;
        ensure(names(&e.chart, c) == vec![NEW.to_string()] && c.monomial.is_empty(), || format!("{}: center", e.id))?;
        return e.children.iter().try_for_each(new_leaf);
    }
    ensure(b.status == e.status, || format!("{} is {:?} but {} is {:?}", b.id, b.status, e.id, e.status))?;
    let (Some(ba), Some(ea)) = (&b.action, &e.action) else {
        return ensure(b.action.is_none() && e.action.is_none(), || format!("{}: actions differ", b.id));
    };
    ensure(ba.kind == ea.kind, || format!("{}: {:?} against {:?}", b.id, ba.kind, ea.kind))?;
    let mut children: &[String] = &e.children;
    if let (Some(bc), Some(ec)) = (&ba.center, &ea.center) {
        let mut expected = names(&b.chart, bc);
        expected.push(NEW.to_string());
        expected.sort();
        let mut found = names(&e.chart, ec);
        found.sort();
        ensure(expected == found && bc.monomial == ec.monomial && bc.root == ec.root, || {
            format!("{}: center {} against {}", b.id, ba.center_text, ea.center_text)
        })?;
        let (first, rest) = e.children.split_first().ok_or("blowup without charts")?;
        new_leaf(first)?;
        children = rest;
    }
    ensure(children.len() == b.children.len(), || format!("{}: child counts differ", b.id))?;
    for (bid, eid) in b.children.iter().zip(children) {
        let bn = base.node(bid).ok_or("missing node")?;
        let en = ext.node(eid).ok_or("missing node")?;
        compare_embedded(base, ext, bn, en)?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let fixtures: Vec<Fixture> = top_level().into_iter().chain(corpus()).collect();
    for f in &fixtures {
        let base = principalize(&f.chart, &f.ideal, &Config::default()).map_err(|e| format!("{}: {e}", f.name))?;
        let (chart, ideal) = add_free_variable(&f.chart, NEW, &f.ideal).map_err(|e| e.to_string())?;
        let ext = principalize(&chart, &ideal, &Config::default()).map_err(|e| format!("{} + {NEW}: {e}", f.name))?;
        compare_embedded(&base, &ext, &base.nodes[0], &ext.nodes[0]).map_err(|e| format!("{}: {e}", f.name))?;
        let extra = usize::from(base.nodes[0].status == Status::LeafEmpty);
        ensure(base.blowup_count() + extra == ext.blowup_count(), || format!("{}: blowup counts differ", f.name))?;
    }
    Ok(format!("{} fixtures re-embedded with matching trees", fixtures.len()))
}

fn criterion_7() -> Outcome {
    let f = fixture("sec25");
    let base = order_reduce(&f.chart, &MarkedIdeal::new(f.ideal.clone(), f.mark), &Config::default())
        .map_err(|e| e.to_string())?;
    let cover = kummer_cover_pullback(&f.chart, &[1], 2, &f.ideal).map_err(|e| e.to_string())?;
    let v = cover.chart.monomial[0].clone();
    let c = &cover.chart;
    ensure(equal(c, &cover.ideal, &["x^2", &format!("{v}^2")]), || {
        format!("cover ideal {:?}", c.format_all(&cover.ideal))
    })?;
    let tree = order_reduce(c, &MarkedIdeal::new(cover.ideal.clone(), f.mark), &Config::default())
        .map_err(|e| e.to_string())?;
    let expected = format!("(x, {v})");
    ensure(root_center(&tree) == expected, || format!("center {}", root_center(&tree)))?;
    ensure(tree.blowup_count() == 1, || format!("{} blowups", tree.blowup_count()))?;
    let nontrivial = |t: &BlowupTree| {
        t.nodes.iter().filter(|n| n.action.as_ref().is_some_and(|a| a.center.is_some() && !a.trivial)).count()
    };
    ensure(nontrivial(&base) == nontrivial(&tree), || "nontrivial step counts differ".into())?;
    let pairs = [("x", "x".to_string()), ("u^(1/2)", v.clone())];
    for (base_gen, cover_gen) in pairs {
        let b = child_with_generator(&base, &base.nodes[0], base_gen)?;
        let t = child_with_generator(&tree, &tree.nodes[0], &cover_gen)?;
        ensure(b.status == t.status && t.status == Status::LeafReduced, || format!("{cover_gen}-chart status"))?;
        let bl = &b.levels[0].ideal;
        let tl = &t.levels[0].ideal;
        ensure(b.chart.ring().is_unit(&bl.ideal) && t.chart.ring().is_unit(&tl.ideal), || {
            "transforms are not (1)".into()
        })?;
        let cover_square = t.chart.parse(&format!("{cover_gen}^2")).expect("parses");
        ensure(t.exceptional == cover_square, || {
            format!("{cover_gen}-chart exceptional {}", t.chart.format(&t.exceptional))
        })?;
        ensure(t.chart.ring().equal(&t.pullback, &[cover_square]), || "pullback is not exceptional".into())?;
        let base_var = if base_gen == "x" { "x".to_string() } else { b.chart.monomial[0].clone() };
        let base_square = b.chart.parse(&format!("{base_var}^2")).expect("parses");
        ensure(b.exceptional == base_square, || format!("base exceptional {}", b.chart.format(&b.exceptional)))?;
    }
    Ok(format!("cover u = {v}^2 blown up once along {expected}; leaves match the base tree"))
}

fn criterion_8() -> Outcome {
    let fixtures = corpus();
    ensure(fixtures.len() >= 20, || format!("only {} corpus ideals", fixtures.len()))?;
    let config = Config::default();
    let mut deepest = 0;
    for f in &fixtures {
        let tree = principalize(&f.chart, &f.ideal, &config).map_err(|e| format!("{}: {e}", f.name))?;
        let depth = tree.nodes.iter().map(|n| n.depth).max().unwrap_or(0);
        ensure(depth <= 64, || format!("{}: depth {depth}", f.name))?;
        deepest = deepest.max(depth);
        check_leaves(&tree).map_err(|e| format!("{}: {e}", f.name))?;
        check_invariant_decrease(&tree).map_err(|e| format!("{}: {e}", f.name))?;
        check_admissibility(&tree).map_err(|e| format!("{}: {e}", f.name))?;
    }
    Ok(format!("{} corpus ideals principalized, deepest path {deepest}", fixtures.len()))
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "boundary ideal (u^2, x)", Duration::from_secs(1), criterion_1),
        (2, "order reduction of ((x^2, u), 2)", Duration::from_secs(1), criterion_2),
        (3, "non-monomial coefficient ideal", Duration::from_secs(2), criterion_3),
        (4, "monomial saturation oracle", Duration::from_secs(60), criterion_4),
        (5, "property suite", Duration::from_secs(60), criterion_5),
        (6, "re-embedding", Duration::from_secs(10), criterion_6),
        (7, "Kummer cover u = v^2", Duration::from_secs(2), criterion_7),
        (8, "termination on the corpus", Duration::from_secs(60), criterion_8),
    ];
    let mut failures = 0;
    for (k, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let timing = format!("{} ms, limit {} ms", elapsed.as_millis(), limit.as_millis());
        match outcome {
            Ok(detail) if elapsed <= limit => println!("PASS criterion {k}: {name} ({timing}): {detail}"),
            Ok(detail) => {
                failures += 1;
                println!("FAIL criterion {k}: {name} ({timing}): too slow: {detail}");
            }
            Err(reason) => {
                failures += 1;
                println!("FAIL criterion {k}: {name} ({timing}): {reason}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
