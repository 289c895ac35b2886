use logres::log_calculus::MarkedIdeal;
use logres::resolution_engine::{
    check_admissibility, check_invariant_decrease, check_leaves, order_reduce, principalize, resolve_embedded,
    BlowupTree, Config, Status,
};
use logres::toroidal_chart::Chart;

fn verified(tree: &BlowupTree) {
    check_leaves(tree).unwrap();
    check_invariant_decrease(tree).unwrap();
    check_admissibility(tree).unwrap();
    assert!(tree.leaves().count() > 0);
}

fn root_action(tree: &BlowupTree) -> (String, String) {
    let root = &tree.nodes[0];
    let inv = root.invariant.as_ref().map(|i| i.to_string()).unwrap_or_default();
    let center = root.action.as_ref().map(|a| a.center_text.clone()).unwrap_or_default();
    (inv, center)
}

#[test]
fn marked_ideal_of_mark_one_is_principalized_by_one_blowup() {
    let c = Chart::smooth("X", &["x"], &["u"]);
    let t = principalize(&c, &c.parse_all(&["u^2", "x"]).unwrap(), &Config::default()).unwrap();
    verified(&t);
    assert_eq!(root_action(&t), ("(1, inf)".to_string(), "(x, u^2)".to_string()));
    assert_eq!(t.blowup_count(), 1);
    assert!(t.leaves().all(|n| n.status == Status::LeafPrincipal));
}

#[test]
fn order_reduction_with_a_kummer_center() {
    let c = Chart::smooth("X", &["x"], &["u"]);
    let m = MarkedIdeal::new(c.parse_all(&["x^2", "u"]).unwrap(), 2);
    let t = order_reduce(&c, &m, &Config::default()).unwrap();
    verified(&t);
    assert_eq!(root_action(&t).1, "(x, u^(1/2))");
    assert!(t.leaves().all(|n| n.status == Status::LeafReduced));
    assert!(t.nodes.iter().any(|n| !n.chart.characters.is_empty()));
}

#[test]
fn order_reduction_of_a_non_monomial_coefficient_ideal() {
    let c = Chart::smooth("X", &["x"], &["u"]);
    let m = MarkedIdeal::new(c.parse_all(&["x^3", "x*u^3", "u^6"]).unwrap(), 3);
    let t = order_reduce(&c, &m, &Config::default()).unwrap();
    verified(&t);
    assert_eq!(root_action(&t).1, "(x, u^(3/2))");
}

#[test]
fn cusp_is_principalized() {
    let c = Chart::affine("X", &["x", "y"]);
    let t = principalize(&c, &c.parse_all(&["x^2 + y^3"]).unwrap(), &Config::default()).unwrap();
    verified(&t);
    assert_eq!(root_action(&t), ("(2, 3/2, inf)".to_string(), "(x, y)".to_string()));
    assert!(t.nodes.iter().all(|n| n.depth <= 64));
}

#[test]
fn parabola_and_line_pair_are_principalized() {
    let c = Chart::smooth("X", &["x"], &["u"]);
    for g in ["x^2 - u", "x^2 - u^2"] {
        let t = principalize(&c, &c.parse_all(&[g]).unwrap(), &Config::default()).unwrap();
        verified(&t);
        assert!(t.leaves().all(|n| n.status == Status::LeafPrincipal), "{g}");
    }
}

#[test]
fn difference_of_boundary_monomials() {
    let c = Chart::smooth("X", &[], &["u", "v"]);
    let t = principalize(&c, &c.parse_all(&["u - v"]).unwrap(), &Config::default()).unwrap();
    verified(&t);
    assert_eq!(root_action(&t), ("(inf)".to_string(), "(u, v)".to_string()));
}

#[test]
fn unit_and_zero_ideals() {
    let c = Chart::smooth("X", &["x"], &["u"]);
    let unit = principalize(&c, &c.parse_all(&["1"]).unwrap(), &Config::default()).unwrap();
    assert_eq!(unit.nodes.len(), 1);
    assert_eq!(unit.nodes[0].status, Status::LeafPrincipal);
    let zero = principalize(&c, &[], &Config::default()).unwrap();
    assert_eq!(zero.nodes.len(), 1);
    assert_eq!(zero.nodes[0].status, Status::LeafEmpty);
}

#[test]
fn monomial_ideal_needs_one_trivial_blowup() {
    let c = Chart::smooth("X", &[], &["u", "v"]);
    let t = principalize(&c, &c.parse_all(&["u^2*v"]).unwrap(), &Config::default()).unwrap();
    verified(&t);
    assert_eq!(t.blowup_count(), 1);
    assert!(t.nodes[0].action.as_ref().unwrap().trivial);
}

#[test]
fn depth_limit_is_reported() {
    let c = Chart::affine("X", &["x", "y"]);
    let cfg = Config { max_depth: 1, ..Config::default() };
    let err = principalize(&c, &c.parse_all(&["x^2 + y^3"]).unwrap(), &cfg).unwrap_err();
    assert!(matches!(err, logres::Error::DepthExceeded(_)), "{err}");
}

#[test]
fn embedded_resolution_stages() {
    let cfg = Config::default();
    let a = Chart::affine("X", &["x", "y"]);
    let r = resolve_embedded(&a, &a.parse_all(&["x"]).unwrap(), 1, &cfg).unwrap();
    assert_eq!(r.stage, 0);
    assert_eq!(r.charts.len(), 1);
    assert_eq!(r.charts[0].chart.names(), vec!["y"]);

    let uv = Chart::smooth("X", &[], &["u", "v"]);
    let r = resolve_embedded(&uv, &uv.parse_all(&["u - v"]).unwrap(), 1, &cfg).unwrap();
    assert_eq!(r.stage, 1);
    assert!(!r.charts.is_empty());

    let c = Chart::smooth("X", &["x"], &["u"]);
    let r = resolve_embedded(&c, &c.parse_all(&["x^2 - u"]).unwrap(), 1, &cfg).unwrap();
    assert!(!r.charts.is_empty());
    assert!(r.charts.iter().all(|z| z.chart.nvars() == 1));
}
