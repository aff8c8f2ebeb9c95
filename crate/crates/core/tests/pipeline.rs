use num_rational::Rational64;
use serde_json::Value;

use tropabel::divisor::{quasistable_rep, Polarization};
use tropabel::fixtures;
use tropabel::hyper::{find_witnesses, WitnessLevel};
use tropabel::json as j;
use tropabel::planner::{blowup_plan, check_center_configurations, classify_node_pair_with, Verdict};
use tropabel::tropical::{region_constancy_with, Abel2Solver, OrientedEdge, Region, TropicalPoint};
use tropabel::{Divisor, HemisphereIndex, MultiGraph};

#[test]
fn every_node_pair_resolves_on_fixtures() {
    for g in fixtures::all() {
        let index = HemisphereIndex::new(&g).unwrap();
        let v0 = 0;
        let solver = Abel2Solver::standard(&g, v0).unwrap();
        let plan = blowup_plan(&g, v0).unwrap();
        check_center_configurations(&g, &plan).unwrap();
        for e1 in 0..g.edge_count() {
            for e2 in e1..g.edge_count() {
                let c = classify_node_pair_with(&solver, &index, e1, e2, &[3, 4]).unwrap();
                let here = format!("{:?} pair ({e1}, {e2})", g.vertex_ids());
                assert_ne!(c.verdict, Verdict::Unresolved, "{here}");
                assert!(c.evidence.iter().all(|r| r.is_constant()), "{here}");
                match &c.verdict {
                    Verdict::Defined => {
                        assert!(c.evidence.iter().all(|r| r.region == Region::FullSquare), "{here}")
                    }
                    Verdict::BlowupProduct { z1, z2 } => {
                        assert!(c.evidence.iter().all(|r| matches!(r.region, Region::XLtY | Region::YLtX)));
                        if z1 == z2 && e1 != e2 {
                            assert!(plan.centers.iter().any(|h| h.set() == z1), "{here}");
                        }
                    }
                    Verdict::BlowupMixed { .. } => assert!(c
                        .evidence
                        .iter()
                        .all(|r| matches!(r.region, Region::XLt1MinusY | Region::OneMinusYLtX))),
                    Verdict::Unresolved => unreachable!(),
                }
            }
        }
    }
}

#[test]
fn bridge_fast_path_agrees_with_full_square() {
    let g = fixtures::triangle_with_bridge();
    let solver = Abel2Solver::standard(&g, 0).unwrap();
    let index = HemisphereIndex::new(&g).unwrap();
    let bridge = g.bridges()[0];
    for other in 0..g.edge_count() {
        let c = classify_node_pair_with(&solver, &index, bridge, other, &[3, 5]).unwrap();
        assert_eq!(c.verdict, Verdict::Defined);
        let square = region_constancy_with(
            &solver,
            OrientedEdge::forward(bridge),
            OrientedEdge::forward(other),
            Region::FullSquare,
            &[3, 5],
        )
        .unwrap();
        assert!(square.is_constant());
    }
}

#[test]
fn abel_map_interior_values_are_quasistable_and_equivalent() {
    use tropabel::tropical::is_quasistable_tropical;
    let g = fixtures::kite();
    let mu = Polarization::zero(g.vertex_count());
    let solver = Abel2Solver::standard(&g, 0).unwrap();
    for e1 in 0..g.edge_count() {
        for e2 in 0..g.edge_count() {
            let p1 = TropicalPoint::on_edge(&g, e1, Rational64::new(1, 3)).unwrap();
            let p2 = TropicalPoint::on_edge(&g, e2, Rational64::new(3, 4)).unwrap();
            let value = solver.evaluate(&p1, &p2).unwrap();
            assert!(!value.retried);
            assert_eq!(value.divisor.degree(), 0);
            assert!(is_quasistable_tropical(&g, &value.divisor, 0, &mu).unwrap());
        }
    }
}

#[test]
fn witnesses_agree_with_quasistable_collisions_for_every_base() {
    for g in fixtures::all().into_iter().filter(|g| g.bridges().is_empty()) {
        let scan = find_witnesses(&g).unwrap();
        let n = g.vertex_count();
        for w in scan.at_level(WitnessLevel::Gamma) {
            for v0 in 0..n {
                let rep = |p: [usize; 2]| {
                    let mut d = Divisor::zero(n);
                    d.add_at(v0, 2);
                    d.add_at(p[0], -1);
                    d.add_at(p[1], -1);
                    quasistable_rep(&g, &d, v0, &Polarization::zero(n)).unwrap()
                };
                assert_eq!(rep(w.pair1), rep(w.pair2));
            }
        }
        for w in &scan.witnesses {
            assert!(w.pair1 < w.pair2);
        }
    }
}

fn reparse(text: &str) -> Value {
    j::check_report(text).unwrap();
    serde_json::from_str(text).unwrap()
}

#[test]
fn reports_round_trip() {
    let g: MultiGraph = fixtures::c4();
    let text = j::envelope(j::plan_json(&g, &blowup_plan(&g, 0).unwrap()), true).to_string();
    assert_eq!(reparse(&text)["centers"].as_array().unwrap().len(), 6);

    let solver = Abel2Solver::standard(&g, 0).unwrap();
    let index = HemisphereIndex::new(&g).unwrap();
    let c = classify_node_pair_with(&solver, &index, 0, 2, &[3, 4]).unwrap();
    let text = j::envelope(j::classification_json(&g, &c), true).to_string();
    let v = reparse(&text);
    assert_eq!(v["verdict"], c.verdict.tag());
    assert_eq!(text, j::envelope(j::classification_json(&g, &c), true).to_string());

    let p = TropicalPoint::on_edge(&g, 1, Rational64::new(2, 5)).unwrap();
    let value = solver.evaluate(&p, &TropicalPoint::Vertex(2)).unwrap();
    let text = j::envelope(j::tropical_divisor_json(&g, &value.divisor), true).to_string();
    let v = reparse(&text);
    for point in v["points"].as_array().unwrap() {
        j::parse_point(&g, point).unwrap();
    }

    let graph_text = j::graph_json(&g).to_string();
    assert_eq!(j::graph_json(&j::parse_graph(&graph_text).unwrap()).to_string(), graph_text);

    let scan = find_witnesses(&g).unwrap();
    let v = reparse(&j::envelope(j::hyper_scan_json(&g, &scan), true).to_string());
    assert_eq!(v["witnesses"].as_array().unwrap().len(), scan.witnesses.len());
}
