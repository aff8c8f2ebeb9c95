//! JSON encodings (schema version 1). Rationals are strings such as `"2/3"`;
//! integers stay numeric. Object keys are sorted, so output is deterministic.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::divisor::{Divisor, FiringFunction, Polarization};
use crate::error::{input, Error, Result};
use crate::graph::{EdgeSpec, MultiGraph, VertexSet};
use crate::hemisphere::{FamilyF, FreeTower, Hemisphere, Intersection23, IntersectionShape};
use crate::hyper::HyperScan;
use crate::planner::{BlowupPlan, NodePairClassification};
use crate::tropical::{CombinatorialType, Constancy, ConstancyReport, OrientedEdge, Sample, TropicalDivisor, TropicalPoint};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    #[serde(default)]
    v: Option<u64>,
    vertices: Vec<String>,
    edges: Vec<EdgeFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    #[serde(default)]
    id: Option<String>,
    ends: [String; 2],
}

#[derive(Deserialize)]
struct ValuesFile<T> {
    #[serde(default)]
    v: Option<u64>,
    values: BTreeMap<String, T>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Int(i64),
    Text(String),
}

fn check_version(v: Option<u64>) -> Result<()> {
    match v {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => input(format!("unsupported schema version {other}")),
    }
}

fn decode<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed {what} JSON: {e}")))
}

pub fn parse_graph(text: &str) -> Result<MultiGraph> {
    let file: GraphFile = decode(text, "graph")?;
    check_version(file.v)?;
    let edges = file
        .edges
        .into_iter()
        .map(|e| {
            let [a, b] = e.ends;
            match e.id {
                Some(id) => EdgeSpec::with_id(id, a, b),
                None => EdgeSpec::new(a, b),
            }
        })
        .collect();
    MultiGraph::new(file.vertices, edges)
}

pub fn graph_json(g: &MultiGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"id": e.id, "ends": [g.vertex_id(e.source), g.vertex_id(e.target)]}))
        .collect();
    json!({"v": SCHEMA_VERSION, "vertices": g.vertex_ids(), "edges": edges})
}

fn named_values<T: Copy>(g: &MultiGraph, values: BTreeMap<String, T>, zero: T) -> Result<Vec<T>> {
    let mut out = vec![zero; g.vertex_count()];
    for (id, k) in values {
        out[g.vertex(&id)?] = k;
    }
    Ok(out)
}

pub fn parse_divisor(g: &MultiGraph, text: &str) -> Result<Divisor> {
    let file: ValuesFile<i64> = decode(text, "divisor")?;
    check_version(file.v)?;
    Ok(Divisor::from_values(named_values(g, file.values, 0)?))
}

pub fn parse_rational(text: &str) -> Result<Rational64> {
    let bad = || Error::Input(format!("{text:?} is not a rational number"));
    let (num, den) = match text.trim().split_once('/') {
        Some((a, b)) => (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?),
        None => (text.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(num, den))
}

pub fn parse_polarization(g: &MultiGraph, text: &str) -> Result<Polarization> {
    let file: ValuesFile<RationalText> = decode(text, "polarization")?;
    check_version(file.v)?;
    let mut values = BTreeMap::new();
    for (id, r) in file.values {
        let q = match r {
            RationalText::Int(k) => Rational64::from_integer(k),
            RationalText::Text(s) => parse_rational(&s)?,
        };
        values.insert(id, q);
    }
    Polarization::new(named_values(g, values, Rational64::from_integer(0))?)
}

pub fn divisor_values(g: &MultiGraph, d: &Divisor) -> Value {
    json!(d.to_named(g))
}

pub fn polarization_values(g: &MultiGraph, mu: &Polarization) -> Value {
    let m: BTreeMap<String, String> = mu.to_named(g).into_iter().map(|(k, q)| (k, q.to_string())).collect();
    json!(m)
}

pub fn firing_values(g: &MultiGraph, f: &FiringFunction) -> Value {
    json!(f.to_named(g))
}

/// `{"vertex": "a"}` or `{"edge": "e3", "t": "1/3"}`.
pub fn parse_point(g: &MultiGraph, value: &Value) -> Result<TropicalPoint> {
    let obj = value.as_object().ok_or_else(|| Error::Input("a point must be a JSON object".into()))?;
    if let Some(v) = obj.get("vertex") {
        let id = v.as_str().ok_or_else(|| Error::Input("vertex must be a string".into()))?;
        return Ok(TropicalPoint::Vertex(g.vertex(id)?));
    }
    let edge = obj
        .get("edge")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Input("a point needs \"vertex\" or \"edge\"".into()))?;
    let t = match obj.get("t") {
        Some(Value::String(s)) => parse_rational(s)?,
        Some(Value::Number(n)) if n.is_i64() => Rational64::from_integer(n.as_i64().unwrap_or_default()),
        _ => return input("an edge point needs \"t\" as a rational string"),
    };
    TropicalPoint::on_edge(g, g.edge(edge)?, t)
}

pub fn parse_point_text(g: &MultiGraph, text: &str) -> Result<TropicalPoint> {
    let value: Value = decode(text, "point")?;
    parse_point(g, &value)
}

pub fn point_json(g: &MultiGraph, p: &TropicalPoint) -> Value {
    match p {
        TropicalPoint::Vertex(v) => json!({"vertex": g.vertex_id(*v)}),
        TropicalPoint::Interior { edge, t } => json!({"edge": g.edge_at(*edge).id, "t": t.to_string()}),
    }
}

/// `"e3"` or `"e3:rev"`.
pub fn parse_oriented_edge(g: &MultiGraph, text: &str) -> Result<OrientedEdge> {
    match text.rsplit_once(':') {
        Some((id, "rev")) => Ok(OrientedEdge::backward(g.edge(id)?)),
        Some((id, "fwd")) => Ok(OrientedEdge::forward(g.edge(id)?)),
        _ => Ok(OrientedEdge::forward(g.edge(text)?)),
    }
}

pub fn tropical_divisor_json(g: &MultiGraph, d: &TropicalDivisor) -> Value {
    let points: Vec<Value> = d
        .iter()
        .map(|(p, k)| {
            let mut v = point_json(g, p);
            v["k"] = json!(k);
            v
        })
        .collect();
    json!({"points": points, "type": type_json(g, &d.combinatorial_type(g))})
}

pub fn type_json(g: &MultiGraph, ty: &CombinatorialType) -> Value {
    let vertices: BTreeMap<&str, i64> =
        ty.vertices.iter().enumerate().filter(|(_, &k)| k != 0).map(|(v, &k)| (g.vertex_id(v), k)).collect();
    let edges: BTreeMap<&str, &Vec<i64>> =
        ty.edges.iter().enumerate().filter(|(_, p)| !p.is_empty()).map(|(e, p)| (g.edge_at(e).id.as_str(), p)).collect();
    json!({"vertices": vertices, "edges": edges})
}

fn sample_json(g: &MultiGraph, s: &Sample) -> Value {
    json!({"x": s.x.to_string(), "y": s.y.to_string(), "type": type_json(g, &s.ty)})
}

pub fn constancy_json(g: &MultiGraph, r: &ConstancyReport) -> Value {
    let mut v = json!({
        "e1": r.e1.describe(g),
        "e2": r.e2.describe(g),
        "region": r.region.name(),
        "denominators": r.denominators,
        "samples": r.samples,
        "max_n": r.max_n,
    });
    match &r.outcome {
        Constancy::Constant(ty) => {
            v["status"] = json!("constant");
            v["type"] = type_json(g, ty);
        }
        Constancy::Witness(a, b) => {
            v["status"] = json!("witness");
            v["witness"] = json!([sample_json(g, a), sample_json(g, b)]);
        }
    }
    v
}

pub fn vertex_set_json(g: &MultiGraph, s: &VertexSet) -> Value {
    json!(s.ids(g))
}

pub fn hemisphere_json(g: &MultiGraph, h: &Hemisphere) -> Value {
    let boundary: Vec<&str> = h.boundary(g).into_iter().map(|e| g.edge_at(e).id.as_str()).collect();
    json!({"vertices": h.ids(g), "delta": h.delta(), "boundary": boundary})
}

pub fn plan_json(g: &MultiGraph, plan: &BlowupPlan) -> Value {
    json!({"diagonal": plan.include_diagonal, "centers": plan.center_ids(g)})
}

pub fn classification_json(g: &MultiGraph, c: &NodePairClassification) -> Value {
    let mut v = json!({
        "e1": g.edge_at(c.e1).id,
        "e2": g.edge_at(c.e2).id,
        "verdict": c.verdict.tag(),
        "fast_path": c.fast_path.map(|f| f.tag()),
        "denominators": c.denominators,
        "evidence": c.evidence.iter().map(|r| constancy_json(g, r)).collect::<Vec<_>>(),
    });
    if let Some((z1, z2)) = c.verdict.centers() {
        v["z1"] = vertex_set_json(g, z1);
        v["z2"] = vertex_set_json(g, z2);
    }
    v
}

fn tower_json(g: &MultiGraph, t: &FreeTower) -> Value {
    json!({"k": t.k, "members": t.members.iter().map(|h| hemisphere_json(g, h)).collect::<Vec<_>>()})
}

pub fn family_f_json(g: &MultiGraph, f: &FamilyF) -> Value {
    let list = |hs: &[Hemisphere]| hs.iter().map(|h| hemisphere_json(g, h)).collect::<Vec<_>>();
    json!({
        "h1_v1": list(&f.h1_v1),
        "h1_v2": list(&f.h1_v2),
        "tower2": tower_json(g, &f.tower2),
        "tower3": tower_json(g, &f.tower3),
    })
}

pub fn intersection_json(g: &MultiGraph, i: &Intersection23) -> Value {
    let ids = |es: &[usize]| es.iter().map(|&e| g.edge_at(e).id.clone()).collect::<Vec<_>>();
    let shape = match i.shape {
        IntersectionShape::TwoHemisphere => "TWO_HEMISPHERE",
        IntersectionShape::ThreeHemisphere => "THREE_HEMISPHERE",
    };
    json!({
        "shape": shape,
        "intersection": hemisphere_json(g, &i.intersection),
        "f1": g.edge_at(i.f1).id,
        "f2": g.edge_at(i.f2).id,
        "e_in_h2": ids(&i.e_in_h2),
        "e_in_h2c": ids(&i.e_in_h2c),
    })
}

pub fn hyper_scan_json(g: &MultiGraph, scan: &HyperScan) -> Value {
    let witnesses: Vec<Value> = scan
        .witnesses
        .iter()
        .map(|w| {
            let [p1, p2] = scan.pair_ids(g, w);
            let h = scan.level_graph(g, w.level);
            json!({
                "level": w.level.tag(),
                "pair1": p1,
                "pair2": p2,
                "certificate": firing_values(h, &w.certificate),
            })
        })
        .collect();
    json!({"pseudo_hyperelliptic": scan.is_pseudo_hyperelliptic(), "witnesses": witnesses})
}

/// Adds `"v"` and, when `verified`, `"verified": true` to a report object.
pub fn envelope(mut report: Value, verified: bool) -> Value {
    if let Value::Object(map) = &mut report {
        map.insert("v".into(), json!(SCHEMA_VERSION));
        if verified {
            map.insert("verified".into(), Value::Bool(true));
        }
    }
    report
}

/// Checks the schema version of an emitted report.
pub fn check_report(text: &str) -> Result<Map<String, Value>> {
    let value: Value = decode(text, "report")?;
    match value {
        Value::Object(map) if map.get("v") == Some(&json!(SCHEMA_VERSION)) => Ok(map),
        _ => input("report lacks schema version 1"),
    }
}
