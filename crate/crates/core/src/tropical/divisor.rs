use std::collections::BTreeMap;

use num_rational::Rational64;

use super::point::TropicalPoint;
use crate::divisor::{is_quasistable, Divisor, Polarization};
use crate::error::{input, Result};
use crate::graph::{MultiGraph, Subdivision};

/// A finitely supported integer combination of points of `X_Γ`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TropicalDivisor {
    points: BTreeMap<TropicalPoint, i64>,
}

impl TropicalDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph_divisor(d: &Divisor) -> Self {
        let mut t = Self::new();
        for v in d.support() {
            t.add(TropicalPoint::Vertex(v), d.get(v));
        }
        t
    }

    pub fn add(&mut self, p: TropicalPoint, k: i64) {
        let slot = self.points.entry(p).or_insert(0);
        *slot += k;
        if *slot == 0 {
            self.points.remove(&p);
        }
    }

    pub fn get(&self, p: &TropicalPoint) -> i64 {
        self.points.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TropicalPoint, &i64)> {
        self.points.iter()
    }

    pub fn degree(&self) -> i64 {
        self.points.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }

    /// True when every point is a vertex.
    pub fn is_vertex_supported(&self) -> bool {
        self.points.keys().all(|p| matches!(p, TropicalPoint::Vertex(_)))
    }

    /// The vertex part as a graph divisor.
    pub fn vertex_part(&self, n: usize) -> Divisor {
        let mut d = Divisor::zero(n);
        for (p, k) in &self.points {
            if let TropicalPoint::Vertex(v) = p {
                d.add_at(*v, *k);
            }
        }
        d
    }

    pub fn combinatorial_type(&self, g: &MultiGraph) -> CombinatorialType {
        let mut vertices = vec![0; g.vertex_count()];
        let mut edges = vec![Vec::new(); g.edge_count()];
        // BTreeMap order visits interior points of an edge by increasing t
        for (p, k) in &self.points {
            match p {
                TropicalPoint::Vertex(v) => vertices[*v] += k,
                TropicalPoint::Interior { edge, .. } => edges[*edge].push(*k),
            }
        }
        CombinatorialType { vertices, edges }
    }

    /// The divisor on the uniform `n`-subdivision; every point must lie on the
    /// `1/n` lattice.
    pub fn on_subdivision(&self, sub: &Subdivision, n: i64) -> Result<Divisor> {
        let mut d = Divisor::zero(sub.derived().vertex_count());
        for (p, k) in &self.points {
            let dv = match p {
                TropicalPoint::Vertex(v) => sub.lift_vertex(*v),
                TropicalPoint::Interior { edge, t } => {
                    let pos = *t * Rational64::from_integer(n);
                    if !pos.is_integer() {
                        return input(format!("point at t = {t} is off the 1/{n} lattice"));
                    }
                    sub.chain(*edge)[pos.to_integer() as usize]
                }
            };
            d.add_at(dv, *k);
        }
        Ok(d)
    }

    pub fn describe(&self, g: &MultiGraph) -> String {
        let parts: Vec<String> = self.points.iter().map(|(p, k)| format!("{k}·{}", p.describe(g))).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Vertex values plus, per edge, the interior values ordered from the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombinatorialType {
    pub vertices: Vec<i64>,
    pub edges: Vec<Vec<i64>>,
}

impl CombinatorialType {
    /// Whether every edge carries at most one interior value.
    pub fn is_minimal_refinable(&self) -> bool {
        self.edges.iter().all(|p| p.len() <= 1)
    }

    /// The minimal refinement `Γ̂` (one inserted vertex per interior value)
    /// with the induced graph divisor. Only for types with profiles of length ≤ 1.
    pub fn refinement(&self, g: &MultiGraph) -> Result<(Subdivision, Divisor)> {
        if !self.is_minimal_refinable() {
            return input("an edge carries more than one interior value");
        }
        let counts: Vec<usize> = self.edges.iter().map(Vec::len).collect();
        let sub = g.refine(&counts)?;
        let mut d = Divisor::zero(sub.derived().vertex_count());
        for (v, &k) in self.vertices.iter().enumerate() {
            d.add_at(sub.lift_vertex(v), k);
        }
        for (e, profile) in self.edges.iter().enumerate() {
            if let Some(&k) = profile.first() {
                d.add_at(sub.chain(e)[1], k);
            }
        }
        Ok((sub, d))
    }
}

/// Quasistability of a tropical divisor through its minimal refinement: at most
/// one interior point per edge and the induced divisor on `Γ̂` quasistable,
/// with `μ` extended by zero.
pub fn is_quasistable_tropical(
    g: &MultiGraph,
    d: &TropicalDivisor,
    v0: usize,
    mu: &Polarization,
) -> Result<bool> {
    mu.check_graph(g)?;
    let ty = d.combinatorial_type(g);
    if !ty.is_minimal_refinable() {
        return Ok(false);
    }
    let (sub, dd) = ty.refinement(g)?;
    let derived = sub.derived();
    let mut mu_hat = vec![Rational64::from_integer(0); derived.vertex_count()];
    for v in 0..g.vertex_count() {
        mu_hat[sub.lift_vertex(v)] = mu.get(v);
    }
    is_quasistable(derived, &dd, sub.lift_vertex(v0), &Polarization::new(mu_hat)?)
}
