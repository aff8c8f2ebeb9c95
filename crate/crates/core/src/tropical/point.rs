use num_rational::Rational64;

use crate::error::{input, Result};
use crate::graph::MultiGraph;

/// A rational point of the unit-length tropical curve `X_Γ`.
///
/// Points with `t ∈ {0, 1}` are always stored as the corresponding vertex, so
/// equal points compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropicalPoint {
    Vertex(usize),
    /// `p_{e,t}`: distance `t ∈ (0, 1)` from the source of edge `e`.
    Interior { edge: usize, t: Rational64 },
}

impl TropicalPoint {
    pub fn on_edge(g: &MultiGraph, edge: usize, t: Rational64) -> Result<Self> {
        if edge >= g.edge_count() {
            return input(format!("edge index {edge} out of range"));
        }
        let zero = Rational64::from_integer(0);
        let one = Rational64::from_integer(1);
        if t < zero || t > one {
            return input(format!("edge parameter {t} outside [0, 1]"));
        }
        let e = g.edge_at(edge);
        Ok(if t == zero {
            TropicalPoint::Vertex(e.source)
        } else if t == one {
            TropicalPoint::Vertex(e.target)
        } else {
            TropicalPoint::Interior { edge, t }
        })
    }

    pub fn vertex(v: usize) -> Self {
        TropicalPoint::Vertex(v)
    }

    /// Denominator of the edge parameter; 1 for vertices.
    pub fn denominator(&self) -> i64 {
        match self {
            TropicalPoint::Vertex(_) => 1,
            TropicalPoint::Interior { t, .. } => *t.denom(),
        }
    }

    pub fn describe(&self, g: &MultiGraph) -> String {
        match self {
            TropicalPoint::Vertex(v) => g.vertex_id(*v).to_string(),
            TropicalPoint::Interior { edge, t } => format!("p({},{})", g.edge_at(*edge).id, t),
        }
    }
}

/// An edge traversed either from its source (`reversed = false`) or from its
/// target; the parameter `x` of an oriented edge is the point at distance `x`
/// from its starting end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientedEdge {
    pub edge: usize,
    pub reversed: bool,
}

impl OrientedEdge {
    pub fn forward(edge: usize) -> Self {
        OrientedEdge { edge, reversed: false }
    }

    pub fn backward(edge: usize) -> Self {
        OrientedEdge { edge, reversed: true }
    }

    /// The edge oriented so that it starts at `from`.
    pub fn starting_at(g: &MultiGraph, edge: usize, from: usize) -> Result<Self> {
        let e = g.edge_at(edge);
        if e.source == from {
            Ok(Self::forward(edge))
        } else if e.target == from {
            Ok(Self::backward(edge))
        } else {
            input(format!("vertex {} is not an end of edge {}", g.vertex_id(from), e.id))
        }
    }

    pub fn point(&self, g: &MultiGraph, x: Rational64) -> Result<TropicalPoint> {
        let t = if self.reversed { Rational64::from_integer(1) - x } else { x };
        TropicalPoint::on_edge(g, self.edge, t)
    }

    pub fn start(&self, g: &MultiGraph) -> usize {
        let e = g.edge_at(self.edge);
        if self.reversed {
            e.target
        } else {
            e.source
        }
    }

    pub fn describe(&self, g: &MultiGraph) -> String {
        let e = g.edge_at(self.edge);
        if self.reversed {
            format!("{}:rev", e.id)
        } else {
            e.id.clone()
        }
    }
}
