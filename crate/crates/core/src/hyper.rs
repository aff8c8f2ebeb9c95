//! Collisions `v1 + v2 ~ v1' + v2'` among effective degree-2 divisors: the
//! graph-level shadow of non-injectivity of the symmetrized degree-2 Abel map.
//!
//! Pairs of vertices of `Γ` are compared on `Γ`. Pairs involving a point over a
//! node are compared on `Γ̃`, the graph with one vertex inserted in every edge,
//! and never against pairs of `Γ`. Witnesses are certificates of divisor-class
//! collisions only; nothing is claimed about `h⁰` of the corresponding sheaves.

use std::collections::BTreeMap;

use crate::divisor::{laplacian_div, reduce_with_script, Divisor, FiringFunction};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Subdivision};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessLevel {
    Gamma,
    GammaTilde,
}

impl WitnessLevel {
    pub fn tag(&self) -> &'static str {
        match self {
            WitnessLevel::Gamma => "GAMMA",
            WitnessLevel::GammaTilde => "GAMMA_TILDE",
        }
    }
}

/// `pair1 − pair2 = laplacian_div(certificate)` on the graph of `level`.
/// Pairs hold vertex indices of that graph, each sorted, with `pair1 < pair2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub level: WitnessLevel,
    pub pair1: [usize; 2],
    pub pair2: [usize; 2],
    pub certificate: FiringFunction,
}

#[derive(Debug, Clone)]
pub struct HyperScan {
    pub tilde: Subdivision,
    pub witnesses: Vec<Witness>,
}

impl HyperScan {
    pub fn level_graph<'a>(&'a self, g: &'a MultiGraph, level: WitnessLevel) -> &'a MultiGraph {
        match level {
            WitnessLevel::Gamma => g,
            WitnessLevel::GammaTilde => self.tilde.derived(),
        }
    }

    pub fn is_pseudo_hyperelliptic(&self) -> bool {
        !self.witnesses.is_empty()
    }

    pub fn at_level(&self, level: WitnessLevel) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(move |w| w.level == level)
    }

    /// Pairs of a witness as vertex ids.
    pub fn pair_ids<'a>(&'a self, g: &'a MultiGraph, w: &Witness) -> [[&'a str; 2]; 2] {
        let h = self.level_graph(g, w.level);
        [w.pair1.map(|v| h.vertex_id(v)), w.pair2.map(|v| h.vertex_id(v))]
    }
}

pub fn find_witnesses(g: &MultiGraph) -> Result<HyperScan> {
    if let Some(&e) = g.bridges().first() {
        return Err(Error::Unsupported(format!(
            "edge {} is a bridge; the scan assumes no separating nodes",
            g.edge_at(e).id
        )));
    }
    let tilde = g.subdivide_uniform(2)?;
    let n = g.vertex_count();
    let mut witnesses = scan(g, (0..n).flat_map(|a| (a..n).map(move |b| [a, b])), WitnessLevel::Gamma)?;

    let h = tilde.derived();
    let m = h.vertex_count();
    let is_node = |v: usize| tilde.base_vertex(v).is_none();
    let pairs = (0..m).flat_map(|a| (a..m).map(move |b| [a, b])).filter(|p| is_node(p[0]) || is_node(p[1]));
    witnesses.extend(scan(h, pairs, WitnessLevel::GammaTilde)?);
    Ok(HyperScan { tilde, witnesses })
}

pub fn is_graph_pseudo_hyperelliptic(g: &MultiGraph) -> Result<bool> {
    Ok(find_witnesses(g)?.is_pseudo_hyperelliptic())
}

fn scan(h: &MultiGraph, pairs: impl Iterator<Item = [usize; 2]>, level: WitnessLevel) -> Result<Vec<Witness>> {
    let n = h.vertex_count();
    let mut classes: BTreeMap<Vec<i64>, Vec<([usize; 2], FiringFunction)>> = BTreeMap::new();
    for p in pairs {
        let mut d = Divisor::zero(n);
        d.add_at(p[0], 1);
        d.add_at(p[1], 1);
        let (reduced, script) = reduce_with_script(h, &d, 0);
        classes.entry(reduced.values().to_vec()).or_default().push((p, script));
    }
    let mut out = Vec::new();
    for members in classes.values() {
        for (i, (p, s)) in members.iter().enumerate() {
            for (q, t) in &members[i + 1..] {
                let (pair1, pair2, certificate) = if p < q {
                    (*p, *q, s.difference(t).normalized())
                } else {
                    (*q, *p, t.difference(s).normalized())
                };
                let w = Witness { level, pair1, pair2, certificate };
                verify(h, &w)?;
                out.push(w);
            }
        }
    }
    out.sort_by_key(|w| (w.pair1, w.pair2));
    Ok(out)
}

fn verify(h: &MultiGraph, w: &Witness) -> Result<()> {
    let mut diff = Divisor::zero(h.vertex_count());
    for v in w.pair1 {
        diff.add_at(v, 1);
    }
    for v in w.pair2 {
        diff.add_at(v, -1);
    }
    if laplacian_div(h, &w.certificate) != diff {
        return Err(Error::Internal(format!(
            "certificate for {:?} vs {:?} does not fire to the pair difference",
            w.pair1, w.pair2
        )));
    }
    Ok(())
}
