//! Tails of the curve, the global blowup plan for the degree-2 Abel map and
//! the local classification at a pair of nodes.

use crate::error::{input, Error, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::hemisphere::{Hemisphere, HemisphereIndex};
use crate::tropical::{region_constancy_with, Abel2Solver, ConstancyReport, OrientedEdge, Region};

/// Hemispheres with `δ ∈ deltas` avoiding `v0`, in canonical order.
pub fn tails(g: &MultiGraph, v0: usize, deltas: &[usize]) -> Result<Vec<Hemisphere>> {
    let index = HemisphereIndex::new(g)?;
    tails_in(&index, g, v0, deltas)
}

fn tails_in(index: &HemisphereIndex, g: &MultiGraph, v0: usize, deltas: &[usize]) -> Result<Vec<Hemisphere>> {
    if v0 >= g.vertex_count() {
        return input("base vertex out of range");
    }
    Ok(index.all().iter().filter(|h| deltas.contains(&h.delta()) && !h.contains(v0)).cloned().collect())
}

/// The diagonal together with the 2-tails and 3-tails avoiding `v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupPlan {
    pub include_diagonal: bool,
    pub centers: Vec<Hemisphere>,
}

impl BlowupPlan {
    pub fn center_ids<'g>(&self, g: &'g MultiGraph) -> Vec<Vec<&'g str>> {
        self.centers.iter().map(|h| h.ids(g)).collect()
    }
}

pub fn blowup_plan(g: &MultiGraph, v0: usize) -> Result<BlowupPlan> {
    Ok(BlowupPlan { include_diagonal: true, centers: tails(g, v0, &[2, 3])? })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The Abel map is already defined at the pair of nodes.
    Defined,
    /// Blow up along `Z1 × Z2`.
    BlowupProduct { z1: VertexSet, z2: VertexSet },
    /// Blow up along `Z1 × Z2^c`.
    BlowupMixed { z1: VertexSet, z2: VertexSet },
    /// No scheme was constant on the sampled grid.
    Unresolved,
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Defined => "DEFINED",
            Verdict::BlowupProduct { .. } => "BLOWUP_Z1xZ2",
            Verdict::BlowupMixed { .. } => "BLOWUP_Z1xZ2C",
            Verdict::Unresolved => "UNRESOLVED",
        }
    }

    pub fn centers(&self) -> Option<(&VertexSet, &VertexSet)> {
        match self {
            Verdict::BlowupProduct { z1, z2 } | Verdict::BlowupMixed { z1, z2 } => Some((z1, z2)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastPath {
    OneTail,
    TwoTail,
    Diagonal,
}

impl FastPath {
    pub fn tag(&self) -> &'static str {
        match self {
            FastPath::OneTail => "ONE_TAIL",
            FastPath::TwoTail => "TWO_TAIL",
            FastPath::Diagonal => "DIAGONAL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePairClassification {
    pub e1: usize,
    pub e2: usize,
    pub verdict: Verdict,
    pub fast_path: Option<FastPath>,
    pub evidence: Vec<ConstancyReport>,
    pub denominators: Vec<i64>,
}

const PRODUCT: [Region; 2] = [Region::XLtY, Region::YLtX];
const MIXED: [Region; 2] = [Region::XLt1MinusY, Region::OneMinusYLtX];

pub fn classify_node_pair(
    g: &MultiGraph,
    v0: usize,
    e1: usize,
    e2: usize,
    denominators: &[i64],
) -> Result<NodePairClassification> {
    let solver = Abel2Solver::standard(g, v0)?;
    let index = HemisphereIndex::new(g)?;
    classify_node_pair_with(&solver, &index, e1, e2, denominators)
}

/// Classification with a shared solver (`D† = 2v0`, `μ = 0` expected) and
/// hemisphere index.
pub fn classify_node_pair_with(
    solver: &Abel2Solver<'_>,
    index: &HemisphereIndex,
    e1: usize,
    e2: usize,
    denominators: &[i64],
) -> Result<NodePairClassification> {
    let g = solver.graph();
    let v0 = solver.base_vertex();
    for e in [e1, e2] {
        if e >= g.edge_count() {
            return input(format!("edge index {e} out of range"));
        }
    }
    let run = |o1: OrientedEdge, o2: OrientedEdge, regions: &[Region]| -> Result<Vec<ConstancyReport>> {
        regions.iter().map(|&r| region_constancy_with(solver, o1, o2, r, denominators)).collect()
    };
    let done = |verdict, fast_path, evidence| NodePairClassification {
        e1,
        e2,
        verdict,
        fast_path,
        evidence,
        denominators: denominators.to_vec(),
    };
    let (f1, f2) = (OrientedEdge::forward(e1), OrientedEdge::forward(e2));
    let single = |o: OrientedEdge| VertexSet::from_indices(g.vertex_count(), [o.start(g)]);

    if g.is_bridge(e1) || g.is_bridge(e2) {
        return Ok(done(Verdict::Defined, Some(FastPath::OneTail), run(f1, f2, &[Region::FullSquare])?));
    }
    if e1 == e2 {
        let z = single(f1);
        let verdict = Verdict::BlowupMixed { z1: z.clone(), z2: z };
        return Ok(done(verdict, Some(FastPath::Diagonal), run(f1, f1, &MIXED)?));
    }
    let mut pair = [e1, e2];
    pair.sort_unstable();
    for z in tails_in(index, g, v0, &[2])? {
        if z.boundary(g) == pair {
            let (o1, o2) = out_of(g, &z, e1, e2)?;
            let verdict = Verdict::BlowupProduct { z1: z.set().clone(), z2: z.set().clone() };
            return Ok(done(verdict, Some(FastPath::TwoTail), run(o1, o2, &PRODUCT)?));
        }
    }

    let mut witnesses = Vec::new();
    let square = run(f1, f2, &[Region::FullSquare])?;
    if square[0].is_constant() {
        return Ok(done(Verdict::Defined, None, square));
    }
    witnesses.extend(square);

    let mut candidates: Vec<(OrientedEdge, OrientedEdge, VertexSet, VertexSet)> = Vec::new();
    for z in tails_in(index, g, v0, &[2, 3])? {
        let b = z.boundary(g);
        if b.contains(&e1) && b.contains(&e2) {
            let (o1, o2) = out_of(g, &z, e1, e2)?;
            candidates.push((o1, o2, z.set().clone(), z.set().clone()));
        }
    }
    for o1 in [f1, OrientedEdge::backward(e1)] {
        for o2 in [f2, OrientedEdge::backward(e2)] {
            candidates.push((o1, o2, single(o1), single(o2)));
        }
    }
    for (o1, o2, z1, z2) in candidates {
        let product = run(o1, o2, &PRODUCT)?;
        if product.iter().all(ConstancyReport::is_constant) {
            return Ok(done(Verdict::BlowupProduct { z1, z2 }, None, product));
        }
        witnesses.extend(product);
        let mixed = run(o1, o2, &MIXED)?;
        if mixed.iter().all(ConstancyReport::is_constant) {
            return Ok(done(Verdict::BlowupMixed { z1, z2 }, None, mixed));
        }
        witnesses.extend(mixed);
    }
    log::warn!("node pair ({}, {}) unresolved on the sampled grid", g.edge_at(e1).id, g.edge_at(e2).id);
    Ok(done(Verdict::Unresolved, None, witnesses.into_iter().filter(|r| !r.is_constant()).collect()))
}

/// Orientations of `e1`, `e2` from `z` to its complement.
fn out_of(g: &MultiGraph, z: &Hemisphere, e1: usize, e2: usize) -> Result<(OrientedEdge, OrientedEdge)> {
    let orient = |e: usize| {
        let edge = g.edge_at(e);
        let from = if z.contains(edge.source) { edge.source } else { edge.target };
        OrientedEdge::starting_at(g, e, from)
    };
    Ok((orient(e1)?, orient(e2)?))
}

/// For hemispheres `Z`, `Z'`: if every boundary edge of `Z` has an end in
/// `Z'`, then `Z ⊆ Z'` or `Z^c ⊆ Z'`. Checked exhaustively.
pub fn check_boundary_containment(g: &MultiGraph, index: &HemisphereIndex) -> Result<()> {
    for z in index.all() {
        let boundary = z.boundary(g);
        for zp in index.all() {
            let touched = boundary.iter().all(|&e| {
                let edge = g.edge_at(e);
                zp.contains(edge.source) || zp.contains(edge.target)
            });
            if touched && !z.set().is_subset(zp.set()) && !z.set().complement().is_subset(zp.set()) {
                return Err(Error::LemmaViolation(format!(
                    "boundary of {:?} meets {:?} at every edge but neither side is contained in it",
                    z.ids(g),
                    zp.ids(g)
                )));
            }
        }
    }
    Ok(())
}

/// For distinct centers `Zi`, `Zj` and distinct edges `N1`, `N2` in both
/// boundaries, rules out ends `C1 ∈ Zi ∩ Zj` of `N1` with `C2 ∈ Zi ∖ Zj`,
/// `C2' ∈ Zj ∖ Zi` the ends of `N2`.
pub fn check_center_configurations(g: &MultiGraph, plan: &BlowupPlan) -> Result<()> {
    for (i, zi) in plan.centers.iter().enumerate() {
        for zj in &plan.centers[i + 1..] {
            let (si, sj) = (zi.set(), zj.set());
            let both = si.intersection(sj);
            let (only_i, only_j) = (si.difference(sj), sj.difference(si));
            let bj = zj.boundary(g);
            let shared: Vec<usize> = zi.boundary(g).into_iter().filter(|e| bj.contains(e)).collect();
            for &n1 in &shared {
                let a = g.edge_at(n1);
                if !both.contains(a.source) && !both.contains(a.target) {
                    continue;
                }
                for &n2 in shared.iter().filter(|&&n| n != n1) {
                    let b = g.edge_at(n2);
                    let split = (only_i.contains(b.source) && only_j.contains(b.target))
                        || (only_i.contains(b.target) && only_j.contains(b.source));
                    let nested = si.is_subset(sj)
                        || sj.is_subset(si)
                        || si.complement().is_subset(sj)
                        || sj.is_subset(&si.complement());
                    if split && !nested {
                        return Err(Error::LemmaViolation(format!(
                            "centers {:?} and {:?} cross at edges {} and {}",
                            zi.ids(g),
                            zj.ids(g),
                            a.id,
                            b.id
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
