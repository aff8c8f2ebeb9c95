//! Finite loopless multigraphs, vertex subsets and edge subdivisions.
//!
//! Vertices are stored in lexicographic order of their ids, so vertex index
//! order is the canonical order used for iteration and output. Edges keep the
//! order in which they were listed; each edge has a designated source and
//! target (the order of its `ends`), which fixes the parametrization of the
//! corresponding segment of the tropical curve.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{input, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Edge {
    /// The endpoint opposite to `v`. `v` must be an endpoint.
    pub fn other(&self, v: usize) -> usize {
        if v == self.source {
            self.target
        } else {
            debug_assert_eq!(v, self.target);
            self.source
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.source == v || self.target == v
    }
}

/// Edge as given on input; a missing id is assigned `e<k>` from its position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: Option<String>,
    pub ends: [String; 2],
}

impl EdgeSpec {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        EdgeSpec { id: None, ends: [a.into(), b.into()] }
    }

    pub fn with_id(id: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        EdgeSpec { id: Some(id.into()), ends: [a.into(), b.into()] }
    }
}

/// A connected loopless multigraph. Immutable after construction.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    vertex_ids: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    // (neighbour, edge index), one entry per incident edge
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl MultiGraph {
    pub fn new<I, S>(vertices: I, edges: Vec<EdgeSpec>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vertex_ids: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertex_ids.is_empty() {
            return input("graph has no vertices");
        }
        vertex_ids.sort();
        if let Some(w) = vertex_ids.windows(2).find(|w| w[0] == w[1]) {
            return input(format!("duplicate vertex id {:?}", w[0]));
        }
        let vertex_index: HashMap<String, usize> =
            vertex_ids.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

        let explicit: HashSet<&str> = edges.iter().filter_map(|e| e.id.as_deref()).collect();
        let mut edge_list = Vec::with_capacity(edges.len());
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (k, spec) in edges.iter().enumerate() {
            let id = match &spec.id {
                Some(id) => id.clone(),
                None => {
                    let auto = format!("e{k}");
                    if explicit.contains(auto.as_str()) {
                        return input(format!(
                            "auto-assigned edge id {auto:?} collides with an explicit id"
                        ));
                    }
                    auto
                }
            };
            let lookup = |v: &String| {
                vertex_index
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::Input(format!("edge {id:?} uses undeclared vertex {v:?}")))
            };
            let source = lookup(&spec.ends[0])?;
            let target = lookup(&spec.ends[1])?;
            if source == target {
                return input(format!("edge {id:?} is a loop at {:?}", spec.ends[0]));
            }
            if edge_index.insert(id.clone(), k).is_some() {
                return input(format!("duplicate edge id {id:?}"));
            }
            edge_list.push(Edge { id, source, target });
        }

        let mut adjacency = vec![Vec::new(); vertex_ids.len()];
        for (k, e) in edge_list.iter().enumerate() {
            adjacency[e.source].push((e.target, k));
            adjacency[e.target].push((e.source, k));
        }
        let g = MultiGraph { vertex_ids, vertex_index, edges: edge_list, edge_index, adjacency };
        if !g.is_connected_induced(&VertexSet::full(g.vertex_count()))? {
            return input("graph is disconnected");
        }
        Ok(g)
    }

    /// Convenience constructor with auto-assigned edge ids.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        MultiGraph::new(
            vertices.iter().copied(),
            edges.iter().map(|(a, b)| EdgeSpec::new(*a, *b)).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertex_ids[v]
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown vertex {id:?}")))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_at(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown edge {id:?}")))
    }

    /// `(neighbour, edge)` for every edge incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Neighbour lists with multiplicity, the form used by the subset scanners.
    pub(crate) fn neighbour_lists(&self) -> Vec<Vec<usize>> {
        self.adjacency.iter().map(|a| a.iter().map(|&(w, _)| w).collect()).collect()
    }

    pub fn genus(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Edges with one endpoint in `v` and the other in `w`, in edge order.
    pub fn boundary_edges(&self, v: &VertexSet, w: &VertexSet) -> Vec<usize> {
        self.check_universe(v);
        self.check_universe(w);
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                (v.contains(e.source) && w.contains(e.target))
                    || (v.contains(e.target) && w.contains(e.source))
            })
            .map(|(k, _)| k)
            .collect()
    }

    /// `|E(Y, Y^c)|`.
    pub fn delta(&self, y: &VertexSet) -> usize {
        self.check_universe(y);
        self.edges.iter().filter(|e| y.contains(e.source) != y.contains(e.target)).count()
    }

    /// Edges crossing between `y` and its complement.
    pub fn cut(&self, y: &VertexSet) -> Vec<usize> {
        self.boundary_edges(y, &y.complement())
    }

    /// Whether the induced subgraph on `v` is connected. Empty sets are rejected.
    pub fn is_connected_induced(&self, v: &VertexSet) -> Result<bool> {
        self.check_universe(v);
        let Some(start) = v.iter().next() else {
            return input("connectivity of the empty vertex set is undefined");
        };
        let mut seen = VertexSet::empty(self.vertex_count());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adjacency[u] {
                if v.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(reached == v.len())
    }

    /// True when removing edge `e` disconnects the graph.
    pub fn is_bridge(&self, e: usize) -> bool {
        let edge = &self.edges[e];
        let mut seen = vec![false; self.vertex_count()];
        seen[edge.source] = true;
        let mut stack = vec![edge.source];
        while let Some(u) = stack.pop() {
            for &(w, k) in &self.adjacency[u] {
                if k != e && !seen[w] {
                    if w == edge.target {
                        return false;
                    }
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        true
    }

    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| self.is_bridge(e)).collect()
    }

    /// Replace every edge by a path of `n` edges.
    pub fn subdivide_uniform(&self, n: usize) -> Result<Subdivision> {
        if n == 0 {
            return input("subdivision factor must be at least 1");
        }
        self.refine(&vec![n - 1; self.edge_count()])
    }

    /// Insert `inserted[e]` vertices in the interior of each edge `e`.
    ///
    /// Inserted vertices are named `<edge>.<k>` (k counted from the source) and
    /// derived edges `<edge>.<k>` for the k-th segment, 0-based.
    pub fn refine(&self, inserted: &[usize]) -> Result<Subdivision> {
        if inserted.len() != self.edge_count() {
            return input("refine needs one count per edge");
        }
        let mut vertex_names: Vec<String> = self.vertex_ids.clone();
        let mut specs = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            let mut prev = self.vertex_ids[edge.source].clone();
            for k in 1..=inserted[e] {
                let name = format!("{}.{k}", edge.id);
                if self.vertex_index.contains_key(&name) {
                    return input(format!("inserted vertex name {name:?} collides with a vertex id"));
                }
                vertex_names.push(name.clone());
                specs.push(EdgeSpec::with_id(format!("{}.{}", edge.id, k - 1), prev, name.clone()));
                prev = name;
            }
            specs.push(EdgeSpec::with_id(
                format!("{}.{}", edge.id, inserted[e]),
                prev,
                self.vertex_ids[edge.target].clone(),
            ));
        }
        let derived = MultiGraph::new(vertex_names, specs)?;

        let mut edge_map = Vec::with_capacity(derived.edge_count());
        for (e, _) in self.edges.iter().enumerate() {
            edge_map.extend(std::iter::repeat_n(e, inserted[e] + 1));
        }
        let mut base_vertex = vec![None; derived.vertex_count()];
        let mut over = vec![None; derived.vertex_count()];
        let mut chains = Vec::with_capacity(self.edge_count());
        for (v, id) in self.vertex_ids.iter().enumerate() {
            base_vertex[derived.vertex(id)?] = Some(v);
        }
        for (e, edge) in self.edges.iter().enumerate() {
            let mut chain = vec![derived.vertex(&self.vertex_ids[edge.source])?];
            for k in 1..=inserted[e] {
                let dv = derived.vertex(&format!("{}.{k}", edge.id))?;
                over[dv] = Some((e, k));
                chain.push(dv);
            }
            chain.push(derived.vertex(&self.vertex_ids[edge.target])?);
            chains.push(chain);
        }
        let lift = self.vertex_ids.iter().map(|id| derived.vertex(id)).collect::<Result<_>>()?;
        Ok(Subdivision { derived, edge_map, base_vertex, lift, over, chains })
    }

    fn check_universe(&self, s: &VertexSet) {
        assert_eq!(
            s.universe(),
            self.vertex_count(),
            "vertex set built for a graph with a different vertex count"
        );
    }
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ(|V|={}, |E|={})", self.vertex_count(), self.edge_count())
    }
}

/// A subset of the vertices of a fixed graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.bits.insert_range(..);
        s
    }

    pub fn from_indices(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn from_ids<S: AsRef<str>>(g: &MultiGraph, ids: &[S]) -> Result<Self> {
        let mut s = Self::empty(g.vertex_count());
        for id in ids {
            s.insert(g.vertex(id.as_ref())?);
        }
        Ok(s)
    }

    /// Bits of `mask` as a set over `n <= 64` vertices.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    /// The set as a bitmask; panics above 64 vertices.
    pub fn mask(&self) -> u64 {
        assert!(self.universe() <= 64, "bitmask view needs at most 64 vertices");
        self.iter().fold(0, |m, v| m | 1 << v)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Nonempty and not everything.
    pub fn is_proper(&self) -> bool {
        let k = self.len();
        k > 0 && k < self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        VertexSet { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        VertexSet { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Vertex ids in canonical (lexicographic) order.
    pub fn ids<'g>(&self, g: &'g MultiGraph) -> Vec<&'g str> {
        self.iter().map(|v| g.vertex_id(v)).collect()
    }

    /// Canonical sort key: size first, then the ordered index list.
    pub fn canonical_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A refinement `Γ'` of a base graph together with the back-map `ψ: E(Γ') → E(Γ)`.
#[derive(Debug, Clone)]
pub struct Subdivision {
    derived: MultiGraph,
    edge_map: Vec<usize>,
    base_vertex: Vec<Option<usize>>,
    lift: Vec<usize>,
    over: Vec<Option<(usize, usize)>>,
    chains: Vec<Vec<usize>>,
}

impl Subdivision {
    pub fn derived(&self) -> &MultiGraph {
        &self.derived
    }

    /// `ψ(e)`: the base edge that derived edge `e` subdivides.
    pub fn base_edge(&self, derived_edge: usize) -> usize {
        self.edge_map[derived_edge]
    }

    /// All derived edges over base edge `e`.
    pub fn preimage(&self, base_edge: usize) -> Vec<usize> {
        (0..self.edge_map.len()).filter(|&d| self.edge_map[d] == base_edge).collect()
    }

    /// The derived index of a base vertex.
    pub fn lift_vertex(&self, base: usize) -> usize {
        self.lift[base]
    }

    pub fn base_vertex(&self, derived: usize) -> Option<usize> {
        self.base_vertex[derived]
    }

    /// For an inserted vertex: the base edge it lies over and its 1-based
    /// position counted from that edge's source.
    pub fn over(&self, derived: usize) -> Option<(usize, usize)> {
        self.over[derived]
    }

    /// Derived vertices along base edge `e`, source to target inclusive.
    pub fn chain(&self, base_edge: usize) -> &[usize] {
        &self.chains[base_edge]
    }
}
