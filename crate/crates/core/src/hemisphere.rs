//! Hemispheres of a graph (δ-tails of the curve), freeness, free towers and the
//! closed-form quasistable representative of `2v0 − v1 − v2`.

use std::cmp::Ordering;
use std::fmt;

use crate::divisor::{div_of_subset, is_quasistable, linearly_equivalent, Divisor, Polarization};
use crate::error::{input, Error, Result};
use crate::graph::{MultiGraph, VertexSet};

pub const DEFAULT_MAX_VERTICES: usize = 22;

/// A vertex subset `H` with `Γ(H)` and `Γ(H^c)` both connected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hemisphere {
    set: VertexSet,
    delta: usize,
}

impl Hemisphere {
    pub fn new(g: &MultiGraph, set: VertexSet) -> Result<Self> {
        if set.universe() != g.vertex_count() {
            return input("vertex set built for another graph");
        }
        if !set.is_proper() {
            return input("a hemisphere is a nonempty proper subset");
        }
        if !g.is_connected_induced(&set)? || !g.is_connected_induced(&set.complement())? {
            return input(format!("{:?} is not a hemisphere", set.ids(g)));
        }
        let delta = g.delta(&set);
        Ok(Hemisphere { set, delta })
    }

    pub fn from_ids<S: AsRef<str>>(g: &MultiGraph, ids: &[S]) -> Result<Self> {
        Self::new(g, VertexSet::from_ids(g, ids)?)
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn contains(&self, v: usize) -> bool {
        self.set.contains(v)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn complement(&self) -> Hemisphere {
        Hemisphere { set: self.set.complement(), delta: self.delta }
    }

    /// Boundary edges `E(H, H^c)` in edge order.
    pub fn boundary(&self, g: &MultiGraph) -> Vec<usize> {
        g.cut(&self.set)
    }

    pub fn ids<'g>(&self, g: &'g MultiGraph) -> Vec<&'g str> {
        self.set.ids(g)
    }

    pub fn is_subset(&self, other: &Hemisphere) -> bool {
        self.set.is_subset(&other.set)
    }
}

impl Ord for Hemisphere {
    fn cmp(&self, other: &Self) -> Ordering {
        self.set.canonical_key().cmp(&other.set.canonical_key())
    }
}

impl PartialOrd for Hemisphere {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Hemisphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{:?}δ{}", self.set, self.delta)
    }
}

/// All hemispheres of a graph, enumerated once.
#[derive(Debug, Clone)]
pub struct HemisphereIndex {
    members: Vec<Hemisphere>,
}

impl HemisphereIndex {
    pub fn new(g: &MultiGraph) -> Result<Self> {
        Self::with_limit(g, DEFAULT_MAX_VERTICES)
    }

    pub fn with_limit(g: &MultiGraph, max_vertices: usize) -> Result<Self> {
        let n = g.vertex_count();
        if n > max_vertices || n > 63 {
            return Err(Error::Guard(format!(
                "hemisphere enumeration over {n} vertices exceeds the limit of {max_vertices}"
            )));
        }
        let nbr: Vec<u64> = (0..n)
            .map(|v| g.incident(v).iter().fold(0u64, |m, &(w, _)| m | 1 << w))
            .collect();
        let full = (1u64 << n) - 1;
        let mut members: Vec<Hemisphere> = (1..full)
            .filter(|&m| connected(m, &nbr) && connected(full & !m, &nbr))
            .map(|m| {
                let set = VertexSet::from_mask(n, m);
                let delta = g.delta(&set);
                Hemisphere { set, delta }
            })
            .collect();
        members.sort();
        Ok(HemisphereIndex { members })
    }

    pub fn all(&self) -> &[Hemisphere] {
        &self.members
    }

    pub fn with_delta(&self, delta: usize) -> Vec<Hemisphere> {
        self.members.iter().filter(|h| h.delta == delta).cloned().collect()
    }

    /// `H_{Γ,δ}(V, W)`: δ-hemispheres with `V ⊆ H^c` and `W ⊆ H`.
    pub fn between(&self, delta: usize, v: &VertexSet, w: &VertexSet) -> Vec<Hemisphere> {
        self.members
            .iter()
            .filter(|h| h.delta == delta && w.is_subset(&h.set) && v.intersection(&h.set).is_empty())
            .cloned()
            .collect()
    }

    pub fn contains(&self, set: &VertexSet) -> bool {
        self.members.iter().any(|h| &h.set == set)
    }
}

fn connected(mask: u64, nbr: &[u64]) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let mut grown = reached;
        let mut rest = reached;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grown |= nbr[v] & mask;
        }
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

/// All hemispheres, optionally only those with `δ = delta_bound`, in canonical order.
pub fn enumerate_hemispheres(g: &MultiGraph, delta_bound: Option<usize>) -> Result<Vec<Hemisphere>> {
    let index = HemisphereIndex::new(g)?;
    Ok(match delta_bound {
        Some(d) => index.with_delta(d),
        None => index.all().to_vec(),
    })
}

pub fn hemispheres_between(
    g: &MultiGraph,
    delta: usize,
    v: &VertexSet,
    w: &VertexSet,
) -> Result<Vec<Hemisphere>> {
    Ok(HemisphereIndex::new(g)?.between(delta, v, w))
}

/// `W` is `V`-free when `E(V, V^c) ∩ E(W, W^c) = ∅`.
pub fn is_free(g: &MultiGraph, w: &VertexSet, v: &VertexSet) -> Result<bool> {
    if !w.is_proper() || !v.is_proper() {
        return input("freeness is defined for nonempty proper subsets");
    }
    Ok(boundaries_disjoint(g, w, v))
}

fn boundaries_disjoint(g: &MultiGraph, w: &VertexSet, v: &VertexSet) -> bool {
    g.edges().iter().all(|e| {
        let cuts_w = w.contains(e.source) != w.contains(e.target);
        let cuts_v = v.contains(e.source) != v.contains(e.target);
        !(cuts_w && cuts_v)
    })
}

/// Checks that every pairwise intersection of members lies in the family.
pub fn check_intersection_closed(family: &[Hemisphere]) -> Result<()> {
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let meet = a.set.intersection(&b.set);
            if !family.iter().any(|h| h.set == meet) {
                return Err(Error::ClosureViolation(format!(
                    "intersection of {a:?} and {b:?} is not in the family"
                )));
            }
        }
    }
    Ok(())
}

/// Checks that every pairwise union of members lies in the family.
pub fn check_union_closed(family: &[Hemisphere]) -> Result<()> {
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let join = a.set.union(&b.set);
            if !family.iter().any(|h| h.set == join) {
                return Err(Error::ClosureViolation(format!(
                    "union of {a:?} and {b:?} is not in the family"
                )));
            }
        }
    }
    Ok(())
}

const PAIRWISE_CHECK_LIMIT: usize = 64;

/// The inclusion-minimal member of an intersection-closed family: the common
/// intersection, which must itself be a member.
pub fn minimal_member(family: &[Hemisphere]) -> Result<Hemisphere> {
    let Some(first) = family.first() else {
        return input("minimal member of an empty family");
    };
    if family.len() <= PAIRWISE_CHECK_LIMIT {
        check_intersection_closed(family)?;
    }
    let meet = family.iter().skip(1).fold(first.set.clone(), |acc, h| acc.intersection(&h.set));
    family.iter().find(|h| h.set == meet).cloned().ok_or_else(|| {
        Error::ClosureViolation(format!("common intersection {meet:?} of {} members is not a member", family.len()))
    })
}

/// A nested sequence of minimal hemispheres, each free of the earlier ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTower {
    pub k: usize,
    pub members: Vec<Hemisphere>,
}

impl FreeTower {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Strict nesting and pairwise freeness.
    pub fn verify(&self, g: &MultiGraph) -> Result<()> {
        for (i, h) in self.members.iter().enumerate() {
            if h.delta != self.k {
                return Err(Error::Internal(format!("tower member {h:?} has δ ≠ {}", self.k)));
            }
            for earlier in &self.members[..i] {
                if !earlier.is_subset(h) || earlier == h || !boundaries_disjoint(g, &h.set, &earlier.set) {
                    return Err(Error::Internal(format!("tower members {earlier:?} ⊄ {h:?} or not free")));
                }
            }
        }
        Ok(())
    }
}

/// The free tower of `k`-hemispheres in `H_{Γ,k}(v0, {v1, v2})`. For `k = 3`
/// pass the completed 2-tower as `exclusions`: only 3-hemispheres free of each
/// of its members are candidates.
pub fn free_tower(
    g: &MultiGraph,
    k: usize,
    v0: usize,
    targets: (usize, usize),
    exclusions: Option<&FreeTower>,
) -> Result<FreeTower> {
    free_tower_in(&HemisphereIndex::new(g)?, g, k, v0, targets, exclusions)
}

pub fn free_tower_in(
    index: &HemisphereIndex,
    g: &MultiGraph,
    k: usize,
    v0: usize,
    targets: (usize, usize),
    exclusions: Option<&FreeTower>,
) -> Result<FreeTower> {
    if k != 2 && k != 3 {
        return input(format!("free towers are built for k = 2 or 3, not {k}"));
    }
    let n = g.vertex_count();
    let v = VertexSet::from_indices(n, [v0]);
    let w = VertexSet::from_indices(n, [targets.0, targets.1]);
    let mut pool = index.between(k, &v, &w);
    if let Some(ex) = exclusions {
        pool.retain(|h| ex.members.iter().all(|x| boundaries_disjoint(g, &h.set, &x.set)));
    }
    let mut members: Vec<Hemisphere> = Vec::new();
    loop {
        let candidates: Vec<Hemisphere> = pool
            .iter()
            .filter(|h| {
                members.last().is_none_or(|prev| prev.is_subset(h))
                    && members.iter().all(|m| boundaries_disjoint(g, &h.set, &m.set))
            })
            .cloned()
            .collect();
        if candidates.is_empty() {
            break;
        }
        members.push(minimal_member(&candidates)?);
    }
    let tower = FreeTower { k, members };
    tower.verify(g)?;
    Ok(tower)
}

/// `F_Γ(v0, v1, v2)` as a multiset of hemispheres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyF {
    pub h1_v1: Vec<Hemisphere>,
    pub h1_v2: Vec<Hemisphere>,
    pub tower2: FreeTower,
    pub tower3: FreeTower,
}

impl FamilyF {
    pub fn members(&self) -> impl Iterator<Item = &Hemisphere> {
        self.h1_v1
            .iter()
            .chain(&self.h1_v2)
            .chain(&self.tower2.members)
            .chain(&self.tower3.members)
    }

    pub fn len(&self) -> usize {
        self.members().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn family_f(g: &MultiGraph, v0: usize, v1: usize, v2: usize) -> Result<FamilyF> {
    family_f_in(&HemisphereIndex::new(g)?, g, v0, v1, v2)
}

pub fn family_f_in(
    index: &HemisphereIndex,
    g: &MultiGraph,
    v0: usize,
    v1: usize,
    v2: usize,
) -> Result<FamilyF> {
    let n = g.vertex_count();
    for x in [v0, v1, v2] {
        if x >= n {
            return input(format!("vertex index {x} out of range"));
        }
    }
    let v = VertexSet::from_indices(n, [v0]);
    let h1_v1 = index.between(1, &v, &VertexSet::from_indices(n, [v1]));
    let h1_v2 = index.between(1, &v, &VertexSet::from_indices(n, [v2]));
    let tower2 = free_tower_in(index, g, 2, v0, (v1, v2), None)?;
    let tower3 = free_tower_in(index, g, 3, v0, (v1, v2), Some(&tower2))?;
    Ok(FamilyF { h1_v1, h1_v2, tower2, tower3 })
}

/// The `(v0, 0)`-quasistable divisor equivalent to `2v0 − v1 − v2`, as
/// `2v0 − v1 − v2 + Σ_{V ∈ F_Γ(v0,v1,v2)} div(V)`.
pub fn convert_deg2(g: &MultiGraph, v0: usize, v1: usize, v2: usize) -> Result<Divisor> {
    convert_deg2_in(&HemisphereIndex::new(g)?, g, v0, v1, v2)
}

pub fn convert_deg2_in(
    index: &HemisphereIndex,
    g: &MultiGraph,
    v0: usize,
    v1: usize,
    v2: usize,
) -> Result<Divisor> {
    let family = family_f_in(index, g, v0, v1, v2)?;
    let n = g.vertex_count();
    let mut start = Divisor::zero(n);
    start.add_at(v0, 2);
    start.add_at(v1, -1);
    start.add_at(v2, -1);
    let mut d = start.clone();
    for h in family.members() {
        d += &div_of_subset(g, h.set())?;
    }
    let mu = Polarization::zero(n);
    if !is_quasistable(g, &d, v0, &mu)? || !linearly_equivalent(g, &d, &start, v0) {
        return Err(Error::Convention(format!(
            "2·{} − {} − {} converted to {:?} is not the quasistable representative",
            g.vertex_id(v0),
            g.vertex_id(v1),
            g.vertex_id(v2),
            d.to_named(g)
        )));
    }
    Ok(d)
}

/// Which of the two shapes the intersection of a 2- and a 3-hemisphere takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionShape {
    /// `H` is a 2-hemisphere with boundary `{f1, e1}`.
    TwoHemisphere,
    /// `H` is a 3-hemisphere with boundary `{f1, e1, e2}`.
    ThreeHemisphere,
}

/// Edge partition for `H = H2 ∩ H3`. `e_in_h2` are the boundary edges of `H3`
/// fully contained in `H2` (they also bound `H`); `e_in_h2c` the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection23 {
    pub shape: IntersectionShape,
    pub intersection: Hemisphere,
    pub f1: usize,
    pub f2: usize,
    pub e_in_h2: Vec<usize>,
    pub e_in_h2c: Vec<usize>,
}

pub fn classify_23_intersection(g: &MultiGraph, h2: &Hemisphere, h3: &Hemisphere) -> Result<Intersection23> {
    if h2.delta != 2 || h3.delta != 3 {
        return input(format!("expected a 2- and a 3-hemisphere, got δ = {} and δ = {}", h2.delta, h3.delta));
    }
    let h = h2.set.intersection(&h3.set);
    if h.is_empty() || h == h2.set || h == h3.set {
        return input("the intersection must be nonempty and properly contained in both hemispheres");
    }
    if h2.set.union(&h3.set).complement().is_empty() {
        return input("the two hemispheres cover every vertex");
    }
    let b = h2.set.difference(&h);
    let c = h3.set.difference(&h);
    let d = h2.set.union(&h3.set).complement();
    let violation = |what: &str| {
        Error::LemmaViolation(format!("{what} for H2 = {:?}, H3 = {:?}", h2.ids(g), h3.ids(g)))
    };

    let hc = g.boundary_edges(&h, &c);
    let bd = g.boundary_edges(&b, &d);
    if hc.len() != 1 || bd.len() != 1 {
        return Err(violation("E(H, H3∖H) or E(H2∖H, rest) is not a single edge"));
    }
    if !g.boundary_edges(&b, &c).is_empty() || !g.boundary_edges(&h, &d).is_empty() {
        return Err(violation("unexpected edges across the diagonal of the partition"));
    }
    let (f1, f2) = (hc[0], bd[0]);
    let e_in_h2 = g.boundary_edges(&h, &b);
    let e_in_h2c = g.boundary_edges(&c, &d);
    let shape = match (e_in_h2.len(), e_in_h2c.len()) {
        (1, 2) => IntersectionShape::TwoHemisphere,
        (2, 1) => IntersectionShape::ThreeHemisphere,
        _ => return Err(violation("boundary of H3 splits neither 1+2 nor 2+1")),
    };
    let intersection = Hemisphere::new(g, h.clone()).map_err(|_| violation("H is not a hemisphere"))?;
    let expected_delta = 1 + e_in_h2.len();
    let mut expected_boundary = e_in_h2.clone();
    expected_boundary.push(f1);
    expected_boundary.sort();
    if intersection.delta != expected_delta || intersection.boundary(g) != expected_boundary {
        return Err(violation("boundary of H is not {f1} ∪ e's inside H2"));
    }

    let fully_in = |e: usize, s: &VertexSet| {
        let edge = g.edge_at(e);
        s.contains(edge.source) && s.contains(edge.target)
    };
    let h2c = h2.set.complement();
    let h3c = h3.set.complement();
    if !fully_in(f1, &h3.set)
        || !fully_in(f2, &h3c)
        || !e_in_h2.iter().all(|&e| fully_in(e, &h2.set))
        || !e_in_h2c.iter().all(|&e| fully_in(e, &h2c))
    {
        return Err(violation("full-containment conditions fail"));
    }
    Ok(Intersection23 { shape, intersection, f1, f2, e_in_h2, e_in_h2c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{oracle_quasistable_class, OracleOptions};
    use crate::fixtures;

    fn sets(g: &MultiGraph, hs: &[Hemisphere]) -> Vec<Vec<String>> {
        hs.iter().map(|h| h.ids(g).into_iter().map(String::from).collect()).collect()
    }

    fn names(list: &[&[&str]]) -> Vec<Vec<String>> {
        list.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect()
    }

    fn vs(g: &MultiGraph, ids: &[&str]) -> VertexSet {
        VertexSet::from_ids(g, ids).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let c4 = fixtures::c4();
        let h = enumerate_hemispheres(&c4, Some(2)).unwrap();
        assert_eq!(
            sets(&c4, &h),
            names(&[
                &["a"],
                &["b"],
                &["c"],
                &["d"],
                &["a", "b"],
                &["a", "d"],
                &["b", "c"],
                &["c", "d"],
                &["a", "b", "c"],
                &["a", "b", "d"],
                &["a", "c", "d"],
                &["b", "c", "d"],
            ])
        );
        assert!(enumerate_hemispheres(&c4, Some(3)).unwrap().is_empty());
        let b3 = fixtures::b3();
        assert_eq!(sets(&b3, &enumerate_hemispheres(&b3, Some(3)).unwrap()), names(&[&["u"], &["w"]]));
    }

    #[test]
    fn between_examples() {
        let c4 = fixtures::c4();
        let got = hemispheres_between(&c4, 2, &vs(&c4, &["a"]), &vs(&c4, &["b", "d"])).unwrap();
        assert_eq!(sets(&c4, &got), names(&[&["b", "c", "d"]]));
        let c3 = fixtures::c3();
        let got = hemispheres_between(&c3, 2, &vs(&c3, &["a"]), &vs(&c3, &["b", "c"])).unwrap();
        assert_eq!(sets(&c3, &got), names(&[&["b", "c"]]));
        let b2 = fixtures::b2();
        assert!(hemispheres_between(&b2, 1, &vs(&b2, &["u"]), &vs(&b2, &["w"])).unwrap().is_empty());
    }

    #[test]
    fn freeness_examples() {
        let c4 = fixtures::c4();
        assert!(is_free(&c4, &vs(&c4, &["b", "c", "d"]), &vs(&c4, &["c"])).unwrap());
        assert!(!is_free(&c4, &vs(&c4, &["b", "c"]), &vs(&c4, &["c"])).unwrap());
        for g in fixtures::all() {
            for h in enumerate_hemispheres(&g, None).unwrap() {
                assert!(!is_free(&g, h.set(), h.set()).unwrap());
            }
        }
    }

    #[test]
    fn one_hemispheres_are_free_of_other_hemispheres() {
        for g in fixtures::all() {
            let all = enumerate_hemispheres(&g, None).unwrap();
            for h in all.iter().filter(|h| h.delta() == 1) {
                for other in &all {
                    if other != h && *other != h.complement() {
                        assert!(is_free(&g, h.set(), other.set()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_member_examples() {
        let c4 = fixtures::c4();
        let fam = hemispheres_between(&c4, 2, &vs(&c4, &["a"]), &vs(&c4, &["c"])).unwrap();
        assert_eq!(sets(&c4, &fam).len(), 4);
        assert_eq!(minimal_member(&fam).unwrap().ids(&c4), ["c"]);
        assert_eq!(minimal_member(&fam[2..3]).unwrap(), fam[2]);
        let c3 = fixtures::c3();
        let fam = hemispheres_between(&c3, 2, &vs(&c3, &["a"]), &vs(&c3, &["b", "c"])).unwrap();
        assert_eq!(minimal_member(&fam).unwrap().ids(&c3), ["b", "c"]);

        let bad = vec![Hemisphere::from_ids(&c4, &["a", "b"]).unwrap(), Hemisphere::from_ids(&c4, &["b", "c"]).unwrap()];
        assert!(matches!(minimal_member(&bad), Err(Error::ClosureViolation(_))));
    }

    #[test]
    fn tower_examples() {
        let c4 = fixtures::c4();
        let (a, b, c) = (0, 1, 2);
        let t = free_tower(&c4, 2, a, (c, c), None).unwrap();
        assert_eq!(sets(&c4, &t.members), names(&[&["c"], &["b", "c", "d"]]));
        let t = free_tower(&c4, 2, a, (b, c), None).unwrap();
        assert_eq!(sets(&c4, &t.members), names(&[&["b", "c"]]));
        assert!(free_tower(&c4, 3, a, (b, c), Some(&t)).unwrap().is_empty());
    }

    #[test]
    fn family_examples() {
        let c3 = fixtures::c3();
        let f = family_f(&c3, 0, 1, 2).unwrap();
        assert!(f.h1_v1.is_empty() && f.h1_v2.is_empty() && f.tower3.is_empty());
        assert_eq!(sets(&c3, &f.tower2.members), names(&[&["b", "c"]]));

        let c4 = fixtures::c4();
        let f = family_f(&c4, 0, 2, 2).unwrap();
        assert!(f.h1_v1.is_empty() && f.tower3.is_empty());
        assert_eq!(sets(&c4, &f.tower2.members), names(&[&["c"], &["b", "c", "d"]]));

        let b2 = fixtures::b2();
        let f = family_f(&b2, 0, 1, 1).unwrap();
        assert_eq!(sets(&b2, &f.tower2.members), names(&[&["w"]]));
        assert!(f.tower3.is_empty());
    }

    #[test]
    fn conversion_examples() {
        let c3 = fixtures::c3();
        assert!(convert_deg2(&c3, 0, 1, 2).unwrap().is_zero());
        let c4 = fixtures::c4();
        assert!(convert_deg2(&c4, 0, 2, 2).unwrap().is_zero());
        assert_eq!(convert_deg2(&c4, 0, 1, 2).unwrap(), Divisor::from_pairs(&c4, &[("a", 1), ("d", -1)]).unwrap());
    }

    #[test]
    fn conversion_matches_oracle_on_fixtures() {
        let opts = OracleOptions::default();
        for g in fixtures::all() {
            let n = g.vertex_count();
            let index = HemisphereIndex::new(&g).unwrap();
            for v0 in 0..n {
                for v1 in 0..n {
                    for v2 in v1..n {
                        let got = convert_deg2_in(&index, &g, v0, v1, v2).unwrap();
                        let mut d = Divisor::zero(n);
                        d.add_at(v0, 2);
                        d.add_at(v1, -1);
                        d.add_at(v2, -1);
                        let o = oracle_quasistable_class(&g, &d, v0, &Polarization::zero(n), &opts).unwrap();
                        assert_eq!(got, o);
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_23_examples() {
        let ke = fixtures::kite_extended();
        let h2 = Hemisphere::from_ids(&ke, &["d", "e"]).unwrap();
        let h3 = Hemisphere::from_ids(&ke, &["b", "d", "e"]).unwrap();
        assert_eq!((h2.delta(), h3.delta()), (2, 3));
        assert!(matches!(classify_23_intersection(&ke, &h2, &h3), Err(Error::Input(_))));
        let bd = Hemisphere::from_ids(&ke, &["b", "d"]).unwrap();
        assert_eq!(bd.delta(), 3);
        assert!(matches!(classify_23_intersection(&ke, &bd, &h3), Err(Error::Input(_))));

        let w = fixtures::w();
        let h2 = Hemisphere::from_ids(&w, &["c", "d"]).unwrap();
        let h3 = Hemisphere::from_ids(&w, &["d", "e", "f"]).unwrap();
        let r = classify_23_intersection(&w, &h2, &h3).unwrap();
        assert_eq!(r.shape, IntersectionShape::TwoHemisphere);
        assert_eq!(r.intersection.ids(&w), ["d"]);
        let edge = |e: usize| {
            let ed = w.edge_at(e);
            format!("{}{}", w.vertex_id(ed.source), w.vertex_id(ed.target))
        };
        assert_eq!(edge(r.f1), "de");
        assert_eq!(edge(r.f2), "bc");
        assert_eq!(r.e_in_h2.iter().map(|&e| edge(e)).collect::<Vec<_>>(), ["cd"]);
        assert_eq!(r.e_in_h2c.iter().map(|&e| edge(e)).collect::<Vec<_>>(), ["fa", "be"]);
    }
}
