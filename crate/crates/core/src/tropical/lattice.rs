//! The degree-2 Abel map `(p1, p2) ↦ qs(D† − p1 − p2)` evaluated on a
//! rational lattice.
//!
//! A `(v0, μ)`-quasistable divisor of degree `deg μ` carries at most one
//! interior chip per edge, and that chip is `−1`. Its quasistability only
//! depends on the vertex values and the set `S` of edges carrying a chip, so
//! these discrete types are enumerated (and checked on `Γ̂`) once. On the
//! `1/n` lattice the chip positions of a type are counted with a dynamic
//! program over `S` keyed by Abel–Jacobi coordinates; the representative is
//! the unique (type, positions) whose key matches `D† − p1 − p2`. Every result
//! is re-verified by the minimal-refinement test and by chip-firing on the
//! uniform `n`-subdivision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Rational64;
use rayon::prelude::*;

use super::divisor::{is_quasistable_tropical, TropicalDivisor};
use super::jacobian::{AbelJacobi, Key};
use super::point::TropicalPoint;
use crate::divisor::{linearly_equivalent, Divisor, Polarization};
use crate::error::{input, Error, Result};
use crate::graph::{MultiGraph, Subdivision};
use crate::window::{Scan, MAX_SCAN_VERTICES};

const MAX_EDGES: usize = 20;
const MAX_TYPE_CHECKS: u64 = 50_000_000;
const MAX_DP_ENTRIES: usize = 20_000_000;

#[derive(Debug, Clone)]
struct DiscreteType {
    vertices: Vec<i64>,
    chips: u64,
}

/// Positions table for one chip set: key → (number of position choices, last position).
type Table = HashMap<Key, (u64, u32)>;
type LevelSlot = Arc<OnceLock<Result<Arc<Level>>>>;

struct Level {
    aj: AbelJacobi,
    tables: HashMap<u64, Table>,
    vertex_sums: Vec<Key>,
    subdivision: Subdivision,
}

/// Result of one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abel2Value {
    pub divisor: TropicalDivisor,
    /// Lattice denominator at which the unique survivor was found.
    pub n: i64,
    /// Whether the first lattice failed and the doubled one was used.
    pub retried: bool,
}

/// Evaluates `qs(D† − p1 − p2)` for a fixed `(Γ, v0, D†, μ)`, reusing the
/// type enumeration and per-lattice tables across calls. Safe to share
/// between threads.
pub struct Abel2Solver<'g> {
    g: &'g MultiGraph,
    v0: usize,
    d_dagger: Divisor,
    mu: Polarization,
    types: OnceLock<Result<Arc<Vec<DiscreteType>>>>,
    levels: Mutex<HashMap<i64, LevelSlot>>,
}

impl<'g> Abel2Solver<'g> {
    pub fn new(g: &'g MultiGraph, v0: usize, d_dagger: Divisor, mu: Polarization) -> Result<Self> {
        d_dagger.check_graph(g)?;
        mu.check_graph(g)?;
        if v0 >= g.vertex_count() {
            return input("base vertex out of range");
        }
        if d_dagger.degree() != mu.degree() + 2 {
            return input(format!(
                "deg D† = {} must equal deg μ + 2 = {}",
                d_dagger.degree(),
                mu.degree() + 2
            ));
        }
        if g.edge_count() > MAX_EDGES || g.vertex_count() + g.edge_count() > MAX_SCAN_VERTICES {
            return Err(Error::Guard(format!(
                "lattice search supports at most {MAX_EDGES} edges and {MAX_SCAN_VERTICES} vertices plus edges"
            )));
        }
        Ok(Abel2Solver { g, v0, d_dagger, mu, types: OnceLock::new(), levels: Mutex::new(HashMap::new()) })
    }

    /// The canonical `D† = 2v0`, `μ = 0` solver.
    pub fn standard(g: &'g MultiGraph, v0: usize) -> Result<Self> {
        let mut d = Divisor::zero(g.vertex_count());
        d.add_at(v0, 2);
        Self::new(g, v0, d, Polarization::zero(g.vertex_count()))
    }

    pub fn graph(&self) -> &'g MultiGraph {
        self.g
    }

    pub fn base_vertex(&self) -> usize {
        self.v0
    }

    /// `qs(D† − p1 − p2)` with `n = 2·lcm` of the point denominators, retried
    /// once at `2n`.
    pub fn evaluate(&self, p1: &TropicalPoint, p2: &TropicalPoint) -> Result<Abel2Value> {
        let n = 2 * p1.denominator().lcm(&p2.denominator());
        match self.evaluate_at(p1, p2, n)? {
            Ok(divisor) => Ok(Abel2Value { divisor, n, retried: false }),
            Err(first) => {
                log::info!("lattice 1/{n} gave {first} survivors; retrying at 1/{}", 2 * n);
                match self.evaluate_at(p1, p2, 2 * n)? {
                    Ok(divisor) => Ok(Abel2Value { divisor, n: 2 * n, retried: true }),
                    Err(survivors) => Err(Error::DenominatorEscape { n: 2 * n as u64, survivors }),
                }
            }
        }
    }

    /// Inner result is the survivor count when it is not exactly one.
    fn evaluate_at(&self, p1: &TropicalPoint, p2: &TropicalPoint, n: i64) -> Result<std::result::Result<TropicalDivisor, u64>> {
        let g = self.g;
        let types = self.types()?;
        let level = self.level(n)?;
        let aj = &level.aj;

        let mut d = TropicalDivisor::from_graph_divisor(&self.d_dagger);
        d.add(*p1, -1);
        d.add(*p2, -1);
        let target = aj.divisor_key(&d)?;

        let mut total = 0u64;
        let mut witness = None;
        for (i, ty) in types.iter().enumerate() {
            let need = aj.sub(level.vertex_sums[i], target);
            if let Some(&(count, _)) = level.tables[&ty.chips].get(&need) {
                total = total.saturating_add(count);
                if witness.is_none() {
                    witness = Some((i, need));
                }
            }
        }
        if total != 1 {
            return Ok(Err(total));
        }
        let (i, mut key) = witness.expect("one survivor");
        let ty = &types[i];
        let mut e_div = TropicalDivisor::from_graph_divisor(&Divisor::from_values(ty.vertices.clone()));
        let mut chips = ty.chips;
        while chips != 0 {
            let e = 63 - chips.leading_zeros() as usize;
            let (_, k) = level.tables[&chips][&key];
            e_div.add(TropicalPoint::on_edge(g, e, Rational64::new(k as i64, n))?, -1);
            key = aj.sub(key, aj.interior_key(e, k as i64));
            chips &= !(1 << e);
        }

        let sub = &level.subdivision;
        let derived = sub.derived();
        if !is_quasistable_tropical(g, &e_div, self.v0, &self.mu)?
            || !linearly_equivalent(derived, &e_div.on_subdivision(sub, n)?, &d.on_subdivision(sub, n)?, sub.lift_vertex(self.v0))
        {
            return Err(Error::Internal(format!(
                "lattice survivor {} failed verification for {}",
                e_div.describe(g),
                d.describe(g)
            )));
        }
        Ok(Ok(e_div))
    }

    fn types(&self) -> Result<Arc<Vec<DiscreteType>>> {
        self.types.get_or_init(|| enumerate_types(self.g, self.v0, &self.mu).map(Arc::new)).clone()
    }

    fn level(&self, n: i64) -> Result<Arc<Level>> {
        let cell = {
            let mut levels = self.levels.lock().expect("lattice cache lock");
            levels.entry(n).or_default().clone()
        };
        cell.get_or_init(|| {
            let types = self.types()?;
            build_level(self.g, self.v0, &types, n).map(Arc::new)
        })
        .clone()
    }
}

/// Quasistable types of degree `deg μ`: vertex values and chip edge sets.
fn enumerate_types(g: &MultiGraph, v0: usize, mu: &Polarization) -> Result<Vec<DiscreteType>> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let bounds: Vec<(i64, i64)> = (0..n)
        .map(|v| {
            let half = Rational64::new(g.valence(v) as i64, 2);
            ((mu.get(v) - half).ceil().to_integer(), (mu.get(v) + half).floor().to_integer())
        })
        .collect();
    let free: Vec<usize> = (0..n).filter(|&v| v != v0).collect();
    let per_mask = free.iter().try_fold(1u64, |acc, &v| acc.checked_mul((bounds[v].1 - bounds[v].0 + 1) as u64));
    match per_mask.and_then(|p| p.checked_mul(1 << m)) {
        Some(t) if t <= MAX_TYPE_CHECKS => {}
        _ => return Err(Error::Guard(format!("more than {MAX_TYPE_CHECKS} quasistable type candidates"))),
    }
    let scale = mu.denominator_lcm();
    let deg = mu.degree();

    let mut types: Vec<DiscreteType> = (0u64..1 << m)
        .into_par_iter()
        .map(|chips| {
            let nbrs = hat_neighbours(g, chips);
            let k = chips.count_ones() as i64;
            let mut found = Vec::new();
            let mut vals: Vec<i64> = (0..n).map(|v| bounds[v].0).collect();
            loop {
                let others: i64 = free.iter().map(|&v| vals[v]).sum();
                vals[v0] = deg + k - others;
                if (bounds[v0].0..=bounds[v0].1).contains(&vals[v0]) {
                    let mut weights: Vec<i64> = (0..n)
                        .map(|v| ((Rational64::from_integer(vals[v]) - mu.get(v)) * Rational64::from_integer(2 * scale)).to_integer())
                        .collect();
                    weights.extend(std::iter::repeat_n(-2 * scale, k as usize));
                    let scan = Scan { nbrs: &nbrs, weights, cut: scale, v0, connected_only: false };
                    if scan.first_violation()?.is_none() {
                        found.push(DiscreteType { vertices: vals.clone(), chips });
                    }
                }
                let mut i = 0;
                while i < free.len() && vals[free[i]] == bounds[free[i]].1 {
                    vals[free[i]] = bounds[free[i]].0;
                    i += 1;
                }
                if i == free.len() {
                    break;
                }
                vals[free[i]] += 1;
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    types.sort_by(|a, b| (a.chips, &a.vertices).cmp(&(b.chips, &b.vertices)));
    Ok(types)
}

/// Neighbour lists of `Γ̂`: base vertices first, then one inserted vertex per
/// chip edge in increasing edge order.
fn hat_neighbours(g: &MultiGraph, chips: u64) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut nbrs = vec![Vec::new(); n + chips.count_ones() as usize];
    let mut next = n;
    for (e, edge) in g.edges().iter().enumerate() {
        let (s, t) = (edge.source, edge.target);
        if chips >> e & 1 == 1 {
            let w = next;
            next += 1;
            nbrs[s].push(w);
            nbrs[w].push(s);
            nbrs[w].push(t);
            nbrs[t].push(w);
        } else {
            nbrs[s].push(t);
            nbrs[t].push(s);
        }
    }
    nbrs
}

fn build_level(g: &MultiGraph, v0: usize, types: &[DiscreteType], n: i64) -> Result<Level> {
    let aj = AbelJacobi::new(g, v0, n)?;
    let mut needed: Vec<u64> = types.iter().map(|t| t.chips).collect();
    let mut i = 0;
    while i < needed.len() {
        let s = needed[i];
        if s != 0 {
            needed.push(s & !(1 << (63 - s.leading_zeros())));
        }
        i += 1;
    }
    needed.sort_unstable();
    needed.dedup();

    let mut tables: HashMap<u64, Table> = HashMap::new();
    let mut entries = 0usize;
    for &s in &needed {
        let table = if s == 0 {
            Table::from([(0, (1, 0))])
        } else {
            let e = 63 - s.leading_zeros() as usize;
            let prev = &tables[&(s & !(1 << e))];
            let steps: Vec<Key> = (1..n).map(|k| aj.interior_key(e, k)).collect();
            let mut t = Table::new();
            for (&key, &(count, _)) in prev {
                for (k, &step) in steps.iter().enumerate() {
                    let slot = t.entry(aj.add(key, step)).or_insert((0, k as u32 + 1));
                    slot.0 = slot.0.saturating_add(count);
                }
            }
            t
        };
        entries += table.len();
        if entries > MAX_DP_ENTRIES {
            return Err(Error::Guard(format!("lattice tables at 1/{n} exceed {MAX_DP_ENTRIES} entries")));
        }
        tables.insert(s, table);
    }
    let vertex_sums = types
        .iter()
        .map(|t| {
            t.vertices
                .iter()
                .enumerate()
                .fold(0, |acc, (v, &k)| aj.add(acc, aj.scale(aj.vertex_key(v), k)))
        })
        .collect();
    let subdivision = g.subdivide_uniform(n as usize)?;
    Ok(Level { aj, tables, vertex_sums, subdivision })
}

/// `qs(D† − p1 − p2)`, the unique `(v0, μ)`-quasistable divisor equivalent to
/// `D† − p1 − p2` on `X_Γ`.
pub fn qs_abel2(
    g: &MultiGraph,
    v0: usize,
    d_dagger: &Divisor,
    mu: &Polarization,
    p1: &TropicalPoint,
    p2: &TropicalPoint,
) -> Result<TropicalDivisor> {
    Ok(Abel2Solver::new(g, v0, d_dagger.clone(), mu.clone())?.evaluate(p1, p2)?.divisor)
}
