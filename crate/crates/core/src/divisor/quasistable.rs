use log::warn;
use num_rational::Rational64;

use super::dhar::{linearly_equivalent, reduce};
use super::oracle::{oracle_quasistable_class, OracleOptions};
use super::{div_of_subset, Divisor, Polarization};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::window::Scan;

#[derive(Debug, Clone, Default)]
pub struct QsOptions {
    /// Quantify only over subsets inducing a connected subgraph.
    pub connected_only: bool,
    /// Greedy iteration cap; `None` means `10·|V|·|E|`.
    pub max_iterations: Option<usize>,
    /// Oracle settings used when the cap is hit.
    pub oracle: OracleOptions,
}

fn scan<'a>(
    nbrs: &'a [Vec<usize>],
    d: &Divisor,
    v0: usize,
    mu: &Polarization,
    connected_only: bool,
) -> Scan<'a> {
    let l = mu.denominator_lcm();
    let weights = (0..d.len())
        .map(|v| {
            let x = (Rational64::from_integer(d.get(v)) - mu.get(v)) * Rational64::from_integer(2 * l);
            x.to_integer()
        })
        .collect();
    Scan { nbrs, weights, cut: l, v0, connected_only }
}

/// The subset that is smallest by (size, vertex mask) among those violating
/// the `(v0, μ)`-quasistability inequality.
pub fn violating_subset(
    g: &MultiGraph,
    d: &Divisor,
    v0: usize,
    mu: &Polarization,
    connected_only: bool,
) -> Result<Option<VertexSet>> {
    d.check_graph(g)?;
    mu.check_graph(g)?;
    let nbrs = g.neighbour_lists();
    let found = scan(&nbrs, d, v0, mu, connected_only).smallest_violation()?;
    Ok(found.map(|m| VertexSet::from_mask(g.vertex_count(), m)))
}

/// `Σ_{v∈Y}(d(v) − μ(v)) + δ_Y/2 ≥ 0` for every nonempty proper `Y`, strictly
/// when `v0 ∈ Y`.
pub fn is_quasistable(g: &MultiGraph, d: &Divisor, v0: usize, mu: &Polarization) -> Result<bool> {
    is_quasistable_with(g, d, v0, mu, false)
}

pub fn is_quasistable_with(
    g: &MultiGraph,
    d: &Divisor,
    v0: usize,
    mu: &Polarization,
    connected_only: bool,
) -> Result<bool> {
    d.check_graph(g)?;
    mu.check_graph(g)?;
    let nbrs = g.neighbour_lists();
    Ok(scan(&nbrs, d, v0, mu, connected_only).first_violation()?.is_none())
}

pub fn quasistable_rep(g: &MultiGraph, d: &Divisor, v0: usize, mu: &Polarization) -> Result<Divisor> {
    quasistable_rep_with(g, d, v0, mu, &QsOptions::default())
}

/// The unique `(v0, μ)`-quasistable divisor equivalent to `d`.
///
/// Starts from the `v0`-reduced divisor and repeatedly adds `div(Y)` for the
/// smallest violating `Y`, which raises `Σ_Y(d − μ)` by `δ_Y`.
pub fn quasistable_rep_with(
    g: &MultiGraph,
    d: &Divisor,
    v0: usize,
    mu: &Polarization,
    opts: &QsOptions,
) -> Result<Divisor> {
    d.check_graph(g)?;
    mu.check_graph(g)?;
    if d.degree() != mu.degree() {
        warn!(
            "degree of divisor ({}) differs from degree of polarization ({}); a quasistable representative may not exist or be unique",
            d.degree(),
            mu.degree()
        );
    }
    let nbrs = g.neighbour_lists();
    let cap = opts.max_iterations.unwrap_or(10 * g.vertex_count() * g.edge_count().max(1));
    let mut cur = reduce(g, d, v0);
    let mut steps = 0;
    let result = loop {
        match scan(&nbrs, &cur, v0, mu, opts.connected_only).smallest_violation()? {
            None => break cur,
            Some(mask) => {
                if steps == cap {
                    warn!("greedy quasistable search hit its cap of {cap} steps at {cur:?}; using the oracle");
                    break oracle_quasistable_class(g, d, v0, mu, &opts.oracle).map_err(|e| {
                        Error::Internal(format!(
                            "greedy search stalled after {cap} steps at {:?} and the oracle failed: {e}",
                            cur.to_named(g)
                        ))
                    })?;
                }
                let y = VertexSet::from_mask(g.vertex_count(), mask);
                cur += &div_of_subset(g, &y)?;
                steps += 1;
            }
        }
    };
    if !is_quasistable_with(g, &result, v0, mu, opts.connected_only)?
        || !linearly_equivalent(g, &result, d, v0)
    {
        return Err(Error::Internal(format!(
            "quasistable representative {:?} failed verification",
            result.to_named(g)
        )));
    }
    Ok(result)
}
