//! Brute-force enumeration of the quasistable divisors in a class.

use num_rational::Rational64;
use rayon::prelude::*;

use super::dhar::linearly_equivalent;
use super::quasistable::is_quasistable;
use super::{Divisor, Polarization};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Largest number of candidate divisors the box may contain.
    pub max_candidates: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_candidates: 20_000_000 }
    }
}

/// Enumerates every divisor of degree `deg d` in the box
/// `[⌈μ(v) − δ_v/2⌉ − s, ⌊μ(v) + δ_v/2⌋ + s]`, keeps those that are
/// quasistable and equivalent to `d`, and returns the survivor if it is unique.
pub fn oracle_quasistable_class(
    g: &MultiGraph,
    d: &Divisor,
    v0: usize,
    mu: &Polarization,
    opts: &OracleOptions,
) -> Result<Divisor> {
    d.check_graph(g)?;
    mu.check_graph(g)?;
    let n = g.vertex_count();
    let deg = d.degree();
    let slack = deg.abs().max((deg - mu.degree()).abs()).max(1);
    let bounds: Vec<(i64, i64)> = (0..n)
        .map(|v| {
            let half = Rational64::new(g.valence(v) as i64, 2);
            ((mu.get(v) - half).ceil().to_integer() - slack, (mu.get(v) + half).floor().to_integer() + slack)
        })
        .collect();
    if n == 1 {
        return Ok(d.clone());
    }
    let free = &bounds[..n - 1];
    let total = free.iter().try_fold(1u64, |acc, (lo, hi)| acc.checked_mul((hi - lo + 1) as u64));
    match total {
        Some(t) if t <= opts.max_candidates => {}
        _ => {
            return Err(Error::Guard(format!(
                "oracle box holds more than {} candidates",
                opts.max_candidates
            )))
        }
    }
    let (lo_last, hi_last) = bounds[n - 1];

    let (first_lo, first_hi) = free[0];
    let survivors: Vec<Divisor> = (first_lo..=first_hi)
        .into_par_iter()
        .flat_map_iter(|x0| {
            let mut found = Vec::new();
            let mut vals: Vec<i64> = free.iter().map(|b| b.0).collect();
            vals[0] = x0;
            vals.push(0);
            loop {
                let last = deg - vals[..n - 1].iter().sum::<i64>();
                if (lo_last..=hi_last).contains(&last) {
                    vals[n - 1] = last;
                    let cand = Divisor::from_values(vals.clone());
                    if is_quasistable(g, &cand, v0, mu).unwrap_or(false)
                        && linearly_equivalent(g, &cand, d, v0)
                    {
                        found.push(cand);
                    }
                }
                let mut i = 1;
                while i < n - 1 && vals[i] == free[i].1 {
                    vals[i] = free[i].0;
                    i += 1;
                }
                if i >= n - 1 {
                    break;
                }
                vals[i] += 1;
            }
            found
        })
        .collect();
    match survivors.len() {
        1 => Ok(survivors.into_iter().next().unwrap()),
        k => Err(Error::Oracle(format!(
            "{k} quasistable divisors found in the class of {:?}",
            d.to_named(g)
        ))),
    }
}
