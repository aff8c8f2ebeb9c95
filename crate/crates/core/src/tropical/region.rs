//! Sampling the degree-2 Abel map over open regions of a square `[0,1]²`
//! parametrizing a pair of edges, to test constancy of its combinatorial type.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rayon::prelude::*;

use super::divisor::CombinatorialType;
use super::lattice::Abel2Solver;
use super::point::OrientedEdge;
use crate::divisor::{Divisor, Polarization};
use crate::error::{input, Error, Result};
use crate::graph::MultiGraph;

pub const DEFAULT_DENOMINATORS: [i64; 4] = [3, 4, 5, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// `0 < x < y < 1`
    XLtY,
    /// `0 < y < x < 1`
    YLtX,
    /// `x + y < 1`
    XLt1MinusY,
    /// `x + y > 1`
    OneMinusYLtX,
    FullSquare,
}

impl Region {
    pub const ALL: [Region; 5] =
        [Region::XLtY, Region::YLtX, Region::XLt1MinusY, Region::OneMinusYLtX, Region::FullSquare];

    pub fn contains(&self, x: Rational64, y: Rational64) -> bool {
        let one = Rational64::from_integer(1);
        match self {
            Region::XLtY => x < y,
            Region::YLtX => y < x,
            Region::XLt1MinusY => x + y < one,
            Region::OneMinusYLtX => x + y > one,
            Region::FullSquare => true,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Region::XLtY => "X_LT_Y",
            Region::YLtX => "Y_LT_X",
            Region::XLt1MinusY => "X_LT_1MY",
            Region::OneMinusYLtX => "1MY_LT_X",
            Region::FullSquare => "FULL_SQUARE",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Region::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown region {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub x: Rational64,
    pub y: Rational64,
    pub ty: CombinatorialType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constancy {
    Constant(CombinatorialType),
    /// Two samples with different types: the first sample and the first one
    /// (in lexicographic order) that differs from it.
    Witness(Box<Sample>, Box<Sample>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstancyReport {
    pub e1: OrientedEdge,
    pub e2: OrientedEdge,
    pub region: Region,
    pub denominators: Vec<i64>,
    pub samples: usize,
    /// Largest lattice denominator used by any sample.
    pub max_n: i64,
    pub outcome: Constancy,
}

impl ConstancyReport {
    pub fn is_constant(&self) -> bool {
        matches!(self.outcome, Constancy::Constant(_))
    }
}

/// Sample coordinates `i/q` in `(0, 1)` for every `q` in `denominators`, in order.
pub fn sample_coordinates(denominators: &[i64]) -> Result<Vec<Rational64>> {
    if denominators.is_empty() || denominators.iter().any(|&q| q < 2) {
        return input("sample denominators must be integers ≥ 2");
    }
    let set: BTreeSet<Rational64> =
        denominators.iter().flat_map(|&q| (1..q).map(move |i| Rational64::new(i, q))).collect();
    Ok(set.into_iter().collect())
}

/// Evaluates the Abel map at every grid sample of `region` and reports
/// whether the combinatorial type is constant there.
pub fn region_constancy(
    g: &MultiGraph,
    v0: usize,
    d_dagger: &Divisor,
    mu: &Polarization,
    e1: OrientedEdge,
    e2: OrientedEdge,
    region: Region,
    denominators: &[i64],
) -> Result<ConstancyReport> {
    let solver = Abel2Solver::new(g, v0, d_dagger.clone(), mu.clone())?;
    region_constancy_with(&solver, e1, e2, region, denominators)
}

pub fn region_constancy_with(
    solver: &Abel2Solver<'_>,
    e1: OrientedEdge,
    e2: OrientedEdge,
    region: Region,
    denominators: &[i64],
) -> Result<ConstancyReport> {
    let g = solver.graph();
    for e in [e1.edge, e2.edge] {
        if e >= g.edge_count() {
            return input(format!("edge index {e} out of range"));
        }
    }
    let coords = sample_coordinates(denominators)?;
    let points: Vec<(Rational64, Rational64)> = coords
        .iter()
        .flat_map(|&x| coords.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| region.contains(x, y))
        .collect();
    if points.is_empty() {
        return input(format!("no sample points of the grid lie in {region}"));
    }
    let samples: Vec<(Sample, i64)> = points
        .par_iter()
        .map(|&(x, y)| {
            let value = solver.evaluate(&e1.point(g, x)?, &e2.point(g, y)?)?;
            Ok((Sample { x, y, ty: value.divisor.combinatorial_type(g) }, value.n))
        })
        .collect::<Result<_>>()?;
    let max_n = samples.iter().map(|s| s.1).max().unwrap_or(0);
    let first = &samples[0].0;
    let outcome = match samples.iter().find(|s| s.0.ty != first.ty) {
        None => Constancy::Constant(first.ty.clone()),
        Some((other, _)) => Constancy::Witness(Box::new(first.clone()), Box::new(other.clone())),
    };
    Ok(ConstancyReport {
        e1,
        e2,
        region,
        denominators: denominators.to_vec(),
        samples: samples.len(),
        max_n,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn coordinates_are_deduplicated_and_sorted() {
        let c = sample_coordinates(&[2, 4]).unwrap();
        assert_eq!(c, [Rational64::new(1, 4), Rational64::new(1, 2), Rational64::new(3, 4)]);
        assert!(sample_coordinates(&[1]).is_err());
        assert!(sample_coordinates(&[]).is_err());
    }

    #[test]
    fn region_names_round_trip() {
        for r in Region::ALL {
            assert_eq!(r.name().parse::<Region>().unwrap(), r);
        }
        assert!("nope".parse::<Region>().is_err());
    }

    #[test]
    fn c4_two_tail_orientation_matters() {
        let c4 = fixtures::c4();
        let s = Abel2Solver::standard(&c4, 0).unwrap();
        let b = c4.vertex("b").unwrap();
        let ab = OrientedEdge::starting_at(&c4, 0, b).unwrap();
        let bc = OrientedEdge::starting_at(&c4, 1, b).unwrap();
        for region in [Region::XLtY, Region::YLtX] {
            let rep = region_constancy_with(&s, ab, bc, region, &[3, 4, 5]).unwrap();
            assert!(rep.is_constant(), "{region}");
        }
        let raw = region_constancy_with(&s, OrientedEdge::forward(0), OrientedEdge::forward(1), Region::XLtY, &[3, 4, 5])
            .unwrap();
        assert!(!raw.is_constant());
    }

    #[test]
    fn diagonal_regions_on_c4() {
        let c4 = fixtures::c4();
        let s = Abel2Solver::standard(&c4, 0).unwrap();
        let ab = OrientedEdge::forward(0);
        for region in [Region::XLt1MinusY, Region::OneMinusYLtX] {
            assert!(region_constancy_with(&s, ab, ab, region, &DEFAULT_DENOMINATORS).unwrap().is_constant());
        }
        assert!(!region_constancy_with(&s, ab, ab, Region::FullSquare, &[3, 4]).unwrap().is_constant());
    }

    #[test]
    fn bridge_square_is_constant() {
        let t2 = fixtures::triangle_with_bridge();
        let s = Abel2Solver::standard(&t2, 0).unwrap();
        let bridge = t2.bridges()[0];
        for other in 0..t2.edge_count() {
            let rep = region_constancy_with(
                &s,
                OrientedEdge::forward(bridge),
                OrientedEdge::forward(other),
                Region::FullSquare,
                &[3, 4],
            )
            .unwrap();
            if other == bridge {
                continue;
            }
            assert!(rep.is_constant(), "bridge with edge {other}");
        }
    }
}
