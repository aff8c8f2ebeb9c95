//! Divisors, polarizations and firing functions on a graph, indexed by vertex
//! index of the graph they were built for.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{input, Result};
use crate::graph::{MultiGraph, VertexSet};

mod dhar;
mod oracle;
mod quasistable;

pub use dhar::{linearly_equivalent, reduce, reduce_with_script};
pub use oracle::{oracle_quasistable_class, OracleOptions};
pub use quasistable::{
    is_quasistable, is_quasistable_with, quasistable_rep, quasistable_rep_with, violating_subset,
    QsOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor {
    values: Vec<i64>,
}

impl Divisor {
    pub fn zero(n: usize) -> Self {
        Divisor { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        Divisor { values }
    }

    /// `1·v`.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = Self::zero(n);
        d.values[v] = 1;
        d
    }

    pub fn from_pairs<S: AsRef<str>>(g: &MultiGraph, pairs: &[(S, i64)]) -> Result<Self> {
        let mut d = Self::zero(g.vertex_count());
        for (id, k) in pairs {
            d.values[g.vertex(id.as_ref())?] += k;
        }
        Ok(d)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn set(&mut self, v: usize, k: i64) {
        self.values[v] = k;
    }

    pub fn add_at(&mut self, v: usize, k: i64) {
        self.values[v] += k;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&k| k == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] != 0).collect()
    }

    /// Nonzero values keyed by vertex id.
    pub fn to_named(&self, g: &MultiGraph) -> BTreeMap<String, i64> {
        self.support().into_iter().map(|v| (g.vertex_id(v).to_string(), self.values[v])).collect()
    }

    pub(crate) fn check_graph(&self, g: &MultiGraph) -> Result<()> {
        if self.values.len() != g.vertex_count() {
            return input(format!(
                "divisor has {} entries but the graph has {} vertices",
                self.values.len(),
                g.vertex_count()
            ));
        }
        Ok(())
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len());
        Divisor { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len());
        Divisor { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect() }
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        assert_eq!(self.len(), rhs.len());
        for (a, b) in self.values.iter_mut().zip(&rhs.values) {
            *a += b;
        }
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor { values: self.values.iter().map(|a| -a).collect() }
    }
}

/// Rational vertex weights with integer total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarization {
    values: Vec<Rational64>,
}

impl Polarization {
    pub fn zero(n: usize) -> Self {
        Polarization { values: vec![Rational64::from_integer(0); n] }
    }

    pub fn new(values: Vec<Rational64>) -> Result<Self> {
        let total: Rational64 = values.iter().sum();
        if !total.is_integer() {
            return input(format!("polarization degree {total} is not an integer"));
        }
        Ok(Polarization { values })
    }

    pub fn from_pairs<S: AsRef<str>>(g: &MultiGraph, pairs: &[(S, Rational64)]) -> Result<Self> {
        let mut values = vec![Rational64::from_integer(0); g.vertex_count()];
        for (id, q) in pairs {
            values[g.vertex(id.as_ref())?] += q;
        }
        Self::new(values)
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    pub fn get(&self, v: usize) -> Rational64 {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.values.iter().sum::<Rational64>().to_integer()
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.values.iter().fold(1, |l, q| l.lcm(q.denom()))
    }

    /// Extend by zero to a graph with `extra` more vertices appended.
    pub fn extended(&self, extra: usize) -> Self {
        let mut values = self.values.clone();
        values.extend(std::iter::repeat_n(Rational64::from_integer(0), extra));
        Polarization { values }
    }

    pub fn to_named(&self, g: &MultiGraph) -> BTreeMap<String, Rational64> {
        (0..self.values.len())
            .filter(|&v| self.values[v] != Rational64::from_integer(0))
            .map(|v| (g.vertex_id(v).to_string(), self.values[v]))
            .collect()
    }

    pub(crate) fn check_graph(&self, g: &MultiGraph) -> Result<()> {
        if self.values.len() != g.vertex_count() {
            return input(format!(
                "polarization has {} entries but the graph has {} vertices",
                self.values.len(),
                g.vertex_count()
            ));
        }
        Ok(())
    }
}

/// Integer function on the vertices, the input of [`laplacian_div`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiringFunction {
    values: Vec<i64>,
}

impl FiringFunction {
    pub fn zero(n: usize) -> Self {
        FiringFunction { values: vec![0; n] }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        FiringFunction { values }
    }

    pub fn indicator(s: &VertexSet) -> Self {
        let mut f = Self::zero(s.universe());
        for v in s.iter() {
            f.values[v] = 1;
        }
        f
    }

    pub fn from_pairs<S: AsRef<str>>(g: &MultiGraph, pairs: &[(S, i64)]) -> Result<Self> {
        let mut f = Self::zero(g.vertex_count());
        for (id, k) in pairs {
            f.values[g.vertex(id.as_ref())?] = *k;
        }
        Ok(f)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn add_at(&mut self, v: usize, k: i64) {
        self.values[v] += k;
    }

    /// Shift so that the minimum value is 0.
    pub fn normalized(&self) -> Self {
        let m = self.values.iter().copied().min().unwrap_or(0);
        FiringFunction { values: self.values.iter().map(|x| x - m).collect() }
    }

    pub fn difference(&self, other: &Self) -> Self {
        FiringFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    pub fn to_named(&self, g: &MultiGraph) -> BTreeMap<String, i64> {
        (0..self.values.len()).map(|v| (g.vertex_id(v).to_string(), self.values[v])).collect()
    }
}

/// `D(v) = Σ_{edges vw} (f(v) − f(w))`.
pub fn laplacian_div(g: &MultiGraph, f: &FiringFunction) -> Divisor {
    assert_eq!(f.values.len(), g.vertex_count(), "firing function built for another graph");
    let mut d = Divisor::zero(g.vertex_count());
    for e in g.edges() {
        let diff = f.values[e.source] - f.values[e.target];
        d.values[e.source] += diff;
        d.values[e.target] -= diff;
    }
    d
}

/// The principal divisor `Σ_{e ∈ E(V,V^c)} (s(e) − t(e))` with sources in `V`.
pub fn div_of_subset(g: &MultiGraph, v: &VertexSet) -> Result<Divisor> {
    if !v.is_proper() {
        return input("div_of_subset needs a nonempty proper vertex subset");
    }
    Ok(laplacian_div(g, &FiringFunction::indicator(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn div_of_subset_examples() {
        let b2 = fixtures::b2();
        let w = VertexSet::from_ids(&b2, &["w"]).unwrap();
        assert_eq!(div_of_subset(&b2, &w).unwrap(), Divisor::from_pairs(&b2, &[("w", 2), ("u", -2)]).unwrap());

        let c4 = fixtures::c4();
        let bc = VertexSet::from_ids(&c4, &["b", "c"]).unwrap();
        let expected = Divisor::from_pairs(&c4, &[("b", 1), ("c", 1), ("a", -1), ("d", -1)]).unwrap();
        assert_eq!(div_of_subset(&c4, &bc).unwrap(), expected);

        let k = fixtures::kite();
        let d = VertexSet::from_ids(&k, &["d"]).unwrap();
        let expected = Divisor::from_pairs(&k, &[("d", 2), ("b", -1), ("c", -1)]).unwrap();
        assert_eq!(div_of_subset(&k, &d).unwrap(), expected);

        assert!(div_of_subset(&c4, &VertexSet::empty(4)).is_err());
        assert!(div_of_subset(&c4, &VertexSet::full(4)).is_err());
    }

    #[test]
    fn laplacian_examples() {
        let c3 = fixtures::c3();
        let f = FiringFunction::from_pairs(&c3, &[("a", 1)]).unwrap();
        assert_eq!(
            laplacian_div(&c3, &f),
            Divisor::from_pairs(&c3, &[("a", 2), ("b", -1), ("c", -1)]).unwrap()
        );
        let c4 = fixtures::c4();
        let f = FiringFunction::from_pairs(&c4, &[("a", 1), ("b", 1)]).unwrap();
        assert_eq!(
            laplacian_div(&c4, &f),
            Divisor::from_pairs(&c4, &[("a", 1), ("b", 1), ("c", -1), ("d", -1)]).unwrap()
        );
        let k4 = fixtures::k4();
        assert!(laplacian_div(&k4, &FiringFunction::from_values(vec![7; 4])).is_zero());
    }

    #[test]
    fn polarization_degree_must_be_integral() {
        let half = Rational64::new(1, 2);
        assert!(Polarization::new(vec![half, half]).is_ok());
        assert!(Polarization::new(vec![half, Rational64::from_integer(0)]).is_err());
        let p = Polarization::new(vec![Rational64::new(1, 3), Rational64::new(2, 3), half, half]).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.denominator_lcm(), 6);
    }
}
