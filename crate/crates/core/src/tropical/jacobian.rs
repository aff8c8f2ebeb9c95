//! Exact tropical Abel–Jacobi coordinates on the `1/n` lattice of `X_Γ`.
//!
//! Pick a spanning tree rooted at `v0` and its fundamental cycles
//! `C_1, …, C_g ∈ Z^E`, with Gram matrix `M` (unit lengths), `τ = det M` and
//! adjugate `A`. A point reached from `v0` by the path `P` has coordinates
//! `x_i = ⟨P, C_i⟩`, and a degree-0 divisor is principal exactly when the
//! summed coordinates lie in `M·Z^g`, i.e. when `A·(n·x) ≡ 0 (mod n·τ)`.
//! For lattice points `n·x` is integral, so each point gets a key in
//! `(Z / nτ)^g`, packed into a `u128`.

use std::collections::VecDeque;

use num_rational::Rational64;

use super::divisor::TropicalDivisor;
use super::point::TropicalPoint;
use crate::error::{input, Error, Result};
use crate::graph::MultiGraph;

pub(crate) type Key = u128;

#[derive(Debug, Clone)]
pub(crate) struct AbelJacobi {
    n: i64,
    modulus: i64,
    genus: usize,
    vertex_keys: Vec<Key>,
    edge_steps: Vec<Key>,
    sources: Vec<usize>,
}

impl AbelJacobi {
    pub fn new(g: &MultiGraph, v0: usize, n: i64) -> Result<Self> {
        if n < 1 {
            return input("lattice denominator must be positive");
        }
        let (tree_paths, cycles) = tree_and_cycles(g, v0);
        let genus = cycles.len();
        let gram: Vec<Vec<i128>> = cycles
            .iter()
            .map(|ci| cycles.iter().map(|cj| ci.iter().zip(cj).map(|(a, b)| (a * b) as i128).sum()).collect())
            .collect();
        let tau = determinant(&gram);
        let adj = adjugate(&gram);
        let modulus = (n as i128) * tau;
        if modulus <= 0 || modulus > i64::MAX as i128 {
            return Err(Error::Guard(format!("Abel–Jacobi modulus n·det = {modulus} out of range")));
        }
        let modulus = modulus as i64;
        let bits_per_digit = 64 - (modulus as u64).leading_zeros() as usize;
        if genus * bits_per_digit > 127 {
            return Err(Error::Guard(format!(
                "Abel–Jacobi key for genus {genus} and modulus {modulus} does not fit in 128 bits"
            )));
        }

        let mut aj = AbelJacobi {
            n,
            modulus,
            genus,
            vertex_keys: Vec::new(),
            edge_steps: Vec::new(),
            sources: g.edges().iter().map(|e| e.source).collect(),
        };
        let apply = |vec: &[i128]| -> Vec<i64> {
            adj.iter()
                .map(|row| {
                    let s: i128 = row.iter().zip(vec).map(|(a, b)| a * b).sum();
                    s.rem_euclid(modulus as i128) as i64
                })
                .collect()
        };
        aj.vertex_keys = tree_paths
            .iter()
            .map(|path| {
                let x: Vec<i128> = cycles
                    .iter()
                    .map(|c| (n as i128) * path.iter().zip(c).map(|(a, b)| (a * b) as i128).sum::<i128>())
                    .collect();
                aj.pack(&apply(&x))
            })
            .collect();
        aj.edge_steps = (0..g.edge_count())
            .map(|e| {
                let x: Vec<i128> = cycles.iter().map(|c| c[e] as i128).collect();
                aj.pack(&apply(&x))
            })
            .collect();
        Ok(aj)
    }

    fn pack(&self, digits: &[i64]) -> Key {
        digits.iter().rev().fold(0u128, |acc, &d| acc * self.modulus as u128 + d as u128)
    }

    fn unpack(&self, mut key: Key) -> Vec<i64> {
        let m = self.modulus as u128;
        (0..self.genus)
            .map(|_| {
                let d = (key % m) as i64;
                key /= m;
                d
            })
            .collect()
    }

    pub fn add(&self, a: Key, b: Key) -> Key {
        let (x, y) = (self.unpack(a), self.unpack(b));
        let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| (p + q) % self.modulus).collect();
        self.pack(&sum)
    }

    pub fn scale(&self, a: Key, k: i64) -> Key {
        let x = self.unpack(a);
        let m = self.modulus as i128;
        let out: Vec<i64> = x.iter().map(|&p| ((p as i128 * k as i128).rem_euclid(m)) as i64).collect();
        self.pack(&out)
    }

    pub fn sub(&self, a: Key, b: Key) -> Key {
        self.add(a, self.scale(b, -1))
    }

    pub fn vertex_key(&self, v: usize) -> Key {
        self.vertex_keys[v]
    }

    /// Key of the point at distance `k/n` from the source of `edge`.
    pub fn interior_key(&self, edge: usize, k: i64) -> Key {
        self.add(self.vertex_keys[self.sources[edge]], self.scale(self.edge_steps[edge], k))
    }

    pub fn point_key(&self, p: &TropicalPoint) -> Result<Key> {
        match p {
            TropicalPoint::Vertex(v) => Ok(self.vertex_key(*v)),
            TropicalPoint::Interior { edge, t } => {
                let pos = *t * Rational64::from_integer(self.n);
                if !pos.is_integer() {
                    return input(format!("point at t = {t} is off the 1/{} lattice", self.n));
                }
                Ok(self.interior_key(*edge, pos.to_integer()))
            }
        }
    }

    pub fn divisor_key(&self, d: &TropicalDivisor) -> Result<Key> {
        let mut acc = 0;
        for (p, &k) in d.iter() {
            acc = self.add(acc, self.scale(self.point_key(p)?, k));
        }
        Ok(acc)
    }
}

/// Signed tree paths from `v0` to every vertex, and the fundamental cycles of
/// the non-tree edges, all as vectors in `Z^E`.
fn tree_and_cycles(g: &MultiGraph, v0: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut path: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut tree_edge = vec![false; m];
    path[v0] = Some(vec![0; m]);
    let mut queue = VecDeque::from([v0]);
    while let Some(u) = queue.pop_front() {
        for &(w, e) in g.incident(u) {
            if path[w].is_some() {
                continue;
            }
            let mut p = path[u].clone().expect("visited");
            p[e] += if g.edge_at(e).source == u { 1 } else { -1 };
            path[w] = Some(p);
            tree_edge[e] = true;
            queue.push_back(w);
        }
    }
    let paths: Vec<Vec<i64>> = path.into_iter().map(|p| p.expect("graph is connected")).collect();
    let cycles = (0..m)
        .filter(|&e| !tree_edge[e])
        .map(|e| {
            let edge = g.edge_at(e);
            let mut c: Vec<i64> = paths[edge.source].iter().zip(&paths[edge.target]).map(|(s, t)| s - t).collect();
            c[e] += 1;
            c
        })
        .collect();
    (paths, cycles)
}

/// Fraction-free (Bareiss) determinant.
fn determinant(m: &[Vec<i128>]) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if a[i][i] == 0 {
            match (i + 1..k).find(|&r| a[r][i] != 0) {
                Some(r) => {
                    a.swap(i, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
            }
            a[r][i] = 0;
        }
        prev = a[i][i];
    }
    sign * a[k - 1][k - 1]
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let k = m.len();
    if k == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let minor: Vec<Vec<i128>> = (0..k)
                .filter(|&r| r != i)
                .map(|r| (0..k).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let cof = determinant(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = cof;
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{laplacian_div, Divisor, FiringFunction};
    use crate::fixtures;

    #[test]
    fn determinant_and_adjugate() {
        let m = vec![vec![2i128, 1, 0], vec![1, 3, 1], vec![0, 1, 4]];
        assert_eq!(determinant(&m), 18);
        let adj = adjugate(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|k| m[i][k] * adj[k][j]).sum();
                assert_eq!(s, if i == j { 18 } else { 0 });
            }
        }
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn principal_vertex_divisors_have_zero_key() {
        for g in fixtures::all() {
            let n = g.vertex_count();
            let aj = AbelJacobi::new(&g, 0, 1).unwrap();
            for seed in 0..10i64 {
                let f: Vec<i64> = (0..n as i64).map(|i| (seed * 3 + i * 5) % 4).collect();
                let d = laplacian_div(&g, &FiringFunction::from_values(f));
                assert_eq!(aj.divisor_key(&TropicalDivisor::from_graph_divisor(&d)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn keys_separate_inequivalent_vertex_divisors() {
        use crate::divisor::linearly_equivalent;
        for g in fixtures::all() {
            let n = g.vertex_count();
            let aj = AbelJacobi::new(&g, 0, 2).unwrap();
            for a in 0..n {
                for b in 0..n {
                    let mut d = Divisor::zero(n);
                    d.add_at(a, 1);
                    d.add_at(b, -1);
                    let zero = aj.divisor_key(&TropicalDivisor::from_graph_divisor(&d)).unwrap() == 0;
                    assert_eq!(zero, linearly_equivalent(&g, &d, &Divisor::zero(n), 0));
                }
            }
        }
    }

    #[test]
    fn circle_bookkeeping_on_c3() {
        let c3 = fixtures::c3();
        let aj = AbelJacobi::new(&c3, 0, 6).unwrap();
        let mut d = TropicalDivisor::new();
        d.add(TropicalPoint::Vertex(0), 2);
        d.add(TropicalPoint::on_edge(&c3, 1, Rational64::new(1, 3)).unwrap(), -2);
        d.add(TropicalPoint::Vertex(0), -1);
        d.add(TropicalPoint::on_edge(&c3, 2, Rational64::new(2, 3)).unwrap(), 1);
        assert_eq!(aj.divisor_key(&d).unwrap(), 0);
        // interior points at mismatched positions are not equivalent
        let mut e = TropicalDivisor::new();
        e.add(TropicalPoint::on_edge(&c3, 0, Rational64::new(1, 2)).unwrap(), 1);
        e.add(TropicalPoint::on_edge(&c3, 1, Rational64::new(1, 2)).unwrap(), -1);
        assert_ne!(aj.divisor_key(&e).unwrap(), 0);
    }
}
