//! Exhaustive scan of the quasistability inequality over vertex subsets.
//!
//! With `L` clearing the denominators of `μ`, the inequality
//! `Σ_Y (d − μ) + δ_Y / 2 ≥ 0` is multiplied by `2L`, giving integer weights
//! `w(v) = 2L(d(v) − μ(v))` and a cut coefficient `L`. Subsets are visited in
//! Gray-code order so each step updates the running sum and cut size from the
//! flipped vertex alone.

use crate::error::{Error, Result};

pub(crate) const MAX_SCAN_VERTICES: usize = 30;

pub(crate) struct Scan<'a> {
    pub nbrs: &'a [Vec<usize>],
    pub weights: Vec<i64>,
    pub cut: i64,
    pub v0: usize,
    pub connected_only: bool,
}

impl Scan<'_> {
    /// Some violating subset as a bitmask, if any.
    pub fn first_violation(&self) -> Result<Option<u64>> {
        let mut found = None;
        self.walk(|mask| {
            found = Some(mask);
            true
        })?;
        Ok(found)
    }

    /// The violating subset that is smallest by (size, bitmask).
    pub fn smallest_violation(&self) -> Result<Option<u64>> {
        let mut best: Option<u64> = None;
        self.walk(|mask| {
            let better = match best {
                None => true,
                Some(b) => (mask.count_ones(), mask) < (b.count_ones(), b),
            };
            if better {
                best = Some(mask);
            }
            false
        })?;
        Ok(best)
    }

    fn walk(&self, mut on_violation: impl FnMut(u64) -> bool) -> Result<()> {
        let n = self.nbrs.len();
        if n > MAX_SCAN_VERTICES {
            return Err(Error::Guard(format!(
                "subset scan over {n} vertices exceeds the limit of {MAX_SCAN_VERTICES}"
            )));
        }
        if n < 2 {
            return Ok(());
        }
        let full = (1u64 << n) - 1;
        let nbr_masks: Vec<u64> =
            self.nbrs.iter().map(|ns| ns.iter().fold(0, |m, &w| m | 1 << w)).collect();
        let mut mask = 0u64;
        let mut sum = 0i64;
        let mut delta = 0i64;
        for i in 1..=full {
            let v = i.trailing_zeros() as usize;
            let adding = mask >> v & 1 == 0;
            let inside = self.nbrs[v].iter().filter(|&&w| mask >> w & 1 == 1).count() as i64;
            let outside = self.nbrs[v].len() as i64 - inside;
            if adding {
                sum += self.weights[v];
                delta += outside - inside;
            } else {
                sum -= self.weights[v];
                delta += inside - outside;
            }
            mask ^= 1 << v;
            if mask == full {
                continue;
            }
            let total = sum + self.cut * delta;
            let violated = total < 0 || (total == 0 && mask >> self.v0 & 1 == 1);
            if violated
                && (!self.connected_only || is_connected(mask, &nbr_masks))
                && on_violation(mask)
            {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn is_connected(mask: u64, nbr_masks: &[u64]) -> bool {
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let mut grown = reached;
        let mut rest = reached;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grown |= nbr_masks[v] & mask;
        }
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(nbrs: &[Vec<usize>], w: &[i64], cut: i64, v0: usize) -> Vec<u64> {
        let n = nbrs.len();
        let full = (1u64 << n) - 1;
        (1..full)
            .filter(|&m| {
                let s: i64 = (0..n).filter(|&v| m >> v & 1 == 1).map(|v| w[v]).sum();
                let d = (0..n)
                    .filter(|&v| m >> v & 1 == 1)
                    .map(|v| nbrs[v].iter().filter(|&&u| m >> u & 1 == 0).count() as i64)
                    .sum::<i64>();
                let t = s + cut * d;
                t < 0 || (t == 0 && m >> v0 & 1 == 1)
            })
            .collect()
    }

    #[test]
    fn gray_scan_matches_brute_force() {
        // C4 a-b-c-d-a plus a doubled a-c chord
        let nbrs = vec![vec![1, 3, 2, 2], vec![0, 2], vec![1, 3, 0, 0], vec![2, 0]];
        for w in [[0, 0, 0, 0], [2, -2, 0, 0], [-4, 2, 2, 0], [6, -2, -2, -2], [-2, -2, 2, 2]] {
            for v0 in 0..4 {
                let scan = Scan { nbrs: &nbrs, weights: w.to_vec(), cut: 1, v0, connected_only: false };
                let expected = brute(&nbrs, &w, 1, v0);
                let smallest = expected.iter().copied().min_by_key(|&m| (m.count_ones(), m));
                assert_eq!(scan.smallest_violation().unwrap(), smallest);
                assert_eq!(scan.first_violation().unwrap().is_some(), !expected.is_empty());
            }
        }
    }

    #[test]
    fn connectivity_of_masks() {
        let nbrs = [0b0010u64, 0b0101, 0b1010, 0b0100];
        assert!(is_connected(0b0011, &nbrs));
        assert!(!is_connected(0b1001, &nbrs));
        assert!(is_connected(0b1111, &nbrs));
    }
}
