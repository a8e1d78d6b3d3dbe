//! Exact walk counting.
//!
//! The count of length-k walks equals the sum of all entries of the k-th
//! adjacency-matrix power. We never form matrix powers: iterating the
//! vector update `v_{k+1}[u] = Σ_{(u,v)∈E} v_k[v]` from the all-ones
//! vector gives `w_k = Σ_u v_k[u]` in O(K·m) big-integer additions.
//! Counts grow like `n·Δ^k`, so everything is arbitrary precision; lengths
//! up to 64 stay cheap at corpus scale.

use crate::graph::Graph;
use crate::{Error, Result};
use num::bigint::BigUint;
use num::traits::Zero;

/// Exact walk counts `w_0..w_K` for one graph, with `w_0 = n`, `w_1 = 2m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTable {
    n: usize,
    m: usize,
    counts: Vec<BigUint>,
}

impl WalkTable {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// `counts()[k]` is the number of length-k walks.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Largest walk length covered.
    pub fn max_len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, k: usize) -> Result<&BigUint> {
        self.counts.get(k).ok_or(Error::WalkTableTooShort {
            available: self.max_len(),
            required: k,
        })
    }

    /// Check the structural invariants: `w_0 = n`, `w_1 = 2m`,
    /// `w_2 = Σ d_v²`, and the Dress–Gutman relations
    /// `w_{a+b}² <= w_{2a}·w_{2b}` wherever the indices are in range.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        if self.counts[0] != BigUint::from(self.n) {
            return fail(format!("w_0 = {} != n = {}", self.counts[0], self.n));
        }
        if self.counts.len() > 1 && self.counts[1] != BigUint::from(2 * self.m) {
            return fail(format!("w_1 = {} != 2m = {}", self.counts[1], 2 * self.m));
        }
        if self.counts.len() > 2 {
            let degree_square_sum: usize = g.degrees().iter().map(|d| d * d).sum();
            if self.counts[2] != BigUint::from(degree_square_sum) {
                return fail(format!("w_2 = {} != Σ d_v² = {degree_square_sum}", self.counts[2]));
            }
        }
        let k = self.max_len();
        for a in 0..=k / 2 {
            for b in a..=k / 2 {
                if a + b > k {
                    break;
                }
                let lhs = &self.counts[a + b] * &self.counts[a + b];
                let rhs = &self.counts[2 * a] * &self.counts[2 * b];
                if lhs > rhs {
                    return fail(format!("w_{}² > w_{}·w_{}", a + b, 2 * a, 2 * b));
                }
            }
        }
        Ok(())
    }
}

impl Graph {
    /// Exact walk counts up to length `max_len`.
    pub fn walk_counts(&self, max_len: usize) -> WalkTable {
        let n = self.node_count();
        let mut per_node = vec![BigUint::from(1u32); n];
        let mut counts = Vec::with_capacity(max_len + 1);
        counts.push(BigUint::from(n));
        for _ in 1..=max_len {
            let mut next = vec![BigUint::zero(); n];
            for (u, slot) in next.iter_mut().enumerate() {
                for &v in self.neighbors(u) {
                    *slot += &per_node[v];
                }
            }
            per_node = next;
            counts.push(per_node.iter().sum());
        }
        let table = WalkTable { n, m: self.edge_count(), counts };
        debug_assert!(table.validate(self).is_ok(), "walk table invariants violated");
        table
    }
}
