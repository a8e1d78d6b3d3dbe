//! Floating-point spectral diagnostics.
//!
//! With `A = U D Uᵀ` and `μ_j` the coordinates of the all-ones vector in
//! the orthonormal eigenbasis, `w_k = Σ_j λ_j^k μ_j²`. This module checks
//! that identity and its symmetrized polynomial generalization numerically.
//! Everything here is diagnostic only; certification paths use exact
//! arithmetic and never consume these values.

use crate::graph::Graph;
use crate::poly::Polynomial;
use crate::{Error, Result};
use nalgebra::DMatrix;
use serde::Serialize;

/// Eigenvalues below this gap are treated as one eigenspace when
/// aggregating weights; individual `μ_j²` inside a degenerate eigenspace
/// are basis-dependent, only per-eigenvalue sums are meaningful.
pub const EIGENVALUE_GROUP_TOL: f64 = 1e-9;

/// Adjacency eigenvalues (descending) and the squared coordinates of the
/// all-ones vector in the eigenbasis.
#[derive(Clone, Debug)]
pub struct SpectralData {
    n: usize,
    m: usize,
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
}

/// Consistency residuals reported alongside a decomposition:
/// `Σ μ_j² = n` and `Σ λ_j μ_j² = 2m`, both relative to `max(1, target)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralResiduals {
    pub sum_mu2: f64,
    pub w1: f64,
}

/// Symmetric eigendecomposition of the adjacency matrix.
pub fn spectral_decompose(g: &Graph) -> Result<SpectralData> {
    let n = g.node_count();
    let adjacency =
        DMatrix::<f64>::from_fn(n, n, |i, j| if i != j && g.has_edge(i, j) { 1.0 } else { 0.0 });
    let eigen = adjacency
        .try_symmetric_eigen(f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Eigen(format!("no convergence for n={n}")))?;
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let mu: f64 = eigen.eigenvectors.column(j).iter().sum();
            (eigen.eigenvalues[j], mu * mu)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite eigenvalues"));
    let data = SpectralData {
        n,
        m: g.edge_count(),
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    };
    let residuals = data.residuals();
    if residuals.sum_mu2 > 1e-6 || residuals.w1 > 1e-6 {
        return Err(Error::Eigen(format!(
            "inconsistent decomposition: residuals {residuals:?}"
        )));
    }
    Ok(data)
}

impl SpectralData {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Eigenvalues in descending order, with multiplicities.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `μ_j²` matching [`Self::eigenvalues`] positionally.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn residuals(&self) -> SpectralResiduals {
        let sum_mu2: f64 = self.weights.iter().sum();
        let w1: f64 = self
            .eigenvalues
            .iter()
            .zip(&self.weights)
            .map(|(l, w)| l * w)
            .sum();
        SpectralResiduals {
            sum_mu2: (sum_mu2 - self.n as f64).abs() / (self.n as f64).max(1.0),
            w1: (w1 - 2.0 * self.m as f64).abs() / (2.0 * self.m as f64).max(1.0),
        }
    }

    /// Distinct eigenvalues with total weight per eigenspace, grouping
    /// eigenvalues closer than [`EIGENVALUE_GROUP_TOL`].
    pub fn aggregated_weights(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for (&lambda, &weight) in self.eigenvalues.iter().zip(&self.weights) {
            match out.last_mut() {
                Some((rep, total)) if (*rep - lambda).abs() <= EIGENVALUE_GROUP_TOL => {
                    *total += weight;
                }
                _ => out.push((lambda, weight)),
            }
        }
        out
    }

    /// `w̃_k = Σ_j λ_j^k μ_j²` for `k = 0..=max_len`.
    pub fn walk_counts_spectral(&self, max_len: usize) -> Vec<f64> {
        let mut powers: Vec<f64> = vec![1.0; self.eigenvalues.len()];
        let mut out = Vec::with_capacity(max_len + 1);
        out.push(self.weights.iter().sum());
        for _ in 1..=max_len {
            for (p, l) in powers.iter_mut().zip(&self.eigenvalues) {
                *p *= l;
            }
            out.push(powers.iter().zip(&self.weights).map(|(p, w)| p * w).sum());
        }
        out
    }
}

/// Relative residual of the symmetrization identity
///
/// `Σ_α c_α w_{α_1}···w_{α_k}
///    = Σ_{i_1<=…<=i_k} γ · f_sym(λ_{i_1},…,λ_{i_k}) · μ_{i_1}²···μ_{i_k}²`
///
/// where `γ⁻¹` is the number of permutations fixing the index tuple (the
/// product of the factorials of the index multiplicities, so
/// `1/k! <= γ <= 1`). The left side uses exact walk counts cast to
/// floating point; the right side uses the decomposition. Returns
/// `|LHS − RHS| / max(1, |LHS|)`.
pub fn symmetrization_identity_residual(f: &Polynomial, g: &Graph) -> Result<f64> {
    let data = spectral_decompose(g)?;
    symmetrization_identity_residual_cached(f, g, &data)
}

/// [`symmetrization_identity_residual`] with a precomputed decomposition,
/// for sweeps that test many polynomials against one graph.
pub fn symmetrization_identity_residual_cached(
    f: &Polynomial,
    g: &Graph,
    data: &SpectralData,
) -> Result<f64> {
    let k = f.variable_count();
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let f_sym = f.symmetrize()?;

    let max_index = f
        .terms()
        .flat_map(|(e, _)| e.iter().copied())
        .max()
        .unwrap_or(0) as usize;
    let table = g.walk_counts(max_index);
    let mut lhs = 0.0;
    for (exps, coef) in f.terms() {
        let mut product = crate::ratio::rational_to_f64(coef);
        for &e in exps {
            product *= biguint_to_f64(&table.counts()[e as usize]);
        }
        lhs += product;
    }

    let n = data.node_count();
    let mut rhs = 0.0;
    let mut tuple = vec![0usize; k];
    'tuples: loop {
        let gamma = 1.0 / fixing_permutations(&tuple) as f64;
        let point: Vec<f64> = tuple.iter().map(|&i| data.eigenvalues()[i]).collect();
        let mut weight = 1.0;
        for &i in &tuple {
            weight *= data.weights()[i];
        }
        rhs += gamma * f_sym.evaluate_real(&point)? * weight;

        // next nondecreasing tuple over {0..n-1}^k
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if tuple[pos] + 1 < n {
                let next = tuple[pos] + 1;
                for slot in &mut tuple[pos..] {
                    *slot = next;
                }
                continue 'tuples;
            }
        }
        break;
    }

    Ok((lhs - rhs).abs() / lhs.abs().max(1.0))
}

/// Number of permutations in `S_k` leaving a nondecreasing index tuple
/// unchanged: the product of the factorials of the multiplicities.
fn fixing_permutations(tuple: &[usize]) -> u64 {
    let mut product = 1u64;
    let mut run = 1u64;
    for window in tuple.windows(2) {
        if window[0] == window[1] {
            run += 1;
            product *= run;
        } else {
            run = 1;
        }
    }
    product
}

fn biguint_to_f64(value: &num::BigUint) -> f64 {
    num::traits::ToPrimitive::to_f64(value).unwrap_or(f64::INFINITY)
}
