//! Per-edge trussness output shared by the exact and truncated decompositions.

use serde::Serialize;

use crate::graph::EdgeId;

/// Trussness per edge. When `truncated_at` is `Some(k)`, edges flagged as
/// inexact are only known to satisfy `tau >= k` and store `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrussLabels {
    tau: Vec<u32>,
    exact: Vec<bool>,
    truncated_at: Option<u32>,
}

impl TrussLabels {
    pub fn exact(tau: Vec<u32>) -> Self {
        let exact = vec![true; tau.len()];
        TrussLabels {
            tau,
            exact,
            truncated_at: None,
        }
    }

    /// Labels of a decomposition stopped at `k_trunc`; edges whose `tau` is
    /// `None` are recorded as lower bounds `>= k_trunc`.
    pub fn truncated(tau: &[Option<u32>], k_trunc: u32) -> Self {
        TrussLabels {
            tau: tau.iter().map(|t| t.unwrap_or(k_trunc)).collect(),
            exact: tau.iter().map(Option::is_some).collect(),
            truncated_at: Some(k_trunc),
        }
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    #[inline]
    pub fn tau(&self, e: EdgeId) -> u32 {
        self.tau[e as usize]
    }

    #[inline]
    pub fn is_exact(&self, e: EdgeId) -> bool {
        self.exact[e as usize]
    }

    pub fn values(&self) -> &[u32] {
        &self.tau
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn all_exact(&self) -> bool {
        self.exact.iter().all(|&x| x)
    }

    pub fn max_tau(&self) -> u32 {
        self.tau.iter().copied().max().unwrap_or(0)
    }

    /// What a decomposition truncated at `k_trunc` reports for these labels:
    /// exact below `k_trunc`, lower bound `>= k_trunc` otherwise.
    pub fn clamped(&self, k_trunc: u32) -> TrussLabels {
        let tau: Vec<Option<u32>> = self
            .tau
            .iter()
            .zip(&self.exact)
            .map(|(&t, &x)| (x && t < k_trunc).then_some(t))
            .collect();
        TrussLabels::truncated(&tau, k_trunc)
    }

    /// `(k, number of edges with tau == k)` for every k up to the maximum.
    pub fn histogram(&self) -> Vec<(u32, usize)> {
        let mut counts = vec![0usize; self.max_tau() as usize + 1];
        for &t in &self.tau {
            counts[t as usize] += 1;
        }
        if self.tau.is_empty() {
            counts.clear();
        }
        counts.into_iter().enumerate().map(|(k, c)| (k as u32, c)).collect()
    }
}
