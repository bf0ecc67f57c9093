//! Exact maximum independent set solvers, used as verification oracles.
//!
//! Both methods are exact. When a budget runs out the solvers return
//! [`Error::ResourceLimit`] carrying the best size found so far, never an
//! inexact value dressed up as α.

mod branch;
mod brute;
mod clique;
pub mod kernel;

use alloc::vec::Vec;
use core::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, IndependentSet};

pub use branch::mis_branch_bound;
pub use brute::mis_bruteforce;
pub use clique::has_clique_k;

/// Largest graph the bitmask brute force can represent.
pub const BRUTE_FORCE_HARD_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    BranchBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub alpha: usize,
    pub witness: IndependentSet,
    pub nodes_explored: u64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    /// Brute force refuses graphs with more vertices than this.
    pub max_brute_n: usize,
    /// Branch-and-bound search node cap.
    pub node_budget: Option<u64>,
    /// Wall-clock cap for branch and bound. Enforced only with the `std` feature.
    pub time_budget: Option<Duration>,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_brute_n: 26,
            node_budget: None,
            time_budget: None,
        }
    }
}

impl SolverLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_brute_n == 0 || self.node_budget == Some(0) || self.time_budget == Some(Duration::ZERO) {
            return Err(Error::invalid("solver limits must be positive"));
        }
        Ok(())
    }
}

/// Which solver [`solve`] should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Brute force up to 20 vertices, branch and bound above.
    #[default]
    Auto,
    Brute,
    BranchBound,
}

const AUTO_BRUTE_LIMIT: usize = 20;

pub fn solve(g: &Graph, strategy: Strategy, limits: &SolverLimits) -> Result<SolveResult> {
    match strategy {
        Strategy::Brute => mis_bruteforce(g, limits),
        Strategy::BranchBound => mis_branch_bound(g, limits),
        Strategy::Auto if g.vertex_count() <= AUTO_BRUTE_LIMIT.min(limits.max_brute_n) => {
            mis_bruteforce(g, limits)
        }
        Strategy::Auto => mis_branch_bound(g, limits),
    }
}

/// Independence number with default limits.
pub fn alpha(g: &Graph) -> Result<usize> {
    solve(g, Strategy::Auto, &SolverLimits::default()).map(|r| r.alpha)
}

/// A minimum vertex cover, obtained as the complement of a maximum independent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCover {
    pub size: usize,
    pub witness: Vec<usize>,
}

pub fn min_vertex_cover(g: &Graph, limits: &SolverLimits) -> Result<VertexCover> {
    let mis = solve(g, Strategy::Auto, limits)?;
    let witness: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !mis.witness.contains(v))
        .collect();
    Ok(VertexCover {
        size: witness.len(),
        witness,
    })
}

/// Greedy minimum-degree independent set; a cheap lower bound.
pub(crate) fn greedy_independent_set(g: &Graph) -> IndependentSet {
    let n = g.vertex_count();
    let mut removed = alloc::vec![false; n];
    let mut degree: Vec<usize> = g.degrees().collect();
    let mut chosen = Vec::new();
    loop {
        let pick = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v));
        let Some(v) = pick else { break };
        chosen.push(v);
        let mut gone = alloc::vec![v];
        gone.extend(g.neighbors(v).iter().copied().filter(|&u| !removed[u]));
        for &x in &gone {
            removed[x] = true;
        }
        for &x in &gone {
            for &y in g.neighbors(x) {
                if !removed[y] {
                    degree[y] -= 1;
                }
            }
        }
    }
    IndependentSet::new(chosen)
}

#[cfg(feature = "std")]
pub(crate) struct Stopwatch(std::time::Instant);

#[cfg(feature = "std")]
impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch(std::time::Instant::now())
    }
    pub(crate) fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

#[cfg(not(feature = "std"))]
pub(crate) struct Stopwatch;

#[cfg(not(feature = "std"))]
impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch
    }
    pub(crate) fn elapsed(&self) -> Duration {
        Duration::ZERO
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    /// Maximum weight independent set by plain enumeration of all subsets.
    pub(crate) fn weighted_alpha_brute(g: &Graph, w: &[u64]) -> (u64, Vec<usize>) {
        let n = g.vertex_count();
        assert!(n <= 22, "oracle is exponential");
        let mut best = (0, Vec::new());
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if g.edges().any(|(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1) {
                continue;
            }
            let total: u64 = members.iter().map(|&v| w[v]).sum();
            if total > best.0 {
                best = (total, members);
            }
        }
        best
    }

    #[test]
    fn vertex_cover_examples() {
        let l = SolverLimits::default();
        assert_eq!(min_vertex_cover(&Graph::complete(4), &l).unwrap().size, 3);
        assert_eq!(min_vertex_cover(&Graph::cycle(5), &l).unwrap().size, 3);
        let p3 = min_vertex_cover(&Graph::path(3), &l).unwrap();
        assert_eq!((p3.size, p3.witness), (1, alloc::vec![1]));
    }

    #[test]
    fn complement_identity_and_cover_validity() {
        let l = SolverLimits::default();
        for seed in 0..60 {
            let g = random_graph(5 + seed as usize % 20, 0.3, seed);
            let vc = min_vertex_cover(&g, &l).unwrap();
            let a = alpha(&g).unwrap();
            assert_eq!(vc.size + a, g.vertex_count());
            assert!(g
                .edges()
                .all(|(u, v)| vc.witness.contains(&u) || vc.witness.contains(&v)));
        }
    }

    #[test]
    fn greedy_is_independent() {
        for seed in 0..30 {
            let g = random_graph(30, 0.2, seed);
            let s = greedy_independent_set(&g);
            assert_eq!(g.is_independent_set(&s), Ok(true));
        }
    }

    #[test]
    fn limits_must_be_positive() {
        let mut l = SolverLimits::default();
        assert!(l.validate().is_ok());
        l.node_budget = Some(0);
        assert!(l.validate().is_err());
    }
}
