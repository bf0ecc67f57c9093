use alloc::vec::Vec;

use super::{Method, SolveResult, SolverLimits, BRUTE_FORCE_HARD_CAP};
use crate::error::{Error, LimitKind, Result};
use crate::graph::{Graph, IndependentSet};

struct Enumerator {
    neighbors: Vec<u64>,
    best: u64,
    best_size: u32,
    nodes: u64,
}

impl Enumerator {
    // Walks subsets in vertex order; a branch dies as soon as it would contain
    // an edge, or when the remaining candidates cannot beat the incumbent.
    fn visit(&mut self, candidates: u64, chosen: u64, size: u32) {
        self.nodes += 1;
        if candidates == 0 {
            if size > self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        if size + candidates.count_ones() <= self.best_size {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        self.visit(candidates & !bit & !self.neighbors[v], chosen | bit, size + 1);
        self.visit(candidates & !bit, chosen, size);
    }
}

/// Exact α by enumerating independent subsets, for graphs up to
/// `limits.max_brute_n` vertices (never more than 64).
pub fn mis_bruteforce(g: &Graph, limits: &SolverLimits) -> Result<SolveResult> {
    let n = g.vertex_count();
    if n > limits.max_brute_n.min(BRUTE_FORCE_HARD_CAP) {
        return Err(Error::ResourceLimit {
            kind: LimitKind::VertexCap,
            lower_bound: super::greedy_independent_set(g).len(),
        });
    }
    let neighbors = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut e = Enumerator {
        neighbors,
        best: 0,
        best_size: 0,
        nodes: 0,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    e.visit(all, 0, 0);
    let witness = IndependentSet::new((0..n).filter(|&v| e.best >> v & 1 == 1));
    Ok(SolveResult {
        alpha: witness.len(),
        witness,
        nodes_explored: e.nodes,
        method: Method::BruteForce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget;

    #[test]
    fn small_examples() {
        let l = SolverLimits::default();
        assert_eq!(mis_bruteforce(&Graph::cycle(5), &l).unwrap().alpha, 2);
        for n in 1..8 {
            assert_eq!(mis_bruteforce(&Graph::complete(n), &l).unwrap().alpha, 1);
        }
        assert_eq!(mis_bruteforce(&Graph::empty(0), &l).unwrap().alpha, 0);
        assert_eq!(mis_bruteforce(&Graph::petersen(), &l).unwrap().alpha, 4);
    }

    #[test]
    fn icosa_gadget_witness() {
        let (g, layout) = gadget::build_icosa_gadget();
        let r = mis_bruteforce(&g, &SolverLimits::default()).unwrap();
        assert_eq!(r.alpha, 4);
        assert_eq!(r.witness, layout.icosa_witness());
    }

    #[test]
    fn refuses_large_graphs() {
        let l = SolverLimits {
            max_brute_n: 10,
            ..Default::default()
        };
        let err = mis_bruteforce(&Graph::cycle(11), &l).unwrap_err();
        assert!(matches!(
            err,
            Error::ResourceLimit {
                kind: LimitKind::VertexCap,
                lower_bound: 5
            }
        ));
    }
}
