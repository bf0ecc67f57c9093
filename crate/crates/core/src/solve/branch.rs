use alloc::vec::Vec;

use super::kernel::Kernel;
use super::{Method, SolveResult, SolverLimits, Stopwatch};
use crate::error::{Error, LimitKind, Result};
use crate::graph::{Graph, IndependentSet};

struct Search<'a> {
    limits: &'a SolverLimits,
    clock: Stopwatch,
    nodes: u64,
}

/// A solution covering everything a search call was responsible for.
struct Found {
    value: u64,
    members: Vec<usize>,
}

impl Search<'_> {
    fn tick(&mut self) -> core::result::Result<(), LimitKind> {
        self.nodes += 1;
        if self.limits.node_budget.is_some_and(|b| self.nodes > b) {
            return Err(LimitKind::NodeBudget);
        }
        if self.nodes.is_multiple_of(256) && self.limits.time_budget.is_some_and(|t| self.clock.elapsed() > t) {
            return Err(LimitKind::TimeBudget);
        }
        Ok(())
    }

    /// Best solution of `k` (including what `k` already picked) whose value
    /// exceeds `floor`, or `None` if no such solution exists.
    fn run(&mut self, mut k: Kernel, floor: i64) -> core::result::Result<Option<Found>, LimitKind> {
        self.tick()?;
        k.reduce();
        let reached = k.gain();
        if k.live_count() == 0 {
            return Ok(((reached as i64) > floor).then(|| Found {
                value: reached,
                members: k.picked().to_vec(),
            }));
        }
        if ((reached + k.clique_cover_bound()) as i64) <= floor {
            return Ok(None);
        }

        let parts = k.split_components();
        if parts.len() > 1 {
            let mut value = reached;
            let mut members = k.picked().to_vec();
            for part in parts {
                let found = self.run(part, -1)?.expect("every component has a solution");
                value += found.value;
                members.extend(found.members);
            }
            return Ok(((value as i64) > floor).then_some(Found { value, members }));
        }

        // max degree, smallest id on ties
        let v = k
            .live_vertices()
            .max_by_key(|&v| (k.degree(v), core::cmp::Reverse(v)))
            .expect("kernel is non-empty");

        let mut best = None;
        let mut floor = floor;
        let mut with = k.clone();
        with.take(v);
        if let Some(found) = self.run(with, floor)? {
            floor = found.value as i64;
            best = Some(found);
        }
        let mut without = k;
        without.discard(v);
        if let Some(found) = self.run(without, floor)? {
            best = Some(found);
        }
        Ok(best)
    }
}

/// Exact α by branch and bound over the reduction kernel.
///
/// Every search node first applies the reduction rules exhaustively, splits
/// into connected components when possible, and otherwise branches on a
/// maximum-degree vertex (include it and drop its neighbors, or drop it).
/// Subtrees are pruned with a greedy clique cover bound.
pub fn mis_branch_bound(g: &Graph, limits: &SolverLimits) -> Result<SolveResult> {
    limits.validate()?;
    let greedy = super::greedy_independent_set(g);
    let mut search = Search {
        limits,
        clock: Stopwatch::start(),
        nodes: 0,
    };
    let floor = greedy.len() as i64 - 1;
    let found = search.run(Kernel::new(g), floor).map_err(|kind| Error::ResourceLimit {
        kind,
        lower_bound: greedy.len(),
    })?;
    let witness = match found {
        Some(f) => {
            let w = IndependentSet::new(f.members);
            debug_assert_eq!(w.len() as u64, f.value);
            w
        }
        None => greedy,
    };
    debug_assert_eq!(g.is_independent_set(&witness), Ok(true));
    Ok(SolveResult {
        alpha: witness.len(),
        witness,
        nodes_explored: search.nodes,
        method: Method::BranchBound,
    })
}
