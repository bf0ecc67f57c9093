//! Weighted reduction kernel shared by the branch-and-bound solver.
//!
//! Merging non-adjacent twins produces vertices that stand for several input
//! vertices at once, so the kernel works with integer weights internally.
//! Every input vertex starts with weight 1. Each rule is exact: the maximum
//! weight of an independent set in the kernel plus [`Kernel::gain`] equals
//! α of the input graph, and [`Kernel::lift`] maps any kernel solution back
//! to an independent set of the input with the same total.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::graph::{Graph, IndependentSet};

/// The individual reduction rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Degree-0 vertices join the solution.
    Isolated,
    /// A degree-1 vertex joins the solution if it is at least as heavy as its
    /// neighbor; otherwise its weight is transferred out of the neighbor.
    Pendant,
    /// Degree-2 folding when the two neighbors are non-adjacent; a degree-2
    /// vertex in a triangle is taken when it is the heaviest.
    DegreeTwo,
    /// Non-adjacent vertices with equal neighborhoods merge into one vertex.
    Twin,
    /// If `N[u] ⊆ N[v]` and `u` is at least as heavy, `v` is discarded.
    Dominance,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::Isolated,
        Rule::Pendant,
        Rule::DegreeTwo,
        Rule::Twin,
        Rule::Dominance,
    ];
}

/// How a kernel vertex expands back into input vertices.
#[derive(Debug, Clone, Copy)]
enum Origin {
    Input(usize),
    /// `center` had exactly the two non-adjacent neighbors `left`, `right`.
    Fold {
        center: usize,
        left: usize,
        right: usize,
    },
    Twins(usize, usize),
    /// `heavy` lost the weight of its pendant neighbor `leaf`.
    Transfer { heavy: usize, leaf: usize },
}

#[derive(Debug, Clone)]
pub struct Kernel {
    adj: Vec<BTreeSet<usize>>,
    weight: Vec<u64>,
    alive: Vec<bool>,
    origin: Vec<Origin>,
    live: usize,
    gain: u64,
    picked: Vec<usize>,
}

impl Kernel {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        Kernel {
            adj: (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            weight: alloc::vec![1; n],
            alive: alloc::vec![true; n],
            origin: (0..n).map(Origin::Input).collect(),
            live: n,
            gain: 0,
            picked: Vec::new(),
        }
    }

    /// Number of vertices still in the kernel.
    pub fn live_count(&self) -> usize {
        self.live
    }

    /// Weight already committed to the solution by reductions.
    pub fn gain(&self) -> u64 {
        self.gain
    }

    pub(crate) fn picked(&self) -> &[usize] {
        &self.picked
    }

    pub(crate) fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&v| self.alive[v])
    }

    pub(crate) fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn expand(&mut self, v: usize, inside: bool) {
        let mut stack = alloc::vec![(v, inside)];
        while let Some((x, inside)) = stack.pop() {
            match self.origin[x] {
                Origin::Input(o) => {
                    if inside {
                        self.picked.push(o);
                    }
                }
                Origin::Fold {
                    center,
                    left,
                    right,
                } => {
                    stack.push((center, !inside));
                    stack.push((left, inside));
                    stack.push((right, inside));
                }
                Origin::Twins(a, b) => {
                    stack.push((a, inside));
                    stack.push((b, inside));
                }
                Origin::Transfer { heavy, leaf } => {
                    stack.push((heavy, inside));
                    stack.push((leaf, !inside));
                }
            }
        }
    }

    fn detach(&mut self, v: usize) {
        debug_assert!(self.alive[v]);
        let ns = core::mem::take(&mut self.adj[v]);
        for u in ns {
            self.adj[u].remove(&v);
        }
        self.alive[v] = false;
        self.live -= 1;
    }

    fn spawn(&mut self, origin: Origin, weight: u64, neighbors: BTreeSet<usize>) -> usize {
        let id = self.adj.len();
        for &u in &neighbors {
            self.adj[u].insert(id);
        }
        self.adj.push(neighbors);
        self.weight.push(weight);
        self.alive.push(true);
        self.origin.push(origin);
        self.live += 1;
        id
    }

    /// Puts `v` into the solution and deletes its closed neighborhood.
    pub(crate) fn take(&mut self, v: usize) {
        self.gain += self.weight[v];
        self.expand(v, true);
        let ns: Vec<usize> = self.adj[v].iter().copied().collect();
        for u in ns {
            self.discard(u);
        }
        self.detach(v);
    }

    /// Deletes `v`, excluding it from the solution.
    pub(crate) fn discard(&mut self, v: usize) {
        self.expand(v, false);
        self.detach(v);
    }

    /// Applies `rule` until it no longer fires. Returns whether it fired.
    pub fn apply(&mut self, rule: Rule) -> bool {
        let mut fired = false;
        while self.apply_once(rule) {
            fired = true;
        }
        fired
    }

    /// Applies all rules until none fires.
    pub fn reduce(&mut self) {
        loop {
            let mut changed = false;
            for rule in Rule::ALL {
                changed |= self.apply(rule);
            }
            if !changed {
                break;
            }
        }
    }

    fn apply_once(&mut self, rule: Rule) -> bool {
        match rule {
            Rule::Isolated => self.isolated_pass(),
            Rule::Pendant => self.pendant_pass(),
            Rule::DegreeTwo => self.degree_two_pass(),
            Rule::Twin => self.twin_pass(),
            Rule::Dominance => self.dominance_pass(),
        }
    }

    fn isolated_pass(&mut self) -> bool {
        let found: Vec<usize> = self.live_vertices().filter(|&v| self.adj[v].is_empty()).collect();
        for &v in &found {
            self.take(v);
        }
        !found.is_empty()
    }

    fn pendant_pass(&mut self) -> bool {
        let mut fired = false;
        for v in 0..self.alive.len() {
            if !self.alive[v] || self.adj[v].len() != 1 {
                continue;
            }
            let u = *self.adj[v].first().expect("degree one");
            if self.weight[v] >= self.weight[u] {
                self.take(v);
            } else {
                let mut ns = self.adj[u].clone();
                ns.remove(&v);
                let w = self.weight[u] - self.weight[v];
                self.gain += self.weight[v];
                self.detach(v);
                self.detach(u);
                self.spawn(Origin::Transfer { heavy: u, leaf: v }, w, ns);
            }
            fired = true;
        }
        fired
    }

    fn degree_two_pass(&mut self) -> bool {
        let mut fired = false;
        for v in 0..self.alive.len() {
            if !self.alive[v] || self.adj[v].len() != 2 {
                continue;
            }
            let mut it = self.adj[v].iter().copied();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            let (wv, wa, wb) = (self.weight[v], self.weight[a], self.weight[b]);
            if self.adj[a].contains(&b) {
                if wv >= wa.max(wb) {
                    self.take(v);
                    fired = true;
                }
            } else if wv >= wa + wb {
                self.take(v);
                fired = true;
            } else if wv >= wa.max(wb) {
                let mut ns: BTreeSet<usize> = self.adj[a].union(&self.adj[b]).copied().collect();
                ns.remove(&v);
                self.gain += wv;
                self.detach(v);
                self.detach(a);
                self.detach(b);
                self.spawn(
                    Origin::Fold {
                        center: v,
                        left: a,
                        right: b,
                    },
                    wa + wb - wv,
                    ns,
                );
                fired = true;
            }
        }
        fired
    }

    fn twin_pass(&mut self) -> bool {
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut pair = None;
        for v in self.live_vertices() {
            let key: Vec<usize> = self.adj[v].iter().copied().collect();
            if let Some(&u) = seen.get(&key) {
                pair = Some((u, v));
                break;
            }
            seen.insert(key, v);
        }
        let Some((u, v)) = pair else {
            return false;
        };
        let ns = self.adj[u].clone();
        let w = self.weight[u] + self.weight[v];
        self.detach(u);
        self.detach(v);
        self.spawn(Origin::Twins(u, v), w, ns);
        true
    }

    fn dominance_pass(&mut self) -> bool {
        let mut fired = false;
        for u in 0..self.alive.len() {
            if !self.alive[u] {
                continue;
            }
            // discard every neighbor v with N[u] ⊆ N[v] that is no heavier than u
            let dominated: Vec<usize> = self.adj[u]
                .iter()
                .copied()
                .filter(|&v| {
                    self.weight[u] >= self.weight[v]
                        && self.adj[v].len() >= self.adj[u].len()
                        && self.adj[u].iter().all(|&x| x == v || self.adj[v].contains(&x))
                })
                .collect();
            for v in dominated {
                if self.alive[v] && self.alive[u] {
                    self.discard(v);
                    fired = true;
                }
            }
        }
        fired
    }

    /// Splits the kernel into one kernel per connected component, or returns
    /// nothing if it is connected. The parts start with zero gain and nothing
    /// picked.
    pub(crate) fn split_components(&self) -> Vec<Kernel> {
        let mut comp = alloc::vec![usize::MAX; self.alive.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.live_vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        if count <= 1 {
            return Vec::new();
        }
        (0..count)
            .map(|c| {
                let mut part = self.clone();
                part.gain = 0;
                part.picked.clear();
                for (v, &cv) in comp.iter().enumerate() {
                    if part.alive[v] && cv != c {
                        part.alive[v] = false;
                        part.adj[v].clear();
                        part.live -= 1;
                    }
                }
                part
            })
            .collect()
    }

    /// The live part as a standalone weighted graph. Vertex `i` of the
    /// returned graph is the `i`-th live kernel vertex.
    pub fn snapshot(&self) -> (Graph, Vec<u64>) {
        let live: Vec<usize> = self.live_vertices().collect();
        let mut index = BTreeMap::new();
        for (i, &v) in live.iter().enumerate() {
            index.insert(v, i);
        }
        let edges = live.iter().enumerate().flat_map(|(i, &v)| {
            self.adj[v].iter().map(move |u| (i, *u)).collect::<Vec<_>>()
        });
        let edges: Vec<(usize, usize)> = edges.map(|(i, u)| (i, index[&u])).collect();
        let g = Graph::from_edges(live.len(), edges).expect("kernel adjacency is simple");
        let weights = live.iter().map(|&v| self.weight[v]).collect();
        (g, weights)
    }

    /// Maps a solution of [`Kernel::snapshot`] back to the input graph.
    pub fn lift(&self, snapshot_choice: &[usize]) -> IndependentSet {
        let live: Vec<usize> = self.live_vertices().collect();
        let mut k = self.clone();
        let chosen: BTreeSet<usize> = snapshot_choice.iter().map(|&i| live[i]).collect();
        for &v in &live {
            k.expand(v, chosen.contains(&v));
        }
        IndependentSet::new(k.picked)
    }

    /// Greedy clique cover bound on the live part: members of one clique
    /// contribute at most their heaviest weight.
    pub(crate) fn clique_cover_bound(&self) -> u64 {
        let mut order: Vec<usize> = self.live_vertices().collect();
        order.sort_by(|&a, &b| self.weight[b].cmp(&self.weight[a]).then(a.cmp(&b)));
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        let mut bound = 0;
        for v in order {
            let slot = cliques
                .iter_mut()
                .find(|c| c.iter().all(|x| self.adj[v].contains(x)));
            match slot {
                Some(c) => c.push(v),
                None => {
                    bound += self.weight[v];
                    cliques.push(alloc::vec![v]);
                }
            }
        }
        bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget;
    use crate::solve::tests::{random_graph, weighted_alpha_brute};

    fn check_rule_exact(g: &Graph, rule: Rule) {
        let alpha = weighted_alpha_brute(g, &alloc::vec![1; g.vertex_count()]).0;
        let mut k = Kernel::new(g);
        k.apply(rule);
        let (h, w) = k.snapshot();
        let (best, choice) = weighted_alpha_brute(&h, &w);
        assert_eq!(best + k.gain(), alpha, "rule {rule:?} changed α");
        let lifted = k.lift(&choice);
        assert_eq!(lifted.len() as u64, alpha);
        assert_eq!(g.is_independent_set(&lifted), Ok(true));
    }

    #[test]
    fn every_rule_preserves_alpha_on_random_graphs() {
        for seed in 0..300u64 {
            let n = 4 + (seed as usize % 13);
            let p = [0.1, 0.2, 0.3, 0.5][(seed % 4) as usize];
            let g = random_graph(n, p, seed);
            for rule in Rule::ALL {
                check_rule_exact(&g, rule);
            }
        }
    }

    #[test]
    fn full_reduction_preserves_alpha() {
        for seed in 0..200u64 {
            let g = random_graph(6 + (seed as usize % 11), 0.25, 1000 + seed);
            let alpha = weighted_alpha_brute(&g, &alloc::vec![1; g.vertex_count()]).0;
            let mut k = Kernel::new(&g);
            k.reduce();
            let (h, w) = k.snapshot();
            let (best, choice) = weighted_alpha_brute(&h, &w);
            assert_eq!(best + k.gain(), alpha);
            assert_eq!(k.lift(&choice).len() as u64, alpha);
        }
    }

    #[test]
    fn twin_collapse_shrinks_general_gadget() {
        let (g, _) = gadget::general_blueprint(5).unwrap();
        let mut k = Kernel::new(&g);
        k.apply(Rule::Twin);
        assert!(k.live_count() <= 9, "{} vertices left", k.live_count());
        assert_eq!(k.live_count(), 9);
    }

    #[test]
    fn paths_and_cycles_reduce_completely() {
        for g in [Graph::path(7), Graph::cycle(9), Graph::star(4)] {
            let mut k = Kernel::new(&g);
            k.reduce();
            assert_eq!(k.live_count(), 0);
        }
        let mut k = Kernel::new(&Graph::cycle(5));
        k.reduce();
        assert_eq!((k.live_count(), k.gain()), (0, 2));
    }
}
