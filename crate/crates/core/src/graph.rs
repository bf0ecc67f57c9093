//! Immutable undirected simple graphs on dense vertex ids `0..n`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::ops::Range;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists.
///
/// Invariants, upheld by every constructor: no self-loops, symmetric
/// adjacency, and strictly increasing neighbor lists. Graphs are never
/// mutated in place; transforms return new graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Single-owner builder for [`Graph`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    adjacency: Vec<BTreeSet<usize>>,
    duplicates: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adjacency: (0..n).map(|_| BTreeSet::new()).collect(),
            duplicates: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Appends `k` isolated vertices and returns the id of the first one.
    pub fn add_vertices(&mut self, k: usize) -> usize {
        let first = self.adjacency.len();
        self.adjacency.extend((0..k).map(|_| BTreeSet::new()));
        first
    }

    /// Adds the edge `{u, v}`. Returns `Ok(false)` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.adjacency.len();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let fresh = self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        if !fresh {
            self.duplicates += 1;
        }
        Ok(fresh)
    }

    /// Number of `add_edge` calls that named an edge already present.
    pub fn duplicate_count(&self) -> usize {
        self.duplicates
    }

    pub fn build(self) -> Graph {
        let adjacency: Vec<Vec<usize>> = self
            .adjacency
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating repeated edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).expect("ids in range");
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(v - 1, v).expect("ids in range");
        }
        b.build()
    }

    /// Cycle on `n >= 3` vertices; smaller `n` falls back to a path.
    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for v in 1..n {
            b.add_edge(v - 1, v).expect("ids in range");
        }
        if n >= 3 {
            b.add_edge(n - 1, 0).expect("ids in range");
        }
        b.build()
    }

    /// Star with center 0 and `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let mut b = GraphBuilder::new(leaves + 1);
        for v in 1..=leaves {
            b.add_edge(0, v).expect("ids in range");
        }
        b.build()
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let mut b = GraphBuilder::new(left + right);
        for u in 0..left {
            for v in left..left + right {
                b.add_edge(u, v).expect("ids in range");
            }
        }
        b.build()
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, edges).expect("ids in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Sorted neighbors of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Maximum degree, `0` for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, ns)| {
            let start = ns.partition_point(|&v| v <= u);
            ns[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.degrees().all(|x| x == d)
    }

    /// True iff no two members of `set` are adjacent.
    pub fn is_independent_set(&self, set: &IndependentSet) -> Result<bool> {
        Ok(self.first_conflict(set)?.is_none())
    }

    /// First edge with both endpoints in `set`, if any.
    pub fn first_conflict(&self, set: &IndependentSet) -> Result<Option<(usize, usize)>> {
        for &v in set.iter() {
            self.check_vertex(v)?;
        }
        for &u in set.iter() {
            for &v in &self.adjacency[u] {
                if v > u && set.contains(v) {
                    return Ok(Some((u, v)));
                }
            }
        }
        Ok(None)
    }

    /// Checks independence, turning a conflict into [`Error::NotIndependent`].
    pub fn require_independent(&self, set: &IndependentSet) -> Result<()> {
        match self.first_conflict(set)? {
            Some((u, v)) => Err(Error::NotIndependent(u, v)),
            None => Ok(()),
        }
    }

    /// Disjoint union; `other`'s ids are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|ns| ns.iter().map(|&v| v + shift).collect()),
        );
        Graph {
            adjacency,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// Subgraph induced by a contiguous id range, relabelled to start at 0.
    pub fn induced_range(&self, range: Range<usize>) -> Graph {
        let base = range.start;
        let adjacency = self.adjacency[range.clone()]
            .iter()
            .map(|ns| {
                ns.iter()
                    .filter(|&&v| range.contains(&v))
                    .map(|&v| v - base)
                    .collect()
            })
            .collect();
        Graph::from_sorted(adjacency)
    }

    /// Subgraph induced by `keep` (sorted, distinct). Vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = alloc::vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect()
            })
            .collect();
        Graph::from_sorted(adjacency)
    }

    /// Graph with the closed neighborhood of `v` deleted; remaining ids are
    /// compacted in increasing order.
    pub fn without_closed_neighborhood(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&u| u != v && !self.has_edge(v, u))
            .collect();
        self.induced(&keep)
    }

    fn from_sorted(adjacency: Vec<Vec<usize>>) -> Graph {
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            edge_count,
        }
    }

    /// Number of vertex triples inducing a triangle.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        self.for_each_triangle(|_| count += 1);
        count
    }

    /// Calls `f` once per triangle `[u, v, w]` with `u < v < w`.
    pub fn for_each_triangle(&self, mut f: impl FnMut([usize; 3])) {
        for (u, v) in self.edges() {
            let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
            let (mut i, mut j) = (a.partition_point(|&x| x <= v), b.partition_point(|&x| x <= v));
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    core::cmp::Ordering::Less => i += 1,
                    core::cmp::Ordering::Greater => j += 1,
                    core::cmp::Ordering::Equal => {
                        f([u, v, a[i]]);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = alloc::vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// SHA-256 over `n` followed by the sorted edge list, as little-endian u64s.
    pub fn content_hash(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update((self.vertex_count() as u64).to_le_bytes());
        for (u, v) in self.edges() {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
        }
        h.finalize().into()
    }

    /// Lowercase hex form of [`Graph::content_hash`].
    pub fn content_hash_hex(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::with_capacity(64);
        for b in self.content_hash() {
            write!(s, "{b:02x}").expect("writing to a String");
        }
        s
    }
}

/// A set of vertex ids, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndependentSet {
    members: Vec<usize>,
}

impl IndependentSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        IndependentSet { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, usize> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }
}

impl From<Vec<usize>> for IndependentSet {
    fn from(v: Vec<usize>) -> Self {
        IndependentSet::new(v)
    }
}

impl From<IndependentSet> for Vec<usize> {
    fn from(s: IndependentSet) -> Self {
        s.members
    }
}

impl FromIterator<usize> for IndependentSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndependentSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a IndependentSet {
    type Item = &'a usize;
    type IntoIter = core::slice::Iter<'a, usize>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn degree_examples() {
        assert_eq!(Graph::complete(4).degree(2), Ok(3));
        assert_eq!(Graph::empty(1).degree(0), Ok(0));
        assert_eq!(Graph::path(3).degree(1), Ok(2));
        assert_eq!(
            Graph::path(3).degree(3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn independence_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.is_independent_set(&IndependentSet::new([0, 2])), Ok(true));
        let k3 = Graph::complete(3);
        assert_eq!(k3.is_independent_set(&IndependentSet::new([0, 1])), Ok(false));
        assert_eq!(k3.is_independent_set(&IndependentSet::default()), Ok(true));
        assert!(k3.is_independent_set(&IndependentSet::new([5])).is_err());
        assert_eq!(
            k3.require_independent(&IndependentSet::new([1, 2])),
            Err(Error::NotIndependent(1, 2))
        );
    }

    #[test]
    fn disjoint_union_examples() {
        let k3 = Graph::complete(3);
        let u = k3.disjoint_union(&k3);
        assert_eq!((u.vertex_count(), u.edge_count(), u.component_count()), (6, 6, 2));
        assert!(u.has_edge(3, 5) && !u.has_edge(2, 3));
        assert_eq!(k3.disjoint_union(&Graph::empty(0)), k3);
        let p2 = Graph::path(2);
        let u = p2.disjoint_union(&p2);
        assert_eq!((u.vertex_count(), u.edge_count()), (4, 2));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(Graph::complete(4).triangle_count(), 4);
        assert_eq!(Graph::cycle(5).triangle_count(), 0);
        assert_eq!(Graph::complete_bipartite(2, 2).triangle_count(), 0);
        assert_eq!(Graph::complete(6).triangle_count(), 20);
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut b = GraphBuilder::new(3);
        assert_eq!(b.add_edge(1, 1), Err(Error::SelfLoop(1)));
        assert!(matches!(b.add_edge(0, 3), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(b.add_edge(0, 1), Ok(true));
        assert_eq!(b.add_edge(1, 0), Ok(false));
        assert_eq!(b.duplicate_count(), 1);
        assert_eq!(b.build().edge_count(), 1);
    }

    #[test]
    fn petersen_is_cubic() {
        let p = Graph::petersen();
        assert!(p.is_regular(3));
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.triangle_count(), 0);
    }

    #[test]
    fn induced_and_neighborhood_removal() {
        let p5 = Graph::path(5);
        let g = p5.without_closed_neighborhood(2);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 0));
        let r = p5.induced_range(1..4);
        assert_eq!(r, Graph::path(3));
        assert_eq!(p5.induced(&[0, 1, 3]).edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn content_hash_tracks_edges() {
        let a = Graph::path(4);
        let b = Graph::cycle(4);
        assert_ne!(a.content_hash(), b.content_hash());
        assert_eq!(a.content_hash_hex().len(), 64);
        assert_ne!(Graph::empty(3).content_hash(), Graph::empty(4).content_hash());
    }

    fn brute_triangles(g: &Graph) -> usize {
        let n = g.vertex_count();
        let mut c = 0;
        for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, d) && g.has_edge(a, d) {
                        c += 1;
                    }
                }
            }
        }
        c
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..14).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..40).prop_map(move |es| {
                Graph::from_edges(n, es.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn constructed_graphs_keep_invariants(g in arb_graph()) {
            let mut degree_sum = 0;
            for v in 0..g.vertex_count() {
                let ns = g.neighbors(v);
                prop_assert!(ns.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!ns.contains(&v));
                for &u in ns {
                    prop_assert!(g.neighbors(u).contains(&v));
                }
                degree_sum += ns.len();
            }
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            prop_assert_eq!(g.edges().count(), g.edge_count());
        }

        #[test]
        fn triangle_count_matches_triple_scan(g in arb_graph()) {
            prop_assert_eq!(g.triangle_count(), brute_triangles(&g));
        }

        #[test]
        fn union_is_associative_and_additive(a in arb_graph(), b in arb_graph(), c in arb_graph()) {
            let left = a.disjoint_union(&b).disjoint_union(&c);
            let right = a.disjoint_union(&b.disjoint_union(&c));
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(
                left.triangle_count(),
                a.triangle_count() + b.triangle_count() + c.triangle_count()
            );
        }
    }
}
