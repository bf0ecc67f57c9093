use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Finds a clique on `k` vertices, `3 <= k <= 5`, by extending each edge
/// through common higher-numbered neighbors.
pub fn has_clique_k(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    if !(3..=5).contains(&k) {
        return Err(Error::invalid(alloc::format!(
            "clique size {k} outside the supported range 3..=5"
        )));
    }
    let mut stack = Vec::with_capacity(k);
    for v in 0..g.vertex_count() {
        let higher: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        stack.push(v);
        if extend(g, &higher, &mut stack, k) {
            return Ok(Some(stack));
        }
        stack.pop();
    }
    Ok(None)
}

fn extend(g: &Graph, candidates: &[usize], stack: &mut Vec<usize>, k: usize) -> bool {
    if stack.len() == k {
        return true;
    }
    if stack.len() + candidates.len() < k {
        return false;
    }
    for (i, &u) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(u, w))
            .collect();
        stack.push(u);
        if extend(g, &next, stack, k) {
            return true;
        }
        stack.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget;

    fn is_clique(g: &Graph, c: &[usize]) -> bool {
        c.iter()
            .enumerate()
            .all(|(i, &a)| c[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    }

    #[test]
    fn examples() {
        let k5 = Graph::complete(5);
        let c = has_clique_k(&k5, 5).unwrap().unwrap();
        assert!(is_clique(&k5, &c) && c.len() == 5);
        assert_eq!(has_clique_k(&Graph::cycle(6), 3).unwrap(), None);
        for delta in [3, 5, 7] {
            let (g, _) = gadget::general_blueprint(delta).unwrap();
            assert_eq!(has_clique_k(&g, 3).unwrap(), None);
        }
        assert!(has_clique_k(&k5, 2).is_err());
        assert!(has_clique_k(&k5, 6).is_err());
    }

    #[test]
    fn agrees_with_triangle_count() {
        for seed in 0..50 {
            let g = crate::solve::tests::random_graph(12, 0.25, seed);
            let found = has_clique_k(&g, 3).unwrap();
            assert_eq!(found.is_some(), g.triangle_count() > 0);
            if let Some(c) = found {
                assert!(is_clique(&g, &c));
            }
        }
    }

    #[test]
    fn icosa_has_triangles_but_no_k4() {
        let (g, _) = gadget::build_icosa_gadget();
        assert!(has_clique_k(&g, 3).unwrap().is_some());
        assert_eq!(has_clique_k(&g, 4).unwrap(), None);
    }
}
