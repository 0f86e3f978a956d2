//! Isomorphism-class enumeration of small graphs and trees.
//!
//! Both enumerators grow representatives one vertex at a time (every graph on
//! `n` vertices is a one-vertex extension of some graph on `n - 1`, every tree
//! a leaf extension of a smaller tree) and deduplicate by canonical code.
//! Output is sorted by canonical code and each member is in canonical form.

use std::collections::BTreeSet;

use super::canon::{canonical_code, CanonicalCode};
use super::{Graph, GraphError};

pub const MAX_GRAPH_ORDER: usize = 7;
pub const MAX_TREE_ORDER: usize = 10;

fn check_order(kind: &'static str, n: usize, cap: usize) -> Result<(), GraphError> {
    if (1..=cap).contains(&n) {
        Ok(())
    } else {
        Err(GraphError::InvalidOrder {
            kind,
            requirement: if cap == MAX_GRAPH_ORDER {
                "1 <= n <= 7"
            } else {
                "1 <= n <= 10"
            },
            n,
        })
    }
}

fn extend_with_vertex(g: &Graph, neighbours: impl Iterator<Item = usize>) -> Graph {
    let n = g.order();
    let edges = g.edges().chain(neighbours.map(|u| (u, n)));
    Graph::from_edges(n + 1, edges).expect("extension of a simple graph is simple")
}

/// One representative per isomorphism class of graphs on `n` vertices (`1 <= n <= 7`).
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    check_order("enumerate_graphs", n, MAX_GRAPH_ORDER)?;
    let mut level: BTreeSet<CanonicalCode> = BTreeSet::from([canonical_code(&Graph::empty(1))]);
    for m in 1..n {
        let mut next = BTreeSet::new();
        for code in &level {
            let g = code.to_graph();
            for mask in 0u32..(1 << m) {
                let h = extend_with_vertex(&g, (0..m).filter(|&u| mask >> u & 1 == 1));
                next.insert(canonical_code(&h));
            }
        }
        level = next;
    }
    Ok(level.iter().map(CanonicalCode::to_graph).collect())
}

/// One representative per isomorphism class of trees on `n` vertices (`1 <= n <= 10`).
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, GraphError> {
    check_order("enumerate_trees", n, MAX_TREE_ORDER)?;
    let mut level: BTreeSet<CanonicalCode> = BTreeSet::from([canonical_code(&Graph::empty(1))]);
    for m in 1..n {
        let mut next = BTreeSet::new();
        for code in &level {
            let t = code.to_graph();
            for u in 0..m {
                next.insert(canonical_code(&extend_with_vertex(&t, std::iter::once(u))));
            }
        }
        level = next;
    }
    Ok(level.iter().map(CanonicalCode::to_graph).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, is_isomorphic, GraphKind};

    #[test]
    fn caps_are_enforced() {
        assert!(enumerate_graphs(0).is_err());
        assert!(enumerate_graphs(8).is_err());
        assert!(enumerate_trees(11).is_err());
        assert_eq!(enumerate_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_trees(2).unwrap().len(), 1);
    }

    #[test]
    fn four_vertex_trees_are_path_and_star() {
        let trees = enumerate_trees(4).unwrap();
        assert_eq!(trees.len(), 2);
        let p4 = generate(GraphKind::Path, 4).unwrap();
        let s3 = generate(GraphKind::Star, 3).unwrap();
        assert!(trees.iter().any(|t| is_isomorphic(t, &p4)));
        assert!(trees.iter().any(|t| is_isomorphic(t, &s3)));
    }
}
