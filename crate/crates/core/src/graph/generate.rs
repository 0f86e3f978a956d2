use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// `P_n`, vertices in path order.
    Path,
    /// `C_n`, `n >= 3`.
    Cycle,
    /// `K_n`.
    Complete,
    /// `I_n`, no edges.
    Empty,
    /// `S_k` on `k + 1` vertices; leaves are `0..k` and the centre is vertex `k`.
    Star,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Complete => "complete",
            GraphKind::Empty => "empty",
            GraphKind::Star => "star",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" | "P" => GraphKind::Path,
            "cycle" | "C" => GraphKind::Cycle,
            "complete" | "K" => GraphKind::Complete,
            "empty" | "I" => GraphKind::Empty,
            "star" | "S" => GraphKind::Star,
            other => return Err(format!("unknown graph kind {other:?}")),
        })
    }
}

pub fn generate(kind: GraphKind, n: usize) -> Result<Graph, GraphError> {
    let invalid = |requirement| GraphError::InvalidOrder {
        kind: kind.name(),
        requirement,
        n,
    };
    match kind {
        GraphKind::Cycle if n < 3 => return Err(invalid("n >= 3")),
        _ if n < 1 => return Err(invalid("n >= 1")),
        _ => {}
    }
    Ok(match kind {
        GraphKind::Path => Graph::from_fn(n, |u, v| v == u + 1),
        GraphKind::Cycle => Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1)),
        GraphKind::Complete => Graph::from_fn(n, |_, _| true),
        GraphKind::Empty => Graph::empty(n),
        GraphKind::Star => Graph::from_fn(n + 1, |_, v| v == n),
    })
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("petersen edges are valid")
}
