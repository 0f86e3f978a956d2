//! Human-readable edge-list format: the vertex count on the first line, then
//! one `u v` pair per line. Blank lines and `#` comments are ignored.

use super::{Graph, GraphError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TextFormatError {
    #[error("missing vertex count line")]
    MissingHeader,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
}

pub(super) fn parse(text: &str) -> Result<Graph, TextFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) = lines.next().ok_or(TextFormatError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| TextFormatError::Syntax {
        line: header_line,
        message: format!("expected a vertex count, found {header:?}"),
    })?;

    let mut edges = Vec::new();
    let mut line_of_edge = Vec::new();
    for (line, content) in lines {
        let parts: Vec<&str> = content.split_whitespace().collect();
        let syntax = || TextFormatError::Syntax {
            line,
            message: format!("expected `u v`, found {content:?}"),
        };
        if parts.len() != 2 {
            return Err(syntax());
        }
        let u: usize = parts[0].parse().map_err(|_| syntax())?;
        let v: usize = parts[1].parse().map_err(|_| syntax())?;
        edges.push((u, v));
        line_of_edge.push(line);
    }
    Graph::from_edges(n, edges.iter().copied()).map_err(|source| {
        let line = match &source {
            GraphError::SelfLoop(v) => edges.iter().position(|&(a, b)| a == *v && b == *v),
            GraphError::VertexOutOfRange { vertex, .. } => {
                edges.iter().position(|&(a, b)| a == *vertex || b == *vertex)
            }
            GraphError::DuplicateEdge(a, b) => edges
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| (x.min(y), x.max(y)) == (*a, *b))
                .nth(1)
                .map(|(i, _)| i),
            _ => None,
        }
        .map_or(header_line, |i| line_of_edge[i]);
        TextFormatError::Invalid { line, source }
    })
}

pub(super) fn serialize(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
