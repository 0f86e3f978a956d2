//! Reading graphs and blow-up specs from arguments or files.

use std::fs;
use std::path::Path;

use buniform::blowup::BlowupSpec;
use buniform::graph::Graph;

use crate::CliError;

/// A graph argument is a file path when such a file exists (unless `literal`),
/// otherwise an inline graph6 string. Files hold graph6 or the edge-list format.
pub fn read_graph(arg: &str, literal: bool) -> Result<Graph, CliError> {
    if !literal && Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return parse_graph_text(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")));
    }
    Graph::parse_graph6(arg).map_err(|e| CliError::Input(format!("{arg:?} is not a file or a graph6 string: {e}")))
}

fn parse_graph_text(text: &str) -> Result<Graph, String> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .ok_or("empty graph file")?;
    // graph6 bytes start at 63, so a leading digit means the edge-list format.
    if first.bytes().all(|b| b.is_ascii_digit()) {
        Graph::parse_edge_list(text).map_err(|e| e.to_string())
    } else {
        Graph::parse_graph6(first).map_err(|e| e.to_string())
    }
}

/// Spec from a JSON file, `-` for standard input, or inline JSON.
pub fn read_spec(arg: &str) -> Result<BlowupSpec, CliError> {
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Input(format!("stdin: {e}")))?
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid blow-up spec: {e}")))
}
