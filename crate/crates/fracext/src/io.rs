//! Graph file formats: DOT export, the `n m` edge list, and JSON.

use std::fmt::Write as _;
use std::path::Path;

use fracext_core::graph::{Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: unexpected token '{token}', expected {expected}")]
    Token {
        line: usize,
        token: String,
        expected: &'static str,
    },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// DOT text; Cayley vertices are labelled by their group elements.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", g.vertex_label(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// `n m` on the first line, then one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn to_json(g: &Graph) -> String {
    let mut text = serde_json::to_string_pretty(g).expect("graphs always serialize");
    text.push('\n');
    text
}

/// Parses the edge-list format. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(IoError::Token {
        line: 1,
        token: String::new(),
        expected: "a header line `n m`",
    })?;
    let [n, m] = two_numbers(line, header, "a header line `n m`")?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let [u, v] = two_numbers(line, text, "an edge `u v`")?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(IoError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn two_numbers(line: usize, text: &str, expected: &'static str) -> Result<[usize; 2], IoError> {
    let bad = |token: &str| IoError::Token {
        line,
        token: token.to_string(),
        expected,
    };
    let mut fields = text.split_whitespace();
    let mut out = [0; 2];
    for slot in &mut out {
        let token = fields.next().ok_or_else(|| bad(text))?;
        *slot = token.parse().map_err(|_| bad(token))?;
    }
    match fields.next() {
        Some(extra) => Err(bad(extra)),
        None => Ok(out),
    }
}

/// Graph JSON as written by [`to_json`]; Cayley provenance is re-checked.
pub fn parse_json(text: &str) -> Result<Graph, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracext_core::graph::{circulant, named};

    #[test]
    fn edge_list_round_trip() {
        let g = named::k4_bridge();
        let text = to_edge_list(&g);
        assert!(text.starts_with("8 13\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_diagnostics() {
        let err = parse_edge_list("3 1\n0 x\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: unexpected token 'x', expected an edge `u v`");
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(IoError::EdgeCount { declared: 2, found: 1 })));
        assert!(matches!(parse_edge_list("3 1\n0 5\n"), Err(IoError::Graph(_))));
        assert!(matches!(parse_edge_list("# nothing\n"), Err(IoError::Token { .. })));
        let g = parse_edge_list("# triangle\n3 3\n0 1\n1 2 # closing\n\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn json_keeps_provenance() {
        let g = circulant(9, &[1, 3]).unwrap();
        let back = parse_graph(&to_json(&g)).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.provenance(), g.provenance());
    }

    #[test]
    fn dot_labels() {
        let dot = to_dot(&named::cycle(3));
        assert_eq!(dot, "graph G {\n  0 [label=\"0\"];\n  1 [label=\"1\"];\n  2 [label=\"2\"];\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n");
    }
}
