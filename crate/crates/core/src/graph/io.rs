use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use super::{Graph, GraphError, Vertex};

/// Knobs for [`parse_edge_list_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept single-token vertex declarations and drop them when the vertex
    /// never appears in an edge. Without this, such a line is an error.
    pub allow_isolated: bool,
}

/// Parses a whitespace-separated edge list with default options.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    parse_edge_list_with(reader, ParseOptions::default())
}

/// Parses `u v` lines. `#` starts a comment line, blank lines are skipped and
/// labels are arbitrary tokens, numbered in order of first appearance.
pub fn parse_edge_list_with<R: BufRead>(reader: R, opts: ParseOptions) -> Result<Graph, GraphError> {
    let mut ids: HashMap<String, Vertex> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut seen: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut edges = Vec::new();

    let mut intern = |tok: &str, labels: &mut Vec<String>| -> Vertex {
        *ids.entry(tok.to_string()).or_insert_with(|| {
            labels.push(tok.to_string());
            (labels.len() - 1) as Vertex
        })
    };

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => GraphError::Parse {
                line: lineno,
                message: "invalid UTF-8".into(),
            },
            _ => GraphError::Io(e.to_string()),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match toks.as_slice() {
            [single] => {
                if !opts.allow_isolated {
                    return Err(GraphError::IsolatedVertex {
                        line: lineno,
                        label: single.to_string(),
                    });
                }
                // Declared vertices only survive if some edge names them.
            }
            [a, b] => {
                if a == b {
                    return Err(GraphError::SelfLoop {
                        line: Some(lineno),
                        label: a.to_string(),
                    });
                }
                let u = intern(a, &mut labels);
                let v = intern(b, &mut labels);
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(GraphError::DuplicateEdge {
                        line: Some(lineno),
                        u: a.to_string(),
                        v: b.to_string(),
                    });
                }
                edges.push(key);
            }
            _ => {
                return Err(GraphError::Parse {
                    line: lineno,
                    message: format!("expected two vertex labels, found {} tokens", toks.len()),
                })
            }
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(labels, edges))
}

/// Writes `u v` lines in edge-id order using the external labels.
pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> std::io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(w, "{} {}", g.label(u), g.label(v))?;
    }
    Ok(())
}
