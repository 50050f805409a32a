use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// What happened while reading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub edge_lines: usize,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// A graph read from text, with the original label of every dense id.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
    pub report: LoadReport,
}

/// Reads a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped. Labels get dense ids in order of first appearance.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut report = LoadReport::default();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse { line: lineno + 1, found: tokens.len() });
        }
        let mut endpoint = |label: &str| -> NodeId {
            if let Some(&id) = ids.get(label) {
                return id;
            }
            let id = labels.len();
            ids.insert(label.to_owned(), id);
            labels.push(label.to_owned());
            id
        };
        let a = endpoint(tokens[0]);
        let b = endpoint(tokens[1]);
        edges.push((a, b));
        report.edge_lines += 1;
    }

    let (graph, cleanup) = Graph::from_edges(labels.len(), edges)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    report.duplicate_edges = cleanup.duplicate_edges;
    report.self_loops = cleanup.self_loops;
    Ok(LoadedGraph { graph, labels, report })
}

/// Writes one `label label` line per edge.
pub fn write_edge_list<W: Write>(mut w: W, graph: &Graph, labels: &[String]) -> std::io::Result<()> {
    for (a, b) in graph.edges() {
        writeln!(w, "{} {}", labels[a], labels[b])?;
    }
    Ok(())
}

/// Label map as CSV with a `label,id` header.
pub fn write_label_map<W: Write>(mut w: W, labels: &[String]) -> std::io::Result<()> {
    writeln!(w, "label,id")?;
    for (id, label) in labels.iter().enumerate() {
        if label.contains([',', '"']) {
            writeln!(w, "\"{}\",{id}", label.replace('"', "\"\""))?;
        } else {
            writeln!(w, "{label},{id}")?;
        }
    }
    Ok(())
}
