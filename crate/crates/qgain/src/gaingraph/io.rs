//! Graph file format.
//!
//! ```json
//! {"vertices":[1,2],"edges":[{"u":1,"v":2,"gain":"0,1,0,0"}]}
//! ```
//!
//! The gain is stated for the orientation `u -> v` in the quaternion token
//! format (four reduced rationals, denominator omitted when 1). The loader
//! validates simplicity and exact unit modulus and rejects violations with a
//! descriptive error. Writing is canonical: sorted vertices, edges sorted by
//! `(u, v)` with `u < v`, reduced gain tokens.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{GainGraph, GraphError, VertexId};
use crate::quaternion::Quaternion;

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<u32>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    u: u32,
    v: u32,
    gain: String,
}

/// Canonical single-line JSON for a graph; the digest input.
pub fn to_canonical_json(graph: &GainGraph) -> String {
    let file = GraphFile {
        vertices: graph.vertices().map(|v| v.0).collect(),
        edges: graph
            .edges()
            .map(|(u, v, g)| EdgeFile {
                u: u.0,
                v: v.0,
                gain: g.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("graph serialization cannot fail")
}

pub fn to_pretty_json(graph: &GainGraph) -> String {
    let file = GraphFile {
        vertices: graph.vertices().map(|v| v.0).collect(),
        edges: graph
            .edges()
            .map(|(u, v, g)| EdgeFile {
                u: u.0,
                v: v.0,
                gain: g.to_string(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
}

pub fn from_json_str(src: &str) -> Result<GainGraph, GraphError> {
    let file: GraphFile = serde_json::from_str(src)
        .map_err(|e| GraphError::Format(format!("JSON syntax: {e}")))?;
    let mut graph = GainGraph::new();
    for &id in &file.vertices {
        if graph.has_vertex(VertexId(id)) {
            return Err(GraphError::Format(format!("duplicate vertex id {id}")));
        }
        graph.add_vertex(id);
    }
    for (idx, edge) in file.edges.iter().enumerate() {
        let (u, v) = (VertexId(edge.u), VertexId(edge.v));
        for end in [u, v] {
            if !graph.has_vertex(end) {
                return Err(GraphError::Format(format!(
                    "edge {idx} ({}-{}): vertex {end} is not listed",
                    edge.u, edge.v
                )));
            }
        }
        let gain: Quaternion = edge.gain.parse().map_err(|e| {
            GraphError::Format(format!(
                "edge {idx} ({}-{}): bad gain token {:?}: {e}",
                edge.u, edge.v, edge.gain
            ))
        })?;
        graph.add_edge(u, v, gain).map_err(|e| match e {
            GraphError::LoopEdge(_) => {
                GraphError::Format(format!("edge {idx}: loop at vertex {}", edge.u))
            }
            GraphError::DuplicateEdge(_, _) => GraphError::Format(format!(
                "edge {idx} ({}-{}): duplicate edge",
                edge.u, edge.v
            )),
            GraphError::NonUnitGain(_, _) => GraphError::Format(format!(
                "edge {idx} ({}-{}): gain {:?} is not a unit quaternion",
                edge.u, edge.v, edge.gain
            )),
            other => other,
        })?;
    }
    Ok(graph)
}

pub fn read_graph_file(path: &Path) -> Result<GainGraph, GraphError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| GraphError::Format(format!("cannot read {}: {e}", path.display())))?;
    from_json_str(&src)
}

pub fn write_graph_file(path: &Path, graph: &GainGraph) -> Result<(), GraphError> {
    std::fs::write(path, to_pretty_json(graph))
        .map_err(|e| GraphError::Format(format!("cannot write {}: {e}", path.display())))
}

impl GainGraph {
    /// Stable identifier: SHA-256 of the canonical JSON serialization,
    /// truncated to 16 hex characters. Used to deduplicate report records.
    pub fn digest(&self) -> String {
        let canonical = to_canonical_json(self);
        let hash = Sha256::digest(canonical.as_bytes());
        hex::encode(&hash[..8])
    }
}
