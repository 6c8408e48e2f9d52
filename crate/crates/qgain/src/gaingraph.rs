//! The quaternion unit gain graph model.
//!
//! A gain graph here is a simple undirected graph whose oriented edges carry
//! unit quaternion gains with `gain(v,u) = conj(gain(u,v))`. Storage keeps
//! one gain per unordered edge, for the orientation from the lower vertex id
//! to the higher; the reverse gain is derived by conjugation on read, so the
//! pairing invariant cannot be violated by construction.
//!
//! Graphs are immutable values once built: every structural edit returns a
//! new graph. Adjacency-matrix row order is the sorted vertex id order, so
//! ranks are reproducible.

mod io;
mod random;

pub use io::{from_json_str, read_graph_file, to_canonical_json, to_pretty_json, write_graph_file};
pub use random::{
    random_connected_graph, random_gain, random_switching, random_tree, sample_cell,
    CellSample, GainMode,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;

/// Stable opaque vertex identifier.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(value: u32) -> Self {
        VertexId(value)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("edge {0}-{1} already exists")]
    DuplicateEdge(VertexId, VertexId),
    #[error("loops are not allowed (vertex {0})")]
    LoopEdge(VertexId),
    #[error("gain on edge {0}-{1} is not a unit quaternion")]
    NonUnitGain(VertexId, VertexId),
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(VertexId, VertexId),
    #[error("vertices {0} and {1} are in different components")]
    Disconnected(VertexId, VertexId),
    #[error("graph is not connected")]
    NotConnected,
    #[error("switching function does not cover vertex {0}")]
    SwitchingDomain(VertexId),
    #[error("switching value at vertex {0} is not a unit quaternion")]
    NonUnitSwitch(VertexId),
    #[error("graph file is invalid: {0}")]
    Format(String),
    #[error("cannot build requested random graph: {0}")]
    Infeasible(String),
}

/// Basic counting invariants of a gain graph.
///
/// `c = m - n + omega` is the cyclomatic number (independent cycle count)
/// and `p` the number of pendant vertices (degree 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub c: usize,
    pub p: usize,
}

/// Vertex-indexed unit quaternions used for switching.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SwitchingFunction(pub BTreeMap<VertexId, Quaternion>);

impl SwitchingFunction {
    pub fn identity(graph: &GainGraph) -> Self {
        SwitchingFunction(
            graph
                .vertices()
                .map(|v| (v, Quaternion::one()))
                .collect(),
        )
    }

    pub fn get(&self, v: VertexId) -> Option<&Quaternion> {
        self.0.get(&v)
    }

    pub fn set(&mut self, v: VertexId, value: Quaternion) {
        self.0.insert(v, value);
    }
}

/// Counts describing what deleting a vertex does to the graph: its degree
/// `d`, the number `m2` of its degree-2 neighbors, the number `s` of
/// components of the deleted graph, and the number `r` of those components
/// containing a degree-2 neighbor. They satisfy `d + r >= m2 + s`,
/// `2d + r >= m2 + 2s + 1` when the vertex lies on a cycle, and
/// `c(G - x) = c(G) - d + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexDeletionCounts {
    pub degree: usize,
    pub twodeg_components: usize,
    pub twodeg_neighbors: usize,
    pub components_after: usize,
}

/// A biconnected component: its vertex set and its (unordered) edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl Block {
    /// Independent cycles inside the block.
    pub fn cyclomatic(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// True iff the block is a single cycle.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct GainGraph {
    verts: BTreeSet<VertexId>,
    // Key is (low, high); the stored quaternion is the gain of low -> high.
    gains: BTreeMap<(VertexId, VertexId), Quaternion>,
}

impl GainGraph {
    pub fn new() -> Self {
        GainGraph::default()
    }

    pub fn with_vertices<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        let mut g = GainGraph::new();
        for id in ids {
            g.add_vertex(VertexId(id));
        }
        g
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) {
        self.verts.insert(v.into());
    }

    /// Insert an edge with the gain stated for the orientation `u -> v`.
    /// Endpoints are registered automatically. The gain must be an exact
    /// unit; loops and duplicate edges are rejected.
    pub fn add_edge(
        &mut self,
        u: impl Into<VertexId>,
        v: impl Into<VertexId>,
        gain: Quaternion,
    ) -> Result<(), GraphError> {
        let (u, v) = (u.into(), v.into());
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        if !gain.is_unit() {
            return Err(GraphError::NonUnitGain(u, v));
        }
        let (key, stored) = if u < v {
            ((u, v), gain)
        } else {
            ((v, u), gain.conj())
        };
        if self.gains.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.verts.insert(u);
        self.verts.insert(v);
        self.gains.insert(key, stored);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn m(&self) -> usize {
        self.gains.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.verts.contains(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.gains.contains_key(&key)
    }

    /// Gain of the oriented edge `u -> v`, if present.
    pub fn gain(&self, u: VertexId, v: VertexId) -> Option<Quaternion> {
        if u < v {
            self.gains.get(&(u, v)).cloned()
        } else {
            self.gains.get(&(v, u)).map(Quaternion::conj)
        }
    }

    /// Sorted vertex ids.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.iter().copied()
    }

    pub fn vertex_vec(&self) -> Vec<VertexId> {
        self.verts.iter().copied().collect()
    }

    /// Edges as `(low, high, gain of low -> high)`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, &Quaternion)> + '_ {
        self.gains.iter().map(|(&(u, v), g)| (u, v, g))
    }

    /// Sorted adjacency lists for every vertex.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.verts.iter().map(|&v| (v, Vec::new())).collect();
        for &(u, v) in self.gains.keys() {
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for &(a, b) in self.gains.keys() {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.gains.keys().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.n();
        let m = self.m();
        let omega = self.component_vertex_sets().len();
        let adj = self.adjacency();
        let p = adj.values().filter(|nb| nb.len() == 1).count();
        GraphStats {
            n,
            m,
            omega,
            c: m + omega - n,
            p,
        }
    }

    /// Vertex sets of connected components, ordered by smallest member.
    pub fn component_vertex_sets(&self) -> Vec<BTreeSet<VertexId>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.verts {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Connected components as induced gain graphs.
    pub fn components(&self) -> Vec<GainGraph> {
        self.component_vertex_sets()
            .into_iter()
            .map(|set| self.induced(&set).expect("component vertices exist"))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_vertex_sets().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.stats().c == 0
    }

    /// True iff the graph is a single cycle (connected, all degrees 2).
    pub fn is_cycle_graph(&self) -> bool {
        self.n() >= 3
            && self.m() == self.n()
            && self.is_connected()
            && self.adjacency().values().all(|nb| nb.len() == 2)
    }

    /// Vertex order of the cycle, when the graph is a single cycle.
    pub fn cycle_order(&self) -> Option<Vec<VertexId>> {
        if !self.is_cycle_graph() {
            return None;
        }
        let adj = self.adjacency();
        let start = *self.verts.iter().next().unwrap();
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = adj[&start][0];
        while cur != start {
            order.push(cur);
            let next = adj[&cur]
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("cycle vertex has two neighbors");
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Length of a shortest path between two vertices, by breadth-first
    /// traversal.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<usize, GraphError> {
        if !self.has_vertex(u) {
            return Err(GraphError::UnknownVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let adj = self.adjacency();
        let mut dist: BTreeMap<VertexId, usize> = BTreeMap::from([(u, 0)]);
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Ok(dist[&x]);
            }
            let d = dist[&x];
            for &w in &adj[&x] {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Err(GraphError::Disconnected(u, v))
    }

    /// Graph with one vertex and its incident edges removed.
    pub fn delete_vertex(&self, v: VertexId) -> Result<GainGraph, GraphError> {
        if !self.has_vertex(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        let mut out = GainGraph::new();
        for &w in &self.verts {
            if w != v {
                out.add_vertex(w);
            }
        }
        for (&(a, b), g) in &self.gains {
            if a != v && b != v {
                out.gains.insert((a, b), g.clone());
            }
        }
        Ok(out)
    }

    /// Graph with the given vertices removed.
    pub fn delete_vertices(&self, drop: &BTreeSet<VertexId>) -> GainGraph {
        let keep: BTreeSet<VertexId> = self.verts.difference(drop).copied().collect();
        self.induced(&keep).expect("kept vertices exist")
    }

    /// Graph with one edge removed; gains of surviving edges are unchanged.
    pub fn delete_edge(&self, u: VertexId, v: VertexId) -> Result<GainGraph, GraphError> {
        let key = if u < v { (u, v) } else { (v, u) };
        if !self.gains.contains_key(&key) {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut out = self.clone();
        out.gains.remove(&key);
        Ok(out)
    }

    /// Subgraph induced on a vertex set.
    pub fn induced(&self, set: &BTreeSet<VertexId>) -> Result<GainGraph, GraphError> {
        if let Some(&missing) = set.iter().find(|v| !self.verts.contains(v)) {
            return Err(GraphError::UnknownVertex(missing));
        }
        let mut out = GainGraph::new();
        for &v in set {
            out.add_vertex(v);
        }
        for (&(a, b), g) in &self.gains {
            if set.contains(&a) && set.contains(&b) {
                out.gains.insert((a, b), g.clone());
            }
        }
        Ok(out)
    }

    /// Hermitian adjacency matrix in sorted vertex id order: entry `(i, j)`
    /// is the gain of `v_i -> v_j` when adjacent, zero otherwise.
    pub fn adjacency_matrix(&self) -> QMatrix {
        let order = self.vertex_vec();
        let index: BTreeMap<VertexId, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = QMatrix::zeros(order.len(), order.len());
        for (&(u, v), g) in &self.gains {
            let (i, j) = (index[&u], index[&v]);
            m.set(i, j, g.clone());
            m.set(j, i, g.conj());
        }
        m
    }

    /// Row left rank of the adjacency matrix: the rank of the gain graph.
    pub fn rank(&self) -> usize {
        self.adjacency_matrix().row_left_rank()
    }

    /// Regauge every oriented edge by `theta(x)⁻¹ · gain(x,y) · theta(y)`.
    /// The underlying graph and the rank are unchanged.
    pub fn switch(&self, theta: &SwitchingFunction) -> Result<GainGraph, GraphError> {
        for &v in &self.verts {
            match theta.get(v) {
                None => return Err(GraphError::SwitchingDomain(v)),
                Some(q) if !q.is_unit() => return Err(GraphError::NonUnitSwitch(v)),
                Some(_) => {}
            }
        }
        let mut out = GainGraph::new();
        for &v in &self.verts {
            out.add_vertex(v);
        }
        for (&(u, v), g) in &self.gains {
            // Unit theta, so the inverse is the conjugate.
            let new_gain = &(&theta.get(u).unwrap().conj() * g) * theta.get(v).unwrap();
            out.gains.insert((u, v), new_gain);
        }
        Ok(out)
    }

    /// Switch a connected graph so that every edge of a spanning tree gets
    /// gain 1; non-tree edges then carry all the cycle information. Returns
    /// the switched graph and the switching function used, built by
    /// composing gains along tree paths toward the root.
    pub fn switch_canonical(&self) -> Result<(GainGraph, SwitchingFunction), GraphError> {
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let mut theta = SwitchingFunction::default();
        if self.n() == 0 {
            return Ok((self.clone(), theta));
        }
        let adj = self.adjacency();
        let root = *self.verts.iter().next().unwrap();
        theta.set(root, Quaternion::one());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[&v] {
                if theta.get(w).is_none() {
                    // Path from w to the root goes w -> v -> ... -> root.
                    let value = &self.gain(w, v).unwrap() * theta.get(v).unwrap();
                    theta.set(w, value);
                    queue.push_back(w);
                }
            }
        }
        let switched = self.switch(&theta)?;
        Ok((switched, theta))
    }

    /// Pendant vertices paired with their unique neighbors.
    pub fn pendant_structure(&self) -> Vec<(VertexId, VertexId)> {
        let adj = self.adjacency();
        adj.iter()
            .filter(|(_, nb)| nb.len() == 1)
            .map(|(&leaf, nb)| (leaf, nb[0]))
            .collect()
    }

    /// Vertices of degree at least 2.
    pub fn major_vertices(&self) -> Vec<VertexId> {
        let adj = self.adjacency();
        adj.iter()
            .filter(|(_, nb)| nb.len() >= 2)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Degree/component counts around a vertex deletion; see
    /// [`VertexDeletionCounts`] for the identities they satisfy.
    pub fn vertex_deletion_counts(
        &self,
        x: VertexId,
    ) -> Result<VertexDeletionCounts, GraphError> {
        if !self.has_vertex(x) {
            return Err(GraphError::UnknownVertex(x));
        }
        let adj = self.adjacency();
        let two_deg: BTreeSet<VertexId> = adj[&x]
            .iter()
            .copied()
            .filter(|w| adj[w].len() == 2)
            .collect();
        let deleted = self.delete_vertex(x)?;
        let comps = deleted.component_vertex_sets();
        let r = comps
            .iter()
            .filter(|comp| comp.iter().any(|v| two_deg.contains(v)))
            .count();
        Ok(VertexDeletionCounts {
            degree: adj[&x].len(),
            twodeg_components: r,
            twodeg_neighbors: two_deg.len(),
            components_after: comps.len(),
        })
    }

    /// True iff the vertex lies on some cycle, i.e. inside a block with at
    /// least one independent cycle.
    pub fn on_cycle(&self, v: VertexId) -> bool {
        self.blocks()
            .iter()
            .any(|b| b.cyclomatic() >= 1 && b.vertices.contains(&v))
    }

    /// Biconnected components (blocks). Isolated vertices belong to no
    /// block; a bridge forms a two-vertex block.
    pub fn blocks(&self) -> Vec<Block> {
        let adj = self.adjacency();
        let mut disc: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut counter = 0usize;
        let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
        let mut out: Vec<Block> = Vec::new();

        for &start in &self.verts {
            if disc.contains_key(&start) {
                continue;
            }
            disc.insert(start, counter);
            low.insert(start, counter);
            counter += 1;
            // Frames: (vertex, parent, next neighbor index).
            let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(start, None, 0)];
            loop {
                let Some(&(v, parent, idx)) = stack.last() else {
                    break;
                };
                if idx < adj[&v].len() {
                    stack.last_mut().unwrap().2 += 1;
                    let w = adj[&v][idx];
                    if Some(w) == parent {
                        continue;
                    }
                    match disc.get(&w).copied() {
                        None => {
                            edge_stack.push((v, w));
                            disc.insert(w, counter);
                            low.insert(w, counter);
                            counter += 1;
                            stack.push((w, Some(v), 0));
                        }
                        Some(dw) if dw < disc[&v] => {
                            edge_stack.push((v, w));
                            let lv = low[&v].min(dw);
                            low.insert(v, lv);
                        }
                        Some(_) => {}
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        let lp = low[&p].min(low[&v]);
                        low.insert(p, lp);
                        if low[&v] >= disc[&p] {
                            let mut edges = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                let done = e == (p, v);
                                edges.push(e);
                                if done {
                                    break;
                                }
                            }
                            if !edges.is_empty() {
                                let vertices =
                                    edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                                out.push(Block { vertices, edges });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for GainGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GainGraph(n={}, m={};", self.n(), self.m())?;
        for (u, v, g) in self.edges() {
            write!(f, " {u}-{v}:{g}")?;
        }
        write!(f, ")")
    }
}
