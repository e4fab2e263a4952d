//! Finite directed labeled multigraphs.
//!
//! Node and edge ids are opaque strings; all iteration is in lexicographic
//! id order so every construction in this crate is deterministic.

use std::collections::BTreeMap;
use std::fmt;

/// Identifier of a node within one graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub String);

/// Identifier of an edge within one graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub String);

/// Edge and (optional) node label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label(pub String);

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId(s.to_string())
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_string())
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An edge: source node, target node and a mandatory label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub src: NodeId,
    pub tgt: NodeId,
    pub label: Label,
}

/// A finite directed labeled multigraph.
///
/// Parallel edges are allowed (edges have their own identity), node labels
/// are optional, edge labels are mandatory.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    nodes: BTreeMap<NodeId, Option<Label>>,
    edges: BTreeMap<EdgeId, Edge>,
}

/// One violated [`Graph`] invariant, produced by [`Graph::validate`] or
/// [`Graph::from_parts`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphIssue {
    /// An edge endpoint names a node that is not in the node set.
    DanglingEdge { edge: EdgeId, endpoint: NodeId },
    /// Two nodes share an id.
    DuplicateNodeId { node: NodeId },
    /// Two edges share an id.
    DuplicateEdgeId { edge: EdgeId },
}

impl fmt::Display for GraphIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphIssue::DanglingEdge { edge, endpoint } => {
                write!(f, "dangling edge: {edge} references absent node {endpoint}")
            }
            GraphIssue::DuplicateNodeId { node } => write!(f, "duplicate node id: {node}"),
            GraphIssue::DuplicateEdgeId { edge } => write!(f, "duplicate edge id: {edge}"),
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Builds a graph from raw node and edge lists, reporting duplicate ids
    /// alongside the usual invariant violations. The first occurrence of a
    /// duplicated id wins.
    pub fn from_parts(
        nodes: Vec<(NodeId, Option<Label>)>,
        edges: Vec<(EdgeId, Edge)>,
    ) -> (Graph, Vec<GraphIssue>) {
        use std::collections::btree_map::Entry;
        let mut g = Graph::new();
        let mut issues = Vec::new();
        for (id, label) in nodes {
            match g.nodes.entry(id) {
                Entry::Occupied(slot) => {
                    issues.push(GraphIssue::DuplicateNodeId {
                        node: slot.key().clone(),
                    });
                }
                Entry::Vacant(slot) => {
                    slot.insert(label);
                }
            }
        }
        for (id, edge) in edges {
            match g.edges.entry(id) {
                Entry::Occupied(slot) => {
                    issues.push(GraphIssue::DuplicateEdgeId {
                        edge: slot.key().clone(),
                    });
                }
                Entry::Vacant(slot) => {
                    slot.insert(edge);
                }
            }
        }
        issues.extend(g.validate());
        (g, issues)
    }

    /// Adds an unlabeled node. Returns false (and keeps the existing node)
    /// if the id was already present.
    pub fn add_node(&mut self, id: impl Into<NodeId>) -> bool {
        match self.nodes.entry(id.into()) {
            std::collections::btree_map::Entry::Occupied(_) => false,
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(None);
                true
            }
        }
    }

    /// Adds a labeled node. Returns false (and keeps the existing node) if
    /// the id was already present.
    pub fn add_labeled_node(&mut self, id: impl Into<NodeId>, label: impl Into<Label>) -> bool {
        match self.nodes.entry(id.into()) {
            std::collections::btree_map::Entry::Occupied(_) => false,
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(Some(label.into()));
                true
            }
        }
    }

    /// Adds an edge. Returns false (and keeps the existing edge) if the id
    /// was already present.
    pub fn add_edge(
        &mut self,
        id: impl Into<EdgeId>,
        src: impl Into<NodeId>,
        tgt: impl Into<NodeId>,
        label: impl Into<Label>,
    ) -> bool {
        let id = id.into();
        if self.edges.contains_key(&id) {
            return false;
        }
        self.edges.insert(
            id,
            Edge {
                src: src.into(),
                tgt: tgt.into(),
                label: label.into(),
            },
        );
        true
    }

    pub fn has_node(&self, id: &NodeId) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn has_edge(&self, id: &EdgeId) -> bool {
        self.edges.contains_key(id)
    }

    pub fn node_label(&self, id: &NodeId) -> Option<&Label> {
        self.nodes.get(id).and_then(|l| l.as_ref())
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    /// Node ids in lexicographic order.
    pub fn node_ids(&self) -> impl Iterator<Item = &NodeId> {
        self.nodes.keys()
    }

    /// Edges in lexicographic id order.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &Edge)> {
        self.edges.iter()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    /// Edges leaving `node`, in id order.
    pub fn outgoing<'a>(
        &'a self,
        node: &'a NodeId,
    ) -> impl Iterator<Item = (&'a EdgeId, &'a Edge)> + 'a {
        self.edges.iter().filter(move |(_, e)| &e.src == node)
    }

    /// Edges entering `node`, in id order.
    pub fn incoming<'a>(
        &'a self,
        node: &'a NodeId,
    ) -> impl Iterator<Item = (&'a EdgeId, &'a Edge)> + 'a {
        self.edges.iter().filter(move |(_, e)| &e.tgt == node)
    }

    /// Per-label out-degree of `node`.
    pub fn out_degree_by_label(&self, node: &NodeId) -> BTreeMap<&Label, usize> {
        let mut m = BTreeMap::new();
        for e in self.edges.values() {
            if &e.src == node {
                *m.entry(&e.label).or_insert(0) += 1;
            }
        }
        m
    }

    /// Per-label in-degree of `node`.
    pub fn in_degree_by_label(&self, node: &NodeId) -> BTreeMap<&Label, usize> {
        let mut m = BTreeMap::new();
        for e in self.edges.values() {
            if &e.tgt == node {
                *m.entry(&e.label).or_insert(0) += 1;
            }
        }
        m
    }

    /// Checks the graph invariants and reports every violation.
    ///
    /// Duplicate ids cannot be represented (maps), so the only reportable
    /// violation is a dangling edge endpoint.
    pub fn validate(&self) -> Vec<GraphIssue> {
        let mut issues = Vec::new();
        for (id, e) in &self.edges {
            if !self.nodes.contains_key(&e.src) {
                issues.push(GraphIssue::DanglingEdge {
                    edge: id.clone(),
                    endpoint: e.src.clone(),
                });
            }
            if !self.nodes.contains_key(&e.tgt) {
                issues.push(GraphIssue::DanglingEdge {
                    edge: id.clone(),
                    endpoint: e.tgt.clone(),
                });
            }
        }
        issues
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nodes {{")?;
        for (i, n) in self.node_ids().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}} edges {{")?;
        for (i, (id, e)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{id}: {} -{}-> {}", e.src, e.label, e.tgt)?;
        }
        write!(f, "}}")
    }
}
