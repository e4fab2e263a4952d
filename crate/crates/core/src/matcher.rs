//! Backtracking search for label-preserving graph monomorphisms and
//! isomorphisms.
//!
//! Candidates are tried in lexicographic id order, so results come out in a
//! deterministic order: matches are sorted by the image sequence of the
//! pattern's sorted nodes, then by the image sequence of its sorted edges.
//! Pruning is by label, optional typing, per-label degree counts and forward
//! checking on edges incident to the node just assigned.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, NodeId};
use crate::morphism::GraphMorphism;

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchKind {
    Monomorphism,
    Isomorphism,
}

/// A monomorphism/isomorphism search problem.
pub(crate) struct Search<'a> {
    pub pattern: &'a Graph,
    pub host: &'a Graph,
    pub kind: SearchKind,
    /// Typing morphisms of pattern and host into a common type graph.
    /// When present, images must have equal types.
    pub typing: Option<(&'a GraphMorphism, &'a GraphMorphism)>,
    /// Forced partial assignment (used for extension search).
    pub pre_nodes: BTreeMap<NodeId, NodeId>,
    pub pre_edges: BTreeMap<EdgeId, EdgeId>,
}

struct State<'a> {
    search: &'a Search<'a>,
    pattern_nodes: Vec<&'a NodeId>,
    pattern_edges: Vec<&'a EdgeId>,
    node_map: BTreeMap<NodeId, NodeId>,
    edge_map: BTreeMap<EdgeId, EdgeId>,
    used_nodes: BTreeMap<NodeId, ()>,
    used_edges: BTreeMap<EdgeId, ()>,
}

impl<'a> Search<'a> {
    pub fn new(pattern: &'a Graph, host: &'a Graph, kind: SearchKind) -> Self {
        Search {
            pattern,
            host,
            kind,
            typing: None,
            pre_nodes: BTreeMap::new(),
            pre_edges: BTreeMap::new(),
        }
    }

    pub fn with_typing(mut self, pattern: &'a GraphMorphism, host: &'a GraphMorphism) -> Self {
        self.typing = Some((pattern, host));
        self
    }

    /// Runs the search, feeding each match to `visit` until it breaks.
    pub fn for_each(&self, mut visit: impl FnMut(&GraphMorphism) -> ControlFlow<()>) {
        if self.kind == SearchKind::Isomorphism
            && (self.pattern.node_count() != self.host.node_count()
                || self.pattern.edge_count() != self.host.edge_count())
        {
            return;
        }

        let mut state = State {
            search: self,
            pattern_nodes: self.pattern.node_ids().collect(),
            pattern_edges: self.pattern.edges().map(|(e, _)| e).collect(),
            node_map: BTreeMap::new(),
            edge_map: BTreeMap::new(),
            used_nodes: BTreeMap::new(),
            used_edges: BTreeMap::new(),
        };

        // install and sanity-check the forced assignment
        for (p, h) in &self.pre_nodes {
            if !state.node_compatible(p, h) || state.used_nodes.contains_key(h) {
                return;
            }
            state.node_map.insert(p.clone(), h.clone());
            state.used_nodes.insert(h.clone(), ());
        }
        for (p, h) in &self.pre_edges {
            if !state.edge_compatible(p, h) || state.used_edges.contains_key(h) {
                return;
            }
            state.edge_map.insert(p.clone(), h.clone());
            state.used_edges.insert(h.clone(), ());
        }

        let _ = state.assign_node(0, &mut visit);
    }

    /// All matches, in deterministic order.
    pub fn collect(&self) -> Vec<GraphMorphism> {
        let mut out = Vec::new();
        self.for_each(|m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        });
        out
    }

    /// The first match, if any.
    pub fn first(&self) -> Option<GraphMorphism> {
        let mut out = None;
        self.for_each(|m| {
            out = Some(m.clone());
            ControlFlow::Break(())
        });
        out
    }
}

impl<'a> State<'a> {
    fn node_compatible(&self, p: &NodeId, h: &NodeId) -> bool {
        if !self.search.host.has_node(h) {
            return false;
        }
        if self.search.pattern.node_label(p) != self.search.host.node_label(h) {
            return false;
        }
        if let Some((pt, ht)) = self.search.typing {
            if pt.node_image(p) != ht.node_image(h) {
                return false;
            }
        }
        // per-label degree pruning
        let p_out = self.search.pattern.out_degree_by_label(p);
        let h_out = self.search.host.out_degree_by_label(h);
        let p_in = self.search.pattern.in_degree_by_label(p);
        let h_in = self.search.host.in_degree_by_label(h);
        match self.search.kind {
            SearchKind::Monomorphism => {
                p_out.iter().all(|(l, c)| h_out.get(l).unwrap_or(&0) >= c)
                    && p_in.iter().all(|(l, c)| h_in.get(l).unwrap_or(&0) >= c)
            }
            SearchKind::Isomorphism => p_out == h_out && p_in == h_in,
        }
    }

    fn edge_compatible(&self, p: &EdgeId, h: &EdgeId) -> bool {
        let pe = match self.search.pattern.edge(p) {
            Some(e) => e,
            None => return false,
        };
        let he = match self.search.host.edge(h) {
            Some(e) => e,
            None => return false,
        };
        if pe.label != he.label {
            return false;
        }
        if let Some((pt, ht)) = self.search.typing {
            if pt.edge_image(p) != ht.edge_image(h) {
                return false;
            }
        }
        // endpoints must agree with whatever node assignment exists
        for (pn, hn) in [(&pe.src, &he.src), (&pe.tgt, &he.tgt)] {
            if let Some(img) = self.node_map.get(pn) {
                if img != hn {
                    return false;
                }
            }
        }
        true
    }

    /// After mapping `p -> h`, every pattern edge between `p` and an
    /// already-assigned node must have at least one candidate host edge.
    fn forward_check(&self, p: &NodeId) -> bool {
        for (pe_id, pe) in self.search.pattern.edges() {
            if self.edge_map.contains_key(pe_id) {
                continue;
            }
            let touches = pe.src == *p || pe.tgt == *p;
            if !touches {
                continue;
            }
            let (src_img, tgt_img) = (self.node_map.get(&pe.src), self.node_map.get(&pe.tgt));
            if src_img.is_none() || tgt_img.is_none() {
                continue;
            }
            let found = self
                .search
                .host
                .edges()
                .any(|(he_id, _)| !self.used_edges.contains_key(he_id)
                    && self.edge_compatible(pe_id, he_id));
            if !found {
                return false;
            }
        }
        true
    }

    fn assign_node(
        &mut self,
        idx: usize,
        visit: &mut impl FnMut(&GraphMorphism) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let next = self.pattern_nodes[idx..]
            .iter()
            .position(|n| !self.node_map.contains_key(*n))
            .map(|off| idx + off);
        let pos = match next {
            None => return self.assign_edge(0, visit),
            Some(p) => p,
        };
        let p = self.pattern_nodes[pos].clone();
        let candidates: Vec<NodeId> = self
            .search
            .host
            .node_ids()
            .filter(|h| !self.used_nodes.contains_key(*h))
            .filter(|h| self.node_compatible(&p, h))
            .cloned()
            .collect();
        for h in candidates {
            self.node_map.insert(p.clone(), h.clone());
            self.used_nodes.insert(h.clone(), ());
            if self.forward_check(&p) {
                self.assign_node(pos + 1, visit)?;
            }
            self.node_map.remove(&p);
            self.used_nodes.remove(&h);
        }
        ControlFlow::Continue(())
    }

    fn assign_edge(
        &mut self,
        idx: usize,
        visit: &mut impl FnMut(&GraphMorphism) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let next = self.pattern_edges[idx..]
            .iter()
            .position(|e| !self.edge_map.contains_key(*e))
            .map(|off| idx + off);
        let pos = match next {
            None => {
                let m = GraphMorphism::from_parts(
                    self.search.pattern.clone(),
                    self.search.host.clone(),
                    self.node_map.clone(),
                    self.edge_map.clone(),
                );
                return visit(&m);
            }
            Some(p) => p,
        };
        let p = self.pattern_edges[pos].clone();
        let candidates: Vec<EdgeId> = self
            .search
            .host
            .edges()
            .map(|(e, _)| e)
            .filter(|h| !self.used_edges.contains_key(*h))
            .filter(|h| self.edge_compatible(&p, h))
            .cloned()
            .collect();
        for h in candidates {
            self.edge_map.insert(p.clone(), h.clone());
            self.used_edges.insert(h.clone(), ());
            self.assign_edge(pos + 1, visit)?;
            self.edge_map.remove(&p);
            self.used_edges.remove(&h);
        }
        ControlFlow::Continue(())
    }
}

/// Finds a label-preserving isomorphism between two plain graphs, if any.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<GraphMorphism> {
    Search::new(g, h, SearchKind::Isomorphism).first()
}

/// All label-preserving monomorphisms from `pattern` into `host`, in
/// deterministic order.
pub fn enumerate_monomorphisms(pattern: &Graph, host: &Graph) -> Vec<GraphMorphism> {
    Search::new(pattern, host, SearchKind::Monomorphism).collect()
}

/// All injective `q` with `q ∘ a = p`, in deterministic order. `a` and `p`
/// must share a domain; the search only backtracks over items of `cod(a)`
/// outside the image of `a`.
pub fn enumerate_extensions(a: &GraphMorphism, p: &GraphMorphism) -> Result<Vec<GraphMorphism>> {
    extension_search(a, p, None)
}

pub(crate) fn extension_search(
    a: &GraphMorphism,
    p: &GraphMorphism,
    typing: Option<(&GraphMorphism, &GraphMorphism)>,
) -> Result<Vec<GraphMorphism>> {
    if a.dom() != p.dom() {
        return Err(Error::DomainMismatch(
            "extension search needs a shared domain".into(),
        ));
    }
    let mut pre_nodes: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for (x, via_a) in a.node_map() {
        let via_p = p
            .node_image(x)
            .ok_or_else(|| Error::InvalidMorphism(format!("no image for node {x}")))?;
        if let Some(existing) = pre_nodes.get(via_a) {
            if existing != via_p {
                return Ok(Vec::new());
            }
        }
        pre_nodes.insert(via_a.clone(), via_p.clone());
    }
    let mut pre_edges: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for (x, via_a) in a.edge_map() {
        let via_p = p
            .edge_image(x)
            .ok_or_else(|| Error::InvalidMorphism(format!("no image for edge {x}")))?;
        if let Some(existing) = pre_edges.get(via_a) {
            if existing != via_p {
                return Ok(Vec::new());
            }
        }
        pre_edges.insert(via_a.clone(), via_p.clone());
    }
    let mut search = Search::new(a.cod(), p.cod(), SearchKind::Monomorphism);
    search.typing = typing;
    search.pre_nodes = pre_nodes;
    search.pre_edges = pre_edges;
    Ok(search.collect())
}
