//! Shared helpers for the integration tests: a tiny deterministic RNG,
//! graph builders, and brute-force oracles that are independent of the
//! library's search and construction code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use amalgam_core::{Edge, EdgeId, Graph, GraphMorphism, NodeId, TypedGraph};

/// splitmix64; deterministic and dependency-free.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound` (bound > 0).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        (self.next_u64() % den as u64) < num as u64
    }
}

pub const LABELS: [&str; 2] = ["b", "c"];

pub fn graph(nodes: &[&str], edges: &[(&str, &str, &str, &str)]) -> Graph {
    let mut g = Graph::new();
    for n in nodes {
        g.add_node(*n);
    }
    for (id, s, t, l) in edges {
        g.add_edge(*id, *s, *t, *l);
    }
    g
}

pub fn inclusion(sub: &Graph, sup: &Graph) -> GraphMorphism {
    GraphMorphism::new(
        sub.clone(),
        sup.clone(),
        sub.node_ids().map(|n| (n.clone(), n.clone())).collect(),
        sub.edges().map(|(e, _)| (e.clone(), e.clone())).collect(),
    )
    .expect("inclusion is a morphism")
}

/// Random unlabeled-node graph over the two-label alphabet.
pub fn random_graph(rng: &mut Rng, max_nodes: usize, max_edges: usize) -> Graph {
    let n = rng.below(max_nodes + 1);
    let mut g = Graph::new();
    for i in 0..n {
        g.add_node(format!("n{i}").as_str());
    }
    if n > 0 {
        let e = rng.below(max_edges + 1);
        for i in 0..e {
            let s = rng.below(n);
            let t = rng.below(n);
            let l = LABELS[rng.below(LABELS.len())];
            g.add_edge(
                format!("e{i}").as_str(),
                format!("n{s}").as_str(),
                format!("n{t}").as_str(),
                l,
            );
        }
    }
    g
}

/// Random morphism into `target`: the domain is built so the maps are
/// structure-preserving by construction. Not injective in general.
pub fn random_morphism_into(rng: &mut Rng, target: &Graph, max_nodes: usize, max_edges: usize) -> GraphMorphism {
    let target_nodes: Vec<&NodeId> = target.node_ids().collect();
    let target_edges: Vec<(&EdgeId, &Edge)> = target.edges().collect();
    let mut dom = Graph::new();
    let mut node_map = BTreeMap::new();
    let mut edge_map = BTreeMap::new();
    if !target_nodes.is_empty() {
        let n = rng.below(max_nodes + 1);
        for i in 0..n {
            let img = target_nodes[rng.below(target_nodes.len())];
            dom.add_node(format!("n{i}").as_str());
            node_map.insert(NodeId(format!("n{i}")), img.clone());
        }
        if !target_edges.is_empty() && n > 0 {
            // pick image edges whose endpoints already have preimages
            let e = rng.below(max_edges + 1);
            let mut added = 0;
            for _ in 0..(e * 4) {
                if added == e {
                    break;
                }
                let (img_id, img) = target_edges[rng.below(target_edges.len())];
                let src_pre: Vec<&NodeId> = node_map
                    .iter()
                    .filter(|(_, v)| **v == img.src)
                    .map(|(k, _)| k)
                    .collect();
                let tgt_pre: Vec<&NodeId> = node_map
                    .iter()
                    .filter(|(_, v)| **v == img.tgt)
                    .map(|(k, _)| k)
                    .collect();
                if src_pre.is_empty() || tgt_pre.is_empty() {
                    continue;
                }
                let s = src_pre[rng.below(src_pre.len())].clone();
                let t = tgt_pre[rng.below(tgt_pre.len())].clone();
                let id = format!("e{added}");
                dom.add_edge(id.as_str(), s.0.as_str(), t.0.as_str(), img.label.0.as_str());
                edge_map.insert(EdgeId(id), img_id.clone());
                added += 1;
            }
        }
    }
    GraphMorphism::new(dom, target.clone(), node_map, edge_map).expect("constructed morphism")
}

/// Random subgraph of `g` with its inclusion.
pub fn random_subgraph(rng: &mut Rng, g: &Graph) -> GraphMorphism {
    let mut sub = Graph::new();
    for n in g.node_ids() {
        if rng.chance(1, 2) {
            match g.node_label(n) {
                Some(l) => sub.add_labeled_node(n.clone(), l.clone()),
                None => sub.add_node(n.clone()),
            };
        }
    }
    for (id, e) in g.edges() {
        if sub.has_node(&e.src) && sub.has_node(&e.tgt) && rng.chance(1, 2) {
            sub.add_edge(id.clone(), e.src.clone(), e.tgt.clone(), e.label.clone());
        }
    }
    inclusion(&sub, g)
}

/// Every subgraph of `g` (node subsets times closed edge subsets), as
/// inclusions. Exponential; callers keep `g` tiny.
pub fn all_subgraph_inclusions(g: &Graph) -> Vec<GraphMorphism> {
    let nodes: Vec<&NodeId> = g.node_ids().collect();
    let edges: Vec<(&EdgeId, &Edge)> = g.edges().collect();
    let mut out = Vec::new();
    for node_mask in 0..(1usize << nodes.len()) {
        let mut base = Graph::new();
        for (i, n) in nodes.iter().enumerate() {
            if node_mask & (1 << i) != 0 {
                match g.node_label(n) {
                    Some(l) => base.add_labeled_node((*n).clone(), l.clone()),
                    None => base.add_node((*n).clone()),
                };
            }
        }
        let closed: Vec<_> = edges
            .iter()
            .filter(|(_, e)| base.has_node(&e.src) && base.has_node(&e.tgt))
            .collect();
        for edge_mask in 0..(1usize << closed.len()) {
            let mut sub = base.clone();
            for (i, (id, e)) in closed.iter().enumerate() {
                if edge_mask & (1 << i) != 0 {
                    sub.add_edge((*id).clone(), e.src.clone(), e.tgt.clone(), e.label.clone());
                }
            }
            out.push(inclusion(&sub, g));
        }
    }
    out
}

/// Brute-force enumeration of every morphism from `pattern` to `host`:
/// all node functions crossed with all edge functions, filtered by
/// validity. Independent of the library's backtracking search.
pub fn brute_force_morphisms(pattern: &Graph, host: &Graph, injective_only: bool) -> Vec<GraphMorphism> {
    let p_nodes: Vec<&NodeId> = pattern.node_ids().collect();
    let h_nodes: Vec<&NodeId> = host.node_ids().collect();
    let p_edges: Vec<&EdgeId> = pattern.edges().map(|(e, _)| e).collect();
    let h_edges: Vec<&EdgeId> = host.edges().map(|(e, _)| e).collect();

    if (!p_nodes.is_empty() && h_nodes.is_empty()) || (!p_edges.is_empty() && h_edges.is_empty()) {
        return Vec::new();
    }

    let node_assignments = all_functions(p_nodes.len(), h_nodes.len());
    let edge_assignments = all_functions(p_edges.len(), h_edges.len());
    let mut out = Vec::new();
    for na in &node_assignments {
        for ea in &edge_assignments {
            let node_map: BTreeMap<NodeId, NodeId> = p_nodes
                .iter()
                .zip(na)
                .map(|(p, &h)| ((*p).clone(), h_nodes[h].clone()))
                .collect();
            let edge_map: BTreeMap<EdgeId, EdgeId> = p_edges
                .iter()
                .zip(ea)
                .map(|(p, &h)| ((*p).clone(), h_edges[h].clone()))
                .collect();
            let m = GraphMorphism::from_parts(
                pattern.clone(),
                host.clone(),
                node_map,
                edge_map,
            );
            if !m.is_valid() {
                continue;
            }
            if injective_only && !m.is_injective() {
                continue;
            }
            out.push(m);
        }
    }
    out
}

/// All functions from a domain of size `n` into a codomain of size `m`,
/// as index vectors. `n = 0` yields the single empty function.
fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * m);
        for prefix in &out {
            for i in 0..m {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The standard one-node type graph with a loop per label.
pub fn universal_type_graph() -> Graph {
    let mut tg = Graph::new();
    tg.add_node("v");
    for l in LABELS {
        tg.add_edge(l, "v", "v", l);
    }
    tg
}

/// Types an unlabeled-node graph over the universal type graph.
pub fn typed_over(g: Graph, tg: &Graph) -> TypedGraph {
    let nodes = g.node_ids().map(|n| (n.clone(), "v".into())).collect();
    let edges = g
        .edges()
        .map(|(e, d)| (e.clone(), EdgeId(d.label.0.clone())))
        .collect();
    TypedGraph::new(GraphMorphism::new(g, tg.clone(), nodes, edges).expect("typing")).expect("typed graph")
}
