//! Brute-force oracles and exhaustive enumerations for the acceptance
//! suite, independent of the kernel's search and construction code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use amalgam_core::{
    compose, ConditionBody, Edge, EdgeId, Graph, GraphMorphism, NestedCondition, NodeId,
    TypedGraph,
};

pub const LABELS: [&str; 2] = ["b", "c"];

/// All graphs with at most `max_nodes` nodes and at most `max_edges` edges
/// over the two-label alphabet, with canonical node ids. Multisets of
/// parallel edges are enumerated as non-decreasing sequences of edge
/// descriptors.
pub fn all_graphs(max_nodes: usize, max_edges: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 0..=max_nodes {
        // all edge descriptors (src, tgt, label) over n nodes
        let mut descriptors = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for l in LABELS {
                    descriptors.push((s, t, l));
                }
            }
        }
        let mut chosen = Vec::new();
        enumerate_multisets(&descriptors, max_edges, 0, &mut chosen, &mut |edges| {
            let mut g = Graph::new();
            for i in 0..n {
                g.add_node(format!("n{i}").as_str());
            }
            for (i, (s, t, l)) in edges.iter().enumerate() {
                g.add_edge(
                    format!("e{i}").as_str(),
                    format!("n{s}").as_str(),
                    format!("n{t}").as_str(),
                    *l,
                );
            }
            out.push(g);
        });
    }
    out
}

fn enumerate_multisets<'a>(
    descriptors: &'a [(usize, usize, &'a str)],
    remaining: usize,
    start: usize,
    chosen: &mut Vec<(usize, usize, &'a str)>,
    emit: &mut impl FnMut(&[(usize, usize, &'a str)]),
) {
    emit(chosen);
    if remaining == 0 {
        return;
    }
    for i in start..descriptors.len() {
        chosen.push(descriptors[i]);
        enumerate_multisets(descriptors, remaining - 1, i, chosen, emit);
        chosen.pop();
    }
}

pub fn inclusion(sub: &Graph, sup: &Graph) -> GraphMorphism {
    GraphMorphism::new(
        sub.clone(),
        sup.clone(),
        sub.node_ids().map(|n| (n.clone(), n.clone())).collect(),
        sub.edges().map(|(e, _)| (e.clone(), e.clone())).collect(),
    )
    .expect("inclusion")
}

/// Every subgraph inclusion of `g` (node subsets crossed with closed edge
/// subsets). Exponential; callers keep `g` tiny.
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

/// Brute-force enumeration of morphisms: all node functions crossed with
/// all edge functions, filtered by validity (and injectivity on demand).
pub fn brute_force_morphisms(
    pattern: &Graph,
    host: &Graph,
    injective_only: bool,
) -> Vec<GraphMorphism> {
    let p_nodes: Vec<&NodeId> = pattern.node_ids().collect();
    let h_nodes: Vec<&NodeId> = host.node_ids().collect();
    let p_edges: Vec<&EdgeId> = pattern.edges().map(|(e, _)| e).collect();
    let h_edges: Vec<&EdgeId> = host.edges().map(|(e, _)| e).collect();

    if (!p_nodes.is_empty() && h_nodes.is_empty()) || (!p_edges.is_empty() && h_edges.is_empty()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for na in all_functions(p_nodes.len(), h_nodes.len()) {
        for ea in all_functions(p_edges.len(), h_edges.len()) {
            let node_map: BTreeMap<NodeId, NodeId> = p_nodes
                .iter()
                .zip(&na)
                .map(|(p, &h)| ((*p).clone(), h_nodes[h].clone()))
                .collect();
            let edge_map: BTreeMap<EdgeId, EdgeId> = p_edges
                .iter()
                .zip(&ea)
                .map(|(p, &h)| ((*p).clone(), h_edges[h].clone()))
                .collect();
            let m = GraphMorphism::from_parts(pattern.clone(), host.clone(), node_map, edge_map);
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

/// Typed brute-force monomorphism enumeration.
pub fn brute_force_typed_monos(pattern: &TypedGraph, host: &TypedGraph) -> Vec<GraphMorphism> {
    brute_force_morphisms(pattern.graph(), host.graph(), true)
        .into_iter()
        .filter(|m| {
            compose(m, host.typing())
                .map(|t| t == *pattern.typing())
                .unwrap_or(false)
        })
        .collect()
}

/// Test-only satisfaction oracle using brute-force enumeration rather than
/// the backtracking engine.
pub fn oracle_satisfies(p: &GraphMorphism, cond: &NestedCondition, host: &TypedGraph) -> bool {
    match &cond.body {
        ConditionBody::True => true,
        ConditionBody::Exists { morphism, inner } => {
            brute_force_typed_monos(&inner.root, host)
                .into_iter()
                .filter(|q| compose(morphism, q).map(|c| c == *p).unwrap_or(false))
                .any(|q| oracle_satisfies(&q, inner, host))
        }
        ConditionBody::Not(inner) => !oracle_satisfies(p, inner, host),
        ConditionBody::And(children) => children.iter().all(|c| oracle_satisfies(p, c, host)),
        ConditionBody::Or(children) => children.iter().any(|c| oracle_satisfies(p, c, host)),
    }
}

/// Oracle for universal satisfaction.
pub fn oracle_generally_satisfies(host: &TypedGraph, cond: &NestedCondition) -> bool {
    brute_force_typed_monos(&cond.root, host)
        .into_iter()
        .all(|p| oracle_satisfies(&p, cond, host))
}
