//! Deterministic, seed-driven generators for graphs, typed graphs, type
//! squares, positive conditions, satisfiable instances and van Kampen
//! cubes. Every generated instance is premise-satisfying by construction
//! wherever a law needs premises.

use amalgam_core::{
    compose, factor_through_injection, induced_from_jointly_epic, pushout, AmalgamationContext,
    CommutativeSquare, ConditionBody, EdgeId, Graph, GraphMorphism, NestedCondition, NodeId,
    TypedGraph, VkCube, VkMode,
};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

pub const LABELS: [&str; 2] = ["b", "c"];

/// Size bounds for generated instances.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_nodes: usize,
    pub max_edges: usize,
    pub depth: usize,
    pub retry_budget: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_nodes: 4,
            max_edges: 4,
            depth: 3,
            retry_budget: 200,
        }
    }
}

/// One rng stream per (seed, case), so cases are independently
/// reproducible.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn below(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    rng.random_range(0..bound)
}

pub fn gen_graph(rng: &mut ChaCha8Rng, bounds: &Bounds) -> Graph {
    let n = below(rng, bounds.max_nodes + 1);
    let mut g = Graph::new();
    for i in 0..n {
        g.add_node(format!("n{i}").as_str());
    }
    if n > 0 {
        for i in 0..below(rng, bounds.max_edges + 1) {
            let s = below(rng, n);
            let t = below(rng, n);
            g.add_edge(
                format!("e{i}").as_str(),
                format!("n{s}").as_str(),
                format!("n{t}").as_str(),
                LABELS[below(rng, 2)],
            );
        }
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
    .expect("generated inclusion")
}

/// Random subgraph inclusion of `g`.
pub fn gen_subgraph(rng: &mut ChaCha8Rng, g: &Graph) -> GraphMorphism {
    let mut sub = Graph::new();
    for n in g.node_ids() {
        if rng.random_bool(0.5) {
            match g.node_label(n) {
                Some(l) => sub.add_labeled_node(n.clone(), l.clone()),
                None => sub.add_node(n.clone()),
            };
        }
    }
    for (id, e) in g.edges() {
        if sub.has_node(&e.src) && sub.has_node(&e.tgt) && rng.random_bool(0.5) {
            sub.add_edge(id.clone(), e.src.clone(), e.tgt.clone(), e.label.clone());
        }
    }
    inclusion(&sub, g)
}

/// Extends `base` by fresh nodes and edges with a given id prefix.
pub fn extend(rng: &mut ChaCha8Rng, base: &Graph, prefix: &str, bounds: &Bounds) -> Graph {
    let mut out = base.clone();
    for i in 0..below(rng, 3) {
        out.add_node(format!("{prefix}n{i}").as_str());
    }
    let nodes: Vec<String> = out.node_ids().map(|n| n.0.clone()).collect();
    if !nodes.is_empty() {
        for i in 0..below(rng, bounds.max_edges.min(3) + 1) {
            let s = &nodes[below(rng, nodes.len())];
            let t = &nodes[below(rng, nodes.len())];
            out.add_edge(
                format!("{prefix}e{i}").as_str(),
                s.as_str(),
                t.as_str(),
                LABELS[below(rng, 2)],
            );
        }
    }
    out
}

/// A pushout square of type graphs built from a random span of inclusions.
pub fn gen_type_square(rng: &mut ChaCha8Rng, bounds: &Bounds) -> AmalgamationContext {
    let small = Bounds {
        max_nodes: 2,
        max_edges: 2,
        ..*bounds
    };
    let mut interface = gen_graph(rng, &small);
    if interface.node_count() == 0 {
        interface.add_node("n0");
    }
    let left = extend(rng, &interface, "lb", &small);
    let right = extend(rng, &interface, "rc", &small);
    let to_left = inclusion(&interface, &left);
    let to_right = inclusion(&interface, &right);
    let po = pushout(&to_left, &to_right).expect("type square pushout");
    AmalgamationContext::new(to_left, to_right, po.left, po.right)
        .expect("generated square validates")
}

/// A random graph typed over `tg`: node types and edge types are chosen
/// from the type graph, so the typing morphism is total and valid by
/// construction.
pub fn gen_typed(rng: &mut ChaCha8Rng, tg: &Graph, bounds: &Bounds) -> TypedGraph {
    let type_nodes: Vec<&NodeId> = tg.node_ids().collect();
    let type_edges: Vec<(&EdgeId, &amalgam_core::Edge)> = tg.edges().collect();
    let mut g = Graph::new();
    let mut node_map = std::collections::BTreeMap::new();
    let mut edge_map = std::collections::BTreeMap::new();
    let n = below(rng, bounds.max_nodes + 1);
    for i in 0..n {
        let ty = type_nodes[below(rng, type_nodes.len())];
        let id = NodeId(format!("n{i}"));
        match tg.node_label(ty) {
            Some(l) => g.add_labeled_node(id.clone(), l.clone()),
            None => g.add_node(id.clone()),
        };
        node_map.insert(id, ty.clone());
    }
    if n > 0 && !type_edges.is_empty() {
        let mut added = 0;
        let want = below(rng, bounds.max_edges + 1);
        for _ in 0..(want * 4) {
            if added == want {
                break;
            }
            let (te_id, te) = type_edges[below(rng, type_edges.len())];
            let srcs: Vec<NodeId> = node_map
                .iter()
                .filter(|(_, v)| **v == te.src)
                .map(|(k, _)| k.clone())
                .collect();
            let tgts: Vec<NodeId> = node_map
                .iter()
                .filter(|(_, v)| **v == te.tgt)
                .map(|(k, _)| k.clone())
                .collect();
            if srcs.is_empty() || tgts.is_empty() {
                continue;
            }
            let s = &srcs[below(rng, srcs.len())];
            let t = &tgts[below(rng, tgts.len())];
            let id = EdgeId(format!("e{added}"));
            g.add_edge(id.clone(), s.clone(), t.clone(), te.label.clone());
            edge_map.insert(id, te_id.clone());
            added += 1;
        }
    }
    TypedGraph::new(GraphMorphism::new(g, tg.clone(), node_map, edge_map).expect("typing"))
        .expect("generated typed graph")
}

/// Extends a typed graph by fresh typed nodes/edges, returning the
/// extension and the inclusion of the original.
pub fn extend_typed(
    rng: &mut ChaCha8Rng,
    base: &TypedGraph,
    prefix: &str,
) -> (TypedGraph, GraphMorphism) {
    let tg = base.type_graph().clone();
    let type_nodes: Vec<NodeId> = tg.node_ids().cloned().collect();
    let mut g = base.graph().clone();
    let mut node_map = base.typing().node_map().clone();
    let mut edge_map = base.typing().edge_map().clone();

    for i in 0..=below(rng, 2) {
        let id = NodeId(format!("{prefix}n{i}"));
        let ty = type_nodes[below(rng, type_nodes.len())].clone();
        match tg.node_label(&ty) {
            Some(l) => g.add_labeled_node(id.clone(), l.clone()),
            None => g.add_node(id.clone()),
        };
        node_map.insert(id, ty);
    }
    let type_edges: Vec<(EdgeId, amalgam_core::Edge)> = tg
        .edges()
        .map(|(e, d)| (e.clone(), d.clone()))
        .collect();
    if !type_edges.is_empty() {
        for i in 0..below(rng, 3) {
            let (te_id, te) = &type_edges[below(rng, type_edges.len())];
            let srcs: Vec<NodeId> = node_map
                .iter()
                .filter(|(_, v)| *v == &te.src)
                .map(|(k, _)| k.clone())
                .collect();
            let tgts: Vec<NodeId> = node_map
                .iter()
                .filter(|(_, v)| *v == &te.tgt)
                .map(|(k, _)| k.clone())
                .collect();
            if srcs.is_empty() || tgts.is_empty() {
                continue;
            }
            let s = srcs[below(rng, srcs.len())].clone();
            let t = tgts[below(rng, tgts.len())].clone();
            let id = EdgeId(format!("{prefix}e{i}"));
            g.add_edge(id.clone(), s, t, te.label.clone());
            edge_map.insert(id, te_id.clone());
        }
    }
    let extended = TypedGraph::new(
        GraphMorphism::new(g, tg, node_map, edge_map).expect("extension typing"),
    )
    .expect("extended typed graph");
    let incl = inclusion(base.graph(), extended.graph());
    (extended, incl)
}

/// A random positive condition over `root`.
pub fn gen_positive_condition(
    rng: &mut ChaCha8Rng,
    root: &TypedGraph,
    depth: usize,
) -> NestedCondition {
    if depth == 0 || rng.random_bool(0.3) {
        return NestedCondition::top(root.clone());
    }
    match below(rng, 4) {
        0 | 1 => {
            let (ext, incl) = extend_typed(rng, root, &format!("x{depth}"));
            let inner = gen_positive_condition(rng, &ext, depth - 1);
            NestedCondition::exists(root.clone(), incl, inner)
        }
        2 => NestedCondition {
            root: root.clone(),
            body: ConditionBody::And(vec![
                gen_positive_condition(rng, root, depth - 1),
                gen_positive_condition(rng, root, depth - 1),
            ]),
        },
        _ => NestedCondition {
            root: root.clone(),
            body: ConditionBody::Or(vec![
                gen_positive_condition(rng, root, depth - 1),
                gen_positive_condition(rng, root, depth - 1),
            ]),
        },
    }
}

/// A satisfiable instance over a type graph: a positive condition, a typed
/// host grown to satisfy it, and the match.
pub struct SatisfiableInstance {
    pub condition: NestedCondition,
    pub host: TypedGraph,
    pub match_: GraphMorphism,
}

/// Grows a typed host from a match so the positive condition is satisfied:
/// existential levels are glued in by pushouts (with the typing of the
/// grown host induced by the universal property), conjunctions recurse
/// over all children, disjunctions over the leftmost child. Returns the
/// updated match, the embedding of the input host, and the grown typing.
pub fn grow_typed_model(
    cond: &NestedCondition,
    p: &GraphMorphism,
    host_typing: &GraphMorphism,
) -> (GraphMorphism, GraphMorphism, GraphMorphism) {
    match &cond.body {
        ConditionBody::True => (
            p.clone(),
            GraphMorphism::identity(p.cod()),
            host_typing.clone(),
        ),
        ConditionBody::Exists { morphism, inner } => {
            let po = pushout(morphism, p).expect("model pushout");
            let typing = induced_from_jointly_epic(
                &po.left,
                &po.right,
                inner.root.typing(),
                host_typing,
            )
            .expect("typing of the grown host");
            let (_, deeper, final_typing) = grow_typed_model(inner, &po.left, &typing);
            let host_emb = compose(&po.right, &deeper).expect("host embedding");
            let updated = compose(p, &host_emb).expect("updated match");
            (updated, host_emb, final_typing)
        }
        ConditionBody::Not(_) => unreachable!("positive conditions only"),
        ConditionBody::And(children) => {
            let mut current = p.clone();
            let mut emb = GraphMorphism::identity(p.cod());
            let mut typing = host_typing.clone();
            for child in children {
                let (next, step, next_typing) = grow_typed_model(child, &current, &typing);
                current = next;
                typing = next_typing;
                emb = compose(&emb, &step).expect("embedding chain");
            }
            (current, emb, typing)
        }
        ConditionBody::Or(children) => grow_typed_model(&children[0], p, host_typing),
    }
}

/// A satisfiable instance with optional random padding of the host.
pub fn gen_satisfiable(
    rng: &mut ChaCha8Rng,
    tg: &Graph,
    bounds: &Bounds,
) -> Result<SatisfiableInstance, CliError> {
    for _ in 0..bounds.retry_budget {
        let root = gen_typed(
            rng,
            tg,
            &Bounds {
                max_nodes: 2,
                max_edges: 1,
                ..*bounds
            },
        );
        let cond = gen_positive_condition(rng, &root, bounds.depth.min(3));
        let (p, _, typing) =
            grow_typed_model(&cond, &GraphMorphism::identity(root.graph()), root.typing());
        let host = TypedGraph::new(typing).expect("grown host typing");
        if amalgam_core::find_solution(&p, &cond, &host)
            .ok()
            .flatten()
            .is_some()
        {
            return Ok(SatisfiableInstance {
                condition: cond,
                host,
                match_: p,
            });
        }
    }
    Err(CliError::GeneratorExhausted(
        "could not grow a satisfiable instance within the retry budget".into(),
    ))
}

/// A premise-satisfying van Kampen cube. Alternates two constructions:
/// pulling a subgraph of the bottom apex back through the whole cube
/// (fronts are pullbacks by construction), and extending a top pushout
/// downwards (top is a pushout by construction).
pub fn gen_vk_cube(
    rng: &mut ChaCha8Rng,
    mode: VkMode,
    bounds: &Bounds,
) -> Option<VkCube> {
    let small = Bounds {
        max_nodes: bounds.max_nodes.min(3),
        max_edges: bounds.max_edges.min(2),
        ..*bounds
    };
    if rng.random_bool(0.5) {
        gen_cube_from_subapex(rng, mode, &small)
    } else {
        gen_cube_from_top(rng, mode, &small)
    }
}

fn gen_cube_from_subapex(
    rng: &mut ChaCha8Rng,
    mode: VkMode,
    bounds: &Bounds,
) -> Option<VkCube> {
    let a = gen_graph(rng, bounds);
    let b_sup = extend(rng, &a, "lb", bounds);
    let c_sup = extend(rng, &a, "rc", bounds);
    let m = inclusion(&a, &b_sup);
    let n = inclusion(&a, &c_sup);
    let po = pushout(&m, &n).ok()?;
    let bottom =
        CommutativeSquare::new(m.clone(), n.clone(), po.left.clone(), po.right.clone()).ok()?;

    let vert_d = gen_subgraph(rng, &po.apex);
    let vert_b = preimage_inclusion(&po.left, vert_d.dom());
    let vert_c = preimage_inclusion(&po.right, vert_d.dom());
    let a_to_apex = compose(&m, &po.left).ok()?;
    let vert_a = preimage_inclusion(&a_to_apex, vert_d.dom());

    let top = CommutativeSquare::new(
        restrict_between(&vert_a, &vert_b, &m)?,
        restrict_between(&vert_a, &vert_c, &n)?,
        restrict_between(&vert_b, &vert_d, &po.left)?,
        restrict_between(&vert_c, &vert_d, &po.right)?,
    )
    .ok()?;

    Some(VkCube {
        bottom,
        top,
        vert_a,
        vert_b,
        vert_c,
        vert_d,
        mode,
    })
}

fn gen_cube_from_top(rng: &mut ChaCha8Rng, mode: VkMode, bounds: &Bounds) -> Option<VkCube> {
    let a_prime = gen_graph(rng, bounds);
    let b_prime_sup = extend(rng, &a_prime, "lb", bounds);
    let c_prime_sup = extend(rng, &a_prime, "rc", bounds);
    let m_prime = inclusion(&a_prime, &b_prime_sup);
    let n_prime = inclusion(&a_prime, &c_prime_sup);
    let top_po = pushout(&m_prime, &n_prime).ok()?;
    let top = CommutativeSquare::new(
        m_prime.clone(),
        n_prime.clone(),
        top_po.left.clone(),
        top_po.right.clone(),
    )
    .ok()?;

    // widen the lower corners and induce the bottom
    let b = extend(rng, &b_prime_sup, "wb", bounds);
    let c = extend(rng, &c_prime_sup, "wc", bounds);
    let vert_b = inclusion(&b_prime_sup, &b);
    let vert_c = inclusion(&c_prime_sup, &c);
    let vert_a = GraphMorphism::identity(&a_prime);
    let m = compose(&m_prime, &vert_b).ok()?;
    let n = compose(&n_prime, &vert_c).ok()?;
    let bottom_po = pushout(&m, &n).ok()?;
    let bottom = CommutativeSquare::new(
        m.clone(),
        n.clone(),
        bottom_po.left.clone(),
        bottom_po.right.clone(),
    )
    .ok()?;
    let vert_d = induced_from_jointly_epic(
        &top_po.left,
        &top_po.right,
        &compose(&vert_b, &bottom_po.left).ok()?,
        &compose(&vert_c, &bottom_po.right).ok()?,
    )
    .ok()?;

    Some(VkCube {
        bottom,
        top,
        vert_a,
        vert_b,
        vert_c,
        vert_d,
        mode,
    })
}

fn preimage_inclusion(m: &GraphMorphism, sub: &Graph) -> GraphMorphism {
    let mut pre = Graph::new();
    for n in m.dom().node_ids() {
        if sub.has_node(m.node_image(n).expect("total")) {
            match m.dom().node_label(n) {
                Some(l) => pre.add_labeled_node(n.clone(), l.clone()),
                None => pre.add_node(n.clone()),
            };
        }
    }
    for (e, data) in m.dom().edges() {
        if sub.has_edge(m.edge_image(e).expect("total")) {
            pre.add_edge(e.clone(), data.src.clone(), data.tgt.clone(), data.label.clone());
        }
    }
    inclusion(&pre, m.dom())
}

fn restrict_between(
    dom_incl: &GraphMorphism,
    cod_incl: &GraphMorphism,
    m: &GraphMorphism,
) -> Option<GraphMorphism> {
    let through = compose(dom_incl, m).ok()?;
    factor_through_injection(&through, cod_incl).ok()
}
