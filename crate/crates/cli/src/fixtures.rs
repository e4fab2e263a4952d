//! Built-in example fixtures: the running two-label scenario used across
//! the test suite and shipped by the `fixtures` subcommand.
//!
//! All five fixtures live over the same square of type graphs: a single
//! node type, a b-loop view, a c-loop view, and their union. Fixture 1 is
//! a satisfaction scenario with a nested condition; 2-4 exercise
//! restriction and amalgamation of graphs, conditions and solutions; 5 is
//! the negative example showing that universal satisfaction is not
//! preserved by restriction.

use amalgam_core::{
    initial_morphism, AmalgamationContext, ConditionBody, Graph, GraphMorphism, NestedCondition,
    TypedGraph,
};

use crate::document::{Document, DocumentBuilder};

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
    .expect("fixture inclusion")
}

/// Types a graph over one of the square corners: every node gets the
/// single node type, every edge the loop matching its label.
pub fn typed_over(g: Graph, tg: &Graph) -> TypedGraph {
    let nodes = g.node_ids().map(|n| (n.clone(), "v".into())).collect();
    let edges = g
        .edges()
        .map(|(e, d)| (e.clone(), amalgam_core::EdgeId(d.label.0.clone())))
        .collect();
    TypedGraph::new(GraphMorphism::new(g, tg.clone(), nodes, edges).expect("fixture typing"))
        .expect("fixture typed graph")
}

/// The standard square of type graphs: one node type `v`, a `b` loop on
/// the left, a `c` loop on the right, both loops on the total.
pub fn standard_context() -> AmalgamationContext {
    let interface = graph(&["v"], &[]);
    let left = graph(&["v"], &[("b", "v", "v", "b")]);
    let right = graph(&["v"], &[("c", "v", "v", "c")]);
    let total = graph(&["v"], &[("b", "v", "v", "b"), ("c", "v", "v", "c")]);
    AmalgamationContext::new(
        inclusion(&interface, &left),
        inclusion(&interface, &right),
        inclusion(&left, &total),
        inclusion(&right, &total),
    )
    .expect("standard type square")
}

/// Fixture 1: a nested condition over a single b-edge pattern, and a host
/// with exactly two injective matches, both satisfying it.
///
/// The condition says: the source of the b-edge carries a b-self-loop, and
/// the edge is followed by some c-edge such that there is a return path
/// with one c-edge and one b-edge in either order.
pub struct Fig1 {
    pub context: AmalgamationContext,
    pub pattern: TypedGraph,
    pub condition: NestedCondition,
    pub constraint: NestedCondition,
    pub host: TypedGraph,
}

pub fn fig1() -> Fig1 {
    let context = standard_context();
    let total = context.total().clone();

    let p = graph(&["1", "2"], &[("b1", "1", "2", "b")]);
    let c1 = graph(&["1", "2"], &[("b0", "1", "1", "b"), ("b1", "1", "2", "b")]);
    let c2 = graph(
        &["1", "2", "3"],
        &[("b1", "1", "2", "b"), ("c1", "2", "3", "c")],
    );
    let c3 = graph(
        &["1", "2", "3"],
        &[
            ("b1", "1", "2", "b"),
            ("b2", "2", "1", "b"),
            ("c1", "2", "3", "c"),
            ("c2", "3", "2", "c"),
        ],
    );
    let c4 = graph(
        &["1", "2", "3"],
        &[
            ("b1", "1", "2", "b"),
            ("br", "3", "2", "b"),
            ("c1", "2", "3", "c"),
            ("cr", "2", "1", "c"),
        ],
    );

    let pattern = typed_over(p.clone(), &total);
    let ext1 = typed_over(c1, &total);
    let ext2 = typed_over(c2.clone(), &total);
    let ext3 = typed_over(c3, &total);
    let ext4 = typed_over(c4, &total);

    let condition = NestedCondition {
        root: pattern.clone(),
        body: ConditionBody::And(vec![
            NestedCondition::exists(
                pattern.clone(),
                inclusion(&p, ext1.graph()),
                NestedCondition::top(ext1),
            ),
            NestedCondition::exists(
                pattern.clone(),
                inclusion(&p, ext2.graph()),
                NestedCondition {
                    root: ext2.clone(),
                    body: ConditionBody::Or(vec![
                        NestedCondition::exists(
                            ext2.clone(),
                            inclusion(&c2, ext3.graph()),
                            NestedCondition::top(ext3),
                        ),
                        NestedCondition::exists(
                            ext2.clone(),
                            inclusion(&c2, ext4.graph()),
                            NestedCondition::top(ext4),
                        ),
                    ]),
                },
            ),
        ]),
    };

    let empty_root = typed_over(Graph::new(), &total);
    let constraint = NestedCondition::exists(
        empty_root,
        initial_morphism(pattern.graph()),
        condition.clone(),
    );

    let host = typed_over(
        graph(
            &["1", "2", "3", "4"],
            &[
                ("b0", "1", "1", "b"),
                ("b1", "1", "2", "b"),
                ("b2", "2", "1", "b"),
                ("b5", "2", "2", "b"),
                ("c1", "2", "3", "c"),
                ("c2", "3", "2", "c"),
                ("c5", "1", "4", "c"),
                ("c6", "4", "1", "c"),
            ],
        ),
        &total,
    );

    Fig1 {
        context,
        pattern,
        condition,
        constraint,
        host,
    }
}

/// Fixture 2: the fixture-1 host as a typed graph over the total type
/// graph, with the expected left (b-edges only), right (c-edges only) and
/// interface (no edges) restrictions given explicitly.
pub struct Fig2 {
    pub context: AmalgamationContext,
    pub total: TypedGraph,
    pub left_expected: TypedGraph,
    pub right_expected: TypedGraph,
    pub interface_expected: TypedGraph,
}

pub fn fig2() -> Fig2 {
    let context = standard_context();
    let total = fig1().host;
    let nodes = ["1", "2", "3", "4"];
    let left_expected = typed_over(
        graph(
            &nodes,
            &[
                ("b0", "1", "1", "b"),
                ("b1", "1", "2", "b"),
                ("b2", "2", "1", "b"),
                ("b5", "2", "2", "b"),
            ],
        ),
        context.left(),
    );
    let right_expected = typed_over(
        graph(
            &nodes,
            &[
                ("c1", "2", "3", "c"),
                ("c2", "3", "2", "c"),
                ("c5", "1", "4", "c"),
                ("c6", "4", "1", "c"),
            ],
        ),
        context.right(),
    );
    let interface_expected = typed_over(graph(&nodes, &[]), context.interface());
    Fig2 {
        context,
        total,
        left_expected,
        right_expected,
        interface_expected,
    }
}

/// Fixture 3: a disjunctive condition over a b-then-c path, with the
/// expected restrictions on both views and the shared interface.
pub struct Fig3 {
    pub context: AmalgamationContext,
    pub total: NestedCondition,
    pub left_expected: NestedCondition,
    pub right_expected: NestedCondition,
    pub interface_expected: NestedCondition,
}

fn disjunctive_condition(root_graph: Graph, exts: [Graph; 2], tg: &Graph) -> NestedCondition {
    let root = typed_over(root_graph.clone(), tg);
    let [e1, e2] = exts;
    let first = typed_over(e1, tg);
    let second = typed_over(e2, tg);
    NestedCondition {
        root: root.clone(),
        body: ConditionBody::Or(vec![
            NestedCondition::exists(
                root.clone(),
                inclusion(&root_graph, first.graph()),
                NestedCondition::top(first.clone()),
            ),
            NestedCondition::exists(
                root.clone(),
                inclusion(&root_graph, second.graph()),
                NestedCondition::top(second.clone()),
            ),
        ]),
    }
}

pub fn fig3() -> Fig3 {
    let context = standard_context();
    let nodes = ["1", "2", "3"];

    let total = disjunctive_condition(
        graph(&nodes, &[("b1", "1", "2", "b"), ("c1", "2", "3", "c")]),
        [
            graph(
                &nodes,
                &[
                    ("b1", "1", "2", "b"),
                    ("b2", "2", "1", "b"),
                    ("c1", "2", "3", "c"),
                    ("c2", "3", "2", "c"),
                ],
            ),
            graph(
                &nodes,
                &[
                    ("b1", "1", "2", "b"),
                    ("br", "3", "2", "b"),
                    ("c1", "2", "3", "c"),
                    ("cr", "2", "1", "c"),
                ],
            ),
        ],
        context.total(),
    );

    let left_expected = disjunctive_condition(
        graph(&nodes, &[("b1", "1", "2", "b")]),
        [
            graph(&nodes, &[("b1", "1", "2", "b"), ("b2", "2", "1", "b")]),
            graph(&nodes, &[("b1", "1", "2", "b"), ("br", "3", "2", "b")]),
        ],
        context.left(),
    );
    let right_expected = disjunctive_condition(
        graph(&nodes, &[("c1", "2", "3", "c")]),
        [
            graph(&nodes, &[("c1", "2", "3", "c"), ("c2", "3", "2", "c")]),
            graph(&nodes, &[("c1", "2", "3", "c"), ("cr", "2", "1", "c")]),
        ],
        context.right(),
    );
    let interface_expected = disjunctive_condition(
        graph(&nodes, &[]),
        [graph(&nodes, &[]), graph(&nodes, &[])],
        context.interface(),
    );

    Fig3 {
        context,
        total,
        left_expected,
        right_expected,
        interface_expected,
    }
}

/// Fixture 4: the fixture-3 condition wrapped as a constraint over the
/// initial root, paired with the fixture-2 host amalgamation.
pub struct Fig4 {
    pub context: AmalgamationContext,
    pub constraint: NestedCondition,
    pub host: TypedGraph,
}

pub fn fig4() -> Fig4 {
    let context = standard_context();
    let inner = fig3().total;
    let empty_root = typed_over(Graph::new(), context.total());
    let constraint = NestedCondition::exists(
        empty_root,
        initial_morphism(inner.root.graph()),
        inner,
    );
    Fig4 {
        context,
        constraint,
        host: fig2().total,
    }
}

/// Fixture 5: the negative example. The host universally satisfies the
/// condition over the total type graph, but its b-view does not satisfy
/// the restricted condition: the restricted pattern has an isolated node
/// that can land on a node with no b-edge back.
pub struct Fig5 {
    pub context: AmalgamationContext,
    pub condition: NestedCondition,
    pub host: TypedGraph,
}

pub fn fig5() -> Fig5 {
    let context = standard_context();
    let total = context.total().clone();
    let p = graph(
        &["1", "2", "3"],
        &[("b1", "1", "2", "b"), ("c1", "2", "3", "c")],
    );
    let c = graph(
        &["1", "2", "3"],
        &[("b1", "1", "2", "b"), ("b3", "3", "2", "b"), ("c1", "2", "3", "c")],
    );
    let pattern = typed_over(p.clone(), &total);
    let ext = typed_over(c, &total);
    let condition = NestedCondition::exists(
        pattern.clone(),
        inclusion(&p, ext.graph()),
        NestedCondition::top(ext),
    );
    let host = typed_over(
        graph(
            &["1", "2", "3", "4"],
            &[
                ("b1", "1", "2", "b"),
                ("b2", "3", "4", "b"),
                ("b3", "3", "2", "b"),
                ("b4", "2", "4", "b"),
                ("c1", "2", "3", "c"),
                ("c2", "4", "2", "c"),
            ],
        ),
        &total,
    );
    Fig5 {
        context,
        condition,
        host,
    }
}

/// The shipped fixture documents, in file order.
pub fn all_documents() -> Vec<(&'static str, Document)> {
    let mut out = Vec::new();

    {
        let f = fig1();
        let mut b = DocumentBuilder::new();
        b.add_context("square", &f.context);
        let host = b.add_typed_graph("GA", &f.host);
        let cond = b.add_condition("acP", &f.condition);
        let constraint = b.add_condition("acI", &f.constraint);
        b.meta("fixture", "fig1");
        b.meta("host", host);
        b.meta("condition", cond);
        b.meta("constraint", constraint);
        out.push(("fig1", b.finish()));
    }
    {
        let f = fig2();
        let mut b = DocumentBuilder::new();
        b.add_context("square", &f.context);
        let total = b.add_typed_graph("GA", &f.total);
        b.add_typed_graph("GB", &f.left_expected);
        b.add_typed_graph("GC", &f.right_expected);
        b.add_typed_graph("GD", &f.interface_expected);
        b.meta("fixture", "fig2");
        b.meta("total", total);
        out.push(("fig2", b.finish()));
    }
    {
        let f = fig3();
        let mut b = DocumentBuilder::new();
        b.add_context("square", &f.context);
        let total = b.add_condition("acPA", &f.total);
        b.add_condition("acPB", &f.left_expected);
        b.add_condition("acPC", &f.right_expected);
        b.add_condition("acPD", &f.interface_expected);
        b.meta("fixture", "fig3");
        b.meta("total", total);
        out.push(("fig3", b.finish()));
    }
    {
        let f = fig4();
        let mut b = DocumentBuilder::new();
        b.add_context("square", &f.context);
        let host = b.add_typed_graph("GA", &f.host);
        let constraint = b.add_condition("acA", &f.constraint);
        b.meta("fixture", "fig4");
        b.meta("host", host);
        b.meta("constraint", constraint);
        out.push(("fig4", b.finish()));
    }
    {
        let f = fig5();
        let mut b = DocumentBuilder::new();
        b.add_context("square", &f.context);
        let host = b.add_typed_graph("GA", &f.host);
        let cond = b.add_condition("acPA", &f.condition);
        b.meta("fixture", "fig5");
        b.meta("host", host);
        b.meta("condition", cond);
        out.push(("fig5", b.finish()));
    }

    out
}
