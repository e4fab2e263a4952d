//! Agreement, amalgamation and decomposition of positive nested conditions
//! over a pushout square of type graphs.
//!
//! Amalgamation works level by level: roots are amalgamated as typed
//! graphs, each existential morphism of the result is induced by the
//! universal property of the root pushout, and junctions recurse
//! positionally. Decomposition is restriction along the three square legs.

use std::ops::ControlFlow;

use crate::condition::{
    restrict_condition, ConditionBody, ConditionRestriction, NestedCondition,
};
use crate::error::{Error, Result};
use crate::limits::induced_from_jointly_epic;
use crate::morphism::{compose, factor_through_injection, GraphMorphism};
use crate::typed::{
    amalgamate_with_witness, enumerate_typed_isomorphisms, restriction_embeddings,
    AgreementWitness, AmalgamationContext, ObjectAmalgamation,
};

/// Level-wise agreement witness for a triple of conditions: the embeddings
/// of every interface-side object into the corresponding left- and
/// right-side objects. `children` mirrors the condition body.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionAgreement {
    pub root: AgreementWitness,
    pub children: Vec<ConditionAgreement>,
}

/// One side's embeddings, used while searching.
struct HalfAgreement {
    root: GraphMorphism,
    children: Vec<HalfAgreement>,
}

fn shapes_match(a: &NestedCondition, b: &NestedCondition) -> bool {
    match (&a.body, &b.body) {
        (ConditionBody::True, ConditionBody::True) => true,
        (ConditionBody::Exists { inner: ia, .. }, ConditionBody::Exists { inner: ib, .. }) => {
            shapes_match(ia, ib)
        }
        (ConditionBody::Not(ia), ConditionBody::Not(ib)) => shapes_match(ia, ib),
        (ConditionBody::And(ca), ConditionBody::And(cb))
        | (ConditionBody::Or(ca), ConditionBody::Or(cb)) => {
            ca.len() == cb.len() && ca.iter().zip(cb).all(|(x, y)| shapes_match(x, y))
        }
        _ => false,
    }
}

/// Searches one side for embeddings exhibiting `interface` as the
/// restriction of `side` along `t`, commuting with the existential
/// morphisms. Backtracks over the embedding candidates of each level.
fn find_half_agreement(
    side: &NestedCondition,
    interface: &NestedCondition,
    t: &GraphMorphism,
    root_emb: &GraphMorphism,
) -> Result<Option<HalfAgreement>> {
    let children = match (&side.body, &interface.body) {
        (ConditionBody::True, ConditionBody::True) => Vec::new(),
        (
            ConditionBody::Exists {
                morphism: side_m,
                inner: side_inner,
            },
            ConditionBody::Exists {
                morphism: int_m,
                inner: int_inner,
            },
        ) => {
            let mut found: Option<HalfAgreement> = None;
            let constraint = compose(root_emb, side_m)?;
            let mut search_error = None;
            restriction_embeddings(&side_inner.root, t, &int_inner.root, |emb| {
                let commutes = match compose(int_m, &emb) {
                    Ok(lhs) => lhs == constraint,
                    Err(e) => {
                        search_error = Some(e);
                        return ControlFlow::Break(());
                    }
                };
                if !commutes {
                    return ControlFlow::Continue(());
                }
                match find_half_agreement(side_inner, int_inner, t, &emb) {
                    Ok(Some(sub)) => {
                        found = Some(sub);
                        ControlFlow::Break(())
                    }
                    Ok(None) => ControlFlow::Continue(()),
                    Err(e) => {
                        search_error = Some(e);
                        ControlFlow::Break(())
                    }
                }
            })?;
            if let Some(e) = search_error {
                return Err(e);
            }
            match found {
                Some(sub) => vec![sub],
                None => return Ok(None),
            }
        }
        (ConditionBody::Not(side_inner), ConditionBody::Not(int_inner)) => {
            match find_half_agreement(side_inner, int_inner, t, root_emb)? {
                Some(sub) => vec![sub],
                None => return Ok(None),
            }
        }
        (ConditionBody::And(side_children), ConditionBody::And(int_children))
        | (ConditionBody::Or(side_children), ConditionBody::Or(int_children)) => {
            if side_children.len() != int_children.len() {
                return Ok(None);
            }
            let mut subs = Vec::with_capacity(side_children.len());
            for (s, i) in side_children.iter().zip(int_children) {
                match find_half_agreement(s, i, t, root_emb)? {
                    Some(sub) => subs.push(sub),
                    None => return Ok(None),
                }
            }
            subs
        }
        _ => return Ok(None),
    };
    Ok(Some(HalfAgreement {
        root: root_emb.clone(),
        children,
    }))
}

fn find_half_at_root(
    side: &NestedCondition,
    interface: &NestedCondition,
    t: &GraphMorphism,
) -> Result<Option<HalfAgreement>> {
    let mut found = None;
    let mut search_error = None;
    restriction_embeddings(&side.root, t, &interface.root, |emb| {
        match find_half_agreement(side, interface, t, &emb) {
            Ok(Some(half)) => {
                found = Some(half);
                ControlFlow::Break(())
            }
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => {
                search_error = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = search_error {
        return Err(e);
    }
    Ok(found)
}

fn zip_halves(left: &HalfAgreement, right: &HalfAgreement) -> ConditionAgreement {
    ConditionAgreement {
        root: AgreementWitness {
            into_left: left.root.clone(),
            into_right: right.root.clone(),
        },
        children: left
            .children
            .iter()
            .zip(&right.children)
            .map(|(l, r)| zip_halves(l, r))
            .collect(),
    }
}

fn check_condition_corners(
    ctx: &AmalgamationContext,
    left: &NestedCondition,
    right: &NestedCondition,
    interface: &NestedCondition,
) -> Result<()> {
    for (cond, corner, name) in [
        (left, ctx.left(), "left"),
        (right, ctx.right(), "right"),
        (interface, ctx.interface(), "interface"),
    ] {
        cond.ensure_valid()?;
        if cond.root.type_graph() != corner {
            return Err(Error::CornerMismatch(format!(
                "condition is not typed over the {name} corner"
            )));
        }
    }
    Ok(())
}

/// Searches for a level-wise agreement witness for the three conditions.
pub fn find_condition_agreement(
    ctx: &AmalgamationContext,
    left: &NestedCondition,
    right: &NestedCondition,
    interface: &NestedCondition,
) -> Result<Option<ConditionAgreement>> {
    check_condition_corners(ctx, left, right, interface)?;
    if !shapes_match(left, interface) || !shapes_match(right, interface) {
        return Ok(None);
    }
    let left_half = match find_half_at_root(left, interface, &ctx.interface_to_left)? {
        Some(h) => h,
        None => return Ok(None),
    };
    let right_half = match find_half_at_root(right, interface, &ctx.interface_to_right)? {
        Some(h) => h,
        None => return Ok(None),
    };
    Ok(Some(zip_halves(&left_half, &right_half)))
}

/// True iff both side conditions restrict to the interface condition.
pub fn conditions_agree(
    ctx: &AmalgamationContext,
    left: &NestedCondition,
    right: &NestedCondition,
    interface: &NestedCondition,
) -> Result<bool> {
    Ok(find_condition_agreement(ctx, left, right, interface)?.is_some())
}

/// An amalgamated condition with the full level-wise gluing data: the three
/// inputs, the result, the object amalgamation of the roots at this level,
/// and one child per body slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionAmalgamation {
    pub left: NestedCondition,
    pub right: NestedCondition,
    pub interface: NestedCondition,
    pub amalgamated: NestedCondition,
    pub root: ObjectAmalgamation,
    pub children: Vec<ConditionAmalgamation>,
}

/// Amalgamates two positive conditions agreeing over an interface,
/// searching for the agreement witness.
pub fn amalgamate_conditions(
    ctx: &AmalgamationContext,
    left: &NestedCondition,
    right: &NestedCondition,
    interface: &NestedCondition,
) -> Result<ConditionAmalgamation> {
    let witness = find_condition_agreement(ctx, left, right, interface)?
        .ok_or(Error::AgreementFailed)?;
    amalgamate_conditions_with(ctx, left, right, interface, &witness)
}

/// Amalgamates along an explicit level-wise witness.
pub fn amalgamate_conditions_with(
    ctx: &AmalgamationContext,
    left: &NestedCondition,
    right: &NestedCondition,
    interface: &NestedCondition,
    witness: &ConditionAgreement,
) -> Result<ConditionAmalgamation> {
    check_condition_corners(ctx, left, right, interface)?;
    for cond in [left, right, interface] {
        cond.ensure_positive()?;
    }
    let root = amalgamate_with_witness(
        ctx,
        &left.root,
        &right.root,
        &interface.root,
        witness.root.clone(),
    )?;
    amalgamate_at(ctx, left, right, interface, witness, root)
}

fn amalgamate_at(
    ctx: &AmalgamationContext,
    left: &NestedCondition,
    right: &NestedCondition,
    interface: &NestedCondition,
    witness: &ConditionAgreement,
    root: ObjectAmalgamation,
) -> Result<ConditionAmalgamation> {
    let (body, children) = match (&left.body, &right.body, &interface.body) {
        (ConditionBody::True, ConditionBody::True, ConditionBody::True) => {
            (ConditionBody::True, Vec::new())
        }
        (
            ConditionBody::Exists {
                morphism: b,
                inner: left_inner,
            },
            ConditionBody::Exists {
                morphism: c,
                inner: right_inner,
            },
            ConditionBody::Exists {
                morphism: _d,
                inner: int_inner,
            },
        ) => {
            let level_witness = witness
                .children
                .first()
                .ok_or(Error::AgreementFailed)?;
            let inner_root = amalgamate_with_witness(
                ctx,
                &left_inner.root,
                &right_inner.root,
                &int_inner.root,
                level_witness.root.clone(),
            )?;
            // the amalgamated existential morphism, induced by the root pushout
            let induced = induced_from_jointly_epic(
                &root.from_left,
                &root.from_right,
                &compose(b, &inner_root.from_left)?,
                &compose(c, &inner_root.from_right)?,
            )?;
            let child = amalgamate_at(
                ctx,
                left_inner,
                right_inner,
                int_inner,
                level_witness,
                inner_root,
            )?;
            (
                ConditionBody::Exists {
                    morphism: induced,
                    inner: Box::new(child.amalgamated.clone()),
                },
                vec![child],
            )
        }
        (ConditionBody::And(ls), ConditionBody::And(rs), ConditionBody::And(is)) => {
            let (bodies, children) = amalgamate_children(ctx, ls, rs, is, witness, &root)?;
            (ConditionBody::And(bodies), children)
        }
        (ConditionBody::Or(ls), ConditionBody::Or(rs), ConditionBody::Or(is)) => {
            let (bodies, children) = amalgamate_children(ctx, ls, rs, is, witness, &root)?;
            (ConditionBody::Or(bodies), children)
        }
        _ => return Err(Error::AgreementFailed),
    };
    Ok(ConditionAmalgamation {
        left: left.clone(),
        right: right.clone(),
        interface: interface.clone(),
        amalgamated: NestedCondition {
            root: root.result.clone(),
            body,
        },
        root,
        children,
    })
}

fn amalgamate_children(
    ctx: &AmalgamationContext,
    ls: &[NestedCondition],
    rs: &[NestedCondition],
    is: &[NestedCondition],
    witness: &ConditionAgreement,
    root: &ObjectAmalgamation,
) -> Result<(Vec<NestedCondition>, Vec<ConditionAmalgamation>)> {
    if ls.len() != rs.len() || ls.len() != is.len() || witness.children.len() != ls.len() {
        return Err(Error::AgreementFailed);
    }
    let mut bodies = Vec::with_capacity(ls.len());
    let mut children = Vec::with_capacity(ls.len());
    for (((l, r), i), w) in ls.iter().zip(rs).zip(is).zip(&witness.children) {
        let child = amalgamate_at(ctx, l, r, i, w, root.clone())?;
        bodies.push(child.amalgamated.clone());
        children.push(child);
    }
    Ok((bodies, children))
}

/// The three canonical restrictions of a condition over the total type
/// graph, with the interface embeddings recovered for recombination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionDecomposition {
    pub left: ConditionRestriction,
    pub right: ConditionRestriction,
    pub interface: ConditionRestriction,
    pub witness: ConditionAgreement,
}

/// Decomposes a condition over the total type graph into its left, right
/// and interface restrictions.
pub fn decompose_condition(
    ctx: &AmalgamationContext,
    total: &NestedCondition,
) -> Result<ConditionDecomposition> {
    total.ensure_valid()?;
    if total.root.type_graph() != ctx.total() {
        return Err(Error::CornerMismatch(
            "condition is not typed over the total corner".into(),
        ));
    }
    let left = restrict_condition(total, &ctx.left_to_total)?;
    let right = restrict_condition(total, &ctx.right_to_total)?;
    let interface = restrict_condition(total, &ctx.interface_to_total()?)?;
    let witness = decomposition_witness(&left, &right, &interface)?;
    Ok(ConditionDecomposition {
        left,
        right,
        interface,
        witness,
    })
}

fn decomposition_witness(
    left: &ConditionRestriction,
    right: &ConditionRestriction,
    interface: &ConditionRestriction,
) -> Result<ConditionAgreement> {
    let root = AgreementWitness {
        into_left: factor_through_injection(&interface.root_embedding, &left.root_embedding)?,
        into_right: factor_through_injection(&interface.root_embedding, &right.root_embedding)?,
    };
    let children = left
        .children
        .iter()
        .zip(&right.children)
        .zip(&interface.children)
        .map(|((l, r), i)| decomposition_witness(l, r, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionAgreement { root, children })
}

/// Views a decomposed condition as the amalgamation of its own
/// restrictions: the original condition is the amalgamated one and the
/// restriction embeddings are the injections.
pub fn condition_amalgamation_from_decomposition(
    total: &NestedCondition,
    decomp: &ConditionDecomposition,
) -> Result<ConditionAmalgamation> {
    view_as_amalgamation(
        total,
        &decomp.left,
        &decomp.right,
        &decomp.interface,
        &decomp.witness,
    )
}

fn view_as_amalgamation(
    total: &NestedCondition,
    left: &ConditionRestriction,
    right: &ConditionRestriction,
    interface: &ConditionRestriction,
    witness: &ConditionAgreement,
) -> Result<ConditionAmalgamation> {
    let root = ObjectAmalgamation {
        left: left.condition.root.clone(),
        right: right.condition.root.clone(),
        interface: interface.condition.root.clone(),
        witness: witness.root.clone(),
        result: total.root.clone(),
        from_left: left.root_embedding.clone(),
        from_right: right.root_embedding.clone(),
        from_interface: interface.root_embedding.clone(),
    };
    let children = left
        .children
        .iter()
        .zip(&right.children)
        .zip(&interface.children)
        .zip(&witness.children)
        .zip(total_children(total))
        .map(|((((l, r), i), w), t)| view_as_amalgamation(t, l, r, i, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionAmalgamation {
        left: left.condition.clone(),
        right: right.condition.clone(),
        interface: interface.condition.clone(),
        amalgamated: total.clone(),
        root,
        children,
    })
}

fn total_children(cond: &NestedCondition) -> Vec<&NestedCondition> {
    match &cond.body {
        ConditionBody::True => Vec::new(),
        ConditionBody::Exists { inner, .. } => vec![inner],
        ConditionBody::Not(inner) => vec![inner],
        ConditionBody::And(children) | ConditionBody::Or(children) => children.iter().collect(),
    }
}

/// Condition isomorphism: same shape, with typing-compatible isomorphisms
/// at every level commuting with the existential morphisms. Junction
/// children are compared positionally.
pub fn conditions_isomorphic(a: &NestedCondition, b: &NestedCondition) -> bool {
    enumerate_typed_isomorphisms(&a.root, &b.root)
        .iter()
        .any(|iso| isomorphic_under(a, b, iso))
}

fn isomorphic_under(a: &NestedCondition, b: &NestedCondition, root_iso: &GraphMorphism) -> bool {
    match (&a.body, &b.body) {
        (ConditionBody::True, ConditionBody::True) => true,
        (
            ConditionBody::Exists {
                morphism: ma,
                inner: ia,
            },
            ConditionBody::Exists {
                morphism: mb,
                inner: ib,
            },
        ) => {
            let Ok(constraint) = compose(root_iso, mb) else {
                return false;
            };
            enumerate_typed_isomorphisms(&ia.root, &ib.root).iter().any(|iso| {
                match compose(ma, iso) {
                    Ok(lhs) => lhs == constraint && isomorphic_under(ia, ib, iso),
                    Err(_) => false,
                }
            })
        }
        (ConditionBody::Not(ia), ConditionBody::Not(ib)) => isomorphic_under(ia, ib, root_iso),
        (ConditionBody::And(ca), ConditionBody::And(cb))
        | (ConditionBody::Or(ca), ConditionBody::Or(cb)) => {
            ca.len() == cb.len()
                && ca
                    .iter()
                    .zip(cb)
                    .all(|(x, y)| isomorphic_under(x, y, root_iso))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::morphism::GraphMorphism;
    use crate::typed::TypedGraph;

    fn graph(nodes: &[&str], edges: &[(&str, &str, &str, &str)]) -> Graph {
        let mut g = Graph::new();
        for n in nodes {
            g.add_node(*n);
        }
        for (id, s, t, l) in edges {
            g.add_edge(*id, *s, *t, *l);
        }
        g
    }

    fn inclusion(sub: &Graph, sup: &Graph) -> GraphMorphism {
        GraphMorphism::new(
            sub.clone(),
            sup.clone(),
            sub.node_ids().map(|n| (n.clone(), n.clone())).collect(),
            sub.edges().map(|(e, _)| (e.clone(), e.clone())).collect(),
        )
        .unwrap()
    }

    fn type_square() -> AmalgamationContext {
        let td = graph(&["v"], &[]);
        let tb = graph(&["v"], &[("b", "v", "v", "b")]);
        let tc = graph(&["v"], &[("c", "v", "v", "c")]);
        let ta = graph(&["v"], &[("b", "v", "v", "b"), ("c", "v", "v", "c")]);
        AmalgamationContext::new(
            inclusion(&td, &tb),
            inclusion(&td, &tc),
            inclusion(&tb, &ta),
            inclusion(&tc, &ta),
        )
        .unwrap()
    }

    fn typed_over(g: Graph, tg: &Graph) -> TypedGraph {
        let nodes = g.node_ids().map(|n| (n.clone(), "v".into())).collect();
        let edges = g
            .edges()
            .map(|(e, d)| (e.clone(), crate::graph::EdgeId(d.label.0.clone())))
            .collect();
        TypedGraph::new(GraphMorphism::new(g, tg.clone(), nodes, edges).unwrap()).unwrap()
    }

    fn truth_over(tg: &Graph) -> NestedCondition {
        NestedCondition::top(typed_over(Graph::new(), tg))
    }

    #[test]
    fn truth_triple_agrees_and_amalgamates_to_truth() {
        let ctx = type_square();
        let left = truth_over(ctx.left());
        let right = truth_over(ctx.right());
        let interface = truth_over(ctx.interface());
        assert!(conditions_agree(&ctx, &left, &right, &interface).unwrap());
        let am = amalgamate_conditions(&ctx, &left, &right, &interface).unwrap();
        assert_eq!(am.amalgamated.body, ConditionBody::True);
        assert!(am.amalgamated.root.graph().is_empty());
    }

    #[test]
    fn decomposing_truth_gives_three_truths() {
        let ctx = type_square();
        let total = truth_over(ctx.total());
        let d = decompose_condition(&ctx, &total).unwrap();
        for side in [&d.left.condition, &d.right.condition, &d.interface.condition] {
            assert_eq!(side.body, ConditionBody::True);
        }
    }

    #[test]
    fn shape_mismatch_means_no_agreement() {
        let ctx = type_square();
        let left = NestedCondition {
            root: typed_over(Graph::new(), ctx.left()),
            body: ConditionBody::Or(vec![truth_over(ctx.left()), truth_over(ctx.left())]),
        };
        let right = NestedCondition {
            root: typed_over(Graph::new(), ctx.right()),
            body: ConditionBody::Or(vec![truth_over(ctx.right()), truth_over(ctx.right())]),
        };
        // one disjunct fewer on the interface side
        let interface = NestedCondition {
            root: typed_over(Graph::new(), ctx.interface()),
            body: ConditionBody::Or(vec![truth_over(ctx.interface())]),
        };
        assert!(!conditions_agree(&ctx, &left, &right, &interface).unwrap());
    }

    #[test]
    fn round_trip_through_decomposition() {
        let ctx = type_square();
        // exists: extend one node to a node with a b-edge and a c-edge back
        let p = typed_over(graph(&["1"], &[]), ctx.total());
        let c = typed_over(
            graph(&["1", "2"], &[("e1", "1", "2", "b"), ("e2", "2", "1", "c")]),
            ctx.total(),
        );
        let a = GraphMorphism::new(
            p.graph().clone(),
            c.graph().clone(),
            [("1".into(), "1".into())].into(),
            Default::default(),
        )
        .unwrap();
        let total = NestedCondition::exists(p, a, NestedCondition::top(c));
        assert!(total.is_valid() && total.is_positive());

        let decomp = decompose_condition(&ctx, &total).unwrap();
        assert!(decomp.left.condition.is_positive());
        let rebuilt = amalgamate_conditions_with(
            &ctx,
            &decomp.left.condition,
            &decomp.right.condition,
            &decomp.interface.condition,
            &decomp.witness,
        )
        .unwrap();
        assert!(conditions_isomorphic(&rebuilt.amalgamated, &total));

        // the plain search finds a witness for the same triple
        let am2 = amalgamate_conditions(
            &ctx,
            &decomp.left.condition,
            &decomp.right.condition,
            &decomp.interface.condition,
        )
        .unwrap();
        let d2 = decompose_condition(&ctx, &am2.amalgamated).unwrap();
        assert!(conditions_isomorphic(&d2.left.condition, &decomp.left.condition));
        assert!(conditions_isomorphic(&d2.right.condition, &decomp.right.condition));
        assert!(conditions_isomorphic(
            &d2.interface.condition,
            &decomp.interface.condition
        ));
    }

    #[test]
    fn negation_is_rejected_by_amalgamation() {
        let ctx = type_square();
        let mk = |tg: &Graph| NestedCondition {
            root: typed_over(Graph::new(), tg),
            body: ConditionBody::Not(Box::new(truth_over(tg))),
        };
        let err = amalgamate_conditions(&ctx, &mk(ctx.left()), &mk(ctx.right()), &mk(ctx.interface()));
        assert!(matches!(err, Err(Error::NotPositive(_))));
    }
}
