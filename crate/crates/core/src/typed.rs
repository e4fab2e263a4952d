//! Typed graphs, restriction along type morphisms, and agreement /
//! amalgamation / decomposition of typed graphs over a pushout square of
//! type graphs.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{
    induced_from_jointly_epic, is_square, pullback, pushout, CommutativeSquare, SquareKind,
};
use crate::matcher::{Search, SearchKind};
use crate::morphism::{compose, factor_through_injection, GraphMorphism};

/// A graph together with its typing morphism into a type graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypedGraph {
    typing: GraphMorphism,
}

impl TypedGraph {
    pub fn new(typing: GraphMorphism) -> Result<Self> {
        if !typing.is_valid() {
            return Err(Error::InvalidMorphism("typing morphism is invalid".into()));
        }
        Ok(TypedGraph { typing })
    }

    pub fn graph(&self) -> &Graph {
        self.typing.dom()
    }

    pub fn type_graph(&self) -> &Graph {
        self.typing.cod()
    }

    pub fn typing(&self) -> &GraphMorphism {
        &self.typing
    }
}

/// All isomorphisms between the carriers that commute with the typings,
/// in deterministic order.
pub fn enumerate_typed_isomorphisms(a: &TypedGraph, b: &TypedGraph) -> Vec<GraphMorphism> {
    if a.type_graph() != b.type_graph() {
        return Vec::new();
    }
    Search::new(a.graph(), b.graph(), SearchKind::Isomorphism)
        .with_typing(a.typing(), b.typing())
        .collect()
}

/// The first typing-compatible isomorphism, if any.
pub fn find_typed_isomorphism(a: &TypedGraph, b: &TypedGraph) -> Option<GraphMorphism> {
    if a.type_graph() != b.type_graph() {
        return None;
    }
    Search::new(a.graph(), b.graph(), SearchKind::Isomorphism)
        .with_typing(a.typing(), b.typing())
        .first()
}

/// True iff the two typed graphs are isomorphic over their shared type
/// graph.
pub fn typed_isomorphic(a: &TypedGraph, b: &TypedGraph) -> bool {
    find_typed_isomorphism(a, b).is_some()
}

/// A typed graph restricted along a type morphism, with the embedding of
/// the restricted carrier back into the original one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Restriction {
    pub restricted: TypedGraph,
    /// restricted.graph() -> original graph
    pub embedding: GraphMorphism,
}

/// Restricts `g` along an injective type morphism `t` into its type graph:
/// the pullback of `t` and the typing.
pub fn restrict_typed_graph(g: &TypedGraph, t: &GraphMorphism) -> Result<Restriction> {
    if !t.is_injective() {
        return Err(Error::NotInjective("type morphism must be injective".into()));
    }
    if t.cod() != g.type_graph() {
        return Err(Error::CornerMismatch(
            "type morphism does not target the type graph".into(),
        ));
    }
    let pb = pullback(t, g.typing())?;
    debug_assert!(pb.right.is_injective());
    Ok(Restriction {
        restricted: TypedGraph::new(pb.left)?,
        embedding: pb.right,
    })
}

/// Restricts a type-compatible morphism `a: source -> target` to the given
/// restrictions of its endpoints: the unique `b` with
/// `target.embedding ∘ b = a ∘ source.embedding`.
pub fn restrict_morphism(
    a: &GraphMorphism,
    source: &Restriction,
    target: &Restriction,
) -> Result<GraphMorphism> {
    if a.dom() != source.embedding.cod() || a.cod() != target.embedding.cod() {
        return Err(Error::DomainMismatch(
            "restriction data does not match the morphism endpoints".into(),
        ));
    }
    let through = compose(&source.embedding, a)?;
    let b = factor_through_injection(&through, &target.embedding)?;
    // the restricted morphism must also commute with the restricted typings
    let lhs = compose(&b, target.restricted.typing())?;
    if lhs != *source.restricted.typing() {
        return Err(Error::TypeMismatch(
            "morphism is not compatible with the typings".into(),
        ));
    }
    Ok(b)
}

/// A commuting pushout square of type graphs with all four morphisms
/// injective: the interface type embeds into the left and right view types,
/// which compose to the total type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmalgamationContext {
    pub interface_to_left: GraphMorphism,
    pub interface_to_right: GraphMorphism,
    pub left_to_total: GraphMorphism,
    pub right_to_total: GraphMorphism,
}

impl AmalgamationContext {
    pub fn new(
        interface_to_left: GraphMorphism,
        interface_to_right: GraphMorphism,
        left_to_total: GraphMorphism,
        right_to_total: GraphMorphism,
    ) -> Result<Self> {
        let ctx = AmalgamationContext {
            interface_to_left,
            interface_to_right,
            left_to_total,
            right_to_total,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn interface(&self) -> &Graph {
        self.interface_to_left.dom()
    }

    pub fn left(&self) -> &Graph {
        self.interface_to_left.cod()
    }

    pub fn right(&self) -> &Graph {
        self.interface_to_right.cod()
    }

    pub fn total(&self) -> &Graph {
        self.left_to_total.cod()
    }

    /// The composite interface type morphism into the total type graph.
    pub fn interface_to_total(&self) -> Result<GraphMorphism> {
        compose(&self.interface_to_left, &self.left_to_total)
    }

    pub fn square(&self) -> Result<CommutativeSquare> {
        CommutativeSquare::new(
            self.interface_to_left.clone(),
            self.interface_to_right.clone(),
            self.left_to_total.clone(),
            self.right_to_total.clone(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, m) in [
            ("interface_to_left", &self.interface_to_left),
            ("interface_to_right", &self.interface_to_right),
            ("left_to_total", &self.left_to_total),
            ("right_to_total", &self.right_to_total),
        ] {
            if !m.is_valid() {
                return Err(Error::InvalidMorphism(format!("{name} is invalid")));
            }
            if !m.is_injective() {
                return Err(Error::NotInjective(format!("{name} must be injective")));
            }
        }
        let sq = self.square()?;
        if !is_square(&sq, SquareKind::Pushout)? {
            return Err(Error::CornerMismatch(
                "type square is not a pushout".into(),
            ));
        }
        Ok(())
    }
}

/// Witness that two typed graphs share an interface restriction: the two
/// embeddings of the interface carrier, each forming a pullback square with
/// the typings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AgreementWitness {
    /// interface graph -> left graph
    pub into_left: GraphMorphism,
    /// interface graph -> right graph
    pub into_right: GraphMorphism,
}

fn check_corner(g: &TypedGraph, corner: &Graph, name: &str) -> Result<()> {
    if g.type_graph() != corner {
        return Err(Error::CornerMismatch(format!(
            "typed graph is not typed over the {name} corner"
        )));
    }
    Ok(())
}

/// Checks that `emb` exhibits `sub` as the restriction of `whole` along `t`:
/// the square of `emb`, the typings and `t` must be a pullback.
pub fn is_restriction(
    sub: &TypedGraph,
    emb: &GraphMorphism,
    whole: &TypedGraph,
    t: &GraphMorphism,
) -> Result<bool> {
    let sq = CommutativeSquare::new(
        sub.typing().clone(),
        emb.clone(),
        t.clone(),
        whole.typing().clone(),
    )?;
    is_square(&sq, SquareKind::Pullback)
}

/// Searches for an agreement witness, trying typing-compatible isomorphisms
/// onto the canonical restrictions in deterministic order.
pub fn find_agreement(
    ctx: &AmalgamationContext,
    left: &TypedGraph,
    right: &TypedGraph,
    interface: &TypedGraph,
) -> Result<Option<AgreementWitness>> {
    check_corner(left, ctx.left(), "left")?;
    check_corner(right, ctx.right(), "right")?;
    check_corner(interface, ctx.interface(), "interface")?;
    let left_restr = restrict_typed_graph(left, &ctx.interface_to_left)?;
    let right_restr = restrict_typed_graph(right, &ctx.interface_to_right)?;
    let into_left = match find_typed_isomorphism(interface, &left_restr.restricted) {
        Some(iso) => compose(&iso, &left_restr.embedding)?,
        None => return Ok(None),
    };
    let into_right = match find_typed_isomorphism(interface, &right_restr.restricted) {
        Some(iso) => compose(&iso, &right_restr.embedding)?,
        None => return Ok(None),
    };
    let witness = AgreementWitness {
        into_left,
        into_right,
    };
    debug_assert!(verify_witness(ctx, left, right, interface, &witness).is_ok());
    Ok(Some(witness))
}

/// Two typed graphs agree over an interface iff both restrict to it.
pub fn typed_graphs_agree(
    ctx: &AmalgamationContext,
    left: &TypedGraph,
    right: &TypedGraph,
    interface: &TypedGraph,
) -> Result<bool> {
    Ok(find_agreement(ctx, left, right, interface)?.is_some())
}

fn verify_witness(
    ctx: &AmalgamationContext,
    left: &TypedGraph,
    right: &TypedGraph,
    interface: &TypedGraph,
    witness: &AgreementWitness,
) -> Result<()> {
    for (emb, whole, t) in [
        (&witness.into_left, left, &ctx.interface_to_left),
        (&witness.into_right, right, &ctx.interface_to_right),
    ] {
        if !emb.is_injective() {
            return Err(Error::NotInjective("witness embedding".into()));
        }
        if !is_restriction(interface, emb, whole, t)? {
            return Err(Error::AgreementFailed);
        }
    }
    Ok(())
}

/// A computed amalgamation: the result typed over the total type graph,
/// the inputs, and the injections of the inputs into the result.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObjectAmalgamation {
    pub left: TypedGraph,
    pub right: TypedGraph,
    pub interface: TypedGraph,
    pub witness: AgreementWitness,
    pub result: TypedGraph,
    pub from_left: GraphMorphism,
    pub from_right: GraphMorphism,
    pub from_interface: GraphMorphism,
}

/// Amalgamates two agreeing typed graphs over their interface, finding the
/// agreement witness by search.
pub fn amalgamate_typed_graphs(
    ctx: &AmalgamationContext,
    left: &TypedGraph,
    right: &TypedGraph,
    interface: &TypedGraph,
) -> Result<ObjectAmalgamation> {
    let witness =
        find_agreement(ctx, left, right, interface)?.ok_or(Error::AgreementFailed)?;
    amalgamate_with_witness(ctx, left, right, interface, witness)
}

/// Amalgamates along an explicit agreement witness: pushout of the carriers
/// over the interface, with the typing induced by the universal property.
pub fn amalgamate_with_witness(
    ctx: &AmalgamationContext,
    left: &TypedGraph,
    right: &TypedGraph,
    interface: &TypedGraph,
    witness: AgreementWitness,
) -> Result<ObjectAmalgamation> {
    check_corner(left, ctx.left(), "left")?;
    check_corner(right, ctx.right(), "right")?;
    check_corner(interface, ctx.interface(), "interface")?;
    verify_witness(ctx, left, right, interface, &witness)?;

    let po = pushout(&witness.into_left, &witness.into_right)?;
    let typing = induced_from_jointly_epic(
        &po.left,
        &po.right,
        &compose(left.typing(), &ctx.left_to_total)?,
        &compose(right.typing(), &ctx.right_to_total)?,
    )?;
    let result = TypedGraph::new(typing)?;
    let from_interface = compose(&witness.into_left, &po.left)?;
    Ok(ObjectAmalgamation {
        left: left.clone(),
        right: right.clone(),
        interface: interface.clone(),
        witness,
        result,
        from_left: po.left,
        from_right: po.right,
        from_interface,
    })
}

/// The three canonical restrictions of a typed graph over the total type
/// graph, together with the interface embeddings into the two views.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObjectDecomposition {
    pub left: Restriction,
    pub right: Restriction,
    pub interface: Restriction,
    pub witness: AgreementWitness,
}

/// Decomposes a typed graph over the total type graph into its left, right
/// and interface restrictions.
pub fn decompose_typed_graph(
    ctx: &AmalgamationContext,
    total: &TypedGraph,
) -> Result<ObjectDecomposition> {
    check_corner(total, ctx.total(), "total")?;
    let left = restrict_typed_graph(total, &ctx.left_to_total)?;
    let right = restrict_typed_graph(total, &ctx.right_to_total)?;
    let interface = restrict_typed_graph(total, &ctx.interface_to_total()?)?;
    let into_left = factor_through_injection(&interface.embedding, &left.embedding)?;
    let into_right = factor_through_injection(&interface.embedding, &right.embedding)?;
    Ok(ObjectDecomposition {
        left,
        right,
        interface,
        witness: AgreementWitness {
            into_left,
            into_right,
        },
    })
}

/// Views an already-decomposed typed graph as the amalgamation of its own
/// restrictions: the original is the result, the restriction embeddings are
/// the injections.
pub fn amalgamation_from_decomposition(
    total: &TypedGraph,
    decomp: &ObjectDecomposition,
) -> ObjectAmalgamation {
    ObjectAmalgamation {
        left: decomp.left.restricted.clone(),
        right: decomp.right.restricted.clone(),
        interface: decomp.interface.restricted.clone(),
        witness: decomp.witness.clone(),
        result: total.clone(),
        from_left: decomp.left.embedding.clone(),
        from_right: decomp.right.embedding.clone(),
        from_interface: decomp.interface.embedding.clone(),
    }
}

impl ObjectAmalgamation {
    /// The defining squares of the amalgamation, for verification: the outer
    /// carrier square must be a pushout and the two typing trapezoids must
    /// be pullbacks.
    pub fn verify(&self, ctx: &AmalgamationContext) -> Result<()> {
        let outer = CommutativeSquare::new(
            self.witness.into_left.clone(),
            self.witness.into_right.clone(),
            self.from_left.clone(),
            self.from_right.clone(),
        )?;
        if !is_square(&outer, SquareKind::Pushout)? {
            return Err(Error::AgreementFailed);
        }
        for (side, t, emb) in [
            (&self.left, &ctx.left_to_total, &self.from_left),
            (&self.right, &ctx.right_to_total, &self.from_right),
        ] {
            if !is_restriction(side, emb, &self.result, t)? {
                return Err(Error::AgreementFailed);
            }
        }
        Ok(())
    }
}

/// Enumeration hook used by the condition-level agreement search: all
/// candidate embeddings of `interface` as a restriction of `whole` along
/// `t`, in deterministic order.
pub(crate) fn restriction_embeddings(
    whole: &TypedGraph,
    t: &GraphMorphism,
    interface: &TypedGraph,
    mut visit: impl FnMut(GraphMorphism) -> ControlFlow<()>,
) -> Result<()> {
    let restr = restrict_typed_graph(whole, t)?;
    for iso in enumerate_typed_isomorphisms(interface, &restr.restricted) {
        let emb = compose(&iso, &restr.embedding)?;
        if let ControlFlow::Break(()) = visit(emb) {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

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

    #[test]
    fn restrict_along_identity_is_isomorphic() {
        let ctx = type_square();
        let g = typed_over(
            graph(&["1", "2"], &[("e1", "1", "2", "b"), ("e2", "2", "1", "c")]),
            ctx.total(),
        );
        let id = GraphMorphism::identity(ctx.total());
        let r = restrict_typed_graph(&g, &id).unwrap();
        assert!(typed_isomorphic(&r.restricted, &g));
    }

    #[test]
    fn restrict_along_initial_type_is_empty() {
        let ctx = type_square();
        let g = typed_over(graph(&["1"], &[]), ctx.total());
        let t = crate::limits::initial_morphism(ctx.total());
        let r = restrict_typed_graph(&g, &t).unwrap();
        assert!(r.restricted.graph().is_empty());
    }

    #[test]
    fn restriction_keeps_only_matching_edges() {
        let ctx = type_square();
        let g = typed_over(
            graph(&["1", "2"], &[("e1", "1", "2", "b"), ("e2", "2", "1", "c")]),
            ctx.total(),
        );
        let r = restrict_typed_graph(&g, &ctx.left_to_total).unwrap();
        assert_eq!(r.restricted.graph().node_count(), 2);
        assert_eq!(r.restricted.graph().edge_count(), 1);
        let (_, only_edge) = r.restricted.graph().edges().next().unwrap();
        assert_eq!(only_edge.label, "b".into());
    }

    #[test]
    fn agreement_and_round_trip_on_the_edge_union() {
        let ctx = type_square();
        let left = typed_over(graph(&["1", "2"], &[("eb", "1", "2", "b")]), ctx.left());
        let right = typed_over(graph(&["1", "2"], &[("ec", "1", "2", "c")]), ctx.right());
        let interface = typed_over(graph(&["1", "2"], &[]), ctx.interface());
        assert!(typed_graphs_agree(&ctx, &left, &right, &interface).unwrap());

        let am = amalgamate_typed_graphs(&ctx, &left, &right, &interface).unwrap();
        am.verify(&ctx).unwrap();
        assert_eq!(am.result.graph().node_count(), 2);
        assert_eq!(am.result.graph().edge_count(), 2);

        let decomp = decompose_typed_graph(&ctx, &am.result).unwrap();
        assert!(typed_isomorphic(&decomp.left.restricted, &left));
        assert!(typed_isomorphic(&decomp.right.restricted, &right));
        assert!(typed_isomorphic(&decomp.interface.restricted, &interface));
    }

    #[test]
    fn disagreement_on_extra_interface_node() {
        let ctx = type_square();
        let left = typed_over(graph(&["1"], &[]), ctx.left());
        let right = typed_over(graph(&["1"], &[]), ctx.right());
        let interface = typed_over(graph(&["1", "2"], &[]), ctx.interface());
        assert!(!typed_graphs_agree(&ctx, &left, &right, &interface).unwrap());
        assert!(matches!(
            amalgamate_typed_graphs(&ctx, &left, &right, &interface),
            Err(Error::AgreementFailed)
        ));
    }

    #[test]
    fn empty_triple_amalgamates_to_empty() {
        let ctx = type_square();
        let left = typed_over(Graph::new(), ctx.left());
        let right = typed_over(Graph::new(), ctx.right());
        let interface = typed_over(Graph::new(), ctx.interface());
        let am = amalgamate_typed_graphs(&ctx, &left, &right, &interface).unwrap();
        assert!(am.result.graph().is_empty());
    }

    #[test]
    fn decompose_empty_gives_empties() {
        let ctx = type_square();
        let total = typed_over(Graph::new(), ctx.total());
        let d = decompose_typed_graph(&ctx, &total).unwrap();
        assert!(d.left.restricted.graph().is_empty());
        assert!(d.right.restricted.graph().is_empty());
        assert!(d.interface.restricted.graph().is_empty());
    }

    #[test]
    fn restrict_morphism_of_identity_is_identity() {
        let ctx = type_square();
        let g = typed_over(
            graph(&["1", "2"], &[("e1", "1", "2", "b"), ("e2", "2", "1", "c")]),
            ctx.total(),
        );
        let r = restrict_typed_graph(&g, &ctx.left_to_total).unwrap();
        let id = GraphMorphism::identity(g.graph());
        let b = restrict_morphism(&id, &r, &r).unwrap();
        assert_eq!(b, GraphMorphism::identity(r.restricted.graph()));
    }

    #[test]
    fn restrict_morphism_along_identity_recovers_the_morphism() {
        let ctx = type_square();
        let sub = typed_over(graph(&["1"], &[]), ctx.total());
        let sup = typed_over(
            graph(&["1", "2"], &[("e1", "1", "2", "b")]),
            ctx.total(),
        );
        let a = inclusion(sub.graph(), sup.graph());
        let id = GraphMorphism::identity(ctx.total());
        let r_sub = restrict_typed_graph(&sub, &id).unwrap();
        let r_sup = restrict_typed_graph(&sup, &id).unwrap();
        let b = restrict_morphism(&a, &r_sub, &r_sup).unwrap();
        // conjugating by the embeddings recovers the original morphism
        assert_eq!(
            compose(&b, &r_sup.embedding).unwrap(),
            compose(&r_sub.embedding, &a).unwrap()
        );
        assert!(b.is_injective());
        // and the embeddings are bijections here, t being an identity
        assert!(r_sub.embedding.is_bijective() && r_sup.embedding.is_bijective());
    }

    #[test]
    fn restricted_morphism_square_is_a_pullback() {
        let ctx = type_square();
        let sub = typed_over(graph(&["1", "2"], &[("e1", "1", "2", "b")]), ctx.total());
        let sup = typed_over(
            graph(
                &["1", "2", "3"],
                &[("e1", "1", "2", "b"), ("e2", "2", "3", "c"), ("e3", "3", "1", "b")],
            ),
            ctx.total(),
        );
        let a = inclusion(sub.graph(), sup.graph());
        let t = &ctx.left_to_total;
        let r_sub = restrict_typed_graph(&sub, t).unwrap();
        let r_sup = restrict_typed_graph(&sup, t).unwrap();
        let b = restrict_morphism(&a, &r_sub, &r_sup).unwrap();
        let sq = crate::limits::CommutativeSquare::new(
            b,
            r_sub.embedding.clone(),
            r_sup.embedding.clone(),
            a,
        )
        .unwrap();
        assert!(is_square(&sq, SquareKind::Pullback).unwrap());
    }
}
