//! Pullbacks, pushouts along injective legs, universal-property checks and
//! the effective-pushout test.
//!
//! Apex ids are canonical: pullback items are pair strings `(x|y)`, pushout
//! items are the lexicographically least member of their gluing class
//! (side-tagged only when plain ids would collide).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Graph, NodeId};
use crate::morphism::{compose, GraphMorphism};

/// Result of a pullback: the apex with its two projections.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PullbackSpan {
    pub apex: Graph,
    /// apex -> dom(f)
    pub left: GraphMorphism,
    /// apex -> dom(g)
    pub right: GraphMorphism,
}

/// Result of a pushout: the apex with its two injections.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PushoutCospan {
    pub apex: Graph,
    /// cod(f) -> apex
    pub left: GraphMorphism,
    /// cod(g) -> apex
    pub right: GraphMorphism,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '\\' | '|' | '(' | ')') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

fn pair_id(a: &str, b: &str) -> String {
    format!("({}|{})", escape(a), escape(b))
}

pub(crate) struct PullbackTables {
    pub span: PullbackSpan,
    pub node_of_pair: BTreeMap<(NodeId, NodeId), NodeId>,
    pub edge_of_pair: BTreeMap<(EdgeId, EdgeId), EdgeId>,
}

pub(crate) fn pullback_tables(f: &GraphMorphism, g: &GraphMorphism) -> Result<PullbackTables> {
    if f.cod() != g.cod() {
        return Err(Error::CodomainMismatch(
            "pullback needs a common codomain".into(),
        ));
    }
    let mut apex = Graph::new();
    let mut node_of_pair = BTreeMap::new();
    let mut left_nodes = BTreeMap::new();
    let mut right_nodes = BTreeMap::new();
    for b in f.dom().node_ids() {
        for c in g.dom().node_ids() {
            if f.node_image(b) != g.node_image(c) {
                continue;
            }
            debug_assert_eq!(f.dom().node_label(b), g.dom().node_label(c));
            let id = NodeId(pair_id(&b.0, &c.0));
            match f.dom().node_label(b) {
                Some(l) => apex.add_labeled_node(id.clone(), l.clone()),
                None => apex.add_node(id.clone()),
            };
            left_nodes.insert(id.clone(), b.clone());
            right_nodes.insert(id.clone(), c.clone());
            node_of_pair.insert((b.clone(), c.clone()), id);
        }
    }
    let mut edge_of_pair = BTreeMap::new();
    let mut left_edges = BTreeMap::new();
    let mut right_edges = BTreeMap::new();
    for (eb, edge_b) in f.dom().edges() {
        for (ec, edge_c) in g.dom().edges() {
            if f.edge_image(eb) != g.edge_image(ec) {
                continue;
            }
            debug_assert_eq!(edge_b.label, edge_c.label);
            let src = node_of_pair
                .get(&(edge_b.src.clone(), edge_c.src.clone()))
                .expect("edge pair sources form a node pair")
                .clone();
            let tgt = node_of_pair
                .get(&(edge_b.tgt.clone(), edge_c.tgt.clone()))
                .expect("edge pair targets form a node pair")
                .clone();
            let id = EdgeId(pair_id(&eb.0, &ec.0));
            apex.add_edge(id.clone(), src, tgt, edge_b.label.clone());
            left_edges.insert(id.clone(), eb.clone());
            right_edges.insert(id.clone(), ec.clone());
            edge_of_pair.insert((eb.clone(), ec.clone()), id);
        }
    }
    let left = GraphMorphism::from_parts(apex.clone(), f.dom().clone(), left_nodes, left_edges);
    let right = GraphMorphism::from_parts(apex.clone(), g.dom().clone(), right_nodes, right_edges);
    debug_assert!(left.is_valid() && right.is_valid());
    Ok(PullbackTables {
        span: PullbackSpan { apex, left, right },
        node_of_pair,
        edge_of_pair,
    })
}

/// Computes the pullback of a cospan `f: B -> A <- C :g`.
///
/// At least one leg must be injective; this keeps the construction inside
/// the fragment where injectivity of the opposite projection is guaranteed.
pub fn pullback(f: &GraphMorphism, g: &GraphMorphism) -> Result<PullbackSpan> {
    if !f.is_injective() && !g.is_injective() {
        return Err(Error::NoInjectiveLeg);
    }
    Ok(pullback_tables(f, g)?.span)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Side {
    Left,
    Right,
}

/// Deterministic union-find keyed by (side, id) pairs.
struct Classes<K: Ord + Clone> {
    parent: BTreeMap<(Side, K), (Side, K)>,
}

impl<K: Ord + Clone> Classes<K> {
    fn new() -> Self {
        Classes {
            parent: BTreeMap::new(),
        }
    }

    fn add(&mut self, item: (Side, K)) {
        self.parent.entry(item.clone()).or_insert(item);
    }

    fn find(&mut self, item: &(Side, K)) -> (Side, K) {
        let p = self.parent[item].clone();
        if &p == item {
            return p;
        }
        let root = self.find(&p);
        self.parent.insert(item.clone(), root.clone());
        root
    }

    fn union(&mut self, a: &(Side, K), b: &(Side, K)) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // smaller key becomes the root, for determinism
            let (lo, hi) = if ra <= rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }

    /// Class members grouped by root, in deterministic order.
    fn groups(&mut self) -> Vec<Vec<(Side, K)>> {
        let keys: Vec<_> = self.parent.keys().cloned().collect();
        let mut by_root: BTreeMap<(Side, K), Vec<(Side, K)>> = BTreeMap::new();
        for k in keys {
            let r = self.find(&k);
            by_root.entry(r).or_default().push(k);
        }
        by_root.into_values().collect()
    }
}

/// Picks one id per class: the least plain member id when that is globally
/// unambiguous, otherwise the least side-tagged member id for every class.
fn class_ids<K: Ord + Clone>(
    groups: &[Vec<(Side, K)>],
    plain: impl Fn(&K) -> String,
) -> Vec<String> {
    let candidates: Vec<String> = groups
        .iter()
        .map(|g| g.iter().map(|(_, k)| plain(k)).min().expect("nonempty class"))
        .collect();
    let mut seen = BTreeMap::new();
    let mut collision = false;
    for c in &candidates {
        if seen.insert(c.clone(), ()).is_some() {
            collision = true;
            break;
        }
    }
    if !collision {
        return candidates;
    }
    groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|(side, k)| match side {
                    Side::Left => format!("l:{}", plain(k)),
                    Side::Right => format!("r:{}", plain(k)),
                })
                .min()
                .expect("nonempty class")
        })
        .collect()
}

/// Pushout of a span `f: D -> B`, `g: D -> C` by gluing the disjoint union.
/// No injectivity requirement; used internally by the universal-property
/// checks which must evaluate arbitrary squares.
pub(crate) fn pushout_unchecked(f: &GraphMorphism, g: &GraphMorphism) -> Result<PushoutCospan> {
    if f.dom() != g.dom() {
        return Err(Error::DomainMismatch("pushout needs a shared domain".into()));
    }
    let b = f.cod();
    let c = g.cod();

    let mut node_classes: Classes<NodeId> = Classes::new();
    for n in b.node_ids() {
        node_classes.add((Side::Left, n.clone()));
    }
    for n in c.node_ids() {
        node_classes.add((Side::Right, n.clone()));
    }
    for d in f.dom().node_ids() {
        let via_f = (Side::Left, f.node_image(d).expect("total map").clone());
        let via_g = (Side::Right, g.node_image(d).expect("total map").clone());
        node_classes.union(&via_f, &via_g);
    }
    let node_groups = node_classes.groups();
    let node_ids = class_ids(&node_groups, |n| n.0.clone());
    let mut node_rep: BTreeMap<(Side, NodeId), NodeId> = BTreeMap::new();
    for (group, id) in node_groups.iter().zip(&node_ids) {
        for member in group {
            node_rep.insert(member.clone(), NodeId(id.clone()));
        }
    }

    let mut edge_classes: Classes<EdgeId> = Classes::new();
    for (e, _) in b.edges() {
        edge_classes.add((Side::Left, e.clone()));
    }
    for (e, _) in c.edges() {
        edge_classes.add((Side::Right, e.clone()));
    }
    for (d, _) in f.dom().edges() {
        let via_f = (Side::Left, f.edge_image(d).expect("total map").clone());
        let via_g = (Side::Right, g.edge_image(d).expect("total map").clone());
        edge_classes.union(&via_f, &via_g);
    }
    let edge_groups = edge_classes.groups();
    let edge_ids = class_ids(&edge_groups, |e| e.0.clone());
    let mut edge_rep: BTreeMap<(Side, EdgeId), EdgeId> = BTreeMap::new();
    for (group, id) in edge_groups.iter().zip(&edge_ids) {
        for member in group {
            edge_rep.insert(member.clone(), EdgeId(id.clone()));
        }
    }

    let mut apex = Graph::new();
    for (group, id) in node_groups.iter().zip(&node_ids) {
        let (side, k) = &group[0];
        let label = match side {
            Side::Left => b.node_label(k),
            Side::Right => c.node_label(k),
        };
        match label {
            Some(l) => apex.add_labeled_node(NodeId(id.clone()), l.clone()),
            None => apex.add_node(NodeId(id.clone())),
        };
    }
    for (group, id) in edge_groups.iter().zip(&edge_ids) {
        let (side, k) = &group[0];
        let data: &Edge = match side {
            Side::Left => b.edge(k).expect("edge exists"),
            Side::Right => c.edge(k).expect("edge exists"),
        };
        let src = node_rep[&(*side, data.src.clone())].clone();
        let tgt = node_rep[&(*side, data.tgt.clone())].clone();
        apex.add_edge(EdgeId(id.clone()), src, tgt, data.label.clone());
    }

    let left = GraphMorphism::from_parts(
        b.clone(),
        apex.clone(),
        b.node_ids()
            .map(|n| (n.clone(), node_rep[&(Side::Left, n.clone())].clone()))
            .collect(),
        b.edges()
            .map(|(e, _)| (e.clone(), edge_rep[&(Side::Left, e.clone())].clone()))
            .collect(),
    );
    let right = GraphMorphism::from_parts(
        c.clone(),
        apex.clone(),
        c.node_ids()
            .map(|n| (n.clone(), node_rep[&(Side::Right, n.clone())].clone()))
            .collect(),
        c.edges()
            .map(|(e, _)| (e.clone(), edge_rep[&(Side::Right, e.clone())].clone()))
            .collect(),
    );
    debug_assert!(left.is_valid() && right.is_valid());
    Ok(PushoutCospan { apex, left, right })
}

/// Computes the pushout of a span `f: D -> B`, `g: D -> C`.
///
/// At least one leg must be injective; pushouts are only used along
/// injective morphisms here, which keeps the closure postconditions
/// checkable.
pub fn pushout(f: &GraphMorphism, g: &GraphMorphism) -> Result<PushoutCospan> {
    if !f.is_injective() && !g.is_injective() {
        return Err(Error::NoInjectiveLeg);
    }
    pushout_unchecked(f, g)
}

/// The mediating morphism out of a jointly-epic cospan: the unique
/// `u: Q -> X` with `u ∘ i1 = u1` and `u ∘ i2 = u2`, if it exists.
pub fn induced_from_jointly_epic(
    i1: &GraphMorphism,
    i2: &GraphMorphism,
    u1: &GraphMorphism,
    u2: &GraphMorphism,
) -> Result<GraphMorphism> {
    if i1.cod() != i2.cod() {
        return Err(Error::CodomainMismatch(
            "cospan legs need a common codomain".into(),
        ));
    }
    if u1.cod() != u2.cod() {
        return Err(Error::CodomainMismatch(
            "cocone legs need a common codomain".into(),
        ));
    }
    if i1.dom() != u1.dom() || i2.dom() != u2.dom() {
        return Err(Error::DomainMismatch(
            "cocone legs must share domains with the cospan".into(),
        ));
    }
    let apex = i1.cod();
    let mut node_map: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for (through, cocone) in [(i1, u1), (i2, u2)] {
        for (x, q) in through.node_map() {
            let img = cocone.node_image(x).expect("total map").clone();
            if let Some(existing) = node_map.get(q) {
                if existing != &img {
                    return Err(Error::CoconeDoesNotCommute);
                }
            }
            node_map.insert(q.clone(), img);
        }
    }
    let mut edge_map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for (through, cocone) in [(i1, u1), (i2, u2)] {
        for (x, q) in through.edge_map() {
            let img = cocone.edge_image(x).expect("total map").clone();
            if let Some(existing) = edge_map.get(q) {
                if existing != &img {
                    return Err(Error::CoconeDoesNotCommute);
                }
            }
            edge_map.insert(q.clone(), img);
        }
    }
    if node_map.len() != apex.node_count() || edge_map.len() != apex.edge_count() {
        return Err(Error::CoconeDoesNotCommute);
    }
    let u = GraphMorphism::from_parts(apex.clone(), u1.cod().clone(), node_map, edge_map);
    debug_assert!(u.is_valid());
    Ok(u)
}

/// The unique morphism out of a computed pushout induced by a commuting
/// cocone `(u1, u2)`.
pub fn induced_pushout_morphism(
    po: &PushoutCospan,
    u1: &GraphMorphism,
    u2: &GraphMorphism,
) -> Result<GraphMorphism> {
    induced_from_jointly_epic(&po.left, &po.right, u1, u2)
}

/// A commuting square `h ∘ f = k ∘ g` with `f: A -> B`, `g: A -> C`,
/// `h: B -> D`, `k: C -> D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutativeSquare {
    pub f: GraphMorphism,
    pub g: GraphMorphism,
    pub h: GraphMorphism,
    pub k: GraphMorphism,
}

impl CommutativeSquare {
    pub fn new(
        f: GraphMorphism,
        g: GraphMorphism,
        h: GraphMorphism,
        k: GraphMorphism,
    ) -> Result<Self> {
        let sq = CommutativeSquare { f, g, h, k };
        if !sq.commutes()? {
            return Err(Error::NonCommutingSquare);
        }
        Ok(sq)
    }

    pub fn commutes(&self) -> Result<bool> {
        if self.f.dom() != self.g.dom() {
            return Err(Error::DomainMismatch("square corner A".into()));
        }
        Ok(compose(&self.f, &self.h)? == compose(&self.g, &self.k)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SquareKind {
    Pullback,
    Pushout,
}

/// Decides whether a commuting square has the universal property of the
/// requested kind, by comparing against the canonical construction: the
/// forced mediating morphism must be an isomorphism.
pub fn is_square(sq: &CommutativeSquare, kind: SquareKind) -> Result<bool> {
    if !sq.commutes()? {
        return Err(Error::NonCommutingSquare);
    }
    match kind {
        SquareKind::Pullback => {
            let tables = pullback_tables(&sq.h, &sq.k)?;
            // mediating A -> canonical apex, forced by the projections
            let mut node_map = BTreeMap::new();
            for a in sq.f.dom().node_ids() {
                let pair = (
                    sq.f.node_image(a).expect("total").clone(),
                    sq.g.node_image(a).expect("total").clone(),
                );
                match tables.node_of_pair.get(&pair) {
                    Some(n) => {
                        node_map.insert(a.clone(), n.clone());
                    }
                    None => return Ok(false),
                }
            }
            let mut edge_map = BTreeMap::new();
            for (a, _) in sq.f.dom().edges() {
                let pair = (
                    sq.f.edge_image(a).expect("total").clone(),
                    sq.g.edge_image(a).expect("total").clone(),
                );
                match tables.edge_of_pair.get(&pair) {
                    Some(e) => {
                        edge_map.insert(a.clone(), e.clone());
                    }
                    None => return Ok(false),
                }
            }
            let mediating = GraphMorphism::from_parts(
                sq.f.dom().clone(),
                tables.span.apex.clone(),
                node_map,
                edge_map,
            );
            debug_assert!(mediating.is_valid());
            Ok(mediating.is_bijective())
        }
        SquareKind::Pushout => {
            let canonical = pushout_unchecked(&sq.f, &sq.g)?;
            match induced_from_jointly_epic(&canonical.left, &canonical.right, &sq.h, &sq.k) {
                Ok(mediating) => Ok(mediating.is_bijective()),
                Err(Error::CoconeDoesNotCommute) => Ok(false),
                Err(e) => Err(e),
            }
        }
    }
}

/// Effective-pushout test for two injective morphisms into a common object:
/// pushout of their pullback span embeds back injectively.
pub fn is_effective_pushout(a: &GraphMorphism, b: &GraphMorphism) -> Result<bool> {
    if !a.is_injective() || !b.is_injective() {
        return Err(Error::NotInjective(
            "effective-pushout test needs injective legs".into(),
        ));
    }
    if a.cod() != b.cod() {
        return Err(Error::CodomainMismatch(
            "effective-pushout test needs a common codomain".into(),
        ));
    }
    let pb = pullback(a, b)?;
    let po = pushout(&pb.left, &pb.right)?;
    let u = induced_pushout_morphism(&po, a, b)?;
    Ok(u.is_injective())
}

/// The initial object: the empty graph.
pub fn initial_graph() -> Graph {
    Graph::new()
}

/// The unique morphism from the empty graph into `g`.
pub fn initial_morphism(g: &Graph) -> GraphMorphism {
    GraphMorphism::from_parts(Graph::new(), g.clone(), BTreeMap::new(), BTreeMap::new())
}
