//! Graph morphisms: structure- and label-preserving maps between graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, NodeId};

/// A total structure-preserving map between two graphs.
///
/// The morphism owns copies of its endpoint graphs, so values are
/// self-contained and comparison is plain structural equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphMorphism {
    dom: Graph,
    cod: Graph,
    node_map: BTreeMap<NodeId, NodeId>,
    edge_map: BTreeMap<EdgeId, EdgeId>,
}

/// One violated [`GraphMorphism`] invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MorphismIssue {
    /// A domain node/edge has no image.
    PartialMap(String),
    /// An image id does not exist in the codomain.
    ImageMissing(String),
    /// node_map(src(e)) != src(edge_map(e)), or likewise for tgt.
    EndpointsDoNotCommute(EdgeId),
    /// label(edge_map(e)) != label(e), or node labels differ.
    LabelNotPreserved(String),
}

impl fmt::Display for MorphismIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismIssue::PartialMap(s) => write!(f, "partial map: {s}"),
            MorphismIssue::ImageMissing(s) => write!(f, "image missing: {s}"),
            MorphismIssue::EndpointsDoNotCommute(e) => {
                write!(f, "endpoints do not commute for edge {e}")
            }
            MorphismIssue::LabelNotPreserved(s) => write!(f, "label not preserved: {s}"),
        }
    }
}

impl GraphMorphism {
    /// Builds a morphism without validating it; see [`GraphMorphism::validate`].
    pub fn from_parts(
        dom: Graph,
        cod: Graph,
        node_map: BTreeMap<NodeId, NodeId>,
        edge_map: BTreeMap<EdgeId, EdgeId>,
    ) -> Self {
        GraphMorphism {
            dom,
            cod,
            node_map,
            edge_map,
        }
    }

    /// Builds a morphism and checks every invariant.
    pub fn new(
        dom: Graph,
        cod: Graph,
        node_map: BTreeMap<NodeId, NodeId>,
        edge_map: BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Self> {
        let m = Self::from_parts(dom, cod, node_map, edge_map);
        let issues = m.validate();
        if issues.is_empty() {
            Ok(m)
        } else {
            let text = issues
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            Err(Error::InvalidMorphism(text))
        }
    }

    /// The identity morphism on `g`.
    pub fn identity(g: &Graph) -> Self {
        let node_map = g.node_ids().map(|n| (n.clone(), n.clone())).collect();
        let edge_map = g.edges().map(|(e, _)| (e.clone(), e.clone())).collect();
        GraphMorphism {
            dom: g.clone(),
            cod: g.clone(),
            node_map,
            edge_map,
        }
    }

    pub fn dom(&self) -> &Graph {
        &self.dom
    }

    pub fn cod(&self) -> &Graph {
        &self.cod
    }

    pub fn node_map(&self) -> &BTreeMap<NodeId, NodeId> {
        &self.node_map
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.edge_map
    }

    pub fn node_image(&self, n: &NodeId) -> Option<&NodeId> {
        self.node_map.get(n)
    }

    pub fn edge_image(&self, e: &EdgeId) -> Option<&EdgeId> {
        self.edge_map.get(e)
    }

    /// Checks totality, endpoint commutation and label preservation,
    /// reporting every violation.
    pub fn validate(&self) -> Vec<MorphismIssue> {
        let mut issues = Vec::new();
        for n in self.dom.node_ids() {
            match self.node_map.get(n) {
                None => issues.push(MorphismIssue::PartialMap(format!("node {n} has no image"))),
                Some(img) => {
                    if !self.cod.has_node(img) {
                        issues.push(MorphismIssue::ImageMissing(format!(
                            "node {n} maps to absent node {img}"
                        )));
                    } else if self.dom.node_label(n) != self.cod.node_label(img) {
                        issues.push(MorphismIssue::LabelNotPreserved(format!("node {n}")));
                    }
                }
            }
        }
        for (id, e) in self.dom.edges() {
            let img_id = match self.edge_map.get(id) {
                None => {
                    issues.push(MorphismIssue::PartialMap(format!("edge {id} has no image")));
                    continue;
                }
                Some(i) => i,
            };
            let img = match self.cod.edge(img_id) {
                None => {
                    issues.push(MorphismIssue::ImageMissing(format!(
                        "edge {id} maps to absent edge {img_id}"
                    )));
                    continue;
                }
                Some(i) => i,
            };
            if img.label != e.label {
                issues.push(MorphismIssue::LabelNotPreserved(format!("edge {id}")));
            }
            let src_ok = self.node_map.get(&e.src) == Some(&img.src);
            let tgt_ok = self.node_map.get(&e.tgt) == Some(&img.tgt);
            if !src_ok || !tgt_ok {
                issues.push(MorphismIssue::EndpointsDoNotCommute(id.clone()));
            }
        }
        // stray entries for items outside the domain
        for n in self.node_map.keys() {
            if !self.dom.has_node(n) {
                issues.push(MorphismIssue::ImageMissing(format!(
                    "node map entry for {n} outside the domain"
                )));
            }
        }
        for e in self.edge_map.keys() {
            if !self.dom.has_edge(e) {
                issues.push(MorphismIssue::ImageMissing(format!(
                    "edge map entry for {e} outside the domain"
                )));
            }
        }
        issues
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// M-membership test: true iff both maps are injective.
    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        for img in self.node_map.values() {
            if !seen.insert(img) {
                return false;
            }
        }
        let mut seen = BTreeSet::new();
        for img in self.edge_map.values() {
            if !seen.insert(img) {
                return false;
            }
        }
        true
    }

    /// True iff both maps are bijections onto the codomain.
    pub fn is_bijective(&self) -> bool {
        self.is_injective()
            && self.node_map.len() == self.cod.node_count()
            && self.edge_map.len() == self.cod.edge_count()
    }

    /// True iff this is an inclusion: every item maps to itself.
    pub fn is_inclusion(&self) -> bool {
        self.node_map.iter().all(|(a, b)| a == b) && self.edge_map.iter().all(|(a, b)| a == b)
    }

    /// The inverse of a bijective morphism.
    pub fn inverse(&self) -> Result<GraphMorphism> {
        if !self.is_bijective() {
            return Err(Error::NotInjective("cannot invert a non-bijection".into()));
        }
        Ok(GraphMorphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            node_map: self
                .node_map
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            edge_map: self
                .edge_map
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        })
    }
}

/// Composes two morphisms: `compose(f, g)` maps `x` to `g(f(x))`.
pub fn compose(f: &GraphMorphism, g: &GraphMorphism) -> Result<GraphMorphism> {
    if f.cod() != g.dom() {
        return Err(Error::DomainMismatch(
            "cod of the first morphism differs from dom of the second".into(),
        ));
    }
    let node_map = f
        .node_map
        .iter()
        .map(|(a, b)| {
            let c = g
                .node_image(b)
                .ok_or_else(|| Error::InvalidMorphism(format!("no image for node {b}")))?;
            Ok((a.clone(), c.clone()))
        })
        .collect::<Result<_>>()?;
    let edge_map = f
        .edge_map
        .iter()
        .map(|(a, b)| {
            let c = g
                .edge_image(b)
                .ok_or_else(|| Error::InvalidMorphism(format!("no image for edge {b}")))?;
            Ok((a.clone(), c.clone()))
        })
        .collect::<Result<_>>()?;
    Ok(GraphMorphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        node_map,
        edge_map,
    })
}

/// Factors `m: Z -> X` through an injective `inj: Y -> X`: the unique
/// `b: Z -> Y` with `inj ∘ b = m`. Fails if some image of `m` lies outside
/// the image of `inj`.
pub fn factor_through_injection(m: &GraphMorphism, inj: &GraphMorphism) -> Result<GraphMorphism> {
    if m.cod() != inj.cod() {
        return Err(Error::CodomainMismatch(
            "factorization needs a common codomain".into(),
        ));
    }
    if !inj.is_injective() {
        return Err(Error::NotInjective("cannot factor through a non-injection".into()));
    }
    let node_back: BTreeMap<&NodeId, &NodeId> =
        inj.node_map.iter().map(|(a, b)| (b, a)).collect();
    let edge_back: BTreeMap<&EdgeId, &EdgeId> =
        inj.edge_map.iter().map(|(a, b)| (b, a)).collect();
    let node_map = m
        .node_map
        .iter()
        .map(|(z, x)| {
            let y = node_back.get(x).ok_or_else(|| {
                Error::RestrictionFailed(format!("node {x} is outside the subobject"))
            })?;
            Ok((z.clone(), (*y).clone()))
        })
        .collect::<Result<_>>()?;
    let edge_map = m
        .edge_map
        .iter()
        .map(|(z, x)| {
            let y = edge_back.get(x).ok_or_else(|| {
                Error::RestrictionFailed(format!("edge {x} is outside the subobject"))
            })?;
            Ok((z.clone(), (*y).clone()))
        })
        .collect::<Result<_>>()?;
    let b = GraphMorphism::from_parts(m.dom().clone(), inj.dom().clone(), node_map, edge_map);
    debug_assert!(b.is_valid());
    Ok(b)
}

/// True iff every codomain item is in the image of `f` or of `g`.
pub fn is_jointly_epic(f: &GraphMorphism, g: &GraphMorphism) -> Result<bool> {
    if f.cod() != g.cod() {
        return Err(Error::CodomainMismatch(
            "jointly-epic check needs a common codomain".into(),
        ));
    }
    let nodes: BTreeSet<&NodeId> = f.node_map.values().chain(g.node_map.values()).collect();
    let edges: BTreeSet<&EdgeId> = f.edge_map.values().chain(g.edge_map.values()).collect();
    Ok(f.cod().node_ids().all(|n| nodes.contains(n))
        && f.cod().edges().all(|(e, _)| edges.contains(e)))
}
