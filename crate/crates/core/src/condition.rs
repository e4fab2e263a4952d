//! Nested conditions over typed graphs.
//!
//! A condition over a root object is built from `true`, existential
//! extension along a morphism, negation, conjunction and disjunction.
//! Positive conditions exclude negation and empty junctions; only they
//! support solutions and amalgamation.

use std::fmt;

use crate::error::{Error, Result};
use crate::morphism::{compose, GraphMorphism};
use crate::typed::{restrict_morphism, restrict_typed_graph, Restriction, TypedGraph};

/// A nested condition: a typed root object and a body.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NestedCondition {
    pub root: TypedGraph,
    pub body: ConditionBody,
}

/// Body of a nested condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConditionBody {
    /// Always satisfied.
    True,
    /// There exists an injective extension along `morphism` satisfying the
    /// inner condition. `morphism` maps the root carrier into the inner
    /// condition's root carrier.
    Exists {
        morphism: GraphMorphism,
        inner: Box<NestedCondition>,
    },
    /// The inner condition (over the same root) is not satisfied.
    Not(Box<NestedCondition>),
    /// All children (over the same root) are satisfied.
    And(Vec<NestedCondition>),
    /// At least one child (over the same root) is satisfied.
    Or(Vec<NestedCondition>),
}

/// One violated [`NestedCondition`] invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConditionIssue {
    /// An `Exists` morphism does not start at its level's root carrier.
    MorphismRootMismatch(String),
    /// An `Exists` morphism does not commute with the typings.
    TypingMismatch(String),
    /// A child of a junction or negation has a different root.
    ChildRootMismatch(String),
    /// A morphism inside the condition fails its own invariants.
    InvalidMorphism(String),
    /// A root is typed over a different type graph.
    TypeGraphMismatch(String),
}

impl fmt::Display for ConditionIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionIssue::MorphismRootMismatch(s) => write!(f, "morphism root mismatch: {s}"),
            ConditionIssue::TypingMismatch(s) => write!(f, "typing mismatch: {s}"),
            ConditionIssue::ChildRootMismatch(s) => write!(f, "child root mismatch: {s}"),
            ConditionIssue::InvalidMorphism(s) => write!(f, "invalid morphism: {s}"),
            ConditionIssue::TypeGraphMismatch(s) => write!(f, "type graph mismatch: {s}"),
        }
    }
}

impl NestedCondition {
    /// The condition `true` over a root.
    pub fn top(root: TypedGraph) -> Self {
        NestedCondition {
            root,
            body: ConditionBody::True,
        }
    }

    /// Existential condition along `morphism` into the inner root.
    pub fn exists(root: TypedGraph, morphism: GraphMorphism, inner: NestedCondition) -> Self {
        NestedCondition {
            root,
            body: ConditionBody::Exists {
                morphism,
                inner: Box::new(inner),
            },
        }
    }

    /// True iff the condition contains no negation and every junction has a
    /// nonempty child list.
    pub fn is_positive(&self) -> bool {
        match &self.body {
            ConditionBody::True => true,
            ConditionBody::Exists { inner, .. } => inner.is_positive(),
            ConditionBody::Not(_) => false,
            ConditionBody::And(children) | ConditionBody::Or(children) => {
                !children.is_empty() && children.iter().all(|c| c.is_positive())
            }
        }
    }

    /// Depth of nesting through `Exists` levels.
    pub fn depth(&self) -> usize {
        match &self.body {
            ConditionBody::True => 0,
            ConditionBody::Exists { inner, .. } => 1 + inner.depth(),
            ConditionBody::Not(inner) => inner.depth(),
            ConditionBody::And(children) | ConditionBody::Or(children) => {
                children.iter().map(|c| c.depth()).max().unwrap_or(0)
            }
        }
    }

    /// Checks the structural invariants and reports every violation.
    pub fn validate(&self) -> Vec<ConditionIssue> {
        let mut issues = Vec::new();
        self.validate_into(&mut issues);
        issues
    }

    fn validate_into(&self, issues: &mut Vec<ConditionIssue>) {
        match &self.body {
            ConditionBody::True => {}
            ConditionBody::Exists { morphism, inner } => {
                if !morphism.is_valid() {
                    issues.push(ConditionIssue::InvalidMorphism(
                        "existential morphism fails validation".into(),
                    ));
                } else {
                    if morphism.dom() != self.root.graph() {
                        issues.push(ConditionIssue::MorphismRootMismatch(
                            "existential morphism does not start at the root".into(),
                        ));
                    }
                    if morphism.cod() != inner.root.graph() {
                        issues.push(ConditionIssue::MorphismRootMismatch(
                            "existential morphism does not end at the inner root".into(),
                        ));
                    } else if inner.root.type_graph() != self.root.type_graph() {
                        issues.push(ConditionIssue::TypeGraphMismatch(
                            "inner root is typed over a different type graph".into(),
                        ));
                    } else {
                        match compose(morphism, inner.root.typing()) {
                            Ok(composed) if composed == *self.root.typing() => {}
                            _ => issues.push(ConditionIssue::TypingMismatch(
                                "existential morphism does not commute with the typings".into(),
                            )),
                        }
                    }
                }
                inner.validate_into(issues);
            }
            ConditionBody::Not(inner) => {
                if inner.root != self.root {
                    issues.push(ConditionIssue::ChildRootMismatch(
                        "negation child has a different root".into(),
                    ));
                }
                inner.validate_into(issues);
            }
            ConditionBody::And(children) | ConditionBody::Or(children) => {
                for child in children {
                    if child.root != self.root {
                        issues.push(ConditionIssue::ChildRootMismatch(
                            "junction child has a different root".into(),
                        ));
                    }
                    child.validate_into(issues);
                }
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let issues = self.validate();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCondition(
                issues
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }

    pub fn ensure_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::NotPositive(
                "condition contains negation or an empty junction".into(),
            ))
        }
    }
}

/// A restricted condition together with the per-level restriction data
/// needed to restrict matches and solutions afterwards.
///
/// `children` mirrors the body: one entry for the inner condition of
/// `Exists`/`Not`, one per junction child, none for `True`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConditionRestriction {
    pub condition: NestedCondition,
    /// condition.root carrier -> original root carrier
    pub root_embedding: GraphMorphism,
    pub children: Vec<ConditionRestriction>,
}

impl ConditionRestriction {
    /// The root restriction as a [`Restriction`] value.
    pub fn root_restriction(&self) -> Restriction {
        Restriction {
            restricted: self.condition.root.clone(),
            embedding: self.root_embedding.clone(),
        }
    }
}

/// Restricts a condition along an injective type morphism `t` into its type
/// graph, level by level: roots are restricted by pullback, existential
/// morphisms by the induced morphism between the restrictions.
pub fn restrict_condition(
    cond: &NestedCondition,
    t: &GraphMorphism,
) -> Result<ConditionRestriction> {
    cond.ensure_valid()?;
    let root = restrict_typed_graph(&cond.root, t)?;
    restrict_condition_at(cond, t, &root)
}

fn restrict_condition_at(
    cond: &NestedCondition,
    t: &GraphMorphism,
    root: &Restriction,
) -> Result<ConditionRestriction> {
    let (body, children) = match &cond.body {
        ConditionBody::True => (ConditionBody::True, Vec::new()),
        ConditionBody::Exists { morphism, inner } => {
            let inner_root = restrict_typed_graph(&inner.root, t)?;
            let restricted_morphism = restrict_morphism(morphism, root, &inner_root)?;
            let inner_restriction = restrict_condition_at(inner, t, &inner_root)?;
            (
                ConditionBody::Exists {
                    morphism: restricted_morphism,
                    inner: Box::new(inner_restriction.condition.clone()),
                },
                vec![inner_restriction],
            )
        }
        ConditionBody::Not(inner) => {
            let inner_restriction = restrict_condition_at(inner, t, root)?;
            (
                ConditionBody::Not(Box::new(inner_restriction.condition.clone())),
                vec![inner_restriction],
            )
        }
        ConditionBody::And(items) => {
            let restrictions = items
                .iter()
                .map(|c| restrict_condition_at(c, t, root))
                .collect::<Result<Vec<_>>>()?;
            (
                ConditionBody::And(restrictions.iter().map(|r| r.condition.clone()).collect()),
                restrictions,
            )
        }
        ConditionBody::Or(items) => {
            let restrictions = items
                .iter()
                .map(|c| restrict_condition_at(c, t, root))
                .collect::<Result<Vec<_>>>()?;
            (
                ConditionBody::Or(restrictions.iter().map(|r| r.condition.clone()).collect()),
                restrictions,
            )
        }
    };
    Ok(ConditionRestriction {
        condition: NestedCondition {
            root: root.restricted.clone(),
            body,
        },
        root_embedding: root.embedding.clone(),
        children,
    })
}
