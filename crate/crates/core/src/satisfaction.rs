//! Satisfaction of nested conditions: injective-match enumeration, the
//! inductive satisfaction relation, and solution trees for positive
//! conditions.
//!
//! Everything is deterministic: matches and extensions come out in
//! lexicographic order, solution search takes the first extension that
//! works and the leftmost satisfiable disjunct.

use crate::condition::{ConditionBody, NestedCondition};
use crate::error::{Error, Result};
use crate::limits::initial_morphism;
use crate::matcher::{extension_search, Search, SearchKind};
use crate::morphism::{compose, GraphMorphism};
use crate::typed::TypedGraph;

/// All injective, typing-compatible morphisms from `pattern` into `host`,
/// in deterministic lexicographic order.
pub fn enumerate_injective_morphisms(
    pattern: &TypedGraph,
    host: &TypedGraph,
) -> Result<Vec<GraphMorphism>> {
    if pattern.type_graph() != host.type_graph() {
        return Err(Error::TypeMismatch(
            "pattern and host must share a type graph".into(),
        ));
    }
    Ok(Search::new(pattern.graph(), host.graph(), SearchKind::Monomorphism)
        .with_typing(pattern.typing(), host.typing())
        .collect())
}

/// All injective, typing-compatible `q: C -> G` with `q ∘ a = p`, in
/// deterministic order. `extension` is the typed codomain of `a`, `host`
/// the typed codomain of `p`.
pub fn enumerate_extensions(
    a: &GraphMorphism,
    p: &GraphMorphism,
    extension: &TypedGraph,
    host: &TypedGraph,
) -> Result<Vec<GraphMorphism>> {
    if extension.type_graph() != host.type_graph() {
        return Err(Error::TypeMismatch(
            "extension and host must share a type graph".into(),
        ));
    }
    if a.cod() != extension.graph() || p.cod() != host.graph() {
        return Err(Error::CodomainMismatch(
            "extension data does not match the morphisms".into(),
        ));
    }
    extension_search(a, p, Some((extension.typing(), host.typing())))
}

fn check_match(p: &GraphMorphism, cond: &NestedCondition, host: &TypedGraph) -> Result<()> {
    if p.dom() != cond.root.graph() {
        return Err(Error::DomainMismatch(
            "match does not start at the condition root".into(),
        ));
    }
    if p.cod() != host.graph() {
        return Err(Error::CodomainMismatch(
            "match does not target the host".into(),
        ));
    }
    if cond.root.type_graph() != host.type_graph() {
        return Err(Error::TypeMismatch(
            "condition and host must share a type graph".into(),
        ));
    }
    if compose(p, host.typing())? != *cond.root.typing() {
        return Err(Error::TypeMismatch(
            "match does not commute with the typings".into(),
        ));
    }
    Ok(())
}

/// The inductive satisfaction relation. The match `p` need not be
/// injective; witnesses for existential levels always are.
pub fn satisfies(p: &GraphMorphism, cond: &NestedCondition, host: &TypedGraph) -> Result<bool> {
    check_match(p, cond, host)?;
    satisfies_rec(p, cond, host)
}

fn satisfies_rec(p: &GraphMorphism, cond: &NestedCondition, host: &TypedGraph) -> Result<bool> {
    match &cond.body {
        ConditionBody::True => Ok(true),
        ConditionBody::Exists { morphism, inner } => {
            for q in enumerate_extensions(morphism, p, &inner.root, host)? {
                if satisfies_rec(&q, inner, host)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        ConditionBody::Not(inner) => Ok(!satisfies_rec(p, inner, host)?),
        ConditionBody::And(children) => {
            for child in children {
                if !satisfies_rec(p, child, host)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ConditionBody::Or(children) => {
            for child in children {
                if satisfies_rec(p, child, host)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// A solution tree certifying satisfaction of a positive condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Solution {
    /// Solves `true`; also fills the non-chosen disjuncts of an `Or`.
    Empty,
    /// Solves an `Exists`: an injective witness plus a solution for the
    /// inner condition under that witness.
    Witness {
        map: GraphMorphism,
        inner: Box<Solution>,
    },
    /// Solves a junction: one child per junction child.
    Tuple(Vec<Solution>),
}

impl Solution {
    pub fn is_empty(&self) -> bool {
        matches!(self, Solution::Empty)
    }
}

/// Finds the canonical solution for `p ⊨ cond`, if any: first witness in
/// enumeration order, leftmost satisfiable disjunct, `Empty` at every
/// non-chosen disjunct.
pub fn find_solution(
    p: &GraphMorphism,
    cond: &NestedCondition,
    host: &TypedGraph,
) -> Result<Option<Solution>> {
    cond.ensure_positive()?;
    check_match(p, cond, host)?;
    find_solution_rec(p, cond, host)
}

fn find_solution_rec(
    p: &GraphMorphism,
    cond: &NestedCondition,
    host: &TypedGraph,
) -> Result<Option<Solution>> {
    match &cond.body {
        ConditionBody::True => Ok(Some(Solution::Empty)),
        ConditionBody::Exists { morphism, inner } => {
            for q in enumerate_extensions(morphism, p, &inner.root, host)? {
                if let Some(sub) = find_solution_rec(&q, inner, host)? {
                    return Ok(Some(Solution::Witness {
                        map: q,
                        inner: Box::new(sub),
                    }));
                }
            }
            Ok(None)
        }
        ConditionBody::Not(_) => Err(Error::NotPositive(
            "solutions are defined for positive conditions only".into(),
        )),
        ConditionBody::And(children) => {
            let mut parts = Vec::with_capacity(children.len());
            for child in children {
                match find_solution_rec(p, child, host)? {
                    Some(s) => parts.push(s),
                    None => return Ok(None),
                }
            }
            Ok(Some(Solution::Tuple(parts)))
        }
        ConditionBody::Or(children) => {
            for (j, child) in children.iter().enumerate() {
                if let Some(s) = find_solution_rec(p, child, host)? {
                    let mut parts = vec![Solution::Empty; children.len()];
                    parts[j] = s;
                    return Ok(Some(Solution::Tuple(parts)));
                }
            }
            Ok(None)
        }
    }
}

/// Independent checker: true iff `solution` literally certifies
/// `p ⊨ cond` clause by clause (injectivity, triangle equality, typing
/// compatibility, recursive validity, emptiness of non-chosen disjuncts).
pub fn verify_solution(
    p: &GraphMorphism,
    cond: &NestedCondition,
    host: &TypedGraph,
    solution: &Solution,
) -> bool {
    if check_match(p, cond, host).is_err() {
        return false;
    }
    verify_rec(p, cond, host, solution)
}

fn verify_rec(
    p: &GraphMorphism,
    cond: &NestedCondition,
    host: &TypedGraph,
    solution: &Solution,
) -> bool {
    match (&cond.body, solution) {
        (ConditionBody::True, Solution::Empty) => true,
        (ConditionBody::Exists { morphism, inner }, Solution::Witness { map, inner: sub }) => {
            if map.dom() != inner.root.graph() || map.cod() != host.graph() {
                return false;
            }
            if !map.is_valid() || !map.is_injective() {
                return false;
            }
            match compose(morphism, map) {
                Ok(composed) if composed == *p => {}
                _ => return false,
            }
            match compose(map, host.typing()) {
                Ok(typed) if typed == *inner.root.typing() => {}
                _ => return false,
            }
            verify_rec(map, inner, host, sub)
        }
        (ConditionBody::And(children), Solution::Tuple(parts)) => {
            children.len() == parts.len()
                && children
                    .iter()
                    .zip(parts)
                    .all(|(c, s)| verify_rec(p, c, host, s))
        }
        (ConditionBody::Or(children), Solution::Tuple(parts)) => {
            if children.len() != parts.len() {
                return false;
            }
            (0..children.len()).any(|j| {
                parts
                    .iter()
                    .enumerate()
                    .all(|(k, s)| k == j || s.is_empty())
                    && verify_rec(p, &children[j], host, &parts[j])
            })
        }
        _ => false,
    }
}

/// Universal satisfaction: every injective match of the root satisfies the
/// condition. Vacuously true when no injective match exists.
pub fn generally_satisfies(host: &TypedGraph, cond: &NestedCondition) -> Result<bool> {
    cond.ensure_valid()?;
    for p in enumerate_injective_morphisms(&cond.root, host)? {
        if !satisfies(&p, cond, host)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn initial_match(host: &TypedGraph, cond: &NestedCondition) -> Result<GraphMorphism> {
    if !cond.root.graph().is_empty() {
        return Err(Error::RootNotInitial);
    }
    if cond.root.type_graph() != host.type_graph() {
        return Err(Error::TypeMismatch(
            "condition and host must share a type graph".into(),
        ));
    }
    Ok(initial_morphism(host.graph()))
}

/// Existential satisfaction of a positive constraint over the initial
/// (empty) root: the canonical solution for the initial match, if any.
pub fn initially_satisfies(
    host: &TypedGraph,
    cond: &NestedCondition,
) -> Result<Option<Solution>> {
    let p = initial_match(host, cond)?;
    find_solution(&p, cond, host)
}

/// Boolean initial satisfaction; also supports non-positive conditions.
pub fn initially_satisfies_bool(host: &TypedGraph, cond: &NestedCondition) -> Result<bool> {
    let p = initial_match(host, cond)?;
    satisfies(&p, cond, host)
}
