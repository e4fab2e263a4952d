//! Restriction, agreement, amalgamation and decomposition of solution
//! trees, and the compatibility check for initial satisfaction.
//!
//! A solution restricts by restricting every witness morphism; two
//! solutions agree when their witnesses restrict to a shared interface
//! solution; amalgamation rebuilds each witness as the morphism induced by
//! the pushout of the condition objects at that level.

use crate::condition::{ConditionBody, ConditionRestriction, NestedCondition};
use crate::condition_amalgamation::ConditionAmalgamation;
use crate::error::{Error, Result};
use crate::limits::{induced_from_jointly_epic, initial_morphism};
use crate::morphism::{compose, factor_through_injection, GraphMorphism};
use crate::satisfaction::{find_solution, verify_solution, Solution};
use crate::typed::{ObjectAmalgamation, Restriction, TypedGraph};

/// Restricts a match `p` of a condition root into a host, along restriction
/// data for both.
pub fn restrict_match(
    p: &GraphMorphism,
    root: &Restriction,
    host: &Restriction,
) -> Result<GraphMorphism> {
    crate::typed::restrict_morphism(p, root, host)
}

/// Restricts a solution for `cond` along the restriction data produced by
/// [`crate::condition::restrict_condition`] and a restriction of the host.
/// Every witness is replaced by its unique restriction.
pub fn restrict_solution(
    cond: &NestedCondition,
    restriction: &ConditionRestriction,
    host: &Restriction,
    solution: &Solution,
) -> Result<Solution> {
    match (&cond.body, solution) {
        (_, Solution::Empty) => Ok(Solution::Empty),
        (ConditionBody::Exists { inner, .. }, Solution::Witness { map, inner: sub }) => {
            let level = restriction
                .children
                .first()
                .ok_or_else(|| Error::SolutionShapeMismatch("missing restriction level".into()))?;
            let restricted_map =
                crate::typed::restrict_morphism(map, &level.root_restriction(), host)?;
            let restricted_sub = restrict_solution(inner, level, host, sub)?;
            Ok(Solution::Witness {
                map: restricted_map,
                inner: Box::new(restricted_sub),
            })
        }
        (ConditionBody::And(children), Solution::Tuple(parts))
        | (ConditionBody::Or(children), Solution::Tuple(parts)) => {
            if children.len() != parts.len() || restriction.children.len() != parts.len() {
                return Err(Error::SolutionShapeMismatch(
                    "junction arity mismatch".into(),
                ));
            }
            let restricted = children
                .iter()
                .zip(&restriction.children)
                .zip(parts)
                .map(|((c, r), s)| restrict_solution(c, r, host, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(Solution::Tuple(restricted))
        }
        _ => Err(Error::SolutionShapeMismatch(
            "solution does not fit the condition".into(),
        )),
    }
}

/// Which corner of an amalgamation diagram to project onto.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AmalgSide {
    Left,
    Right,
    Interface,
}

impl ConditionAmalgamation {
    pub fn side_condition(&self, side: AmalgSide) -> &NestedCondition {
        match side {
            AmalgSide::Left => &self.left,
            AmalgSide::Right => &self.right,
            AmalgSide::Interface => &self.interface,
        }
    }
}

impl ObjectAmalgamation {
    pub fn side_object(&self, side: AmalgSide) -> &TypedGraph {
        match side {
            AmalgSide::Left => &self.left,
            AmalgSide::Right => &self.right,
            AmalgSide::Interface => &self.interface,
        }
    }

    pub fn injection(&self, side: AmalgSide) -> &GraphMorphism {
        match side {
            AmalgSide::Left => &self.from_left,
            AmalgSide::Right => &self.from_right,
            AmalgSide::Interface => &self.from_interface,
        }
    }
}

/// Restricts a match for the amalgamated root onto one side of the diagram.
pub fn restrict_match_side(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    side: AmalgSide,
    p: &GraphMorphism,
) -> Result<GraphMorphism> {
    let through = compose(cond.root.injection(side), p)?;
    factor_through_injection(&through, hosts.injection(side))
}

/// Restricts a solution for the amalgamated condition onto one side of the
/// diagram, witness by witness.
pub fn restrict_solution_side(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    side: AmalgSide,
    solution: &Solution,
) -> Result<Solution> {
    match (&cond.amalgamated.body, solution) {
        (_, Solution::Empty) => Ok(Solution::Empty),
        (ConditionBody::Exists { .. }, Solution::Witness { map, inner }) => {
            let level = cond
                .children
                .first()
                .ok_or_else(|| Error::SolutionShapeMismatch("missing amalgamation level".into()))?;
            let through = compose(level.root.injection(side), map)?;
            let restricted_map = factor_through_injection(&through, hosts.injection(side))?;
            let restricted_inner = restrict_solution_side(level, hosts, side, inner)?;
            Ok(Solution::Witness {
                map: restricted_map,
                inner: Box::new(restricted_inner),
            })
        }
        (ConditionBody::And(_), Solution::Tuple(parts))
        | (ConditionBody::Or(_), Solution::Tuple(parts)) => {
            if cond.children.len() != parts.len() {
                return Err(Error::SolutionShapeMismatch(
                    "junction arity mismatch".into(),
                ));
            }
            let restricted = cond
                .children
                .iter()
                .zip(parts)
                .map(|(c, s)| restrict_solution_side(c, hosts, side, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(Solution::Tuple(restricted))
        }
        _ => Err(Error::SolutionShapeMismatch(
            "solution does not fit the condition".into(),
        )),
    }
}

/// Decomposes a solution for the amalgamated condition into its three side
/// restrictions.
pub fn decompose_solution(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    solution: &Solution,
) -> Result<(Solution, Solution, Solution)> {
    Ok((
        restrict_solution_side(cond, hosts, AmalgSide::Left, solution)?,
        restrict_solution_side(cond, hosts, AmalgSide::Right, solution)?,
        restrict_solution_side(cond, hosts, AmalgSide::Interface, solution)?,
    ))
}

/// True iff the interface solution is the restriction of both side
/// solutions: witnesses commute with the interface embeddings and
/// non-chosen disjuncts line up.
pub fn solutions_agree(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    left: &Solution,
    right: &Solution,
    interface: &Solution,
) -> Result<bool> {
    let l = agree_on_side(cond, hosts, AgreeSide::Left, left, interface)?;
    let r = agree_on_side(cond, hosts, AgreeSide::Right, right, interface)?;
    Ok(l && r)
}

#[derive(Clone, Copy)]
enum AgreeSide {
    Left,
    Right,
}

fn agree_on_side(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    side: AgreeSide,
    side_solution: &Solution,
    interface_solution: &Solution,
) -> Result<bool> {
    let host_emb = match side {
        AgreeSide::Left => &hosts.witness.into_left,
        AgreeSide::Right => &hosts.witness.into_right,
    };
    agree_rec(cond, side, host_emb, side_solution, interface_solution)
}

fn agree_rec(
    cond: &ConditionAmalgamation,
    side: AgreeSide,
    host_emb: &GraphMorphism,
    side_solution: &Solution,
    interface_solution: &Solution,
) -> Result<bool> {
    match (side_solution, interface_solution) {
        (Solution::Empty, Solution::Empty) => Ok(true),
        // a restriction of a nonempty solution is never empty
        (Solution::Empty, _) | (_, Solution::Empty) => Ok(false),
        (
            Solution::Witness {
                map: side_map,
                inner: side_inner,
            },
            Solution::Witness {
                map: int_map,
                inner: int_inner,
            },
        ) => {
            let level = match cond.children.first() {
                Some(l) => l,
                None => return Ok(false),
            };
            let object_emb = match side {
                AgreeSide::Left => &level.root.witness.into_left,
                AgreeSide::Right => &level.root.witness.into_right,
            };
            // interface witness followed by the host embedding must equal
            // the object embedding followed by the side witness
            let via_interface = compose(int_map, host_emb)?;
            let via_side = compose(object_emb, side_map)?;
            if via_interface != via_side {
                return Ok(false);
            }
            agree_rec(level, side, host_emb, side_inner, int_inner)
        }
        (Solution::Tuple(side_parts), Solution::Tuple(int_parts)) => {
            if side_parts.len() != int_parts.len() || cond.children.len() != side_parts.len() {
                return Ok(false);
            }
            for ((child, s), i) in cond.children.iter().zip(side_parts).zip(int_parts) {
                if !agree_rec(child, side, host_emb, s, i)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

/// Amalgamates the matches of the three sides into a match for the
/// amalgamated root, by the universal property of the root pushout.
pub fn amalgamate_matches(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    left: &GraphMorphism,
    right: &GraphMorphism,
) -> Result<GraphMorphism> {
    induced_from_jointly_epic(
        &cond.root.from_left,
        &cond.root.from_right,
        &compose(left, &hosts.from_left)?,
        &compose(right, &hosts.from_right)?,
    )
}

/// Composes two agreeing solutions over their interface solution into a
/// solution for the amalgamated condition. Every witness of the result is
/// the morphism induced by the pushout of the condition objects at its
/// level.
pub fn amalgamate_solutions(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    left: &Solution,
    right: &Solution,
    interface: &Solution,
) -> Result<Solution> {
    cond.amalgamated.ensure_positive()?;
    if !solutions_agree(cond, hosts, left, right, interface)? {
        return Err(Error::AgreementFailed);
    }
    amalgamate_rec(cond, hosts, left, right, interface)
}

fn amalgamate_rec(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
    left: &Solution,
    right: &Solution,
    interface: &Solution,
) -> Result<Solution> {
    match &cond.amalgamated.body {
        ConditionBody::True => match (left, right, interface) {
            (Solution::Empty, Solution::Empty, Solution::Empty) => Ok(Solution::Empty),
            _ => Err(Error::SolutionShapeMismatch(
                "nonempty solution for a trivial condition".into(),
            )),
        },
        ConditionBody::Exists { .. } => {
            let (
                Solution::Witness {
                    map: left_map,
                    inner: left_inner,
                },
                Solution::Witness {
                    map: right_map,
                    inner: right_inner,
                },
                Solution::Witness {
                    inner: int_inner, ..
                },
            ) = (left, right, interface)
            else {
                return Err(Error::SolutionShapeMismatch(
                    "expected witnesses at an existential level".into(),
                ));
            };
            let level = cond
                .children
                .first()
                .ok_or_else(|| Error::SolutionShapeMismatch("missing amalgamation level".into()))?;
            let map = induced_from_jointly_epic(
                &level.root.from_left,
                &level.root.from_right,
                &compose(left_map, &hosts.from_left)?,
                &compose(right_map, &hosts.from_right)?,
            )?;
            let inner = amalgamate_rec(level, hosts, left_inner, right_inner, int_inner)?;
            Ok(Solution::Witness {
                map,
                inner: Box::new(inner),
            })
        }
        ConditionBody::And(_) => {
            let (Solution::Tuple(ls), Solution::Tuple(rs), Solution::Tuple(is)) =
                (left, right, interface)
            else {
                return Err(Error::SolutionShapeMismatch(
                    "expected tuples at a conjunction".into(),
                ));
            };
            let parts = cond
                .children
                .iter()
                .zip(ls)
                .zip(rs)
                .zip(is)
                .map(|(((c, l), r), i)| amalgamate_rec(c, hosts, l, r, i))
                .collect::<Result<Vec<_>>>()?;
            Ok(Solution::Tuple(parts))
        }
        ConditionBody::Or(_) => {
            let (Solution::Tuple(ls), Solution::Tuple(rs), Solution::Tuple(is)) =
                (left, right, interface)
            else {
                return Err(Error::SolutionShapeMismatch(
                    "expected tuples at a disjunction".into(),
                ));
            };
            if ls.len() != cond.children.len()
                || rs.len() != cond.children.len()
                || is.len() != cond.children.len()
            {
                return Err(Error::SolutionShapeMismatch(
                    "disjunction arity mismatch".into(),
                ));
            }
            match is.iter().position(|s| !s.is_empty()) {
                Some(j) => {
                    // agreement forces the side solutions to be chosen at j
                    if ls.iter().enumerate().any(|(k, s)| (k == j) == s.is_empty())
                        || rs.iter().enumerate().any(|(k, s)| (k == j) == s.is_empty())
                    {
                        return Err(Error::AgreementFailed);
                    }
                    let mut parts = vec![Solution::Empty; cond.children.len()];
                    parts[j] =
                        amalgamate_rec(&cond.children[j], hosts, &ls[j], &rs[j], &is[j])?;
                    Ok(Solution::Tuple(parts))
                }
                None => {
                    // all interface disjuncts empty: the sides must be all
                    // empty too, and some disjunct must be trivially true
                    if ls.iter().chain(rs.iter()).any(|s| !s.is_empty()) {
                        return Err(Error::AgreementFailed);
                    }
                    let trivially_true = cond
                        .children
                        .iter()
                        .any(|c| matches!(c.amalgamated.body, ConditionBody::True));
                    if !trivially_true {
                        return Err(Error::InvalidSolution(
                            "empty disjunction solution without a trivial disjunct".into(),
                        ));
                    }
                    Ok(Solution::Tuple(vec![Solution::Empty; cond.children.len()]))
                }
            }
        }
        ConditionBody::Not(_) => Err(Error::NotPositive(
            "solutions are defined for positive conditions only".into(),
        )),
    }
}

/// Report of the initial-satisfaction compatibility check over one
/// amalgamation diagram of constraints and hosts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InitialCompatibilityReport {
    /// Whether the amalgamated host initially satisfies the amalgamated
    /// constraint.
    pub satisfied: bool,
    pub total: Option<Solution>,
    pub left: Option<Solution>,
    pub right: Option<Solution>,
    pub interface: Option<Solution>,
    /// Restriction direction: every decomposed solution verifies against
    /// its side constraint and host.
    pub decomposition_verified: bool,
    /// Composition direction: the recomposed solution verifies against the
    /// amalgamated constraint and host.
    pub composition_verified: bool,
    /// The recomposed solution equals the original one.
    pub recomposition_exact: bool,
}

impl InitialCompatibilityReport {
    /// True iff every exercised direction succeeded.
    pub fn holds(&self) -> bool {
        !self.satisfied
            || (self.decomposition_verified && self.composition_verified && self.recomposition_exact)
    }
}

/// Checks compatibility of initial satisfaction with amalgamation on one
/// concrete diagram: constraints over initial roots, hosts amalgamated.
///
/// Decomposition direction: a solution for the amalgamated side restricts
/// to verified solutions for all three corners. Composition direction: the
/// restricted solutions recompose to a verified solution equal to the
/// original.
pub fn check_initial_compatibility(
    cond: &ConditionAmalgamation,
    hosts: &ObjectAmalgamation,
) -> Result<InitialCompatibilityReport> {
    for side in [
        &cond.amalgamated,
        &cond.left,
        &cond.right,
        &cond.interface,
    ] {
        if !side.root.graph().is_empty() {
            return Err(Error::RootNotInitial);
        }
        side.ensure_positive()?;
    }

    let total_solution = crate::satisfaction::initially_satisfies(&hosts.result, &cond.amalgamated)?;
    let Some(total_solution) = total_solution else {
        return Ok(InitialCompatibilityReport {
            satisfied: false,
            total: None,
            left: None,
            right: None,
            interface: None,
            decomposition_verified: false,
            composition_verified: false,
            recomposition_exact: false,
        });
    };

    let (left_sol, right_sol, int_sol) = decompose_solution(cond, hosts, &total_solution)?;
    let decomposition_verified = [
        (&cond.left, &hosts.left, &left_sol),
        (&cond.right, &hosts.right, &right_sol),
        (&cond.interface, &hosts.interface, &int_sol),
    ]
    .into_iter()
    .all(|(c, h, s)| verify_solution(&initial_morphism(h.graph()), c, h, s));

    let recomposed = amalgamate_solutions(cond, hosts, &left_sol, &right_sol, &int_sol)?;
    let composition_verified = verify_solution(
        &initial_morphism(hosts.result.graph()),
        &cond.amalgamated,
        &hosts.result,
        &recomposed,
    );
    let recomposition_exact = recomposed == total_solution;

    Ok(InitialCompatibilityReport {
        satisfied: true,
        total: Some(total_solution),
        left: Some(left_sol),
        right: Some(right_sol),
        interface: Some(int_sol),
        decomposition_verified,
        composition_verified,
        recomposition_exact,
    })
}

/// Restriction direction of the compatibility corollary for a single type
/// morphism: restrict a constraint, a host and a solution along `t` and
/// verify the restricted solution.
pub fn restrict_initial_solution(
    cond: &NestedCondition,
    restriction: &ConditionRestriction,
    host: &Restriction,
    solution: &Solution,
) -> Result<(Solution, bool)> {
    let restricted = restrict_solution(cond, restriction, host, solution)?;
    let ok = verify_solution(
        &initial_morphism(host.restricted.graph()),
        &restriction.condition,
        &host.restricted,
        &restricted,
    );
    Ok((restricted, ok))
}

/// Convenience wrapper for tests and the law harness: find a solution and
/// fail loudly if the construction was expected to produce one.
pub fn must_solve(
    p: &GraphMorphism,
    cond: &NestedCondition,
    host: &TypedGraph,
) -> Result<Solution> {
    find_solution(p, cond, host)?.ok_or_else(|| {
        Error::InvalidSolution("expected the instance to be satisfiable".into())
    })
}
