//! Verification kernel for nested graph conditions over finite typed
//! graphs.
//!
//! The carrier category is finite directed labeled multigraphs with
//! label-preserving morphisms; the distinguished class of monomorphisms is
//! the injective morphisms. On top of that the crate provides:
//!
//! * pullbacks and pushouts along injective legs, universal-property and
//!   effective-pushout checks, a van Kampen cube checker ([`limits`], [`vk`]);
//! * typed graphs with restriction along type morphisms, and agreement /
//!   amalgamation / decomposition over a pushout square of type graphs
//!   ([`typed`]);
//! * nested conditions with positivity, restriction and amalgamation
//!   ([`condition`], [`condition_amalgamation`]);
//! * injective-match enumeration, satisfaction, solution trees, and
//!   restriction / amalgamation of solutions ([`satisfaction`],
//!   [`solution_amalgamation`]).
//!
//! Everything is immutable and deterministic: ids are opaque strings,
//! iteration is in id order, and searches try candidates lexicographically.

pub mod condition;
pub mod condition_amalgamation;
pub mod error;
pub mod graph;
pub mod limits;
pub mod matcher;
pub mod morphism;
pub mod satisfaction;
pub mod solution_amalgamation;
pub mod typed;
pub mod vk;

pub use condition::{
    restrict_condition, ConditionBody, ConditionIssue, ConditionRestriction, NestedCondition,
};
pub use condition_amalgamation::{
    amalgamate_conditions, amalgamate_conditions_with, condition_amalgamation_from_decomposition,
    conditions_agree, conditions_isomorphic, decompose_condition, find_condition_agreement,
    ConditionAgreement, ConditionAmalgamation, ConditionDecomposition,
};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, Graph, GraphIssue, Label, NodeId};
pub use limits::{
    induced_from_jointly_epic, induced_pushout_morphism, initial_graph, initial_morphism,
    is_effective_pushout, is_square, pullback, pushout, CommutativeSquare, PullbackSpan,
    PushoutCospan, SquareKind,
};
pub use matcher::{enumerate_monomorphisms, find_isomorphism};
pub use morphism::{
    compose, factor_through_injection, is_jointly_epic, GraphMorphism, MorphismIssue,
};
pub use satisfaction::{
    enumerate_extensions, enumerate_injective_morphisms, find_solution, generally_satisfies,
    initially_satisfies, initially_satisfies_bool, satisfies, verify_solution, Solution,
};
pub use solution_amalgamation::{
    amalgamate_matches, amalgamate_solutions, check_initial_compatibility, decompose_solution,
    must_solve, restrict_initial_solution, restrict_match, restrict_match_side, restrict_solution,
    restrict_solution_side, solutions_agree, AmalgSide, InitialCompatibilityReport,
};
pub use typed::{
    amalgamate_typed_graphs, amalgamate_with_witness, amalgamation_from_decomposition,
    decompose_typed_graph, enumerate_typed_isomorphisms, find_agreement, find_typed_isomorphism,
    is_restriction, restrict_morphism, restrict_typed_graph, typed_graphs_agree, typed_isomorphic,
    AgreementWitness, AmalgamationContext, ObjectAmalgamation, ObjectDecomposition, Restriction,
    TypedGraph,
};
pub use vk::{check_vk_cube, VkCube, VkMode, VkReport};
