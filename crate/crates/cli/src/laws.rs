//! Seeded law campaigns: generate premise-satisfying instances, check one
//! law per case, and serialize any failures as re-runnable workspace
//! documents.

use std::fmt;
use std::time::{Duration, Instant};

use amalgam_core::{
    amalgamate_conditions, amalgamate_conditions_with, amalgamate_matches, amalgamate_solutions,
    amalgamate_typed_graphs, amalgamate_with_witness, amalgamation_from_decomposition,
    check_initial_compatibility, check_vk_cube, condition_amalgamation_from_decomposition,
    conditions_isomorphic, decompose_condition, decompose_solution, decompose_typed_graph,
    generally_satisfies, initially_satisfies, is_effective_pushout, restrict_condition,
    restrict_initial_solution, restrict_match, restrict_match_side, restrict_solution,
    restrict_typed_graph, typed_isomorphic, verify_solution, AmalgSide, AmalgamationContext,
    CommutativeSquare, GraphMorphism, NestedCondition, Solution, TypedGraph, VkCube, VkMode,
};
use rand::Rng as _;

use crate::document::{Document, DocumentBuilder};
use crate::error::CliError;
use crate::fixtures;
use crate::generate::{
    case_rng, gen_graph, gen_positive_condition, gen_satisfiable, gen_subgraph, gen_type_square,
    gen_typed, gen_vk_cube, grow_typed_model, Bounds,
};
use crate::workspace::Workspace;

/// The checkable laws.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LawId {
    /// Restricting a solution yields a solution for the restricted
    /// condition and match.
    Fact35,
    /// Typed graphs amalgamate and decompose, uniquely up to isomorphism.
    Fact42,
    /// Positive conditions amalgamate and decompose, uniquely up to
    /// isomorphism.
    Fact45,
    /// Solutions amalgamate and decompose along an amalgamation of
    /// conditions, matches and hosts.
    Thm48,
    /// Initial satisfaction is compatible with amalgamation.
    Thm51,
    /// Initial satisfaction is compatible with restriction.
    Cor52,
    /// Pushouts of pullback spans of injective cospans embed injectively.
    EffectivePo,
    /// Premise-satisfying cubes satisfy the van Kampen equivalence.
    VkCube,
    /// The shipped negative fixture: universal satisfaction survives on
    /// the total host and fails on the restricted one.
    Counterexample54,
}

pub const ALL_LAWS: [LawId; 9] = [
    LawId::Fact35,
    LawId::Fact42,
    LawId::Fact45,
    LawId::Thm48,
    LawId::Thm51,
    LawId::Cor52,
    LawId::EffectivePo,
    LawId::VkCube,
    LawId::Counterexample54,
];

impl LawId {
    pub fn as_str(&self) -> &'static str {
        match self {
            LawId::Fact35 => "fact-3.5",
            LawId::Fact42 => "fact-4.2",
            LawId::Fact45 => "fact-4.5",
            LawId::Thm48 => "thm-4.8",
            LawId::Thm51 => "thm-5.1",
            LawId::Cor52 => "cor-5.2",
            LawId::EffectivePo => "effective-po",
            LawId::VkCube => "vk-cube",
            LawId::Counterexample54 => "counterexample-5.4",
        }
    }

    pub fn parse(s: &str) -> Option<LawId> {
        ALL_LAWS.iter().copied().find(|l| l.as_str() == s)
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LawConfig {
    pub cases: usize,
    pub seed: u64,
    pub bounds: Bounds,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            cases: 200,
            seed: 42,
            bounds: Bounds::default(),
        }
    }
}

pub struct LawFailure {
    pub case_index: usize,
    pub message: String,
    pub instance: Document,
}

pub struct LawReport {
    pub law: LawId,
    pub cases_run: usize,
    pub failures: Vec<LawFailure>,
    pub wall_time: Duration,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "law {}: {} cases, {} failures, {:.3}s",
            self.law,
            self.cases_run,
            self.failures.len(),
            self.wall_time.as_secs_f64()
        )
    }
}

/// One generated case, kept so failures can be serialized and replayed.
#[allow(clippy::large_enum_variant)]
pub enum CaseData {
    SingleRestriction {
        t: GraphMorphism,
        condition: NestedCondition,
        host: TypedGraph,
        match_: GraphMorphism,
        solution: Solution,
    },
    ObjectSquare {
        ctx: AmalgamationContext,
        total: TypedGraph,
    },
    ConditionSquare {
        ctx: AmalgamationContext,
        total: NestedCondition,
    },
    SolutionSquare {
        ctx: AmalgamationContext,
        condition: NestedCondition,
        host: TypedGraph,
        match_: GraphMorphism,
        solution: Solution,
    },
    InitialSquare {
        ctx: AmalgamationContext,
        constraint: NestedCondition,
        host: TypedGraph,
    },
    InitialRestriction {
        t: GraphMorphism,
        constraint: NestedCondition,
        host: TypedGraph,
    },
    Cospan {
        left: GraphMorphism,
        right: GraphMorphism,
    },
    Cube {
        cube: VkCube,
    },
    Fixture,
}

impl CaseData {
    pub fn to_document(&self, law: LawId, seed: u64, case: usize) -> Document {
        let mut b = DocumentBuilder::new();
        b.meta("law", law.as_str());
        b.meta("case", case);
        b.seed(seed);
        match self {
            CaseData::SingleRestriction {
                t,
                condition,
                host,
                match_,
                solution,
            } => {
                b.add_morphism_as("t", t);
                let cond = b.add_condition("condition", condition);
                let host_name = b.add_typed_graph("host", host);
                let match_name = b.add_morphism("match", match_);
                b.add_solution("solution", &cond, &host_name, &match_name, solution);
            }
            CaseData::ObjectSquare { ctx, total } => {
                b.add_context("square", ctx);
                b.add_typed_graph("total", total);
            }
            CaseData::ConditionSquare { ctx, total } => {
                b.add_context("square", ctx);
                b.add_condition("condition", total);
            }
            CaseData::SolutionSquare {
                ctx,
                condition,
                host,
                match_,
                solution,
            } => {
                b.add_context("square", ctx);
                let cond = b.add_condition("condition", condition);
                let host_name = b.add_typed_graph("host", host);
                let match_name = b.add_morphism("match", match_);
                b.add_solution("solution", &cond, &host_name, &match_name, solution);
            }
            CaseData::InitialSquare {
                ctx,
                constraint,
                host,
            } => {
                b.add_context("square", ctx);
                b.add_condition("condition", constraint);
                b.add_typed_graph("host", host);
            }
            CaseData::InitialRestriction {
                t,
                constraint,
                host,
            } => {
                b.add_morphism_as("t", t);
                b.add_condition("condition", constraint);
                b.add_typed_graph("host", host);
            }
            CaseData::Cospan { left, right } => {
                b.add_morphism_as("left", left);
                b.add_morphism_as("right", right);
            }
            CaseData::Cube { cube } => {
                b.add_morphism_as("bottom_f", &cube.bottom.f);
                b.add_morphism_as("bottom_g", &cube.bottom.g);
                b.add_morphism_as("bottom_h", &cube.bottom.h);
                b.add_morphism_as("bottom_k", &cube.bottom.k);
                b.add_morphism_as("top_f", &cube.top.f);
                b.add_morphism_as("top_g", &cube.top.g);
                b.add_morphism_as("top_h", &cube.top.h);
                b.add_morphism_as("top_k", &cube.top.k);
                b.add_morphism_as("vert_a", &cube.vert_a);
                b.add_morphism_as("vert_b", &cube.vert_b);
                b.add_morphism_as("vert_c", &cube.vert_c);
                b.add_morphism_as("vert_d", &cube.vert_d);
                b.meta(
                    "mode",
                    match cube.mode {
                        VkMode::Vertical => "vertical",
                        VkMode::Horizontal => "horizontal",
                    },
                );
            }
            CaseData::Fixture => {
                b.meta("fixture", "fig5");
            }
        }
        b.finish()
    }
}

/// Generates the instance for one case of a law.
pub fn generate_case(law: LawId, seed: u64, case: usize, bounds: &Bounds) -> Result<CaseData, CliError> {
    let mut rng = case_rng(seed, case as u64);
    match law {
        LawId::Fact35 => {
            let (tg, t) = gen_type_with_subtype(&mut rng, bounds)?;
            let inst = gen_satisfiable(&mut rng, &tg, bounds)?;
            let solution = amalgam_core::must_solve(&inst.match_, &inst.condition, &inst.host)?;
            Ok(CaseData::SingleRestriction {
                t,
                condition: inst.condition,
                host: inst.host,
                match_: inst.match_,
                solution,
            })
        }
        LawId::Fact42 => {
            let ctx = gen_type_square(&mut rng, bounds);
            let total = gen_typed(&mut rng, ctx.total(), bounds);
            Ok(CaseData::ObjectSquare { ctx, total })
        }
        LawId::Fact45 => {
            let ctx = gen_type_square(&mut rng, bounds);
            let root = gen_typed(
                &mut rng,
                ctx.total(),
                &Bounds {
                    max_nodes: 2,
                    max_edges: 1,
                    ..*bounds
                },
            );
            let total = gen_positive_condition(&mut rng, &root, bounds.depth.min(3));
            Ok(CaseData::ConditionSquare { ctx, total })
        }
        LawId::Thm48 => {
            let ctx = gen_type_square(&mut rng, bounds);
            let inst = gen_satisfiable(&mut rng, ctx.total(), bounds)?;
            let solution = amalgam_core::must_solve(&inst.match_, &inst.condition, &inst.host)?;
            Ok(CaseData::SolutionSquare {
                ctx,
                condition: inst.condition,
                host: inst.host,
                match_: inst.match_,
                solution,
            })
        }
        LawId::Thm51 => {
            let ctx = gen_type_square(&mut rng, bounds);
            let (constraint, host) = gen_initial_instance(&mut rng, ctx.total(), bounds)?;
            Ok(CaseData::InitialSquare {
                ctx,
                constraint,
                host,
            })
        }
        LawId::Cor52 => {
            let (tg, t) = gen_type_with_subtype(&mut rng, bounds)?;
            let (constraint, host) = gen_initial_instance(&mut rng, &tg, bounds)?;
            Ok(CaseData::InitialRestriction {
                t,
                constraint,
                host,
            })
        }
        LawId::EffectivePo => {
            let host = gen_graph(&mut rng, bounds);
            let left = gen_subgraph(&mut rng, &host);
            let right = gen_subgraph(&mut rng, &host);
            Ok(CaseData::Cospan { left, right })
        }
        LawId::VkCube => {
            let mode = if case.is_multiple_of(2) {
                VkMode::Vertical
            } else {
                VkMode::Horizontal
            };
            for _ in 0..bounds.retry_budget {
                if let Some(cube) = gen_vk_cube(&mut rng, mode, bounds) {
                    if let Ok(report) = check_vk_cube(&cube) {
                        if report.premises_ok {
                            return Ok(CaseData::Cube { cube });
                        }
                    }
                }
            }
            Err(CliError::GeneratorExhausted(
                "no premise-satisfying cube within the retry budget".into(),
            ))
        }
        LawId::Counterexample54 => Ok(CaseData::Fixture),
    }
}

/// A random nonempty type graph with a random proper-or-improper subtype
/// inclusion.
fn gen_type_with_subtype(
    rng: &mut rand_chacha::ChaCha8Rng,
    bounds: &Bounds,
) -> Result<(amalgam_core::Graph, GraphMorphism), CliError> {
    let small = Bounds {
        max_nodes: 2,
        max_edges: 3,
        ..*bounds
    };
    for _ in 0..bounds.retry_budget {
        let mut tg = gen_graph(rng, &small);
        if tg.node_count() == 0 {
            tg.add_node("n0");
        }
        let t = gen_subgraph(rng, &tg);
        if t.dom().node_count() > 0 || rng.random_bool(0.3) {
            return Ok((tg, t));
        }
    }
    Err(CliError::GeneratorExhausted(
        "no usable subtype within the retry budget".into(),
    ))
}

/// A positive constraint over the initial root plus a host grown to
/// initially satisfy it.
fn gen_initial_instance(
    rng: &mut rand_chacha::ChaCha8Rng,
    tg: &amalgam_core::Graph,
    bounds: &Bounds,
) -> Result<(NestedCondition, TypedGraph), CliError> {
    let empty_root = TypedGraph::new(GraphMorphism::new(
        amalgam_core::Graph::new(),
        tg.clone(),
        Default::default(),
        Default::default(),
    )?)?;
    for _ in 0..bounds.retry_budget {
        let constraint = gen_positive_condition(rng, &empty_root, bounds.depth.min(3));
        let (_, _, typing) = grow_typed_model(
            &constraint,
            &GraphMorphism::identity(empty_root.graph()),
            empty_root.typing(),
        );
        let host = TypedGraph::new(typing)?;
        if initially_satisfies(&host, &constraint)?.is_some() {
            return Ok((constraint, host));
        }
    }
    Err(CliError::GeneratorExhausted(
        "no initially-satisfying instance within the retry budget".into(),
    ))
}

/// Checks one case. `Ok(())` means the law held.
pub fn check_case(data: &CaseData) -> Result<(), String> {
    match data {
        CaseData::SingleRestriction {
            t,
            condition,
            host,
            match_,
            solution,
        } => {
            let cond_restr =
                restrict_condition(condition, t).map_err(|e| format!("restrict condition: {e}"))?;
            let host_restr =
                restrict_typed_graph(host, t).map_err(|e| format!("restrict host: {e}"))?;
            let match_restr = restrict_match(match_, &cond_restr.root_restriction(), &host_restr)
                .map_err(|e| format!("restrict match: {e}"))?;
            let sol_restr = restrict_solution(condition, &cond_restr, &host_restr, solution)
                .map_err(|e| format!("restrict solution: {e}"))?;
            if !verify_solution(
                &match_restr,
                &cond_restr.condition,
                &host_restr.restricted,
                &sol_restr,
            ) {
                return Err("restricted solution failed verification".into());
            }
            Ok(())
        }
        CaseData::ObjectSquare { ctx, total } => {
            let decomp =
                decompose_typed_graph(ctx, total).map_err(|e| format!("decompose: {e}"))?;
            let rebuilt = amalgamate_with_witness(
                ctx,
                &decomp.left.restricted,
                &decomp.right.restricted,
                &decomp.interface.restricted,
                decomp.witness.clone(),
            )
            .map_err(|e| format!("recompose: {e}"))?;
            rebuilt
                .verify(ctx)
                .map_err(|e| format!("rebuilt amalgamation invalid: {e}"))?;
            if !typed_isomorphic(&rebuilt.result, total) {
                return Err("recomposition is not isomorphic to the original".into());
            }
            let viewed = amalgamation_from_decomposition(total, &decomp);
            viewed
                .verify(ctx)
                .map_err(|e| format!("original is not its own amalgamation: {e}"))?;

            let plain = amalgamate_typed_graphs(
                ctx,
                &decomp.left.restricted,
                &decomp.right.restricted,
                &decomp.interface.restricted,
            )
            .map_err(|e| format!("amalgamate: {e}"))?;
            let again =
                decompose_typed_graph(ctx, &plain.result).map_err(|e| format!("decompose: {e}"))?;
            for (name, a, b) in [
                ("left", &again.left.restricted, &decomp.left.restricted),
                ("right", &again.right.restricted, &decomp.right.restricted),
                (
                    "interface",
                    &again.interface.restricted,
                    &decomp.interface.restricted,
                ),
            ] {
                if !typed_isomorphic(a, b) {
                    return Err(format!("{name} restriction is not recovered up to iso"));
                }
            }
            Ok(())
        }
        CaseData::ConditionSquare { ctx, total } => {
            let decomp = decompose_condition(ctx, total).map_err(|e| format!("decompose: {e}"))?;
            let rebuilt = amalgamate_conditions_with(
                ctx,
                &decomp.left.condition,
                &decomp.right.condition,
                &decomp.interface.condition,
                &decomp.witness,
            )
            .map_err(|e| format!("recompose: {e}"))?;
            if !conditions_isomorphic(&rebuilt.amalgamated, total) {
                return Err("recomposed condition is not isomorphic to the original".into());
            }
            let plain = amalgamate_conditions(
                ctx,
                &decomp.left.condition,
                &decomp.right.condition,
                &decomp.interface.condition,
            )
            .map_err(|e| format!("amalgamate: {e}"))?;
            let again = decompose_condition(ctx, &plain.amalgamated)
                .map_err(|e| format!("decompose: {e}"))?;
            for (name, a, b) in [
                ("left", &again.left.condition, &decomp.left.condition),
                ("right", &again.right.condition, &decomp.right.condition),
                (
                    "interface",
                    &again.interface.condition,
                    &decomp.interface.condition,
                ),
            ] {
                if !conditions_isomorphic(a, b) {
                    return Err(format!("{name} condition is not recovered up to iso"));
                }
            }
            Ok(())
        }
        CaseData::SolutionSquare {
            ctx,
            condition,
            host,
            match_,
            solution,
        } => {
            let cd = decompose_condition(ctx, condition).map_err(|e| format!("decompose: {e}"))?;
            let ca = condition_amalgamation_from_decomposition(condition, &cd)
                .map_err(|e| format!("amalgamation view: {e}"))?;
            let od = decompose_typed_graph(ctx, host).map_err(|e| format!("decompose host: {e}"))?;
            let hosts = amalgamation_from_decomposition(host, &od);

            let (left_sol, right_sol, int_sol) =
                decompose_solution(&ca, &hosts, solution).map_err(|e| format!("decompose solution: {e}"))?;
            let sides = [
                (AmalgSide::Left, &cd.left, &od.left, &left_sol),
                (AmalgSide::Right, &cd.right, &od.right, &right_sol),
                (AmalgSide::Interface, &cd.interface, &od.interface, &int_sol),
            ];
            let mut side_matches = Vec::new();
            for (side, cond_restr, host_restr, sol) in sides {
                let p = restrict_match_side(&ca, &hosts, side, match_)
                    .map_err(|e| format!("restrict match: {e}"))?;
                if !verify_solution(&p, &cond_restr.condition, &host_restr.restricted, sol) {
                    return Err(format!("{side:?} solution failed verification"));
                }
                side_matches.push(p);
            }

            // exact recomposition over the original-as-amalgamation view
            let recomposed = amalgamate_solutions(&ca, &hosts, &left_sol, &right_sol, &int_sol)
                .map_err(|e| format!("amalgamate solutions: {e}"))?;
            if &recomposed != solution {
                return Err("recomposed solution differs from the original".into());
            }

            // the rebuilt amalgamation verifies the recomposed solution too
            let rebuilt_cond = amalgamate_conditions_with(
                ctx,
                &cd.left.condition,
                &cd.right.condition,
                &cd.interface.condition,
                &cd.witness,
            )
            .map_err(|e| format!("recompose condition: {e}"))?;
            let rebuilt_hosts = amalgamate_with_witness(
                ctx,
                &od.left.restricted,
                &od.right.restricted,
                &od.interface.restricted,
                od.witness.clone(),
            )
            .map_err(|e| format!("recompose host: {e}"))?;
            let rebuilt_sol = amalgamate_solutions(
                &rebuilt_cond,
                &rebuilt_hosts,
                &left_sol,
                &right_sol,
                &int_sol,
            )
            .map_err(|e| format!("amalgamate solutions (rebuilt): {e}"))?;
            let rebuilt_match = amalgamate_matches(
                &rebuilt_cond,
                &rebuilt_hosts,
                &side_matches[0],
                &side_matches[1],
            )
            .map_err(|e| format!("amalgamate matches: {e}"))?;
            if !verify_solution(
                &rebuilt_match,
                &rebuilt_cond.amalgamated,
                &rebuilt_hosts.result,
                &rebuilt_sol,
            ) {
                return Err("rebuilt solution failed verification".into());
            }
            Ok(())
        }
        CaseData::InitialSquare {
            ctx,
            constraint,
            host,
        } => {
            let cd = decompose_condition(ctx, constraint).map_err(|e| format!("decompose: {e}"))?;
            let ca = condition_amalgamation_from_decomposition(constraint, &cd)
                .map_err(|e| format!("amalgamation view: {e}"))?;
            let od = decompose_typed_graph(ctx, host).map_err(|e| format!("decompose host: {e}"))?;
            let hosts = amalgamation_from_decomposition(host, &od);
            let report = check_initial_compatibility(&ca, &hosts)
                .map_err(|e| format!("compatibility check: {e}"))?;
            if !report.satisfied {
                return Err("generated instance is not initially satisfied".into());
            }
            if !report.holds() {
                return Err(format!(
                    "compatibility failed: decomposition={} composition={} exact={}",
                    report.decomposition_verified,
                    report.composition_verified,
                    report.recomposition_exact
                ));
            }
            Ok(())
        }
        CaseData::InitialRestriction {
            t,
            constraint,
            host,
        } => {
            let solution = initially_satisfies(host, constraint)
                .map_err(|e| format!("initial satisfaction: {e}"))?
                .ok_or("generated instance is not initially satisfied")?;
            let cond_restr =
                restrict_condition(constraint, t).map_err(|e| format!("restrict condition: {e}"))?;
            let host_restr =
                restrict_typed_graph(host, t).map_err(|e| format!("restrict host: {e}"))?;
            let (_, ok) = restrict_initial_solution(constraint, &cond_restr, &host_restr, &solution)
                .map_err(|e| format!("restrict solution: {e}"))?;
            if !ok {
                return Err("restricted initial solution failed verification".into());
            }
            if initially_satisfies(&host_restr.restricted, &cond_restr.condition)
                .map_err(|e| format!("restricted satisfaction: {e}"))?
                .is_none()
            {
                return Err("restricted host does not initially satisfy the restricted constraint".into());
            }
            Ok(())
        }
        CaseData::Cospan { left, right } => {
            match is_effective_pushout(left, right) {
                Ok(true) => Ok(()),
                Ok(false) => Err("pushout comparison morphism is not injective".into()),
                Err(e) => Err(format!("effective-pushout check: {e}")),
            }
        }
        CaseData::Cube { cube } => {
            let report = check_vk_cube(cube).map_err(|e| format!("cube check: {e}"))?;
            if !report.premises_ok {
                return Err("cube premises are not satisfied".into());
            }
            if !report.vk_holds {
                return Err(format!(
                    "vk equivalence failed: top_pushout={} fronts_pullbacks={}",
                    report.top_is_pushout, report.fronts_are_pullbacks
                ));
            }
            Ok(())
        }
        CaseData::Fixture => {
            let f = fixtures::fig5();
            let total_ok = generally_satisfies(&f.host, &f.condition)
                .map_err(|e| format!("total side: {e}"))?;
            if !total_ok {
                return Err("total host does not universally satisfy the condition".into());
            }
            let t = &f.context.left_to_total;
            let cond_restr =
                restrict_condition(&f.condition, t).map_err(|e| format!("restrict: {e}"))?;
            let host_restr =
                restrict_typed_graph(&f.host, t).map_err(|e| format!("restrict host: {e}"))?;
            let restricted_ok =
                generally_satisfies(&host_restr.restricted, &cond_restr.condition)
                    .map_err(|e| format!("restricted side: {e}"))?;
            if restricted_ok {
                return Err(
                    "restricted host unexpectedly satisfies the restricted condition".into(),
                );
            }
            Ok(())
        }
    }
}

/// Runs a law campaign: `cases` seeded instances, one check each.
pub fn run_law(law: LawId, config: &LawConfig) -> Result<LawReport, CliError> {
    let start = Instant::now();
    let cases = if law == LawId::Counterexample54 {
        config.cases.min(1)
    } else {
        config.cases
    };
    let mut failures = Vec::new();
    for case in 0..cases {
        let data = generate_case(law, config.seed, case, &config.bounds)?;
        if let Err(message) = check_case(&data) {
            failures.push(LawFailure {
                case_index: case,
                message,
                instance: data.to_document(law, config.seed, case),
            });
        }
    }
    Ok(LawReport {
        law,
        cases_run: cases,
        failures,
        wall_time: start.elapsed(),
    })
}

/// Rebuilds the case data of a serialized failure instance and re-checks
/// it.
pub fn replay(ws: &Workspace) -> Result<(), CliError> {
    let law = ws
        .meta
        .get("law")
        .and_then(|s| LawId::parse(s))
        .ok_or_else(|| CliError::Usage("replay document lacks a law annotation".into()))?;
    let data = case_from_workspace(law, ws)?;
    check_case(&data).map_err(CliError::Validation)
}

fn need<'a, T>(
    map: &'a std::collections::BTreeMap<String, T>,
    kind: &str,
    name: &str,
) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::DanglingReference(format!("{kind} {name:?} is required")))
}

fn case_from_workspace(law: LawId, ws: &Workspace) -> Result<CaseData, CliError> {
    let ctx = |name: &str| need(&ws.contexts, "context", name).cloned();
    let solution_parts = |name: &str| -> Result<(NestedCondition, TypedGraph, GraphMorphism, Solution), CliError> {
        let entry = need(&ws.solutions, "solution", name)?;
        Ok((
            need(&ws.conditions, "condition", &entry.condition)?.clone(),
            need(&ws.typed_graphs, "typed graph", &entry.host)?.clone(),
            need(&ws.morphisms, "morphism", &entry.match_name)?.clone(),
            entry.solution.clone(),
        ))
    };
    Ok(match law {
        LawId::Fact35 => {
            let (condition, host, match_, solution) = solution_parts("solution")?;
            CaseData::SingleRestriction {
                t: need(&ws.morphisms, "morphism", "t")?.clone(),
                condition,
                host,
                match_,
                solution,
            }
        }
        LawId::Fact42 => CaseData::ObjectSquare {
            ctx: ctx("square")?,
            total: need(&ws.typed_graphs, "typed graph", "total")?.clone(),
        },
        LawId::Fact45 => CaseData::ConditionSquare {
            ctx: ctx("square")?,
            total: need(&ws.conditions, "condition", "condition")?.clone(),
        },
        LawId::Thm48 => {
            let (condition, host, match_, solution) = solution_parts("solution")?;
            CaseData::SolutionSquare {
                ctx: ctx("square")?,
                condition,
                host,
                match_,
                solution,
            }
        }
        LawId::Thm51 => CaseData::InitialSquare {
            ctx: ctx("square")?,
            constraint: need(&ws.conditions, "condition", "condition")?.clone(),
            host: need(&ws.typed_graphs, "typed graph", "host")?.clone(),
        },
        LawId::Cor52 => CaseData::InitialRestriction {
            t: need(&ws.morphisms, "morphism", "t")?.clone(),
            constraint: need(&ws.conditions, "condition", "condition")?.clone(),
            host: need(&ws.typed_graphs, "typed graph", "host")?.clone(),
        },
        LawId::EffectivePo => CaseData::Cospan {
            left: need(&ws.morphisms, "morphism", "left")?.clone(),
            right: need(&ws.morphisms, "morphism", "right")?.clone(),
        },
        LawId::VkCube => {
            let m = |name: &str| need(&ws.morphisms, "morphism", name).cloned();
            let mode = match ws.meta.get("mode").map(|s| s.as_str()) {
                Some("horizontal") => VkMode::Horizontal,
                _ => VkMode::Vertical,
            };
            CaseData::Cube {
                cube: VkCube {
                    bottom: CommutativeSquare::new(
                        m("bottom_f")?,
                        m("bottom_g")?,
                        m("bottom_h")?,
                        m("bottom_k")?,
                    )?,
                    top: CommutativeSquare::new(m("top_f")?, m("top_g")?, m("top_h")?, m("top_k")?)?,
                    vert_a: m("vert_a")?,
                    vert_b: m("vert_b")?,
                    vert_c: m("vert_c")?,
                    vert_d: m("vert_d")?,
                    mode,
                },
            }
        }
        LawId::Counterexample54 => CaseData::Fixture,
    })
}
