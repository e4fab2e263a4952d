//! The `amalgam` command-line tool.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use amalgam_cli::document::DocumentBuilder;
use amalgam_cli::error::CliError;
use amalgam_cli::generate::Bounds;
use amalgam_cli::laws::{run_law, LawConfig, LawId, ALL_LAWS};
use amalgam_cli::workspace::Workspace;
use amalgam_cli::{fixtures, laws};
use amalgam_core::{
    amalgamate_conditions, amalgamate_matches, amalgamate_solutions, amalgamate_typed_graphs,
    conditions_isomorphic, decompose_condition, decompose_solution, decompose_typed_graph,
    find_solution, generally_satisfies, initially_satisfies, initially_satisfies_bool,
    restrict_condition, restrict_match, restrict_solution, restrict_typed_graph, satisfies,
    typed_isomorphic, verify_solution, GraphMorphism, NestedCondition, Solution, TypedGraph,
};

#[derive(Parser)]
#[command(
    name = "amalgam",
    about = "Check nested graph conditions over typed graphs: satisfaction, restriction, amalgamation and law campaigns",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a workspace file and run every validator.
    Validate { file: PathBuf },
    /// Decide satisfaction of a condition in a workspace.
    Satisfy(SatisfyArgs),
    /// Restrict a typed graph, morphism, condition or solution along a
    /// type morphism.
    Restrict(RestrictArgs),
    /// Amalgamate two agreeing items over their interface.
    Amalgamate(SquareArgs),
    /// Decompose an item over the total type graph into its three
    /// restrictions.
    Decompose(DecomposeArgs),
    /// Run seeded law campaigns, or replay a saved failure instance.
    Laws(LawsArgs),
    /// Write the shipped example fixtures as workspace files.
    Fixtures {
        /// Output directory.
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SatisfyMode {
    General,
    Initial,
    Match,
}

#[derive(Args)]
struct SatisfyArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    mode: SatisfyMode,
    /// Typed graph to check (the host).
    #[arg(long)]
    graph: String,
    /// Condition name.
    #[arg(long)]
    condition: String,
    /// Match morphism name (mode = match).
    #[arg(long, name = "match")]
    match_: Option<String>,
    /// Write the verdict and any solution as a workspace file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ItemKind {
    Graph,
    Morphism,
    Condition,
    Solution,
}

#[derive(Args)]
struct RestrictArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    what: ItemKind,
    /// Name of the item to restrict.
    #[arg(long)]
    item: String,
    /// Name of the injective type morphism to restrict along.
    #[arg(long)]
    via: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SquareKindArg {
    Graph,
    Condition,
    Solution,
}

#[derive(Args)]
struct SquareArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    what: SquareKindArg,
    /// Amalgamation context (type square) name.
    #[arg(long)]
    context: String,
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    #[arg(long)]
    interface: String,
    /// Also decompose the result and assert the round trip.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    what: SquareKindArg,
    #[arg(long)]
    context: String,
    #[arg(long)]
    item: String,
    /// Also recompose the parts and assert the round trip.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LawsArgs {
    /// Law id, or "all".
    #[arg(long)]
    law: String,
    /// Cases per law.
    #[arg(long, default_value_t = 200)]
    cases: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Node bound for generated graphs.
    #[arg(long, default_value_t = 4)]
    max_nodes: usize,
    /// Nesting depth bound for generated conditions.
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Directory for failure instances.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check a saved failure instance instead of generating cases.
    #[arg(long)]
    replay: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let ws = Workspace::load(&file)?;
            println!(
                "ok: {} graphs, {} morphisms, {} typed graphs, {} contexts, {} conditions, {} solutions",
                ws.graphs.len(),
                ws.morphisms.len(),
                ws.typed_graphs.len(),
                ws.contexts.len(),
                ws.conditions.len(),
                ws.solutions.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Satisfy(args) => cmd_satisfy(args),
        Command::Restrict(args) => cmd_restrict(args),
        Command::Amalgamate(args) => cmd_amalgamate(args),
        Command::Decompose(args) => cmd_decompose(args),
        Command::Laws(args) => cmd_laws(args),
        Command::Fixtures { out } => {
            for (name, doc) in fixtures::all_documents() {
                let path = out.join(format!("{name}.json"));
                Workspace::save(&doc, &path)?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn need<'a, T>(
    map: &'a std::collections::BTreeMap<String, T>,
    kind: &str,
    name: &str,
) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::DanglingReference(format!("{kind} {name:?} is not defined")))
}

fn write_or_print(doc: &amalgam_cli::Document, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            Workspace::save(doc, path)?;
            println!("wrote {}", path.display());
        }
        None => print!("{}", doc.to_canonical_string()),
    }
    Ok(())
}

/// Outputs stay self-contained: carry the source workspace's contexts so
/// results can feed the amalgamate/decompose commands directly.
fn copy_contexts(b: &mut DocumentBuilder, ws: &Workspace) {
    for (name, ctx) in &ws.contexts {
        b.add_context(name, ctx);
    }
}

fn cmd_satisfy(args: SatisfyArgs) -> Result<ExitCode, CliError> {
    let ws = Workspace::load(&args.file)?;
    let host = need(&ws.typed_graphs, "typed graph", &args.graph)?;
    let cond = need(&ws.conditions, "condition", &args.condition)?;

    let (verdict, solution): (bool, Option<Solution>) = match args.mode {
        SatisfyMode::General => (generally_satisfies(host, cond)?, None),
        SatisfyMode::Initial => {
            if cond.is_positive() {
                let sol = initially_satisfies(host, cond)?;
                (sol.is_some(), sol)
            } else {
                (initially_satisfies_bool(host, cond)?, None)
            }
        }
        SatisfyMode::Match => {
            let match_name = args
                .match_
                .as_deref()
                .ok_or_else(|| CliError::Usage("--match is required for mode=match".into()))?;
            let p = need(&ws.morphisms, "morphism", match_name)?;
            if cond.is_positive() {
                let sol = find_solution(p, cond, host)?;
                (sol.is_some(), sol)
            } else {
                (satisfies(p, cond, host)?, None)
            }
        }
    };

    println!("{}", if verdict { "satisfied" } else { "not satisfied" });
    if let Some(sol) = &solution {
        let p = match &args.match_ {
            Some(name) => need(&ws.morphisms, "morphism", name)?.clone(),
            None => amalgam_core::initial_morphism(host.graph()),
        };
        let mut b = DocumentBuilder::new();
        copy_contexts(&mut b, &ws);
        let cond_name = b.add_condition("condition", cond);
        let host_name = b.add_typed_graph("host", host);
        let match_name = b.add_morphism_as("match", &p);
        b.add_solution("solution", &cond_name, &host_name, &match_name, sol);
        b.meta("verdict", verdict);
        write_or_print(&b.finish(), args.out.as_deref())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn find_typed_for_graph<'a>(
    ws: &'a Workspace,
    graph: &amalgam_core::Graph,
) -> Result<&'a TypedGraph, CliError> {
    ws.typed_graphs
        .values()
        .find(|tg| tg.graph() == graph)
        .ok_or_else(|| {
            CliError::Usage("no typed graph in the workspace has the morphism endpoint as carrier".into())
        })
}

fn cmd_restrict(args: RestrictArgs) -> Result<ExitCode, CliError> {
    let ws = Workspace::load(&args.file)?;
    let t = need(&ws.morphisms, "morphism", &args.via)?;
    let mut b = DocumentBuilder::new();
    copy_contexts(&mut b, &ws);
    match args.what {
        ItemKind::Graph => {
            let tg = need(&ws.typed_graphs, "typed graph", &args.item)?;
            let r = restrict_typed_graph(tg, t)?;
            b.add_typed_graph("restricted", &r.restricted);
            b.add_morphism("embedding", &r.embedding);
        }
        ItemKind::Morphism => {
            let m = need(&ws.morphisms, "morphism", &args.item)?;
            let dom = find_typed_for_graph(&ws, m.dom())?;
            let cod = find_typed_for_graph(&ws, m.cod())?;
            let dom_r = restrict_typed_graph(dom, t)?;
            let cod_r = restrict_typed_graph(cod, t)?;
            let restricted = amalgam_core::restrict_morphism(m, &dom_r, &cod_r)?;
            b.add_morphism("restricted", &restricted);
        }
        ItemKind::Condition => {
            let cond = need(&ws.conditions, "condition", &args.item)?;
            let r = restrict_condition(cond, t)?;
            b.add_condition("restricted", &r.condition);
        }
        ItemKind::Solution => {
            let entry = need(&ws.solutions, "solution", &args.item)?;
            let cond = need(&ws.conditions, "condition", &entry.condition)?;
            let host = need(&ws.typed_graphs, "typed graph", &entry.host)?;
            let p = need(&ws.morphisms, "morphism", &entry.match_name)?;
            let cond_r = restrict_condition(cond, t)?;
            let host_r = restrict_typed_graph(host, t)?;
            let p_r = restrict_match(p, &cond_r.root_restriction(), &host_r)?;
            let sol_r = restrict_solution(cond, &cond_r, &host_r, &entry.solution)?;
            if !verify_solution(&p_r, &cond_r.condition, &host_r.restricted, &sol_r) {
                return Err(CliError::Validation(
                    "restricted solution failed verification".into(),
                ));
            }
            let cond_name = b.add_condition("condition", &cond_r.condition);
            let host_name = b.add_typed_graph("host", &host_r.restricted);
            let match_name = b.add_morphism("match", &p_r);
            b.add_solution("solution", &cond_name, &host_name, &match_name, &sol_r);
        }
    }
    write_or_print(&b.finish(), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_amalgamate(args: SquareArgs) -> Result<ExitCode, CliError> {
    let ws = Workspace::load(&args.file)?;
    let ctx = need(&ws.contexts, "context", &args.context)?;
    let mut b = DocumentBuilder::new();
    copy_contexts(&mut b, &ws);
    match args.what {
        SquareKindArg::Graph => {
            let left = need(&ws.typed_graphs, "typed graph", &args.left)?;
            let right = need(&ws.typed_graphs, "typed graph", &args.right)?;
            let interface = need(&ws.typed_graphs, "typed graph", &args.interface)?;
            let am = amalgamate_typed_graphs(ctx, left, right, interface)?;
            if args.check {
                am.verify(ctx)?;
                let again = decompose_typed_graph(ctx, &am.result)?;
                for (name, a, e) in [
                    ("left", &again.left.restricted, left),
                    ("right", &again.right.restricted, right),
                    ("interface", &again.interface.restricted, interface),
                ] {
                    if !typed_isomorphic(a, e) {
                        return Err(CliError::Validation(format!(
                            "round trip failed on the {name} restriction"
                        )));
                    }
                }
            }
            b.add_typed_graph("result", &am.result);
            b.add_morphism("from_left", &am.from_left);
            b.add_morphism("from_right", &am.from_right);
            b.add_morphism("from_interface", &am.from_interface);
        }
        SquareKindArg::Condition => {
            let left = need(&ws.conditions, "condition", &args.left)?;
            let right = need(&ws.conditions, "condition", &args.right)?;
            let interface = need(&ws.conditions, "condition", &args.interface)?;
            let am = amalgamate_conditions(ctx, left, right, interface)?;
            if args.check {
                let again = decompose_condition(ctx, &am.amalgamated)?;
                for (name, a, e) in [
                    ("left", &again.left.condition, left),
                    ("right", &again.right.condition, right),
                    ("interface", &again.interface.condition, interface),
                ] {
                    if !conditions_isomorphic(a, e) {
                        return Err(CliError::Validation(format!(
                            "round trip failed on the {name} restriction"
                        )));
                    }
                }
            }
            b.add_condition("result", &am.amalgamated);
        }
        SquareKindArg::Solution => {
            let (l_cond, l_host, l_match, l_sol) = solution_quad(&ws, &args.left)?;
            let (r_cond, r_host, r_match, r_sol) = solution_quad(&ws, &args.right)?;
            let (i_cond, i_host, _i_match, i_sol) = solution_quad(&ws, &args.interface)?;
            let cond_am = amalgamate_conditions(ctx, &l_cond, &r_cond, &i_cond)?;
            let host_am = amalgamate_typed_graphs(ctx, &l_host, &r_host, &i_host)?;
            let sol = amalgamate_solutions(&cond_am, &host_am, &l_sol, &r_sol, &i_sol)?;
            let p = amalgamate_matches(&cond_am, &host_am, &l_match, &r_match)?;
            if args.check
                && !verify_solution(&p, &cond_am.amalgamated, &host_am.result, &sol)
            {
                return Err(CliError::Validation(
                    "amalgamated solution failed verification".into(),
                ));
            }
            let cond_name = b.add_condition("condition", &cond_am.amalgamated);
            let host_name = b.add_typed_graph("host", &host_am.result);
            let match_name = b.add_morphism("match", &p);
            b.add_solution("solution", &cond_name, &host_name, &match_name, &sol);
        }
    }
    write_or_print(&b.finish(), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn solution_quad(
    ws: &Workspace,
    name: &str,
) -> Result<(NestedCondition, TypedGraph, GraphMorphism, Solution), CliError> {
    let entry = need(&ws.solutions, "solution", name)?;
    Ok((
        need(&ws.conditions, "condition", &entry.condition)?.clone(),
        need(&ws.typed_graphs, "typed graph", &entry.host)?.clone(),
        need(&ws.morphisms, "morphism", &entry.match_name)?.clone(),
        entry.solution.clone(),
    ))
}

fn cmd_decompose(args: DecomposeArgs) -> Result<ExitCode, CliError> {
    let ws = Workspace::load(&args.file)?;
    let ctx = need(&ws.contexts, "context", &args.context)?;
    let mut b = DocumentBuilder::new();
    copy_contexts(&mut b, &ws);
    match args.what {
        SquareKindArg::Graph => {
            let total = need(&ws.typed_graphs, "typed graph", &args.item)?;
            let d = decompose_typed_graph(ctx, total)?;
            if args.check {
                let rebuilt = amalgam_core::amalgamate_with_witness(
                    ctx,
                    &d.left.restricted,
                    &d.right.restricted,
                    &d.interface.restricted,
                    d.witness.clone(),
                )?;
                if !typed_isomorphic(&rebuilt.result, total) {
                    return Err(CliError::Validation("round trip failed".into()));
                }
            }
            b.add_typed_graph("left", &d.left.restricted);
            b.add_typed_graph("right", &d.right.restricted);
            b.add_typed_graph("interface", &d.interface.restricted);
        }
        SquareKindArg::Condition => {
            let total = need(&ws.conditions, "condition", &args.item)?;
            let d = decompose_condition(ctx, total)?;
            if args.check {
                let rebuilt = amalgam_core::amalgamate_conditions_with(
                    ctx,
                    &d.left.condition,
                    &d.right.condition,
                    &d.interface.condition,
                    &d.witness,
                )?;
                if !conditions_isomorphic(&rebuilt.amalgamated, total) {
                    return Err(CliError::Validation("round trip failed".into()));
                }
            }
            b.add_condition("left", &d.left.condition);
            b.add_condition("right", &d.right.condition);
            b.add_condition("interface", &d.interface.condition);
        }
        SquareKindArg::Solution => {
            let (cond, host, p, sol) = solution_quad(&ws, &args.item)?;
            let cd = decompose_condition(ctx, &cond)?;
            let ca = amalgam_core::condition_amalgamation_from_decomposition(&cond, &cd)?;
            let od = decompose_typed_graph(ctx, &host)?;
            let hosts = amalgam_core::amalgamation_from_decomposition(&host, &od);
            let (l, r, i) = decompose_solution(&ca, &hosts, &sol)?;
            if args.check {
                let recomposed = amalgamate_solutions(&ca, &hosts, &l, &r, &i)?;
                if recomposed != sol {
                    return Err(CliError::Validation("round trip failed".into()));
                }
            }
            for (side_name, side, cond_r, host_r) in [
                ("left", &l, &cd.left, &od.left),
                ("right", &r, &cd.right, &od.right),
                ("interface", &i, &cd.interface, &od.interface),
            ] {
                let side_match = amalgam_core::restrict_match(
                    &p,
                    &cond_r.root_restriction(),
                    host_r,
                )?;
                let cond_name = b.add_condition(&format!("{side_name}_condition"), &cond_r.condition);
                let host_name = b.add_typed_graph(&format!("{side_name}_host"), &host_r.restricted);
                let match_name = b.add_morphism(&format!("{side_name}_match"), &side_match);
                b.add_solution(side_name, &cond_name, &host_name, &match_name, side);
            }
        }
    }
    write_or_print(&b.finish(), args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_laws(args: LawsArgs) -> Result<ExitCode, CliError> {
    if let Some(replay_path) = &args.replay {
        let ws = Workspace::load(replay_path)?;
        return match laws::replay(&ws) {
            Ok(()) => {
                println!("replay: law holds on the saved instance");
                Ok(ExitCode::SUCCESS)
            }
            Err(CliError::Validation(msg)) => {
                println!("replay: law fails: {msg}");
                Ok(ExitCode::from(1))
            }
            Err(e) => Err(e),
        };
    }

    let selected: Vec<LawId> = if args.law == "all" {
        ALL_LAWS.to_vec()
    } else {
        vec![LawId::parse(&args.law).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown law {:?}; expected one of {} or \"all\"",
                args.law,
                ALL_LAWS
                    .iter()
                    .map(|l| l.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?]
    };

    let config = LawConfig {
        cases: args.cases,
        seed: args.seed,
        bounds: Bounds {
            max_nodes: args.max_nodes,
            depth: args.depth,
            ..Bounds::default()
        },
    };

    let mut any_failed = false;
    for law in selected {
        let report = run_law(law, &config)?;
        println!("{}", report.summary());
        if !report.passed() {
            any_failed = true;
            for failure in &report.failures {
                println!("  case {}: {}", failure.case_index, failure.message);
                if let Some(dir) = &args.out {
                    let path = dir.join(format!("fail-{}-{}.json", law.as_str(), failure.case_index));
                    Workspace::save(&failure.instance, &path)?;
                    println!("  wrote {}", path.display());
                }
            }
        }
    }
    Ok(if any_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
