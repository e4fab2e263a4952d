//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its wall time and asserting its time budget.
//!
//! 1. category laws (composition, closure) on seeded random instances
//! 2. effective pushouts, exhaustive at small scale plus random
//! 3. van Kampen cubes, both modes
//! 4. restriction of solutions
//! 5. object and condition amalgamation round trips
//! 6. solution amalgamation round trips
//! 7. initial-satisfaction compatibility with amalgamation and restriction
//! 8. the negative fixture for universal satisfaction under restriction
//! 9. the shipped example fixtures
//! 10. matching completeness against brute-force enumeration

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use amalgam_cli::generate::{case_rng, gen_graph, gen_subgraph, Bounds};
use amalgam_cli::laws::{run_law, LawConfig, LawId};
use amalgam_cli::fixtures;
use amalgam_core::{
    compose, enumerate_injective_morphisms, find_solution, generally_satisfies,
    initially_satisfies, is_effective_pushout, pullback, pushout, restrict_condition,
    restrict_typed_graph, verify_solution, GraphMorphism, Solution,
};
use rand::Rng as _;

fn finish(name: &str, start: Instant, budget_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance {name}: PASS ({elapsed:.2}s / budget {budget_secs}s)");
    assert!(
        elapsed < budget_secs,
        "{name} exceeded its {budget_secs}s budget: {elapsed:.2}s"
    );
}

fn law_config(cases: usize, max_nodes: usize) -> LawConfig {
    LawConfig {
        cases,
        seed: 42,
        bounds: Bounds {
            max_nodes,
            depth: 3,
            ..Bounds::default()
        },
    }
}

fn assert_law(law: LawId, cases: usize, max_nodes: usize) {
    let report = run_law(law, &law_config(cases, max_nodes)).expect("campaign runs");
    assert!(
        report.passed(),
        "law {law} failed {} of {} cases; first: {}",
        report.failures.len(),
        report.cases_run,
        report
            .failures
            .first()
            .map(|f| f.message.as_str())
            .unwrap_or("")
    );
    assert_eq!(report.cases_run, cases);
}

/// Random morphism into `target`, built so the maps are valid by
/// construction; not injective in general.
fn random_morphism_into(
    rng: &mut rand_chacha::ChaCha8Rng,
    target: &amalgam_core::Graph,
    max_nodes: usize,
    max_edges: usize,
) -> GraphMorphism {
    use amalgam_core::{EdgeId, Graph, NodeId};
    let target_nodes: Vec<&NodeId> = target.node_ids().collect();
    let target_edges: Vec<_> = target.edges().collect();
    let mut dom = Graph::new();
    let mut node_map = std::collections::BTreeMap::new();
    let mut edge_map = std::collections::BTreeMap::new();
    if !target_nodes.is_empty() {
        let n = rng.random_range(0..=max_nodes);
        for i in 0..n {
            let img = target_nodes[rng.random_range(0..target_nodes.len())];
            dom.add_node(format!("n{i}").as_str());
            node_map.insert(NodeId(format!("n{i}")), img.clone());
        }
        if !target_edges.is_empty() && n > 0 {
            let want = rng.random_range(0..=max_edges);
            let mut added = 0;
            for _ in 0..(want * 4) {
                if added == want {
                    break;
                }
                let (img_id, img) = target_edges[rng.random_range(0..target_edges.len())];
                let srcs: Vec<&NodeId> = node_map
                    .iter()
                    .filter(|(_, v)| **v == img.src)
                    .map(|(k, _)| k)
                    .collect();
                let tgts: Vec<&NodeId> = node_map
                    .iter()
                    .filter(|(_, v)| **v == img.tgt)
                    .map(|(k, _)| k)
                    .collect();
                if srcs.is_empty() || tgts.is_empty() {
                    continue;
                }
                let s = srcs[rng.random_range(0..srcs.len())].clone();
                let t = tgts[rng.random_range(0..tgts.len())].clone();
                let id = format!("e{added}");
                dom.add_edge(id.as_str(), s.0.as_str(), t.0.as_str(), img.label.0.as_str());
                edge_map.insert(EdgeId(id), img_id.clone());
                added += 1;
            }
        }
    }
    GraphMorphism::new(dom, target.clone(), node_map, edge_map).expect("generated morphism")
}

#[test]
fn criterion_01_category_laws() {
    let start = Instant::now();
    let bounds = Bounds {
        max_nodes: 5,
        max_edges: 5,
        ..Bounds::default()
    };

    // associativity and units, exact equality of maps
    for case in 0..500u64 {
        let mut rng = case_rng(1001, case);
        let g4 = gen_graph(&mut rng, &bounds);
        let h = random_morphism_into(&mut rng, &g4, 5, 5);
        let g = random_morphism_into(&mut rng, h.dom(), 5, 5);
        let f = random_morphism_into(&mut rng, g.dom(), 5, 5);
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right, "associativity failed at case {case}");
        assert_eq!(compose(&GraphMorphism::identity(f.dom()), &f).unwrap(), f);
        assert_eq!(compose(&f, &GraphMorphism::identity(f.cod())).unwrap(), f);
    }

    // closure of injective morphisms under composition and decomposition
    for case in 0..500u64 {
        let mut rng = case_rng(1002, case);
        let g4 = gen_graph(&mut rng, &bounds);
        let g = random_morphism_into(&mut rng, &g4, 5, 5);
        let f = random_morphism_into(&mut rng, g.dom(), 5, 5);
        let fg = compose(&f, &g).unwrap();
        if f.is_injective() && g.is_injective() {
            assert!(fg.is_injective(), "composition closure failed at case {case}");
        }
        if fg.is_injective() {
            assert!(f.is_injective(), "decomposition closure failed at case {case}");
        }
    }

    // pullbacks and pushouts preserve injectivity on the opposite leg
    for case in 0..500u64 {
        let mut rng = case_rng(1003, case);
        let target = gen_graph(&mut rng, &bounds);
        let any = random_morphism_into(&mut rng, &target, 5, 5);
        let inj = gen_subgraph(&mut rng, &target);
        let pb = pullback(&any, &inj).unwrap();
        assert!(pb.left.is_injective(), "pullback closure failed at case {case}");

        let span_apex = gen_graph(&mut rng, &bounds);
        let sub = gen_subgraph(&mut rng, &span_apex);
        let other = random_morphism_into(&mut rng, &span_apex, 5, 5);
        // need a span out of a common domain: pull `other` back along sub;
        // the left pullback projection is injective, so the injection
        // opposite it must be injective in the pushout
        let span = pullback(&other, &sub).unwrap();
        let po = pushout(&span.right, &span.left).unwrap();
        assert!(po.left.is_injective(), "pushout closure failed at case {case}");
    }

    finish("1 (category laws)", start, 10.0);
}

#[test]
fn criterion_02_effective_pushouts() {
    let start = Instant::now();

    // exhaustive sweep over all pairs of subgraph inclusions of every
    // graph with <= 3 nodes and <= 3 edges over the two-label alphabet
    let mut checked = 0u64;
    for host in common::all_graphs(3, 3) {
        let subs = common::all_subgraph_inclusions(&host);
        for (i, a) in subs.iter().enumerate() {
            for b in &subs[i..] {
                assert!(
                    is_effective_pushout(a, b).unwrap(),
                    "effective pushout failed for {} and {} into {host}",
                    a.dom(),
                    b.dom()
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 100_000, "sweep too small: {checked}");

    // plus seeded random cospans at 4 nodes
    assert_law(LawId::EffectivePo, 500, 4);

    finish("2 (effective pushouts)", start, 60.0);
}

#[test]
fn criterion_03_van_kampen_cubes() {
    let start = Instant::now();
    // cases alternate vertical and horizontal mode: 500 cubes per mode
    assert_law(LawId::VkCube, 1000, 4);
    finish("3 (van Kampen cubes)", start, 60.0);
}

#[test]
fn criterion_04_solution_restriction() {
    let start = Instant::now();
    assert_law(LawId::Fact35, 200, 4);
    finish("4 (solution restriction)", start, 60.0);
}

#[test]
fn criterion_05_object_and_condition_round_trips() {
    let start = Instant::now();
    assert_law(LawId::Fact42, 200, 4);
    assert_law(LawId::Fact45, 200, 4);
    finish("5 (object and condition round trips)", start, 120.0);
}

#[test]
fn criterion_06_solution_amalgamation() {
    let start = Instant::now();
    assert_law(LawId::Thm48, 200, 4);
    finish("6 (solution amalgamation)", start, 120.0);
}

#[test]
fn criterion_07_initial_satisfaction_compatibility() {
    let start = Instant::now();
    assert_law(LawId::Thm51, 200, 4);
    assert_law(LawId::Cor52, 200, 4);
    finish("7 (initial satisfaction compatibility)", start, 120.0);
}

#[test]
fn criterion_08_counterexample() {
    let start = Instant::now();
    let f = fixtures::fig5();

    // exactly two injective matches: the inclusion, and the one sending
    // b1 to b2 and c1 to c2; both satisfy the condition
    let matches = enumerate_injective_morphisms(&f.condition.root, &f.host).unwrap();
    assert_eq!(matches.len(), 2);
    assert!(matches[0].is_inclusion());
    assert_eq!(matches[1].edge_image(&"b1".into()), Some(&"b2".into()));
    assert_eq!(matches[1].edge_image(&"c1".into()), Some(&"c2".into()));

    // engine verdicts
    assert!(generally_satisfies(&f.host, &f.condition).unwrap());
    let t = &f.context.left_to_total;
    let cond_r = restrict_condition(&f.condition, t).unwrap();
    let host_r = restrict_typed_graph(&f.host, t).unwrap();
    assert!(!generally_satisfies(&host_r.restricted, &cond_r.condition).unwrap());

    // the failing restricted match keeps the b-edge in place and sends the
    // isolated node to the node with no b-edge back
    let restricted_matches =
        enumerate_injective_morphisms(&cond_r.condition.root, &host_r.restricted).unwrap();
    let failing: Vec<_> = restricted_matches
        .iter()
        .filter(|p| {
            !amalgam_core::satisfies(p, &cond_r.condition, &host_r.restricted).unwrap()
        })
        .collect();
    assert!(!failing.is_empty());
    let keeps_edge_and_hits_node4 = failing.iter().any(|p| {
        let Some(edge_img) = p.edge_map().values().next() else {
            return false;
        };
        let Some(e) = host_r.embedding.edge_image(edge_img) else {
            return false;
        };
        let isolated_img = p
            .node_map()
            .iter()
            .find(|(k, _)| {
                // the node not touched by the pattern's only edge
                cond_r.condition.root.graph().outgoing(k).next().is_none()
                    && cond_r.condition.root.graph().incoming(k).next().is_none()
            })
            .map(|(_, v)| v.clone());
        let lands_on_4 = isolated_img
            .and_then(|v| host_r.embedding.node_image(&v).cloned())
            .map(|n| n == "4".into())
            .unwrap_or(false);
        e == &"b1".into() && lands_on_4
    });
    assert!(
        keeps_edge_and_hits_node4,
        "expected the prose failing match (b1 kept, isolated node on 4)"
    );

    // both verdicts confirmed by the exhaustive oracle
    assert!(common::oracle_generally_satisfies(&f.host, &f.condition));
    assert!(!common::oracle_generally_satisfies(
        &host_r.restricted,
        &cond_r.condition
    ));

    // the law campaign reproduces the fixture verdicts
    assert_law(LawId::Counterexample54, 1, 4);

    finish("8 (restriction counterexample)", start, 5.0);
}

#[test]
fn criterion_09_fixtures() {
    let start = Instant::now();
    fig1_properties();
    fig2_properties();
    fig3_properties();
    fig4_properties();
    finish("9 (example fixtures)", start, 10.0);
}

fn fig1_properties() {
    let f = fixtures::fig1();

    // exactly two injective matches; the first is the inclusion, the
    // second sends the pattern edge to the other non-loop edge
    let matches = enumerate_injective_morphisms(&f.pattern, &f.host).unwrap();
    assert_eq!(matches.len(), 2, "expected two matches");
    assert_eq!(common::brute_force_typed_monos(&f.pattern, &f.host).len(), 2);
    assert!(matches[0].is_inclusion());
    assert_eq!(
        matches[1].edge_image(&"b1".into()),
        Some(&"b2".into()),
        "the second match must send b1 to b2"
    );

    // both satisfy the condition, hence universal satisfaction
    for p in &matches {
        assert!(amalgam_core::satisfies(p, &f.condition, &f.host).unwrap());
    }
    assert!(generally_satisfies(&f.host, &f.condition).unwrap());
    assert!(common::oracle_generally_satisfies(&f.host, &f.condition));

    // the canonical solution for the inclusion match: a pair whose second
    // component chooses the first disjunct, all witnesses inclusions
    let sol = find_solution(&matches[0], &f.condition, &f.host)
        .unwrap()
        .expect("inclusion match satisfies");
    let Solution::Tuple(parts) = &sol else {
        panic!("expected a pair, got {sol:?}");
    };
    assert_eq!(parts.len(), 2);
    let Solution::Witness { map: q1, inner: i1 } = &parts[0] else {
        panic!("expected a witness for the self-loop clause");
    };
    assert!(q1.is_inclusion() && i1.is_empty());
    let Solution::Witness { map: q2, inner: i2 } = &parts[1] else {
        panic!("expected a witness for the continuation clause");
    };
    assert!(q2.is_inclusion());
    let Solution::Tuple(branches) = i2.as_ref() else {
        panic!("expected a disjunction tuple");
    };
    assert_eq!(branches.len(), 2);
    let Solution::Witness { map: q3, inner: i3 } = &branches[0] else {
        panic!("expected the first disjunct to be chosen");
    };
    assert!(q3.is_inclusion() && i3.is_empty());
    assert!(branches[1].is_empty(), "the second disjunct must stay empty");
    assert!(verify_solution(&matches[0], &f.condition, &f.host, &sol));

    // initial satisfaction: the witness is the inclusion match, the inner
    // solution is the one above
    let init = initially_satisfies(&f.host, &f.constraint)
        .unwrap()
        .expect("initially satisfied");
    let Solution::Witness { map, inner } = &init else {
        panic!("expected a witness at the constraint level");
    };
    assert_eq!(map, &matches[0]);
    assert_eq!(inner.as_ref(), &sol);
}

fn fig2_properties() {
    let f = fixtures::fig2();

    // restrictions keep exactly the edges of the view
    let d = amalgam_core::decompose_typed_graph(&f.context, &f.total).unwrap();
    assert!(amalgam_core::typed_isomorphic(&d.left.restricted, &f.left_expected));
    assert!(amalgam_core::typed_isomorphic(&d.right.restricted, &f.right_expected));
    assert!(amalgam_core::typed_isomorphic(
        &d.interface.restricted,
        &f.interface_expected
    ));
    assert_eq!(d.interface.restricted.graph().edge_count(), 0);

    // the explicitly shipped sides agree and amalgamate back to the total
    assert!(amalgam_core::typed_graphs_agree(
        &f.context,
        &f.left_expected,
        &f.right_expected,
        &f.interface_expected
    )
    .unwrap());
    let am = amalgam_core::amalgamate_typed_graphs(
        &f.context,
        &f.left_expected,
        &f.right_expected,
        &f.interface_expected,
    )
    .unwrap();
    assert!(amalgam_core::typed_isomorphic(&am.result, &f.total));
    // the union carries the b-edges of the left view and the c-edges of
    // the right view
    let labels: Vec<String> = am
        .result
        .graph()
        .edges()
        .map(|(_, e)| e.label.0.clone())
        .collect();
    assert_eq!(labels.iter().filter(|l| l.as_str() == "b").count(), 4);
    assert_eq!(labels.iter().filter(|l| l.as_str() == "c").count(), 4);
}

fn fig3_properties() {
    let f = fixtures::fig3();

    let left = restrict_condition(&f.total, &f.context.left_to_total).unwrap();
    let right = restrict_condition(&f.total, &f.context.right_to_total).unwrap();
    assert!(amalgam_core::conditions_isomorphic(&left.condition, &f.left_expected));
    assert!(amalgam_core::conditions_isomorphic(&right.condition, &f.right_expected));

    // restricting both views to the interface yields the same condition
    let via_left = restrict_condition(&left.condition, &f.context.interface_to_left).unwrap();
    let via_right = restrict_condition(&right.condition, &f.context.interface_to_right).unwrap();
    assert!(amalgam_core::conditions_isomorphic(
        &via_left.condition,
        &via_right.condition
    ));
    assert!(amalgam_core::conditions_isomorphic(
        &via_left.condition,
        &f.interface_expected
    ));

    // agreement and recomposition
    assert!(amalgam_core::conditions_agree(
        &f.context,
        &f.left_expected,
        &f.right_expected,
        &f.interface_expected
    )
    .unwrap());
    let am = amalgam_core::amalgamate_conditions(
        &f.context,
        &f.left_expected,
        &f.right_expected,
        &f.interface_expected,
    )
    .unwrap();
    assert!(amalgam_core::conditions_isomorphic(&am.amalgamated, &f.total));
}

fn fig4_properties() {
    let f = fixtures::fig4();

    // the amalgamated host initially satisfies the amalgamated constraint,
    // with the inclusion witness choosing the first disjunct
    let sol = initially_satisfies(&f.host, &f.constraint)
        .unwrap()
        .expect("initially satisfied");
    let Solution::Witness { map, inner } = &sol else {
        panic!("expected a top-level witness");
    };
    assert!(map.is_inclusion());
    let Solution::Tuple(branches) = inner.as_ref() else {
        panic!("expected a disjunction tuple");
    };
    let Solution::Witness { map: q1, inner: i1 } = &branches[0] else {
        panic!("expected the first disjunct to be chosen");
    };
    assert!(q1.is_inclusion() && i1.is_empty());
    assert!(branches[1].is_empty());

    // full compatibility: decomposition verifies, recomposition is exact
    let cd = amalgam_core::decompose_condition(&f.context, &f.constraint).unwrap();
    let ca = amalgam_core::condition_amalgamation_from_decomposition(&f.constraint, &cd).unwrap();
    let od = amalgam_core::decompose_typed_graph(&f.context, &f.host).unwrap();
    let hosts = amalgam_core::amalgamation_from_decomposition(&f.host, &od);
    let report = amalgam_core::check_initial_compatibility(&ca, &hosts).unwrap();
    assert!(report.satisfied && report.holds());

    // the decomposed side solutions have the shape of the total one:
    // witness, first disjunct chosen, second empty, all inclusions
    for side in [&report.left, &report.right, &report.interface] {
        let Some(Solution::Witness { map, inner }) = side else {
            panic!("expected a side witness");
        };
        assert!(map.is_inclusion());
        let Solution::Tuple(branches) = inner.as_ref() else {
            panic!("expected a side disjunction tuple");
        };
        let Solution::Witness { map: w, inner: e } = &branches[0] else {
            panic!("expected the first side disjunct to be chosen");
        };
        assert!(w.is_inclusion() && e.is_empty());
        assert!(branches[1].is_empty());
    }

    // each side, checked on its own, finds a solution of the same shape
    for (cond_restr, host_restr) in [(&cd.left, &od.left), (&cd.right, &od.right), (&cd.interface, &od.interface)] {
        let local = initially_satisfies(&host_restr.restricted, &cond_restr.condition)
            .unwrap()
            .expect("side initially satisfied");
        let Solution::Witness { inner, .. } = &local else {
            panic!("expected a local witness");
        };
        let Solution::Tuple(branches) = inner.as_ref() else {
            panic!("expected a local disjunction tuple");
        };
        assert!(matches!(branches[0], Solution::Witness { .. }));
        assert!(branches[1].is_empty());
    }
}

#[test]
fn criterion_10_matching_completeness() {
    let start = Instant::now();
    let square = fixtures::standard_context();
    let total_type = square.total();

    // exhaustive tier: every pattern with <= 2 nodes and <= 2 edges
    // against every host with <= 3 nodes and <= 3 edges
    let patterns = common::all_graphs(2, 2);
    let hosts = common::all_graphs(3, 3);
    let mut compared = 0u64;
    for p in &patterns {
        let tp = fixtures::typed_over(p.clone(), total_type);
        for h in &hosts {
            let th = fixtures::typed_over(h.clone(), total_type);
            let engine: BTreeSet<String> = enumerate_injective_morphisms(&tp, &th)
                .unwrap()
                .into_iter()
                .map(|m| format!("{:?}{:?}", m.node_map(), m.edge_map()))
                .collect();
            let oracle: BTreeSet<String> = common::brute_force_typed_monos(&tp, &th)
                .into_iter()
                .map(|m| format!("{:?}{:?}", m.node_map(), m.edge_map()))
                .collect();
            assert_eq!(engine, oracle, "match sets differ for {p} into {h}");
            compared += 1;
        }
    }
    assert!(compared > 50_000, "tier too small: {compared}");

    // random tier at 4 nodes, including extension enumeration
    let bounds = Bounds {
        max_nodes: 4,
        max_edges: 5,
        ..Bounds::default()
    };
    for case in 0..500u64 {
        let mut rng = case_rng(1010, case);
        let p = gen_graph(
            &mut rng,
            &Bounds {
                max_nodes: 3,
                max_edges: 3,
                ..bounds
            },
        );
        let h = gen_graph(&mut rng, &bounds);
        let tp = fixtures::typed_over(p.clone(), total_type);
        let th = fixtures::typed_over(h.clone(), total_type);
        let engine = enumerate_injective_morphisms(&tp, &th).unwrap();
        let oracle = common::brute_force_typed_monos(&tp, &th);
        assert_eq!(engine.len(), oracle.len(), "count differs for {p} into {h}");

        // extensions: fix a sub-pattern inclusion and one match, compare
        // against the filtered full enumeration
        let sub_incl = gen_subgraph(&mut rng, &p);
        let tsub = fixtures::typed_over(sub_incl.dom().clone(), total_type);
        if let Some(p_match) = enumerate_injective_morphisms(&tsub, &th).unwrap().first() {
            let exts = amalgam_core::enumerate_extensions(&sub_incl, p_match, &tp, &th).unwrap();
            let filtered: Vec<GraphMorphism> = engine
                .iter()
                .filter(|q| compose(&sub_incl, q).unwrap() == *p_match)
                .cloned()
                .collect();
            assert_eq!(exts, filtered, "extension sets differ for {p} into {h}");
        }
    }

    finish("10 (matching completeness)", start, 60.0);
}
