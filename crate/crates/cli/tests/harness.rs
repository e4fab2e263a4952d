//! Workspace format and generator-determinism tests.

mod common;

use amalgam_cli::document::Document;
use amalgam_cli::error::CliError;
use amalgam_cli::generate::Bounds;
use amalgam_cli::laws::{check_case, generate_case, replay, LawId, ALL_LAWS};
use amalgam_cli::{fixtures, Workspace};

#[test]
fn fixture_documents_load_and_validate() {
    for (name, doc) in fixtures::all_documents() {
        let ws = Workspace::from_document(&doc)
            .unwrap_or_else(|e| panic!("fixture {name} failed to load: {e}"));
        assert!(!ws.graphs.is_empty(), "{name} has no graphs");
        assert_eq!(ws.contexts.len(), 1, "{name} should carry the type square");
    }
}

#[test]
fn canonical_serialization_round_trips_byte_identically() {
    for (name, doc) in fixtures::all_documents() {
        let text = doc.to_canonical_string();
        let reparsed: Document = serde_json::from_str(&text).expect("fixture parses");
        assert_eq!(
            reparsed.to_canonical_string(),
            text,
            "fixture {name} is not byte-stable"
        );
    }
}

#[test]
fn saving_a_loaded_workspace_is_byte_identical() {
    let dir = std::env::temp_dir().join(format!("amalgam-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (name, doc) in fixtures::all_documents() {
        let path = dir.join(format!("{name}.json"));
        Workspace::save(&doc, &path).unwrap();
        let original = std::fs::read_to_string(&path).unwrap();
        let ws = Workspace::load(&path).unwrap();
        let back = dir.join(format!("{name}-back.json"));
        ws.save_to(&back).unwrap();
        assert_eq!(
            std::fs::read_to_string(&back).unwrap(),
            original,
            "save(load({name})) changed bytes"
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn minimal_document_with_one_empty_graph_loads() {
    let doc: Document = serde_json::from_str(r#"{ "graphs": { "g": {} } }"#).unwrap();
    let ws = Workspace::from_document(&doc).unwrap();
    assert!(ws.graphs["g"].is_empty());
}

#[test]
fn dangling_reference_is_reported() {
    let doc: Document = serde_json::from_str(
        r#"{
            "graphs": { "g": { "nodes": { "1": {} } } },
            "morphisms": { "m": { "dom": "g", "cod": "ghost", "nodes": { "1": "1" } } }
        }"#,
    )
    .unwrap();
    match Workspace::from_document(&doc) {
        Err(CliError::DanglingReference(msg)) => assert!(msg.contains("ghost")),
        other => panic!("expected a dangling reference error, got {other:?}"),
    }
}

#[test]
fn invalid_morphism_is_reported() {
    let doc: Document = serde_json::from_str(
        r#"{
            "graphs": { "g": { "nodes": { "1": {}, "2": {} } } },
            "morphisms": { "m": { "dom": "g", "cod": "g", "nodes": { "1": "1" } } }
        }"#,
    )
    .unwrap();
    match Workspace::from_document(&doc) {
        Err(CliError::Validation(msg)) => assert!(msg.contains("partial"), "got {msg}"),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn unverifiable_solution_is_rejected_at_load() {
    // a witness whose triangle is broken: condition needs a node, the
    // match picks 1 but the witness image misses it
    let text = r#"{
        "graphs": {
            "empty": {},
            "p": { "nodes": { "x": {} } },
            "g": { "nodes": { "1": {}, "2": {} } },
            "tg": { "nodes": { "v": {} } }
        },
        "morphisms": {
            "tp": { "dom": "p", "cod": "tg", "nodes": { "x": "v" } },
            "tgm": { "dom": "g", "cod": "tg", "nodes": { "1": "v", "2": "v" } },
            "te": { "dom": "empty", "cod": "tg" },
            "i": { "dom": "empty", "cod": "p" },
            "m": { "dom": "empty", "cod": "g" },
            "q": { "dom": "p", "cod": "g", "nodes": { "x": "2" } }
        },
        "typed_graphs": {
            "P": { "graph": "p", "type_graph": "tg", "typing": "tp" },
            "G": { "graph": "g", "type_graph": "tg", "typing": "tgm" },
            "E": { "graph": "empty", "type_graph": "tg", "typing": "te" }
        },
        "conditions": {
            "c": { "root": "E", "body": { "op": "exists", "morphism": "i", "sub_root": "P", "sub": { "op": "true" } } }
        },
        "solutions": {
            "s": { "condition": "c", "host": "G", "match": "m",
                   "tree": { "kind": "witness", "morphism": "q", "sub": { "kind": "tuple", "children": [] } } }
        }
    }"#;
    let doc: Document = serde_json::from_str(text).unwrap();
    match Workspace::from_document(&doc) {
        Err(CliError::Validation(msg)) => assert!(msg.contains("solution"), "got {msg}"),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn generated_instances_are_deterministic_in_the_seed() {
    let bounds = Bounds::default();
    for law in ALL_LAWS {
        let a = generate_case(law, 7, 3, &bounds).unwrap();
        let b = generate_case(law, 7, 3, &bounds).unwrap();
        assert_eq!(
            a.to_document(law, 7, 3).to_canonical_string(),
            b.to_document(law, 7, 3).to_canonical_string(),
            "law {law} generation is not deterministic"
        );
    }
}

#[test]
fn failure_documents_replay_to_the_same_verdict() {
    // generated instances hold; their serialized form replays to success
    for law in [LawId::Fact35, LawId::Fact42, LawId::Thm48, LawId::VkCube] {
        let data = generate_case(law, 11, 0, &Bounds::default()).unwrap();
        check_case(&data).expect("generated case holds");
        let doc = data.to_document(law, 11, 0);
        let ws = Workspace::from_document(&doc).expect("instance loads");
        replay(&ws).expect("replay succeeds");
    }
}

#[test]
fn premise_violating_cube_fails_its_check_and_replay() {
    use amalgam_core::{
        pushout, CommutativeSquare, Graph, GraphMorphism, VkCube, VkMode,
    };
    let graph = |nodes: &[&str]| {
        let mut g = Graph::new();
        for n in nodes {
            g.add_node(*n);
        }
        g
    };
    let inclusion = |sub: &Graph, sup: &Graph| {
        GraphMorphism::new(
            sub.clone(),
            sup.clone(),
            sub.node_ids().map(|n| (n.clone(), n.clone())).collect(),
            Default::default(),
        )
        .unwrap()
    };
    // bottom apex padded with a stray node: no longer a pushout, so the
    // premises fail and the case is reported as a failure
    let a = graph(&["1"]);
    let b = graph(&["1", "2"]);
    let c = graph(&["1", "3"]);
    let f = inclusion(&a, &b);
    let g = inclusion(&a, &c);
    let po = pushout(&f, &g).unwrap();
    let mut padded = po.apex.clone();
    padded.add_node("stray");
    let widen = inclusion(&po.apex, &padded);
    let bottom = CommutativeSquare::new(
        f,
        g,
        amalgam_core::compose(&po.left, &widen).unwrap(),
        amalgam_core::compose(&po.right, &widen).unwrap(),
    )
    .unwrap();
    let cube = VkCube {
        top: bottom.clone(),
        vert_a: GraphMorphism::identity(&a),
        vert_b: GraphMorphism::identity(&b),
        vert_c: GraphMorphism::identity(&c),
        vert_d: GraphMorphism::identity(&padded),
        bottom,
        mode: VkMode::Vertical,
    };
    let data = amalgam_cli::laws::CaseData::Cube { cube };
    let msg = check_case(&data).expect_err("premises must fail");
    assert!(msg.contains("premises"));

    // the serialized instance replays to the same verdict
    let doc = data.to_document(LawId::VkCube, 0, 0);
    let ws = Workspace::from_document(&doc).unwrap();
    match replay(&ws) {
        Err(CliError::Validation(m)) => assert!(m.contains("premises")),
        other => panic!("expected a failing replay, got {other:?}"),
    }
}

#[test]
fn cube_documents_keep_their_mode() {
    let bounds = Bounds::default();
    // odd case indexes generate horizontal cubes
    let data = generate_case(LawId::VkCube, 5, 1, &bounds).unwrap();
    let doc = data.to_document(LawId::VkCube, 5, 1);
    assert_eq!(doc.meta.get("mode").map(|s| s.as_str()), Some("horizontal"));
}
