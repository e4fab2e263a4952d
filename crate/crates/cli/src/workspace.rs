//! Loading and validating workspace documents into resolved kernel values.

use std::collections::BTreeMap;
use std::path::Path;

use amalgam_core::{
    verify_solution, AmalgamationContext, Edge, Graph, GraphMorphism, NestedCondition, Solution,
    TypedGraph,
};

use crate::document::{
    BodyDoc, ConditionDoc, Document, GraphDoc, MorphismDoc, SolutionDoc, TreeDoc,
};
use crate::error::CliError;

/// A solution together with the names of its context: the condition it
/// solves, the typed host, and the match morphism.
#[derive(Clone, Debug)]
pub struct SolutionEntry {
    pub condition: String,
    pub host: String,
    pub match_name: String,
    pub solution: Solution,
}

/// A fully resolved workspace: every reference checked, every value past
/// its validator. The source document is kept, so saving a loaded
/// workspace reproduces it byte-identically (in canonical key order).
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub graphs: BTreeMap<String, Graph>,
    pub morphisms: BTreeMap<String, GraphMorphism>,
    pub typed_graphs: BTreeMap<String, TypedGraph>,
    pub contexts: BTreeMap<String, AmalgamationContext>,
    pub conditions: BTreeMap<String, NestedCondition>,
    pub solutions: BTreeMap<String, SolutionEntry>,
    pub meta: BTreeMap<String, String>,
    pub seed: u64,
    pub source: Document,
}

fn dangling(kind: &str, name: &str) -> CliError {
    CliError::DanglingReference(format!("{kind} {name:?} is not defined"))
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Workspace, CliError> {
        let text = std::fs::read_to_string(path)?;
        let doc: Document = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        Workspace::from_document(&doc)
    }

    pub fn from_document(doc: &Document) -> Result<Workspace, CliError> {
        let mut ws = Workspace {
            seed: doc.seed.unwrap_or(0),
            meta: doc.meta.clone(),
            source: doc.clone(),
            ..Workspace::default()
        };
        for (name, gdoc) in &doc.graphs {
            ws.graphs.insert(name.clone(), resolve_graph(name, gdoc)?);
        }
        for (name, mdoc) in &doc.morphisms {
            ws.morphisms
                .insert(name.clone(), ws.resolve_morphism(name, mdoc)?);
        }
        for (name, tdoc) in &doc.typed_graphs {
            let graph = ws
                .graphs
                .get(&tdoc.graph)
                .ok_or_else(|| dangling("graph", &tdoc.graph))?;
            let type_graph = ws
                .graphs
                .get(&tdoc.type_graph)
                .ok_or_else(|| dangling("graph", &tdoc.type_graph))?;
            let typing = ws
                .morphisms
                .get(&tdoc.typing)
                .ok_or_else(|| dangling("morphism", &tdoc.typing))?;
            if typing.dom() != graph || typing.cod() != type_graph {
                return Err(CliError::Validation(format!(
                    "typed graph {name:?}: typing endpoints do not match graph/type_graph"
                )));
            }
            ws.typed_graphs
                .insert(name.clone(), TypedGraph::new(typing.clone())?);
        }
        for (name, cdoc) in &doc.contexts {
            let get = |mname: &String| {
                ws.morphisms
                    .get(mname)
                    .cloned()
                    .ok_or_else(|| dangling("morphism", mname))
            };
            let ctx = AmalgamationContext::new(
                get(&cdoc.interface_to_left)?,
                get(&cdoc.interface_to_right)?,
                get(&cdoc.left_to_total)?,
                get(&cdoc.right_to_total)?,
            )
            .map_err(|e| CliError::Validation(format!("context {name:?}: {e}")))?;
            ws.contexts.insert(name.clone(), ctx);
        }
        for (name, cdoc) in &doc.conditions {
            let cond = ws.resolve_condition(name, cdoc)?;
            cond.ensure_valid()
                .map_err(|e| CliError::Validation(format!("condition {name:?}: {e}")))?;
            ws.conditions.insert(name.clone(), cond);
        }
        for (name, sdoc) in &doc.solutions {
            let entry = ws.resolve_solution(name, sdoc)?;
            ws.solutions.insert(name.clone(), entry);
        }
        Ok(ws)
    }

    fn resolve_morphism(&self, name: &str, mdoc: &MorphismDoc) -> Result<GraphMorphism, CliError> {
        let dom = self
            .graphs
            .get(&mdoc.dom)
            .ok_or_else(|| dangling("graph", &mdoc.dom))?;
        let cod = self
            .graphs
            .get(&mdoc.cod)
            .ok_or_else(|| dangling("graph", &mdoc.cod))?;
        let node_map = mdoc
            .nodes
            .iter()
            .map(|(a, b)| (a.as_str().into(), b.as_str().into()))
            .collect();
        let edge_map = mdoc
            .edges
            .iter()
            .map(|(a, b)| (a.as_str().into(), b.as_str().into()))
            .collect();
        GraphMorphism::new(dom.clone(), cod.clone(), node_map, edge_map)
            .map_err(|e| CliError::Validation(format!("morphism {name:?}: {e}")))
    }

    fn resolve_condition(&self, name: &str, cdoc: &ConditionDoc) -> Result<NestedCondition, CliError> {
        let root = self
            .typed_graphs
            .get(&cdoc.root)
            .ok_or_else(|| dangling("typed graph", &cdoc.root))?
            .clone();
        let _ = name;
        self.resolve_body(root, &cdoc.body)
    }

    fn resolve_body(&self, root: TypedGraph, body: &BodyDoc) -> Result<NestedCondition, CliError> {
        use amalgam_core::ConditionBody as B;
        let built = match body {
            BodyDoc::True => NestedCondition::top(root),
            BodyDoc::Exists {
                morphism,
                sub_root,
                sub,
            } => {
                let m = self
                    .morphisms
                    .get(morphism)
                    .ok_or_else(|| dangling("morphism", morphism))?;
                let inner_root = self
                    .typed_graphs
                    .get(sub_root)
                    .ok_or_else(|| dangling("typed graph", sub_root))?;
                let inner = self.resolve_body(inner_root.clone(), sub)?;
                NestedCondition::exists(root, m.clone(), inner)
            }
            BodyDoc::Not { sub } => {
                let inner = self.resolve_body(root.clone(), sub)?;
                NestedCondition {
                    root,
                    body: B::Not(Box::new(inner)),
                }
            }
            BodyDoc::And { children } => {
                let parts = children
                    .iter()
                    .map(|c| self.resolve_body(root.clone(), c))
                    .collect::<Result<Vec<_>, _>>()?;
                NestedCondition {
                    root,
                    body: B::And(parts),
                }
            }
            BodyDoc::Or { children } => {
                let parts = children
                    .iter()
                    .map(|c| self.resolve_body(root.clone(), c))
                    .collect::<Result<Vec<_>, _>>()?;
                NestedCondition {
                    root,
                    body: B::Or(parts),
                }
            }
        };
        Ok(built)
    }

    fn resolve_solution(&self, name: &str, sdoc: &SolutionDoc) -> Result<SolutionEntry, CliError> {
        let condition = self
            .conditions
            .get(&sdoc.condition)
            .ok_or_else(|| dangling("condition", &sdoc.condition))?;
        let host = self
            .typed_graphs
            .get(&sdoc.host)
            .ok_or_else(|| dangling("typed graph", &sdoc.host))?;
        let match_ = self
            .morphisms
            .get(&sdoc.match_)
            .ok_or_else(|| dangling("morphism", &sdoc.match_))?;
        let solution = self.resolve_tree(&sdoc.tree)?;
        if !verify_solution(match_, condition, host, &solution) {
            return Err(CliError::Validation(format!(
                "solution {name:?} does not verify against its condition and match"
            )));
        }
        Ok(SolutionEntry {
            condition: sdoc.condition.clone(),
            host: sdoc.host.clone(),
            match_name: sdoc.match_.clone(),
            solution,
        })
    }

    fn resolve_tree(&self, tree: &TreeDoc) -> Result<Solution, CliError> {
        Ok(match tree {
            TreeDoc::Empty => Solution::Empty,
            TreeDoc::Witness { morphism, sub } => Solution::Witness {
                map: self
                    .morphisms
                    .get(morphism)
                    .ok_or_else(|| dangling("morphism", morphism))?
                    .clone(),
                inner: Box::new(self.resolve_tree(sub)?),
            },
            TreeDoc::Tuple { children } => Solution::Tuple(
                children
                    .iter()
                    .map(|c| self.resolve_tree(c))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        })
    }

    pub fn save(doc: &Document, path: &Path) -> Result<(), CliError> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(path, doc.to_canonical_string())?;
        Ok(())
    }

    /// Writes the workspace back out: the source document in canonical
    /// form.
    pub fn save_to(&self, path: &Path) -> Result<(), CliError> {
        Workspace::save(&self.source, path)
    }
}

fn resolve_graph(name: &str, gdoc: &GraphDoc) -> Result<Graph, CliError> {
    let nodes = gdoc
        .nodes
        .iter()
        .map(|(id, n)| {
            (
                id.as_str().into(),
                n.label.as_ref().map(|l| l.as_str().into()),
            )
        })
        .collect();
    let edges = gdoc
        .edges
        .iter()
        .map(|(id, e)| {
            (
                id.as_str().into(),
                Edge {
                    src: e.src.as_str().into(),
                    tgt: e.tgt.as_str().into(),
                    label: e.label.as_str().into(),
                },
            )
        })
        .collect();
    let (g, issues) = Graph::from_parts(nodes, edges);
    if !issues.is_empty() {
        let text = issues
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(CliError::Validation(format!("graph {name:?}: {text}")));
    }
    Ok(g)
}
