//! The on-disk workspace format: one JSON document with sections for
//! graphs, morphisms, typed graphs, amalgamation contexts, conditions and
//! solutions, all cross-referenced by name. Keys are sorted maps, so the
//! canonical serialization is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use amalgam_core::{
    AmalgamationContext, ConditionBody, Graph, GraphMorphism, NestedCondition, Solution,
    TypedGraph,
};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Document {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub graphs: BTreeMap<String, GraphDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub typed_graphs: BTreeMap<String, TypedGraphDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contexts: BTreeMap<String, ContextDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub conditions: BTreeMap<String, ConditionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub solutions: BTreeMap<String, SolutionDoc>,
    /// Free-form annotations (law id, case index, cube mode, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nodes: BTreeMap<String, NodeDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, EdgeDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NodeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub src: String,
    pub tgt: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub dom: String,
    pub cod: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nodes: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypedGraphDoc {
    pub graph: String,
    pub type_graph: String,
    pub typing: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextDoc {
    pub interface_to_left: String,
    pub interface_to_right: String,
    pub left_to_total: String,
    pub right_to_total: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionDoc {
    pub root: String,
    pub body: BodyDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum BodyDoc {
    True,
    Exists {
        morphism: String,
        sub_root: String,
        sub: Box<BodyDoc>,
    },
    Not {
        sub: Box<BodyDoc>,
    },
    And {
        children: Vec<BodyDoc>,
    },
    Or {
        children: Vec<BodyDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub condition: String,
    pub host: String,
    #[serde(rename = "match")]
    pub match_: String,
    pub tree: TreeDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TreeDoc {
    Empty,
    Witness { morphism: String, sub: Box<TreeDoc> },
    Tuple { children: Vec<TreeDoc> },
}

impl Document {
    /// Canonical serialization: pretty JSON with sorted keys and a trailing
    /// newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

pub fn graph_to_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        nodes: g
            .node_ids()
            .map(|n| {
                (
                    n.0.clone(),
                    NodeDoc {
                        label: g.node_label(n).map(|l| l.0.clone()),
                    },
                )
            })
            .collect(),
        edges: g
            .edges()
            .map(|(id, e)| {
                (
                    id.0.clone(),
                    EdgeDoc {
                        src: e.src.0.clone(),
                        tgt: e.tgt.0.clone(),
                        label: e.label.0.clone(),
                    },
                )
            })
            .collect(),
    }
}

/// Interns core values into a [`Document`], assigning fresh names and
/// deduplicating structurally equal graphs and morphisms.
#[derive(Default)]
pub struct DocumentBuilder {
    doc: Document,
    graphs: Vec<(Graph, String)>,
    morphisms: Vec<(GraphMorphism, String)>,
}

impl DocumentBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn fresh(&self, base: &str, taken: &BTreeMap<String, impl Sized>) -> String {
        if !taken.contains_key(base) {
            return base.to_string();
        }
        let mut i = 1;
        loop {
            let candidate = format!("{base}{i}");
            if !taken.contains_key(&candidate) {
                return candidate;
            }
            i += 1;
        }
    }

    pub fn add_graph(&mut self, hint: &str, g: &Graph) -> String {
        if let Some((_, name)) = self.graphs.iter().find(|(known, _)| known == g) {
            return name.clone();
        }
        let name = self.fresh(hint, &self.doc.graphs);
        self.doc.graphs.insert(name.clone(), graph_to_doc(g));
        self.graphs.push((g.clone(), name.clone()));
        name
    }

    pub fn add_morphism(&mut self, hint: &str, m: &GraphMorphism) -> String {
        if let Some((_, name)) = self.morphisms.iter().find(|(known, _)| known == m) {
            return name.clone();
        }
        self.add_morphism_as(hint, m)
    }

    /// Inserts a morphism under a reserved name, bypassing value
    /// deduplication: callers that later look items up by name (replay,
    /// fixtures) must use this.
    pub fn add_morphism_as(&mut self, hint: &str, m: &GraphMorphism) -> String {
        let dom = self.add_graph(&format!("{hint}_dom"), m.dom());
        let cod = self.add_graph(&format!("{hint}_cod"), m.cod());
        let name = self.fresh(hint, &self.doc.morphisms);
        self.doc.morphisms.insert(
            name.clone(),
            MorphismDoc {
                dom,
                cod,
                nodes: m
                    .node_map()
                    .iter()
                    .map(|(a, b)| (a.0.clone(), b.0.clone()))
                    .collect(),
                edges: m
                    .edge_map()
                    .iter()
                    .map(|(a, b)| (a.0.clone(), b.0.clone()))
                    .collect(),
            },
        );
        self.morphisms.push((m.clone(), name.clone()));
        name
    }

    pub fn add_typed_graph(&mut self, hint: &str, tg: &TypedGraph) -> String {
        let graph = self.add_graph(&format!("{hint}_g"), tg.graph());
        let type_graph = self.add_graph(&format!("{hint}_tg"), tg.type_graph());
        let typing = self.add_morphism(&format!("{hint}_t"), tg.typing());
        let name = self.fresh(hint, &self.doc.typed_graphs);
        self.doc.typed_graphs.insert(
            name.clone(),
            TypedGraphDoc {
                graph,
                type_graph,
                typing,
            },
        );
        name
    }

    pub fn add_context(&mut self, hint: &str, ctx: &AmalgamationContext) -> String {
        let ctx_doc = ContextDoc {
            interface_to_left: self.add_morphism("ctx_dl", &ctx.interface_to_left),
            interface_to_right: self.add_morphism("ctx_dr", &ctx.interface_to_right),
            left_to_total: self.add_morphism("ctx_lt", &ctx.left_to_total),
            right_to_total: self.add_morphism("ctx_rt", &ctx.right_to_total),
        };
        let name = self.fresh(hint, &self.doc.contexts);
        self.doc.contexts.insert(name.clone(), ctx_doc);
        name
    }

    pub fn add_condition(&mut self, hint: &str, cond: &NestedCondition) -> String {
        let root = self.add_typed_graph(&format!("{hint}_root"), &cond.root);
        let body = self.body_to_doc(hint, cond);
        let name = self.fresh(hint, &self.doc.conditions);
        self.doc
            .conditions
            .insert(name.clone(), ConditionDoc { root, body });
        name
    }

    fn body_to_doc(&mut self, hint: &str, cond: &NestedCondition) -> BodyDoc {
        match &cond.body {
            ConditionBody::True => BodyDoc::True,
            ConditionBody::Exists { morphism, inner } => BodyDoc::Exists {
                morphism: self.add_morphism(&format!("{hint}_a"), morphism),
                sub_root: self.add_typed_graph(&format!("{hint}_c"), &inner.root),
                sub: Box::new(self.body_to_doc(hint, inner)),
            },
            ConditionBody::Not(inner) => BodyDoc::Not {
                sub: Box::new(self.body_to_doc(hint, inner)),
            },
            ConditionBody::And(children) => BodyDoc::And {
                children: children
                    .iter()
                    .map(|c| self.body_to_doc(hint, c))
                    .collect(),
            },
            ConditionBody::Or(children) => BodyDoc::Or {
                children: children
                    .iter()
                    .map(|c| self.body_to_doc(hint, c))
                    .collect(),
            },
        }
    }

    pub fn add_solution(
        &mut self,
        hint: &str,
        condition: &str,
        host: &str,
        match_: &str,
        solution: &Solution,
    ) -> String {
        let tree = self.tree_to_doc(hint, solution);
        let name = self.fresh(hint, &self.doc.solutions);
        self.doc.solutions.insert(
            name.clone(),
            SolutionDoc {
                condition: condition.to_string(),
                host: host.to_string(),
                match_: match_.to_string(),
                tree,
            },
        );
        name
    }

    fn tree_to_doc(&mut self, hint: &str, solution: &Solution) -> TreeDoc {
        match solution {
            Solution::Empty => TreeDoc::Empty,
            Solution::Witness { map, inner } => TreeDoc::Witness {
                morphism: self.add_morphism(&format!("{hint}_q"), map),
                sub: Box::new(self.tree_to_doc(hint, inner)),
            },
            Solution::Tuple(children) => TreeDoc::Tuple {
                children: children
                    .iter()
                    .map(|c| self.tree_to_doc(hint, c))
                    .collect(),
            },
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.doc.meta.insert(key.to_string(), value.to_string());
    }

    pub fn seed(&mut self, seed: u64) {
        self.doc.seed = Some(seed);
    }

    pub fn finish(self) -> Document {
        self.doc
    }
}
