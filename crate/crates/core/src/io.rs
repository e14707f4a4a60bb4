//! JSON documents: instance files, candidate fragments and command outputs.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::caterpillar::{Caterpillar, CoverageError};
use crate::color::{Color, ColorSet, Coloring, ListAssignment};
use crate::graph::{BipartiteGraph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {message} (line {line}, column {column})")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("lists.{vertex}: color {value} is outside {{1,2,3}}")]
    ColorOutOfRange { vertex: String, value: i64 },
    #[error("lists: {0:?} is not a vertex of the graph")]
    UnknownListVertex(String),
    #[error("lists: vertex {0:?} has no entry")]
    MissingList(String),
    #[error("caterpillar.leaves: key {0:?} is not a backbone vertex")]
    LeafAnchor(String),
    #[error("caterpillar: {0}")]
    Caterpillar(#[from] CoverageError),
    #[error("colors: vertex {0:?} has no color")]
    MissingColor(String),
    #[error("colors: {0:?} is not a vertex of the graph")]
    UnknownColorVertex(String),
}

/// A problem instance: the graph plus optional lists and representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: BipartiteGraph,
    pub lists: Option<ListAssignment>,
    pub caterpillar: Option<Caterpillar>,
}

impl Instance {
    pub fn new(graph: BipartiteGraph) -> Self {
        Instance {
            graph,
            lists: None,
            caterpillar: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    x: Vec<String>,
    y: Vec<String>,
    edges: Vec<[String; 2]>,
    #[serde(default)]
    lists: Option<BTreeMap<String, Vec<i64>>>,
    #[serde(default)]
    caterpillar: Option<CaterpillarDoc>,
    #[serde(default, rename = "meta")]
    _meta: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CaterpillarDoc {
    backbone: Vec<String>,
    #[serde(default)]
    leaves: BTreeMap<String, Vec<String>>,
}

impl CaterpillarDoc {
    fn into_caterpillar(self) -> Result<Caterpillar, InstanceError> {
        let mut t = Caterpillar::path(self.backbone);
        for (anchor, leaves) in self.leaves {
            let k = t.backbone_position(&anchor).ok_or(InstanceError::LeafAnchor(anchor))?;
            t.leaves[k].extend(leaves);
        }
        Ok(t)
    }
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, InstanceError> {
    let json_error = |path: String, inner: serde_json::Error| InstanceError::Json {
        path,
        line: inner.line(),
        column: inner.column(),
        message: strip_position(&inner.to_string()),
    };
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut *de).map_err(|err| {
        let path = err.path().to_string();
        json_error(path, err.into_inner())
    })?;
    de.end().map_err(|e| json_error(".".into(), e))?;
    Ok(value)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(at) => msg[..at].to_owned(),
        None => msg.to_owned(),
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc = from_json(text)?;
    let graph = BipartiteGraph::new(
        doc.x.iter().map(String::as_str),
        doc.y.iter().map(String::as_str),
        doc.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
    )?;
    let lists = doc.lists.map(|raw| parse_lists(&graph, raw)).transpose()?;
    let caterpillar = match doc.caterpillar {
        Some(d) => {
            let t = d.into_caterpillar()?;
            t.layout(&graph)?;
            Some(t)
        }
        None => None,
    };
    Ok(Instance {
        graph,
        lists,
        caterpillar,
    })
}

fn parse_lists(g: &BipartiteGraph, raw: BTreeMap<String, Vec<i64>>) -> Result<ListAssignment, InstanceError> {
    let mut seen = vec![false; g.x_count() + g.y_count()];
    let mut lists = ListAssignment::uniform(g, ColorSet::EMPTY);
    for (id, colors) in raw {
        let v = g
            .vertex(&id)
            .ok_or_else(|| InstanceError::UnknownListVertex(id.clone()))?;
        let mut set = ColorSet::EMPTY;
        for value in colors {
            let c = u8::try_from(value)
                .ok()
                .and_then(Color::new)
                .ok_or_else(|| InstanceError::ColorOutOfRange {
                    vertex: id.clone(),
                    value,
                })?;
            set.insert(c);
        }
        lists.set(v, set);
        seen[flat(g, v)] = true;
    }
    if let Some(v) = g.vertices().find(|&v| !seen[flat(g, v)]) {
        return Err(InstanceError::MissingList(g.id(v).to_owned()));
    }
    Ok(lists)
}

fn flat(g: &BipartiteGraph, v: Vertex) -> usize {
    match v {
        Vertex::X(i) => i,
        Vertex::Y(i) => g.x_count() + i,
    }
}

/// Canonical document for an instance, in declaration order.
pub fn serialize_instance(inst: &Instance) -> String {
    pretty(&instance_value(inst, None))
}

/// Like [`serialize_instance`] with a trailing `"meta"` object.
pub fn serialize_instance_with_meta(inst: &Instance, meta: Value) -> String {
    pretty(&instance_value(inst, Some(meta)))
}

fn instance_value(inst: &Instance, meta: Option<Value>) -> Value {
    let g = &inst.graph;
    let mut doc = Map::new();
    doc.insert("x".into(), json!(g.x_ids()));
    doc.insert("y".into(), json!(g.y_ids()));
    let edges: Vec<Value> = g.edges().iter().map(|&(x, y)| json!([g.x_id(x), g.y_id(y)])).collect();
    doc.insert("edges".into(), Value::Array(edges));
    if let Some(lists) = &inst.lists {
        let mut m = Map::new();
        for v in g.vertices() {
            let colors: Vec<u8> = lists.get(v).iter().map(Color::get).collect();
            m.insert(g.id(v).to_owned(), json!(colors));
        }
        doc.insert("lists".into(), Value::Object(m));
    }
    if let Some(t) = &inst.caterpillar {
        doc.insert("caterpillar".into(), caterpillar_value(t));
    }
    if let Some(meta) = meta {
        doc.insert("meta".into(), meta);
    }
    Value::Object(doc)
}

pub(crate) fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

/// `{"backbone": [...], "leaves": {...}}`, listing only non-empty leaf sets.
pub fn caterpillar_value(t: &Caterpillar) -> Value {
    let mut leaves = Map::new();
    for (b, ls) in t.backbone.iter().zip(&t.leaves) {
        if !ls.is_empty() {
            leaves.insert(b.clone(), json!(ls));
        }
    }
    json!({ "backbone": t.backbone, "leaves": leaves })
}

pub fn coloring_value(g: &BipartiteGraph, c: &Coloring) -> Value {
    let mut m = Map::new();
    for v in g.vertices() {
        m.insert(g.id(v).to_owned(), json!(c.get(v).get()));
    }
    Value::Object(m)
}

/// Parses a caterpillar fragment: either the bare object or a recognition output.
pub fn parse_caterpillar_fragment(text: &str) -> Result<Caterpillar, InstanceError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Fragment {
        Bare(CaterpillarDoc),
        Wrapped(WrappedCaterpillar),
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct WrappedCaterpillar {
        #[serde(rename = "status")]
        _status: String,
        caterpillar: CaterpillarDoc,
    }
    match from_json::<Fragment>(text)? {
        Fragment::Bare(d) | Fragment::Wrapped(WrappedCaterpillar { caterpillar: d, .. }) => d.into_caterpillar(),
    }
}

/// Parses a coloring fragment (`{"x1":1,...}` or a color output) against `g`.
pub fn parse_coloring_fragment(g: &BipartiteGraph, text: &str) -> Result<Coloring, InstanceError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Fragment {
        Wrapped(WrappedColoring),
        Bare(BTreeMap<String, i64>),
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct WrappedColoring {
        #[serde(rename = "status")]
        _status: String,
        colors: BTreeMap<String, i64>,
    }
    let raw = match from_json::<Fragment>(text)? {
        Fragment::Wrapped(w) => w.colors,
        Fragment::Bare(m) => m,
    };
    let mut x = vec![None; g.x_count()];
    let mut y = vec![None; g.y_count()];
    for (id, value) in raw {
        let v = g
            .vertex(&id)
            .ok_or_else(|| InstanceError::UnknownColorVertex(id.clone()))?;
        let c = u8::try_from(value)
            .ok()
            .and_then(Color::new)
            .ok_or_else(|| InstanceError::ColorOutOfRange {
                vertex: id.clone(),
                value,
            })?;
        match v {
            Vertex::X(i) => x[i] = Some(c),
            Vertex::Y(i) => y[i] = Some(c),
        }
    }
    let missing = |side: &[Option<Color>], ids: &[String]| {
        side.iter()
            .position(Option::is_none)
            .map(|i| InstanceError::MissingColor(ids[i].clone()))
    };
    if let Some(err) = missing(&x, g.x_ids()).or_else(|| missing(&y, g.y_ids())) {
        return Err(err);
    }
    Ok(Coloring {
        x: x.into_iter().flatten().collect(),
        y: y.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let inst = parse_instance(r#"{"x":["x1"],"y":[],"edges":[]}"#).unwrap();
        assert_eq!(inst.graph.x_count(), 1);
        assert_eq!(inst.graph.y_count(), 0);
        assert!(inst.lists.is_none() && inst.caterpillar.is_none());
    }

    #[test]
    fn rejects_unknown_field_with_path() {
        let err = parse_instance(r#"{"x":[],"y":[],"edges":[],"extra":1}"#).unwrap_err();
        assert!(matches!(err, InstanceError::Json { .. }), "{err}");
        let err = parse_instance("{\"x\":[],\n\"y\":[],\"edges\":[[\"a\"]]}").unwrap_err();
        match err {
            InstanceError::Json { path, line, .. } => {
                assert_eq!(path, "edges[0]");
                assert_eq!(line, 2);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn meta_is_ignored() {
        let inst = parse_instance(r#"{"x":[],"y":[],"edges":[],"meta":{"seed":3}}"#).unwrap();
        assert_eq!(inst.graph.x_count(), 0);
    }

    #[test]
    fn bad_colors_and_list_coverage() {
        let doc = r#"{"x":["x1"],"y":["y1"],"edges":[["x1","y1"]],"lists":{"x1":[4],"y1":[1]}}"#;
        assert!(matches!(
            parse_instance(doc),
            Err(InstanceError::ColorOutOfRange { value: 4, .. })
        ));
        let doc = r#"{"x":["x1"],"y":["y1"],"edges":[],"lists":{"x1":[1]}}"#;
        assert!(matches!(parse_instance(doc), Err(InstanceError::MissingList(id)) if id == "y1"));
        let doc = r#"{"x":["x1"],"y":[],"edges":[],"lists":{"x1":[],"q":[1]}}"#;
        assert!(matches!(parse_instance(doc), Err(InstanceError::UnknownListVertex(_))));
    }

    #[test]
    fn empty_list_is_allowed() {
        let doc = r#"{"x":["x1"],"y":[],"edges":[],"lists":{"x1":[]}}"#;
        let inst = parse_instance(doc).unwrap();
        assert!(inst.lists.unwrap().x[0].is_empty());
    }

    #[test]
    fn caterpillar_must_cover_x() {
        let doc = r#"{"x":["x1","x2"],"y":[],"edges":[],"caterpillar":{"backbone":["x1"]}}"#;
        assert!(matches!(
            parse_instance(doc),
            Err(InstanceError::Caterpillar(CoverageError::Missing(_)))
        ));
        let doc = r#"{"x":["x1","x2"],"y":[],"edges":[],"caterpillar":{"backbone":["x1"],"leaves":{"x2":["x1"]}}}"#;
        assert!(matches!(parse_instance(doc), Err(InstanceError::LeafAnchor(_))));
    }

    #[test]
    fn empty_instance_serializes_with_empty_arrays() {
        let text = serialize_instance(&Instance::new(BipartiteGraph::empty()));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v, json!({"x": [], "y": [], "edges": []}));
    }

    #[test]
    fn caterpillar_is_retained() {
        let doc = r#"{"x":["x1","x2"],"y":[],"edges":[],"caterpillar":{"backbone":["x1"],"leaves":{"x1":["x2"]}}}"#;
        let inst = parse_instance(doc).unwrap();
        let text = serialize_instance(&inst);
        assert!(text.contains("\"caterpillar\""));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn fragments() {
        let g = BipartiteGraph::new(["x1", "x2"], ["y1"], [("x1", "y1")]).unwrap();
        let t = parse_caterpillar_fragment(r#"{"backbone":["x1"],"leaves":{"x1":["x2"]}}"#).unwrap();
        assert_eq!(t.leaves, vec![vec!["x2".to_string()]]);
        let wrapped = r#"{"status":"caterpillar-convex","caterpillar":{"backbone":["x2","x1"],"leaves":{}}}"#;
        assert_eq!(parse_caterpillar_fragment(wrapped).unwrap().backbone, vec!["x2", "x1"]);
        let c = parse_coloring_fragment(&g, r#"{"x1":1,"x2":2,"y1":3}"#).unwrap();
        assert_eq!(c.y[0].get(), 3);
        let wrapped = r#"{"status":"colored","colors":{"x1":1,"x2":2,"y1":3}}"#;
        assert_eq!(parse_coloring_fragment(&g, wrapped).unwrap(), c);
        assert!(matches!(
            parse_coloring_fragment(&g, r#"{"x1":1,"y1":3}"#),
            Err(InstanceError::MissingColor(id)) if id == "x2"
        ));
    }
}
