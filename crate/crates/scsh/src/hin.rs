//! In-memory heterogeneous information networks: typed nodes, typed
//! reversible edges, and the schema that constrains both.
//!
//! Input formats are deliberately plain: TSV tables for nodes and edges,
//! a small JSON document for the schema. Node ids are opaque strings
//! externally and dense integers internally.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Internal dense node id. Stable for the lifetime of one `Hin`.
pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum HinError {
    #[error("unknown type `{typ}` at {place}")]
    UnknownType { typ: String, place: String },
    #[error("dangling endpoint `{id}` at {place}")]
    DanglingEndpoint { id: String, place: String },
    #[error("schema violation at {place}: {detail}")]
    SchemaViolation { place: String, detail: String },
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("malformed row at {place}: expected {expected} tab-separated columns")]
    MalformedRow { place: String, expected: usize },
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("schema parse error: {0}")]
    SchemaParse(#[from] serde_json::Error),
}

/// A declared edge type: `label` connects nodes of type `src` to `dst`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeTypeDecl {
    pub label: String,
    pub src: String,
    pub dst: String,
}

/// Type-level graph over node types and edge types.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Schema {
    pub node_types: Vec<String>,
    pub edge_types: Vec<EdgeTypeDecl>,
}

impl Schema {
    /// Parses and validates a schema from its JSON form.
    pub fn from_json(json: &str) -> Result<Schema, HinError> {
        let schema: Schema = serde_json::from_str(json)?;
        schema.check()?;
        Ok(schema)
    }

    /// Structural checks: unique non-empty labels, endpoints declared,
    /// and every edge type having a declared reverse.
    pub fn check(&self) -> Result<(), HinError> {
        let mut seen = BTreeSet::new();
        for t in &self.node_types {
            if t.is_empty() {
                return Err(HinError::InvalidSchema("empty node type label".into()));
            }
            if !seen.insert(t.clone()) {
                return Err(HinError::InvalidSchema(format!("duplicate node type `{t}`")));
            }
        }
        let mut labels = BTreeSet::new();
        for et in &self.edge_types {
            if et.label.is_empty() {
                return Err(HinError::InvalidSchema("empty edge type label".into()));
            }
            if !labels.insert(et.label.clone()) {
                return Err(HinError::InvalidSchema(format!(
                    "duplicate edge type `{}`",
                    et.label
                )));
            }
            for t in [&et.src, &et.dst] {
                if !self.node_types.iter().any(|n| n == t) {
                    return Err(HinError::UnknownType {
                        typ: t.clone(),
                        place: format!("edge type `{}`", et.label),
                    });
                }
            }
        }
        for et in &self.edge_types {
            let has_reverse = self
                .edge_types
                .iter()
                .any(|o| o.src == et.dst && o.dst == et.src);
            if !has_reverse {
                return Err(HinError::InvalidSchema(format!(
                    "edge type `{}` ({} -> {}) has no declared reverse",
                    et.label, et.src, et.dst
                )));
            }
        }
        Ok(())
    }

    pub fn edge_type(&self, label: &str) -> Option<&EdgeTypeDecl> {
        self.edge_types.iter().find(|e| e.label == label)
    }

    /// Edge labels usable to step from `src` to `dst`, in either stored
    /// direction (forward declarations and reverses of backward ones).
    pub fn labels_between(&self, src: &str, dst: &str) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        for et in &self.edge_types {
            if et.src == src && et.dst == dst {
                out.push((et.label.clone(), true));
            }
        }
        out
    }

    pub fn has_node_type(&self, t: &str) -> bool {
        self.node_types.iter().any(|n| n == t)
    }
}

/// One schema violation found in an existing `Hin`. Violations are data,
/// not faults: validation never aborts on the first finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub place: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.place, self.detail)
    }
}

/// A heterogeneous information network. Immutable after construction and
/// safe to share across threads.
#[derive(Debug, Clone)]
pub struct Hin {
    schema: Schema,
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    types: Vec<String>,
    labels: Vec<String>,
    /// Deduplicated directed edges as (src, dst, label index).
    edges: BTreeSet<(NodeId, NodeId, usize)>,
    /// Forward adjacency per label index.
    fwd: Vec<BTreeMap<usize, Vec<NodeId>>>,
    /// Reverse adjacency per label index (edges are reversible).
    rev: Vec<BTreeMap<usize, Vec<NodeId>>>,
}

impl Hin {
    fn empty(schema: Schema) -> Hin {
        let labels = schema.edge_types.iter().map(|e| e.label.clone()).collect();
        Hin {
            schema,
            names: Vec::new(),
            index: HashMap::new(),
            types: Vec::new(),
            labels,
            edges: BTreeSet::new(),
            fwd: Vec::new(),
            rev: Vec::new(),
        }
    }

    fn label_idx(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn add_node(&mut self, name: &str, typ: &str, place: &str) -> Result<NodeId, HinError> {
        if !self.schema.has_node_type(typ) {
            return Err(HinError::UnknownType {
                typ: typ.to_string(),
                place: place.to_string(),
            });
        }
        if self.index.contains_key(name) {
            return Err(HinError::DuplicateNode(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.types.push(typ.to_string());
        self.fwd.push(BTreeMap::new());
        self.rev.push(BTreeMap::new());
        Ok(id)
    }

    fn add_edge(&mut self, src: &str, dst: &str, label: &str, place: &str) -> Result<(), HinError> {
        let &s = self.index.get(src).ok_or_else(|| HinError::DanglingEndpoint {
            id: src.to_string(),
            place: place.to_string(),
        })?;
        let &d = self.index.get(dst).ok_or_else(|| HinError::DanglingEndpoint {
            id: dst.to_string(),
            place: place.to_string(),
        })?;
        let li = self.label_idx(label).ok_or_else(|| HinError::UnknownType {
            typ: label.to_string(),
            place: place.to_string(),
        })?;
        let decl = self.schema.edge_type(label).expect("label indexed");
        if self.types[s] != decl.src || self.types[d] != decl.dst {
            return Err(HinError::SchemaViolation {
                place: place.to_string(),
                detail: format!(
                    "edge `{label}` expects {} -> {}, got {} -> {}",
                    decl.src, decl.dst, self.types[s], self.types[d]
                ),
            });
        }
        if self.edges.insert((s, d, li)) {
            self.fwd[s].entry(li).or_default().push(d);
            self.rev[d].entry(li).or_default().push(s);
        }
        Ok(())
    }

    /// Builds an `Hin` from already-parsed rows; used by generators and tests.
    pub fn from_rows(
        schema: Schema,
        nodes: &[(String, String)],
        edges: &[(String, String, String)],
    ) -> Result<Hin, HinError> {
        schema.check()?;
        let mut h = Hin::empty(schema);
        for (i, (name, typ)) in nodes.iter().enumerate() {
            h.add_node(name, typ, &format!("node row {}", i + 1))?;
        }
        for (i, (s, d, l)) in edges.iter().enumerate() {
            h.add_edge(s, d, l, &format!("edge row {}", i + 1))?;
        }
        h.finish();
        Ok(h)
    }

    fn finish(&mut self) {
        for adj in self.fwd.iter_mut().chain(self.rev.iter_mut()) {
            for v in adj.values_mut() {
                v.sort_unstable();
                v.dedup();
            }
        }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id]
    }

    pub fn node_type(&self, id: NodeId) -> &str {
        &self.types[id]
    }

    pub fn lookup(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    /// Ids of all nodes with the given type, in id order.
    pub fn nodes_of_type(&self, typ: &str) -> Vec<NodeId> {
        (0..self.names.len()).filter(|&i| self.types[i] == typ).collect()
    }

    /// Neighbours of `node` along edges labelled `label`, walking forward
    /// (declared direction) or backward (implied reverse).
    pub fn step(&self, node: NodeId, label: &str, forward: bool) -> &[NodeId] {
        static EMPTY: &[NodeId] = &[];
        let Some(li) = self.label_idx(label) else { return EMPTY };
        let adj = if forward { &self.fwd[node] } else { &self.rev[node] };
        adj.get(&li).map(|v| v.as_slice()).unwrap_or(EMPTY)
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, &str)> {
        self.edges.iter().map(|&(s, d, l)| (s, d, self.labels[l].as_str()))
    }

    /// Serialises back to the TSV table pair accepted by [`load_hin`].
    /// Rows are emitted in a canonical (sorted) order.
    pub fn to_tables(&self) -> (String, String) {
        let mut node_rows: Vec<String> = (0..self.names.len())
            .map(|i| format!("{}\t{}", self.names[i], self.types[i]))
            .collect();
        node_rows.sort();
        let mut edge_rows: Vec<String> = self
            .edges
            .iter()
            .map(|&(s, d, l)| format!("{}\t{}\t{}", self.names[s], self.names[d], self.labels[l]))
            .collect();
        edge_rows.sort();
        (node_rows.join("\n") + "\n", edge_rows.join("\n") + "\n")
    }

    /// Canonical structural form used for equality.
    fn normal_form(
        &self,
    ) -> (
        BTreeMap<&str, &str>,
        BTreeSet<(&str, &str, &str)>,
    ) {
        let nodes = (0..self.names.len())
            .map(|i| (self.names[i].as_str(), self.types[i].as_str()))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|&(s, d, l)| {
                (
                    self.names[s].as_str(),
                    self.names[d].as_str(),
                    self.labels[l].as_str(),
                )
            })
            .collect();
        (nodes, edges)
    }
}

impl PartialEq for Hin {
    fn eq(&self, other: &Self) -> bool {
        self.normal_form() == other.normal_form()
    }
}
impl Eq for Hin {}

fn parse_tsv(source: &str, columns: usize, what: &str) -> Result<Vec<Vec<String>>, HinError> {
    let mut rows = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split('\t').map(|s| s.to_string()).collect();
        if fields.len() != columns {
            return Err(HinError::MalformedRow {
                place: format!("{what} line {}", lineno + 1),
                expected: columns,
            });
        }
        rows.push(fields);
    }
    Ok(rows)
}

/// Loads an HIN from its node table, edge table, and schema. Parallel
/// edges with identical (src, dst, type) collapse to one.
pub fn load_hin(node_table: &str, edge_table: &str, schema: &Schema) -> Result<Hin, HinError> {
    schema.check()?;
    let mut h = Hin::empty(schema.clone());
    for (i, row) in parse_tsv(node_table, 2, "node table")?.iter().enumerate() {
        h.add_node(&row[0], &row[1], &format!("node table row {}", i + 1))?;
    }
    for (i, row) in parse_tsv(edge_table, 3, "edge table")?.iter().enumerate() {
        h.add_edge(&row[0], &row[1], &row[2], &format!("edge table row {}", i + 1))?;
    }
    h.finish();
    Ok(h)
}

/// Scans an existing `Hin` for type-level inconsistencies. The returned
/// report is empty iff the network satisfies its schema.
pub fn validate_schema(h: &Hin) -> Vec<Violation> {
    let mut report = Vec::new();
    for (i, t) in (0..h.node_count()).map(|i| (i, h.node_type(i))) {
        if !h.schema.has_node_type(t) {
            report.push(Violation {
                place: format!("node `{}`", h.name(i)),
                detail: format!("undeclared node type `{t}`"),
            });
        }
    }
    for (s, d, label) in h.edges() {
        match h.schema.edge_type(label) {
            None => report.push(Violation {
                place: format!("edge ({}, {})", h.name(s), h.name(d)),
                detail: format!("undeclared edge type `{label}`"),
            }),
            Some(decl) => {
                if h.node_type(s) != decl.src || h.node_type(d) != decl.dst {
                    report.push(Violation {
                        place: format!("edge ({}, {})", h.name(s), h.name(d)),
                        detail: format!(
                            "type `{label}` expects {} -> {}, got {} -> {}",
                            decl.src,
                            decl.dst,
                            h.node_type(s),
                            h.node_type(d)
                        ),
                    });
                }
            }
        }
    }
    report
}
