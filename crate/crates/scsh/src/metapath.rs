//! Symmetric meta-paths and the homogeneous graph they induce.
//!
//! A meta-path alternates node types and edge types through the schema,
//! e.g. `A-P-A` (labels inferred) or `A[write]P[written_by]A` (labels
//! explicit). Only symmetric paths of even length are accepted: the type
//! sequence must read the same in both directions, which puts a unique
//! centre type in the middle.
//!
//! Two nodes of the target type are connected in the induced graph
//! ([`PGraph`]) when at least one path instance links them. All nodes
//! reached from one centre node by half the path form a star, and every
//! star is a clique in the induced graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::hin::{Hin, NodeId, Schema};

#[derive(Debug, Error)]
pub enum MetaPathError {
    #[error("meta-path has odd length {0}; a symmetric path needs an even number of steps")]
    OddLength(usize),
    #[error("meta-path is not symmetric: type sequence is not palindromic")]
    NotSymmetric,
    #[error("unknown node type `{0}` in meta-path")]
    UnknownTypeInPath(String),
    #[error("no edge type connects `{from}` and `{to}`{label}")]
    NoSuchEdgeType {
        from: String,
        to: String,
        label: String,
    },
    #[error("malformed meta-path: {0}")]
    Malformed(String),
}

/// A parsed meta-path: `types` has one entry per position, `labels` one
/// per step (`None` when the label is to be inferred from the schema).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaPath {
    pub types: Vec<String>,
    pub labels: Vec<Option<String>>,
}

/// One resolved step: every (label, walk-forward?) alternative that
/// realises the transition between two consecutive path types.
#[derive(Debug, Clone)]
struct Step {
    options: Vec<(String, bool)>,
}

impl MetaPath {
    /// Parses the textual grammar. Symmetry and schema conformance are
    /// checked here as far as the string allows; edge-type existence
    /// needs [`MetaPath::resolve`] with a schema.
    pub fn parse(input: &str) -> Result<MetaPath, MetaPathError> {
        let mut types = Vec::new();
        let mut labels = Vec::new();
        let mut chars = input.chars().peekable();
        let mut cur = String::new();
        while let Some(c) = chars.next() {
            match c {
                '-' => {
                    if cur.is_empty() {
                        return Err(MetaPathError::Malformed("empty type name".into()));
                    }
                    types.push(std::mem::take(&mut cur));
                    labels.push(None);
                }
                '[' => {
                    if cur.is_empty() {
                        return Err(MetaPathError::Malformed("empty type name".into()));
                    }
                    types.push(std::mem::take(&mut cur));
                    let mut label = String::new();
                    loop {
                        match chars.next() {
                            Some(']') => break,
                            Some(ch) => label.push(ch),
                            None => {
                                return Err(MetaPathError::Malformed("unclosed `[`".into()))
                            }
                        }
                    }
                    if label.is_empty() {
                        return Err(MetaPathError::Malformed("empty edge label".into()));
                    }
                    labels.push(Some(label));
                }
                c if c.is_whitespace() => {}
                c => cur.push(c),
            }
        }
        if cur.is_empty() {
            return Err(MetaPathError::Malformed("missing final type name".into()));
        }
        types.push(cur);
        if types.len() < 3 {
            return Err(MetaPathError::Malformed(
                "meta-path needs at least two steps".into(),
            ));
        }
        let len = labels.len();
        if len % 2 != 0 {
            return Err(MetaPathError::OddLength(len));
        }
        let reversed: Vec<&String> = types.iter().rev().collect();
        if !types.iter().zip(reversed).all(|(a, b)| a == b) {
            return Err(MetaPathError::NotSymmetric);
        }
        Ok(MetaPath { types, labels })
    }

    /// Number of steps `l`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Type of the path endpoints.
    pub fn target_type(&self) -> &str {
        &self.types[0]
    }

    /// Type at the middle position.
    pub fn centre_type(&self) -> &str {
        &self.types[self.len() / 2]
    }

    /// Resolves every step against a schema, producing the concrete
    /// (label, direction) alternatives to walk.
    fn resolve(&self, schema: &Schema) -> Result<Vec<Step>, MetaPathError> {
        for t in &self.types {
            if !schema.has_node_type(t) {
                return Err(MetaPathError::UnknownTypeInPath(t.clone()));
            }
        }
        let mut steps = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let (from, to) = (&self.types[i], &self.types[i + 1]);
            let mut options: Vec<(String, bool)> = Vec::new();
            match &self.labels[i] {
                Some(label) => match schema.edge_type(label) {
                    Some(decl) if &decl.src == from && &decl.dst == to => {
                        options.push((label.clone(), true));
                    }
                    Some(decl) if &decl.src == to && &decl.dst == from => {
                        options.push((label.clone(), false));
                    }
                    _ => {}
                },
                None => {
                    for (l, fwd) in schema.labels_between(from, to) {
                        options.push((l, fwd));
                    }
                    for (l, _) in schema.labels_between(to, from) {
                        options.push((l, false));
                    }
                    options.sort();
                    options.dedup();
                }
            }
            if options.is_empty() {
                return Err(MetaPathError::NoSuchEdgeType {
                    from: from.clone(),
                    to: to.clone(),
                    label: self
                        .labels[i]
                        .as_ref()
                        .map(|l| format!(" via `{l}`"))
                        .unwrap_or_default(),
                });
            }
            steps.push(Step { options });
        }
        Ok(steps)
    }

    /// Checks the path against a schema without building anything.
    pub fn validate(&self, schema: &Schema) -> Result<(), MetaPathError> {
        self.resolve(schema).map(|_| ())
    }
}

impl std::fmt::Display for MetaPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, t) in self.types.iter().enumerate() {
            if i > 0 {
                match &self.labels[i - 1] {
                    Some(l) => write!(f, "[{l}]")?,
                    None => write!(f, "-")?,
                }
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Homogeneous undirected graph over the target-type nodes, with compact
/// indices and the original node names kept alongside.
#[derive(Debug, Clone)]
pub struct PGraph {
    pub labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl PGraph {
    /// Builds a graph from node names and undirected edge pairs given in
    /// index space. Self-loops are ignored, duplicates collapse.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> PGraph {
        let n = labels.len();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        PGraph {
            labels,
            index,
            adj,
            m: set.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// All edges as (u, v) with u < v, in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edge list as TSV rows of node names, one undirected edge per row.
    pub fn to_edge_tsv(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&self.labels[u]);
            out.push('\t');
            out.push_str(&self.labels[v]);
            out.push('\n');
        }
        out
    }
}

fn walk_frontier(h: &Hin, start: &BTreeSet<NodeId>, steps: &[Step]) -> BTreeSet<NodeId> {
    let mut frontier = start.clone();
    for step in steps {
        let mut next = BTreeSet::new();
        for &node in &frontier {
            for (label, fwd) in &step.options {
                next.extend(h.step(node, label, *fwd).iter().copied());
            }
        }
        frontier = next;
    }
    frontier
}

/// A P-star: the set of target nodes (as `PGraph` indices) reachable from
/// one centre node by half the meta-path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PStar {
    pub centre: String,
    pub members: Vec<usize>,
}

/// Builds the induced homogeneous graph for a symmetric meta-path. The
/// vertex set is every node of the target type; nodes never paired end up
/// isolated.
pub fn build_pgraph(h: &Hin, path: &MetaPath) -> Result<PGraph, MetaPathError> {
    let steps = path.resolve(h.schema())?;
    let targets = h.nodes_of_type(path.target_type());
    let labels: Vec<String> = targets.iter().map(|&t| h.name(t).to_string()).collect();
    let to_idx: HashMap<NodeId, usize> =
        targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let half = &steps[path.len() / 2..];
    let mut edges = Vec::new();
    for centre in h.nodes_of_type(path.centre_type()) {
        let start: BTreeSet<NodeId> = [centre].into_iter().collect();
        let members: Vec<usize> = walk_frontier(h, &start, half)
            .into_iter()
            .filter_map(|t| to_idx.get(&t).copied())
            .collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                edges.push((members[i], members[j]));
            }
        }
    }
    Ok(PGraph::from_edges(labels, &edges))
}

/// Enumerates P-stars, optionally keeping only members inside
/// `restrict_to`. Stars with fewer than one surviving member are dropped.
/// Stars are ordered by centre name; members are sorted indices.
pub fn enumerate_pstars(
    h: &Hin,
    path: &MetaPath,
    g: &PGraph,
    restrict_to: Option<&BTreeSet<usize>>,
) -> Result<Vec<PStar>, MetaPathError> {
    let steps = path.resolve(h.schema())?;
    let half = &steps[path.len() / 2..];
    let mut stars = Vec::new();
    for centre in h.nodes_of_type(path.centre_type()) {
        let start: BTreeSet<NodeId> = [centre].into_iter().collect();
        let mut members: Vec<usize> = walk_frontier(h, &start, half)
            .into_iter()
            .filter_map(|t| g.index_of(h.name(t)))
            .filter(|i| restrict_to.map_or(true, |r| r.contains(i)))
            .collect();
        members.sort_unstable();
        if !members.is_empty() {
            stars.push(PStar {
                centre: h.name(centre).to_string(),
                members,
            });
        }
    }
    stars.sort_by(|a, b| a.centre.cmp(&b.centre));
    Ok(stars)
}

/// Counts full path instances between two target nodes by layered dynamic
/// programming over walk counts. Saturates instead of overflowing.
pub fn count_path_instances(
    h: &Hin,
    path: &MetaPath,
    u: NodeId,
    v: NodeId,
) -> Result<u64, MetaPathError> {
    let steps = path.resolve(h.schema())?;
    let mut counts: BTreeMap<NodeId, u64> = BTreeMap::new();
    counts.insert(u, 1);
    for step in &steps {
        let mut next: BTreeMap<NodeId, u64> = BTreeMap::new();
        for (&node, &c) in &counts {
            let mut outs: BTreeSet<NodeId> = BTreeSet::new();
            for (label, fwd) in &step.options {
                outs.extend(h.step(node, label, *fwd).iter().copied());
            }
            for t in outs {
                let e = next.entry(t).or_insert(0);
                *e = e.saturating_add(c);
            }
        }
        counts = next;
    }
    Ok(counts.get(&v).copied().unwrap_or(0))
}
