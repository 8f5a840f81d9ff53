//! Triangle and truss machinery on homogeneous graphs.
//!
//! Everything here works on plain undirected edge sets, so the same
//! routines serve the full induced graph, node-induced subgraphs, and the
//! explicit edge sets grown by the edge-based search.
//!
//! The cohesiveness measure is the triangle-connected k-truss: every edge
//! sits in at least k-2 triangles, and any two triangles are linked by a
//! chain of triangles sharing an edge.

use std::collections::{BTreeMap, BTreeSet};

use crate::metapath::PGraph;

/// Undirected edge in compact index space, stored with the smaller
/// endpoint first.
pub type Edge = (usize, usize);

pub fn edge(u: usize, v: usize) -> Edge {
    (u.min(v), u.max(v))
}

fn adjacency(edges: &BTreeSet<Edge>) -> BTreeMap<usize, BTreeSet<usize>> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    adj
}

/// All triangles of the edge set, each as a sorted triple.
pub fn triangles(edges: &BTreeSet<Edge>) -> Vec<[usize; 3]> {
    let adj = adjacency(edges);
    let mut out = Vec::new();
    for &(u, v) in edges {
        let (nu, nv) = (&adj[&u], &adj[&v]);
        for &w in nu.intersection(nv) {
            if w > v {
                out.push([u, v, w]);
            }
        }
    }
    out
}

/// Number of triangles through each edge.
pub fn supports(edges: &BTreeSet<Edge>) -> BTreeMap<Edge, usize> {
    let mut sup: BTreeMap<Edge, usize> = edges.iter().map(|&e| (e, 0)).collect();
    for t in triangles(edges) {
        *sup.get_mut(&edge(t[0], t[1])).unwrap() += 1;
        *sup.get_mut(&edge(t[0], t[2])).unwrap() += 1;
        *sup.get_mut(&edge(t[1], t[2])).unwrap() += 1;
    }
    sup
}

/// Truss decomposition by support peeling. Returns the trussness of every
/// edge: the largest k for which the edge survives in a k-truss. Edges in
/// no triangle get trussness 2.
pub fn truss_decompose(edges: &BTreeSet<Edge>) -> BTreeMap<Edge, u32> {
    let mut adj = adjacency(edges);
    let mut sup = supports(edges);
    let mut remaining: BTreeSet<Edge> = edges.clone();
    let mut tau: BTreeMap<Edge, u32> = BTreeMap::new();
    let mut k = 2u32;
    while !remaining.is_empty() {
        // Smallest-support edge next; ties by the edge itself.
        let &e = remaining
            .iter()
            .min_by_key(|&&e| (sup[&e], e))
            .expect("non-empty");
        let (u, v) = e;
        k = k.max(sup[&e] as u32 + 2);
        tau.insert(e, k);
        let common: Vec<usize> = adj[&u].intersection(&adj[&v]).copied().collect();
        for w in common {
            for f in [edge(u, w), edge(v, w)] {
                if let Some(s) = sup.get_mut(&f) {
                    if remaining.contains(&f) {
                        *s -= 1;
                    }
                }
            }
        }
        remaining.remove(&e);
        adj.get_mut(&u).unwrap().remove(&v);
        adj.get_mut(&v).unwrap().remove(&u);
    }
    tau
}

/// Node trussness: the largest trussness over incident edges. Isolated
/// nodes are absent from the result.
pub fn node_trussness(edge_tau: &BTreeMap<Edge, u32>) -> BTreeMap<usize, u32> {
    let mut out: BTreeMap<usize, u32> = BTreeMap::new();
    for (&(u, v), &t) in edge_tau {
        for n in [u, v] {
            let e = out.entry(n).or_insert(0);
            *e = (*e).max(t);
        }
    }
    out
}

/// Groups triangles into triangle-connected classes: two triangles are
/// adjacent when they share an edge. Returns index lists into `tris`.
pub fn triangle_components(tris: &[[usize; 3]]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut by_edge: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for e in [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])] {
            match by_edge.get(&e) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    by_edge.insert(e, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..tris.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Edges of the subgraph induced by a node set.
pub fn induced_edge_set(g: &PGraph, nodes: &BTreeSet<usize>) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for &u in nodes {
        for &v in g.neighbors(u) {
            if v > u && nodes.contains(&v) {
                out.insert((u, v));
            }
        }
    }
    out
}

fn is_connected(nodes: &BTreeSet<usize>, edges: &BTreeSet<Edge>) -> bool {
    if nodes.len() <= 1 {
        return true;
    }
    let adj = adjacency(edges);
    let start = *nodes.iter().next().unwrap();
    let mut seen: BTreeSet<usize> = [start].into_iter().collect();
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        if let Some(ns) = adj.get(&u) {
            for &v in ns {
                if nodes.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
    }
    seen.len() == nodes.len()
}

/// Trussness of a node set with its witness edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSetTruss {
    /// Largest k such that some triangle-connected class of k-level
    /// triangles inside the induced subgraph covers every node of the
    /// set. 2 when the induced subgraph is merely connected, 0 when it is
    /// disconnected.
    pub k: u32,
    /// Edges of the witnessing triangle class (empty below k = 3).
    pub witness: BTreeSet<Edge>,
}

/// Computes the triangle-connected trussness of a node set within `g`.
pub fn tc_trussness_of_node_set(g: &PGraph, nodes: &BTreeSet<usize>) -> NodeSetTruss {
    let edges = induced_edge_set(g, nodes);
    let connected = is_connected(nodes, &edges);
    let fallback = NodeSetTruss {
        k: if connected { 2 } else { 0 },
        witness: BTreeSet::new(),
    };
    if nodes.len() < 3 {
        return fallback;
    }
    let tau = truss_decompose(&edges);
    let tris = triangles(&edges);
    let kmax = tau.values().copied().max().unwrap_or(2);
    for k in (3..=kmax).rev() {
        let level: Vec<[usize; 3]> = tris
            .iter()
            .filter(|t| {
                [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])]
                    .iter()
                    .all(|e| tau[e] >= k)
            })
            .copied()
            .collect();
        for comp in triangle_components(&level) {
            let mut covered: BTreeSet<usize> = BTreeSet::new();
            let mut witness: BTreeSet<Edge> = BTreeSet::new();
            for &i in &comp {
                let t = level[i];
                covered.extend(t);
                witness.extend([edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])]);
            }
            if covered == *nodes {
                return NodeSetTruss { k, witness };
            }
        }
    }
    fallback
}

/// Trussness of an explicit edge set, treated as its own subgraph: the
/// minimum in-set support plus two when every edge lies in a triangle and
/// all triangles form one triangle-connected class, otherwise 2 for a
/// connected edge set and 0 for a disconnected one.
pub fn tc_trussness_of_edge_set(edges: &BTreeSet<Edge>) -> u32 {
    let nodes: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let connected = is_connected(&nodes, edges);
    if edges.is_empty() || !connected {
        return if connected { 2 } else { 0 };
    }
    let sup = supports(edges);
    if sup.values().any(|&s| s == 0) {
        return if connected { 2 } else { 0 };
    }
    let tris = triangles(edges);
    if triangle_components(&tris).len() != 1 {
        return 2;
    }
    *sup.values().min().unwrap() as u32 + 2
}
