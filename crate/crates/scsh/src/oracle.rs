//! Reference implementations used to cross-check the solvers.
//!
//! The brute-force optimum enumerates every candidate community and rates
//! it with a deliberately naive trussness routine that shares no code
//! with the production one in [`crate::truss`]. Also provides the
//! hardness-reduction gadget and a seeded random instance generator.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hin::{EdgeTypeDecl, Hin, Schema};
use crate::metapath::PGraph;

/// Hard cap on the number of candidate subsets the oracle will touch.
pub const ORACLE_COMBO_LIMIT: u128 = 10_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance too large for brute force: C({n}, {k}) = {combos} exceeds {limit}")]
    TooLarge {
        n: usize,
        k: usize,
        combos: u128,
        limit: u128,
    },
    #[error("query node index {0} out of range")]
    BadQuery(usize),
    #[error("size must be at least 1, got {0}")]
    BadSize(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Sorted community indices, query included.
    pub community: Vec<usize>,
    pub trussness: u32,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > ORACLE_COMBO_LIMIT * 1000 {
            return u128::MAX;
        }
    }
    acc
}

/// Naive triangle-connected trussness of a node set: iterated deletion at
/// each level from the top, then a definitional breadth-first search over
/// triangle adjacency. Quadratic and proud of it.
fn naive_tc_trussness(g: &PGraph, nodes: &[usize]) -> u32 {
    let node_set: BTreeSet<usize> = nodes.iter().copied().collect();
    // Plain connectivity first.
    if !nodes.is_empty() {
        let mut seen = vec![nodes[0]];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            i += 1;
            for &v in g.neighbors(u) {
                if node_set.contains(&v) && !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        if seen.len() != nodes.len() {
            return 0;
        }
    }
    let mut base_edges: Vec<(usize, usize)> = Vec::new();
    for &u in nodes {
        for &v in g.neighbors(u) {
            if u < v && node_set.contains(&v) {
                base_edges.push((u, v));
            }
        }
    }
    for k in (3..=nodes.len() as u32).rev() {
        // Iterated deletion: drop edges with fewer than k-2 in-set triangles.
        let mut edges = base_edges.clone();
        loop {
            let count = |e: (usize, usize), edges: &[(usize, usize)]| {
                nodes
                    .iter()
                    .filter(|&&w| {
                        w != e.0
                            && w != e.1
                            && edges.contains(&(e.0.min(w), e.0.max(w)))
                            && edges.contains(&(e.1.min(w), e.1.max(w)))
                    })
                    .count() as u32
            };
            let keep: Vec<(usize, usize)> = edges
                .iter()
                .filter(|&&e| count(e, &edges) >= k - 2)
                .copied()
                .collect();
            if keep.len() == edges.len() {
                break;
            }
            edges = keep;
        }
        // Triangles of the surviving subgraph.
        let mut tris: Vec<[usize; 3]> = Vec::new();
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                for c in b + 1..nodes.len() {
                    let (x, y, z) = (nodes[a], nodes[b], nodes[c]);
                    let has = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
                    if has(x, y) && has(x, z) && has(y, z) {
                        tris.push([x, y, z]);
                    }
                }
            }
        }
        if tris.is_empty() {
            continue;
        }
        // Breadth-first search over "share two nodes" adjacency.
        let mut reached = vec![false; tris.len()];
        reached[0] = true;
        let mut queue = vec![0usize];
        while let Some(i) = queue.pop() {
            for j in 0..tris.len() {
                if !reached[j] {
                    let shared = tris[i].iter().filter(|x| tris[j].contains(x)).count();
                    if shared == 2 {
                        reached[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
        for start in 0..tris.len() {
            if start > 0 {
                // Re-run from each class representative.
                for r in reached.iter_mut() {
                    *r = false;
                }
                reached[start] = true;
                let mut q2 = vec![start];
                while let Some(i) = q2.pop() {
                    for j in 0..tris.len() {
                        if !reached[j] {
                            let shared =
                                tris[i].iter().filter(|x| tris[j].contains(x)).count();
                            if shared == 2 {
                                reached[j] = true;
                                q2.push(j);
                            }
                        }
                    }
                }
            }
            let mut covered: BTreeSet<usize> = BTreeSet::new();
            for (j, t) in tris.iter().enumerate() {
                if reached[j] {
                    covered.extend(t.iter().copied());
                }
            }
            if covered == node_set {
                return k;
            }
        }
    }
    2
}

/// Exhaustive optimum: the best trussness over all size-`s` node sets
/// containing `q`, with the lexicographically smallest witness. `None`
/// when no connected candidate exists.
pub fn brute_force_opt(
    g: &PGraph,
    q: usize,
    s: usize,
) -> Result<Option<OracleResult>, OracleError> {
    if q >= g.n() {
        return Err(OracleError::BadQuery(q));
    }
    if s == 0 {
        return Err(OracleError::BadSize(s));
    }
    let others: Vec<usize> = (0..g.n()).filter(|&v| v != q).collect();
    let k = s - 1;
    if k > others.len() {
        return Ok(None);
    }
    let combos = binomial(others.len(), k);
    if combos > ORACLE_COMBO_LIMIT {
        return Err(OracleError::TooLarge {
            n: others.len(),
            k,
            combos,
            limit: ORACLE_COMBO_LIMIT,
        });
    }
    let mut best: Option<OracleResult> = None;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut community: Vec<usize> = idx.iter().map(|&i| others[i]).collect();
        community.push(q);
        community.sort_unstable();
        let t = naive_tc_trussness(g, &community);
        if t > 0 && best.as_ref().map_or(true, |b| t > b.trussness) {
            best = Some(OracleResult {
                community,
                trussness: t,
            });
        }
        // Advance to the next lexicographic combination.
        if k == 0 {
            break;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(best);
            }
            i -= 1;
            if idx[i] != i + others.len() - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(best)
}

/// Builds the clique-hardness gadget for a simple graph on `n` vertices:
/// one hub node per input edge, linked to both endpoints and to an extra
/// query vertex. Under the meta-path `T1-T2-T1` the induced graph is the
/// input graph with the query attached to every non-isolated vertex, so a
/// size-(m+1) community containing the query reaches trussness m+1
/// exactly when the input has an m-clique.
pub fn gadget_from_graph(n: usize, edges: &[(usize, usize)]) -> (Hin, String) {
    let schema = Schema {
        node_types: vec!["T1".into(), "T2".into()],
        edge_types: vec![
            EdgeTypeDecl {
                label: "link".into(),
                src: "T1".into(),
                dst: "T2".into(),
            },
            EdgeTypeDecl {
                label: "link_rev".into(),
                src: "T2".into(),
                dst: "T1".into(),
            },
        ],
    };
    let mut nodes: Vec<(String, String)> = (0..n).map(|i| (format!("v{i}"), "T1".into())).collect();
    nodes.push(("q".into(), "T1".into()));
    let mut hin_edges: Vec<(String, String, String)> = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        nodes.push((format!("w{i}"), "T2".into()));
        hin_edges.push((format!("v{u}"), format!("w{i}"), "link".into()));
        hin_edges.push((format!("v{v}"), format!("w{i}"), "link".into()));
        hin_edges.push(("q".into(), format!("w{i}"), "link".into()));
    }
    let hin = Hin::from_rows(schema, &nodes, &hin_edges).expect("gadget is schema-valid");
    (hin, "q".into())
}

/// Shape of a generated random instance.
#[derive(Debug, Clone)]
pub struct RandomHinParams {
    /// Number of target-type nodes.
    pub target_count: usize,
    /// Number of centre-type nodes, each spanning one star.
    pub center_count: usize,
    /// Probability that a given centre links to a given target.
    pub attach_prob: f64,
    /// Additional schema layers chained behind the centres, for testing
    /// meta-paths longer than two steps.
    pub extra_layers: usize,
}

impl Default for RandomHinParams {
    fn default() -> Self {
        RandomHinParams {
            target_count: 40,
            center_count: 25,
            attach_prob: 0.1,
            extra_layers: 0,
        }
    }
}

/// Generates a random layered network, reproducible from the seed. Types
/// are `A` (targets), `P` (centres), then `L1`, `L2`, ... for any extra
/// layers; edge labels are `write` (A to P) and `feeds{j}` between
/// consecutive deeper layers.
pub fn random_hin(p: &RandomHinParams, seed: u64) -> Hin {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut node_types = vec!["A".to_string(), "P".to_string()];
    let mut edge_types = vec![
        EdgeTypeDecl {
            label: "write".into(),
            src: "A".into(),
            dst: "P".into(),
        },
        EdgeTypeDecl {
            label: "written_by".into(),
            src: "P".into(),
            dst: "A".into(),
        },
    ];
    for j in 1..=p.extra_layers {
        let prev = if j == 1 { "P".to_string() } else { format!("L{}", j - 1) };
        node_types.push(format!("L{j}"));
        edge_types.push(EdgeTypeDecl {
            label: format!("feeds{j}"),
            src: prev.clone(),
            dst: format!("L{j}"),
        });
        edge_types.push(EdgeTypeDecl {
            label: format!("feeds{j}_rev"),
            src: format!("L{j}"),
            dst: prev,
        });
    }
    let schema = Schema {
        node_types,
        edge_types,
    };
    let mut nodes: Vec<(String, String)> = (0..p.target_count)
        .map(|i| (format!("a{i}"), "A".into()))
        .collect();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for c in 0..p.center_count {
        nodes.push((format!("p{c}"), "P".into()));
        for t in 0..p.target_count {
            if rng.gen_bool(p.attach_prob.clamp(0.0, 1.0)) {
                edges.push((format!("a{t}"), format!("p{c}"), "write".into()));
            }
        }
    }
    for j in 1..=p.extra_layers {
        let prev_count = p.center_count.max(1);
        let prev_name = |i: usize| {
            if j == 1 {
                format!("p{i}")
            } else {
                format!("l{}_{i}", j - 1)
            }
        };
        for i in 0..prev_count {
            nodes.push((format!("l{j}_{i}"), format!("L{j}")));
            // Two attachments keep deeper layers connected enough to
            // carry long meta-paths without changing the target layer.
            for _ in 0..2 {
                let k = rng.gen_range(0..prev_count);
                edges.push((prev_name(k), format!("l{j}_{i}"), format!("feeds{j}")));
            }
        }
    }
    Hin::from_rows(schema, &nodes, &edges).expect("generated instance is schema-valid")
}
