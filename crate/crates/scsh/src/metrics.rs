//! Quality metrics reported alongside a community.

use std::collections::BTreeSet;

use crate::hin::Hin;
use crate::metapath::{count_path_instances, MetaPath, MetaPathError, PGraph};
use crate::truss::induced_edge_set;

/// Pair density of a community in the induced graph: the fraction of
/// node pairs that are actually connected, `2|E| / (|C| (|C|-1))`.
pub fn ppair_density(g: &PGraph, community: &BTreeSet<usize>) -> f64 {
    let n = community.len();
    if n < 2 {
        return 0.0;
    }
    let m = induced_edge_set(g, community).len();
    2.0 * m as f64 / (n as f64 * (n - 1) as f64)
}

/// PathSim between two nodes: `2 cnt(u,v) / (cnt(u,u) + cnt(v,v))`, where
/// `cnt` counts full path instances. Pairs whose self-instance counts are
/// both zero score 0.
pub fn pathsim(h: &Hin, path: &MetaPath, u: usize, v: usize) -> Result<f64, MetaPathError> {
    let uv = count_path_instances(h, path, u, v)?;
    let uu = count_path_instances(h, path, u, u)?;
    let vv = count_path_instances(h, path, v, v)?;
    if uu + vv == 0 {
        return Ok(0.0);
    }
    Ok(2.0 * uv as f64 / (uu + vv) as f64)
}

/// Average PathSim over all unordered node pairs of a community. The
/// community is given by induced-graph indices; `g` maps them back to
/// network nodes.
pub fn community_pathsim(
    h: &Hin,
    path: &MetaPath,
    g: &PGraph,
    community: &BTreeSet<usize>,
) -> Result<f64, MetaPathError> {
    if community.len() < 2 {
        return Ok(0.0);
    }
    let ids: Vec<usize> = community
        .iter()
        .map(|&i| h.lookup(&g.labels[i]).expect("community node exists in network"))
        .collect();
    let mut total = 0.0;
    let mut pairs = 0usize;
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            total += pathsim(h, path, ids[i], ids[j])?;
            pairs += 1;
        }
    }
    Ok(total / pairs as f64)
}
