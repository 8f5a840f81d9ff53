//! Seed-and-merge heuristic: grow a candidate from the query node's
//! stars, then shrink back to the size budget by peeling weak edges.
//! The result is a feasible community whose trussness lower-bounds the
//! optimum.

use std::collections::BTreeSet;

use crate::metapath::{PGraph, PStar};
use crate::truss::{induced_edge_set, node_trussness, tc_trussness_of_node_set, truss_decompose};

/// Default cap on the number of seed stars expanded per query.
pub const DEFAULT_MAX_ROUNDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicResult {
    pub community: BTreeSet<usize>,
    pub trussness: u32,
    /// Seed rounds actually expanded.
    pub rounds: usize,
}

fn component_of(g: &PGraph, q: usize) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = [q].into_iter().collect();
    let mut stack = vec![q];
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen
}

/// Shrinks `c` to exactly `target` nodes by repeatedly deleting a
/// weakest edge (smallest trussness in the current induced subgraph,
/// preferring edges not incident to `q`, then the smallest pair) and
/// evicting nodes that become isolated. Fails when `q` would be evicted
/// or the set jumps below the target.
pub fn shrink_to_size(
    g: &PGraph,
    c: &BTreeSet<usize>,
    q: usize,
    target: usize,
) -> Option<BTreeSet<usize>> {
    let mut nodes = c.clone();
    let mut edges = induced_edge_set(g, &nodes);
    while nodes.len() > target {
        let tau = truss_decompose(&edges);
        let &victim = tau
            .keys()
            .min_by_key(|&&(u, v)| (tau[&(u, v)], u == q || v == q, (u, v)))?;
        edges.remove(&victim);
        for n in [victim.0, victim.1] {
            let isolated = !edges.iter().any(|&(a, b)| a == n || b == n);
            if isolated {
                if n == q {
                    return None;
                }
                nodes.remove(&n);
            }
        }
    }
    if nodes.len() == target {
        Some(nodes)
    } else {
        None
    }
}

fn fast_path(stars: &[PStar], q: usize, s: usize) -> Option<HeuristicResult> {
    let mut q_stars: Vec<&PStar> = stars
        .iter()
        .filter(|st| st.members.binary_search(&q).is_ok() && st.members.len() >= s)
        .collect();
    q_stars.sort_by(|a, b| {
        b.members
            .len()
            .cmp(&a.members.len())
            .then(a.members.cmp(&b.members))
    });
    let star = q_stars.first()?;
    let mut community: BTreeSet<usize> = [q].into_iter().collect();
    for &m in &star.members {
        if community.len() == s {
            break;
        }
        community.insert(m);
    }
    // Any s members of one star form an s-clique, the best possible.
    Some(HeuristicResult {
        community,
        trussness: s as u32,
        rounds: 0,
    })
}

fn bfs_fallback(g: &PGraph, q: usize, s: usize) -> Option<BTreeSet<usize>> {
    let mut order = vec![q];
    let mut seen: BTreeSet<usize> = [q].into_iter().collect();
    let mut i = 0;
    while i < order.len() && order.len() < s {
        let u = order[i];
        i += 1;
        for &v in g.neighbors(u) {
            if seen.insert(v) {
                order.push(v);
                if order.len() == s {
                    break;
                }
            }
        }
    }
    if order.len() < s {
        return None;
    }
    Some(order.into_iter().collect())
}

/// Runs the heuristic. `stars` must be the full star list of the induced
/// graph. Returns `None` only when no connected size-`s` candidate
/// containing `q` exists at all.
pub fn scsh_heu(
    g: &PGraph,
    stars: &[PStar],
    q: usize,
    s: usize,
    max_rounds: usize,
) -> Option<HeuristicResult> {
    if s == 0 {
        return None;
    }
    if s == 1 {
        return Some(HeuristicResult {
            community: [q].into_iter().collect(),
            trussness: 2,
            rounds: 0,
        });
    }
    if let Some(r) = fast_path(stars, q, s) {
        return Some(r);
    }
    let component = component_of(g, q);
    if component.len() < s {
        return None;
    }

    let mut seeds: Vec<&PStar> = stars
        .iter()
        .filter(|st| st.members.binary_search(&q).is_ok())
        .collect();
    seeds.sort_by(|a, b| {
        b.members
            .len()
            .cmp(&a.members.len())
            .then(a.members.cmp(&b.members))
    });
    let mut best: Option<HeuristicResult> = None;
    let mut rounds = 0;
    for seed in seeds.into_iter().take(max_rounds) {
        rounds += 1;
        let mut c: BTreeSet<usize> = seed.members.iter().copied().collect();
        while c.len() < s {
            // Merge the overlapping star that yields the densest union.
            let mut pick: Option<(usize, usize)> = None;
            for (i, st) in stars.iter().enumerate() {
                if st.members.iter().all(|m| c.contains(m))
                    || !st.members.iter().any(|m| c.contains(m))
                {
                    continue;
                }
                let mut union = c.clone();
                union.extend(st.members.iter().copied());
                let score = induced_edge_set(g, &union).len();
                if pick.map_or(true, |(_, sc)| score > sc) {
                    pick = Some((i, score));
                }
            }
            let Some((i, _)) = pick else { break };
            c.extend(stars[i].members.iter().copied());
        }
        if c.len() < s {
            continue;
        }
        let Some(c) = shrink_to_size(g, &c, q, s) else { continue };
        let t = tc_trussness_of_node_set(g, &c).k;
        if t > 0 && best.as_ref().map_or(true, |b| t > b.trussness) {
            best = Some(HeuristicResult {
                community: c,
                trussness: t,
                rounds,
            });
        }
        // An s-node community can never beat trussness s.
        if best.as_ref().map_or(false, |b| b.trussness as usize >= s) {
            break;
        }
    }
    if best.is_some() {
        return best;
    }
    // Last resort: any connected s-set containing q.
    let c = bfs_fallback(g, q, s)?;
    let t = tc_trussness_of_node_set(g, &c).k;
    Some(HeuristicResult {
        community: c,
        trussness: t,
        rounds,
    })
}

/// Node trussness of the whole induced graph; a convenience for callers
/// that mix heuristic output with bound computations.
pub fn global_node_trussness(g: &PGraph) -> Vec<u32> {
    let edges = g.edges().into_iter().collect();
    let tau = truss_decompose(&edges);
    let map = node_trussness(&tau);
    (0..g.n()).map(|i| map.get(&i).copied().unwrap_or(0)).collect()
}
