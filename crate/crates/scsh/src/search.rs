//! Exact solvers: lexicographic k-combination branch and bound over node
//! sets (NSG) or edge sets (ESG), with admissible upper bounds, dominance
//! branching, distance-first ordering with early stops, and candidate
//! reduction rules.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::heuristic::{scsh_heu, DEFAULT_MAX_ROUNDS};
use crate::metapath::{PGraph, PStar};
use crate::truss::{
    edge, induced_edge_set, node_trussness, supports, tc_trussness_of_node_set,
    triangle_components, triangles, truss_decompose, Edge,
};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("size must be at least 3, got {0}")]
    SizeTooSmall(usize),
    #[error("query node index {0} out of range")]
    QueryOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Nsg,
    Esg,
}

/// Upper-bound methods that can be switched on individually.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BoundMethod {
    Esg,
    EsgGrouped,
    Nsg,
    BaselineU1,
    BaselineU2,
    Size,
}

impl BoundMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundMethod::Esg => "esg",
            BoundMethod::EsgGrouped => "esg_grouped",
            BoundMethod::Nsg => "nsg",
            BoundMethod::BaselineU1 => "baseline_u1",
            BoundMethod::BaselineU2 => "baseline_u2",
            BoundMethod::Size => "size",
        }
    }

    pub fn parse(s: &str) -> Option<BoundMethod> {
        Some(match s {
            "esg" => BoundMethod::Esg,
            "esg_grouped" => BoundMethod::EsgGrouped,
            "nsg" => BoundMethod::Nsg,
            "baseline_u1" => BoundMethod::BaselineU1,
            "baseline_u2" => BoundMethod::BaselineU2,
            "size" => BoundMethod::Size,
            _ => return None,
        })
    }

    pub fn all() -> BTreeSet<BoundMethod> {
        [
            BoundMethod::Esg,
            BoundMethod::EsgGrouped,
            BoundMethod::Nsg,
            BoundMethod::BaselineU1,
            BoundMethod::BaselineU2,
            BoundMethod::Size,
        ]
        .into_iter()
        .collect()
    }
}

/// An upper bound value together with the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub value: u32,
    pub method: BoundMethod,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub algo: Algo,
    pub bounds: BTreeSet<BoundMethod>,
    pub enable_rule2: bool,
    pub enable_rule3: bool,
    pub enable_rule4: bool,
    pub enable_dominance: bool,
    pub enable_ordering: bool,
    pub enable_heuristic: bool,
    pub time_limit: Duration,
    pub parallel: bool,
    pub max_rounds: usize,
    /// Above this candidate count, dominance is skipped: the quadratic
    /// scan costs more than the branches it saves.
    pub dominance_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            algo: Algo::Nsg,
            bounds: BoundMethod::all(),
            enable_rule2: true,
            enable_rule3: true,
            enable_rule4: true,
            enable_dominance: true,
            enable_ordering: true,
            enable_heuristic: true,
            time_limit: Duration::from_secs(3600),
            parallel: false,
            max_rounds: DEFAULT_MAX_ROUNDS,
            dominance_limit: 512,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct SearchStats {
    pub states_expanded: u64,
    pub pruned_by_bound: u64,
    pub pruned_by_rule2: u64,
    pub pruned_by_rule3: u64,
    pub pruned_by_rule4: u64,
    pub dominance_skips: u64,
    pub stop_condition_hits: [u64; 3],
    pub wall_time_ms: u64,
}

impl SearchStats {
    fn merge(&mut self, other: &SearchStats) {
        self.states_expanded += other.states_expanded;
        self.pruned_by_bound += other.pruned_by_bound;
        self.pruned_by_rule2 += other.pruned_by_rule2;
        self.pruned_by_rule3 += other.pruned_by_rule3;
        self.pruned_by_rule4 += other.pruned_by_rule4;
        self.dominance_skips += other.dominance_skips;
        for i in 0..3 {
            self.stop_condition_hits[i] += other.stop_condition_hits[i];
        }
    }
}

/// Best feasible community found so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incumbent {
    pub community: BTreeSet<usize>,
    pub trussness: u32,
    pub witness: BTreeSet<Edge>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// `None` when no connected size-s community containing q exists.
    pub incumbent: Option<Incumbent>,
    /// False when the run hit its time limit before proving optimality.
    pub optimal: bool,
    pub stats: SearchStats,
}

struct Ctx<'a> {
    g: &'a PGraph,
    q: usize,
    s: usize,
    opts: &'a SolverOptions,
    deadline: Instant,
    timed_out: AtomicBool,
    incumbent: Mutex<Option<Incumbent>>,
}

impl Ctx<'_> {
    fn best(&self) -> u32 {
        self.incumbent
            .lock()
            .unwrap()
            .as_ref()
            .map_or(0, |i| i.trussness)
    }

    fn offer(&self, community: &BTreeSet<usize>) {
        let r = tc_trussness_of_node_set(self.g, community);
        if r.k < 2 {
            return;
        }
        let mut slot = self.incumbent.lock().unwrap();
        let current = slot.as_ref().map_or(0, |i| i.trussness);
        if r.k > current {
            *slot = Some(Incumbent {
                community: community.clone(),
                trussness: r.k,
                witness: r.witness,
            });
        }
    }

    fn out_of_time(&self) -> bool {
        if self.timed_out.load(AtomicOrdering::Relaxed) {
            return true;
        }
        if Instant::now() >= self.deadline {
            self.timed_out.store(true, AtomicOrdering::Relaxed);
            return true;
        }
        false
    }
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

fn ambient_adjacency(edges: &BTreeSet<Edge>) -> BTreeMap<usize, Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    adj
}

fn bfs_distances(adj: &BTreeMap<usize, Vec<usize>>, from: usize) -> BTreeMap<usize, u32> {
    let mut dist: BTreeMap<usize, u32> = BTreeMap::new();
    dist.insert(from, 0);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if let Some(ns) = adj.get(&u) {
            for &v in ns {
                if !dist.contains_key(&v) {
                    dist.insert(v, d + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// Triangles of `edges` whose three edges all have trussness at least
/// `level`, restricted to those reachable from the seed set `c` by chains
/// of triangles sharing an edge. Seeds are triangles containing an edge
/// inside `c`; nodes of `c` with no in-`c` edge seed through their own
/// triangles.
fn reached_triangles(
    edges: &BTreeSet<Edge>,
    tau: &BTreeMap<Edge, u32>,
    level: u32,
    c: &BTreeSet<usize>,
) -> Vec<[usize; 3]> {
    let tris: Vec<[usize; 3]> = triangles(edges)
        .into_iter()
        .filter(|t| {
            [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])]
                .iter()
                .all(|e| tau.get(e).copied().unwrap_or(2) >= level)
        })
        .collect();
    let c_edges: BTreeSet<Edge> = edges
        .iter()
        .filter(|&&(u, v)| c.contains(&u) && c.contains(&v))
        .copied()
        .collect();
    let loose: BTreeSet<usize> = c
        .iter()
        .filter(|&&u| !c_edges.iter().any(|&(a, b)| a == u || b == u))
        .copied()
        .collect();
    let is_seed = |t: &[usize; 3]| {
        [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])]
            .iter()
            .any(|e| c_edges.contains(e))
            || t.iter().any(|n| loose.contains(n))
    };
    let comps = triangle_components(&tris);
    let mut out = Vec::new();
    for comp in comps {
        if comp.iter().any(|&i| is_seed(&tris[i])) {
            out.extend(comp.into_iter().map(|i| tris[i]));
        }
    }
    out
}

/// Sorts candidates by hop distance to `q`, then by descending node
/// trussness in the subgraph induced by `C` and `R`, then by id.
pub fn order_candidates(g: &PGraph, q: usize, c: &BTreeSet<usize>, r: &[usize]) -> Vec<usize> {
    let ambient: BTreeSet<usize> = c.iter().chain(r.iter()).copied().collect();
    let edges = induced_edge_set(g, &ambient);
    let adj = ambient_adjacency(&edges);
    let dist = bfs_distances(&adj, q);
    let nt = node_trussness(&truss_decompose(&edges));
    let mut out: Vec<usize> = r.to_vec();
    out.sort_by_key(|&v| {
        (
            dist.get(&v).copied().unwrap_or(u32::MAX),
            std::cmp::Reverse(nt.get(&v).copied().unwrap_or(0)),
            v,
        )
    });
    out
}

/// Counts of candidates removed by each reduction rule.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RuleCounts {
    pub rule2: u64,
    pub rule3: u64,
    pub rule4: u64,
}

/// Applies Rules 2 to 4 to a fixed point and returns the surviving
/// candidates (order preserved) with removal counts.
pub fn reduce_candidates(
    g: &PGraph,
    c: &BTreeSet<usize>,
    r: &[usize],
    incumbent: u32,
    s: usize,
    rule2: bool,
    rule3: bool,
    rule4: bool,
) -> (Vec<usize>, RuleCounts) {
    let mut r: Vec<usize> = r.to_vec();
    let mut counts = RuleCounts::default();
    loop {
        let before = r.len();
        let ambient: BTreeSet<usize> = c.iter().chain(r.iter()).copied().collect();
        let edges = induced_edge_set(g, &ambient);
        let tau = truss_decompose(&edges);
        if rule2 {
            let nt = node_trussness(&tau);
            let survivors: Vec<usize> = r
                .iter()
                .filter(|&&v| nt.get(&v).copied().unwrap_or(0) > incumbent)
                .copied()
                .collect();
            counts.rule2 += (r.len() - survivors.len()) as u64;
            r = survivors;
        }
        if rule3 && incumbent + 1 >= 3 {
            let ambient: BTreeSet<usize> = c.iter().chain(r.iter()).copied().collect();
            let edges = induced_edge_set(g, &ambient);
            let tau = truss_decompose(&edges);
            let reached = reached_triangles(&edges, &tau, incumbent + 1, c);
            let covered: BTreeSet<usize> = reached.iter().flatten().copied().collect();
            let survivors: Vec<usize> =
                r.iter().filter(|v| covered.contains(v)).copied().collect();
            counts.rule3 += (r.len() - survivors.len()) as u64;
            r = survivors;
        }
        if rule4 {
            let ambient: BTreeSet<usize> = c.iter().chain(r.iter()).copied().collect();
            let edges = induced_edge_set(g, &ambient);
            let adj = ambient_adjacency(&edges);
            let dists: Vec<BTreeMap<usize, u32>> =
                c.iter().map(|&u| bfs_distances(&adj, u)).collect();
            let survivors: Vec<usize> = r
                .iter()
                .filter(|&&v| {
                    let mut eps: u64 = 0;
                    for d in &dists {
                        match d.get(&v) {
                            Some(&x) => eps = eps.max(x as u64),
                            None => return false,
                        }
                    }
                    (eps * (incumbent as u64 + 2)).div_ceil(2) <= s as u64
                })
                .copied()
                .collect();
            counts.rule4 += (r.len() - survivors.len()) as u64;
            r = survivors;
        }
        if r.len() == before {
            break;
        }
    }
    (r, counts)
}

/// Nodes dominated by `u` within the state: edge dominance when the rest
/// of v's neighbourhood fits inside u's, triangle dominance when every
/// triangle of v avoiding u survives the swap of v for u.
pub fn dominance_sets(
    g: &PGraph,
    c: &BTreeSet<usize>,
    r: &[usize],
    u: usize,
    with_triangles: bool,
) -> BTreeSet<usize> {
    let ambient: BTreeSet<usize> = c.iter().chain(r.iter()).copied().collect();
    let nbr = |x: usize| -> BTreeSet<usize> {
        g.neighbors(x)
            .iter()
            .copied()
            .filter(|n| ambient.contains(n))
            .collect()
    };
    let nu = nbr(u);
    let mut phi = BTreeSet::new();
    for &v in r {
        if v == u {
            continue;
        }
        let nv = nbr(v);
        let edge_dom = nv.iter().all(|&x| x == u || nu.contains(&x));
        if edge_dom {
            phi.insert(v);
            continue;
        }
        if !with_triangles {
            continue;
        }
        if nv.intersection(&nu).next().is_none() {
            continue;
        }
        // Every triangle (v, x, y) with u outside must map to (u, x, y).
        let mut ok = true;
        let nvv: Vec<usize> = nv.iter().copied().collect();
        'outer: for i in 0..nvv.len() {
            for j in i + 1..nvv.len() {
                let (x, y) = (nvv[i], nvv[j]);
                if x == u || y == u || !g.has_edge(x, y) {
                    continue;
                }
                if !(nu.contains(&x) && nu.contains(&y)) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            phi.insert(v);
        }
    }
    phi
}

/// ESG upper bound: pour the optimistic capable-triangle budget into the
/// minimum-support edges of `group` (a subset of `c`), raising the floor
/// one level at a time.
fn esg_pour(
    c: &BTreeSet<Edge>,
    group: &BTreeSet<Edge>,
    r: &BTreeSet<Edge>,
    s: usize,
) -> u32 {
    let sup = supports(c);
    if group.is_empty() {
        return 2;
    }
    let vc: BTreeSet<usize> = c.iter().flat_map(|&(a, b)| [a, b]).collect();
    let thresh = group.iter().map(|e| sup[e] as u32 + 2).min().unwrap();
    let union: BTreeSet<Edge> = c.union(r).copied().collect();
    let tau = truss_decompose(&union);
    let tris: Vec<[usize; 3]> = triangles(&union)
        .into_iter()
        .filter(|t| {
            [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])]
                .iter()
                .all(|e| tau[e] >= thresh)
        })
        .collect();
    // Pool units are triangle-to-group-edge incidences: one triangle can
    // raise the support of every group edge it contains.
    let mut scores: BTreeMap<usize, u64> = BTreeMap::new();
    let mut bucket: u64 = 0;
    for t in &tris {
        let t_edges = [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])];
        let gcount = t_edges.iter().filter(|e| group.contains(*e)).count() as u64;
        if gcount == 0 {
            continue;
        }
        let outside: Vec<usize> = t.iter().copied().filter(|n| !vc.contains(n)).collect();
        if outside.is_empty() {
            // All nodes present: counts only if a non-C edge remains to
            // be added (fully internal triangles are already in sup).
            if t_edges.iter().any(|e| !c.contains(e)) {
                bucket += gcount;
            }
        } else {
            for n in outside {
                *scores.entry(n).or_insert(0) += gcount;
            }
        }
    }
    let mut top: Vec<u64> = scores.values().copied().collect();
    top.sort_unstable_by(|a, b| b.cmp(a));
    let take = s.saturating_sub(vc.len());
    let mut pool: u64 = bucket + top.iter().take(take).sum::<u64>();
    let mut sups: Vec<u64> = group.iter().map(|e| sup[e] as u64).collect();
    loop {
        let m = *sups.iter().min().unwrap();
        let cnt = sups.iter().filter(|&&x| x == m).count() as u64;
        if pool < cnt {
            break;
        }
        pool -= cnt;
        for x in sups.iter_mut() {
            if *x == m {
                *x += 1;
            }
        }
    }
    *sups.iter().min().unwrap() as u32 + 2
}

/// Plain ESG upper bound over the whole partial edge set.
pub fn ub_esg(c: &BTreeSet<Edge>, r: &BTreeSet<Edge>, s: usize) -> BoundReport {
    BoundReport {
        value: esg_pour(c, c, r, s),
        method: BoundMethod::Esg,
    }
}

/// Grouped ESG upper bound: the pour applied to every trussness-prefix
/// subset of `c`, min-ed together and with any inherited bound.
pub fn ub_esg_grouped(
    c: &BTreeSet<Edge>,
    r: &BTreeSet<Edge>,
    s: usize,
    inherited: Option<u32>,
) -> BoundReport {
    let sup = supports(c);
    let mut levels: BTreeSet<usize> = sup.values().copied().collect();
    if levels.is_empty() {
        levels.insert(0);
    }
    let mut best = inherited.unwrap_or(u32::MAX);
    for sigma in levels {
        let group: BTreeSet<Edge> = c.iter().filter(|e| sup[e] <= sigma).copied().collect();
        best = best.min(esg_pour(c, &group, r, s));
    }
    BoundReport {
        value: best,
        method: BoundMethod::EsgGrouped,
    }
}

fn max_union_edges(per_node: &[BTreeSet<Edge>], take: usize) -> usize {
    // Exact best union when the choice space is small, otherwise the
    // additive overestimate (sum of the largest contributions).
    let n = per_node.len();
    if take == 0 || n == 0 {
        return 0;
    }
    let take = take.min(n);
    fn combos(n: usize, k: usize) -> u128 {
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        }
        acc
    }
    if combos(n, take) <= 20_000 {
        fn rec(sets: &[BTreeSet<Edge>], start: usize, left: usize, acc: &mut BTreeSet<Edge>) -> usize {
            if left == 0 {
                return acc.len();
            }
            let mut best = 0;
            for i in start..=sets.len() - left {
                let added: Vec<Edge> = sets[i].difference(acc).copied().collect();
                for &e in &added {
                    acc.insert(e);
                }
                best = best.max(rec(sets, i + 1, left - 1, acc));
                for e in &added {
                    acc.remove(e);
                }
            }
            best
        }
        let mut acc = BTreeSet::new();
        rec(per_node, 0, take, &mut acc)
    } else {
        let mut sizes: Vec<usize> = per_node.iter().map(|s| s.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.into_iter().take(take).sum()
    }
}

/// NSG upper bound: capable triangles and edges reachable from the
/// partial community, spent along the minimum-edge requirement of a
/// (k+1)-truss until the triangle budget runs dry.
pub fn ub_nsg(g: &PGraph, c: &BTreeSet<usize>, r: &BTreeSet<usize>, s: usize) -> BoundReport {
    let base = tc_trussness_of_node_set(g, c).k.max(2);
    let report = |value: u32| BoundReport {
        value,
        method: BoundMethod::Nsg,
    };
    if r.is_empty() {
        return report(base);
    }
    let ambient: BTreeSet<usize> = c.union(r).copied().collect();
    let edges = induced_edge_set(g, &ambient);
    let tau = truss_decompose(&edges);
    let capable = reached_triangles(&edges, &tau, base, c);
    let capable_edges: BTreeSet<Edge> = capable
        .iter()
        .flat_map(|t| [edge(t[0], t[1]), edge(t[0], t[2]), edge(t[1], t[2])])
        .collect();
    // Triangle budget: per candidate, capable triangles whose other two
    // nodes already sit in C.
    let mut scores: BTreeMap<usize, u64> = BTreeMap::new();
    for t in &capable {
        let inside = t.iter().filter(|n| c.contains(n)).count();
        if inside == 2 {
            for n in t {
                if !c.contains(n) {
                    *scores.entry(*n).or_insert(0) += 1;
                }
            }
        }
    }
    let take = s.saturating_sub(c.len());
    let mut top: Vec<u64> = scores.values().copied().collect();
    top.sort_unstable_by(|a, b| b.cmp(a));
    let mut pool: u64 = top.into_iter().take(take).sum();
    // Edge budget: the largest set of capable edges any `take` candidates
    // can bring along.
    let per_node: Vec<BTreeSet<Edge>> = r
        .iter()
        .map(|&v| {
            capable_edges
                .iter()
                .filter(|&&(a, b)| a == v || b == v)
                .copied()
                .collect::<BTreeSet<Edge>>()
        })
        .filter(|s| !s.is_empty())
        .collect();
    let e_opt = max_union_edges(&per_node, take) as u64;
    let mut k = base as u64;
    while k * (k + 1) / 2 <= e_opt {
        k += 1;
    }
    // Community edges can be raised towards the next level, one triangle
    // per unit of trussness.
    let c_edges = induced_edge_set(g, c);
    let mut te: Vec<u64> = truss_decompose(&c_edges)
        .values()
        .map(|&t| (t as u64).max(2))
        .collect();
    te.sort_unstable_by(|a, b| b.cmp(a));
    loop {
        let target = k + 1;
        let needed = (k * (k + 1) / 2).saturating_sub(e_opt) as usize;
        if needed > te.len() {
            break;
        }
        let cost: u64 = te.iter().take(needed).map(|&t| target.saturating_sub(t)).sum();
        if cost > pool {
            break;
        }
        pool -= cost;
        for t in te.iter_mut().take(needed) {
            *t = (*t).max(target);
        }
        te.sort_unstable_by(|a, b| b.cmp(a));
        k += 1;
    }
    report(k as u32)
}

/// Baseline bounds: U1 is the weakest node trussness of `c` in the full
/// candidate region; U2 adds one level per node still missing.
pub fn ub_baselines(
    g: &PGraph,
    c: &BTreeSet<usize>,
    r: &BTreeSet<usize>,
    s: usize,
) -> (BoundReport, BoundReport) {
    let ambient: BTreeSet<usize> = c.union(r).copied().collect();
    let nt_amb = node_trussness(&truss_decompose(&induced_edge_set(g, &ambient)));
    let u1 = c
        .iter()
        .map(|v| nt_amb.get(v).copied().unwrap_or(0).max(2))
        .min()
        .unwrap_or(2);
    let nt_c = node_trussness(&truss_decompose(&induced_edge_set(g, c)));
    let u2 = c
        .iter()
        .map(|v| nt_c.get(v).copied().unwrap_or(0).max(2))
        .min()
        .unwrap_or(2) as u64
        + (s.saturating_sub(c.len())) as u64;
    (
        BoundReport {
            value: u1,
            method: BoundMethod::BaselineU1,
        },
        BoundReport {
            value: u2.min(u32::MAX as u64) as u32,
            method: BoundMethod::BaselineU2,
        },
    )
}

enum Pruned {
    Yes,
    No,
}

fn nsg_bound_check(ctx: &Ctx, c: &BTreeSet<usize>, r: &[usize], stats: &mut SearchStats) -> Pruned {
    let inc = ctx.best();
    let enabled = &ctx.opts.bounds;
    if enabled.contains(&BoundMethod::Size) && ctx.s as u32 <= inc {
        stats.pruned_by_bound += 1;
        return Pruned::Yes;
    }
    let rset: BTreeSet<usize> = r.iter().copied().collect();
    if enabled.contains(&BoundMethod::BaselineU1) || enabled.contains(&BoundMethod::BaselineU2) {
        let (u1, u2) = ub_baselines(ctx.g, c, &rset, ctx.s);
        if enabled.contains(&BoundMethod::BaselineU1) && u1.value <= inc {
            stats.pruned_by_bound += 1;
            return Pruned::Yes;
        }
        if enabled.contains(&BoundMethod::BaselineU2) && u2.value <= inc {
            stats.pruned_by_bound += 1;
            return Pruned::Yes;
        }
    }
    if enabled.contains(&BoundMethod::Nsg) {
        let b = ub_nsg(ctx.g, c, &rset, ctx.s);
        if b.value <= inc {
            stats.pruned_by_bound += 1;
            return Pruned::Yes;
        }
    }
    Pruned::No
}

fn nsg_expand(ctx: &Ctx, c: &BTreeSet<usize>, r: Vec<usize>, stats: &mut SearchStats) {
    if ctx.out_of_time() {
        return;
    }
    stats.states_expanded += 1;
    if c.len() == ctx.s {
        ctx.offer(c);
        return;
    }
    let mut r = r;
    if ctx.opts.enable_rule2 || ctx.opts.enable_rule3 || ctx.opts.enable_rule4 {
        let (kept, counts) = reduce_candidates(
            ctx.g,
            c,
            &r,
            ctx.best(),
            ctx.s,
            ctx.opts.enable_rule2,
            ctx.opts.enable_rule3,
            ctx.opts.enable_rule4,
        );
        stats.pruned_by_rule2 += counts.rule2;
        stats.pruned_by_rule3 += counts.rule3;
        stats.pruned_by_rule4 += counts.rule4;
        r = kept;
    }
    if c.len() + r.len() < ctx.s {
        return;
    }
    if matches!(nsg_bound_check(ctx, c, &r, stats), Pruned::Yes) {
        return;
    }
    if ctx.opts.enable_ordering {
        r = order_candidates(ctx.g, ctx.q, c, &r);
    }
    let branchables: Vec<usize> = if ctx.opts.enable_dominance
        && r.len() >= 2
        && r.len() <= ctx.opts.dominance_limit
    {
        let mut best_u = r[0];
        let mut best_phi = BTreeSet::new();
        for &u in &r {
            let phi = dominance_sets(ctx.g, c, &r, u, true);
            if phi.len() > best_phi.len() {
                best_u = u;
                best_phi = phi;
            }
        }
        let _ = best_u;
        stats.dominance_skips += best_phi.len() as u64;
        r.iter().copied().filter(|v| !best_phi.contains(v)).collect()
    } else {
        r.clone()
    };
    let mut excluded: BTreeSet<usize> = BTreeSet::new();
    for &u in &branchables {
        excluded.insert(u);
        let mut child_c = c.clone();
        child_c.insert(u);
        let child_r: Vec<usize> = r.iter().copied().filter(|v| !excluded.contains(v)).collect();
        nsg_expand(ctx, &child_c, child_r, stats);
        if ctx.out_of_time() {
            return;
        }
    }
}

fn run_top_level<F>(ctx: &Ctx, items: Vec<F>, stats: &mut SearchStats, f: impl Fn(&F, &mut SearchStats) + Sync)
where
    F: Sync,
{
    if !ctx.opts.parallel || items.len() <= 1 {
        for item in &items {
            f(item, stats);
        }
        return;
    }
    let next = AtomicUsize::new(0);
    let merged = Mutex::new(SearchStats::default());
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
        .min(items.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local = SearchStats::default();
                loop {
                    let i = next.fetch_add(1, AtomicOrdering::Relaxed);
                    if i >= items.len() {
                        break;
                    }
                    f(&items[i], &mut local);
                }
                merged.lock().unwrap().merge(&local);
            });
        }
    });
    stats.merge(&merged.lock().unwrap());
}

fn solve_nsg(ctx: &Ctx, stats: &mut SearchStats) {
    let c0: BTreeSet<usize> = [ctx.q].into_iter().collect();
    let mut r0: Vec<usize> = component_of(ctx.g, ctx.q)
        .into_iter()
        .filter(|&v| v != ctx.q)
        .collect();
    if r0.len() + 1 < ctx.s {
        return;
    }
    if ctx.opts.enable_rule2 || ctx.opts.enable_rule3 || ctx.opts.enable_rule4 {
        let (kept, counts) = reduce_candidates(
            ctx.g,
            &c0,
            &r0,
            ctx.best(),
            ctx.s,
            ctx.opts.enable_rule2,
            ctx.opts.enable_rule3,
            ctx.opts.enable_rule4,
        );
        stats.pruned_by_rule2 += counts.rule2;
        stats.pruned_by_rule3 += counts.rule3;
        stats.pruned_by_rule4 += counts.rule4;
        r0 = kept;
    }
    if ctx.opts.enable_ordering {
        r0 = order_candidates(ctx.g, ctx.q, &c0, &r0);
    }
    // Ambient facts for the stop conditions.
    let ambient: BTreeSet<usize> = c0.iter().chain(r0.iter()).copied().collect();
    let edges = induced_edge_set(ctx.g, &ambient);
    let adj = ambient_adjacency(&edges);
    let dist = bfs_distances(&adj, ctx.q);
    let nt = node_trussness(&truss_decompose(&edges));
    let items: Vec<(usize, usize)> = r0.iter().copied().enumerate().collect();
    let r0_ref = &r0;
    let c0_ref = &c0;
    run_top_level(ctx, items, stats, |&(i, v), local| {
        if ctx.out_of_time() {
            return;
        }
        if ctx.best() as usize >= ctx.s {
            local.stop_condition_hits[2] += 1;
            return;
        }
        if ctx.opts.enable_ordering && dist.get(&v).copied().unwrap_or(u32::MAX) > 1 {
            local.stop_condition_hits[0] += 1;
            return;
        }
        if nt.get(&v).copied().unwrap_or(0) <= ctx.best() {
            local.stop_condition_hits[1] += 1;
            return;
        }
        let mut c = c0_ref.clone();
        c.insert(v);
        let r: Vec<usize> = r0_ref[i + 1..].to_vec();
        nsg_expand(ctx, &c, r, local);
    });
}

fn esg_bound_check(
    ctx: &Ctx,
    c: &BTreeSet<Edge>,
    r: &[Edge],
    inherited: Option<u32>,
    stats: &mut SearchStats,
) -> Option<u32> {
    let inc = ctx.best();
    let enabled = &ctx.opts.bounds;
    if enabled.contains(&BoundMethod::Size) && ctx.s as u32 <= inc {
        stats.pruned_by_bound += 1;
        return None;
    }
    let vc: BTreeSet<usize> = c.iter().flat_map(|&(a, b)| [a, b]).collect();
    let vr: BTreeSet<usize> = r
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .filter(|n| !vc.contains(n))
        .collect();
    if enabled.contains(&BoundMethod::BaselineU1) || enabled.contains(&BoundMethod::BaselineU2) {
        let (u1, u2) = ub_baselines(ctx.g, &vc, &vr, ctx.s);
        if enabled.contains(&BoundMethod::BaselineU1) && u1.value <= inc {
            stats.pruned_by_bound += 1;
            return None;
        }
        if enabled.contains(&BoundMethod::BaselineU2) && u2.value <= inc {
            stats.pruned_by_bound += 1;
            return None;
        }
    }
    let rset: BTreeSet<Edge> = r.iter().copied().collect();
    let mut tightest = inherited.unwrap_or(u32::MAX);
    if enabled.contains(&BoundMethod::Esg) {
        let b = ub_esg(c, &rset, ctx.s);
        tightest = tightest.min(b.value);
        if b.value <= inc {
            stats.pruned_by_bound += 1;
            return None;
        }
    }
    if enabled.contains(&BoundMethod::EsgGrouped) {
        let b = ub_esg_grouped(c, &rset, ctx.s, inherited);
        tightest = tightest.min(b.value);
        if b.value <= inc {
            stats.pruned_by_bound += 1;
            return None;
        }
    }
    Some(tightest)
}

fn esg_expand(
    ctx: &Ctx,
    c: &BTreeSet<Edge>,
    r: Vec<Edge>,
    inherited: Option<u32>,
    stats: &mut SearchStats,
) {
    if ctx.out_of_time() {
        return;
    }
    stats.states_expanded += 1;
    let vc: BTreeSet<usize> = c.iter().flat_map(|&(a, b)| [a, b]).collect();
    if vc.len() == ctx.s {
        ctx.offer(&vc);
        return;
    }
    // Node-level reductions carried over to edges.
    let mut r = r;
    if ctx.opts.enable_rule2 || ctx.opts.enable_rule3 || ctx.opts.enable_rule4 {
        let r_nodes: Vec<usize> = r
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .filter(|n| !vc.contains(n))
            .collect::<BTreeSet<usize>>()
            .into_iter()
            .collect();
        let (kept, counts) = reduce_candidates(
            ctx.g,
            &vc,
            &r_nodes,
            ctx.best(),
            ctx.s,
            ctx.opts.enable_rule2,
            ctx.opts.enable_rule3,
            ctx.opts.enable_rule4,
        );
        stats.pruned_by_rule2 += counts.rule2;
        stats.pruned_by_rule3 += counts.rule3;
        stats.pruned_by_rule4 += counts.rule4;
        let keep: BTreeSet<usize> = kept.into_iter().chain(vc.iter().copied()).collect();
        r.retain(|&(a, b)| keep.contains(&a) && keep.contains(&b));
    }
    let new_nodes: BTreeSet<usize> = r
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .filter(|n| !vc.contains(n))
        .collect();
    if vc.len() + new_nodes.len() < ctx.s {
        return;
    }
    let inherited = match esg_bound_check(ctx, c, &r, inherited, stats) {
        Some(t) => Some(t).filter(|&t| t != u32::MAX),
        None => return,
    };
    let branchables: Vec<Edge> = r
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let touch = vc.contains(&a) || vc.contains(&b);
            let grow = [a, b].iter().filter(|n| !vc.contains(n)).count();
            touch && vc.len() + grow <= ctx.s
        })
        .collect();
    let mut excluded: BTreeSet<Edge> = BTreeSet::new();
    for &e in &branchables {
        excluded.insert(e);
        let mut child_c = c.clone();
        child_c.insert(e);
        let child_r: Vec<Edge> = r.iter().copied().filter(|f| !excluded.contains(f)).collect();
        esg_expand(ctx, &child_c, child_r, inherited, stats);
        if ctx.out_of_time() {
            return;
        }
    }
}

fn solve_esg(ctx: &Ctx, stats: &mut SearchStats) {
    let comp = component_of(ctx.g, ctx.q);
    if comp.len() < ctx.s {
        return;
    }
    let pool: Vec<Edge> = induced_edge_set(ctx.g, &comp).into_iter().collect();
    let mut q_edges: Vec<Edge> = pool
        .iter()
        .copied()
        .filter(|&(a, b)| a == ctx.q || b == ctx.q)
        .collect();
    q_edges.sort_unstable();
    let items: Vec<(usize, Edge)> = q_edges.iter().copied().enumerate().collect();
    let q_edges_ref = &q_edges;
    let pool_ref = &pool;
    run_top_level(ctx, items, stats, |&(i, e), local| {
        if ctx.out_of_time() {
            return;
        }
        if ctx.best() as usize >= ctx.s {
            local.stop_condition_hits[2] += 1;
            return;
        }
        let c: BTreeSet<Edge> = [e].into_iter().collect();
        let skip: BTreeSet<Edge> = q_edges_ref[..=i].iter().copied().collect();
        let r: Vec<Edge> = pool_ref.iter().copied().filter(|f| !skip.contains(f)).collect();
        esg_expand(ctx, &c, r, None, local);
    });
}

/// Runs the configured solver. `stars` is the star list of `g`, used to
/// seed the incumbent via the heuristic.
pub fn solve(
    g: &PGraph,
    stars: &[PStar],
    q: usize,
    s: usize,
    opts: &SolverOptions,
) -> Result<SearchOutcome, SearchError> {
    if s < 3 {
        return Err(SearchError::SizeTooSmall(s));
    }
    if q >= g.n() {
        return Err(SearchError::QueryOutOfRange(q));
    }
    let started = Instant::now();
    let ctx = Ctx {
        g,
        q,
        s,
        opts,
        deadline: started + opts.time_limit,
        timed_out: AtomicBool::new(false),
        incumbent: Mutex::new(None),
    };
    if opts.enable_heuristic {
        if let Some(h) = scsh_heu(g, stars, q, s, opts.max_rounds) {
            ctx.offer(&h.community);
        }
    }
    let mut stats = SearchStats::default();
    if (ctx.best() as usize) < s {
        match opts.algo {
            Algo::Nsg => solve_nsg(&ctx, &mut stats),
            Algo::Esg => solve_esg(&ctx, &mut stats),
        }
    }
    stats.wall_time_ms = started.elapsed().as_millis() as u64;
    let timed_out = ctx.timed_out.load(AtomicOrdering::Relaxed);
    let incumbent = ctx.incumbent.into_inner().unwrap();
    Ok(SearchOutcome {
        incumbent,
        optimal: !timed_out,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::metapath::{build_pgraph, enumerate_pstars, MetaPath};
    use crate::oracle::brute_force_opt;

    fn setup() -> (PGraph, Vec<PStar>) {
        let h = fixtures::bib_hin();
        let p = MetaPath::parse("A-P-A").unwrap();
        let g = build_pgraph(&h, &p).unwrap();
        let stars = enumerate_pstars(&h, &p, &g, None).unwrap();
        (g, stars)
    }

    fn nodes(g: &PGraph, names: &[&str]) -> BTreeSet<usize> {
        names.iter().map(|n| g.index_of(n).unwrap()).collect()
    }

    fn e(g: &PGraph, a: &str, b: &str) -> Edge {
        edge(g.index_of(a).unwrap(), g.index_of(b).unwrap())
    }

    /// The worked bound state: C holds seven edges around a6, R holds
    /// every edge avoiding a4 that is not already in C.
    fn bound_state(g: &PGraph) -> (BTreeSet<Edge>, BTreeSet<Edge>) {
        let c: BTreeSet<Edge> = [
            e(g, "a5", "a6"),
            e(g, "a5", "a7"),
            e(g, "a6", "a7"),
            e(g, "a6", "a8"),
            e(g, "a6", "a11"),
            e(g, "a7", "a8"),
            e(g, "a8", "a11"),
        ]
        .into_iter()
        .collect();
        let a4 = g.index_of("a4").unwrap();
        let r: BTreeSet<Edge> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| u != a4 && v != a4 && !c.contains(&(u, v)))
            .collect();
        (c, r)
    }

    #[test]
    fn esg_bound_fixture() {
        let (g, _) = setup();
        let (c, r) = bound_state(&g);
        assert_eq!(ub_esg(&c, &r, 7).value, 4);
        assert_eq!(ub_esg_grouped(&c, &r, 7, None).value, 3);
        // The inherited bound can only tighten further.
        assert_eq!(ub_esg_grouped(&c, &r, 7, Some(2)).value, 2);
    }

    #[test]
    fn esg_bound_without_candidates() {
        let (g, _) = setup();
        let (c, _) = bound_state(&g);
        let empty = BTreeSet::new();
        // With nothing to add, the bound collapses to the current floor.
        assert_eq!(ub_esg(&c, &empty, 7).value, 3);
    }

    #[test]
    fn nsg_bound_fixture() {
        let (g, _) = setup();
        let c = nodes(&g, &["a5", "a6", "a7", "a8", "a11"]);
        let r = nodes(&g, &["a1", "a2", "a3", "a9", "a10"]);
        assert_eq!(ub_nsg(&g, &c, &r, 7).value, 4);
        let empty = BTreeSet::new();
        assert_eq!(ub_nsg(&g, &c, &empty, 7).value, 3);
    }

    #[test]
    fn baseline_bounds_fixture() {
        let (g, _) = setup();
        let c = nodes(&g, &["a5", "a6", "a7", "a8", "a11"]);
        let r = nodes(&g, &["a1", "a2", "a3", "a9", "a10"]);
        let (u1, u2) = ub_baselines(&g, &c, &r, 7);
        assert_eq!(u1.value, 3);
        assert_eq!(u2.value, 5);
        assert!(u1.value.min(u2.value).min(4) <= 4);
        // Triangle inside a clique: U2 reaches exactly s.
        let labels: Vec<String> = (0..6).map(|i| format!("n{i}")).collect();
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        let k6 = PGraph::from_edges(labels, &edges);
        let c: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        let r: BTreeSet<usize> = [3, 4, 5].into_iter().collect();
        let (_, u2) = ub_baselines(&k6, &c, &r, 6);
        assert_eq!(u2.value, 6);
    }

    #[test]
    fn reduction_fixture() {
        let (g, _) = setup();
        let c = nodes(&g, &["a4", "a6", "a7"]);
        let r: Vec<usize> = ["a1", "a2", "a3", "a5", "a8", "a9", "a10", "a11"]
            .iter()
            .map(|n| g.index_of(n).unwrap())
            .collect();
        let (kept, counts) = reduce_candidates(&g, &c, &r, 3, 4, true, true, true);
        assert_eq!(kept, vec![g.index_of("a5").unwrap()]);
        assert_eq!(counts.rule2, 0);
        assert_eq!(counts.rule3, 4);
        assert_eq!(counts.rule4, 3);
    }

    #[test]
    fn reduction_vacuous_with_no_incumbent() {
        let (g, _) = setup();
        let c = nodes(&g, &["a6"]);
        let r: Vec<usize> = (0..g.n()).filter(|&v| v != g.index_of("a6").unwrap()).collect();
        let (kept, counts) = reduce_candidates(&g, &c, &r, 0, 7, true, true, true);
        assert_eq!(kept.len(), 10);
        assert_eq!(counts.rule2 + counts.rule3, 0);
    }

    #[test]
    fn dominance_fixture() {
        let (g, _) = setup();
        let q = g.index_of("a6").unwrap();
        let c: BTreeSet<usize> = [q].into_iter().collect();
        let r: Vec<usize> = (0..g.n()).filter(|&v| v != q).collect();
        let at = |n: &str| g.index_of(n).unwrap();
        let phi4 = dominance_sets(&g, &c, &r, at("a4"), true);
        for n in ["a1", "a2", "a3", "a5"] {
            assert!(phi4.contains(&at(n)), "a4 should dominate {n}");
        }
        let phi3 = dominance_sets(&g, &c, &r, at("a3"), true);
        assert!(phi3.contains(&at("a1")) && phi3.contains(&at("a2")));
        let phi10 = dominance_sets(&g, &c, &r, at("a10"), true);
        assert!(phi10.contains(&at("a11")));
        // a4 wins the branching choice.
        let best = r
            .iter()
            .max_by_key(|&&u| (dominance_sets(&g, &c, &r, u, true).len(), std::cmp::Reverse(u)))
            .copied()
            .unwrap();
        assert_eq!(best, at("a4"));
    }

    #[test]
    fn triangle_dominance_beyond_edges() {
        let (g, _) = setup();
        let at = |n: &str| g.index_of(n).unwrap();
        // Rewire (a7,a9) to (a5,a9): a9 stops being edge-dominated by a10
        // but remains triangle-dominated.
        let mut edges: Vec<(usize, usize)> = g.edges();
        edges.retain(|&ed| ed != e(&g, "a7", "a9"));
        edges.push(e(&g, "a5", "a9"));
        let g2 = PGraph::from_edges(g.labels.clone(), &edges);
        let q = at("a6");
        let c: BTreeSet<usize> = [q].into_iter().collect();
        let r: Vec<usize> = (0..g2.n()).filter(|&v| v != q).collect();
        let edge_only = dominance_sets(&g2, &c, &r, at("a10"), false);
        assert!(!edge_only.contains(&at("a9")));
        let full = dominance_sets(&g2, &c, &r, at("a10"), true);
        assert!(full.contains(&at("a9")));
    }

    #[test]
    fn isolated_candidate_always_dominated() {
        let labels = vec!["q".into(), "x".into(), "y".into(), "z".into()];
        let g = PGraph::from_edges(labels, &[(0, 1), (0, 2), (1, 2)]);
        let c: BTreeSet<usize> = [0].into_iter().collect();
        let r = vec![1, 2, 3];
        assert!(dominance_sets(&g, &c, &r, 1, false).contains(&3));
    }

    #[test]
    fn ordering_distance_then_trussness() {
        let (g, _) = setup();
        let q = g.index_of("a6").unwrap();
        let c: BTreeSet<usize> = [q].into_iter().collect();
        let r: Vec<usize> = (0..g.n()).filter(|&v| v != q).collect();
        let ordered = order_candidates(&g, q, &c, &r);
        let mut sorted_input = r.clone();
        sorted_input.sort_unstable();
        let mut sorted_output = ordered.clone();
        sorted_output.sort_unstable();
        assert_eq!(sorted_input, sorted_output);
        // Direct neighbours of a6 come first.
        let deg1: BTreeSet<usize> = g.neighbors(q).iter().copied().collect();
        let first: Vec<bool> = ordered.iter().map(|v| deg1.contains(v)).collect();
        let boundary = first.iter().filter(|&&b| b).count();
        assert!(first[..boundary].iter().all(|&b| b));
        assert!(first[boundary..].iter().all(|&b| !b));
    }

    #[test]
    fn solve_worked_example_both_algos() {
        let (g, stars) = setup();
        let q = g.index_of("a6").unwrap();
        for algo in [Algo::Nsg, Algo::Esg] {
            let opts = SolverOptions {
                algo,
                ..Default::default()
            };
            let out = solve(&g, &stars, q, 7, &opts).unwrap();
            let inc = out.incumbent.expect("feasible");
            assert_eq!(inc.trussness, 4);
            let names: Vec<&str> = inc.community.iter().map(|&i| g.labels[i].as_str()).collect();
            assert_eq!(names, ["a1", "a2", "a3", "a4", "a5", "a6", "a7"]);
            assert!(out.optimal);
        }
    }

    #[test]
    fn solve_matches_oracle_small() {
        let (g, stars) = setup();
        for q_name in ["a1", "a6", "a9"] {
            let q = g.index_of(q_name).unwrap();
            for s in [3, 4, 5] {
                let expect = brute_force_opt(&g, q, s).unwrap().unwrap().trussness;
                for algo in [Algo::Nsg, Algo::Esg] {
                    let opts = SolverOptions {
                        algo,
                        ..Default::default()
                    };
                    let out = solve(&g, &stars, q, s, &opts).unwrap();
                    assert_eq!(
                        out.incumbent.unwrap().trussness,
                        expect,
                        "q={q_name} s={s} algo={algo:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn solve_rejects_tiny_size() {
        let (g, stars) = setup();
        assert!(matches!(
            solve(&g, &stars, 0, 2, &SolverOptions::default()),
            Err(SearchError::SizeTooSmall(2))
        ));
    }

    #[test]
    fn solve_infeasible_when_component_small() {
        let (g, stars) = setup();
        let q = g.index_of("a1").unwrap();
        let out = solve(&g, &stars, q, 12, &SolverOptions::default()).unwrap();
        assert!(out.incumbent.is_none());
        assert!(out.optimal);
    }

    #[test]
    fn star_graph_caps_at_two() {
        // A star has no triangles: the best any community can do is stay
        // connected.
        let labels: Vec<String> = (0..6).map(|i| format!("n{i}")).collect();
        let edges: Vec<(usize, usize)> = (1..6).map(|v| (0, v)).collect();
        let g = PGraph::from_edges(labels, &edges);
        for algo in [Algo::Nsg, Algo::Esg] {
            let opts = SolverOptions {
                algo,
                enable_heuristic: false,
                ..Default::default()
            };
            let out = solve(&g, &[], 0, 4, &opts).unwrap();
            assert_eq!(out.incumbent.unwrap().trussness, 2);
        }
    }

    #[test]
    fn parallel_agrees_with_serial() {
        let (g, stars) = setup();
        let q = g.index_of("a6").unwrap();
        let serial = solve(&g, &stars, q, 7, &SolverOptions::default()).unwrap();
        let par = solve(
            &g,
            &stars,
            q,
            7,
            &SolverOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(
            serial.incumbent.unwrap().trussness,
            par.incumbent.unwrap().trussness
        );
    }
}
