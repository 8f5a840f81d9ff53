//! End-to-end acceptance suite. Each test prints one pass/fail line for
//! its criterion; run with `--nocapture` to see them all.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scsh::fixtures;
use scsh::heuristic::scsh_heu;
use scsh::hin::Hin;
use scsh::metapath::{build_pgraph, enumerate_pstars, MetaPath, PGraph, PStar};
use scsh::metrics::{pathsim, ppair_density};
use scsh::oracle::{brute_force_opt, gadget_from_graph, random_hin, RandomHinParams};
use scsh::search::{
    reduce_candidates, solve, ub_baselines, ub_esg, ub_esg_grouped, ub_nsg, Algo, BoundMethod,
    SolverOptions,
};
use scsh::truss::{edge, induced_edge_set, tc_trussness_of_node_set, truss_decompose, Edge};

/// Prints the criterion verdict even when an assertion unwinds.
struct Verdict {
    label: &'static str,
    passed: bool,
}

impl Verdict {
    fn new(label: &'static str) -> Verdict {
        Verdict {
            label,
            passed: false,
        }
    }

    fn pass(mut self) {
        self.passed = true;
    }
}

impl Drop for Verdict {
    fn drop(&mut self) {
        println!(
            "criterion {}: {}",
            self.label,
            if self.passed { "PASS" } else { "FAIL" }
        );
    }
}

fn setup() -> (Hin, MetaPath, PGraph, Vec<PStar>) {
    let h = fixtures::bib_hin();
    let p = MetaPath::parse("A-P-A").unwrap();
    let g = build_pgraph(&h, &p).unwrap();
    let stars = enumerate_pstars(&h, &p, &g, None).unwrap();
    (h, p, g, stars)
}

fn small_instance(seed: u64) -> (Hin, PGraph, Vec<PStar>) {
    let params = RandomHinParams {
        target_count: 8 + (seed % 7) as usize,
        center_count: 5 + (seed % 6) as usize,
        attach_prob: 0.25 + 0.03 * (seed % 10) as f64,
        extra_layers: 0,
    };
    let h = random_hin(&params, seed);
    let p = MetaPath::parse("A-P-A").unwrap();
    let g = build_pgraph(&h, &p).unwrap();
    let stars = enumerate_pstars(&h, &p, &g, None).unwrap();
    (h, g, stars)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn data_path(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run_cli(args: &[&str]) -> (serde_json::Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_scsh"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let value = serde_json::from_str(stdout.trim()).unwrap_or(serde_json::Value::Null);
    (value, code)
}

#[test]
fn criterion_01_worked_example() {
    let v = Verdict::new("1 worked-example fidelity");
    let started = Instant::now();
    let base = [
        "--nodes",
        &data_path("nodes.tsv"),
        "--edges",
        &data_path("edges.tsv"),
        "--schema",
        &data_path("schema.json"),
        "--metapath",
        "A-P-A",
        "--query-node",
        "a6",
        "--size",
        "7",
    ];
    let expected: Vec<String> = (1..=7).map(|i| format!("a{i}")).collect();
    for cmd in [
        vec!["solve"],
        vec!["solve", "--algo", "esg"],
        vec!["oracle"],
        vec!["heuristic"],
    ] {
        let mut args = cmd.clone();
        args.extend(base.iter().copied());
        let (rec, code) = run_cli(&args);
        assert_eq!(code, 0, "{cmd:?} exit code");
        assert_eq!(rec["trussness"], 4, "{cmd:?} trussness");
        let community: Vec<String> = rec["community"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_str().unwrap().to_string())
            .collect();
        assert_eq!(community, expected, "{cmd:?} community");
    }
    assert!(started.elapsed() < Duration::from_secs(1), "under one second");
    v.pass();
}

#[test]
fn criterion_02_bound_fixtures() {
    let v = Verdict::new("2 bound fixtures");
    let (_, _, g, _) = setup();
    let e = |a: &str, b: &str| edge(g.index_of(a).unwrap(), g.index_of(b).unwrap());
    let c: BTreeSet<Edge> = [
        e("a5", "a6"),
        e("a5", "a7"),
        e("a6", "a7"),
        e("a6", "a8"),
        e("a6", "a11"),
        e("a7", "a8"),
        e("a8", "a11"),
    ]
    .into_iter()
    .collect();
    let a4 = g.index_of("a4").unwrap();
    let r: BTreeSet<Edge> = g
        .edges()
        .into_iter()
        .filter(|&(x, y)| x != a4 && y != a4 && !c.contains(&(x, y)))
        .collect();
    assert_eq!(ub_esg(&c, &r, 7).value, 4);
    assert_eq!(ub_esg_grouped(&c, &r, 7, None).value, 3);

    let at = |n: &str| g.index_of(n).unwrap();
    let cn: BTreeSet<usize> = ["a5", "a6", "a7", "a8", "a11"].iter().map(|n| at(n)).collect();
    let rn: BTreeSet<usize> = ["a1", "a2", "a3", "a9", "a10"].iter().map(|n| at(n)).collect();
    assert_eq!(ub_nsg(&g, &cn, &rn, 7).value, 4);
    v.pass();
}

#[test]
fn criterion_03_reduction_fixture() {
    let v = Verdict::new("3 reduction fixture");
    let (_, _, g, _) = setup();
    let at = |n: &str| g.index_of(n).unwrap();
    let c: BTreeSet<usize> = ["a4", "a6", "a7"].iter().map(|n| at(n)).collect();
    let r: Vec<usize> = ["a1", "a2", "a3", "a5", "a8", "a9", "a10", "a11"]
        .iter()
        .map(|n| at(n))
        .collect();
    let (kept, counts) = reduce_candidates(&g, &c, &r, 3, 4, true, true, true);
    assert_eq!(kept, vec![at("a5")]);
    assert_eq!(counts.rule3, 4, "rule 3 removes a8..a11");
    assert_eq!(counts.rule4, 3, "rule 4 removes a1, a2, a3");
    v.pass();
}

#[test]
fn criterion_04_oracle_equivalence() {
    let v = Verdict::new("4 oracle equivalence");
    let started = Instant::now();
    for seed in 0..200u64 {
        let (_, g, stars) = small_instance(seed);
        let s = 4 + (seed % 4) as usize;
        let q = (0..g.n()).max_by_key(|&u| g.degree(u)).unwrap();
        let expect = brute_force_opt(&g, q, s)
            .unwrap()
            .map(|o| o.trussness);
        for algo in [Algo::Nsg, Algo::Esg] {
            let opts = SolverOptions {
                algo,
                ..Default::default()
            };
            let out = solve(&g, &stars, q, s, &opts).unwrap();
            assert_eq!(
                out.incumbent.map(|i| i.trussness),
                expect,
                "seed {seed} s {s} algo {algo:?}"
            );
        }
        let heu = scsh_heu(&g, &stars, q, s, 8).map(|h| h.trussness);
        match (heu, expect) {
            (None, None) => {}
            (Some(h), Some(e)) => assert!(h <= e, "seed {seed}: heuristic exceeds optimum"),
            other => panic!("seed {seed}: feasibility mismatch {other:?}"),
        }
    }
    assert!(started.elapsed() < Duration::from_secs(300));
    v.pass();
}

#[test]
fn criterion_05_bound_admissibility() {
    let v = Verdict::new("5 bound admissibility");
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut checked = 0usize;
    let mut seed = 0u64;
    while checked < 1000 {
        seed += 1;
        let (_, g, _) = small_instance(seed);
        let q = match (0..g.n()).max_by_key(|&u| g.degree(u)) {
            Some(u) if g.degree(u) > 0 => u,
            _ => continue,
        };
        let s = 4 + (seed % 4) as usize;

        // Node-growing states: a random connected partial community and a
        // random candidate pool.
        for _ in 0..18 {
            let mut c: BTreeSet<usize> = [q].into_iter().collect();
            let grow = rng.gen_range(0..s - 1);
            for _ in 0..grow {
                let frontier: Vec<usize> = c
                    .iter()
                    .flat_map(|&u| g.neighbors(u).iter().copied())
                    .filter(|n| !c.contains(n))
                    .collect();
                if frontier.is_empty() {
                    break;
                }
                c.insert(frontier[rng.gen_range(0..frontier.len())]);
            }
            let mut r: Vec<usize> = (0..g.n())
                .filter(|u| !c.contains(u) && rng.gen_bool(0.85))
                .collect();
            r.truncate(10);
            let take = s - c.len();
            if take > r.len() {
                continue;
            }
            let mut best = 0u32;
            for x in combinations(&r, take) {
                let mut full = c.clone();
                full.extend(x);
                best = best.max(tc_trussness_of_node_set(&g, &full).k);
            }
            let rset: BTreeSet<usize> = r.iter().copied().collect();
            let (u1, u2) = ub_baselines(&g, &c, &rset, s);
            assert!(u1.value >= best, "seed {seed} u1 {} < {best}", u1.value);
            assert!(u2.value >= best, "seed {seed} u2 {} < {best}", u2.value);
            let nb = ub_nsg(&g, &c, &rset, s);
            assert!(nb.value >= best, "seed {seed} nsg {} < {best}", nb.value);
            assert!(s as u32 >= best);
            checked += 1;
        }

        // Edge-growing states: a random connected partial edge set with
        // the full remaining pool, so subtree leaves match completions.
        let q_edges: Vec<Edge> = g
            .edges()
            .into_iter()
            .filter(|&(a, b)| a == q || b == q)
            .collect();
        if q_edges.is_empty() {
            continue;
        }
        let comp_edges: BTreeSet<Edge> = {
            let mut seen: BTreeSet<usize> = [q].into_iter().collect();
            let mut stack = vec![q];
            while let Some(u) = stack.pop() {
                for &n in g.neighbors(u) {
                    if seen.insert(n) {
                        stack.push(n);
                    }
                }
            }
            induced_edge_set(&g, &seen)
        };
        for _ in 0..10 {
            let mut c: BTreeSet<Edge> = [q_edges[rng.gen_range(0..q_edges.len())]]
                .into_iter()
                .collect();
            let grow = rng.gen_range(0..3);
            for _ in 0..grow {
                let vc: BTreeSet<usize> = c.iter().flat_map(|&(a, b)| [a, b]).collect();
                if vc.len() >= s {
                    break;
                }
                let options: Vec<Edge> = comp_edges
                    .iter()
                    .filter(|&&(a, b)| {
                        !c.contains(&(a, b)) && (vc.contains(&a) || vc.contains(&b))
                    })
                    .copied()
                    .collect();
                if options.is_empty() {
                    break;
                }
                c.insert(options[rng.gen_range(0..options.len())]);
            }
            let vc: BTreeSet<usize> = c.iter().flat_map(|&(a, b)| [a, b]).collect();
            if vc.len() >= s {
                continue;
            }
            let r: BTreeSet<Edge> = comp_edges.difference(&c).copied().collect();
            let vr: Vec<usize> = r
                .iter()
                .flat_map(|&(a, b)| [a, b])
                .filter(|n| !vc.contains(n))
                .collect::<BTreeSet<usize>>()
                .into_iter()
                .collect();
            let take = s - vc.len();
            if take > vr.len() || vr.len() > 12 {
                continue;
            }
            let mut best = 0u32;
            for x in combinations(&vr, take) {
                let mut full = vc.clone();
                full.extend(x);
                best = best.max(tc_trussness_of_node_set(&g, &full).k);
            }
            let eb = ub_esg(&c, &r, s);
            assert!(eb.value >= best, "seed {seed} esg {} < {best}", eb.value);
            let gb = ub_esg_grouped(&c, &r, s, None);
            assert!(gb.value >= best, "seed {seed} grouped {} < {best}", gb.value);
            checked += 1;
        }
    }
    assert!(checked >= 1000);
    v.pass();
}

#[test]
fn criterion_06_toggle_invariance() {
    let v = Verdict::new("6 toggle invariance");
    for seed in 0..200u64 {
        let (_, g, stars) = small_instance(seed);
        let s = 4 + (seed % 4) as usize;
        let q = (0..g.n()).max_by_key(|&u| g.degree(u)).unwrap();
        let full = solve(&g, &stars, q, s, &SolverOptions::default())
            .unwrap()
            .incumbent
            .map(|i| i.trussness);
        let mut variants: Vec<SolverOptions> = Vec::new();
        for i in 0..6 {
            let mut o = SolverOptions::default();
            match i {
                0 => o.enable_rule2 = false,
                1 => o.enable_rule3 = false,
                2 => o.enable_rule4 = false,
                3 => o.enable_dominance = false,
                4 => o.enable_ordering = false,
                _ => o.enable_heuristic = false,
            }
            variants.push(o);
        }
        variants.push(SolverOptions {
            bounds: [BoundMethod::Size].into_iter().collect(),
            ..Default::default()
        });
        variants.push(SolverOptions {
            bounds: [
                BoundMethod::BaselineU1,
                BoundMethod::BaselineU2,
                BoundMethod::Size,
            ]
            .into_iter()
            .collect(),
            ..Default::default()
        });
        for (vi, opts) in variants.iter().enumerate() {
            let got = solve(&g, &stars, q, s, opts)
                .unwrap()
                .incumbent
                .map(|i| i.trussness);
            assert_eq!(got, full, "seed {seed} variant {vi}");
        }
    }
    v.pass();
}

#[test]
fn criterion_07_hardness_gadget() {
    let v = Verdict::new("7 hardness gadget");
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for case in 0..50u64 {
        let n = rng.gen_range(4..=12usize);
        let m = 3 + (case % 3) as usize;
        let mut src_edges = Vec::new();
        for u in 0..n {
            for w in u + 1..n {
                if rng.gen_bool(0.5) {
                    src_edges.push((u, w));
                }
            }
        }
        let edge_set: BTreeSet<(usize, usize)> = src_edges.iter().copied().collect();
        let vertices: Vec<usize> = (0..n).collect();
        let has_clique = combinations(&vertices, m).into_iter().any(|cand| {
            cand.iter().enumerate().all(|(i, &u)| {
                cand[i + 1..].iter().all(|&w| edge_set.contains(&(u, w)))
            })
        });
        let (hin, q_name) = gadget_from_graph(n, &src_edges);
        let p = MetaPath::parse("T1-T2-T1").unwrap();
        let g = build_pgraph(&hin, &p).unwrap();
        let stars = enumerate_pstars(&hin, &p, &g, None).unwrap();
        let q = g.index_of(&q_name).unwrap();
        let out = solve(&g, &stars, q, m + 1, &SolverOptions::default()).unwrap();
        let decision = out
            .incumbent
            .map_or(false, |i| i.trussness as usize == m + 1);
        assert_eq!(decision, has_clique, "case {case} n {n} m {m}");
    }
    v.pass();
}

#[test]
fn criterion_08_truss_edge_lower_bound() {
    let v = Verdict::new("8 truss edge count property");
    let mut graphs: Vec<BTreeSet<Edge>> = Vec::new();
    let (_, _, g, _) = setup();
    graphs.push(g.edges().into_iter().collect());
    for seed in 0..50u64 {
        let (_, g, _) = small_instance(seed);
        graphs.push(g.edges().into_iter().collect());
    }
    for (i, edges) in graphs.iter().enumerate() {
        let tau = truss_decompose(edges);
        let kmax = tau.values().copied().max().unwrap_or(0);
        for k in 2..=kmax {
            let count = tau.values().filter(|&&t| t >= k).count();
            let needed = (k as usize * (k as usize - 1)) / 2;
            assert!(
                count >= needed,
                "graph {i}: k {k} has {count} edges, needs {needed}"
            );
        }
    }
    v.pass();
}

#[test]
fn criterion_09_pstars_are_cliques() {
    let v = Verdict::new("9 star cliques");
    let mut checked = 0usize;
    for seed in 0..100u64 {
        let params = RandomHinParams {
            target_count: 10 + (seed % 20) as usize,
            center_count: 6 + (seed % 10) as usize,
            attach_prob: 0.1 + 0.05 * (seed % 15) as f64,
            extra_layers: (seed % 3) as usize,
        };
        let h = random_hin(&params, seed);
        let path_text = match params.extra_layers {
            0 => "A-P-A".to_string(),
            1 => "A-P-L1-P-A".to_string(),
            _ => "A-P-L1-L2-L1-P-A".to_string(),
        };
        let p = MetaPath::parse(&path_text).unwrap();
        let g = build_pgraph(&h, &p).unwrap();
        let stars = enumerate_pstars(&h, &p, &g, None).unwrap();
        for st in &stars {
            for i in 0..st.members.len() {
                for j in i + 1..st.members.len() {
                    assert!(
                        g.has_edge(st.members[i], st.members[j]),
                        "seed {seed}: star at centre {} is not a clique",
                        st.centre
                    );
                }
            }
            checked += 1;
        }
    }
    let (h, p, g, stars) = setup();
    let _ = h;
    let _ = p;
    for st in &stars {
        for i in 0..st.members.len() {
            for j in i + 1..st.members.len() {
                assert!(g.has_edge(st.members[i], st.members[j]));
            }
        }
        checked += 1;
    }
    assert!(checked > 100);
    v.pass();
}

#[test]
fn criterion_10_directional_performance() {
    let v = Verdict::new("10 directional performance");
    let params = RandomHinParams {
        target_count: 2000,
        center_count: 2600,
        attach_prob: 0.0008,
        extra_layers: 0,
    };
    let h = random_hin(&params, 1010);
    let p = MetaPath::parse("A-P-A").unwrap();
    let g = build_pgraph(&h, &p).unwrap();
    let stars = enumerate_pstars(&h, &p, &g, None).unwrap();
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&u| std::cmp::Reverse(g.degree(u)));
    let queries: Vec<(usize, usize)> = by_degree
        .iter()
        .take(20)
        .enumerate()
        .map(|(i, &q)| (q, [9, 12, 15][i % 3]))
        .collect();
    let limit = Duration::from_secs(1);
    let run = |opts: &SolverOptions| -> f64 {
        let mut total = 0u64;
        for &(q, s) in &queries {
            let started = Instant::now();
            let _ = solve(&g, &stars, q, s, opts).unwrap();
            total += started.elapsed().as_micros() as u64;
        }
        total as f64 / queries.len() as f64
    };
    let nsg_full = run(&SolverOptions {
        time_limit: limit,
        ..Default::default()
    });
    let esg = run(&SolverOptions {
        algo: Algo::Esg,
        time_limit: limit,
        ..Default::default()
    });
    let nsg_no_rules = run(&SolverOptions {
        enable_rule2: false,
        enable_rule3: false,
        enable_rule4: false,
        time_limit: limit,
        ..Default::default()
    });
    println!(
        "mean runtimes (us): nsg {nsg_full:.0}, esg {esg:.0}, nsg without rules {nsg_no_rules:.0}"
    );
    assert!(nsg_full <= esg, "nsg mean {nsg_full} > esg mean {esg}");
    assert!(
        nsg_full <= nsg_no_rules,
        "nsg mean {nsg_full} > rules-disabled mean {nsg_no_rules}"
    );
    v.pass();
}

#[test]
fn criterion_11_metrics() {
    let v = Verdict::new("11 metrics");
    let (h, p, g, _) = setup();
    // A full star is a clique, so its density is exactly 1.
    let clique: BTreeSet<usize> = ["a6", "a8", "a10", "a11"]
        .iter()
        .map(|n| g.index_of(n).unwrap())
        .collect();
    assert_eq!(ppair_density(&g, &clique), 1.0);

    // Independent instance counter: explicit two-step walks.
    let dfs_count = |h: &Hin, u: usize, w: usize| -> u64 {
        let mut count = 0u64;
        for &centre in h.step(u, "write", true) {
            for &back in h.step(centre, "write", false) {
                if back == w {
                    count += 1;
                }
            }
        }
        count
    };
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let mut pairs = 0usize;
    let mut corpora: Vec<Hin> = vec![h];
    for seed in 0..6u64 {
        let (hh, _, _) = small_instance(seed);
        corpora.push(hh);
    }
    'outer: for hin in &corpora {
        let targets = hin.nodes_of_type("A");
        loop {
            let u = targets[rng.gen_range(0..targets.len())];
            let w = targets[rng.gen_range(0..targets.len())];
            let got = pathsim(hin, &p, u, w).unwrap();
            assert!((0.0..=1.0).contains(&got), "pathsim out of range: {got}");
            let denom = dfs_count(hin, u, u) + dfs_count(hin, w, w);
            let want = if denom == 0 {
                0.0
            } else {
                2.0 * dfs_count(hin, u, w) as f64 / denom as f64
            };
            assert!((got - want).abs() < 1e-12, "pathsim {got} != dfs {want}");
            pairs += 1;
            if pairs >= 100 {
                break 'outer;
            }
            if pairs % 15 == 0 {
                continue 'outer;
            }
        }
    }
    assert!(pairs >= 100);
    v.pass();
}
