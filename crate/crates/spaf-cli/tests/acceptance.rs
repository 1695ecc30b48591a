//! Acceptance suite: one test per release criterion, each printing a
//! single PASS line (visible with `--nocapture`) or failing loudly.
//!
//! The tests share a lock so timing-sensitive checks never compete with
//! sibling tests for cores.

use std::collections::{HashMap, VecDeque};
use std::process::Command;
use std::sync::{Mutex, PoisonError};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spaf::apsp::{apsp_af, choose_r, solve_timed, ApspOptions};
use spaf::bottleneck::{network_bottleneck, network_bottleneck_oracle, NetworkBottleneck};
use spaf::matrix::{rank_of_code, CapacityMatrix, CAP_NONE};
use spaf::oracle::{
    compare_staircases, corpus_graph, oracle_apsp_af_bfs, oracle_apsp_af_enum, CORPUS_SEEDS,
};
use spaf::semiring::maxmin_closure;
use spaf::sssp::sssp_af;
use spaf::{generate_random, Capacity, Graph};

static GATE: Mutex<()> = Mutex::new(());

fn serialized() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(PoisonError::into_inner)
}

fn pass(line: &str) {
    println!("criterion {line}: PASS");
}

#[test]
fn criterion_1_corpus_oracle_equivalence() {
    let _gate = serialized();
    let start = Instant::now();
    for seed in CORPUS_SEEDS {
        let g = corpus_graph(seed);
        let n = g.n();
        let res = apsp_af(&g).unwrap();
        let bfs = oracle_apsp_af_bfs(&g);
        let report = compare_staircases(n, res.staircases(), &bfs).unwrap();
        assert!(report.equal, "seed {seed}: solver vs BFS oracle: {:?}", report.divergence);
        if n <= 6 {
            let enumerated = oracle_apsp_af_enum(&g).unwrap();
            let report = compare_staircases(n, &bfs, &enumerated).unwrap();
            assert!(report.equal, "seed {seed}: the oracles disagree: {:?}", report.divergence);
        }
    }
    let took = start.elapsed();
    assert!(took < Duration::from_secs(60), "corpus sweep took {took:?}");
    pass("1 (all-pairs solver equals the BFS oracle on all 500 corpus graphs)");
}

#[test]
fn criterion_2_single_source_consistency() {
    let _gate = serialized();
    let start = Instant::now();
    for seed in CORPUS_SEEDS {
        let g = corpus_graph(seed);
        let n = g.n();
        let res = apsp_af(&g).unwrap();
        for s in 0..n {
            let row = sssp_af(&g, s).unwrap();
            for v in 0..n {
                assert_eq!(
                    row.staircase(v),
                    res.staircase(s, v),
                    "seed {seed}, source {s}, target {v}"
                );
            }
        }
    }
    let took = start.elapsed();
    assert!(took < Duration::from_secs(60), "consistency sweep took {took:?}");
    pass("2 (single-source rows equal the all-pairs grid on the corpus)");
}

#[test]
fn criterion_3_bottleneck_agreement() {
    let _gate = serialized();
    for seed in CORPUS_SEEDS {
        let g = corpus_graph(seed);
        let d = g.distinct_capacities().len();
        let fast = network_bottleneck(&g);
        let slow = network_bottleneck_oracle(&g);
        assert_eq!(fast.value, slow.value, "seed {seed}");

        let closure = maxmin_closure(&CapacityMatrix::from_graph(&g));
        let n = g.n();
        let has_hole = (0..n)
            .any(|i| (0..n).any(|j| i != j && closure.get(i, j) == CAP_NONE));
        assert_eq!(
            matches!(fast.value, NetworkBottleneck::NotStronglyConnected),
            has_hole,
            "seed {seed}: NONE must mean a zero closure entry"
        );

        let budget = (d.max(1) as f64).log2().ceil() as usize + 1;
        assert!(
            fast.probe_count <= budget,
            "seed {seed}: {} probes over the ceil(log2 d) + 1 = {budget} budget",
            fast.probe_count
        );
    }
    pass("3 (bottleneck search equals its oracle within the probe budget)");
}

/// Plain BFS distances ignoring capacities; the reference for first pairs.
fn blind_bfs(g: &Graph, s: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.out_adj(u) {
            let v = v as usize;
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

#[test]
fn criterion_4_staircase_endpoints() {
    let _gate = serialized();
    for seed in CORPUS_SEEDS {
        let g = corpus_graph(seed);
        let n = g.n();
        let res = apsp_af(&g).unwrap();
        let closure = maxmin_closure(&CapacityMatrix::from_graph(&g));
        for i in 0..n {
            let dist = blind_bfs(&g, i);
            for (j, &blind_dist) in dist.iter().enumerate() {
                if i == j {
                    continue;
                }
                let t = res.staircase(i, j);
                let code = closure.get(i, j);
                match t.last() {
                    None => {
                        assert_eq!(code, CAP_NONE, "seed {seed} ({i},{j})");
                        assert_eq!(blind_dist, u32::MAX, "seed {seed} ({i},{j})");
                    }
                    Some((_, last_rank)) => {
                        assert_eq!(
                            Some(last_rank),
                            rank_of_code(code),
                            "seed {seed} ({i},{j}): last flow vs widest-path closure"
                        );
                        let (first_len, _) = t.first().unwrap();
                        assert_eq!(
                            first_len, blind_dist,
                            "seed {seed} ({i},{j}): first length vs capacity-blind BFS"
                        );
                    }
                }
            }
        }
    }
    pass("4 (staircase endpoints match the widest-path closure and blind BFS)");
}

#[test]
fn criterion_5_reconstructed_path_validity() {
    let _gate = serialized();
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let demands: Vec<Capacity> = ["0.5", "1", "1.5", "2", "3", "4", "5", "6", "8", "8.5", "9"]
        .iter()
        .map(|s| Capacity::parse(s).unwrap())
        .collect();
    let mut apsp_cache = HashMap::new();
    let mut answered = 0u32;
    let mut trials = 0u32;
    while answered < 1000 {
        trials += 1;
        assert!(trials < 20_000, "only {answered} answered queries in {trials} trials");
        let seed = rng.gen_range(1..=500u64);
        let g = corpus_graph(seed);
        let n = g.n();
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let demand = &demands[rng.gen_range(0..demands.len())];
        let res = apsp_cache
            .entry(seed)
            .or_insert_with(|| apsp_af(&g).unwrap());
        let Some((len, flow)) = res.query(i, j, demand).unwrap() else {
            continue;
        };
        answered += 1;
        assert!(&flow >= demand, "resolved flow covers the demand");
        let f_rank = g.distinct_capacities().rank_of(&flow).unwrap();

        let check = |path: &[usize], kind: &str| {
            assert_eq!(path.len() as u32, len + 1, "seed {seed} ({i},{j}) {kind}");
            assert_eq!(path[0], i, "{kind}");
            assert_eq!(*path.last().unwrap(), j, "{kind}");
            for w in path.windows(2) {
                let rank = g
                    .out_adj(w[0])
                    .iter()
                    .find(|&&(to, _)| to as usize == w[1])
                    .map(|&(_, r)| r)
                    .unwrap_or_else(|| panic!("seed {seed} {kind}: missing edge {w:?}"));
                assert!(rank >= f_rank, "seed {seed} {kind}: an edge under the flow");
            }
        };

        // Greedy walk over the all-pairs result.
        let greedy = res.path(&g, i, j, demand).unwrap().unwrap();
        check(&greedy, "greedy");

        // Parent walk through the single-source tree snapshots.
        let row = sssp_af(&g, i).unwrap();
        assert_eq!(row.query(j, demand).unwrap(), Some((len, flow.clone())));
        let walked = row.path(j, len).unwrap();
        check(&walked, "tree");
    }
    pass(&format!(
        "5 ({answered} answered queries out of {trials} sampled, every path certified)"
    ));
}

#[test]
fn criterion_6_complexity_instrumentation() {
    let _gate = serialized();
    for seed in CORPUS_SEEDS {
        let g = corpus_graph(seed);
        let n = g.n() as u64;
        let m = g.m() as u64;
        for s in 0..g.n() {
            let res = sssp_af(&g, s).unwrap();
            assert!(
                res.stats.edge_inspections <= m * (n - 1),
                "seed {seed} source {s}: {} inspections over m(n-1) = {}",
                res.stats.edge_inspections,
                m * (n - 1)
            );
        }
        let d = g.distinct_capacities().len();
        if d > 0 {
            let r = choose_r(g.n(), d);
            let res = apsp_af(&g).unwrap();
            let bound = ((g.n() as f64 / r as f64).log(1.5).ceil().max(0.0)) as usize + 1;
            assert!(
                res.cruise_rounds <= bound,
                "seed {seed}: {} cruising rounds over the bound {bound}",
                res.cruise_rounds
            );
        }
    }
    pass("6 (edge inspections within m(n-1), cruising rounds within the log bound)");
}

#[test]
fn criterion_7_performance_smoke() {
    let _gate = serialized();

    let pool8: Vec<Capacity> =
        (1..=8).map(|v| Capacity::parse(&v.to_string()).unwrap()).collect();
    let big = generate_random(2000, 10_000, &pool8, 1).unwrap();
    let start = Instant::now();
    let res = sssp_af(&big, 0).unwrap();
    let sssp_time = start.elapsed();
    assert!(res.staircases().iter().any(|t| !t.is_empty()));
    assert!(
        sssp_time < Duration::from_secs(5),
        "single-source on n=2000 m=10000 d=8 took {sssp_time:?}"
    );

    let pool9: Vec<Capacity> =
        (1..=9).map(|v| Capacity::parse(&v.to_string()).unwrap()).collect();
    let dense = generate_random(128, 128 * 127, &pool9, 7).unwrap();
    let mut best: Option<(Duration, Duration)> = None;
    let mut total = Duration::ZERO;
    for _ in 0..3 {
        let start = Instant::now();
        let (_, timings) = solve_timed(&dense, ApspOptions::default()).unwrap();
        total = total.max(start.elapsed());
        best = Some(match best {
            None => (timings.acceleration, timings.cruising),
            Some((a, c)) => (a.min(timings.acceleration), c.min(timings.cruising)),
        });
    }
    assert!(
        total < Duration::from_secs(30),
        "all-pairs on n=128 d=9 took {total:?}"
    );
    let (accel, cruise) = best.unwrap();
    let ratio = accel.as_secs_f64() / cruise.as_secs_f64();
    assert!(
        (0.25..=4.0).contains(&ratio),
        "acceleration {accel:?} vs cruising {cruise:?}: ratio {ratio:.2} outside [1/4, 4]"
    );
    pass(&format!(
        "7 (sssp {sssp_time:?}; apsp {total:?}; acceleration/cruising ratio {ratio:.2})"
    ));
}

#[test]
fn criterion_8_cli_determinism() {
    let _gate = serialized();
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.g");
    let result_path = dir.path().join("r.json");

    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_spaf"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let out = run(&["gen", "-n", "9", "-m", "40", "--seed", "13", "-o", graph_path.to_str().unwrap()]);
    assert!(out.status.success());
    let out = run(&["apsp-af", "-i", graph_path.to_str().unwrap(), "-o", result_path.to_str().unwrap()]);
    assert!(out.status.success());

    let g = graph_path.to_str().unwrap();
    let r = result_path.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "-n", "9", "-m", "40", "--seed", "13"],
        vec!["bottleneck", "-i", g],
        vec!["bottleneck", "-i", g, "--tsv"],
        vec!["sssp-af", "-i", g, "-s", "3"],
        vec!["apsp-af", "-i", g],
        vec!["apsp-af", "-i", g, "-r", "4", "--threads", "2"],
        vec!["query", "-i", r, "--from", "1", "--to", "2", "--flow", "2"],
        vec!["query", "-i", r, "--from", "1", "--to", "2", "--flow", "2", "--tsv"],
        vec!["query", "-i", r, "--from", "1", "--to", "2", "--flow", "2", "--path", "--graph", g],
        vec!["verify", "-i", g],
        vec!["verify", "--seeds", "1..4"],
        vec!["bench", "-i", g, "--repeat", "2"],
    ];
    for args in &commands {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?} stdout drifted");
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
    }
    // Solver output files are byte-stable too.
    let before = std::fs::read(&result_path).unwrap();
    let out = run(&["apsp-af", "-i", g, "-o", r]);
    assert!(out.status.success());
    assert_eq!(before, std::fs::read(&result_path).unwrap());
    pass(&format!("8 ({} command lines byte-identical across repeated runs)", commands.len()));
}
