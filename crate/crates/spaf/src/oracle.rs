//! Brute-force reference solvers and the comparison harness.
//!
//! Two independent routes to the same answers:
//!
//! * per-threshold BFS — for each distinct capacity, BFS the thresholded
//!   subgraph and assemble staircases from the distance sequence;
//! * exhaustive enumeration — walk every simple path (n <= 8) and take the
//!   Pareto frontier of (length, path bottleneck) directly.
//!
//! Also home of the seeded verification corpus shared by tests and the
//! `verify` CLI command.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::Capacity;
use crate::error::{Result, SpafError};
use crate::graph::{generate_random, Graph};
use crate::matrix::UNREACHABLE;
use crate::staircase::FlowStaircase;

/// BFS distances from `source` using only edges with capacity rank
/// `>= rank`; `UNREACHABLE` where there is no path.
fn bfs_at_threshold(g: &Graph, source: usize, rank: u32) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(at) = queue.pop_front() {
        for &(to, r) in g.out_adj(at) {
            if r >= rank && dist[to as usize] == UNREACHABLE {
                dist[to as usize] = dist[at] + 1;
                queue.push_back(to as usize);
            }
        }
    }
    dist
}

/// Folds the per-rank distance sequence of one pair into a staircase.
/// Distances are non-decreasing in the rank (higher thresholds keep fewer
/// edges), so the frontier falls out of a single ascending scan.
fn staircase_from_distances(dists: impl Iterator<Item = u32>) -> FlowStaircase {
    let mut out = FlowStaircase::new();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (rank, len) in dists.enumerate() {
        if len == UNREACHABLE || len == 0 {
            continue;
        }
        match pairs.last_mut() {
            Some((pl, pr)) if *pl == len => *pr = rank as u32,
            Some((pl, _)) => {
                assert!(*pl < len, "distances must not shrink as the threshold rises");
                pairs.push((len, rank as u32));
            }
            None => pairs.push((len, rank as u32)),
        }
    }
    for (len, rank) in pairs {
        out.record(len, rank);
    }
    out
}

/// Staircases of every pair with `i == source`, indexed by target.
pub fn oracle_sssp_af_bfs(g: &Graph, source: usize) -> Result<Vec<FlowStaircase>> {
    let n = g.n();
    if source >= n {
        return Err(SpafError::VertexOutOfRange { vertex: source + 1, n });
    }
    let d = g.distinct_capacities().len();
    let per_rank: Vec<Vec<u32>> =
        (0..d as u32).map(|rank| bfs_at_threshold(g, source, rank)).collect();
    Ok((0..n)
        .map(|v| staircase_from_distances(per_rank.iter().map(|dist| dist[v])))
        .collect())
}

/// All-pairs staircases (row-major `n * n`) by per-threshold BFS from every
/// source.
pub fn oracle_apsp_af_bfs(g: &Graph) -> Vec<FlowStaircase> {
    let n = g.n();
    let mut out = Vec::with_capacity(n * n);
    for source in 0..n {
        out.extend(oracle_sssp_af_bfs(g, source).expect("source in range"));
    }
    out
}

/// All-pairs staircases by exhaustive simple-path enumeration. Rejects
/// graphs with more than 8 vertices.
pub fn oracle_apsp_af_enum(g: &Graph) -> Result<Vec<FlowStaircase>> {
    let n = g.n();
    if n > 8 {
        return Err(SpafError::InvalidParameter(format!(
            "enumeration oracle is capped at 8 vertices, got {n}"
        )));
    }
    let mut out = vec![FlowStaircase::new(); n * n];
    for source in 0..n {
        // best[v][len] = best bottleneck code over paths of exactly `len`.
        let mut best = vec![vec![0u32; n]; n];
        let mut stack: Vec<(usize, u32, u32, u32)> = vec![(source, 1 << source, u32::MAX, 0)];
        while let Some((at, visited, bottleneck, len)) = stack.pop() {
            for &(to, rank) in g.out_adj(at) {
                let to = to as usize;
                if visited >> to & 1 == 1 {
                    continue;
                }
                let b = bottleneck.min(rank + 1);
                let cell = &mut best[to][(len + 1) as usize - 1];
                if b > *cell {
                    *cell = b;
                }
                stack.push((to, visited | 1 << to, b, len + 1));
            }
        }
        for v in 0..n {
            if v == source {
                continue;
            }
            let mut running = 0u32;
            for len in 1..=n.saturating_sub(1) as u32 {
                let code = best[v][len as usize - 1];
                if code > running {
                    out[source * n + v].record(len, code - 1);
                    running = code;
                }
            }
        }
    }
    Ok(out)
}

/// First point where two staircase grids disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    /// 1-based pair, matching the CLI and JSON conventions.
    pub i: usize,
    pub j: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub equal: bool,
    pub divergence: Option<Divergence>,
}

/// Exact pairwise comparison of two row-major staircase grids.
pub fn compare_staircases(
    n: usize,
    a: &[FlowStaircase],
    b: &[FlowStaircase],
) -> Result<ComparisonReport> {
    if a.len() != n * n || b.len() != n * n {
        return Err(SpafError::DimensionMismatch(format!(
            "staircase grids: {} and {} entries for n = {n}",
            a.len(),
            b.len()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let (sa, sb) = (&a[i * n + j], &b[i * n + j]);
            if sa != sb {
                return Ok(ComparisonReport {
                    equal: false,
                    divergence: Some(Divergence {
                        i: i + 1,
                        j: j + 1,
                        detail: format!("{:?} vs {:?}", sa.pairs(), sb.pairs()),
                    }),
                });
            }
        }
    }
    Ok(ComparisonReport { equal: true, divergence: None })
}

/// Inclusive seed range of the standard verification corpus.
pub const CORPUS_SEEDS: std::ops::RangeInclusive<u64> = 1..=500;

/// Capacity pool used by the corpus.
pub fn corpus_pool() -> Vec<Capacity> {
    ["1", "2", "4", "8", "9"]
        .iter()
        .map(|s| Capacity::parse(s).expect("static literal"))
        .collect()
}

/// Deterministic small graph for one corpus seed: 2..=9 vertices, edge
/// count uniform in `[n-1, n(n-1)]`, capacities from `corpus_pool`.
pub fn corpus_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=9usize);
    let m = rng.gen_range(n - 1..=n * (n - 1));
    generate_random(n, m, &corpus_pool(), seed).expect("corpus parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_staircase_by_both_oracles() {
        // 1->2 cap 3, 2->3 cap 5, 1->3 cap 1: the direct edge is shortest
        // but weak; the detour is longer and stronger.
        let g = Graph::parse("p 3 3\ne 1 2 3\ne 2 3 5\ne 1 3 1\n").unwrap();
        let fr = g.distinct_capacities();
        let by_enum = oracle_apsp_af_enum(&g).unwrap();
        let by_bfs = oracle_apsp_af_bfs(&g);
        assert!(compare_staircases(3, &by_enum, &by_bfs).unwrap().equal);
        let t13 = &by_enum[2]; // pair (1,3): row 0, column 2
        let decoded: Vec<(u32, String)> = t13
            .pairs()
            .iter()
            .map(|&(l, r)| (l, fr.value(r).to_string()))
            .collect();
        assert_eq!(decoded, vec![(1, "1".to_string()), (2, "3".to_string())]);
    }

    #[test]
    fn oracles_agree_on_small_corpus() {
        for seed in 1..=60u64 {
            let g = corpus_graph(seed);
            if g.n() > 8 {
                continue;
            }
            let by_enum = oracle_apsp_af_enum(&g).unwrap();
            let by_bfs = oracle_apsp_af_bfs(&g);
            let report = compare_staircases(g.n(), &by_enum, &by_bfs).unwrap();
            assert!(report.equal, "seed {seed}: {:?}", report.divergence);
        }
    }

    #[test]
    fn enum_oracle_rejects_large_graphs() {
        let g = generate_random(9, 8, &corpus_pool(), 1).unwrap();
        assert!(oracle_apsp_af_enum(&g).is_err());
    }

    #[test]
    fn staircases_are_structurally_valid() {
        for seed in 61..=90u64 {
            let g = corpus_graph(seed);
            let n = g.n();
            let d = g.distinct_capacities().len() as u32;
            for t in oracle_apsp_af_bfs(&g) {
                assert!(t.validate(n.saturating_sub(1) as u32, d), "seed {seed}");
            }
        }
    }

    #[test]
    fn corpus_is_deterministic_and_in_range() {
        for seed in [1u64, 77, 500] {
            let a = corpus_graph(seed);
            let b = corpus_graph(seed);
            assert_eq!(a.serialize(), b.serialize());
            assert!((2..=9).contains(&a.n()));
            // Generated pairs are distinct, so the stored count matches the
            // requested one: within [n-1, n(n-1)].
            assert!(a.m() >= a.n() - 1 && a.m() <= a.n() * (a.n() - 1));
        }
    }

    #[test]
    fn compare_reports_first_divergence() {
        let g = Graph::parse("p 2 1\ne 1 2 5\n").unwrap();
        let a = oracle_apsp_af_bfs(&g);
        let mut b = a.clone();
        b[1] = FlowStaircase::new(); // clobber pair (1,2)
        let report = compare_staircases(2, &a, &b).unwrap();
        assert!(!report.equal);
        let div = report.divergence.unwrap();
        assert_eq!((div.i, div.j), (1, 2));
        assert!(compare_staircases(2, &a, &a[..3]).is_err());
    }
}
