//! Directed unit-cost graphs with positive edge capacities.
//!
//! Text format: `#` comment lines, then `p <n> <m>`, then exactly `m` lines
//! `e <u> <v> <cap>` with 1-based endpoints. At ingest self-loops are
//! dropped and parallel edges collapse to the one with the largest capacity,
//! so a stored `Graph` is always simple.
//!
//! Every stored edge carries the dense rank of its capacity inside the
//! graph's [`FlowRank`]; solvers compare ranks only and translate back to
//! [`Capacity`] values at the output boundary.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::Capacity;
use crate::error::{Result, SpafError};

/// Sorted distinct capacity values of one graph plus the value -> rank map.
/// Rank `k` is the index of the k-th smallest value, i.e.
/// `rank_of(values()[k]) == k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowRank {
    values: Vec<Capacity>,
    rank_of: HashMap<Capacity, u32>,
}

impl FlowRank {
    pub fn from_values(mut values: Vec<Capacity>) -> FlowRank {
        values.sort();
        values.dedup();
        let rank_of = values
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k as u32))
            .collect();
        FlowRank { values, rank_of }
    }

    /// Number of distinct capacity values, `d`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All values in ascending order.
    pub fn values(&self) -> &[Capacity] {
        &self.values
    }

    /// Value of a rank. Panics on an out-of-range rank (solver bug).
    pub fn value(&self, rank: u32) -> &Capacity {
        &self.values[rank as usize]
    }

    pub fn rank_of(&self, value: &Capacity) -> Option<u32> {
        self.rank_of.get(value).copied()
    }

    /// Smallest rank whose value is `>= demand`, or `None` when the demand
    /// exceeds every capacity in the graph.
    pub fn min_rank_at_least(&self, demand: &Capacity) -> Option<u32> {
        let idx = self.values.partition_point(|v| v < demand);
        (idx < self.values.len()).then_some(idx as u32)
    }
}

/// One stored edge; endpoints are 0-based internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    /// Rank of the edge capacity in the graph's `FlowRank`.
    pub rank: u32,
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    caps: FlowRank,
    out_adj: Vec<Vec<(u32, u32)>>,
    in_adj: Vec<Vec<(u32, u32)>>,
}

impl Graph {
    /// Builds a graph from raw 1-based edges, applying the ingest rules
    /// (drop self-loops, keep the max-capacity parallel edge).
    pub fn new(n: usize, raw_edges: Vec<(usize, usize, Capacity)>) -> Result<Graph> {
        let mut kept: BTreeMap<(u32, u32), Capacity> = BTreeMap::new();
        for (u, v, cap) in raw_edges {
            if u == 0 || u > n {
                return Err(SpafError::VertexOutOfRange { vertex: u, n });
            }
            if v == 0 || v > n {
                return Err(SpafError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                continue;
            }
            let key = ((u - 1) as u32, (v - 1) as u32);
            match kept.get_mut(&key) {
                Some(existing) if *existing >= cap => {}
                Some(existing) => *existing = cap,
                None => {
                    kept.insert(key, cap);
                }
            }
        }

        let caps = FlowRank::from_values(kept.values().cloned().collect());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(kept.len());
        for ((u, v), cap) in &kept {
            let rank = caps.rank_of(cap).expect("rank table covers stored edges");
            edges.push(Edge { u: *u, v: *v, rank });
            out_adj[*u as usize].push((*v, rank));
            in_adj[*v as usize].push((*u, rank));
        }
        // BTreeMap iteration already sorts out_adj rows by target; sort the
        // in rows by source so parent scans see ascending ids.
        for row in &mut in_adj {
            row.sort_unstable();
        }
        Ok(Graph { n, edges, caps, out_adj, in_adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Stored (post-normalization) edge count.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Distinct capacity values with their dense ranks.
    pub fn distinct_capacities(&self) -> &FlowRank {
        &self.caps
    }

    /// Out-neighbors of `v` as `(target, capacity rank)`, ascending target.
    pub fn out_adj(&self, v: usize) -> &[(u32, u32)] {
        &self.out_adj[v]
    }

    /// In-neighbors of `v` as `(source, capacity rank)`, ascending source.
    pub fn in_adj(&self, v: usize) -> &[(u32, u32)] {
        &self.in_adj[v]
    }

    /// Parses the text format. Errors name the 1-based line number.
    pub fn parse(input: &str) -> Result<Graph> {
        let fail = |line: usize, msg: String| Err(SpafError::Parse { line, msg });
        let mut header: Option<(usize, usize)> = None;
        let mut raw: Vec<(usize, usize, Capacity)> = Vec::new();
        let mut last_line = 0;

        for (idx, line) in input.lines().enumerate() {
            let lineno = idx + 1;
            last_line = lineno;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let mut tokens = text.split_whitespace();
            let tag = tokens.next().unwrap();
            match tag {
                "p" => {
                    if header.is_some() {
                        return fail(lineno, "duplicate 'p' header".into());
                    }
                    let n = parse_count(tokens.next(), lineno, "vertex count")?;
                    let m = parse_count(tokens.next(), lineno, "edge count")?;
                    if tokens.next().is_some() {
                        return fail(lineno, "trailing tokens after 'p <n> <m>'".into());
                    }
                    header = Some((n, m));
                }
                "e" => {
                    let (n, m) = match header {
                        Some(h) => h,
                        None => return fail(lineno, "'e' line before 'p' header".into()),
                    };
                    if raw.len() == m {
                        return fail(lineno, format!("more than {m} edge lines"));
                    }
                    let u = parse_count(tokens.next(), lineno, "source vertex")?;
                    let v = parse_count(tokens.next(), lineno, "target vertex")?;
                    let cap_tok = match tokens.next() {
                        Some(t) => t,
                        None => return fail(lineno, "missing capacity".into()),
                    };
                    if tokens.next().is_some() {
                        return fail(lineno, "trailing tokens after 'e <u> <v> <cap>'".into());
                    }
                    for x in [u, v] {
                        if x == 0 || x > n {
                            return fail(lineno, format!("vertex {x} out of range 1..={n}"));
                        }
                    }
                    let cap = match Capacity::parse(cap_tok) {
                        Ok(c) => c,
                        Err(e) => return fail(lineno, e.to_string()),
                    };
                    raw.push((u, v, cap));
                }
                other => {
                    return fail(lineno, format!("unknown line tag {other:?}"));
                }
            }
        }

        match header {
            None => fail(last_line + 1, "missing 'p <n> <m>' header".into()),
            Some((n, m)) => {
                if raw.len() != m {
                    return fail(
                        last_line + 1,
                        format!("expected {m} edge lines, found {}", raw.len()),
                    );
                }
                Graph::new(n, raw)
            }
        }
    }

    /// Deterministic text serialization: header, then edges sorted by
    /// `(u, v)`. `m` reflects the stored (normalized) edges.
    pub fn serialize(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {}\n",
                e.u + 1,
                e.v + 1,
                self.caps.value(e.rank)
            ));
        }
        out
    }
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| SpafError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| SpafError::Parse {
        line,
        msg: format!("{what} {token:?} is not a non-negative integer"),
    })
}

/// Threshold below which the generator enumerates all ordered pairs and
/// partially shuffles, instead of rejection-sampling.
const DENSE_SAMPLE_LIMIT: u64 = 1 << 22;

/// Generates a graph with `m` distinct ordered pairs chosen uniformly among
/// the `n(n-1)` possibilities and capacities drawn uniformly from
/// `cap_pool`. Fully determined by `seed`.
pub fn generate_random(n: usize, m: usize, cap_pool: &[Capacity], seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(SpafError::InvalidParameter("need at least one vertex".into()));
    }
    let total = n as u64 * (n as u64 - 1);
    if m as u64 > total {
        return Err(SpafError::TooManyEdges { n, m, max: total as usize });
    }
    let mut pool: Vec<Capacity> = cap_pool.to_vec();
    pool.sort();
    pool.dedup();
    if pool.is_empty() && m > 0 {
        return Err(SpafError::InvalidParameter("capacity pool is empty".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    if total <= DENSE_SAMPLE_LIMIT {
        // Partial Fisher-Yates over the full pair universe: uniform without
        // replacement.
        let mut universe: Vec<(u32, u32)> = Vec::with_capacity(total as usize);
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                if u != v {
                    universe.push((u, v));
                }
            }
        }
        for i in 0..m {
            let j = rng.gen_range(i..universe.len());
            universe.swap(i, j);
            let (u, v) = universe[i];
            pairs.push((u as usize, v as usize));
        }
    } else {
        let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(m * 2);
        while pairs.len() < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u, v)) {
                pairs.push((u, v));
            }
        }
    }

    let raw = pairs
        .into_iter()
        .map(|(u, v)| {
            let cap = pool[rng.gen_range(0..pool.len())].clone();
            (u + 1, v + 1, cap)
        })
        .collect();
    Graph::new(n, raw)
}
