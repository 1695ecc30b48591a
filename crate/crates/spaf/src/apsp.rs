//! All-pairs shortest paths for all flows.
//!
//! Two phases around a horizon `r` (default `ceil(sqrt(d))`, clamped to
//! `[1, n-1]`):
//!
//! * acceleration — iterate (max,min) products `C^l = C * C^(l-1)` for
//!   `l <= r`; every strict improvement of an entry appends a staircase
//!   pair, so after the phase all pairs of length `<= r` are final;
//! * cruising — expand the partial staircases into one distance matrix per
//!   flow rank, then grow the exact horizon `l -> ceil(3l/2)` by (min,+)
//!   squaring restricted to small bridging sets until it passes `n-1`.
//!
//! Finalization folds the per-flow distances back into full staircases.
//! Paths are reconstructed greedily from the result plus the graph; no
//! successor matrices are stored.

use std::time::{Duration, Instant};

use crate::capacity::Capacity;
use crate::error::{Result, SpafError};
use crate::graph::{FlowRank, Graph};
use crate::matrix::{rank_of_code, CapacityMatrix, DistanceMatrix, UNREACHABLE};
use crate::semiring::{maxmin_product, minplus_product};
use crate::staircase::FlowStaircase;

/// Practical horizon: `ceil(sqrt(d))` clamped to `[1, n-1]`. Requires
/// `n >= 2`.
pub fn choose_r(n: usize, d: usize) -> usize {
    debug_assert!(n >= 2);
    let mut r = (d as f64).sqrt() as usize;
    while r * r < d {
        r += 1;
    }
    while r > 1 && (r - 1) * (r - 1) >= d {
        r -= 1;
    }
    r.clamp(1, n - 1)
}

/// One distance matrix per flow rank, ascending. Entries can only grow
/// with the rank: demanding more flow never shortens a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistMatrixSet {
    n: usize,
    mats: Vec<DistanceMatrix>,
}

impl DistMatrixSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of flow ranks.
    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrix(&self, rank: usize) -> &DistanceMatrix {
        &self.mats[rank]
    }

    /// Structural check: entries non-decreasing in the rank.
    pub fn is_rank_monotone(&self) -> bool {
        self.mats.windows(2).all(|w| {
            (0..self.n * self.n).all(|cell| {
                let (i, j) = (cell / self.n, cell % self.n);
                w[0].get(i, j) <= w[1].get(i, j)
            })
        })
    }
}

/// Iterated (max,min) products up to length `r`. Returns the partial
/// staircases (every strict entry improvement appends its level) and
/// `C^r`. Products are taken as `C * C^(l-1)` so a kept witness would name
/// the first hop.
pub fn acceleration_phase(
    c: &CapacityMatrix,
    r: usize,
) -> Result<(Vec<FlowStaircase>, CapacityMatrix)> {
    let n = c.n();
    if n < 2 || r < 1 || r > n - 1 {
        return Err(SpafError::InvalidParameter(format!(
            "acceleration horizon r = {r} outside 1..={} for n = {n}",
            n.saturating_sub(1)
        )));
    }
    let mut stairs = vec![FlowStaircase::new(); n * n];
    let mut cur = CapacityMatrix::identity(n); // C^0
    for level in 1..=r as u32 {
        let (next, _) = maxmin_product(c, &cur)?;
        for i in 0..n {
            for j in 0..n {
                if i != j && next.get(i, j) > cur.get(i, j) {
                    let rank = rank_of_code(next.get(i, j))
                        .expect("off-diagonal products stay below the identity");
                    stairs[i * n + j].record(level, rank);
                }
            }
        }
        cur = next;
    }
    Ok((stairs, cur))
}

/// Expands partial staircases into per-flow distance matrices:
/// `d^f_ij` = the smallest recorded length whose flow is at least `f`,
/// else unreachable. `d` is the number of flow ranks.
pub fn init_cruising(seed: &[FlowStaircase], n: usize, d: usize) -> DistMatrixSet {
    let mut mats: Vec<DistanceMatrix> =
        (0..d).map(|_| DistanceMatrix::unreachable(n)).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let pairs = seed[i * n + j].pairs();
            // Lengths and ranks co-ascend, so for each rank the first pair
            // at or above it is also the shortest; one pointer sweeps all
            // ranks.
            let mut p = 0;
            for (rank, mat) in mats.iter_mut().enumerate() {
                while p < pairs.len() && (pairs[p].1 as usize) < rank {
                    p += 1;
                }
                if p == pairs.len() {
                    break;
                }
                mat.set(i, j, pairs[p].0);
            }
        }
    }
    DistMatrixSet { n, mats }
}

/// Smallest equal-value group among row entries within `[lo, hi]`; ties on
/// group size pick the smaller value. Empty when the row has no entry in
/// range (then no path of the next horizon band starts here).
fn bridging_set(row: &[u32], lo: u32, hi: u32) -> Vec<u32> {
    let span = (hi - lo) as usize + 1;
    let mut counts = vec![0u32; span];
    for &len in row {
        if len >= lo && len <= hi {
            counts[(len - lo) as usize] += 1;
        }
    }
    let mut best: Option<(u32, u32)> = None; // (count, value)
    for (off, &count) in counts.iter().enumerate() {
        if count > 0 && best.is_none_or(|(bc, _)| count < bc) {
            best = Some((count, lo + off as u32));
        }
    }
    match best {
        None => Vec::new(),
        Some((_, value)) => row
            .iter()
            .enumerate()
            .filter(|&(_, &len)| len == value)
            .map(|(k, _)| k as u32)
            .collect(),
    }
}

/// One cruising round for one flow rank: restricted (min,+) square, then
/// accept strictly better lengths up to the new horizon.
fn cruising_round(mat: &mut DistanceMatrix, horizon: usize, target: usize) {
    let n = mat.n();
    let lo = horizon.div_ceil(2) as u32;
    let hi = horizon as u32;
    let sets: Vec<Vec<u32>> = (0..n).map(|i| bridging_set(mat.row(i), lo, hi)).collect();
    let product = minplus_product(mat, mat, Some(&sets)).expect("same dimensions");
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let cand = product.get(i, j);
            if cand as usize <= target && cand < mat.get(i, j) {
                mat.set(i, j, cand);
            }
        }
    }
}

/// Runs cruising rounds until the exact horizon reaches `n`, growing it by
/// `ceil(3l/2)` per round. Matrices for different flows are independent;
/// `threads > 1` splits them across that many OS threads with identical
/// results. Returns the number of rounds.
pub fn cruising_phase(dms: &mut DistMatrixSet, r: usize, threads: usize) -> usize {
    let n = dms.n;
    let mut rounds = 0;
    let mut horizon = r;
    while horizon < n {
        let target = (3 * horizon).div_ceil(2);
        let workers = threads.clamp(1, dms.mats.len().max(1));
        if workers <= 1 {
            for mat in &mut dms.mats {
                cruising_round(mat, horizon, target);
            }
        } else {
            let chunk = dms.mats.len().div_ceil(workers);
            std::thread::scope(|scope| {
                for slice in dms.mats.chunks_mut(chunk) {
                    scope.spawn(move || {
                        for mat in slice {
                            cruising_round(mat, horizon, target);
                        }
                    });
                }
            });
        }
        rounds += 1;
        horizon = target;
    }
    rounds
}

/// Folds the per-flow distances back onto the acceleration staircases:
/// ranks past each seed's last flow either refine the last step (equal
/// length) or append a longer one.
pub fn finalize(dms: &DistMatrixSet, mut seed: Vec<FlowStaircase>) -> Vec<FlowStaircase> {
    let n = dms.n;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let t = &mut seed[i * n + j];
            let start = t.last().map_or(0, |(_, rank)| rank + 1) as usize;
            for g in start..dms.mats.len() {
                let len = dms.mats[g].get(i, j);
                if len != UNREACHABLE {
                    t.record(len, g as u32);
                }
            }
        }
    }
    seed
}

#[derive(Debug, Clone, Copy)]
pub struct ApspOptions {
    /// Acceleration horizon; `None` picks `choose_r(n, d)`.
    pub r: Option<usize>,
    /// Worker threads for the cruising phase (results identical).
    pub threads: usize,
}

impl Default for ApspOptions {
    fn default() -> ApspOptions {
        ApspOptions { r: None, threads: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct ApspAfResult {
    n: usize,
    flow_rank: FlowRank,
    staircases: Vec<FlowStaircase>,
    pub r_used: usize,
    pub cruise_rounds: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PhaseTimings {
    pub acceleration: Duration,
    pub cruising: Duration,
    pub finalize: Duration,
}

/// All-pairs all-flows staircases with default options.
pub fn apsp_af(g: &Graph) -> Result<ApspAfResult> {
    apsp_af_with(g, ApspOptions::default())
}

pub fn apsp_af_with(g: &Graph, opts: ApspOptions) -> Result<ApspAfResult> {
    solve_timed(g, opts).map(|(res, _)| res)
}

/// Like [`apsp_af_with`] but reports wall time per phase.
pub fn solve_timed(g: &Graph, opts: ApspOptions) -> Result<(ApspAfResult, PhaseTimings)> {
    let n = g.n();
    let flow_rank = g.distinct_capacities().clone();
    let d = flow_rank.len();
    if n < 2 || d == 0 {
        // No pair can have a path; nothing to run.
        return Ok((
            ApspAfResult {
                n,
                flow_rank,
                staircases: vec![FlowStaircase::new(); n * n],
                r_used: 0,
                cruise_rounds: 0,
            },
            PhaseTimings::default(),
        ));
    }
    let r = match opts.r {
        None => choose_r(n, d),
        Some(r) if (1..n).contains(&r) => r,
        Some(r) => {
            return Err(SpafError::InvalidParameter(format!(
                "horizon r = {r} outside 1..={}",
                n - 1
            )))
        }
    };

    let mut timings = PhaseTimings::default();
    let c = CapacityMatrix::from_graph(g);

    let t0 = Instant::now();
    let (seed, _c_r) = acceleration_phase(&c, r)?;
    timings.acceleration = t0.elapsed();

    let t1 = Instant::now();
    let mut dms = init_cruising(&seed, n, d);
    let cruise_rounds = cruising_phase(&mut dms, r, opts.threads);
    timings.cruising = t1.elapsed();

    let t2 = Instant::now();
    let staircases = finalize(&dms, seed);
    timings.finalize = t2.elapsed();

    Ok((
        ApspAfResult { n, flow_rank, staircases, r_used: r, cruise_rounds },
        timings,
    ))
}

impl ApspAfResult {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flow_rank(&self) -> &FlowRank {
        &self.flow_rank
    }

    /// Staircase of the ordered pair `(i, j)`, 0-based.
    pub fn staircase(&self, i: usize, j: usize) -> &FlowStaircase {
        &self.staircases[i * self.n + j]
    }

    /// Row-major `n * n` staircase grid.
    pub fn staircases(&self) -> &[FlowStaircase] {
        &self.staircases
    }

    /// Assembles a result directly from parts (used when loading JSON).
    pub fn from_parts(
        n: usize,
        flow_rank: FlowRank,
        staircases: Vec<FlowStaircase>,
    ) -> Result<ApspAfResult> {
        if staircases.len() != n * n {
            return Err(SpafError::DimensionMismatch(format!(
                "{} staircases for n = {n}",
                staircases.len()
            )));
        }
        Ok(ApspAfResult { n, flow_rank, staircases, r_used: 0, cruise_rounds: 0 })
    }

    /// Shortest length able to carry `demand` from `i` to `j`, with the
    /// flow carried there.
    pub fn query(&self, i: usize, j: usize, demand: &Capacity) -> Result<Option<(u32, Capacity)>> {
        for v in [i, j] {
            if v >= self.n {
                return Err(SpafError::VertexOutOfRange { vertex: v + 1, n: self.n });
            }
        }
        let Some(min_rank) = self.flow_rank.min_rank_at_least(demand) else {
            return Ok(None);
        };
        Ok(self
            .staircase(i, j)
            .first_rank_at_least(min_rank)
            .map(|(len, rank)| (len, self.flow_rank.value(rank).clone())))
    }

    /// Greedy path reconstruction: resolve the demand to a staircase pair
    /// `(len, f)`, then repeatedly step to the smallest-id out-neighbor
    /// whose edge carries `f` and whose remaining distance at `f` is one
    /// less. Needs the source graph; the result stores no successors.
    pub fn path(
        &self,
        g: &Graph,
        i: usize,
        j: usize,
        demand: &Capacity,
    ) -> Result<Option<Vec<usize>>> {
        let Some((len, flow)) = self.query(i, j, demand)? else {
            return Ok(None);
        };
        let f_rank = self
            .flow_rank
            .rank_of(&flow)
            .ok_or_else(|| SpafError::Inconsistency("resolved flow not in rank table".into()))?;
        let mut path = vec![i];
        let mut at = i;
        let mut budget = len;
        while budget > 0 {
            let mut next: Option<usize> = None;
            for &(to, cap_rank) in g.out_adj(at) {
                if cap_rank < f_rank {
                    continue;
                }
                let to = to as usize;
                let reaches = if budget == 1 {
                    to == j
                } else {
                    self.staircase(to, j)
                        .first_rank_at_least(f_rank)
                        .is_some_and(|(l, _)| l == budget - 1)
                };
                if reaches {
                    next = Some(to);
                    break;
                }
            }
            let Some(to) = next else {
                return Err(SpafError::Inconsistency(format!(
                    "no viable step from vertex {} with {budget} hops left at flow {flow}",
                    at + 1
                )));
            };
            path.push(to);
            at = to;
            budget -= 1;
        }
        Ok(Some(path))
    }
}

/// Operation-table aliases.
pub fn query_apsp(
    res: &ApspAfResult,
    i: usize,
    j: usize,
    demand: &Capacity,
) -> Result<Option<(u32, Capacity)>> {
    res.query(i, j, demand)
}

pub fn path_apsp(
    res: &ApspAfResult,
    g: &Graph,
    i: usize,
    j: usize,
    demand: &Capacity,
) -> Result<Option<Vec<usize>>> {
    res.path(g, i, j, demand)
}
