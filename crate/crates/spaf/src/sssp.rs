//! Single-source shortest paths for all flows.
//!
//! One BFS-style shortest-path tree is maintained persistently while the
//! flow threshold sweeps the distinct capacities in ascending order. At
//! each threshold every vertex whose tree path is now too weak is cut and
//! marches deeper — depths never decrease, which is what bounds the whole
//! run by `m(n-1)` edge inspections. After each threshold the tree is
//! snapshot into per-vertex staircases.
//!
//! Within one threshold the buckets `Q[1..n-1]` are drained in depth
//! order, so when a vertex looks for a parent one level up, that level is
//! already final; among parents offering the same bottleneck the smallest
//! id wins. A vertex whose depth would pass `n-1` is retired for the rest
//! of the run (higher thresholds only shrink reachability).

use crate::capacity::Capacity;
use crate::error::{Result, SpafError};
use crate::graph::{FlowRank, Graph};
use crate::matrix::{code_of_rank, CapCode, CAP_INF, CAP_NONE};
use crate::staircase::FlowStaircase;

/// Mutable solver state: bottleneck codes, depths, tree links, and the
/// depth buckets of vertices waiting to re-attach.
struct SptState {
    b: Vec<CapCode>,
    l: Vec<u32>,
    parent: Vec<Option<u32>>,
    attached: Vec<bool>,
    retired: Vec<bool>,
    queue: Vec<Vec<u32>>,
}

/// Instrumentation counters for the complexity contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SsspStats {
    /// In-edge scans across the whole run; at most `m * (n-1)`.
    pub edge_inspections: u64,
    /// Largest number of bucket pops any single vertex saw; at most `n-1`.
    pub max_pops_per_vertex: u32,
}

#[derive(Debug, Clone)]
pub struct SsspAfResult {
    source: usize,
    n: usize,
    flow_rank: FlowRank,
    staircases: Vec<FlowStaircase>,
    /// Per vertex: `(depth, parent)` for every depth the vertex ever
    /// attached at, ascending. Each (vertex, depth) attaches at most once.
    parent_at: Vec<Vec<(u32, u32)>>,
    pub stats: SsspStats,
}

/// Runs the all-flows single-source solver. `source` is 0-based.
pub fn sssp_af(g: &Graph, source: usize) -> Result<SsspAfResult> {
    let n = g.n();
    if source >= n {
        return Err(SpafError::VertexOutOfRange { vertex: source + 1, n });
    }
    let d = g.distinct_capacities().len() as u32;
    let max_depth = n.saturating_sub(1) as u32;

    let mut st = SptState {
        b: vec![CAP_NONE; n],
        l: vec![0; n],
        parent: vec![None; n],
        attached: vec![false; n],
        retired: vec![false; n],
        queue: vec![Vec::new(); max_depth as usize + 1],
    };
    st.b[source] = CAP_INF;
    st.attached[source] = true;

    let mut staircases = vec![FlowStaircase::new(); n];
    let mut parent_at: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    let mut inspections: u64 = 0;
    let mut pops = vec![0u32; n];

    for f_rank in 0..d {
        let f_code = code_of_rank(f_rank);

        // Cut phase: every live vertex whose path no longer carries f
        // loses its spot and rejoins the march one level deeper. A cut
        // parent's subtree needs no special walk — bottlenecks only shrink
        // along tree paths, so every descendant is below f too and gets
        // cut by this same scan.
        for v in 0..n {
            if v == source || st.retired[v] || st.b[v] >= f_code {
                continue;
            }
            st.attached[v] = false;
            st.parent[v] = None;
            st.l[v] += 1;
            if st.l[v] > max_depth {
                st.retired[v] = true;
            } else {
                st.queue[st.l[v] as usize].push(v as u32);
            }
        }

        // March phase: drain buckets shallow to deep. Level `depth - 1`
        // is final once bucket `depth` starts, so a single in-edge scan
        // per pop decides attach-or-descend.
        for depth in 1..=max_depth {
            while let Some(v) = st.queue[depth as usize].pop() {
                let v = v as usize;
                pops[v] += 1;
                debug_assert_eq!(st.l[v], depth);
                let mut best = st.b[v];
                let mut best_u: Option<u32> = None;
                for &(u, cap_rank) in g.in_adj(v) {
                    inspections += 1;
                    let u = u as usize;
                    if st.l[u] + 1 == depth && st.attached[u] {
                        let offer = code_of_rank(cap_rank).min(st.b[u]);
                        if offer > best {
                            best = offer;
                            best_u = Some(u as u32);
                        }
                    }
                }
                match best_u {
                    Some(u) => {
                        debug_assert!(
                            best >= f_code,
                            "an attachment below the current flow is unreachable \
                             when thresholds visit every capacity ascending"
                        );
                        st.b[v] = best;
                        st.parent[v] = Some(u);
                        st.attached[v] = true;
                        debug_assert!(parent_at[v].last().is_none_or(|&(pd, _)| pd < depth));
                        parent_at[v].push((depth, u));
                    }
                    None => {
                        st.l[v] += 1;
                        if st.l[v] > max_depth {
                            st.retired[v] = true;
                        } else {
                            st.queue[st.l[v] as usize].push(v as u32);
                        }
                    }
                }
            }
        }

        // Snapshot: every attached vertex carries at least f at its
        // current depth. Same depth as last time refines the flow; a
        // greater depth starts a new step.
        for (v, t) in staircases.iter_mut().enumerate() {
            if v != source && st.attached[v] {
                debug_assert!(st.b[v] >= f_code);
                t.record(st.l[v], f_rank);
            }
        }
    }

    Ok(SsspAfResult {
        source,
        n,
        flow_rank: g.distinct_capacities().clone(),
        staircases,
        parent_at,
        stats: SsspStats {
            edge_inspections: inspections,
            max_pops_per_vertex: pops.iter().copied().max().unwrap_or(0),
        },
    })
}

impl SsspAfResult {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flow_rank(&self) -> &FlowRank {
        &self.flow_rank
    }

    /// Staircase for target `v` (0-based). The source's own staircase is
    /// empty by convention.
    pub fn staircase(&self, v: usize) -> &FlowStaircase {
        &self.staircases[v]
    }

    pub fn staircases(&self) -> &[FlowStaircase] {
        &self.staircases
    }

    /// Shortest length able to carry `demand`, with the flow actually
    /// carried there. `None` when no path supports the demand.
    pub fn query(&self, v: usize, demand: &Capacity) -> Result<Option<(u32, Capacity)>> {
        if v >= self.n {
            return Err(SpafError::VertexOutOfRange { vertex: v + 1, n: self.n });
        }
        let Some(min_rank) = self.flow_rank.min_rank_at_least(demand) else {
            return Ok(None);
        };
        Ok(self.staircases[v]
            .first_rank_at_least(min_rank)
            .map(|(len, rank)| (len, self.flow_rank.value(rank).clone())))
    }

    /// Reconstructs the tree path behind the staircase pair of length
    /// `len` by walking the per-depth parent records. The result runs
    /// source..=v and has exactly `len` edges.
    pub fn path(&self, v: usize, len: u32) -> Result<Vec<usize>> {
        if v >= self.n {
            return Err(SpafError::VertexOutOfRange { vertex: v + 1, n: self.n });
        }
        if self.staircases[v].pairs().binary_search_by_key(&len, |p| p.0).is_err() {
            return Err(SpafError::InvalidParameter(format!(
                "vertex {} has no staircase entry of length {len}",
                v + 1
            )));
        }
        let mut path = vec![v];
        let mut at = v;
        let mut depth = len;
        while depth > 0 {
            let records = &self.parent_at[at];
            let idx = records.binary_search_by_key(&depth, |r| r.0).map_err(|_| {
                SpafError::Inconsistency(format!(
                    "missing parent record for vertex {} at depth {depth}",
                    at + 1
                ))
            })?;
            at = records[idx].1 as usize;
            path.push(at);
            depth -= 1;
        }
        if at != self.source {
            return Err(SpafError::Inconsistency(format!(
                "parent walk from vertex {} ended at {} instead of the source",
                v + 1,
                at + 1
            )));
        }
        path.reverse();
        Ok(path)
    }
}

/// Operation-table aliases.
pub fn query_sssp(
    res: &SsspAfResult,
    v: usize,
    demand: &Capacity,
) -> Result<Option<(u32, Capacity)>> {
    res.query(v, demand)
}

pub fn path_sssp(res: &SsspAfResult, v: usize, len: u32) -> Result<Vec<usize>> {
    res.path(v, len)
}
