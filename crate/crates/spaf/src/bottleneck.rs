//! Network bottleneck: the largest flow every ordered vertex pair can
//! carry simultaneously, i.e. the value at which the capacity-thresholded
//! subgraph stops being strongly connected.
//!
//! The search solver binary-searches the sorted distinct capacities and
//! probes each threshold with a Boolean reachability closure; the oracle
//! solver takes the minimum off-diagonal entry of the full (max,min)
//! closure. Both report how many closures they computed.

use crate::capacity::Capacity;
use crate::graph::Graph;
use crate::matrix::{BoolMatrix, CAP_INF, CAP_NONE};
use crate::semiring::{bool_closure, maxmin_closure};

/// Outcome of a network bottleneck computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkBottleneck {
    /// The graph is strongly connected; this is the best uniform flow.
    Flow(Capacity),
    /// Some ordered pair has no path at all.
    NotStronglyConnected,
    /// Fewer than two vertices: no ordered pair exists.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottleneckResult {
    pub value: NetworkBottleneck,
    /// Number of closure computations performed.
    pub probe_count: usize,
}

/// True when the subgraph of edges with capacity rank `>= rank` is strongly
/// connected.
pub fn probe_threshold(g: &Graph, rank: u32) -> bool {
    let n = g.n();
    let mut adj = BoolMatrix::zero(n);
    for e in g.edges() {
        if e.rank >= rank {
            adj.set(e.u as usize, e.v as usize, true);
        }
    }
    bool_closure(&adj).all_ones()
}

/// Binary search over distinct capacities. At most `ceil(log2 d) + 1`
/// probes: one to rule out the smallest threshold, then a halving search.
pub fn network_bottleneck(g: &Graph) -> BottleneckResult {
    if g.n() < 2 {
        return BottleneckResult { value: NetworkBottleneck::Degenerate, probe_count: 0 };
    }
    let d = g.distinct_capacities().len();
    if d == 0 {
        // No edges at all; with n >= 2 nothing is reachable.
        return BottleneckResult { value: NetworkBottleneck::NotStronglyConnected, probe_count: 0 };
    }
    let mut probes = 0;
    let mut probe = |rank: u32| {
        probes += 1;
        probe_threshold(g, rank)
    };
    if !probe(0) {
        return BottleneckResult {
            value: NetworkBottleneck::NotStronglyConnected,
            probe_count: probes,
        };
    }
    // Invariant: rank `lo` is feasible, every rank above `hi` is not.
    let (mut lo, mut hi) = (0u32, d as u32 - 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if probe(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    BottleneckResult {
        value: NetworkBottleneck::Flow(g.distinct_capacities().value(lo).clone()),
        probe_count: probes,
    }
}

/// Reference solver: one full (max,min) closure; the bottleneck is the
/// smallest off-diagonal closure entry.
pub fn network_bottleneck_oracle(g: &Graph) -> BottleneckResult {
    if g.n() < 2 {
        return BottleneckResult { value: NetworkBottleneck::Degenerate, probe_count: 0 };
    }
    let n = g.n();
    let closure = maxmin_closure(&crate::matrix::CapacityMatrix::from_graph(g));
    let mut worst = CAP_INF;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.min(closure.get(i, j));
            }
        }
    }
    let value = match worst {
        CAP_NONE => NetworkBottleneck::NotStronglyConnected,
        code => NetworkBottleneck::Flow(
            g.distinct_capacities().value(code - 1).clone(),
        ),
    };
    BottleneckResult { value, probe_count: 1 }
}
