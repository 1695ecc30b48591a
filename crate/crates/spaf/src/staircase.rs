//! Flow staircases: the per-pair answer shape.
//!
//! A staircase is the Pareto frontier of `(length, flow)` pairs for one
//! ordered vertex pair: both coordinates strictly increase, so the first
//! pair is the all-capacities shortest path and the last pair carries the
//! maximum bottleneck. Flows are stored as dense ranks (see
//! [`crate::graph::FlowRank`]).

/// Ordered `(path length, flow rank)` pairs, both strictly increasing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowStaircase {
    pairs: Vec<(u32, u32)>,
}

impl FlowStaircase {
    pub fn new() -> FlowStaircase {
        FlowStaircase { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn first(&self) -> Option<(u32, u32)> {
        self.pairs.first().copied()
    }

    pub fn last(&self) -> Option<(u32, u32)> {
        self.pairs.last().copied()
    }

    /// Records that a path of length `len` carries flow rank `rank`,
    /// assuming callers feed non-decreasing lengths and increasing ranks:
    /// equal length overwrites the flow (the newer rank dominates), greater
    /// length appends.
    pub fn record(&mut self, len: u32, rank: u32) {
        match self.pairs.last_mut() {
            Some(last) if last.0 == len => {
                debug_assert!(rank >= last.1);
                last.1 = rank;
            }
            Some(last) => {
                debug_assert!(len > last.0 && rank > last.1);
                self.pairs.push((len, rank));
            }
            None => self.pairs.push((len, rank)),
        }
    }

    /// First (hence shortest) pair whose flow rank is at least `min_rank`.
    /// Because both coordinates increase together, this is the smallest
    /// length able to carry the demand.
    pub fn first_rank_at_least(&self, min_rank: u32) -> Option<(u32, u32)> {
        let idx = self.pairs.partition_point(|&(_, r)| r < min_rank);
        self.pairs.get(idx).copied()
    }

    /// Structural check used by tests: strict double monotonicity, lengths
    /// in `1..=max_len`, ranks below `d`, at most `max_len` pairs.
    pub fn validate(&self, max_len: u32, d: u32) -> bool {
        if self.pairs.len() > max_len as usize {
            return false;
        }
        let mut prev: Option<(u32, u32)> = None;
        for &(len, rank) in &self.pairs {
            if len < 1 || len > max_len || rank >= d {
                return false;
            }
            if let Some((pl, pr)) = prev {
                if len <= pl || rank <= pr {
                    return false;
                }
            }
            prev = Some((len, rank));
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_replace_or_append() {
        let mut t = FlowStaircase::new();
        t.record(1, 0);
        t.record(1, 1); // same length: newer rank wins
        t.record(2, 3);
        assert_eq!(t.pairs(), &[(1, 1), (2, 3)]);
        assert!(t.validate(3, 5));
    }

    #[test]
    fn lookup_smallest_length_for_demand() {
        // Shortest length per demand over ((1,2),(2,4),(3,8),(5,9)) encoded
        // with rank == value index in {2,4,8,9}.
        let mut t = FlowStaircase::new();
        for (l, r) in [(1, 0), (2, 1), (3, 2), (5, 3)] {
            t.record(l, r);
        }
        assert_eq!(t.first_rank_at_least(0), Some((1, 0)));
        assert_eq!(t.first_rank_at_least(2), Some((3, 2)));
        assert_eq!(t.first_rank_at_least(3), Some((5, 3)));
        assert_eq!(t.first_rank_at_least(4), None);
        assert!(t.validate(5, 4));
        assert!(!t.validate(4, 4), "length 5 exceeds max_len 4");
        assert!(!t.validate(5, 3), "rank 3 exceeds d = 3");
    }

    #[test]
    fn validate_rejects_non_monotone() {
        let t = FlowStaircase { pairs: vec![(2, 1), (2, 2)] };
        assert!(!t.validate(5, 5));
        let t = FlowStaircase { pairs: vec![(1, 2), (2, 2)] };
        assert!(!t.validate(5, 5));
        let t = FlowStaircase { pairs: vec![(0, 0)] };
        assert!(!t.validate(5, 5));
    }
}
