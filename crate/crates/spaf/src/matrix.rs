//! Flat row-major matrices used by the solver kernels.
//!
//! Capacity entries are encoded in a single `u32` so the (max,min) kernels
//! are plain integer comparisons: `0` = no path, `rank + 1` = the capacity
//! with that rank, `u32::MAX` = the unbounded identity diagonal. The
//! encoding is order-preserving, which is all the semiring needs.

use crate::graph::{FlowRank, Graph};

/// Encoded capacity entry. See module docs for the encoding.
pub type CapCode = u32;

/// Semiring zero: no path.
pub const CAP_NONE: CapCode = 0;
/// Semiring top: the identity diagonal (an empty path carries any flow).
pub const CAP_INF: CapCode = u32::MAX;

pub fn code_of_rank(rank: u32) -> CapCode {
    debug_assert!(rank < u32::MAX - 1);
    rank + 1
}

/// Rank behind a code; `None` for the two sentinels.
pub fn rank_of_code(code: CapCode) -> Option<u32> {
    (code != CAP_NONE && code != CAP_INF).then(|| code - 1)
}

/// Square matrix over encoded capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityMatrix {
    n: usize,
    data: Vec<CapCode>,
}

impl CapacityMatrix {
    /// All-`CAP_NONE` off-diagonal, `CAP_INF` diagonal: the (max,min)
    /// identity.
    pub fn identity(n: usize) -> CapacityMatrix {
        let mut m = CapacityMatrix { n, data: vec![CAP_NONE; n * n] };
        for i in 0..n {
            m.data[i * n + i] = CAP_INF;
        }
        m
    }

    /// Adjacency capacities of `g` (encoded ranks) with the identity
    /// diagonal.
    pub fn from_graph(g: &Graph) -> CapacityMatrix {
        let n = g.n();
        let mut m = CapacityMatrix::identity(n);
        for e in g.edges() {
            m.data[e.u as usize * n + e.v as usize] = code_of_rank(e.rank);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> CapCode {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, code: CapCode) {
        self.data[i * self.n + j] = code;
    }

    pub fn row(&self, i: usize) -> &[CapCode] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub(crate) fn data_mut(&mut self) -> &mut [CapCode] {
        &mut self.data
    }

    /// Human-readable entry for diagnostics and tests: `-`, `inf`, or the
    /// capacity value.
    pub fn describe(&self, i: usize, j: usize, ranks: &FlowRank) -> String {
        match self.get(i, j) {
            CAP_NONE => "-".to_string(),
            CAP_INF => "inf".to_string(),
            code => ranks.value(code - 1).to_string(),
        }
    }
}

/// Unreachable sentinel for `DistanceMatrix`. Absorbs addition.
pub const UNREACHABLE: u32 = u32::MAX;

/// Adds two path lengths, saturating at `UNREACHABLE`.
#[inline]
pub fn dist_add(a: u32, b: u32) -> u32 {
    if a == UNREACHABLE || b == UNREACHABLE {
        UNREACHABLE
    } else {
        a + b
    }
}

/// Square matrix of path lengths: 0 diagonal, off-diagonal in `1..n` or
/// `UNREACHABLE`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    /// All-unreachable off-diagonal, zero diagonal.
    pub fn unreachable(n: usize) -> DistanceMatrix {
        let mut m = DistanceMatrix { n, data: vec![UNREACHABLE; n * n] };
        for i in 0..n {
            m.data[i * n + i] = 0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, len: u32) {
        self.data[i * self.n + j] = len;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Square boolean matrix backed by 64-bit row blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> BoolMatrix {
        let words_per_row = n.div_ceil(64);
        BoolMatrix { n, words_per_row, bits: vec![0; words_per_row * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let word = &mut self.bits[i * self.words_per_row + j / 64];
        if value {
            *word |= 1 << (j % 64);
        } else {
            *word &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// `row[dst] |= words` for an externally supplied word row.
    pub fn or_row_words(&mut self, dst: usize, words: &[u64]) {
        debug_assert_eq!(words.len(), self.words_per_row);
        let w = self.words_per_row;
        for (x, y) in self.bits[dst * w..(dst + 1) * w].iter_mut().zip(words) {
            *x |= *y;
        }
    }

    /// `row[dst] |= row[src]`; a no-op when `dst == src`.
    pub fn or_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words_per_row;
        let (a, b) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x |= *y;
        }
    }

    /// True when every entry (diagonal included) is set.
    pub fn all_ones(&self) -> bool {
        (0..self.n).all(|i| {
            let row = self.row_words(i);
            let full_words = self.n / 64;
            let tail = self.n % 64;
            row[..full_words].iter().all(|&w| w == u64::MAX)
                && (tail == 0 || row[full_words] == (1u64 << tail) - 1)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn code_round_trip() {
        assert_eq!(rank_of_code(code_of_rank(0)), Some(0));
        assert_eq!(rank_of_code(code_of_rank(41)), Some(41));
        assert_eq!(rank_of_code(CAP_NONE), None);
        assert_eq!(rank_of_code(CAP_INF), None);
        // Encoding preserves order, NONE below all ranks, INF above.
        assert!(CAP_NONE < code_of_rank(0));
        assert!(code_of_rank(3) < code_of_rank(4));
        assert!(code_of_rank(u32::MAX - 2) < CAP_INF);
    }

    #[test]
    fn capacity_matrix_from_graph() {
        let g = Graph::parse("p 2 1\ne 1 2 5\n").unwrap();
        let c = CapacityMatrix::from_graph(&g);
        let fr = g.distinct_capacities();
        assert_eq!(c.describe(0, 0, fr), "inf");
        assert_eq!(c.describe(0, 1, fr), "5");
        assert_eq!(c.describe(1, 0, fr), "-");
        assert_eq!(c.describe(1, 1, fr), "inf");
    }

    #[test]
    fn distance_matrix_defaults() {
        let d = DistanceMatrix::unreachable(3);
        assert_eq!(d.get(0, 0), 0);
        assert_eq!(d.get(0, 2), UNREACHABLE);
        assert_eq!(dist_add(UNREACHABLE, 1), UNREACHABLE);
        assert_eq!(dist_add(2, 3), 5);
    }

    #[test]
    fn bool_matrix_bit_ops() {
        let mut b = BoolMatrix::zero(70);
        assert!(!b.get(69, 69));
        b.set(0, 69, true);
        b.set(1, 3, true);
        b.or_rows(1, 0);
        assert!(b.get(1, 69) && b.get(1, 3));
        b.or_rows(0, 0);
        assert!(b.get(0, 69) && !b.get(0, 3));
        assert!(!b.all_ones());
        let mut tiny = BoolMatrix::zero(2);
        for i in 0..2 {
            for j in 0..2 {
                tiny.set(i, j, true);
            }
        }
        assert!(tiny.all_ones());
    }
}
