//! Matrix kernels over the two path semirings.
//!
//! (max,min): `q_ij = max_k min(a_ik, b_kj)` — maximum bottleneck.
//! (min,+):  `q_ij = min_k (a_ik + b_kj)` — shortest length, with an
//! optional per-row restriction of `k` to a bridging set.
//!
//! All kernels are plain row-major triple loops with the `k` loop in the
//! middle so the inner pass streams both the output row and one row of `b`.

use crate::error::{Result, SpafError};
use crate::matrix::{
    dist_add, BoolMatrix, CapCode, CapacityMatrix, DistanceMatrix, CAP_INF, CAP_NONE, UNREACHABLE,
};

/// Per-entry argmax of a (max,min) product. `u32::MAX` marks "no witness"
/// (the entry is the semiring zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMatrix {
    n: usize,
    data: Vec<u32>,
}

const NO_WITNESS: u32 = u32::MAX;

impl WitnessMatrix {
    fn none(n: usize) -> WitnessMatrix {
        WitnessMatrix { n, data: vec![NO_WITNESS; n * n] }
    }

    /// Smallest `k` with `min(a_ik, b_kj)` equal to the product entry, or
    /// `None` when the entry is zero.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let w = self.data[i * self.n + j];
        (w != NO_WITNESS).then_some(w)
    }
}

fn check_dims(an: usize, bn: usize, what: &str) -> Result<()> {
    if an != bn {
        return Err(SpafError::DimensionMismatch(format!("{what}: {an} vs {bn}")));
    }
    Ok(())
}

/// (max,min) product with witnesses. Ties in the max resolve to the
/// smallest `k`.
pub fn maxmin_product(
    a: &CapacityMatrix,
    b: &CapacityMatrix,
) -> Result<(CapacityMatrix, WitnessMatrix)> {
    check_dims(a.n(), b.n(), "maxmin_product")?;
    let n = a.n();
    let mut q = CapacityMatrix::identity(n);
    // Start from all-zero: the product of the operands, not a closure step.
    q.data_mut().fill(CAP_NONE);
    let mut w = WitnessMatrix::none(n);
    for i in 0..n {
        let a_row: Vec<CapCode> = a.row(i).to_vec();
        for (k, &aik) in a_row.iter().enumerate() {
            if aik == CAP_NONE {
                continue; // min(0, _) can never win
            }
            let b_row = b.row(k);
            for (j, &bkj) in b_row.iter().enumerate() {
                let cand = aik.min(bkj);
                let cell = i * n + j;
                if cand > q.data_mut()[cell] {
                    q.data_mut()[cell] = cand;
                    w.data[cell] = k as u32;
                }
            }
        }
    }
    Ok((q, w))
}

/// Reflexive-transitive (max,min) closure, truncated at path length `n-1`
/// by repeated squaring (with early exit once a fixpoint is reached).
pub fn maxmin_closure(c: &CapacityMatrix) -> CapacityMatrix {
    let n = c.n();
    let mut s = c.clone();
    for i in 0..n {
        s.set(i, i, CAP_INF);
    }
    let mut covered = 1usize; // s is exact for paths of length <= covered
    while covered < n.saturating_sub(1) {
        let (next, _) = maxmin_product(&s, &s).expect("square matrices agree");
        if next == s {
            break;
        }
        s = next;
        covered *= 2;
    }
    s
}

/// (min,+) product. With `restrict = Some(sets)`, row `i` of the result
/// only considers `k` in `sets[i]`; the diagonal is pinned to 0 either way.
pub fn minplus_product(
    a: &DistanceMatrix,
    b: &DistanceMatrix,
    restrict: Option<&[Vec<u32>]>,
) -> Result<DistanceMatrix> {
    check_dims(a.n(), b.n(), "minplus_product")?;
    let n = a.n();
    if let Some(sets) = restrict {
        if sets.len() != n {
            return Err(SpafError::DimensionMismatch(format!(
                "minplus_product restriction: {} row sets for n = {n}",
                sets.len()
            )));
        }
    }
    let mut q = DistanceMatrix::unreachable(n);
    let full: Vec<u32> = (0..n as u32).collect();
    for i in 0..n {
        q.set(i, i, UNREACHABLE); // recomputed below; pinned to 0 at the end
        let ks: &[u32] = match restrict {
            Some(sets) => &sets[i],
            None => &full,
        };
        for &k in ks {
            let aik = a.get(i, k as usize);
            if aik == UNREACHABLE {
                continue;
            }
            let b_row = b.row(k as usize);
            for (j, &bkj) in b_row.iter().enumerate() {
                let cand = dist_add(aik, bkj);
                if cand < q.get(i, j) {
                    q.set(i, j, cand);
                }
            }
        }
        q.set(i, i, 0);
    }
    Ok(q)
}

/// Boolean matrix product over (or, and).
pub fn bool_product(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    check_dims(a.n(), b.n(), "bool_product")?;
    let n = a.n();
    let mut q = BoolMatrix::zero(n);
    for i in 0..n {
        for k in 0..n {
            if a.get(i, k) {
                q.or_row_words(i, b.row_words(k));
            }
        }
    }
    Ok(q)
}

/// Reflexive-transitive Boolean closure via bitset Floyd-Warshall.
pub fn bool_closure(a: &BoolMatrix) -> BoolMatrix {
    let n = a.n();
    let mut s = a.clone();
    for i in 0..n {
        s.set(i, i, true);
    }
    for k in 0..n {
        for i in 0..n {
            if s.get(i, k) {
                s.or_rows(i, k);
            }
        }
    }
    s
}
