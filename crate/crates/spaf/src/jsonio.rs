//! JSON encoding of solver results.
//!
//! One shape serves both solvers:
//!
//! ```json
//! {"n":4,"flows":[1,2.5,9],"pairs":[{"i":1,"j":2,"t":[[1,1],[3,9]]}]}
//! ```
//!
//! * `flows` lists the distinct capacities ascending, as JSON numbers that
//!   round-trip the exact decimal values (`arbitrary_precision`);
//! * `pairs` holds one entry per ordered pair with a non-empty staircase,
//!   1-based, sorted by `(i, j)`; a single-source result simply has one
//!   row's worth of pairs;
//! * each `t` step is `[length, flow]` with the flow given by value, not
//!   rank, so files stand on their own.
//!
//! Output is compact JSON plus a trailing newline and is byte-stable for a
//! given result. Loading validates the shape strictly and rebuilds a
//! queryable [`ApspAfResult`].

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::apsp::ApspAfResult;
use crate::capacity::Capacity;
use crate::error::{Result, SpafError};
use crate::graph::FlowRank;
use crate::sssp::SsspAfResult;
use crate::staircase::FlowStaircase;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub i: u64,
    pub j: u64,
    pub t: Vec<(u64, Number)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultJson {
    pub n: u64,
    pub flows: Vec<Number>,
    pub pairs: Vec<PairJson>,
}

fn number_of(c: &Capacity) -> Number {
    Number::from_str(&c.to_string()).expect("canonical capacity text is a JSON number")
}

fn pairs_of(t: &FlowStaircase, fr: &FlowRank) -> Vec<(u64, Number)> {
    t.pairs()
        .iter()
        .map(|&(len, rank)| (len as u64, number_of(fr.value(rank))))
        .collect()
}

/// Encodes a full all-pairs result.
pub fn to_json_apsp(res: &ApspAfResult) -> ResultJson {
    let n = res.n();
    let fr = res.flow_rank();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let t = res.staircase(i, j);
            if !t.is_empty() {
                pairs.push(PairJson {
                    i: (i + 1) as u64,
                    j: (j + 1) as u64,
                    t: pairs_of(t, fr),
                });
            }
        }
    }
    ResultJson { n: n as u64, flows: fr.values().iter().map(number_of).collect(), pairs }
}

/// Encodes a single-source result as the source's row of pairs.
pub fn to_json_sssp(res: &SsspAfResult) -> ResultJson {
    let n = res.n();
    let fr = res.flow_rank();
    let i = res.source();
    let mut pairs = Vec::new();
    for j in 0..n {
        let t = res.staircase(j);
        if !t.is_empty() {
            pairs.push(PairJson { i: (i + 1) as u64, j: (j + 1) as u64, t: pairs_of(t, fr) });
        }
    }
    ResultJson { n: n as u64, flows: fr.values().iter().map(number_of).collect(), pairs }
}

/// Compact one-line text form, newline-terminated.
pub fn encode(rj: &ResultJson) -> Result<String> {
    let mut s = serde_json::to_string(rj)?;
    s.push('\n');
    Ok(s)
}

pub fn decode(s: &str) -> Result<ResultJson> {
    Ok(serde_json::from_str(s)?)
}

fn bad(msg: impl Into<String>) -> SpafError {
    SpafError::ResultFormat(msg.into())
}

impl ResultJson {
    /// Validates the document and rebuilds a queryable lookup table.
    pub fn into_lookup(self) -> Result<ApspAfResult> {
        let n = self.n as usize;
        if n == 0 {
            return Err(bad("n must be positive"));
        }
        let mut flows = Vec::with_capacity(self.flows.len());
        for num in &self.flows {
            let c = Capacity::parse(&num.to_string())
                .map_err(|e| bad(format!("flow {num}: {e}")))?;
            if flows.last().is_some_and(|prev| *prev >= c) {
                return Err(bad("flows must be strictly ascending"));
            }
            flows.push(c);
        }
        let fr = FlowRank::from_values(flows);

        let mut stairs = vec![FlowStaircase::new(); n * n];
        let mut last_key: Option<(u64, u64)> = None;
        for pair in &self.pairs {
            if last_key.is_some_and(|k| k >= (pair.i, pair.j)) {
                return Err(bad("pairs must be sorted by (i, j) without duplicates"));
            }
            last_key = Some((pair.i, pair.j));
            let (i, j) = (pair.i as usize, pair.j as usize);
            if i < 1 || i > n || j < 1 || j > n {
                return Err(bad(format!("pair ({}, {}) out of range", pair.i, pair.j)));
            }
            if i == j {
                return Err(bad(format!("pair ({i}, {i}) is a self-pair")));
            }
            if pair.t.is_empty() {
                return Err(bad(format!("pair ({i}, {j}) has an empty staircase")));
            }
            let t = &mut stairs[(i - 1) * n + (j - 1)];
            for (len, num) in &pair.t {
                let len = u32::try_from(*len)
                    .ok()
                    .filter(|&l| l >= 1 && (l as usize) < n)
                    .ok_or_else(|| bad(format!("pair ({i}, {j}): length {len} out of range")))?;
                let c = Capacity::parse(&num.to_string())
                    .map_err(|e| bad(format!("pair ({i}, {j}): flow {num}: {e}")))?;
                let rank = fr
                    .rank_of(&c)
                    .ok_or_else(|| bad(format!("pair ({i}, {j}): flow {c} not in flows")))?;
                let ascending = t
                    .last()
                    .is_none_or(|(pl, pr)| len > pl && rank > pr);
                if !ascending {
                    return Err(bad(format!(
                        "pair ({i}, {j}): steps must strictly ascend in length and flow"
                    )));
                }
                t.record(len, rank);
            }
        }
        ApspAfResult::from_parts(n, fr, stairs)
    }
}
