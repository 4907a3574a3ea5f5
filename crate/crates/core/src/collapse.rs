//! Collapses and expansions of partitions into the classes B, C and D.
//!
//! The collapse `p_X` is the largest partition of class `X` dominated by `p`.
//! The expansion `p^X` is the smallest partition dominating `p` whose
//! transpose lies in class `X`; equivalently `(p^X)^t = (p^t)_X`.
//!
//! Both are computed by local moves on the rows of `p`. [`oracle_extremum`]
//! recomputes them by enumerating every candidate partition and is meant for
//! cross-checking only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition, PartitionClass};

/// Default largest size accepted by [`oracle_extremum`].
pub const DEFAULT_ORACLE_BOUND: u32 = 20;

/// Environment variable overriding [`DEFAULT_ORACLE_BOUND`].
pub const ORACLE_BOUND_VAR: &str = "ORBITDUALITY_MAX_ORACLE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Largest class member dominated by the input (the collapse).
    MaxBelow,
    /// Smallest partition with transpose in the class dominating the input
    /// (the expansion).
    MinAbove,
}

/// The `c`-collapse of `p`.
pub fn collapse(p: &Partition, c: PartitionClass) -> Result<Partition> {
    c.check_size(p.size())?;
    let Some(bad) = c.constrained_parity() else {
        return Ok(p.clone());
    };
    let mut parts = p.parts().to_vec();
    loop {
        let Some(q) = largest_odd_multiplicity(&parts, bad) else {
            return Ok(Partition::from_sorted(parts));
        };
        let i = parts.iter().rposition(|&x| x == q).expect("q occurs in parts");
        parts[i] -= 1;
        let j = (i + 1..parts.len())
            .find(|&j| parts[j] + 1 < q)
            .unwrap_or(parts.len());
        if j == parts.len() {
            parts.push(0);
        }
        parts[j] += 1;
        parts.retain(|&x| x > 0);
    }
}

fn largest_odd_multiplicity(parts: &[u32], bad: u32) -> Option<u32> {
    let mut k = 0;
    while k < parts.len() {
        let v = parts[k];
        let run = parts[k..].iter().take_while(|&&x| x == v).count();
        if v % 2 == bad && run % 2 == 1 {
            return Some(v);
        }
        k += run;
    }
    None
}

/// The `c`-expansion of `p`: the smallest partition dominating `p` whose
/// transpose is in class `c`.
pub fn expand(p: &Partition, c: PartitionClass) -> Result<Partition> {
    c.check_size(p.size())?;
    let Some(bad) = c.constrained_parity() else {
        return Ok(p.clone());
    };
    let mut parts = p.parts().to_vec();
    // Column j of the diagram has multiplicity p_j - p_{j+1} in the transpose.
    loop {
        let at = |parts: &[u32], j: usize| if j >= 1 { parts.get(j - 1).copied().unwrap_or(0) } else { 0 };
        let Some(q) = (1..=parts.len())
            .rev()
            .find(|&q| q as u32 % 2 == bad && (at(&parts, q) - at(&parts, q + 1)) % 2 == 1)
        else {
            return Ok(Partition::from_sorted(parts));
        };
        parts[q - 1] -= 1;
        let r = if q == 1 {
            0
        } else {
            let above = parts[q - 2];
            parts.iter().filter(|&&x| x > above).count()
        };
        parts[r] += 1;
        parts.retain(|&x| x > 0);
    }
}

/// Largest size accepted by the oracle, honouring [`ORACLE_BOUND_VAR`].
pub fn oracle_bound() -> u32 {
    std::env::var(ORACLE_BOUND_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BOUND)
}

/// Brute-force collapse or expansion, using the bound from [`oracle_bound`].
pub fn oracle_extremum(p: &Partition, c: PartitionClass, direction: Direction) -> Result<Partition> {
    oracle_extremum_bounded(p, c, direction, oracle_bound())
}

/// Brute-force collapse or expansion of a partition of size at most `bound`.
///
/// Enumerates every partition of `size(p)`, keeps the class-`c` ones below
/// `p` (or the ones above `p` with transpose in `c`) and returns the unique
/// dominance extremum.
pub fn oracle_extremum_bounded(
    p: &Partition,
    c: PartitionClass,
    direction: Direction,
    bound: u32,
) -> Result<Partition> {
    let size = p.size();
    if size > bound {
        return Err(Error::OracleBound { size, bound });
    }
    c.check_size(size)?;
    let candidates: Vec<Partition> = partitions_of(size)
        .into_iter()
        .filter(|q| match direction {
            Direction::MaxBelow => q.is_in_class(c) && q.dominated_by(p),
            Direction::MinAbove => q.transpose().is_in_class(c) && p.dominated_by(q),
        })
        .collect();
    if candidates.is_empty() {
        return Err(Error::OracleEmpty { partition: p.to_string(), class: c });
    }
    let extremal = candidates.iter().find(|q| {
        candidates.iter().all(|r| match direction {
            Direction::MaxBelow => r.dominated_by(q),
            Direction::MinAbove => q.dominated_by(r),
        })
    });
    extremal.cloned().ok_or_else(|| Error::OracleNotUnique { partition: p.to_string(), class: c })
}

/// Classes whose size parity admits a partition of `size`.
pub fn classes_for_size(size: u32) -> &'static [PartitionClass] {
    if size % 2 == 0 {
        &[PartitionClass::C, PartitionClass::D]
    } else {
        &[PartitionClass::B]
    }
}
