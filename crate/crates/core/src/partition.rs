//! Integer partitions and the elementary operations on them.
//!
//! A [`Partition`] is stored normalized: parts are strictly positive and
//! weakly decreasing. Operations that need aligned operands pad with zeros
//! transiently and strip them again before returning.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Multiplicity-parity classes of partitions.
///
/// `B` and `D` share the rule (even parts occur with even multiplicity) and
/// differ only in the size parity they are used with: odd for `B`, even for `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionClass {
    /// All partitions.
    A,
    /// Symplectic: every odd part has even multiplicity.
    C,
    /// Odd orthogonal: every even part has even multiplicity, odd size.
    B,
    /// Even orthogonal: every even part has even multiplicity, even size.
    D,
}

impl PartitionClass {
    /// Parity (0 = even, 1 = odd) of the parts whose multiplicity must be
    /// even, or `None` for class `A`.
    pub(crate) fn constrained_parity(self) -> Option<u32> {
        match self {
            PartitionClass::A => None,
            PartitionClass::C => Some(1),
            PartitionClass::B | PartitionClass::D => Some(0),
        }
    }

    /// Required parity of the total size, if any.
    pub fn size_parity(self) -> Option<u32> {
        match self {
            PartitionClass::A => None,
            PartitionClass::B => Some(1),
            PartitionClass::C | PartitionClass::D => Some(0),
        }
    }

    /// Checks that a partition of `size` may be collapsed into this class.
    pub(crate) fn check_size(self, size: u32) -> Result<()> {
        match self.size_parity() {
            Some(parity) if size % 2 != parity => Err(Error::ParityMismatch { class: self, size }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PartitionClass::A => "A",
            PartitionClass::B => "B",
            PartitionClass::C => "C",
            PartitionClass::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for PartitionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(PartitionClass::A),
            "B" => Ok(PartitionClass::B),
            "C" => Ok(PartitionClass::C),
            "D" => Ok(PartitionClass::D),
            other => Err(Error::Parse(format!("unknown partition class `{other}`"))),
        }
    }
}

/// Which end of a partition [`Partition::boundary_variant`] adjusts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Add one to the largest part.
    Plus,
    /// Subtract one from the smallest part.
    Minus,
    /// Both of the above.
    PlusMinus,
}

impl Partition {
    /// Builds a partition from arbitrary non-negative parts; zeros are
    /// dropped and the rest sorted descending.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `[1^n]`.
    pub fn column(n: u32) -> Self {
        Partition { parts: vec![1; n as usize] }
    }

    /// `[n]`, or the empty partition when `n == 0`.
    pub fn row(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// `[part^count]`.
    pub fn repeated(part: u32, count: usize) -> Self {
        Partition::new(vec![part; count])
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), with implicit trailing zeros.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        if value == 0 {
            return 0;
        }
        self.parts.iter().filter(|&&p| p == value).count()
    }

    /// Distinct parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Prefix sums `p_1, p_1 + p_2, ...` over `len` slots (zero padded).
    pub fn prefix_sums(&self, len: usize) -> Vec<u32> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.part(i);
                acc
            })
            .collect()
    }

    /// The conjugate partition: `result[j] = #{i : p_i >= j + 1}`.
    pub fn transpose(&self) -> Partition {
        let Some(first) = self.largest() else {
            return Partition::empty();
        };
        let mut cols = vec![0u32; first as usize];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition::from_sorted(cols)
    }

    /// Componentwise sum, padding the shorter operand with zeros.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition::from_sorted((0..len).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// `2p`, i.e. `p.add(p)`.
    pub(crate) fn doubled(&self) -> Partition {
        Partition::from_sorted(self.parts.iter().map(|&p| 2 * p).collect())
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Every part repeated twice.
    pub fn squared(&self) -> Partition {
        self.union(self)
    }

    /// `p+`, `p-` or `p+-`.
    ///
    /// `Plus` on the empty partition yields `[1]`; `Minus` and `PlusMinus`
    /// require a nonempty partition.
    pub fn boundary_variant(&self, mode: Boundary) -> Result<Partition> {
        let mut parts = self.parts.clone();
        if matches!(mode, Boundary::Minus | Boundary::PlusMinus) {
            match parts.last_mut() {
                Some(last) => *last -= 1,
                None => return Err(Error::EmptyPartition),
            }
        }
        if matches!(mode, Boundary::Plus | Boundary::PlusMinus) {
            match parts.first_mut() {
                Some(first) => *first += 1,
                None => parts.push(1),
            }
        }
        Ok(Partition::new(parts))
    }

    pub fn plus(&self) -> Partition {
        self.boundary_variant(Boundary::Plus).expect("plus is total")
    }

    pub fn minus(&self) -> Result<Partition> {
        self.boundary_variant(Boundary::Minus)
    }

    /// Dominance order: all prefix sums of `self` are at most those of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        check_same_size(self, other)?;
        Ok(self.dominated_by(other))
    }

    /// Dominance comparison for operands already known to have equal size.
    pub(crate) fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Lexicographic order on the part sequences.
    pub fn lex_leq(&self, other: &Partition) -> Result<bool> {
        check_same_size(self, other)?;
        Ok(self.parts.as_slice().cmp(other.parts.as_slice()) != Ordering::Greater)
    }

    /// Multiplicity-parity membership test for `class`.
    ///
    /// Size parity is not part of the predicate; `B` and `D` coincide here.
    pub fn is_in_class(&self, class: PartitionClass) -> bool {
        let Some(parity) = class.constrained_parity() else {
            return true;
        };
        self.multiplicities()
            .iter()
            .all(|&(v, m)| v % 2 != parity || m % 2 == 0)
    }
}

fn check_same_size(p: &Partition, q: &Partition) -> Result<()> {
    let (a, b) = (p.size(), q.size());
    if a != b {
        return Err(Error::SizeMismatch { expected: a, found: b });
    }
    Ok(())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

/// Accepts `[7,5,2]`, `[7 5 2]`, `7,5,2` and exponent notation `[5^1 3^2]`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = match (trimmed.strip_prefix('['), trimmed.strip_suffix(']')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(Error::Parse(format!("unbalanced brackets in `{s}`"))),
        };
        let mut parts = Vec::new();
        for token in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b, e),
                None => (token, "1"),
            };
            let part: u32 = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad part `{token}` in `{s}`")))?;
            let count: usize = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{token}` in `{s}`")))?;
            parts.extend(std::iter::repeat_n(part, count));
        }
        Ok(Partition::new(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Parts(Vec<u32>),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Parts(v) => Ok(Partition::new(v)),
        }
    }
}

impl From<Vec<u32>> for Partition {
    fn from(parts: Vec<u32>) -> Self {
        Partition::new(parts)
    }
}

/// All partitions of `n`, in decreasing lexicographic order
/// (`[n]` first, `[1^n]` last).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    for k in (1..=remaining.min(max)).rev() {
        current.push(k);
        fill(remaining - k, k, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p("[1,1,1,1]").transpose(), p("[4]"));
        assert_eq!(p("[6,6,2]").transpose(), p("[3,3,2,2,2,2]"));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn add_and_union() {
        assert_eq!(p("[2]").add(&p("[2]")), p("[4]"));
        assert_eq!(p("[3,1]").add(&p("[2,2,1]")), p("[5,3,1]"));
        let two_col = p("[1]").transpose().doubled();
        assert_eq!(two_col.add(&p("[6,6,2]")), p("[8,6,2]"));
        assert_eq!(p("[5]").union(&p("[3,3]")), p("[5,3,3]"));
        assert_eq!(p("[2,2]").union(&p("[2]")), p("[2,2,2]"));
        assert_eq!(p("[7,5]").union(&p("[3]")), p("[7,5,3]"));
    }

    #[test]
    fn boundary_variants() {
        assert_eq!(p("[5]").boundary_variant(Boundary::Minus).unwrap(), p("[4]"));
        assert_eq!(p("[4,2]").boundary_variant(Boundary::Plus).unwrap(), p("[5,2]"));
        assert_eq!(p("[5,3]").boundary_variant(Boundary::PlusMinus).unwrap(), p("[6,2]"));
        assert_eq!(p("[3,1]").boundary_variant(Boundary::Minus).unwrap(), p("[3]"));
        assert_eq!(Partition::empty().plus(), p("[1]"));
        assert!(matches!(
            Partition::empty().boundary_variant(Boundary::Minus),
            Err(Error::EmptyPartition)
        ));
        assert!(Partition::empty().boundary_variant(Boundary::PlusMinus).is_err());
    }

    #[test]
    fn orders() {
        assert!(p("[2,2]").dominance_leq(&p("[3,1]")).unwrap());
        assert!(!p("[3,1]").dominance_leq(&p("[2,2]")).unwrap());
        assert!(p("[3,3,1,1]").dominance_leq(&p("[4,2,2]")).unwrap());
        assert!(p("[2,2]").lex_leq(&p("[3,1]")).unwrap());
        assert!(p("[4]").lex_leq(&p("[4]")).unwrap());
        assert!(matches!(
            p("[3]").dominance_leq(&p("[2]")),
            Err(Error::SizeMismatch { .. })
        ));
        assert!(p("[3]").lex_leq(&p("[1,1]")).is_err());
    }

    #[test]
    fn class_membership() {
        assert!(p("[6,6,2]").is_in_class(PartitionClass::C));
        assert!(!p("[7,5,2]").is_in_class(PartitionClass::C));
        assert!(p("[3,3,1,1]").is_in_class(PartitionClass::D));
        assert!(!p("[4,2,2]").is_in_class(PartitionClass::D));
        assert!(p("[4,2,2]").is_in_class(PartitionClass::A));
        assert!(Partition::empty().is_in_class(PartitionClass::C));
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(p("[7,5,2]").parts(), &[7, 5, 2]);
        assert_eq!(p("[7 5 2]"), p("[7,5,2]"));
        assert_eq!(p("[5^1 3^2]"), p("[5,3,3]"));
        assert_eq!(p("[3^2 1^4]").to_string(), "[3,3,1,1,1,1]");
        assert_eq!(p("[2,5,7]").to_string(), "[7,5,2]");
        assert_eq!(p("[]"), Partition::empty());
        assert_eq!(p("[0,3,0]"), p("[3]"));
        assert!("[3,x]".parse::<Partition>().is_err());
        assert!("[3,1".parse::<Partition>().is_err());
        let json = serde_json::to_string(&p("[4,2]")).unwrap();
        assert_eq!(json, "\"[4,2]\"");
        let back: Partition = serde_json::from_str("[2,4]").unwrap();
        assert_eq!(back, p("[4,2]"));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_of(14).len(), 135);
        assert_eq!(partitions_of(4)[0], p("[4]"));
        assert_eq!(partitions_of(4)[4], p("[1,1,1,1]"));
    }
}
