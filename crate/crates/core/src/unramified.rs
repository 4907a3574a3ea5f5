//! Jordan-block data for unramified unitary representations of `Sp(2n)`,
//! `SO(2n+1)` and `O(2n)`.
//!
//! The data come in three layers. [`SnData`] lists the Jordan blocks of a
//! strongly negative representation; [`NegData`] adds pairs `(chi, n)` of
//! unitary characters of `GL(n)`; [`UnitaryDatum`] adds the complementary
//! series exponents `e`, a multiset of `(chi, m, alpha)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::duality::{bvs_dual, Family, GroupKind};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Exact exponents `alpha`.
pub type Exponent = Ratio<i64>;

/// Largest rank accepted by [`enumerate_sn`].
pub const MAX_ENUMERATION_RANK: u32 = 30;

/// A formal unramified unitary character of `F^*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharacterSymbol {
    Trivial,
    /// The nontrivial unramified quadratic character.
    Lambda0,
    /// A non-quadratic character `id`, or its inverse when `inverted`.
    Generic { id: String, inverted: bool },
}

impl CharacterSymbol {
    pub fn trivial() -> Self {
        CharacterSymbol::Trivial
    }

    pub fn generic(id: impl Into<String>) -> Self {
        CharacterSymbol::Generic { id: id.into(), inverted: false }
    }

    /// Whether `chi^2` is trivial.
    pub fn is_quadratic(&self) -> bool {
        !matches!(self, CharacterSymbol::Generic { .. })
    }

    pub fn inverse(&self) -> Self {
        match self {
            CharacterSymbol::Generic { id, inverted } => {
                CharacterSymbol::Generic { id: id.clone(), inverted: !inverted }
            }
            other => other.clone(),
        }
    }
}

impl fmt::Display for CharacterSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterSymbol::Trivial => f.write_str("trivial"),
            CharacterSymbol::Lambda0 => f.write_str("lambda0"),
            CharacterSymbol::Generic { id, inverted: false } => f.write_str(id),
            CharacterSymbol::Generic { id, inverted: true } => write!(f, "{id}^-1"),
        }
    }
}

impl FromStr for CharacterSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "trivial" | "1" => return Ok(CharacterSymbol::Trivial),
            "lambda0" | "λ0" | "λ₀" => return Ok(CharacterSymbol::Lambda0),
            _ => {}
        }
        let (id, inverted) = match s.strip_suffix("^-1") {
            Some(id) => (id, true),
            None => (s, false),
        };
        let valid = !id.is_empty()
            && id.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.');
        if !valid || id == "trivial" || id == "lambda0" {
            return Err(Error::Parse(format!("bad character symbol `{s}`")));
        }
        Ok(CharacterSymbol::Generic { id: id.to_string(), inverted })
    }
}

impl Serialize for CharacterSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CharacterSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod exponent_serde {
    use super::Exponent;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Exponent, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Exponent, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanBlock {
    pub chi: CharacterSymbol,
    pub m: u32,
}

impl JordanBlock {
    pub fn new(chi: CharacterSymbol, m: u32) -> Self {
        JordanBlock { chi, m }
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.chi, self.m)
    }
}

/// Jordan blocks of a strongly negative representation.
///
/// Sizes are the actual block sizes: odd for `Sp` and `O`, even (possibly
/// zero) for `SO`. Each list is strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SnData {
    pub group: GroupKind,
    /// Sizes of the blocks `(lambda0, size)`.
    #[serde(default)]
    pub lambda0: Vec<u32>,
    /// Sizes of the blocks `(trivial, size)`.
    #[serde(default)]
    pub trivial: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SnViolation {
    UnsupportedFamily { family: Family },
    BlockParity { chi: CharacterSymbol, size: u32 },
    NotIncreasing { chi: CharacterSymbol },
    CountParity { chi: CharacterSymbol, count: usize },
    Total { expected: u32, found: u32 },
}

impl fmt::Display for SnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnViolation::UnsupportedFamily { family } => {
                write!(f, "family {family} has no strongly negative data")
            }
            SnViolation::BlockParity { chi, size } => {
                write!(f, "block ({chi}, {size}) has the wrong parity")
            }
            SnViolation::NotIncreasing { chi } => {
                write!(f, "{chi} block sizes are not strictly increasing")
            }
            SnViolation::CountParity { chi, count } => {
                write!(f, "{count} blocks with character {chi} has the wrong parity")
            }
            SnViolation::Total { expected, found } => {
                write!(f, "block sizes sum to {found}, expected {expected}")
            }
        }
    }
}

impl SnData {
    pub fn new(group: GroupKind, lambda0: Vec<u32>, trivial: Vec<u32>) -> Self {
        SnData { group, lambda0, trivial }
    }

    /// The datum with only trivial-character blocks of the given sizes, in
    /// the group determined by their total.
    pub fn from_trivial_sizes(family: Family, mut sizes: Vec<u32>) -> Result<Self> {
        sizes.sort_unstable();
        let group = GroupKind::from_dual_size(family, sizes.iter().sum())?;
        let d = SnData { group, lambda0: Vec::new(), trivial: sizes };
        validate_sn(&d).map_err(Error::InvalidSn)?;
        Ok(d)
    }

    /// All blocks, `lambda0` first.
    pub fn blocks(&self) -> impl Iterator<Item = JordanBlock> + '_ {
        let l = self.lambda0.iter().map(|&m| JordanBlock::new(CharacterSymbol::Lambda0, m));
        let t = self.trivial.iter().map(|&m| JordanBlock::new(CharacterSymbol::Trivial, m));
        l.chain(t)
    }

    /// Union of all block sizes, zeros dropped.
    pub fn partition(&self) -> Partition {
        Partition::new(self.lambda0.iter().chain(&self.trivial).copied().collect())
    }

    pub fn has_lambda0(&self) -> bool {
        self.lambda0.iter().any(|&m| m > 0)
    }
}

/// Checks the parity, monotonicity and total-size constraints of `d`.
pub fn validate_sn(d: &SnData) -> std::result::Result<(), Vec<SnViolation>> {
    let family = d.group.family;
    if family == Family::U {
        return Err(vec![SnViolation::UnsupportedFamily { family }]);
    }
    let mut violations = Vec::new();
    let block_parity = if family == Family::SOodd { 0 } else { 1 };
    let lists = [(CharacterSymbol::Lambda0, &d.lambda0), (CharacterSymbol::Trivial, &d.trivial)];
    for (chi, sizes) in lists {
        for &size in sizes.iter() {
            if size % 2 != block_parity {
                violations.push(SnViolation::BlockParity { chi: chi.clone(), size });
            }
        }
        if sizes.windows(2).any(|w| w[0] >= w[1]) {
            violations.push(SnViolation::NotIncreasing { chi: chi.clone() });
        }
        let wants_odd = family == Family::Sp && chi == CharacterSymbol::Trivial;
        if (sizes.len() % 2 == 1) != wants_odd {
            violations.push(SnViolation::CountParity { chi, count: sizes.len() });
        }
    }
    let found: u32 = d.lambda0.iter().chain(&d.trivial).sum();
    if found != d.group.dual_size() {
        violations.push(SnViolation::Total { expected: d.group.dual_size(), found });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Strictly increasing sequences drawn from `values` (ascending) whose sum
/// is at most `max_sum`, in lexicographic order.
fn strict_sequences(values: &[u32], max_sum: u32) -> Vec<Vec<u32>> {
    fn go(values: &[u32], start: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for i in start..values.len() {
            let v = values[i];
            if v > left {
                break;
            }
            cur.push(v);
            go(values, i + 1, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(values, 0, max_sum, &mut Vec::new(), &mut out);
    out
}

/// Every strongly negative datum of `family` and rank `n`, ordered
/// lexicographically by `(lambda0, trivial)`.
pub fn enumerate_sn(family: Family, n: u32) -> Result<Vec<SnData>> {
    if n > MAX_ENUMERATION_RANK {
        return Err(Error::EnumerationBound { value: n, bound: MAX_ENUMERATION_RANK });
    }
    if family == Family::U {
        return Err(Error::Unsupported("strongly negative data for U".into()));
    }
    let group = GroupKind::new(family, n);
    let total = group.dual_size();
    let values: Vec<u32> = if family == Family::SOodd {
        (0..=total).step_by(2).collect()
    } else {
        (1..=total).step_by(2).collect()
    };
    let seqs = strict_sequences(&values, total);
    let mut by_sum: BTreeMap<u32, Vec<&Vec<u32>>> = BTreeMap::new();
    for s in &seqs {
        by_sum.entry(s.iter().sum()).or_default().push(s);
    }
    let trivial_odd = family == Family::Sp;
    let mut out = Vec::new();
    for lambda0 in seqs.iter().filter(|s| s.len() % 2 == 0) {
        let rest = total - lambda0.iter().sum::<u32>();
        let Some(candidates) = by_sum.get(&rest) else { continue };
        for trivial in candidates.iter().filter(|s| (s.len() % 2 == 1) == trivial_odd) {
            out.push(SnData { group, lambda0: lambda0.clone(), trivial: (*trivial).clone() });
        }
    }
    out.sort();
    debug_assert!(out.iter().all(|d| validate_sn(d).is_ok()));
    Ok(out)
}

/// Maximal wave-front partition of a strongly negative representation built
/// from trivial-character blocks only: the dual of their union.
pub fn sn_wavefront(d: &SnData) -> Result<Partition> {
    validate_sn(d).map_err(Error::InvalidSn)?;
    if d.has_lambda0() {
        return Err(Error::Unsupported(
            "the wave-front formula needs all blocks to have trivial character".into(),
        ));
    }
    bvs_dual(&d.partition(), d.group)
}

/// A unitary character of `GL(n)` stacked on the strongly negative part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlPair {
    pub chi: CharacterSymbol,
    pub n: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegData {
    pub sn: SnData,
    #[serde(default)]
    pub gl: Vec<GlPair>,
}

impl NegData {
    /// `n' + sum n_i`.
    pub fn rank(&self) -> u32 {
        self.sn.group.n + self.gl.iter().map(|g| g.n).sum::<u32>()
    }

    pub fn group(&self) -> GroupKind {
        GroupKind::new(self.sn.group.family, self.rank())
    }

    /// Jordan blocks: those of the strongly negative part plus
    /// `(chi, n)` and `(chi^-1, n)` for every GL pair.
    pub fn jordan(&self) -> Vec<JordanBlock> {
        let mut out: Vec<JordanBlock> = self.sn.blocks().filter(|b| b.m > 0).collect();
        for g in &self.gl {
            out.push(JordanBlock::new(g.chi.clone(), g.n));
            out.push(JordanBlock::new(g.chi.inverse(), g.n));
        }
        out.sort();
        out
    }

    /// `[(n_j^2) ... (block sizes)]`.
    pub fn partition(&self) -> Partition {
        squares(self.gl.iter().map(|g| g.n)).union(&self.sn.partition())
    }
}

fn squares(sizes: impl Iterator<Item = u32>) -> Partition {
    Partition::new(sizes.flat_map(|s| [s, s]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentEntry {
    pub chi: CharacterSymbol,
    pub m: u32,
    #[serde(with = "exponent_serde")]
    pub alpha: Exponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryDatum {
    pub group: GroupKind,
    #[serde(default)]
    pub e: Vec<ExponentEntry>,
    pub neg: NegData,
}

impl UnitaryDatum {
    /// `[(n_j^2) (m^2 for e) (block sizes)]`, the partition whose dual gives
    /// the wave-front set.
    pub fn partition(&self) -> Partition {
        squares(self.e.iter().map(|x| x.m)).union(&self.neg.partition())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnitaryViolation {
    Sn { violation: SnViolation },
    FamilyMismatch,
    ZeroSize,
    RankMismatch { expected: u32, found: u32 },
    AlphaOutOfRange { chi: CharacterSymbol, m: u32, alpha: String },
    InverseAsymmetry { chi: CharacterSymbol, m: u32 },
    OddCountOutsideJordan { chi: CharacterSymbol, m: u32 },
    HalfRepeated { chi: CharacterSymbol, m: u32 },
    BetasNotIncreasing { chi: CharacterSymbol, m: u32 },
    ExponentsSumToOne { chi: CharacterSymbol, m: u32, alpha: String, beta: String },
    OddCountBelowFirstBeta { chi: CharacterSymbol, m: u32 },
    EvenCountBetweenBetas { chi: CharacterSymbol, m: u32, j: usize },
}

impl fmt::Display for UnitaryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use UnitaryViolation::*;
        match self {
            Sn { violation } => write!(f, "strongly negative part: {violation}"),
            FamilyMismatch => write!(f, "strongly negative part belongs to another family"),
            ZeroSize => write!(f, "GL sizes and exponent block sizes must be positive"),
            RankMismatch { expected, found } => {
                write!(f, "ranks add up to {found}, group has rank {expected}")
            }
            AlphaOutOfRange { chi, m, alpha } => {
                write!(f, "exponent {alpha} for ({chi}, {m}) is out of range")
            }
            InverseAsymmetry { chi, m } => {
                write!(f, "exponents of ({chi}, {m}) differ from those of the inverse character")
            }
            OddCountOutsideJordan { chi, m } => write!(
                f,
                "({chi}, {m}) is not a Jordan block but carries an odd number of exponents"
            ),
            HalfRepeated { chi, m } => write!(f, "({chi}, {m}) repeats the exponent 1/2"),
            BetasNotIncreasing { chi, m } => {
                write!(f, "exponents above 1/2 for ({chi}, {m}) are not distinct")
            }
            ExponentsSumToOne { chi, m, alpha, beta } => {
                write!(f, "exponents {alpha} and {beta} for ({chi}, {m}) sum to 1")
            }
            OddCountBelowFirstBeta { chi, m } => write!(
                f,
                "({chi}, {m}) has an odd number of exponents in (1 - beta_1, 1/2]"
            ),
            EvenCountBetweenBetas { chi, m, j } => write!(
                f,
                "({chi}, {m}) has an even number of exponents in (1 - beta_{}, beta_{j})",
                j + 1
            ),
        }
    }
}

/// Checks rank bookkeeping, exponent ranges and the interleaving conditions
/// that single out the unitary data.
pub fn validate_unitary(u: &UnitaryDatum) -> std::result::Result<(), Vec<UnitaryViolation>> {
    let mut violations = Vec::new();
    if let Err(vs) = validate_sn(&u.neg.sn) {
        violations.extend(vs.into_iter().map(|violation| UnitaryViolation::Sn { violation }));
    }
    if u.neg.sn.group.family != u.group.family {
        violations.push(UnitaryViolation::FamilyMismatch);
    }
    if u.neg.gl.iter().any(|g| g.n == 0) || u.e.iter().any(|x| x.m == 0) {
        violations.push(UnitaryViolation::ZeroSize);
    }
    let found = u.neg.rank() + u.e.iter().map(|x| x.m).sum::<u32>();
    if found != u.group.n {
        violations.push(UnitaryViolation::RankMismatch { expected: u.group.n, found });
    }

    let mut exponents: BTreeMap<(CharacterSymbol, u32), Vec<Exponent>> = BTreeMap::new();
    for x in &u.e {
        exponents.entry((x.chi.clone(), x.m)).or_default().push(x.alpha);
    }
    for list in exponents.values_mut() {
        list.sort();
    }
    let jordan: BTreeSet<JordanBlock> = u.neg.jordan().into_iter().collect();
    let half = Exponent::new(1, 2);
    let one = Exponent::from_integer(1);
    let zero = Exponent::from_integer(0);
    let is_so = u.group.family == Family::SOodd;

    for ((chi, m), alphas) in &exponents {
        let (chi, m) = (chi.clone(), *m);
        let upper = if !chi.is_quadratic() || (m % 2 == 0) != is_so { half } else { one };
        for &alpha in alphas {
            if alpha <= zero || alpha >= upper {
                violations.push(UnitaryViolation::AlphaOutOfRange {
                    chi: chi.clone(),
                    m,
                    alpha: alpha.to_string(),
                });
            }
        }
        if !chi.is_quadratic() {
            let inverted = matches!(chi, CharacterSymbol::Generic { inverted: true, .. });
            if inverted && exponents.contains_key(&(chi.inverse(), m)) {
                continue;
            }
            if exponents.get(&(chi.inverse(), m)) != Some(alphas) {
                violations.push(UnitaryViolation::InverseAsymmetry { chi, m });
            }
            continue;
        }
        let in_jordan = jordan.contains(&JordanBlock::new(chi.clone(), m));
        check_interleaving(&chi, m, alphas, in_jordan, &mut violations);
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

fn check_interleaving(
    chi: &CharacterSymbol,
    m: u32,
    sorted: &[Exponent],
    in_jordan: bool,
    violations: &mut Vec<UnitaryViolation>,
) {
    let half = Exponent::new(1, 2);
    let one = Exponent::from_integer(1);
    let split = sorted.partition_point(|&x| x <= half);
    let (alphas, betas) = sorted.split_at(split);
    let (k, l) = (alphas.len(), betas.len());
    let chi = chi.clone();
    if !in_jordan && (k + l) % 2 == 1 {
        violations.push(UnitaryViolation::OddCountOutsideJordan { chi: chi.clone(), m });
    }
    if k >= 2 && alphas[k - 2] == half {
        violations.push(UnitaryViolation::HalfRepeated { chi: chi.clone(), m });
    }
    if betas.windows(2).any(|w| w[0] >= w[1]) {
        violations.push(UnitaryViolation::BetasNotIncreasing { chi: chi.clone(), m });
    }
    for &a in alphas {
        for &b in betas {
            if a + b == one {
                violations.push(UnitaryViolation::ExponentsSumToOne {
                    chi: chi.clone(),
                    m,
                    alpha: a.to_string(),
                    beta: b.to_string(),
                });
            }
        }
    }
    if l >= 1 {
        let count = alphas.iter().filter(|&&a| one - betas[0] < a && a <= half).count();
        if count % 2 == 1 {
            violations.push(UnitaryViolation::OddCountBelowFirstBeta { chi: chi.clone(), m });
        }
    }
    for j in 1..l {
        let (low, high) = (one - betas[j], betas[j - 1]);
        let count = alphas.iter().filter(|&&a| low < a && a < high).count();
        if count % 2 == 0 {
            violations.push(UnitaryViolation::EvenCountBetweenBetas { chi: chi.clone(), m, j });
        }
    }
}

fn require_unitary(u: &UnitaryDatum) -> Result<()> {
    validate_unitary(u).map_err(Error::InvalidUnitary)
}

/// Whether the strongly negative part uses trivial-character blocks only.
pub fn is_type_i(u: &UnitaryDatum) -> bool {
    !u.neg.sn.has_lambda0()
}

/// A wave-front partition together with how firmly it is established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WavefrontResult {
    pub partition: Partition,
    /// Backed by a theorem (data with trivial-character blocks only).
    pub proved: bool,
    /// Depends on the conjectural formula for negative representations.
    pub conjectural: bool,
}

impl WavefrontResult {
    fn new(partition: Partition, proved: bool) -> Self {
        WavefrontResult { partition, proved, conjectural: !proved }
    }
}

/// The bound `eta([(n_j^2) (m^2) (block sizes)])` for data whose strongly
/// negative part has trivial-character blocks only.
pub fn typei_bound(u: &UnitaryDatum) -> Result<Partition> {
    require_unitary(u)?;
    if !is_type_i(u) {
        return Err(Error::Unsupported("datum has lambda0 blocks".into()));
    }
    bvs_dual(&u.partition(), u.group)
}

fn validate_neg(d: &NegData) -> Result<()> {
    validate_sn(&d.sn).map_err(Error::InvalidSn)?;
    if d.gl.iter().any(|g| g.n == 0) {
        return Err(Error::InvalidUnitary(vec![UnitaryViolation::ZeroSize]));
    }
    Ok(())
}

/// `eta([(n_j^2) (block sizes)])` in rank `n' + sum n_j`.
pub fn negative_wavefront(d: &NegData) -> Result<WavefrontResult> {
    validate_neg(d)?;
    let partition = bvs_dual(&d.partition(), d.group())?;
    Ok(WavefrontResult::new(partition, !d.sn.has_lambda0()))
}

/// `eta` of the full partition of `u`.
pub fn unitary_wavefront(u: &UnitaryDatum) -> Result<WavefrontResult> {
    require_unitary(u)?;
    let partition = bvs_dual(&u.partition(), u.group)?;
    Ok(WavefrontResult::new(partition, is_type_i(u)))
}
