//! From a global Arthur parameter and the unramified data of each summand
//! at one place, build the Jordan-block datum of the local component.
//!
//! Each summand `(tau, b)` is given its local central character (trivial or
//! `lambda0`) and the Satake exponents of `tau_v` as pairs `(chi, beta)`
//! standing for `nu^beta chi x nu^-beta chi^-1`. Summands are sorted into
//!
//! * `I`: symplectic-type `tau`;
//! * `J1`, `J2`: orthogonal-type `tau` of even dimension with trivial,
//!   resp. `lambda0`, local central character;
//! * `S1`, `S2`: orthogonal-type `tau` of odd dimension, split the same way.
//!
//! A `J2` summand carries `a/2 - 1` exponent pairs plus the tail
//! `lambda0 x 1`; every other summand carries `floor(a/2)` pairs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arthur::{
    raw_partition, validate_parameter, wavefront_upper_bound, ArthurParameter, SelfDualType,
    SimpleParameter,
};
use crate::duality::{Family, GroupKind};
use crate::error::{Error, Result};
use crate::unramified::{
    is_type_i, typei_bound, validate_sn, validate_unitary, CharacterSymbol, Exponent,
    ExponentEntry, GlPair, JordanBlock, NegData, SnData, UnitaryDatum,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalExponent {
    pub chi: CharacterSymbol,
    #[serde(with = "beta_serde")]
    pub beta: Exponent,
}

mod beta_serde {
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

/// Unramified data of one summand at the chosen place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSummandData {
    pub central: CharacterSymbol,
    #[serde(default)]
    pub exponents: Vec<LocalExponent>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandClasses {
    pub i: Vec<usize>,
    pub j1: Vec<usize>,
    pub j2: Vec<usize>,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

impl SummandClasses {
    fn is_j2(&self, index: usize) -> bool {
        self.j2.contains(&index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationResult {
    pub datum: UnitaryDatum,
    pub jord1: Vec<JordanBlock>,
    pub jord2: Vec<JordanBlock>,
    pub jord3: Vec<JordanBlock>,
}

/// Sorts the summands of `psi` by self-dual type, dimension parity and
/// local central character.
pub fn classify_summands(psi: &ArthurParameter, centrals: &[CharacterSymbol]) -> Result<SummandClasses> {
    validate_parameter(psi).map_err(Error::InvalidParameter)?;
    if psi.group.family == Family::U {
        return Err(Error::Unsupported("localization for U".into()));
    }
    if centrals.len() != psi.summands.len() {
        return Err(Error::InconsistentLocalData(format!(
            "{} local central characters for {} summands",
            centrals.len(),
            psi.summands.len()
        )));
    }
    let mut classes = SummandClasses::default();
    for (index, (s, central)) in psi.summands.iter().zip(centrals).enumerate() {
        let lambda0 = match central {
            CharacterSymbol::Trivial => false,
            CharacterSymbol::Lambda0 => true,
            other => {
                return Err(Error::InconsistentLocalData(format!(
                    "summand {index}: local central character {other} is not quadratic"
                )))
            }
        };
        let bucket = match (s.tau_type, s.a % 2 == 0, lambda0) {
            (Some(SelfDualType::Symplectic), _, false) => &mut classes.i,
            (Some(SelfDualType::Symplectic), _, true) => {
                return Err(Error::InconsistentLocalData(format!(
                    "summand {index}: symplectic-type tau needs trivial central character"
                )))
            }
            (_, true, false) => &mut classes.j1,
            (_, true, true) => &mut classes.j2,
            (_, false, false) => &mut classes.s1,
            (_, false, true) => &mut classes.s2,
        };
        bucket.push(index);
    }
    if psi.group.family != Family::SOodd && (classes.j2.len() + classes.s2.len()) % 2 == 1 {
        return Err(Error::InconsistentLocalData(
            "an odd number of summands has lambda0 local central character".into(),
        ));
    }
    Ok(classes)
}

/// Number of exponent pairs the local component of summand `s` carries.
fn expected_exponents(s: &SimpleParameter, j2: bool) -> usize {
    (s.a / 2) as usize - usize::from(j2)
}

/// Builds the unitary datum of the local component.
pub fn localize(psi: &ArthurParameter, local: &[LocalSummandData]) -> Result<LocalizationResult> {
    let centrals: Vec<CharacterSymbol> = local.iter().map(|l| l.central.clone()).collect();
    let classes = classify_summands(psi, &centrals)?;
    let family = psi.group.family;
    let half = Exponent::new(1, 2);
    let zero = Exponent::from_integer(0);

    let mut jord1: Vec<JordanBlock> = Vec::new();
    let mut gl: Vec<GlPair> = Vec::new();
    let mut jord3: Vec<JordanBlock> = Vec::new();
    let mut e: Vec<ExponentEntry> = Vec::new();

    for (index, (s, data)) in psi.summands.iter().zip(local).enumerate() {
        let j2 = classes.is_j2(index);
        let expected = expected_exponents(s, j2);
        if data.exponents.len() != expected {
            return Err(Error::InconsistentLocalData(format!(
                "summand {index} needs {expected} exponents, got {}",
                data.exponents.len()
            )));
        }
        for x in &data.exponents {
            if x.beta < zero || x.beta >= half {
                return Err(Error::InconsistentLocalData(format!(
                    "summand {index}: exponent {} outside [0, 1/2)",
                    x.beta
                )));
            }
            if x.beta == zero {
                gl.push(GlPair { chi: x.chi.clone(), n: s.b });
                jord3.push(JordanBlock::new(x.chi.clone(), s.b));
            } else {
                e.push(ExponentEntry { chi: x.chi.clone(), m: s.b, alpha: x.beta });
            }
        }
        if j2 {
            jord1.push(JordanBlock::new(CharacterSymbol::Lambda0, s.b));
            jord1.push(JordanBlock::new(CharacterSymbol::Trivial, s.b));
        } else if classes.s1.contains(&index) {
            jord1.push(JordanBlock::new(CharacterSymbol::Trivial, s.b));
        } else if classes.s2.contains(&index) {
            jord1.push(JordanBlock::new(CharacterSymbol::Lambda0, s.b));
        }
    }
    jord1.sort();

    let mut multiplicity: BTreeMap<&JordanBlock, usize> = BTreeMap::new();
    for block in &jord1 {
        *multiplicity.entry(block).or_default() += 1;
    }
    let mut jord2 = Vec::new();
    for (&block, &mu) in &multiplicity {
        if mu % 2 == 1 {
            jord2.push(block.clone());
        }
        for _ in 0..mu / 2 {
            gl.push(GlPair { chi: block.chi.clone(), n: block.m });
            jord3.push(block.clone());
        }
    }

    let sizes = |chi: &CharacterSymbol| -> Vec<u32> {
        let mut v: Vec<u32> = jord2.iter().filter(|b| &b.chi == chi).map(|b| b.m).collect();
        if family == Family::SOodd && v.len() % 2 == 1 {
            v.insert(0, 0);
        }
        v
    };
    let lambda0 = sizes(&CharacterSymbol::Lambda0);
    let trivial = sizes(&CharacterSymbol::Trivial);
    let total: u32 = lambda0.iter().chain(&trivial).sum();
    let sn_group = GroupKind::from_dual_size(family, total)
        .map_err(|_| Error::InconsistentLocalData(format!("Jordan blocks of odd-multiplicity sum to {total}")))?;
    let sn = SnData::new(sn_group, lambda0, trivial);
    validate_sn(&sn).map_err(Error::InvalidSn)?;

    gl.sort();
    jord3.sort();
    e.sort();
    let datum = UnitaryDatum { group: psi.group, e, neg: NegData { sn, gl } };
    validate_unitary(&datum).map_err(Error::InvalidUnitary)?;
    Ok(LocalizationResult { datum, jord1, jord2, jord3 })
}

/// For a localization with trivial-character blocks only, whether the
/// bound computed from the local datum equals the global bound of `psi`.
pub fn localized_bound_equals_global(psi: &ArthurParameter, local: &[LocalSummandData]) -> Result<bool> {
    let result = localize(psi, local)?;
    if !is_type_i(&result.datum) {
        return Err(Error::Unsupported("localization has lambda0 blocks".into()));
    }
    Ok(typei_bound(&result.datum)? == wavefront_upper_bound(psi)?)
}

/// Whether the partition assembled from the local datum is `p(psi)`.
pub fn localized_partition_matches(psi: &ArthurParameter, result: &LocalizationResult) -> bool {
    result.datum.partition() == raw_partition(psi)
}

/// Draws a valid Arthur parameter for `family` of rank `1..=max_n` together
/// with unramified local data for which the local datum is unitary.
///
/// Exponents with `beta > 0` come in pairs `(chi, beta), (chi^-1, beta)` for
/// non-quadratic `chi` and in equal pairs for quadratic `chi`, except that a
/// quadratic `chi` may appear once when `(chi, b)` is a Jordan block of the
/// same summand.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    family: Family,
    max_n: u32,
) -> (ArthurParameter, Vec<LocalSummandData>) {
    let n = rng.gen_range(1..=max_n.max(1));
    let group = GroupKind::new(family, n);
    let mut summands = random_summands(rng, family, group.dual_size());
    let centrals = random_centrals(rng, family, &summands);
    for (s, c) in summands.iter_mut().zip(&centrals) {
        s.central = c.clone();
    }
    let psi = ArthurParameter { group, summands };
    let mut fresh = 0usize;
    let local = psi
        .summands
        .iter()
        .map(|s| random_local(rng, s, &mut fresh))
        .collect();
    (psi, local)
}

fn random_summands<R: Rng>(rng: &mut R, family: Family, size: u32) -> Vec<SimpleParameter> {
    let mut out = Vec::new();
    let mut left = size;
    while left > 0 {
        let b = rng.gen_range(1..=left);
        let symplectic_b_parity = if family == Family::SOodd { 1 } else { 0 };
        let tau_type = if b % 2 == symplectic_b_parity {
            SelfDualType::Symplectic
        } else {
            SelfDualType::Orthogonal
        };
        let max_a = left / b;
        let a = match tau_type {
            SelfDualType::Orthogonal => rng.gen_range(1..=max_a),
            SelfDualType::Symplectic if max_a >= 2 => 2 * rng.gen_range(1..=max_a / 2),
            SelfDualType::Symplectic => continue,
        };
        left -= a * b;
        let id = format!("t{}", out.len());
        out.push(SimpleParameter::new(a, b, tau_type).with_tau(id));
    }
    out
}

fn random_centrals<R: Rng>(rng: &mut R, family: Family, summands: &[SimpleParameter]) -> Vec<CharacterSymbol> {
    let mut centrals: Vec<CharacterSymbol> = summands
        .iter()
        .map(|s| match s.tau_type {
            Some(SelfDualType::Orthogonal) if rng.gen_bool(0.4) => CharacterSymbol::Lambda0,
            _ => CharacterSymbol::Trivial,
        })
        .collect();
    if family != Family::SOodd {
        let count = centrals.iter().filter(|c| **c == CharacterSymbol::Lambda0).count();
        if count % 2 == 1 {
            let last = centrals.iter().rposition(|c| *c == CharacterSymbol::Lambda0).unwrap();
            centrals[last] = CharacterSymbol::Trivial;
        }
    }
    centrals
}

fn random_beta<R: Rng>(rng: &mut R) -> Exponent {
    let d = rng.gen_range(3..=12i64);
    let k = rng.gen_range(1..d);
    let beta = Exponent::new(k, 2 * d);
    if beta >= Exponent::new(1, 2) {
        Exponent::new(1, 4)
    } else {
        beta
    }
}

fn random_local<R: Rng>(rng: &mut R, s: &SimpleParameter, fresh: &mut usize) -> LocalSummandData {
    let j2 = s.tau_type == Some(SelfDualType::Orthogonal) && s.a % 2 == 0 && s.central == CharacterSymbol::Lambda0;
    let count = expected_exponents(s, j2);
    let own_blocks: Vec<CharacterSymbol> = match (s.tau_type, s.a % 2 == 0, &s.central) {
        (Some(SelfDualType::Orthogonal), true, CharacterSymbol::Lambda0) => {
            vec![CharacterSymbol::Lambda0, CharacterSymbol::Trivial]
        }
        (Some(SelfDualType::Orthogonal), false, c) => vec![c.clone()],
        _ => Vec::new(),
    };
    let quadratic = [CharacterSymbol::Trivial, CharacterSymbol::Lambda0];
    let zero = Exponent::from_integer(0);
    let mut exponents = Vec::with_capacity(count);
    while exponents.len() < count {
        let room = count - exponents.len();
        match rng.gen_range(0..5) {
            0 => {
                *fresh += 1;
                exponents.push(LocalExponent { chi: CharacterSymbol::generic(format!("chi{fresh}")), beta: zero });
            }
            1 => {
                let chi = quadratic.choose(rng).unwrap().clone();
                exponents.push(LocalExponent { chi, beta: zero });
            }
            2 if room >= 2 => {
                *fresh += 1;
                let chi = CharacterSymbol::generic(format!("chi{fresh}"));
                let beta = random_beta(rng);
                exponents.push(LocalExponent { chi: chi.inverse(), beta });
                exponents.push(LocalExponent { chi, beta });
            }
            3 if room >= 2 => {
                let chi = quadratic.choose(rng).unwrap().clone();
                let beta = random_beta(rng);
                exponents.push(LocalExponent { chi: chi.clone(), beta });
                exponents.push(LocalExponent { chi, beta });
            }
            4 if !own_blocks.is_empty() => {
                let chi = own_blocks.choose(rng).unwrap().clone();
                exponents.push(LocalExponent { chi, beta: random_beta(rng) });
            }
            _ => {}
        }
    }
    exponents.shuffle(rng);
    LocalSummandData { central: s.central.clone(), exponents }
}
