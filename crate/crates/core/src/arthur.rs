//! Global Arthur parameters as combinatorial data.
//!
//! A parameter is a formal sum of simple pieces `(tau_i, b_i)`. Only the
//! dimension `a_i` of `tau_i`, its self-dual type and its central character
//! symbol enter the partition calculus.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::duality::{bvs_dual, Family, GroupKind};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::unramified::CharacterSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfDualType {
    /// The exterior square L-function has a pole.
    Symplectic,
    /// The symmetric square L-function has a pole.
    Orthogonal,
}

impl fmt::Display for SelfDualType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelfDualType::Symplectic => f.write_str("symplectic"),
            SelfDualType::Orthogonal => f.write_str("orthogonal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleParameter {
    pub a: u32,
    pub b: u32,
    /// Required for the orthogonal and symplectic families, ignored for `U`.
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub tau_type: Option<SelfDualType>,
    #[serde(rename = "tau", default, skip_serializing_if = "Option::is_none")]
    pub tau_id: Option<String>,
    #[serde(default = "CharacterSymbol::trivial")]
    pub central: CharacterSymbol,
}

impl SimpleParameter {
    pub fn new(a: u32, b: u32, tau_type: SelfDualType) -> Self {
        SimpleParameter { a, b, tau_type: Some(tau_type), tau_id: None, central: CharacterSymbol::Trivial }
    }

    pub fn with_central(mut self, central: CharacterSymbol) -> Self {
        self.central = central;
        self
    }

    pub fn with_tau(mut self, id: impl Into<String>) -> Self {
        self.tau_id = Some(id.into());
        self
    }

    /// Identity of `tau`: its label when present, otherwise its visible data.
    fn tau_key(&self) -> String {
        match &self.tau_id {
            Some(id) => id.clone(),
            None => format!("{}:{:?}:{}", self.a, self.tau_type, self.central),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArthurParameter {
    pub group: GroupKind,
    pub summands: Vec<SimpleParameter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParameterViolation {
    Empty,
    ZeroEntry { index: usize },
    MissingType { index: usize },
    SizeMismatch { expected: u32, found: u32 },
    Parity { index: usize, b: u32, tau_type: SelfDualType },
    Duplicate { first: usize, second: usize },
    InconsistentTau { first: usize, second: usize },
    NonQuadraticCentral { index: usize },
    SymplecticOddDimension { index: usize },
    SymplecticNontrivialCentral { index: usize },
    CentralProduct,
}

impl fmt::Display for ParameterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParameterViolation::*;
        match self {
            Empty => write!(f, "parameter has no summands"),
            ZeroEntry { index } => write!(f, "summand {index}: a and b must be positive"),
            MissingType { index } => write!(f, "summand {index}: self-dual type missing"),
            SizeMismatch { expected, found } => {
                write!(f, "sum of a*b is {found}, dual group needs {expected}")
            }
            Parity { index, b, tau_type } => {
                write!(f, "summand {index}: {tau_type} tau with b = {b} violates the parity rule")
            }
            Duplicate { first, second } => write!(f, "summands {first} and {second} coincide"),
            InconsistentTau { first, second } => {
                write!(f, "summands {first} and {second} share a tau label with different data")
            }
            NonQuadraticCentral { index } => {
                write!(f, "summand {index}: central character must be trivial or lambda0")
            }
            SymplecticOddDimension { index } => {
                write!(f, "summand {index}: symplectic-type tau must have even dimension")
            }
            SymplecticNontrivialCentral { index } => {
                write!(f, "summand {index}: symplectic-type tau must have trivial central character")
            }
            CentralProduct => write!(f, "product of central characters is not trivial"),
        }
    }
}

/// Checks every constraint on `psi` and lists the failures.
pub fn validate_parameter(psi: &ArthurParameter) -> std::result::Result<(), Vec<ParameterViolation>> {
    let mut violations = Vec::new();
    let group = psi.group;
    if psi.summands.is_empty() {
        violations.push(ParameterViolation::Empty);
    }
    let total: u32 = psi.summands.iter().map(|s| s.a * s.b).sum();
    if total != group.dual_size() {
        violations.push(ParameterViolation::SizeMismatch { expected: group.dual_size(), found: total });
    }
    let mut seen: HashMap<(String, u32), usize> = HashMap::new();
    let mut taus: HashMap<&str, usize> = HashMap::new();
    let mut lambda0_odd_b = 0;
    for (index, s) in psi.summands.iter().enumerate() {
        if s.a == 0 || s.b == 0 {
            violations.push(ParameterViolation::ZeroEntry { index });
        }
        if let Some(&first) = seen.get(&(s.tau_key(), s.b)) {
            violations.push(ParameterViolation::Duplicate { first, second: index });
        } else {
            seen.insert((s.tau_key(), s.b), index);
        }
        if let Some(id) = &s.tau_id {
            match taus.get(id.as_str()) {
                Some(&first) => {
                    let f = &psi.summands[first];
                    if (f.a, f.tau_type, &f.central) != (s.a, s.tau_type, &s.central) {
                        violations.push(ParameterViolation::InconsistentTau { first, second: index });
                    }
                }
                None => {
                    taus.insert(id, index);
                }
            }
        }
        if group.family == Family::U {
            continue;
        }
        let Some(tau_type) = s.tau_type else {
            violations.push(ParameterViolation::MissingType { index });
            continue;
        };
        if !s.central.is_quadratic() {
            violations.push(ParameterViolation::NonQuadraticCentral { index });
        }
        let wants_even_b = match (group.family, tau_type) {
            (Family::SOodd, SelfDualType::Symplectic) => false,
            (Family::SOodd, SelfDualType::Orthogonal) => true,
            (_, SelfDualType::Symplectic) => true,
            (_, SelfDualType::Orthogonal) => false,
        };
        if (s.b % 2 == 0) != wants_even_b {
            violations.push(ParameterViolation::Parity { index, b: s.b, tau_type });
        }
        if tau_type == SelfDualType::Symplectic {
            if s.a % 2 != 0 {
                violations.push(ParameterViolation::SymplecticOddDimension { index });
            }
            if s.central != CharacterSymbol::Trivial {
                violations.push(ParameterViolation::SymplecticNontrivialCentral { index });
            }
        }
        if s.central == CharacterSymbol::Lambda0 && s.b % 2 == 1 {
            lambda0_odd_b += 1;
        }
    }
    if group.family == Family::Sp && lambda0_odd_b % 2 == 1 {
        violations.push(ParameterViolation::CentralProduct);
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

fn require_valid(psi: &ArthurParameter) -> Result<()> {
    validate_parameter(psi).map_err(Error::InvalidParameter)
}

/// `[(b_1)^{a_1} ... (b_r)^{a_r}]`.
pub fn partition_of_parameter(psi: &ArthurParameter) -> Result<Partition> {
    require_valid(psi)?;
    Ok(raw_partition(psi))
}

pub(crate) fn raw_partition(psi: &ArthurParameter) -> Partition {
    Partition::new(
        psi.summands
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.b, s.a as usize))
            .collect(),
    )
}

/// The dual of `p(psi)`, which bounds the wave-front set of the packet.
pub fn wavefront_upper_bound(psi: &ArthurParameter) -> Result<Partition> {
    let p = partition_of_parameter(psi)?;
    bvs_dual(&p, psi.group)
}

/// Whether every `b_i` equals 1.
pub fn is_generic(psi: &ArthurParameter) -> Result<bool> {
    require_valid(psi)?;
    Ok(psi.summands.iter().all(|s| s.b == 1))
}
