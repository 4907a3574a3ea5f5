use thiserror::Error;

use crate::arthur::ParameterViolation;
use crate::partition::PartitionClass;
use crate::unramified::{SnViolation, UnitaryViolation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation requires a nonempty partition")]
    EmptyPartition,

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: u32, found: u32 },

    #[error("class {class} cannot hold a partition of size {size}")]
    ParityMismatch { class: PartitionClass, size: u32 },

    #[error("partition {partition} is not in class {class}")]
    NotInClass { partition: String, class: PartitionClass },

    #[error("size {size} exceeds the oracle bound {bound}")]
    OracleBound { size: u32, bound: u32 },

    #[error("no class-{class} candidate for {partition}")]
    OracleEmpty { partition: String, class: PartitionClass },

    #[error("extremum for {partition} in class {class} is not unique")]
    OracleNotUnique { partition: String, class: PartitionClass },

    #[error("invalid Arthur parameter: {}", join(.0))]
    InvalidParameter(Vec<ParameterViolation>),

    #[error("invalid strongly negative datum: {}", join(.0))]
    InvalidSn(Vec<SnViolation>),

    #[error("invalid unitary datum: {}", join(.0))]
    InvalidUnitary(Vec<UnitaryViolation>),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("inconsistent local data: {0}")]
    InconsistentLocalData(String),

    #[error("enumeration bound exceeded: {value} > {bound}")]
    EnumerationBound { value: u32, bound: u32 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
