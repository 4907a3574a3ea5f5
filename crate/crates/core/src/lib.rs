//! Partition calculus for wave-front sets of Arthur packets on classical groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`partition`]: partitions, transpose, dominance and lexicographic order;
//! * [`collapse`]: B/C/D collapses and expansions with brute-force oracles;
//! * [`duality`]: Barbasch-Vogan-Spaltenstein duality and induced orbits;
//! * [`arthur`]: global Arthur parameters and their partition bound;
//! * [`unramified`]: Jordan-block data of the unramified unitary dual;
//! * [`localize`]: local unramified data attached to a global parameter;
//! * [`verify`]: exhaustive sweeps over the partition identities.

pub mod arthur;
pub mod collapse;
pub mod duality;
mod error;
pub mod localize;
pub mod partition;
pub mod unramified;
pub mod verify;

pub use arthur::{ArthurParameter, SelfDualType, SimpleParameter};
pub use collapse::{collapse, expand, oracle_extremum, Direction};
pub use duality::{achar_dual_d, bvs_dual, induce, Family, GroupKind};
pub use error::{Error, Result};
pub use partition::{partitions_of, Boundary, Partition, PartitionClass};
pub use unramified::{CharacterSymbol, JordanBlock, NegData, SnData, UnitaryDatum};
