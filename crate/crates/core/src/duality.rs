//! Barbasch-Vogan-Spaltenstein duality and induced orbits for the classical
//! families `Sp(2n)`, `SO(2n+1)`, `O(2n)` and `U(n)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::collapse::collapse;
use crate::error::{Error, Result};
use crate::partition::{Partition, PartitionClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "sp")]
    Sp,
    #[serde(rename = "so")]
    SOodd,
    #[serde(rename = "o")]
    Oeven,
    #[serde(rename = "u")]
    U,
}

impl Family {
    pub const ORTHOSYMPLECTIC: [Family; 3] = [Family::Sp, Family::SOodd, Family::Oeven];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::SOodd => "so",
            Family::Oeven => "o",
            Family::U => "u",
        }
    }

    /// Class of the partitions on the dual-group side.
    pub fn dual_class(self) -> PartitionClass {
        match self {
            Family::Sp => PartitionClass::B,
            Family::SOodd => PartitionClass::C,
            Family::Oeven => PartitionClass::D,
            Family::U => PartitionClass::A,
        }
    }

    /// Partition class of nilpotent orbits in the Lie algebra of this family.
    pub fn class(self) -> PartitionClass {
        match self {
            Family::Sp => PartitionClass::C,
            Family::SOodd => PartitionClass::B,
            Family::Oeven => PartitionClass::D,
            Family::U => PartitionClass::A,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sp" => Ok(Family::Sp),
            "so" | "soodd" | "so_odd" => Ok(Family::SOodd),
            "o" | "oeven" | "o_even" => Ok(Family::Oeven),
            "u" => Ok(Family::U),
            other => Err(Error::Parse(format!("unknown group family `{other}`"))),
        }
    }
}

/// A classical group of a given rank: `Sp(2n)`, `SO(2n+1)`, `O(2n)` or `U(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKind {
    pub family: Family,
    pub n: u32,
}

impl GroupKind {
    pub fn new(family: Family, n: u32) -> Self {
        GroupKind { family, n }
    }

    /// Size of the partitions labelling nilpotent orbits of the group.
    pub fn ambient_size(&self) -> u32 {
        match self.family {
            Family::Sp | Family::Oeven => 2 * self.n,
            Family::SOodd => 2 * self.n + 1,
            Family::U => self.n,
        }
    }

    /// Size of the partitions on the dual-group side.
    pub fn dual_size(&self) -> u32 {
        match self.family {
            Family::Sp => 2 * self.n + 1,
            Family::SOodd | Family::Oeven => 2 * self.n,
            Family::U => self.n,
        }
    }

    pub fn class(&self) -> PartitionClass {
        self.family.class()
    }

    /// The group of the same family whose dual side has size `dual_size`.
    pub fn from_dual_size(family: Family, dual_size: u32) -> Result<Self> {
        let n = match family {
            Family::Sp if dual_size % 2 == 1 => (dual_size - 1) / 2,
            Family::SOodd | Family::Oeven if dual_size % 2 == 0 => dual_size / 2,
            Family::U => dual_size,
            _ => {
                return Err(Error::Unsupported(format!(
                    "no {family} group has dual-side size {dual_size}"
                )))
            }
        };
        Ok(GroupKind { family, n })
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sp => write!(f, "Sp({})", 2 * self.n),
            Family::SOodd => write!(f, "SO({})", 2 * self.n + 1),
            Family::Oeven => write!(f, "O({})", 2 * self.n),
            Family::U => write!(f, "U({})", self.n),
        }
    }
}

/// The duality map from dual-side partitions of `g` to orbits of `g`.
///
/// The input must lie in the dual class: `B` for `Sp`, `C` for `SO`, `D`
/// for `O`.
///
/// * `Sp(2n)`: `((p-)_C)^t` on partitions of `2n+1`;
/// * `SO(2n+1)`: `((p+)_B)^t` on partitions of `2n`;
/// * `O(2n)`: `(p^t)_D` on partitions of `2n`;
/// * `U(n)`: `p^t`.
pub fn bvs_dual(p: &Partition, g: GroupKind) -> Result<Partition> {
    let expected = g.dual_size();
    if p.size() != expected {
        return Err(Error::SizeMismatch { expected, found: p.size() });
    }
    let dual_class = g.family.dual_class();
    if !p.is_in_class(dual_class) {
        return Err(Error::NotInClass { partition: p.to_string(), class: dual_class });
    }
    let result = match g.family {
        Family::Sp => collapse(&p.minus()?, PartitionClass::C)?.transpose(),
        Family::SOodd => collapse(&p.plus(), PartitionClass::B)?.transpose(),
        Family::Oeven => collapse(&p.transpose(), PartitionClass::D)?,
        Family::U => p.transpose(),
    };
    debug_assert_eq!(result.size(), g.ambient_size());
    debug_assert!(result.is_in_class(g.class()), "{result} not in {}", g.class());
    Ok(result)
}

/// `(2 [gl]^t + inner)` collapsed into `class`.
pub(crate) fn induced_partition(
    class: PartitionClass,
    gl_sizes: &Partition,
    inner: &Partition,
) -> Result<Partition> {
    collapse(&gl_sizes.transpose().doubled().add(inner), class)
}

/// The orbit of `g_big` induced from `inner` on the Levi
/// `GL(gl_1) x ... x GL(gl_t) x g_small`.
pub fn induce(
    gl_sizes: &[u32],
    inner: &Partition,
    g_small: GroupKind,
    g_big: GroupKind,
) -> Result<Partition> {
    if g_small.family != g_big.family {
        return Err(Error::Unsupported(format!(
            "cannot induce from {g_small} to {g_big}"
        )));
    }
    if inner.size() != g_small.ambient_size() {
        return Err(Error::SizeMismatch { expected: g_small.ambient_size(), found: inner.size() });
    }
    if !inner.is_in_class(g_small.class()) {
        return Err(Error::NotInClass { partition: inner.to_string(), class: g_small.class() });
    }
    let gl_total: u32 = gl_sizes.iter().sum();
    let expected = g_small.ambient_size() + 2 * gl_total;
    if expected != g_big.ambient_size() {
        return Err(Error::SizeMismatch { expected: g_big.ambient_size(), found: expected });
    }
    induced_partition(g_big.class(), &Partition::new(gl_sizes.to_vec()), inner)
}

/// `((p+-)_C)^t`, which agrees with `(p^t)_D` when `p` is orthogonal or
/// `p^t` is symplectic.
pub fn achar_dual_d(p: &Partition) -> Result<Partition> {
    if p.size() % 2 != 0 {
        return Err(Error::ParityMismatch { class: PartitionClass::D, size: p.size() });
    }
    if !p.is_in_class(PartitionClass::D) && !p.transpose().is_in_class(PartitionClass::C) {
        return Err(Error::Unsupported(format!(
            "{p} is neither orthogonal nor transpose-symplectic"
        )));
    }
    if p.is_empty() {
        return Ok(Partition::empty());
    }
    let shifted = p.boundary_variant(crate::partition::Boundary::PlusMinus)?;
    Ok(collapse(&shifted, PartitionClass::C)?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn sp(n: u32) -> GroupKind {
        GroupKind::new(Family::Sp, n)
    }

    #[test]
    fn sizes() {
        assert_eq!(sp(7).ambient_size(), 14);
        assert_eq!(sp(7).dual_size(), 15);
        let so = GroupKind::new(Family::SOodd, 2);
        assert_eq!((so.ambient_size(), so.dual_size()), (5, 4));
        let u = GroupKind::new(Family::U, 3);
        assert_eq!((u.ambient_size(), u.dual_size()), (3, 3));
        assert_eq!(GroupKind::from_dual_size(Family::Sp, 15).unwrap(), sp(7));
        assert!(GroupKind::from_dual_size(Family::Sp, 14).is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(bvs_dual(&p("[1,1,1,1,1]"), sp(2)).unwrap(), p("[4]"));
        assert_eq!(bvs_dual(&p("[5]"), sp(2)).unwrap(), p("[1,1,1,1]"));
        assert_eq!(bvs_dual(&p("[7,5,3]"), sp(7)).unwrap(), p("[3,3,2,2,2,2]"));
        let so = GroupKind::new(Family::SOodd, 2);
        assert_eq!(bvs_dual(&p("[2,2]"), so).unwrap(), p("[3,1,1]"));
        let o = GroupKind::new(Family::Oeven, 4);
        assert_eq!(bvs_dual(&p("[3,3,1,1]"), o).unwrap(), p("[3,3,1,1]"));
        let u = GroupKind::new(Family::U, 3);
        assert_eq!(bvs_dual(&p("[2,1]"), u).unwrap(), p("[2,1]"));
        assert_eq!(bvs_dual(&Partition::empty(), GroupKind::new(Family::SOodd, 0)).unwrap(), p("[1]"));
        assert_eq!(bvs_dual(&p("[1]"), sp(0)).unwrap(), Partition::empty());
        assert!(matches!(
            bvs_dual(&p("[4]"), sp(2)),
            Err(Error::SizeMismatch { expected: 5, found: 4 })
        ));
        assert!(matches!(bvs_dual(&p("[4,1]"), sp(2)), Err(Error::NotInClass { .. })));
    }

    #[test]
    fn induce_examples() {
        assert_eq!(induce(&[1], &p("[2]"), sp(1), sp(2)).unwrap(), p("[4]"));
        let o0 = GroupKind::new(Family::Oeven, 0);
        let o2 = GroupKind::new(Family::Oeven, 2);
        assert_eq!(induce(&[2], &Partition::empty(), o0, o2).unwrap(), p("[2,2]"));
        assert_eq!(induce(&[], &p("[6,6,2]"), sp(7), sp(7)).unwrap(), p("[6,6,2]"));
        assert_eq!(induce(&[1], &p("[6,6,2]"), sp(7), sp(8)).unwrap(), p("[8,6,2]"));
        assert!(induce(&[1], &p("[2]"), sp(1), sp(3)).is_err());
        assert!(induce(&[1], &p("[3,1]"), sp(2), sp(3)).is_err());
    }

    #[test]
    fn achar_examples() {
        assert_eq!(achar_dual_d(&p("[5,3]")).unwrap(), p("[2,2,1,1,1,1]"));
        assert_eq!(achar_dual_d(&p("[3,3,1,1]")).unwrap(), p("[3,3,1,1]"));
        assert_eq!(achar_dual_d(&p("[1,1]")).unwrap(), p("[1,1]"));
        assert!(achar_dual_d(&p("[3]")).is_err());
        assert!(achar_dual_d(&p("[2,1,1]")).is_err());
        assert_eq!(achar_dual_d(&p("[2]")).unwrap(), p("[1,1]"));
    }

    #[test]
    fn output_lands_in_class_and_reverses_order() {
        for family in Family::ORTHOSYMPLECTIC {
            for size in 0..=14u32 {
                let Ok(g) = GroupKind::from_dual_size(family, size) else { continue };
                let all: Vec<Partition> = partitions_of(size)
                    .into_iter()
                    .filter(|q| q.is_in_class(family.dual_class()))
                    .collect();
                let duals: Vec<Partition> = all.iter().map(|q| bvs_dual(q, g).unwrap()).collect();
                for d in &duals {
                    assert!(d.is_in_class(g.class()));
                    assert_eq!(d.size(), g.ambient_size());
                }
                for (i, a) in all.iter().enumerate() {
                    for (j, b) in all.iter().enumerate() {
                        if a.dominated_by(b) {
                            assert!(duals[j].dominated_by(&duals[i]), "{g}: {a} <= {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn achar_agrees_with_even_orthogonal_dual() {
        for size in (2..=14).step_by(2) {
            let g = GroupKind::from_dual_size(Family::Oeven, size).unwrap();
            for q in partitions_of(size) {
                if let Ok(a) = achar_dual_d(&q) {
                    assert_eq!(a, collapse(&q.transpose(), PartitionClass::D).unwrap(), "{q}");
                    if q.is_in_class(PartitionClass::D) {
                        assert_eq!(a, bvs_dual(&q, g).unwrap(), "{q}");
                    }
                }
            }
        }
    }
}
