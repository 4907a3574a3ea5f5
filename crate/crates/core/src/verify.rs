//! Exhaustive sweeps over the partition identities behind the wave-front
//! bounds, plus oracle and localization cross-checks.
//!
//! Every sweep is split into units that run in parallel; each unit yields
//! its instances in a fixed order, so instance indices and the first
//! counterexample do not depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arthur::ArthurParameter;
use crate::collapse::{classes_for_size, collapse, expand, oracle_extremum_bounded, Direction};
use crate::duality::{achar_dual_d, bvs_dual, induced_partition, Family, GroupKind};
use crate::error::{Error, Result};
use crate::localize::{
    localize, localized_partition_matches, random_instance, LocalSummandData,
};
use crate::partition::{partitions_of, Partition, PartitionClass};
use crate::unramified::{enumerate_sn, is_type_i, sn_wavefront, typei_bound, SnData};

pub const SCHEMA_VERSION: u32 = 1;

/// Hard cap on the ambient partition size of a sweep.
pub const MAX_SWEEP_SIZE: u32 = 30;

/// Largest partition size used by the collapse-oracle sweep.
pub const ORACLE_SWEEP_SIZE: u32 = 16;

/// Largest partition size used by the commutation sweep.
pub const COMMUTATION_SWEEP_SIZE: u32 = 14;

const REPORT_NOTE: &str = "finite-range evidence, not a proof; block-size sweeps ignore characters \
and exponents, which do not enter the identities";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `eta(p)` for `Sp` data with trivial-character blocks equals the orbit
    /// induced from the strongly negative part.
    SpInduction,
    /// The same for `SO(2n+1)`.
    SoInduction,
    /// The same for `O(2n)`.
    OInduction,
    /// `eta` of the full datum equals the orbit induced from the negative
    /// part, for all three families and arbitrary blocks.
    UnitaryReduction,
    /// Collapse and expansion recipes agree with brute force.
    CollapseOracle,
    /// `(p^X)^t = (p^t)_X`, and the alternative formula for the `O(2n)` dual.
    Commutation,
    /// Seeded random localizations are unitary and reproduce the global bound.
    Localization,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::SpInduction,
        Identity::SoInduction,
        Identity::OInduction,
        Identity::UnitaryReduction,
        Identity::CollapseOracle,
        Identity::Commutation,
        Identity::Localization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::SpInduction => "sp-induction",
            Identity::SoInduction => "so-induction",
            Identity::OInduction => "o-induction",
            Identity::UnitaryReduction => "unitary-reduction",
            Identity::CollapseOracle => "collapse-oracle",
            Identity::Commutation => "commutation",
            Identity::Localization => "localization",
        }
    }

    fn induction_family(self) -> Option<Family> {
        match self {
            Identity::SpInduction => Some(Family::Sp),
            Identity::SoInduction => Some(Family::SOodd),
            Identity::OInduction => Some(Family::Oeven),
            _ => None,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Families for the reduction and localization sweeps.
    pub families: Vec<Family>,
    /// Largest ambient partition size `N(G)`.
    pub max_size: u32,
    pub identities: Vec<Identity>,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub seed: u64,
    /// Number of random localization samples.
    pub samples: u64,
    /// Largest rank of random localization samples.
    pub local_max_rank: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            families: Family::ORTHOSYMPLECTIC.to_vec(),
            max_size: 24,
            identities: Identity::ALL.to_vec(),
            jobs: 0,
            seed: 0,
            samples: 10_000,
            local_max_rank: 10,
        }
    }
}

impl SweepConfig {
    pub fn check(&self) -> Result<()> {
        if self.max_size > MAX_SWEEP_SIZE {
            return Err(Error::InvalidConfig(format!(
                "max size {} exceeds the cap {MAX_SWEEP_SIZE}",
                self.max_size
            )));
        }
        if self.identities.is_empty() {
            return Err(Error::InvalidConfig("no identities selected".into()));
        }
        if self.families.contains(&Family::U) {
            return Err(Error::InvalidConfig("sweeps cover sp, so and o only".into()));
        }
        Ok(())
    }
}

/// One checked case. Evaluating it again reproduces its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    /// `eta_n(e^2 gl^2 sn) = (2 [e gl]^t + eta_n'(sn))_X`.
    Induction { group: GroupKind, sn: SnData, gl: Partition, e: Partition },
    /// `eta_n(e^2 gl^2 sn) = (2 [e]^t + eta_n*(gl^2 sn))_X`.
    Reduction { group: GroupKind, sn: SnData, gl: Partition, e: Partition },
    Collapse { partition: Partition, class: PartitionClass },
    Commutation { partition: Partition, class: PartitionClass },
    Localization { sample: u64, psi: ArthurParameter, local: Vec<LocalSummandData> },
}

fn squared_union(a: &Partition, b: &Partition) -> Partition {
    a.squared().union(&b.squared())
}

fn mismatch(lhs: &Partition, rhs: &Partition) -> std::result::Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("lhs {lhs} != rhs {rhs}"))
    }
}

impl Instance {
    pub fn evaluate(&self) -> std::result::Result<(), String> {
        self.evaluate_inner().unwrap_or_else(|e| Err(format!("error: {e}")))
    }

    fn evaluate_inner(&self) -> Result<std::result::Result<(), String>> {
        match self {
            Instance::Induction { group, sn, gl, e } => {
                let lhs = bvs_dual(&squared_union(e, gl).union(&sn.partition()), *group)?;
                let rhs = induced_partition(group.class(), &e.union(gl), &sn_wavefront(sn)?)?;
                Ok(mismatch(&lhs, &rhs))
            }
            Instance::Reduction { group, sn, gl, e } => {
                let lhs = bvs_dual(&squared_union(e, gl).union(&sn.partition()), *group)?;
                let inner_group = GroupKind::new(group.family, sn.group.n + gl.size());
                let inner = bvs_dual(&gl.squared().union(&sn.partition()), inner_group)?;
                let rhs = induced_partition(group.class(), e, &inner)?;
                Ok(mismatch(&lhs, &rhs))
            }
            Instance::Collapse { partition, class } => {
                let below = oracle_extremum_bounded(partition, *class, Direction::MaxBelow, ORACLE_SWEEP_SIZE)?;
                let above = oracle_extremum_bounded(partition, *class, Direction::MinAbove, ORACLE_SWEEP_SIZE)?;
                let down = collapse(partition, *class)?;
                let up = expand(partition, *class)?;
                if down != below {
                    return Ok(Err(format!("collapse {down} != oracle {below}")));
                }
                Ok(mismatch(&up, &above).map_err(|m| format!("expansion: {m}")))
            }
            Instance::Commutation { partition, class } => {
                let lhs = expand(partition, *class)?.transpose();
                let rhs = collapse(&partition.transpose(), *class)?;
                if lhs != rhs {
                    return Ok(Err(format!("transpose of expansion {lhs} != collapse of transpose {rhs}")));
                }
                if *class == PartitionClass::D {
                    if let Ok(a) = achar_dual_d(partition) {
                        return Ok(mismatch(&a, &rhs).map_err(|m| format!("even orthogonal dual: {m}")));
                    }
                }
                Ok(Ok(()))
            }
            Instance::Localization { psi, local, .. } => {
                let r = match localize(psi, local) {
                    Ok(r) => r,
                    Err(e) => return Ok(Err(format!("localization failed: {e}"))),
                };
                if !localized_partition_matches(psi, &r) {
                    return Ok(Err(format!("local partition {} is not p(psi)", r.datum.partition())));
                }
                if is_type_i(&r.datum) {
                    let global = bvs_dual(&r.datum.partition(), psi.group)?;
                    return Ok(mismatch(&typei_bound(&r.datum)?, &global));
                }
                Ok(Ok(()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: u64,
    pub instance: Instance,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    /// Effective size bound of this sweep.
    pub max_size: u32,
    pub instances: u64,
    pub passed: u64,
    pub first_counterexample: Option<Counterexample>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.passed == self.instances
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub note: String,
    pub config: SweepConfig,
    pub results: Vec<IdentityReport>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.results.iter().all(IdentityReport::ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per identity.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = if r.ok() { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "{:<18} size<={:<3} instances {:>9} passed {:>9} {status} ({:.2}s)\n",
                r.identity.name(),
                r.max_size,
                r.instances,
                r.passed,
                r.wall_time.as_secs_f64()
            ));
            if let Some(c) = &r.first_counterexample {
                out.push_str(&format!("  first counterexample #{}: {}\n", c.index, c.detail));
            }
        }
        out
    }
}

/// A batch of instances evaluated together by one worker.
enum Unit {
    Blocks { induction: bool, group: GroupKind, sn: SnData, gl: Partition, rest: u32 },
    Single(Instance),
}

impl Unit {
    fn instances(&self) -> Vec<Instance> {
        match self {
            Unit::Blocks { induction, group, sn, gl, rest } => partitions_of(*rest)
                .into_iter()
                .map(|e| {
                    let (group, sn, gl) = (*group, sn.clone(), gl.clone());
                    if *induction {
                        Instance::Induction { group, sn, gl, e }
                    } else {
                        Instance::Reduction { group, sn, gl, e }
                    }
                })
                .collect(),
            Unit::Single(i) => vec![i.clone()],
        }
    }
}

struct UnitOutcome {
    count: u64,
    failures: u64,
    first: Option<(u64, Instance, String)>,
}

fn run_unit(unit: &Unit) -> UnitOutcome {
    let mut out = UnitOutcome { count: 0, failures: 0, first: None };
    for instance in unit.instances() {
        if let Err(detail) = instance.evaluate() {
            out.failures += 1;
            if out.first.is_none() {
                out.first = Some((out.count, instance, detail));
            }
        }
        out.count += 1;
    }
    out
}

/// Ranks of `family` whose ambient size is at most `max_size`.
fn ranks(family: Family, max_size: u32) -> impl Iterator<Item = u32> {
    (0..=max_size).take_while(move |&n| GroupKind::new(family, n).ambient_size() <= max_size)
}

/// Units over all `(n, sn, gl)` with `e` ranging over partitions of the
/// remaining rank, in lexicographic order of `(n, sn, gl)`.
fn block_units(family: Family, max_size: u32, induction: bool) -> Result<Vec<Unit>> {
    let mut units = Vec::new();
    for n in ranks(family, max_size) {
        let group = GroupKind::new(family, n);
        for inner in 0..=n {
            for sn in enumerate_sn(family, inner)? {
                if induction && sn.has_lambda0() {
                    continue;
                }
                let left = n - inner;
                for s in 0..=left {
                    for gl in partitions_of(s) {
                        units.push(Unit::Blocks {
                            induction,
                            group,
                            sn: sn.clone(),
                            gl,
                            rest: left - s,
                        });
                    }
                }
            }
        }
    }
    Ok(units)
}

fn shape_units(max_size: u32, commutation: bool) -> Vec<Unit> {
    let mut units = Vec::new();
    for size in 0..=max_size {
        for p in partitions_of(size) {
            for &class in classes_for_size(size) {
                let partition = p.clone();
                units.push(Unit::Single(if commutation {
                    Instance::Commutation { partition, class }
                } else {
                    Instance::Collapse { partition, class }
                }));
            }
        }
    }
    units
}

fn localization_units(cfg: &SweepConfig) -> Vec<Unit> {
    let families = if cfg.families.is_empty() { Family::ORTHOSYMPLECTIC.to_vec() } else { cfg.families.clone() };
    (0..cfg.samples)
        .into_par_iter()
        .map(|sample| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(sample);
            let family = families[(sample % families.len() as u64) as usize];
            let (psi, local) = random_instance(&mut rng, family, cfg.local_max_rank);
            Unit::Single(Instance::Localization { sample, psi, local })
        })
        .collect()
}

fn units_for(identity: Identity, cfg: &SweepConfig) -> Result<(u32, Vec<Unit>)> {
    Ok(match identity {
        Identity::SpInduction | Identity::SoInduction | Identity::OInduction => {
            let family = identity.induction_family().expect("induction identity");
            (cfg.max_size, block_units(family, cfg.max_size, true)?)
        }
        Identity::UnitaryReduction => {
            let mut units = Vec::new();
            for &family in &cfg.families {
                units.extend(block_units(family, cfg.max_size, false)?);
            }
            (cfg.max_size, units)
        }
        Identity::CollapseOracle => {
            let size = cfg.max_size.min(ORACLE_SWEEP_SIZE);
            (size, shape_units(size, false))
        }
        Identity::Commutation => {
            let size = cfg.max_size.min(COMMUTATION_SWEEP_SIZE);
            (size, shape_units(size, true))
        }
        Identity::Localization => (cfg.local_max_rank, localization_units(cfg)),
    })
}

fn sweep(identity: Identity, cfg: &SweepConfig) -> Result<IdentityReport> {
    let start = Instant::now();
    let (max_size, units) = units_for(identity, cfg)?;
    let outcomes: Vec<UnitOutcome> = units.par_iter().map(run_unit).collect();
    let mut instances = 0u64;
    let mut failures = 0u64;
    let mut first_counterexample = None;
    for o in outcomes {
        if first_counterexample.is_none() {
            if let Some((local, instance, detail)) = o.first {
                first_counterexample = Some(Counterexample { index: instances + local, instance, detail });
            }
        }
        instances += o.count;
        failures += o.failures;
    }
    Ok(IdentityReport {
        identity,
        max_size,
        instances,
        passed: instances - failures,
        first_counterexample,
        wall_time: start.elapsed(),
    })
}

/// Runs every identity selected in `cfg`.
pub fn run(cfg: &SweepConfig) -> Result<VerificationReport> {
    cfg.check()?;
    let go = || -> Result<Vec<IdentityReport>> {
        cfg.identities.iter().map(|&i| sweep(i, cfg)).collect()
    };
    let results = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(go)?
    } else {
        go()?
    };
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        note: REPORT_NOTE.to_string(),
        config: cfg.clone(),
        results,
    })
}

/// Runs a single identity with otherwise default settings.
pub fn run_identity(identity: Identity, max_size: u32) -> Result<IdentityReport> {
    let cfg = SweepConfig { identities: vec![identity], max_size, ..SweepConfig::default() };
    cfg.check()?;
    sweep(identity, &cfg)
}
