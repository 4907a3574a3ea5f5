use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbitduality::arthur::{is_generic, partition_of_parameter, wavefront_upper_bound};
use orbitduality::collapse::oracle_extremum;
use orbitduality::localize::{localize, LocalSummandData};
use orbitduality::unramified::{enumerate_sn, sn_wavefront, unitary_wavefront, validate_unitary};
use orbitduality::verify::{self, Identity, SweepConfig};
use orbitduality::{
    bvs_dual, collapse, expand, induce, ArthurParameter, Direction, Error, Family, GroupKind, Partition,
    PartitionClass, SnData, UnitaryDatum,
};

#[derive(Parser)]
#[command(name = "orbitduality", version, about = "Partition calculus for wave-front sets of Arthur packets")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Transpose a partition.
    Transpose { partition: Partition },
    /// Largest class-c partition dominated by the input.
    Collapse {
        #[arg(long)]
        class: PartitionClass,
        /// Use brute-force enumeration instead of the recipe.
        #[arg(long)]
        oracle: bool,
        partition: Partition,
    },
    /// Smallest partition dominating the input whose transpose is in class c.
    Expand {
        #[arg(long)]
        class: PartitionClass,
        #[arg(long)]
        oracle: bool,
        partition: Partition,
    },
    /// Duality from dual-side partitions to orbits of the group.
    Dual {
        #[arg(long)]
        group: Family,
        #[arg(long)]
        rank: u32,
        partition: Partition,
    },
    /// Orbit induced from GL(gl_1) x ... x G(inner).
    Induce {
        #[arg(long)]
        group: Family,
        #[arg(long, value_delimiter = ',')]
        gl: Vec<u32>,
        #[arg(long)]
        inner: Partition,
    },
    /// Dual-side partition of an Arthur parameter.
    POfPsi {
        #[arg(long)]
        param: PathBuf,
    },
    /// Wave-front upper bound of an Arthur parameter.
    Bound {
        #[arg(long)]
        param: PathBuf,
    },
    /// List every strongly negative datum of a group.
    EnumerateSn {
        #[arg(long)]
        group: Family,
        #[arg(long)]
        rank: u32,
    },
    /// Wave-front partition of a strongly negative datum with trivial-character blocks.
    Okada {
        #[arg(long)]
        group: Family,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<u32>,
    },
    /// Check a unitary datum against the classification conditions.
    ValidateUnitary { file: PathBuf },
    /// Wave-front partition of a unitary datum.
    Wavefront { file: PathBuf },
    /// Local unramified datum attached to a parameter and local summand data.
    Localize {
        #[arg(long)]
        param: PathBuf,
        #[arg(long)]
        local: PathBuf,
    },
    /// Exhaustive sweeps over the partition identities.
    Verify {
        /// Comma-separated identity names; all when omitted.
        #[arg(long, alias = "lemma", value_delimiter = ',')]
        identity: Vec<Identity>,
        #[arg(long, value_delimiter = ',')]
        family: Vec<Family>,
        #[arg(long, default_value_t = 24)]
        max_size: u32,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Required whenever the localization sweep runs.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Bad input files or flag combinations; reported like clap errors.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn partition(p: &Partition, json: Value) -> Self {
        Output { text: p.to_string(), json, ok: true }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let raw = fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Usage(format!("cannot parse {}: {e}", path.display())).into())
}

fn group_of_ambient(family: Family, size: u32) -> Result<GroupKind, Error> {
    let n = match family {
        Family::Sp | Family::Oeven if size % 2 == 0 => size / 2,
        Family::SOodd if size % 2 == 1 => size / 2,
        Family::U => size,
        _ => return Err(Error::ParityMismatch { class: family.class(), size }),
    };
    Ok(GroupKind::new(family, n))
}

fn sequence(parts: &[u32]) -> String {
    let inner: Vec<String> = parts.iter().map(u32::to_string).collect();
    format!("({})", inner.join(","))
}

fn run(command: Command) -> anyhow::Result<Output> {
    Ok(match command {
        Command::Transpose { partition } => {
            let t = partition.transpose();
            Output::partition(&t, json!({ "input": partition, "result": t }))
        }
        Command::Collapse { class, oracle, partition } => {
            let r = if oracle {
                oracle_extremum(&partition, class, Direction::MaxBelow)?
            } else {
                collapse(&partition, class)?
            };
            Output::partition(&r, json!({ "input": partition, "class": class.to_string(), "result": r }))
        }
        Command::Expand { class, oracle, partition } => {
            let r = if oracle {
                oracle_extremum(&partition, class, Direction::MinAbove)?
            } else {
                expand(&partition, class)?
            };
            Output::partition(&r, json!({ "input": partition, "class": class.to_string(), "result": r }))
        }
        Command::Dual { group, rank, partition } => {
            let g = GroupKind::new(group, rank);
            let r = bvs_dual(&partition, g)?;
            Output::partition(&r, json!({ "input": partition, "group": g.to_string(), "result": r }))
        }
        Command::Induce { group, gl, inner } => {
            let small = group_of_ambient(group, inner.size())?;
            let big = GroupKind::new(group, small.n + gl.iter().sum::<u32>());
            let r = induce(&gl, &inner, small, big)?;
            Output::partition(
                &r,
                json!({ "inner": inner, "gl": gl, "from": small.to_string(), "group": big.to_string(), "result": r }),
            )
        }
        Command::POfPsi { param } => {
            let psi: ArthurParameter = read_json(&param)?;
            let p = partition_of_parameter(&psi)?;
            Output::partition(&p, json!({ "group": psi.group.to_string(), "result": p }))
        }
        Command::Bound { param } => {
            let psi: ArthurParameter = read_json(&param)?;
            let p = partition_of_parameter(&psi)?;
            let bound = wavefront_upper_bound(&psi)?;
            let generic = is_generic(&psi)?;
            Output::partition(
                &bound,
                json!({ "group": psi.group.to_string(), "p_psi": p, "generic": generic, "result": bound }),
            )
        }
        Command::EnumerateSn { group, rank } => {
            let all = enumerate_sn(group, rank)?;
            let text = all
                .iter()
                .map(|d| format!("lambda0={} trivial={}", sequence(&d.lambda0), sequence(&d.trivial)))
                .collect::<Vec<_>>()
                .join("\n");
            Output { text, json: json!({ "group": GroupKind::new(group, rank).to_string(), "data": all }), ok: true }
        }
        Command::Okada { group, sizes } => {
            let d = SnData::from_trivial_sizes(group, sizes)?;
            let r = sn_wavefront(&d)?;
            Output::partition(&r, json!({ "group": d.group.to_string(), "datum": d, "result": r }))
        }
        Command::ValidateUnitary { file } => {
            let u: UnitaryDatum = read_json(&file)?;
            match validate_unitary(&u) {
                Ok(()) => Output { text: "valid".into(), json: json!({ "valid": true, "violations": [] }), ok: true },
                Err(violations) => Output {
                    text: violations.iter().map(|v| format!("violation: {v}")).collect::<Vec<_>>().join("\n"),
                    json: json!({ "valid": false, "violations": violations }),
                    ok: false,
                },
            }
        }
        Command::Wavefront { file } => {
            let u: UnitaryDatum = read_json(&file)?;
            let r = unitary_wavefront(&u)?;
            let status = if r.proved { "proved" } else { "conjectural" };
            Output { text: format!("{} ({status})", r.partition), json: serde_json::to_value(&r)?, ok: true }
        }
        Command::Localize { param, local } => {
            let psi: ArthurParameter = read_json(&param)?;
            let local: Vec<LocalSummandData> = read_json(&local)?;
            let r = localize(&psi, &local)?;
            let blocks = |bs: &[orbitduality::JordanBlock]| {
                if bs.is_empty() {
                    return "-".to_string();
                }
                bs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            };
            let text = format!(
                "partition {}\njord1 {}\njord2 {}\njord3 {}",
                r.datum.partition(),
                blocks(&r.jord1),
                blocks(&r.jord2),
                blocks(&r.jord3)
            );
            Output { text, json: serde_json::to_value(&r)?, ok: true }
        }
        Command::Verify { identity, family, max_size, jobs, seed, samples, report } => {
            let defaults = SweepConfig::default();
            let identities = if identity.is_empty() { defaults.identities.clone() } else { identity };
            if identities.contains(&Identity::Localization) && seed.is_none() {
                return Err(Usage("the localization sweep needs an explicit --seed".into()).into());
            }
            let cfg = SweepConfig {
                families: if family.is_empty() { defaults.families.clone() } else { family },
                max_size,
                identities,
                jobs,
                seed: seed.unwrap_or(defaults.seed),
                samples,
                ..defaults
            };
            cfg.check().map_err(|e| Usage(e.to_string()))?;
            let r = verify::run(&cfg)?;
            if let Some(path) = report {
                fs::write(&path, r.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            let json: Value = serde_json::from_str(&r.to_json())?;
            Output { text: r.summary().trim_end().to_string(), json, ok: r.ok() }
        }
    })
}

fn error_json(e: &anyhow::Error) -> Value {
    let violations = match e.downcast_ref::<Error>() {
        Some(Error::InvalidParameter(v)) => serde_json::to_value(v).ok(),
        Some(Error::InvalidSn(v)) => serde_json::to_value(v).ok(),
        Some(Error::InvalidUnitary(v)) => serde_json::to_value(v).ok(),
        _ => None,
    };
    json!({ "error": e.to_string(), "violations": violations.unwrap_or(json!([])) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli.command) {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json output")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if e.downcast_ref::<Usage>().is_some() {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&error_json(&e)).expect("json output")),
            }
            ExitCode::from(1)
        }
    }
}
