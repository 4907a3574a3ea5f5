use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orbitduality::arthur::{is_generic, wavefront_upper_bound};
use orbitduality::localize::{localize, localized_bound_equals_global, random_instance};
use orbitduality::unramified::{is_type_i, validate_unitary};
use orbitduality::verify::{run_identity, Identity, IdentityReport};
use orbitduality::{
    bvs_dual, collapse, partitions_of, ArthurParameter, Family, GroupKind, Partition, PartitionClass, SelfDualType, SimpleParameter,
};

/// Instance counts recorded on the first full run. A change here means the
/// enumeration changed, not just the arithmetic.
const FROZEN_COUNTS: &[(Identity, u32, u64)] = &[
    (Identity::CollapseOracle, 16, 1441),
    (Identity::SpInduction, 24, 9528),
    (Identity::SoInduction, 25, 10826),
    (Identity::OInduction, 24, 7457),
    (Identity::UnitaryReduction, 24, 53238),
    (Identity::Commutation, 14, 803),
];

const LOCALIZATION_SAMPLES: u64 = 10_000;
const LOCALIZATION_MAX_RANK: u32 = 10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn frozen(identity: Identity, max_size: u32) -> u64 {
    FROZEN_COUNTS
        .iter()
        .find(|(i, m, _)| *i == identity && *m == max_size)
        .map(|&(_, _, n)| n)
        .expect("frozen count")
}

fn sweep(identity: Identity, max_size: u32) -> Outcome {
    let r: IdentityReport = run_identity(identity, max_size).map_err(|e| e.to_string())?;
    let detail = format!("{identity} size<={max_size}: {}/{} instances", r.passed, r.instances);
    if let Some(c) = &r.first_counterexample {
        return Err(format!("{detail}; first counterexample #{}: {}", c.index, c.detail));
    }
    if !r.ok() {
        return Err(detail);
    }
    let expected = frozen(identity, max_size);
    if r.instances != expected {
        return Err(format!("{detail}; frozen count is {expected}"));
    }
    Ok(detail)
}

fn sweeps(list: &[(Identity, u32)]) -> Outcome {
    let mut lines = Vec::new();
    for &(identity, max_size) in list {
        lines.push(sweep(identity, max_size)?);
    }
    Ok(lines.join("; "))
}

fn generic_parameter(family: Family, n: u32, dims: &[u32]) -> ArthurParameter {
    let tau_type = match family {
        Family::SOodd => SelfDualType::Symplectic,
        _ => SelfDualType::Orthogonal,
    };
    let summands = dims
        .iter()
        .enumerate()
        .map(|(i, &a)| SimpleParameter::new(a, 1, tau_type).with_tau(format!("tau{i}")))
        .collect();
    ArthurParameter { group: GroupKind::new(family, n), summands }
}

fn generic_regularity() -> Outcome {
    let mut checked = 0;
    for n in 1..=8u32 {
        for family in Family::ORTHOSYMPLECTIC {
            let g = GroupKind::new(family, n);
            let expected = match family {
                Family::Sp => Partition::row(2 * n),
                Family::SOodd => Partition::row(2 * n + 1),
                Family::Oeven => Partition::new(vec![2 * n - 1, 1]),
                Family::U => unreachable!(),
            };
            for dims in partitions_of(g.dual_size()) {
                if family == Family::SOodd && dims.parts().iter().any(|a| a % 2 == 1) {
                    continue;
                }
                let psi = generic_parameter(family, n, dims.parts());
                if !is_generic(&psi).map_err(|e| format!("{g} {dims}: {e}"))? {
                    return Err(format!("{g} {dims}: not recognised as generic"));
                }
                let bound = wavefront_upper_bound(&psi).map_err(|e| format!("{g} {dims}: {e}"))?;
                if bound != expected {
                    return Err(format!("{g} {dims}: bound {bound}, expected {expected}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} generic parameters, n <= 8"))
}

fn dominance_implies_lex() -> Outcome {
    let mut pairs = 0u64;
    for size in 0..=14 {
        let all = partitions_of(size);
        for a in &all {
            for b in &all {
                if a.dominance_leq(b).unwrap() {
                    pairs += 1;
                    if !a.lex_leq(b).unwrap() {
                        return Err(format!("{a} <= {b} in dominance but not lexicographically"));
                    }
                }
            }
        }
    }
    Ok(format!("{pairs} comparable pairs, size <= 14"))
}

fn localization_soundness() -> Outcome {
    let families = Family::ORTHOSYMPLECTIC;
    let mut type_i = 0u64;
    for sample in 0..LOCALIZATION_SAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        rng.set_stream(sample);
        let family = families[(sample % families.len() as u64) as usize];
        let (psi, local) = random_instance(&mut rng, family, LOCALIZATION_MAX_RANK);
        let r = localize(&psi, &local).map_err(|e| format!("sample {sample}: {e}"))?;
        if let Err(v) = validate_unitary(&r.datum) {
            return Err(format!("sample {sample}: {v:?}"));
        }
        if is_type_i(&r.datum) {
            type_i += 1;
            if !localized_bound_equals_global(&psi, &local).map_err(|e| format!("sample {sample}: {e}"))? {
                return Err(format!("sample {sample}: localized bound differs from the global bound"));
            }
        }
    }
    Ok(format!("{LOCALIZATION_SAMPLES} samples, {type_i} of type (I)"))
}

fn micro_cases() -> Outcome {
    let cases = [
        ("collapse([7,5,2],C)", collapse(&p("[7,5,2]"), PartitionClass::C), p("[6,6,2]")),
        ("collapse([5,2],B)", collapse(&p("[5,2]"), PartitionClass::B), p("[5,1,1]")),
        (
            "bvs_dual([7,5,3],Sp(14))",
            bvs_dual(&p("[7,5,3]"), GroupKind::new(Family::Sp, 7)),
            p("[3,3,2,2,2,2]"),
        ),
    ];
    for (name, got, want) in cases {
        let got = got.map_err(|e| format!("{name}: {e}"))?;
        if got != want {
            return Err(format!("{name} = {got}, expected {want}"));
        }
    }
    Ok("3 hand-computed values".into())
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("collapse/expansion oracle equivalence", Box::new(|| sweeps(&[(Identity::CollapseOracle, 16)]))),
        ("Sp induction sweep", Box::new(|| sweeps(&[(Identity::SpInduction, 24)]))),
        (
            "SO and O induction sweeps",
            Box::new(|| sweeps(&[(Identity::SoInduction, 25), (Identity::OInduction, 24)])),
        ),
        ("unitary reduction sweep", Box::new(|| sweeps(&[(Identity::UnitaryReduction, 24)]))),
        ("commutation and even orthogonal dual", Box::new(|| sweeps(&[(Identity::Commutation, 14)]))),
        ("generic-parameter regularity", Box::new(generic_regularity)),
        ("dominance implies lexicographic", Box::new(dominance_implies_lex)),
        ("localization soundness", Box::new(localization_soundness)),
        ("worked micro-cases", Box::new(micro_cases)),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => writeln!(err, "[PASS] {}. {name}: {detail} ({secs:.1}s)", i + 1).unwrap(),
            Err(detail) => {
                writeln!(err, "[FAIL] {}. {name}: {detail} ({secs:.1}s)", i + 1).unwrap();
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
