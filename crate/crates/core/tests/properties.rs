use proptest::prelude::*;

use orbitduality::arthur::{partition_of_parameter, validate_parameter};
use orbitduality::collapse::classes_for_size;
use orbitduality::unramified::{enumerate_sn, validate_sn};
use orbitduality::{
    bvs_dual, collapse, expand, partitions_of, ArthurParameter, Boundary, Family, GroupKind, Partition,
    PartitionClass, SelfDualType, SimpleParameter, SnData,
};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn transpose_is_an_involution() {
    for size in 0..=20 {
        for q in partitions_of(size) {
            assert_eq!(q.transpose().transpose(), q);
            assert_eq!(q.transpose().size(), size);
        }
    }
}

#[test]
fn transpose_is_antitone() {
    for size in 0..=14 {
        let all = partitions_of(size);
        let transposed: Vec<Partition> = all.iter().map(Partition::transpose).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                assert_eq!(
                    a.dominance_leq(b).unwrap(),
                    transposed[j].dominance_leq(&transposed[i]).unwrap(),
                    "{a} {b}"
                );
            }
        }
    }
}

#[test]
fn pointwise_sum_transposes_to_union() {
    let all: Vec<Partition> = (0..=12).flat_map(partitions_of).collect();
    for a in &all {
        for b in &all {
            assert_eq!(a.add(b).transpose(), a.transpose().union(&b.transpose()), "{a} + {b}");
        }
    }
}

#[test]
fn boundary_variants_adjust_size() {
    for size in 1..=12 {
        for q in partitions_of(size) {
            assert_eq!(q.boundary_variant(Boundary::Plus).unwrap().size(), size + 1);
            assert_eq!(q.boundary_variant(Boundary::Minus).unwrap().size(), size - 1);
            assert_eq!(q.boundary_variant(Boundary::PlusMinus).unwrap().size(), size);
        }
    }
    assert!(Partition::empty().boundary_variant(Boundary::Minus).is_err());
    assert_eq!(p("[1]").boundary_variant(Boundary::PlusMinus).unwrap(), p("[1]"));
}

#[test]
fn text_format() {
    assert_eq!(p("[3^2 1^4]"), Partition::new(vec![3, 3, 1, 1, 1, 1]));
    assert_eq!(p("[3^2 1^4]").to_string(), "[3,3,1,1,1,1]");
    assert_eq!(p("[]"), Partition::empty());
    assert!("[3,a]".parse::<Partition>().is_err());
}

#[test]
fn documented_collapse_and_expand_values() {
    use PartitionClass::*;
    assert_eq!(collapse(&p("[4,2,2]"), D).unwrap(), p("[3,3,1,1]"));
    assert_eq!(collapse(&p("[6,2]"), C).unwrap(), p("[6,2]"));
    assert_eq!(expand(&p("[7,5,2]"), C).unwrap(), p("[7,5,2]"));
    assert_eq!(expand(&p("[3,2,1]"), C).unwrap(), p("[3,3]"));
    assert!(collapse(&p("[3]"), C).is_err());
    assert!(collapse(&p("[2,2]"), B).is_err());
}

#[test]
fn dual_lands_in_class_for_every_valid_input() {
    for family in Family::ORTHOSYMPLECTIC {
        for size in 0..=16 {
            let Ok(g) = GroupKind::from_dual_size(family, size) else { continue };
            for q in partitions_of(size).into_iter().filter(|q| q.is_in_class(family.dual_class())) {
                let d = bvs_dual(&q, g).unwrap();
                assert_eq!(d.size(), g.ambient_size());
                assert!(d.is_in_class(g.class()), "{g}: {q} -> {d}");
            }
        }
    }
}

#[test]
fn regular_orbits_are_dual_to_columns() {
    for n in 1..=8 {
        assert_eq!(bvs_dual(&Partition::column(2 * n + 1), GroupKind::new(Family::Sp, n)).unwrap(), Partition::row(2 * n));
        assert_eq!(
            bvs_dual(&Partition::column(2 * n), GroupKind::new(Family::SOodd, n)).unwrap(),
            Partition::row(2 * n + 1)
        );
        assert_eq!(
            bvs_dual(&Partition::column(2 * n), GroupKind::new(Family::Oeven, n)).unwrap(),
            Partition::new(vec![2 * n - 1, 1])
        );
    }
}

#[test]
fn sn_enumeration_matches_validator() {
    fn distinct_parts(values: &[u32], budget: u32) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for (i, &v) in values.iter().enumerate() {
            if v > budget {
                break;
            }
            for mut tail in distinct_parts(&values[i + 1..], budget - v) {
                tail.insert(0, v);
                out.push(tail);
            }
        }
        out
    }
    for family in Family::ORTHOSYMPLECTIC {
        for n in 0..=12 {
            let g = GroupKind::new(family, n);
            let total = g.dual_size();
            let values: Vec<u32> = (0..=total).collect();
            let seqs = distinct_parts(&values, total);
            let mut accepted = Vec::new();
            for l in &seqs {
                for t in &seqs {
                    if l.iter().sum::<u32>() + t.iter().sum::<u32>() != total {
                        continue;
                    }
                    let d = SnData::new(g, l.clone(), t.clone());
                    if validate_sn(&d).is_ok() {
                        accepted.push(d);
                    }
                }
            }
            accepted.sort();
            assert_eq!(enumerate_sn(family, n).unwrap(), accepted, "{g}");
        }
    }
}

#[test]
fn parameter_examples() {
    let sp = |n| GroupKind::new(Family::Sp, n);
    let orth = |a, b| SimpleParameter::new(a, b, SelfDualType::Orthogonal);
    let ok = ArthurParameter { group: sp(2), summands: vec![orth(1, 5)] };
    assert!(validate_parameter(&ok).is_ok());
    assert_eq!(partition_of_parameter(&ok).unwrap(), p("[5]"));
    let even_b = ArthurParameter { group: sp(2), summands: vec![orth(1, 4)] };
    assert!(validate_parameter(&even_b).is_err());
    let repeated = ArthurParameter { group: sp(2), summands: vec![orth(1, 3), orth(1, 3)] };
    assert!(validate_parameter(&repeated).is_err());
    let empty = ArthurParameter { group: sp(2), summands: vec![] };
    assert!(validate_parameter(&empty).is_err());
}

#[test]
fn json_round_trips() {
    let q = p("[7,5,2]");
    let json = serde_json::to_string(&q).unwrap();
    assert_eq!(json, "\"[7,5,2]\"");
    assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), q);
    assert_eq!(serde_json::from_str::<Partition>("[2,5,7]").unwrap(), q);
    let psi = ArthurParameter {
        group: GroupKind::new(Family::Sp, 7),
        summands: vec![
            SimpleParameter::new(1, 7, SelfDualType::Orthogonal).with_tau("t1"),
            SimpleParameter::new(1, 5, SelfDualType::Orthogonal).with_tau("t2"),
            SimpleParameter::new(1, 3, SelfDualType::Orthogonal).with_tau("t3"),
        ],
    };
    let back: ArthurParameter = serde_json::from_str(&serde_json::to_string(&psi).unwrap()).unwrap();
    assert_eq!(back, psi);
}

fn partition_strategy(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max, 0..=max as usize).prop_map(Partition::new)
}

proptest! {
    #[test]
    fn collapse_and_expand_bracket_the_input(q in partition_strategy(9)) {
        for &c in classes_for_size(q.size()) {
            let down = collapse(&q, c).unwrap();
            let up = expand(&q, c).unwrap();
            prop_assert!(down.dominance_leq(&q).unwrap());
            prop_assert!(q.dominance_leq(&up).unwrap());
            prop_assert!(down.is_in_class(c) && up.transpose().is_in_class(c));
            prop_assert_eq!(collapse(&down, c).unwrap(), down.clone());
            prop_assert_eq!(expand(&up, c).unwrap(), up);
        }
    }

    #[test]
    fn parameter_partition_has_dual_size(bs in prop::collection::btree_set(0u32..8, 1..5)) {
        let summands: Vec<SimpleParameter> = bs
            .iter()
            .enumerate()
            .map(|(i, &k)| SimpleParameter::new(1, 2 * k + 1, SelfDualType::Orthogonal).with_tau(format!("t{i}")))
            .collect();
        let total: u32 = summands.iter().map(|s| s.b).sum();
        prop_assume!(total % 2 == 1);
        let psi = ArthurParameter { group: GroupKind::new(Family::Sp, (total - 1) / 2), summands };
        prop_assert!(validate_parameter(&psi).is_ok());
        prop_assert_eq!(partition_of_parameter(&psi).unwrap().size(), total);
    }
}
