mod common;

use stabgate::classes::{
    classical_unipotent_classes, dominates, eigenspace_gap, m_psi_formula, p2_class_dim, partition_class_dim, EigenPartition,
};
use stabgate::primes::Char;
use stabgate::rootsys::{Family, RootSystem};

fn dual(blocks: &[usize]) -> Vec<usize> {
    (1..=blocks[0]).map(|i| blocks.iter().filter(|&&b| b >= i).count()).collect()
}

#[test]
fn type_a_class_dims_from_dual_partition() {
    for n in 2..=8usize {
        for b in common::partitions_of(n) {
            let want = (n * n) as i64 - dual(&b).iter().map(|x| (x * x) as i64).sum::<i64>();
            assert_eq!(partition_class_dim(Family::A, n - 1, &b).unwrap(), want, "{b:?}");
        }
    }
}

#[test]
fn regular_and_minimal_classes() {
    for l in 2..=7usize {
        let li = l as i64;
        let reg = |f: Family, n: usize| {
            let rs = RootSystem::build(f, l).unwrap();
            (rs.dim_group() - l) as i64 == partition_class_dim(f, l, &[n]).unwrap()
        };
        assert!(reg(Family::B, 2 * l + 1));
        if l >= 3 {
            assert!(reg(Family::C, 2 * l));
            assert_eq!(partition_class_dim(Family::C, l, &[&[2][..], &vec![1; 2 * l - 2]].concat()).unwrap(), 2 * li);
        }
        if l >= 4 {
            // regular nilpotents of so(2l) have blocks 2l−1 and 1
            let rs = RootSystem::build(Family::D, l).unwrap();
            assert_eq!(partition_class_dim(Family::D, l, &[2 * l - 1, 1]).unwrap(), (rs.dim_group() - l) as i64);
            assert_eq!(partition_class_dim(Family::D, l, &[&[2, 2][..], &vec![1; 2 * l - 4]].concat()).unwrap(), 4 * li - 6);
        }
        assert_eq!(partition_class_dim(Family::B, l, &[&[2, 2][..], &vec![1; 2 * l - 3]].concat()).unwrap(), 4 * li - 4);
    }
}

#[test]
fn invalid_partitions_are_rejected() {
    assert!(partition_class_dim(Family::C, 3, &[3, 3]).is_ok());
    assert!(partition_class_dim(Family::C, 3, &[3, 2, 1]).is_err());
    assert!(partition_class_dim(Family::B, 3, &[2, 1, 1, 1, 1, 1]).is_err());
    assert!(partition_class_dim(Family::A, 3, &[2, 1]).is_err());
    assert!(classical_unipotent_classes(Family::B, 4, Char::P(2)).is_err());
}

#[test]
fn order_p_classes_have_blocks_at_most_p() {
    for p in [3u32, 5, 7] {
        let classes = classical_unipotent_classes(Family::C, 4, Char::P(p)).unwrap();
        assert!(!classes.is_empty());
        assert!(classes.iter().all(|b| b[0] <= p as usize && b[0] > 1));
    }
    // at p = ∞ every non-trivial class appears: C3 has 7 non-trivial classes
    assert_eq!(classical_unipotent_classes(Family::C, 3, Char::Zero).unwrap().len(), 7);
}

#[test]
fn dominance_orders_type_a_class_dims() {
    for n in 2..=8usize {
        let parts = common::partitions_of(n);
        for a in &parts {
            for b in &parts {
                if dominates(a, b) {
                    assert!(partition_class_dim(Family::A, n - 1, a).unwrap() >= partition_class_dim(Family::A, n - 1, b).unwrap());
                }
            }
        }
    }
}

#[test]
fn characteristic_two_involutions() {
    // transvections of Sp(2l) form a 2l-dimensional class
    assert_eq!(p2_class_dim(Family::C, 4, 3, 0, 1).unwrap(), 8);
    assert_eq!(p2_class_dim(Family::C, 4, 2, 1, 0).unwrap(), 12);
    assert!(p2_class_dim(Family::D, 4, 3, 0, 1).is_err());
    assert!(p2_class_dim(Family::C, 4, 4, 0, 0).is_err());
}

#[test]
fn eigenspace_gap_equality_case() {
    // equal multiplicities force r | ℓ + 1 and give the extremal δ = −1
    assert_eq!(eigenspace_gap(Family::A, 5, 3, &EigenPartition { m: vec![2, 2, 2] }).unwrap(), -1);
    assert_eq!(eigenspace_gap(Family::A, 4, 5, &EigenPartition { m: vec![1; 5] }).unwrap(), -1);
    assert!(eigenspace_gap(Family::C, 4, 2, &EigenPartition { m: vec![2, 2] }).is_err());
    assert!(eigenspace_gap(Family::A, 4, 3, &EigenPartition { m: vec![1, 1, 1] }).is_err());
}

#[test]
fn m_psi_closed_forms_only_in_type_a() {
    let a5 = RootSystem::build(Family::A, 5).unwrap();
    assert_eq!(m_psi_formula(&a5, &a5.standard_subsystem(&[1, 3]).unwrap()), Some(20));
    let d5 = RootSystem::build(Family::D, 5).unwrap();
    assert_eq!(m_psi_formula(&d5, &d5.standard_subsystem(&[1, 3]).unwrap()), None);
}
