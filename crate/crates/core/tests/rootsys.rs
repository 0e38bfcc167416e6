mod common;

use proptest::prelude::*;
use stabgate::classes::coxeter_number;
use stabgate::rootsys::{Family, RootSystem};

const TYPES: [(Family, char, usize, usize); 9] = [
    (Family::A, 'A', 1, 8),
    (Family::B, 'B', 2, 7),
    (Family::C, 'C', 3, 7),
    (Family::D, 'D', 4, 7),
    (Family::E, 'E', 6, 6),
    (Family::E, 'E', 7, 7),
    (Family::E, 'E', 8, 8),
    (Family::F, 'F', 4, 4),
    (Family::G, 'G', 2, 2),
];

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn weyl_order_formula(letter: char, l: u128) -> u128 {
    match (letter, l) {
        ('A', _) => factorial(l + 1),
        ('B' | 'C', _) => (1 << l) * factorial(l),
        ('D', _) => (1 << (l - 1)) * factorial(l),
        ('E', 6) => 51_840,
        ('E', 7) => 2_903_040,
        ('E', 8) => 696_729_600,
        ('F', _) => 1_152,
        _ => 12,
    }
}

#[test]
fn root_counts_match_group_dimension() {
    for (f, letter, lo, hi) in TYPES {
        for l in lo..=hi {
            let rs = RootSystem::build(f, l).unwrap();
            assert_eq!(rs.num_roots() as i64, common::group_dim(letter, l as i64) - l as i64, "{}", rs.name());
            assert_eq!(rs.dim_group() as i64, common::group_dim(letter, l as i64));
        }
    }
}

#[test]
fn weyl_orders() {
    for (f, letter, lo, hi) in TYPES {
        for l in lo..=hi {
            let rs = RootSystem::build(f, l).unwrap();
            assert_eq!(rs.weyl_order(), weyl_order_formula(letter, l as u128), "{}", rs.name());
        }
    }
}

#[test]
fn highest_root_height_is_coxeter_number_minus_one() {
    for (f, _, lo, hi) in TYPES {
        for l in lo..=hi {
            let rs = RootSystem::build(f, l).unwrap();
            assert_eq!(rs.height(rs.highest_root()) as usize, coxeter_number(f, l) - 1, "{}", rs.name());
        }
    }
}

#[test]
fn g2_has_twelve_roots_in_two_lengths() {
    let rs = RootSystem::build(Family::G, 2).unwrap();
    assert_eq!(rs.num_roots(), 12);
    assert_eq!((0..12).filter(|&i| rs.is_long(i)).count(), 6);
}

#[test]
fn bad_ranks_are_rejected() {
    assert!(RootSystem::build(Family::E, 5).is_err());
    assert!(RootSystem::build(Family::G, 3).is_err());
    assert!(RootSystem::build(Family::A, 0).is_err());
    assert!(Family::parse("Q").is_err());
}

proptest! {
    #[test]
    fn reflections_permute_roots(t in 0usize..9, a in 0usize..1000, b in 0usize..1000) {
        let (f, _, lo, _) = TYPES[t];
        let rs = RootSystem::build(f, lo.max(3).min(if f == Family::G { 2 } else { 8 })).unwrap();
        let n = rs.num_roots();
        let (a, b) = (a % n, b % n);
        let image = rs.reflect(rs.root(a), rs.root(b)).unwrap();
        prop_assert!(rs.find(&image).is_some());
        prop_assert_eq!(rs.root(rs.negate(a)).iter().map(|x| -x).collect::<Vec<_>>(), rs.root(a).to_vec());
    }
}
