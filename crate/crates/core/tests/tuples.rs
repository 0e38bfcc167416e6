mod common;

use proptest::prelude::*;
use stabgate::tuples::{b_min, b_of_pair, b_small_k, b_two_parts, bounded_tuple, parse_tuple, DimTuple};

#[test]
fn a5_first_stage_value() {
    let d = parse_tuple("11,4").unwrap();
    assert_eq!(b_min(&d, 4).unwrap().value, 16);
}

#[test]
fn spot_values_from_exceptional_stages() {
    for (d, k, b) in [("12,12,3", 4, 52), ("100,100,48", 2, 294), ("4,4,4,4,4,4,2", 3, 60), ("3,3,3,3,3", 4, 36)] {
        let t = parse_tuple(d).unwrap();
        assert_eq!(b_min(&t, k).unwrap().value, b, "{d} k={k}");
        assert_eq!(common::b_exhaustive(t.parts())[k as usize], b, "{d} k={k}");
    }
}

#[test]
fn malformed_input() {
    assert!(parse_tuple("3,x").is_err());
    assert!(DimTuple::new(vec![]).is_err());
    assert!(DimTuple::new(vec![3, 0]).is_err());
    assert!(b_min(&parse_tuple("2,1").unwrap(), 4).is_err());
    assert!(b_two_parts(&parse_tuple("3,2,1").unwrap(), 1).is_err());
    assert!(b_small_k(&parse_tuple("3,2").unwrap(), 4).is_err());
    assert!(bounded_tuple(5, 0).is_err());
}

#[test]
fn bounded_tuple_shape() {
    assert_eq!(bounded_tuple(14, 4).unwrap().parts(), &[4, 4, 4, 2]);
    assert_eq!(bounded_tuple(12, 4).unwrap().parts(), &[4, 4, 4]);
}

proptest! {
    #[test]
    fn b_min_equals_exhaustive(parts in prop::collection::vec(1i64..=6, 1..=4), k in 0i64..=24) {
        let d = DimTuple::new(parts).unwrap();
        let k = k % (d.total() + 1);
        let got = b_min(&d, k).unwrap();
        prop_assert_eq!(got.value, common::b_exhaustive(d.parts())[k as usize]);
        prop_assert!(got.witness.windows(2).all(|w| w[0] >= w[1]));
        let mut w = got.witness.clone();
        w.resize(d.len(), 0);
        prop_assert_eq!(b_of_pair(&d, &w).unwrap(), got.value);
    }

    #[test]
    fn b_pair_is_symmetric_under_complement(parts in prop::collection::vec(1i64..=6, 1..=4), seed in any::<u64>()) {
        let d = DimTuple::new(parts).unwrap();
        let kappa: Vec<i64> = d.parts().iter().enumerate().map(|(i, &di)| ((seed >> (8 * i)) as i64).rem_euclid(di + 1)).collect();
        let comp: Vec<i64> = d.parts().iter().zip(&kappa).map(|(di, k)| di - k).collect();
        prop_assert_eq!(b_of_pair(&d, &kappa).unwrap(), b_of_pair(&d, &comp).unwrap());
    }
}
