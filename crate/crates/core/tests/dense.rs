mod common;

use stabgate::engine::dense::{corollary_checks, dense_orbit_check, embedded_rows, StabilizerDescriptor, HIGH_K_EXCEPTIONS};

#[test]
fn descriptor_dimensions() {
    let d = |s: &str, l: i64, k: i64| StabilizerDescriptor::parse(s, &[("l", l), ("k", k)]).unwrap().dimension;
    assert_eq!(d("A{l-k}A{k-1}T1U{k*(l+1-k)}", 5, 2), 15 + 3 + 1 + 8);
    assert_eq!(d("Z{3/(3,p)}.S3", 2, 1), 0);
    assert_eq!(d("~A2T1.Z2", 3, 1), 9);
    assert_eq!(d("B1^2(*)", 3, 1), 6);
    assert_eq!(d("A1^{(l+1)/2}", 5, 1), 9);
    assert_eq!(d("Z2^l", 7, 1), 0);
    assert!(StabilizerDescriptor::parse("Q3", &[]).is_err());
}

#[test]
fn every_row_is_consistent() {
    let rows = embedded_rows().unwrap();
    let mut n = 0;
    for row in &rows {
        for c in dense_orbit_check(row).unwrap() {
            assert!(c.ok, "{:?}", c.instance);
            let i = &c.instance;
            let letter = i.group.chars().next().unwrap();
            let l: i64 = i.group[1..].parse().unwrap();
            assert_eq!(i.dim_g, common::group_dim(letter, l));
            n += 1;
        }
    }
    assert!(n > 500);
}

#[test]
fn corollaries_hold_and_name_the_exceptions() {
    let rows = embedded_rows().unwrap();
    let r = corollary_checks(&rows).unwrap();
    assert!(r.ok(), "{:?}", r.failures);
    let mut want: Vec<String> = HIGH_K_EXCEPTIONS.iter().map(|s| s.to_string()).collect();
    want.sort();
    assert_eq!(r.high_k, want);
}

#[test]
fn a_wrong_dense_entry_is_caught() {
    let mut rows = embedded_rows().unwrap();
    let row = rows.iter_mut().find(|r| r.table != 1 && r.dense == Some(true)).unwrap();
    row.dense = Some(false);
    assert!(dense_orbit_check(row).unwrap().iter().any(|c| !c.ok));
}
