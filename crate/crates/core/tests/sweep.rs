use stabgate::engine::sweep::{embedded_families, family_sweep, find_family, KPolicy, SweepOptions};

fn run(id: &str, l: usize, k: i64, allow_small: bool) -> Vec<stabgate::engine::sweep::SweepReport> {
    let mut spec = find_family(id).unwrap();
    if allow_small {
        spec.l_min = 1;
    }
    family_sweep(&spec, l..=l, KPolicy::Only(k), &SweepOptions::default()).unwrap()
}

#[test]
fn small_instances_certify() {
    for (id, l, k) in [("C:wedge2", 4, 2), ("B:sym2", 3, 2), ("A:sym2", 4, 3), ("A:twisted", 3, 2), ("A:adjoint", 3, 2)] {
        let reports = run(id, l, k, false);
        assert!(!reports.is_empty(), "{id}");
        assert!(reports.iter().all(|r| r.certified()), "{id} l={l}: {:?}", reports.iter().find(|r| !r.certified()));
    }
}

#[test]
fn known_exceptions_fail() {
    // Quadruples that are known to have non-trivial generic stabilizers.
    for (id, l, k) in [("A:wedge2", 5, 3), ("A:wedge2", 6, 2), ("C:wedge2", 3, 2), ("A:sym2", 3, 2), ("A:adjoint", 2, 1)] {
        let reports = run(id, l, k, true);
        assert!(reports.iter().any(|r| !r.certified()), "{id} l={l} k={k} should fail somewhere");
    }
}

#[test]
fn ranks_below_the_family_minimum_are_skipped() {
    let spec = find_family("C:wedge2").unwrap();
    assert!(family_sweep(&spec, 1..=3, KPolicy::Default, &SweepOptions::default()).unwrap().is_empty());
}

#[test]
fn module_dimensions_follow_the_characteristic() {
    // C5 ω2 drops by one when p divides 5.
    let reports = run("C:wedge2", 5, 2, false);
    for r in reports {
        assert_eq!(r.d, if r.p == "5" { 43 } else { 44 }, "p = {}", r.p);
    }
}

#[test]
fn families_are_well_formed() {
    let fams = embedded_families().unwrap();
    assert_eq!(fams.len(), 12);
    assert!(fams.iter().all(|f| f.l_min <= f.l_max && f.k0 >= 2));
    assert!(find_family("nope").is_err());
}
