use num::BigInt;
use stabgate::primes::Char;
use stabgate::rootsys::{Family, RootSystem};
use stabgate::weights::{embedded_tables, freudenthal, orbit_size_by_stabilizer, weight_table, weyl_dimension, weyl_orbit, SourcePolicy};

fn rs(f: Family, l: usize) -> RootSystem {
    RootSystem::build(f, l).unwrap()
}

fn fundamental(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i - 1] = 1;
    v
}

#[test]
fn familiar_module_dimensions() {
    let cases = [
        (Family::A, 5, fundamental(5, 2), 15),
        (Family::E, 6, fundamental(6, 1), 27),
        (Family::E, 7, fundamental(7, 7), 56),
        (Family::E, 8, fundamental(8, 8), 248),
        (Family::F, 4, fundamental(4, 4), 26),
        (Family::G, 2, fundamental(2, 1), 7),
        (Family::D, 5, fundamental(5, 5), 16),
        (Family::B, 4, fundamental(4, 4), 16),
    ];
    for (f, l, lambda, dim) in cases {
        assert_eq!(weyl_dimension(&rs(f, l), &lambda), BigInt::from(dim), "{f}{l} {lambda:?}");
    }
}

#[test]
fn freudenthal_sums_to_weyl_dimension() {
    for (f, l, lambda) in [
        (Family::A, 3, vec![1, 1, 0]),
        (Family::B, 3, vec![0, 0, 2]),
        (Family::C, 3, vec![0, 1, 0]),
        (Family::G, 2, vec![1, 1]),
        (Family::F, 4, vec![0, 0, 0, 1]),
        (Family::D, 4, vec![2, 0, 0, 0]),
    ] {
        let r = rs(f, l);
        let total: u64 = freudenthal(&r, &lambda).iter().map(|(mu, m)| orbit_size_by_stabilizer(&r, mu) as u64 * m).sum();
        assert_eq!(BigInt::from(total), weyl_dimension(&r, &lambda), "{f}{l} {lambda:?}");
    }
}

#[test]
fn orbit_enumeration_matches_stabilizer_count() {
    let r = rs(Family::E, 6);
    for i in 1..=6 {
        let mu = fundamental(6, i);
        assert_eq!(weyl_orbit(&r, &mu).unwrap().len() as u128, orbit_size_by_stabilizer(&r, &mu));
    }
}

#[test]
fn embedded_tables_are_consistent() {
    for t in embedded_tables().unwrap() {
        let r = rs(t.family, t.rank);
        t.check_orbits(&r).unwrap();
        if t.p_class().unwrap().contains_char(Char::Zero) {
            assert_eq!(BigInt::from(t.dim(Char::Zero)), weyl_dimension(&r, &t.lambda), "{}", t.id);
        }
    }
}

#[test]
fn e8_adjoint_keeps_full_dimension_at_two() {
    let r = rs(Family::E, 8);
    let t = weight_table(&r, &fundamental(8, 8), Some(Char::P(2)), SourcePolicy::AllowComputed).unwrap();
    assert_eq!(t.dim(Char::P(2)), 248);
}

#[test]
fn computed_tables_refuse_finite_characteristic() {
    // A2 adjoint loses a dimension at p = 3, which Freudenthal's formula
    // cannot see; without an embedded table only p = ∞ is answered.
    let r = rs(Family::A, 2);
    assert!(weight_table(&r, &[1, 1], Some(Char::P(3)), SourcePolicy::AllowComputed).is_err());
    let t = weight_table(&r, &[1, 1], None, SourcePolicy::AllowComputed).unwrap();
    assert_eq!(t.dim(Char::Zero), 8);
    assert!(weight_table(&r, &[1, 1], None, SourcePolicy::EmbeddedOnly).is_err());
}
