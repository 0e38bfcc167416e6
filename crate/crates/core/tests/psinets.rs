use stabgate::primes::Char;
use stabgate::psinets::{NetTable, PsiBase};
use stabgate::rootsys::{Family, RootSystem};
use stabgate::weights::{weight_table, SourcePolicy};

fn table(f: Family, l: usize, lambda: &[i64], simple: &[usize], p: Char) -> NetTable {
    let rs = RootSystem::build(f, l).unwrap();
    let t = weight_table(&rs, lambda, Some(p), SourcePolicy::EmbeddedOnly).unwrap();
    let psi = PsiBase::standard(&rs, simple).unwrap();
    NetTable::build(&rs, &t, &psi).unwrap()
}

#[test]
fn a5_wedge_square_single_root() {
    let t = table(Family::A, 5, &[0, 1, 0, 0, 0], &[1], Char::Zero);
    let m: Vec<usize> = t.groups.iter().map(|g| g.m).collect();
    assert_eq!(m, vec![4, 7]);
    for p in [Char::P(2), Char::P(3), Char::Zero] {
        assert_eq!(t.c_ss(2, p), 4);
        assert_eq!(t.c_u(p).unwrap(), 4);
    }
}

#[test]
fn e6_minuscule_two_roots() {
    let t = table(Family::E, 6, &[1, 0, 0, 0, 0, 0], &[1, 4], Char::Zero);
    assert_eq!(t.c_ss(3, Char::Zero), 10);
    assert_eq!(t.c_u(Char::P(5)).unwrap(), 10);
    let labels: Vec<&str> = t.groups.iter().map(|g| g.label.as_str()).collect();
    assert_eq!(labels, vec!["w1+w4", "w1", "w4", "0"]);
}

#[test]
fn e8_adjoint_unipotent_column_depends_on_p() {
    for (p, cu) in [(Char::P(2), 57), (Char::P(3), 58), (Char::Zero, 58)] {
        let t = table(Family::E, 8, &[0, 0, 0, 0, 0, 0, 0, 1], &[1], p);
        assert_eq!(t.c_ss(2, p), 58);
        assert_eq!(t.c_u(p).unwrap(), cu, "p = {p}");
    }
}

#[test]
fn nets_partition_every_orbit() {
    let rs = RootSystem::build(Family::F, 4).unwrap();
    let t = weight_table(&rs, &[0, 0, 0, 1], Some(Char::Zero), SourcePolicy::EmbeddedOnly).unwrap();
    for simple in [vec![1], vec![4], vec![2, 3], vec![1, 2, 3]] {
        let psi = PsiBase::standard(&rs, &simple).unwrap();
        let nets = NetTable::build(&rs, &t, &psi).unwrap();
        let want = t.rows.iter().map(|r| (r.i, r.orbit)).collect();
        assert_eq!(nets.orbit_totals(), want, "Ψ = {simple:?}");
    }
}

#[test]
fn bad_psi_rejected() {
    let rs = RootSystem::build(Family::A, 3).unwrap();
    assert!(PsiBase::standard(&rs, &[4]).is_err());
    assert!(PsiBase::standard(&rs, &[0]).is_err());
}
