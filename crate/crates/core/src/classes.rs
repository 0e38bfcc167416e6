//! Conjugacy-class dimensions and the bounds compared against them.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::data;
use crate::error::{Error, Result};
use crate::natural::regular_partition;
use crate::primes::Char;
use crate::rootsys::{rootset_disjoint, rootset_from, Family, RootSet, RootSystem, Subsystem};

/// Coxeter number of an irreducible type.
pub fn coxeter_number(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank + 1,
        Family::B | Family::C => 2 * rank,
        Family::D => 2 * rank - 2,
        Family::E => match rank {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        Family::F => 12,
        Family::G => 6,
    }
}

/// Least prime for which a regular unipotent element of `psi` has order p.
pub fn min_prime_for_regular(psi: &Subsystem) -> u32 {
    let h = psi.components.iter().map(|c| {
        let (f, r) = c.cartan_type();
        coxeter_number(f, r)
    });
    let h = h.max().unwrap_or(1) as u32;
    (h.max(2)..).find(|&p| crate::primes::is_prime(p as u64)).expect("primes are unbounded")
}

#[derive(Deserialize)]
struct MrFile {
    exceptional: Vec<MrRow>,
}

#[derive(Deserialize)]
struct MrRow {
    #[serde(rename = "type")]
    family: Family,
    rank: usize,
    #[serde(rename = "M2")]
    m2: i64,
    #[serde(rename = "M3")]
    m3: i64,
    #[serde(rename = "M5")]
    m5: Option<i64>,
}

/// `M = |Φ|` together with the bounds `M_r` on `dim s^G` for `s` of prime
/// order `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub family: Family,
    pub rank: usize,
    pub dim_group: i64,
    pub m: i64,
    pub m2: i64,
    pub m3: i64,
    pub m5: Option<i64>,
}

impl BoundTable {
    pub fn new(rs: &RootSystem) -> Result<BoundTable> {
        let (family, l) = (rs.family(), rs.rank() as i64);
        let m = rs.num_roots() as i64;
        let dim_group = rs.dim_group() as i64;
        let (m2, m3, m5) = match family {
            Family::A => ((l + 1) * (l + 1) / 2, 2 * ((l + 1) * (l + 1) / 3), None),
            Family::B | Family::C => (l * (l + 1), 2 * (l * (2 * l + 1) / 3), None),
            Family::D => (2 * (l * l / 2), 2 * (l * (2 * l - 1) / 3), None),
            _ => {
                let f: MrFile = data::load_json("m_r.json")?;
                let row = f
                    .exceptional
                    .into_iter()
                    .find(|r| r.family == family && r.rank == rs.rank())
                    .ok_or_else(|| Error::DataMissing(format!("no M_r row for {}", rs.name())))?;
                (row.m2, row.m3, row.m5)
            }
        };
        let t = BoundTable { family, rank: rs.rank(), dim_group, m, m2, m3, m5 };
        for r in [2, 3, 5] {
            if let Some(v) = t.m_r(r) {
                if v > m || dim_group - v < rs.rank() as i64 {
                    return Err(Error::Data(format!("M_{r} = {v} is inconsistent for {}", rs.name())));
                }
            }
        }
        Ok(t)
    }

    /// `M_r` when known; `None` means only `M` is available.
    pub fn m_r(&self, r: u32) -> Option<i64> {
        match r {
            2 => Some(self.m2),
            3 => Some(self.m3),
            5 => self.m5,
            _ => None,
        }
    }

    /// Best available bound on `dim s^G` for `s` of order `r`.
    pub fn bound_for(&self, r: u32) -> i64 {
        self.m_r(r).unwrap_or(self.m)
    }

    /// `d_{Φ,r} = dim G − M_r`.
    pub fn d_phi(&self, r: u32) -> Option<i64> {
        self.m_r(r).map(|v| self.dim_group - v)
    }
}

/// `dim s^G = |Φ| − |Φ(s)|`.
pub fn dim_ss_class(rs: &RootSystem, phi_s: &Subsystem) -> i64 {
    rs.num_roots() as i64 - phi_s.len() as i64
}

/// A unipotent class, described in one of three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnipotentSpec {
    /// Regular in a subsystem subgroup. Exceptional groups look the label up;
    /// classical groups need the subsystem itself.
    Regular { label: String, psi: Option<Subsystem> },
    /// Jordan blocks on the natural module (type A in any characteristic,
    /// types B, C, D in odd characteristic).
    Partition(Vec<usize>),
    /// `W(1)^{a1} + W(2)^{a2} + V(2)^b` for types B, C, D in characteristic 2.
    P2 { a1: usize, a2: usize, b: usize },
}

impl UnipotentSpec {
    pub fn regular(label: &str, psi: Subsystem) -> UnipotentSpec {
        UnipotentSpec::Regular { label: label.to_string(), psi: Some(psi) }
    }

    pub fn label(&self) -> String {
        match self {
            UnipotentSpec::Regular { label, .. } => label.clone(),
            UnipotentSpec::Partition(b) => {
                let s: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("[{}]", s.join(","))
            }
            UnipotentSpec::P2 { a1, a2, b } => format!("W(1)^{a1}+W(2)^{a2}+V(2)^{b}"),
        }
    }
}

#[derive(Deserialize)]
struct UnipFile {
    classes: Vec<UnipRow>,
}

#[derive(Deserialize)]
struct UnipRow {
    #[serde(rename = "type")]
    family: Family,
    rank: usize,
    label: String,
    dim: i64,
    #[serde(default)]
    dim_p2: Option<i64>,
}

/// Normalise a class label: drop underscores, spaces and brackets, keep
/// primes and the short-root tilde, and spell `A1A1` style repeats as
/// exponents.
pub fn normalize_label(s: &str) -> String {
    let t: String = s.chars().filter(|c| !matches!(c, '_' | ' ' | '(' | ')' | '{' | '}')).collect();
    t.replace('³', "^3").replace('²', "^2").replace('\u{0303}', "")
}

fn exceptional_dim(family: Family, rank: usize, label: &str, p: Char) -> Result<i64> {
    let f: UnipFile = data::load_json("exceptional_unipotent_dims.json")?;
    let key = normalize_label(label);
    let row = f
        .classes
        .into_iter()
        .find(|r| r.family == family && r.rank == rank && normalize_label(&r.label) == key)
        .ok_or_else(|| Error::DataMissing(format!("no unipotent class {label} in {family}{rank}")))?;
    Ok(match (p, row.dim_p2) {
        (Char::P(2), Some(d)) => d,
        _ => row.dim,
    })
}

/// Dual partition: number of parts of size at least i, for i = 1, 2, ...
fn dual(blocks: &[usize]) -> Vec<i64> {
    let max = blocks.iter().copied().max().unwrap_or(0);
    (1..=max).map(|i| blocks.iter().filter(|&&b| b >= i).count() as i64).collect()
}

/// Checks a Jordan partition against the form on the natural module.
pub fn check_partition(family: Family, rank: usize, blocks: &[usize]) -> Result<()> {
    let n = match family {
        Family::A => rank + 1,
        Family::B => 2 * rank + 1,
        Family::C | Family::D => 2 * rank,
        _ => return Err(Error::Argument(format!("partitions describe classical classes, not {family}{rank}"))),
    };
    if blocks.iter().sum::<usize>() != n || blocks.contains(&0) {
        return Err(Error::Argument(format!("{blocks:?} is not a partition of {n}")));
    }
    let count = |s: usize| blocks.iter().filter(|&&b| b == s).count();
    let bad_parity = match family {
        Family::B | Family::D => 0,
        Family::C => 1,
        _ => return Ok(()),
    };
    for s in blocks.iter().copied().collect::<HashSet<_>>() {
        if s % 2 == bad_parity && count(s) % 2 == 1 {
            return Err(Error::Argument(format!("{blocks:?} is not a valid partition for type {family}")));
        }
    }
    Ok(())
}

/// `dim u^G` from Jordan blocks on the natural module.
pub fn partition_class_dim(family: Family, rank: usize, blocks: &[usize]) -> Result<i64> {
    check_partition(family, rank, blocks)?;
    let l = rank as i64;
    let mut sorted = blocks.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let n0: i64 = dual(&sorted).iter().map(|x| x * x).sum();
    let n1 = sorted.iter().filter(|&&b| b % 2 == 1).count() as i64;
    Ok(match family {
        Family::A => {
            let n = l + 1;
            let c: i64 = sorted.iter().enumerate().map(|(i, &b)| (2 * i as i64 + 1) * b as i64).sum();
            n * n - c
        }
        Family::B => (2 * l * l + l) - (n0 - n1) / 2,
        Family::D => (2 * l * l - l) - (n0 - n1) / 2,
        Family::C => (2 * l * l + l) - (n0 + n1) / 2,
        _ => unreachable!(),
    })
}

/// `dim u^G` for a characteristic-two class of type B, C or D.
pub fn p2_class_dim(family: Family, rank: usize, a1: usize, a2: usize, b: usize) -> Result<i64> {
    let l = rank as i64;
    let (y, b) = (a2 as i64, b as i64);
    let valid = a1 + 2 * a2 + b as usize == rank && b <= 2 && (a2 > 0 || b > 0);
    if !valid || (family == Family::D && b % 2 == 1) || !matches!(family, Family::B | Family::C | Family::D) {
        return Err(Error::Argument(format!(
            "W(1)^{a1}+W(2)^{a2}+V(2)^{b} is not a class of {family}{rank} in characteristic 2"
        )));
    }
    Ok(match (family, b) {
        (Family::D, 0) => 2 * y * (2 * l - 2 * y - 1),
        (Family::D, _) => (2 * y + 2) * (2 * l - 2 * y - 2),
        (_, 0) => 2 * y * (2 * l - 2 * y),
        (_, 1) => (2 * y + 1) * (2 * l - 2 * y),
        _ => (2 * y + 2) * (2 * l - 2 * y - 1),
    })
}

/// `dim u^G`, rejecting classes that do not consist of elements of order p.
pub fn dim_unip_class(rs: &RootSystem, spec: &UnipotentSpec, p: Char) -> Result<i64> {
    let (family, rank) = (rs.family(), rs.rank());
    match spec {
        UnipotentSpec::Regular { label, psi } => {
            if let (Some(psi), Char::P(q)) = (psi, p) {
                let need = min_prime_for_regular(psi);
                if q < need {
                    return Err(Error::Infeasible(format!("a regular element of {label} has order p only for p ≥ {need}")));
                }
            }
            if !family.is_classical() {
                return exceptional_dim(family, rank, label, p);
            }
            if p == Char::P(2) && family != Family::A {
                return Err(Error::Argument("use the W/V notation for characteristic 2".into()));
            }
            let psi = psi
                .as_ref()
                .ok_or_else(|| Error::Argument(format!("classical class {label} needs its subsystem")))?;
            let base: Vec<usize> = psi.components.iter().flat_map(|c| c.simple.iter().copied()).collect();
            let blocks = regular_partition(rs, &base)?;
            partition_class_dim(family, rank, &blocks)
        }
        UnipotentSpec::Partition(blocks) => {
            if p == Char::P(2) && family != Family::A {
                return Err(Error::Argument("use the W/V notation for characteristic 2".into()));
            }
            if let Char::P(q) = p {
                if blocks.iter().any(|&b| b > q as usize) {
                    return Err(Error::Infeasible(format!("blocks {blocks:?} exceed p = {q}")));
                }
            }
            partition_class_dim(family, rank, blocks)
        }
        UnipotentSpec::P2 { a1, a2, b } => {
            if p != Char::P(2) {
                return Err(Error::Infeasible("W/V notation describes characteristic 2 only".into()));
            }
            p2_class_dim(family, rank, *a1, *a2, *b)
        }
    }
}

/// Least size of a closed subsystem meeting every conjugate of `psi`, from
/// the closed-form values in type A.
pub fn m_psi_formula(rs: &RootSystem, psi: &Subsystem) -> Option<i64> {
    if rs.family() != Family::A {
        return None;
    }
    let l = rs.rank() as i64;
    let types = psi.cartan_types();
    let a1 = (Family::A, 1);
    let a2 = (Family::A, 2);
    match types.as_slice() {
        [x, y] if *x == a1 && *y == a1 && l >= 3 => Some(l * (l - 1)),
        [x, y, z] if [x, y, z].iter().all(|t| **t == a1) && l >= 5 => Some((l - 1) * (l - 2)),
        [x] if *x == a2 && l >= 2 => Some(l * l / 2),
        [x, y, z] if *x == a1 && *y == a1 && *z == a2 && l >= 9 => Some(l * l / 2),
        _ => None,
    }
}

/// Every closed subsystem of `rs`, found by repeatedly adjoining a root and
/// closing. Only sensible for small ranks.
pub fn closed_subsystems(rs: &RootSystem, cap: usize) -> Result<Vec<Vec<usize>>> {
    let pos: Vec<usize> = rs.positive().collect();
    let mut seen: HashSet<RootSet> = HashSet::new();
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    seen.insert(rootset_from([]));
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    while let Some(cur) = frontier.pop() {
        for &a in &pos {
            if cur.contains(&a) {
                continue;
            }
            let mut gens = cur.clone();
            gens.push(a);
            let sub = rs.subsystem(&gens);
            let key = sub.rootset();
            if seen.insert(key) {
                if out.len() >= cap {
                    return Err(Error::Resource { cap, partial: out.len() });
                }
                out.push(sub.roots.clone());
                frontier.push(sub.roots.clone());
            }
        }
    }
    Ok(out)
}

/// `m_Ψ` by exhaustive search over closed subsystems.
pub fn m_psi_search(rs: &RootSystem, psi: &Subsystem, cap: usize) -> Result<i64> {
    let conj = rs.conjugates(&psi.roots, cap)?;
    let mut subs = closed_subsystems(rs, cap)?;
    subs.sort_by_key(|s| s.len());
    for s in subs {
        let set = rootset_from(s.iter().copied());
        if conj.iter().all(|c| !rootset_disjoint(c, &set)) {
            return Ok(s.len() as i64);
        }
    }
    Err(Error::Internal("the full root system meets every conjugate".into()))
}

/// `m_Ψ`: the closed form where one exists, otherwise a search.
pub fn m_psi(rs: &RootSystem, psi: &Subsystem, cap: usize) -> Result<i64> {
    if let Some(v) = m_psi_formula(rs, psi) {
        return Ok(v);
    }
    if rs.rank() <= 6 {
        return m_psi_search(rs, psi, cap);
    }
    Err(Error::Argument(format!("no value of m_Ψ for {} in {}", psi.label(), rs.name())))
}

/// Whether some W-conjugate of `psi` avoids `phi_s`.
pub fn disjoint_conjugate_exists(rs: &RootSystem, psi: &Subsystem, phi_s: &Subsystem, cap: usize) -> Result<bool> {
    let target = phi_s.rootset();
    if psi.is_empty() {
        return Ok(true);
    }
    let conj = rs.conjugates(&psi.roots, cap)?;
    Ok(conj.iter().any(|c| rootset_disjoint(c, &target)))
}

/// Dominance order on partitions of the same size.
pub fn dominates(bigger: &[usize], smaller: &[usize]) -> bool {
    let mut a = bigger.to_vec();
    let mut b = smaller.to_vec();
    a.sort_by(|x, y| y.cmp(x));
    b.sort_by(|x, y| y.cmp(x));
    if a.iter().sum::<usize>() != b.iter().sum::<usize>() {
        return false;
    }
    let (mut sa, mut sb) = (0, 0);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Where a fact came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Embedded,
    Trusted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Closure {
    Holds(Provenance),
    Fails,
    Unknown,
}

#[derive(Deserialize)]
struct ClosureFile {
    facts: Vec<ClosureFact>,
}

#[derive(Clone, Debug, Deserialize)]
struct ClosureFact {
    #[serde(rename = "type")]
    family: Family,
    rank: usize,
    smaller: String,
    #[serde(default)]
    bigger: Option<String>,
    /// The fact covers every class of at least this dimension.
    #[serde(default)]
    min_dim: Option<i64>,
    /// Characteristics the fact is stated for.
    #[serde(default)]
    p: Option<String>,
}

fn natural_partition(rs: &RootSystem, spec: &UnipotentSpec) -> Result<Vec<usize>> {
    match spec {
        UnipotentSpec::Partition(b) => Ok(b.clone()),
        UnipotentSpec::Regular { psi: Some(psi), .. } => {
            let base: Vec<usize> = psi.components.iter().flat_map(|c| c.simple.iter().copied()).collect();
            regular_partition(rs, &base)
        }
        _ => Err(Error::Argument(format!("no natural-module partition for {}", spec.label()))),
    }
}

/// Whether the closure of `bigger` contains `smaller`. Classical groups use
/// dominance of natural-module partitions; exceptional groups consult the
/// embedded list of closure facts.
pub fn closure_contains(rs: &RootSystem, bigger: &UnipotentSpec, smaller: &UnipotentSpec, p: Char) -> Result<Closure> {
    if bigger == smaller {
        return Ok(Closure::Holds(Provenance::Computed));
    }
    if rs.family().is_classical() {
        if let (UnipotentSpec::P2 { .. }, _) | (_, UnipotentSpec::P2 { .. }) = (bigger, smaller) {
            return Ok(Closure::Unknown);
        }
        let a = natural_partition(rs, bigger)?;
        let b = natural_partition(rs, smaller)?;
        return Ok(if dominates(&a, &b) { Closure::Holds(Provenance::Computed) } else { Closure::Fails });
    }
    let f: ClosureFile = data::load_json("closure_facts.json")?;
    let big = normalize_label(&bigger.label());
    let small = normalize_label(&smaller.label());
    let big_dim = dim_unip_class(rs, bigger, p).ok();
    for fact in f.facts.iter().filter(|f| f.family == rs.family() && f.rank == rs.rank()) {
        if normalize_label(&fact.smaller) != small {
            continue;
        }
        let by_label = fact.bigger.as_deref().map(normalize_label) == Some(big.clone());
        let by_dim = matches!((fact.min_dim, big_dim), (Some(m), Some(d)) if d >= m);
        if by_label || by_dim {
            return Ok(Closure::Holds(Provenance::Trusted));
        }
    }
    Ok(Closure::Unknown)
}

/// Eigenvalue pattern of a semisimple element on the natural module:
/// `m[j]` coordinates take the value `ξ·η^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPartition {
    pub m: Vec<i64>,
}

/// Number of unordered pairs of coordinates whose exponents add up to
/// `t` modulo r.
fn pair_count(m: &[i64], t: usize) -> i64 {
    let r = m.len();
    let mut total = 0;
    for a in 0..r {
        for b in a..r {
            if (a + b) % r != t % r {
                continue;
            }
            total += if a == b { m[a] * (m[a] - 1) / 2 } else { m[a] * m[b] };
        }
    }
    total
}

/// `δ = dim L(G)_1(s) − dim L(G)_η(s)` for a semisimple element of order
/// `r` in a classical group, as a polynomial in the eigenvalue counts.
pub fn eigenspace_gap(family: Family, rank: usize, r: u32, part: &EigenPartition) -> Result<i64> {
    let r = r as usize;
    if !crate::primes::is_prime(r as u64) || part.m.len() != r || part.m.iter().any(|&x| x < 0) {
        return Err(Error::Argument(format!("need {r} non-negative counts for prime r")));
    }
    if family != Family::A && r == 2 {
        return Err(Error::Argument(format!("r = 2 is bad for type {family}")));
    }
    let total: i64 = part.m.iter().sum();
    let l = rank as i64;
    let expected = if family == Family::A { l + 1 } else { l };
    if total != expected {
        return Err(Error::Argument(format!("counts sum to {total}, expected {expected}")));
    }
    let m = &part.m;
    let diag: i64 = m.iter().map(|x| x * (x - 1)).sum();
    let cyclic: i64 = (0..r).map(|j| m[j] * m[(j + 1) % r]).sum();
    let (one, eta) = match family {
        Family::A => (diag + l, cyclic),
        Family::B | Family::C | Family::D => {
            // ±(ε_i + ε_j) contribute pairs summing to 0 for the fixed part
            // and to ±1 for the η-part.
            let mut one = diag + 2 * pair_count(m, 0) + l;
            let mut eta = cyclic + pair_count(m, 1) + pair_count(m, r - 1);
            match family {
                Family::B => {
                    one += 2 * m[0];
                    eta += m[1] + m[r - 1];
                }
                Family::C => {
                    one += 2 * m[0];
                    eta += m[(r + 1) / 2] + m[(r - 1) / 2];
                }
                _ => {}
            }
            (one, eta)
        }
        _ => return Err(Error::Argument(format!("type {family} is not classical"))),
    };
    Ok(one - eta)
}

/// Centralizer root systems of elements of prime order, read off the
/// extended Dynkin diagram: node 0 is `−θ` with coefficient 1, node `i` is
/// `α_i` with the coefficient of `α_i` in `θ`.
#[derive(Clone, Debug)]
pub struct KacSubset {
    /// Nodes kept (0 is the extended node).
    pub nodes: Vec<usize>,
    pub phi: Subsystem,
}

/// Coefficients of the extended diagram, starting with 1 for node 0.
pub fn kac_coefficients(rs: &RootSystem) -> Vec<i64> {
    let mut c = vec![1];
    c.extend_from_slice(rs.root(rs.highest_root()));
    c
}

/// Whether some prime in `class` is `Σ c_i a_i` over the removed nodes with
/// every `a_i ≥ 1`. Primes up to [`KAC_SEARCH_LIMIT`] are tested directly;
/// beyond that, the values form every large enough multiple of the gcd.
pub fn kac_realizable(coeffs: &[i64], removed: &[usize], class: &crate::primes::PrimeClass) -> bool {
    if removed.is_empty() {
        return false;
    }
    let cs: Vec<i64> = removed.iter().map(|&i| coeffs[i]).collect();
    let base: i64 = cs.iter().sum();
    let limit = KAC_SEARCH_LIMIT as i64;
    let mut reach = vec![false; (limit + 1) as usize];
    if base <= limit {
        reach[base as usize] = true;
        for v in base..=limit {
            if reach[v as usize] {
                for &c in &cs {
                    if v + c <= limit {
                        reach[(v + c) as usize] = true;
                    }
                }
            }
        }
    }
    let small = (2..=limit).any(|r| reach[r as usize] && crate::primes::is_prime(r as u64) && class.contains(r as u32));
    if small {
        return true;
    }
    let g = cs.iter().fold(0, |a, &b| num::integer::gcd(a, b));
    g == 1 && class.eq.is_none() && class.max.map_or(true, |m| m as i64 > limit)
}

pub const KAC_SEARCH_LIMIT: u32 = 97;

/// Every proper subset of the extended diagram with its root subsystem.
pub fn kac_subsets(rs: &RootSystem) -> Vec<KacSubset> {
    let n = rs.rank() + 1;
    let node_root = |i: usize| if i == 0 { rs.negate(rs.highest_root()) } else { rs.simple(i - 1) };
    (0u32..(1 << n) - 1)
        .map(|mask| {
            let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let gens: Vec<usize> = nodes.iter().map(|&i| node_root(i)).collect();
            KacSubset { phi: rs.subsystem(&gens), nodes }
        })
        .collect()
}

/// Checks that for every element of prime order in `rclass` whose
/// centralizer has at most `bound` roots, some conjugate of one of `psis`
/// avoids the centralizer's roots. Returns the offending subsystem label on
/// failure.
pub fn disjoint_below(
    rs: &RootSystem,
    psis: &[Subsystem],
    rclass: &crate::primes::PrimeClass,
    bound: i64,
    cap: usize,
) -> Result<std::result::Result<(), String>> {
    let coeffs = kac_coefficients(rs);
    let conj: Vec<Vec<RootSet>> = psis.iter().map(|p| rs.conjugates(&p.roots, cap)).collect::<Result<_>>()?;
    for k in kac_subsets(rs) {
        if k.phi.len() as i64 > bound {
            continue;
        }
        let removed: Vec<usize> = (0..coeffs.len()).filter(|i| !k.nodes.contains(i)).collect();
        if !kac_realizable(&coeffs, &removed, rclass) {
            continue;
        }
        let target = k.phi.rootset();
        if !conj.iter().flatten().any(|c| rootset_disjoint(c, &target)) {
            return Ok(Err(k.phi.label()));
        }
    }
    Ok(Ok(()))
}

/// All partitions of `n` with parts at most `max_part`, parts decreasing.
pub fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// Unipotent classes of a classical group consisting of elements of order p
/// (all non-identity classes when p = ∞), as natural-module partitions.
/// Characteristic 2 outside type A is not covered.
pub fn classical_unipotent_classes(family: Family, rank: usize, p: Char) -> Result<Vec<Vec<usize>>> {
    if p == Char::P(2) && family != Family::A {
        return Err(Error::Argument("characteristic-two classes use the W/V notation".into()));
    }
    let n = match family {
        Family::A => rank + 1,
        Family::B => 2 * rank + 1,
        Family::C | Family::D => 2 * rank,
        _ => return Err(Error::Argument(format!("type {family} is not classical"))),
    };
    let max = p.prime().map_or(n, |q| (q as usize).min(n));
    Ok(partitions(n, max)
        .into_iter()
        .filter(|b| b[0] > 1 && check_partition(family, rank, b).is_ok())
        .collect())
}

/// Outcome of "every class of dimension at least `min_dim` has one of the
/// given classes in its closure".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureCheck {
    Holds(Provenance),
    /// A class violating the claim.
    Fails(String),
    /// Neither computable nor covered by an embedded fact.
    Unknown,
}

/// Involution classes `W(1)^a1+W(2)^a2+V(2)^b` of a classical group in
/// characteristic 2: `u − 1` has rank `k = 2·a2 + b`, and `b = 0` exactly
/// when the form vanishes on its image. Both are closed conditions, and the
/// class with `b > 0` is dense among those of rank at most k, so `(k, b)`
/// contains `(k′, b′)` in its closure iff `k′ ≤ k` and `b = 0 ⇒ b′ = 0`.
fn involution_closure_above(family: Family, rank: usize, min_dim: i64, targets: &[UnipotentSpec]) -> Result<ClosureCheck> {
    let mut want = Vec::new();
    for t in targets {
        match t {
            UnipotentSpec::P2 { a2, b, .. } => want.push((2 * a2 + b, *b)),
            other => {
                return Err(Error::Argument(format!("{} is not in the characteristic-two notation", other.label())))
            }
        }
    }
    for b in 0..=2usize {
        for a2 in 0..=rank / 2 {
            if 2 * a2 + b > rank || (a2 == 0 && b == 0) || (family == Family::D && b % 2 == 1) {
                continue;
            }
            let a1 = rank - 2 * a2 - b;
            if p2_class_dim(family, rank, a1, a2, b)? < min_dim {
                continue;
            }
            let k = 2 * a2 + b;
            if !want.iter().any(|&(k2, b2)| k2 <= k && (b > 0 || b2 == 0)) {
                return Ok(ClosureCheck::Fails(UnipotentSpec::P2 { a1, a2, b }.label()));
            }
        }
    }
    Ok(ClosureCheck::Holds(Provenance::Computed))
}

/// Verify a closure claim over all classes of order p with `dim ≥ min_dim`.
pub fn closure_above(
    rs: &RootSystem,
    min_dim: i64,
    targets: &[UnipotentSpec],
    names: &[&str],
    p: Char,
) -> Result<ClosureCheck> {
    let family = rs.family();
    if p == Char::P(2) && matches!(family, Family::B | Family::C | Family::D) {
        return involution_closure_above(family, rs.rank(), min_dim, targets);
    }
    let computable = family.is_classical() && (family == Family::A || p != Char::P(2));
    if computable {
        let target_parts: Vec<Vec<usize>> = targets.iter().map(|t| natural_partition(rs, t)).collect::<Result<_>>()?;
        for b in classical_unipotent_classes(family, rs.rank(), p)? {
            if partition_class_dim(family, rs.rank(), &b)? < min_dim {
                continue;
            }
            if !target_parts.iter().any(|t| dominates(&b, t)) {
                return Ok(ClosureCheck::Fails(UnipotentSpec::Partition(b).label()));
            }
        }
        return Ok(ClosureCheck::Holds(Provenance::Computed));
    }
    let f: ClosureFile = data::load_json("closure_facts.json")?;
    let names: Vec<String> =
        targets.iter().map(|t| normalize_label(&t.label())).chain(names.iter().map(|n| normalize_label(n))).collect();
    let covered = f.facts.iter().any(|fact| {
        fact.family == family
            && fact.rank == rs.rank()
            && names.contains(&normalize_label(&fact.smaller))
            && fact.min_dim.is_some_and(|m| m <= min_dim)
            && fact.p.as_deref().map_or(true, |c| crate::primes::PrimeClass::parse(c).is_ok_and(|c| c.contains_char(p)))
    });
    Ok(if covered { ClosureCheck::Holds(Provenance::Trusted) } else { ClosureCheck::Unknown })
}
