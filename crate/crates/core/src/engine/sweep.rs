//! Family sweeps: for a family of modules built from the natural module of a
//! classical group, enumerate semisimple and unipotent elements directly and
//! check `B_{d,k} > dim g^G` for each.
//!
//! Semisimple elements of projective prime order r are diagonal with
//! eigenvalue exponents in Z/r on the natural module (Z/4 for the
//! square-root-of-minus-one elements when r = 2). Every exponent pattern is
//! enumerated for each prime r ≠ p up to a cost cap, and integral patterns
//! of small span stand in for the large primes. Unipotent elements of order p
//! are built as explicit matrices over F_p and their Jordan blocks on V are
//! computed by rank.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{codim_fixed_grassmann, ElementSpec};
use crate::classes::{classical_unipotent_classes, p2_class_dim, partition_class_dim};
use crate::data;
use crate::error::{Error, Result};
use crate::linalg::mod_inverse;
use crate::natural::{identity, mat_mul, subquotient_jordan, Mat};
use crate::primes::{is_prime, Char, PrimeClass};
use crate::rootsys::Family;

/// How V is built from the natural module N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Module {
    /// `N ⊗ N*` modulo scalars, cut down to trace zero.
    Gl,
    /// `N ⊗ N*` with the second factor twisted by q.
    GlTwisted,
    /// `N ⊗ N` with the second factor twisted by q.
    Tensor,
    Wedge2,
    Sym2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: String,
    #[serde(rename = "type")]
    pub family: Family,
    pub module: Module,
    pub lambda: String,
    pub l_min: usize,
    /// Default upper end of the rank range.
    pub l_max: usize,
    pub p: String,
    pub k0: i64,
    /// Twisting exponents; p is then the prime of which q is a power.
    #[serde(default)]
    pub q: Vec<u32>,
    /// Computed on the group of this type instead, through an isogeny that
    /// preserves class dimensions and the module.
    #[serde(default)]
    pub via: Option<Family>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct FamilyFile {
    families: Vec<FamilySpec>,
}

pub fn embedded_families() -> Result<Vec<FamilySpec>> {
    let f: FamilyFile = data::load_json("families.json")?;
    Ok(f.families)
}

pub fn find_family(id: &str) -> Result<FamilySpec> {
    embedded_families()?
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::DataMissing(format!("no family {id:?}")))
}

/// Which k to check at each instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KPolicy {
    /// `k0` and, when it fits, `k0 + 1`.
    Default,
    Only(i64),
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// Exponent patterns allowed per prime before larger primes are skipped.
    pub pattern_cap: usize,
    /// Largest prime order enumerated.
    pub max_order: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { pattern_cap: 200_000, max_order: 61 }
    }
}

/// Outcome for one rank, characteristic and k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub family: String,
    pub group: String,
    pub p: String,
    pub q: Option<u32>,
    pub k: i64,
    pub d: i64,
    /// Distinct (eigenspace tuple, class dimension) pairs checked.
    pub semisimple: usize,
    pub unipotent: usize,
    /// Largest prime order enumerated; larger orders are represented by the
    /// integral patterns.
    pub r_max: u32,
    pub min_margin: i64,
    pub worst: String,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn certified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Weights of N in ε-coordinates: `(coordinate, sign)`, or `None` for 0.
fn natural_weights(family: Family, rank: usize) -> Vec<Option<(usize, i64)>> {
    match family {
        Family::A => (0..=rank).map(|i| Some((i, 1))).collect(),
        _ => {
            let mut w: Vec<_> = (0..rank).flat_map(|i| [Some((i, 1)), Some((i, -1))]).collect();
            if family == Family::B {
                w.push(None);
            }
            w
        }
    }
}

/// The pairs of N-weights spanning the ambient module, with the coefficient
/// on the second factor.
fn ambient_pairs(module: Module, n: usize, q: i64) -> (Vec<(usize, usize)>, i64) {
    let all = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    match module {
        Module::Gl => (all(), -1),
        Module::GlTwisted => (all(), -q),
        Module::Tensor => (all(), q),
        Module::Wedge2 => ((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect(), 1),
        Module::Sym2 => ((0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect(), 1),
    }
}

/// Whether V is the subquotient `ker c / (⟨ω⟩ ∩ ker c)` of the ambient module,
/// and the value whose divisibility by p puts ω in `ker c`.
fn invariant_pairing(family: Family, rank: usize, module: Module) -> Option<i64> {
    let l = rank as i64;
    match (family, module) {
        (Family::A, Module::Gl) => Some(l + 1),
        (Family::B, Module::Sym2) => Some(2 * l + 1),
        (Family::D, Module::Sym2) | (Family::C, Module::Wedge2) => Some(l),
        _ => None,
    }
}

fn zeta(p: Char, n: i64) -> i64 {
    i64::from(p.divides(n))
}

/// Number of zero weights removed from the ambient module at p.
fn zero_correction(family: Family, rank: usize, module: Module, p: Char) -> i64 {
    invariant_pairing(family, rank, module).map_or(0, |n| 1 + zeta(p, n))
}

/// Eigenvalue data of one semisimple element: exponent histogram of the
/// ambient module and its class dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct SsEntry {
    /// Eigenspace dimensions other than the one holding the zero weights.
    others: Vec<i64>,
    /// Dimension of the eigenspace holding the zero weights.
    zero: i64,
    class_dim: i64,
}

struct SsModel {
    family: Family,
    rank: usize,
    nat: Vec<Option<(usize, i64)>>,
    pairs: Vec<(usize, usize)>,
    second: i64,
}

impl SsModel {
    fn new(family: Family, rank: usize, module: Module, q: i64) -> SsModel {
        let nat = natural_weights(family, rank);
        let (pairs, second) = ambient_pairs(module, nat.len(), q);
        SsModel { family, rank, nat, pairs, second }
    }

    fn coords(&self) -> usize {
        if self.family == Family::A {
            self.rank + 1
        } else {
            self.rank
        }
    }

    /// `modulus == 0` means integral exponents.
    fn entry(&self, a: &[i64], modulus: i64) -> Option<SsEntry> {
        let red = |x: i64| if modulus == 0 { x } else { x.rem_euclid(modulus) };
        let nat_exp: Vec<i64> = self.nat.iter().map(|w| w.map_or(0, |(i, s)| s * a[i])).collect();
        let class_dim = self.class_dim(a, modulus);
        if class_dim == 0 {
            return None;
        }
        let mut exps: Vec<i64> = self.pairs.iter().map(|&(x, y)| red(nat_exp[x] + self.second * nat_exp[y])).collect();
        exps.sort_unstable();
        // Zero weights always land in the exponent-0 eigenspace.
        let mut zero = 0;
        let mut others = Vec::new();
        for run in exps.chunk_by(|x, y| x == y) {
            if run[0] == 0 {
                zero = run.len() as i64;
            } else {
                others.push(run.len() as i64);
            }
        }
        others.sort_unstable_by(|x, y| y.cmp(x));
        Some(SsEntry { others, zero, class_dim })
    }

    fn class_dim(&self, a: &[i64], modulus: i64) -> i64 {
        let nz = |x: i64| if modulus == 0 { x != 0 } else { x.rem_euclid(modulus) != 0 };
        let n = self.coords();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                match self.family {
                    Family::A => count += 2 * i64::from(nz(a[i] - a[j])),
                    _ => count += 2 * (i64::from(nz(a[i] - a[j])) + i64::from(nz(a[i] + a[j]))),
                }
            }
            match self.family {
                Family::B => count += 2 * i64::from(nz(a[i])),
                Family::C => count += 2 * i64::from(nz(2 * a[i])),
                _ => {}
            }
        }
        count
    }
}

/// Compositions of `n` into `slots` parts, in lexicographic order.
fn compositions(n: usize, slots: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(rem: usize, i: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            f(cur);
            return;
        }
        for x in (0..=rem).rev() {
            cur[i] = x;
            go(rem - x, i + 1, cur, f);
        }
    }
    if slots == 0 {
        return;
    }
    go(n, 0, &mut vec![0; slots], f);
}

fn binomial(n: usize, k: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// Values that exponents take, up to the Weyl group and scalars, for
/// modulus `m` (0 for integral patterns with the given span).
fn exponent_values(family: Family, m: i64, span: i64) -> Vec<i64> {
    match (family, m) {
        (_, 0) => (0..span).collect(),
        (Family::A, _) => (0..m).collect(),
        (_, 2) => vec![0, 1],
        // Odd orders: a and −a are conjugate under sign changes.
        _ => (0..=(m - 1) / 2).collect(),
    }
}

/// Semisimple data per prime order, plus the integral patterns under key 0.
struct SsCatalogue {
    by_order: BTreeMap<u32, BTreeSet<SsEntry>>,
    r_max: u32,
}

fn semisimple_catalogue(model: &SsModel, opts: &SweepOptions) -> SsCatalogue {
    let n = model.coords();
    let mut by_order = BTreeMap::new();
    let collect = |m: i64, values: &[i64]| {
        let mut set = BTreeSet::new();
        let mut a = Vec::with_capacity(n);
        compositions(n, values.len(), &mut |counts| {
            a.clear();
            for (v, &c) in values.iter().zip(counts) {
                a.extend(std::iter::repeat(*v).take(c));
            }
            if let Some(e) = model.entry(&a, m) {
                set.insert(e);
            }
        });
        set
    };
    let mut r_max = 0;
    for r in (2u32..).filter(|&r| is_prime(u64::from(r))) {
        let values = exponent_values(model.family, i64::from(r), 0);
        if r > opts.max_order || r > 2 && binomial(n + values.len() - 1, n) > opts.pattern_cap {
            break;
        }
        let mut set = collect(i64::from(r), &values);
        if r == 2 && model.family != Family::A && model.family != Family::B {
            // Square roots of −1: every coordinate is ±i.
            let a = vec![1; n];
            set.extend(model.entry(&a, 4));
        }
        by_order.insert(r, set);
        r_max = r;
    }
    let span = n as i64;
    let values = exponent_values(model.family, 0, span);
    if binomial(n + values.len() - 1, n) <= opts.pattern_cap {
        by_order.insert(0, collect(0, &values));
    }
    SsCatalogue { by_order, r_max }
}

/// Unipotent class: its description, dimension and Jordan blocks on V.
struct UnipotentCase {
    label: String,
    class_dim: i64,
    blocks: Vec<usize>,
}

fn jordan_block(m: usize) -> Mat {
    let mut x = vec![vec![0; m]; m];
    for i in 0..m.saturating_sub(1) {
        x[i + 1][i] = 1;
    }
    x
}

fn block_diag(blocks: &[Mat]) -> Mat {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[off + i][off + j] = v;
            }
        }
        off += b.len();
    }
    out
}

/// A nilpotent matrix of the given Jordan type, skew for a form of the given
/// symmetry (`eps = 1` symmetric, `-1` alternating), together with that form.
fn skew_nilpotent(blocks: &[usize], eps: i64) -> (Mat, Mat) {
    let mut xs = Vec::new();
    let mut forms = Vec::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &b in blocks {
        *counts.entry(b).or_default() += 1;
    }
    for (&m, &c) in counts.iter().rev() {
        // Blocks of size m carry a form of symmetry (−1)^(m−1) on their own.
        let own = if m % 2 == 1 { 1 } else { -1 };
        let sign = |i: usize| if i % 2 == 0 { 1 } else { -1 };
        if own == eps {
            for _ in 0..c {
                xs.push(jordan_block(m));
                let mut f = vec![vec![0; m]; m];
                for i in 0..m {
                    f[i][m - 1 - i] = sign(i);
                }
                forms.push(f);
            }
        } else {
            for _ in 0..c / 2 {
                xs.push(block_diag(&[jordan_block(m), jordan_block(m)]));
                let mut f = vec![vec![0; 2 * m]; 2 * m];
                for i in 0..m {
                    f[i][m + (m - 1 - i)] = sign(i);
                    f[m + (m - 1 - i)][i] = eps * sign(i);
                }
                forms.push(f);
            }
        }
    }
    (block_diag(&xs), block_diag(&forms))
}

/// `exp(X)` truncated below `p`, valid when `X^p = 0`.
fn exp_mod_p(x: &Mat, p: u64) -> Mat {
    let n = x.len();
    let mut out = identity(n);
    let mut power = identity(n);
    let pi = p as i64;
    let mut fact = 1i64;
    for j in 1..p {
        power = mat_mul(&power, x, p);
        if power.iter().all(|r| r.iter().all(|&v| v == 0)) {
            break;
        }
        fact = fact * j as i64 % pi;
        let inv = mod_inverse(fact, pi);
        for (orow, prow) in out.iter_mut().zip(&power) {
            for (o, v) in orow.iter_mut().zip(prow) {
                *o = (*o + v * inv).rem_euclid(pi);
            }
        }
    }
    out
}

fn inverse_unipotent(u: &Mat, p: u64) -> Mat {
    // u = 1 + N with N nilpotent: u⁻¹ = Σ (−N)^i.
    let n = u.len();
    let pi = p as i64;
    let neg: Mat = (0..n).map(|i| (0..n).map(|j| (i64::from(i == j) - u[i][j]).rem_euclid(pi)).collect()).collect();
    let mut out = identity(n);
    let mut power = identity(n);
    for _ in 0..n {
        power = mat_mul(&power, &neg, p);
        for (orow, prow) in out.iter_mut().zip(&power) {
            for (o, v) in orow.iter_mut().zip(prow) {
                *o = (*o + v).rem_euclid(pi);
            }
        }
    }
    out
}

/// Action of `u` on the ambient module, with the pairing `c` and the
/// invariant vector `ω` when V is a subquotient.
fn ambient_action(u: &Mat, form: Option<&Mat>, module: Module, pairing: bool, p: u64) -> (Mat, Option<(Vec<i64>, Vec<i64>)>) {
    let n = u.len();
    let pi = p as i64;
    let (pairs, _) = ambient_pairs(module, n, 1);
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let uinv = matches!(module, Module::Gl | Module::GlTwisted).then(|| inverse_unipotent(u, p));
    let dim = pairs.len();
    let mut act = vec![vec![0i64; dim]; dim];
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let coef = match &uinv {
                    // E_ij ↦ u E_ij u⁻¹.
                    Some(inv) => u[a][i] * inv[j][b],
                    None => u[a][i] * u[b][j],
                };
                if coef == 0 {
                    continue;
                }
                let (key, c) = match module {
                    Module::Wedge2 if a == b => continue,
                    Module::Wedge2 if a > b => ((b, a), -coef),
                    Module::Sym2 if a > b => ((b, a), coef),
                    _ => ((a, b), coef),
                };
                let row = index[&key];
                act[row][col] = (act[row][col] + c).rem_euclid(pi);
            }
        }
    }
    if !pairing {
        return (act, None);
    }
    let (c, omega) = match (module, form) {
        (Module::Gl, _) => {
            let c: Vec<i64> = pairs.iter().map(|&(i, j)| i64::from(i == j)).collect();
            (c.clone(), c)
        }
        (_, Some(f)) => {
            let inv = crate::linalg::inverse(f).expect("forms are nondegenerate");
            let to_p = |x: &num::rational::Ratio<i64>| {
                (x.numer().rem_euclid(pi) * mod_inverse(x.denom().rem_euclid(pi), pi)).rem_euclid(pi)
            };
            let c: Vec<i64> = pairs.iter().map(|&(i, j)| f[i][j].rem_euclid(pi)).collect();
            let omega: Vec<i64> = pairs
                .iter()
                .map(|&(i, j)| {
                    let v = to_p(&inv[i][j]);
                    if module == Module::Sym2 && i != j {
                        2 * v % pi
                    } else {
                        v
                    }
                })
                .collect();
            (c, omega)
        }
        _ => unreachable!("pairings need a form"),
    };
    (act, Some((c, omega)))
}

fn jordan_on_v(u: &Mat, form: Option<&Mat>, module: Module, pairing: bool, p: u64) -> Vec<usize> {
    let (act, sq) = ambient_action(u, form, module, pairing, p);
    let dim = act.len();
    let pi = p as i64;
    let unit = |i: usize| (0..dim).map(|j| i64::from(i == j)).collect::<Vec<i64>>();
    match sq {
        None => subquotient_jordan(&act, &(0..dim).map(unit).collect::<Vec<_>>(), &[], p),
        Some((c, omega)) => {
            let piv = c.iter().position(|&x| x != 0).expect("pairing is nonzero");
            let inv = mod_inverse(c[piv], pi);
            let kernel: Vec<Vec<i64>> = (0..dim)
                .filter(|&t| t != piv)
                .map(|t| {
                    let mut v = unit(t);
                    v[piv] = (-c[t] * inv).rem_euclid(pi);
                    v
                })
                .collect();
            let c_omega = c.iter().zip(&omega).map(|(x, y)| x * y).sum::<i64>().rem_euclid(pi);
            let quot = if c_omega == 0 { vec![omega] } else { vec![] };
            subquotient_jordan(&act, &kernel, &quot, p)
        }
    }
}

fn unipotent_cases(family: Family, rank: usize, module: Module, p: u32) -> Result<Vec<UnipotentCase>> {
    let pu = u64::from(p);
    let pairing = invariant_pairing(family, rank, module).is_some();
    let mut out = Vec::new();
    if p == 2 && family == Family::C {
        for b in 0..=2usize.min(rank) {
            for a2 in 0..=(rank - b) / 2 {
                if a2 == 0 && b == 0 {
                    continue;
                }
                let a1 = rank - b - 2 * a2;
                let (u, form) = p2_involution(a1, a2, b);
                out.push(UnipotentCase {
                    label: format!("W(1)^{a1}+W(2)^{a2}+V(2)^{b}"),
                    class_dim: p2_class_dim(family, rank, a1, a2, b)?,
                    blocks: jordan_on_v(&u, Some(&form), module, pairing, pu),
                });
            }
        }
        return Ok(out);
    }
    if p == 2 && family != Family::A {
        return Err(Error::Argument(format!("no characteristic-two classes for type {family} in sweeps")));
    }
    for blocks in classical_unipotent_classes(family, rank, Char::P(p))? {
        let (u, form) = match family {
            Family::A => {
                let x = block_diag(&blocks.iter().map(|&m| jordan_block(m)).collect::<Vec<_>>());
                (unipotent_of(&x), None)
            }
            _ => {
                let eps = if family == Family::C { -1 } else { 1 };
                let (x, f) = skew_nilpotent(&blocks, eps);
                (exp_mod_p(&x, pu), Some(f))
            }
        };
        out.push(UnipotentCase {
            label: format!("{blocks:?}"),
            class_dim: partition_class_dim(family, rank, &blocks)?,
            blocks: jordan_on_v(&u, form.as_ref(), module, pairing, pu),
        });
    }
    Ok(out)
}

fn unipotent_of(x: &Mat) -> Mat {
    let mut u = x.clone();
    for (i, row) in u.iter_mut().enumerate() {
        row[i] += 1;
    }
    u
}

/// An involution of `Sp` in characteristic 2 of type `W(1)^a1 W(2)^a2 V(2)^b`,
/// with its form.
fn p2_involution(a1: usize, a2: usize, b: usize) -> (Mat, Mat) {
    let mut us = Vec::new();
    let mut fs = Vec::new();
    let hyperbolic = vec![vec![0, 1], vec![1, 0]];
    for _ in 0..a1 {
        us.push(identity(2));
        fs.push(hyperbolic.clone());
    }
    for _ in 0..a2 {
        // Basis e1, e2, f1, f2 with B(e1, f2) = B(f1, e2) = 1; u − 1 sends
        // f1 ↦ e1 and f2 ↦ e2.
        let mut u = identity(4);
        u[0][2] = 1;
        u[1][3] = 1;
        let mut f = vec![vec![0; 4]; 4];
        f[0][3] = 1;
        f[3][0] = 1;
        f[2][1] = 1;
        f[1][2] = 1;
        us.push(u);
        fs.push(f);
    }
    for _ in 0..b {
        let mut u = identity(2);
        u[0][1] = 1;
        us.push(u);
        fs.push(hyperbolic.clone());
    }
    (block_diag(&us), block_diag(&fs))
}

fn module_dim(family: Family, rank: usize, module: Module, p: Char) -> i64 {
    let n = natural_weights(family, rank).len();
    ambient_pairs(module, n, 1).0.len() as i64 - zero_correction(family, rank, module, p)
}

fn ks(policy: KPolicy, k0: i64, d: i64) -> Vec<i64> {
    match policy {
        KPolicy::Only(k) => vec![k],
        KPolicy::Default => [k0, k0 + 1].into_iter().filter(|&k| 2 * k <= d).collect(),
    }
}

/// Sweep one family over a rank range. Ranks below the family's minimum are
/// skipped; an empty range gives an empty list.
pub fn family_sweep(
    spec: &FamilySpec,
    ranks: std::ops::RangeInclusive<usize>,
    policy: KPolicy,
    opts: &SweepOptions,
) -> Result<Vec<SweepReport>> {
    let family = spec.via.unwrap_or(spec.family);
    let class = PrimeClass::parse(&spec.p)?;
    let qs: Vec<Option<u32>> = if spec.q.is_empty() { vec![None] } else { spec.q.iter().map(|&q| Some(q)).collect() };
    let mut out = Vec::new();
    for rank in ranks.filter(|&l| l >= spec.l_min) {
        for &q in &qs {
            let chars: Vec<Char> = match q {
                Some(q) => vec![Char::P(smallest_prime_factor(q))],
                None => class.char_reps(),
            };
            let model = SsModel::new(family, rank, spec.module, i64::from(q.unwrap_or(1)));
            let cat = semisimple_catalogue(&model, opts);
            for p in chars {
                let d = module_dim(family, rank, spec.module, p);
                let unip = match p {
                    Char::P(pp) => unipotent_cases(family, rank, spec.module, pp)?,
                    Char::Zero => vec![],
                };
                for u in &unip {
                    let total: usize = u.blocks.iter().sum();
                    if total as i64 != d {
                        return Err(Error::Internal(format!(
                            "{}{rank} {}: unipotent {} acts on a space of dimension {total}, expected {d}",
                            spec.family, spec.id, u.label
                        )));
                    }
                }
                let zc = zero_correction(family, rank, spec.module, p);
                for k in ks(policy, spec.k0, d) {
                    let mut rep = SweepReport {
                        family: spec.id.clone(),
                        group: format!("{}{rank}", spec.family),
                        p: p.to_string(),
                        q,
                        k,
                        d,
                        semisimple: 0,
                        unipotent: unip.len(),
                        r_max: cat.r_max,
                        min_margin: i64::MAX,
                        worst: String::new(),
                        failures: vec![],
                    };
                    let mut seen = BTreeSet::new();
                    for (&r, set) in &cat.by_order {
                        if r != 0 && Char::P(r) == p {
                            continue;
                        }
                        for e in set {
                            let mut dims = e.others.clone();
                            let z = e.zero - zc;
                            if z > 0 {
                                dims.push(z);
                            }
                            dims.sort_unstable_by(|x, y| y.cmp(x));
                            if !seen.insert((dims.clone(), e.class_dim)) {
                                continue;
                            }
                            if dims.iter().sum::<i64>() != d {
                                return Err(Error::Internal(format!("eigenspaces {dims:?} do not sum to {d}")));
                            }
                            let b = codim_fixed_grassmann(&ElementSpec::Eigenspaces(dims.clone()), k)?;
                            let order = if r == 0 { "large r".to_string() } else { format!("r={r}") };
                            record(&mut rep, b - e.class_dim, || format!("semisimple {order} d={dims:?} dim={}", e.class_dim));
                        }
                    }
                    rep.semisimple = seen.len();
                    for u in &unip {
                        let b = codim_fixed_grassmann(&ElementSpec::Blocks(u.blocks.clone()), k)?;
                        record(&mut rep, b - u.class_dim, || format!("unipotent {} dim={}", u.label, u.class_dim));
                    }
                    out.push(rep);
                }
            }
        }
    }
    Ok(out)
}

fn record(rep: &mut SweepReport, margin: i64, what: impl Fn() -> String) {
    if margin < rep.min_margin {
        rep.min_margin = margin;
        rep.worst = what();
    }
    if margin <= 0 {
        rep.failures.push(format!("{}: B − dim = {margin}", what()));
    }
}

fn smallest_prime_factor(q: u32) -> u32 {
    (2..=q).find(|d| q % d == 0).unwrap_or(q)
}

/// Every embedded family over its default ranks.
pub fn sweep_all(opts: &SweepOptions) -> Result<Vec<SweepReport>> {
    let mut out = Vec::new();
    for spec in embedded_families()? {
        out.extend(family_sweep(&spec, spec.l_min..=spec.l_max, KPolicy::Default, opts)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skew_nilpotent_preserves_form() {
        for (blocks, eps) in [(vec![3, 2, 2, 1], 1), (vec![4, 3, 3, 2], -1), (vec![2, 2, 1, 1], -1)] {
            let (x, f) = skew_nilpotent(&blocks, eps);
            let u = exp_mod_p(&x, 5);
            let ut: Mat = (0..u.len()).map(|i| u.iter().map(|r| r[i]).collect()).collect();
            let lhs = mat_mul(&mat_mul(&ut, &f, 5), &u, 5);
            let fm: Mat = f.iter().map(|r| r.iter().map(|x| x.rem_euclid(5)).collect()).collect();
            assert_eq!(lhs, fm, "{blocks:?}");
        }
    }

    #[test]
    fn p2_involutions_preserve_form() {
        let (u, f) = p2_involution(1, 1, 1);
        let ut: Mat = (0..u.len()).map(|i| u.iter().map(|r| r[i]).collect()).collect();
        assert_eq!(mat_mul(&mat_mul(&ut, &f, 2), &u, 2), f);
    }

    #[test]
    fn module_dims() {
        assert_eq!(module_dim(Family::C, 4, Module::Wedge2, Char::P(2)), 26);
        assert_eq!(module_dim(Family::C, 3, Module::Wedge2, Char::P(3)), 13);
        assert_eq!(module_dim(Family::A, 2, Module::Gl, Char::P(3)), 7);
        assert_eq!(module_dim(Family::B, 2, Module::Sym2, Char::P(5)), 13);
    }
}
