//! Natural modules of the classical groups with integral Chevalley root
//! elements, plus Jordan-type utilities over prime fields.

use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, span_basis_mod_p};
use crate::rootsys::{EpsilonCoords, Family, RootSystem};

pub type Mat = Vec<Vec<i64>>;

/// Two large primes; ranks over Q are taken as the larger of the two
/// reductions, which agree with the rational rank for the small integral
/// matrices built here.
pub const LARGE_PRIMES: [u64; 2] = [1_000_003, 998_244_353];

/// Stand-in prime for characteristic zero when computing Jordan types of
/// unipotent elements. It exceeds every block size that occurs.
pub const CHAR_ZERO_PRIME: u64 = 1_000_003;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn zeros(n: usize) -> Mat {
    vec![vec![0; n]; n]
}

pub fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let p = p as i64;
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, &x) in a[i].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + x * b[k][j]).rem_euclid(p);
            }
        }
    }
    out
}

/// Integer product without reduction.
pub fn mat_mul_z(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, &x) in a[i].iter().enumerate() {
            if x != 0 {
                for j in 0..m {
                    out[i][j] += x * b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Rank over the rationals.
pub fn rank_q(m: &Mat) -> usize {
    LARGE_PRIMES.iter().map(|&p| rank_mod_p(m, p)).max().unwrap_or(0)
}

/// Jordan block sizes (decreasing) of the nilpotent matrix `n` over F_p.
pub fn nilpotent_jordan(n: &Mat, p: u64) -> Vec<usize> {
    let dim = n.len();
    let mut ranks = vec![dim];
    let mut power = identity(dim);
    loop {
        power = mat_mul(&power, n, p);
        let r = rank_mod_p(&power, p);
        ranks.push(r);
        if r == 0 || ranks.len() > dim + 1 {
            break;
        }
    }
    partition_from_ranks(&ranks)
}

/// Jordan block sizes of the unipotent matrix `u` over F_p.
pub fn unipotent_jordan(u: &Mat, p: u64) -> Vec<usize> {
    let n = mat_sub(u, &identity(u.len()));
    nilpotent_jordan(&n, p)
}

/// Blocks from the ranks of successive powers: the number of blocks of size
/// at least i is rank N^{i−1} − rank N^i.
pub fn partition_from_ranks(ranks: &[usize]) -> Vec<usize> {
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for (i, &c) in at_least.iter().enumerate() {
        let next = at_least.get(i + 1).copied().unwrap_or(0);
        for _ in 0..c - next {
            blocks.push(i + 1);
        }
    }
    blocks.sort_by(|a, b| b.cmp(a));
    blocks
}

/// Jordan blocks of `u` on the subquotient `sub / quot` of F_p^n, where both
/// spaces are given by spanning vectors and are assumed `u`-stable with
/// `quot ⊆ sub`.
pub fn subquotient_jordan(u: &Mat, sub: &[Vec<i64>], quot: &[Vec<i64>], p: u64) -> Vec<usize> {
    let n = mat_sub(u, &identity(u.len()));
    let base = span_basis_mod_p(quot, p).len();
    let mut current: Vec<Vec<i64>> = span_basis_mod_p(sub, p);
    let mut ranks = vec![span_with(&current, quot, p) - base];
    loop {
        current = current.iter().map(|v| apply(&n, v, p)).collect();
        current = span_basis_mod_p(&current, p);
        let r = span_with(&current, quot, p) - base;
        ranks.push(r);
        if r == 0 || ranks.len() > u.len() + 1 {
            break;
        }
    }
    partition_from_ranks(&ranks)
}

fn span_with(a: &[Vec<i64>], b: &[Vec<i64>], p: u64) -> usize {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    span_basis_mod_p(&all, p).len()
}

pub fn apply(m: &Mat, v: &[i64], p: u64) -> Vec<i64> {
    let p = p as i64;
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p)).collect()
}

/// The natural module of a classical group with basis
/// `e_1..e_ℓ, f_1..f_ℓ` (plus `e_0` last for type B), or `e_1..e_{ℓ+1}` for
/// type A.
#[derive(Clone, Debug)]
pub struct NaturalModule {
    family: Family,
    rank: usize,
    eps: EpsilonCoords,
    /// Gram matrix of the invariant form, absent for type A.
    form: Option<Mat>,
}

impl NaturalModule {
    pub fn new(rs: &RootSystem) -> Result<NaturalModule> {
        let (family, rank) = (rs.family(), rs.rank());
        if !family.is_classical() {
            return Err(Error::Argument(format!("{} has no classical natural module", rs.name())));
        }
        let eps = rs.epsilon()?;
        let mut nm = NaturalModule { family, rank, eps, form: None };
        nm.form = nm.build_form();
        Ok(nm)
    }

    pub fn dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            _ => 2 * self.rank,
        }
    }

    pub fn form(&self) -> Option<&Mat> {
        self.form.as_ref()
    }

    fn e(&self, i: usize) -> usize {
        i
    }

    fn f(&self, i: usize) -> usize {
        self.rank + i
    }

    fn e0(&self) -> usize {
        2 * self.rank
    }

    fn build_form(&self) -> Option<Mat> {
        let n = self.dim();
        let mut g = zeros(n);
        match self.family {
            Family::A => return None,
            Family::C => {
                for i in 0..self.rank {
                    g[self.e(i)][self.f(i)] = 1;
                    g[self.f(i)][self.e(i)] = -1;
                }
            }
            Family::B | Family::D => {
                for i in 0..self.rank {
                    g[self.e(i)][self.f(i)] = 1;
                    g[self.f(i)][self.e(i)] = 1;
                }
                if self.family == Family::B {
                    g[self.e0()][self.e0()] = 2;
                }
            }
            _ => unreachable!(),
        }
        Some(g)
    }

    /// Integral nilpotent matrix of the root vector for `root` (given over
    /// the simple roots).
    pub fn root_matrix(&self, root: &[i64]) -> Result<Mat> {
        let v = self.eps.to_epsilon(root);
        let mut m = zeros(self.dim());
        let nz: Vec<(usize, i64)> = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        let bad = || Error::Internal(format!("{root:?} is not a root of {}{}", self.family, self.rank));
        if self.family == Family::A {
            let (&(i, a), &(j, _)) = (nz.first().ok_or_else(bad)?, nz.get(1).ok_or_else(bad)?);
            let (i, j) = if a > 0 { (i, j) } else { (j, i) };
            m[i][j] = 1;
            return Ok(m);
        }
        let mut set = |r: usize, c: usize, x: i64| m[r][c] += x;
        match nz.as_slice() {
            [(i, 1), (j, -1)] | [(j, -1), (i, 1)] => {
                set(self.e(*i), self.e(*j), 1);
                set(self.f(*j), self.f(*i), -1);
            }
            [(i, 1), (j, 1)] => {
                let (i, j) = (*i, *j);
                if self.family == Family::C {
                    set(self.e(i), self.f(j), 1);
                    set(self.e(j), self.f(i), 1);
                } else {
                    set(self.e(i), self.f(j), 1);
                    set(self.e(j), self.f(i), -1);
                }
            }
            [(i, -1), (j, -1)] => {
                let (i, j) = (*i, *j);
                if self.family == Family::C {
                    set(self.f(i), self.e(j), 1);
                    set(self.f(j), self.e(i), 1);
                } else {
                    set(self.f(j), self.e(i), 1);
                    set(self.f(i), self.e(j), -1);
                }
            }
            [(i, 2)] if self.family == Family::C => set(self.e(*i), self.f(*i), 1),
            [(i, -2)] if self.family == Family::C => set(self.f(*i), self.e(*i), 1),
            [(i, 1)] if self.family == Family::B => {
                set(self.e(*i), self.e0(), 2);
                set(self.e0(), self.f(*i), -1);
            }
            [(i, -1)] if self.family == Family::B => {
                set(self.f(*i), self.e0(), 2);
                set(self.e0(), self.e(*i), -1);
            }
            _ => return Err(bad()),
        }
        Ok(m)
    }

    /// Root element `x_α(t) = Σ t^k X^k / k!`, integral for these bases.
    pub fn root_element(&self, root: &[i64], t: i64) -> Result<Mat> {
        let x = self.root_matrix(root)?;
        let n = self.dim();
        let mut out = identity(n);
        let mut term = identity(n);
        for k in 1..=n as i64 {
            term = mat_mul_z(&term, &x);
            if term.iter().all(|r| r.iter().all(|&v| v == 0)) {
                break;
            }
            let scale = t.pow(k as u32);
            let fact: i64 = (1..=k).product();
            for i in 0..n {
                for j in 0..n {
                    if term[i][j] != 0 {
                        debug_assert_eq!(term[i][j] * scale % fact, 0);
                        out[i][j] += term[i][j] * scale / fact;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether `x` preserves the form infinitesimally: `xᵀF + Fx = 0`.
    pub fn in_lie_algebra(&self, x: &Mat) -> bool {
        match &self.form {
            None => true,
            Some(f) => {
                let a = mat_mul_z(&transpose(x), f);
                let b = mat_mul_z(f, x);
                a.iter().zip(&b).all(|(r, s)| r.iter().zip(s).all(|(u, v)| u + v == 0))
            }
        }
    }

    /// Whether `g` preserves the form: `gᵀFg = F`.
    pub fn in_group(&self, g: &Mat) -> bool {
        match &self.form {
            None => true,
            Some(f) => &mat_mul_z(&mat_mul_z(&transpose(g), f), g) == f,
        }
    }
}

/// Jordan blocks on the natural module of a regular nilpotent element of the
/// subsystem with the given base roots, in characteristic zero.
pub fn regular_partition(rs: &RootSystem, base: &[usize]) -> Result<Vec<usize>> {
    let nm = NaturalModule::new(rs)?;
    let mut e = zeros(nm.dim());
    for &b in base {
        let x = nm.root_matrix(rs.root(b))?;
        for i in 0..e.len() {
            for j in 0..e.len() {
                e[i][j] += x[i][j];
            }
        }
    }
    let dim = e.len();
    let mut ranks = vec![dim];
    let mut power = identity(dim);
    loop {
        power = mat_mul_z(&power, &e);
        let r = rank_q(&power);
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    Ok(partition_from_ranks(&ranks))
}
