//! Small exact linear algebra: rational inverses, a dense simplex solver and
//! ranks over prime fields.

use num::rational::{BigRational, Ratio};
use num::{BigInt, One, Signed, Zero};

pub type Q = Ratio<i64>;

/// Inverse of a square integer matrix over the rationals.
pub fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `sum_j x_j cols[j] = target` over the rationals when the columns are
/// linearly independent. Returns `None` if there is no solution.
pub fn solve_independent(cols: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let m = target.len();
    let n = cols.len();
    let mut a: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Q::one() / a[row][col];
        for x in a[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..=n {
                    let v = a[row][c];
                    a[r][c] -= f * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][n];
    }
    Some(x)
}

/// Minimise `cost . x` subject to `a x = b`, `x >= 0`, exactly. Returns an
/// optimal vertex, or `None` when infeasible or unbounded. Bland's rule keeps
/// the pivoting finite and deterministic.
pub fn simplex_min(a: &[Vec<BigRational>], b: &[BigRational], cost: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = cost.len();
    let zero = BigRational::zero();
    // Tableau columns: n structural, m artificial, then the right-hand side.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<BigRational> = a[i].iter().map(|x| if neg { -x.clone() } else { x.clone() }).collect();
        row.extend((0..m).map(|j| if i == j { BigRational::one() } else { zero.clone() }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let phase1: Vec<BigRational> = (0..n + m).map(|j| if j >= n { BigRational::one() } else { zero.clone() }).collect();
    run_simplex(&mut t, &mut basis, &phase1, n + m)?;
    let rhs = n + m;
    let infeas: BigRational = basis
        .iter()
        .enumerate()
        .filter(|(_, &bv)| bv >= n)
        .map(|(i, _)| t[i][rhs].clone())
        .fold(zero.clone(), |acc, v| acc + v);
    if infeas.is_positive() {
        return None;
    }
    // Drive artificial variables out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
                i += 1;
            } else {
                t.remove(i);
                basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    let mut phase2 = cost.to_vec();
    phase2.extend((0..m).map(|_| zero.clone()));
    run_simplex(&mut t, &mut basis, &phase2, n)?;
    let mut x = vec![zero; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], basis: &mut [usize], row: usize, col: usize) {
    let inv = BigRational::one() / t[row][col].clone();
    for x in t[row].iter_mut() {
        *x = &*x * &inv;
    }
    let prow = t[row].clone();
    for (r, line) in t.iter_mut().enumerate() {
        if r != row && !line[col].is_zero() {
            let f = line[col].clone();
            for (c, v) in prow.iter().enumerate() {
                if !v.is_zero() {
                    line[c] = &line[c] - &f * v;
                }
            }
        }
    }
    basis[row] = col;
}

/// Returns `None` when unbounded. Only columns below `allowed` may enter.
fn run_simplex(t: &mut [Vec<BigRational>], basis: &mut [usize], cost: &[BigRational], allowed: usize) -> Option<()> {
    let rhs = t.first().map(|r| r.len() - 1).unwrap_or(0);
    loop {
        let mut entering = None;
        for j in 0..allowed {
            if basis.contains(&j) {
                continue;
            }
            let mut r = cost[j].clone();
            for (i, &bv) in basis.iter().enumerate() {
                if !t[i][j].is_zero() {
                    r -= &cost[bv] * &t[i][j];
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Some(());
        };
        let mut best: Option<(usize, BigRational)> = None;
        for i in 0..t.len() {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let (row, _) = best?;
        pivot(t, basis, row, j);
    }
}

pub fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][col], p);
        for x in a[rank].iter_mut() {
            *x = (*x * inv) % p;
        }
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in col..cols {
                    a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p)
}

/// Row-reduced basis of the span of `vecs` over F_p.
pub fn span_basis_mod_p(vecs: &[Vec<i64>], p: u64) -> Vec<Vec<i64>> {
    let p = p as i64;
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for v in vecs {
        let mut w: Vec<i64> = v.iter().map(|x| x.rem_euclid(p)).collect();
        for (b, &pc) in basis.iter().zip(&pivots) {
            if w[pc] != 0 {
                let f = w[pc];
                for (x, y) in w.iter_mut().zip(b) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        if let Some(pc) = w.iter().position(|&x| x != 0) {
            let inv = mod_inverse(w[pc], p);
            for x in w.iter_mut() {
                *x = (*x * inv) % p;
            }
            for (b, &bp) in basis.iter_mut().zip(&pivots) {
                let _ = bp;
                if b[pc] != 0 {
                    let f = b[pc];
                    for (x, y) in b.iter_mut().zip(&w) {
                        *x = (*x - f * y).rem_euclid(p);
                    }
                }
            }
            basis.push(w);
            pivots.push(pc);
        }
    }
    basis
}
