//! Oracles shared by the integration tests and the acceptance harness. They
//! are written from the definitions, without calling the library routine
//! they check.

#![allow(dead_code)]

/// `B_{d,κ} = Σ_{i≠j} κ_i (d_j − κ_j)`, for parts in any order.
pub fn b_pair(d: &[i64], kappa: &[i64]) -> i64 {
    let mut total = 0;
    for i in 0..d.len() {
        for j in 0..d.len() {
            if i != j {
                total += kappa[i] * (d[j] - kappa[j]);
            }
        }
    }
    total
}

/// Minimum of `B_{d,κ}` over every feasible κ (not only decreasing ones),
/// indexed by `k = |κ|` from 0 to `|d|`.
pub fn b_exhaustive(d: &[i64]) -> Vec<i64> {
    let n: i64 = d.iter().sum();
    let mut best = vec![i64::MAX; n as usize + 1];
    let mut kappa = vec![0i64; d.len()];
    loop {
        let k: i64 = kappa.iter().sum();
        let b = b_pair(d, &kappa);
        let slot = &mut best[k as usize];
        *slot = (*slot).min(b);
        // odometer over 0 ≤ κ_i ≤ d_i
        let mut i = 0;
        while i < d.len() && kappa[i] == d[i] {
            kappa[i] = 0;
            i += 1;
        }
        if i == d.len() {
            break;
        }
        kappa[i] += 1;
    }
    best
}

/// Decreasing tuples of positive integers summing to `n`.
pub fn decreasing_tuples(n: i64) -> Vec<Vec<i64>> {
    fn go(rem: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for x in (1..=rem.min(max)).rev() {
            cur.push(x);
            go(rem - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every vector of `parts` non-negative integers summing to `n`.
pub fn compositions(n: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Classical root systems in ε-coordinates, as integer vectors.
pub fn classical_roots(family: char, rank: usize) -> Vec<Vec<i64>> {
    let n = if family == 'A' { rank + 1 } else { rank };
    let unit = |i: usize, c: i64| {
        let mut v = vec![0; n];
        v[i] = c;
        v
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut v = unit(i, 1);
            v[j] = -1;
            out.push(v);
            if family != 'A' && i < j {
                for s in [1, -1] {
                    let mut w = unit(i, s);
                    w[j] = s;
                    out.push(w);
                }
            }
        }
        match family {
            'B' => out.extend([unit(i, 1), unit(i, -1)]),
            'C' => out.extend([unit(i, 2), unit(i, -2)]),
            _ => {}
        }
    }
    out
}

/// `dim L(G)_1(s) − dim L(G)_η(s)` by evaluating every root on
/// `s = diag(ξ η^{e_i})`. `xi_negative` selects ξ = −1; it only matters for
/// the short roots of type B.
pub fn eigen_gap_brute(family: char, rank: usize, r: i64, exps: &[i64], xi_negative: bool) -> i64 {
    let mut one = rank as i64;
    let mut eta = 0;
    for root in classical_roots(family, rank) {
        let e = root.iter().zip(exps).map(|(c, x)| c * x).sum::<i64>().rem_euclid(r);
        let sign_flips = xi_negative && root.iter().sum::<i64>() % 2 != 0;
        if sign_flips {
            // −η^e is never 1 or η for odd r
            continue;
        }
        if e == 0 {
            one += 1;
        }
        if e == 1 % r {
            eta += 1;
        }
    }
    one - eta
}

/// Dimension of the simple group by type, from the closed formulas.
pub fn group_dim(family: char, l: i64) -> i64 {
    match family {
        'A' => l * (l + 2),
        'B' | 'C' => l * (2 * l + 1),
        'D' => l * (2 * l - 1),
        'E' => match l {
            6 => 78,
            7 => 133,
            _ => 248,
        },
        'F' => 52,
        _ => 14,
    }
}

/// Integer partitions of `n` in decreasing order.
pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    decreasing_tuples(n as i64).into_iter().map(|v| v.into_iter().map(|x| x as usize).collect()).collect()
}
