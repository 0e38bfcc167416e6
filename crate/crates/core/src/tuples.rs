//! Integer-tuple calculus behind the codimension bounds.
//!
//! For a tuple `d` and a `d`-feasible `κ` (0 ≤ κ_i ≤ d_i),
//! `B_{d,κ} = |κ|(|d| − |κ|) − Σ κ_i(d_i − κ_i)`, and `B_{d,k}` is the
//! minimum over all feasible `κ` with `|κ| = k`.

use std::collections::HashMap;

use num::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Decreasing tuple of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DimTuple {
    parts: Vec<i64>,
}

impl DimTuple {
    /// Sorts the parts into decreasing order; rejects empty input and
    /// non-positive parts.
    pub fn new(mut parts: Vec<i64>) -> Result<DimTuple> {
        if parts.is_empty() {
            return Err(Error::Argument("a dimension tuple needs at least one part".into()));
        }
        if let Some(x) = parts.iter().find(|&&x| x < 1) {
            return Err(Error::Argument(format!("tuple parts must be positive, got {x}")));
        }
        parts.sort_by(|a, b| b.cmp(a));
        Ok(DimTuple { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Part `i` (0-based), or 0 past the end.
    fn part(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for DimTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `B_{d,κ}`.
pub fn b_of_pair(d: &DimTuple, kappa: &[i64]) -> Result<i64> {
    if kappa.len() != d.len() {
        return Err(Error::Argument(format!("κ has {} parts but d has {}", kappa.len(), d.len())));
    }
    for (k, di) in kappa.iter().zip(d.parts()) {
        if *k < 0 || k > di {
            return Err(Error::Argument(format!("κ={kappa:?} is not feasible for d={d}")));
        }
    }
    let k: i64 = kappa.iter().sum();
    let inner: i64 = kappa.iter().zip(d.parts()).map(|(k, di)| k * (di - k)).sum();
    Ok(k * (d.total() - k) - inner)
}

/// Minimum of `B_{d,κ}` over `|κ| = k` with a decreasing witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BMin {
    pub value: i64,
    pub witness: Vec<i64>,
}

/// `B_{d,k}`. Only decreasing κ are searched; among minimisers the
/// lexicographically largest is returned.
pub fn b_min(d: &DimTuple, k: i64) -> Result<BMin> {
    if k < 0 || k > d.total() {
        return Err(Error::Argument(format!("k={k} must lie in 0..={}", d.total())));
    }
    let mut search = Search { d: d.parts(), memo: HashMap::new(), suffix: suffix_sums(d.parts()) };
    // Maximise Σ κ_i(d_i − κ_i) over decreasing feasible κ.
    let best = search.best(0, k, k).ok_or_else(|| Error::Internal("no feasible tuple".into()))?;
    let mut witness = Vec::with_capacity(d.len());
    let (mut rem, mut cap) = (k, k);
    for i in 0..d.len() {
        let di = d.parts()[i];
        let target = search.best(i, rem, cap).expect("reachable state");
        let x = (0..=cap.min(di).min(rem))
            .rev()
            .find(|&x| search.best(i + 1, rem - x, x).map(|v| v + x * (di - x)) == Some(target))
            .expect("optimum is attained");
        witness.push(x);
        rem -= x;
        cap = x;
    }
    Ok(BMin { value: k * (d.total() - k) - best, witness })
}

fn suffix_sums(d: &[i64]) -> Vec<i64> {
    let mut s = vec![0; d.len() + 1];
    for i in (0..d.len()).rev() {
        s[i] = s[i + 1] + d[i];
    }
    s
}

struct Search<'a> {
    d: &'a [i64],
    memo: HashMap<(usize, i64, i64), Option<i64>>,
    suffix: Vec<i64>,
}

impl Search<'_> {
    fn best(&mut self, i: usize, rem: i64, cap: i64) -> Option<i64> {
        if rem == 0 {
            return Some(0);
        }
        if i == self.d.len() || rem > self.suffix[i] || rem > cap * (self.d.len() - i) as i64 {
            return None;
        }
        if let Some(v) = self.memo.get(&(i, rem, cap)) {
            return *v;
        }
        let di = self.d[i];
        let mut out = None;
        for x in 0..=cap.min(di).min(rem) {
            if let Some(v) = self.best(i + 1, rem - x, x) {
                let v = v + x * (di - x);
                out = Some(out.map_or(v, |o: i64| o.max(v)));
            }
        }
        self.memo.insert((i, rem, cap), out);
        out
    }
}

/// Closed forms for `k ∈ {1, 2, 3}`. Missing parts count as 0. Fails when
/// the branch selected by the inequalities would need an infeasible tuple,
/// which only happens for k close to |d|.
pub fn b_small_k(d: &DimTuple, k: i64) -> Result<i64> {
    if !(1..=3).contains(&k) {
        return Err(Error::Argument(format!("closed forms cover k = 1, 2, 3, not {k}")));
    }
    if k > d.total() {
        return Err(Error::Argument(format!("k={k} exceeds |d|={}", d.total())));
    }
    let n = d.total();
    let (d1, d2, d3) = (d.part(0), d.part(1), d.part(2));
    let (value, witness): (i64, &[i64]) = match k {
        1 => (n - d1, &[1]),
        2 if d1 >= d2 + 2 => (2 * n - 2 * d1, &[2]),
        2 => (2 * n - d1 - d2 - 2, &[1, 1]),
        _ if d1 >= d2 + 4 => (3 * n - 3 * d1, &[3]),
        _ if d1 >= d3 + 2 => (3 * n - 2 * d1 - d2 - 4, &[2, 1]),
        _ => (3 * n - d1 - d2 - d3 - 6, &[1, 1, 1]),
    };
    let feasible = witness.len() <= d.len() && witness.iter().enumerate().all(|(i, &x)| x <= d.part(i));
    if !feasible {
        return Err(Error::Argument(format!("d={d}, k={k} lies outside the closed form's domain")));
    }
    Ok(value)
}

/// Closed form for two-part tuples with `1 ≤ k ≤ |d|/2`.
pub fn b_two_parts(d: &DimTuple, k: i64) -> Result<i64> {
    if d.len() != 2 {
        return Err(Error::Argument(format!("two-part closed form needs t = 2, got d={d}")));
    }
    let n = d.total();
    if k < 1 || 2 * k > n {
        return Err(Error::Argument(format!("k={k} must satisfy 1 ≤ k ≤ |d|/2 = {n}/2")));
    }
    let (d1, d2) = (d.part(0), d.part(1));
    if 2 * (d2 + k) <= n {
        Ok(d2 * k)
    } else {
        // ⌈d1 d2 / 2 − (d − 2k)² / 8⌉
        let num = 4 * d1 * d2 - (n - 2 * k) * (n - 2 * k);
        Ok(Integer::div_ceil(&num, &8))
    }
}

/// The extremal tuple `(b, …, b, d − (t−1)b)` with `t = ⌈d/b⌉`.
pub fn bounded_tuple(d: i64, b: i64) -> Result<DimTuple> {
    if d < 1 || b < 1 {
        return Err(Error::Argument(format!("bounded tuple needs d, b ≥ 1, got d={d}, b={b}")));
    }
    let t = Integer::div_ceil(&d, &b);
    let mut parts = vec![b; (t - 1) as usize];
    parts.push(d - (t - 1) * b);
    DimTuple::new(parts)
}

/// `B^b_{d,k}`: the least `B_{d',k}` over tuples `d'` with parts at most `b`
/// summing to `d`, realised by [`bounded_tuple`]. Requires `k ≤ d/2`.
pub fn b_bounded(d: i64, k: i64, b: i64) -> Result<BMin> {
    if k < 0 || 2 * k > d {
        return Err(Error::Argument(format!("bounded minimum needs 0 ≤ k ≤ d/2, got d={d}, k={k}")));
    }
    b_min(&bounded_tuple(d, b)?, k)
}

/// `B_{d,k−1} ≤ B_{d,k}` for every `2 ≤ k ≤ |d|/2`.
pub fn check_monotone(d: &DimTuple) -> bool {
    let half = d.total() / 2;
    let values: Vec<i64> = (1..=half).map(|k| b_min(d, k).map(|b| b.value).unwrap_or(i64::MAX)).collect();
    values.windows(2).all(|w| w[0] <= w[1])
}

/// Parse `11,4` into a tuple.
pub fn parse_tuple(s: &str) -> Result<DimTuple> {
    let parts: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    DimTuple::new(parts.map_err(|_| Error::Argument(format!("bad tuple {s:?}")))?)
}
