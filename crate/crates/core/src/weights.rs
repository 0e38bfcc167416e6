//! Weights of L(λ): Weyl orbits, embedded weight tables with p-dependent
//! multiplicities, generalized heights and zero-linear-combination tests.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num::rational::BigRational;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::data;
use crate::error::{Error, Result};
use crate::linalg::{self, big, Q};
use crate::primes::{Char, PrimeClass};
use crate::rootsys::{weyl_group_order, Family, RootSystem};

/// Coordinates in the fundamental weight basis.
pub type Weight = Vec<i64>;

/// Rational coordinates of a weight over the simple roots.
pub fn to_root_basis(rs: &RootSystem, mu: &[i64]) -> Vec<Q> {
    let inv = linalg::inverse(rs.cartan()).expect("Cartan matrices are invertible");
    let l = rs.rank();
    (0..l).map(|i| (0..l).map(|j| Q::from_integer(mu[j]) * inv[j][i]).sum()).collect()
}

/// Fundamental coordinates of a vector given over the simple roots.
pub fn from_root_basis(rs: &RootSystem, x: &[Q]) -> Option<Weight> {
    let l = rs.rank();
    (0..l)
        .map(|j| {
            let v: Q = (0..l).map(|k| x[k] * Q::from_integer(rs.cartan()[k][j])).sum();
            v.is_integer().then(|| v.to_integer())
        })
        .collect()
}

pub fn is_dominant(mu: &[i64]) -> bool {
    mu.iter().all(|&x| x >= 0)
}

fn simple_reflect(rs: &RootSystem, mu: &[i64], i: usize) -> Weight {
    let c = mu[i];
    mu.iter().zip(&rs.cartan()[i]).map(|(m, a)| m - c * a).collect()
}

/// The dominant weight in the W-orbit of μ.
pub fn dominant_rep(rs: &RootSystem, mu: &[i64]) -> Weight {
    let mut w = mu.to_vec();
    while let Some(i) = w.iter().position(|&x| x < 0) {
        w = simple_reflect(rs, &w, i);
    }
    w
}

/// Full W-orbit of a dominant weight, ordered decreasingly by root-basis
/// coordinates.
pub fn weyl_orbit(rs: &RootSystem, dominant: &[i64]) -> Result<Vec<Weight>> {
    if dominant.len() != rs.rank() || !is_dominant(dominant) {
        return Err(Error::Argument(format!("{dominant:?} is not a dominant weight of {}", rs.name())));
    }
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(dominant.to_vec());
    queue.push_back(dominant.to_vec());
    while let Some(w) = queue.pop_front() {
        for i in 0..rs.rank() {
            if w[i] != 0 {
                let v = simple_reflect(rs, &w, i);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    let mut out: Vec<(Vec<Q>, Weight)> = seen.into_iter().map(|w| (to_root_basis(rs, &w), w)).collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

/// |W| / |Stab_W(μ)| with the stabilizer read off as the parabolic subgroup
/// on the simple roots where μ vanishes.
pub fn orbit_size_by_stabilizer(rs: &RootSystem, dominant: &[i64]) -> u128 {
    let zero: Vec<usize> = (1..=rs.rank()).filter(|&i| dominant[i - 1] == 0).collect();
    let sub = rs.standard_subsystem(&zero).expect("indices in range");
    let stab: u128 = sub
        .components
        .iter()
        .map(|c| {
            let (f, r) = c.cartan_type();
            weyl_group_order(f, r)
        })
        .product();
    rs.weyl_order() / stab
}

/// Weyl's dimension formula, exactly.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> BigInt {
    let shifted: Weight = lambda.iter().map(|x| x + 1).collect();
    let rho = vec![1i64; rs.rank()];
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for b in rs.positive() {
        num *= BigInt::from(rs.pair_weight(&shifted, b));
        den *= BigInt::from(rs.pair_weight(&rho, b));
    }
    num / den
}

/// Symmetric form on the weight lattice, normalised so short roots have
/// squared length 2.
pub fn weight_inner(rs: &RootSystem, mu: &[i64], nu: &[i64]) -> Q {
    let x = to_root_basis(rs, mu);
    (0..rs.rank()).map(|i| x[i] * Q::new(nu[i] * rs.norms()[i], 2)).sum()
}

fn below(rs: &RootSystem, lambda: &[i64], mu: &[i64]) -> bool {
    let diff: Weight = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    to_root_basis(rs, &diff).iter().all(|c| c.is_integer() && !c.is_negative())
}

/// Characteristic-zero multiplicities of the dominant weights of L(λ) by
/// Freudenthal's formula. Used only as a cross-check of embedded tables.
pub fn freudenthal(rs: &RootSystem, lambda: &[i64]) -> Vec<(Weight, u64)> {
    let l = rs.rank();
    let mut dominant: Vec<Weight> = vec![lambda.to_vec()];
    let mut seen: HashSet<Weight> = dominant.iter().cloned().collect();
    let mut idx = 0;
    let pos: Vec<Weight> = rs.positive().map(|b| rs.root_as_weight(b)).collect();
    while idx < dominant.len() {
        let mu = dominant[idx].clone();
        idx += 1;
        for a in &pos {
            let nu: Weight = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            let d = dominant_rep(rs, &nu);
            if below(rs, lambda, &d) && seen.insert(d.clone()) {
                dominant.push(d);
            }
        }
    }
    let depth = |mu: &Weight| -> Q {
        let diff: Weight = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        to_root_basis(rs, &diff).iter().sum()
    };
    dominant.sort_by_key(|m| depth(m));
    let rho = vec![1i64; l];
    let plus = |a: &[i64], b: &[i64]| -> Weight { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let lr = plus(lambda, &rho);
    let top = weight_inner(rs, &lr, &lr);
    let mut mult: HashMap<Weight, Q> = HashMap::new();
    for mu in &dominant {
        if mu.as_slice() == lambda {
            mult.insert(mu.clone(), Q::one());
            continue;
        }
        let mr = plus(mu, &rho);
        let denom = top - weight_inner(rs, &mr, &mr);
        let mut sum = Q::zero();
        for a in &pos {
            let mut j = 1;
            loop {
                let nu: Weight = mu.iter().zip(a).map(|(x, y)| x + j * y).collect();
                if !below(rs, lambda, &nu) {
                    break;
                }
                let d = dominant_rep(rs, &nu);
                if let Some(m) = mult.get(&d) {
                    sum += *m * weight_inner(rs, &nu, a);
                }
                j += 1;
            }
        }
        mult.insert(mu.clone(), sum * Q::from_integer(2) / denom);
    }
    dominant
        .into_iter()
        .map(|m| {
            let v = mult[&m];
            (m, v.to_integer() as u64)
        })
        .filter(|(_, v)| *v > 0)
        .collect()
}

/// Multiplicity `base − Σ c·ζ_{p,n}`, where ζ_{p,n} is 1 exactly when the
/// characteristic p is finite and divides n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityFormula {
    pub base: i64,
    #[serde(default)]
    pub corrections: Vec<Correction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub n: i64,
    pub c: i64,
}

impl MultiplicityFormula {
    pub fn constant(base: i64) -> MultiplicityFormula {
        MultiplicityFormula { base, corrections: vec![] }
    }

    pub fn eval(&self, p: Char) -> i64 {
        self.base - self.corrections.iter().filter(|c| p.divides(c.n)).map(|c| c.c).sum::<i64>()
    }

    pub fn is_constant(&self) -> bool {
        self.corrections.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    /// Orbit index as used in net tables: 0 for the zero weight, counting up.
    pub i: usize,
    pub mu: Weight,
    pub orbit: usize,
    pub mult: MultiplicityFormula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Embedded,
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTable {
    pub id: String,
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub lambda: Weight,
    /// Characteristics for which the multiplicities hold.
    pub p: String,
    #[serde(default)]
    pub cite: String,
    /// Highest first.
    pub rows: Vec<WeightRow>,
    #[serde(default = "embedded")]
    pub source: Source,
}

fn embedded() -> Source {
    Source::Embedded
}

/// One weight of V with the orbit it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub mu: Weight,
    pub orbit: usize,
    pub mult: MultiplicityFormula,
}

impl WeightTable {
    pub fn p_class(&self) -> Result<PrimeClass> {
        PrimeClass::parse(&self.p)
    }

    pub fn dim(&self, p: Char) -> i64 {
        self.rows.iter().map(|r| r.orbit as i64 * r.mult.eval(p)).sum()
    }

    pub fn row(&self, i: usize) -> Option<&WeightRow> {
        self.rows.iter().find(|r| r.i == i)
    }

    /// Orbit indices, ascending.
    pub fn indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.iter().map(|r| r.i).collect();
        v.sort();
        v
    }

    /// Every weight of V (without repetition), tagged with its orbit.
    pub fn weights(&self, rs: &RootSystem) -> Result<Vec<WeightEntry>> {
        let mut out = Vec::new();
        for row in &self.rows {
            for mu in weyl_orbit(rs, &row.mu)? {
                out.push(WeightEntry { mu, orbit: row.i, mult: row.mult.clone() });
            }
        }
        Ok(out)
    }

    /// Recompute orbit sizes and compare with the stored ones.
    pub fn check_orbits(&self, rs: &RootSystem) -> Result<()> {
        for row in &self.rows {
            let n = weyl_orbit(rs, &row.mu)?.len();
            if n != row.orbit {
                return Err(Error::Data(format!(
                    "table {}: orbit of {:?} has {n} weights, stored {}",
                    self.id, row.mu, row.orbit
                )));
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct TableFile {
    tables: Vec<WeightTable>,
}

/// All embedded weight tables.
pub fn embedded_tables() -> Result<Vec<WeightTable>> {
    let f: TableFile = data::load_json("weight_tables.json")?;
    Ok(f.tables)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourcePolicy {
    EmbeddedOnly,
    /// Fall back to characteristic-zero multiplicities from Freudenthal's
    /// formula. A finite p still needs an embedded table.
    AllowComputed,
}

/// Weight table for (rs, λ), valid at `p` when given.
pub fn weight_table(rs: &RootSystem, lambda: &[i64], p: Option<Char>, policy: SourcePolicy) -> Result<WeightTable> {
    for t in embedded_tables()? {
        if t.family != rs.family() || t.rank != rs.rank() || t.lambda != lambda {
            continue;
        }
        if let Some(p) = p {
            if !t.p_class()?.contains_char(p) {
                continue;
            }
        }
        t.check_orbits(rs)?;
        return Ok(t);
    }
    match policy {
        SourcePolicy::EmbeddedOnly => Err(Error::DataMissing(format!(
            "no embedded weight table for {} λ={lambda:?}{}",
            rs.name(),
            p.map(|p| format!(" at p={p}")).unwrap_or_default()
        ))),
        SourcePolicy::AllowComputed => {
            if let Some(Char::P(q)) = p {
                return Err(Error::DataMissing(format!(
                    "no embedded weight table for {} λ={lambda:?} at p={q}; computed multiplicities hold in characteristic zero only",
                    rs.name()
                )));
            }
            let dom = freudenthal(rs, lambda);
            let n = dom.len();
            let rows = dom
                .into_iter()
                .enumerate()
                .map(|(k, (mu, m))| {
                    let orbit = weyl_orbit(rs, &mu).map(|o| o.len()).unwrap_or(0);
                    WeightRow { i: n - 1 - k, mu, orbit, mult: MultiplicityFormula::constant(m as i64) }
                })
                .collect();
            Ok(WeightTable {
                id: format!("{}:{lambda:?}:computed", rs.name()),
                family: rs.family(),
                rank: rs.rank(),
                lambda: lambda.to_vec(),
                p: "any".into(),
                cite: "characteristic-zero multiplicities".into(),
                rows,
                source: Source::Computed,
            })
        }
    }
}

/// Non-negative integer values of a generalized height on the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenHeight {
    pub values: Vec<i64>,
}

/// Generalized height of a weight, when integral.
pub fn gen_height(rs: &RootSystem, h: &GenHeight, mu: &[i64]) -> Option<i64> {
    let x = to_root_basis(rs, mu);
    let v: Q = x.iter().zip(&h.values).map(|(c, &hv)| *c * Q::from_integer(hv)).sum();
    v.is_integer().then(|| v.to_integer())
}

/// Result of splitting Λ(V) by a generalized height.
#[derive(Clone, Debug)]
pub struct HeightSplit {
    pub classes: BTreeMap<i64, Vec<WeightEntry>>,
    /// Root indices of height zero.
    pub phi_zero: Vec<usize>,
}

impl HeightSplit {
    pub fn level(&self, h: i64) -> &[WeightEntry] {
        self.classes.get(&h).map(|v| v.as_slice()).unwrap_or(&[])
    }
}

pub fn gen_height_split(rs: &RootSystem, table: &WeightTable, h: &GenHeight) -> Result<HeightSplit> {
    if h.values.len() != rs.rank() || h.values.iter().any(|&v| v < 0) {
        return Err(Error::Argument("a generalized height needs one non-negative value per simple root".into()));
    }
    let mut classes: BTreeMap<i64, Vec<WeightEntry>> = BTreeMap::new();
    for e in table.weights(rs)? {
        let ht = gen_height(rs, h, &e.mu)
            .ok_or_else(|| Error::Argument(format!("weight {:?} has non-integral generalized height", e.mu)))?;
        classes.entry(ht).or_default().push(e);
    }
    let phi_zero = (0..rs.num_roots())
        .filter(|&r| rs.root(r).iter().zip(&h.values).map(|(a, b)| a * b).sum::<i64>() == 0)
        .collect();
    Ok(HeightSplit { classes, phi_zero })
}

/// Decide whether strictly positive integers c_ν exist with Σ c_ν ν = 0.
/// Returns the certificate from the optimal vertex of
/// `min Σ c subject to Σ c_ν ν = 0, c ≥ 1`, scaled to coprime integers.
pub fn has_zlc(weights: &[Weight]) -> Option<Vec<u64>> {
    if weights.is_empty() {
        return Some(vec![]);
    }
    let n = weights.len();
    let dim = weights[0].len();
    // Substitute c = 1 + x with x ≥ 0: A x = −A·1.
    let a: Vec<Vec<BigRational>> = (0..dim).map(|r| weights.iter().map(|w| big(w[r])).collect()).collect();
    let b: Vec<BigRational> = (0..dim).map(|r| big(-weights.iter().map(|w| w[r]).sum::<i64>())).collect();
    let cost: Vec<BigRational> = vec![BigRational::one(); n];
    let x = linalg::simplex_min(&a, &b, &cost)?;
    let c: Vec<BigRational> = x.into_iter().map(|v| v + BigRational::one()).collect();
    let lcm = c.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = c.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    Some(ints.iter().map(|v| (v / &g).to_u64().unwrap_or(u64::MAX)).collect())
}

/// ZLCE via the reduction to Δ itself and every one-element extension inside
/// the ambient set.
pub fn has_zlce(delta: &[Weight], ambient: &[Weight]) -> Result<bool> {
    if let Some(w) = delta.iter().find(|w| !ambient.contains(w)) {
        return Err(Error::Argument(format!("{w:?} is not in the ambient set")));
    }
    if has_zlc(delta).is_none() {
        return Ok(false);
    }
    for nu in ambient.iter().filter(|w| !delta.contains(w)) {
        let mut ext = delta.to_vec();
        ext.push(nu.clone());
        if has_zlc(&ext).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
