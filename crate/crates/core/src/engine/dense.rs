//! Dimension arithmetic for the tabulated generic stabilizers: a dense orbit
//! exists exactly when `dim G − dim C = k(d − k)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::expr::eval_with;
use super::parse_lambda;
use crate::data;
use crate::error::{Error, Result};
use crate::primes::{Char, PrimeClass};
use crate::rootsys::{Family, RootSystem};

/// Dimension of the simple group of the given type.
pub fn simple_dim(letter: char, n: i64) -> Result<i64> {
    let bad = || Error::Argument(format!("no simple group {letter}{n}"));
    if n < 0 {
        return Err(bad());
    }
    Ok(match letter {
        'A' => n * n + 2 * n,
        'B' | 'C' => 2 * n * n + n,
        'D' => 2 * n * n - n,
        'G' if n == 2 => 14,
        'F' if n == 4 => 52,
        'E' if n == 6 => 78,
        'E' if n == 7 => 133,
        'E' if n == 8 => 248,
        _ => return Err(bad()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    /// A simple factor; `tilde` marks one generated by short root groups.
    Simple { letter: char, tilde: bool },
    Torus,
    Unipotent,
    /// `Z`, `S` or `Dih`: contributes nothing to the dimension.
    Finite(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub index: i64,
    pub power: i64,
}

impl Factor {
    pub fn dim(&self) -> Result<i64> {
        let one = match &self.kind {
            FactorKind::Simple { letter, .. } => simple_dim(*letter, self.index)?,
            FactorKind::Torus | FactorKind::Unipotent => self.index,
            FactorKind::Finite(_) => 0,
        };
        Ok(one * self.power)
    }
}

/// A parsed stabilizer such as `A2T1.Z2`, `~A1^2`, `A{l-k}A{k-1}T1U{k*(l+1-k)}`
/// or `A₂T₁.Z₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerDescriptor {
    pub text: String,
    pub factors: Vec<Factor>,
    pub dimension: i64,
    /// The `(*)` marker: the stabilizer of a generic point is only known up
    /// to this structure.
    pub marked: bool,
}

fn normalize(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).unwrap(),
            '−' => '-',
            '˜' => '~',
            _ => c,
        })
        .filter(|c| !c.is_whitespace() && *c != '_')
        .collect()
}

struct Cursor<'a> {
    s: &'a [char],
    i: usize,
    vars: &'a [(&'a str, i64)],
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn bad(&self) -> Error {
        let text: String = self.s.iter().collect();
        Error::Argument(format!("bad stabilizer {text:?} at position {}", self.i))
    }

    /// Digits, or a braced expression; `None` if neither is present.
    fn number(&mut self, evaluate: bool) -> Result<Option<i64>> {
        match self.peek() {
            Some('{') => {
                let start = self.i + 1;
                let mut depth = 0;
                while let Some(c) = self.peek() {
                    self.i += 1;
                    match c {
                        '{' => depth += 1,
                        '}' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                if depth != 0 {
                    return Err(self.bad());
                }
                let inner: String = self.s[start..self.i - 1].iter().collect();
                if !evaluate {
                    return Ok(Some(0));
                }
                eval_with(&inner, self.vars).map(Some)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.i += 1;
                }
                let t: String = self.s[start..self.i].iter().collect();
                t.parse().map(Some).map_err(|_| self.bad())
            }
            Some(c) if c.is_ascii_lowercase() && evaluate => {
                let start = self.i;
                while self.peek().is_some_and(|c| c.is_ascii_lowercase()) {
                    self.i += 1;
                }
                let t: String = self.s[start..self.i].iter().collect();
                eval_with(&t, self.vars).map(Some)
            }
            _ => Ok(None),
        }
    }
}

impl StabilizerDescriptor {
    /// Parse with the index expressions evaluated at `vars` (names `l`, `k`).
    pub fn parse(text: &str, vars: &[(&str, i64)]) -> Result<StabilizerDescriptor> {
        let norm = normalize(text);
        let (body, marked) = match norm.strip_suffix("(*)") {
            Some(b) => (b.to_string(), true),
            None => (norm.clone(), false),
        };
        let chars: Vec<char> = body.chars().collect();
        let mut cur = Cursor { s: &chars, i: 0, vars };
        let mut factors = Vec::new();
        while let Some(c) = cur.peek() {
            if c == '.' {
                cur.i += 1;
                continue;
            }
            let tilde = c == '~';
            if tilde {
                cur.i += 1;
            }
            let letter = cur.peek().ok_or_else(|| cur.bad())?;
            cur.i += 1;
            let kind = match letter {
                'A'..='G' => FactorKind::Simple { letter, tilde },
                'T' if !tilde => FactorKind::Torus,
                'U' if !tilde => FactorKind::Unipotent,
                'Z' | 'S' if !tilde => FactorKind::Finite(letter.to_string()),
                _ => return Err(cur.bad()),
            };
            // `Dih` is finite even though it starts like a D factor.
            let kind = if letter == 'D' && chars[cur.i..].starts_with(&['i', 'h']) {
                cur.i += 2;
                FactorKind::Finite("Dih".into())
            } else {
                kind
            };
            let finite = matches!(kind, FactorKind::Finite(_));
            let index = cur.number(!finite)?.ok_or_else(|| cur.bad())?;
            let power = if cur.peek() == Some('^') {
                cur.i += 1;
                cur.number(true)?.ok_or_else(|| cur.bad())?
            } else {
                1
            };
            if index < 0 || power < 0 {
                return Err(cur.bad());
            }
            factors.push(Factor { kind, index, power });
        }
        let dimension = factors.iter().map(Factor::dim).sum::<Result<i64>>()?;
        Ok(StabilizerDescriptor { text: text.to_string(), factors, dimension, marked })
    }
}

/// One row of the embedded stabilizer tables, possibly parametric in ℓ and k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// 1: large higher quadruples without TGS; 2: small classical; 3: small exceptional.
    pub table: u8,
    #[serde(rename = "type")]
    pub family: Family,
    pub lambda: String,
    pub l_min: usize,
    pub l_max: Option<usize>,
    #[serde(default)]
    pub l_parity: Option<String>,
    pub p: String,
    /// A number, or `any`, `odd`, `even`.
    pub k: serde_json::Value,
    pub stabilizer: String,
    /// Expression in `l` for dim V at the row's characteristics.
    pub dim_v: String,
    #[serde(default)]
    pub dense: Option<bool>,
    /// λ = ω1 + qω1 with q a power of p.
    #[serde(default)]
    pub twisted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub rows: Vec<TableRow>,
}

/// The embedded rows.
pub fn embedded_rows() -> Result<Vec<TableRow>> {
    let f: TableFile = data::load_json("tables.json")?;
    Ok(f.rows)
}

/// How far past `l_min` an unbounded row is instantiated.
pub const OPEN_RANK_SPAN: usize = 6;

/// A row at concrete ℓ, p and k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowInstance {
    pub table: u8,
    pub group: String,
    pub lambda: Vec<i64>,
    pub p: String,
    pub k: i64,
    pub d: i64,
    pub dim_g: i64,
    pub dim_c: i64,
    pub stabilizer: String,
}

impl RowInstance {
    pub fn grassmannian_dim(&self) -> i64 {
        self.k * (self.d - self.k)
    }

    pub fn is_dense(&self) -> bool {
        self.dim_g - self.dim_c == self.grassmannian_dim()
    }
}

fn min_rank(f: Family) -> usize {
    match f {
        Family::B => 2,
        Family::C => 3,
        Family::D => 4,
        _ => 1,
    }
}

impl TableRow {
    pub fn ranks(&self) -> Vec<usize> {
        let hi = self.l_max.unwrap_or(self.l_min + OPEN_RANK_SPAN);
        (self.l_min.max(min_rank(self.family))..=hi)
            .filter(|l| match self.l_parity.as_deref() {
                Some("odd") => l % 2 == 1,
                Some("even") => l % 2 == 0,
                _ => true,
            })
            .collect()
    }

    fn ks(&self, d: i64) -> Result<Vec<i64>> {
        let all = 1..=d / 2;
        Ok(match &self.k {
            serde_json::Value::Number(n) => vec![n.as_i64().ok_or_else(|| Error::Data(format!("bad k {n}")))?],
            serde_json::Value::String(s) if s == "any" => all.collect(),
            serde_json::Value::String(s) if s == "odd" => all.filter(|k| k % 2 == 1).collect(),
            serde_json::Value::String(s) if s == "even" => all.filter(|k| k % 2 == 0).collect(),
            other => return Err(Error::Data(format!("bad k {other}"))),
        })
    }

    /// Every concrete instance: ranks as in [`TableRow::ranks`], each
    /// representative characteristic, each admissible k.
    pub fn instances(&self) -> Result<Vec<RowInstance>> {
        let class = PrimeClass::parse(&self.p)?;
        let mut out = Vec::new();
        for l in self.ranks() {
            let rs = RootSystem::build(self.family, l)?;
            let dim_g = rs.dim_group() as i64;
            let d = eval_with(&self.dim_v, &[("l", l as i64)])?;
            for p in class.char_reps() {
                if self.twisted && p == Char::Zero {
                    continue;
                }
                let lambda = if self.twisted {
                    let q = i64::from(p.prime().unwrap_or(0));
                    let mut v = vec![0; l];
                    v[0] = 1 + q;
                    v
                } else {
                    parse_lambda(&self.lambda, l)?
                };
                for k in self.ks(d)? {
                    let c = StabilizerDescriptor::parse(&self.stabilizer, &[("l", l as i64), ("k", k)])?;
                    out.push(RowInstance {
                        table: self.table,
                        group: rs.name(),
                        lambda: lambda.clone(),
                        p: p.to_string(),
                        k,
                        d,
                        dim_g,
                        dim_c: c.dimension,
                        stabilizer: self.stabilizer.clone(),
                    });
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseCheck {
    pub instance: RowInstance,
    pub dense: bool,
    /// What the table says: its dense column, or `false` for large rows.
    pub expected: bool,
    pub ok: bool,
}

/// Check every instance of one row.
pub fn dense_orbit_check(row: &TableRow) -> Result<Vec<DenseCheck>> {
    let expected = match (row.table, row.dense) {
        (1, _) => false,
        (_, Some(x)) => x,
        (t, None) => return Err(Error::Data(format!("table {t} row {} {} has no dense entry", row.family, row.lambda))),
    };
    Ok(row
        .instances()?
        .into_iter()
        .map(|instance| {
            let dense = instance.is_dense();
            DenseCheck { instance, dense, expected, ok: dense == expected }
        })
        .collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    /// Pairs of rows compared for monotonicity in k.
    pub compared: usize,
    pub failures: Vec<String>,
    /// Non-natural quadruples found in the tables with k ≥ 4.
    pub high_k: Vec<String>,
}

impl CorollaryReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Quadruples other than natural modules allowed to lack TGS at k ≥ 4.
pub const HIGH_K_EXCEPTIONS: &[&str] = &["A4:w2:4", "A4:w2:5", "B3:w3:4", "C3:w3:4", "D5:w5:4"];

fn is_natural(inst: &RowInstance) -> bool {
    inst.group.starts_with(['A', 'B', 'C', 'D']) && inst.lambda.iter().skip(1).all(|&x| x == 0) && inst.lambda[0] == 1
}

/// Check the tables against two consequences of the general theory: the
/// generic stabilizer dimension does not increase with k, and beyond
/// natural modules only the listed quadruples have k ≥ 4.
pub fn corollary_checks(rows: &[TableRow]) -> Result<CorollaryReport> {
    let mut report = CorollaryReport::default();
    let mut by_triple: BTreeMap<(String, Vec<i64>, String), BTreeMap<i64, (i64, String)>> = BTreeMap::new();
    let mut high = BTreeSet::new();
    for row in rows {
        for inst in row.instances()? {
            if inst.k >= 4 && !is_natural(&inst) {
                high.insert(format!("{}:{}:{}", inst.group, super::lambda_label(&inst.lambda), inst.k));
            }
            let key = (inst.group.clone(), inst.lambda.clone(), inst.p.clone());
            let ks = by_triple.entry(key).or_default();
            if let Some((old, _)) = ks.get(&inst.k) {
                if *old != inst.dim_c {
                    report.failures.push(format!(
                        "{} {:?} p={} k={}: two rows give dimensions {old} and {}",
                        inst.group, inst.lambda, inst.p, inst.k, inst.dim_c
                    ));
                }
            }
            ks.insert(inst.k, (inst.dim_c, inst.stabilizer.clone()));
        }
    }
    for ((g, lambda, p), ks) in &by_triple {
        let seq: Vec<_> = ks.iter().collect();
        for w in seq.windows(2) {
            let ((k1, (c1, s1)), (k2, (c2, s2))) = (w[0], w[1]);
            report.compared += 1;
            if c1 < c2 {
                report.failures.push(format!("{g} {lambda:?} p={p}: k={k1} gives {s1} (dim {c1}) but k={k2} gives {s2} (dim {c2})"));
            }
        }
    }
    let expected: BTreeSet<String> = HIGH_K_EXCEPTIONS.iter().map(|s| s.to_string()).collect();
    if !rows.is_empty() && high != expected {
        report.failures.push(format!("quadruples with k >= 4 are {high:?}, expected {expected:?}"));
    }
    report.high_k = high.into_iter().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_dims() {
        let d = |s: &str| StabilizerDescriptor::parse(s, &[("l", 4), ("k", 2)]).unwrap().dimension;
        assert_eq!(d("A₂T₁.Z₂"), 9);
        assert_eq!(d("A2.Z{3/(3,p)}.S3"), 8);
        assert_eq!(d("~A1^2"), 6);
        assert_eq!(d("A1U2"), 5);
        assert_eq!(d("Z{5/(5,p)}.Dih10"), 0);
        assert_eq!(d("A{l-k}A{k-1}T1U{k*(l+1-k)}"), 8 + 3 + 1 + 6);
        assert_eq!(d("G2B1"), 17);
        assert!(StabilizerDescriptor::parse("B1^2(*)", &[]).unwrap().marked);
        assert!(StabilizerDescriptor::parse("Q3", &[]).is_err());
    }
}
