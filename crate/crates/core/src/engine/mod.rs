//! Verification: escalation scripts, family sweeps and the table arithmetic.

pub mod dense;
pub mod expr;
pub mod run;
pub mod script;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::PrimeClass;
use crate::rootsys::Family;
use crate::tuples::{b_min, DimTuple};

pub use run::{run_script, RunOptions, StageRecord, Verdict, VerificationReport};
pub use script::{embedded_scripts, find_script, Script};

/// `(G, λ, p, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadruple {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub lambda: Vec<i64>,
    pub p: String,
    pub k: i64,
}

impl Quadruple {
    /// Parse `A5:w2:any:4` or `A3:w1+w2:3:2`. The k field may be omitted.
    pub fn parse(s: &str) -> Result<Quadruple> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Argument(format!("bad quadruple {s:?}; expected TYPE+RANK:wI[+wJ]:PCLASS:K"));
        if parts.len() < 2 || parts.len() > 4 {
            return Err(bad());
        }
        let g = parts[0].trim();
        let family = Family::parse(g.get(..1).ok_or_else(bad)?)?;
        let rank: usize = g[1..].parse().map_err(|_| bad())?;
        let lambda = parse_lambda(parts[1], rank)?;
        let p = parts.get(2).map_or("any", |x| x.trim()).to_string();
        PrimeClass::parse(&p)?;
        let k = match parts.get(3) {
            Some(x) => x.trim().parse().map_err(|_| bad())?,
            None => 0,
        };
        Ok(Quadruple { family, rank, lambda, p, k })
    }

    pub fn key(&self) -> String {
        format!("{}{}:{}:{}:{}", self.family, self.rank, lambda_label(&self.lambda), self.p, self.k)
    }
}

/// `w2`, `2w1`, `w1+3w2`, or plain coordinates `0,1,0`.
pub fn parse_lambda(s: &str, rank: usize) -> Result<Vec<i64>> {
    let s = s.trim();
    let bad = || Error::Argument(format!("bad highest weight {s:?}"));
    if s.contains(',') || s.chars().all(|c| c.is_ascii_digit()) && s.len() == rank {
        let v: Vec<i64> = if s.contains(',') {
            s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(i64::from).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if v.len() != rank {
            return Err(bad());
        }
        return Ok(v);
    }
    let mut v = vec![0; rank];
    for term in s.split('+') {
        let (coef, idx) = term.trim().split_once(['w', 'ω']).ok_or_else(bad)?;
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 || i > rank {
            return Err(bad());
        }
        v[i - 1] += c;
    }
    Ok(v)
}

/// Inverse of [`parse_lambda`]'s shorthand form.
pub fn lambda_label(lambda: &[i64]) -> String {
    let t: Vec<String> = lambda
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("w{}", i + 1) } else { format!("{c}w{}", i + 1) })
        .collect();
    if t.is_empty() {
        "0".into()
    } else {
        t.join("+")
    }
}

/// What `g` looks like on V: eigenspace dimensions of a semisimple element
/// or Jordan block sizes of a unipotent one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSpec {
    Eigenspaces(Vec<i64>),
    Blocks(Vec<usize>),
}

/// Codimension of the fixed points of `g` on the Grassmannian of k-spaces:
/// `B_{d,k}` for the tuple of eigenspace dimensions, or for
/// `d_i = b_i + … + b_t` where `b_j` counts Jordan blocks of size j.
pub fn codim_fixed_grassmann(g: &ElementSpec, k: i64) -> Result<i64> {
    let d = match g {
        ElementSpec::Eigenspaces(dims) => DimTuple::new(dims.iter().copied().filter(|&x| x > 0).collect())?,
        ElementSpec::Blocks(blocks) => {
            let max = blocks.iter().copied().max().unwrap_or(0);
            let parts: Vec<i64> = (1..=max).map(|i| blocks.iter().filter(|&&b| b >= i).count() as i64).collect();
            DimTuple::new(parts)?
        }
    };
    if k > d.total() {
        return Err(Error::Argument(format!("k={k} exceeds dim V = {}", d.total())));
    }
    Ok(b_min(&d, k)?.value)
}
