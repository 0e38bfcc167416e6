//! Characteristics, element orders and the symbolic ranges scripts use for them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field characteristic: a prime, or zero (written ∞ in reports).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Char {
    P(u32),
    Zero,
}

impl Char {
    pub fn prime(self) -> Option<u32> {
        match self {
            Char::P(p) => Some(p),
            Char::Zero => None,
        }
    }

    /// ζ_{p,n}: 1 when p is finite and divides n.
    pub fn divides(self, n: i64) -> bool {
        match self {
            Char::P(p) => n % p as i64 == 0,
            Char::Zero => false,
        }
    }

    pub fn parse(s: &str) -> Result<Char> {
        let t = s.trim();
        if matches!(t, "inf" | "∞" | "0") {
            return Ok(Char::Zero);
        }
        let p: u32 = t.parse().map_err(|_| Error::Argument(format!("bad characteristic {s:?}")))?;
        if !is_prime(p as u64) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
        Ok(Char::P(p))
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Char::P(p) => write!(f, "{p}"),
            Char::Zero => write!(f, "∞"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Finite primes used to stand in for a symbolic range.
pub const PRIME_REPS: [u32; 5] = [2, 3, 5, 7, 11];

/// A set of primes such as `any`, `2`, `>=5` or `!=3`, optionally containing ∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClass {
    pub eq: Option<u32>,
    pub min: u32,
    pub ne: Vec<u32>,
    pub max: Option<u32>,
}

impl PrimeClass {
    pub fn any() -> PrimeClass {
        PrimeClass { eq: None, min: 2, ne: vec![], max: None }
    }

    /// Accepts `any`, `p`, `=p`, `>=p`, `≥p`, `!=p`, `≠p`, `<=p`, and
    /// comma-joined conjunctions such as `>=3,!=5`.
    pub fn parse(s: &str) -> Result<PrimeClass> {
        let mut c = PrimeClass::any();
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let bad = || Error::Argument(format!("bad prime class {s:?}"));
            let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
            if part == "any" {
                continue;
            } else if let Some(t) = part.strip_prefix(">=").or_else(|| part.strip_prefix('≥')) {
                c.min = c.min.max(num(t)?);
            } else if let Some(t) = part.strip_prefix("<=").or_else(|| part.strip_prefix('≤')) {
                c.max = Some(num(t)?);
            } else if let Some(t) = part.strip_prefix("!=").or_else(|| part.strip_prefix('≠')) {
                c.ne.push(num(t)?);
            } else if let Some(t) = part.strip_prefix('=') {
                c.eq = Some(num(t)?);
            } else {
                c.eq = Some(num(part)?);
            }
        }
        Ok(c)
    }

    pub fn contains(&self, p: u32) -> bool {
        if let Some(e) = self.eq {
            return p == e;
        }
        p >= self.min && !self.ne.contains(&p) && self.max.map_or(true, |m| p <= m)
    }

    pub fn contains_char(&self, c: Char) -> bool {
        match c {
            Char::P(p) => self.contains(p),
            Char::Zero => self.eq.is_none() && self.max.is_none(),
        }
    }

    pub fn intersect(&self, other: &PrimeClass) -> PrimeClass {
        let mut ne = self.ne.clone();
        ne.extend(other.ne.iter().copied());
        ne.sort();
        ne.dedup();
        let max = match (self.max, other.max) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        PrimeClass { eq: self.eq.or(other.eq), min: self.min.max(other.min), ne, max }
    }

    /// Finite representatives from [`PRIME_REPS`].
    pub fn finite_reps(&self) -> Vec<u32> {
        PRIME_REPS.iter().copied().filter(|&p| self.contains(p)).collect()
    }

    /// Representatives {2,3,5,7,∞} filtered by the class.
    pub fn char_reps(&self) -> Vec<Char> {
        let mut out: Vec<Char> = [2u32, 3, 5, 7].iter().filter(|&&p| self.contains(p)).map(|&p| Char::P(p)).collect();
        if let Some(e) = self.eq {
            if !out.contains(&Char::P(e)) {
                out.push(Char::P(e));
            }
        }
        if self.contains_char(Char::Zero) {
            out.push(Char::Zero);
        }
        out
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = self.eq {
            return write!(f, "{e}");
        }
        let mut parts = Vec::new();
        if self.min > 2 {
            parts.push(format!(">={}", self.min));
        }
        for n in &self.ne {
            parts.push(format!("!={n}"));
        }
        if let Some(m) = self.max {
            parts.push(format!("<={m}"));
        }
        if parts.is_empty() {
            write!(f, "any")
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}
