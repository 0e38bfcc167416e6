//! Integer expressions in script data. Two variables are available:
//! `z` is ζ_{p,n} for the script's modulus n, and `p2` is 1 exactly in
//! characteristic 2.

use evalexpr::{eval_int_with_context, ContextWithMutableVariables, HashMapContext, Value};

use crate::error::{Error, Result};
use crate::primes::Char;

/// Values of the script variables at one characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vars {
    pub z: i64,
    pub p2: i64,
}

impl Vars {
    pub fn at(p: Char, zeta_modulus: Option<i64>) -> Vars {
        let z = zeta_modulus.map_or(0, |n| i64::from(p.divides(n)));
        Vars { z, p2: i64::from(p == Char::P(2)) }
    }
}

/// Evaluate one integer expression; an empty string means 0.
pub fn eval(expr: &str, vars: Vars) -> Result<i64> {
    let t = expr.trim();
    if t.is_empty() {
        return Ok(0);
    }
    let mut ctx = HashMapContext::new();
    let set = |ctx: &mut HashMapContext, k: &str, v: i64| {
        ctx.set_value(k.into(), Value::Int(v)).map_err(|e| Error::Internal(e.to_string()))
    };
    set(&mut ctx, "z", vars.z)?;
    set(&mut ctx, "p2", vars.p2)?;
    eval_int_with_context(t, &ctx).map_err(|e| Error::Data(format!("expression {t:?}: {e}")))
}

/// Evaluate with arbitrary named integer variables.
pub fn eval_with(expr: &str, vars: &[(&str, i64)]) -> Result<i64> {
    let mut ctx = HashMapContext::new();
    for (k, v) in vars {
        ctx.set_value((*k).into(), Value::Int(*v)).map_err(|e| Error::Internal(e.to_string()))?;
    }
    eval_int_with_context(expr.trim(), &ctx).map_err(|e| Error::Data(format!("expression {expr:?}: {e}")))
}

/// Evaluate a comma-separated list such as `38-z,38-z,2+z`.
pub fn eval_list(expr: &str, vars: Vars) -> Result<Vec<i64>> {
    expr.split(',').map(|s| eval(s, vars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_and_p2() {
        let v = Vars::at(Char::P(3), Some(3));
        assert_eq!(eval("16-2*z", v).unwrap(), 14);
        assert_eq!(eval("22-6*p2", Vars::at(Char::P(2), Some(3))).unwrap(), 16);
        assert_eq!(eval("", v).unwrap(), 0);
        assert_eq!(eval_list("38-z, 38-z, 2+z", Vars::at(Char::Zero, Some(3))).unwrap(), vec![38, 38, 2]);
    }
}
