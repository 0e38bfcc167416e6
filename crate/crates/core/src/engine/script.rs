//! Escalation scripts: the stage-by-stage data a verification run replays.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::data;
use crate::error::{Error, Result};
use crate::rootsys::Family;

fn any() -> String {
    "any".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptFile {
    pub scripts: Vec<Script>,
}

/// One quadruple and the stages that certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    pub id: String,
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub lambda: Vec<i64>,
    #[serde(default = "any")]
    pub p: String,
    pub k0: i64,
    /// Modulus n of the ζ_{p,n} appearing in the expressions.
    #[serde(default)]
    pub zeta: Option<i64>,
    /// Expected `M` and `M_r` values, keyed `M`, `M2`, `M3`, `M5`.
    #[serde(default)]
    pub bounds: BTreeMap<String, i64>,
    /// Kinds of trusted fact this script may consume: `closure`, `disjoint`.
    #[serde(default)]
    pub trusted: Vec<String>,
    /// Set when the quadruple follows from another script.
    #[serde(default)]
    pub alias: Option<Alias>,
    #[serde(default)]
    pub stages: Vec<Stage>,
    #[serde(default)]
    pub cite: String,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alias {
    pub of: String,
    pub how: String,
}

/// A subsystem generated by simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiSpec {
    pub simple: Vec<usize>,
    pub label: String,
    /// `[a1, a2, b]` naming the characteristic-two class `W(1)^a1 W(2)^a2 V(2)^b`
    /// of a regular element, for types B, C, D.
    #[serde(default)]
    pub p2: Option<[usize; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    /// Semisimple elements of order r.
    S,
    /// Unipotent elements of order p.
    U,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub kind: ColumnKind,
    #[serde(default = "any")]
    pub r: String,
    #[serde(default = "any")]
    pub p: String,
}

/// Expected data for one net type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSpec {
    pub label: String,
    /// Orbit index to number of weights.
    pub n: BTreeMap<usize, usize>,
    pub m: usize,
    /// Group totals per column; empty strings mean 0.
    pub c: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub psi: PsiSpec,
    pub columns: Vec<Column>,
    #[serde(default)]
    pub rows: Vec<RowSpec>,
    pub totals: Vec<String>,
    pub branches: Vec<Branch>,
    /// Stages sharing a group are alternatives chosen by a disjointness
    /// argument; each must hold on its own.
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    #[serde(default = "any")]
    pub r: String,
    #[serde(default = "any")]
    pub p: String,
    /// Column indices whose minimum bounds the codimension.
    pub uses: Vec<usize>,
    pub c: String,
    pub d0: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(default)]
    pub kappa: Vec<KappaValue>,
    #[serde(default)]
    pub chain: Vec<Relation>,
    #[serde(default)]
    pub next: Option<NextSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaValue {
    pub kappa: Vec<i64>,
    pub value: i64,
}

/// `lhs rel rhs`, where terms are `B`, `c`, `d`, `M`, `M2`, `M3`, `M5`,
/// `dim_u` (the regular class of the stage's subsystem) or an expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: String,
    pub rel: String,
    pub rhs: String,
    /// Expected value of `rhs`.
    #[serde(default)]
    pub value: Option<String>,
}

/// What the following stage relies on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NextSpec {
    /// Expected `M − B`: remaining semisimple elements have at most this many
    /// roots in their centralizer.
    #[serde(default)]
    pub phi_max: Option<String>,
    /// Subsystems, one of which has a conjugate avoiding every such centralizer.
    #[serde(default)]
    pub disjoint: Vec<PsiSpec>,
    /// Expected `m_Ψ` for the first entry of `disjoint`.
    #[serde(default)]
    pub m_psi: Option<i64>,
    /// Prime orders the disjointness claim covers.
    #[serde(default)]
    pub r: Option<String>,
    /// Expected lower bound on the remaining unipotent class dimensions.
    #[serde(default)]
    pub unip_min: Option<String>,
    /// Subsystems whose regular classes lie in the closure of every
    /// remaining class.
    #[serde(default)]
    pub closure: Vec<PsiSpec>,
    /// Characteristics the closure claim covers.
    #[serde(default)]
    pub p: Option<String>,
}

/// All embedded scripts.
pub fn embedded_scripts() -> Result<Vec<Script>> {
    let f: ScriptFile = data::load_json("scripts.json")?;
    Ok(f.scripts)
}

/// Find a script by id (such as `A5:w2`) or by quadruple shorthand.
pub fn find_script(key: &str) -> Result<Script> {
    let scripts = embedded_scripts()?;
    if let Some(s) = scripts.iter().find(|s| s.id == key) {
        return Ok(s.clone());
    }
    let q = crate::engine::Quadruple::parse(key)?;
    scripts
        .into_iter()
        .find(|s| {
            s.family == q.family && s.rank == q.rank && s.lambda == q.lambda && (q.p == "any" || q.p == s.p)
        })
        .ok_or_else(|| Error::DataMissing(format!("no escalation script for {key}")))
}
