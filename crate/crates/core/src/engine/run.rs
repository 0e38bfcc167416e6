//! Replaying an escalation script against independent computation.

use std::collections::BTreeMap;

use serde::Serialize;

use super::expr::{eval, eval_list, Vars};
use super::script::{Branch, Column, ColumnKind, NextSpec, PsiSpec, Relation, Script, Stage};
use super::{lambda_label, Quadruple};
use crate::classes::{
    closure_above, dim_unip_class, disjoint_below, m_psi, BoundTable, ClosureCheck, Provenance, UnipotentSpec,
};
use crate::error::{Error, Result};
use crate::primes::{Char, PrimeClass};
use crate::psinets::{NetTable, PsiBase};
use crate::rootsys::{parse_cartan_types, Family, RootSystem, Subsystem, DEFAULT_CONJUGATE_CAP};
use crate::tuples::{b_min, b_of_pair, bounded_tuple, DimTuple};
use crate::weights::{weight_table, SourcePolicy, WeightTable};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Run conjugate searches in E7 and E8 instead of consuming trusted facts.
    pub deep: bool,
    /// Replace the script's k; expected B values are then not compared.
    pub k: Option<i64>,
    pub cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { deep: false, k: None, cap: DEFAULT_CONJUGATE_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    /// Certified, but only after consuming whitelisted trusted facts.
    CertifiedWithTrusted { trusted: usize },
    /// Some side condition could be neither computed nor looked up.
    NeedsTrustedFacts { gaps: Vec<String> },
    FailedAtStage { stage: usize },
}

impl Verdict {
    /// 0 for a clean certificate, 2 when trusted facts were needed, 1 on failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Certified => 0,
            Verdict::CertifiedWithTrusted { .. } | Verdict::NeedsTrustedFacts { .. } => 2,
            Verdict::FailedAtStage { .. } => 1,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified | Verdict::CertifiedWithTrusted { .. })
    }
}

/// One branch of one stage evaluated at one characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: usize,
    pub psi: String,
    pub r: String,
    pub p: String,
    pub c_ss: Option<i64>,
    pub c_u: Option<i64>,
    pub d0: Vec<i64>,
    #[serde(rename = "B")]
    pub b: i64,
    pub target: String,
    pub margin: i64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub quadruple: Quadruple,
    pub script: String,
    pub stages: Vec<StageRecord>,
    /// Numbers compared against the script.
    pub checked: usize,
    pub mismatches: Vec<String>,
    pub trusted: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Collects comparisons for one run.
struct Ledger {
    checked: usize,
    mismatches: Vec<(usize, String)>,
    trusted: Vec<String>,
    gaps: Vec<String>,
}

impl Ledger {
    fn expect(&mut self, stage: usize, what: impl FnOnce() -> String, expected: i64, got: i64) {
        self.checked += 1;
        if expected != got {
            self.mismatches.push((stage, format!("stage {stage}: {}: expected {expected}, computed {got}", what())));
        }
    }

    fn require(&mut self, stage: usize, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches.push((stage, format!("stage {stage}: {}", what())));
        }
    }
}

struct Ctx<'a> {
    script: &'a Script,
    rs: RootSystem,
    bounds: BoundTable,
    k: i64,
    compare_b: bool,
    opts: &'a RunOptions,
    tables: BTreeMap<Char, WeightTable>,
}

impl Ctx<'_> {
    fn vars(&self, p: Char) -> Vars {
        Vars::at(p, self.script.zeta)
    }

    fn table(&self, p: Char) -> Option<&WeightTable> {
        self.tables.get(&p)
    }

    fn trusted_ok(&self, kind: &str) -> bool {
        self.script.trusted.iter().any(|t| t == kind)
    }
}

/// Replay `script`, recomputing every number it states.
pub fn run_script(script: &Script, opts: &RunOptions) -> Result<VerificationReport> {
    let k = opts.k.unwrap_or(script.k0);
    let quadruple =
        Quadruple { family: script.family, rank: script.rank, lambda: script.lambda.clone(), p: script.p.clone(), k };
    let mut ledger = Ledger { checked: 0, mismatches: vec![], trusted: vec![], gaps: vec![] };
    if let Some(alias) = &script.alias {
        let target = super::find_script(&alias.of)?;
        let mut inner = run_script(&target, &RunOptions { k: None, ..opts.clone() })?;
        inner.quadruple = quadruple;
        inner.script = script.id.clone();
        inner.trusted.push(format!("{} follows from {} by {}", script.id, alias.of, alias.how));
        if inner.verdict == Verdict::Certified {
            inner.verdict = Verdict::CertifiedWithTrusted { trusted: inner.trusted.len() };
        } else if let Verdict::CertifiedWithTrusted { trusted } = inner.verdict {
            inner.verdict = Verdict::CertifiedWithTrusted { trusted: trusted + 1 };
        }
        return Ok(inner);
    }
    if script.stages.is_empty() {
        return Ok(VerificationReport {
            quadruple,
            script: script.id.clone(),
            stages: vec![],
            checked: 0,
            mismatches: vec![],
            trusted: vec![],
            verdict: Verdict::NeedsTrustedFacts { gaps: vec!["the script has no stages".into()] },
        });
    }
    let rs = RootSystem::build(script.family, script.rank)?;
    let bounds = BoundTable::new(&rs)?;
    for (key, &v) in &script.bounds {
        let got = bound_term(&bounds, key)?;
        ledger.expect(0, || key.clone(), v, got);
    }
    let pclass = PrimeClass::parse(&script.p)?;
    let mut tables = BTreeMap::new();
    for p in pclass.char_reps() {
        match weight_table(&rs, &script.lambda, Some(p), SourcePolicy::EmbeddedOnly) {
            Ok(t) => {
                if 2 * k > t.dim(p) {
                    return Err(Error::Argument(format!("k={k} exceeds dim V/2 at p={p}")));
                }
                tables.insert(p, t);
            }
            Err(Error::DataMissing(m)) => ledger.gaps.push(m),
            Err(e) => return Err(e),
        }
    }
    let ctx = Ctx { script, rs, bounds, k, compare_b: opts.k.is_none() || opts.k == Some(script.k0), opts, tables };
    let mut records = Vec::new();
    for (i, stage) in script.stages.iter().enumerate() {
        run_stage(&ctx, i + 1, stage, &mut ledger, &mut records)?;
    }
    let last = script.stages.len();
    let finishes = script.stages[last - 1]
        .branches
        .iter()
        .all(|b| b.chain.iter().any(|r| r.lhs == "B" && r.rel == ">" && r.rhs.starts_with('M')));
    ledger.require(last, finishes, || "the final stage does not reach M or M_r in every branch".into());

    let verdict = if let Some((stage, _)) = ledger.mismatches.first() {
        Verdict::FailedAtStage { stage: *stage }
    } else if !ledger.gaps.is_empty() {
        Verdict::NeedsTrustedFacts { gaps: ledger.gaps.clone() }
    } else if !ledger.trusted.is_empty() {
        Verdict::CertifiedWithTrusted { trusted: ledger.trusted.len() }
    } else {
        Verdict::Certified
    };
    Ok(VerificationReport {
        quadruple,
        script: script.id.clone(),
        stages: records,
        checked: ledger.checked,
        mismatches: ledger.mismatches.into_iter().map(|(_, m)| m).collect(),
        trusted: ledger.trusted,
        verdict,
    })
}

fn bound_term(b: &BoundTable, key: &str) -> Result<i64> {
    match key {
        "M" => Ok(b.m),
        "M2" => Ok(b.m2),
        "M3" => Ok(b.m3),
        "M5" => b.m5.ok_or_else(|| Error::DataMissing(format!("M5 for {}{}", b.family, b.rank))),
        other => Err(Error::Data(format!("unknown bound {other:?}"))),
    }
}

fn psi_subsystem(rs: &RootSystem, spec: &PsiSpec) -> Result<(PsiBase, Subsystem)> {
    let base = PsiBase::standard(rs, &spec.simple)?;
    let sub = rs.standard_subsystem(&spec.simple)?;
    Ok((base, sub))
}

/// The regular class of a subsystem, in the notation the group needs at p.
fn regular_class(rs: &RootSystem, spec: &PsiSpec, sub: &Subsystem, p: Char) -> Result<UnipotentSpec> {
    if p == Char::P(2) && matches!(rs.family(), Family::B | Family::C | Family::D) {
        let [a1, a2, b] = spec
            .p2
            .ok_or_else(|| Error::DataMissing(format!("characteristic-two name of the {} class", spec.label)))?;
        return Ok(UnipotentSpec::P2 { a1, a2, b });
    }
    if rs.family().is_classical() {
        Ok(UnipotentSpec::regular(&spec.label, sub.clone()))
    } else {
        Ok(UnipotentSpec::Regular { label: spec.label.clone(), psi: Some(sub.clone()) })
    }
}

/// Column values at one characteristic: for `S` columns the minimum over the
/// prime orders `r ≠ p` allowed by both the column and `rclass`.
fn column_at(table: &NetTable, col: &Column, rclass: &PrimeClass, p: Char) -> Result<Option<i64>> {
    match col.kind {
        ColumnKind::U => Ok(Some(table.c_u(p)?)),
        ColumnKind::S => {
            let rs = PrimeClass::parse(&col.r)?.intersect(rclass);
            let vals: Vec<i64> = rs
                .finite_reps()
                .into_iter()
                .filter(|&r| Char::P(r) != p)
                .map(|r| table.c_ss(r, p))
                .collect();
            Ok(vals.into_iter().min())
        }
    }
}

fn run_stage(ctx: &Ctx, idx: usize, stage: &Stage, ledger: &mut Ledger, records: &mut Vec<StageRecord>) -> Result<()> {
    let rs = &ctx.rs;
    let (psi, sub) = psi_subsystem(rs, &stage.psi)?;
    let expected_types = parse_cartan_types(&stage.psi.label)?;
    ledger.require(idx, sub.cartan_types() == expected_types, || {
        format!("Ψ = ⟨{:?}⟩ has type {} rather than {}", stage.psi.simple, sub.label(), stage.psi.label)
    });
    if stage.columns.len() != stage.totals.len() {
        return Err(Error::Data(format!("{} stage {idx}: one total per column", ctx.script.id)));
    }
    // Net tables per distinct weight table.
    let mut nets: BTreeMap<String, NetTable> = BTreeMap::new();
    for t in ctx.tables.values() {
        if !nets.contains_key(&t.id) {
            let nt = NetTable::build(rs, t, &psi)?;
            for (&i, &n) in &nt.orbit_totals() {
                let orbit = t.row(i).map_or(0, |r| r.orbit);
                ledger.expect(idx, || format!("weights of orbit {i} across nets"), orbit as i64, n as i64);
            }
            nets.insert(t.id.clone(), nt);
        }
    }
    let net_at = |p: Char| ctx.table(p).map(|t| &nets[&t.id]);

    // Per-column checks at every representative.
    let any_r = PrimeClass::any();
    for (ci, col) in stage.columns.iter().enumerate() {
        let pc = PrimeClass::parse(&col.p)?;
        for p in pc.char_reps() {
            let Some(nt) = net_at(p) else { continue };
            let vars = ctx.vars(p);
            let expected = eval(&stage.totals[ci], vars)?;
            let reps: Vec<Option<u32>> = match col.kind {
                ColumnKind::U => vec![None],
                ColumnKind::S => PrimeClass::parse(&col.r)?
                    .intersect(&any_r)
                    .finite_reps()
                    .into_iter()
                    .filter(|&r| Char::P(r) != p)
                    .map(Some)
                    .collect(),
            };
            for r in reps {
                let got = match r {
                    None => nt.c_u(p)?,
                    Some(r) => nt.c_ss(r, p),
                };
                let tag = r.map_or(format!("c_u at p={p}"), |r| format!("c_ss at r={r}, p={p}"));
                ledger.expect(idx, || format!("{} total, {tag}", stage.psi.label), expected, got);
                for row in &stage.rows {
                    check_row(ledger, idx, nt, row, ci, r, p, vars)?;
                }
            }
        }
    }
    for row in &stage.rows {
        let reference = ctx.tables.values().next().map(|t| &nets[&t.id]);
        if let Some(nt) = reference {
            let found = nt.groups.iter().any(|g| same_label(&g.label, &row.label) && g.counts == row.n);
            ledger.require(idx, found, || format!("no net of type {} with counts {:?}", row.label, row.n));
        }
    }

    for branch in &stage.branches {
        run_branch(ctx, idx, stage, branch, &sub, &net_at, ledger, records)?;
    }
    Ok(())
}

fn same_label(a: &str, b: &str) -> bool {
    let norm = |s: &str| {
        let mut v: Vec<String> = s.split('/').map(|x| x.trim().to_string()).collect();
        v.sort();
        v
    };
    norm(a) == norm(b)
}

#[allow(clippy::too_many_arguments)]
fn check_row(
    ledger: &mut Ledger,
    idx: usize,
    nt: &NetTable,
    row: &super::script::RowSpec,
    ci: usize,
    r: Option<u32>,
    p: Char,
    vars: Vars,
) -> Result<()> {
    let Some(g) = nt.groups.iter().find(|g| same_label(&g.label, &row.label) && g.counts == row.n) else {
        return Ok(());
    };
    ledger.expect(idx, || format!("number of {} nets", row.label), row.m as i64, g.m as i64);
    let expected = eval(row.c.get(ci).map_or("", |s| s.as_str()), vars)?;
    let per = match r {
        None => crate::psinets::c_unipotent(&g.rep, p)?,
        Some(r) => crate::psinets::c_semisimple(&g.rep, &nt.psi, r, p),
    };
    ledger.expect(idx, || format!("c of the {} nets, column {ci}, p={p}", row.label), expected, per * g.m as i64);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_branch<'n>(
    ctx: &Ctx,
    idx: usize,
    stage: &Stage,
    branch: &Branch,
    sub: &Subsystem,
    net_at: &dyn Fn(Char) -> Option<&'n NetTable>,
    ledger: &mut Ledger,
    records: &mut Vec<StageRecord>,
) -> Result<()> {
    let rclass = PrimeClass::parse(&branch.r)?;
    let pclass = PrimeClass::parse(&branch.p)?.intersect(&PrimeClass::parse(&ctx.script.p)?);
    for p in pclass.char_reps() {
        let Some(nt) = net_at(p) else { continue };
        let vars = ctx.vars(p);
        // Used columns: at p when the column covers p, otherwise at the
        // column's own characteristics.
        let (mut c_ss, mut c_u): (Option<i64>, Option<i64>) = (None, None);
        for &ci in &branch.uses {
            let col = stage
                .columns
                .get(ci)
                .ok_or_else(|| Error::Data(format!("{} stage {idx}: no column {ci}", ctx.script.id)))?;
            let cp = PrimeClass::parse(&col.p)?;
            let value = if cp.contains_char(p) {
                column_at(nt, col, &rclass, p)?
            } else {
                let mut best: Option<i64> = None;
                for q in cp.char_reps() {
                    if let Some(other) = net_at(q) {
                        if let Some(v) = column_at(other, col, &rclass, q)? {
                            best = Some(best.map_or(v, |b| b.min(v)));
                        }
                    }
                }
                best
            };
            if let Some(v) = value {
                let slot = match col.kind {
                    ColumnKind::S => &mut c_ss,
                    ColumnKind::U => &mut c_u,
                };
                *slot = Some(slot.map_or(v, |s| s.min(v)));
            }
        }
        let c = match (c_ss, c_u) {
            (None, None) => continue,
            (a, b) => a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX)),
        };
        let here = || format!("{} (r {}, p={p})", stage.psi.label, branch.r);
        ledger.expect(idx, || format!("{}: c", here()), eval(&branch.c, vars)?, c);
        let d = ctx.table(p).expect("net table implies weight table").dim(p);
        let d0 = bounded_tuple(d, d - c)?;
        // A part that evaluates to zero (such as `1-z`) is simply absent.
        let mut expected_d0 = eval_list(&branch.d0, vars)?;
        expected_d0.retain(|&x| x != 0);
        ledger.require(idx, expected_d0 == d0.parts(), || {
            format!("{}: d0 expected {expected_d0:?}, computed {d0}", here())
        });
        let d0 = DimTuple::new(expected_d0.clone()).unwrap_or(d0);
        let b = b_min(&d0, ctx.k)?.value;
        if ctx.compare_b {
            ledger.expect(idx, || format!("{}: B", here()), eval(&branch.b, vars)?, b);
            for kv in &branch.kappa {
                match b_of_pair(&d0, &kv.kappa) {
                    Ok(got) => ledger.expect(idx, || format!("{}: B at κ={:?}", here(), kv.kappa), kv.value, got),
                    Err(e) => ledger.require(idx, false, || format!("{}: {e}", here())),
                }
            }
        }
        let mut target = (String::new(), 0i64);
        for rel in &branch.chain {
            match relation(ctx, rel, &stage.psi, sub, p, b, c, d, vars) {
                Ok(Some((ok, rhs_val, expected))) => {
                    if let Some(e) = expected {
                        ledger.expect(idx, || format!("{}: value of {}", here(), rel.rhs), e, rhs_val);
                    }
                    ledger.require(idx, ok, || {
                        format!("{}: {} {} {} fails ({})", here(), rel.lhs, rel.rel, rel.rhs, rhs_val)
                    });
                    if rel.lhs == "B" && (target.0.is_empty() || rel.rhs.starts_with('M')) {
                        target = (rel.rhs.clone(), b - rhs_val);
                    }
                }
                Ok(None) => {}
                Err(Error::DataMissing(m)) => ledger.gaps.push(format!("{}: {m}", here())),
                Err(e) => return Err(e),
            }
        }
        if let Some(next) = &branch.next {
            side_facts(ctx, idx, next, &rclass, p, b, vars, ledger, &here())?;
        }
        records.push(StageRecord {
            stage: idx,
            psi: stage.psi.label.clone(),
            r: branch.r.clone(),
            p: p.to_string(),
            c_ss,
            c_u,
            d0: d0.parts().to_vec(),
            b,
            target: target.0,
            margin: target.1,
            provenance: Provenance::Embedded,
        });
    }
    Ok(())
}

/// Evaluate one relation. `None` when the term does not apply at p (a
/// regular class whose elements do not have order p).
#[allow(clippy::too_many_arguments)]
fn relation(
    ctx: &Ctx,
    rel: &Relation,
    spec: &PsiSpec,
    sub: &Subsystem,
    p: Char,
    b: i64,
    c: i64,
    d: i64,
    vars: Vars,
) -> Result<Option<(bool, i64, Option<i64>)>> {
    let term = |t: &str| -> Result<Option<i64>> {
        match t {
            "B" => Ok(Some(b)),
            "c" => Ok(Some(c)),
            "d" => Ok(Some(d)),
            "M" | "M2" | "M3" | "M5" => bound_term(&ctx.bounds, t).map(Some),
            "dim_u" => {
                let class = regular_class(&ctx.rs, spec, sub, p)?;
                match dim_unip_class(&ctx.rs, &class, p) {
                    Ok(v) => Ok(Some(v)),
                    Err(Error::Infeasible(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            }
            other => eval(other, vars).map(Some),
        }
    };
    let (Some(l), Some(r)) = (term(&rel.lhs)?, term(&rel.rhs)?) else { return Ok(None) };
    let ok = match rel.rel.as_str() {
        ">" => l > r,
        ">=" => l >= r,
        "=" => l == r,
        "<" => l < r,
        "<=" => l <= r,
        other => return Err(Error::Data(format!("unknown relation {other:?}"))),
    };
    let expected = rel.value.as_deref().map(|v| eval(v, vars)).transpose()?;
    Ok(Some((ok, r, expected)))
}

#[allow(clippy::too_many_arguments)]
fn side_facts(
    ctx: &Ctx,
    idx: usize,
    next: &NextSpec,
    rclass: &PrimeClass,
    p: Char,
    b: i64,
    vars: Vars,
    ledger: &mut Ledger,
    here: &str,
) -> Result<()> {
    let rs = &ctx.rs;
    if let Some(pm) = &next.phi_max {
        let phi_max = ctx.bounds.m - b;
        ledger.expect(idx, || format!("{here}: |Φ(s)| bound"), eval(pm, vars)?, phi_max);
        let r_next = match &next.r {
            Some(r) => PrimeClass::parse(r)?,
            None => rclass.clone(),
        };
        let subs: Vec<Subsystem> =
            next.disjoint.iter().map(|s| rs.standard_subsystem(&s.simple)).collect::<Result<_>>()?;
        if let (Some(expected), Some(first)) = (next.m_psi, subs.first()) {
            let got = m_psi(rs, first, ctx.opts.cap)?;
            ledger.expect(idx, || format!("{here}: m_Ψ of {}", next.disjoint[0].label), expected, got);
            ledger.require(idx, got > phi_max, || format!("{here}: m_Ψ = {got} does not exceed {phi_max}"));
        }
        if !subs.is_empty() {
            let labels: Vec<&str> = next.disjoint.iter().map(|s| s.label.as_str()).collect();
            let heavy = rs.family() == Family::E && rs.rank() >= 7;
            if heavy && !ctx.opts.deep {
                let fact = format!("{}: a conjugate of {} avoids Φ(s) when |Φ(s)| ≤ {phi_max}", rs.name(), labels.join(" or "));
                if ctx.trusted_ok("disjoint") {
                    if !ledger.trusted.contains(&fact) {
                        ledger.trusted.push(fact);
                    }
                } else {
                    ledger.gaps.push(fact);
                }
            } else {
                match disjoint_below(rs, &subs, &r_next, phi_max, ctx.opts.cap)? {
                    Ok(()) => ledger.require(idx, true, String::new),
                    Err(bad) => ledger.require(idx, false, || {
                        format!("{here}: centralizer {bad} meets every conjugate of {}", labels.join(" or "))
                    }),
                }
            }
        }
    }
    if let Some(um) = &next.unip_min {
        let covers = match &next.p {
            Some(c) => PrimeClass::parse(c)?.contains_char(p),
            None => true,
        };
        ledger.expect(idx, || format!("{here}: least remaining class dimension"), eval(um, vars)?, b);
        if covers && !next.closure.is_empty() {
            let mut targets = Vec::new();
            for s in &next.closure {
                let sub = rs.standard_subsystem(&s.simple)?;
                targets.push(regular_class(rs, s, &sub, p)?);
            }
            let labels: Vec<&str> = next.closure.iter().map(|s| s.label.as_str()).collect();
            match closure_above(rs, b, &targets, &labels, p)? {
                ClosureCheck::Holds(Provenance::Trusted) => {
                    let fact =
                        format!("{}: classes of dimension ≥ {b} contain {} in their closure", rs.name(), labels.join(" or "));
                    let list = if ctx.trusted_ok("closure") { &mut ledger.trusted } else { &mut ledger.gaps };
                    if !list.contains(&fact) {
                        list.push(fact);
                    }
                }
                ClosureCheck::Holds(_) => ledger.require(idx, true, String::new),
                ClosureCheck::Fails(cls) => ledger.require(idx, false, || {
                    format!("{here}: class {cls} of dimension ≥ {b} avoids {}", labels.join(" or "))
                }),
                ClosureCheck::Unknown => ledger.gaps.push(format!(
                    "{} at p={p}: no fact that classes of dimension ≥ {b} contain {}",
                    rs.name(),
                    labels.join(" or ")
                )),
            }
        }
    }
    Ok(())
}

/// Run every embedded script in key order.
pub fn run_all(opts: &RunOptions) -> Result<Vec<VerificationReport>> {
    let mut scripts = super::embedded_scripts()?;
    scripts.sort_by(|a, b| a.id.cmp(&b.id));
    scripts.iter().map(|s| run_script(s, opts)).collect()
}

/// Human-readable one-line summary.
pub fn summary_line(r: &VerificationReport) -> String {
    let q = &r.quadruple;
    let v = match &r.verdict {
        Verdict::Certified => "certified".to_string(),
        Verdict::CertifiedWithTrusted { trusted } => format!("certified with {trusted} trusted fact(s)"),
        Verdict::NeedsTrustedFacts { gaps } => format!("needs trusted facts ({} gap(s))", gaps.len()),
        Verdict::FailedAtStage { stage } => format!("failed at stage {stage}"),
    };
    format!(
        "{}{} {} p {} k={}: {v}; {} numbers checked",
        q.family,
        q.rank,
        lambda_label(&q.lambda),
        q.p,
        q.k,
        r.checked
    )
}
