use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stabgate::engine::dense::{corollary_checks, dense_orbit_check, embedded_rows, DenseCheck};
use stabgate::engine::run::summary_line;
use stabgate::engine::sweep::{embedded_families, family_sweep, find_family, KPolicy, SweepOptions, SweepReport};
use stabgate::engine::{embedded_scripts, find_script, lambda_label, parse_lambda, run_script, RunOptions, Verdict, VerificationReport};
use stabgate::primes::Char;
use stabgate::psinets::{NetTable, PsiBase};
use stabgate::rootsys::{Family, RootSystem};
use stabgate::tuples::{b_min, parse_tuple};
use stabgate::weights::{weight_table, Source, SourcePolicy};
use stabgate::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_TRUSTED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

#[derive(Parser)]
#[command(name = "stabgate", version, about = "Generic stabilizer certificates for Grassmannians of irreducible modules")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Tsv,
}

#[derive(Args)]
struct GroupArgs {
    /// Cartan type letter, A to G.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: usize,
}

impl GroupArgs {
    fn build(&self) -> stabgate::Result<RootSystem> {
        RootSystem::build(Family::parse(&self.family)?, self.rank)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the roots in simple-root coordinates.
    Roots(GroupArgs),
    /// Dominant weights of a module with orbit sizes and multiplicities.
    Weights {
        #[command(flatten)]
        group: GroupArgs,
        /// Highest weight: `0,1,0,0,0` or `w2`.
        #[arg(long)]
        lambda: String,
        /// Characteristic (a prime, or `inf`).
        #[arg(long)]
        p: Option<String>,
    },
    /// The tuple bound B for dimensions d and subspace dimension k.
    Tuples {
        #[arg(long)]
        d: String,
        #[arg(long)]
        k: i64,
    },
    /// Ψ-net table of a module for a subsystem spanned by simple roots.
    Nets {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        lambda: String,
        /// Simple roots spanning Ψ, e.g. `1` or `a2:3,4`; repeat or list several.
        #[arg(long, num_args = 1.., required = true)]
        psi: Vec<String>,
        #[arg(long, default_value = "inf")]
        p: String,
        /// Prime order of the semisimple element.
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Run the escalation script for a quadruple such as `A5:w2:any:4`.
    Verify {
        #[arg(long)]
        quad: String,
        /// Run E7 and E8 conjugate searches instead of trusting them.
        #[arg(long)]
        deep: bool,
        /// Replace the script's k.
        #[arg(long)]
        k: Option<i64>,
    },
    /// Enumerate elements of one family (or `all`) directly.
    Sweep {
        #[arg(long)]
        family: String,
        /// Rank range `LO..HI` or a single rank; defaults to the family's range.
        #[arg(long)]
        ranks: Option<String>,
        #[arg(long)]
        k: Option<i64>,
    },
    /// Dense-orbit and corollary checks on the tabulated stabilizers.
    Tables {
        /// Restrict the dense check to one table.
        #[arg(long)]
        table: Option<u8>,
    },
    /// Every script, every family sweep, the dense check and the corollaries.
    CheckAll {
        #[arg(long)]
        deep: bool,
    },
}

/// What a subcommand produced: text to print and an exit status.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::Config(_) => EXIT_USAGE,
        Error::Data(_) | Error::DataMissing(_) => EXIT_DATA,
        _ => EXIT_MISMATCH,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    match dispatch(&cli.command, format) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if !out.text.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("stabgate: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn dispatch(cmd: &Command, format: Format) -> stabgate::Result<Outcome> {
    match cmd {
        Command::Roots(g) => roots(g, format),
        Command::Weights { group, lambda, p } => weights(group, lambda, p.as_deref(), format),
        Command::Tuples { d, k } => tuples(d, *k, format),
        Command::Nets { group, lambda, psi, p, r } => nets(group, lambda, psi, p, *r, format),
        Command::Verify { quad, deep, k } => verify(quad, *deep, *k, format),
        Command::Sweep { family, ranks, k } => sweep(family, ranks.as_deref(), *k, format),
        Command::Tables { table } => tables(*table, format),
        Command::CheckAll { deep } => check_all(*deep, format),
    }
}

fn roots(g: &GroupArgs, format: Format) -> stabgate::Result<Outcome> {
    let rs = g.build()?;
    let text = match format {
        Format::Json => pretty(&json!({
            "group": rs.name(),
            "count": rs.num_roots(),
            "roots": rs.roots(),
        })),
        Format::Tsv => {
            let mut s = String::from("index\theight\tlong\tcoords\n");
            for (i, r) in rs.roots().iter().enumerate() {
                s += &format!("{i}\t{}\t{}\t{}\n", rs.height(i), rs.is_long(i), join(r, ","));
            }
            s
        }
        Format::Plain => {
            let mut s = format!("{}: {} roots\n", rs.name(), rs.num_roots());
            for r in rs.roots() {
                s += &format!("({})\n", join(r, ","));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn weights(g: &GroupArgs, lambda: &str, p: Option<&str>, format: Format) -> stabgate::Result<Outcome> {
    let rs = g.build()?;
    let lambda = parse_lambda(lambda, rs.rank())?;
    let p = p.map(Char::parse).transpose()?;
    let table = weight_table(&rs, &lambda, p, SourcePolicy::AllowComputed)?;
    let mult = |m: &stabgate::weights::MultiplicityFormula| match p {
        Some(p) => m.eval(p).to_string(),
        None if m.is_constant() => m.base.to_string(),
        None => {
            let c: Vec<String> = m.corrections.iter().map(|c| format!("{}·ζ{}", c.c, c.n)).collect();
            format!("{} - {}", m.base, c.join(" - "))
        }
    };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&table).expect("tables serialize"),
        Format::Tsv => {
            let mut s = String::from("i\tmu\torbit\tmult\n");
            for r in &table.rows {
                s += &format!("{}\t{}\t{}\t{}\n", r.i, join(&r.mu, ","), r.orbit, mult(&r.mult));
            }
            s
        }
        Format::Plain => {
            let valid = match table.source {
                Source::Computed => "characteristic zero".to_string(),
                Source::Embedded => format!("p {}", table.p),
            };
            let mut s = format!("{} {} ({valid})", rs.name(), lambda_label(&lambda));
            if let Some(p) = p {
                s += &format!(", dim {} at p = {p}", table.dim(p));
            }
            s += "\n";
            for r in &table.rows {
                s += &format!("{:>3}  {:<18} orbit {:>5}  mult {}\n", r.i, format!("({})", join(&r.mu, ",")), r.orbit, mult(&r.mult));
            }
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn tuples(d: &str, k: i64, format: Format) -> stabgate::Result<Outcome> {
    let d = parse_tuple(d)?;
    let b = b_min(&d, k)?;
    let text = match format {
        Format::Json => pretty(&json!({"d": d.parts(), "k": k, "value": b.value, "witness": b.witness})),
        Format::Tsv => format!("d\tk\tvalue\twitness\n{}\t{k}\t{}\t{}\n", join(d.parts(), ","), b.value, join(&b.witness, ",")),
        Format::Plain => b.value.to_string(),
    };
    Ok(Outcome::ok(text))
}

/// `1`, `3,4`, `a2:3,4` all name simple roots; the prefix is a label only.
fn psi_indices(tokens: &[String]) -> stabgate::Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in tokens {
        let list = t.rsplit_once(':').map_or(t.as_str(), |(_, l)| l);
        for x in list.split(',').filter(|x| !x.trim().is_empty()) {
            let i = x.trim().parse().map_err(|_| Error::Argument(format!("bad simple root index {x:?} in --psi")))?;
            out.push(i);
        }
    }
    Ok(out)
}

fn nets(g: &GroupArgs, lambda: &str, psi: &[String], p: &str, r: u32, format: Format) -> stabgate::Result<Outcome> {
    let rs = g.build()?;
    let lambda = parse_lambda(lambda, rs.rank())?;
    let p = Char::parse(p)?;
    let table = weight_table(&rs, &lambda, Some(p), SourcePolicy::AllowComputed)?;
    let base = PsiBase::standard(&rs, &psi_indices(psi)?)?;
    let nets = NetTable::build(&rs, &table, &base)?;
    let rows = nets.summary(r, p)?;
    let c_ss = nets.c_ss(r, p);
    let c_u = nets.c_u(p)?;
    let indices = table.indices();
    let text = match format {
        Format::Json => pretty(&json!({
            "group": rs.name(),
            "lambda": lambda,
            "psi": base.names,
            "p": p.to_string(),
            "r": r,
            "rows": rows,
            "c_ss": c_ss,
            "c_u": c_u,
        })),
        Format::Tsv => {
            let head: Vec<String> = indices.iter().map(|i| format!("n{i}")).collect();
            let mut s = format!("net\t{}\tm\tc_s\tc_u\n", head.join("\t"));
            for row in &rows {
                let n: Vec<String> = indices.iter().map(|i| row.counts.get(i).copied().unwrap_or(0).to_string()).collect();
                s += &format!("{}\t{}\t{}\t{}\t{}\n", row.label, n.join("\t"), row.m, row.c_s, row.c_u);
            }
            s += &format!("total\t{}\t\t{c_ss}\t{c_u}\n", vec![""; indices.len()].join("\t"));
            s
        }
        Format::Plain => {
            let mut s = format!(
                "{} {}, Ψ = ⟨{}⟩, r = {r}, p = {p}\n{:<16}",
                rs.name(),
                lambda_label(&lambda),
                base.names.iter().map(|n| format!("α{n}")).collect::<Vec<_>>().join(", "),
                "net"
            );
            for i in &indices {
                s += &format!("{:>5}", format!("n{i}"));
            }
            s += &format!("{:>6}{:>7}{:>7}\n", "m", "c(s)", "c(u)");
            for row in &rows {
                s += &format!("{:<16}", row.label);
                for i in &indices {
                    s += &format!("{:>5}", row.counts.get(i).copied().unwrap_or(0));
                }
                s += &format!("{:>6}{:>7}{:>7}\n", row.m, row.c_s, row.c_u);
            }
            s += &format!("c(Ψ)_ss = {c_ss}, c(Ψ)_u = {c_u}\n");
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn report_code(r: &VerificationReport) -> u8 {
    if !r.mismatches.is_empty() {
        return EXIT_MISMATCH;
    }
    r.verdict.exit_code() as u8
}

fn report_plain(r: &VerificationReport) -> String {
    let mut s = summary_line(r) + "\n";
    for st in &r.stages {
        s += &format!(
            "  stage {} Ψ={} r={} p={} c_ss={} c_u={} d0=({}) B={} vs {} margin {}\n",
            st.stage,
            st.psi,
            st.r,
            st.p,
            st.c_ss.map_or("-".into(), |x| x.to_string()),
            st.c_u.map_or("-".into(), |x| x.to_string()),
            join(&st.d0, ","),
            st.b,
            st.target,
            st.margin
        );
    }
    for m in &r.mismatches {
        s += &format!("  mismatch: {m}\n");
    }
    for t in &r.trusted {
        s += &format!("  trusted: {t}\n");
    }
    if let Verdict::NeedsTrustedFacts { gaps } = &r.verdict {
        for g in gaps {
            s += &format!("  gap: {g}\n");
        }
    }
    s
}

fn verify(quad: &str, deep: bool, k: Option<i64>, format: Format) -> stabgate::Result<Outcome> {
    let script = find_script(quad)?;
    let r = run_script(&script, &RunOptions { deep, k, ..Default::default() })?;
    let text = match format {
        Format::Json => r.to_json(),
        Format::Tsv => {
            let mut s = String::from("stage\tpsi\tr\tp\tc_ss\tc_u\td0\tB\ttarget\tmargin\n");
            for st in &r.stages {
                s += &format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    st.stage,
                    st.psi,
                    st.r,
                    st.p,
                    st.c_ss.map_or(String::new(), |x| x.to_string()),
                    st.c_u.map_or(String::new(), |x| x.to_string()),
                    join(&st.d0, ","),
                    st.b,
                    st.target,
                    st.margin
                );
            }
            s
        }
        Format::Plain => report_plain(&r),
    };
    Ok(Outcome { text, code: report_code(&r) })
}

fn parse_ranks(s: &str) -> stabgate::Result<std::ops::RangeInclusive<usize>> {
    let bad = || Error::Argument(format!("bad rank range {s:?}; expected LO..HI or a single rank"));
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

fn sweep_line(r: &SweepReport) -> String {
    let q = r.q.map_or(String::new(), |q| format!(" q={q}"));
    let status = if r.certified() { "certified".to_string() } else { format!("{} failure(s)", r.failures.len()) };
    format!(
        "{} {} p={}{q} k={} d={}: {} semisimple, {} unipotent, r ≤ {}, min margin {} ({}): {status}",
        r.family, r.group, r.p, r.k, r.d, r.semisimple, r.unipotent, r.r_max, r.min_margin, r.worst
    )
}

fn sweep_tsv(reports: &[SweepReport]) -> String {
    let mut s = String::from("family\tgroup\tp\tq\tk\td\tsemisimple\tunipotent\tr_max\tmin_margin\tfailures\n");
    for r in reports {
        s += &format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.family,
            r.group,
            r.p,
            r.q.map_or(String::new(), |q| q.to_string()),
            r.k,
            r.d,
            r.semisimple,
            r.unipotent,
            r.r_max,
            r.min_margin,
            r.failures.len()
        );
    }
    s
}

fn sweep(family: &str, ranks: Option<&str>, k: Option<i64>, format: Format) -> stabgate::Result<Outcome> {
    let specs = if family == "all" { embedded_families()? } else { vec![find_family(family)?] };
    let policy = k.map_or(KPolicy::Default, KPolicy::Only);
    let opts = SweepOptions::default();
    let mut reports = Vec::new();
    for spec in &specs {
        let range = match ranks {
            Some(r) => parse_ranks(r)?,
            None => spec.l_min..=spec.l_max,
        };
        reports.extend(family_sweep(spec, range, policy, &opts)?);
    }
    let failed = reports.iter().filter(|r| !r.certified()).count();
    let text = match format {
        Format::Json => pretty(&json!({ "reports": reports, "failed": failed })),
        Format::Tsv => sweep_tsv(&reports),
        Format::Plain => {
            let mut s = String::new();
            for r in &reports {
                s += &(sweep_line(r) + "\n");
                for f in &r.failures {
                    s += &format!("  {f}\n");
                }
            }
            s += &format!("{} instance(s), {failed} failed\n", reports.len());
            s
        }
    };
    Ok(Outcome { text, code: if failed > 0 { EXIT_MISMATCH } else { 0 } })
}

struct TableChecks {
    dense: Vec<DenseCheck>,
    corollary: stabgate::engine::dense::CorollaryReport,
}

fn table_checks(table: Option<u8>) -> stabgate::Result<TableChecks> {
    let rows = embedded_rows()?;
    let mut dense = Vec::new();
    for row in rows.iter().filter(|r| table.map_or(true, |t| r.table == t)) {
        dense.extend(dense_orbit_check(row)?);
    }
    Ok(TableChecks { dense, corollary: corollary_checks(&rows)? })
}

fn dense_failure(c: &DenseCheck) -> String {
    let i = &c.instance;
    format!(
        "table {} {} {} p={} k={}: dim G − dim C = {} − {} vs k(d−k) = {}, listed {}",
        i.table,
        i.group,
        lambda_label(&i.lambda),
        i.p,
        i.k,
        i.dim_g,
        i.dim_c,
        i.grassmannian_dim(),
        if c.expected { "dense" } else { "not dense" }
    )
}

fn tables(table: Option<u8>, format: Format) -> stabgate::Result<Outcome> {
    let t = table_checks(table)?;
    let bad: Vec<&DenseCheck> = t.dense.iter().filter(|c| !c.ok).collect();
    let ok = bad.is_empty() && t.corollary.ok();
    let text = match format {
        Format::Json => pretty(&json!({
            "dense": { "instances": t.dense.len(), "failures": bad },
            "corollary": t.corollary,
        })),
        Format::Tsv => {
            let mut s = String::from("table\tgroup\tlambda\tp\tk\td\tdim_g\tdim_c\tdense\tok\n");
            for c in &t.dense {
                let i = &c.instance;
                s += &format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    i.table,
                    i.group,
                    lambda_label(&i.lambda),
                    i.p,
                    i.k,
                    i.d,
                    i.dim_g,
                    i.dim_c,
                    c.dense,
                    c.ok
                );
            }
            s
        }
        Format::Plain => {
            let mut s = format!("dense orbits: {} instance(s), {} inconsistent\n", t.dense.len(), bad.len());
            for c in &bad {
                s += &format!("  {}\n", dense_failure(c));
            }
            s += &format!(
                "corollaries: {} k-step(s) compared, {} failure(s); k ≥ 4 beyond natural modules: {}\n",
                t.corollary.compared,
                t.corollary.failures.len(),
                t.corollary.high_k.join(" ")
            );
            for f in &t.corollary.failures {
                s += &format!("  {f}\n");
            }
            s
        }
    };
    Ok(Outcome { text, code: if ok { 0 } else { EXIT_MISMATCH } })
}

fn check_all(deep: bool, format: Format) -> stabgate::Result<Outcome> {
    let mut scripts = embedded_scripts()?;
    scripts.sort_by(|a, b| a.id.cmp(&b.id));
    let opts = RunOptions { deep, ..Default::default() };
    let reports: Vec<VerificationReport> = scripts.iter().map(|s| run_script(s, &opts)).collect::<stabgate::Result<_>>()?;
    let script_fail = reports.iter().filter(|r| report_code(r) == EXIT_MISMATCH).count();
    let script_trusted = reports.iter().filter(|r| report_code(r) == EXIT_TRUSTED).count();

    let sopts = SweepOptions::default();
    let mut sweeps = Vec::new();
    for spec in embedded_families()? {
        sweeps.extend(family_sweep(&spec, spec.l_min..=spec.l_max, KPolicy::Default, &sopts)?);
    }
    let sweep_fail = sweeps.iter().filter(|r| !r.certified()).count();

    let t = table_checks(None)?;
    let dense_fail = t.dense.iter().filter(|c| !c.ok).count();
    let corollary_fail = t.corollary.failures.len();

    let failed = script_fail + sweep_fail + dense_fail + corollary_fail;
    let code = if failed > 0 {
        EXIT_MISMATCH
    } else if script_trusted > 0 {
        EXIT_TRUSTED
    } else {
        0
    };
    let text = match format {
        Format::Json => pretty(&json!({
            "scripts": reports.iter().map(|r| json!({
                "script": r.script,
                "checked": r.checked,
                "mismatches": r.mismatches,
                "trusted": r.trusted,
                "verdict": r.verdict,
            })).collect::<Vec<_>>(),
            "sweeps": sweeps,
            "dense": { "instances": t.dense.len(), "failures": t.dense.iter().filter(|c| !c.ok).collect::<Vec<_>>() },
            "corollary": t.corollary,
            "summary": {
                "scripts": reports.len(),
                "scripts_failed": script_fail,
                "scripts_trusted": script_trusted,
                "sweeps": sweeps.len(),
                "sweeps_failed": sweep_fail,
                "dense": t.dense.len(),
                "dense_failed": dense_fail,
                "corollary_failed": corollary_fail,
            },
        })),
        Format::Tsv => {
            let mut s = String::from("check\ttotal\tfailed\n");
            s += &format!("scripts\t{}\t{script_fail}\n", reports.len());
            s += &format!("sweeps\t{}\t{sweep_fail}\n", sweeps.len());
            s += &format!("dense\t{}\t{dense_fail}\n", t.dense.len());
            s += &format!("corollary\t{}\t{corollary_fail}\n", t.corollary.compared);
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for r in &reports {
                s += &(summary_line(r) + "\n");
                for m in &r.mismatches {
                    s += &format!("  mismatch: {m}\n");
                }
            }
            for r in sweeps.iter().filter(|r| !r.certified()) {
                s += &(sweep_line(r) + "\n");
            }
            for c in t.dense.iter().filter(|c| !c.ok) {
                s += &format!("{}\n", dense_failure(c));
            }
            for f in &t.corollary.failures {
                s += &format!("{f}\n");
            }
            s += &format!(
                "scripts: {} run, {} passed, {script_fail} failed, {script_trusted} with trusted facts\n",
                reports.len(),
                reports.len() - script_fail
            );
            s += &format!("sweeps: {} run, {} passed, {sweep_fail} failed\n", sweeps.len(), sweeps.len() - sweep_fail);
            s += &format!("dense: {} checked, {dense_fail} failed\n", t.dense.len());
            s += &format!("corollaries: {} compared, {corollary_fail} failed\n", t.corollary.compared);
            s
        }
    };
    Ok(Outcome { text, code })
}
