//! Ψ-nets: the classes of Λ(V) under "differs by an integer combination of
//! Ψ-roots", and the per-net lower bounds on eigenspace and fixed-space
//! codimensions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{mod_inverse, rank_mod_p, solve_independent, Q};
use crate::primes::Char;
use crate::rootsys::RootSystem;
use crate::weights::{to_root_basis, MultiplicityFormula, WeightEntry, WeightTable};

/// A subsystem given by an explicit base, with display names for the base
/// roots (ambient simple-root numbers for standard subsystems).
#[derive(Clone, Debug)]
pub struct PsiBase {
    pub base: Vec<usize>,
    pub names: Vec<String>,
    /// Indices into `base`, one list per irreducible component.
    pub components: Vec<Vec<usize>>,
    /// Positive roots of each component, in coordinates over `base`.
    positive: Vec<Vec<Vec<i64>>>,
    /// The same roots as ambient root indices.
    positive_ambient: Vec<Vec<usize>>,
    /// Highest short root of each component, as an ambient root index.
    top_short: Vec<usize>,
}

impl PsiBase {
    /// Ψ generated by the simple roots `α_i` for the given 1-based indices.
    pub fn standard(rs: &RootSystem, simple: &[usize]) -> Result<PsiBase> {
        let mut base = Vec::new();
        for &i in simple {
            if i == 0 || i > rs.rank() {
                return Err(Error::Argument(format!("no simple root α{i} in {}", rs.name())));
            }
            base.push(rs.simple(i - 1));
        }
        let names = simple.iter().map(|i| i.to_string()).collect();
        PsiBase::new(rs, base, names)
    }

    /// Ψ with the given base (root indices). The base must be linearly
    /// independent with pairwise non-positive inner products.
    pub fn new(rs: &RootSystem, base: Vec<usize>, names: Vec<String>) -> Result<PsiBase> {
        let n = base.len();
        for a in 0..n {
            for b in a + 1..n {
                if base[a] == base[b] || rs.inner(rs.root(base[a]), rs.root(base[b])) > 0 {
                    return Err(Error::Argument("Ψ base roots must be distinct with obtuse angles".into()));
                }
            }
        }
        // Components of the Dynkin graph on the base.
        let mut comp: Vec<usize> = (0..n).collect();
        for a in 0..n {
            for b in a + 1..n {
                if rs.inner(rs.root(base[a]), rs.root(base[b])) != 0 {
                    let (ca, cb) = (comp[a], comp[b]);
                    for c in comp.iter_mut() {
                        if *c == cb {
                            *c = ca;
                        }
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in comp.iter().enumerate() {
            groups.entry(*c).or_default().push(i);
        }
        let components: Vec<Vec<usize>> = groups.into_values().collect();
        let sub = rs.subsystem(&base);
        let cols: Vec<Vec<Q>> = base.iter().map(|&b| rs.root(b).iter().map(|&x| Q::from_integer(x)).collect()).collect();
        let mut positive = vec![Vec::new(); components.len()];
        let mut positive_ambient = vec![Vec::new(); components.len()];
        for &r in &sub.roots {
            let target: Vec<Q> = rs.root(r).iter().map(|&x| Q::from_integer(x)).collect();
            let x = solve_independent(&cols, &target)
                .ok_or_else(|| Error::Argument("Ψ base does not span its subsystem".into()))?;
            if x.iter().any(|c| !c.is_integer()) {
                return Err(Error::Argument("Ψ base is not a base of the subsystem it generates".into()));
            }
            let v: Vec<i64> = x.iter().map(|c| c.to_integer()).collect();
            if v.iter().all(|&c| c >= 0) {
                let support = v.iter().position(|&c| c != 0).expect("roots are non-zero");
                let ci = components.iter().position(|c| c.contains(&support)).expect("support lies in a component");
                positive[ci].push(v);
                positive_ambient[ci].push(r);
            } else if v.iter().any(|&c| c > 0) {
                return Err(Error::Argument("Ψ base is not a base of the subsystem it generates".into()));
            }
        }
        let top_short = positive_ambient
            .iter()
            .map(|c| {
                let short = c.iter().map(|&r| rs.inner(rs.root(r), rs.root(r))).min().unwrap_or(0);
                *c.iter()
                    .filter(|&&r| rs.inner(rs.root(r), rs.root(r)) == short)
                    .max_by_key(|&&r| rs.root(r).iter().sum::<i64>())
                    .expect("components are non-empty")
            })
            .collect();
        Ok(PsiBase { base, names, components, positive, positive_ambient, top_short })
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// Number of roots of Ψ.
    pub fn num_roots(&self) -> usize {
        2 * self.positive.iter().map(|c| c.len()).sum::<usize>()
    }

    /// Positive roots of component `i` over the base.
    pub fn positive_roots(&self, i: usize) -> &[Vec<i64>] {
        &self.positive[i]
    }

    /// Coxeter number of component `i`.
    pub fn coxeter(&self, i: usize) -> i64 {
        (2 * self.positive[i].len() / self.components[i].len()) as i64
    }

    fn all_positive(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.positive.iter().flatten()
    }
}

/// One weight of a net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetWeight {
    pub mu: Vec<i64>,
    pub orbit: usize,
    pub mult: MultiplicityFormula,
    /// Pairings with the coroots of the base.
    pub psi_weight: Vec<i64>,
    /// Coordinates over the base relative to the net's first weight.
    pub coords: Vec<i64>,
    /// Degree under the principal coweight of each component of Ψ.
    pub grading: Vec<i64>,
    /// Pairing with the coroot of each component's highest short root.
    pub top_pairing: Vec<i64>,
    /// Coxeter number of each component.
    pub coxeter: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    pub weights: Vec<NetWeight>,
}

impl Net {
    /// Weights per orbit index.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for w in &self.weights {
            *out.entry(w.orbit).or_insert(0) += 1;
        }
        out
    }

    pub fn dim(&self, p: Char) -> i64 {
        self.weights.iter().map(|w| w.mult.eval(p)).sum()
    }

    /// Isomorphism key: the sorted (orbit, Ψ-weight) pairs.
    pub fn key(&self) -> Vec<(usize, Vec<i64>)> {
        let mut k: Vec<(usize, Vec<i64>)> = self.weights.iter().map(|w| (w.orbit, w.psi_weight.clone())).collect();
        k.sort();
        k
    }

    /// Ψ-dominant weights not below any other weight of the net.
    pub fn highest(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for w in &self.weights {
            if w.psi_weight.iter().any(|&x| x < 0) {
                continue;
            }
            let dominated = self.weights.iter().any(|v| {
                v.coords != w.coords && v.coords.iter().zip(&w.coords).all(|(a, b)| a >= b)
            });
            if !dominated && !out.contains(&w.psi_weight) {
                out.push(w.psi_weight.clone());
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// `2w1+w3` style label of a Ψ-weight.
pub fn weight_label(psi: &PsiBase, w: &[i64]) -> String {
    let terms: Vec<String> = w
        .iter()
        .zip(&psi.names)
        .filter(|(c, _)| **c != 0)
        .map(|(c, n)| if *c == 1 { format!("w{n}") } else { format!("{c}w{n}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Display label of a net: its highest Ψ-weight, or several joined by `/`.
pub fn net_label(psi: &PsiBase, net: &Net) -> String {
    net.highest().iter().map(|w| weight_label(psi, w)).collect::<Vec<_>>().join("/")
}

/// Partition the weights of V into Ψ-nets.
pub fn compute_nets(rs: &RootSystem, table: &WeightTable, psi: &PsiBase) -> Result<Vec<Net>> {
    let weights = table.weights(rs)?;
    nets_of(rs, &weights, psi)
}

pub fn nets_of(rs: &RootSystem, weights: &[WeightEntry], psi: &PsiBase) -> Result<Vec<Net>> {
    let cols: Vec<Vec<Q>> =
        psi.base.iter().map(|&b| rs.root(b).iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let mut reps: Vec<Vec<Q>> = Vec::new();
    let mut nets: Vec<Net> = Vec::new();
    for e in weights {
        let x = to_root_basis(rs, &e.mu);
        let psi_weight: Vec<i64> = psi.base.iter().map(|&b| rs.pair_weight(&e.mu, b)).collect();
        let grading: Vec<i64> =
            psi.positive_ambient.iter().map(|c| c.iter().map(|&b| rs.pair_weight(&e.mu, b)).sum()).collect();
        let top_pairing: Vec<i64> = psi.top_short.iter().map(|&t| rs.pair_weight(&e.mu, t)).collect();
        let coxeter: Vec<i64> = (0..psi.components.len()).map(|i| psi.coxeter(i)).collect();
        let mut placed = false;
        for (rep, net) in reps.iter().zip(nets.iter_mut()) {
            let diff: Vec<Q> = x.iter().zip(rep).map(|(a, b)| *a - *b).collect();
            if let Some(c) = solve_independent(&cols, &diff) {
                if c.iter().all(|v| v.is_integer()) {
                    let coords = c.iter().map(|v| v.to_integer()).collect();
                    net.weights.push(NetWeight {
                        mu: e.mu.clone(),
                        orbit: e.orbit,
                        mult: e.mult.clone(),
                        psi_weight: psi_weight.clone(),
                        coords,
                        grading: grading.clone(),
                        top_pairing: top_pairing.clone(),
                        coxeter: coxeter.clone(),
                    });
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            reps.push(x);
            nets.push(Net {
                weights: vec![NetWeight {
                    mu: e.mu.clone(),
                    orbit: e.orbit,
                    mult: e.mult.clone(),
                    psi_weight,
                    coords: vec![0; psi.rank()],
                    grading,
                    top_pairing,
                    coxeter,
                }],
            });
        }
    }
    Ok(nets)
}

/// Whether `d = tβ` for some positive root β of Ψ; returns `t`.
fn root_multiple(psi: &PsiBase, d: &[i64]) -> Option<i64> {
    for b in psi.all_positive() {
        let j = b.iter().position(|&x| x != 0).expect("roots are non-zero");
        if d[j] % b[j] != 0 {
            continue;
        }
        let t = d[j] / b[j];
        if t != 0 && d.iter().zip(b).all(|(x, y)| *x == t * y) {
            return Some(t);
        }
    }
    None
}

/// Lower bound on the contribution of a net to `codim V_κ(s)` for `s` of
/// prime order `r`: the net's mass minus the heaviest set of weights no two
/// of which differ by `tα` with `α ∈ Ψ` and `r ∤ t`.
pub fn c_semisimple(net: &Net, psi: &PsiBase, r: u32, p: Char) -> i64 {
    let n = net.weights.len();
    let mass: Vec<i64> = net.weights.iter().map(|w| w.mult.eval(p)).collect();
    let mut adj = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let d: Vec<i64> = net.weights[b].coords.iter().zip(&net.weights[a].coords).map(|(x, y)| x - y).collect();
            if let Some(t) = root_multiple(psi, &d) {
                if t % r as i64 != 0 {
                    adj[a][b] = true;
                    adj[b][a] = true;
                }
            }
        }
    }
    mass.iter().sum::<i64>() - max_weight_independent(&adj, &mass)
}

/// Exact maximum-weight independent set by branching on a vertex of largest
/// degree.
pub fn max_weight_independent(adj: &[Vec<bool>], w: &[i64]) -> i64 {
    let alive: Vec<usize> = (0..w.len()).collect();
    mwis(adj, w, &alive)
}

fn mwis(adj: &[Vec<bool>], w: &[i64], alive: &[usize]) -> i64 {
    if alive.is_empty() {
        return 0;
    }
    let deg = |v: usize| alive.iter().filter(|&&u| adj[v][u]).count();
    let (v, d) = alive.iter().map(|&v| (v, deg(v))).max_by_key(|&(v, d)| (d, std::cmp::Reverse(v))).unwrap();
    if d == 0 {
        return alive.iter().map(|&v| w[v].max(0)).sum();
    }
    let without: Vec<usize> = alive.iter().copied().filter(|&u| u != v).collect();
    let exclude = mwis(adj, w, &without);
    let rest: Vec<usize> = without.iter().copied().filter(|&u| !adj[v][u]).collect();
    let include = w[v] + mwis(adj, w, &rest);
    exclude.max(include)
}

/// Graded character of a net under the principal A1 of each component:
/// multidegree → total multiplicity.
fn graded_character(net: &Net, p: Char) -> BTreeMap<Vec<i64>, i64> {
    let mut out: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for w in &net.weights {
        let m = w.mult.eval(p);
        if m != 0 {
            *out.entry(w.grading.clone()).or_insert(0) += m;
        }
    }
    out
}

/// Jordan-block codimension `rank(u − 1)` of a regular unipotent element of
/// an A1 acting on `L(a)` in characteristic p.
pub fn a1_codim(a: i64, p: Char) -> i64 {
    let q = match p {
        Char::Zero => return a,
        Char::P(q) => q as i64,
    };
    let digits = steinberg_digits(a, q);
    // x(1) on each twisted factor acts as on Sym^{a_j}.
    let mut m: Vec<Vec<i64>> = vec![vec![1]];
    for &dj in &digits {
        m = kron(&m, &sym_unipotent(dj, q), q);
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = (row[i] - 1).rem_euclid(q);
    }
    rank_mod_p(&m, q as u64) as i64
}

fn steinberg_digits(mut a: i64, q: i64) -> Vec<i64> {
    let mut d = Vec::new();
    while a > 0 {
        d.push(a % q);
        a /= q;
    }
    d
}

/// `x(1)` on `Sym^m(K²)` in the basis `x^{m−i} y^i`, where `y ↦ x + y`:
/// column i has the binomial coefficients `C(i, j)`.
fn sym_unipotent(m: i64, q: i64) -> Vec<Vec<i64>> {
    let n = (m + 1) as usize;
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            out[j][i] = binomial_mod(i as i64, j as i64, q);
        }
    }
    out
}

/// `C(n, k) mod q` by Lucas' theorem.
fn binomial_mod(mut n: i64, mut k: i64, q: i64) -> i64 {
    let mut out = 1i64;
    while n > 0 || k > 0 {
        let (a, b) = (n % q, k % q);
        if b > a {
            return 0;
        }
        let mut c = 1i64;
        for t in 0..b {
            c = c * (a - t) % q * mod_inverse(t + 1, q) % q;
        }
        out = out * c % q;
        n /= q;
        k /= q;
    }
    out
}

fn kron(a: &[Vec<i64>], b: &[Vec<i64>], q: i64) -> Vec<Vec<i64>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0i64; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if a[i][j] == 0 {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l] % q;
                }
            }
        }
    }
    out
}

/// Degrees of the A1-module `L(a)` in characteristic p.
fn a1_degrees(a: i64, p: Char) -> Vec<i64> {
    match p {
        Char::Zero => (0..=a).map(|s| a - 2 * s).collect(),
        Char::P(q) => {
            let q = q as i64;
            let mut degs = vec![0i64];
            let mut scale = 1i64;
            for d in steinberg_digits(a, q) {
                let mut next = Vec::new();
                for &x in &degs {
                    for s in 0..=d {
                        next.push(x + (d - 2 * s) * scale);
                    }
                }
                degs = next;
                scale *= q;
            }
            degs
        }
    }
}

/// Whether every Ψ-dominant weight ν of the net lies in the closure of the
/// bottom alcove, `⟨ν + ρ_i, θ_i∨⟩ ≤ p` for each component, with `p ≥ h_i`.
/// The net is then a tilting module, its restriction to the principal A1 is
/// tilting, and the Jordan blocks of `u_Ψ` agree with characteristic zero.
pub fn net_in_bottom_alcove(net: &Net, p: Char) -> bool {
    let q = match p {
        Char::Zero => return true,
        Char::P(q) => q as i64,
    };
    net.weights.iter().all(|w| {
        w.coxeter.iter().all(|&h| h <= q)
            && (w.psi_weight.iter().any(|&x| x < 0)
                || w.mult.eval(p) == 0
                || w.top_pairing.iter().zip(&w.coxeter).all(|(&t, &h)| t + h - 1 <= q))
    })
}

/// Lower bound on the contribution of a net to `codim C_V(u_Ψ)`: split the
/// net into composition factors for the product of principal A1 subgroups,
/// then for each factor take the largest `codim C_{X_i}(u_i) · Π_{j≠i} dim X_j`.
/// Nets in the bottom alcove are split as in characteristic zero.
pub fn c_unipotent(net: &Net, p: Char) -> Result<i64> {
    let mut ch = graded_character(net, p);
    let p = if net_in_bottom_alcove(net, p) { Char::Zero } else { p };
    let mut total = 0;
    let mut cache: HashMap<i64, (i64, Vec<i64>)> = HashMap::new();
    while let Some((top, &mult)) = ch.iter().next_back() {
        let top = top.clone();
        if top.iter().any(|&x| x < 0) {
            return Err(Error::Internal(format!("net character has no dominant top weight: {top:?}")));
        }
        let facs: Vec<(i64, Vec<i64>)> = top
            .iter()
            .map(|&a| cache.entry(a).or_insert_with(|| (a1_codim(a, p), a1_degrees(a, p))).clone())
            .collect();
        let dims: Vec<i64> = facs.iter().map(|f| f.1.len() as i64).collect();
        let best = (0..facs.len())
            .map(|i| facs[i].0 * dims.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, d)| d).product::<i64>())
            .max()
            .unwrap_or(0);
        total += mult * best;
        // Subtract mult copies of the factor's character.
        let mut stack: Vec<Vec<i64>> = vec![vec![]];
        for f in &facs {
            let mut next = Vec::new();
            for prefix in &stack {
                for &d in &f.1 {
                    let mut v = prefix.clone();
                    v.push(d);
                    next.push(v);
                }
            }
            stack = next;
        }
        for deg in stack {
            let e = ch.get_mut(&deg).ok_or_else(|| {
                Error::Internal(format!("net character is missing degree {deg:?} below {top:?}"))
            })?;
            *e -= mult;
            if *e < 0 {
                return Err(Error::Internal(format!("net character goes negative at {deg:?}")));
            }
            if *e == 0 {
                ch.remove(&deg);
            }
        }
    }
    Ok(total)
}

/// Nets of one isomorphism type.
#[derive(Clone, Debug)]
pub struct NetGroup {
    pub label: String,
    pub counts: BTreeMap<usize, usize>,
    /// Number of nets of this type.
    pub m: usize,
    pub rep: Net,
}

/// All Ψ-nets of V grouped by type, with per-prime bounds on demand.
#[derive(Clone, Debug)]
pub struct NetTable {
    pub psi: PsiBase,
    pub groups: Vec<NetGroup>,
}

impl NetTable {
    pub fn build(rs: &RootSystem, table: &WeightTable, psi: &PsiBase) -> Result<NetTable> {
        let nets = compute_nets(rs, table, psi)?;
        Ok(NetTable::from_nets(psi, nets))
    }

    pub fn from_nets(psi: &PsiBase, nets: Vec<Net>) -> NetTable {
        let mut by_key: BTreeMap<Vec<(usize, Vec<i64>)>, NetGroup> = BTreeMap::new();
        for net in nets {
            let g = by_key.entry(net.key()).or_insert_with(|| NetGroup {
                label: net_label(psi, &net),
                counts: net.counts(),
                m: 0,
                rep: net.clone(),
            });
            g.m += 1;
        }
        let mut groups: Vec<NetGroup> = by_key.into_values().collect();
        groups.sort_by(|a, b| {
            let ha = a.rep.highest();
            let hb = b.rep.highest();
            let sa: i64 = ha.first().map_or(0, |w| w.iter().sum());
            let sb: i64 = hb.first().map_or(0, |w| w.iter().sum());
            sb.cmp(&sa).then(hb.cmp(&ha)).then(b.counts.cmp(&a.counts))
        });
        NetTable { psi: psi.clone(), groups }
    }

    /// Per-group totals `m · c(s)`.
    pub fn c_ss_groups(&self, r: u32, p: Char) -> Vec<i64> {
        self.groups.iter().map(|g| g.m as i64 * c_semisimple(&g.rep, &self.psi, r, p)).collect()
    }

    pub fn c_u_groups(&self, p: Char) -> Result<Vec<i64>> {
        self.groups.iter().map(|g| Ok(g.m as i64 * c_unipotent(&g.rep, p)?)).collect()
    }

    /// `c(Ψ)_ss` at (r, p).
    pub fn c_ss(&self, r: u32, p: Char) -> i64 {
        self.c_ss_groups(r, p).iter().sum()
    }

    /// `c(Ψ)_u` at p.
    pub fn c_u(&self, p: Char) -> Result<i64> {
        Ok(self.c_u_groups(p)?.iter().sum())
    }

    /// Every orbit's weights are split among the nets without loss.
    pub fn orbit_totals(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for g in &self.groups {
            for (&i, &n) in &g.counts {
                *out.entry(i).or_insert(0) += n * g.m;
            }
        }
        out
    }

    pub fn summary(&self, r: u32, p: Char) -> Result<Vec<NetRow>> {
        let cs = self.c_ss_groups(r, p);
        let cu = self.c_u_groups(p)?;
        Ok(self
            .groups
            .iter()
            .zip(cs.iter().zip(&cu))
            .map(|(g, (&s, &u))| NetRow { label: g.label.clone(), counts: g.counts.clone(), m: g.m, c_s: s, c_u: u })
            .collect())
    }
}

/// One printable row of a net table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetRow {
    pub label: String,
    pub counts: BTreeMap<usize, usize>,
    pub m: usize,
    pub c_s: i64,
    pub c_u: i64,
}
