//! Simple root systems, Weyl group actions and closed subsystems.
//!
//! Roots are integer vectors over the simple roots, numbered as in Bourbaki.
//! All inner products come from an integral Gram matrix in which short roots
//! have squared length 2.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of subsets visited by [`RootSystem::conjugates`].
pub const DEFAULT_CONJUGATE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Config(format!("unknown root system type {other:?}"))),
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Order of the Weyl group of an irreducible system.
pub fn weyl_group_order(family: Family, rank: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    match family {
        Family::A => fact(rank + 1),
        Family::B | Family::C => (1u128 << rank) * fact(rank),
        Family::D => (1u128 << (rank - 1)) * fact(rank),
        Family::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

fn check_type(family: Family, rank: usize) -> Result<()> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if ok && rank <= 24 {
        Ok(())
    } else {
        Err(Error::Config(format!("no simple root system of type {family}{rank}")))
    }
}

/// Squared lengths of the simple roots and the Dynkin edges (with inner products).
fn dynkin(family: Family, rank: usize) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
    let l = rank;
    let chain = |n: usize, ip: i64| (0..n.saturating_sub(1)).map(move |i| (i, i + 1, ip));
    match family {
        Family::A => (vec![2; l], chain(l, -1).collect()),
        Family::B => {
            let mut norms = vec![4; l];
            norms[l - 1] = 2;
            let mut edges: Vec<_> = chain(l - 1, -2).collect();
            edges.push((l - 2, l - 1, -2));
            (norms, edges)
        }
        Family::C => {
            let mut norms = vec![2; l];
            norms[l - 1] = 4;
            let mut edges: Vec<_> = chain(l - 1, -1).collect();
            edges.push((l - 2, l - 1, -2));
            (norms, edges)
        }
        Family::D => {
            let mut edges: Vec<_> = chain(l - 1, -1).collect();
            edges.push((l - 3, l - 1, -1));
            (vec![2; l], edges)
        }
        Family::E => {
            let mut edges = vec![(0, 2, -1), (1, 3, -1), (2, 3, -1)];
            for i in 3..l - 1 {
                edges.push((i, i + 1, -1));
            }
            (vec![2; l], edges)
        }
        Family::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
        Family::G => (vec![2, 6], vec![(0, 1, -3)]),
    }
}

/// Bitset over root indices; every supported system has at most 256 roots.
pub type RootSet = [u64; 4];

pub fn rootset_from(indices: impl IntoIterator<Item = usize>) -> RootSet {
    let mut s = [0u64; 4];
    for i in indices {
        s[i / 64] |= 1 << (i % 64);
    }
    s
}

pub fn rootset_members(s: &RootSet) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, word) in s.iter().enumerate() {
        let mut x = *word;
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            out.push(w * 64 + b);
            x &= x - 1;
        }
    }
    out
}

pub fn rootset_disjoint(a: &RootSet, b: &RootSet) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

pub fn rootset_len(s: &RootSet) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

/// An irreducible simple root system together with its Weyl group action.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    norms: Vec<i64>,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    long: Vec<bool>,
    simple: Vec<usize>,
    negation: Vec<usize>,
    reflections: Vec<Vec<usize>>,
    weyl_order: u128,
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        check_type(family, rank)?;
        let (norms, edges) = dynkin(family, rank);
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            gram[i][i] = norms[i];
        }
        for &(i, j, ip) in &edges {
            gram[i][j] = ip;
            gram[j][i] = ip;
        }
        // cartan[i][j] = <alpha_i, alpha_j^vee>, so row i is alpha_i in the
        // fundamental weight basis.
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / norms[j]).collect())
            .collect();

        let unit = |i: usize| {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            v
        };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let v = unit(i);
            seen.insert(v.clone());
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..rank {
                let c: i64 = (0..rank).map(|k| v[k] * cartan[k][i]).sum();
                if c != 0 {
                    let mut w = v.clone();
                    w[i] -= c;
                    if seen.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        if roots.len() > 256 {
            return Err(Error::Config("root systems above 256 roots are not supported".into()));
        }
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let norm = |v: &[i64]| -> i64 {
            let mut s = 0;
            for a in 0..rank {
                for b in 0..rank {
                    s += v[a] * v[b] * gram[a][b];
                }
            }
            s
        };
        let lengths: Vec<i64> = roots.iter().map(|r| norm(r)).collect();
        let min_len = *lengths.iter().min().unwrap();
        let long = lengths.iter().map(|&n| n > min_len).collect();
        let simple = (0..rank).map(|i| index[&unit(i)]).collect();
        let negation = roots
            .iter()
            .map(|r| index[&r.iter().map(|x| -x).collect::<Vec<_>>()])
            .collect();
        let reflections = (0..rank)
            .map(|i| {
                roots
                    .iter()
                    .map(|v| {
                        let c: i64 = (0..rank).map(|k| v[k] * cartan[k][i]).sum();
                        let mut w = v.clone();
                        w[i] -= c;
                        index[&w]
                    })
                    .collect()
            })
            .collect();
        Ok(RootSystem {
            family,
            rank,
            norms,
            gram,
            cartan,
            roots,
            index,
            long,
            simple,
            negation,
            reflections,
            weyl_order: weyl_group_order(family, rank),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short name such as `E6`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// All roots, sorted by height and then reverse-lexicographically.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    /// M = |Φ|.
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim_group(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn find(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.height(i) > 0
    }

    pub fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.is_positive(i))
    }

    /// False for every root when all roots have the same length.
    pub fn is_long(&self, i: usize) -> bool {
        self.long[i]
    }

    pub fn is_simply_laced(&self) -> bool {
        !self.long.iter().any(|&l| l)
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Squared lengths of the simple roots.
    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    /// Root index of the simple root α_{i+1}.
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn negate(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn highest_root(&self) -> usize {
        self.roots.len() - 1
    }

    /// Permutation of root indices induced by the simple reflection s_{i+1}.
    pub fn simple_reflection(&self, i: usize) -> &[usize] {
        &self.reflections[i]
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for x in 0..self.rank {
            if a[x] == 0 {
                continue;
            }
            for y in 0..self.rank {
                s += a[x] * b[y] * self.gram[x][y];
            }
        }
        s
    }

    /// ⟨μ, β^∨⟩ for a weight μ in fundamental coordinates and root index β.
    pub fn pair_weight(&self, mu: &[i64], beta: usize) -> i64 {
        let b = &self.roots[beta];
        let nb = self.inner(b, b);
        let s: i64 = (0..self.rank).map(|j| b[j] * self.norms[j] * mu[j]).sum();
        debug_assert_eq!(s % nb, 0);
        s / nb
    }

    /// A root in fundamental weight coordinates.
    pub fn root_as_weight(&self, i: usize) -> Vec<i64> {
        let r = &self.roots[i];
        (0..self.rank).map(|j| (0..self.rank).map(|k| r[k] * self.cartan[k][j]).sum()).collect()
    }

    /// Reflect a vector in the root basis by the root with index `beta`.
    pub fn reflect_index(&self, beta: usize, v: &[i64]) -> Vec<i64> {
        let b = &self.roots[beta];
        let c = 2 * self.inner(v, b) / self.inner(b, b);
        v.iter().zip(b).map(|(x, y)| x - c * y).collect()
    }

    /// Reflect `v` (root basis) in the hyperplane of `root`.
    pub fn reflect(&self, root: &[i64], v: &[i64]) -> Result<Vec<i64>> {
        let beta = self
            .find(root)
            .ok_or_else(|| Error::Argument(format!("{root:?} is not a root of {}", self.name())))?;
        if v.len() != self.rank {
            return Err(Error::Argument(format!("vector {v:?} has wrong length")));
        }
        Ok(self.reflect_index(beta, v))
    }

    /// Exponents read off from the numbers of positive roots of each height.
    pub fn exponents(&self) -> Vec<usize> {
        let mut by_height: HashMap<i64, usize> = HashMap::new();
        for i in self.positive() {
            *by_height.entry(self.height(i)).or_default() += 1;
        }
        let mut exps: Vec<usize> = (1..=self.rank)
            .map(|m| by_height.values().filter(|&&n| n >= m).count())
            .collect();
        exps.sort();
        exps
    }

    /// Smallest closed subsystem containing the given root indices.
    pub fn subsystem(&self, generators: &[usize]) -> Subsystem {
        let mut set: HashSet<usize> = HashSet::new();
        for &g in generators {
            set.insert(g);
            set.insert(self.negation[g]);
        }
        loop {
            let members: Vec<usize> = set.iter().copied().collect();
            let mut added = false;
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    let s: Vec<i64> = self.roots[a].iter().zip(&self.roots[b]).map(|(p, q)| p + q).collect();
                    if let Some(c) = self.find(&s) {
                        if set.insert(c) {
                            set.insert(self.negation[c]);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut roots: Vec<usize> = set.into_iter().collect();
        roots.sort();
        self.subsystem_from_closed(roots)
    }

    /// Subsystem generated by simple roots, given by 1-based Bourbaki indices.
    pub fn standard_subsystem(&self, simple: &[usize]) -> Result<Subsystem> {
        let mut gens = Vec::new();
        for &i in simple {
            if i == 0 || i > self.rank {
                return Err(Error::Argument(format!("no simple root α{i} in {}", self.name())));
            }
            gens.push(self.simple[i - 1]);
        }
        Ok(self.subsystem(&gens))
    }

    fn subsystem_from_closed(&self, roots: Vec<usize>) -> Subsystem {
        // Components of the non-orthogonality graph.
        let mut parent: HashMap<usize, usize> = roots.iter().map(|&r| (r, r)).collect();
        fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
            let mut r = x;
            while p[&r] != r {
                r = p[&r];
            }
            let mut y = x;
            while p[&y] != r {
                let n = p[&y];
                p.insert(y, r);
                y = n;
            }
            r
        }
        for (x, &a) in roots.iter().enumerate() {
            for &b in &roots[x + 1..] {
                if self.inner(&self.roots[a], &self.roots[b]) != 0 {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent.insert(ra, rb);
                    }
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for &r in &roots {
            let top = find(&mut parent, r);
            groups.entry(top).or_default().push(r);
        }
        let mut components: Vec<Component> =
            groups.into_values().map(|rs| self.classify_component(rs)).collect();
        components.sort_by(|a, b| {
            b.rank
                .cmp(&a.rank)
                .then(a.family.cmp(&b.family))
                .then(a.short.cmp(&b.short))
                .then(a.simple.cmp(&b.simple))
        });
        Subsystem { roots, components }
    }

    fn classify_component(&self, mut roots: Vec<usize>) -> Component {
        roots.sort();
        let positive: Vec<usize> = roots.iter().copied().filter(|&r| self.is_positive(r)).collect();
        let pos_set: HashSet<&[i64]> = positive.iter().map(|&r| self.roots[r].as_slice()).collect();
        let mut simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&r| {
                !positive.iter().any(|&a| {
                    let diff: Vec<i64> = self.roots[r].iter().zip(&self.roots[a]).map(|(x, y)| x - y).collect();
                    a != r && pos_set.contains(diff.as_slice())
                })
            })
            .collect();
        simple.sort();
        let n = simple.len();
        let ip = |a: usize, b: usize| self.inner(&self.roots[a], &self.roots[b]);
        let nrm: Vec<i64> = simple.iter().map(|&s| ip(s, s)).collect();
        let bond = |i: usize, j: usize| -> i64 {
            let g = ip(simple[i], simple[j]);
            if g == 0 {
                0
            } else {
                (4 * g * g) / (nrm[i] * nrm[j])
            }
        };
        let max_norm = *nrm.iter().max().unwrap_or(&2);
        let min_norm = *nrm.iter().min().unwrap_or(&2);
        let all_short = roots.iter().all(|&r| !self.long[r]);
        let short = all_short && !self.is_simply_laced() && min_norm == max_norm;
        let mut max_bond = 1;
        let mut degree = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && bond(i, j) > 0 {
                    degree[i] += 1;
                    max_bond = max_bond.max(bond(i, j));
                }
            }
        }
        let family = if n <= 1 {
            Family::A
        } else if max_bond == 3 {
            Family::G
        } else if max_bond == 2 {
            if n == 4 && degree.iter().filter(|&&d| d == 2).count() == 2 {
                let long_count = nrm.iter().filter(|&&x| x == max_norm).count();
                let double_inner = (0..n).all(|i| {
                    (0..n).all(|j| bond(i, j) != 2 || (degree[i] == 2 && degree[j] == 2))
                });
                if long_count == 2 && double_inner {
                    Family::F
                } else if long_count == 3 {
                    Family::B
                } else {
                    Family::C
                }
            } else if n == 2 {
                if self.family == Family::C {
                    Family::C
                } else {
                    Family::B
                }
            } else {
                let long_count = nrm.iter().filter(|&&x| x == max_norm).count();
                if long_count == n - 1 {
                    Family::B
                } else {
                    Family::C
                }
            }
        } else if degree.iter().all(|&d| d <= 2) {
            Family::A
        } else {
            let branch = (0..n).find(|&i| degree[i] == 3).unwrap();
            let mut legs = Vec::new();
            for start in (0..n).filter(|&j| bond(branch, j) > 0) {
                let (mut prev, mut cur, mut len) = (branch, start, 1);
                loop {
                    let next = (0..n).find(|&x| x != prev && x != cur && bond(cur, x) > 0);
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                legs.push(len);
            }
            legs.sort();
            if legs[0] == 1 && legs[1] == 1 {
                Family::D
            } else {
                Family::E
            }
        };
        Component { family, rank: n, simple, roots, short }
    }

    /// Breadth-first enumeration of the W-orbit of a set of roots under the
    /// simple reflections. Fails with the partial count once `cap` subsets
    /// have been produced.
    pub fn conjugates(&self, roots: &[usize], cap: usize) -> Result<Vec<RootSet>> {
        let start = rootset_from(roots.iter().copied());
        let mut seen: HashSet<RootSet> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start);
        order.push(start);
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            let members = rootset_members(&s);
            for perm in &self.reflections {
                let t = rootset_from(members.iter().map(|&r| perm[r]));
                if seen.insert(t) {
                    if order.len() >= cap {
                        return Err(Error::Resource { cap, partial: order.len() });
                    }
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        Ok(order)
    }

    /// ε-coordinates of a root for classical types.
    pub fn epsilon(&self) -> Result<EpsilonCoords> {
        EpsilonCoords::new(self.family, self.rank)
    }
}

/// An irreducible component of a subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    /// Root indices of a base, sorted.
    pub simple: Vec<usize>,
    pub roots: Vec<usize>,
    /// All roots short inside an ambient system with two root lengths.
    pub short: bool,
}

impl Component {
    /// Canonical Cartan type, identifying D2 = A1², D3 = A3, B1 = C1 = A1, C2 = B2.
    pub fn cartan_type(&self) -> (Family, usize) {
        canonical_type(self.family, self.rank)
    }
}

fn canonical_type(family: Family, rank: usize) -> (Family, usize) {
    match (family, rank) {
        (Family::B | Family::C, 1) => (Family::A, 1),
        (Family::C, 2) => (Family::B, 2),
        (Family::D, 3) => (Family::A, 3),
        other => other,
    }
}

/// A closed subsystem of an ambient root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    /// Sorted root indices.
    pub roots: Vec<usize>,
    pub components: Vec<Component>,
}

impl Subsystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn rootset(&self) -> RootSet {
        rootset_from(self.roots.iter().copied())
    }

    /// Cartan label such as `A_2A_1`.
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "∅".into();
        }
        self.components.iter().map(|c| format!("{}_{}", c.family, c.rank)).collect()
    }

    /// Multiset of canonical Cartan types, sorted.
    pub fn cartan_types(&self) -> Vec<(Family, usize)> {
        let mut out = Vec::new();
        for c in &self.components {
            match (c.family, c.rank) {
                (Family::D, 2) => {
                    out.push((Family::A, 1));
                    out.push((Family::A, 1));
                }
                _ => out.push(c.cartan_type()),
            }
        }
        out.sort();
        out
    }

    pub fn positive_roots<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = usize> + 'a {
        self.roots.iter().copied().filter(move |&r| rs.is_positive(r))
    }
}

/// Parse a type string like `A2A1^2`, `~A1`, `D2` or `A_2A_1` into a sorted
/// multiset of canonical Cartan types. A leading `~` marks short roots and is
/// ignored here.
pub fn parse_cartan_types(s: &str) -> Result<Vec<(Family, usize)>> {
    let cleaned: String = s.chars().filter(|c| !matches!(c, '_' | '~' | ' ' | '\'' | '(' | ')')).collect();
    let chars: Vec<char> = cleaned.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    if cleaned.is_empty() || cleaned == "∅" || cleaned == "1" {
        return Ok(out);
    }
    while i < chars.len() {
        let fam = Family::parse(&chars[i].to_string())?;
        i += 1;
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let rank: usize = cleaned[start..i]
            .parse()
            .map_err(|_| Error::Argument(format!("bad type string {s:?}")))?;
        let mut exp = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            exp = cleaned[st..i].parse().map_err(|_| Error::Argument(format!("bad exponent in {s:?}")))?;
        }
        for _ in 0..exp {
            match (fam, rank) {
                (Family::D, 2) => {
                    out.push((Family::A, 1));
                    out.push((Family::A, 1));
                }
                _ => out.push(canonical_type(fam, rank)),
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The classical ε-description of roots: α_i = ε_i − ε_{i+1}, and
/// α_ℓ = ε_ℓ, 2ε_ℓ or ε_{ℓ−1} + ε_ℓ for B, C, D.
#[derive(Clone, Debug)]
pub struct EpsilonCoords {
    family: Family,
    rank: usize,
    /// ε-vector of each simple root.
    simple: Vec<Vec<i64>>,
}

impl EpsilonCoords {
    pub fn new(family: Family, rank: usize) -> Result<EpsilonCoords> {
        check_type(family, rank).or_else(|e| {
            // Small classical ranks are fine for internal coordinate work.
            if family.is_classical() && rank >= 1 {
                Ok(())
            } else {
                Err(e)
            }
        })?;
        let n = if family == Family::A { rank + 1 } else { rank };
        let mut simple = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; n];
            let last = i + 1 == rank;
            match (family, last) {
                (Family::A, _) | (_, false) => {
                    v[i] = 1;
                    v[i + 1] = -1;
                }
                (Family::B, true) => v[i] = 1,
                (Family::C, true) => v[i] = 2,
                (Family::D, true) => {
                    v[i - 1] = 1;
                    v[i] = 1;
                }
                _ => return Err(Error::Config(format!("no ε-coordinates for type {family}"))),
            }
            simple.push(v);
        }
        Ok(EpsilonCoords { family, rank, simple })
    }

    /// Length of an ε-vector.
    pub fn dim(&self) -> usize {
        self.simple[0].len()
    }

    pub fn to_epsilon(&self, root: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for (c, s) in root.iter().zip(&self.simple) {
            for (o, x) in out.iter_mut().zip(s) {
                *o += c * x;
            }
        }
        out
    }

    /// Inverse of [`to_epsilon`](Self::to_epsilon) on the root lattice.
    pub fn from_epsilon(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.dim() {
            return None;
        }
        let l = self.rank;
        let mut c = vec![0i64; l];
        // Partial sums peel off ε_1, ε_2, ... in turn.
        let mut acc = 0i64;
        let stop = match self.family {
            Family::A => l,
            Family::D => l - 2,
            _ => l - 1,
        };
        for i in 0..stop {
            acc += v[i];
            c[i] = acc;
        }
        match self.family {
            Family::A => {
                if acc + v[l] != 0 {
                    return None;
                }
            }
            Family::B => c[l - 1] = acc + v[l - 1],
            Family::C => {
                let t = acc + v[l - 1];
                if t % 2 != 0 {
                    return None;
                }
                c[l - 1] = t / 2;
            }
            Family::D => {
                // c_{l-1} + c_l and c_l - c_{l-1}.
                let sum = acc + v[l - 2];
                let diff = v[l - 1];
                if (sum + diff) % 2 != 0 {
                    return None;
                }
                c[l - 1] = (sum + diff) / 2;
                c[l - 2] = (sum - diff) / 2;
            }
            _ => return None,
        }
        if self.to_epsilon(&c) == v {
            Some(c)
        } else {
            None
        }
    }

    /// Fundamental-weight coordinates of an ε-vector: the pairings with the
    /// simple coroots.
    pub fn weight_from_epsilon(&self, v: &[i64]) -> Vec<i64> {
        let l = self.rank;
        (0..l)
            .map(|j| {
                let s = &self.simple[j];
                let dot: i64 = s.iter().zip(v).map(|(a, b)| a * b).sum();
                let norm: i64 = s.iter().map(|a| a * a).sum();
                2 * dot / norm
            })
            .collect()
    }
}
