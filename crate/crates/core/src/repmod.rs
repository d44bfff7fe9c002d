//! Representations of acyclic quivers at desk scale.
//!
//! Cartan matrices and g-vectors work for any acyclic quiver. The module
//! calculus (intervals, submodules, Hom, Ext, Auslander-Reiten knitting) is
//! restricted to quivers whose underlying graph is the path `A_n`, where every
//! indecomposable is thin: one-dimensional at each vertex of an interval and
//! identity along the arrows inside it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("quiver is not of type A: {0}")]
    NotTypeA(String),
    #[error("direct sum has infinitely many submodules")]
    InfiniteLattice,
    #[error("modules live on different quivers")]
    QuiverMismatch,
    #[error("{0} and {1} have a nonzero extension")]
    NotExtOrthogonal(ModuleDesc, ModuleDesc),
    #[error("nonzero morphisms form a cycle")]
    HomCycle,
    #[error("{0} is not a module")]
    NotAModule(ModuleDesc),
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("auslander-reiten knitting failed: {0}")]
    Knitting(String),
}

pub type DimVector = Vec<i64>;

/// Which Cartan matrix a g-vector is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// `C^{-1} d`.
    Standard,
    /// `(C^T)^{-1} d`, the Cartan matrix of the opposite quiver.
    Opposite,
}

/// Column `i` is the dimension vector of `P_i`: entry `(j, i)` counts the
/// paths from `i` to `j`.
pub fn cartan_matrix(q: &Quiver) -> Result<Vec<Vec<i64>>, RepError> {
    let order = q.topological_order().ok_or(RepError::CyclicQuiver)?;
    let n = q.n();
    let mut c = vec![vec![0i64; n]; n];
    for i in 1..=n {
        let mut count = vec![0i64; n + 1];
        count[i] = 1;
        for &u in &order {
            if count[u] == 0 {
                continue;
            }
            for (v, m) in q.out_arrows(u) {
                count[v] += count[u] * m as i64;
            }
        }
        for j in 1..=n {
            c[j - 1][i - 1] = count[j];
        }
    }
    Ok(c)
}

pub fn g_vector(q: &Quiver, d: &[i64], side: Side) -> Result<Vec<i64>, RepError> {
    let c = cartan_matrix(q)?;
    let c = match side {
        Side::Standard => c,
        Side::Opposite => linalg::transpose(&c),
    };
    let inv = linalg::inverse_int(&c).expect("Cartan matrix of an acyclic quiver is unimodular");
    Ok(linalg::mat_vec(&inv, d))
}

/// `<d, e> = sum_i d_i e_i - sum_{i -> j} d_i e_j`.
pub fn euler_form(q: &Quiver, d: &[i64], e: &[i64]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|(&(s, t), &m)| m as i64 * d[s - 1] * e[t - 1])
        .sum();
    diag - off
}

/// A representation with every vector space of dimension 0 or 1.
///
/// Vertex `v` is in the support when bit `v - 1` of `support` is set. Maps
/// along `active` arrows are the identity, all others are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThinModule {
    pub n: usize,
    pub support: u64,
    pub active: Vec<(usize, usize)>,
}

fn has(mask: u64, v: usize) -> bool {
    mask >> (v - 1) & 1 == 1
}

impl ThinModule {
    /// The module on `support` with identity maps along every arrow of `q`
    /// inside it.
    pub fn full(q: &Quiver, support: u64) -> Self {
        let active = q
            .arrow_list()
            .into_iter()
            .filter(|&(s, t)| has(support, s) && has(support, t))
            .collect();
        ThinModule {
            n: q.n(),
            support,
            active,
        }
    }

    pub fn dim(&self) -> DimVector {
        (1..=self.n).map(|v| i64::from(has(self.support, v))).collect()
    }

    /// Supports of all submodules: subsets closed under active arrows.
    pub fn submodule_masks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut sub = self.support;
        loop {
            if self
                .active
                .iter()
                .all(|&(s, t)| !has(sub, s) || has(sub, t))
            {
                out.push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.support;
        }
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    pub fn submodule(&self, mask: u64) -> ThinModule {
        ThinModule {
            n: self.n,
            support: mask,
            active: self
                .active
                .iter()
                .copied()
                .filter(|&(s, t)| has(mask, s) && has(mask, t))
                .collect(),
        }
    }

    pub fn quotient(&self, mask: u64) -> ThinModule {
        self.submodule(self.support & !mask)
    }
}

/// `dim Hom(m, n)` for thin modules on the same quiver: one scalar per
/// shared vertex, one commutativity constraint per arrow.
pub fn thin_hom_dim(q: &Quiver, m: &ThinModule, n: &ThinModule) -> usize {
    let shared = m.support & n.support;
    let vars: Vec<usize> = (1..=q.n()).filter(|&v| has(shared, v)).collect();
    if vars.is_empty() {
        return 0;
    }
    let col: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let m_active: BTreeSet<_> = m.active.iter().copied().collect();
    let n_active: BTreeSet<_> = n.active.iter().copied().collect();
    let mut rows = Vec::new();
    for (u, v) in q.arrow_list() {
        if !has(m.support, u) || !has(n.support, v) {
            continue;
        }
        // component M_u -> N_v of  N_a f_u - f_v M_a
        let mut row = vec![0i64; vars.len()];
        if n_active.contains(&(u, v)) {
            if let Some(&c) = col.get(&u) {
                row[c] += 1;
            }
        }
        if m_active.contains(&(u, v)) {
            if let Some(&c) = col.get(&v) {
                row[c] -= 1;
            }
        }
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return vars.len();
    }
    vars.len() - linalg::rank_int(&rows)
}

/// An indecomposable object of the module category of a type-A quiver, or a
/// shifted projective.
///
/// Interval endpoints are vertex labels listed in path order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModuleDesc {
    Interval { a: usize, b: usize },
    Shifted(usize),
}

impl ModuleDesc {
    pub fn is_shifted(&self) -> bool {
        matches!(self, ModuleDesc::Shifted(_))
    }
}

impl fmt::Display for ModuleDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDesc::Interval { a, b } => write!(f, "M[{a},{b}]"),
            ModuleDesc::Shifted(i) => write!(f, "P[{i}][1]"),
        }
    }
}

/// Literal form before it is resolved against a quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleLiteral {
    Interval(usize, usize),
    Projective(usize),
    Injective(usize),
    Simple(usize),
    Shifted(usize),
}

impl FromStr for ModuleLiteral {
    type Err = RepError;

    fn from_str(text: &str) -> Result<Self, RepError> {
        let bad = || RepError::BadModule(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let kind = s.chars().next().ok_or_else(bad)?;
        let rest = &s[1..];
        let (inner, tail) = rest
            .strip_prefix('[')
            .and_then(|r| r.split_once(']'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (kind, nums.as_slice(), tail) {
            ('M', &[a, b], "") => Ok(ModuleLiteral::Interval(a, b)),
            ('P', &[i], "") => Ok(ModuleLiteral::Projective(i)),
            ('P', &[i], "[1]") => Ok(ModuleLiteral::Shifted(i)),
            ('I', &[i], "") => Ok(ModuleLiteral::Injective(i)),
            ('S', &[i], "") => Ok(ModuleLiteral::Simple(i)),
            _ => Err(bad()),
        }
    }
}

/// A quiver whose underlying graph is the path on `n` vertices, with the
/// data needed for its module calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeAQuiver {
    quiver: Quiver,
    order: Vec<usize>,
    pos: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<i64>>,
    cartan_t_inv: Vec<Vec<i64>>,
}

impl TypeAQuiver {
    pub fn new(q: &Quiver) -> Result<Self, RepError> {
        let n = q.n();
        if n == 0 {
            return Err(RepError::NotTypeA("no vertices".into()));
        }
        if q.arrows().values().any(|&m| m > 1) {
            return Err(RepError::NotTypeA("multiple arrows".into()));
        }
        if q.arrows().len() != n - 1 {
            return Err(RepError::NotTypeA("wrong number of arrows".into()));
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(s, t) in q.arrows().keys() {
            adj[s].push(t);
            adj[t].push(s);
        }
        if adj.iter().any(|nb| nb.len() > 2) {
            return Err(RepError::NotTypeA("a vertex has degree above two".into()));
        }
        let start = (1..=n)
            .find(|&v| adj[v].len() <= 1)
            .ok_or_else(|| RepError::NotTypeA("underlying graph is a cycle".into()))?;
        let mut order = vec![start];
        let mut prev = 0;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        if order.len() != n {
            return Err(RepError::NotTypeA("underlying graph is disconnected".into()));
        }
        let mut pos = vec![usize::MAX; n + 1];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let cartan = cartan_matrix(q)?;
        let cartan_inv = linalg::inverse_int(&cartan).expect("unimodular");
        let cartan_t_inv = linalg::inverse_int(&linalg::transpose(&cartan)).expect("unimodular");
        Ok(TypeAQuiver {
            quiver: q.clone(),
            order,
            pos,
            cartan,
            cartan_inv,
            cartan_t_inv,
        })
    }

    /// Linear orientation `1 <- 2 <- ... <- n`.
    pub fn linear(n: usize) -> Self {
        Self::new(&Quiver::linear_a(n)).expect("linear A_n")
    }

    /// All `2^(n-1)` orientations of the path `1 - 2 - ... - n`.
    pub fn orientations(n: usize) -> Vec<TypeAQuiver> {
        (0..1u32 << (n - 1))
            .map(|bits| {
                let arrows: Vec<_> = (1..n)
                    .map(|i| {
                        if bits >> (i - 1) & 1 == 1 {
                            (i, i + 1)
                        } else {
                            (i + 1, i)
                        }
                    })
                    .collect();
                Self::new(&Quiver::from_arrows(n, &arrows).expect("path quiver")).expect("type A")
            })
            .collect()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// Vertex labels in path order.
    pub fn path_order(&self) -> &[usize] {
        &self.order
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    fn check_label(&self, v: usize) -> Result<(), RepError> {
        if v == 0 || v > self.n() {
            return Err(RepError::BadModule(format!("vertex {v} outside 1..={}", self.n())));
        }
        Ok(())
    }

    /// The interval between vertices `a` and `b`.
    pub fn interval(&self, a: usize, b: usize) -> Result<ModuleDesc, RepError> {
        self.check_label(a)?;
        self.check_label(b)?;
        Ok(if self.pos[a] <= self.pos[b] {
            ModuleDesc::Interval { a, b }
        } else {
            ModuleDesc::Interval { a: b, b: a }
        })
    }

    fn from_mask(&self, mask: u64) -> Result<ModuleDesc, RepError> {
        let ps: Vec<usize> = (1..=self.n())
            .filter(|&v| has(mask, v))
            .map(|v| self.pos[v])
            .collect();
        let lo = *ps.iter().min().ok_or_else(|| RepError::BadModule("zero module".into()))?;
        let hi = *ps.iter().max().expect("nonempty");
        if hi - lo + 1 != ps.len() {
            return Err(RepError::BadModule("support is not an interval".into()));
        }
        Ok(ModuleDesc::Interval {
            a: self.order[lo],
            b: self.order[hi],
        })
    }

    /// The module with dimension vector `d`, if it is an interval.
    pub fn module_with_dim(&self, d: &[i64]) -> Option<ModuleDesc> {
        if d.len() != self.n() || d.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        let mask = d
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == 1)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        self.from_mask(mask).ok()
    }

    pub fn projective(&self, i: usize) -> Result<ModuleDesc, RepError> {
        self.check_label(i)?;
        let col: Vec<i64> = self.cartan.iter().map(|row| row[i - 1]).collect();
        Ok(self.module_with_dim(&col).expect("projectives are intervals"))
    }

    pub fn injective(&self, i: usize) -> Result<ModuleDesc, RepError> {
        self.check_label(i)?;
        Ok(self
            .module_with_dim(&self.cartan[i - 1])
            .expect("injectives are intervals"))
    }

    pub fn simple(&self, i: usize) -> Result<ModuleDesc, RepError> {
        self.interval(i, i)
    }

    pub fn shifted(&self, i: usize) -> Result<ModuleDesc, RepError> {
        self.check_label(i)?;
        Ok(ModuleDesc::Shifted(i))
    }

    pub fn resolve(&self, lit: ModuleLiteral) -> Result<ModuleDesc, RepError> {
        match lit {
            ModuleLiteral::Interval(a, b) => self.interval(a, b),
            ModuleLiteral::Projective(i) => self.projective(i),
            ModuleLiteral::Injective(i) => self.injective(i),
            ModuleLiteral::Simple(i) => self.simple(i),
            ModuleLiteral::Shifted(i) => self.shifted(i),
        }
    }

    /// Parses `M[a,b]`, `P[i]`, `I[i]`, `S[i]` or `P[i][1]`.
    pub fn parse_module(&self, text: &str) -> Result<ModuleDesc, RepError> {
        self.resolve(text.parse()?)
    }

    /// All `n(n+1)/2` interval modules, by path position of their endpoints.
    pub fn interval_modules(&self) -> Vec<ModuleDesc> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for lo in 0..n {
            for hi in lo..n {
                out.push(ModuleDesc::Interval {
                    a: self.order[lo],
                    b: self.order[hi],
                });
            }
        }
        out
    }

    /// Interval modules followed by `P_1[1], ..., P_n[1]`.
    pub fn objects(&self) -> Vec<ModuleDesc> {
        let mut out = self.interval_modules();
        out.extend((1..=self.n()).map(ModuleDesc::Shifted));
        out
    }

    fn support_mask(&self, m: &ModuleDesc) -> Result<u64, RepError> {
        match *m {
            ModuleDesc::Interval { a, b } => {
                self.check_label(a)?;
                self.check_label(b)?;
                let (lo, hi) = (self.pos[a].min(self.pos[b]), self.pos[a].max(self.pos[b]));
                Ok(self.order[lo..=hi].iter().fold(0u64, |acc, &v| acc | 1 << (v - 1)))
            }
            ModuleDesc::Shifted(_) => Err(RepError::NotAModule(*m)),
        }
    }

    pub fn thin(&self, m: &ModuleDesc) -> Result<ThinModule, RepError> {
        Ok(ThinModule::full(&self.quiver, self.support_mask(m)?))
    }

    pub fn dim(&self, m: &ModuleDesc) -> Result<DimVector, RepError> {
        Ok(self.thin(m)?.dim())
    }

    /// `C^{-1} dim M`, or `-e_i` for `P_i[1]`.
    pub fn g_vector(&self, m: &ModuleDesc) -> Vec<i64> {
        match *m {
            ModuleDesc::Shifted(i) => {
                let mut g = vec![0; self.n()];
                g[i - 1] = -1;
                g
            }
            _ => {
                let d = self.dim(m).expect("valid interval");
                linalg::mat_vec(&self.cartan_inv, &d)
            }
        }
    }

    pub fn g_of_dim(&self, d: &[i64], side: Side) -> Vec<i64> {
        match side {
            Side::Standard => linalg::mat_vec(&self.cartan_inv, d),
            Side::Opposite => linalg::mat_vec(&self.cartan_t_inv, d),
        }
    }

    /// Dimension vectors of all submodules, smallest first.
    pub fn submodules(&self, m: &ModuleDesc) -> Result<Vec<DimVector>, RepError> {
        let t = self.thin(m)?;
        Ok(t.submodule_masks()
            .into_iter()
            .map(|s| t.submodule(s).dim())
            .collect())
    }

    /// Dimension vectors (with repetition) of the submodules of a direct sum,
    /// or [`RepError::InfiniteLattice`] when there are infinitely many.
    ///
    /// A submodule of `A + B` is cut out by submodules `X <= A`, `Y <= B`
    /// and a morphism `Y -> A/X`; any nonzero such morphism yields a
    /// one-parameter family.
    pub fn submodules_of_sum(&self, summands: &[ModuleDesc]) -> Result<Vec<DimVector>, RepError> {
        let thins: Vec<ThinModule> = summands
            .iter()
            .map(|m| self.thin(m))
            .collect::<Result<_, _>>()?;
        for i in 0..thins.len() {
            for j in i + 1..thins.len() {
                for x in thins[i].submodule_masks() {
                    let quot = thins[i].quotient(x);
                    for y in thins[j].submodule_masks() {
                        let sub = thins[j].submodule(y);
                        if thin_hom_dim(&self.quiver, &sub, &quot) > 0 {
                            return Err(RepError::InfiniteLattice);
                        }
                    }
                }
            }
        }
        let mut acc: Vec<DimVector> = vec![vec![0; self.n()]];
        for t in &thins {
            let dims: Vec<DimVector> = t
                .submodule_masks()
                .into_iter()
                .map(|s| t.submodule(s).dim())
                .collect();
            acc = acc
                .iter()
                .flat_map(|a| {
                    dims.iter()
                        .map(move |d| a.iter().zip(d).map(|(x, y)| x + y).collect())
                })
                .collect();
        }
        acc.sort();
        Ok(acc)
    }

    pub fn hom_dim(&self, m: &ModuleDesc, n: &ModuleDesc) -> Result<usize, RepError> {
        if let ModuleDesc::Shifted(i) = *m {
            // Hom(P_i, N) = N_i is the only case the shifted rules need.
            return Err(RepError::NotAModule(ModuleDesc::Shifted(i)));
        }
        Ok(thin_hom_dim(&self.quiver, &self.thin(m)?, &self.thin(n)?))
    }

    /// `dim Ext^1(m, n) = dim Hom(m, n) - <dim m, dim n>`.
    pub fn ext_dim(&self, m: &ModuleDesc, n: &ModuleDesc) -> Result<usize, RepError> {
        let hom = self.hom_dim(m, n)? as i64;
        let e = hom - euler_form(&self.quiver, &self.dim(m)?, &self.dim(n)?);
        debug_assert!(e >= 0);
        Ok(e as usize)
    }

    /// Orders ext-orthogonal modules so that nonzero morphisms only go
    /// forward; ties keep input order.
    pub fn exceptional_order(&self, mods: &[ModuleDesc]) -> Result<Vec<ModuleDesc>, RepError> {
        let k = mods.len();
        for i in 0..k {
            for j in 0..k {
                if self.ext_dim(&mods[i], &mods[j])? != 0 {
                    return Err(RepError::NotExtOrthogonal(mods[i], mods[j]));
                }
            }
        }
        let mut indeg = vec![0usize; k];
        let mut succ = vec![Vec::new(); k];
        for i in 0..k {
            for j in 0..k {
                if i != j && mods[i] != mods[j] && self.hom_dim(&mods[i], &mods[j])? > 0 {
                    succ[i].push(j);
                    indeg[j] += 1;
                }
            }
        }
        let mut ready: BTreeSet<usize> = (0..k).filter(|&i| indeg[i] == 0).collect();
        let mut out = Vec::with_capacity(k);
        while let Some(i) = ready.pop_first() {
            out.push(mods[i]);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        if out.len() != k {
            return Err(RepError::HomCycle);
        }
        Ok(out)
    }

    /// The Auslander-Reiten quiver, knitted from the projectives and
    /// continued past the injectives by `tau^{-1} I_i = P_i[1]`.
    pub fn ar_quiver(&self) -> Result<ArQuiver, RepError> {
        knit(self)
    }
}

/// A vertex of the knitted AR quiver: `tau^{-step} P_orbit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArNode {
    pub module: ModuleDesc,
    /// Dimension vector; for `P_i[1]` this is `-dim P_i`.
    pub dim: DimVector,
    pub orbit: usize,
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mesh {
    pub start: usize,
    pub middle: Vec<usize>,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArQuiver {
    pub nodes: Vec<ArNode>,
    /// Irreducible maps as `(from, to)` node indices.
    pub arrows: Vec<(usize, usize)>,
    /// `(X, tau^{-1} X)` pairs.
    pub tau_inverse: Vec<(usize, usize)>,
}

impl ArQuiver {
    pub fn index_of(&self, m: &ModuleDesc) -> Option<usize> {
        self.nodes.iter().position(|v| &v.module == m)
    }

    pub fn successors(&self, v: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.0 == v).map(|a| a.1).collect()
    }

    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.1 == v).map(|a| a.0).collect()
    }

    /// One mesh `X -> (middle) -> tau^{-1} X` per translation pair.
    pub fn meshes(&self) -> Vec<Mesh> {
        self.tau_inverse
            .iter()
            .map(|&(x, z)| Mesh {
                start: x,
                middle: self.successors(x),
                end: z,
            })
            .collect()
    }
}

fn knit(tq: &TypeAQuiver) -> Result<ArQuiver, RepError> {
    let n = tq.n();
    let mut ar = ArQuiver {
        nodes: Vec::new(),
        arrows: Vec::new(),
        tau_inverse: Vec::new(),
    };
    let mut tau_inv: Vec<Option<usize>> = Vec::new();
    for i in 1..=n {
        let p = tq.projective(i)?;
        ar.nodes.push(ArNode {
            module: p,
            dim: tq.dim(&p)?,
            orbit: i,
            step: 0,
        });
        tau_inv.push(None);
    }
    // rad P_i is the sum of P_j over arrows i -> j
    for &(i, j) in tq.quiver.arrows().keys() {
        ar.arrows.push((j - 1, i - 1));
    }
    let injectives: BTreeMap<DimVector, usize> = (1..=n)
        .map(|i| Ok((tq.dim(&tq.injective(i)?)?, i)))
        .collect::<Result<_, RepError>>()?;

    loop {
        let ready = (0..ar.nodes.len()).find(|&x| {
            !ar.nodes[x].module.is_shifted()
                && tau_inv[x].is_none()
                && ar.predecessors(x).iter().all(|&y| tau_inv[y].is_some())
        });
        let Some(x) = ready else { break };
        let succ = ar.successors(x);
        let mut d = vec![0i64; n];
        for &s in &succ {
            for (acc, v) in d.iter_mut().zip(&ar.nodes[s].dim) {
                *acc += v;
            }
        }
        for (acc, v) in d.iter_mut().zip(&ar.nodes[x].dim) {
            *acc -= v;
        }
        let module = if let Some(&i) = injectives.get(&ar.nodes[x].dim) {
            let expect: DimVector = tq.dim(&tq.projective(i)?)?.iter().map(|v| -v).collect();
            if d != expect {
                return Err(RepError::Knitting(format!(
                    "translate of I_{i} has dimension {d:?}, expected {expect:?}"
                )));
            }
            ModuleDesc::Shifted(i)
        } else {
            tq.module_with_dim(&d).ok_or_else(|| {
                RepError::Knitting(format!("{d:?} is not the dimension of an indecomposable"))
            })?
        };
        let z = ar.nodes.len();
        ar.nodes.push(ArNode {
            module,
            dim: d,
            orbit: ar.nodes[x].orbit,
            step: ar.nodes[x].step + 1,
        });
        tau_inv.push(None);
        tau_inv[x] = Some(z);
        ar.tau_inverse.push((x, z));
        for s in succ {
            ar.arrows.push((s, z));
        }
    }

    let modules = ar.nodes.iter().filter(|v| !v.module.is_shifted()).count();
    if modules != n * (n + 1) / 2 || ar.nodes.len() != modules + n {
        return Err(RepError::Knitting("knitting did not reach every indecomposable".into()));
    }
    Ok(ar)
}
