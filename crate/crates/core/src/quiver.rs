//! Quivers without loops or 2-cycles, exchange matrices, and mutation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("loop at vertex {0}")]
    LoopPresent(usize),
    #[error("2-cycle between vertices {0} and {1}")]
    TwoCyclePresent(usize, usize),
    #[error("vertex label {label} outside 1..={n}")]
    BadLabel { label: usize, n: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("mutation direction {k} outside 1..={n}")]
    BadDirection { k: usize, n: usize },
    #[error("malformed matrix: {0}")]
    BadShape(String),
    #[error("invalid quiver JSON: {0}")]
    Json(String),
    #[error("arrow count overflows after mutation")]
    Overflow,
}

type ArrowCounts = BTreeMap<(usize, usize), u32>;

/// A quiver on vertices `1..=n` with no loops and no 2-cycles.
///
/// Arrows are stored as a sorted multiset `(source, target) -> multiplicity`;
/// equality is labeled equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: ArrowCounts,
}

/// Wire form: `{"n": 3, "arrows": [[2,1],[3,1]]}`. Repeated pairs are
/// parallel arrows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<[usize; 2]>,
}

impl Quiver {
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut counts = ArrowCounts::new();
        for &(s, t) in arrows {
            for v in [s, t] {
                if v == 0 || v > n {
                    return Err(QuiverError::BadLabel { label: v, n });
                }
            }
            if s == t {
                return Err(QuiverError::LoopPresent(s));
            }
            *counts.entry((s, t)).or_default() += 1;
        }
        for &(s, t) in counts.keys() {
            if counts.contains_key(&(t, s)) {
                let (a, b) = if s < t { (s, t) } else { (t, s) };
                return Err(QuiverError::TwoCyclePresent(a, b));
            }
        }
        Ok(Quiver { n, arrows: counts })
    }

    /// Linear orientation `1 <- 2 <- ... <- n`.
    pub fn linear_a(n: usize) -> Self {
        let arrows: Vec<_> = (1..n).map(|i| (i + 1, i)).collect();
        Self::from_arrows(n, &arrows).expect("linear A_n is valid")
    }

    /// The Kronecker quiver `1 <= 2` (two arrows from 2 to 1).
    pub fn kronecker() -> Self {
        Self::from_arrows(2, &[(2, 1), (2, 1)]).expect("valid")
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let j: QuiverJson =
            serde_json::from_str(text).map_err(|e| QuiverError::Json(e.to_string()))?;
        Self::try_from(j)
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            n: self.n,
            arrows: self.arrow_list().into_iter().map(|(s, t)| [s, t]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arrow multiplicities keyed by `(source, target)`.
    pub fn arrows(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.arrows
    }

    /// Arrows with repetition, sorted.
    pub fn arrow_list(&self) -> Vec<(usize, usize)> {
        self.arrows
            .iter()
            .flat_map(|(&(s, t), &m)| std::iter::repeat_n((s, t), m as usize))
            .collect()
    }

    pub fn multiplicity(&self, s: usize, t: usize) -> u32 {
        self.arrows.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        let mut b = vec![vec![0i64; self.n]; self.n];
        for (&(s, t), &m) in &self.arrows {
            b[s - 1][t - 1] += m as i64;
            b[t - 1][s - 1] -= m as i64;
        }
        ExchangeMatrix { b }
    }

    pub fn from_exchange_matrix(b: &ExchangeMatrix) -> Self {
        let n = b.n();
        let mut arrows = ArrowCounts::new();
        for i in 0..n {
            for j in 0..n {
                if b.b[i][j] > 0 {
                    arrows.insert((i + 1, j + 1), b.b[i][j] as u32);
                }
            }
        }
        Quiver { n, arrows }
    }

    /// Mutation at `k`: compose paths through `k`, reverse the arrows at `k`,
    /// then cancel 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<Quiver, QuiverError> {
        if k == 0 || k > self.n {
            return Err(QuiverError::BadLabel { label: k, n: self.n });
        }
        Ok(Quiver {
            n: self.n,
            arrows: mutate_counts(&self.arrows, k, |_, _| true)?,
        })
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self.arrows.iter().map(|(&(s, t), &m)| ((t, s), m)).collect(),
        }
    }

    /// Vertices in an order where every arrow goes from an earlier vertex to
    /// a later one, or `None` when the quiver has an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, t) in self.arrows.keys() {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (1..=self.n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop() {
            order.push(v);
            let mut next = Vec::new();
            for (&(s, t), _) in self.arrows.range((v, 0)..(v + 1, 0)) {
                debug_assert_eq!(s, v);
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    next.push(t);
                }
            }
            ready.extend(next.into_iter().rev());
            ready.sort_by(|a, b| b.cmp(a));
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Direct successors of `v` with multiplicity.
    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.arrows
            .range((v, 0)..(v + 1, 0))
            .map(|(&(_, t), &m)| (t, m))
    }

    /// Direct predecessors of `v` with multiplicity.
    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.arrows
            .iter()
            .filter(move |(&(_, t), _)| t == v)
            .map(|(&(s, _), &m)| (s, m))
    }
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = QuiverError;
    fn try_from(j: QuiverJson) -> Result<Self, QuiverError> {
        let arrows: Vec<_> = j.arrows.iter().map(|a| (a[0], a[1])).collect();
        Quiver::from_arrows(j.n, &arrows)
    }
}

fn mutate_counts(
    arrows: &ArrowCounts,
    k: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<ArrowCounts, QuiverError> {
    let incoming: Vec<(usize, u32)> = arrows
        .iter()
        .filter(|(&(_, t), _)| t == k)
        .map(|(&(s, _), &m)| (s, m))
        .collect();
    let outgoing: Vec<(usize, u32)> = arrows
        .iter()
        .filter(|(&(s, _), _)| s == k)
        .map(|(&(_, t), &m)| (t, m))
        .collect();

    let mut out = ArrowCounts::new();
    for (&(s, t), &m) in arrows {
        // step 2: reverse every arrow touching k
        let key = if s == k || t == k { (t, s) } else { (s, t) };
        let slot = out.entry(key).or_default();
        *slot = slot.checked_add(m).ok_or(QuiverError::Overflow)?;
    }
    // step 1: one new arrow i -> j per path i -> k -> j
    for &(i, a) in &incoming {
        for &(j, b) in &outgoing {
            let slot = out.entry((i, j)).or_default();
            *slot = a
                .checked_mul(b)
                .and_then(|p| slot.checked_add(p))
                .ok_or(QuiverError::Overflow)?;
        }
    }
    // step 3: cancel 2-cycles
    let keys: Vec<_> = out.keys().copied().collect();
    for (s, t) in keys {
        if s < t {
            let fwd = out.get(&(s, t)).copied().unwrap_or(0);
            let back = out.get(&(t, s)).copied().unwrap_or(0);
            let common = fwd.min(back);
            if common > 0 {
                *out.get_mut(&(s, t)).unwrap() -= common;
                *out.get_mut(&(t, s)).unwrap() -= common;
            }
        }
    }
    out.retain(|&(s, t), m| *m > 0 && keep(s, t));
    Ok(out)
}

/// Skew-symmetric integer matrix `b[i][j] = #(i -> j) - #(j -> i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = b.len();
        if b.iter().any(|row| row.len() != n) {
            return Err(QuiverError::BadShape("exchange matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if b[i][j] != -b[j][i] {
                    return Err(QuiverError::NotSkewSymmetric);
                }
            }
        }
        Ok(ExchangeMatrix { b })
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            b: vec![vec![0; n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Entry `b_ij` for 1-based `i`, `j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i - 1][j - 1]
    }

    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        Ok(ExchangeMatrix {
            b: mutate_matrix(&self.b, k)?,
        })
    }

    pub fn to_quiver(&self) -> Quiver {
        Quiver::from_exchange_matrix(self)
    }
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = QuiverError;
    fn try_from(b: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        ExchangeMatrix::new(b)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.b
    }
}

/// Matrix mutation in direction `k` (1-based column). Works for any number
/// of rows, so frozen rows of an extended matrix mutate by the same rule.
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Result<Vec<Vec<i64>>, QuiverError> {
    let cols = b.first().map_or(0, Vec::len);
    if b.iter().any(|row| row.len() != cols) {
        return Err(QuiverError::BadShape("ragged rows".into()));
    }
    if b.len() < cols {
        return Err(QuiverError::BadShape("fewer rows than columns".into()));
    }
    if k == 0 || k > cols {
        return Err(QuiverError::BadDirection { k, n: cols });
    }
    let k = k - 1;
    (0..b.len())
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i == k || j == k {
                        return b[i][j].checked_neg().ok_or(QuiverError::Overflow);
                    }
                    let pos = b[i][k].max(0).checked_mul(b[k][j].max(0));
                    let neg = b[i][k].min(0).checked_mul(b[k][j].min(0));
                    pos.zip(neg)
                        .and_then(|(p, m)| b[i][j].checked_add(p)?.checked_sub(m))
                        .ok_or(QuiverError::Overflow)
                })
                .collect()
        })
        .collect()
}

/// Framed quiver: mutable vertices `1..=n` plus frozen copies `1'..=n'`,
/// stored as vertices `n+1..=2n`. Arrows between frozen vertices are
/// discarded after every mutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IceQuiver {
    n: usize,
    arrows: ArrowCounts,
}

impl IceQuiver {
    /// `Q` together with one arrow `i' -> i` for each vertex.
    pub fn framed(q: &Quiver) -> Self {
        let mut arrows = q.arrows.clone();
        for i in 1..=q.n {
            arrows.insert((q.n + i, i), 1);
        }
        IceQuiver { n: q.n, arrows }
    }

    /// Reads a `2n x n` extended exchange matrix.
    pub fn from_extended_matrix(rows: &[Vec<i64>]) -> Result<Self, QuiverError> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.len() != 2 * n || rows.iter().any(|r| r.len() != n) {
            return Err(QuiverError::BadShape("expected a 2n x n matrix".into()));
        }
        let top: Vec<Vec<i64>> = rows[..n].to_vec();
        let q = Quiver::from_exchange_matrix(&ExchangeMatrix::new(top)?);
        let mut arrows = q.arrows;
        for (r, row) in rows[n..].iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > 0 {
                    arrows.insert((n + r + 1, j + 1), v as u32);
                } else if v < 0 {
                    arrows.insert((j + 1, n + r + 1), (-v) as u32);
                }
            }
        }
        Ok(IceQuiver { n, arrows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.arrows
    }

    /// Human labels: mutable vertices as `i`, frozen ones as `i'`.
    pub fn label(&self, v: usize) -> String {
        if v > self.n {
            format!("{}'", v - self.n)
        } else {
            v.to_string()
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        if k == 0 || k > self.n {
            return Err(QuiverError::BadDirection { k, n: self.n });
        }
        let n = self.n;
        Ok(IceQuiver {
            n,
            arrows: mutate_counts(&self.arrows, k, |s, t| s <= n || t <= n)?,
        })
    }

    /// The `2n x n` extended exchange matrix read off the arrows.
    pub fn extended_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut m = vec![vec![0i64; n]; 2 * n];
        for (&(s, t), &c) in &self.arrows {
            let c = c as i64;
            if t <= n {
                m[s - 1][t - 1] += c;
            }
            if s <= n {
                m[t - 1][s - 1] -= c;
            }
        }
        m
    }
}
