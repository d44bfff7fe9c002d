//! Framed exchange matrices, c-vectors and maximal green sequences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg;
use crate::quiver::{mutate_matrix, ExchangeMatrix, QuiverError};
use crate::repmod::{ModuleDesc, TypeAQuiver};
use crate::silting::{silting_pairs, SiltingError, SiltingPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MgsError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Silting(#[from] SiltingError),
    #[error("c-vector {column} has entries of both signs")]
    SignIncoherent { column: usize },
    #[error("search budget exhausted after {states} states")]
    BudgetExceeded { partial: Vec<GreenSeq>, states: usize },
    #[error("duality check failed: {0}")]
    NzViolation(String),
}

/// `B` stacked over the C-matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FramedMatrix {
    top: Vec<Vec<i64>>,
    cmat: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

impl FramedMatrix {
    /// `[B; I]`.
    pub fn framed(b: &ExchangeMatrix) -> Self {
        FramedMatrix {
            top: b.rows().to_vec(),
            cmat: linalg::identity(b.n()),
        }
    }

    /// Reads a `2n x n` matrix, checking skew-symmetry of the top block and
    /// sign coherence of the bottom one.
    pub fn from_extended(rows: &[Vec<i64>]) -> Result<Self, MgsError> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.len() != 2 * n || rows.iter().any(|r| r.len() != n) {
            return Err(QuiverError::BadShape("expected a 2n x n matrix".into()).into());
        }
        ExchangeMatrix::new(rows[..n].to_vec())?;
        let f = FramedMatrix {
            top: rows[..n].to_vec(),
            cmat: rows[n..].to_vec(),
        };
        f.c_vectors()?;
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        ExchangeMatrix::new(self.top.clone()).expect("mutation keeps skew-symmetry")
    }

    pub fn c_matrix(&self) -> &[Vec<i64>] {
        &self.cmat
    }

    pub fn extended(&self) -> Vec<Vec<i64>> {
        self.top.iter().chain(&self.cmat).cloned().collect()
    }

    /// Columns of the C-matrix.
    pub fn c_vectors(&self) -> Result<Vec<Vec<i64>>, MgsError> {
        let cols = linalg::transpose(&self.cmat);
        for (j, c) in cols.iter().enumerate() {
            let pos = c.iter().any(|&v| v > 0);
            let neg = c.iter().any(|&v| v < 0);
            if pos == neg {
                return Err(MgsError::SignIncoherent { column: j + 1 });
            }
        }
        Ok(cols)
    }

    pub fn colors(&self) -> Result<Vec<Color>, MgsError> {
        Ok(self
            .c_vectors()?
            .iter()
            .map(|c| if c.iter().any(|&v| v > 0) { Color::Green } else { Color::Red })
            .collect())
    }

    pub fn green_vertices(&self) -> Result<Vec<usize>, MgsError> {
        self.vertices_colored(Color::Green)
    }

    pub fn red_vertices(&self) -> Result<Vec<usize>, MgsError> {
        self.vertices_colored(Color::Red)
    }

    fn vertices_colored(&self, want: Color) -> Result<Vec<usize>, MgsError> {
        Ok(self
            .colors()?
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c == want)
            .map(|(i, _)| i + 1)
            .collect())
    }

    /// Mutation of the whole `2n x n` matrix in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, MgsError> {
        let m = mutate_matrix(&self.extended(), k)?;
        let n = self.n();
        let next = FramedMatrix {
            top: m[..n].to_vec(),
            cmat: m[n..].to_vec(),
        };
        next.c_vectors()?;
        Ok(next)
    }

    /// `G = -(C^T)^{-1}`; its columns are the g-vectors of the current
    /// cluster.
    pub fn g_matrix(&self) -> Vec<Vec<i64>> {
        let inv = linalg::inverse_int(&linalg::transpose(&self.cmat))
            .expect("C-matrices are unimodular");
        inv.into_iter()
            .map(|row| row.into_iter().map(|v| -v).collect())
            .collect()
    }
}

impl fmt::Display for FramedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for (i, row) in self.extended().iter().enumerate() {
            if i == n {
                writeln!(f, "{}", vec!["--"; n].join(" "))?;
            }
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for FramedMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.extended().serialize(s)
    }
}

/// A maximal green sequence with the framed matrices it passes through,
/// starting with the framed initial matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenSeq {
    pub directions: Vec<usize>,
    pub states: Vec<FramedMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MgsBudget {
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for MgsBudget {
    fn default() -> Self {
        MgsBudget {
            max_depth: 64,
            max_states: 1_000_000,
        }
    }
}

/// Every maximal green sequence of `b`, in lexicographic order.
///
/// Depth-first over green vertices in ascending order; a branch succeeds once
/// every c-vector is negative.
pub fn find_mgs(b: &ExchangeMatrix, budget: MgsBudget) -> Result<Vec<GreenSeq>, MgsError> {
    let mut search = Search {
        budget,
        states: 0,
        exhausted: false,
        found: Vec::new(),
        path: vec![FramedMatrix::framed(b)],
        dirs: Vec::new(),
        on_path: BTreeSet::new(),
    };
    search.on_path.insert(search.path[0].clone());
    search.dfs()?;
    search.found.sort_by(|a, b| a.directions.cmp(&b.directions));
    if search.exhausted {
        return Err(MgsError::BudgetExceeded {
            partial: search.found,
            states: search.states,
        });
    }
    Ok(search.found)
}

struct Search {
    budget: MgsBudget,
    states: usize,
    exhausted: bool,
    found: Vec<GreenSeq>,
    path: Vec<FramedMatrix>,
    dirs: Vec<usize>,
    on_path: BTreeSet<FramedMatrix>,
}

impl Search {
    fn dfs(&mut self) -> Result<(), MgsError> {
        let cur = self.path.last().expect("nonempty path").clone();
        let green = cur.green_vertices()?;
        if green.is_empty() {
            self.found.push(GreenSeq {
                directions: self.dirs.clone(),
                states: self.path.clone(),
            });
            return Ok(());
        }
        if self.dirs.len() >= self.budget.max_depth {
            self.exhausted = true;
            return Ok(());
        }
        for k in green {
            if self.states >= self.budget.max_states {
                self.exhausted = true;
                return Ok(());
            }
            self.states += 1;
            let next = cur.mutate(k)?;
            if !self.on_path.insert(next.clone()) {
                continue;
            }
            self.path.push(next);
            self.dirs.push(k);
            self.dfs()?;
            self.dirs.pop();
            let done = self.path.pop().expect("pushed above");
            self.on_path.remove(&done);
        }
        Ok(())
    }
}

/// What the duality check found at one framed matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NzReport {
    pub g_vectors: Vec<Vec<i64>>,
    pub pair: SiltingPair,
    /// `(sign, module)` with `c_j = sign * dim module`.
    pub c_modules: Vec<(i8, ModuleDesc)>,
}

/// Checks, for framed matrices reachable from `[B(Q); I]`, that the columns
/// of `G = -(C^T)^{-1}` are the g-vectors of a silting pair, that every
/// c-vector is plus or minus a dimension vector of an indecomposable, and
/// that `g_i . c_j = -delta_ij`.
pub struct NzChecker {
    tq: TypeAQuiver,
    by_g: BTreeMap<BTreeSet<Vec<i64>>, SiltingPair>,
}

impl NzChecker {
    pub fn new(tq: &TypeAQuiver) -> Result<Self, MgsError> {
        let by_g = silting_pairs(tq)?
            .into_iter()
            .map(|p| (p.g_vectors(tq).into_iter().collect(), p))
            .collect();
        Ok(NzChecker { tq: tq.clone(), by_g })
    }

    pub fn check(&self, f: &FramedMatrix) -> Result<NzReport, MgsError> {
        let n = self.tq.n();
        if f.n() != n {
            return Err(MgsError::NzViolation("size mismatch".into()));
        }
        let cs = f.c_vectors()?;
        let g = linalg::transpose(&f.g_matrix());
        let key: BTreeSet<Vec<i64>> = g.iter().cloned().collect();
        let pair = self
            .by_g
            .get(&key)
            .cloned()
            .ok_or_else(|| MgsError::NzViolation(format!("{g:?} are not the g-vectors of a silting pair")))?;
        for (i, gi) in g.iter().enumerate() {
            for (j, cj) in cs.iter().enumerate() {
                let want = if i == j { -1 } else { 0 };
                if linalg::dot(gi, cj) != want {
                    return Err(MgsError::NzViolation(format!("g_{} . c_{} != {want}", i + 1, j + 1)));
                }
            }
        }
        let mut c_modules = Vec::with_capacity(n);
        for c in &cs {
            let sign: i8 = if c.iter().any(|&v| v > 0) { 1 } else { -1 };
            let abs: Vec<i64> = c.iter().map(|v| v.abs()).collect();
            let m = self
                .tq
                .module_with_dim(&abs)
                .ok_or_else(|| MgsError::NzViolation(format!("{c:?} is not a signed dimension vector")))?;
            c_modules.push((sign, m));
        }
        Ok(NzReport {
            g_vectors: g,
            pair,
            c_modules,
        })
    }
}
