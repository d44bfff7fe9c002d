//! Cluster characters.
//!
//! Three independent routes to the same Laurent polynomials: the submodule
//! sum for thin modules, knitting the frieze along the AR quiver, and the
//! projective/injective recursions for arbitrary acyclic quivers.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::linalg;
use crate::quiver::Quiver;
use crate::repmod::{self, DimVector, ModuleDesc, RepError, Side, ThinModule, TypeAQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("recursion is not grounded on a quiver with oriented cycles")]
    RecursionUngrounded,
    #[error("no character recorded for {0}")]
    MissingCharacter(ModuleDesc),
    #[error("mesh closing at {0} disagrees with the frame")]
    FrameMismatch(ModuleDesc),
}

fn neg_monomial(g: &[i64]) -> LaurentPoly {
    let neg: Vec<i64> = g.iter().map(|v| -v).collect();
    LaurentPoly::x_pow(&neg)
}

/// `sum_{V <= M} x^{-g(dim V)} x^{-g_op(dim M - dim V)}` for a thin module.
pub fn char_thin(q: &Quiver, m: &ThinModule) -> Result<LaurentPoly, CharError> {
    let c = repmod::cartan_matrix(q)?;
    let inv = linalg::inverse_int(&c).expect("unimodular");
    let inv_t = linalg::inverse_int(&linalg::transpose(&c)).expect("unimodular");
    let dm = m.dim();
    let mut acc = LaurentPoly::zero(q.n());
    for mask in m.submodule_masks() {
        let dv = m.submodule(mask).dim();
        let rest: Vec<i64> = dm.iter().zip(&dv).map(|(a, b)| a - b).collect();
        let mut e: Vec<i64> = linalg::mat_vec(&inv, &dv);
        for (slot, v) in e.iter_mut().zip(linalg::mat_vec(&inv_t, &rest)) {
            *slot += v;
        }
        acc = &acc + &neg_monomial(&e);
    }
    Ok(acc)
}

/// Submodule-sum character of an interval module; `x_i` for `P_i[1]`.
pub fn char_submodule(tq: &TypeAQuiver, m: &ModuleDesc) -> Result<LaurentPoly, CharError> {
    match *m {
        ModuleDesc::Shifted(i) => Ok(LaurentPoly::var(tq.n(), i - 1)),
        _ => char_thin(tq.quiver(), &tq.thin(m)?),
    }
}

/// Characters of every indecomposable and shifted projective.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CharacterTable {
    pub entries: BTreeMap<ModuleDesc, LaurentPoly>,
}

impl CharacterTable {
    pub fn get(&self, m: &ModuleDesc) -> Result<&LaurentPoly, CharError> {
        self.entries.get(m).ok_or(CharError::MissingCharacter(*m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Literal to rendered polynomial.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(m, p)| (m.to_string(), serde_json::Value::String(p.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl Serialize for CharacterTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Knits the characters along the AR quiver.
///
/// The frame holds `x_i` at `P_i[1]`. Projectives come from the mesh ending
/// at `P_i`, whose middle term is `rad P_i` plus the `P_k[1]` with `k -> i`;
/// every later entry solves `chi(X) chi(tau^{-1} X) = prod chi(middle) + 1`.
pub fn char_frieze(tq: &TypeAQuiver) -> Result<CharacterTable, CharError> {
    let n = tq.n();
    let q = tq.quiver();
    let mut table = CharacterTable::default();
    for i in 1..=n {
        table
            .entries
            .insert(ModuleDesc::Shifted(i), LaurentPoly::var(n, i - 1));
    }
    let order = q.topological_order().ok_or(CharError::RecursionUngrounded)?;
    for &i in order.iter().rev() {
        let mut prod = LaurentPoly::one(n);
        for (j, _) in q.out_arrows(i) {
            prod = &prod * table.get(&tq.projective(j)?)?;
        }
        for (k, _) in q.in_arrows(i) {
            prod = &prod * &LaurentPoly::var(n, k - 1);
        }
        let chi = (&prod + &LaurentPoly::one(n)).div_exact(&LaurentPoly::var(n, i - 1))?;
        table.entries.insert(tq.projective(i)?, chi);
    }
    let ar = tq.ar_quiver()?;
    for mesh in ar.meshes() {
        let mut prod = LaurentPoly::one(n);
        for &m in &mesh.middle {
            prod = &prod * table.get(&ar.nodes[m].module)?;
        }
        let start = table.get(&ar.nodes[mesh.start].module)?;
        let chi = (&prod + &LaurentPoly::one(n)).div_exact(start)?;
        let end = ar.nodes[mesh.end].module;
        if let Some(known) = table.entries.get(&end) {
            // closing meshes land back on the frame
            if known != &chi {
                return Err(CharError::FrameMismatch(end));
            }
            continue;
        }
        table.entries.insert(end, chi);
    }
    Ok(table)
}

/// `chi(P_i) = chi(rad P_i) x^{-g_op(e_i)} + x_i^{-1}` with
/// `rad P_i = sum_{i -> j} P_j`.
pub fn char_projective(q: &Quiver, i: usize) -> Result<LaurentPoly, CharError> {
    recursion(q, i, Side::Opposite)
}

/// `chi(I_i) = chi(I_i / S_i) x^{-g(e_i)} + x_i^{-1}` with
/// `I_i / S_i = sum_{k -> i} I_k`.
pub fn char_injective(q: &Quiver, i: usize) -> Result<LaurentPoly, CharError> {
    recursion(q, i, Side::Standard)
}

fn recursion(q: &Quiver, i: usize, side: Side) -> Result<LaurentPoly, CharError> {
    let n = q.n();
    if i == 0 || i > n {
        return Err(RepError::BadModule(format!("vertex {i} outside 1..={n}")).into());
    }
    let order = q.topological_order().ok_or(CharError::RecursionUngrounded)?;
    let c = repmod::cartan_matrix(q)?;
    let c = match side {
        Side::Standard => c,
        Side::Opposite => linalg::transpose(&c),
    };
    let inv = linalg::inverse_int(&c).expect("unimodular");
    // projectives need their arrow targets first, injectives their sources
    let visit: Vec<usize> = match side {
        Side::Opposite => order.into_iter().rev().collect(),
        Side::Standard => order,
    };
    let mut done: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for v in visit {
        let mut prod = LaurentPoly::one(n);
        let deps: Vec<(usize, u32)> = match side {
            Side::Opposite => q.out_arrows(v).collect(),
            Side::Standard => q.in_arrows(v).collect(),
        };
        for (w, m) in deps {
            prod = &prod * &done[&w].pow(m);
        }
        let e: DimVector = (1..=n).map(|j| i64::from(j == v)).collect();
        let g = linalg::mat_vec(&inv, &e);
        let mut x_inv = vec![0i64; n];
        x_inv[v - 1] = -1;
        let chi = &(&prod * &neg_monomial(&g)) + &LaurentPoly::x_pow(&x_inv);
        done.insert(v, chi);
        if v == i {
            break;
        }
    }
    Ok(done.remove(&i).expect("vertex visited"))
}

/// `chi(A + B) = chi(A) chi(B)`; the empty sum has character 1.
pub fn char_direct_sum(
    table: &CharacterTable,
    nvars: usize,
    summands: &[ModuleDesc],
) -> Result<LaurentPoly, CharError> {
    summands
        .iter()
        .try_fold(LaurentPoly::one(nvars), |acc, m| Ok(&acc * table.get(m)?))
}

/// Number of submodules of `m` with dimension vector `e`.
pub fn gr_euler(tq: &TypeAQuiver, m: &ModuleDesc, e: &[i64]) -> Result<usize, CharError> {
    Ok(tq.submodules(m)?.iter().filter(|d| d.as_slice() == e).count())
}
