//! Compatibility graphs, silting pairs and their clusters.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::character::{CharError, CharacterTable};
use crate::laurent::LaurentPoly;
use crate::repmod::{ModuleDesc, RepError, TypeAQuiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SiltingError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("the remaining summands are not pairwise compatible")]
    NotAFace,
    #[error("{0} is not a summand of the pair")]
    NotInPair(ModuleDesc),
    #[error("face has {0} completions instead of two")]
    Completions(usize),
    #[error("invalid silting pair literal: {0}")]
    BadLiteral(String),
}

/// Whether `a` and `b` may sit in a common silting pair.
///
/// Modules need `Ext(a, b) = Ext(b, a) = 0`, `P_i[1]` and `M` need
/// `Hom(P_i, M) = M_i = 0`, and `P_i[1]`, `P_j[1]` need `i != j`.
pub fn is_compatible(tq: &TypeAQuiver, a: &ModuleDesc, b: &ModuleDesc) -> Result<bool, SiltingError> {
    if a == b {
        return Ok(false);
    }
    Ok(match (*a, *b) {
        (ModuleDesc::Shifted(_), ModuleDesc::Shifted(_)) => true,
        (ModuleDesc::Shifted(i), m) | (m, ModuleDesc::Shifted(i)) => tq.dim(&m)?[i - 1] == 0,
        _ => tq.ext_dim(a, b)? == 0 && tq.ext_dim(b, a)? == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityGraph {
    pub vertices: Vec<ModuleDesc>,
    /// `(i, j)` with `i < j`, indices into `vertices`.
    pub edges: Vec<(usize, usize)>,
}

impl CompatibilityGraph {
    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.vertices.len()];
        for &(i, j) in &self.edges {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    /// All maximal cliques, as sorted index lists.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let all = if self.vertices.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertices.len()) - 1
        };
        let mut out = Vec::new();
        bron_kerbosch(&adj, 0, all, 0, &mut out);
        let mut cliques: Vec<Vec<usize>> = out
            .into_iter()
            .map(|r| (0..self.vertices.len()).filter(|&i| r >> i & 1 == 1).collect())
            .collect();
        cliques.sort();
        cliques
    }

    /// Cliques of exactly `k` vertices that are maximal.
    pub fn cliques_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        self.maximal_cliques().into_iter().filter(|c| c.len() == k).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "edges": self.edges,
        })
    }
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Graph on the interval modules, plus the shifted projectives when
/// `extended` is set.
pub fn compatibility_graph(tq: &TypeAQuiver, extended: bool) -> Result<CompatibilityGraph, SiltingError> {
    let vertices = if extended {
        tq.objects()
    } else {
        tq.interval_modules()
    };
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if is_compatible(tq, &vertices[i], &vertices[j])? {
                edges.push((i, j));
            }
        }
    }
    Ok(CompatibilityGraph { vertices, edges })
}

/// A support-tilting module together with the shifted projectives that
/// complete it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiltingPair {
    pub modules: BTreeSet<ModuleDesc>,
    pub shifted: BTreeSet<usize>,
}

impl SiltingPair {
    pub fn from_members(members: &[ModuleDesc]) -> Self {
        let mut pair = SiltingPair {
            modules: BTreeSet::new(),
            shifted: BTreeSet::new(),
        };
        for m in members {
            match *m {
                ModuleDesc::Shifted(i) => {
                    pair.shifted.insert(i);
                }
                other => {
                    pair.modules.insert(other);
                }
            }
        }
        pair
    }

    /// The all-shifted pair `(0, P_1[1] + ... + P_n[1])`.
    pub fn initial(n: usize) -> Self {
        SiltingPair {
            modules: BTreeSet::new(),
            shifted: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.modules.len() + self.shifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> Vec<ModuleDesc> {
        self.modules
            .iter()
            .copied()
            .chain(self.shifted.iter().map(|&i| ModuleDesc::Shifted(i)))
            .collect()
    }

    pub fn contains(&self, m: &ModuleDesc) -> bool {
        match *m {
            ModuleDesc::Shifted(i) => self.shifted.contains(&i),
            _ => self.modules.contains(m),
        }
    }

    /// g-vectors of the members, in [`members`](Self::members) order.
    pub fn g_vectors(&self, tq: &TypeAQuiver) -> Vec<Vec<i64>> {
        self.members().iter().map(|m| tq.g_vector(m)).collect()
    }

    /// Parses `T=[M[1,1],M[3,3]];P=[2]`; either part may be omitted.
    pub fn parse(tq: &TypeAQuiver, text: &str) -> Result<Self, SiltingError> {
        let bad = || SiltingError::BadLiteral(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pair = SiltingPair {
            modules: BTreeSet::new(),
            shifted: BTreeSet::new(),
        };
        for part in compact.split(';').filter(|p| !p.is_empty()) {
            let (key, list) = part.split_once('=').ok_or_else(bad)?;
            let inner = list
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(bad)?;
            for item in split_top_level(inner) {
                match key {
                    "T" => {
                        let m = tq.parse_module(item)?;
                        if m.is_shifted() {
                            return Err(bad());
                        }
                        pair.modules.insert(m);
                    }
                    "P" => {
                        let i: usize = item.parse().map_err(|_| bad())?;
                        pair.shifted.insert(match tq.shifted(i)? {
                            ModuleDesc::Shifted(i) => i,
                            _ => unreachable!(),
                        });
                    }
                    _ => return Err(bad()),
                }
            }
        }
        Ok(pair)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if start < s.len() {
        out.push(&s[start..]);
    }
    out
}

impl fmt::Display for SiltingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.modules.iter().map(|m| m.to_string()).collect();
        let p: Vec<String> = self.shifted.iter().map(|i| i.to_string()).collect();
        write!(f, "T=[{}];P=[{}]", t.join(","), p.join(","))
    }
}

impl Serialize for SiltingPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::json!({
            "modules": self.modules.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "shifted": self.shifted,
            "literal": self.to_string(),
        })
        .serialize(s)
    }
}

/// Checks every defining condition of a silting pair directly.
pub fn is_silting_pair(tq: &TypeAQuiver, pair: &SiltingPair) -> Result<bool, SiltingError> {
    if pair.len() != tq.n() {
        return Ok(false);
    }
    let members = pair.members();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if !is_compatible(tq, &members[i], &members[j])? {
                return Ok(false);
            }
        }
    }
    let mut support = 0u64;
    for m in &pair.modules {
        for (v, &d) in tq.dim(m)?.iter().enumerate() {
            if d != 0 {
                support |= 1 << v;
            }
        }
    }
    Ok(support.count_ones() as usize == pair.modules.len())
}

/// All `n`-cliques of the extended compatibility graph, sorted.
pub fn silting_pairs(tq: &TypeAQuiver) -> Result<Vec<SiltingPair>, SiltingError> {
    let g = compatibility_graph(tq, true)?;
    let mut pairs: Vec<SiltingPair> = g
        .cliques_of_size(tq.n())
        .into_iter()
        .map(|c| {
            let members: Vec<ModuleDesc> = c.iter().map(|&i| g.vertices[i]).collect();
            SiltingPair::from_members(&members)
        })
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// Silting pairs without shifted projectives.
pub fn tilting_modules(tq: &TypeAQuiver) -> Result<Vec<SiltingPair>, SiltingError> {
    Ok(silting_pairs(tq)?
        .into_iter()
        .filter(|p| p.shifted.is_empty())
        .collect())
}

/// The two completions of an almost complete pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exchange {
    pub original: ModuleDesc,
    pub other: ModuleDesc,
}

/// Removes `removed` from `pair` and finds both ways to complete the rest.
pub fn complete_almost(
    tq: &TypeAQuiver,
    pair: &SiltingPair,
    removed: &ModuleDesc,
) -> Result<Exchange, SiltingError> {
    if !pair.contains(removed) {
        return Err(SiltingError::NotInPair(*removed));
    }
    let face: Vec<ModuleDesc> = pair.members().into_iter().filter(|m| m != removed).collect();
    for i in 0..face.len() {
        for j in i + 1..face.len() {
            if !is_compatible(tq, &face[i], &face[j])? {
                return Err(SiltingError::NotAFace);
            }
        }
    }
    let mut completions = Vec::new();
    for cand in tq.objects() {
        if face.contains(&cand) {
            continue;
        }
        let mut ok = true;
        for m in &face {
            if !is_compatible(tq, &cand, m)? {
                ok = false;
                break;
            }
        }
        if ok {
            completions.push(cand);
        }
    }
    if completions.len() != 2 || !completions.contains(removed) {
        return Err(SiltingError::Completions(completions.len()));
    }
    let other = *completions.iter().find(|m| *m != removed).expect("two completions");
    Ok(Exchange {
        original: *removed,
        other,
    })
}

/// `(chi(T_1), ..., x_j, ...)` as a set.
pub fn silting_to_cluster(
    pair: &SiltingPair,
    table: &CharacterTable,
) -> Result<BTreeSet<LaurentPoly>, SiltingError> {
    pair.members()
        .iter()
        .map(|m| Ok(table.get(m)?.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::char_frieze;

    #[test]
    fn compatibility_rules() {
        let lin = TypeAQuiver::linear(3);
        let (s1, s2) = (lin.simple(1).unwrap(), lin.simple(2).unwrap());
        assert!(!is_compatible(&lin, &s1, &s2).unwrap());
        assert!(is_compatible(&lin, &ModuleDesc::Shifted(2), &s1).unwrap());
        assert!(is_compatible(&lin, &ModuleDesc::Shifted(1), &ModuleDesc::Shifted(2)).unwrap());
        assert!(!is_compatible(&lin, &s1, &s1).unwrap());
    }

    #[test]
    fn graphs_and_counts() {
        let lin = TypeAQuiver::linear(3);
        let g = compatibility_graph(&lin, false).unwrap();
        assert_eq!(g.cliques_of_size(3).len(), 5);
        let ext = compatibility_graph(&lin, true).unwrap();
        assert_eq!(ext.cliques_of_size(3).len(), 14);
        assert_eq!(ext.maximal_cliques().len(), 14);
        let a1 = compatibility_graph(&TypeAQuiver::linear(1), true).unwrap();
        assert_eq!(a1.vertices.len(), 2);
        assert!(a1.edges.is_empty());
    }

    #[test]
    fn silting_enumeration() {
        let lin = TypeAQuiver::linear(3);
        let pairs = silting_pairs(&lin).unwrap();
        assert_eq!(pairs.len(), 14);
        assert!(pairs.contains(&SiltingPair::initial(3)));
        let target = SiltingPair::parse(&lin, "T=[M[1,1],M[3,3]];P=[2]").unwrap();
        assert!(pairs.contains(&target));
        assert!(pairs.iter().all(|p| is_silting_pair(&lin, p).unwrap()));
        assert_eq!(tilting_modules(&lin).unwrap().len(), 5);
        assert_eq!(tilting_modules(&TypeAQuiver::linear(2)).unwrap().len(), 2);
        assert_eq!(tilting_modules(&TypeAQuiver::linear(1)).unwrap().len(), 1);
    }

    #[test]
    fn literals_round_trip() {
        let lin = TypeAQuiver::linear(3);
        let p = SiltingPair::parse(&lin, "T=[S[1], S[3]]; P=[2]").unwrap();
        assert_eq!(p.to_string(), "T=[M[1,1],M[3,3]];P=[2]");
        assert_eq!(SiltingPair::parse(&lin, &p.to_string()).unwrap(), p);
        assert_eq!(SiltingPair::parse(&lin, "P=[1,2,3]").unwrap(), SiltingPair::initial(3));
        assert!(SiltingPair::parse(&lin, "T=[P[1][1]]").is_err());
        assert!(SiltingPair::parse(&lin, "Q=[1]").is_err());
    }

    #[test]
    fn exchanges() {
        let lin = TypeAQuiver::linear(3);
        let pair = SiltingPair::parse(&lin, "T=[M[1,1],M[3,3]];P=[2]").unwrap();
        let ex = complete_almost(&lin, &pair, &ModuleDesc::Shifted(2)).unwrap();
        assert_eq!(ex.other, lin.projective(3).unwrap());
        let a2 = TypeAQuiver::linear(2);
        let pair = SiltingPair::from_members(&[a2.simple(1).unwrap(), a2.projective(2).unwrap()]);
        let ex = complete_almost(&a2, &pair, &a2.simple(1).unwrap()).unwrap();
        assert_eq!(ex.other, a2.simple(2).unwrap());
        assert!(matches!(
            complete_almost(&a2, &pair, &a2.simple(2).unwrap()),
            Err(SiltingError::NotInPair(_))
        ));
    }

    #[test]
    fn clusters_from_pairs() {
        let lin = TypeAQuiver::linear(3);
        let table = char_frieze(&lin).unwrap();
        let init = silting_to_cluster(&SiltingPair::initial(3), &table).unwrap();
        let names: Vec<String> = init.iter().map(|p| p.to_string()).collect();
        assert_eq!(names.len(), 3);
        assert!(names.contains(&"x2".to_string()));
        let pair = SiltingPair::parse(&lin, "T=[S[1],S[3]];P=[2]").unwrap();
        let c = silting_to_cluster(&pair, &table).unwrap();
        assert!(c.contains(table.get(&lin.simple(1).unwrap()).unwrap()));
        assert!(c.contains(&LaurentPoly::var(3, 1)));
    }
}
