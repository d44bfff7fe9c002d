//! Seeds, seed mutation and exchange graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::quiver::{ExchangeMatrix, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("exchange relation not exact: {0}")]
    Laurent(#[from] LaurentError),
    #[error("cluster has {got} variables, matrix has size {n}")]
    SizeMismatch { got: usize, n: usize },
    #[error("exchange-graph budget exhausted")]
    BudgetExceeded(Box<ExchangeGraph>),
}

/// An exchange matrix together with an ordered cluster.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
}

impl Seed {
    /// `(B(q), (x_1, ..., x_n))`.
    pub fn initial(q: &Quiver) -> Self {
        Self::initial_from_matrix(q.exchange_matrix())
    }

    pub fn initial_from_matrix(matrix: ExchangeMatrix) -> Self {
        let n = matrix.n();
        let cluster = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
        Seed { matrix, cluster }
    }

    pub fn new(matrix: ExchangeMatrix, cluster: Vec<LaurentPoly>) -> Result<Self, SeedError> {
        if cluster.len() != matrix.n() || cluster.iter().any(|x| x.nvars() != matrix.n()) {
            return Err(SeedError::SizeMismatch {
                got: cluster.len(),
                n: matrix.n(),
            });
        }
        Ok(Seed { matrix, cluster })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn quiver(&self) -> Quiver {
        self.matrix.to_quiver()
    }

    /// Mutation at `k`: only the `k`-th variable changes, by the exchange
    /// relation `x_k x_k' = prod_{b_ik>0} x_i^{b_ik} + prod_{b_kj>0} x_j^{b_kj}`.
    pub fn mutate(&self, k: usize) -> Result<Seed, SeedError> {
        let matrix = self.matrix.mutate(k)?;
        let n = self.n();
        let mut into = LaurentPoly::one(n);
        let mut out = LaurentPoly::one(n);
        for i in 1..=n {
            let b_ik = self.matrix.get(i, k);
            if b_ik > 0 {
                into = &into * &self.cluster[i - 1].pow(b_ik as u32);
            }
            let b_ki = self.matrix.get(k, i);
            if b_ki > 0 {
                out = &out * &self.cluster[i - 1].pow(b_ki as u32);
            }
        }
        let fresh = (&into + &out).div_exact(&self.cluster[k - 1])?;
        let mut cluster = self.cluster.clone();
        cluster[k - 1] = fresh;
        Ok(Seed { matrix, cluster })
    }

    /// Applies directions left to right.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed, SeedError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// The cluster as an unordered set.
    pub fn cluster_set(&self) -> BTreeSet<LaurentPoly> {
        self.cluster.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 10_000,
            max_depth: 64,
        }
    }
}

/// How seeds are identified while exploring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NodeIdentity {
    /// Unordered set of cluster variables.
    #[default]
    Cluster,
    /// Ordered cluster: relabelings count as different nodes.
    Labeled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub id: usize,
    pub depth: usize,
    #[serde(serialize_with = "ser_polys")]
    pub cluster: Vec<LaurentPoly>,
    #[serde(skip)]
    pub seed: Seed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Direction used when the edge was first seen from `from`.
    pub direction: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeGraph {
    pub n: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    #[serde(serialize_with = "ser_poly_set")]
    pub variables: BTreeSet<LaurentPoly>,
    pub complete: bool,
}

fn ser_polys<S: serde::Serializer>(v: &[LaurentPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn ser_poly_set<S: serde::Serializer>(v: &BTreeSet<LaurentPoly>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn node_key(seed: &Seed, identity: NodeIdentity) -> Vec<LaurentPoly> {
    match identity {
        NodeIdentity::Cluster => seed.cluster_set().into_iter().collect(),
        NodeIdentity::Labeled => seed.cluster.clone(),
    }
}

/// Breadth-first closure of the initial seed of `q` under mutation.
///
/// Directions are tried in ascending order and node ids follow discovery
/// order. When the budget stops the search early the partial graph comes back
/// inside [`SeedError::BudgetExceeded`].
pub fn exchange_graph(q: &Quiver, budget: Budget) -> Result<ExchangeGraph, SeedError> {
    exchange_graph_with(q, budget, NodeIdentity::Cluster)
}

pub fn exchange_graph_with(
    q: &Quiver,
    budget: Budget,
    identity: NodeIdentity,
) -> Result<ExchangeGraph, SeedError> {
    let n = q.n();
    let start = Seed::initial(q);
    let mut index: BTreeMap<Vec<LaurentPoly>, usize> = BTreeMap::new();
    let mut graph = ExchangeGraph {
        n,
        nodes: Vec::new(),
        edges: Vec::new(),
        variables: start.cluster_set(),
        complete: true,
    };
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    index.insert(node_key(&start, identity), 0);
    graph.nodes.push(GraphNode {
        id: 0,
        depth: 0,
        cluster: start.cluster.clone(),
        seed: start,
    });
    let mut queue = VecDeque::from([0usize]);

    while let Some(u) = queue.pop_front() {
        let depth = graph.nodes[u].depth;
        for k in 1..=n {
            let next = graph.nodes[u].seed.mutate(k)?;
            let key = node_key(&next, identity);
            let v = match index.get(&key) {
                Some(&v) => v,
                None => {
                    if depth >= budget.max_depth || graph.nodes.len() >= budget.max_nodes {
                        graph.complete = false;
                        continue;
                    }
                    let v = graph.nodes.len();
                    index.insert(key, v);
                    graph.variables.extend(next.cluster.iter().cloned());
                    graph.nodes.push(GraphNode {
                        id: v,
                        depth: depth + 1,
                        cluster: next.cluster.clone(),
                        seed: next,
                    });
                    queue.push_back(v);
                    v
                }
            };
            if edge_set.insert((u.min(v), u.max(v))) {
                graph.edges.push(GraphEdge {
                    from: u,
                    to: v,
                    direction: k,
                });
            }
        }
    }

    if graph.complete {
        Ok(graph)
    } else {
        Err(SeedError::BudgetExceeded(Box::new(graph)))
    }
}

impl ExchangeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// Distinct neighbors of every node, indexed by node id.
    pub fn neighbors(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.from].insert(e.to);
            adj[e.to].insert(e.from);
        }
        adj
    }

    /// Unordered clusters, one per node.
    pub fn clusters(&self) -> Vec<BTreeSet<LaurentPoly>> {
        self.nodes.iter().map(|v| v.seed.cluster_set()).collect()
    }

    /// Graphviz text; nodes are labeled with their variables.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for node in &self.nodes {
            let label: Vec<String> = node.cluster.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "  n{} [label=\"{}\"];", node.id, label.join("\\n"));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.from, e.to, e.direction);
        }
        out.push_str("}\n");
        out
    }
}
