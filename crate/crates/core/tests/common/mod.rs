//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use quiverlab::laurent::LaurentPoly;
use quiverlab::quiver::Quiver;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random quiver on `n` vertices with at most `max_mult` parallel arrows
/// between any two vertices.
pub fn random_quiver(rng: &mut ChaCha8Rng, n: usize, max_mult: u32) -> Quiver {
    let mut arrows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let m = rng.gen_range(0..=max_mult);
            let forward = rng.gen_bool(0.5);
            for _ in 0..m {
                arrows.push(if forward { (i, j) } else { (j, i) });
            }
        }
    }
    Quiver::from_arrows(n, &arrows).expect("no loops or 2-cycles by construction")
}

/// Random acyclic quiver: arrows only from smaller to larger labels, then
/// relabelled by a random permutation.
pub fn random_acyclic(rng: &mut ChaCha8Rng, n: usize, max_mult: u32) -> Quiver {
    let mut perm: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for _ in 0..rng.gen_range(0..=max_mult) {
                arrows.push((perm[i], perm[j]));
            }
        }
    }
    Quiver::from_arrows(n, &arrows).expect("acyclic by construction")
}

/// Every numerator coefficient is a positive integer.
pub fn positive_numerator(p: &LaurentPoly) -> bool {
    p.terms().all(|(_, c)| c > &0.into())
}

/// `dim Hom(M, N)` for thin modules with the given supports. A morphism is one
/// scalar per connected piece of `supp M ∩ supp N`; a piece is free unless an
/// arrow leaves it into `supp N \ supp M` or enters it from `supp M \ supp N`.
pub fn hom_oracle(q: &Quiver, m: &[i64], n: &[i64]) -> usize {
    let nv = q.n();
    let inm = |v: usize| m[v - 1] != 0;
    let inn = |v: usize| n[v - 1] != 0;
    let both = |v: usize| inm(v) && inn(v);
    let mut comp = vec![0usize; nv + 1];
    let mut next = 0;
    for start in 1..=nv {
        if !both(start) || comp[start] != 0 {
            continue;
        }
        next += 1;
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(v) = stack.pop() {
            for &(s, t) in q.arrows().keys() {
                let w = if s == v { t } else if t == v { s } else { continue };
                if both(w) && comp[w] == 0 {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
    }
    let mut blocked = vec![false; next + 1];
    for &(s, t) in q.arrows().keys() {
        if both(s) && inn(t) && !inm(t) {
            blocked[comp[s]] = true;
        }
        if both(t) && inm(s) && !inn(s) {
            blocked[comp[t]] = true;
        }
    }
    (1..=next).filter(|&c| !blocked[c]).count()
}

/// `<d, e> = sum d_i e_i - sum over arrows s -> t of d_s e_t`.
pub fn euler_oracle(q: &Quiver, d: &[i64], e: &[i64]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|(&(s, t), &m)| i64::from(m) * d[s - 1] * e[t - 1])
        .sum();
    diag - off
}

/// Subsets of the support closed under following arrows inside it.
pub fn submodule_supports(q: &Quiver, d: &[i64]) -> Vec<Vec<i64>> {
    let n = q.n();
    let supp: Vec<usize> = (1..=n).filter(|&v| d[v - 1] != 0).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << supp.len() {
        let chosen: Vec<bool> = {
            let mut c = vec![false; n + 1];
            for (k, &v) in supp.iter().enumerate() {
                c[v] = bits >> k & 1 == 1;
            }
            c
        };
        let closed = q
            .arrows()
            .keys()
            .all(|&(s, t)| !(chosen[s] && d[t - 1] != 0 && !chosen[t]));
        if closed {
            out.push((1..=n).map(|v| i64::from(chosen[v])).collect());
        }
    }
    out
}

/// Integer determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Framed quiver held as an arrow-count table on `2n` vertices, mutated by
/// the three-step rule: add composites through `k`, reverse arrows at `k`,
/// cancel 2-cycles, and forget arrows between frozen vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FramedQuiverOracle {
    pub n: usize,
    pub count: Vec<Vec<i64>>,
}

impl FramedQuiverOracle {
    pub fn new(q: &Quiver) -> Self {
        let n = q.n();
        let mut count = vec![vec![0i64; 2 * n]; 2 * n];
        for (&(s, t), &m) in q.arrows() {
            count[s - 1][t - 1] += i64::from(m);
        }
        for i in 0..n {
            count[n + i][i] = 1;
        }
        FramedQuiverOracle { n, count }
    }

    pub fn mutate(&self, k: usize) -> Self {
        let k = k - 1;
        let size = 2 * self.n;
        let old = &self.count;
        let mut c = old.clone();
        for i in 0..size {
            for j in 0..size {
                if i != k && j != k {
                    c[i][j] += old[i][k] * old[k][j];
                }
            }
        }
        for v in 0..size {
            c[v][k] = old[k][v];
            c[k][v] = old[v][k];
        }
        for i in 0..size {
            for j in i + 1..size {
                let m = c[i][j].min(c[j][i]);
                c[i][j] -= m;
                c[j][i] -= m;
            }
        }
        for i in self.n..size {
            for j in self.n..size {
                c[i][j] = 0;
            }
        }
        FramedQuiverOracle { n: self.n, count: c }
    }

    /// Entry `j` of `c_k` is the net number of arrows `j' -> k`.
    pub fn c_vector(&self, k: usize) -> Vec<i64> {
        (0..self.n)
            .map(|j| self.count[self.n + j][k - 1] - self.count[k - 1][self.n + j])
            .collect()
    }

    pub fn green(&self) -> Vec<usize> {
        (1..=self.n).filter(|&k| self.c_vector(k).iter().any(|&x| x > 0)).collect()
    }

    /// The `2n x n` matrix `b_ij = #(i -> j) - #(j -> i)` on mutable columns.
    pub fn extended(&self) -> Vec<Vec<i64>> {
        (0..2 * self.n)
            .map(|i| (0..self.n).map(|j| self.count[i][j] - self.count[j][i]).collect())
            .collect()
    }
}

/// Every maximal green sequence, with the framed states along it, by plain
/// depth-first search on the framed quiver.
pub fn mgs_oracle(q: &Quiver) -> Vec<(Vec<usize>, Vec<Vec<Vec<i64>>>)> {
    fn go(
        path: &mut Vec<FramedQuiverOracle>,
        dirs: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<Vec<Vec<i64>>>)>,
    ) {
        let cur = path.last().unwrap().clone();
        let green = cur.green();
        if green.is_empty() {
            out.push((dirs.clone(), path.iter().map(|s| s.extended()).collect()));
            return;
        }
        for k in green {
            let next = cur.mutate(k);
            if path.contains(&next) {
                continue;
            }
            path.push(next);
            dirs.push(k);
            go(path, dirs, out);
            dirs.pop();
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![FramedQuiverOracle::new(q)], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A non-backtracking walk of `depth` directions in `1..=n`.
pub fn random_walk(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(depth);
    while path.len() < depth {
        let k = rng.gen_range(1..=n);
        if n == 1 || path.last() != Some(&k) {
            path.push(k);
        }
    }
    path
}

/// Runs `walks` random seed walks on single-arrow quivers with `n <= 4`
/// (depth up to 8 for `n <= 3`, up to 6 for `n = 4`). Each step must divide
/// exactly, satisfy `x_k x_k' = p_+ + p_-`, and leave positive numerators.
pub fn laurent_walks(walks: usize, seed: u64) -> Result<usize, String> {
    use quiverlab::seed::Seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    for w in 0..walks {
        let n = rng.gen_range(1..=4);
        let max_depth = if n <= 3 { 8 } else { 6 };
        let q = random_quiver(&mut rng, n, 1);
        let depth = rng.gen_range(1..=max_depth);
        let mut s = Seed::initial(&q);
        for k in random_walk(&mut rng, n, depth) {
            let next = s.mutate(k).map_err(|e| format!("walk {w}: {e}"))?;
            let b = s.matrix();
            let mut plus = LaurentPoly::one(n);
            let mut minus = LaurentPoly::one(n);
            for i in 1..=n {
                let e = b.get(i, k);
                if e > 0 {
                    plus = &plus * &s.cluster()[i - 1].pow(e as u32);
                } else if e < 0 {
                    minus = &minus * &s.cluster()[i - 1].pow((-e) as u32);
                }
            }
            if &s.cluster()[k - 1] * &next.cluster()[k - 1] != &plus + &minus {
                return Err(format!("walk {w}: exchange relation fails at {k}"));
            }
            if !next.cluster().iter().all(positive_numerator) {
                return Err(format!("walk {w}: nonpositive coefficient after mu_{k}"));
            }
            s = next;
            steps += 1;
        }
    }
    Ok(steps)
}

/// Runs `walks` random framed-matrix walks (`n <= 4`, depth `<= 10`, entries
/// of `B` in `{-1, 0, 1}`) and checks every C-matrix column for a single sign.
pub fn sign_coherence_walks(walks: usize, seed: u64) -> Result<usize, String> {
    use quiverlab::mgs::FramedMatrix;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut states = 0;
    for w in 0..walks {
        let n = rng.gen_range(1..=4);
        let q = random_quiver(&mut rng, n, 1);
        let depth = rng.gen_range(1..=10);
        let mut f = FramedMatrix::framed(&q.exchange_matrix());
        for k in random_walk(&mut rng, n, depth) {
            f = f.mutate(k).map_err(|e| format!("walk {w}: {e}"))?;
            let c = f.c_matrix();
            for j in 0..n {
                let col: Vec<i64> = c.iter().map(|row| row[j]).collect();
                let pos = col.iter().any(|&x| x > 0);
                let neg = col.iter().any(|&x| x < 0);
                if pos == neg {
                    return Err(format!("walk {w}: column {} is {col:?}", j + 1));
                }
            }
            states += 1;
        }
    }
    Ok(states)
}
