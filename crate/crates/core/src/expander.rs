//! Graphs, spectral bounds, the Lubotzky-Phillips-Sarnak Ramanujan graphs and the
//! expander lemmas as runnable checks, plus the power / blow-up / clique operators.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::{invalid, Budget, Error, Result};
use crate::gf::is_prime;
use crate::lincomb::Hypergraph;

/// A simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a simple graph; duplicate edges collapse, self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(mut adj: Vec<Vec<u32>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n as u32).filter(|&u| u as usize != v).collect()).collect();
        Graph { adj }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    /// K_{1, n-1} with center 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v as usize > u).map(move |&v| (u, v as usize)))
    }

    /// `Some(d)` when every vertex has degree d.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// BFS distances from `x`, `None` for unreachable vertices; stops past `limit`.
    pub fn distances_from(&self, x: usize, limit: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[x] = Some(0);
        queue.push_back(x);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            if limit.is_some_and(|l| dv >= l) {
                continue;
            }
            for &u in &self.adj[v] {
                if dist[u as usize].is_none() {
                    dist[u as usize] = Some(dv + 1);
                    queue.push_back(u as usize);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0, None).iter().all(Option::is_some)
    }

    /// A proper 2-colouring when the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n()];
        for start in 0..self.n() {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    let u = u as usize;
                    if colour[u] == u8::MAX {
                        colour[u] = 1 - colour[v];
                        queue.push_back(u);
                    } else if colour[u] == colour[v] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    /// Number of edges with both ends in `set` (given as a membership mask).
    fn inner_edges(&self, members: &[bool], set: &[usize]) -> usize {
        set.iter()
            .map(|&v| self.adj[v].iter().filter(|&&u| members[u as usize]).count())
            .sum::<usize>()
            / 2
    }

    fn cross_edges(&self, in_v: &[bool], u_set: &[usize]) -> usize {
        u_set.iter().map(|&u| self.adj[u].iter().filter(|&&w| in_v[w as usize]).count()).sum()
    }

    fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.n()];
        for &v in set {
            m[v] = true;
        }
        m
    }
}

// ---------------------------------------------------------------------------
// LPS Ramanujan graphs

type Pgl2 = [u32; 4];

fn mat_mul(a: &Pgl2, b: &Pgl2, q: u64) -> Pgl2 {
    let m = |x: u32, y: u32| x as u64 * y as u64;
    [
        ((m(a[0], b[0]) + m(a[1], b[2])) % q) as u32,
        ((m(a[0], b[1]) + m(a[1], b[3])) % q) as u32,
        ((m(a[2], b[0]) + m(a[3], b[2])) % q) as u32,
        ((m(a[2], b[1]) + m(a[3], b[3])) % q) as u32,
    ]
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Scales a matrix so its first nonzero entry is 1 (one representative per PGL_2 class).
fn projective_canonical(a: Pgl2, q: u64) -> Pgl2 {
    let lead = *a.iter().find(|&&x| x != 0).expect("invertible matrix");
    let inv = mod_pow(lead as u64, q - 2, q);
    a.map(|x| (x as u64 * inv % q) as u32)
}

/// Legendre symbol (a / p) for an odd prime p, as 1, -1 or 0.
pub fn legendre(a: u64, p: u64) -> i32 {
    match mod_pow(a % p, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// The p+1 integer quadruples with a^2+b^2+c^2+d^2 = p, a odd positive, b, c, d even.
pub fn lps_generators(p: u64) -> Vec<[i64; 4]> {
    let r = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in (1..=r).step_by(2) {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if b % 2 == 0 && c % 2 == 0 && d % 2 == 0 && a * a + b * b + c * c + d * d == p as i64 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Number of vertices of the LPS graph X^{p,q}.
pub fn lps_order(p: u64, q: u64) -> u64 {
    let pgl = q * (q * q - 1);
    if legendre(p, q) == 1 {
        pgl / 2
    } else {
        pgl
    }
}

/// The Lubotzky-Phillips-Sarnak Cayley graph X^{p,q}: a (p+1)-regular Ramanujan graph on
/// PSL_2(F_q) when p is a quadratic residue mod q, otherwise a bipartite one on PGL_2(F_q).
pub fn lps_graph(p: u64, q: u64) -> Result<Graph> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if p == q || p % 4 != 1 || q % 4 != 1 {
        return Err(invalid(format!("LPS needs distinct primes p, q = 1 (mod 4), got p={p}, q={q}")));
    }
    if q * q <= 4 * p {
        return Err(invalid(format!("LPS needs q > 2 sqrt(p), got p={p}, q={q}")));
    }
    let i = (1..q).find(|&x| x * x % q == q - 1).expect("-1 is a square mod q = 1 (mod 4)");
    let red = |x: i64| x.rem_euclid(q as i64) as u64;
    let gens: Vec<Pgl2> = lps_generators(p)
        .into_iter()
        .map(|[a, b, c, d]| {
            let m = [
                (red(a) + red(b) * i) % q,
                (red(c) + red(d) * i) % q,
                (red(-c) + red(d) * i) % q,
                (red(a) + red(-b) * i) % q,
            ];
            projective_canonical(m.map(|x| x as u32), q)
        })
        .collect();
    debug_assert_eq!(gens.len() as u64, p + 1);

    let mut index: HashMap<Pgl2, u32> = HashMap::new();
    let mut elems: Vec<Pgl2> = Vec::new();
    let id = [1, 0, 0, 1];
    index.insert(id, 0);
    elems.push(id);
    let mut adj: Vec<Vec<u32>> = Vec::new();
    let mut head = 0;
    while head < elems.len() {
        let g = elems[head];
        let mut list = Vec::with_capacity(gens.len());
        for s in &gens {
            let h = projective_canonical(mat_mul(s, &g, q), q);
            let next = elems.len() as u32;
            let id = *index.entry(h).or_insert_with(|| {
                elems.push(h);
                next
            });
            list.push(id);
        }
        adj.push(list);
        head += 1;
    }
    Ok(Graph::from_adjacency(adj))
}

// ---------------------------------------------------------------------------
// Spectral bounds

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    Exact,
    PowerIteration,
}

/// Bound on the largest nontrivial |eigenvalue| of a connected regular graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub d: usize,
    pub lambda_bound: f64,
    pub method: SpectralMethod,
    pub bipartite: bool,
    pub tolerance: f64,
}

/// Graphs up to this size get a dense eigensolve.
pub const DENSE_LIMIT: usize = 2000;

const MAX_POWER_ITERATIONS: usize = 200_000;

/// Largest |eigenvalue| of the adjacency matrix other than d (and other than -d for
/// bipartite graphs).
pub fn second_eigenvalue(g: &Graph, tol: f64) -> Result<SpectralReport> {
    if g.n() == 0 {
        return Err(invalid("empty graph"));
    }
    let d = g.regular_degree().ok_or(Error::Irregular)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let colouring = g.bipartition();
    let bipartite = colouring.is_some();
    let (lambda_bound, method) = if g.n() <= DENSE_LIMIT {
        (dense_second_eigenvalue(g, bipartite), SpectralMethod::Exact)
    } else {
        (power_second_eigenvalue(g, colouring.as_deref(), tol), SpectralMethod::PowerIteration)
    };
    Ok(SpectralReport { n: g.n(), d, lambda_bound, method, bipartite, tolerance: tol })
}

fn dense_second_eigenvalue(g: &Graph, bipartite: bool) -> f64 {
    let n = g.n();
    let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let mut eig: Vec<f64> = a.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // the trivial eigenvalues are simple for connected graphs: d is the largest, -d the smallest
    eig.pop();
    if bipartite {
        eig.remove(0);
    }
    eig.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

fn apply_adjacency(g: &Graph, x: &[f64], out: &mut [f64]) {
    out.par_iter_mut().enumerate().for_each(|(v, o)| {
        *o = g.adj[v].iter().map(|&u| x[u as usize]).sum();
    });
}

fn project_out(x: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c: f64 = x.iter().zip(b).map(|(a, b)| a * b).sum();
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= c * bi;
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Power iteration on A^2 restricted to the complement of the trivial eigenvectors.
/// Deflation is exact: the all-ones vector (and the bipartition sign vector) are the
/// known top eigenvectors of a connected regular graph.
fn power_second_eigenvalue(g: &Graph, colouring: Option<&[u8]>, tol: f64) -> f64 {
    let n = g.n();
    let s = 1.0 / (n as f64).sqrt();
    let mut deflate = vec![vec![s; n]];
    if let Some(c) = colouring {
        deflate.push(c.iter().map(|&b| if b == 0 { s } else { -s }).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    project_out(&mut x, &deflate);
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut ax = vec![0.0; n];
    let mut aax = vec![0.0; n];
    let mut estimate = 0.0;
    for _ in 0..MAX_POWER_ITERATIONS {
        apply_adjacency(g, &x, &mut ax);
        apply_adjacency(g, &ax, &mut aax);
        project_out(&mut aax, &deflate);
        // Rayleigh quotient of A^2 and the residual of the current pair
        let mu: f64 = x.iter().zip(&aax).map(|(a, b)| a * b).sum();
        let residual = aax.iter().zip(&x).map(|(b, a)| (b - mu * a).powi(2)).sum::<f64>().sqrt();
        estimate = mu.max(0.0).sqrt();
        // residual of A^2 at eigenvalue mu translates to |lambda| error about r / (2 lambda)
        if residual <= tol * 2.0 * estimate.max(1.0) {
            break;
        }
        let na = norm(&aax);
        if na == 0.0 {
            return 0.0;
        }
        for (xi, v) in x.iter_mut().zip(&aax) {
            *xi = v / na;
        }
    }
    estimate + tol
}

// ---------------------------------------------------------------------------
// Expander lemmas as checks

/// Outcome of sampling the two expander-mixing inequalities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingReport {
    pub lambda: f64,
    pub trials: usize,
    pub violations: usize,
    /// max over sampled U of |2e(U) - d|U|^2/n| / (lambda |U|)
    pub max_ratio_single: f64,
    /// max over sampled disjoint U, V of |e(U,V) - d|U||V|/n| / (lambda sqrt(|U||V|))
    pub max_ratio_pair: f64,
}

impl MixingReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn max_ratio(&self) -> f64 {
        self.max_ratio_single.max(self.max_ratio_pair)
    }
}

const MIXING_SLACK: f64 = 1e-9;

/// Samples `trials` random sets U and `trials` random disjoint pairs (U, V) and checks
/// both mixing inequalities with the given lambda.
pub fn check_mixing(g: &Graph, lambda: f64, trials: usize, seed: u64) -> Result<MixingReport> {
    let n = g.n();
    let d = g.regular_degree().ok_or(Error::Irregular)? as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut report = MixingReport { lambda, trials, violations: 0, max_ratio_single: 0.0, max_ratio_pair: 0.0 };
    let ratio = |lhs: f64, rhs: f64| if rhs > 0.0 { lhs / rhs } else if lhs > MIXING_SLACK { f64::INFINITY } else { 0.0 };
    for _ in 0..trials {
        let size = rng.gen_range(1..=n);
        order.shuffle(&mut rng);
        let u = &order[..size];
        let mask = g.mask(u);
        let e = g.inner_edges(&mask, u) as f64;
        let su = size as f64;
        let lhs = (2.0 * e - d / n as f64 * su * su).abs();
        let rhs = lambda * su;
        report.max_ratio_single = report.max_ratio_single.max(ratio(lhs, rhs));
        if lhs > rhs + MIXING_SLACK * su {
            report.violations += 1;
        }

        if n >= 2 {
            order.shuffle(&mut rng);
            let a = rng.gen_range(1..n);
            let b = rng.gen_range(1..=n - a);
            let (u, v) = (&order[..a], &order[a..a + b]);
            let in_v = g.mask(v);
            let e = g.cross_edges(&in_v, u) as f64;
            let (su, sv) = (a as f64, b as f64);
            let lhs = (e - d / n as f64 * su * sv).abs();
            let rhs = lambda * (su * sv).sqrt();
            report.max_ratio_pair = report.max_ratio_pair.max(ratio(lhs, rhs));
            if lhs > rhs + MIXING_SLACK * su {
                report.violations += 1;
            }
        }
    }
    Ok(report)
}

/// Vertex set of a largest connected component of G[U] (ties: the one holding the
/// smallest vertex), sorted.
pub fn largest_component(g: &Graph, u: &[usize]) -> Vec<usize> {
    let mask = g.mask(u);
    let mut seen = vec![false; g.n()];
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut best: Vec<usize> = Vec::new();
    for &start in &sorted {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in &g.adj[v] {
                let w = w as usize;
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best.sort_unstable();
    best
}

/// A vertex of `u0` with a neighbour in every one of `others` (the least such vertex).
pub fn find_star_vertex(g: &Graph, u0: &[usize], others: &[Vec<usize>]) -> Result<Option<usize>> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in std::iter::once(u0).chain(others.iter().map(Vec::as_slice)).enumerate() {
        for &v in set {
            if owner[v] != usize::MAX && owner[v] != i {
                return Err(Error::NotDisjoint);
            }
            owner[v] = i;
        }
    }
    let mut candidates = u0.to_vec();
    candidates.sort_unstable();
    let t = others.len();
    let mut hit = vec![false; t + 1];
    for x in candidates {
        hit.iter_mut().for_each(|h| *h = false);
        for &w in &g.adj[x] {
            let o = owner[w as usize];
            if o != usize::MAX && o > 0 {
                hit[o] = true;
            }
        }
        if hit[1..].iter().all(|&h| h) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Graph operators

/// G^u: x ~ y iff 1 <= dist_G(x, y) <= u.
pub fn power_graph(g: &Graph, u: usize) -> Result<Graph> {
    if u == 0 {
        return Err(invalid("power must be at least 1"));
    }
    let adj = (0..g.n())
        .into_par_iter()
        .map(|x| {
            g.distances_from(x, Some(u))
                .iter()
                .enumerate()
                .filter(|&(y, d)| y != x && d.is_some_and(|d| d <= u))
                .map(|(y, _)| y as u32)
                .collect()
        })
        .collect();
    Ok(Graph { adj })
}

/// G[K_D]: every vertex becomes a D-clique, adjacent cliques are joined completely.
/// Vertex (v, i) is numbered v * D + i.
pub fn blowup(g: &Graph, d: usize) -> Result<Graph> {
    if d == 0 {
        return Err(invalid("blow-up factor must be at least 1"));
    }
    let mut adj = Vec::with_capacity(g.n() * d);
    for v in 0..g.n() {
        for i in 0..d {
            let mut list: Vec<u32> = (0..d).filter(|&j| j != i).map(|j| (v * d + j) as u32).collect();
            for &w in &g.adj[v] {
                list.extend((0..d).map(|j| (w as usize * d + j) as u32));
            }
            list.sort_unstable();
            adj.push(list);
        }
    }
    Ok(Graph { adj })
}

/// K_r(G): the r-uniform hypergraph of all r-cliques of G.
pub fn clique_hypergraph(g: &Graph, r: usize, budgets: &Budgets) -> Result<Hypergraph> {
    if r < 2 {
        return Err(invalid("clique size must be at least 2"));
    }
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(r);
    for v in 0..g.n() {
        stack.clear();
        stack.push(v);
        let cands: Vec<usize> = g.adj[v].iter().map(|&u| u as usize).filter(|&u| u > v).collect();
        extend_cliques(g, r, &mut stack, &cands, &mut edges, budgets)?;
    }
    Hypergraph::new(g.n(), edges, r)
}

fn extend_cliques(
    g: &Graph,
    r: usize,
    stack: &mut Vec<usize>,
    cands: &[usize],
    out: &mut Vec<Vec<usize>>,
    budgets: &Budgets,
) -> Result<()> {
    if stack.len() == r {
        out.push(stack.clone());
        return budgets.check(Budget::Cliques, out.len() as u128);
    }
    for (i, &w) in cands.iter().enumerate() {
        let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|&x| g.has_edge(w, x)).collect();
        if next.len() + stack.len() + 1 < r {
            continue;
        }
        stack.push(w);
        extend_cliques(g, r, stack, &next, out, budgets)?;
        stack.pop();
    }
    Ok(())
}

/// B_t(x): vertices within distance t of x, sorted.
pub fn ball(g: &Graph, x: usize, t: usize) -> Vec<usize> {
    g.distances_from(x, Some(t))
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_some_and(|d| d <= t))
        .map(|(v, _)| v)
        .collect()
}

/// Moore-type bound 1 + d + d(d-1) + ... + d(d-1)^{t-1} on |B_t(x)| in a d-regular graph.
pub fn ball_size_bound(d: usize, t: usize) -> usize {
    let mut total = 1;
    let mut layer = d;
    for _ in 0..t {
        total += layer;
        layer *= d.saturating_sub(1);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_disjoint_cliques(m: usize) -> Graph {
        let mut edges = Vec::new();
        for base in [0, m] {
            for i in 0..m {
                for j in i + 1..m {
                    edges.push((base + i, base + j));
                }
            }
        }
        Graph::from_edges(2 * m, &edges).unwrap()
    }

    #[test]
    fn lps_5_13_is_bipartite_on_pgl2() {
        let g = lps_graph(5, 13).unwrap();
        assert_eq!(g.n(), 2184);
        assert_eq!(g.n() as u64, lps_order(5, 13));
        assert_eq!(g.regular_degree(), Some(6));
        assert!(g.is_connected());
        assert!(g.bipartition().is_some());
        assert_eq!(legendre(5, 13), -1);
    }

    #[test]
    fn lps_preconditions() {
        assert!(lps_graph(7, 13).is_err());
        assert!(lps_graph(5, 5).is_err());
        assert!(matches!(lps_graph(9, 13), Err(Error::NotPrime(9))));
        assert!(lps_graph(13, 5).is_err()); // 5 <= 2 sqrt(13)
        assert_eq!(lps_generators(5).len(), 6);
        assert_eq!(lps_generators(13).len(), 14);
        assert_eq!(lps_generators(17).len(), 18);
    }

    #[test]
    fn spectra_of_small_graphs() {
        let k5 = second_eigenvalue(&Graph::complete(5), 1e-9).unwrap();
        assert!((k5.lambda_bound - 1.0).abs() < 1e-9);
        assert_eq!(k5.method, SpectralMethod::Exact);
        let c4 = second_eigenvalue(&Graph::cycle(4), 1e-9).unwrap();
        assert!(c4.bipartite);
        assert!(c4.lambda_bound.abs() < 1e-9);
        // C_5: eigenvalues 2 cos(2 pi j / 5); largest nontrivial magnitude 2 cos(pi/5)
        let c5 = second_eigenvalue(&Graph::cycle(5), 1e-9).unwrap();
        assert!((c5.lambda_bound - 2.0 * (std::f64::consts::PI / 5.0).cos()).abs() < 1e-9);
    }

    #[test]
    fn spectra_rejects_bad_input() {
        assert!(matches!(second_eigenvalue(&Graph::path(4), 1e-6), Err(Error::Irregular)));
        assert!(matches!(second_eigenvalue(&two_disjoint_cliques(4), 1e-6), Err(Error::Disconnected)));
    }

    #[test]
    fn power_iteration_agrees_with_dense() {
        let g = lps_graph(5, 13).unwrap();
        let dense = dense_second_eigenvalue(&g, true);
        let c = g.bipartition().unwrap();
        let power = power_second_eigenvalue(&g, Some(&c), 1e-8);
        assert!((dense - (power - 1e-8)).abs() < 1e-5, "dense {dense} power {power}");
        assert!(dense <= 2.0 * 5f64.sqrt() + 1e-9);
    }

    #[test]
    fn mixing_on_complete_graph() {
        let r = check_mixing(&Graph::complete(12), 1.0, 300, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn mixing_fails_on_disjoint_cliques() {
        let g = two_disjoint_cliques(10);
        let r = check_mixing(&g, 0.1, 200, 2).unwrap();
        assert!(!r.passed());
        assert!(r.max_ratio() > 1.0);
    }

    #[test]
    fn largest_component_examples() {
        let g = Graph::cycle(6);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(largest_component(&g, &all), all);
        assert_eq!(largest_component(&g, &[0, 3]).len(), 1);
        assert_eq!(largest_component(&g, &[0, 1, 3]), vec![0, 1]);
    }

    #[test]
    fn star_vertex_examples() {
        let g = Graph::star(7);
        let found = find_star_vertex(&g, &[0], &[vec![1, 2], vec![3], vec![4, 5, 6]]).unwrap();
        assert_eq!(found, Some(0));
        assert_eq!(find_star_vertex(&g, &[], &[vec![1]]).unwrap(), None);
        assert!(matches!(find_star_vertex(&g, &[0, 1], &[vec![1]]), Err(Error::NotDisjoint)));
    }

    #[test]
    fn power_graph_examples() {
        let p3 = Graph::path(3);
        assert_eq!(power_graph(&p3, 2).unwrap(), Graph::complete(3));
        let c = Graph::cycle(7);
        assert_eq!(power_graph(&c, 1).unwrap(), c);
        let c6 = power_graph(&Graph::cycle(6), 2).unwrap();
        assert_eq!(c6.regular_degree(), Some(4));
        // BFS oracle: i ~ j iff cyclic distance in {1, 2}
        for i in 0..6usize {
            for j in 0..6usize {
                let d = (i as i64 - j as i64).rem_euclid(6).min((j as i64 - i as i64).rem_euclid(6));
                assert_eq!(c6.has_edge(i, j), d == 1 || d == 2);
            }
        }
    }

    #[test]
    fn power_graph_is_submultiplicative() {
        let g = lps_graph(5, 13).unwrap();
        let small = Graph::cycle(11);
        for base in [&small, &g] {
            let a = power_graph(&power_graph(base, 2).unwrap(), 2).unwrap();
            let b = power_graph(base, 4).unwrap();
            assert!(a.edges().all(|(u, v)| b.has_edge(u, v)));
            if base.n() > 100 {
                break;
            }
        }
    }

    #[test]
    fn blowup_counts() {
        assert_eq!(blowup(&Graph::empty(1), 3).unwrap(), Graph::complete(3));
        assert_eq!(blowup(&Graph::complete(2), 2).unwrap(), Graph::complete(4));
        let b = blowup(&Graph::cycle(4), 2).unwrap();
        assert_eq!(b.n(), 8);
        assert_eq!(b.edge_count(), 20);
        for (n, d) in [(5usize, 3usize), (7, 2), (6, 4)] {
            let g = Graph::cycle(n);
            let b = blowup(&g, d).unwrap();
            assert_eq!(b.edge_count(), n * d * (d - 1) / 2 + g.edge_count() * d * d);
        }
    }

    #[test]
    fn clique_hypergraph_examples() {
        let b = Budgets::default();
        assert_eq!(clique_hypergraph(&Graph::complete(4), 3, &b).unwrap().edges().len(), 4);
        assert!(clique_hypergraph(&Graph::cycle(6), 3, &b).unwrap().edges().is_empty());
        let g = power_graph(&Graph::cycle(6), 2).unwrap();
        let h = clique_hypergraph(&g, 3, &b).unwrap();
        let mut naive = Vec::new();
        for x in 0..6 {
            for y in x + 1..6 {
                for z in y + 1..6 {
                    if g.has_edge(x, y) && g.has_edge(x, z) && g.has_edge(y, z) {
                        naive.push(vec![x, y, z]);
                    }
                }
            }
        }
        let mut got = h.edges().to_vec();
        got.sort();
        assert_eq!(got, naive);
        let tight = Budgets { cliques: 2, ..Budgets::default() };
        assert!(clique_hypergraph(&Graph::complete(5), 3, &tight).is_err());
    }

    #[test]
    fn ball_examples() {
        let g = Graph::cycle(9);
        assert_eq!(ball(&g, 4, 0), vec![4]);
        assert_eq!(ball(&g, 0, 4).len(), 9);
        assert_eq!(ball(&g, 0, 1), vec![0, 1, 8]);
        assert_eq!(ball_size_bound(6, 2), 37);
    }
}
