//! Proper linear combinations, tree-like hypergraphs and rank certificates.
//!
//! For a point matrix `W` (columns are points of F_q^k) and a subspace `L`, a vertex set
//! `X` is an edge of the proper-linear-combination hypergraph when some combination of
//! the `X`-columns with *all* coefficients nonzero lands in `L`. That hypergraph is
//! exponential, so it is only ever queried edge by edge ([`PlcOracle`]).
//!
//! If an s-bounded sub-hypergraph on `U` admits an elimination order in which every
//! prefix vertex has degree exactly one in the hypergraph induced on its suffix, the
//! witnesses of those edges form an upper-triangular matrix `M`, and the rows of `M * N`
//! (`N` = the points of `U`) span a subspace of `L` of dimension at least
//! `dim(U) - s + 1`. [`certify`] builds and checks exactly that.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::linalg::{next_combination, Matrix, SubspaceBasis};

/// A hypergraph on a vertex subset of `0..n` (indices into a point matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    vertices: Vec<usize>,
    edges: Vec<Vec<usize>>,
    max_edge_size: usize,
}

impl Hypergraph {
    /// Hypergraph on all of `0..n`. Edges are sorted; duplicates are dropped.
    pub fn new(n: usize, edges: Vec<Vec<usize>>, max_edge_size: usize) -> Result<Self> {
        Self::on_vertices(n, (0..n).collect(), edges, max_edge_size)
    }

    pub fn on_vertices(n: usize, mut vertices: Vec<usize>, edges: Vec<Vec<usize>>, max_edge_size: usize) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.last().is_some_and(|&v| v >= n) {
            return Err(invalid("vertex out of range"));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(invalid("empty hyperedge"));
            }
            if e.len() > max_edge_size {
                return Err(Error::NotBounded(max_edge_size));
            }
            if let Some(&v) = e.iter().find(|&&v| vertices.binary_search(&v).is_err()) {
                return Err(invalid(format!("hyperedge vertex {v} is not in the vertex set")));
            }
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        Ok(Hypergraph { n, vertices, edges: out, max_edge_size })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn max_edge_size(&self) -> usize {
        self.max_edge_size
    }

    /// Restriction to the vertices in `keep` (edges must lie entirely inside).
    pub fn induced(&self, keep: &[usize]) -> Hypergraph {
        let mut vertices = keep.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| vertices.binary_search(v).is_ok()))
            .cloned()
            .collect();
        Hypergraph { n: self.n, vertices, edges, max_edge_size: self.max_edge_size }
    }

    /// Vertices that lie in at least one edge.
    pub fn covered_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The same edges on the smallest vertex set covering them.
    pub fn on_covered_vertices(&self) -> Hypergraph {
        Hypergraph { vertices: self.covered_vertices(), ..self.clone() }
    }
}

/// Witness that `coefficients . W[edge] = target` lies in L with every coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitness {
    pub edge: Vec<usize>,
    pub coefficients: Vec<Scalar>,
    pub target: Vec<Scalar>,
}

impl EdgeWitness {
    /// Re-checks the witness from scratch.
    pub fn check(&self, points: &Matrix, l: &SubspaceBasis) -> bool {
        let f = points.field();
        if self.edge.len() != self.coefficients.len() || self.coefficients.contains(&0) {
            return false;
        }
        let combo = combine(f, points, &self.edge, &self.coefficients);
        combo == self.target && l.contains(&combo)
    }
}

/// Sum of `coeffs[i] * column(cols[i])`.
pub fn combine(f: &FieldSpec, points: &Matrix, cols: &[usize], coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![0; points.rows()];
    for (&c, &a) in cols.iter().zip(coeffs) {
        for (r, o) in out.iter_mut().enumerate() {
            *o = f.add(*o, f.mul(a, points.get(r, c)));
        }
    }
    out
}

/// Largest coefficient space walked by brute force, counted up to a global scalar.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Answers "is X an edge of H_{W -> L}?" queries for a fixed point matrix and subspace.
pub struct PlcOracle<'a> {
    points: &'a Matrix,
    subspace: &'a SubspaceBasis,
    /// Q * w_i for every column, Q the quotient map of L (empty when L is everything).
    images: Vec<Vec<Scalar>>,
    max_size: usize,
}

impl<'a> PlcOracle<'a> {
    pub fn new(points: &'a Matrix, subspace: &'a SubspaceBasis, max_size: usize) -> Result<Self> {
        if subspace.ambient_dim() != points.rows() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F^{} against points of F^{}",
                subspace.ambient_dim(),
                points.rows()
            )));
        }
        if subspace.field() != points.field() {
            return Err(Error::FieldMismatch);
        }
        let images = if subspace.codim() == 0 {
            vec![Vec::new(); points.cols()]
        } else {
            let q = subspace.quotient_map()?;
            let qw = q.mul(points)?;
            qw.columns()
        };
        Ok(PlcOracle { points, subspace, images, max_size })
    }

    pub fn field(&self) -> &FieldSpec {
        self.points.field()
    }

    pub fn points(&self) -> &Matrix {
        self.points
    }

    pub fn subspace(&self) -> &SubspaceBasis {
        self.subspace
    }

    /// A proper combination of the `x`-columns lying in L, if one exists.
    pub fn edge(&self, x: &[usize]) -> Result<Option<EdgeWitness>> {
        if x.is_empty() {
            return Err(invalid("empty vertex set"));
        }
        if x.len() > self.max_size {
            return Err(invalid(format!("edge of size {} exceeds the bound {}", x.len(), self.max_size)));
        }
        if let Some(&v) = x.iter().find(|&&v| v >= self.points.cols()) {
            return Err(invalid(format!("vertex {v} out of range")));
        }
        let mut edge = x.to_vec();
        edge.sort_unstable();
        edge.dedup();
        let q = self.field().q() as u64;
        let space = (q - 1).checked_pow(edge.len() as u32 - 1).unwrap_or(u64::MAX);
        let coeffs = if space <= BRUTE_FORCE_LIMIT {
            self.search_brute_force(&edge)
        } else {
            self.search_null_space(&edge)
        };
        Ok(coeffs.map(|coefficients| {
            let target = combine(self.field(), self.points, &edge, &coefficients);
            EdgeWitness { edge, coefficients, target }
        }))
    }

    fn image_of(&self, edge: &[usize], coeffs: &[Scalar]) -> bool {
        let f = self.field();
        let s = self.images.first().map_or(0, Vec::len);
        (0..s).all(|r| edge.iter().zip(coeffs).fold(0, |acc, (&v, &a)| f.add(acc, f.mul(a, self.images[v][r]))) == 0)
    }

    /// Lexicographic walk over tuples with the first coefficient fixed to 1.
    fn search_brute_force(&self, edge: &[usize]) -> Option<Vec<Scalar>> {
        let q = self.field().q();
        let mut coeffs = vec![1; edge.len()];
        loop {
            if self.image_of(edge, &coeffs) {
                return Some(coeffs);
            }
            // increment the mixed-radix counter over positions 1..
            let mut i = edge.len();
            loop {
                i -= 1;
                if i == 0 {
                    return None;
                }
                if coeffs[i] + 1 < q {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = 1;
            }
        }
    }

    /// Solves (Q W_X) a = 0 and looks for an all-nonzero solution.
    fn search_null_space(&self, edge: &[usize]) -> Option<Vec<Scalar>> {
        let f = self.field();
        let s = self.images.first().map_or(0, Vec::len);
        let cols: Vec<&[Scalar]> = edge.iter().map(|&v| self.images[v].as_slice()).collect();
        let sol = if s == 0 {
            Matrix::identity(f, edge.len())
        } else {
            Matrix::from_columns(f, s, &cols).ok()?.null_space()
        };
        let r = sol.rows();
        if r == 0 || (0..edge.len()).any(|j| (0..r).all(|i| sol.get(i, j) == 0)) {
            return None;
        }
        let accept = |c: &[Scalar]| -> Option<Vec<Scalar>> {
            let mut a = vec![0; edge.len()];
            for (i, &ci) in c.iter().enumerate() {
                if ci != 0 {
                    for (j, aj) in a.iter_mut().enumerate() {
                        *aj = f.add(*aj, f.mul(ci, sol.get(i, j)));
                    }
                }
            }
            if a.contains(&0) {
                return None;
            }
            let inv = f.inv_nonzero(a[0]);
            Some(a.into_iter().map(|x| f.mul(x, inv)).collect())
        };
        let q = f.q() as u64;
        match q.checked_pow(r as u32).filter(|&t| t <= BRUTE_FORCE_LIMIT) {
            Some(total) => (1..total).find_map(|mut idx| {
                let mut c = vec![0; r];
                for ci in c.iter_mut().rev() {
                    *ci = (idx % q) as Scalar;
                    idx /= q;
                }
                accept(&c)
            }),
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(edge.len() as u64);
                (0..BRUTE_FORCE_LIMIT).find_map(|_| {
                    let c: Vec<Scalar> = (0..r).map(|_| rng.gen_range(0..f.q())).collect();
                    accept(&c)
                })
            }
        }
    }
}

/// Convenience wrapper: one PLC query.
pub fn plc_edge(points: &Matrix, x: &[usize], l: &SubspaceBasis, max_size: usize) -> Result<Option<EdgeWitness>> {
    PlcOracle::new(points, l, max_size)?.edge(x)
}

/// A sub-hypergraph of H_{W -> L} together with one witness per edge (aligned with
/// `hypergraph.edges()`).
#[derive(Debug, Clone)]
pub struct WitnessedHypergraph {
    pub hypergraph: Hypergraph,
    pub witnesses: Vec<EdgeWitness>,
}

impl WitnessedHypergraph {
    pub fn witness(&self, edge_index: usize) -> &EdgeWitness {
        &self.witnesses[edge_index]
    }
}

/// Restricts the candidate edges to those that are edges of H_{W -> L}.
pub fn build_plc_hypergraph(
    points: &Matrix,
    l: &SubspaceBasis,
    candidates: &[Vec<usize>],
    max_size: usize,
) -> Result<WitnessedHypergraph> {
    let oracle = PlcOracle::new(points, l, max_size)?;
    let found: Vec<Option<EdgeWitness>> =
        candidates.par_iter().map(|c| oracle.edge(c)).collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut witnesses = Vec::new();
    for w in found.into_iter().flatten() {
        if seen.insert(w.edge.clone()) {
            edges.push(w.edge.clone());
            witnesses.push(w);
        }
    }
    let hypergraph = Hypergraph::new(points.cols(), edges, max_size)?;
    Ok(WitnessedHypergraph { hypergraph, witnesses })
}

/// Every nonempty subset of every candidate, deduplicated, in first-seen order.
pub fn nonempty_subsets(candidates: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in candidates {
        let mut c = c.clone();
        c.sort_unstable();
        for mask in 1u32..(1 << c.len()) {
            let sub: Vec<usize> = (0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect();
            if seen.insert(sub.clone()) {
                out.push(sub);
            }
        }
    }
    out
}

/// An ordering witnessing that a hypergraph is s-tree-like.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    /// Permutation of the hypergraph's vertex set.
    pub order: Vec<usize>,
    pub s: usize,
    /// Index (into the hypergraph's edge list) of the unique suffix edge holding
    /// `order[i]`, for each of the first `order.len() - s + 1` positions.
    pub witness_edges: Vec<usize>,
}

impl EliminationOrder {
    /// Re-verifies the degree-one suffix property by direct recount.
    pub fn verify(&self, h: &Hypergraph) -> bool {
        let n = self.order.len();
        if self.witness_edges.len() != (n + 1).saturating_sub(self.s) {
            return false;
        }
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != h.vertices() {
            return false;
        }
        let mut pos = vec![usize::MAX; h.n()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        self.witness_edges.iter().enumerate().all(|(i, &ei)| {
            let v = self.order[i];
            let containing: Vec<usize> = h
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.contains(&v) && e.iter().all(|&u| pos[u] >= i))
                .map(|(j, _)| j)
                .collect();
            containing == [ei]
        })
    }
}

/// Result of tree-like recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeLikeOutcome {
    Found(EliminationOrder),
    /// Exhaustive search proved no valid order exists.
    NotTreeLike,
    /// Greedy elimination stalled and the instance is too large to search exhaustively.
    Unknown,
}

impl TreeLikeOutcome {
    pub fn order(self) -> Option<EliminationOrder> {
        match self {
            TreeLikeOutcome::Found(o) => Some(o),
            _ => None,
        }
    }
}

/// Instances up to this many vertices fall back to exhaustive search when greedy stalls.
pub const BACKTRACK_LIMIT: usize = 20;

struct Elimination<'a> {
    h: &'a Hypergraph,
    /// local index -> edges containing it
    incident: Vec<Vec<usize>>,
    local: Vec<Vec<usize>>,
}

impl<'a> Elimination<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let idx = |v: usize| h.vertices.binary_search(&v).unwrap();
        let local: Vec<Vec<usize>> = h.edges.iter().map(|e| e.iter().map(|&v| idx(v)).collect()).collect();
        let mut incident = vec![Vec::new(); h.vertices.len()];
        for (j, e) in local.iter().enumerate() {
            for &v in e {
                incident[v].push(j);
            }
        }
        Elimination { h, incident, local }
    }

    /// The unique live edge at `v`, if its live degree is exactly one.
    fn sole_edge(&self, v: usize, alive: &[bool]) -> Option<usize> {
        let mut it = self.incident[v].iter().filter(|&&j| self.local[j].iter().all(|&u| alive[u]));
        let first = *it.next()?;
        it.next().is_none().then_some(first)
    }

    fn greedy(&self, need: usize) -> (Vec<usize>, Vec<usize>, Vec<bool>) {
        let n = self.h.vertices.len();
        let mut alive = vec![true; n];
        let (mut order, mut wits) = (Vec::new(), Vec::new());
        while order.len() < need {
            let Some((v, e)) = (0..n).filter(|&v| alive[v]).find_map(|v| self.sole_edge(v, &alive).map(|e| (v, e))) else {
                break;
            };
            alive[v] = false;
            order.push(v);
            wits.push(e);
        }
        (order, wits, alive)
    }

    fn backtrack(
        &self,
        need: usize,
        alive: &mut Vec<bool>,
        order: &mut Vec<usize>,
        wits: &mut Vec<usize>,
        failed: &mut HashSet<u32>,
    ) -> bool {
        if order.len() == need {
            return true;
        }
        let key = alive.iter().enumerate().fold(0u32, |k, (i, &a)| if a { k | 1 << i } else { k });
        if failed.contains(&key) {
            return false;
        }
        for v in 0..alive.len() {
            if !alive[v] {
                continue;
            }
            if let Some(e) = self.sole_edge(v, alive) {
                alive[v] = false;
                order.push(v);
                wits.push(e);
                if self.backtrack(need, alive, order, wits, failed) {
                    return true;
                }
                alive[v] = true;
                order.pop();
                wits.pop();
            }
        }
        failed.insert(key);
        false
    }

    fn finish(&self, s: usize, order: Vec<usize>, wits: Vec<usize>, alive: &[bool]) -> EliminationOrder {
        let vs = &self.h.vertices;
        let mut full: Vec<usize> = order.iter().map(|&v| vs[v]).collect();
        full.extend((0..vs.len()).filter(|&v| alive[v]).map(|v| vs[v]));
        EliminationOrder { order: full, s, witness_edges: wits }
    }
}

/// Greedy degree-one elimination (least vertex first), with exhaustive backtracking
/// for small instances when greedy stalls.
pub fn tree_like_order(h: &Hypergraph, s: usize) -> Result<TreeLikeOutcome> {
    if s == 0 {
        return Err(invalid("s must be positive"));
    }
    if h.edges.iter().any(|e| e.len() > s) {
        return Err(Error::NotBounded(s));
    }
    let n = h.vertices.len();
    let need = (n + 1).saturating_sub(s);
    let elim = Elimination::new(h);
    let (order, wits, alive) = elim.greedy(need);
    if order.len() == need {
        return Ok(TreeLikeOutcome::Found(elim.finish(s, order, wits, &alive)));
    }
    if n > BACKTRACK_LIMIT {
        return Ok(TreeLikeOutcome::Unknown);
    }
    let mut alive = vec![true; n];
    let (mut order, mut wits) = (Vec::new(), Vec::new());
    let mut failed = HashSet::new();
    if elim.backtrack(need, &mut alive, &mut order, &mut wits, &mut failed) {
        Ok(TreeLikeOutcome::Found(elim.finish(s, order, wits, &alive)))
    } else {
        Ok(TreeLikeOutcome::NotTreeLike)
    }
}

/// Rank certificate: rows of `M * N` are proper combinations of single edges, all in L,
/// and they span at least `rank(N) - s + 1` dimensions.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub order: EliminationOrder,
    pub witnesses: Vec<EdgeWitness>,
    pub coefficient_matrix: Matrix,
    pub point_matrix: Matrix,
    pub point_rank: usize,
    pub achieved_dim: usize,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    order: &'a [usize],
    s: usize,
    edges: Vec<CertificateEdge<'a>>,
    point_rank: usize,
    achieved_dim: usize,
}

#[derive(Serialize)]
struct CertificateEdge<'a> {
    edge: &'a [usize],
    coefficients: &'a [Scalar],
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let doc = CertificateJson {
            order: &self.order.order,
            s: self.order.s,
            edges: self
                .witnesses
                .iter()
                .map(|w| CertificateEdge { edge: &w.edge, coefficients: &w.coefficients })
                .collect(),
            point_rank: self.point_rank,
            achieved_dim: self.achieved_dim,
        };
        serde_json::to_value(doc).expect("certificate serializes")
    }

    /// Lower bound guaranteed by the tree-like rank lemma.
    pub fn guaranteed_dim(&self) -> usize {
        (self.point_rank + 1).saturating_sub(self.order.s)
    }
}

/// Assembles and checks the rank certificate for a witnessed hypergraph and an
/// elimination order of it.
pub fn certify(
    points: &Matrix,
    l: &SubspaceBasis,
    wh: &WitnessedHypergraph,
    order: &EliminationOrder,
) -> Result<Certificate> {
    let f = points.field();
    let h = &wh.hypergraph;
    let n = order.order.len();
    let rows = order.witness_edges.len();
    if rows != (n + 1).saturating_sub(order.s) {
        return Err(Error::InvalidCertificate("witness count does not match n - s + 1".into()));
    }
    let mut pos = vec![usize::MAX; points.cols()];
    for (i, &v) in order.order.iter().enumerate() {
        if v >= points.cols() {
            return Err(invalid(format!("vertex {v} out of range")));
        }
        pos[v] = i;
    }
    let mut m = Matrix::zeros(f, rows, n);
    let mut witnesses = Vec::with_capacity(rows);
    for (row, &ei) in order.witness_edges.iter().enumerate() {
        let edge = h
            .edges()
            .get(ei)
            .ok_or_else(|| Error::InvalidCertificate(format!("edge index {ei} out of range")))?;
        let w = wh
            .witnesses
            .get(ei)
            .filter(|w| &w.edge == edge)
            .ok_or_else(|| Error::InvalidCertificate(format!("missing witness for edge {edge:?}")))?;
        if !w.check(points, l) {
            return Err(Error::InvalidCertificate(format!("witness for edge {edge:?} does not land in L")));
        }
        for (&v, &a) in w.edge.iter().zip(&w.coefficients) {
            let col = pos[v];
            if col == usize::MAX || col < row {
                return Err(Error::InvalidCertificate(format!(
                    "edge {edge:?} reaches before position {row}: order is not triangular"
                )));
            }
            m.set(row, col, a);
        }
        if m.get(row, row) == 0 {
            return Err(Error::InvalidCertificate(format!("zero diagonal at position {row}")));
        }
        witnesses.push(w.clone());
    }
    let cols: Vec<Vec<Scalar>> = order.order.iter().map(|&v| points.column(v)).collect();
    let nmat = if n == 0 { Matrix::zeros(f, 0, points.rows()) } else { Matrix::from_rows(f, &cols)? };
    let product = m.mul(&nmat)?;
    for (r, w) in witnesses.iter().enumerate().take(rows) {
        if product.row(r) != w.target.as_slice() || !l.contains(product.row(r)) {
            return Err(Error::InvalidCertificate(format!("row {r} of M*N is not its witness target in L")));
        }
    }
    let point_rank = nmat.rank();
    let achieved_dim = product.rank();
    let cert = Certificate {
        order: order.clone(),
        witnesses,
        coefficient_matrix: m,
        point_matrix: nmat,
        point_rank,
        achieved_dim,
    };
    if achieved_dim < cert.guaranteed_dim() {
        return Err(Error::InvalidCertificate(format!(
            "achieved dimension {achieved_dim} below rank(N) - s + 1 = {}",
            cert.guaranteed_dim()
        )));
    }
    Ok(cert)
}

/// First (s+1)-subset of `u`, in lexicographic order, carrying a full-support witness.
pub fn exactly_s_plus_one_edge(
    points: &Matrix,
    u: &[usize],
    l: &SubspaceBasis,
    s: usize,
) -> Result<Option<EdgeWitness>> {
    if points.field().q() as usize <= s {
        return Err(invalid(format!("requires q > s, got q={} s={s}", points.field().q())));
    }
    let mut u = u.to_vec();
    u.sort_unstable();
    u.dedup();
    if u.len() < s + 1 {
        return Ok(None);
    }
    let oracle = PlcOracle::new(points, l, s + 1)?;
    let mut comb: Vec<usize> = (0..=s).collect();
    loop {
        let x: Vec<usize> = comb.iter().map(|&i| u[i]).collect();
        if let Some(w) = oracle.edge(&x)? {
            return Ok(Some(w));
        }
        if !next_combination(&mut comb, u.len()) {
            return Ok(None);
        }
    }
}
