//! Blocking-set constructions: the union of spans of hypergraph edges over a point
//! supply, for cherry, ball-power and neighborhood hypergraphs of a graph.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::Budgets;
use crate::error::{invalid, Budget, Error, Result};
use crate::expander::{ball, clique_hypergraph, power_graph, Graph};
use crate::gf::{FieldSpec, Scalar};
use crate::linalg::{normalize, Matrix};
use crate::lincomb::Hypergraph;
use crate::supply::{projective_messages, PointSupply};

/// Where a blocking set came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub parameters: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Provenance {
    pub fn new(construction: impl Into<String>, parameters: Value) -> Self {
        Provenance { construction: construction.into(), parameters, warnings: Vec::new() }
    }
}

/// A set of projective points: normalized (first nonzero entry 1), sorted, distinct.
#[derive(Debug, Clone)]
pub struct BlockingSet {
    field: FieldSpec,
    k: usize,
    points: Vec<Vec<Scalar>>,
    provenance: Provenance,
}

impl BlockingSet {
    pub fn new(field: &FieldSpec, k: usize, points: Vec<Vec<Scalar>>, provenance: Provenance) -> Result<Self> {
        let mut normalized = Vec::with_capacity(points.len());
        for mut p in points {
            if p.len() != k {
                return Err(Error::DimensionMismatch(format!("point of length {} in F^{k}", p.len())));
            }
            if p.iter().any(|&x| !field.contains(x)) {
                return Err(invalid("point entry outside the field"));
            }
            if !normalize(field, &mut p) {
                return Err(invalid("zero vector is not a projective point"));
            }
            normalized.push(p);
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(BlockingSet { field: field.clone(), k, points: normalized, provenance })
    }

    /// Points are the rows of `m`.
    pub fn from_matrix(m: &Matrix, provenance: Provenance) -> Result<Self> {
        BlockingSet::new(m.field(), m.cols(), m.row_vecs(), provenance)
    }

    /// All points of PG(k-1, q).
    pub fn all_points(field: &FieldSpec, k: usize) -> Self {
        let points = projective_messages(field, k).collect();
        BlockingSet::new(field, k, points, Provenance::new("all-points", json!({ "k": k }))).unwrap()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[Scalar]) -> bool {
        let mut p = p.to_vec();
        normalize(&self.field, &mut p) && self.points.binary_search(&p).is_ok()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn provenance_mut(&mut self) -> &mut Provenance {
        &mut self.provenance
    }

    /// One point per row.
    pub fn to_matrix(&self) -> Matrix {
        if self.points.is_empty() {
            return Matrix::zeros(&self.field, 0, self.k);
        }
        Matrix::from_rows(&self.field, &self.points).expect("points share one length")
    }

    /// One point per column (a generator matrix when the points span).
    pub fn to_columns(&self) -> Matrix {
        self.to_matrix().transpose()
    }
}

/// All projective points of span(f) for every edge f, normalized and deduplicated.
pub fn edge_span_union(h: &Hypergraph, w: &PointSupply, budgets: &Budgets) -> Result<BlockingSet> {
    if h.n() != w.n() {
        return Err(Error::DimensionMismatch(format!("hypergraph on {} vertices, supply of {} points", h.n(), w.n())));
    }
    let f = w.field();
    let q = f.q() as u128;
    let bound: u128 = h
        .edges()
        .iter()
        .map(|e| (q.saturating_pow(e.len() as u32) - 1) / (q - 1))
        .fold(0u128, u128::saturating_add);
    budgets.check(Budget::Points, bound)?;
    let cols = w.points().columns();
    let k = w.k();
    let mut points: Vec<Vec<Scalar>> = h
        .edges()
        .par_iter()
        .flat_map_iter(|e| {
            let cols = &cols;
            projective_messages(f, e.len()).filter_map(move |coeffs| {
                let mut v = vec![0; k];
                for (&i, &a) in e.iter().zip(&coeffs) {
                    if a != 0 {
                        for (x, &c) in v.iter_mut().zip(&cols[i]) {
                            *x = f.add(*x, f.mul(a, c));
                        }
                    }
                }
                normalize(f, &mut v).then_some(v)
            })
        })
        .collect();
    points.par_sort_unstable();
    points.dedup();
    BlockingSet::new(f, k, points, Provenance::new("edge-span-union", json!({ "edges": h.edges().len() })))
}

/// All cherries {x, y, z} with xy and xz edges of G.
pub fn cherry_hypergraph(g: &Graph) -> Result<Hypergraph> {
    let mut edges = BTreeSet::new();
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        for (i, &y) in nb.iter().enumerate() {
            for &z in &nb[i + 1..] {
                let mut e = vec![x, y as usize, z as usize];
                e.sort_unstable();
                edges.insert(e);
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyConstruction("graph has no path of length two".into()));
    }
    Hypergraph::new(g.n(), edges.into_iter().collect(), 3)
}

fn check_sizes(g: &Graph, w: &PointSupply) -> Result<()> {
    if g.n() != w.n() {
        return Err(Error::DimensionMismatch(format!("graph has {} vertices, supply has {} points", g.n(), w.n())));
    }
    Ok(())
}

fn supply_warnings(w: &PointSupply, needed_s: usize) -> Vec<String> {
    match w.report() {
        None => vec!["supply carries no general-position report".into()],
        Some(r) if r.s_independence < needed_s => vec![format!(
            "supply s_independence {} is below the {needed_s} the construction assumes",
            r.s_independence
        )],
        Some(_) => Vec::new(),
    }
}

fn finish(
    h: &Hypergraph,
    w: &PointSupply,
    budgets: &Budgets,
    name: &str,
    parameters: Value,
    mut warnings: Vec<String>,
) -> Result<BlockingSet> {
    if h.edges().is_empty() {
        return Err(Error::EmptyConstruction(format!("{name} hypergraph has no edges")));
    }
    let mut b = edge_span_union(h, w, budgets)?;
    warnings.extend(supply_warnings(w, h.max_edge_size() - 1));
    let mut parameters = parameters;
    parameters["edges"] = json!(h.edges().len());
    parameters["supply_points"] = json!(w.n());
    *b.provenance_mut() = Provenance { construction: name.into(), parameters, warnings };
    Ok(b)
}

/// Span union over all cherries of G: the strong 2-blocking construction.
pub fn construct_cherry(g: &Graph, w: &PointSupply, budgets: &Budgets) -> Result<BlockingSet> {
    check_sizes(g, w)?;
    let h = cherry_hypergraph(g)?;
    finish(&h, w, budgets, "cherry", json!({ "s": 2 }), Vec::new())
}

/// Which edge set the ball-power construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallMode {
    /// r-subsets of some ball B_r(x).
    #[default]
    CommonCenter,
    /// r-cliques of G^r (pairwise distance at most r).
    PairwiseDistance,
}

fn subsets_of_balls(g: &Graph, radius: usize, r: usize, budgets: &Budgets) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    let balls: Vec<Vec<usize>> = (0..g.n()).into_par_iter().map(|x| ball(g, x, radius)).collect();
    let total = balls.iter().map(|b| binomial(b.len(), r)).fold(0u128, u128::saturating_add);
    budgets.check(Budget::Cliques, total)?;
    let mut edges = BTreeSet::new();
    let mut small = Vec::new();
    for (x, b) in balls.iter().enumerate() {
        if b.len() < r {
            small.push(x);
            continue;
        }
        let mut comb: Vec<usize> = (0..r).collect();
        loop {
            edges.insert(comb.iter().map(|&i| b[i]).collect::<Vec<_>>());
            if !crate::linalg::next_combination(&mut comb, b.len()) {
                break;
            }
        }
    }
    Ok((edges.into_iter().collect(), small))
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r.min(n - r)).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn small_ball_warning(small: &[usize], radius: usize, r: usize) -> Vec<String> {
    if small.is_empty() {
        return Vec::new();
    }
    vec![format!("{} vertices have fewer than {r} vertices within distance {radius}", small.len())]
}

/// Ball-power hypergraph of G for r = s + 1.
pub fn ball_power_hypergraph(g: &Graph, s: usize, mode: BallMode, budgets: &Budgets) -> Result<(Hypergraph, Vec<String>)> {
    if s == 0 {
        return Err(invalid("s must be positive"));
    }
    let r = s + 1;
    match mode {
        BallMode::CommonCenter => {
            let (edges, small) = subsets_of_balls(g, r, r, budgets)?;
            Ok((Hypergraph::new(g.n(), edges, r)?, small_ball_warning(&small, r, r)))
        }
        BallMode::PairwiseDistance => Ok((clique_hypergraph(&power_graph(g, r)?, r, budgets)?, Vec::new())),
    }
}

pub fn construct_ball_power(
    g: &Graph,
    w: &PointSupply,
    s: usize,
    mode: BallMode,
    budgets: &Budgets,
) -> Result<BlockingSet> {
    check_sizes(g, w)?;
    let (h, warnings) = ball_power_hypergraph(g, s, mode, budgets)?;
    finish(&h, w, budgets, "ball-power", json!({ "s": s, "mode": mode }), warnings)
}

/// r-subsets of closed neighborhoods N[x], r = s + 1.
pub fn neighborhood_hypergraph(g: &Graph, s: usize, budgets: &Budgets) -> Result<(Hypergraph, Vec<String>)> {
    if s == 0 {
        return Err(invalid("s must be positive"));
    }
    let r = s + 1;
    let (edges, small) = subsets_of_balls(g, 1, r, budgets)?;
    Ok((Hypergraph::new(g.n(), edges, r)?, small_ball_warning(&small, 1, r)))
}

pub fn construct_neighborhood(g: &Graph, w: &PointSupply, s: usize, budgets: &Budgets) -> Result<BlockingSet> {
    check_sizes(g, w)?;
    let (h, warnings) = neighborhood_hypergraph(g, s, budgets)?;
    finish(&h, w, budgets, "neighborhood", json!({ "s": s }), warnings)
}

/// ceil((q^{s+1} - 1)(k - s) / (q - 1)): no strong s-blocking set in PG(k-1, q) is smaller.
pub fn lower_bound(q: u64, k: u64, s: u64) -> Result<u128> {
    if s < 1 || k <= s || q < 2 {
        return Err(invalid(format!("lower bound needs k > s >= 1 and q >= 2, got q={q} k={k} s={s}")));
    }
    let num = ((q as u128).checked_pow(s as u32 + 1).ok_or_else(|| invalid("overflow"))? - 1) * (k - s) as u128;
    Ok(num.div_ceil(q as u128 - 1))
}
