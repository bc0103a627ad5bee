//! Point supplies: sets of projectively distinct vectors with measured general-position
//! parameters (independence of small subsets, spanning of large subsets).

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::{invalid, Budget, Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::linalg::{next_combination, normalize, IncrementalBasis, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupplyProvenance {
    Mds,
    RandomVerified,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMethod {
    Exhaustive,
    Sampled,
}

/// Measured general-position parameters of a point supply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPositionReport {
    /// Largest s such that every s+1 columns are independent.
    pub s_independence: usize,
    /// Smallest t such that every t columns span F_q^k; `None` if the columns do not span.
    pub span_threshold: Option<usize>,
    pub method: CheckMethod,
    /// Size of the smallest dependent column set; `None` if all columns are independent.
    pub dual_distance: Option<usize>,
    /// Minimum weight of a nonzero codeword of the row space (`None` if rank < k).
    pub min_distance: Option<usize>,
    pub requested_s: Option<usize>,
    pub requested_t: Option<usize>,
    pub meets_request: bool,
}

/// A k x n matrix whose columns are nonzero, pairwise projectively distinct points.
#[derive(Debug, Clone)]
pub struct PointSupply {
    points: Matrix,
    provenance: SupplyProvenance,
    report: Option<GeneralPositionReport>,
}

impl PointSupply {
    pub fn new(points: Matrix, provenance: SupplyProvenance) -> Result<Self> {
        let f = points.field();
        let mut seen = HashSet::new();
        for (i, mut c) in points.columns().into_iter().enumerate() {
            if !normalize(f, &mut c) {
                return Err(invalid(format!("supply column {i} is zero")));
            }
            if !seen.insert(c) {
                return Err(invalid(format!("supply column {i} repeats a projective point")));
            }
        }
        Ok(PointSupply { points, provenance, report: None })
    }

    pub fn with_report(mut self, report: GeneralPositionReport) -> Self {
        self.report = Some(report);
        self
    }

    pub fn points(&self) -> &Matrix {
        &self.points
    }

    pub fn field(&self) -> &FieldSpec {
        self.points.field()
    }

    pub fn k(&self) -> usize {
        self.points.rows()
    }

    pub fn n(&self) -> usize {
        self.points.cols()
    }

    pub fn provenance(&self) -> SupplyProvenance {
        self.provenance
    }

    pub fn report(&self) -> Option<&GeneralPositionReport> {
        self.report.as_ref()
    }
}

/// Extended Reed-Solomon supply: `(1, a, ..., a^{k-1})` for the first `n` field
/// elements, plus `e_k` when `n = q + 1`.
pub fn supply_mds(field: &FieldSpec, k: usize, n: usize) -> Result<PointSupply> {
    let q = field.q() as usize;
    if n + 1 > q + 2 {
        return Err(invalid(format!("MDS supply needs q >= n - 1, got q={q}, n={n}")));
    }
    if k == 0 || k > n {
        return Err(invalid(format!("MDS supply needs 1 <= k <= n, got k={k}, n={n}")));
    }
    if k == 1 && n > 1 {
        return Err(invalid("k = 1 admits a single projective point"));
    }
    let mut cols: Vec<Vec<Scalar>> = field
        .elements()
        .take(n.min(q))
        .map(|a| (0..k).map(|i| field.pow(a, i as u64)).collect())
        .collect();
    if n == q + 1 {
        let mut e = vec![0; k];
        e[k - 1] = 1;
        cols.push(e);
    }
    PointSupply::new(Matrix::from_columns(field, k, &cols)?, SupplyProvenance::Mds)
}

/// Number of random subsets / codewords drawn when exhaustive checks exceed budget.
pub const SAMPLES: usize = 100_000;
const SAMPLE_SEED: u64 = 0x6770;

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn dependent(f: &FieldSpec, cols: &[Vec<Scalar>], subset: &[usize]) -> bool {
    let mut basis = IncrementalBasis::new(f);
    !subset.iter().all(|&i| basis.insert(&cols[i]))
}

/// Smallest dependent column subset by exhaustive search of subsets of size
/// `2..=min(n, k)`; sizes beyond k are dependent by dimension.
pub fn dual_distance_by_submatrices(w: &Matrix, budgets: &Budgets) -> Result<Option<usize>> {
    let (k, n) = (w.rows(), w.cols());
    let top = n.min(k);
    budgets.check(Budget::Subsets, (1..=top).map(|j| binomial(n, j)).sum())?;
    let cols = w.columns();
    for j in 1..=top {
        let mut comb: Vec<usize> = (0..j).collect();
        loop {
            if dependent(w.field(), &cols, &comb) {
                return Ok(Some(j));
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok((n > k).then_some(k + 1))
}

/// Minimum weight of the dual code `{x : W x = 0}` by enumerating its codewords.
pub fn dual_distance_by_codewords(w: &Matrix, budgets: &Budgets) -> Result<Option<usize>> {
    let f = w.field();
    let dual = w.null_space();
    let r = dual.rows();
    let total = (f.q() as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    budgets.check(Budget::Subsets, total)?;
    Ok(projective_messages(f, r).map(|m| weight(f, &m, &dual)).min())
}

/// Minimum weight of the row space of `w`, `None` when some nonzero message maps to 0.
pub fn min_distance(w: &Matrix, budgets: &Budgets) -> Result<Option<usize>> {
    let f = w.field();
    let k = w.rows();
    let total = (f.q() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    budgets.check(Budget::Subsets, total)?;
    let mut best = usize::MAX;
    for m in projective_messages(f, k) {
        let wt = weight(f, &m, w);
        if wt == 0 {
            return Ok(None);
        }
        best = best.min(wt);
    }
    Ok((best != usize::MAX).then_some(best))
}

/// Normalized nonzero vectors of F_q^k (first nonzero entry 1), in a fixed order.
pub(crate) fn projective_messages(f: &FieldSpec, k: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let q = f.q() as u64;
    (0..k).flat_map(move |lead| {
        let tail = k - lead - 1;
        (0..q.pow(tail as u32)).map(move |mut idx| {
            let mut v = vec![0; k];
            v[lead] = 1;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (idx % q) as Scalar;
                idx /= q;
            }
            v
        })
    })
}

fn weight(f: &FieldSpec, m: &[Scalar], g: &Matrix) -> usize {
    (0..g.cols())
        .filter(|&c| (0..g.rows()).fold(0, |acc, r| f.add(acc, f.mul(m[r], g.get(r, c)))) != 0)
        .count()
}

/// Smallest t such that every t columns span F_q^k, by ranks of column subsets.
pub fn span_threshold_by_submatrices(w: &Matrix, budgets: &Budgets) -> Result<Option<usize>> {
    let (k, n) = (w.rows(), w.cols());
    if w.rank() < k {
        return Ok(None);
    }
    budgets.check(Budget::Subsets, (k..=n).map(|t| binomial(n, t)).sum())?;
    for t in k..=n {
        let mut comb: Vec<usize> = (0..t).collect();
        let all_span = loop {
            if w.select_columns(&comb).rank() < k {
                break false;
            }
            if !next_combination(&mut comb, n) {
                break true;
            }
        };
        if all_span {
            return Ok(Some(t));
        }
    }
    unreachable!("the full column set spans")
}

fn sampled_dual_distance(w: &Matrix) -> Option<usize> {
    let (k, n) = (w.rows(), w.cols());
    let cols = w.columns();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for j in 1..=n.min(k) {
        for _ in 0..SAMPLES {
            let subset = sample(&mut rng, n, j).into_vec();
            if dependent(w.field(), &cols, &subset) {
                return Some(j);
            }
        }
    }
    (n > k).then_some(k + 1)
}

fn sampled_min_distance(w: &Matrix) -> Option<usize> {
    let f = w.field();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED + 1);
    if w.rank() < w.rows() {
        return None;
    }
    (0..SAMPLES)
        .filter_map(|_| {
            let m: Vec<Scalar> = (0..w.rows()).map(|_| rng.gen_range(0..f.q())).collect();
            m.iter().any(|&x| x != 0).then(|| weight(f, &m, w))
        })
        .min()
}

/// Measures both general-position parameters, exhaustively when the subset and
/// codeword counts fit the `subsets` budget, otherwise by sampling (flagged).
pub fn verify_general_position(
    w: &PointSupply,
    s: Option<usize>,
    t: Option<usize>,
    budgets: &Budgets,
) -> GeneralPositionReport {
    let m = w.points();
    let (k, n) = (m.rows(), m.cols());
    let mut method = CheckMethod::Exhaustive;
    let dual_distance = dual_distance_by_submatrices(m, budgets).unwrap_or_else(|_| {
        method = CheckMethod::Sampled;
        sampled_dual_distance(m)
    });
    let (min_dist, span_threshold) = match min_distance(m, budgets) {
        Ok(d) => (d, d.map(|d| n - d + 1)),
        Err(_) => match span_threshold_by_submatrices(m, budgets) {
            Ok(t) => (t.map(|t| n + 1 - t), t),
            Err(_) => {
                method = CheckMethod::Sampled;
                let d = sampled_min_distance(m);
                (d, d.map(|d| n - d + 1))
            }
        },
    };
    let s_independence = match dual_distance {
        Some(d) => d.saturating_sub(2).min(k.saturating_sub(1)),
        None => n.min(k).saturating_sub(1),
    };
    let meets_request = s.is_none_or(|s| s_independence >= s) && t.is_none_or(|t| span_threshold.is_some_and(|x| x <= t));
    GeneralPositionReport {
        s_independence,
        span_threshold,
        method,
        dual_distance,
        min_distance: min_dist,
        requested_s: s,
        requested_t: t,
        meets_request,
    }
}

/// Random k x n supplies (deterministic in `seed`) until one verifies with
/// `s_independence >= s` and `span_threshold <= t`.
#[allow(clippy::too_many_arguments)]
pub fn supply_random_verified(
    field: &FieldSpec,
    k: usize,
    n: usize,
    s: usize,
    t: usize,
    seed: u64,
    max_tries: usize,
    budgets: &Budgets,
) -> Result<PointSupply> {
    if s >= k {
        return Err(invalid(format!("s = {s} >= k = {k}: k + 1 vectors of F_q^k are never independent")));
    }
    if n < k || t < k || t > n {
        return Err(invalid(format!("need k <= t <= n, got k={k}, t={t}, n={n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        let data: Vec<Scalar> = (0..k * n).map(|_| rng.gen_range(0..field.q())).collect();
        let Ok(candidate) = PointSupply::new(Matrix::from_vec(field, k, n, data)?, SupplyProvenance::RandomVerified)
        else {
            continue;
        };
        let report = verify_general_position(&candidate, Some(s), Some(t), budgets);
        if report.meets_request {
            return Ok(candidate.with_report(report));
        }
    }
    Err(Error::TriesExhausted(max_tries))
}
