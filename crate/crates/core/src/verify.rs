//! Strong s-blocking verification (exhaustive and sampled), the affine conversion,
//! and a branch-and-bound search for minimum strong blocking sets.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::Budgets;
use crate::construct::{lower_bound, BlockingSet, Provenance};
use crate::error::{invalid, Budget, Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::linalg::{enumerate_subspaces, IncrementalBasis, Matrix, SubspaceBasis, SubspaceEnumerator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
}

/// A codimension-s subspace L with `rank(B ∩ L) < k - s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position in the canonical enumeration (exhaustive mode) or trial number (sampled).
    pub index: u64,
    /// Rows of an s x k matrix Q with L = {x : Q x = 0}.
    pub quotient_map: Vec<Vec<Scalar>>,
    /// Canonical basis of L.
    pub basis: Vec<Vec<Scalar>>,
    pub intersection_size: usize,
    pub intersection_rank: usize,
}

impl Counterexample {
    pub fn subspace(&self, field: &FieldSpec, k: usize) -> SubspaceBasis {
        let m = if self.basis.is_empty() { Matrix::zeros(field, 0, k) } else { Matrix::from_rows(field, &self.basis).unwrap() };
        SubspaceBasis::from_rows(&m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub s: usize,
    pub k: usize,
    pub q: u32,
    pub points: usize,
    pub subspaces_checked: u64,
    pub result: Outcome,
    pub counterexample: Option<Counterexample>,
    /// Number of failing subspaces, when the run was asked to exhaust all of them.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failures: Option<u64>,
    /// Excluded from serialized reports so identical runs produce identical bytes.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub jobs: usize,
    /// Keep scanning after the first failure and count all failing subspaces.
    pub exhaust_all: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { jobs: 1, exhaust_all: false }
    }
}

fn check_s(b: &BlockingSet, s: usize) -> Result<()> {
    if s == 0 || s >= b.k() {
        return Err(invalid(format!("need 1 <= s < k, got s={s}, k={}", b.k())));
    }
    Ok(())
}

/// Rank of the points annihilated by the s x k row-major matrix `q`, stopping once
/// `target` is reached. Returns (rank, number of points in the intersection).
fn intersection_rank(f: &FieldSpec, points: &[Vec<Scalar>], q: &[Scalar], k: usize, target: usize, count_all: bool) -> (usize, usize) {
    let s = q.len() / k;
    let mut basis = IncrementalBasis::new(f);
    let mut size = 0;
    for p in points {
        let inside = (0..s).all(|r| {
            let row = &q[r * k..(r + 1) * k];
            row.iter().zip(p).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) == 0
        });
        if inside {
            size += 1;
            if basis.rank() < target {
                basis.insert(p);
            } else if !count_all {
                break;
            }
        }
    }
    (basis.rank(), size)
}

fn counterexample(b: &BlockingSet, index: u64, q: Vec<Scalar>, s: usize) -> Counterexample {
    let (f, k) = (b.field(), b.k());
    let (rank, size) = intersection_rank(f, b.points(), &q, k, k, true);
    let qm = Matrix::from_vec(f, s, k, q).expect("quotient map shape");
    let l = SubspaceBasis::annihilated_by(&qm);
    Counterexample {
        index,
        quotient_map: qm.row_vecs(),
        basis: l.basis().row_vecs(),
        intersection_size: size,
        intersection_rank: rank,
    }
}

/// Re-checks a counterexample from its basis alone.
pub fn counterexample_is_valid(b: &BlockingSet, s: usize, cx: &Counterexample) -> bool {
    let l = cx.subspace(b.field(), b.k());
    if l.codim() != s {
        return false;
    }
    let inside: Vec<&Vec<Scalar>> = b.points().iter().filter(|p| l.contains(p)).collect();
    let rank = if inside.is_empty() { 0 } else { Matrix::from_rows(b.field(), &inside).unwrap().rank() };
    rank < b.k() - s && rank == cx.intersection_rank
}

struct ShardResult {
    first_fail: Option<u64>,
    failures: u64,
}

fn scan_shard(
    b: &BlockingSet,
    e: &SubspaceEnumerator,
    range: std::ops::Range<u64>,
    target: usize,
    best: &AtomicU64,
    exhaust_all: bool,
) -> ShardResult {
    let (f, k) = (b.field(), b.k());
    let mut buf = vec![0; e.dim() * k];
    let mut out = ShardResult { first_fail: None, failures: 0 };
    for idx in range {
        if !exhaust_all && idx > best.load(Ordering::Relaxed) {
            break;
        }
        e.fill(idx, &mut buf);
        let (rank, _) = intersection_rank(f, b.points(), &buf, k, target, false);
        if rank < target {
            out.failures += 1;
            if out.first_fail.is_none() {
                out.first_fail = Some(idx);
                best.fetch_min(idx, Ordering::Relaxed);
            }
            if !exhaust_all {
                break;
            }
        }
    }
    out
}

/// Exhaustive check over every codimension-s subspace L of F_q^k (enumerated through
/// their s-dimensional annihilators) that the points of B in L span L.
pub fn is_strong_blocking(b: &BlockingSet, s: usize, opts: VerifyOptions, budgets: &Budgets) -> Result<VerificationReport> {
    check_s(b, s)?;
    let start = Instant::now();
    let (f, k) = (b.field(), b.k());
    let e = enumerate_subspaces(f, k, k - s, budgets)?;
    let target = k - s;
    let best = AtomicU64::new(u64::MAX);
    let jobs = opts.jobs.max(1);
    let shards = e.shards(jobs);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|err| Error::Consistency(format!("thread pool: {err}")))?;
    let results: Vec<ShardResult> = pool.install(|| {
        shards
            .into_par_iter()
            .map(|r| scan_shard(b, &e, r, target, &best, opts.exhaust_all))
            .collect()
    });
    let first = results.iter().filter_map(|r| r.first_fail).min();
    let (result, checked, cx) = match first {
        None => (Outcome::Pass, e.len(), None),
        Some(idx) => {
            let mut q = vec![0; s * k];
            e.fill(idx, &mut q);
            let checked = if opts.exhaust_all { e.len() } else { idx + 1 };
            (Outcome::Fail, checked, Some(counterexample(b, idx, q, s)))
        }
    };
    Ok(VerificationReport {
        mode: VerifyMode::Exhaustive,
        s,
        k,
        q: f.q(),
        points: b.len(),
        subspaces_checked: checked,
        result,
        counterexample: cx,
        failures: opts.exhaust_all.then(|| results.iter().map(|r| r.failures).sum()),
        wall_time: start.elapsed(),
    })
}

/// Random codimension-s subspaces from uniformly random full-rank s x k quotient maps.
/// Can only refute; a pass means no counterexample was found.
pub fn is_strong_blocking_sampled(b: &BlockingSet, s: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_s(b, s)?;
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let start = Instant::now();
    let (f, k) = (b.field(), b.k());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cx = None;
    let mut checked = 0;
    for trial in 0..trials {
        let q = loop {
            let data: Vec<Scalar> = (0..s * k).map(|_| rng.gen_range(0..f.q())).collect();
            let m = Matrix::from_vec(f, s, k, data)?;
            let r = m.rref();
            if r.rank == s {
                break r.matrix;
            }
        };
        checked += 1;
        let (rank, _) = intersection_rank(f, b.points(), q.data(), k, k - s, false);
        if rank < k - s {
            cx = Some(counterexample(b, trial, q.data().to_vec(), s));
            break;
        }
    }
    Ok(VerificationReport {
        mode: VerifyMode::Sampled,
        s,
        k,
        q: f.q(),
        points: b.len(),
        subspaces_checked: checked,
        result: if cx.is_some() { Outcome::Fail } else { Outcome::Pass },
        counterexample: cx,
        failures: None,
        wall_time: start.elapsed(),
    })
}

/// Vectors of F_q^k (not projective points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSet {
    pub field: FieldSpec,
    pub k: usize,
    pub points: Vec<Vec<Scalar>>,
}

/// {0} together with every nonzero multiple of every point of B.
pub fn to_affine_blocking(b: &BlockingSet) -> Result<AffineSet> {
    if b.is_empty() {
        return Err(invalid("empty blocking set"));
    }
    let f = b.field();
    let mut points = vec![vec![0; b.k()]];
    for p in b.points() {
        for c in f.nonzero_elements() {
            points.push(p.iter().map(|&x| f.mul(c, x)).collect());
        }
    }
    points.sort_unstable();
    points.dedup();
    Ok(AffineSet { field: f.clone(), k: b.k(), points })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineReport {
    pub codim: usize,
    pub points: usize,
    pub subspaces_checked: u64,
    pub result: Outcome,
    /// Rows of Q and right-hand side t of a missed affine subspace {x : Q x = t}.
    pub missed: Option<(Vec<Vec<Scalar>>, Vec<Scalar>)>,
}

/// Checks that A meets every affine subspace {x : Q x = t} of codimension `codim`,
/// i.e. that Q maps A onto F_q^codim for every full-rank Q.
pub fn is_affine_blocking(a: &AffineSet, codim: usize, budgets: &Budgets) -> Result<AffineReport> {
    let (f, k) = (&a.field, a.k);
    if codim == 0 || codim > k {
        return Err(invalid(format!("need 1 <= codim <= k, got {codim}")));
    }
    let e = enumerate_subspaces(f, k, k - codim, budgets)?;
    let q = f.q() as usize;
    let cells = q.checked_pow(codim as u32).filter(|&c| c <= 1 << 24).ok_or_else(|| invalid("codimension too large"))?;
    let miss = (0..e.len()).into_par_iter().find_first(|&idx| {
        let mut buf = vec![0; codim * k];
        e.fill(idx, &mut buf);
        let mut hit = vec![false; cells];
        let mut count = 0;
        for p in &a.points {
            let code = (0..codim).fold(0usize, |acc, r| {
                let v = buf[r * k..(r + 1) * k].iter().zip(p).fold(0, |s, (&x, &y)| f.add(s, f.mul(x, y)));
                acc * q + v as usize
            });
            if !hit[code] {
                hit[code] = true;
                count += 1;
                if count == cells {
                    return false;
                }
            }
        }
        true
    });
    let missed = miss.map(|idx| {
        let mut buf = vec![0; codim * k];
        e.fill(idx, &mut buf);
        let qm = Matrix::from_vec(f, codim, k, buf).unwrap();
        let images: std::collections::HashSet<Vec<Scalar>> = a.points.iter().map(|p| qm.mul_vec(p)).collect();
        let t = projective_or_zero(f, codim).find(|t| !images.contains(t)).expect("some image is missed");
        (qm.row_vecs(), t)
    });
    Ok(AffineReport {
        codim,
        points: a.points.len(),
        subspaces_checked: miss.map_or(e.len(), |i| i + 1),
        result: if missed.is_some() { Outcome::Fail } else { Outcome::Pass },
        missed,
    })
}

fn projective_or_zero(f: &FieldSpec, n: usize) -> impl Iterator<Item = Vec<Scalar>> + '_ {
    let q = f.q() as u64;
    (0..q.pow(n as u32)).map(move |mut idx| {
        let mut v = vec![0; n];
        for x in v.iter_mut().rev() {
            *x = (idx % q) as Scalar;
            idx /= q;
        }
        v
    })
}

/// Outcome of the minimum-size search.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub size: usize,
    pub set: BlockingSet,
    /// True when the search space was exhausted (or the lower bound was met).
    pub exact: bool,
    pub nodes: u64,
    pub lower_bound: u128,
}

struct Search<'a> {
    incidence: Vec<Vec<usize>>,
    members: Vec<Vec<usize>>,
    points: &'a [Vec<Scalar>],
    field: &'a FieldSpec,
    target: usize,
    /// 0 undecided, 1 in, 2 out
    state: Vec<u8>,
    chosen: usize,
    best: Vec<usize>,
    nodes: u64,
    limit: u64,
    floor: usize,
    aborted: bool,
}

impl Search<'_> {
    fn feasible_after_excluding(&self, p: usize) -> bool {
        self.incidence[p].iter().all(|&l| {
            let mut basis = IncrementalBasis::new(self.field);
            for &x in &self.members[l] {
                if self.state[x] != 2 && basis.insert(&self.points[x]) && basis.rank() == self.target {
                    return true;
                }
            }
            false
        })
    }

    fn run(&mut self, i: usize) {
        if self.aborted || self.best.len() <= self.floor {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        if self.chosen >= self.best.len() {
            return;
        }
        if i == self.points.len() {
            self.best = (0..self.points.len()).filter(|&x| self.state[x] == 1).collect();
            return;
        }
        self.state[i] = 2;
        if self.feasible_after_excluding(i) {
            self.run(i + 1);
        }
        self.state[i] = 1;
        self.chosen += 1;
        self.run(i + 1);
        self.chosen -= 1;
        self.state[i] = 0;
    }
}

/// Smallest strong s-blocking set of PG(k-1, q) by branch and bound over point subsets
/// (exclusion first), pruned by partial-rank feasibility and stopped at the lower bound.
pub fn minimum_size_search(field: &FieldSpec, k: usize, s: usize, budgets: &Budgets) -> Result<SearchResult> {
    if s == 0 || s >= k {
        return Err(invalid(format!("need 1 <= s < k, got s={s}, k={k}")));
    }
    let all = BlockingSet::all_points(field, k);
    let floor = lower_bound(field.q() as u64, k as u64, s as u64)?;
    budgets.check(Budget::Points, all.len() as u128)?;
    let e = enumerate_subspaces(field, k, s, budgets)?;
    let points = all.points();
    let mut members = Vec::with_capacity(e.len() as usize);
    let mut incidence = vec![Vec::new(); points.len()];
    for (l, sub) in e.iter().enumerate() {
        let inside: Vec<usize> = (0..points.len()).filter(|&x| sub.contains(&points[x])).collect();
        for &x in &inside {
            incidence[x].push(l);
        }
        members.push(inside);
    }
    let mut search = Search {
        incidence,
        members,
        points,
        field,
        target: k - s,
        state: vec![0; points.len()],
        chosen: 0,
        best: (0..points.len()).collect(),
        nodes: 0,
        limit: budgets.search,
        floor: usize::try_from(floor).unwrap_or(usize::MAX),
        aborted: false,
    };
    search.run(0);
    let exact = !search.aborted || search.best.len() <= search.floor;
    let chosen: Vec<Vec<Scalar>> = search.best.iter().map(|&x| points[x].clone()).collect();
    let provenance = Provenance::new(
        "minimum-size-search",
        json!({ "q": field.q(), "k": k, "s": s, "exact": exact, "nodes": search.nodes }),
    );
    let set = BlockingSet::new(field, k, chosen, provenance)?;
    Ok(SearchResult { size: set.len(), set, exact, nodes: search.nodes, lower_bound: floor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_cherry;
    use crate::expander::Graph;
    use crate::supply::supply_mds;
    use serde_json::Value;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn opts(jobs: usize) -> VerifyOptions {
        VerifyOptions { jobs, exhaust_all: false }
    }

    #[test]
    fn all_points_pass() {
        let b = Budgets::default();
        for (q, k) in [(2, 3), (3, 3), (2, 4), (4, 3)] {
            let all = BlockingSet::all_points(&gf(q), k);
            for s in 1..k {
                let r = is_strong_blocking(&all, s, opts(2), &b).unwrap();
                assert!(r.passed());
                let total = crate::linalg::gaussian_binomial(k as u32, (k - s) as u32, q);
                assert_eq!(r.subspaces_checked as u128, u128::try_from(total).unwrap());
            }
        }
    }

    #[test]
    fn hyperplane_fails() {
        let f = gf(3);
        let pts: Vec<Vec<Scalar>> = BlockingSet::all_points(&f, 3).points().iter().filter(|p| p[0] == 0).cloned().collect();
        let b = BlockingSet::new(&f, 3, pts, Provenance::new("hyperplane", Value::Null)).unwrap();
        let r = is_strong_blocking(&b, 1, opts(1), &Budgets::default()).unwrap();
        assert!(!r.passed());
        let cx = r.counterexample.as_ref().unwrap();
        assert!(counterexample_is_valid(&b, 1, cx));
        assert_eq!(cx.intersection_rank, 1);
        let sampled = is_strong_blocking_sampled(&b, 1, 100, 5).unwrap();
        assert!(!sampled.passed());
        assert!(counterexample_is_valid(&b, 1, sampled.counterexample.as_ref().unwrap()));
        assert!(sampled.subspaces_checked <= 3);
    }

    #[test]
    fn cherry_k4_over_f5_passes() {
        let w = supply_mds(&gf(5), 3, 4).unwrap();
        let b = construct_cherry(&Graph::complete(4), &w, &Budgets::default()).unwrap();
        let r = is_strong_blocking(&b, 2, opts(4), &Budgets::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.subspaces_checked, 31);
        assert!(is_strong_blocking_sampled(&b, 2, 200, 1).unwrap().passed());
    }

    #[test]
    fn sampled_is_deterministic() {
        let f = gf(2);
        let pts = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]];
        let b = BlockingSet::new(&f, 4, pts, Provenance::new("t", Value::Null)).unwrap();
        let a = is_strong_blocking_sampled(&b, 2, 50, 9).unwrap();
        let c = is_strong_blocking_sampled(&b, 2, 50, 9).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
    }

    #[test]
    fn shards_and_exhaust_all_agree() {
        let f = gf(3);
        let pts: Vec<Vec<Scalar>> = BlockingSet::all_points(&f, 4).points().iter().step_by(3).cloned().collect();
        let b = BlockingSet::new(&f, 4, pts, Provenance::new("t", Value::Null)).unwrap();
        let one = is_strong_blocking(&b, 2, opts(1), &Budgets::default()).unwrap();
        for jobs in [2, 3, 7, 16] {
            let r = is_strong_blocking(&b, 2, opts(jobs), &Budgets::default()).unwrap();
            assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&one).unwrap());
        }
        let all1 = is_strong_blocking(&b, 2, VerifyOptions { jobs: 1, exhaust_all: true }, &Budgets::default()).unwrap();
        let all5 = is_strong_blocking(&b, 2, VerifyOptions { jobs: 5, exhaust_all: true }, &Budgets::default()).unwrap();
        assert_eq!(all1.failures, all5.failures);
        assert_eq!(all1.counterexample, one.counterexample);
        // recount failures directly
        let e = enumerate_subspaces(&f, 4, 2, &Budgets::default()).unwrap();
        let direct = e
            .iter()
            .filter(|l| {
                let inside: Vec<&Vec<Scalar>> = b.points().iter().filter(|p| l.contains(p)).collect();
                inside.is_empty() || Matrix::from_rows(&f, &inside).unwrap().rank() < 2
            })
            .count() as u64;
        assert_eq!(all1.failures, Some(direct));
    }

    #[test]
    fn budget_refusal() {
        let all = BlockingSet::all_points(&gf(3), 4);
        let tiny = Budgets { subspaces: 10, ..Budgets::default() };
        assert!(matches!(is_strong_blocking(&all, 2, opts(1), &tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn affine_conversion() {
        let f = gf(2);
        let all = BlockingSet::all_points(&f, 3);
        let a = to_affine_blocking(&all).unwrap();
        assert_eq!(a.points.len(), all.len() + 1);
        let f5 = gf(5);
        let w = supply_mds(&f5, 3, 4).unwrap();
        let b = construct_cherry(&Graph::complete(4), &w, &Budgets::default()).unwrap();
        let a = to_affine_blocking(&b).unwrap();
        assert_eq!(a.points.len(), 4 * b.len() + 1);
        assert_eq!(is_affine_blocking(&a, 3, &Budgets::default()).unwrap().result, Outcome::Pass);
        // a proper subset of F_5^3 misses some point
        let mut a2 = a.clone();
        a2.points.pop();
        let r = is_affine_blocking(&a2, 3, &Budgets::default()).unwrap();
        assert_eq!(r.result, Outcome::Fail);
    }

    #[test]
    fn affine_check_matches_brute_force() {
        // hyperplane {x0 = 0} as an affine set misses {x0 = 1}
        let f = gf(3);
        let pts: Vec<Vec<Scalar>> = (0..9).map(|i| vec![0, i % 3, i / 3]).collect();
        let a = AffineSet { field: f.clone(), k: 3, points: pts };
        let r = is_affine_blocking(&a, 1, &Budgets::default()).unwrap();
        assert_eq!(r.result, Outcome::Fail);
        let (q, t) = r.missed.unwrap();
        let qm = Matrix::from_rows(&f, &q).unwrap();
        assert!(a.points.iter().all(|p| qm.mul_vec(p) != t));
    }

    #[test]
    fn minimum_search_small_cases() {
        let b = Budgets::default();
        let r = minimum_size_search(&gf(2), 2, 1, &b).unwrap();
        assert_eq!((r.size, r.exact), (3, true));
        let r = minimum_size_search(&gf(2), 3, 1, &b).unwrap();
        assert!(r.exact);
        assert_eq!(r.size, 6);
        assert!(is_strong_blocking(&r.set, 1, opts(1), &b).unwrap().passed());
        let none = Budgets { search: 0, ..b };
        let r = minimum_size_search(&gf(2), 3, 1, &none).unwrap();
        assert!(!r.exact);
        assert_eq!(r.size, 7);
    }

    #[test]
    fn minimum_search_agrees_with_subset_oracle() {
        // exhaustive over all subsets of PG(2,2) and PG(1,3)
        let b = Budgets::default();
        for (q, k, s) in [(2u32, 3usize, 1usize), (2, 3, 2), (3, 2, 1)] {
            let f = gf(q);
            let all = BlockingSet::all_points(&f, k);
            let n = all.len();
            let best = (0u32..1 << n)
                .filter(|mask| {
                    let pts: Vec<Vec<Scalar>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| all.points()[i].clone()).collect();
                    !pts.is_empty() && {
                        let set = BlockingSet::new(&f, k, pts, Provenance::new("t", Value::Null)).unwrap();
                        is_strong_blocking(&set, s, opts(1), &b).unwrap().passed()
                    }
                })
                .map(|m| m.count_ones() as usize)
                .min()
                .unwrap();
            assert_eq!(minimum_size_search(&f, k, s, &b).unwrap().size, best, "q={q} k={k} s={s}");
        }
    }
}
