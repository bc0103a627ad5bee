//! Dense linear algebra over GF(q): matrices, reduced row echelon form, canonical
//! subspace bases and exhaustive subspace enumeration.

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;

use crate::config::Budgets;
use crate::error::{Budget, Error, Result};
use crate::gf::{FieldSpec, Scalar};

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of a row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidArgument(format!("{bad} is not an element of {field}")));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[Scalar]>>(field: &FieldSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[Scalar]>>(field: &FieldSpec, dim: usize, columns: &[C]) -> Result<Self> {
        let mut m = Self::zeros(field, dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != dim {
                return Err(Error::DimensionMismatch(format!("column of length {} in dimension {dim}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                if !field.contains(x) {
                    return Err(Error::InvalidArgument(format!("{x} is not an element of {field}")));
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(t, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(&self.field, self.row(r), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form. Row space is preserved; zero rows are dropped
    /// from the returned matrix so that `matrix.rows() == rank`.
    pub fn rref(&self) -> Rref {
        if self.field.is_binary() {
            rref_gf2(self)
        } else {
            rref_generic(self)
        }
    }

    pub fn rank(&self) -> usize {
        if self.field.is_binary() {
            rank_gf2(self)
        } else {
            rref_generic(self).rank
        }
    }

    /// Basis (as rows, in RREF) of `{x : self * x = 0}`.
    pub fn null_space(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, f.neg(r.get(i, fc)));
            }
        }
        basis.rref().matrix
    }

    /// True when the matrix is in reduced row echelon form with no zero rows.
    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        for r in 0..self.rows {
            let Some(p) = self.row(r).iter().position(|&x| x != 0) else {
                return false;
            };
            if self.get(r, p) != 1 || last.is_some_and(|l| p <= l) {
                return false;
            }
            if (0..self.rows).any(|o| o != r && self.get(o, p) != 0) {
                return false;
            }
            last = Some(p);
        }
        true
    }
}

#[inline]
pub fn dot(f: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Scales a nonzero vector so its first nonzero coordinate is 1. Returns false for zero.
pub fn normalize(f: &FieldSpec, v: &mut [Scalar]) -> bool {
    let Some(lead) = v.iter().copied().find(|&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = f.inv_nonzero(lead);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}

pub(crate) fn rref_generic(m: &Matrix) -> Rref {
    let f = m.field.clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..a.cols {
                a.data.swap(pr * a.cols + c, row * a.cols + c);
            }
        }
        let inv = f.inv_nonzero(a.get(row, col));
        for c in col..a.cols {
            let v = a.get(row, c);
            a.set(row, c, f.mul(v, inv));
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in col..a.cols {
                let v = f.sub(a.get(r, c), f.mul(factor, a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    a.data.truncate(row * a.cols);
    a.rows = row;
    Rref { matrix: a, rank: row, pivots }
}

fn pack_gf2(m: &Matrix) -> (Vec<Vec<u64>>, usize) {
    let words = m.cols.div_ceil(64);
    let rows = (0..m.rows)
        .map(|r| {
            let mut w = vec![0u64; words];
            for (c, &x) in m.row(r).iter().enumerate() {
                if x != 0 {
                    w[c / 64] |= 1 << (c % 64);
                }
            }
            w
        })
        .collect();
    (rows, words)
}

fn rref_gf2(m: &Matrix) -> Rref {
    let (mut rows, _) = pack_gf2(m);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == rows.len() {
            break;
        }
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(pr, rank);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut out = Matrix::zeros(&m.field, rank, m.cols);
    for (r, row) in rows.iter().take(rank).enumerate() {
        for c in 0..m.cols {
            if row[c / 64] >> (c % 64) & 1 == 1 {
                out.set(r, c, 1);
            }
        }
    }
    Rref { matrix: out, rank, pivots }
}

fn rank_gf2(m: &Matrix) -> usize {
    let (rows, _) = pack_gf2(m);
    Gf2Basis::from_rows(rows.into_iter()).rank()
}

/// Incremental XOR basis used for GF(2) ranks.
#[derive(Default)]
pub(crate) struct Gf2Basis {
    // (pivot word, pivot bit, row)
    rows: Vec<(usize, u64, Vec<u64>)>,
}

impl Gf2Basis {
    fn from_rows(rows: impl Iterator<Item = Vec<u64>>) -> Self {
        let mut b = Gf2Basis::default();
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        for (w, bit, row) in &self.rows {
            if v[*w] & bit != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(w) => {
                let bit = v[w] & v[w].wrapping_neg();
                self.rows.push((w, bit, v));
                true
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Incremental echelon basis over a general field, used to grow a rank one vector at a time.
pub(crate) struct IncrementalBasis<'a> {
    field: &'a FieldSpec,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl<'a> IncrementalBasis<'a> {
    pub(crate) fn new(field: &'a FieldSpec) -> Self {
        IncrementalBasis { field, rows: Vec::new() }
    }

    /// Adds `v`; returns true when it increased the rank.
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(p) => {
                let inv = f.inv_nonzero(v[p]);
                for x in v.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                self.rows.push((p, v));
                true
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// rank(M * N).
pub fn rank_product(m: &Matrix, n: &Matrix) -> Result<usize> {
    Ok(m.mul(n)?.rank())
}

/// A subspace of F_q^k stored as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    /// Canonical basis of the row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let Rref { matrix, pivots, .. } = m.rref();
        SubspaceBasis { ambient_dim: m.cols(), basis: matrix, pivots }
    }

    pub fn full(field: &FieldSpec, k: usize) -> Self {
        Self::from_rows(&Matrix::identity(field, k))
    }

    pub fn zero(field: &FieldSpec, k: usize) -> Self {
        Self::from_rows(&Matrix::zeros(field, 0, k))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let f = self.field();
        let mut v = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(self.basis.row(r)) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// An s x k matrix whose null space is exactly this subspace (s = codim).
    pub fn quotient_map(&self) -> Result<Matrix> {
        if self.codim() == 0 {
            return Err(Error::InvalidArgument("quotient map of the full space".into()));
        }
        if self.dim() == 0 {
            return Ok(Matrix::identity(self.field(), self.ambient_dim));
        }
        Ok(self.basis.null_space())
    }

    /// The subspace `{x : q * x = 0}`.
    pub fn annihilated_by(q: &Matrix) -> Self {
        let ns = q.null_space();
        if ns.rows() == 0 {
            return Self::zero(q.field(), q.cols());
        }
        Self::from_rows(&ns)
    }
}

/// Gaussian binomial coefficient [k choose s]_q: the number of s-dimensional
/// subspaces of F_q^k.
pub fn gaussian_binomial(k: u32, s: u32, q: u32) -> BigUint {
    assert!(s <= k, "gaussian_binomial requires s <= k");
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..s {
        num *= q.pow(k - i) - &one;
        den *= q.pow(i + 1) - &one;
    }
    num / den
}

fn gaussian_binomial_u128(k: usize, s: usize, q: u32) -> Option<u128> {
    u128::try_from(gaussian_binomial(k as u32, s as u32, q)).ok()
}

/// Lexicographic successor of a combination of `0..n`; false when exhausted.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct PivotBlock {
    pivots: Vec<usize>,
    /// (row, column) positions of the free entries, row-major.
    free: Vec<(usize, usize)>,
    start: u64,
}

/// Exhaustive enumerator of the `dim`-dimensional subspaces of F_q^k, in canonical
/// order: pivot sets lexicographically, then free RREF entries as base-q digits
/// (first free entry most significant). Indices are stable, so any contiguous
/// index range is an independent shard.
pub struct SubspaceEnumerator {
    field: FieldSpec,
    k: usize,
    dim: usize,
    blocks: Vec<PivotBlock>,
    total: u64,
}

/// All codimension-`codim` subspaces of F_q^k, refusing when their number exceeds
/// the subspace budget.
pub fn enumerate_subspaces(field: &FieldSpec, k: usize, codim: usize, budgets: &Budgets) -> Result<SubspaceEnumerator> {
    if codim > k {
        return Err(Error::InvalidArgument(format!("codimension {codim} exceeds dimension {k}")));
    }
    SubspaceEnumerator::new(field, k, k - codim, budgets)
}

impl SubspaceEnumerator {
    pub fn new(field: &FieldSpec, k: usize, dim: usize, budgets: &Budgets) -> Result<Self> {
        if dim > k {
            return Err(Error::InvalidArgument(format!("dimension {dim} exceeds {k}")));
        }
        let count = gaussian_binomial_u128(k, dim, field.q()).unwrap_or(u128::MAX);
        budgets.check(Budget::Subspaces, count)?;
        let q = field.q() as u64;
        let mut blocks = Vec::new();
        let mut start = 0u64;
        let mut pivots: Vec<usize> = (0..dim).collect();
        loop {
            let mut free = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..k {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let count = q.pow(free.len() as u32);
            blocks.push(PivotBlock { pivots: pivots.clone(), free, start });
            start += count;
            if dim == 0 || !next_combination(&mut pivots, k) {
                break;
            }
        }
        debug_assert_eq!(start as u128, count);
        Ok(SubspaceEnumerator { field: field.clone(), k, dim, blocks, total: start })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn ambient_dim(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Writes the RREF basis (dim x k, row-major) of subspace `index` into `buf`.
    pub fn fill(&self, index: u64, buf: &mut [Scalar]) {
        debug_assert!(index < self.total);
        debug_assert_eq!(buf.len(), self.dim * self.k);
        let b = match self.blocks.binary_search_by(|b| b.start.cmp(&index)) {
            Ok(i) => &self.blocks[i],
            Err(i) => &self.blocks[i - 1],
        };
        buf.fill(0);
        for (r, &p) in b.pivots.iter().enumerate() {
            buf[r * self.k + p] = 1;
        }
        let q = self.field.q() as u64;
        let mut x = index - b.start;
        for &(r, c) in b.free.iter().rev() {
            buf[r * self.k + c] = (x % q) as Scalar;
            x /= q;
        }
    }

    pub fn get(&self, index: u64) -> SubspaceBasis {
        let mut buf = vec![0; self.dim * self.k];
        self.fill(index, &mut buf);
        let b = match self.blocks.binary_search_by(|b| b.start.cmp(&index)) {
            Ok(i) => &self.blocks[i],
            Err(i) => &self.blocks[i - 1],
        };
        SubspaceBasis {
            ambient_dim: self.k,
            basis: Matrix { field: self.field.clone(), rows: self.dim, cols: self.k, data: buf },
            pivots: b.pivots.clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = SubspaceBasis> + '_ {
        self.iter_range(0..self.total)
    }

    pub fn iter_range(&self, range: Range<u64>) -> impl Iterator<Item = SubspaceBasis> + '_ {
        range.map(move |i| self.get(i))
    }

    /// Splits the index space into `w` contiguous, nearly equal ranges.
    pub fn shards(&self, w: usize) -> Vec<Range<u64>> {
        shard_ranges(self.total, w)
    }
}

pub fn shard_ranges(total: u64, w: usize) -> Vec<Range<u64>> {
    let w = w.max(1) as u64;
    (0..w).map(|i| (total * i / w)..(total * (i + 1) / w)).filter(|r| !r.is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    fn random_matrix(f: &FieldSpec, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.q())).collect();
        Matrix::from_vec(f, r, c, data).unwrap()
    }

    #[test]
    fn rref_small_examples() {
        let f2 = gf(2);
        assert_eq!(Matrix::identity(&f2, 3).rref().rank, 3);
        assert_eq!(Matrix::from_rows(&f2, &[[1, 1], [1, 1]]).unwrap().rank(), 1);
        let f3 = gf(3);
        let r = Matrix::from_rows(&f3, &[[1, 2], [2, 1]]).unwrap().rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix.row(0), &[1, 2]);
    }

    #[test]
    fn gf2_packed_path_matches_generic() {
        let f = gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let r = rng.gen_range(0..8);
            let c = rng.gen_range(1..80);
            let m = random_matrix(&f, r, c, &mut rng);
            assert_eq!(rref_gf2(&m), rref_generic(&m));
            assert_eq!(rank_gf2(&m), rref_generic(&m).rank);
        }
    }

    #[test]
    fn rref_is_idempotent_and_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3, 4, 5, 9] {
            let f = gf(q);
            for _ in 0..50 {
                let m = random_matrix(&f, 4, 6, &mut rng);
                let r = m.rref();
                assert!(r.matrix.rows() == 0 || r.matrix.is_rref());
                assert_eq!(r.matrix.rref().matrix, r.matrix);
                // a random invertible row operation does not change the subspace
                let g = random_matrix(&f, 4, 4, &mut rng);
                if g.rank() == 4 {
                    let m2 = g.mul(&m).unwrap();
                    assert_eq!(SubspaceBasis::from_rows(&m), SubspaceBasis::from_rows(&m2));
                }
            }
        }
    }

    #[test]
    fn subspace_from_rows_examples() {
        let f = gf(2);
        let s = SubspaceBasis::from_rows(&Matrix::from_rows(&f, &[[1, 0, 0], [1, 1, 0]]).unwrap());
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis().row_vecs(), vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(SubspaceBasis::from_rows(&Matrix::zeros(&f, 2, 3)).dim(), 0);
    }

    #[test]
    fn membership_agrees_with_span_oracle() {
        // oracle: v is in the row space iff appending it does not raise the rank
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = gf(3);
        for _ in 0..100 {
            let m = random_matrix(&f, 2, 4, &mut rng);
            let s = SubspaceBasis::from_rows(&m);
            let v: Vec<u32> = (0..4).map(|_| rng.gen_range(0..3)).collect();
            let mut rows = m.row_vecs();
            rows.push(v.clone());
            let ext = Matrix::from_rows(&f, &rows).unwrap();
            assert_eq!(s.contains(&v), ext.rank() == m.rank());
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(5, 0, 7), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(5, 2, 2), BigUint::from(155u32));
        assert_eq!(gaussian_binomial(4, 2, 3), BigUint::from(130u32));
        assert_eq!(gaussian_binomial(3, 1, 5), BigUint::from(31u32));
    }

    #[test]
    fn enumeration_examples() {
        let b = Budgets::default();
        let f2 = gf(2);
        assert_eq!(enumerate_subspaces(&f2, 2, 1, &b).unwrap().len(), 3);
        let e = enumerate_subspaces(&f2, 5, 3, &b).unwrap();
        assert_eq!(e.len(), 155);
        let distinct: HashSet<Vec<Vec<u32>>> = e.iter().map(|s| s.basis().row_vecs()).collect();
        assert_eq!(distinct.len(), 155);
        let full = enumerate_subspaces(&gf(3), 4, 0, &b).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(full.get(0), SubspaceBasis::full(&gf(3), 4));
    }

    #[test]
    fn enumeration_count_matches_gaussian_binomial_exhaustively() {
        let b = Budgets::default();
        for q in [2, 3, 4, 5] {
            let f = gf(q);
            for k in 0..=6usize {
                for codim in 0..=k {
                    if gaussian_binomial(k as u32, codim as u32, q) > BigUint::from(200_000u32) {
                        continue;
                    }
                    let e = enumerate_subspaces(&f, k, codim, &b).unwrap();
                    let mut n = 0u64;
                    for s in e.iter() {
                        assert_eq!(s.dim(), k - codim);
                        n += 1;
                    }
                    assert_eq!(BigUint::from(n), gaussian_binomial(k as u32, (k - codim) as u32, q));
                }
            }
        }
    }

    #[test]
    fn enumeration_outputs_are_canonical_and_distinct() {
        let b = Budgets::default();
        let f = gf(3);
        let e = enumerate_subspaces(&f, 4, 2, &b).unwrap();
        let mut seen = HashSet::new();
        for s in e.iter() {
            assert!(s.basis().is_rref());
            assert_eq!(SubspaceBasis::from_rows(s.basis()), s);
            assert!(seen.insert(s.basis().row_vecs()));
        }
        assert_eq!(seen.len(), 130);
    }

    #[test]
    fn enumeration_budget_refuses() {
        let b = Budgets { subspaces: 100, ..Budgets::default() };
        let err = enumerate_subspaces(&gf(2), 5, 3, &b).err().unwrap();
        assert!(matches!(err, Error::BudgetExceeded { budget: Budget::Subspaces, needed: 155, .. }));
    }

    #[test]
    fn shards_cover_index_space() {
        let b = Budgets::default();
        let e = enumerate_subspaces(&gf(2), 5, 2, &b).unwrap();
        for w in [1, 3, 7, 1000] {
            let shards = e.shards(w);
            let mut next = 0;
            for s in &shards {
                assert_eq!(s.start, next);
                next = s.end;
            }
            assert_eq!(next, e.len());
        }
    }

    #[test]
    fn quotient_map_examples() {
        let f = gf(5);
        // L = {x : x1 = x2 = 0} in F_5^4
        let l = SubspaceBasis::from_rows(&Matrix::from_rows(&f, &[[0, 0, 1, 0], [0, 0, 0, 1]]).unwrap());
        let q = l.quotient_map().unwrap();
        assert_eq!(q.row_vecs(), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert!(SubspaceBasis::full(&f, 3).quotient_map().is_err());
        assert_eq!(SubspaceBasis::zero(&f, 3).quotient_map().unwrap(), Matrix::identity(&f, 3));
    }

    #[test]
    fn quotient_map_annihilates_subspace() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [2, 3, 4, 7] {
            let f = gf(q);
            for _ in 0..50 {
                let m = random_matrix(&f, 3, 6, &mut rng);
                let l = SubspaceBasis::from_rows(&m);
                let qm = l.quotient_map().unwrap();
                assert_eq!(qm.rank(), l.codim());
                for r in 0..l.dim() {
                    assert!(qm.mul_vec(l.basis().row(r)).iter().all(|&x| x == 0));
                }
                assert_eq!(SubspaceBasis::annihilated_by(&qm), l);
            }
        }
    }

    #[test]
    fn rank_product_examples() {
        let f = gf(3);
        let i3 = Matrix::identity(&f, 3);
        assert_eq!(rank_product(&i3, &i3).unwrap(), 3);
        let m = Matrix::zeros(&f, 2, 3);
        assert!(rank_product(&m, &Matrix::zeros(&f, 2, 2)).is_err());
    }

    #[test]
    fn null_space_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = gf(4);
        for _ in 0..50 {
            let m = random_matrix(&f, 3, 7, &mut rng);
            let ns = m.null_space();
            assert_eq!(ns.rows() + m.rank(), 7);
            for r in 0..ns.rows() {
                assert!(m.mul_vec(ns.row(r)).iter().all(|&x| x == 0));
            }
        }
    }
}
