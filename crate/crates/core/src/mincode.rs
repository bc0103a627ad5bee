//! Linear codes from point sets, supports, and brute-force s-minimality.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::construct::{BlockingSet, Provenance};
use crate::error::{invalid, Budget, Error, Result};
use crate::gf::{FieldSpec, Scalar};
use crate::linalg::{Matrix, SubspaceBasis, SubspaceEnumerator};
use crate::supply::{min_distance, projective_messages, PointSupply, SupplyProvenance};
use crate::verify::{is_strong_blocking, Outcome, VerifyOptions};

/// A linear [n, k] code given by a full-rank k x n generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

impl LinearCode {
    pub fn new(generator: Matrix) -> Result<Self> {
        if generator.rank() != generator.rows() {
            return Err(invalid(format!(
                "generator has rank {} < k = {}",
                generator.rank(),
                generator.rows()
            )));
        }
        Ok(LinearCode { generator })
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn field(&self) -> &FieldSpec {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn encode(&self, message: &[Scalar]) -> Vec<Scalar> {
        self.generator.transpose().mul_vec(message)
    }

    pub fn min_distance(&self, budgets: &Budgets) -> Result<usize> {
        min_distance(&self.generator, budgets)?.ok_or_else(|| Error::Consistency("full-rank code with a zero codeword".into()))
    }
}

/// The code whose generator columns are the points of B.
pub fn blocking_to_code(b: &BlockingSet) -> Result<LinearCode> {
    let g = b.to_columns();
    if g.rank() < b.k() {
        return Err(invalid("points do not span F_q^k, generator would be rank deficient"));
    }
    LinearCode::new(g)
}

/// The point set of a code's generator columns (which must be distinct projective points).
pub fn code_to_blocking(c: &LinearCode) -> Result<BlockingSet> {
    PointSupply::new(c.generator().clone(), SupplyProvenance::File)?;
    let b = BlockingSet::new(c.field(), c.k(), c.generator().columns(), Provenance::new("code-columns", serde_json::json!({ "n": c.n() })))?;
    Ok(b)
}

/// Coordinates where some vector of the row space of `x` is nonzero.
pub fn support(x: &SubspaceBasis) -> Vec<usize> {
    let b = x.basis();
    (0..b.cols()).filter(|&c| (0..b.rows()).any(|r| b.get(r, c) != 0)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolatingPair {
    /// Basis of X (rows in F_q^n) with supp(X) contained in supp(Y).
    pub smaller: Vec<Vec<Scalar>>,
    pub larger: Vec<Vec<Scalar>>,
    pub smaller_support: Vec<usize>,
    pub larger_support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityReport {
    pub s: usize,
    pub subspaces_examined: u64,
    pub result: Outcome,
    pub violating_pair: Option<ViolatingPair>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }
}

type Bits = Vec<u64>;

fn support_bits(rows: &Matrix) -> Bits {
    let mut bits = vec![0u64; rows.cols().div_ceil(64)];
    for c in 0..rows.cols() {
        if (0..rows.rows()).any(|r| rows.get(r, c) != 0) {
            bits[c / 64] |= 1 << (c % 64);
        }
    }
    bits
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn bits_to_vec(b: &Bits) -> Vec<usize> {
    (0..b.len() * 64).filter(|&i| b[i / 64] >> (i % 64) & 1 == 1).collect()
}

/// Whether the supports of all s-dimensional subcodes form an antichain.
pub fn is_s_minimal(c: &LinearCode, s: usize, budgets: &Budgets) -> Result<MinimalityReport> {
    let (f, k) = (c.field(), c.k());
    if s == 0 || s > k {
        return Err(invalid(format!("need 1 <= s <= k, got s={s}, k={k}")));
    }
    let e = SubspaceEnumerator::new(f, k, s, budgets)?;
    let total = e.len();
    budgets.check(Budget::Subsets, (total as u128) * (total as u128) / 2)?;
    let g = c.generator();
    let supports: Vec<Bits> = (0..total)
        .into_par_iter()
        .map(|i| {
            let mut buf = vec![0; s * k];
            e.fill(i, &mut buf);
            let m = Matrix::from_vec(f, s, k, buf).unwrap();
            support_bits(&m.mul(g).unwrap())
        })
        .collect();
    let mut order: Vec<usize> = (0..supports.len()).collect();
    let pop = |b: &Bits| b.iter().map(|x| x.count_ones()).sum::<u32>();
    order.sort_by_key(|&i| (pop(&supports[i]), i));
    let hit = (0..order.len()).into_par_iter().find_map_first(|a| {
        let x = &supports[order[a]];
        order[a + 1..].iter().find(|&&j| subset(x, &supports[j])).map(|&j| (order[a], j))
    });
    let violating_pair = hit.map(|(x, y)| {
        let code_rows = |i: u64| e.get(i).basis().mul(g).unwrap();
        let (mx, my) = (code_rows(x as u64), code_rows(y as u64));
        ViolatingPair {
            smaller: mx.row_vecs(),
            larger: my.row_vecs(),
            smaller_support: bits_to_vec(&supports[x]),
            larger_support: bits_to_vec(&supports[y]),
        }
    });
    Ok(MinimalityReport {
        s,
        subspaces_examined: total,
        result: if violating_pair.is_some() { Outcome::Fail } else { Outcome::Pass },
        violating_pair,
    })
}

/// Classical minimality: no nonzero codeword's support contains the support of a
/// non-proportional codeword.
pub fn is_minimal_classical(c: &LinearCode) -> bool {
    let f = c.field();
    let words: Vec<Vec<Scalar>> = projective_messages(f, c.k()).map(|m| c.encode(&m)).collect();
    let supp = |w: &[Scalar]| -> Vec<usize> { (0..w.len()).filter(|&i| w[i] != 0).collect() };
    let sups: Vec<Vec<usize>> = words.iter().map(|w| supp(w)).collect();
    !sups.iter().enumerate().any(|(i, a)| {
        sups.iter().enumerate().any(|(j, b)| i != j && a.iter().all(|x| b.contains(x)))
    })
}

/// (strong s-blocking of the columns, s-minimality of the row space); the two must agree.
pub fn duality_check(columns: &Matrix, s: usize, budgets: &Budgets) -> Result<(bool, bool)> {
    PointSupply::new(columns.clone(), SupplyProvenance::File)?;
    let code = LinearCode::new(columns.clone())?;
    let b = code_to_blocking(&code)?;
    let blocking = is_strong_blocking(&b, s, VerifyOptions::default(), budgets)?.passed();
    let minimal = is_s_minimal(&code, s, budgets)?.passed();
    if blocking != minimal {
        return Err(Error::Consistency(format!(
            "strong {s}-blocking = {blocking} but {s}-minimal = {minimal}"
        )));
    }
    Ok((blocking, minimal))
}
