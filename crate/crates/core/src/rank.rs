//! Rank of the partition-by-coefficient matrix, which is `D(n)`, and the
//! integer relations among its rows.
//!
//! Row `λ` holds the coefficients `0..=T` of `f_λ(q)` with `T = n(n-1)/2`;
//! see [`crate::series::truncation_degree`] for why that truncation loses
//! nothing. The matrix has integer entries, so its rank over `ℚ` is also its
//! rank over `ℂ`.
//!
//! Two routes compute the rank:
//!
//! - [`rank_exact`]: fraction-free (Bareiss) elimination over `ℤ`. Certifying.
//! - [`rank_modular`]: streaming row echelon form modulo several word-size
//!   primes. Each prime's rank is a proven lower bound; agreement between
//!   primes is strong evidence of the true rank.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::{modular_row_unchecked, series_row, truncation_degree, TruncatedSeries};

/// Default memory budget for materialised matrices, in MiB.
pub const DEFAULT_MEMORY_BUDGET_MIB: u64 = 2048;

/// Estimated bytes per stored matrix entry: the `BigInt` header plus a couple
/// of limbs.
const BYTES_PER_ENTRY: u64 = 48;

/// The two smallest primes above `2^20`.
pub const DEFAULT_PRIMES: [u64; 2] = [1_048_583, 1_048_589];

/// How a value of `D(n)` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "modular-consensus")]
    ModularConsensus,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::ModularConsensus => "modular-consensus",
        })
    }
}

/// Rows `f_λ` truncated at `T`, in canonical partition order.
#[derive(Debug, Clone)]
pub struct CoefficientMatrix {
    n: usize,
    row_index: Vec<Partition>,
    entries: Vec<Vec<BigInt>>,
}

impl CoefficientMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation_degree(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len() - 1)
    }

    pub fn row_index(&self) -> &[Partition] {
        &self.row_index
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.truncation_degree() + 1
    }
}

fn estimated_mib(rows: u64, cols: u64) -> u64 {
    (rows * cols * BYTES_PER_ENTRY).div_ceil(1 << 20)
}

/// Builds the matrix for `n` under the default memory budget.
pub fn build_matrix(n: usize) -> Result<CoefficientMatrix> {
    build_matrix_with_budget(n, DEFAULT_MEMORY_BUDGET_MIB)
}

/// Builds the matrix for `n`, refusing if it would need more than
/// `budget_mib` MiB.
pub fn build_matrix_with_budget(n: usize, budget_mib: u64) -> Result<CoefficientMatrix> {
    let t = truncation_degree(n)?;
    let rows = crate::partitions::count_partitions(n);
    let needed_mib = u64::try_from(&rows)
        .ok()
        .and_then(|r| r.checked_mul(t as u64 + 1))
        .and_then(|e| e.checked_mul(BYTES_PER_ENTRY))
        .map_or(u64::MAX, |bytes| bytes.div_ceil(1 << 20));
    if needed_mib > budget_mib {
        return Err(Error::MemoryBudget {
            n,
            needed_mib,
            budget_mib,
        });
    }
    let row_index = enumerate_partitions(n);
    let entries = row_index
        .par_iter()
        .map(|lambda| series_row(lambda, t).into_coeffs())
        .collect();
    debug_assert_eq!(estimated_mib(row_index.len() as u64, t as u64 + 1), needed_mib);
    Ok(CoefficientMatrix {
        n,
        row_index,
        entries,
    })
}

/// Rank over `ℚ` by fraction-free elimination.
///
/// Columns are processed left to right; the pivot for a column is the first
/// remaining row, in canonical partition order, with a nonzero entry there.
pub fn rank_exact(matrix: &CoefficientMatrix) -> usize {
    integer_rank(matrix.entries.clone())
}

/// Fraction-free elimination on an arbitrary integer matrix. Every entry
/// after step `k` is a `k×k` minor, so the divisions are exact.
pub fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut active: Vec<usize> = (0..rows.len()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut tmp = BigInt::zero();

    for c in 0..cols {
        let Some(pos) = active.iter().position(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        let pivot_row = std::mem::take(&mut rows[active.remove(pos)]);
        let pivot = &pivot_row[c];

        for &r in &active {
            let row = &mut rows[r];
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                tmp.clone_from(&row[j]);
                tmp *= pivot;
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    tmp -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() {
                    std::mem::take(&mut tmp)
                } else {
                    &tmp / &prev
                };
            }
        }
        // Rows reduced to zero stay zero.
        active.retain(|&r| rows[r][c + 1..].iter().any(|x| !x.is_zero()));
        prev = pivot.clone();
        rank += 1;
        if active.is_empty() {
            break;
        }
    }
    rank
}

/// Whether the per-prime ranks agreed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankStatus {
    Consensus,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularRank {
    /// `(prime, rank mod prime)` in the order the primes were given.
    pub per_prime: Vec<(u64, usize)>,
    /// The common rank, or the maximum when the primes disagree. Either way a
    /// lower bound for the rank over `ℚ`.
    pub rank: usize,
    pub status: RankStatus,
}

fn check_primes(primes: &[u64]) -> Result<()> {
    if primes.len() < 2 {
        return Err(Error::InvalidArgument(
            "modular rank needs at least two primes".into(),
        ));
    }
    for (i, &p) in primes.iter().enumerate() {
        if p <= 1 << 20 {
            return Err(Error::InvalidArgument(format!(
                "prime {p} must exceed 2^20"
            )));
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if primes[..i].contains(&p) {
            return Err(Error::InvalidArgument(format!("prime {p} given twice")));
        }
    }
    Ok(())
}

/// Row echelon basis over `GF(p)`, grown one row at a time.
#[derive(Debug, Clone)]
pub struct ModularEchelon {
    p: u64,
    // Each basis row is monic at its pivot and zero at every earlier
    // basis row's pivot.
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModularEchelon {
    pub fn new(p: u64) -> Self {
        ModularEchelon {
            p,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `row` against the basis and keeps it if it is independent.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        for (pivot, b) in &self.basis {
            let f = row[*pivot];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &y) in row[*pivot..].iter_mut().zip(&b[*pivot..]) {
                if y != 0 {
                    *x = (*x + arith::mul_mod(neg, y, p)) % p;
                }
            }
        }
        let Some(pivot) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = arith::inv_mod_prime(row[pivot], p);
        for x in &mut row[pivot..] {
            *x = arith::mul_mod(*x, inv, p);
        }
        self.basis.push((pivot, row));
        true
    }
}

fn rank_mod_prime(n: usize, t: usize, p: u64) -> usize {
    let mut echelon = ModularEchelon::new(p);
    for lambda in crate::partitions::Partitions::new(n) {
        if echelon.rank() == t + 1 {
            break;
        }
        echelon.insert(modular_row_unchecked(&lambda, t, p));
    }
    echelon.rank()
}

/// Rank of the matrix for `n` modulo each prime, streaming rows without
/// materialising the matrix. Primes run in parallel.
pub fn rank_modular(n: usize, primes: &[u64]) -> Result<ModularRank> {
    check_primes(primes)?;
    let t = truncation_degree(n)?;
    let per_prime: Vec<(u64, usize)> = primes
        .par_iter()
        .map(|&p| (p, rank_mod_prime(n, t, p)))
        .collect();
    let rank = per_prime.iter().map(|&(_, r)| r).max().unwrap_or(0);
    let status = if per_prime.iter().all(|&(_, r)| r == rank) {
        RankStatus::Consensus
    } else {
        RankStatus::Inconsistent
    };
    Ok(ModularRank {
        per_prime,
        rank,
        status,
    })
}

/// `D(n)` by the requested method.
///
/// A modular run whose primes disagree falls back to the exact route, so a
/// returned value is always either exact or a consensus.
pub fn compute_dimension(
    n: usize,
    method: Method,
    primes: &[u64],
    budget_mib: u64,
) -> Result<crate::bounds::DValue> {
    use crate::bounds::DValue;
    if method == Method::ModularConsensus {
        let r = rank_modular(n, primes)?;
        if r.status == RankStatus::Consensus {
            return Ok(DValue {
                value: r.rank as u64,
                method,
            });
        }
    }
    let m = build_matrix_with_budget(n, budget_mib)?;
    Ok(DValue {
        value: rank_exact(&m) as u64,
        method: Method::Exact,
    })
}

/// An integer relation `Σ a_λ f_λ = 0` among the generating functions of
/// partitions of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub n: usize,
    pub terms: Vec<Term>,
    #[serde(default)]
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub partition: Partition,
    #[serde(with = "bigint_number")]
    pub coeff: BigInt,
}

/// JSON document holding the relations for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSet {
    pub n: usize,
    pub relations: Vec<RelationTerms>,
}

/// The serialised form of one relation (the `n` lives on the enclosing set).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerms {
    pub terms: Vec<Term>,
    #[serde(default)]
    pub verified: bool,
}

impl CertificateSet {
    pub fn new(n: usize, certs: &[RelationCertificate]) -> Self {
        CertificateSet {
            n,
            relations: certs
                .iter()
                .map(|c| RelationTerms {
                    terms: c.terms.clone(),
                    verified: c.verified,
                })
                .collect(),
        }
    }

    pub fn certificates(&self) -> Vec<RelationCertificate> {
        self.relations
            .iter()
            .map(|r| RelationCertificate {
                n: self.n,
                terms: r.terms.clone(),
                verified: r.verified,
            })
            .collect()
    }
}

// Integers in certificate JSON are plain numbers of any size.
mod bigint_number {
    use super::*;
    use serde::de::Error as _;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        let num: serde_json::Number = v
            .to_string()
            .parse()
            .map_err(serde::ser::Error::custom)?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let num = serde_json::Number::deserialize(d)?;
        num.as_str().parse().map_err(D::Error::custom)
    }
}

impl RelationCertificate {
    /// Builds a certificate from `(partition, coefficient)` pairs, dropping
    /// zero coefficients and sorting into canonical partition order.
    /// Not verified.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, BigInt)>,
    {
        let mut terms: Vec<Term> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(partition, coeff)| Term { partition, coeff })
            .collect();
        // Canonical order is descending lexicographic.
        terms.sort_by(|a, b| b.partition.parts().cmp(a.partition.parts()));
        RelationCertificate {
            n,
            terms,
            verified: false,
        }
    }

    /// Divides out the content and makes the first coefficient positive.
    pub fn normalize(&mut self) {
        let g = self
            .terms
            .iter()
            .fold(BigInt::zero(), |g, t| g.gcd(&t.coeff));
        if g.is_zero() {
            return;
        }
        let flip = self.terms[0].coeff.is_negative();
        for t in &mut self.terms {
            t.coeff /= &g;
            if flip {
                t.coeff = -std::mem::take(&mut t.coeff);
            }
        }
    }

    /// Coefficient vector indexed by `enumerate_partitions(n)`.
    pub fn dense(&self, index: &[Partition]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); index.len()];
        for t in &self.terms {
            if let Ok(i) = index.binary_search_by(|p| t.partition.parts().cmp(p.parts()))
            {
                v[i] = t.coeff.clone();
            }
        }
        v
    }
}

impl fmt::Display for RelationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if t.coeff.is_negative() { "-" } else { "+" };
            if i == 0 {
                if t.coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}·f{}", t.coeff.abs(), t.partition)?;
        }
        f.write_str(" = 0")
    }
}

/// Exact check that `Σ a_λ f_λ` vanishes through degree `n(n-1)/2`, which
/// proves the identity of rational functions.
///
/// Empty certificates, zero coefficients and partitions of the wrong size
/// are rejected.
pub fn verify_certificate(cert: &RelationCertificate) -> bool {
    let Ok(t) = truncation_degree(cert.n) else {
        return false;
    };
    if cert.terms.is_empty()
        || cert
            .terms
            .iter()
            .any(|term| term.coeff.is_zero() || term.partition.n() != cert.n)
    {
        return false;
    }
    let mut total = vec![BigInt::zero(); t + 1];
    for term in &cert.terms {
        let row = series_row(&term.partition, t);
        for (acc, c) in total.iter_mut().zip(row.coeffs()) {
            *acc += &term.coeff * c;
        }
    }
    TruncatedSeries::from_coeffs(total).is_zero()
}

/// A basis of the integer relations among the rows of the matrix for `n`:
/// `P(n) - D(n)` primitive, leading-positive, verified certificates.
///
/// Computed by fraction-free Gauss-Jordan elimination on the transpose. Each
/// non-pivot partition `μ` yields one relation expressing `f_μ` through the
/// pivot partitions before it in canonical order.
pub fn nullspace_certificates(n: usize) -> Result<Vec<RelationCertificate>> {
    let matrix = build_matrix(n)?;
    Ok(nullspace_of(&matrix))
}

pub fn nullspace_of(matrix: &CoefficientMatrix) -> Vec<RelationCertificate> {
    let index = matrix.row_index();
    let cols = matrix.num_rows();
    let t = matrix.truncation_degree();
    // Transpose: one row per coefficient degree, one column per partition.
    let mut a: Vec<Vec<BigInt>> = (0..=t)
        .map(|deg| matrix.rows().iter().map(|r| r[deg].clone()).collect())
        .collect();
    let (pivots, det) = fraction_free_rref(&mut a, cols);

    let mut certs = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        // A x = 0 with x_free = det and x_{pivot_i} = -a[i][free].
        let mut terms = vec![(index[free].clone(), det.clone())];
        for (i, &pc) in pivots.iter().enumerate() {
            terms.push((index[pc].clone(), -a[i][free].clone()));
        }
        let mut cert = RelationCertificate::from_terms(matrix.n(), terms);
        cert.normalize();
        cert.verified = verify_certificate(&cert);
        certs.push(cert);
    }
    certs
}

/// Fraction-free Gauss-Jordan. On return the first `rank` rows are in
/// reduced form with every pivot equal to the returned determinant.
fn fraction_free_rref(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, BigInt) {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = std::mem::take(&mut a[r]);
        let pivot = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        a[r] = pivot_row;
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    // Earlier pivots were scaled along the way and all equal `prev` now.
    debug_assert!(pivots
        .iter()
        .enumerate()
        .all(|(i, &c)| a[i][c] == prev));
    (pivots, prev)
}

/// Whether `candidate` lies in the `ℚ`-span of `basis`.
pub fn span_contains(basis: &[RelationCertificate], candidate: &RelationCertificate) -> bool {
    let index = enumerate_partitions(candidate.n);
    if basis.iter().any(|b| b.n != candidate.n) {
        return false;
    }
    let mut rows: Vec<Vec<BigInt>> = basis.iter().map(|b| b.dense(&index)).collect();
    let base_rank = integer_rank(rows.clone());
    rows.push(candidate.dense(&index));
    integer_rank(rows) == base_rank
}
