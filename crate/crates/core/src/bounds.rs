//! Upper bound `U(n)`, the lower-bound chain `E(n) ≥ G(n) ≥ H(n)`, the greedy
//! triangular decomposition `ν(m)`, and the checks around them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::largest_binomial2_at_most;
use crate::error::{Error, Result};
use crate::partitions::{d_statistic, enumerate_partitions, euler_phi, partition_counts};
use crate::rank::Method;

fn binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// `m = C(k_1,2) + ... + C(k_r,2)` with each `k_i` as large as possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyDecomposition {
    pub m: u64,
    pub ks: Vec<u64>,
    pub nu: u64,
}

impl std::fmt::Display for GreedyDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = ", self.m)?;
        if self.ks.is_empty() {
            f.write_str("0")?;
        }
        for (i, k) in self.ks.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "C({k},2)")?;
        }
        write!(f, ", ν={}", self.nu)
    }
}

/// Greedy decomposition of `m`; `ν(0) = 0` with no parts.
pub fn nu(m: u64) -> GreedyDecomposition {
    let mut rest = m;
    let mut ks = Vec::new();
    while rest > 0 {
        let k = largest_binomial2_at_most(rest);
        ks.push(k);
        rest -= binom2(k);
    }
    let nu = ks.iter().sum();
    GreedyDecomposition { m, ks, nu }
}

/// `U(0), ..., U(n_max)`.
pub fn compute_u(n_max: usize) -> Vec<i64> {
    let mut u = Vec::with_capacity(n_max + 1);
    u.push(1i64);
    for n in 1..=n_max {
        let mut value = (n * (n - 1) / 2 + 1) as i64;
        for j in 1..=n {
            let phi = euler_phi(j as u64).expect("j >= 1") as i64;
            value -= (phi - u[n % j]).max(0);
        }
        u.push(value);
    }
    u
}

fn d_values(n: usize) -> BTreeSet<u64> {
    enumerate_partitions(n).iter().map(d_statistic).collect()
}

/// Number of distinct `d(λ)` over `λ ⊢ n`.
pub fn compute_e(n: usize) -> usize {
    d_values(n).len()
}

/// `G(n)`: one less than the least positive integer that is not a `d(λ)`.
pub fn compute_g(n: usize) -> u64 {
    let values = d_values(n);
    (1u64..).find(|m| !values.contains(m)).expect("d values are finite") - 1
}

/// `H(n)`: the largest `N` with `ν(m) ≤ n` for all `m ≤ N`.
pub fn compute_h(n: usize) -> Result<u64> {
    let limit = (n as u64) * (n as u64) + 1;
    for m in 1..=limit {
        if nu(m).nu > n as u64 {
            return Ok(m - 1);
        }
    }
    Err(Error::InternalLimit(format!(
        "H({n}) scan passed m = {limit} without finding ν(m) > {n}"
    )))
}

/// Exact test of `ν ≤ √(2m) + 3·m^{1/4}`.
///
/// With `s = √(2m)` and `ν > s`, the claim is `(ν - s)^4 ≤ 81m`. Expanding
/// with `s² = 2m` gives `A - s·B ≤ 81m` where `A = ν⁴ + 12ν²m + 4m²` and
/// `B = 4ν³ + 8νm > 0`, which reduces to integer comparisons.
pub fn nu_within_bound(nu: u64, m: u64) -> bool {
    let nu = BigInt::from(nu);
    let m = BigInt::from(m);
    let nu2 = &nu * &nu;
    if nu2 <= BigInt::from(2) * &m {
        return true;
    }
    let a = &nu2 * &nu2 + BigInt::from(12) * &nu2 * &m + BigInt::from(4) * &m * &m;
    let b = BigInt::from(4) * &nu2 * &nu + BigInt::from(8) * &nu * &m;
    let lhs = a - BigInt::from(81) * &m;
    if lhs <= BigInt::from(0) {
        return true;
    }
    &lhs * &lhs <= BigInt::from(2) * &m * &b * &b
}

/// `√(2m) + 3·m^{1/4}` in floating point, for reporting only.
pub fn nu_bound_approx(m: u64) -> f64 {
    let m = m as f64;
    (2.0 * m).sqrt() + 3.0 * m.powf(0.25)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuInequalityReport {
    pub m_lo: u64,
    pub m_hi: u64,
    pub checked: u64,
    /// Every `m` in range with `ν(m) > √(2m) + 3·m^{1/4}`, decided exactly.
    pub violations: Vec<u64>,
    /// Smallest `bound - ν(m)` over the range (floating point, informational).
    pub min_slack: f64,
    pub min_slack_at: u64,
}

/// Checks `ν(m) ≤ √(2m) + 3·m^{1/4}` for every `m` in `m_lo..=m_hi`.
pub fn check_nu_inequality(m_lo: u64, m_hi: u64) -> Result<NuInequalityReport> {
    if m_lo < 405 {
        return Err(Error::InvalidArgument(format!(
            "the ν inequality is claimed from m = 405 on, got m_lo = {m_lo}"
        )));
    }
    if m_lo > m_hi {
        return Err(Error::InvalidArgument(format!(
            "empty range {m_lo}..={m_hi}"
        )));
    }
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    let mut min_slack_at = m_lo;
    for m in m_lo..=m_hi {
        let v = nu(m).nu;
        if !nu_within_bound(v, m) {
            violations.push(m);
        }
        let slack = nu_bound_approx(m) - v as f64;
        if slack < min_slack {
            min_slack = slack;
            min_slack_at = m;
        }
    }
    Ok(NuInequalityReport {
        m_lo,
        m_hi,
        checked: m_hi - m_lo + 1,
        violations,
        min_slack,
        min_slack_at,
    })
}

/// `(max ν(m), largest m attaining it)` over `0 ≤ m < limit`.
pub fn max_nu_below(limit: u64) -> Option<(u64, u64)> {
    (0..limit)
        .map(|m| (nu(m).nu, m))
        .max()
}

/// The quantity `-D(n) + n(n-1)/2 + 1 - Σ_j max(0, φ(j) - D(n - j⌊n/j⌋))`,
/// evaluated from exact `D` values. `D(0) = 1` is supplied when absent.
pub fn gap_statistic(n: usize, d: &BTreeMap<usize, u64>) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("gap statistic needs n >= 1".into()));
    }
    let lookup = |k: usize| d.get(&k).copied().or((k == 0).then_some(1));
    let mut needed: BTreeSet<usize> = (1..=n).map(|j| n % j).collect();
    needed.insert(n);
    let missing: Vec<usize> = needed.into_iter().filter(|&k| lookup(k).is_none()).collect();
    if !missing.is_empty() {
        return Err(Error::MissingDValues(missing));
    }
    let mut value = (n * (n - 1) / 2 + 1) as i64 - lookup(n).unwrap() as i64;
    for j in 1..=n {
        let phi = euler_phi(j as u64)? as i64;
        value -= (phi - lookup(n % j).unwrap() as i64).max(0);
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub h: u64,
    pub u: i64,
    /// `H(n) / (n²/2)`
    pub h_ratio: f64,
    /// `U(n) / (n²/2)`
    pub u_ratio: f64,
    /// `(n²/2 - H(n)) / n^{3/2}`
    pub c_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsReport {
    pub rows: Vec<AsymptoticsRow>,
    pub max_c_hat: f64,
    pub max_c_hat_at: usize,
}

/// Ratios of `H` and `U` to `n²/2` and the empirical constant `ĉ(n)` for
/// `2 ≤ n ≤ n_max`. Evidence only; nothing is asserted.
pub fn asymptotics_probe(n_max: usize) -> Result<AsymptoticsReport> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(
            "asymptotics probe needs n_max >= 2".into(),
        ));
    }
    let u = compute_u(n_max);
    let mut rows = Vec::with_capacity(n_max - 1);
    for n in 2..=n_max {
        let h = compute_h(n)?;
        let half_sq = (n * n) as f64 / 2.0;
        rows.push(AsymptoticsRow {
            n,
            h,
            u: u[n],
            h_ratio: h as f64 / half_sq,
            u_ratio: u[n] as f64 / half_sq,
            c_hat: (half_sq - h as f64) / (n as f64).powf(1.5),
        });
    }
    let best = rows
        .iter()
        .max_by(|a, b| a.c_hat.total_cmp(&b.c_hat))
        .expect("at least one row");
    Ok(AsymptoticsReport {
        max_c_hat: best.c_hat,
        max_c_hat_at: best.n,
        rows,
    })
}

/// A value of `D(n)` with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DValue {
    pub value: u64,
    pub method: Method,
}

/// Every bound for one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: Option<DValue>,
    #[serde(rename = "U")]
    pub u: i64,
    #[serde(rename = "E")]
    pub e: u64,
    #[serde(rename = "G")]
    pub g: u64,
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "P")]
    pub p: u128,
    pub eq2: u64,
    pub gap: Option<i64>,
}

/// The CSV projection: `n,D,U,E,G,H,P,eq2`, with an empty `D` when unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsCsvRow {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    #[serde(rename = "U")]
    pub u: i64,
    #[serde(rename = "E")]
    pub e: u64,
    #[serde(rename = "G")]
    pub g: u64,
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "P")]
    pub p: u128,
    pub eq2: u64,
}

impl From<&BoundsRecord> for BoundsCsvRow {
    fn from(r: &BoundsRecord) -> Self {
        BoundsCsvRow {
            n: r.n,
            d: r.d.map(|d| d.value),
            u: r.u,
            e: r.e,
            g: r.g,
            h: r.h,
            p: r.p,
            eq2: r.eq2,
        }
    }
}

/// Bounds for `1..=n_max`. `d` supplies known `D` values; gaps are filled
/// wherever every `D` value they need is known.
pub fn bounds_records(n_max: usize, d: &BTreeMap<usize, DValue>) -> Result<Vec<BoundsRecord>> {
    let u = compute_u(n_max);
    let p = partition_counts(n_max);
    let plain: BTreeMap<usize, u64> = d.iter().map(|(&k, v)| (k, v.value)).collect();
    (1..=n_max)
        .map(|n| {
            Ok(BoundsRecord {
                n,
                d: d.get(&n).copied(),
                u: u[n],
                e: compute_e(n) as u64,
                g: compute_g(n),
                h: compute_h(n)?,
                p: u128::try_from(&p[n]).map_err(|_| {
                    Error::InvalidArgument(format!("P({n}) does not fit in 128 bits"))
                })?,
                eq2: (n * (n - 1) / 2 + 1) as u64,
                gap: gap_statistic(n, &plain).ok(),
            })
        })
        .collect()
}

/// Human-readable descriptions of every broken link in
/// `H ≤ G ≤ E ≤ D ≤ U ≤ n(n-1)/2 + 1`. Empty when the chain holds.
pub fn chain_violations(records: &[BoundsRecord]) -> Vec<String> {
    let mut out = Vec::new();
    for r in records {
        let mut links: Vec<(&str, i128)> = vec![
            ("H", r.h as i128),
            ("G", r.g as i128),
            ("E", r.e as i128),
        ];
        if let Some(d) = r.d {
            links.push(("D", d.value as i128));
        }
        links.push(("U", r.u as i128));
        links.push(("eq2", r.eq2 as i128));
        for w in links.windows(2) {
            if w[0].1 > w[1].1 {
                out.push(format!(
                    "n={}: {}={} > {}={}",
                    r.n, w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
        }
    }
    out
}

pub fn write_csv<W: std::io::Write>(records: &[BoundsRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in records {
        w.serialize(BoundsCsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<BoundsCsvRow>> {
    let mut rd = csv::Reader::from_reader(input);
    rd.deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Re-emits parsed CSV rows in the same format [`write_csv`] produces.
pub fn write_csv_rows<W: std::io::Write>(rows: &[BoundsCsvRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
