//! Truncated power series for the column generating functions
//! `f_λ(q) = 1 / ∏ (1 - q^{λ_i})`.
//!
//! The coefficient of `q^N` in `f_λ` counts nonnegative solutions of
//! `λ_1 x_1 + ... + λ_k x_k = N`, which is the value of the character of the
//! `N`-th symmetric power on a permutation of cycle type `λ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::partitions::{d_statistic, Partition};

/// Exact coefficients `c_0, ..., c_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { coeffs }
    }

    /// The constant series 1 truncated at degree `t`.
    pub fn one(t: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); t + 1];
        coeffs[0] = BigInt::one();
        TruncatedSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplies in place by `1 / (1 - q^s)`: a running prefix sum with
    /// stride `s`.
    pub fn divide_by_one_minus_q_pow(&mut self, s: usize) {
        assert!(s > 0);
        for i in s..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] += &lo[i - s];
        }
    }

    /// Multiplies in place by `1 - q^s`.
    pub fn multiply_by_one_minus_q_pow(&mut self, s: usize) {
        assert!(s > 0);
        for i in (s..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            hi[0] -= &lo[i - s];
        }
    }

    /// Multiplies in place by `q^s`, dropping terms past the truncation.
    pub fn shift(&mut self, s: usize) {
        let len = self.coeffs.len();
        self.coeffs.rotate_right(s.min(len));
        for c in &mut self.coeffs[..s.min(len)] {
            *c = BigInt::zero();
        }
    }
}

/// Power of each cyclotomic polynomial `Φ_j` in the denominator of `f_λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicProfile {
    // multiplicities[j - 1] is the power of Φ_j, for 1 <= j <= n.
    multiplicities: Vec<usize>,
}

impl CyclotomicProfile {
    /// Power of `Φ_j`; zero for `j` outside `1..=n`.
    pub fn multiplicity(&self, j: usize) -> usize {
        if j == 0 {
            return 0;
        }
        self.multiplicities.get(j - 1).copied().unwrap_or(0)
    }

    /// `(j, multiplicity)` pairs for `j = 1..=n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| (i + 1, m))
    }

    /// Degree of `∏_j Φ_j^{m_j}`, which equals `Σ λ_i`.
    pub fn denominator_degree(&self) -> u64 {
        self.iter()
            .map(|(j, m)| {
                crate::partitions::euler_phi(j as u64).expect("j >= 1") * m as u64
            })
            .sum()
    }
}

/// Truncation degree `T = n(n-1)/2` used for every matrix of size `n`.
///
/// Soundness: put `Σ a_λ f_λ` over the common denominator
/// `Q(q) = (1-q)(1-q^2)...(1-q^n)`. Every `f_λ · Q` is a polynomial of degree
/// `n(n+1)/2 - n = T`, so the numerator `R = Q · Σ a_λ f_λ` has degree at most
/// `T`. Since `Q(0) = 1`, the coefficients of `R` up to `q^T` are a unimodular
/// lower-triangular transform of the series coefficients up to `q^T`. Hence
/// the combination vanishes identically iff its coefficients `0..=T` vanish,
/// and the rank of the truncated rows equals `dim F_n`.
pub fn truncation_degree(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "truncation degree needs n >= 1".into(),
        ));
    }
    Ok(n * (n - 1) / 2)
}

/// Coefficients `0..=t` of `f_λ`. The empty partition gives the constant 1.
pub fn series_row(lambda: &Partition, t: usize) -> TruncatedSeries {
    let mut row = TruncatedSeries::one(t);
    for &part in lambda.parts() {
        row.divide_by_one_minus_q_pow(part);
    }
    row
}

/// `series_row` reduced modulo the odd prime `p`, computed in residues.
pub fn series_modular_row(lambda: &Partition, t: usize, p: u64) -> Result<Vec<u64>> {
    if p <= 2 || !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(modular_row_unchecked(lambda, t, p))
}

pub(crate) fn modular_row_unchecked(lambda: &Partition, t: usize, p: u64) -> Vec<u64> {
    let mut row = vec![0u64; t + 1];
    row[0] = 1;
    for &s in lambda.parts() {
        for i in s..=t {
            let v = row[i] + row[i - s];
            row[i] = if v >= p { v - p } else { v };
        }
    }
    row
}

/// Multiplicity of `Φ_j` in `∏ (1 - q^{λ_i})` for `j = 1..=n`: the number of
/// parts divisible by `j`.
pub fn cyclotomic_profile(lambda: &Partition) -> CyclotomicProfile {
    let multiplicities = (1..=lambda.n())
        .map(|j| lambda.parts().iter().filter(|&&p| p % j == 0).count())
        .collect();
    CyclotomicProfile { multiplicities }
}

/// Coefficients `0..=t` of `e_λ(1, q, q^2, ...)
/// = q^{d(λ)} / ∏_i (1-q)(1-q^2)...(1-q^{λ_i})`.
pub fn elementary_specialization_row(lambda: &Partition, t: usize) -> Result<TruncatedSeries> {
    let d = d_statistic(lambda) as usize;
    if t < d {
        return Err(Error::InvalidArgument(format!(
            "truncation degree {t} is below d({lambda}) = {d}"
        )));
    }
    let mut row = TruncatedSeries::one(t);
    for &part in lambda.parts() {
        for s in 1..=part {
            row.divide_by_one_minus_q_pow(s);
        }
    }
    row.shift(d);
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn binomial(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    // Direct count of tuples with Σ parts[i] * x_i = target.
    fn brute_count(parts: &[usize], target: usize) -> u64 {
        match parts.split_first() {
            None => (target == 0) as u64,
            Some((&s, rest)) => (0..=target / s).map(|x| brute_count(rest, target - s * x)).sum(),
        }
    }

    #[test]
    fn truncation_degrees() {
        assert_eq!(truncation_degree(7).unwrap(), 21);
        assert_eq!(truncation_degree(1).unwrap(), 0);
        assert_eq!(truncation_degree(23).unwrap(), 253);
        assert!(truncation_degree(0).is_err());
    }

    #[test]
    fn single_part_row_is_periodic() {
        let row = series_row(&p(&[7]), 21);
        for (i, c) in row.coeffs().iter().enumerate() {
            assert_eq!(*c, BigInt::from((i % 7 == 0) as i32));
        }
    }

    #[test]
    fn all_ones_row_is_binomial() {
        for n in 1..=12u64 {
            let lambda = Partition::new(vec![1; n as usize]).unwrap();
            let row = series_row(&lambda, 40);
            for (big_n, c) in row.coeffs().iter().enumerate() {
                assert_eq!(*c, binomial(big_n as u64 + n - 1, n - 1));
            }
        }
    }

    #[test]
    fn three_two_two_row() {
        assert_eq!(series_row(&p(&[3, 2, 2]), 5).coeffs(), ints(&[1, 0, 2, 1, 3, 2]));
    }

    #[test]
    fn empty_partition_is_constant_one() {
        assert_eq!(series_row(&Partition::empty(), 3).coeffs(), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn rows_agree_with_tuple_enumeration() {
        for lambda in enumerate_partitions(8) {
            let row = series_row(&lambda, 20);
            for big_n in 0..=20 {
                assert_eq!(
                    row.coeffs()[big_n],
                    BigInt::from(brute_count(lambda.parts(), big_n)),
                    "{lambda} at N = {big_n}"
                );
            }
        }
    }

    #[test]
    fn rows_start_at_one_and_are_nonnegative() {
        for n in 1..=12 {
            let t = truncation_degree(n).unwrap();
            for lambda in enumerate_partitions(n) {
                let row = series_row(&lambda, t);
                assert!(row.coeffs()[0].is_one());
                assert!(row.coeffs().iter().all(|c| *c >= BigInt::zero()));
            }
        }
    }

    #[test]
    fn modular_rows_match_reduced_exact_rows() {
        assert_eq!(series_modular_row(&p(&[3, 2, 2]), 5, 5).unwrap(), vec![1, 0, 2, 1, 3, 2]);
        let seven = series_modular_row(&p(&[7]), 21, 101).unwrap();
        assert_eq!(seven, (0..=21).map(|i| (i % 7 == 0) as u64).collect::<Vec<_>>());
        for prime in [10_007u64, 1_048_583, 3] {
            for lambda in enumerate_partitions(9) {
                let exact = series_row(&lambda, 36);
                let modular = series_modular_row(&lambda, 36, prime).unwrap();
                let reduced: Vec<u64> = exact
                    .coeffs()
                    .iter()
                    .map(|c| (c % prime).try_into().unwrap())
                    .collect();
                assert_eq!(modular, reduced);
            }
        }
    }

    #[test]
    fn modular_row_rejects_bad_moduli() {
        let l = p(&[2, 1]);
        assert!(series_modular_row(&l, 3, 9).is_err());
        assert!(series_modular_row(&l, 3, 2).is_err());
        assert!(series_modular_row(&l, 3, 1).is_err());
    }

    #[test]
    fn cyclotomic_profiles() {
        let prof = cyclotomic_profile(&p(&[3, 2, 2]));
        assert_eq!(prof.multiplicity(1), 3);
        assert_eq!(prof.multiplicity(2), 2);
        assert_eq!(prof.multiplicity(3), 1);
        assert_eq!(prof.multiplicity(7), 0);
        assert_eq!(prof.denominator_degree(), 7);

        let ones = cyclotomic_profile(&p(&[1, 1, 1, 1]));
        assert_eq!(ones.multiplicity(1), 4);
        assert!((2..=4).all(|j| ones.multiplicity(j) == 0));
    }

    #[test]
    fn cyclotomic_multiplicity_is_at_most_n_over_j() {
        for n in 1..=12 {
            let profiles: Vec<_> = enumerate_partitions(n).iter().map(cyclotomic_profile).collect();
            for j in 1..=n {
                let max = profiles.iter().map(|pr| pr.multiplicity(j)).max().unwrap();
                assert_eq!(max, n / j, "n = {n}, j = {j}");
                for pr in &profiles {
                    assert_eq!(pr.denominator_degree(), n as u64);
                }
            }
        }
    }

    #[test]
    fn elementary_rows() {
        for n in 1..=8u64 {
            let lambda = Partition::new(vec![1; n as usize]).unwrap();
            let row = elementary_specialization_row(&lambda, 15).unwrap();
            for (big_n, c) in row.coeffs().iter().enumerate() {
                assert_eq!(*c, binomial(big_n as u64 + n - 1, n - 1));
            }
        }
        let row = elementary_specialization_row(&p(&[3, 1]), 10).unwrap();
        assert_eq!(row.order(), Some(3));
        assert!(elementary_specialization_row(&p(&[3, 1]), 2).is_err());
    }

    #[test]
    fn elementary_row_order_is_d_statistic() {
        let t = truncation_degree(10).unwrap();
        for lambda in enumerate_partitions(10) {
            let row = elementary_specialization_row(&lambda, t).unwrap();
            assert_eq!(row.order(), Some(d_statistic(&lambda) as usize));
        }
    }

    #[test]
    fn elementary_basis_spans_the_same_space() {
        use crate::rank::integer_rank;
        for n in 1..=10 {
            let t = truncation_degree(n).unwrap();
            let lambdas = enumerate_partitions(n);
            let power: Vec<_> = lambdas.iter().map(|l| series_row(l, t).into_coeffs()).collect();
            let elem: Vec<_> = lambdas
                .iter()
                .map(|l| elementary_specialization_row(l, t).unwrap().into_coeffs())
                .collect();
            let r = integer_rank(power.clone());
            assert_eq!(integer_rank(elem.clone()), r, "n = {n}");
            // Same span, not just the same dimension.
            let both: Vec<_> = power.into_iter().chain(elem).collect();
            assert_eq!(integer_rank(both), r, "n = {n}");
            if n == 7 {
                assert_eq!(r, 13);
            }
        }
    }

    #[test]
    fn series_ops_invert_each_other() {
        let mut row = series_row(&p(&[4, 2, 1]), 30);
        for s in [4, 2, 1] {
            row.multiply_by_one_minus_q_pow(s);
        }
        assert_eq!(row, TruncatedSeries::one(30));
    }
}
