//! Coefficients of `f_λ(q)`: the number of solutions of
//! `λ₁x₁ + … + λₖxₖ = N` in non-negative integers.
//!
//! ```text
//! cargo run --release --example character_values -- 3 2 2
//! ```

use symspan::partitions::{conjugate, d_statistic, Partition};
use symspan::series::{cyclotomic_profile, series_row};

fn main() -> symspan::Result<()> {
    let parts: Vec<usize> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("parts must be positive integers"))
        .collect();
    let lambda = if parts.is_empty() {
        Partition::new(vec![3, 2, 2])?
    } else {
        Partition::from_unsorted(parts)?
    };

    let row = series_row(&lambda, 20);
    let values: Vec<String> = row.coeffs().iter().map(ToString::to_string).collect();
    println!("λ = {lambda}, conjugate {}", conjugate(&lambda));
    println!("χ(N), N = 0..=20: {}", values.join(","));

    let profile = cyclotomic_profile(&lambda);
    let factors: Vec<String> = profile
        .iter()
        .filter(|&(_, mult)| mult > 0)
        .map(|(j, mult)| format!("Φ_{j}^{mult}"))
        .collect();
    println!("denominator = {}", factors.join("·"));
    println!("d(λ) = {}", d_statistic(&lambda));
    Ok(())
}
