//! The same dimension computed from the specialization of the elementary
//! symmetric functions `e_λ` instead of `f_λ`.
//!
//! ```text
//! cargo run --release --example elementary_basis
//! ```

use symspan::partitions::enumerate_partitions;
use symspan::rank::{self, integer_rank};
use symspan::series::{elementary_specialization_row, truncation_degree};

fn main() -> symspan::Result<()> {
    println!("{:>3} {:>8} {:>8}", "n", "f basis", "e basis");
    for n in 1..=12 {
        let t = truncation_degree(n)?;
        let rows = enumerate_partitions(n)
            .iter()
            .map(|l| elementary_specialization_row(l, t).map(|s| s.into_coeffs()))
            .collect::<symspan::Result<Vec<_>>>()?;
        let f_rank = rank::rank_exact(&rank::build_matrix(n)?);
        println!("{n:>3} {f_rank:>8} {:>8}", integer_rank(rows));
    }
    Ok(())
}
