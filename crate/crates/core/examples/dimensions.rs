//! Dimension of the span of `f_λ` over partitions of `n`, computed three ways.
//!
//! ```text
//! cargo run --release --example dimensions -- 14
//! ```

use symspan::rank::{self, Method, DEFAULT_MEMORY_BUDGET_MIB, DEFAULT_PRIMES};
use symspan::partitions::count_partitions;

fn main() -> symspan::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n_max must be a positive integer"))
        .unwrap_or(12);

    println!("{:>3} {:>6} {:>6} {:>6}", "n", "P(n)", "exact", "mod");
    for n in 1..=n_max {
        let matrix = rank::build_matrix(n)?;
        let exact = rank::rank_exact(&matrix);
        let modular = rank::rank_modular(n, &DEFAULT_PRIMES)?;
        println!(
            "{n:>3} {:>6} {exact:>6} {:>6}",
            count_partitions(n),
            modular.rank
        );
    }

    // The entry point used by the CLI: modular first, exact on disagreement.
    let d = rank::compute_dimension(
        n_max,
        Method::ModularConsensus,
        &DEFAULT_PRIMES,
        DEFAULT_MEMORY_BUDGET_MIB,
    )?;
    println!("D({n_max}) = {} via {:?}", d.value, d.method);
    Ok(())
}
