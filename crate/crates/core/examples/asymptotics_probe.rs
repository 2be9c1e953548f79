//! Growth of `H(n)` and `U(n)` against `n²/2`, and the empirical constant
//! `ĉ(n) = (n²/2 - H(n)) / n^{3/2}`. Also prints `|D(n) - E(n+1)|` for small
//! `n`, where `D` is computed exactly.
//!
//! ```text
//! cargo run --release --example asymptotics_probe -- 200
//! ```

use symspan::bounds;
use symspan::rank;

fn main() -> symspan::Result<()> {
    let n_max: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n_max must be an integer >= 2"))
        .unwrap_or(100);

    let report = bounds::asymptotics_probe(n_max)?;
    println!("{:>5} {:>8} {:>8} {:>8} {:>8}", "n", "H", "H/(n²/2)", "U/(n²/2)", "ĉ");
    for row in report.rows.iter().filter(|r| r.n % 10 == 0 || r.n == n_max) {
        println!(
            "{:>5} {:>8} {:>8.4} {:>8.4} {:>8.4}",
            row.n, row.h, row.h_ratio, row.u_ratio, row.c_hat
        );
    }
    println!("max ĉ = {:.4} at n = {}", report.max_c_hat, report.max_c_hat_at);

    println!();
    println!("{:>3} {:>5} {:>7} {:>9}", "n", "D(n)", "E(n+1)", "|diff|");
    for n in 1..=16 {
        let d = rank::rank_exact(&rank::build_matrix(n)?) as i64;
        let e = bounds::compute_e(n + 1) as i64;
        println!("{n:>3} {d:>5} {e:>7} {:>9}", (d - e).abs());
    }
    Ok(())
}
