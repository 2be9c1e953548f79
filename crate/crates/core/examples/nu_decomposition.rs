//! Greedy decomposition of `m` into triangular numbers and the bound
//! `ν(m) ≤ √(2m) + 3·m^{1/4}`.
//!
//! ```text
//! cargo run --release --example nu_decomposition -- 26 404 1000000
//! ```

use symspan::bounds;

fn main() -> symspan::Result<()> {
    let ms: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("arguments must be non-negative integers"))
        .collect();
    for &m in if ms.is_empty() { &[26, 404, 405][..] } else { &ms } {
        let d = bounds::nu(m);
        println!(
            "{d}  bound {:.3}  holds={}",
            bounds::nu_bound_approx(m),
            bounds::nu_within_bound(d.nu, m)
        );
    }

    let report = bounds::check_nu_inequality(405, 200_000)?;
    println!(
        "m in [{}, {}]: {} violations, min slack {:.4} at m = {}",
        report.m_lo,
        report.m_hi,
        report.violations.len(),
        report.min_slack,
        report.min_slack_at
    );
    if let Some((nu, m)) = bounds::max_nu_below(405) {
        println!("largest ν below 405: {nu} at m = {m}");
    }
    Ok(())
}
