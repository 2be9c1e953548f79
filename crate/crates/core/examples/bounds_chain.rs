//! The chain `H ≤ G ≤ E ≤ D ≤ U ≤ n(n-1)/2 + 1`, written as CSV.
//!
//! ```text
//! cargo run --release --example bounds_chain > bounds.csv
//! ```

use std::collections::BTreeMap;

use symspan::bounds::{self, DValue};
use symspan::rank::{self, Method};

const N_MAX: usize = 18;

fn main() -> symspan::Result<()> {
    let d: BTreeMap<usize, DValue> = (1..=N_MAX)
        .map(|n| {
            let value = rank::rank_exact(&rank::build_matrix(n)?) as u64;
            Ok((n, DValue { value, method: Method::Exact }))
        })
        .collect::<symspan::Result<_>>()?;

    let records = bounds::bounds_records(N_MAX, &d)?;
    bounds::write_csv(&records, std::io::stdout().lock())?;

    let violations = bounds::chain_violations(&records);
    if violations.is_empty() {
        eprintln!("chain holds for n = 1..={N_MAX}");
    }
    for v in violations {
        eprintln!("violation: {v}");
    }

    let d_plain: BTreeMap<usize, u64> = d.iter().map(|(&n, v)| (n, v.value)).collect();
    for n in 1..=N_MAX {
        let gap = bounds::gap_statistic(n, &d_plain)?;
        if gap != 0 {
            eprintln!("gap({n}) = {gap}");
        }
    }
    Ok(())
}
