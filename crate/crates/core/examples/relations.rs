//! Integer relations among the `f_λ`, with exact verification.
//!
//! ```text
//! cargo run --release --example relations -- 8
//! ```

use num_bigint::BigInt;
use symspan::partitions::{count_partitions, Partition};
use symspan::rank::{self, CertificateSet, RelationCertificate};

fn main() -> symspan::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be a positive integer"))
        .unwrap_or(7);

    let certs = rank::nullspace_certificates(n)?;
    println!("P({n}) = {}, {} independent relations", count_partitions(n), certs.len());
    for c in &certs {
        println!("  [{}] {c}", if c.verified { "verified" } else { "FAILED" });
    }

    if n == 7 {
        let hand_written = RelationCertificate::from_terms(
            7,
            [
                (vec![4, 3], -1),
                (vec![4, 1, 1, 1], -2),
                (vec![3, 2, 1, 1], 3),
            ]
            .into_iter()
            .map(|(p, c)| (Partition::new(p).unwrap(), BigInt::from(c))),
        );
        println!(
            "{hand_written}: verifies={} in_span={}",
            rank::verify_certificate(&hand_written),
            rank::span_contains(&certs, &hand_written)
        );
    }

    let json = serde_json::to_string_pretty(&CertificateSet::new(n, &certs))?;
    println!("{json}");
    Ok(())
}
