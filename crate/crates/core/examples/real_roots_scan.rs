//! Histogram of real root counts of `v1 T2 + v2 T3 + v3 T7` over random directions.
//!
//! Usage: `cargo run --example real_roots_scan [samples] [seed]`

use chebvar::curves::chamber_scan;
use chebvar::polytope::ExponentMatrix;

fn main() -> chebvar::Result<()> {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let a = ExponentMatrix::from_rows(vec![vec![2, 3, 7]])?;
    let h = chamber_scan(&a, samples, seed)?;
    for (k, n) in &h.counts {
        println!("{k} real roots: {n:>5}  {}", "#".repeat(n * 60 / samples));
    }
    println!("min {}, max {}", h.min, h.max);
    Ok(())
}
