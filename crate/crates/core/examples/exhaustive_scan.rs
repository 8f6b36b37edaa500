//! Scans every pair of non-degenerate codes for a few small parameter sets
//! and counts the pairs whose restricted distance exceeds the Grassmann
//! distance.
//!
//!     cargo run --release --example exhaustive_scan -- 9 2 2

use std::sync::Arc;
use std::time::Instant;

use grassmann_codes::scan::{scan_theorem1, DEFAULT_SCAN_CAP};
use grassmann_codes::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let cases: Vec<(usize, usize, u32)> = match args.as_slice() {
        [n, k, q] => vec![(*n, *k, *q as u32)],
        _ => vec![(5, 2, 2), (6, 3, 2), (5, 2, 3), (8, 2, 2)],
    };
    for (n, k, q) in cases {
        let field = Arc::new(FieldSpec::with_order(q)?);
        let start = Instant::now();
        let out = scan_theorem1(&field, n, k, DEFAULT_SCAN_CAP, 1)?;
        println!(
            "[{n},{k}]_{q}: {} codes, {} pairs, {} with d_c = d+1, n < (q+1)^2+k-2: {}, consistent: {} ({:.1?})",
            out.codes,
            out.pairs,
            out.exceptional.len(),
            out.theorem1_holds,
            out.consistent(),
            start.elapsed()
        );
    }
    Ok(())
}
