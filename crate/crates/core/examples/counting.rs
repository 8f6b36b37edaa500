//! Subspace counts: Gaussian binomials, non-degenerate codes by
//! inclusion-exclusion checked against enumeration, and the length
//! thresholds.

use std::sync::Arc;

use grassmann_codes::analytics::{
    count_nondegenerate, gaussian_binomial, lemma3_check, theorem1_predicate, theorem2_bound,
};
use grassmann_codes::code::nondegenerate_codes;
use grassmann_codes::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, k, q) in [(4u64, 2u64, 2u32), (6, 3, 2), (5, 2, 3), (9, 2, 2)] {
        let field = Arc::new(FieldSpec::with_order(q)?);
        let enumerated = nondegenerate_codes(&field, n as usize, k as usize).len();
        println!(
            "[{n} {k}]_{q} = {}, non-degenerate = {} (enumerated {enumerated})",
            gaussian_binomial(n, k, q as u64)?,
            count_nondegenerate(n, k, q as u64)?
        );
    }
    println!("non-degenerate [40, 5]_7 codes: {}", count_nondegenerate(40, 5, 7)?);

    for q in [2u64, 3, 4, 5] {
        let first = (1..).find(|&n| !theorem1_predicate(n, 2, q)).expect("finite threshold");
        println!("q={q}, k=2: d_c = d for all pairs while n < {first}");
    }
    for (k, m, q) in [(3, 0, 2), (3, 1, 2), (4, 2, 2), (3, 1, 3)] {
        println!("k={k} m={m} q={q}: witnesses from n = {}", theorem2_bound(k, m, q)?);
    }
    println!(
        "threshold comparison holds for k in 2..=12, q=9: {}",
        (2..=12).all(|k| matches!(lemma3_check(k, 9), Ok(true)))
    );
    Ok(())
}
