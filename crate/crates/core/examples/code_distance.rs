//! Grassmann distance, restricted distance and a shortest path of
//! non-degenerate codes for random pairs.
//!
//!     cargo run --example code_distance -- 10 3 2

use std::sync::Arc;

use grassmann_codes::code::{has_weight_n_vector, random_nondegenerate, CodeParams, DEFAULT_ENUMERATION_CAP};
use grassmann_codes::graph::{restricted_distance, validate_path};
use grassmann_codes::FieldSpec;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, k, q) = match args.as_slice() {
        [n, k, q] => (*n, *k, *q as u32),
        _ => (9, 2, 2),
    };
    let field = Arc::new(FieldSpec::with_order(q)?);
    let params = CodeParams::new(n, k, q)?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..5 {
        let x = random_nondegenerate(&field, params, &mut rng);
        let y = random_nondegenerate(&field, params, &mut rng);
        let r = restricted_distance(&x, &y)?;
        let path = r.path.as_deref().unwrap_or_default();
        validate_path(path, &x, &y)?;
        println!(
            "d={} d_c={} ({}) full-weight vector in X ∪ Y: {}",
            r.d,
            r.d_c,
            r.evidence.tag(),
            has_weight_n_vector(&x, &y, DEFAULT_ENUMERATION_CAP)?
        );
        for (i, z) in path.iter().enumerate() {
            println!("  step {i}: {:?}", z.basis().to_codes());
        }
    }
    Ok(())
}
