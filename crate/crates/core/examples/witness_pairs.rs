//! Builds pairs whose restricted distance is one more than their Grassmann
//! distance and prints the blocking certificate.
//!
//!     cargo run --example witness_pairs -- 3 3 1 17

use grassmann_codes::witness::{construct_witness, verify_certificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let cases: Vec<(u32, usize, usize, usize)> = match args.as_slice() {
        [q, k, m, n] => vec![(*q as u32, *k, *m, *n)],
        _ => vec![(2, 2, 0, 9), (3, 2, 0, 16), (2, 3, 1, 10), (2, 4, 2, 11)],
    };
    for (q, k, m, n) in cases {
        let w = construct_witness(q, k, m, n)?;
        println!("q={q} k={k} m={m} n={n}: d={} d_c={}", w.d, w.d_c);
        println!("  X = {:?}", w.x.basis().to_codes());
        println!("  Y = {:?}", w.y.basis().to_codes());
        let cert = &w.certificate;
        println!(
            "  certificate: {} hyperplanes x {} lines, valid: {}",
            cert.hyperplanes.len(),
            cert.lines.len(),
            verify_certificate(&w.x, &w.y, cert).is_valid()
        );
        for e in cert.entries.iter().take(3) {
            println!("    hyperplane {} and line {} both lie in C_{}", e.h, e.l, e.coordinate);
        }
    }
    Ok(())
}
