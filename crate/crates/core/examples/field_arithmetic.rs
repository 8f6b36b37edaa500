//! Arithmetic in GF(p^e): element codes, the chosen modulus and primitive
//! element, and a multiplication table.
//!
//!     cargo run --example field_arithmetic -- 8

use grassmann_codes::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(4);
    let f = FieldSpec::with_order(q)?;
    println!("GF({}) = GF({}^{})", f.q(), f.p(), f.e());
    if let Some(m) = f.modulus() {
        let terms: Vec<String> = m
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        println!("modulus: {}", terms.join(" + "));
    }
    let alpha = f.alpha();
    println!("primitive element: code {} of order {}", alpha.code(), f.order(alpha)?);

    if f.q() <= 16 {
        println!("multiplication table (element codes):");
        for a in f.elements() {
            let row: Vec<String> = f.elements().map(|b| format!("{:>2}", f.mul(a, b).code())).collect();
            println!("  {}", row.join(" "));
        }
    }
    for a in f.nonzero_elements().take(4) {
        let inv = f.inv(a)?;
        println!("{} * {} = {}", a.code(), inv.code(), f.mul(a, inv).code());
    }
    Ok(())
}
