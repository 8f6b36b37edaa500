//! Writes a witness pair to matrix files, reads it back and checks its
//! certificate, then shows that a tampered certificate is rejected.

use std::sync::Arc;

use grassmann_codes::cli::{CertificateDocument, MatrixFile};
use grassmann_codes::witness::{construct_witness, verify_certificate};
use grassmann_codes::FieldSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = construct_witness(2, 3, 1, 10)?;
    let dir = std::env::temp_dir().join("grassmann-codes-certify");
    std::fs::create_dir_all(&dir)?;
    let (px, py) = (dir.join("X.mat"), dir.join("Y.mat"));
    MatrixFile::from_subspace(&w.x).write(&px)?;
    MatrixFile::from_subspace(&w.y).write(&py)?;
    let json = serde_json::to_string(&CertificateDocument::from_witness(&w))?;
    print!("{}", std::fs::read_to_string(&px)?);

    let fx = MatrixFile::read(&px)?;
    let field = Arc::new(FieldSpec::new(fx.p, fx.e)?);
    let x = fx.to_subspace(&field)?;
    let y = MatrixFile::read(&py)?.to_subspace(&field)?;
    let doc: CertificateDocument = serde_json::from_str(&json)?;
    let mut cert = doc.to_certificate(&field)?;
    println!("claimed d={} d_c={}, {} entries", doc.d, doc.d_c, doc.entries.len());
    println!("round-tripped certificate valid: {}", verify_certificate(&x, &y, &cert).is_valid());

    cert.entries[0].coordinate = cert.entries[0].coordinate % doc.n + 1;
    for defect in verify_certificate(&x, &y, &cert).defects {
        println!("tampered certificate: {defect}");
    }
    Ok(())
}
