//! Canonical subspaces: row reduction, intersections, hyperplanes and the
//! enumeration of a Grassmannian.

use std::sync::Arc;

use grassmann_codes::linalg::{Grassmannian, Matrix};
use grassmann_codes::{FieldSpec, Subspace};

fn show(label: &str, s: &Subspace) {
    println!("{label} (dim {}):", s.dim());
    for row in s.basis().to_codes() {
        println!("  {row:?}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Arc::new(FieldSpec::with_order(3)?);
    let gx = Matrix::from_codes(&f, 5, &[vec![1, 2, 0, 1, 1], vec![2, 1, 1, 0, 2], vec![0, 0, 1, 1, 1]])?;
    let gy = Matrix::from_codes(&f, 5, &[vec![1, 0, 0, 2, 2], vec![0, 1, 1, 1, 0], vec![1, 1, 1, 1, 1]])?;
    let x = Subspace::from_generator(&f, &gx)?;
    let y = Subspace::from_generator(&f, &gy)?;
    show("X", &x);
    show("Y", &y);
    let meet = x.intersection(&y)?;
    show("X ∩ Y", &meet);
    show("X + Y", &x.sum(&y)?);

    let above = x.hyperplanes_containing(&meet)?.count();
    println!("hyperplanes of X containing X ∩ Y: {above}");
    println!("lines of Y outside X: {}", y.lines().filter(|v| !x.contains(v)).count());

    for (n, k, q) in [(4, 2, 2), (5, 2, 3), (6, 3, 2)] {
        let g = Arc::new(FieldSpec::with_order(q)?);
        println!("number of {k}-subspaces of F_{q}^{n}: {}", Grassmannian::new(&g, n, k).count());
    }
    Ok(())
}
