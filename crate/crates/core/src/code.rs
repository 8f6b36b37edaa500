//! Linear codes as subspaces: parameters, non-degeneracy, Grassmann distance.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{weight, Grassmannian, Matrix, Subspace};

/// Default bound on `q^k` for operations that enumerate every codeword.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 20;

/// Parameters `[n, k]_q` of a code, restricted to `1 < k < n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub q: u32,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, q: u32) -> Result<Self> {
        if !(1 < k && k + 1 < n) {
            return Err(Error::params(format!("need 1 < k < n-1, got n={n}, k={k}")));
        }
        Ok(CodeParams { n, k, q })
    }

    pub fn of(x: &Subspace) -> Result<Self> {
        Self::new(x.ambient_dim(), x.dim(), x.field().q())
    }
}

/// The kernel `C_i` of the i-th coordinate functional (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinateHyperplane(usize);

impl CoordinateHyperplane {
    pub fn new(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::params(format!("coordinate index {i} outside 1..={n}")));
        }
        Ok(CoordinateHyperplane(i))
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn contains_vector(self, v: &[FieldElement]) -> bool {
        v[self.0 - 1].is_zero()
    }

    pub fn contains(self, x: &Subspace) -> bool {
        x.basis().column_is_zero(self.0 - 1)
    }
}

/// True iff the code lies in no coordinate hyperplane, i.e. no column of its
/// canonical generator matrix vanishes.
pub fn is_nondegenerate(x: &Subspace) -> bool {
    let b = x.basis();
    (0..b.cols()).all(|c| !b.column_is_zero(c))
}

/// Coordinate hyperplanes containing `x`.
pub fn containing_coordinate_hyperplanes(x: &Subspace) -> Vec<CoordinateHyperplane> {
    let b = x.basis();
    (0..b.cols()).filter(|&c| b.column_is_zero(c)).map(|c| CoordinateHyperplane(c + 1)).collect()
}

/// `d(X, Y) = k - dim(X ∩ Y)`.
pub fn grassmann_distance(x: &Subspace, y: &Subspace) -> Result<usize> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    Ok(x.dim() - x.intersection_dim(y)?)
}

fn enumeration_size(x: &Subspace) -> u128 {
    (x.field().q() as u128).checked_pow(x.dim() as u32).unwrap_or(u128::MAX)
}

/// Whether some vector of `x` has full weight. Enumerates all `q^k` vectors.
pub fn contains_full_weight(x: &Subspace, cap: u128) -> Result<bool> {
    let size = enumeration_size(x);
    if size > cap {
        return Err(Error::CapExceeded { what: "codeword enumeration", size, cap });
    }
    let n = x.ambient_dim();
    Ok(x.vectors().any(|v| weight(&v) == n))
}

/// Whether `X ∪ Y` contains a vector of weight `n`.
pub fn has_weight_n_vector(x: &Subspace, y: &Subspace, cap: u128) -> Result<bool> {
    if x.ambient_dim() != y.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: x.ambient_dim(), found: y.ambient_dim() });
    }
    Ok(contains_full_weight(x, cap)? || contains_full_weight(y, cap)?)
}

/// Smallest possible dimension of the intersection of two k-subspaces of an
/// n-space: `k - min(k, n - k)`.
pub fn m_min(n: usize, k: usize) -> usize {
    k - k.min(n.saturating_sub(k))
}

/// All non-degenerate `[n, k]_q` codes in canonical enumeration order.
pub fn nondegenerate_codes(field: &Arc<FieldSpec>, n: usize, k: usize) -> Vec<Subspace> {
    Grassmannian::new(field, n, k).filter(is_nondegenerate).collect()
}

/// Uniformly random full-rank generator matrix, rejected until the code is
/// non-degenerate.
pub fn random_nondegenerate<R: Rng + ?Sized>(
    field: &Arc<FieldSpec>,
    params: CodeParams,
    rng: &mut R,
) -> Subspace {
    let q = field.q();
    loop {
        let rows: Vec<Vec<u32>> =
            (0..params.k).map(|_| (0..params.n).map(|_| rng.gen_range(0..q)).collect()).collect();
        let g = Matrix::from_codes(field, params.n, &rows).expect("codes in range");
        let s = Subspace::from_generator(field, &g).expect("valid generator");
        if s.dim() == params.k && is_nondegenerate(&s) {
            return s;
        }
    }
}

/// Validates that `x` is a non-degenerate code with admissible parameters.
pub fn require_code(x: &Subspace, label: &str) -> Result<CodeParams> {
    let params = CodeParams::of(x)?;
    if !is_nondegenerate(x) {
        return Err(Error::Degenerate(label.to_string()));
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;

    fn gf(q: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::with_order(q).unwrap())
    }

    fn vecs(rows: &[&[u32]]) -> Vec<Vector> {
        rows.iter().map(|r| r.iter().map(|&c| FieldElement::from_code(c)).collect()).collect()
    }

    fn nine_coordinate_pair(f: &Arc<FieldSpec>) -> (Subspace, Subspace) {
        let x =
            Subspace::from_rows(f, 9, &vecs(&[&[0, 0, 0, 1, 1, 1, 1, 1, 1], &[1, 1, 1, 0, 0, 0, 1, 1, 1]]))
                .unwrap();
        let y =
            Subspace::from_rows(f, 9, &vecs(&[&[0, 1, 1, 0, 1, 1, 0, 1, 1], &[1, 0, 1, 1, 0, 1, 1, 0, 1]]))
                .unwrap();
        (x, y)
    }

    #[test]
    fn params_range() {
        assert!(CodeParams::new(4, 2, 2).is_ok());
        assert!(CodeParams::new(3, 2, 2).is_err());
        assert!(CodeParams::new(5, 1, 2).is_err());
        assert!(CodeParams::new(5, 4, 2).is_err());
    }

    #[test]
    fn nondegeneracy() {
        let f = gf(3);
        let unit = Subspace::from_rows(&f, 5, &vecs(&[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]])).unwrap();
        assert!(!is_nondegenerate(&unit));
        assert_eq!(
            containing_coordinate_hyperplanes(&unit).iter().map(|c| c.index()).collect::<Vec<_>>(),
            vec![3, 4, 5]
        );
        let ones = Subspace::from_rows(&f, 5, &vecs(&[&[1, 1, 1, 1, 1], &[1, 0, 0, 0, 0]])).unwrap();
        assert!(is_nondegenerate(&ones));

        let f2 = gf(2);
        let (x, y) = nine_coordinate_pair(&f2);
        assert!(is_nondegenerate(&x) && is_nondegenerate(&y));
    }

    #[test]
    fn distances_and_weight() {
        let f = gf(2);
        let (x, y) = nine_coordinate_pair(&f);
        assert_eq!(grassmann_distance(&x, &x).unwrap(), 0);
        assert_eq!(grassmann_distance(&x, &y).unwrap(), 2);
        assert!(!has_weight_n_vector(&x, &y, DEFAULT_ENUMERATION_CAP).unwrap());
        let e =
            Subspace::from_rows(&f, 9, &vecs(&[&[1, 0, 0, 0, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0, 0, 0, 0]]))
                .unwrap();
        assert!(!contains_full_weight(&e, DEFAULT_ENUMERATION_CAP).unwrap());
        let with_ones = Subspace::from_rows(&f, 9, &vecs(&[&[1; 9], &[1, 0, 0, 0, 0, 0, 0, 0, 0]])).unwrap();
        assert!(has_weight_n_vector(&x, &with_ones, DEFAULT_ENUMERATION_CAP).unwrap());
        assert!(matches!(
            contains_full_weight(&with_ones, 3),
            Err(Error::CapExceeded { size: 4, cap: 3, .. })
        ));
    }

    #[test]
    fn m_min_values() {
        assert_eq!(m_min(9, 2), 0);
        assert_eq!(m_min(10, 6), 2);
        assert_eq!(m_min(8, 4), 0);
    }

    #[test]
    fn m_min_attained_for_10_6() {
        // Two 6-spaces of F_2^10 meeting in exactly 2 dimensions, and the
        // dimension formula forbids less: dim(X ∩ Y) >= 6 + 6 - 10.
        let f = gf(2);
        let unit = |i: usize| {
            let mut v = vec![FieldElement::ZERO; 10];
            v[i] = FieldElement::ONE;
            v
        };
        let x = Subspace::from_rows(&f, 10, &(0..6).map(unit).collect::<Vec<_>>()).unwrap();
        let y = Subspace::from_rows(&f, 10, &(4..10).map(unit).collect::<Vec<_>>()).unwrap();
        assert_eq!(x.intersection_dim(&y).unwrap(), 2);
        assert_eq!(m_min(10, 6), 6 + 6 - 10);
    }

    #[test]
    fn nondegenerate_matches_codeword_scan() {
        let f = gf(3);
        for s in Grassmannian::new(&f, 5, 2) {
            let by_scan = (0..5).all(|i| s.vectors().any(|v| !v[i].is_zero()));
            assert_eq!(is_nondegenerate(&s), by_scan);
        }
    }
}
