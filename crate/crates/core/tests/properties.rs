use std::sync::Arc;

use grassmann_codes::cli::MatrixFile;
use grassmann_codes::code::{grassmann_distance, is_nondegenerate, random_nondegenerate, CodeParams};
use grassmann_codes::graph::{restricted_distance, validate_path};
use grassmann_codes::linalg::{rank, Matrix};
use grassmann_codes::witness::{blocking_certificate, construct_witness, verify_certificate};
use grassmann_codes::{FieldElement, FieldSpec, Subspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDERS: [u32; 12] = [16, 25, 27, 49, 64, 81, 121, 125, 243, 256, 1024, 65536];

fn field_and_elements() -> impl Strategy<Value = (u32, u32, u32, u32)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|q| (Just(q), 0..q, 0..q, 0..q))
}

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..q, cols), rows)
}

fn subspace(f: &Arc<FieldSpec>, n: usize, rows: &[Vec<u32>]) -> Subspace {
    Subspace::from_generator(f, &Matrix::from_codes(f, n, rows).unwrap()).unwrap()
}

/// A small field with a pair of full-rank generator matrices of equal shape.
fn code_pair() -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>, Vec<Vec<u32>>)> {
    (prop::sample::select(vec![2u32, 3, 4]), 4usize..9, 2usize..4).prop_flat_map(|(q, n, k)| {
        let k = k.min(n - 2);
        (Just(q), Just(n), matrix(q, k, n), matrix(q, k, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((q, a, b, c) in field_and_elements()) {
        let f = FieldSpec::with_order(q).unwrap();
        let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            prop_assert_eq!(f.pow(a, (q - 1) as u64), FieldElement::ONE);
            prop_assert_eq!(f.mul(f.div(b, a).unwrap(), a), b);
        }
        // Frobenius is additive.
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn canonical_form_ignores_the_generator(
        (q, n, g, a) in (prop::sample::select(vec![2u32, 3, 4, 5, 8, 9]), 2usize..8, 1usize..5)
            .prop_flat_map(|(q, n, k)| (Just(q), Just(n), matrix(q, k.min(n), n), matrix(q, k.min(n), k.min(n))))
    ) {
        let f = Arc::new(FieldSpec::with_order(q).unwrap());
        let gm = Matrix::from_codes(&f, n, &g).unwrap();
        let am = Matrix::from_codes(&f, g.len(), &a).unwrap();
        prop_assume!(rank(&f, &am) == g.len());
        let s = Subspace::from_generator(&f, &gm).unwrap();
        let t = Subspace::from_generator(&f, &am.mul(&f, &gm).unwrap()).unwrap();
        prop_assert_eq!(&s, &t);
        prop_assert_eq!(s.dim(), rank(&f, &gm));
        for (r, &p) in s.pivots().iter().enumerate() {
            prop_assert_eq!(s.basis().get(r, p), FieldElement::ONE);
            for other in 0..s.dim() {
                if other != r {
                    prop_assert!(s.basis().get(other, p).is_zero());
                }
            }
        }
        for row in gm.iter_rows() {
            prop_assert!(s.contains(row));
        }
    }

    #[test]
    fn dimension_formula((q, n, gx, gy) in code_pair()) {
        let f = Arc::new(FieldSpec::with_order(q).unwrap());
        let x = subspace(&f, n, &gx);
        let y = subspace(&f, n, &gy);
        let meet = x.intersection(&y).unwrap();
        let join = x.sum(&y).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), x.dim() + y.dim());
        prop_assert!(meet.is_subspace_of(&x) && meet.is_subspace_of(&y));
        prop_assert!(x.is_subspace_of(&join) && y.is_subspace_of(&join));
        prop_assert_eq!(x.intersection_dim(&y).unwrap(), meet.dim());
    }

    #[test]
    fn restricted_distance_is_a_metric(q in prop::sample::select(vec![2u32, 3]), n in 5usize..10, seed: u64) {
        let f = Arc::new(FieldSpec::with_order(q).unwrap());
        let params = CodeParams::new(n, 2, q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let codes: Vec<Subspace> = (0..3).map(|_| random_nondegenerate(&f, params, &mut rng)).collect();
        let dc = |i: usize, j: usize| restricted_distance(&codes[i], &codes[j]).unwrap();
        for i in 0..3 {
            prop_assert_eq!(dc(i, i).d_c, 0);
            for j in 0..3 {
                let r = dc(i, j);
                prop_assert_eq!(r.d_c, dc(j, i).d_c);
                prop_assert_eq!(r.d, grassmann_distance(&codes[i], &codes[j]).unwrap());
                prop_assert!(r.d <= r.d_c && r.d_c <= r.d + 1);
                validate_path(r.path.as_deref().unwrap(), &codes[i], &codes[j]).unwrap();
                for l in 0..3 {
                    prop_assert!(r.d_c <= dc(i, l).d_c + dc(l, j).d_c);
                }
            }
        }
    }

    #[test]
    fn matrix_files_round_trip((q, n, g) in (prop::sample::select(vec![2u32, 4, 7, 9, 27]), 1usize..9)
        .prop_flat_map(|(q, n)| (Just(q), Just(n), matrix(q, n.min(4), n))))
    {
        let f = Arc::new(FieldSpec::with_order(q).unwrap());
        let s = subspace(&f, n, &g);
        prop_assume!(s.dim() > 0);
        let text = MatrixFile::from_subspace(&s).render();
        let back = MatrixFile::parse(&text).unwrap().to_subspace(&f).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn mutated_certificates_are_rejected(entry in 0usize..9, shift in 1usize..9) {
        let w = construct_witness(2, 2, 0, 9).unwrap();
        let mut cert = w.certificate.clone();
        let e = &mut cert.entries[entry];
        e.coordinate = (e.coordinate - 1 + shift) % 9 + 1;
        prop_assert!(!verify_certificate(&w.x, &w.y, &cert).is_valid());
    }

    #[test]
    fn certificates_exist_exactly_for_stretched_pairs((q, n, gx, gy) in code_pair()) {
        let f = Arc::new(FieldSpec::with_order(q).unwrap());
        let (x, y) = (subspace(&f, n, &gx), subspace(&f, n, &gy));
        prop_assume!(x.dim() == gx.len() && y.dim() == gy.len() && x.dim() + 1 < n);
        prop_assume!(is_nondegenerate(&x) && is_nondegenerate(&y));
        let r = restricted_distance(&x, &y).unwrap();
        prop_assume!(r.d >= 2);
        let cert = blocking_certificate(&x, &y).unwrap();
        prop_assert_eq!(cert.is_some(), r.d_c == r.d + 1);
        if let Some(c) = cert {
            prop_assert!(verify_certificate(&x, &y, &c).is_valid());
        }
    }
}
