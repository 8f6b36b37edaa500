//! Pairs of codes whose restricted distance exceeds their Grassmann distance,
//! and certificates proving it.
//!
//! A [`BlockingCertificate`] for `(X, Y)` lists every hyperplane `H` of `X`
//! containing `X ∩ Y`, every line of `Y` outside `X`, and for each combination
//! a coordinate `i` such that `H ⊆ C_i` and the line lies in `C_i`. Then every
//! first step `H + <y>` of a geodesic is degenerate, so no geodesic stays
//! inside the non-degenerate codes and `d_c = d + 1`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::analytics::{q_number, theorem2_bound, to_u128};
use crate::code::{grassmann_distance, is_nondegenerate, m_min, require_code, CodeParams};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::graph::{restricted_distance_from, PairGeometry};
use crate::linalg::{normalize, Matrix, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CertificateEntry {
    /// Index into [`BlockingCertificate::hyperplanes`].
    pub h: usize,
    /// Index into [`BlockingCertificate::lines`].
    pub l: usize,
    /// 1-based coordinate whose hyperplane contains both.
    pub coordinate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockingCertificate {
    /// Bases of the hyperplanes of `X` containing `X ∩ Y`.
    pub hyperplanes: Vec<Matrix>,
    /// Representatives of the lines of `Y` not contained in `X`.
    pub lines: Vec<Vector>,
    /// One entry per (hyperplane, line) pair, hyperplane-major.
    pub entries: Vec<CertificateEntry>,
}

impl BlockingCertificate {
    pub fn entry(&self, h: usize, l: usize) -> Option<&CertificateEntry> {
        self.entries.get(h * self.lines.len() + l).filter(|e| e.h == h && e.l == l)
    }
}

/// Outcome of [`verify_certificate`]; valid exactly when no defect was found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateCheck {
    pub defects: Vec<String>,
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub x: Subspace,
    pub y: Subspace,
    pub params: CodeParams,
    pub m: usize,
    pub d: usize,
    pub d_c: usize,
    pub certificate: BlockingCertificate,
}

/// Certificate from a precomputed pair geometry, or `None` if some first step
/// `H + <y>` is non-degenerate.
pub fn certificate_from(geom: &PairGeometry) -> Option<BlockingCertificate> {
    let mut entries = Vec::with_capacity(geom.hyperplanes.len() * geom.outside_lines.len());
    for h in 0..geom.hyperplanes.len() {
        for l in 0..geom.outside_lines.len() {
            let coordinate = geom.blocking_coordinate(h, l)?;
            entries.push(CertificateEntry { h, l, coordinate });
        }
    }
    Some(BlockingCertificate {
        hyperplanes: geom.hyperplanes.iter().map(|h| h.basis().clone()).collect(),
        lines: geom.outside_lines.clone(),
        entries,
    })
}

/// A certificate that `d_c(X, Y) = d(X, Y) + 1`, if one exists. Requires two
/// non-degenerate codes at Grassmann distance at least 2.
pub fn blocking_certificate(x: &Subspace, y: &Subspace) -> Result<Option<BlockingCertificate>> {
    let px = require_code(x, "X")?;
    let py = require_code(y, "Y")?;
    if px != py {
        return Err(Error::params("codes have different parameters"));
    }
    if grassmann_distance(x, y)? < 2 {
        return Err(Error::params("certificates need Grassmann distance at least 2"));
    }
    Ok(certificate_from(&PairGeometry::new(x, y)?))
}

/// Checks a certificate against `(X, Y)` without searching: the listed
/// hyperplanes and lines must be complete and distinct, and every listed
/// coordinate must vanish on its hyperplane and its line.
pub fn verify_certificate(x: &Subspace, y: &Subspace, cert: &BlockingCertificate) -> CertificateCheck {
    let mut defects = Vec::new();
    let m = match x.intersection_dim(y) {
        Ok(m) if x.dim() == y.dim() => m,
        _ => {
            defects.push("codes are not comparable".to_string());
            return CertificateCheck { defects };
        }
    };
    let (n, k, q) = (x.ambient_dim(), x.dim(), x.field().q() as u64);
    let field = x.field();

    let want_h = to_u128(&q_number((k - m) as u64, q)).unwrap_or(u128::MAX);
    if cert.hyperplanes.len() as u128 != want_h {
        defects.push(format!("expected {want_h} hyperplanes, found {}", cert.hyperplanes.len()));
    }
    let want_l = to_u128(&(q_number(k as u64, q) - q_number(m as u64, q))).unwrap_or(u128::MAX);
    if cert.lines.len() as u128 != want_l {
        defects.push(format!("expected {want_l} lines, found {}", cert.lines.len()));
    }

    let mut seen_h = HashSet::new();
    for (i, g) in cert.hyperplanes.iter().enumerate() {
        if g.cols() != n {
            defects.push(format!("hyperplane {i} has wrong length"));
            continue;
        }
        let h = match Subspace::from_generator(field, g) {
            Ok(h) => h,
            Err(e) => {
                defects.push(format!("hyperplane {i}: {e}"));
                continue;
            }
        };
        if h.dim() + 1 != k || !h.is_subspace_of(x) {
            defects.push(format!("hyperplane {i} is not a hyperplane of X"));
        } else if h.intersection_dim(y).ok() != Some(m) {
            defects.push(format!("hyperplane {i} does not contain X ∩ Y"));
        }
        if !seen_h.insert(h) {
            defects.push(format!("hyperplane {i} is listed twice"));
        }
    }

    let mut seen_l = HashSet::new();
    for (i, v) in cert.lines.iter().enumerate() {
        if v.len() != n || v.iter().all(|c| c.is_zero()) {
            defects.push(format!("line {i} is not a nonzero vector of length {n}"));
            continue;
        }
        if !y.contains(v) || x.contains(v) {
            defects.push(format!("line {i} is not in Y ∖ X"));
        }
        if !seen_l.insert(normalize(field, v)) {
            defects.push(format!("line {i} is listed twice"));
        }
    }

    let (nh, nl) = (cert.hyperplanes.len(), cert.lines.len());
    let mut covered = vec![false; nh * nl];
    for e in &cert.entries {
        if e.h >= nh || e.l >= nl || e.coordinate == 0 || e.coordinate > n {
            defects.push(format!("entry {:?} is out of range", (e.h, e.l, e.coordinate)));
            continue;
        }
        let slot = &mut covered[e.h * nl + e.l];
        if *slot {
            defects.push(format!("pair {:?} has more than one entry", (e.h, e.l)));
        }
        *slot = true;
        let i = e.coordinate - 1;
        let h = &cert.hyperplanes[e.h];
        if !(h.cols() == n && h.column_is_zero(i)) || !cert.lines[e.l][i].is_zero() {
            defects.push(format!(
                "coordinate {} does not vanish on hyperplane {} and line {}",
                e.coordinate, e.h, e.l
            ));
        }
    }
    for (idx, c) in covered.iter().enumerate() {
        if !c {
            defects.push(format!("pair {:?} has no entry", (idx / nl, idx % nl)));
        }
    }
    CertificateCheck { defects }
}

fn repeat(x: FieldElement, times: usize) -> Vector {
    vec![x; times]
}

/// The `[(q+1)^2, 2]_q` pair: generators `(v1, v2)` of `X` and `(u1, u2)` of `Y`.
pub fn example2_generators(field: &FieldSpec) -> (Matrix, Matrix) {
    let q = field.q() as usize;
    let b = q + 1;
    let n = b * b;
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    // -alpha^{-i}, i = 0..q-2
    let tails: Vec<FieldElement> = (0..q as i64 - 1).map(|i| field.neg(field.alpha_pow(-i))).collect();

    let mut v1 = repeat(zero, b);
    v1.extend(repeat(one, n - b));
    let mut v2 = repeat(one, b);
    v2.extend(repeat(zero, b));
    for &t in &tails {
        v2.extend(repeat(t, b));
    }

    let mut y = vec![zero];
    y.extend(repeat(one, q));
    let mut z = vec![one, zero];
    z.extend(&tails);
    let u1: Vector = y.iter().copied().cycle().take(n).collect();
    let u2: Vector = z.iter().copied().cycle().take(n).collect();

    (
        Matrix::from_rows(n, &[v1, v2]).expect("rows of length n"),
        Matrix::from_rows(n, &[u1, u2]).expect("rows of length n"),
    )
}

/// The `[(q+1)^2, 2]_q` codes `X`, `Y` with `X ∩ Y = 0` and `d_c = 3`.
pub fn example2_pair(field: &Arc<FieldSpec>) -> Result<(Subspace, Subspace)> {
    let (gx, gy) = example2_generators(field);
    Ok((Subspace::from_full_rank(field, &gx)?, Subspace::from_full_rank(field, &gy)?))
}

/// Vectors of F_q^k whose first nonzero entry is 1, in lexicographic order
/// with the first coordinate most significant.
fn normalized_vectors(q: u32, k: usize) -> Vec<Vector> {
    let total = (q as u64).pow(k as u32);
    (1..total)
        .map(|mut idx| {
            let mut v = vec![FieldElement::ZERO; k];
            for j in (0..k).rev() {
                v[j] = FieldElement::from_code((idx % q as u64) as u32);
                idx /= q as u64;
            }
            v
        })
        .filter(|v| v.iter().find(|c| !c.is_zero()) == Some(&FieldElement::ONE))
        .collect()
}

/// Generator matrices of the `[[k]_q (q+1), k]_q` pair. `G_X` repeats each
/// normalized vector of F_q^k in `q+1` consecutive columns; `G_Y` carries the
/// `(y, z)` blocks on a band that settles on the last two rows.
pub fn lemma4_generators(field: &FieldSpec, k: usize) -> Result<(Matrix, Matrix)> {
    if k < 2 {
        return Err(Error::params(format!("need k >= 2, got {k}")));
    }
    if k == 2 {
        return Ok(example2_generators(field));
    }
    let q = field.q();
    let b = q as usize + 1;
    let ws = normalized_vectors(q, k);
    let n = ws.len() * b;

    let mut gx = Matrix::zeros(k, n);
    for (i, w) in ws.iter().enumerate() {
        for c in i * b..(i + 1) * b {
            for (r, &a) in w.iter().enumerate() {
                gx.set(r, c, a);
            }
        }
    }

    let y_block: Vector =
        std::iter::once(FieldElement::ZERO).chain(repeat(FieldElement::ONE, q as usize)).collect();
    let mut z_block = vec![FieldElement::ONE, FieldElement::ZERO];
    z_block.extend((0..q as i64 - 1).map(|i| field.neg(field.alpha_pow(-i))));

    let mut gy = Matrix::zeros(k, n);
    for j in 0..ws.len() {
        // 0-based row carrying y in block j
        let r = j.min(k - 2);
        for t in 0..b {
            gy.set(r, j * b + t, y_block[t]);
            gy.set(r + 1, j * b + t, z_block[t]);
        }
    }
    Ok((gx, gy))
}

pub fn lemma4_pair(field: &Arc<FieldSpec>, k: usize) -> Result<(Subspace, Subspace)> {
    let (gx, gy) = lemma4_generators(field, k)?;
    Ok((Subspace::from_full_rank(field, &gx)?, Subspace::from_full_rank(field, &gy)?))
}

/// Appends an `m`-dimensional common part: both generator matrices become
/// `[G 0; 0 I_m]`.
pub fn lemma6_pad(x: &Subspace, y: &Subspace, m: usize) -> Result<(Subspace, Subspace)> {
    if x.dim() != y.dim() || x.ambient_dim() != y.ambient_dim() {
        return Err(Error::params("padded codes must have equal parameters"));
    }
    if x.intersection_dim(y)? != 0 {
        return Err(Error::params("padded codes must intersect trivially"));
    }
    if m == 0 {
        return Ok((x.clone(), y.clone()));
    }
    let id = Matrix::identity(m);
    Ok((
        Subspace::from_full_rank(x.field(), &x.basis().block_diag(&id))?,
        Subspace::from_full_rank(y.field(), &y.basis().block_diag(&id))?,
    ))
}

/// Lengthens both codes to `n` by appending all-ones columns to their
/// canonical generator matrices.
pub fn ones_extend(x: &Subspace, y: &Subspace, n: usize) -> Result<(Subspace, Subspace)> {
    let n0 = x.ambient_dim();
    if y.ambient_dim() != n0 || x.dim() != y.dim() {
        return Err(Error::params("extended codes must have equal parameters"));
    }
    if n < n0 {
        return Err(Error::params(format!("cannot extend length {n0} down to {n}")));
    }
    if n == n0 {
        return Ok((x.clone(), y.clone()));
    }
    let ones = |rows: usize| {
        let r = vec![repeat(FieldElement::ONE, n - n0); rows];
        Matrix::from_rows(n - n0, &r).expect("uniform rows")
    };
    let ex = Subspace::from_full_rank(x.field(), &x.basis().hstack(&ones(x.dim()))?)?;
    let ey = Subspace::from_full_rank(y.field(), &y.basis().hstack(&ones(y.dim()))?)?;
    if ex.intersection_dim(&ey)? != x.intersection_dim(y)? {
        return Err(Error::Internal("all-ones extension changed the intersection".into()));
    }
    Ok((ex, ey))
}

/// Checks the admissible range `m(n,k) <= m <= k-2`, `n >= [k-m]_q (q+1) + m`.
pub fn check_witness_params(q: u32, k: usize, m: usize, n: usize) -> Result<CodeParams> {
    let params = CodeParams::new(n, k, q)?;
    if m + 2 > k {
        return Err(Error::params(format!("m={m} exceeds k-2={}", k as i64 - 2)));
    }
    let lo = m_min(n, k);
    if m < lo {
        return Err(Error::params(format!("m={m} is below m(n,k)={lo}")));
    }
    let bound = theorem2_bound(k as u64, m as u64, q as u64)?;
    if to_u128(&bound).is_none_or(|b| (n as u128) < b) {
        return Err(Error::params(format!("n={n} is below [k-m]_q(q+1)+m={bound}")));
    }
    Ok(params)
}

/// Builds and self-checks a pair with `d = k - m` and `d_c = k - m + 1`.
pub fn construct_witness(q: u32, k: usize, m: usize, n: usize) -> Result<WitnessPair> {
    let params = check_witness_params(q, k, m, n)?;
    let field = Arc::new(FieldSpec::with_order(q)?);
    let (bx, by) = lemma4_pair(&field, k - m)?;
    let (px, py) = lemma6_pad(&bx, &by, m)?;
    let (x, y) = ones_extend(&px, &py, n)?;

    let fail = |what: String| Error::Internal(format!("witness ({q},{k},{m},{n}): {what}"));
    if !is_nondegenerate(&x) || !is_nondegenerate(&y) {
        return Err(fail("degenerate code".into()));
    }
    let geom = PairGeometry::new(&x, &y)?;
    if geom.m() != m {
        return Err(fail(format!("intersection dimension {} instead of {m}", geom.m())));
    }
    let certificate = certificate_from(&geom).ok_or_else(|| fail("no blocking certificate".into()))?;
    let check = verify_certificate(&x, &y, &certificate);
    if !check.is_valid() {
        return Err(fail(format!("certificate rejected: {:?}", check.defects)));
    }
    let r = restricted_distance_from(&geom)?;
    if (r.d, r.d_c) != (k - m, k - m + 1) {
        return Err(fail(format!("distances ({}, {})", r.d, r.d_c)));
    }
    Ok(WitnessPair { x, y, params, m, d: r.d, d_c: r.d_c, certificate })
}
