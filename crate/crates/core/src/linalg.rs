//! Dense matrices over GF(q) and subspaces of F_q^n in reduced row echelon
//! form.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

pub type Vector = Vec<FieldElement>;

/// Row-major matrix of field elements. The matrix does not carry its field;
/// every operation that needs arithmetic takes the [`FieldSpec`] explicitly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix with `cols` columns from equal-length rows.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, entries })
    }

    /// Builds a matrix from integer codes, validating them against `field`.
    pub fn from_codes(field: &FieldSpec, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| field.element(c)).collect::<Result<Vector>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_codes(&self) -> Vec<Vec<u32>> {
        self.iter_rows().map(|r| r.iter().map(|x| x.code()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c).is_zero())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        Ok(Matrix { rows: self.rows, cols, entries })
    }

    /// Block-diagonal matrix `[self 0; 0 other]`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// The row vector `coeffs * self`.
    pub fn combine(&self, field: &FieldSpec, coeffs: &[FieldElement]) -> Vector {
        debug_assert_eq!(coeffs.len(), self.rows);
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                axpy(field, &mut out, c, self.row(r));
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            entries.extend(other.combine(field, self.row(r)));
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, entries })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

/// `y += a * x`
#[inline]
fn axpy(field: &FieldSpec, y: &mut [FieldElement], a: FieldElement, x: &[FieldElement]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = field.add(*yi, field.mul(a, xi));
        }
    }
}

/// Gauss-Jordan elimination in place, choosing pivots only among the first
/// `pivot_limit` columns. Returns the pivot columns.
fn eliminate(field: &FieldSpec, m: &mut Matrix, pivot_limit: usize) -> Vec<usize> {
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_limit.min(cols) {
        if row == m.rows {
            break;
        }
        let Some(src) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, src);
        let inv = field.inv(m.get(row, col)).expect("pivot is nonzero");
        if inv != FieldElement::ONE {
            for c in col..cols {
                let v = m.get(row, c);
                m.set(row, c, field.mul(v, inv));
            }
        }
        let (before, rest) = m.entries.split_at_mut(row * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
            let f = other[col];
            if !f.is_zero() {
                axpy(field, &mut other[col..], field.neg(f), &pivot_row[col..]);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Reduced row echelon form and rank. The zero rows stay at the bottom.
pub fn rref(field: &FieldSpec, m: &Matrix) -> (Matrix, usize) {
    let mut out = m.clone();
    let rank = eliminate(field, &mut out, m.cols).len();
    (out, rank)
}

pub fn rank(field: &FieldSpec, m: &Matrix) -> usize {
    rref(field, m).1
}

/// Basis (as rows) of the right null space `{x : M x = 0}`.
pub fn null_space(field: &FieldSpec, m: &Matrix) -> Matrix {
    let mut r = m.clone();
    let pivots = eliminate(field, &mut r, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(free.len(), m.cols);
    for (i, &j) in free.iter().enumerate() {
        out.set(i, j, FieldElement::ONE);
        for (row, &p) in pivots.iter().enumerate() {
            out.set(i, p, field.neg(r.get(row, j)));
        }
    }
    out
}

/// Basis (as rows) of the left null space `{y : y M = 0}`.
pub fn left_null_space(field: &FieldSpec, m: &Matrix) -> Matrix {
    let mut aug = m.hstack(&Matrix::identity(m.rows)).expect("row counts agree");
    let rank = eliminate(field, &mut aug, m.cols).len();
    let mut out = Matrix::zeros(m.rows - rank, m.rows);
    for (i, r) in (rank..m.rows).enumerate() {
        for c in 0..m.rows {
            out.set(i, c, aug.get(r, m.cols + c));
        }
    }
    out
}

/// Number of nonzero coordinates.
pub fn weight(v: &[FieldElement]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// Counter over `F_q^len`, coordinate 0 changing fastest.
#[derive(Clone, Debug)]
pub struct CoefficientTuples {
    q: u32,
    current: Vec<u32>,
    done: bool,
}

impl CoefficientTuples {
    pub fn new(q: u32, len: usize) -> Self {
        CoefficientTuples { q, current: vec![0; len], done: false }
    }
}

impl Iterator for CoefficientTuples {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        if self.done {
            return None;
        }
        let out = self.current.iter().map(|&c| FieldElement::from_code(c)).collect();
        let mut i = 0;
        loop {
            if i == self.current.len() {
                self.done = true;
                break;
            }
            self.current[i] += 1;
            if self.current[i] < self.q {
                break;
            }
            self.current[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Projective representatives of `F_q^len`: nonzero tuples whose first
/// nonzero entry is 1, in counter order.
pub fn projective_points(q: u32, len: usize) -> impl Iterator<Item = Vector> {
    CoefficientTuples::new(q, len).filter(|c| c.iter().find(|x| !x.is_zero()) == Some(&FieldElement::ONE))
}

/// Scales `v` so that its first nonzero entry is 1. Zero vectors pass through.
pub fn normalize(field: &FieldSpec, v: &[FieldElement]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(&lead) => {
            let inv = field.inv(lead).expect("nonzero");
            v.iter().map(|&x| field.mul(x, inv)).collect()
        }
        None => v.to_vec(),
    }
}

/// A subspace of F_q^n stored as the reduced row echelon form of any
/// spanning set. Two `Subspace` values are equal exactly when they span the
/// same space.
#[derive(Clone)]
pub struct Subspace {
    field: Arc<FieldSpec>,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis.cmp(&other.basis)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, k={}) ", self.ambient_dim(), self.dim())?;
        self.basis.fmt(f)
    }
}

impl Subspace {
    /// Row span of `rows`, each of length `n`. The zero subspace is allowed
    /// here; callers that need a code check the dimension themselves.
    pub fn from_rows(field: &Arc<FieldSpec>, n: usize, rows: &[Vector]) -> Result<Self> {
        Self::from_generator(field, &Matrix::from_rows(n, rows)?)
    }

    /// Row span of a generator matrix.
    pub fn from_generator(field: &Arc<FieldSpec>, g: &Matrix) -> Result<Self> {
        let mut basis = g.clone();
        let pivots = eliminate(field, &mut basis, g.cols);
        let k = pivots.len();
        basis.entries.truncate(k * g.cols);
        basis.rows = k;
        Ok(Subspace { field: Arc::clone(field), basis, pivots })
    }

    /// Like [`Subspace::from_generator`] but rejects generator matrices whose
    /// rows are dependent.
    pub fn from_full_rank(field: &Arc<FieldSpec>, g: &Matrix) -> Result<Self> {
        let s = Self::from_generator(field, g)?;
        if s.dim() == 0 {
            return Err(Error::EmptySpan);
        }
        if s.dim() != g.rows() {
            return Err(Error::DimensionMismatch { expected: g.rows(), found: s.dim() });
        }
        Ok(s)
    }

    pub fn zero(field: &Arc<FieldSpec>, n: usize) -> Self {
        Subspace { field: Arc::clone(field), basis: Matrix::zeros(0, n), pivots: Vec::new() }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if !(Arc::ptr_eq(&self.field, &other.field) || self.field == other.field) {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    /// Remainder of `v` after clearing the pivot coordinates; zero iff `v`
    /// lies in the span.
    fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if !c.is_zero() {
                axpy(&self.field, &mut r, self.field.neg(c), self.basis.row(row));
            }
        }
        r
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "vector length must match ambient dimension");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` with respect to the canonical basis. Only
    /// meaningful when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[FieldElement]) -> Vector {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn combine(&self, coeffs: &[FieldElement]) -> Vector {
        self.basis.combine(&self.field, coeffs)
    }

    /// Every vector of the subspace, `q^k` of them, in counter order of the
    /// coefficient tuples.
    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        CoefficientTuples::new(self.field.q(), self.dim()).map(move |c| self.combine(&c))
    }

    /// One representative per 1-dimensional subspace: the coefficient tuple
    /// with respect to the canonical basis has first nonzero entry 1.
    pub fn lines(&self) -> impl Iterator<Item = Vector> + '_ {
        projective_points(self.field.q(), self.dim()).map(move |c| self.combine(&c))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter_rows().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Self::from_generator(&self.field, &self.basis.vstack(&other.basis)?)
    }

    /// Span of `self` and one extra vector.
    pub fn with_vector(&self, v: &[FieldElement]) -> Result<Subspace> {
        let extra = Matrix::from_rows(self.ambient_dim(), &[v.to_vec()])?;
        Self::from_generator(&self.field, &self.basis.vstack(&extra)?)
    }

    /// `dim X + dim Y - dim(X + Y)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(self.dim() + other.dim() - rank(&self.field, &stacked))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let coeffs = self.intersection_coordinates(other)?;
        let g = coeffs.mul(&self.field, &self.basis)?;
        Self::from_generator(&self.field, &g)
    }

    /// Rows span the coordinate tuples (w.r.t. the canonical basis of `self`)
    /// of the vectors in `self ∩ other`.
    pub(crate) fn intersection_coordinates(&self, other: &Subspace) -> Result<Matrix> {
        self.check_compatible(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        let lns = left_null_space(&self.field, &stacked);
        let mut out = Matrix::zeros(lns.rows(), self.dim());
        for r in 0..lns.rows() {
            for c in 0..self.dim() {
                out.set(r, c, lns.get(r, c));
            }
        }
        Ok(out)
    }

    /// All `[k]_q` hyperplanes of the subspace.
    pub fn hyperplanes(&self) -> Hyperplanes<'_> {
        Hyperplanes::new(self, &Matrix::zeros(0, self.dim()))
    }

    /// The `[k-m]_q` hyperplanes of `self` containing `w`, where `m = dim w`.
    pub fn hyperplanes_containing(&self, w: &Subspace) -> Result<Hyperplanes<'_>> {
        self.check_compatible(w)?;
        if !w.is_subspace_of(self) {
            return Err(Error::params("subspace is not contained in the ambient code"));
        }
        let coords: Vec<Vector> = w.basis.iter_rows().map(|r| self.coordinates(r)).collect();
        Ok(Hyperplanes::new(self, &Matrix::from_rows(self.dim(), &coords)?))
    }
}

/// Hyperplanes of a subspace `X` containing a fixed subspace `W`.
///
/// Each hyperplane is the kernel of a linear functional on `X` that vanishes
/// on `W`. Functionals are taken one per projective point of the annihilator
/// of `W`, so each hyperplane appears exactly once.
pub struct Hyperplanes<'a> {
    space: &'a Subspace,
    annihilator: Matrix,
    functionals: Box<dyn Iterator<Item = Vector> + 'a>,
}

impl<'a> Hyperplanes<'a> {
    fn new(space: &'a Subspace, w_coords: &Matrix) -> Self {
        let annihilator = null_space(&space.field, w_coords);
        let functionals = Box::new(projective_points(space.field.q(), annihilator.rows()));
        Hyperplanes { space, annihilator, functionals }
    }
}

impl Iterator for Hyperplanes<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let field = &self.space.field;
        let c = self.functionals.next()?;
        let functional = self.annihilator.combine(field, &c);
        let f = Matrix::from_rows(functional.len(), &[functional]).expect("row length");
        let kernel = null_space(field, &f);
        let g = kernel.mul(field, &self.space.basis).expect("kernel has k columns");
        Some(Subspace::from_generator(field, &g).expect("valid generator"))
    }
}

/// All k-dimensional subspaces of F_q^n, generated directly as reduced row
/// echelon matrices: pivot sets in lexicographic order, free entries in
/// counter order.
pub struct Grassmannian {
    field: Arc<FieldSpec>,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: CoefficientTuples,
    exhausted: bool,
}

impl Grassmannian {
    pub fn new(field: &Arc<FieldSpec>, n: usize, k: usize) -> Self {
        let pivots: Vec<usize> = (0..k).collect();
        let free = free_positions(&pivots, n);
        let counter = CoefficientTuples::new(field.q(), free.len());
        Grassmannian { field: Arc::clone(field), n, k, pivots, free, counter, exhausted: k > n }
    }

    fn advance_pivots(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.free = free_positions(&self.pivots, n);
                self.counter = CoefficientTuples::new(self.field.q(), self.free.len());
                return true;
            }
        }
        false
    }
}

fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

impl Iterator for Grassmannian {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if self.exhausted {
                return None;
            }
            if let Some(vals) = self.counter.next() {
                let mut m = Matrix::zeros(self.k, self.n);
                for (r, &p) in self.pivots.iter().enumerate() {
                    m.set(r, p, FieldElement::ONE);
                }
                for (&(r, c), &v) in self.free.iter().zip(&vals) {
                    m.set(r, c, v);
                }
                return Some(Subspace {
                    field: Arc::clone(&self.field),
                    basis: m,
                    pivots: self.pivots.clone(),
                });
            }
            if !self.advance_pivots() {
                self.exhausted = true;
            }
        }
    }
}
