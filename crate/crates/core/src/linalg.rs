//! Exact linear algebra over the rationals: dense matrices, reduced row
//! echelon form, and a subspace calculus (kernel, image, sum, intersection,
//! preimage, complements, induced maps on quotients).
//!
//! Everything here is exact. Subspaces are kept in reduced row echelon form,
//! so subspace equality is plain structural equality and repeated runs of any
//! operation produce bit-identical results.

use num::{BigInt, BigRational, One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Exact rational scalar. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
    #[error("matrix does not map the source subspace into the target subspace")]
    NotPreserved,
}

/// Dense matrix of rationals, row-major. Zero-row and zero-column matrices
/// are valid; they are the maps into and out of the zero space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RMatrix { rows, cols, entries }
    }

    /// Build from nonempty rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        assert!(!rows.is_empty(), "use RMatrix::zero for empty matrices");
        let nrows = rows.len();
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows.into_iter().flatten().collect();
        RMatrix {
            rows: nrows,
            cols,
            entries,
        }
    }

    /// Integer-entry convenience constructor.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Single-row matrix.
    pub fn row_vector(v: Vec<Rational>) -> Self {
        let cols = v.len();
        RMatrix {
            rows: 1,
            cols,
            entries: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        if self.is_zero() || rhs.is_zero() {
            return RMatrix::zero(self.rows, rhs.cols);
        }
        if self.is_identity() {
            return rhs.clone();
        }
        if rhs.is_identity() {
            return self.clone();
        }
        let mut out = RMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scaled(&self, s: &Rational) -> RMatrix {
        RMatrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * s)
    }

    /// Stack `below` under `self`. Zero-row operands are allowed.
    pub fn vstack(&self, below: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, below.cols, "column count mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        RMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn hstack(&self, right: &RMatrix) -> RMatrix {
        assert_eq!(self.rows, right.rows, "row count mismatch");
        RMatrix::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                right.get(r, c - self.cols).clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).clone().recip();
            if !inv.is_one() {
                for j in c..m.cols {
                    let v = m.get(r, j) * &inv;
                    m.set(r, j, v);
                }
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve `self * X = rhs` exactly; the particular solution with all free
    /// variables zero, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &RMatrix) -> Option<RMatrix> {
        assert_eq!(self.rows, rhs.rows, "row count mismatch");
        let (red, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = RMatrix::zero(self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, red.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&RMatrix::identity(self.rows))?;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }
}

impl Serialize for RMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            let row: Vec<RationalRepr> = self.row_slice(r).iter().map(RationalRepr::of).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Wire form of a rational: a JSON integer when it is one and fits in `i64`,
/// a `"p/q"` (or big integer) string otherwise.
#[derive(Serialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Str(String),
}

impl RationalRepr {
    fn of(r: &Rational) -> Self {
        if r.denom().is_one() {
            if let Ok(i) = i64::try_from(r.numer().clone()) {
                return RationalRepr::Int(i);
            }
            return RationalRepr::Str(r.numer().to_string());
        }
        RationalRepr::Str(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Serde adapter for rational vectors in report payloads.
pub fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let repr: Vec<RationalRepr> = v.iter().map(RationalRepr::of).collect();
    repr.serialize(s)
}

/// Render a rational in the wire syntax (`"3"`, `"-1/2"`).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse the wire syntax accepted by [`rational_to_string`].
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator: {s:?}"))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("bad rational denominator: {s:?}"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator: {s:?}"));
    }
    Ok(Rational::new(n, d))
}

/// Subspace of `Q^ambient` held as an RREF basis (rows are basis vectors).
/// The RREF form is the canonical representative, so `==` decides subspace
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: RMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RMatrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RMatrix::identity(ambient),
        }
    }

    /// Span of the rows of `m`, canonicalized.
    pub fn from_rows(m: &RMatrix) -> Self {
        let (red, pivots) = m.rref();
        let dim = pivots.len();
        let basis = RMatrix::from_fn(dim, m.cols(), |r, c| red.get(r, c).clone());
        Subspace {
            ambient: m.cols(),
            basis,
        }
    }

    /// Span of a single vector.
    pub fn line(v: Vec<Rational>) -> Self {
        Subspace::from_rows(&RMatrix::row_vector(v))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Pivot column of each basis row; the basis is already in RREF.
    fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                (0..self.ambient)
                    .find(|&c| !self.basis.get(r, c).is_zero())
                    .expect("RREF basis has no zero rows")
            })
            .collect()
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let mut v = v.to_vec();
        let pivots = self.pivots();
        for (i, &p) in pivots.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (c, slot) in v.iter_mut().enumerate() {
                let nv = &*slot - &f * self.basis.get(i, c);
                *slot = nv;
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Null space of `m`, as a subspace of the domain.
pub fn kernel(m: &RMatrix) -> Subspace {
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Subspace::zero(m.cols());
    }
    let mut rows = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rational::zero(); m.cols()];
        v[f] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(i, f).clone();
        }
        rows.push(v);
    }
    Subspace::from_rows(&RMatrix::from_rows(rows))
}

/// Column span of `m`, as a subspace of the codomain.
pub fn image(m: &RMatrix) -> Subspace {
    Subspace::from_rows(&m.transpose())
}

/// Image of the subspace `s` under the matrix `m`.
pub fn push_through(m: &RMatrix, s: &Subspace) -> Subspace {
    assert_eq!(m.cols(), s.ambient(), "ambient mismatch");
    if s.is_zero() {
        return Subspace::zero(m.rows());
    }
    Subspace::from_rows(&s.basis().mul(&m.transpose()))
}

pub fn sum(a: &Subspace, b: &Subspace) -> Subspace {
    assert_eq!(a.ambient(), b.ambient(), "ambient mismatch");
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    Subspace::from_rows(&a.basis().vstack(b.basis()))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Subspace {
    assert_eq!(a.ambient(), b.ambient(), "ambient mismatch");
    if a.is_zero() || b.is_zero() {
        return Subspace::zero(a.ambient());
    }
    if a.is_full() {
        return b.clone();
    }
    if b.is_full() {
        return a.clone();
    }
    // Relations x·A = y·B, found in the kernel of [Aᵀ | -Bᵀ].
    let rel = a
        .basis()
        .transpose()
        .hstack(&b.basis().transpose().scaled(&-Rational::one()));
    let k = kernel(&rel);
    if k.is_zero() {
        return Subspace::zero(a.ambient());
    }
    let ra = a.dim();
    let mut rows = Vec::with_capacity(k.dim());
    for i in 0..k.dim() {
        let coeffs = &k.basis().row_slice(i)[..ra];
        let mut v = vec![Rational::zero(); a.ambient()];
        for (j, coeff) in coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (c, slot) in v.iter_mut().enumerate() {
                let nv = &*slot + coeff * a.basis().get(j, c);
                *slot = nv;
            }
        }
        rows.push(v);
    }
    Subspace::from_rows(&RMatrix::from_rows(rows))
}

/// Does `a` contain `b`?
pub fn contains(a: &Subspace, b: &Subspace) -> bool {
    assert_eq!(a.ambient(), b.ambient(), "ambient mismatch");
    if b.is_zero() {
        return true;
    }
    if b.dim() > a.dim() {
        return false;
    }
    a.basis().vstack(b.basis()).rank() == a.dim()
}

/// Solve `m x ∈ b` for x; the full preimage subspace.
pub fn preimage(m: &RMatrix, b: &Subspace) -> Subspace {
    assert_eq!(m.rows(), b.ambient(), "ambient mismatch");
    // b is the kernel of its own annihilator; compose with m and take kernels.
    let ann = kernel(b.basis());
    if ann.is_zero() {
        return Subspace::full(m.cols());
    }
    kernel(&ann.basis().mul(m))
}

/// Direct complement of `a` in its ambient space: the greedy extension of
/// `a`'s RREF basis by standard unit vectors in ascending index order.
pub fn complement(a: &Subspace) -> Subspace {
    let n = a.ambient();
    let mut cur = a.clone();
    let mut added: Vec<Vec<Rational>> = Vec::new();
    for j in 0..n {
        if cur.is_full() {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if !cur.contains_vector(&e) {
            cur = sum(&cur, &Subspace::line(e.clone()));
            added.push(e);
        }
    }
    if added.is_empty() {
        return Subspace::zero(n);
    }
    Subspace::from_rows(&RMatrix::from_rows(added))
}

/// Direct complement of `a` inside `b`: greedy extension of `a`'s basis by
/// rows of `b`'s RREF basis, in order.
pub fn complement_within(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    if !contains(b, a) {
        return Err(LinalgError::NotContained);
    }
    let mut cur = a.clone();
    let mut added: Vec<Vec<Rational>> = Vec::new();
    for i in 0..b.dim() {
        if cur.dim() == b.dim() {
            break;
        }
        let row = b.basis().row_slice(i).to_vec();
        if !cur.contains_vector(&row) {
            cur = sum(&cur, &Subspace::line(row.clone()));
            added.push(row);
        }
    }
    if added.is_empty() {
        return Ok(Subspace::zero(a.ambient()));
    }
    Ok(Subspace::from_rows(&RMatrix::from_rows(added)))
}

/// Matrix of the map induced by `m` on the deterministic complements of
/// `w_src` and `w_dst`. Fails if `m` does not map `w_src` into `w_dst`,
/// which is the signal that the claimed subnet is not a subrepresentation.
pub fn quotient_matrix(
    m: &RMatrix,
    w_src: &Subspace,
    w_dst: &Subspace,
) -> Result<RMatrix, LinalgError> {
    assert_eq!(m.cols(), w_src.ambient(), "source ambient mismatch");
    assert_eq!(m.rows(), w_dst.ambient(), "target ambient mismatch");
    if !contains(w_dst, &push_through(m, w_src)) {
        return Err(LinalgError::NotPreserved);
    }
    let c_src = complement(w_src);
    let c_dst = complement(w_dst);
    let q_src = c_src.dim();
    let q_dst = c_dst.dim();
    if q_src == 0 || q_dst == 0 {
        return Ok(RMatrix::zero(q_dst, q_src));
    }
    // Coordinates of each mapped complement basis vector in [w_dst; c_dst].
    let full_dst = w_dst.basis().vstack(c_dst.basis()).transpose();
    let mapped = m.mul(&c_src.basis().transpose());
    let coords = full_dst
        .solve(&mapped)
        .expect("complement stack spans the ambient space");
    Ok(RMatrix::from_fn(q_dst, q_src, |r, c| {
        coords.get(w_dst.dim() + r, c).clone()
    }))
}

/// Outcome of comparing two same-shape matrices for proportionality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proportionality {
    /// Both matrices are zero.
    BothZero,
    /// `a == c * b` for this nonzero scalar `c`.
    Scalar(Rational),
    /// Not proportional (includes exactly one of the two being zero).
    Unrelated,
}

/// Find nonzero `c` with `a == c * b`, reporting the all-zero case apart.
pub fn proportional_nonzero(a: &RMatrix, b: &RMatrix) -> Proportionality {
    assert_eq!(a.rows(), b.rows(), "shape mismatch");
    assert_eq!(a.cols(), b.cols(), "shape mismatch");
    let az = a.is_zero();
    let bz = b.is_zero();
    if az && bz {
        return Proportionality::BothZero;
    }
    if az || bz {
        return Proportionality::Unrelated;
    }
    let k = (0..a.rows() * a.cols())
        .find(|i| !b.entries[*i].is_zero())
        .expect("b is nonzero");
    let c = &a.entries[k] / &b.entries[k];
    if c.is_zero() {
        return Proportionality::Unrelated;
    }
    if *a == b.scaled(&c) {
        Proportionality::Scalar(c)
    } else {
        Proportionality::Unrelated
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RMatrix {
        RMatrix::from_int_rows(rows)
    }

    #[test]
    fn kernel_of_difference_matrix() {
        // Matches the hexagon map with a one-dimensional kernel on the diagonal.
        let k = kernel(&m(&[&[1, -1], &[0, 0]]));
        assert_eq!(k, Subspace::line(vec![rat(1), rat(1)]));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert!(kernel(&RMatrix::identity(2)).is_zero());
    }

    #[test]
    fn kernel_of_projection() {
        let k = kernel(&m(&[&[1, 0], &[0, 0]]));
        assert_eq!(k, Subspace::line(vec![rat(0), rat(1)]));
    }

    #[test]
    fn image_basics() {
        assert!(image(&RMatrix::identity(3)).is_full());
        assert!(image(&RMatrix::zero(2, 2)).is_zero());
        let im = image(&m(&[&[0, 1], &[0, 1]]));
        assert_eq!(im, Subspace::line(vec![rat(1), rat(1)]));
    }

    #[test]
    fn sum_intersect_preimage() {
        let a = Subspace::line(vec![rat(1), rat(1)]);
        let b = Subspace::line(vec![rat(0), rat(1)]);
        assert!(sum(&a, &b).is_full());
        let full = Subspace::full(2);
        let x = Subspace::line(vec![rat(1), rat(0)]);
        assert_eq!(intersect(&full, &x), x);
        assert_eq!(preimage(&RMatrix::identity(2), &b), b);
    }

    #[test]
    fn complement_examples() {
        assert!(complement(&Subspace::zero(2)).is_full());
        assert_eq!(
            complement(&Subspace::line(vec![rat(1), rat(0)])),
            Subspace::line(vec![rat(0), rat(1)])
        );
        assert!(complement(&Subspace::full(3)).is_zero());
    }

    #[test]
    fn quotient_matrix_examples() {
        let w = Subspace::line(vec![rat(1), rat(0)]);
        let q = quotient_matrix(&RMatrix::identity(2), &w, &w).unwrap();
        assert!(q.is_identity());
        assert_eq!(q.rows(), 1);

        let w2 = Subspace::line(vec![rat(0), rat(1)]);
        let q = quotient_matrix(&RMatrix::zero(2, 2), &w2, &w2).unwrap();
        assert!(q.is_zero());

        let q = quotient_matrix(&m(&[&[1, 0], &[0, 0]]), &w2, &w2).unwrap();
        assert_eq!(q, m(&[&[1]]));
    }

    #[test]
    fn quotient_matrix_rejects_non_subrep() {
        let w = Subspace::line(vec![rat(1), rat(0)]);
        let rot = m(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            quotient_matrix(&rot, &w, &w),
            Err(LinalgError::NotPreserved)
        );
    }

    #[test]
    fn proportionality_cases() {
        let id = RMatrix::identity(2);
        assert_eq!(
            proportional_nonzero(&id.scaled(&rat(2)), &id),
            Proportionality::Scalar(rat(2))
        );
        assert_eq!(
            proportional_nonzero(&RMatrix::zero(2, 2), &RMatrix::zero(2, 2)),
            Proportionality::BothZero
        );
        assert_eq!(
            proportional_nonzero(&m(&[&[1, 0], &[0, 0]]), &m(&[&[0, 1], &[0, 0]])),
            Proportionality::Unrelated
        );
        assert_eq!(
            proportional_nonzero(&RMatrix::zero(2, 2), &id),
            Proportionality::Unrelated
        );
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());

        let rhs = m(&[&[1], &[0]]);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul(&x), rhs);

        // Inconsistent system.
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&m(&[&[1], &[0]])).is_none());
    }

    #[test]
    fn zero_dimensional_spaces_are_first_class() {
        let z = RMatrix::zero(0, 3);
        assert!(kernel(&z).is_full());
        assert_eq!(kernel(&z).ambient(), 3);
        let to_zero = RMatrix::zero(0, 2);
        assert!(image(&to_zero).ambient() == 0);
        assert!(Subspace::zero(0).is_full());
    }

    #[test]
    fn rational_wire_syntax() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(rational_to_string(&ratio(-1, 2)), "-1/2");
        assert_eq!(rational_to_string(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
