//! Commutative rings, dense matrices over them and division-free determinant algorithms.

use std::fmt;

use crate::ff::bivar::BivarPoly;
use crate::ff::field::Field;
use crate::ff::poly::Poly;

/// A commutative ring with explicit element operations, used by the generic linear algebra.
pub trait CommRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// A field viewed as a [`CommRing`].
#[derive(Clone, Debug)]
pub struct FieldRing(pub Field);

impl CommRing for FieldRing {
    type Elem = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.0.add(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.0.sub(*a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.0.neg(*a)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
}

/// The polynomial ring over a field.
#[derive(Clone, Debug)]
pub struct PolyRing(pub Field);

impl CommRing for PolyRing {
    type Elem = Poly;
    fn zero(&self) -> Poly {
        Poly::zero(&self.0)
    }
    fn one(&self) -> Poly {
        Poly::one(&self.0)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// `F_q[t, θ]`.
#[derive(Clone, Debug)]
pub struct BivarRing(pub Field);

impl CommRing for BivarRing {
    type Elem = BivarPoly;
    fn zero(&self) -> BivarPoly {
        BivarPoly::zero(&self.0)
    }
    fn one(&self) -> BivarPoly {
        BivarPoly::one(&self.0)
    }
    fn add(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        a.add(b)
    }
    fn sub(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        a.sub(b)
    }
    fn mul(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        a.mul(b)
    }
    fn neg(&self, a: &BivarPoly) -> BivarPoly {
        a.neg()
    }
    fn is_zero(&self, a: &BivarPoly) -> bool {
        a.is_zero()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }

    pub fn map<U: Clone>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// The square submatrix on the given index set.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }
}

impl<T: Clone> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j)
    }
}

impl<T: Clone> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        self.get_mut(i, j)
    }
}

pub fn identity<R: CommRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn zeros<R: CommRing>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::filled(rows, cols, ring.zero())
}

pub fn mat_mul<R: CommRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.ncols(), b.nrows(), "dimension mismatch");
    Matrix::from_fn(a.nrows(), b.ncols(), |i, j| {
        let mut acc = ring.zero();
        for k in 0..a.ncols() {
            let (x, y) = (a.get(i, k), b.get(k, j));
            if !ring.is_zero(x) && !ring.is_zero(y) {
                acc = ring.add(&acc, &ring.mul(x, y));
            }
        }
        acc
    })
}

pub fn mat_add<R: CommRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.nrows(), a.ncols(), |i, j| ring.add(a.get(i, j), b.get(i, j)))
}

pub fn mat_scale<R: CommRing>(ring: &R, a: &Matrix<R::Elem>, c: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(x, c))
}

pub fn is_identity<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    let one = ring.one();
    (0..a.nrows()).all(|i| {
        (0..a.ncols()).all(|j| {
            let x = a.get(i, j);
            if i == j { ring.is_zero(&ring.sub(x, &one)) } else { ring.is_zero(x) }
        })
    })
}

/// Kronecker product `a ⊗ b`.
pub fn kronecker<R: CommRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let (br, bc) = (b.nrows(), b.ncols());
    Matrix::from_fn(a.nrows() * br, a.ncols() * bc, |i, j| {
        ring.mul(a.get(i / br, j / bc), b.get(i % br, j % bc))
    })
}

/// Coefficients `c_0 = 1, c_1, ..., c_n` of `det(I - T A)` by Berkowitz's division-free
/// algorithm. Equivalently `det(xI - A) = Σ c_k x^(n-k)`.
pub fn det_one_minus_t<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.nrows();
    let mut p = vec![ring.one()];
    for k in 0..n {
        // Leading principal block of size k, new column C = A[0..k][k], new row R = A[k][0..k].
        let akk = a.get(k, k);
        let mut t = Vec::with_capacity(k + 2);
        t.push(ring.one());
        t.push(ring.neg(akk));
        let mut v: Vec<R::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for m in 0..k {
            let mut dot = ring.zero();
            for (j, vj) in v.iter().enumerate() {
                let r = a.get(k, j);
                if !ring.is_zero(r) && !ring.is_zero(vj) {
                    dot = ring.add(&dot, &ring.mul(r, vj));
                }
            }
            t.push(ring.neg(&dot));
            if m + 1 < k {
                v = (0..k)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (j, vj) in v.iter().enumerate() {
                            let x = a.get(i, j);
                            if !ring.is_zero(x) && !ring.is_zero(vj) {
                                acc = ring.add(&acc, &ring.mul(x, vj));
                            }
                        }
                        acc
                    })
                    .collect();
            }
        }
        p = toeplitz_mul(ring, &t, &p);
    }
    p
}

/// Lower-triangular Toeplitz product: `out[i] = Σ_{j ≤ i} t[i - j] p[j]`, `out` one longer than `p`.
fn toeplitz_mul<R: CommRing>(ring: &R, t: &[R::Elem], p: &[R::Elem]) -> Vec<R::Elem> {
    (0..=p.len())
        .map(|i| {
            let mut acc = ring.zero();
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                if i - j < t.len() && !ring.is_zero(pj) && !ring.is_zero(&t[i - j]) {
                    acc = ring.add(&acc, &ring.mul(&t[i - j], pj));
                }
            }
            acc
        })
        .collect()
}

/// Determinant via [`det_one_minus_t`].
pub fn determinant<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.nrows();
    if n == 0 {
        return ring.one();
    }
    let c = det_one_minus_t(ring, a);
    if n % 2 == 0 { c[n].clone() } else { ring.neg(&c[n]) }
}

/// Adjugate from the characteristic polynomial: `adj(A) = (-1)^(n+1) Σ_{k<n} c_k A^(n-1-k)`.
pub fn adjugate<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let c = det_one_minus_t(ring, a);
    // Horner: X = A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I.
    let mut x = identity(ring, n);
    for ck in c.iter().take(n).skip(1) {
        x = mat_mul(ring, &x, a);
        for i in 0..n {
            let d = ring.add(x.get(i, i), ck);
            x.set(i, i, d);
        }
    }
    if n % 2 == 1 { x } else { x.map(|e| ring.neg(e)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::GaloisField;

    #[test]
    fn berkowitz_small() {
        let f = FieldRing(GaloisField::prime(7).unwrap());
        let m = Matrix::from_rows(vec![vec![1u32, 2, 3], vec![4, 5, 6], vec![0, 1, 1]]);
        // det = 1*(5-6) - 2*(4-0) + 3*(4-0) = -1 - 8 + 12 = 3
        assert_eq!(determinant(&f, &m), 3);
        let adj = adjugate(&f, &m);
        let prod = mat_mul(&f, &m, &adj);
        assert_eq!(prod, Matrix::from_fn(3, 3, |i, j| if i == j { 3 } else { 0 }));
        let c = det_one_minus_t(&f, &m);
        // trace = 7 = 0 mod 7
        assert_eq!(c[1], 0);
    }
}
