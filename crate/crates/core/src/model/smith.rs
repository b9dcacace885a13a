//! Smith normal form over `F[t]` with recorded elementary operations.
//!
//! Column operations are restricted to transvections and swaps, so that replaying the
//! transcript over a bigger ring (with lifted multipliers) yields a unimodular matrix.

use crate::ff::field::Field;
use crate::ff::poly::Poly;
use crate::ff::ring::{self, CommRing, Matrix, PolyRing};

/// An elementary operation on rows or columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryOp<T> {
    Swap(usize, usize),
    /// Adds `c` times line `src` to line `dst`.
    AddMul { src: usize, dst: usize, c: T },
}

impl<T> ElementaryOp<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> ElementaryOp<U> {
        match self {
            ElementaryOp::Swap(a, b) => ElementaryOp::Swap(*a, *b),
            ElementaryOp::AddMul { src, dst, c } => ElementaryOp::AddMul { src: *src, dst: *dst, c: f(c) },
        }
    }
}

/// `P T Q = S`, where `P` and `Q` are the products of the recorded row and column operations
/// applied to identities. In the usual notation `T = U S V` with `U = P^(-1)`, `V = Q^(-1)`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: Matrix<Poly>,
    pub row_ops: Vec<ElementaryOp<Poly>>,
    pub col_ops: Vec<ElementaryOp<Poly>>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        (0..self.s.nrows().min(self.s.ncols())).filter(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// Indices `k` with `s_kk = 0` (including columns beyond the row count).
    pub fn zero_diagonal(&self) -> Vec<usize> {
        (0..self.s.ncols()).filter(|&k| k >= self.s.nrows() || self.s[(k, k)].is_zero()).collect()
    }

    /// `P`, with `P T Q = S`.
    pub fn p(&self, field: &Field) -> Matrix<Poly> {
        let r = PolyRing(field.clone());
        let mut m = ring::identity(&r, self.s.nrows());
        for op in &self.row_ops {
            apply_row_op(&r, &mut m, op);
        }
        m
    }

    /// `Q`, with `P T Q = S`.
    pub fn q(&self, field: &Field) -> Matrix<Poly> {
        let r = PolyRing(field.clone());
        let mut m = ring::identity(&r, self.s.ncols());
        for op in &self.col_ops {
            apply_col_op(&r, &mut m, op);
        }
        m
    }

    /// `U = P^(-1)`.
    pub fn u(&self, field: &Field) -> Matrix<Poly> {
        let r = PolyRing(field.clone());
        let mut m = ring::identity(&r, self.s.nrows());
        for op in &self.row_ops {
            // P = E_n ... E_1, so U = E_1^(-1) ... E_n^(-1); build it by right-multiplying.
            apply_col_op_inverse_of_row(&r, &mut m, op);
        }
        m
    }

    /// `V = Q^(-1)`.
    pub fn v(&self, field: &Field) -> Matrix<Poly> {
        let r = PolyRing(field.clone());
        let mut m = ring::identity(&r, self.s.ncols());
        for op in &self.col_ops {
            apply_row_op_inverse_of_col(&r, &mut m, op);
        }
        m
    }
}

/// Left multiplication by the elementary matrix of `op`.
pub fn apply_row_op<R: CommRing>(ring: &R, m: &mut Matrix<R::Elem>, op: &ElementaryOp<R::Elem>) {
    match op {
        ElementaryOp::Swap(a, b) => m.swap_rows(*a, *b),
        ElementaryOp::AddMul { src, dst, c } => {
            for j in 0..m.ncols() {
                let v = ring.add(&m[(*dst, j)], &ring.mul(c, &m[(*src, j)]));
                m[(*dst, j)] = v;
            }
        }
    }
}

/// Right multiplication by the elementary matrix of `op`.
pub fn apply_col_op<R: CommRing>(ring: &R, m: &mut Matrix<R::Elem>, op: &ElementaryOp<R::Elem>) {
    match op {
        ElementaryOp::Swap(a, b) => m.swap_cols(*a, *b),
        ElementaryOp::AddMul { src, dst, c } => {
            for i in 0..m.nrows() {
                let v = ring.add(&m[(i, *dst)], &ring.mul(c, &m[(i, *src)]));
                m[(i, *dst)] = v;
            }
        }
    }
}

/// `M ← M E^(-1)` for the row-operation matrix `E` of `op`.
pub fn apply_col_op_inverse_of_row<R: CommRing>(ring: &R, m: &mut Matrix<R::Elem>, op: &ElementaryOp<R::Elem>) {
    match op {
        ElementaryOp::Swap(a, b) => m.swap_cols(*a, *b),
        // E = I + c e_dst e_src^T, E^(-1) = I - c e_dst e_src^T: col_src -= c col_dst.
        ElementaryOp::AddMul { src, dst, c } => {
            for i in 0..m.nrows() {
                let v = ring.sub(&m[(i, *src)], &ring.mul(c, &m[(i, *dst)]));
                m[(i, *src)] = v;
            }
        }
    }
}

/// `M ← E^(-1) M` for the column-operation matrix `E` of `op`.
pub fn apply_row_op_inverse_of_col<R: CommRing>(ring: &R, m: &mut Matrix<R::Elem>, op: &ElementaryOp<R::Elem>) {
    match op {
        ElementaryOp::Swap(a, b) => m.swap_rows(*a, *b),
        // E = I + c e_src e_dst^T, E^(-1) = I - c e_src e_dst^T: row_src -= c row_dst.
        ElementaryOp::AddMul { src, dst, c } => {
            for j in 0..m.ncols() {
                let v = ring.sub(&m[(*src, j)], &ring.mul(c, &m[(*dst, j)]));
                m[(*src, j)] = v;
            }
        }
    }
}

/// Smith normal form of a matrix over `F[t]`. Diagonal entries are not normalised to be
/// monic, since column scalings are not allowed.
pub fn smith_normal_form(t: &Matrix<Poly>) -> SmithDecomposition {
    let mut a = t.clone();
    let (m, n) = (a.nrows(), a.ncols());
    let pr = match t.entries().first() {
        Some(x) => PolyRing(x.field().clone()),
        None => return SmithDecomposition { s: a, row_ops: Vec::new(), col_ops: Vec::new() },
    };
    let mut row_ops = Vec::new();
    let mut col_ops = Vec::new();
    let row = |a: &mut Matrix<Poly>, ops: &mut Vec<ElementaryOp<Poly>>, op: ElementaryOp<Poly>| {
        apply_row_op(&pr, a, &op);
        ops.push(op);
    };
    let col = |a: &mut Matrix<Poly>, ops: &mut Vec<ElementaryOp<Poly>>, op: ElementaryOp<Poly>| {
        apply_col_op(&pr, a, &op);
        ops.push(op);
    };
    for k in 0..m.min(n) {
        loop {
            // Pivot of minimal degree in the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if let Some(d) = a[(i, j)].degree() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return SmithDecomposition { s: a, row_ops, col_ops };
            };
            if pi != k {
                row(&mut a, &mut row_ops, ElementaryOp::Swap(pi, k));
            }
            if pj != k {
                col(&mut a, &mut col_ops, ElementaryOp::Swap(pj, k));
            }
            let pivot = a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..m {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let (quo, rem) = a[(i, k)].div_rem(&pivot);
                row(&mut a, &mut row_ops, ElementaryOp::AddMul { src: k, dst: i, c: quo.neg() });
                clean &= rem.is_zero();
            }
            for j in k + 1..n {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let (quo, rem) = a[(k, j)].div_rem(&pivot);
                col(&mut a, &mut col_ops, ElementaryOp::AddMul { src: k, dst: j, c: quo.neg() });
                clean &= rem.is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and start over.
            let bad = (k + 1..m).find(|&i| (k + 1..n).any(|j| !a[(i, j)].rem(&pivot).is_zero()));
            match bad {
                Some(i) => row(&mut a, &mut row_ops, ElementaryOp::AddMul { src: i, dst: k, c: Poly::one(pivot.field()) }),
                None => break,
            }
        }
    }
    SmithDecomposition { s: a, row_ops, col_ops }
}

/// Basis (as columns) of `{x : T τ(x) = 0}` for the semilinear map twisted by the field
/// automorphism `tau` acting on coefficients; `tau_inv` is its inverse.
pub fn semilinear_kernel(t: &Matrix<Poly>, tau_inv: impl Fn(&Poly) -> Poly) -> Matrix<Poly> {
    let field = t.entries().first().map(|p| p.field().clone());
    let Some(field) = field else {
        return Matrix::from_fn(t.ncols(), 0, |_, _| unreachable!());
    };
    let snf = smith_normal_form(t);
    let q = snf.q(&field).map(&tau_inv);
    let ker = snf.zero_diagonal();
    Matrix::from_fn(t.ncols(), ker.len(), |i, j| q[(i, ker[j])].clone())
}
