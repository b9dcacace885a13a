//! One kernel step of the saturation and trimming iterations, shared by the global and
//! the local algorithms.
//!
//! The step receives the τ-matrix `G` of a model basis `c` and the depth `δ` (`q` when
//! saturating, `q - 1` when trimming). It computes the lattice `span(c) + p^(-1) c x̂` where
//! `x` runs over the solutions of `G τ(x̂) ≡ 0 mod p^δ` in `F_p[t]^r`.

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::poly::Poly;
use crate::ff::ring::{BivarRing, Matrix};
use crate::model::smith::{self, smith_normal_form, ElementaryOp};
use crate::model::theta_place::ThetaPlace;

/// Outcome of the kernel computation: `K` and the lifted column transcript of `X̂`.
pub(crate) struct KernelStep {
    pub in_kernel: Vec<bool>,
    pub ops: Vec<ElementaryOp<BivarPoly>>,
}

impl KernelStep {
    pub fn kernel_size(&self) -> usize {
        self.in_kernel.iter().filter(|&&k| k).count()
    }
}

/// The `δ r × r` matrix over `F_p[t]` of `x ↦ G τ(x̂) mod p^δ`, in the untwisted coordinates
/// (the map is `x ↦ T τ_p(x)`).
pub(crate) fn digit_matrix(place: &ThetaPlace, g: &Matrix<BivarPoly>, depth: usize) -> Result<Matrix<Poly>> {
    let r = g.nrows();
    let mut t = Matrix::filled(depth * r, r, Poly::zero(place.residue_field()));
    for j in 0..r {
        for i in 0..r {
            for (v, d) in place.bivar_digits(&g[(j, i)], depth)?.into_iter().enumerate() {
                t[(j * depth + v, i)] = d;
            }
        }
    }
    Ok(t)
}

pub(crate) fn kernel_step(place: &ThetaPlace, g: &Matrix<BivarPoly>, depth: usize) -> Result<KernelStep> {
    let r = g.nrows();
    let t = digit_matrix(place, g, depth)?;
    let snf = smith_normal_form(&t);
    let mut in_kernel = vec![false; r];
    for k in snf.zero_diagonal() {
        in_kernel[k] = true;
    }
    // The semilinear kernel is τ_p^(-1) of the linear one: twist every multiplier.
    let ops = snf.col_ops.iter().map(|op| op.map(|c| place.lift_t_poly(&place.frobenius_inv(c)))).collect();
    Ok(KernelStep { in_kernel, ops })
}

/// `X̂^(-1) G τ(X̂)`, replaying the transcript.
pub(crate) fn conjugate(g: &Matrix<BivarPoly>, ops: &[ElementaryOp<BivarPoly>], reduce: impl Fn(BivarPoly) -> BivarPoly) -> Matrix<BivarPoly> {
    let ring = BivarRing(g.entries()[0].field().clone());
    let mut y = g.clone();
    for op in ops {
        smith::apply_row_op_inverse_of_col(&ring, &mut y, op);
        smith::apply_col_op(&ring, &mut y, &op.map(|c| c.tau_theta()));
        if matches!(op, ElementaryOp::AddMul { .. }) {
            y = y.map(|e| reduce(e.clone()));
        }
    }
    y
}

/// `W X̂`, replaying the transcript.
pub(crate) fn apply_to_basis(w: &Matrix<BivarPoly>, ops: &[ElementaryOp<BivarPoly>], reduce: impl Fn(BivarPoly) -> BivarPoly) -> Matrix<BivarPoly> {
    let ring = BivarRing(w.entries()[0].field().clone());
    let mut m = w.clone();
    for op in ops {
        smith::apply_col_op(&ring, &mut m, op);
    }
    m.map(|e| reduce(e.clone()))
}

/// Multiplies entry `(i, j)` by `p^e(i, j)`, dividing exactly where the exponent is negative.
pub(crate) fn scale_by_place(
    place: &ThetaPlace,
    y: &Matrix<BivarPoly>,
    exponent: impl Fn(usize, usize) -> i64,
) -> Result<Matrix<BivarPoly>> {
    let p = place.poly();
    let mut out = y.clone();
    for i in 0..y.nrows() {
        for j in 0..y.ncols() {
            let e = exponent(i, j);
            let x = &y[(i, j)];
            out[(i, j)] = if e >= 0 {
                x.mul_theta_poly(&p.pow(e as u64))
            } else {
                x.div_exact_theta(&p.pow((-e) as u64)).ok_or_else(|| {
                    Error::Internal(format!("entry ({i}, {j}) of the new τ-matrix is not divisible by p^{}", -e))
                })?
            };
        }
    }
    Ok(out)
}

/// Right multiplication by `diag(1 for K, p for the rest)`.
pub(crate) fn scale_columns_outside(place: &ThetaPlace, w: &Matrix<BivarPoly>, in_kernel: &[bool]) -> Matrix<BivarPoly> {
    Matrix::from_fn(w.nrows(), w.ncols(), |i, j| {
        if in_kernel[j] { w[(i, j)].clone() } else { w[(i, j)].mul_theta_poly(place.poly()) }
    })
}
