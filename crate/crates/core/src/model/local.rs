//! The maximal model over the completion `F_q[t, θ]^_p ≅ F_p[t][[u]]`, computed with all
//! `θ`-adic data truncated modulo a power of `p`.
//!
//! Precision is tracked exactly: every division by `p` lowers the known precision of the
//! τ-matrix, and a step that needs more digits than are known reports
//! [`Error::InsufficientPrecision`]. [`maximal_model_local`] retries with doubled precision.

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::poly::Poly;
use crate::ff::ring::{self, BivarRing, Matrix};
use crate::model::step;
use crate::model::theta_place::ThetaPlace;
use crate::motive::Motive;

/// Largest working precision tried before giving up.
const MAX_WORKING_PRECISION: usize = 1 << 14;

/// A basis of the local maximal model at `p`.
#[derive(Clone, Debug)]
pub struct LocalLattice {
    place: Poly,
    working_precision: usize,
    precision: usize,
    w_num: Matrix<BivarPoly>,
    w_den_exp: usize,
    phi: Matrix<BivarPoly>,
    h: i64,
    saturation_steps: usize,
    trim_steps: usize,
}

impl LocalLattice {
    pub fn place(&self) -> &Poly {
        &self.place
    }

    /// The `p`-adic precision the computation started from.
    pub fn working_precision(&self) -> usize {
        self.working_precision
    }

    /// The τ-matrix is known modulo `p^precision`.
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `W = w_numerator / p^w_denominator_exponent`, known modulo `p^working_precision`.
    pub fn w_numerator(&self) -> &Matrix<BivarPoly> {
        &self.w_num
    }

    pub fn w_denominator_exponent(&self) -> usize {
        self.w_den_exp
    }

    /// `Φ` of the local model, reduced modulo `p^precision`; the τ-matrix is `(t-θ)^(-h) Φ`.
    pub fn phi(&self) -> &Matrix<BivarPoly> {
        &self.phi
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn saturation_steps(&self) -> usize {
        self.saturation_steps
    }

    pub fn trim_steps(&self) -> usize {
        self.trim_steps
    }

    /// Whether the original basis was already maximal at `p`.
    pub fn is_identity(&self) -> bool {
        let f = self.place.field();
        let id = ring::identity(&BivarRing(f.clone()), self.w_num.nrows());
        let m = self.place.pow(self.working_precision as u64);
        self.w_den_exp == 0 && self.w_num.map(|e| e.sub(&BivarPoly::one(f)).rem_theta(&m)) == id.map(|e| e.sub(&BivarPoly::one(f)))
    }
}

fn reduce_matrix(g: &Matrix<BivarPoly>, m: &Poly) -> Matrix<BivarPoly> {
    g.map(|e| e.rem_theta(m))
}

/// The local maximal model at `p`, doubling the working precision until it suffices.
pub fn maximal_model_local(m: &Motive, p: &Poly) -> Result<LocalLattice> {
    let place = ThetaPlace::new(p, m.field().base_order() as usize)?;
    let n = place.valuation(&m.det_shape()?.delta);
    let mut prec = n + 1;
    loop {
        match run(m, &place, n, prec) {
            Err(Error::InsufficientPrecision(_)) if prec < MAX_WORKING_PRECISION => prec *= 2,
            other => return other,
        }
    }
}

/// The local maximal model at `p` with a fixed working precision.
pub fn maximal_model_local_at(m: &Motive, p: &Poly, prec: usize) -> Result<LocalLattice> {
    let place = ThetaPlace::new(p, m.field().base_order() as usize)?;
    let n = place.valuation(&m.det_shape()?.delta);
    run(m, &place, n, prec)
}

fn run(m: &Motive, place: &ThetaPlace, n: usize, prec0: usize) -> Result<LocalLattice> {
    let f = m.field();
    let q = f.base_order() as usize;
    let qi = q as i64;
    let r = m.rank();
    let p = place.poly();
    let insufficient = || Error::InsufficientPrecision(prec0);
    let mut prec = prec0;
    let mut g = reduce_matrix(m.phi(), &p.pow(prec as u64));
    let mut w_num = ring::identity(&BivarRing(f.clone()), r);
    let mut w_den_exp = 0usize;
    let (mut sat, mut trim) = (0usize, 0usize);

    // One step; returns false once the lattice is stationary.
    let advance = |g: &mut Matrix<BivarPoly>,
                   prec: &mut usize,
                   w_num: &mut Matrix<BivarPoly>,
                   wexp: usize,
                   depth: usize,
                   saturating: bool|
     -> Result<bool> {
        if *prec < depth {
            return Err(insufficient());
        }
        let k = step::kernel_step(place, g, depth)?;
        let ks = k.kernel_size();
        if (saturating && ks == 0) || (!saturating && ks == r) {
            return Ok(false);
        }
        let modulus = p.pow(*prec as u64);
        let y = step::conjugate(g, &k.ops, |x| x.rem_theta(&modulus));
        let kk = &k.in_kernel;
        let shift = if saturating { 1 - qi } else { 0 };
        let e = |i: usize, j: usize| qi * (!kk[j]) as i64 - (!kk[i]) as i64 + shift;
        let emin = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| e(i, j)).min().unwrap_or(0);
        if (*prec as i64) + emin < 1 {
            return Err(insufficient());
        }
        let scaled = step::scale_by_place(place, &y, e).map_err(|_| insufficient())?;
        *prec = (*prec as i64 + emin) as usize;
        *g = reduce_matrix(&scaled, &p.pow(*prec as u64));
        let wmod = p.pow((prec0 + wexp + 1) as u64);
        let w = step::apply_to_basis(w_num, &k.ops, |x| x.rem_theta(&wmod));
        *w_num = step::scale_columns_outside(place, &w, kk);
        Ok(true)
    };

    while advance(&mut g, &mut prec, &mut w_num, w_den_exp, q, true)? {
        sat += 1;
        w_den_exp += 1;
        if sat > n / (q - 1) {
            return Err(Error::Internal(format!("local saturation at {p} exceeded {} steps", n / (q - 1))));
        }
    }
    while advance(&mut g, &mut prec, &mut w_num, w_den_exp, q - 1, false)? {
        trim += 1;
        if trim > r {
            return Err(Error::Internal(format!("local trimming at {p} exceeded {r} steps")));
        }
    }
    if prec < q {
        return Err(insufficient());
    }
    let g = step::scale_by_place(place, &g, |_, _| 1 - qi).map_err(|_| insufficient())?;
    prec -= q - 1;
    w_den_exp += 1;
    // Cancel powers of p common to W_num and the denominator.
    while w_den_exp > 0 {
        let divided: Option<Vec<BivarPoly>> = w_num.entries().iter().map(|e| e.div_exact_theta(p)).collect();
        match divided {
            Some(v) => {
                w_num = Matrix::from_fn(r, r, |i, j| v[i * r + j].clone());
                w_den_exp -= 1;
            }
            None => break,
        }
    }
    Ok(LocalLattice {
        place: p.clone(),
        working_precision: prec0,
        precision: prec,
        w_num,
        w_den_exp,
        phi: reduce_matrix(&g, &p.pow(prec as u64)),
        h: m.h(),
        saturation_steps: sat,
        trim_steps: trim,
    })
}
