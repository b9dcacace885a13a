//! Local L-factors `P_p(T) = det(1 - T^d N / p(t)^h)` from the reduction of a model.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::poly::Poly;
use crate::ff::ring::{self, Matrix, PolyRing};
use crate::model::local::maximal_model_local;
use crate::model::theta_place::ThetaPlace;
use crate::motive::Motive;

/// `P_p(T) = Σ_k c_k p(t)^(e_k) T^(d k)` with `c_k ∈ F_q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    place: Poly,
    degree: usize,
    coeffs: Vec<(Poly, i64)>,
}

impl LocalFactor {
    pub fn place(&self) -> &Poly {
        &self.place
    }

    /// `d = deg p`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `(c_k, e_k)`: the coefficient of `T^(d k)` is `c_k p(t)^(e_k)`, with `p ∤ c_k` unless
    /// `e_k <= 0` forces it.
    pub fn coeffs(&self) -> &[(Poly, i64)] {
        &self.coeffs
    }

    /// Degree in `T`.
    pub fn t_degree(&self) -> usize {
        self.coeffs.iter().rposition(|(c, _)| !c.is_zero()).unwrap_or(0) * self.degree
    }

    /// Coefficient of `T^n` as a fraction `num / p(t)^den_exp`.
    pub fn coeff(&self, n: usize) -> (Poly, u64) {
        let f = self.place.field();
        if !n.is_multiple_of(self.degree) || n / self.degree >= self.coeffs.len() {
            return (Poly::zero(f), 0);
        }
        let (c, e) = &self.coeffs[n / self.degree];
        if *e >= 0 {
            (c.mul(&self.place.pow(*e as u64)), 0)
        } else {
            (c.clone(), (-e) as u64)
        }
    }

    /// `p(t)`-integral coefficients, when all exponents are nonnegative.
    pub fn integral_coeffs(&self) -> Option<Vec<Poly>> {
        let n = self.t_degree();
        (0..=n)
            .map(|k| {
                let (c, e) = self.coeff(k);
                (e == 0 || c.is_zero()).then_some(c)
            })
            .collect()
    }
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.place.to_string_var("t");
        let mut terms = Vec::new();
        for (k, (c, e)) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut s = format!("({})", c.to_string_var("t"));
            if *e != 0 {
                s += &format!("*({p})^{e}");
            }
            let n = k * self.degree;
            if n == 1 {
                s += "*T";
            } else if n > 1 {
                s += &format!("*T^{n}");
            }
            terms.push(s);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Φ̄ τ(Φ̄) ⋯ τ^(d-1)(Φ̄)` over `F_p[t]`, where `Φ̄` is `Φ mod p(θ)`.
pub fn norm_matrix(phi: &Matrix<BivarPoly>, place: &ThetaPlace) -> Matrix<Poly> {
    let res = place.residue_field();
    let ring = PolyRing(res.clone());
    let bar = phi.map(|e| place.reduce(e));
    let mut acc = bar.clone();
    let mut tw = bar;
    for _ in 1..place.degree() {
        tw = tw.map(|e| place.frobenius(e));
        acc = ring::mat_mul(&ring, &acc, &tw);
    }
    acc
}

/// The local factor of the lattice with τ-matrix `(t-θ)^(-h) Φ` at `p`. Only `Φ mod p` is used.
pub fn local_factor_of_matrix(phi: &Matrix<BivarPoly>, h: i64, p: &Poly) -> Result<LocalFactor> {
    let place = ThetaPlace::new(p, 1)?;
    let base = place.base().clone();
    let n = norm_matrix(phi, &place);
    let c = ring::det_one_minus_t(&PolyRing(place.residue_field().clone()), &n);
    let mut coeffs = Vec::with_capacity(c.len());
    for (k, ck) in c.iter().enumerate() {
        if ck.coeffs().iter().any(|&a| !place.residue_field().in_base(a)) {
            return Err(Error::Internal(format!("coefficient {k} of the local factor at {p} is not Frobenius-invariant")));
        }
        let mut num = ck.with_field(&base);
        let mut e = -h * k as i64;
        while e < 0 && !num.is_zero() {
            match num.div_exact(place.poly()) {
                Some(z) => {
                    num = z;
                    e += 1;
                }
                None => break,
            }
        }
        let e = if num.is_zero() { 0 } else { e };
        coeffs.push((num, e));
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|(c, _)| c.is_zero()) {
        coeffs.pop();
    }
    Ok(LocalFactor { place: place.poly().clone(), degree: place.degree(), coeffs })
}

/// The local factor of `m` at `p`, computed on the local maximal model.
pub fn local_factor(m: &Motive, p: &Poly) -> Result<LocalFactor> {
    let place = ThetaPlace::new(p, 1)?;
    if place.valuation(&m.det_shape()?.delta) == 0 {
        return local_factor_of_matrix(m.phi(), m.h(), p);
    }
    let lat = maximal_model_local(m, p)?;
    local_factor_of_matrix(lat.phi(), lat.h(), p)
}
