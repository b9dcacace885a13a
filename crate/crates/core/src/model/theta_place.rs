//! A finite place `p(θ)` of `F_q[θ]` together with the identification
//! `F_q[θ]/p^n ≅ F_p[u]/u^n` used by the lattice algorithms.

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::field::{Field, GaloisField};
use crate::ff::poly::Poly;

/// A monic irreducible `p(θ)` with its residue field `F_p = F_q[θ]/p`.
#[derive(Clone, Debug)]
pub struct ThetaPlace {
    base: Field,
    poly: Poly,
    residue: Field,
    /// `σ(θ̄^k)` modulo `p^depth`, for the largest depth requested so far.
    sigma_basis: Vec<Poly>,
    depth: usize,
    modulus: Poly,
}

impl ThetaPlace {
    pub fn new(p: &Poly, depth: usize) -> Result<Self> {
        let base = p.field().clone();
        let poly = p.monic();
        let residue = GaloisField::extension(&base, &poly)?;
        let mut place = ThetaPlace { base, poly, residue, sigma_basis: Vec::new(), depth: 0, modulus: Poly::zero(p.field()) };
        place.set_depth(depth.max(1));
        Ok(place)
    }

    fn set_depth(&mut self, depth: usize) {
        let q = self.base.base_order() as usize;
        self.depth = depth;
        self.modulus = self.poly.pow(depth as u64);
        let d = self.degree();
        let res = self.residue.clone();
        self.sigma_basis = (0..d)
            .map(|k| {
                let a = res.pow(res.generator(), k as u64);
                self.lift(res.frobenius_inv(a)).inflate(q).rem(&self.modulus)
            })
            .collect();
    }

    /// Makes `σ` valid modulo `p^depth`.
    pub fn ensure_depth(&mut self, depth: usize) {
        if depth > self.depth {
            self.set_depth(depth);
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonconstant")
    }

    pub fn residue_field(&self) -> &Field {
        &self.residue
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The class of `g(θ)` in `F_p`.
    pub fn residue(&self, g: &Poly) -> u32 {
        g.eval_in(&self.residue, self.residue.generator())
    }

    /// The representative of `a ∈ F_p` of `θ`-degree below `deg p`.
    pub fn lift(&self, a: u32) -> Poly {
        Poly::from_coeffs(&self.base, self.residue.base_coords(a))
    }

    /// Lifts a polynomial in `t` over `F_p` to `F_q[t, θ]` coefficientwise.
    pub fn lift_t_poly(&self, f: &Poly) -> BivarPoly {
        let slices: Vec<Poly> = f.coeffs().iter().map(|&a| self.lift(a)).collect();
        BivarPoly::from_t_slices(&self.base, &slices)
    }

    /// Reduction `F_q[t, θ] → F_p[t]`.
    pub fn reduce(&self, x: &BivarPoly) -> Poly {
        x.eval_theta(&self.residue, self.residue.generator())
    }

    /// The multiplicative section `σ(a) = (lift of a^(1/q))^q` modulo `p^depth`.
    pub fn sigma(&self, a: u32) -> Poly {
        let coords = self.residue.base_coords(a);
        let mut acc = Poly::zero(&self.base);
        for (k, &c) in coords.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&self.sigma_basis[k].scale(c));
            }
        }
        acc
    }

    /// The `u`-adic digits `a_0, ..., a_(n-1)` with `g ≡ Σ σ(a_v) p^v mod p^n`.
    pub fn digits(&self, g: &Poly, n: usize) -> Result<Vec<u32>> {
        if n > self.depth {
            return Err(Error::Internal(format!("section known to depth {} but {n} requested", self.depth)));
        }
        let mut y = g.rem(&self.modulus);
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let a = self.residue(&y);
            out.push(a);
            y = y
                .sub(&self.sigma(a))
                .div_exact(&self.poly)
                .ok_or_else(|| Error::Internal("section does not lift the residue".into()))?;
        }
        Ok(out)
    }

    /// Digits of a bivariate polynomial, one polynomial in `t` over `F_p` per digit.
    pub fn bivar_digits(&self, x: &BivarPoly, n: usize) -> Result<Vec<Poly>> {
        let slices = x.t_slices();
        let mut cols = vec![vec![0u32; slices.len()]; n];
        for (i, s) in slices.iter().enumerate() {
            for (v, a) in self.digits(s, n)?.into_iter().enumerate() {
                cols[v][i] = a;
            }
        }
        Ok(cols.into_iter().map(|c| Poly::from_coeffs(&self.residue, c)).collect())
    }

    /// `q`-Frobenius on `F_p[t]`, fixing `t`.
    pub fn frobenius(&self, f: &Poly) -> Poly {
        f.frobenius_coeffs()
    }

    /// Inverse of [`Self::frobenius`].
    pub fn frobenius_inv(&self, f: &Poly) -> Poly {
        let r = self.residue.clone();
        f.map_coeffs(|c| r.frobenius_inv(c))
    }

    /// `p`-adic valuation of a nonzero polynomial in `θ`.
    pub fn valuation(&self, g: &Poly) -> usize {
        let mut k = 0;
        let mut y = g.clone();
        while let Some(z) = y.div_exact(&self.poly) {
            if y.is_zero() {
                break;
            }
            y = z;
            k += 1;
        }
        k
    }

    /// Largest `k` with `p^k` dividing every `θ`-coefficient of `x`, capped at `cap`.
    pub fn bivar_valuation(&self, x: &BivarPoly, cap: usize) -> usize {
        let mut k = 0;
        let mut y = x.clone();
        while k < cap {
            match y.div_exact_theta(&self.poly) {
                Some(z) => {
                    y = z;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::GaloisField;

    #[test]
    fn digits_reassemble() {
        let f = GaloisField::prime(3).unwrap();
        let p = Poly::from_ints(&f, &[1, 0, 1]); // θ^2 + 1
        let place = ThetaPlace::new(&p, 3).unwrap();
        let g = Poly::from_ints(&f, &[2, 1, 0, 1, 1, 0, 2]);
        let digits = place.digits(&g, 3).unwrap();
        let mut acc = Poly::zero(&f);
        let mut pk = Poly::one(&f);
        for &a in &digits {
            acc = acc.add(&place.sigma(a).mul(&pk));
            pk = pk.mul(&p);
        }
        assert!(acc.sub(&g).rem(&p.pow(3)).is_zero());
    }

    #[test]
    fn sigma_is_multiplicative() {
        let f = GaloisField::prime(2).unwrap();
        let p = Poly::from_ints(&f, &[1, 1, 1]);
        let place = ThetaPlace::new(&p, 2).unwrap();
        let m = p.pow(2);
        let r = place.residue_field().clone();
        for a in r.elements() {
            for b in r.elements() {
                let lhs = place.sigma(r.mul(a, b));
                let rhs = place.sigma(a).mul(&place.sigma(b)).rem(&m);
                assert_eq!(lhs, rhs);
            }
        }
    }
}
