//! The products `ρ` and the matrix of the dual Frobenius on the nucleus.
//!
//! With `δ` chosen so that `(t-θ)^(-h) δ ≡ ρ τ_θ(δ)` modulo `u^N`, the dual Frobenius maps
//! `x δ e_i*` to `Σ_j C_θ(ρ x b_ij) δ e_j*`. On the basis `θ^s δ e_i*` the coefficient of
//! `θ^s' δ e_j*` is therefore the coefficient of `θ^(q s' + q - 1 - s)` in `ρ b_ij`.

use crate::completion::{LocalElement, LocalRing, LocalThetaPoly};
use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::ring::Matrix;
use crate::lseries::params::NucleusParams;

/// `ρ` at a finite place, in `(F_v[u]/u^N)[θ]` with `t = a + u`.
pub fn rho_finite(ring: &LocalRing, params: &NucleusParams) -> Result<LocalThetaPoly> {
    if params.infinite || ring.place().is_infinite() {
        return Err(Error::InvalidPlace("rho_finite needs a finite place".into()));
    }
    let fv = ring.residue_field();
    let q = params.q;
    let d = params.degree;
    let mut rho = LocalThetaPoly::constant(ring.one());
    // v(θ)^(q-1) = Π (a^(q^i) - θ)^(q-1): the sign (-1)^(d(q-1)) is always 1.
    let mut conj = ring.a();
    for i in 0..d {
        let e = q as i64 - 1 + params.w[i];
        for _ in 0..e {
            rho = rho.mul_sparse_minus_theta(ring, conj, 0, 0);
        }
        conj = fv.pow(conj, q);
    }
    // t^(q^i) = a^(q^i) + u^(q^i).
    let mut conj = ring.a();
    let mut qi: usize = 1;
    for i in 0..params.c {
        let e = q as i64 * params.h_seq[i + 1] - params.h_seq[i];
        debug_assert!((0..q as i64).contains(&e));
        for _ in 0..e {
            rho = rho.mul_sparse_minus_theta(ring, conj, 1, qi);
        }
        conj = fv.pow(conj, q);
        qi = qi.saturating_mul(q as usize);
    }
    Ok(rho)
}

/// `ρ = Π_i (1 - θ u^(q^i))^(q h_(i+1) - h_i)` at infinity, `u = 1/t`, truncated modulo `u^N`.
pub fn rho_infinite(ring: &LocalRing, params: &NucleusParams) -> Result<LocalThetaPoly> {
    if !params.infinite || !ring.place().is_infinite() {
        return Err(Error::InvalidPlace("rho_infinite needs the infinite place".into()));
    }
    let q = params.q as usize;
    let mut rho = LocalThetaPoly::constant(ring.one());
    let mut qi: usize = 1;
    let mut i = 0;
    while qi < ring.precision() {
        let e = q as i64 * params.h_seq[i + 1] - params.h_seq[i];
        for _ in 0..e {
            rho = rho.mul_one_minus_shift_theta(ring, qi);
        }
        i += 1;
        qi = qi.saturating_mul(q);
    }
    Ok(rho)
}

/// `b` as a `θ`-polynomial over the local ring: `t ↦ a + u` at a finite place, `b t^(-d_t)`
/// at infinity.
pub fn embed_entry(ring: &LocalRing, b: &BivarPoly, d_t: usize) -> Result<LocalThetaPoly> {
    let coeffs = b
        .rows()
        .iter()
        .map(|row| if ring.place().is_infinite() { ring.iota_infinite(row, d_t) } else { ring.iota_embed(row) })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalThetaPoly::from_coeffs(coeffs))
}

/// The matrix of the dual Frobenius (rescaled by `t^(-(d_t-h))` at infinity) on the nucleus.
/// Row `(j, s')` and column `(i, s)` sit at indices `j (s_max+1) + s'` and `i (s_max+1) + s`.
pub fn assemble_dual_matrix(
    ring: &LocalRing,
    phi: &Matrix<BivarPoly>,
    d_t: usize,
    rho: &LocalThetaPoly,
    params: &NucleusParams,
) -> Result<Matrix<LocalElement>> {
    let r = phi.nrows();
    let q = params.q as usize;
    let block = params.s_max + 1;
    let mut out = Matrix::filled(r * block, r * block, ring.zero());
    for i in 0..r {
        for j in 0..r {
            let b = phi.get(i, j);
            if b.is_zero() {
                continue;
            }
            let prod = rho.mul(ring, &embed_entry(ring, b, d_t)?);
            for sp in 0..block {
                for s in 0..block {
                    let e = q * sp + q - 1;
                    if e < s {
                        continue;
                    }
                    if let Some(c) = prod.coeff(e - s) {
                        out.set(j * block + sp, i * block + s, c.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::Place;
    use crate::ff::{GaloisField, Poly};
    use crate::lseries::params::choose_c;

    #[test]
    fn rho_for_the_dual_carlitz_motive() {
        // q = 3, v = t, c = 1: ρ = 2 θ^3 (u - θ)^2 = 2u^2 θ^3 + 2u θ^4 + 2 θ^5.
        let f = GaloisField::prime(3).unwrap();
        let place = Place::finite(&Poly::x(&f)).unwrap();
        let params = choose_c(&place, 3, 3, 1, 0, 0, 1).unwrap();
        assert_eq!(params.c, 1);
        let ring = LocalRing::new(&f, &place, params.n).unwrap();
        let rho = rho_finite(&ring, &params).unwrap();
        let want = LocalThetaPoly::from_coeffs(vec![
            ring.zero(),
            ring.zero(),
            ring.zero(),
            ring.monomial(2, 2),
            ring.monomial(2, 1),
            ring.constant(2),
        ]);
        assert_eq!(rho, want);
    }

    #[test]
    fn rho_at_infinity() {
        let f = GaloisField::prime(3).unwrap();
        let params = choose_c(&Place::Infinite, 3, 3, 1, 0, 0, 1).unwrap();
        assert_eq!(params.n, 3);
        let ring = LocalRing::new(&f, &Place::Infinite, 3).unwrap();
        let rho = rho_infinite(&ring, &params).unwrap();
        let want = LocalThetaPoly::from_coeffs(vec![ring.one(), ring.monomial(1, 1), ring.monomial(1, 2)]);
        assert_eq!(rho, want);
        let trivial = choose_c(&Place::Infinite, 3, 3, 1, 0, 0, 0).unwrap();
        let ring0 = LocalRing::new(&f, &Place::Infinite, trivial.n).unwrap();
        assert_eq!(rho_infinite(&ring0, &trivial).unwrap(), LocalThetaPoly::constant(ring0.one()));
    }

    #[test]
    fn rho_is_a_unit_times_powers_of_theta_minus_a() {
        let f = GaloisField::prime(2).unwrap();
        let v = Poly::from_ints(&f, &[1, 1, 1]);
        let place = Place::finite(&v).unwrap();
        let params = choose_c(&place, 2, 9, 2, 1, 3, 2).unwrap();
        let ring = LocalRing::new(&f, &place, params.n).unwrap();
        let rho = rho_finite(&ring, &params).unwrap();
        assert!(rho.deg_theta().unwrap() <= ((2 * 2 + params.c)));
        // Modulo u the product only involves the conjugates of a, so it vanishes at θ = a.
        let fv = ring.residue_field();
        let at_a = rho.coeffs.iter().rev().fold(0, |acc, c| fv.add(fv.mul(acc, ring.a()), c.coeff(0)));
        assert_eq!(at_a, 0);
        assert!(rho.coeffs.iter().any(|c| c.coeff(0) != 0));
    }

    #[test]
    fn rank_one_bookkeeping() {
        // ρ = θ^(q-1) and b = 1: entry (s', s) is 1 exactly when s = q s'.
        let f = GaloisField::prime(3).unwrap();
        let place = Place::finite(&Poly::x(&f)).unwrap();
        let params = choose_c(&place, 3, 3, 1, 0, 0, 1).unwrap();
        let ring = LocalRing::new(&f, &place, params.n).unwrap();
        let rho = LocalThetaPoly::from_coeffs(vec![ring.zero(), ring.zero(), ring.one()]);
        let phi = Matrix::filled(1, 1, BivarPoly::one(&f));
        let m = assemble_dual_matrix(&ring, &phi, 0, &rho, &params).unwrap();
        for sp in 0..=params.s_max {
            for s in 0..=params.s_max {
                let want = if s == 3 * sp { ring.one() } else { ring.zero() };
                assert_eq!(m.get(sp, s), &want);
            }
        }
    }
}
