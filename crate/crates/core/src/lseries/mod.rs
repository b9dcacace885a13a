//! L-series of t-motives at a place `v`, by Anderson's trace formula.
//!
//! The dual Frobenius `τ_M*` is restricted to an explicit finite nucleus, where its matrix is
//! read off from products `ρ b_ij`; the L-series is the dual characteristic polynomial
//! `det(1 - T Φ*)` modulo `v^N`. Bases that are not maximal at some place are corrected by
//! the ratio of local factors there.

pub mod bench;
mod charpoly;
mod nucleus;
mod params;
mod scan;
mod series;

use std::sync::Arc;

use serde::Serialize;

pub use charpoly::dual_char_poly;
pub use nucleus::{assemble_dual_matrix, embed_entry, rho_finite, rho_infinite};
pub use params::{choose_c, h_sequence, kw_integers, NucleusParams};
pub use scan::{
    conjecture_scan, order_of_vanishing_at_one, order_of_vanishing_exact, twist_congruence_check, ScanRow, VanishingOrder,
};
pub use series::{carlitz_power_oracle, euler_product_oracle, factor_series, monic_polys, series_inverse, series_mul};

use crate::completion::{Laurent, LaurentValuation, LocalElement, LocalRing, Place};
use crate::error::{Error, Result};
use crate::ff::field::Field;
use crate::model::{bad_places, local_factor_of_matrix, maximal_model_local};
use crate::motive::Motive;

/// Knobs for experiments; the defaults give the certified computation.
#[derive(Clone, Debug, Default)]
pub struct LSeriesOptions {
    /// Replaces the nucleus bound `s_max`.
    pub s_max: Option<usize>,
}

/// `L_v(M, T) = Σ a_n T^n`, with every `a_n` known modulo `v^prec`.
#[derive(Clone, Debug)]
pub struct LSeries {
    place: Place,
    prec: usize,
    ring: Arc<LocalRing>,
    params: NucleusParams,
    chi: Vec<LocalElement>,
    coeffs: Vec<Laurent>,
    recombined: bool,
}

/// Machine-readable summary of an [`LSeries`].
#[derive(Clone, Debug, Serialize)]
pub struct LSeriesReport {
    pub place: String,
    pub prec: usize,
    pub c: usize,
    pub nucleus_dim: usize,
    pub recombined: bool,
    /// For each `a_n`: its valuation and its `u`-adic digits starting at `u^valuation`.
    pub coefficients: Vec<CoefficientReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub n: usize,
    pub valuation: String,
    pub digits: Vec<String>,
}

impl LSeries {
    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn params(&self) -> &NucleusParams {
        &self.params
    }

    /// The field the coefficients' `u`-adic digits live in.
    pub fn residue_field(&self) -> &Field {
        self.ring.residue_field()
    }

    /// The ring `O_v / u^N` the nucleus matrix was built over.
    pub fn ring(&self) -> &Arc<LocalRing> {
        &self.ring
    }

    /// `det(1 - U Φ*)` modulo `u^N`, before rescaling and truncation.
    pub fn dual_char_poly(&self) -> &[LocalElement] {
        &self.chi
    }

    /// `a_0, ..., a_deg`, where `a_deg` is the last coefficient that is nonzero modulo `v^prec`.
    pub fn coefficients(&self) -> &[Laurent] {
        &self.coeffs
    }

    /// `a_n`, zero modulo `v^prec` beyond the degree.
    pub fn coefficient(&self, n: usize) -> Laurent {
        self.coeffs.get(n).cloned().unwrap_or_else(|| Laurent::zero_to(self.prec as i64))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn valuations(&self) -> Vec<LaurentValuation> {
        self.coeffs.iter().map(|c| c.valuation()).collect()
    }

    /// Whether local factors at non-maximal places were corrected for.
    pub fn recombined(&self) -> bool {
        self.recombined
    }

    pub fn report(&self) -> LSeriesReport {
        let f = self.residue_field();
        LSeriesReport {
            place: self.place.to_string(),
            prec: self.prec,
            c: self.params.c,
            nucleus_dim: self.params.dim(),
            recombined: self.recombined,
            coefficients: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| CoefficientReport { n, valuation: c.valuation().to_string(), digits: c.format(f) })
                .collect(),
        }
    }

    fn with_coefficients(mut self, coeffs: Vec<Laurent>, recombined: bool) -> Result<Self> {
        let prec = self.prec as i64;
        let mut coeffs: Vec<Laurent> = coeffs.iter().map(|c| c.truncate(prec)).collect();
        if let Some(bad) = coeffs.iter().position(|c| c.precision().is_some_and(|p| p < prec)) {
            return Err(Error::Internal(format!("coefficient {bad} of the L-series lost precision")));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&Laurent::one().truncate(prec)) {
            return Err(Error::Internal("constant term of the L-series is not 1".into()));
        }
        self.coeffs = coeffs;
        self.recombined = recombined;
        Ok(self)
    }
}

/// The trace formula applied to the basis of `m` as given. It equals `L_v(M, T)` when the
/// basis spans the maximal model away from `v`; [`lseries`] handles the general case.
pub fn lseries_of_basis(m: &Motive, place: &Place, prec: usize, opts: &LSeriesOptions) -> Result<LSeries> {
    let field = m.field();
    let q = field.order() as u64;
    let mut params = choose_c(place, q, prec, m.rank(), m.d_t(), m.d_theta(), m.h())?;
    if let Some(s) = opts.s_max {
        params = params.with_s_max(s, prec)?;
    }
    let ring = LocalRing::new(field, place, params.n)?;
    let rho = if place.is_infinite() { rho_infinite(&ring, &params)? } else { rho_finite(&ring, &params)? };
    let matrix = assemble_dual_matrix(&ring, m.phi(), m.d_t(), &rho, &params)?;
    let chi = dual_char_poly(&ring, &matrix);
    let scale = params.k_scale.unwrap_or(0);
    // det(1 - U Φ*) has constant term exactly 1, even when N is below prec.
    let coeffs = chi
        .iter()
        .enumerate()
        .map(|(n, x)| if n == 0 { Laurent::one() } else { Laurent::from_local(x).shift(-(n as i64) * scale) })
        .collect();
    let out = LSeries { place: place.clone(), prec, ring, params, chi, coeffs: Vec::new(), recombined: false };
    out.with_coefficients(coeffs, false)
}

/// `L_v(M, T)` modulo `v^prec`, for any basis of `M`.
pub fn lseries(m: &Motive, place: &Place, prec: usize) -> Result<LSeries> {
    lseries_with(m, place, prec, &LSeriesOptions::default())
}

/// [`lseries`] with explicit options.
pub fn lseries_with(m: &Motive, place: &Place, prec: usize, opts: &LSeriesOptions) -> Result<LSeries> {
    if prec == 0 {
        return Err(Error::InvalidPrecision("precision must be at least 1".into()));
    }
    // Pairs (P_p of the given basis, P_p of the maximal model) where they differ.
    let mut corrections = Vec::new();
    for (p, _) in bad_places(m)? {
        if place.poly() == Some(&p) {
            continue;
        }
        let local = maximal_model_local(m, &p)?;
        if local.is_identity() {
            continue;
        }
        let given = local_factor_of_matrix(m.phi(), m.h(), &p)?;
        let maximal = local_factor_of_matrix(local.phi(), local.h(), &p)?;
        if given != maximal {
            corrections.push((given, maximal));
        }
    }
    if corrections.is_empty() {
        return lseries_of_basis(m, place, prec, opts);
    }
    let mut work = prec;
    loop {
        let raw = lseries_of_basis(m, place, work, opts)?;
        let field = raw.residue_field().clone();
        let ring = raw.ring.clone();
        let num_len = raw.coeffs.len() + corrections.iter().map(|(g, _)| g.t_degree()).sum::<usize>();
        let den_deg: usize = corrections.iter().map(|(_, mx)| mx.t_degree()).sum();
        let mut num = raw.coeffs.clone();
        let mut den = vec![Laurent::one()];
        for (given, maximal) in &corrections {
            num = series_mul(&num, &factor_series(&ring, given, work)?, num_len, &field);
            den = series_mul(&den, &factor_series(&ring, maximal, work)?, num_len, &field);
        }
        let quot = series_mul(&num, &series_inverse(&den, num_len, &field)?, num_len, &field);
        if quot.iter().any(|c| c.precision().is_some_and(|p| p < prec as i64)) {
            if work > 64 * prec + 1024 {
                return Err(Error::InsufficientPrecision(work));
            }
            work *= 2;
            continue;
        }
        let keep = num_len.saturating_sub(den_deg).max(1);
        if let Some(n) = (keep..quot.len()).find(|&n| !quot[n].truncate(prec as i64).is_zero()) {
            return Err(Error::Internal(format!(
                "recombined L-series has a nonzero coefficient of T^{n} beyond its degree bound {}",
                keep - 1
            )));
        }
        let mut out = raw;
        out.prec = prec;
        return out.with_coefficients(quot[..keep].to_vec(), true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{GaloisField, Poly};

    #[test]
    fn carlitz_over_f2() {
        let f = GaloisField::prime(2).unwrap();
        let c = Motive::carlitz(&f);
        let l = lseries(&c, &Place::Infinite, 16).unwrap();
        assert_eq!(l.coefficients(), &[Laurent::one().truncate(16), Laurent::one().truncate(16)]);
        let x = Place::finite(&Poly::x(&f)).unwrap();
        let lx = lseries(&c, &x, 16).unwrap();
        let ring = series::embedding_ring(&f, &x).unwrap();
        assert_eq!(lx.coefficient(1), ring.embed_exact(&Poly::from_ints(&f, &[1, 1])).truncate(16));
        assert_eq!(lx.coefficient(2), ring.embed_exact(&Poly::x(&f)).truncate(16));
        assert!(lx.coefficient(3).is_zero());
    }

    #[test]
    fn dual_carlitz_valuations() {
        let f = GaloisField::prime(3).unwrap();
        let cd = Motive::carlitz(&f).dual().unwrap();
        let x = Place::finite(&Poly::x(&f)).unwrap();
        let l = lseries(&cd, &x, 100).unwrap();
        let v: Vec<LaurentValuation> = l.valuations().into_iter().take(5).collect();
        let want: Vec<LaurentValuation> = [0, 1, 6, 23, 76].iter().map(|&k| LaurentValuation::Finite(k)).collect();
        assert_eq!(v, want);
    }

    #[test]
    fn zero_precision_is_rejected() {
        let f = GaloisField::prime(2).unwrap();
        assert!(lseries(&Motive::carlitz(&f), &Place::Infinite, 0).is_err());
    }
}
