//! Power series in `T` with truncated Laurent coefficients, and the two brute-force oracles.

use std::sync::Arc;

use crate::completion::{Laurent, LocalRing, Place};
use crate::error::{Error, Result};
use crate::ff::factor::irreducibles_up_to;
use crate::ff::field::Field;
use crate::ff::poly::Poly;
use crate::model::{local_factor, LocalFactor};
use crate::motive::Motive;

/// Coefficients of `T^0, ..., T^(len-1)` in `a b`.
pub fn series_mul(a: &[Laurent], b: &[Laurent], len: usize, field: &Field) -> Vec<Laurent> {
    (0..len)
        .map(|n| {
            let mut acc = Laurent::zero();
            for i in 0..=n.min(a.len().saturating_sub(1)) {
                if let Some(bj) = b.get(n - i) {
                    if !(a[i].is_zero() && a[i].is_exact()) && !(bj.is_zero() && bj.is_exact()) {
                        acc = acc.add(&a[i].mul(bj, field), field);
                    }
                }
            }
            acc
        })
        .collect()
}

/// Inverse of a series whose constant term is `1`, to `len` terms.
pub fn series_inverse(a: &[Laurent], len: usize, field: &Field) -> Result<Vec<Laurent>> {
    if a.first() != Some(&Laurent::one()) {
        return Err(Error::Hypothesis("series inverse needs constant term 1".into()));
    }
    let mut out: Vec<Laurent> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            out.push(Laurent::one());
            continue;
        }
        let mut acc = Laurent::zero();
        for j in 1..=n.min(a.len() - 1) {
            if !(a[j].is_zero() && a[j].is_exact()) {
                acc = acc.sub(&a[j].mul(&out[n - j], field), field);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// `p(t)^e` embedded at the place of `ring`; negative powers are expanded to `rel_prec` terms.
fn embed_power(ring: &LocalRing, p: &Poly, e: i64, rel_prec: usize) -> Result<Laurent> {
    let f = ring.residue_field();
    let x = ring.embed_exact(p);
    if e >= 0 {
        Ok(x.pow(e as u64, f))
    } else {
        Ok(x.inverse(rel_prec, f)?.pow((-e) as u64, f))
    }
}

/// A local factor as a `T`-series with coefficients at the place of `ring`.
pub fn factor_series(ring: &LocalRing, lf: &LocalFactor, rel_prec: usize) -> Result<Vec<Laurent>> {
    let f = ring.residue_field();
    let d = lf.degree();
    let mut out = vec![Laurent::zero(); lf.t_degree() + 1];
    for (k, (c, e)) in lf.coeffs().iter().enumerate() {
        if k * d < out.len() && !c.is_zero() {
            out[k * d] = ring.embed_exact(c).mul(&embed_power(ring, lf.place(), *e, rel_prec)?, f);
        }
    }
    Ok(out)
}

/// Repeats `compute(margin)` with growing margins until every coefficient is known to `prec`,
/// then truncates to `prec`.
pub(crate) fn with_margin(prec: usize, mut compute: impl FnMut(usize) -> Result<Vec<Laurent>>) -> Result<Vec<Laurent>> {
    let mut margin = 16;
    loop {
        let out = compute(prec + margin)?;
        if out.iter().all(|x| x.precision().is_none_or(|p| p >= prec as i64)) {
            return Ok(out.iter().map(|x| x.truncate(prec as i64)).collect());
        }
        if margin > 1 << 16 {
            return Err(Error::InsufficientPrecision(prec + margin));
        }
        margin *= 2;
    }
}

/// A ring at `place` used only for embeddings and residue-field arithmetic.
pub(crate) fn embedding_ring(field: &Field, place: &Place) -> Result<Arc<LocalRing>> {
    LocalRing::new(field, place, 1)
}

/// `Π_(p ≠ v, deg p <= D) P_p(T)^(-1)` modulo `T^(D+1)`, coefficients modulo `v^prec`.
/// Places of degree above `D` only contribute `1 + O(T^(D+1))`, so the truncation is exact.
pub fn euler_product_oracle(m: &Motive, place: &Place, max_degree: usize, prec: usize) -> Result<Vec<Laurent>> {
    let ring = embedding_ring(m.field(), place)?;
    let field = ring.residue_field().clone();
    let len = max_degree + 1;
    let factors: Vec<LocalFactor> = irreducibles_up_to(m.field(), max_degree)
        .iter()
        .filter(|p| place.poly() != Some(*p))
        .map(|p| local_factor(m, p))
        .collect::<Result<_>>()?;
    with_margin(prec, |rel| {
        let mut acc = vec![Laurent::one()];
        for lf in &factors {
            let inv = series_inverse(&factor_series(&ring, lf, rel)?, len, &field)?;
            acc = series_mul(&acc, &inv, len, &field);
        }
        acc.resize(len, Laurent::zero());
        Ok(acc)
    })
}

/// All monic polynomials of degree `n` over the field, in enumeration order.
pub fn monic_polys(field: &Field, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.order() as u64;
    (0..q.pow(n as u32)).map(move |mut idx| {
        let mut c = Vec::with_capacity(n + 1);
        for _ in 0..n {
            c.push((idx % q) as u32);
            idx /= q;
        }
        c.push(1);
        Poly::from_coeffs(field, c)
    })
}

/// `a_n = Σ a(t)^(-k)` over monic `a` of degree `n` prime to `v`, for `n < n_terms`: the
/// coefficients of the L-series of the `k`-th tensor power of the dual Carlitz motive (of the
/// Carlitz motive when `k < 0`).
pub fn carlitz_power_oracle(field: &Field, k: i64, place: &Place, prec: usize, n_terms: usize) -> Result<Vec<Laurent>> {
    let ring = embedding_ring(field, place)?;
    let fv = ring.residue_field().clone();
    let polys: Vec<Vec<Poly>> = (0..n_terms)
        .map(|n| monic_polys(field, n).filter(|a| place.poly().is_none_or(|v| !a.rem(v).is_zero())).collect())
        .collect();
    with_margin(prec, |rel| {
        polys
            .iter()
            .map(|group| {
                let mut acc = Laurent::zero();
                for a in group {
                    acc = acc.add(&embed_power(&ring, a, -k, rel)?, &fv);
                }
                Ok(acc)
            })
            .collect()
    })
}
