//! Maximal integral models, discriminants and local L-factors.
//!
//! A model basis is tracked through its change-of-basis matrix `W = W_num / D(θ)` relative to
//! the basis the motive was given in. If `Φ` is the τ-matrix of the original basis, the new
//! one is `W^(-1) Φ τ(W)`.

mod factor;
mod local;
pub mod smith;
mod step;
mod theta_place;

pub use factor::{local_factor, local_factor_of_matrix, norm_matrix, LocalFactor};
pub use local::{maximal_model_local, maximal_model_local_at, LocalLattice};
pub use theta_place::ThetaPlace;

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::factor::{factor, DEFAULT_SEED};
use crate::ff::poly::Poly;
use crate::ff::ring::{self, BivarRing, Matrix};
use crate::motive::{det_shape, Motive};

/// The bad places of the supplied basis: the factorisation of its discriminant.
pub fn bad_places(m: &Motive) -> Result<Vec<(Poly, usize)>> {
    let delta = m.det_shape()?.delta;
    if delta.is_one() {
        return Ok(Vec::new());
    }
    Ok(factor(&delta, DEFAULT_SEED))
}

/// A basis of a model of `base`, expressed in the basis of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    base: Motive,
    w_num: Matrix<BivarPoly>,
    w_den: Poly,
    model: Motive,
}

impl LatticeBasis {
    /// The basis of `base` itself.
    pub fn identity(base: &Motive) -> Self {
        let f = base.field();
        LatticeBasis {
            base: base.clone(),
            w_num: ring::identity(&BivarRing(f.clone()), base.rank()),
            w_den: Poly::one(f),
            model: base.clone(),
        }
    }

    pub fn base(&self) -> &Motive {
        &self.base
    }

    /// The motive in the new basis.
    pub fn model(&self) -> &Motive {
        &self.model
    }

    /// Numerator of `W`.
    pub fn w_numerator(&self) -> &Matrix<BivarPoly> {
        &self.w_num
    }

    /// Denominator `D(θ)` of `W` (monic).
    pub fn w_denominator(&self) -> &Poly {
        &self.w_den
    }

    /// Whether `W` is the identity.
    pub fn is_identity(&self) -> bool {
        self.w_den.is_one() && ring::is_identity(&BivarRing(self.base.field().clone()), &self.w_num)
    }

    /// `Δ` of the model.
    pub fn discriminant(&self) -> Result<Poly> {
        Ok(self.model.det_shape()?.delta)
    }

    /// Entries of `W` rendered as expressions.
    pub fn w_strings(&self) -> Vec<Vec<String>> {
        let den = BivarPoly::from_theta_poly(&self.w_den);
        let den_s = if self.w_den.is_one() { None } else { Some(den.to_expr()) };
        self.w_num
            .to_rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match (&den_s, e.is_zero()) {
                        (Some(d), false) => format!("({})/({d})", e.to_expr()),
                        _ => e.to_expr(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks `Ψ_base τ(W) = W Ψ_model` by clearing denominators.
    pub fn verify(&self) -> bool {
        let f = self.base.field();
        let ring = BivarRing(f.clone());
        let q = f.base_order() as u64;
        // Φ_b τ(Wn) (t-θ)^(h_m) D = Wn Φ_m D^q (t-θ)^(h_b), after shifting exponents to be >= 0.
        let (hb, hm) = (self.base.h(), self.model.h());
        let lo = hb.min(hm);
        let tm = BivarPoly::t_minus_theta(f);
        let d = BivarPoly::from_theta_poly(&self.w_den);
        let lhs = ring::mat_mul(&ring, self.base.phi(), &self.w_num.map(|e| e.tau_theta()));
        let lhs = ring::mat_scale(&ring, &lhs, &tm.pow((hm - lo) as u64).mul(&d));
        let rhs = ring::mat_mul(&ring, &self.w_num, self.model.phi());
        let rhs = ring::mat_scale(&ring, &rhs, &d.pow(q).mul(&tm.pow((hb - lo) as u64)));
        let det = ring::determinant(&ring, &self.w_num);
        lhs == rhs && !det.is_zero()
    }
}

/// Iteration counts for one bad place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceReport {
    pub place: Poly,
    /// `v_p(Δ)` before the place was treated.
    pub multiplicity: usize,
    /// `v_p(Δ)` afterwards.
    pub final_multiplicity: usize,
    pub saturation_steps: usize,
    pub trim_steps: usize,
    /// `⌊n / (q - 1)⌋`.
    pub saturation_bound: usize,
    /// The rank.
    pub trim_bound: usize,
    /// Number of discriminant checks performed (each one asserted).
    pub ledger_checks: usize,
}

/// Output of [`maximal_model`].
#[derive(Clone, Debug)]
pub struct MaximalModel {
    pub lattice: LatticeBasis,
    pub initial_discriminant: Poly,
    pub places: Vec<PlaceReport>,
}

impl MaximalModel {
    pub fn discriminant(&self) -> Result<Poly> {
        self.lattice.discriminant()
    }
}

struct GlobalState {
    g: Matrix<BivarPoly>,
    w_num: Matrix<BivarPoly>,
    w_den: Poly,
}

fn valuation_of_det(place: &ThetaPlace, g: &Matrix<BivarPoly>) -> Result<usize> {
    let f = place.base();
    let det = ring::determinant(&BivarRing(f.clone()), g);
    let shape = det_shape(&det).ok_or_else(|| Error::Internal("model determinant lost its shape".into()))?;
    Ok(place.valuation(&shape.delta))
}

/// Saturation followed by trimming at a single place, updating `state` in place.
fn treat_place(state: &mut GlobalState, place: &ThetaPlace, q: usize) -> Result<PlaceReport> {
    let r = state.g.nrows();
    let n = valuation_of_det(place, &state.g)?;
    let qi = q as i64;
    let mut report = PlaceReport {
        place: place.poly().clone(),
        multiplicity: n,
        final_multiplicity: n,
        saturation_steps: 0,
        trim_steps: 0,
        saturation_bound: n / (q - 1),
        trim_bound: r,
        ledger_checks: 0,
    };
    let mut val = n;
    let keep = |x: BivarPoly| x;
    // Saturation: N_(i+1) = {x ∈ p^(-1) N_i : τ x ∈ N_i}.
    loop {
        let k = step::kernel_step(place, &state.g, q)?;
        let ks = k.kernel_size();
        if ks == 0 {
            break;
        }
        report.saturation_steps += 1;
        if report.saturation_steps > report.saturation_bound {
            return Err(Error::Internal(format!(
                "saturation at {} exceeded {} steps",
                place.poly(),
                report.saturation_bound
            )));
        }
        let y = step::conjugate(&state.g, &k.ops, keep);
        let kk = &k.in_kernel;
        state.g = step::scale_by_place(place, &y, |i, j| {
            qi * (!kk[j]) as i64 - (!kk[i]) as i64 + 1 - qi
        })?;
        let w = step::apply_to_basis(&state.w_num, &k.ops, keep);
        state.w_num = step::scale_columns_outside(place, &w, kk);
        state.w_den = state.w_den.mul(place.poly());
        val = ledger(place, &state.g, val as i64 - ((q - 1) * ks) as i64, &mut report)?;
    }
    // Trimming, tracking the model p L_i: L_(i+1) = {x ∈ L_i : τ x ∈ L_i}.
    loop {
        let k = step::kernel_step(place, &state.g, q - 1)?;
        let ks = k.kernel_size();
        if ks == r {
            break;
        }
        report.trim_steps += 1;
        if report.trim_steps > report.trim_bound {
            return Err(Error::Internal(format!("trimming at {} exceeded {r} steps", place.poly())));
        }
        let y = step::conjugate(&state.g, &k.ops, keep);
        let kk = &k.in_kernel;
        state.g = step::scale_by_place(place, &y, |i, j| qi * (!kk[j]) as i64 - (!kk[i]) as i64)?;
        let w = step::apply_to_basis(&state.w_num, &k.ops, keep);
        state.w_num = step::scale_columns_outside(place, &w, kk);
        val = ledger(place, &state.g, val as i64 + ((q - 1) * (r - ks)) as i64, &mut report)?;
    }
    // L_∞ = p^(-1) (p L_∞).
    state.g = step::scale_by_place(place, &state.g, |_, _| 1 - qi)?;
    state.w_den = state.w_den.mul(place.poly());
    val = ledger(place, &state.g, val as i64 - ((q - 1) * r) as i64, &mut report)?;
    report.final_multiplicity = val;
    Ok(report)
}

fn ledger(place: &ThetaPlace, g: &Matrix<BivarPoly>, expected: i64, report: &mut PlaceReport) -> Result<usize> {
    let got = valuation_of_det(place, g)?;
    report.ledger_checks += 1;
    if expected < 0 || got as i64 != expected {
        return Err(Error::Internal(format!(
            "discriminant ledger at {}: expected valuation {expected}, found {got}",
            place.poly()
        )));
    }
    Ok(got)
}

/// Removes common factors of `p` between `W_num` and `D`.
fn simplify(state: &mut GlobalState, place: &ThetaPlace) {
    let p = place.poly();
    while state.w_den.div_exact(p).is_some() && state.w_den.degree().unwrap_or(0) > 0 {
        let divided: Option<Vec<BivarPoly>> = state.w_num.entries().iter().map(|e| e.div_exact_theta(p)).collect();
        match divided {
            Some(v) => {
                let r = state.w_num.nrows();
                state.w_num = Matrix::from_fn(r, r, |i, j| v[i * r + j].clone());
                state.w_den = state.w_den.div_exact(p).expect("checked");
            }
            None => break,
        }
    }
}

/// The maximal model of `m`, by saturation and trimming at every bad place of its basis.
pub fn maximal_model(m: &Motive) -> Result<MaximalModel> {
    let f = m.field();
    let q = f.base_order() as usize;
    let initial = m.det_shape()?.delta;
    let mut state = GlobalState {
        g: m.phi().clone(),
        w_num: ring::identity(&BivarRing(f.clone()), m.rank()),
        w_den: Poly::one(f),
    };
    let mut places = Vec::new();
    for (p, _) in bad_places(m)? {
        let place = ThetaPlace::new(&p, q)?;
        places.push(treat_place(&mut state, &place, q)?);
        simplify(&mut state, &place);
    }
    let model = Motive::from_phi(f, state.g, m.h())?;
    let model = match m.name() {
        Some(n) => model.with_name(n),
        None => model,
    };
    let lattice = LatticeBasis { base: m.clone(), w_num: state.w_num, w_den: state.w_den, model };
    Ok(MaximalModel { lattice, initial_discriminant: initial, places })
}

/// Replaces the basis of `m` by `W = w_num / w_den` (which must span a model).
pub fn change_basis(m: &Motive, w_num: &Matrix<BivarPoly>, w_den: &Poly) -> Result<LatticeBasis> {
    let f = m.field();
    let ring = BivarRing(f.clone());
    let r = m.rank();
    if w_num.nrows() != r || w_num.ncols() != r || w_den.is_zero() {
        return Err(Error::Hypothesis("change of basis has the wrong shape".into()));
    }
    let q = f.base_order() as u64;
    // W^(-1) Φ τ(W) = D^(1-q) adj(Wn) Φ τ(Wn) / det(Wn).
    let det = ring::determinant(&ring, w_num);
    let adj = ring::adjugate(&ring, w_num);
    let num = ring::mat_mul(&ring, &ring::mat_mul(&ring, &adj, m.phi()), &w_num.map(|e| e.tau_theta()));
    let dpow = BivarPoly::from_theta_poly(&w_den.pow(q - 1));
    let den = det.mul(&dpow);
    let entries = num.map(|e| crate::ff::parse::Fraction { num: e.clone(), den: den.clone() });
    let reduced = entries.try_map(|fr| exact_quotient(&fr.num, &fr.den))?;
    let model = Motive::from_phi(f, reduced, m.h())?;
    let c = f.inv(w_den.leading());
    Ok(LatticeBasis { base: m.clone(), w_num: w_num.map(|e| e.scale(c)), w_den: w_den.monic(), model })
}

/// Exact quotient `a / b` of bivariate polynomials, failing when `b ∤ a`.
fn exact_quotient(a: &BivarPoly, b: &BivarPoly) -> Result<BivarPoly> {
    if a.is_zero() {
        return Ok(a.clone());
    }
    if let Some(bt) = b.as_theta_poly() {
        let c = bt.leading();
        let f = a.field();
        return a
            .scale(f.inv(c))
            .div_exact_theta(&bt.monic())
            .ok_or_else(|| Error::Hypothesis("basis change does not span a model".into()));
    }
    bivar_div_exact(a, b).ok_or_else(|| Error::Hypothesis("basis change does not span a model".into()))
}

/// Exact division in `F_q[t, θ]`, viewing both as polynomials in `t` over `F_q[θ]`.
fn bivar_div_exact(a: &BivarPoly, b: &BivarPoly) -> Option<BivarPoly> {
    let f = a.field().clone();
    let mut rem = a.t_slices();
    let bs = b.t_slices();
    let db = bs.len() - 1;
    let lead = bs[db].clone();
    if rem.len() < bs.len() {
        return None;
    }
    let mut quo = vec![Poly::zero(&f); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = rem[k].div_exact(&lead)?;
        for (i, bi) in bs.iter().enumerate() {
            rem[k - db + i] = rem[k - db + i].sub(&c.mul(bi));
        }
        quo[k - db] = c;
    }
    rem.iter().all(|x| x.is_zero()).then(|| BivarPoly::from_t_slices(&f, &quo))
}
