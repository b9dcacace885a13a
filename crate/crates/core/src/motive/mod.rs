//! t-motives given by a τ-matrix over `F_q[t, θ]`.
//!
//! A motive of rank `r` is stored through `Φ = (t-θ)^h Ψ`, where `Ψ` is the matrix of `τ_M`
//! in the working basis (column `j` holds the image of `τ^* e_j`) and `h` is the smallest
//! integer making `Φ` polynomial.

mod file;

pub use file::{parse_motive_file, FieldSpec, MotiveFile};

use crate::error::{Error, Result};
use crate::ff::bivar::BivarPoly;
use crate::ff::field::Field;
use crate::ff::parse::Fraction;
use crate::ff::poly::Poly;
use crate::ff::ring::{self, BivarRing, Matrix};

/// A t-motive with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motive {
    field: Field,
    phi: Matrix<BivarPoly>,
    h: i64,
    denom: Poly,
    name: Option<String>,
}

/// Decomposition `det = c (t-θ)^k Δ(θ)` of a determinant, `Δ` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetShape {
    pub scalar: u32,
    pub k: i64,
    pub delta: Poly,
}

/// Splits `x` as `c (t-θ)^k g(θ)` with `g` monic, if possible.
pub fn det_shape(x: &BivarPoly) -> Option<DetShape> {
    let (k, rest) = x.t_minus_theta_valuation()?;
    let g = rest.as_theta_poly()?;
    let c = g.leading();
    Some(DetShape { scalar: c, k: k as i64, delta: g.monic() })
}

impl Motive {
    /// Builds a motive from the matrix of `τ_M`, whose entries may have denominators that are
    /// powers of `(t-θ)` times polynomials in `θ`. Denominators in `θ` are cleared by scaling
    /// the basis by their least common multiple `f`, which multiplies the matrix by `f^(q-1)`.
    pub fn from_matrix(field: &Field, entries: &Matrix<Fraction>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::NotMotive("matrix must be square and nonempty".into()));
        }
        let q = field.base_order() as u64;
        let mut split = Vec::with_capacity(entries.entries().len());
        let mut f = Poly::one(field);
        let mut kmax = 0usize;
        for e in entries.entries() {
            if e.den.is_zero() {
                return Err(Error::NotMotive("zero denominator".into()));
            }
            let (k, rest) = e.den.t_minus_theta_valuation().expect("nonzero");
            let g = rest.as_theta_poly().ok_or_else(|| {
                Error::NotMotive(format!("denominator {} is not (t-th)^k times a polynomial in th", e.den))
            })?;
            let gm = g.monic();
            f = f.mul(&gm).div_exact(&f.gcd(&gm)).expect("lcm");
            kmax = kmax.max(k);
            split.push((e.num.clone(), k, g));
        }
        let fq1 = f.pow(q - 1);
        let tm = BivarPoly::t_minus_theta(field);
        // P = (t-θ)^kmax f^(q-1) Ψ has polynomial entries.
        let p: Vec<BivarPoly> = split
            .into_iter()
            .map(|(num, k, g)| {
                let cof = fq1.div_exact(&g.monic()).expect("g divides f");
                let cof = cof.scale(field.inv(g.leading()));
                num.mul(&tm.pow((kmax - k) as u64)).mul_theta_poly(&cof)
            })
            .collect();
        let r = entries.nrows();
        let pm = Matrix::from_fn(r, r, |i, j| p[i * r + j].clone());
        Self::normalize(field, pm, kmax as i64, f, None)
    }

    /// Builds a motive from `Φ` and `h` (the matrix of `τ_M` is `(t-θ)^(-h) Φ`), renormalising
    /// `h` to be minimal.
    pub fn from_phi(field: &Field, phi: Matrix<BivarPoly>, h: i64) -> Result<Self> {
        if !phi.is_square() || phi.nrows() == 0 {
            return Err(Error::NotMotive("matrix must be square and nonempty".into()));
        }
        Self::normalize(field, phi, h, Poly::one(field), None)
    }

    /// Divides out the common power of `(t-θ)` and validates the determinant.
    fn normalize(field: &Field, p: Matrix<BivarPoly>, h: i64, denom: Poly, name: Option<String>) -> Result<Self> {
        let m = p
            .entries()
            .iter()
            .filter_map(|e| e.t_minus_theta_valuation().map(|(k, _)| k))
            .min()
            .ok_or_else(|| Error::NotMotive("zero matrix".into()))?;
        let mut phi = p;
        for _ in 0..m {
            phi = phi.map(|e| e.div_rem_t_minus_theta().0);
        }
        let motive = Motive { field: field.clone(), phi, h: h - m as i64, denom, name };
        motive.det_shape()?;
        Ok(motive)
    }

    /// The Carlitz motive: `τ(e) = (t-θ) e`.
    pub fn carlitz(field: &Field) -> Self {
        Motive {
            field: field.clone(),
            phi: Matrix::from_fn(1, 1, |_, _| BivarPoly::one(field)),
            h: -1,
            denom: Poly::one(field),
            name: Some("carlitz".into()),
        }
    }

    /// The dual motive, with τ-matrix `(Ψ^(-1))^T`.
    pub fn dual(&self) -> Result<Self> {
        let f = &self.field;
        let shape = self.det_shape()?;
        let adj = ring::adjugate(&BivarRing(f.clone()), &self.phi).transpose();
        // Ψ^(-1) = (t-θ)^(h-k) adj(Φ) / (c Δ).
        let e = self.h - shape.k;
        let tm = BivarPoly::t_minus_theta(f);
        let den_theta = BivarPoly::from_theta_poly(&shape.delta.scale(shape.scalar));
        let (num_pow, den_pow) = if e >= 0 { (tm.pow(e as u64), BivarPoly::one(f)) } else { (BivarPoly::one(f), tm.pow((-e) as u64)) };
        let frac = adj.map(|a| Fraction { num: a.mul(&num_pow), den: den_theta.mul(&den_pow) });
        let mut m = Self::from_matrix(f, &frac)?;
        m.name = self.name.as_ref().map(|n| format!("dual({n})"));
        Ok(m)
    }

    /// Tensor product via the Kronecker product of the matrices.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::NotMotive("tensor product of motives over different fields".into()));
        }
        let phi = ring::kronecker(&BivarRing(self.field.clone()), &self.phi, &other.phi);
        let mut m = Self::normalize(&self.field, phi, self.h + other.h, Poly::one(&self.field), None)?;
        m.name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            _ => None,
        };
        Ok(m)
    }

    /// The `k`-th tensor power (`k >= 1`).
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::NotMotive("tensor power must be positive".into()));
        }
        let mut m = self.clone();
        for _ in 1..k {
            m = m.tensor(self)?;
        }
        m.name = self.name.as_ref().map(|n| format!("{n}^{k}"));
        Ok(m)
    }

    /// The twist `M(h') = (M, (t-θ)^(-h') τ_M)`.
    pub fn twist(&self, h_prime: i64) -> Self {
        let mut m = self.clone();
        m.h += h_prime;
        m.name = self.name.as_ref().map(|n| format!("{n}({h_prime})"));
        m
    }

    /// The same motive with a different display name.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.phi.nrows()
    }

    pub fn phi(&self) -> &Matrix<BivarPoly> {
        &self.phi
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    /// The `θ`-polynomial by which the input basis was scaled.
    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Largest `t`-degree of an entry of `Φ`.
    pub fn d_t(&self) -> usize {
        self.phi.entries().iter().filter_map(|e| e.deg_t()).max().unwrap_or(0)
    }

    /// Largest `θ`-degree of an entry of `Φ`.
    pub fn d_theta(&self) -> usize {
        self.phi.entries().iter().filter_map(|e| e.deg_theta()).max().unwrap_or(0)
    }

    pub fn det_phi(&self) -> BivarPoly {
        ring::determinant(&BivarRing(self.field.clone()), &self.phi)
    }

    /// `det Φ = c (t-θ)^k Δ(θ)`.
    pub fn det_shape(&self) -> Result<DetShape> {
        let det = self.det_phi();
        det_shape(&det).ok_or_else(|| {
            Error::NotMotive(format!("determinant {det} is not a unit times (t-th)^k times a polynomial in th"))
        })
    }

    /// Discriminant of the lattice spanned by the basis: `det Ψ = c (t-θ)^k Δ(θ)` with `Δ`
    /// monic, where `Ψ = (t-θ)^(-h) Φ` is the matrix of `τ_M`.
    pub fn lattice_discriminant(&self) -> Result<(Poly, i64)> {
        let s = self.det_shape()?;
        Ok((s.delta, s.k - self.rank() as i64 * self.h))
    }

    /// Renders the motive in the motive file format.
    pub fn to_file_string(&self) -> String {
        file::render(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::GaloisField;
    use crate::ff::parse::{eval_fraction, parse_bivar, parse_expr};

    fn frac(s: &str, f: &Field) -> Fraction {
        eval_fraction(&parse_expr(s).unwrap(), f).unwrap()
    }

    fn fm(f: &Field, rows: &[&[&str]]) -> Result<Motive> {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| frac(s, f)).collect()).collect());
        Motive::from_matrix(f, &m)
    }

    #[test]
    fn carlitz_and_dual_normalisation() {
        let f = GaloisField::prime(3).unwrap();
        let c = fm(&f, &[&["t - th"]]).unwrap();
        assert_eq!((c.h(), c.phi().get(0, 0).is_one()), (-1, true));
        assert_eq!(c.phi(), Motive::carlitz(&f).phi());
        let d = fm(&f, &[&["1/(t-th)"]]).unwrap();
        assert_eq!(d.h(), 1);
        assert!(d.phi().get(0, 0).is_one());
        let cd = Motive::carlitz(&f).dual().unwrap();
        assert_eq!((cd.h(), cd.phi().get(0, 0).is_one()), (1, true));
        let sq = cd.tensor_power(2).unwrap();
        assert_eq!(sq.h(), 2);
        assert_eq!(Motive::carlitz(&f).lattice_discriminant().unwrap(), (Poly::one(&f), 1));
    }

    #[test]
    fn example_motive() {
        let f = GaloisField::prime(2).unwrap();
        let m = fm(&f, &[&["th+1", "t*th+th"], &["t+1", "t^2+th"]]).unwrap();
        assert_eq!(m.h(), 0);
        assert_eq!(m.phi().get(1, 0), &parse_bivar("t+1", &f).unwrap());
        let (delta, k) = m.lattice_discriminant().unwrap();
        assert_eq!((delta, k), (Poly::one(&f), 2));
    }

    #[test]
    fn scaled_carlitz_discriminant() {
        let f = GaloisField::prime(3).unwrap();
        let m = fm(&f, &[&["th^2*(t-th)"]]).unwrap();
        let (delta, k) = m.lattice_discriminant().unwrap();
        assert_eq!(delta, Poly::from_ints(&f, &[0, 0, 1]));
        assert_eq!(k, 1);
        // A θ-denominator is cleared into the basis.
        let n = fm(&f, &[&["(t-th)/th"]]).unwrap();
        assert_eq!(n.denom(), &Poly::x(&f));
        assert_eq!(n.phi().get(0, 0), &parse_bivar("th", &f).unwrap());
    }

    #[test]
    fn twist_roundtrip_and_rejection() {
        let f = GaloisField::prime(2).unwrap();
        let m = fm(&f, &[&["th+1", "t*th+th"], &["t+1", "t^2+th"]]).unwrap();
        assert_eq!(m.twist(3).twist(-3).phi(), m.phi());
        assert_eq!(m.twist(3).twist(-3).h(), m.h());
        assert!(fm(&f, &[&["t", "1"], &["1", "t"]]).is_err());
        assert!(fm(&f, &[&["1/(t+th^2)"]]).is_err());
    }
}
