//! Bivariate polynomials in `t` and `θ` over `F_q`, stored θ-major.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ff::field::Field;
use crate::ff::poly::Poly;

/// `Σ_j rows[j](t) θ^j`, with no trailing zero rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    field: Field,
    rows: Vec<Poly>,
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

impl BivarPoly {
    pub fn from_rows(field: &Field, mut rows: Vec<Poly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BivarPoly { field: field.clone(), rows }
    }

    pub fn zero(field: &Field) -> Self {
        BivarPoly { field: field.clone(), rows: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_t_poly(&Poly::one(field))
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        Self::from_t_poly(&Poly::constant(field, c))
    }

    /// `c t^i θ^j`.
    pub fn monomial(field: &Field, c: u32, i: usize, j: usize) -> Self {
        let mut rows = vec![Poly::zero(field); j + 1];
        rows[j] = Poly::monomial(field, c, i);
        Self::from_rows(field, rows)
    }

    pub fn t(field: &Field) -> Self {
        Self::monomial(field, 1, 1, 0)
    }

    pub fn theta(field: &Field) -> Self {
        Self::monomial(field, 1, 0, 1)
    }

    /// `t - θ`.
    pub fn t_minus_theta(field: &Field) -> Self {
        Self::t(field).sub(&Self::theta(field))
    }

    pub fn from_t_poly(f: &Poly) -> Self {
        Self::from_rows(f.field(), vec![f.clone()])
    }

    /// Embeds `f(θ)`.
    pub fn from_theta_poly(f: &Poly) -> Self {
        let field = f.field();
        Self::from_rows(field, f.coeffs().iter().map(|&c| Poly::constant(field, c)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficient of `θ^j` as a polynomial in `t`.
    pub fn row(&self, j: usize) -> Poly {
        self.rows.get(j).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    /// Coefficient of `t^i θ^j`.
    pub fn coeff(&self, i: usize, j: usize) -> u32 {
        self.rows.get(j).map_or(0, |r| r.coeff(i))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.rows.len() == 1 && self.rows[0].is_one()
    }

    pub fn deg_theta(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    /// Coefficient of `t^i` as a polynomial in `θ`.
    pub fn t_coeff(&self, i: usize) -> Poly {
        Poly::from_coeffs(&self.field, self.rows.iter().map(|r| r.coeff(i)).collect())
    }

    /// The coefficients of `t^0, ..., t^deg_t` as polynomials in `θ`.
    pub fn t_slices(&self) -> Vec<Poly> {
        match self.deg_t() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.t_coeff(i)).collect(),
        }
    }

    /// Rebuilds `Σ t^i slices[i](θ)`.
    pub fn from_t_slices(field: &Field, slices: &[Poly]) -> Self {
        let dth = slices.iter().map(|s| s.len()).max().unwrap_or(0);
        let rows = (0..dth)
            .map(|j| Poly::from_coeffs(field, slices.iter().map(|s| s.coeff(j)).collect()))
            .collect();
        Self::from_rows(field, rows)
    }

    /// `Some(f)` when the polynomial does not involve `t`.
    pub fn as_theta_poly(&self) -> Option<Poly> {
        self.rows
            .iter()
            .all(|r| r.is_constant())
            .then(|| Poly::from_coeffs(&self.field, self.rows.iter().map(|r| r.coeff(0)).collect()))
    }

    /// `Some(f)` when the polynomial does not involve `θ`.
    pub fn as_t_poly(&self) -> Option<Poly> {
        match self.rows.len() {
            0 => Some(Poly::zero(&self.field)),
            1 => Some(self.rows[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n).map(|j| self.row(j).add(&other.row(j))).collect();
        Self::from_rows(&self.field, rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n).map(|j| self.row(j).sub(&other.row(j))).collect();
        Self::from_rows(&self.field, rows)
    }

    pub fn neg(&self) -> Self {
        BivarPoly { field: self.field.clone(), rows: self.rows.iter().map(|r| r.neg()).collect() }
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::from_rows(&self.field, self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut rows = vec![Poly::zero(&self.field); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if !b.is_zero() {
                    rows[i + j] = rows[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_rows(&self.field, rows)
    }

    /// Multiplication by a polynomial in `t`.
    pub fn mul_t_poly(&self, f: &Poly) -> Self {
        Self::from_rows(&self.field, self.rows.iter().map(|r| r.mul(f)).collect())
    }

    /// Multiplication by a polynomial in `θ`.
    pub fn mul_theta_poly(&self, f: &Poly) -> Self {
        self.mul(&Self::from_theta_poly(f))
    }

    /// Multiplication by `θ^k`.
    pub fn shift_theta(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![Poly::zero(&self.field); k];
        rows.extend(self.rows.iter().cloned());
        Self::from_rows(&self.field, rows)
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    fn q(&self) -> usize {
        self.field.base_order() as usize
    }

    /// `τ_θ`: `θ ↦ θ^q`, fixing `t` and `F_q`.
    pub fn tau_theta(&self) -> Self {
        self.tau_theta_pow(1)
    }

    /// `θ ↦ θ^(q^k)`.
    pub fn tau_theta_pow(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let step = self.q().pow(k as u32);
        let mut rows = vec![Poly::zero(&self.field); (self.rows.len() - 1) * step + 1];
        for (j, r) in self.rows.iter().enumerate() {
            rows[j * step] = r.clone();
        }
        Self::from_rows(&self.field, rows)
    }

    /// `τ_t`: `t ↦ t^q`, fixing `θ`.
    pub fn tau_t(&self) -> Self {
        let q = self.q();
        Self::from_rows(&self.field, self.rows.iter().map(|r| r.inflate(q)).collect())
    }

    /// Cartier operator in `θ`: keeps the `θ`-exponents `qs + q - 1` and maps them to `s`.
    pub fn cartier_theta(&self) -> Self {
        let q = self.q();
        let rows = self.rows.iter().skip(q - 1).step_by(q).cloned().collect();
        Self::from_rows(&self.field, rows)
    }

    /// Writes `self = (t - θ) * quotient + remainder` with `remainder` a polynomial in `t`
    /// (namely `self(t, t)`).
    pub fn div_rem_t_minus_theta(&self) -> (Self, Poly) {
        // Synthetic division in θ by (θ - t): self = (θ - t) Q + R(t).
        let n = self.rows.len();
        if n == 0 {
            return (self.clone(), Poly::zero(&self.field));
        }
        let t = Poly::x(&self.field);
        let mut q = vec![Poly::zero(&self.field); n.saturating_sub(1)];
        let mut carry = Poly::zero(&self.field);
        for j in (0..n).rev() {
            let cur = self.rows[j].add(&carry);
            if j == 0 {
                carry = cur;
            } else {
                carry = cur.mul(&t);
                q[j - 1] = cur;
            }
        }
        // self = (θ - t) Q + R, so self = (t - θ)(-Q) + R.
        let quot = Self::from_rows(&self.field, q).neg();
        (quot, carry)
    }

    /// Largest `k` with `(t - θ)^k | self` together with the cofactor (`None` for zero).
    pub fn t_minus_theta_valuation(&self) -> Option<(usize, Self)> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem_t_minus_theta();
            if !r.is_zero() {
                return Some((k, cur));
            }
            cur = q;
            k += 1;
        }
    }

    /// Reduction modulo a monic polynomial `m(θ)`; the remainder has `θ`-degree below `deg m`.
    pub fn rem_theta(&self, m: &Poly) -> Self {
        self.div_rem_theta(m).1
    }

    /// Division by a monic polynomial `m(θ)`.
    pub fn div_rem_theta(&self, m: &Poly) -> (Self, Self) {
        let dm = m.degree().expect("nonzero modulus");
        debug_assert!(m.is_monic());
        let f = &self.field;
        if self.rows.len() <= dm {
            return (Self::zero(f), self.clone());
        }
        let mut r = self.rows.clone();
        let mut q = vec![Poly::zero(f); r.len() - dm];
        for k in (dm..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = r[k].clone();
            for (i, &mc) in m.coeffs().iter().enumerate() {
                if mc != 0 {
                    r[k - dm + i] = r[k - dm + i].sub(&c.scale(mc));
                }
            }
            q[k - dm] = c;
        }
        r.truncate(dm);
        (Self::from_rows(f, q), Self::from_rows(f, r))
    }

    /// Exact division by `m(θ)` (monic), if possible.
    pub fn div_exact_theta(&self, m: &Poly) -> Option<Self> {
        let (q, r) = self.div_rem_theta(m);
        r.is_zero().then_some(q)
    }

    /// Evaluation `θ ↦ x` for `x` in an extension field `ext` of `F_q`; the result is a
    /// polynomial in `t` over `ext`.
    pub fn eval_theta(&self, ext: &Field, x: u32) -> Poly {
        let mut acc = Poly::zero(ext);
        for r in self.rows.iter().rev() {
            acc = acc.scale(x).add(&r.with_field(ext));
        }
        acc
    }

    /// Evaluation `t ↦ f(θ)`, giving a polynomial in `θ`.
    pub fn eval_t_at_theta_poly(&self, f: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.field);
        for (j, r) in self.rows.iter().enumerate() {
            acc = acc.add(&r.compose(f).shift(j));
        }
        acc
    }

    /// Renders the polynomial with variables `t` and `th`, highest `θ`-degree first.
    pub fn to_expr(&self) -> String {
        let mut terms = Vec::new();
        for (j, r) in self.rows.iter().enumerate().rev() {
            for (i, &c) in r.coeffs().iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let mut parts = Vec::new();
                let cs = self.field.format(c);
                let compound = cs.contains('+');
                if (i, j) == (0, 0) || cs != "1" {
                    parts.push(if compound { format!("({cs})") } else { cs });
                }
                match i {
                    0 => {}
                    1 => parts.push("t".into()),
                    _ => parts.push(format!("t^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("th".into()),
                    _ => parts.push(format!("th^{j}")),
                }
                terms.push(parts.join("*"));
            }
        }
        if terms.is_empty() { "0".into() } else { terms.join(" + ") }
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&BivarPoly> for &BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: &BivarPoly) -> BivarPoly {
                BivarPoly::$m(self, rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::neg(self)
    }
}

/// `C_θ` applied to the fraction `x / y`: returns `(C_θ(x y^(q-1)), τ_t(y))`.
pub fn cartier_fraction(x: &BivarPoly, y: &BivarPoly) -> (BivarPoly, BivarPoly) {
    let q = x.field().base_order() as u64;
    (x.mul(&y.pow(q - 1)).cartier_theta(), y.tau_t())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::GaloisField;

    #[test]
    fn t_minus_theta_split() {
        let f = GaloisField::prime(3).unwrap();
        let tm = BivarPoly::t_minus_theta(&f);
        let g = BivarPoly::t(&f).pow(2).add(&BivarPoly::theta(&f)).add(&BivarPoly::one(&f));
        let h = tm.mul(&tm).mul(&g);
        let (k, rest) = h.t_minus_theta_valuation().unwrap();
        assert_eq!(k, 2);
        assert_eq!(rest, g);
        let (q, r) = g.div_rem_t_minus_theta();
        assert_eq!(tm.mul(&q).add(&BivarPoly::from_t_poly(&r)), g);
    }

    #[test]
    fn cartier_identity() {
        // C(τ_θ(a) b) = a C(b)
        let f = GaloisField::prime(3).unwrap();
        let a = BivarPoly::t(&f).mul(&BivarPoly::theta(&f)).add(&BivarPoly::one(&f));
        let b = BivarPoly::theta(&f).pow(5).add(&BivarPoly::t(&f).mul(&BivarPoly::theta(&f).pow(2)));
        assert_eq!(a.tau_theta().mul(&b).cartier_theta(), a.mul(&b.cartier_theta()));
    }
}
