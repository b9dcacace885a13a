//! Truncated Laurent series `Σ c_k u^k + O(u^P)` over a residue field.
//!
//! These carry an explicit absolute precision, so they can represent exact elements,
//! negative valuations at infinity and the results of divisions whose precision has to be
//! tracked rather than fixed in advance.

use std::fmt;

use crate::completion::local::{LocalElement, LocalRing, Valuation};
use crate::error::{Error, Result};
use crate::ff::field::Field;

/// `u^val * Σ coeffs[i] u^i`, known modulo `u^prec` (`None` means exact).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    val: i64,
    coeffs: Vec<u32>,
    prec: Option<i64>,
}

impl Laurent {
    fn normalized(mut val: i64, mut coeffs: Vec<u32>, prec: Option<i64>) -> Self {
        if let Some(p) = prec {
            let keep = (p - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|&c| c != 0);
        match lead {
            None => Laurent { val: prec.unwrap_or(0), coeffs: Vec::new(), prec },
            Some(k) => {
                coeffs.drain(..k);
                val += k as i64;
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                Laurent { val, coeffs, prec }
            }
        }
    }

    /// Builds `u^val * Σ coeffs[i] u^i + O(u^prec)`.
    pub fn new(val: i64, coeffs: Vec<u32>, prec: Option<i64>) -> Self {
        Self::normalized(val, coeffs, prec)
    }

    pub fn zero() -> Self {
        Laurent { val: 0, coeffs: Vec::new(), prec: None }
    }

    /// Zero known to absolute precision `prec`.
    pub fn zero_to(prec: i64) -> Self {
        Laurent { val: prec, coeffs: Vec::new(), prec: Some(prec) }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: u32) -> Self {
        Self::normalized(0, vec![c], None)
    }

    /// `c u^k`, exact.
    pub fn monomial(c: u32, k: i64) -> Self {
        Self::normalized(k, vec![c], None)
    }

    /// A local ring element, known to its ring precision.
    pub fn from_local(x: &LocalElement) -> Self {
        Self::normalized(0, x.coeffs().to_vec(), Some(x.precision() as i64))
    }

    /// Converts to a local ring element, which must be integral and known to the ring precision.
    pub fn to_local(&self, ring: &LocalRing) -> Result<LocalElement> {
        let n = ring.precision() as i64;
        if self.prec.is_some_and(|p| p < n) {
            return Err(Error::InsufficientPrecision(self.prec.unwrap_or(0).max(0) as usize));
        }
        if !self.coeffs.is_empty() && self.val < 0 {
            return Err(Error::Hypothesis("negative valuation in the local ring".into()));
        }
        let mut v = vec![0; n as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k < n {
                v[k as usize] = c;
            }
        }
        Ok(ring.from_coeffs(v))
    }

    /// Absolute precision, `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Zero to the known precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation of the leading term; the first coefficient is nonzero unless the value is zero.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn leading_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `u^k`.
    pub fn coeff(&self, k: i64) -> u32 {
        if k < self.val {
            return 0;
        }
        self.coeffs.get((k - self.val) as usize).copied().unwrap_or(0)
    }

    /// Valuation as a signed integer, or the precision bound for elements that vanish.
    pub fn valuation(&self) -> LaurentValuation {
        if self.coeffs.is_empty() {
            match self.prec {
                Some(p) => LaurentValuation::AtLeast(p),
                None => LaurentValuation::Infinite,
            }
        } else {
            LaurentValuation::Finite(self.val)
        }
    }

    /// Lower bound for the valuation; `None` for an exact zero.
    fn val_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() { self.prec } else { Some(self.val) }
    }

    /// Forgets everything at or above `u^p`.
    pub fn truncate(&self, p: i64) -> Self {
        let prec = Some(self.prec.map_or(p, |q| q.min(p)));
        Self::normalized(self.val, self.coeffs.clone(), prec)
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    fn combine(&self, other: &Self, field: &Field, negate: bool) -> Self {
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            let p = Self::min_prec(self.prec, other.prec);
            return Laurent { val: p.unwrap_or(0), coeffs: Vec::new(), prec: p };
        }
        let lo = match (self.coeffs.is_empty(), other.coeffs.is_empty()) {
            (true, _) => other.val,
            (_, true) => self.val,
            _ => self.val.min(other.val),
        };
        let hi = (self.val + self.coeffs.len() as i64).max(other.val + other.coeffs.len() as i64);
        let prec = Self::min_prec(self.prec, other.prec);
        let hi = prec.map_or(hi, |p| hi.min(p));
        let mut v = Vec::with_capacity((hi - lo).max(0) as usize);
        for k in lo..hi {
            let b = other.coeff(k);
            let b = if negate { field.neg(b) } else { b };
            v.push(field.add(self.coeff(k), b));
        }
        Self::normalized(lo, v, prec)
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        self.combine(other, field, false)
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        self.combine(other, field, true)
    }

    pub fn neg(&self, field: &Field) -> Self {
        Laurent { val: self.val, coeffs: self.coeffs.iter().map(|&c| field.neg(c)).collect(), prec: self.prec }
    }

    pub fn scale(&self, c: u32, field: &Field) -> Self {
        Self::normalized(self.val, self.coeffs.iter().map(|&x| field.mul(x, c)).collect(), self.prec)
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { val: self.val + k, coeffs: self.coeffs.clone(), prec: self.prec.map(|p| p + k) }
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        // (X + O(u^P1))(Y + O(u^P2)) = XY + O(u^min(P1 + v(Y), P2 + v(X))).
        let err = |p: Option<i64>, v: Option<i64>| match (p, v) {
            (Some(p), Some(v)) => Some(p + v),
            _ => None,
        };
        let prec = Self::min_prec(err(self.prec, other.val_bound()), err(other.prec, self.val_bound()));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return match prec {
                Some(p) => Laurent::zero_to(p),
                None => Laurent::zero(),
            };
        }
        let val = self.val + other.val;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - val).max(0) as usize);
        }
        let mut out = vec![0u32; len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= len {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(len - i) {
                if b != 0 {
                    out[i + j] = field.add(out[i + j], field.mul(a, b));
                }
            }
        }
        Self::normalized(val, out, prec)
    }

    pub fn pow(&self, n: u64, field: &Field) -> Self {
        let mut result = Laurent::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base, field);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, field);
            }
        }
        result
    }

    /// Inverse. Exact inputs are expanded to `rel_prec` coefficients beyond the leading one;
    /// inexact inputs use their own relative precision (capped by `rel_prec` as well).
    pub fn inverse(&self, rel_prec: usize, field: &Field) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::Hypothesis("inverse of a series that vanishes to its precision".into()));
        }
        let mut n = rel_prec as i64;
        if let Some(p) = self.prec {
            n = n.min(p - self.val);
        }
        let n = n.max(0) as usize;
        let inv0 = field.inv(self.coeffs[0]);
        let mut out = vec![0u32; n];
        for k in 0..n {
            // out[k] = -inv0 * Σ_{j=1..k} c_j out[k-j], with out[0] = inv0.
            let mut acc = if k == 0 { 1 } else { 0 };
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = field.sub(acc, field.mul(self.coeffs[j], out[k - j]));
            }
            out[k] = field.mul(acc, inv0);
        }
        Ok(Self::normalized(-self.val, out, Some(-self.val + n as i64)))
    }

    /// Renders the coefficients from the leading term up.
    pub fn format(&self, field: &Field) -> Vec<String> {
        self.coeffs.iter().map(|&c| field.format(c)).collect()
    }
}

/// Valuation of a [`Laurent`] series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentValuation {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl fmt::Display for LaurentValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentValuation::Finite(k) => write!(f, "{k}"),
            LaurentValuation::AtLeast(k) => write!(f, ">={k}"),
            LaurentValuation::Infinite => write!(f, "inf"),
        }
    }
}

impl From<Valuation> for LaurentValuation {
    fn from(v: Valuation) -> Self {
        match v {
            Valuation::Finite(k) => LaurentValuation::Finite(k as i64),
            Valuation::AtLeast(k) => LaurentValuation::AtLeast(k as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field::GaloisField;

    #[test]
    fn inverse_and_precision() {
        let f = GaloisField::prime(3).unwrap();
        // 1/(1 + u) = 1 - u + u^2 - ...
        let x = Laurent::new(0, vec![1, 1], None);
        let y = x.inverse(5, &f).unwrap();
        assert_eq!(y.leading_coeffs(), &[1, 2, 1, 2, 1]);
        assert_eq!(y.precision(), Some(5));
        let z = x.mul(&y, &f);
        assert_eq!(z, Laurent::new(0, vec![1], Some(5)));
        // u^-2 (1 + u) inverted has valuation 2.
        let w = Laurent::new(-2, vec![1, 1], None).inverse(3, &f).unwrap();
        assert_eq!(w.val(), 2);
        assert_eq!(w.precision(), Some(5));
    }

    #[test]
    fn sums_respect_precision() {
        let f = GaloisField::prime(2).unwrap();
        let a = Laurent::new(0, vec![1, 1, 1], Some(2));
        assert_eq!(a.leading_coeffs(), &[1, 1]);
        let b = Laurent::new(0, vec![1, 1], None);
        let s = a.add(&b, &f);
        assert!(s.is_zero());
        assert_eq!(s.valuation(), LaurentValuation::AtLeast(2));
    }
}
