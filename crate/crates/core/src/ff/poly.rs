//! Dense univariate polynomials over a [`GaloisField`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ff::field::{format_poly_terms, Field};

/// A polynomial stored as coefficients from the constant term up, without trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (std::sync::Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_string_var("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Coefficients given as integers reduced mod `p`.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The monomial `c x^n`.
    pub fn monomial(field: &Field, c: u32, n: usize) -> Self {
        let mut v = vec![0; n + 1];
        v[n] = c;
        Self::from_coeffs(field, v)
    }

    /// The variable `x`.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Largest `k` with `x^k` dividing `self` (`None` for zero).
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    /// Same coefficients viewed over another field containing them.
    pub fn with_field(&self, field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: self.coeffs.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(f, v)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Self::from_coeffs(f, v)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: u32) -> Self {
        if c == 0 {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    /// Coefficients of `x^k` and above, shifted down by `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().skip(k).copied().collect())
    }

    /// Reduction modulo `x^k`.
    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().take(k).copied().collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let (a, b) = (&self.coeffs, &other.coeffs);
        if f.is_prime_field() {
            let p = f.characteristic() as u64;
            // Delay reductions while the accumulator cannot overflow.
            let chunk = (u64::MAX / ((p - 1) * (p - 1)).max(1)).min(1 << 20) as usize;
            let mut acc = vec![0u64; a.len() + b.len() - 1];
            let mut cnt = vec![0usize; acc.len()];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    let k = i + j;
                    acc[k] += x as u64 * y as u64;
                    cnt[k] += 1;
                    if cnt[k] == chunk {
                        acc[k] %= p;
                        cnt[k] = 1;
                    }
                }
            }
            return Self::from_coeffs(f, acc.into_iter().map(|v| (v % p) as u32).collect());
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
        }
        Self::from_coeffs(f, out)
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

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let f = &self.field;
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv_lead = f.inv(divisor.leading());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            q[k - dd] = factor;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                if dc != 0 {
                    r[k - dd + i] = f.sub(r[k - dd + i], f.mul(factor, dc));
                }
            }
        }
        r.truncate(dd);
        (Self::from_coeffs(f, q), Self::from_coeffs(f, r))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Quotient when `divisor` divides `self` exactly, otherwise `None`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.leading());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, n: u64, m: &Self) -> Self {
        let mut result = Self::one(&self.field).rem(m);
        let mut base = self.rem(m);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul_mod(&base, m);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        result
    }

    /// `self^(k^n) mod m` by `n` repeated `k`-th powers, for exponents too large for `u64`.
    pub fn pow_pow_mod(&self, k: u64, n: usize, m: &Self) -> Self {
        let mut x = self.rem(m);
        for _ in 0..n {
            x = x.pow_mod(k, m);
        }
        x
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| f.mul_int(c, i as i64)).collect();
        Self::from_coeffs(f, v)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluation at an element of an extension field `ext` containing the coefficients.
    pub fn eval_in(&self, ext: &Field, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| ext.add(ext.mul(acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Self::zero(f), |acc, &c| acc.mul(g).add(&Self::constant(f, c)))
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, m: impl Fn(u32) -> u32) -> Self {
        Self::from_coeffs(&self.field, self.coeffs.iter().map(|&c| m(c)).collect())
    }

    /// Coefficientwise `q`-Frobenius.
    pub fn frobenius_coeffs(&self) -> Self {
        let f = self.field.clone();
        self.map_coeffs(|c| f.frobenius(c))
    }

    /// `self(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0u32; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Self::from_coeffs(&self.field, v)
    }

    /// Renders the polynomial in the named variable, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        let f = &self.field;
        format_poly_terms(&self.coeffs, var, |c| {
            let s = f.format(c);
            if s.contains('+') { format!("({s})") } else { s }
        })
    }

    /// Total order used to sort places: degree first, then coefficients from the top down.
    pub fn place_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                Poly::$m(self, rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}
