//! Table-driven finite fields presented as towers `F_p ⊂ F_q ⊂ F_q[x]/(v)`.
//!
//! An element is a `u32` index. Writing `F_q = F_p[a]/(m)` with `e = deg m` and the outer
//! layer as `F_q[x]/(v)` with `d = deg v`, the base-`p` digit at position `i*e + k` of the
//! index is the coefficient of `a^k x^i`. Elements of `F_q` therefore have indices below `q`
//! in every extension, so the inclusion `F_q ⊂ F_v` is the identity on indices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::factor::is_irreducible;
use crate::ff::poly::Poly;

/// Shared handle to a field.
pub type Field = Arc<GaloisField>;

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

/// A finite field with precomputed discrete log and exponential tables.
pub struct GaloisField {
    p: u32,
    base_degree: usize,
    ext_degree: usize,
    base_modulus: Vec<u32>,
    ext_modulus: Vec<u32>,
    base_order: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}", self.p, self.base_degree * self.ext_degree)?;
        if self.base_degree > 1 {
            write!(f, ", base modulus {:?}", self.base_modulus)?;
        }
        if self.ext_degree > 1 {
            write!(f, ", modulus {:?}", self.ext_modulus)?;
        }
        write!(f, ")")
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.base_modulus == other.base_modulus
            && self.ext_modulus == other.ext_modulus
    }
}

impl Eq for GaloisField {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= p as u64 {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Builds exp/log tables from a slow multiplication by searching for a primitive element.
fn build_tables(order: u32, mul: impl Fn(u32, u32) -> u32) -> Result<(Vec<u32>, Vec<u32>)> {
    let n = (order - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; order as usize];
    for g in 1..order {
        exp[0] = 1;
        let mut x = 1u32;
        let mut period = 0usize;
        for i in 1..=n {
            x = mul(x, g);
            if x == 1 {
                period = i;
                break;
            }
            if i < n {
                exp[i] = x;
            }
        }
        if period == n {
            for i in 0..n {
                exp[n + i] = exp[i];
                log[exp[i] as usize] = i as u32;
            }
            return Ok((exp, log));
        }
    }
    Err(Error::InvalidField("no primitive element found".into()))
}

impl GaloisField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        let (exp, log) = build_tables(p, |x, y| ((x as u64 * y as u64) % p as u64) as u32)?;
        Ok(Arc::new(GaloisField {
            p,
            base_degree: 1,
            ext_degree: 1,
            base_modulus: vec![0, 1],
            ext_modulus: vec![0, 1],
            base_order: p,
            order: p,
            exp,
            log,
            pow_p: vec![1, p],
        }))
    }

    /// The field `F_q = F_p[a]/(m)`. `modulus` lists the coefficients of `m` over `F_p`
    /// from the constant term up; `None` or a linear modulus gives `F_p`.
    pub fn new(p: u32, modulus: Option<&[u32]>) -> Result<Field> {
        let fp = Self::prime(p)?;
        let Some(m) = modulus else { return Ok(fp) };
        let m = Poly::from_coeffs(&fp, m.iter().map(|&c| c % p).collect());
        let Some(e) = m.degree() else {
            return Err(Error::InvalidField("zero modulus".into()));
        };
        if e <= 1 {
            return Ok(fp);
        }
        if !is_irreducible(&m) {
            return Err(Error::NotIrreducible(m.to_string_var("a")));
        }
        let m = m.monic();
        let order = (p as u64).checked_pow(e as u32).filter(|&o| o <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!("field of order {p}^{e} too large")));
        };
        let order = order as u32;
        let pow_p: Vec<u32> = (0..=e).map(|k| p.pow(k as u32)).collect();
        let mc: Vec<u32> = m.coeffs().to_vec();
        let digits = |x: u32| -> Vec<u64> { (0..e).map(|k| ((x / pow_p[k]) % p) as u64).collect() };
        let mul = |x: u32, y: u32| -> u32 {
            let (xd, yd) = (digits(x), digits(y));
            let mut prod = vec![0u64; 2 * e - 1];
            for i in 0..e {
                for j in 0..e {
                    prod[i + j] = (prod[i + j] + xd[i] * yd[j]) % p as u64;
                }
            }
            for k in (e..2 * e - 1).rev() {
                let c = prod[k];
                if c != 0 {
                    for i in 0..e {
                        let sub = c * mc[i] as u64 % p as u64;
                        prod[k - e + i] = (prod[k - e + i] + p as u64 - sub) % p as u64;
                    }
                }
            }
            (0..e).map(|k| prod[k] as u32 * pow_p[k]).sum()
        };
        let (exp, log) = build_tables(order, mul)?;
        Ok(Arc::new(GaloisField {
            p,
            base_degree: e,
            ext_degree: 1,
            base_modulus: mc,
            ext_modulus: vec![0, 1],
            base_order: order,
            order,
            exp,
            log,
            pow_p,
        }))
    }

    /// The extension `F_q[x]/(v)` of a field `self = F_q`. `v` must be irreducible over `F_q`.
    pub fn extension(self: &Field, v: &Poly) -> Result<Field> {
        if self.ext_degree != 1 {
            return Err(Error::InvalidField("extensions are only built over F_q".into()));
        }
        if v.field().as_ref() != self.as_ref() {
            return Err(Error::InvalidField("modulus lives over a different field".into()));
        }
        let Some(d) = v.degree() else {
            return Err(Error::InvalidField("zero modulus".into()));
        };
        if d == 0 {
            return Err(Error::InvalidField("constant modulus".into()));
        }
        if !is_irreducible(v) {
            return Err(Error::NotIrreducible(v.to_string_var("x")));
        }
        let v = v.monic();
        let q = self.order;
        if d == 1 {
            // F_q[x]/(x - c) is F_q itself; only the presentation of x changes.
            let mut f = self.clone_tables();
            f.ext_modulus = v.coeffs().to_vec();
            return Ok(Arc::new(f));
        }
        let order = (q as u64).checked_pow(d as u32).filter(|&o| o <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(Error::InvalidField(format!("extension of order {q}^{d} too large")));
        };
        let order = order as u32;
        let vc: Vec<u32> = v.coeffs().to_vec();
        let base = self.clone();
        let qpow: Vec<u32> = (0..d).map(|i| q.pow(i as u32)).collect();
        let mul = |x: u32, y: u32| -> u32 {
            let xd: Vec<u32> = (0..d).map(|i| (x / qpow[i]) % q).collect();
            let yd: Vec<u32> = (0..d).map(|i| (y / qpow[i]) % q).collect();
            let mut prod = vec![0u32; 2 * d - 1];
            for i in 0..d {
                for j in 0..d {
                    prod[i + j] = base.add(prod[i + j], base.mul(xd[i], yd[j]));
                }
            }
            for k in (d..2 * d - 1).rev() {
                let c = prod[k];
                if c != 0 {
                    for i in 0..d {
                        prod[k - d + i] = base.sub(prod[k - d + i], base.mul(c, vc[i]));
                    }
                }
            }
            (0..d).map(|i| prod[i] * qpow[i]).sum()
        };
        let (exp, log) = build_tables(order, mul)?;
        let total = self.base_degree * d;
        Ok(Arc::new(GaloisField {
            p: self.p,
            base_degree: self.base_degree,
            ext_degree: d,
            base_modulus: self.base_modulus.clone(),
            ext_modulus: vc,
            base_order: q,
            order,
            exp,
            log,
            pow_p: (0..=total).map(|k| self.p.pow(k as u32)).collect(),
        }))
    }

    fn clone_tables(&self) -> GaloisField {
        GaloisField {
            p: self.p,
            base_degree: self.base_degree,
            ext_degree: self.ext_degree,
            base_modulus: self.base_modulus.clone(),
            ext_modulus: self.ext_modulus.clone(),
            base_order: self.base_order,
            order: self.order,
            exp: self.exp.clone(),
            log: self.log.clone(),
            pow_p: self.pow_p.clone(),
        }
    }

    /// The base field `F_q` of this tower (a fresh handle when `self` is an extension).
    pub fn base_field(&self) -> Result<Field> {
        if self.base_degree == 1 {
            GaloisField::prime(self.p)
        } else {
            GaloisField::new(self.p, Some(&self.base_modulus))
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order `q` of the base field `F_q`.
    pub fn base_order(&self) -> u32 {
        self.base_order
    }

    /// `[F_q : F_p]`.
    pub fn base_degree(&self) -> usize {
        self.base_degree
    }

    /// `[self : F_q]`.
    pub fn ext_degree(&self) -> usize {
        self.ext_degree
    }

    /// `[self : F_p]`.
    pub fn degree(&self) -> usize {
        self.base_degree * self.ext_degree
    }

    pub fn is_prime_field(&self) -> bool {
        self.order == self.p
    }

    /// Coefficients of the defining polynomial of `F_q` over `F_p`.
    pub fn base_modulus(&self) -> &[u32] {
        &self.base_modulus
    }

    /// Coefficients (indices in `F_q`) of the defining polynomial of this field over `F_q`.
    pub fn ext_modulus(&self) -> &[u32] {
        &self.ext_modulus
    }

    /// `p^k` for `k <= degree()`.
    pub fn pow_p(&self, k: usize) -> u32 {
        self.pow_p[k]
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// The class of `a` in `F_q = F_p[a]/(m)`.
    pub fn base_generator(&self) -> u32 {
        if self.base_degree > 1 {
            self.p
        } else {
            0
        }
    }

    /// The class of `x` in `F_q[x]/(v)`.
    pub fn generator(&self) -> u32 {
        if self.ext_degree > 1 {
            self.base_order
        } else {
            self.neg(self.ext_modulus[0])
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.order == self.p {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let mut out = 0;
        let (mut a, mut b) = (a, b);
        let mut k = 0;
        while a != 0 || b != 0 {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * self.pow_p[k];
            a /= self.p;
            b /= self.p;
            k += 1;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        if self.order == self.p {
            return self.p - a;
        }
        let mut out = 0;
        let mut a = a;
        let mut k = 0;
        while a != 0 {
            let dgt = a % self.p;
            if dgt != 0 {
                out += (self.p - dgt) * self.pow_p[k];
            }
            a /= self.p;
            k += 1;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.order - 1;
        self.exp[((n - self.log[a as usize]) % n.max(1)) as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, n: u64) -> u32 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = (self.order - 1) as u64;
        let e = (self.log[a as usize] as u64 * (n % m)) % m;
        self.exp[e as usize]
    }

    /// Multiplication by an integer.
    pub fn mul_int(&self, a: u32, n: i64) -> u32 {
        self.mul(a, self.from_int(n))
    }

    /// The `q`-Frobenius `a ↦ a^q`, where `q` is the base order.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.base_order as u64)
    }

    /// Inverse of [`Self::frobenius`].
    pub fn frobenius_inv(&self, a: u32) -> u32 {
        self.pow(a, (self.order / self.base_order) as u64)
    }

    /// `a^(q^k)`.
    pub fn frobenius_pow(&self, a: u32, k: usize) -> u32 {
        let mut x = a;
        for _ in 0..k % self.ext_degree.max(1) {
            x = self.frobenius(x);
        }
        x
    }

    /// True when `a` lies in the base field `F_q`.
    pub fn in_base(&self, a: u32) -> bool {
        a < self.base_order
    }

    /// Base-`p` digits of an element, least significant first.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        (0..self.degree()).map(|k| (a / self.pow_p[k]) % self.p).collect()
    }

    /// Inverse of [`Self::digits`].
    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().enumerate().map(|(k, &c)| (c % self.p) * self.pow_p[k]).sum()
    }

    /// Coordinates over `F_q` in the basis `1, x, ..., x^(d-1)`.
    pub fn base_coords(&self, a: u32) -> Vec<u32> {
        let q = self.base_order;
        (0..self.ext_degree).map(|i| (a / q.pow(i as u32)) % q).collect()
    }

    /// Inverse of [`Self::base_coords`].
    pub fn from_base_coords(&self, coords: &[u32]) -> u32 {
        let q = self.base_order;
        coords.iter().enumerate().map(|(i, &c)| c * q.pow(i as u32)).sum()
    }

    /// Iterates over all elements.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order
    }

    /// Renders an element of `F_q` as a polynomial in `a`.
    pub fn format_base(&self, a: u32) -> String {
        let digits: Vec<u32> = (0..self.base_degree).map(|k| (a / self.pow_p[k]) % self.p).collect();
        format_poly_terms(&digits, "a", |c| c.to_string())
    }

    /// Renders an element; extension elements are written in the generator `g`.
    pub fn format(&self, a: u32) -> String {
        if self.ext_degree == 1 {
            return self.format_base(a);
        }
        let coords = self.base_coords(a);
        format_poly_terms(&coords, "g", |c| {
            let s = self.format_base(c);
            if s.contains('+') || s.contains('-') { format!("({s})") } else { s }
        })
    }
}

/// Shared renderer for `Σ c_i var^i` with the highest power first.
pub(crate) fn format_poly_terms(coeffs: &[u32], var: &str, fmt_coeff: impl Fn(u32) -> String) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = fmt_coeff(c);
        terms.push(match (mon.is_empty(), cs.as_str()) {
            (true, _) => cs,
            (false, "1") => mon,
            _ => format!("{cs}*{mon}"),
        });
    }
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.add(4, 5), 2);
        assert_eq!(f.neg(2), 5);
        assert!(GaloisField::prime(9).is_err());
    }

    #[test]
    fn f4_and_f9() {
        let f4 = GaloisField::new(2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f4.order(), 4);
        let a = f4.base_generator();
        // a^2 = a + 1
        assert_eq!(f4.mul(a, a), f4.add(a, 1));
        assert_eq!(f4.pow(a, 3), 1);
        let f9 = GaloisField::new(3, Some(&[1, 0, 1])).unwrap();
        let a = f9.base_generator();
        assert_eq!(f9.mul(a, a), f9.neg(1));
        assert_eq!(f9.format(f9.add(a, 2)), "a + 2");
        assert!(GaloisField::new(2, Some(&[1, 0, 1])).is_err());
    }

    #[test]
    fn extension_tower_keeps_base_indices() {
        let f2 = GaloisField::prime(2).unwrap();
        let v = Poly::from_coeffs(&f2, vec![1, 1, 1]);
        let f4 = f2.extension(&v).unwrap();
        let g = f4.generator();
        assert_eq!(f4.mul(g, g), f4.add(g, 1));
        assert_eq!(f4.frobenius(g), f4.mul(g, g));
        assert!(f4.in_base(1) && !f4.in_base(g));
        let f9 = GaloisField::new(3, Some(&[1, 0, 1])).unwrap();
        let w = Poly::from_coeffs(&f9, vec![f9.base_generator(), 1]);
        let lin = f9.extension(&w).unwrap();
        assert_eq!(lin.order(), 9);
        assert_eq!(lin.generator(), f9.neg(f9.base_generator()));
    }
}
