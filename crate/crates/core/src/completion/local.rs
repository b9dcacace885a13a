//! Truncated completions `O_v / u^N` of `F_q[x]` at a place.
//!
//! At a finite place `v` of degree `d` the ring is `F_v[u]/u^N` with `F_v = F_q[x]/(v)`,
//! reached through `ι: x ↦ a + u` where `a` is the class of `x`. At infinity it is
//! `F_q[u]/u^N` with `u = 1/t`.
//!
//! Long products go through Kronecker substitution into `F_p[y]`: every `F_v` coefficient
//! is spread over a slot of `(2e-1)(2d-1)` integer positions (its base-`p` digits indexed by
//! the monomial `a^k x^i`), so an integer convolution followed by reduction mod `p` and a
//! table lookup recovers the product. The integer convolution is an NTT modulo a 64-bit
//! prime, exact as long as the coefficient bound stays below that prime.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::completion::laurent::Laurent;
use crate::completion::ntt::{self, Ntt};
use crate::completion::place::Place;
use crate::error::{Error, Result};
use crate::ff::field::{Field, GaloisField};
use crate::ff::poly::Poly;
use crate::ff::ring::CommRing;

/// Below this support length products are computed directly.
const SCHOOLBOOK_CUTOFF: usize = 40;

/// A `u`-adic valuation, or the statement that the element vanishes to the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(usize),
    AtLeast(usize),
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(k) => Some(k),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The valuation, or the precision bound for elements that vanish.
    pub fn lower_bound(self) -> usize {
        match self {
            Valuation::Finite(k) | Valuation::AtLeast(k) => k,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// An element of a [`LocalRing`]: exactly `N` coefficients of `1, u, ..., u^(N-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalElement {
    coeffs: Vec<u32>,
}

impl fmt::Debug for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        write!(f, "LocalElement({:?}, N={})", &self.coeffs[..last], self.coeffs.len())
    }
}

impl LocalElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Number of coefficients up to the last nonzero one.
    pub fn support(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1)
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(k) => Valuation::Finite(k),
            None => Valuation::AtLeast(self.coeffs.len()),
        }
    }

    /// The same element reduced to a smaller precision.
    pub fn truncated(&self, n: usize) -> LocalElement {
        let mut c = self.coeffs.clone();
        c.resize(n.min(self.coeffs.len()), 0);
        LocalElement { coeffs: c }
    }
}

/// Integer spectrum of an element, used to accumulate many products before one inverse NTT.
#[derive(Clone, Debug)]
pub struct Spectrum(Vec<u64>);

struct Kronecker {
    slot: usize,
    digit_offset: Vec<usize>,
    img: Vec<u32>,
    prime_direct: bool,
}

/// The truncated local ring at a place.
pub struct LocalRing {
    place: Place,
    base: Field,
    field: Field,
    a: u32,
    prec: usize,
    kron: Kronecker,
    plans: Mutex<HashMap<usize, Arc<Ntt>>>,
}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalRing(place={}, N={}, residue={:?})", self.place, self.prec, self.field)
    }
}

impl LocalRing {
    /// Builds `O_v / u^N` for a place of `F_q(x)`; `base` is `F_q`.
    pub fn new(base: &Field, place: &Place, prec: usize) -> Result<Arc<Self>> {
        if prec == 0 {
            return Err(Error::InvalidPrecision("local precision must be at least 1".into()));
        }
        let (field, a) = match place {
            Place::Infinite => (base.clone(), 0),
            Place::Finite(v) => {
                if v.field().as_ref() != base.as_ref() {
                    return Err(Error::InvalidPlace("place lives over a different field".into()));
                }
                let fv = base.extension(v)?;
                let a = fv.generator();
                (fv, a)
            }
        };
        let kron = Self::kronecker(&field);
        Ok(Arc::new(LocalRing {
            place: place.clone(),
            base: base.clone(),
            field,
            a,
            prec,
            kron,
            plans: Mutex::new(HashMap::new()),
        }))
    }

    fn kronecker(field: &GaloisField) -> Kronecker {
        let e = field.base_degree();
        let d = field.ext_degree();
        let (se, sd) = (2 * e - 1, 2 * d - 1);
        let slot = se * sd;
        let mut digit_offset = Vec::with_capacity(e * d);
        for i in 0..d {
            for k in 0..e {
                digit_offset.push(i * se + k);
            }
        }
        let ag = field.base_generator();
        let xg = field.generator();
        let mut img = vec![0; slot];
        for i in 0..sd {
            for k in 0..se {
                let ak = if e > 1 { field.pow(ag, k as u64) } else { 1 };
                let xi = if d > 1 { field.pow(xg, i as u64) } else { 1 };
                img[i * se + k] = field.mul(ak, xi);
            }
        }
        Kronecker { slot, digit_offset, img, prime_direct: field.is_prime_field() }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    /// The coefficient field `F_q`.
    pub fn base(&self) -> &Field {
        &self.base
    }

    /// The residue field `F_v` (or `F_q` at infinity).
    pub fn residue_field(&self) -> &Field {
        &self.field
    }

    /// Residue class `a` of the variable.
    pub fn a(&self) -> u32 {
        self.a
    }

    /// Precision `N`.
    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> LocalElement {
        LocalElement { coeffs: vec![0; self.prec] }
    }

    pub fn one(&self) -> LocalElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u32) -> LocalElement {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// `c u^k` (zero when `k >= N`).
    pub fn monomial(&self, c: u32, k: usize) -> LocalElement {
        let mut z = self.zero();
        if k < self.prec {
            z.coeffs[k] = c;
        }
        z
    }

    /// The element with the given leading coefficients, truncated or padded to `N`.
    pub fn from_coeffs(&self, mut coeffs: Vec<u32>) -> LocalElement {
        coeffs.resize(self.prec, 0);
        LocalElement { coeffs }
    }

    pub fn add(&self, x: &LocalElement, y: &LocalElement) -> LocalElement {
        let f = &self.field;
        LocalElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, x: &LocalElement, y: &LocalElement) -> LocalElement {
        let f = &self.field;
        LocalElement { coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn neg(&self, x: &LocalElement) -> LocalElement {
        let f = &self.field;
        LocalElement { coeffs: x.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    /// Multiplication by a residue-field scalar.
    pub fn scale(&self, x: &LocalElement, c: u32) -> LocalElement {
        let f = &self.field;
        LocalElement { coeffs: x.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, x: &LocalElement, k: usize) -> LocalElement {
        let mut z = self.zero();
        for i in k..self.prec {
            z.coeffs[i] = x.coeffs[i - k];
        }
        z
    }

    /// `acc += c * u^k * x`, truncated.
    pub fn add_scaled_shift(&self, acc: &mut LocalElement, x: &LocalElement, c: u32, k: usize) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        for i in k..self.prec {
            let xi = x.coeffs[i - k];
            if xi != 0 {
                acc.coeffs[i] = f.add(acc.coeffs[i], f.mul(xi, c));
            }
        }
    }

    pub fn mul(&self, x: &LocalElement, y: &LocalElement) -> LocalElement {
        let (lx, ly) = (x.support(), y.support());
        if lx == 0 || ly == 0 {
            return self.zero();
        }
        let fits = (lx.min(ly) as u128)
            * (self.field.degree() as u128)
            * ((self.field.characteristic() as u128 - 1).pow(2))
            < ntt::P as u128;
        if lx.min(ly) <= SCHOOLBOOK_CUTOFF || !fits {
            return self.mul_schoolbook(x, y, lx, ly);
        }
        let full = (lx + ly - 1).min(self.prec);
        let len = ((lx + ly - 1) * self.kron.slot).next_power_of_two();
        let plan = self.plan(len);
        let mut a = self.encode(x, lx, len);
        let mut b = self.encode(y, ly, len);
        plan.forward(&mut a);
        plan.forward(&mut b);
        for (u, v) in a.iter_mut().zip(&b) {
            *u = ntt::mul(*u, *v);
        }
        plan.inverse(&mut a);
        let mut z = self.decode(&a, full);
        z.coeffs.resize(self.prec, 0);
        z
    }

    fn mul_schoolbook(&self, x: &LocalElement, y: &LocalElement, lx: usize, ly: usize) -> LocalElement {
        let f = &self.field;
        let mut z = self.zero();
        for i in 0..lx.min(self.prec) {
            let a = x.coeffs[i];
            if a == 0 {
                continue;
            }
            for j in 0..ly.min(self.prec - i) {
                let b = y.coeffs[j];
                if b != 0 {
                    z.coeffs[i + j] = f.add(z.coeffs[i + j], f.mul(a, b));
                }
            }
        }
        z
    }

    fn plan(&self, len: usize) -> Arc<Ntt> {
        let mut plans = self.plans.lock().expect("plan cache poisoned");
        plans.entry(len).or_insert_with(|| Arc::new(Ntt::new(len))).clone()
    }

    fn encode(&self, x: &LocalElement, upto: usize, len: usize) -> Vec<u64> {
        let p = self.field.characteristic();
        let slot = self.kron.slot;
        let mut out = vec![0u64; len];
        for (n, &c) in x.coeffs.iter().take(upto).enumerate() {
            let base = n * slot;
            if self.kron.prime_direct {
                out[base] = c as u64;
                continue;
            }
            let (mut c, mut j) = (c, 0);
            while c != 0 {
                out[base + self.kron.digit_offset[j]] = (c % p) as u64;
                c /= p;
                j += 1;
            }
        }
        out
    }

    fn decode(&self, v: &[u64], count: usize) -> LocalElement {
        let p = self.field.characteristic() as u64;
        let f = &self.field;
        let slot = self.kron.slot;
        let mut coeffs = vec![0u32; count];
        for (n, c) in coeffs.iter_mut().enumerate() {
            let chunk = &v[n * slot..(n + 1) * slot];
            if self.kron.prime_direct {
                *c = (chunk[0] % p) as u32;
                continue;
            }
            let mut acc = 0;
            for (off, &val) in chunk.iter().enumerate() {
                let r = val % p;
                if r != 0 {
                    acc = f.add(acc, f.mul_int(self.kron.img[off], r as i64));
                }
            }
            *c = acc;
        }
        LocalElement { coeffs }
    }

    /// Length of full-precision spectra.
    pub fn spectral_len(&self) -> usize {
        (2 * self.prec * self.kron.slot).next_power_of_two()
    }

    /// How many spectral products may be summed before the integer bound can overflow.
    pub fn spectral_capacity(&self) -> usize {
        let p = self.field.characteristic() as u128;
        let per = self.prec as u128 * self.field.degree() as u128 * (p - 1).pow(2).max(1);
        ((ntt::P as u128 - 1) / per).min(usize::MAX as u128) as usize
    }

    pub fn to_spectrum(&self, x: &LocalElement) -> Spectrum {
        let len = self.spectral_len();
        let mut v = self.encode(x, self.prec, len);
        self.plan(len).forward(&mut v);
        Spectrum(v)
    }

    /// A zeroed accumulator for [`Self::spectral_mul_acc`].
    pub fn spectral_zero(&self) -> Vec<u64> {
        vec![0; self.spectral_len()]
    }

    /// `acc += a ⊙ b` pointwise.
    pub fn spectral_mul_acc(acc: &mut [u64], a: &Spectrum, b: &Spectrum) {
        for ((s, x), y) in acc.iter_mut().zip(&a.0).zip(&b.0) {
            *s = ntt::add(*s, ntt::mul(*x, *y));
        }
    }

    /// Inverts an accumulated spectrum into a ring element.
    pub fn from_spectrum(&self, mut acc: Vec<u64>) -> LocalElement {
        self.plan(acc.len()).inverse(&mut acc);
        self.decode(&acc, self.prec)
    }

    pub fn pow(&self, x: &LocalElement, n: u64) -> LocalElement {
        let mut result = self.one();
        let mut base = x.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Inverse of a unit by Newton iteration.
    pub fn inverse(&self, x: &LocalElement) -> Result<LocalElement> {
        let c0 = x.coeffs[0];
        if c0 == 0 {
            return Err(Error::Hypothesis("inverse of a non-unit in the local ring".into()));
        }
        let mut y = self.constant(self.field.inv(c0));
        let mut k = 1;
        let two = self.constant(self.field.from_int(2));
        while k < self.prec {
            k = (2 * k).min(self.prec);
            let xy = self.mul(x, &y);
            y = self.mul(&y, &self.sub(&two, &xy));
        }
        Ok(y)
    }

    /// `ι(f)` for `f ∈ F_q[x]`: the Taylor expansion of `f` at `a`, that is `f(a + u)`.
    pub fn iota_embed(&self, f: &Poly) -> Result<LocalElement> {
        if self.place.is_infinite() {
            return Err(Error::InvalidPlace("iota_embed needs a finite place; use iota_infinite".into()));
        }
        let fv = &self.field;
        let mut g: Vec<u32> = f.coeffs().to_vec();
        let mut out = self.zero();
        // Repeated synthetic division by (x - a): the k-th remainder is the k-th Taylor coefficient.
        for k in 0..self.prec {
            if g.is_empty() {
                break;
            }
            let mut carry = 0;
            for c in g.iter_mut().rev() {
                let cur = fv.add(*c, carry);
                carry = fv.mul(cur, self.a);
                *c = cur;
            }
            out.coeffs[k] = g[0];
            g.remove(0);
        }
        Ok(out)
    }

    /// Image of `t^(-D) f` at infinity, where `deg f <= D`.
    pub fn iota_infinite(&self, f: &Poly, max_degree: usize) -> Result<LocalElement> {
        if !self.place.is_infinite() {
            return Err(Error::InvalidPlace("iota_infinite needs the infinite place".into()));
        }
        if f.degree().is_some_and(|d| d > max_degree) {
            return Err(Error::Hypothesis(format!(
                "degree {} exceeds the normalisation degree {max_degree}",
                f.degree().unwrap_or(0)
            )));
        }
        let mut out = self.zero();
        for (i, &c) in f.coeffs().iter().enumerate() {
            let k = max_degree - i;
            if k < self.prec {
                out.coeffs[k] = c;
            }
        }
        Ok(out)
    }

    /// A polynomial of `F_q[x]` as an exact Laurent series in `u`: its full Taylor expansion
    /// at a finite place, or `u^(-deg f)` times the reversed coefficients at infinity.
    pub fn embed_exact(&self, f: &Poly) -> Laurent {
        let Some(deg) = f.degree() else { return Laurent::zero() };
        if self.place.is_infinite() {
            let rev: Vec<u32> = f.coeffs().iter().rev().copied().collect();
            return Laurent::new(-(deg as i64), rev, None);
        }
        let fv = &self.field;
        let mut g: Vec<u32> = f.coeffs().to_vec();
        let mut out = Vec::with_capacity(deg + 1);
        while !g.is_empty() {
            let mut carry = 0;
            for c in g.iter_mut().rev() {
                let cur = fv.add(*c, carry);
                carry = fv.mul(cur, self.a);
                *c = cur;
            }
            out.push(g.remove(0));
        }
        Laurent::new(0, out, None)
    }

    /// Inverse of [`Self::iota_embed`]: the unique `f` of degree below `dN` with `ι(f) = x`.
    /// Solves a linear system over `F_q`, so it is meant for small precisions.
    pub fn iota_inverse(&self, x: &LocalElement) -> Result<Poly> {
        let Place::Finite(v) = &self.place else {
            return Err(Error::InvalidPlace("iota_inverse needs a finite place".into()));
        };
        let d = v.degree().unwrap_or(1);
        let n = d * self.prec;
        let fq = &self.base;
        let coords = |e: &LocalElement| -> Vec<u32> {
            e.coeffs.iter().flat_map(|&c| self.field.base_coords(c)).collect()
        };
        // Columns: images of x^k; augmented with the target.
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut img = self.one();
        let ix = self.iota_embed(&Poly::x(fq))?;
        for _ in 0..n {
            cols.push(coords(&img));
            img = self.mul(&img, &ix);
        }
        let target = coords(x);
        let mut m: Vec<Vec<u32>> = (0..n).map(|i| {
            let mut row: Vec<u32> = cols.iter().map(|c| c[i]).collect();
            row.push(target[i]);
            row
        }).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else { continue };
            m.swap(row, pr);
            let inv = fq.inv(m[row][col]);
            for v in m[row].iter_mut() {
                *v = fq.mul(*v, inv);
            }
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..=n {
                        let sub = fq.mul(factor, m[row][c]);
                        m[r][c] = fq.sub(m[r][c], sub);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if pivots.len() != n {
            return Err(Error::Internal("iota is not bijective".into()));
        }
        let mut coeffs = vec![0; n];
        for (r, &c) in pivots.iter().enumerate() {
            coeffs[c] = m[r][n];
        }
        Ok(Poly::from_coeffs(fq, coeffs))
    }

    /// Coefficients rendered in the generator `g` of `F_v`, from `u^0` up to the last nonzero one.
    pub fn format(&self, x: &LocalElement) -> Vec<String> {
        x.coeffs[..x.support()].iter().map(|&c| self.field.format(c)).collect()
    }
}

impl CommRing for LocalRing {
    type Elem = LocalElement;
    fn zero(&self) -> LocalElement {
        LocalRing::zero(self)
    }
    fn one(&self) -> LocalElement {
        LocalRing::one(self)
    }
    fn add(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        LocalRing::add(self, a, b)
    }
    fn sub(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        LocalRing::sub(self, a, b)
    }
    fn mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        LocalRing::mul(self, a, b)
    }
    fn neg(&self, a: &LocalElement) -> LocalElement {
        LocalRing::neg(self, a)
    }
    fn is_zero(&self, a: &LocalElement) -> bool {
        a.is_zero()
    }
}

/// A polynomial in `θ` with coefficients in a local ring, indexed by `θ`-exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalThetaPoly {
    pub coeffs: Vec<LocalElement>,
}

impl LocalThetaPoly {
    pub fn constant(x: LocalElement) -> Self {
        Self::from_coeffs(vec![x])
    }

    pub fn from_coeffs(mut coeffs: Vec<LocalElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LocalThetaPoly { coeffs }
    }

    pub fn deg_theta(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> Option<&LocalElement> {
        self.coeffs.get(j)
    }

    /// Multiplication by `(α - θ)` for a local element `α`.
    pub fn mul_alpha_minus_theta(&self, ring: &LocalRing, alpha: &LocalElement) -> Self {
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut c = if j < n { ring.mul(alpha, &self.coeffs[j]) } else { ring.zero() };
            if j > 0 {
                c = ring.sub(&c, &self.coeffs[j - 1]);
            }
            out.push(c);
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by `(c + c' u^k - θ)` with residue scalars, in linear time per coefficient.
    pub fn mul_sparse_minus_theta(&self, ring: &LocalRing, c: u32, c2: u32, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut acc = ring.zero();
            if j < n {
                ring.add_scaled_shift(&mut acc, &self.coeffs[j], c, 0);
                ring.add_scaled_shift(&mut acc, &self.coeffs[j], c2, k);
            }
            if j > 0 {
                acc = ring.sub(&acc, &self.coeffs[j - 1]);
            }
            out.push(acc);
        }
        Self::from_coeffs(out)
    }

    /// Multiplication by `(1 - u^k θ)`.
    pub fn mul_one_minus_shift_theta(&self, ring: &LocalRing, k: usize) -> Self {
        let minus_one = ring.residue_field().neg(1);
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut acc = if j < n { self.coeffs[j].clone() } else { ring.zero() };
            if j > 0 {
                ring.add_scaled_shift(&mut acc, &self.coeffs[j - 1], minus_one, k);
            }
            out.push(acc);
        }
        Self::from_coeffs(out)
    }

    /// Product with another `θ`-polynomial.
    pub fn mul(&self, ring: &LocalRing, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::from_coeffs(Vec::new());
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, ring: &LocalRing, x: &LocalElement) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| ring.mul(c, x)).collect())
    }
}

/// The Cartier operator on `θ`-polynomials: the coefficient of `θ^s` in the result is the
/// coefficient of `θ^(qs+q-1)` of the input.
pub fn cartier_local(p: &LocalThetaPoly, q: usize) -> LocalThetaPoly {
    LocalThetaPoly::from_coeffs(p.coeffs.iter().skip(q - 1).step_by(q).cloned().collect())
}
