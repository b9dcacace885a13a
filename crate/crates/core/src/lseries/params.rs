//! Integer bookkeeping for the nucleus: the exponent `c`, the sequences `h_i`, `k_i`, `w_i`
//! and the nucleus size.

use serde::Serialize;

use crate::completion::Place;
use crate::error::{Error, Result};

/// `⌈a / b⌉` for `b > 0` and signed `a`.
fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i128::from(a.rem_euclid(b) != 0)
}

/// `h_0 = h` and `h_(i+1) = ⌈h_i / q⌉`, for `i` up to `c`.
pub fn h_sequence(h: i64, q: u64, c: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(c + 1);
    out.push(h);
    for i in 0..c {
        out.push(ceil_div(out[i] as i128, q as i128) as i64);
    }
    out
}

/// The integers `k_0..k_(d-1)` and `w_0..w_(d-1)` attached to `h_c` at a place of degree `d`.
/// Every `w_i` lies in `[0, q-1]`.
pub fn kw_integers(h_c: i64, q: u64, d: usize) -> (Vec<i64>, Vec<i64>) {
    assert!(d >= 1, "place degree must be positive");
    let qd = (q as i128).pow(d as u32) - 1;
    let k: Vec<i64> = (0..d)
        .map(|i| {
            let num = if i == 0 { h_c as i128 } else { (q as i128).pow((d - i) as u32) * h_c as i128 };
            ceil_div(num, qd) as i64
        })
        .collect();
    let q = q as i64;
    let w = (0..d)
        .map(|i| {
            let next = k[(i + 1) % d];
            let mut w = q * next - k[i];
            if i == 0 {
                w -= h_c;
            }
            w
        })
        .collect();
    (k, w)
}

/// Everything the nucleus construction needs at a given place and precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NucleusParams {
    pub infinite: bool,
    /// Degree of the place (1 at infinity).
    pub degree: usize,
    pub q: u64,
    pub rank: usize,
    pub c: usize,
    /// Internal precision `N = q^c`.
    pub n: usize,
    pub h_seq: Vec<i64>,
    /// Empty at infinity.
    pub k: Vec<i64>,
    /// Empty at infinity.
    pub w: Vec<i64>,
    pub s_max: usize,
    /// `d_t - h`, by which `T` is rescaled at infinity.
    pub k_scale: Option<i64>,
    pub s_max_overridden: bool,
}

impl NucleusParams {
    /// Dimension `r (s_max + 1)` of the nucleus.
    pub fn dim(&self) -> usize {
        self.rank * (self.s_max + 1)
    }

    /// Precision to which the coefficient of `T^n` is known.
    pub fn coefficient_precision(&self, n: usize) -> i64 {
        self.n as i64 - n as i64 * self.k_scale.unwrap_or(0)
    }

    /// Replaces `s_max`. Values below the default are accepted for experiments; the result is
    /// then no longer guaranteed to be the L-series.
    /// At infinity `c` is raised again if the larger nucleus needs more digits for `prec`.
    pub fn with_s_max(mut self, s_max: usize, prec: usize) -> Result<Self> {
        self.s_max_overridden = s_max != self.s_max;
        self.s_max = s_max;
        if let Some(ks) = self.k_scale.filter(|&k| k > 0) {
            let h = self.h_seq[0];
            while (self.n as i64) - self.dim() as i64 * ks < prec as i64 {
                self.c += 1;
                self.n = checked_pow(self.q, self.c)? as usize;
            }
            self.h_seq = h_sequence(h, self.q, self.c);
        }
        Ok(self)
    }
}

fn checked_pow(q: u64, c: usize) -> Result<u64> {
    u32::try_from(c)
        .ok()
        .and_then(|c| q.checked_pow(c))
        .filter(|&n| n <= (1 << 40))
        .ok_or_else(|| Error::InvalidPrecision(format!("q^{c} is too large")))
}

/// Smallest admissible `c` for the requested precision, with the matching nucleus.
///
/// At a finite place of degree `d`, `c` is the least multiple of `d` with `q^c >= prec`.
/// At infinity `c` is the least integer with `q^c - r (d_t - h) (c + d_θ/(q-1)) >= prec`,
/// raised further if needed so that every coefficient `a_n` with `1 <= n <=` the nucleus
/// dimension keeps `prec` digits after the rescaling of `T`.
pub fn choose_c(place: &Place, q: u64, prec: usize, rank: usize, d_t: usize, d_theta: usize, h: i64) -> Result<NucleusParams> {
    if prec == 0 {
        return Err(Error::InvalidPrecision("precision must be at least 1".into()));
    }
    let prec_i = prec as i128;
    match place {
        Place::Finite(v) => {
            let d = v.degree().unwrap_or(1);
            let mut c = 0;
            while (checked_pow(q, c)? as i128) < prec_i {
                c += d;
            }
            let n = checked_pow(q, c)? as usize;
            let h_seq = h_sequence(h, q, c);
            let (k, w) = kw_integers(h_seq[c], q, d);
            let s_max = ceil_div(d_theta as i128, q as i128 - 1) as usize + 2 * d + c;
            Ok(NucleusParams {
                infinite: false,
                degree: d,
                q,
                rank,
                c,
                n,
                h_seq,
                k,
                w,
                s_max,
                k_scale: None,
                s_max_overridden: false,
            })
        }
        Place::Infinite => {
            let ks = d_t as i128 - h as i128;
            let (r, qm1, dth) = (rank as i128, q as i128 - 1, d_theta as i128);
            // Multiply through by q-1 to stay in integers.
            let ok = |c: usize| -> Result<bool> {
                let qc = checked_pow(q, c)? as i128;
                Ok(qm1 * qc - r * ks * (qm1 * c as i128 + dth) >= qm1 * prec_i)
            };
            let mut c = 0;
            while !ok(c)? {
                c += 1;
            }
            let s_max_of = |c: usize| c + d_theta / (q as usize - 1);
            // The coefficient of T^n is known modulo u^(N - n ks); the binding n is 1 when
            // ks < 0 and the nucleus dimension when ks > 0.
            let worst = |c: usize| if ks > 0 { (rank * (s_max_of(c) + 1)) as i128 * ks } else { ks };
            while (checked_pow(q, c)? as i128) - worst(c) < prec_i {
                c += 1;
            }
            let n = checked_pow(q, c)? as usize;
            Ok(NucleusParams {
                infinite: true,
                degree: 1,
                q,
                rank,
                c,
                n,
                h_seq: h_sequence(h, q, c),
                k: Vec::new(),
                w: Vec::new(),
                s_max: s_max_of(c),
                k_scale: Some(ks as i64),
                s_max_overridden: false,
            })
        }
    }
}
