//! `det(1 - T A)` over a truncated local ring.
//!
//! The ring has zero divisors, so the algorithm is Berkowitz's division-free one. For long
//! elements every entry is transformed once and each inner product is accumulated in the
//! spectral domain, so a dot product of length `k` costs one inverse transform instead of
//! `k` full multiplications.

use crate::completion::local::Spectrum;
use crate::completion::{LocalElement, LocalRing};
use crate::ff::ring::{self, Matrix};

/// Below this precision plain multiplication is cheaper than spectral accumulation.
const SPECTRAL_CUTOFF: usize = 64;

/// A running sum of spectral products that flushes before the integer bound is reached.
struct Accumulator<'a> {
    ring: &'a LocalRing,
    buf: Vec<u64>,
    pending: usize,
    partial: Option<LocalElement>,
}

impl<'a> Accumulator<'a> {
    fn new(ring: &'a LocalRing) -> Self {
        Accumulator { ring, buf: ring.spectral_zero(), pending: 0, partial: None }
    }

    fn add(&mut self, a: &Spectrum, b: &Spectrum) {
        if self.pending == self.ring.spectral_capacity() {
            self.flush();
        }
        LocalRing::spectral_mul_acc(&mut self.buf, a, b);
        self.pending += 1;
    }

    fn flush(&mut self) {
        if self.pending == 0 {
            return;
        }
        let buf = std::mem::replace(&mut self.buf, self.ring.spectral_zero());
        let x = self.ring.from_spectrum(buf);
        self.partial = Some(match self.partial.take() {
            Some(p) => self.ring.add(&p, &x),
            None => x,
        });
        self.pending = 0;
    }

    fn finish(mut self) -> LocalElement {
        self.flush();
        self.partial.unwrap_or_else(|| self.ring.zero())
    }
}

fn spectrum(ring: &LocalRing, x: &LocalElement) -> Option<Spectrum> {
    (!x.is_zero()).then(|| ring.to_spectrum(x))
}

/// Coefficients `c_0 = 1, ..., c_n` of `det(1 - T A)`.
pub fn dual_char_poly(ring: &LocalRing, a: &Matrix<LocalElement>) -> Vec<LocalElement> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    if ring.precision() <= SPECTRAL_CUTOFF || ring.spectral_capacity() < 2 {
        return ring::det_one_minus_t(ring, a);
    }
    let n = a.nrows();
    let spec: Vec<Option<Spectrum>> = a.entries().iter().map(|x| spectrum(ring, x)).collect();
    let at = |i: usize, j: usize| spec[i * n + j].as_ref();
    let mut p = vec![ring.one()];
    for k in 0..n {
        let mut t = Vec::with_capacity(k + 2);
        t.push(ring.one());
        t.push(ring.neg(a.get(k, k)));
        let mut v: Vec<LocalElement> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for m in 0..k {
            let vs: Vec<Option<Spectrum>> = v.iter().map(|x| spectrum(ring, x)).collect();
            let dot = |row: usize| {
                let mut acc = Accumulator::new(ring);
                for (j, vj) in vs.iter().enumerate() {
                    if let (Some(x), Some(y)) = (at(row, j), vj) {
                        acc.add(x, y);
                    }
                }
                acc.finish()
            };
            t.push(ring.neg(&dot(k)));
            if m + 1 < k {
                v = (0..k).map(dot).collect();
            }
        }
        p = toeplitz(ring, &t, &p);
    }
    p
}

/// `out[i] = Σ_j t[i-j] p[j]`, one longer than `p`.
fn toeplitz(ring: &LocalRing, t: &[LocalElement], p: &[LocalElement]) -> Vec<LocalElement> {
    let ts: Vec<Option<Spectrum>> = t.iter().map(|x| spectrum(ring, x)).collect();
    let ps: Vec<Option<Spectrum>> = p.iter().map(|x| spectrum(ring, x)).collect();
    (0..=p.len())
        .map(|i| {
            let mut acc = Accumulator::new(ring);
            for (j, pj) in ps.iter().enumerate().take(i + 1) {
                if let (Some(x), Some(y)) = (ts.get(i - j).and_then(|s| s.as_ref()), pj) {
                    acc.add(x, y);
                }
            }
            acc.finish()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::Place;
    use crate::ff::GaloisField;

    #[test]
    fn small_examples() {
        let f = GaloisField::prime(2).unwrap();
        let ring = LocalRing::new(&f, &Place::Infinite, 4).unwrap();
        let u = ring.monomial(1, 1);
        let m = Matrix::from_rows(vec![vec![u.clone(), ring.one()], vec![ring.zero(), u]]);
        let c = dual_char_poly(&ring, &m);
        assert_eq!(c, vec![ring.one(), ring.zero(), ring.monomial(1, 2)]);
        let z = Matrix::filled(3, 3, ring.zero());
        let cz = dual_char_poly(&ring, &z);
        assert!(cz[0] == ring.one() && cz[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn spectral_path_matches_generic() {
        let f = GaloisField::new(2, Some(&[1, 1, 1])).unwrap();
        let ring = LocalRing::new(&f, &Place::Infinite, 150).unwrap();
        let order = ring.residue_field().order() as usize;
        let n = 6;
        let m = Matrix::from_fn(n, n, |i, j| {
            let coeffs = (0..150).map(|k| ((i * 31 + j * 17 + k * k * 7 + 3) % order) as u32).collect();
            ring.from_coeffs(coeffs)
        });
        assert_eq!(dual_char_poly(&ring, &m), ring::det_one_minus_t(ring.as_ref(), &m));
    }
}
