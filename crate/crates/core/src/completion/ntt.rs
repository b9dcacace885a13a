//! Number-theoretic transform over the prime `P = 2^64 - 2^32 + 1`.
//!
//! Used for exact products of integer vectors whose convolution coefficients stay below `P`.

/// The modulus `2^64 - 2^32 + 1`.
pub const P: u64 = 0xFFFF_FFFF_0000_0001;
const EPSILON: u64 = 0xFFFF_FFFF;
/// Generator of the multiplicative group mod `P`.
const GENERATOR: u64 = 7;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let (s, c) = a.overflowing_add(b);
    let s = if c { s.wrapping_add(EPSILON) } else { s };
    if s >= P { s - P } else { s }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b { a - b } else { a.wrapping_sub(b).wrapping_add(P) }
}

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let hi_hi = hi >> 32;
    let hi_lo = hi & EPSILON;
    // 2^64 = 2^32 - 1 and 2^96 = -1 modulo P.
    let (mut t, borrow) = lo.overflowing_sub(hi_hi);
    if borrow {
        t = t.wrapping_sub(EPSILON);
    }
    let (r, carry) = t.overflowing_add(hi_lo * EPSILON);
    let r = if carry { r.wrapping_add(EPSILON) } else { r };
    if r >= P { r - P } else { r }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

/// Precomputed twiddles for transforms of one power-of-two length.
#[derive(Clone, Debug)]
pub struct Ntt {
    n: usize,
    roots: Vec<u64>,
    inv_roots: Vec<u64>,
    n_inv: u64,
}

impl Ntt {
    /// Plan for length `n`, a power of two up to `2^32`.
    pub fn new(n: usize) -> Self {
        assert!(n.is_power_of_two() && n <= 1 << 32, "unsupported transform length {n}");
        let w = pow(GENERATOR, (P - 1) / n as u64);
        let w_inv = pow(w, P - 2);
        let half = (n / 2).max(1);
        let mut roots = Vec::with_capacity(half);
        let mut inv_roots = Vec::with_capacity(half);
        let (mut x, mut y) = (1, 1);
        for _ in 0..half {
            roots.push(x);
            inv_roots.push(y);
            x = mul(x, w);
            y = mul(y, w_inv);
        }
        Ntt { n, roots, inv_roots, n_inv: pow(n as u64, P - 2) }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn transform(&self, a: &mut [u64], roots: &[u64]) {
        let n = self.n;
        debug_assert_eq!(a.len(), n);
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let w = roots[k * step];
                    let u = a[start + k];
                    let v = mul(a[start + k + half], w);
                    a[start + k] = add(u, v);
                    a[start + k + half] = sub(u, v);
                }
            }
            len <<= 1;
        }
    }

    pub fn forward(&self, a: &mut [u64]) {
        self.transform(a, &self.roots);
    }

    /// Inverse transform including the `1/n` scaling.
    pub fn inverse(&self, a: &mut [u64]) {
        self.transform(a, &self.inv_roots);
        for x in a.iter_mut() {
            *x = mul(*x, self.n_inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_matches_u128() {
        let xs = [0u64, 1, 2, P - 1, P - 2, 1 << 63, EPSILON, 123456789123456789];
        for &a in &xs {
            for &b in &xs {
                let (a, b) = (a % P, b % P);
                assert_eq!(mul(a, b) as u128, a as u128 * b as u128 % P as u128);
                assert_eq!(add(a, b) as u128, (a as u128 + b as u128) % P as u128);
                assert_eq!(add(sub(a, b), b), a);
            }
        }
    }

    #[test]
    fn convolution() {
        let ntt = Ntt::new(8);
        let mut a = vec![1, 2, 3, 0, 0, 0, 0, 0];
        let mut b = vec![4, 5, 0, 0, 0, 0, 0, 0];
        ntt.forward(&mut a);
        ntt.forward(&mut b);
        let mut c: Vec<u64> = a.iter().zip(&b).map(|(x, y)| mul(*x, *y)).collect();
        ntt.inverse(&mut c);
        assert_eq!(c, vec![4, 13, 22, 15, 0, 0, 0, 0]);
    }
}
