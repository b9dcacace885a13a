//! Irreducibility testing, factorisation and enumeration of irreducible polynomials.
//!
//! Factorisation follows the usual pipeline: squarefree decomposition, distinct-degree
//! splitting and Cantor–Zassenhaus equal-degree splitting driven by a seeded ChaCha RNG,
//! so results are reproducible for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ff::field::Field;
use crate::ff::poly::Poly;

/// Default seed for the randomised splitting step.
pub const DEFAULT_SEED: u64 = 0;

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(Q^n) = x mod f` and
/// `gcd(x^(Q^(n/r)) - x, f) = 1` for each prime `r | n`, where `Q` is the field order.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let q = f.field().order() as u64;
    let x = Poly::x(f.field());
    let frob = |k: usize| x.pow_pow_mod(q, k, f);
    if frob(n).sub(&x).rem(f).is_zero() {
        for r in prime_divisors(n) {
            let g = frob(n / r).sub(&x).gcd(f);
            if !g.is_one() {
                return false;
            }
        }
        true
    } else {
        false
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree decomposition: pairs `(g, m)` with `f = lc * Π g^m`, each `g` monic squarefree.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let f = f.monic();
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p); take p-th roots of the coefficients.
        let root_exp = (field.order() / field.characteristic()) as u64;
        let g = Poly::from_coeffs(
            &field,
            f.coeffs().iter().step_by(p).map(|&c| field.pow(c, root_exp)).collect(),
        );
        for (h, m) in squarefree_decomposition(&g) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if !c.is_one() {
        for (h, m) in squarefree_decomposition(&c) {
            out.push((h, m));
        }
    }
    merge_multiplicities(out)
}

fn merge_multiplicities(mut v: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    v.sort_by_key(|a| a.1);
    v
}

/// Distinct-degree factorisation of a monic squarefree polynomial.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let q = f.field().order() as u64;
    let x = Poly::x(f.field());
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_coeffs(field, (0..below).map(|_| rng.gen_range(0..field.order())).collect())
}

/// Splits a monic squarefree product of irreducibles of degree `d` into its factors.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let q = field.order() as u64;
    let p = field.characteristic();
    loop {
        let a = random_poly(&field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace map Σ a^(2^i) for i < d * log2 q.
            let steps = d * field.degree();
            let mut s = a.rem(f);
            let mut cur = s.clone();
            for _ in 1..steps {
                cur = cur.mul_mod(&cur, f);
                s = s.add(&cur);
            }
            s
        } else {
            match pow_minus_one_half(q, d) {
                Some(e) => a.pow_mod(e, f).sub(&Poly::one(&field)),
                None => {
                    // (q^d-1)/2 = (q-1)/2 * (1 + q + ... + q^(d-1))
                    let mut acc = Poly::one(&field);
                    let mut cur = a.rem(f);
                    for _ in 0..d {
                        acc = acc.mul_mod(&cur, f);
                        cur = cur.pow_mod(q, f);
                    }
                    acc.pow_mod((q - 1) / 2, f).sub(&Poly::one(&field))
                }
            }
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

fn pow_minus_one_half(q: u64, d: usize) -> Option<u64> {
    q.checked_pow(d as u32).map(|x| (x - 1) / 2)
}

/// Full factorisation into monic irreducibles with multiplicities, sorted by place order.
pub fn factor(f: &Poly, seed: u64) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                match out.iter_mut().find(|(x, _)| *x == irr) {
                    Some(entry) => entry.1 += m,
                    None => out.push((irr, m)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.place_cmp(&b.0));
    out
}

/// All monic irreducible polynomials of degree `n`, in place order.
pub fn irreducibles_of_degree(field: &Field, n: usize) -> Vec<Poly> {
    let q = field.order() as u64;
    let count = q.pow(n as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut k = idx;
        for _ in 0..n {
            coeffs.push((k % q) as u32);
            k /= q;
        }
        coeffs.push(1);
        let f = Poly::from_coeffs(field, coeffs);
        if is_irreducible(&f) {
            out.push(f);
        }
    }
    out.sort_by(|a, b| a.place_cmp(b));
    out
}

/// All monic irreducibles of degree at most `n`.
pub fn irreducibles_up_to(field: &Field, n: usize) -> Vec<Poly> {
    (1..=n).flat_map(|d| irreducibles_of_degree(field, d)).collect()
}
