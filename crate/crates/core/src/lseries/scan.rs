//! Orders of vanishing at `T = 1`, the scan over places and the twist congruence.

use std::fmt;

use serde::Serialize;

use crate::completion::{Laurent, Place};
use crate::error::{Error, Result};
use crate::ff::factor::irreducibles_up_to;
use crate::ff::field::Field;
use crate::ff::poly::Poly;
use crate::lseries::lseries;
use crate::model::local_factor;
use crate::motive::Motive;

/// An order of vanishing at `T = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingOrder {
    pub order: usize,
    /// False when the coefficients were only known to finite precision.
    pub certified: bool,
    /// True when every coefficient vanished, so `order` is only a lower bound.
    pub at_least: bool,
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at_least {
            write!(f, ">=")?;
        }
        write!(f, "{}", self.order)
    }
}

/// `C(n, m) mod p` by Lucas' theorem.
fn binomial_mod(mut n: usize, mut m: usize, p: usize) -> usize {
    let mut out = 1;
    while m > 0 {
        let (ni, mi) = (n % p, m % p);
        if mi > ni {
            return 0;
        }
        let mut c = 1usize;
        for j in 0..mi {
            c = c * (ni - j) / (j + 1);
        }
        out = out * (c % p) % p;
        n /= p;
        m /= p;
    }
    out
}

/// Coefficients of `P(1 + S)` in `S`, given those of `P(T)`, over any additive structure.
fn shift_to_one<T: Clone>(a: &[T], p: usize, zero: T, add_scaled: impl Fn(&T, &T, u32) -> T) -> Vec<T> {
    (0..a.len())
        .map(|m| {
            (m..a.len()).fold(zero.clone(), |acc, n| match binomial_mod(n, m, p) {
                0 => acc,
                c => add_scaled(&acc, &a[n], c as u32),
            })
        })
        .collect()
}

/// Order at `T = 1` of a polynomial whose coefficients are known modulo `v^prec`.
/// Exact inputs give a certified order.
pub fn order_of_vanishing_at_one(a: &[Laurent], field: &Field) -> VanishingOrder {
    let p = field.characteristic() as usize;
    let certified = a.iter().all(|c| c.is_exact());
    let b = shift_to_one(a, p, Laurent::zero(), |acc, x, c| acc.add(&x.scale(field.from_int(c as i64), field), field));
    match b.iter().position(|c| !c.is_zero()) {
        Some(order) => VanishingOrder { order, certified, at_least: false },
        None => VanishingOrder { order: a.len(), certified, at_least: true },
    }
}

/// Order at `T = 1` of a polynomial with coefficients in `F_q[t]`.
pub fn order_of_vanishing_exact(a: &[Poly]) -> VanishingOrder {
    let Some(first) = a.first() else {
        return VanishingOrder { order: 0, certified: true, at_least: true };
    };
    let field = first.field().clone();
    let p = field.characteristic() as usize;
    let b = shift_to_one(a, p, Poly::zero(&field), |acc, x, c| acc.add(&x.scale(field.from_int(c as i64))));
    match b.iter().position(|c| !c.is_zero()) {
        Some(order) => VanishingOrder { order, certified: true, at_least: false },
        None => VanishingOrder { order: a.len(), certified: true, at_least: true },
    }
}

/// One row of [`conjecture_scan`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub place: String,
    pub degree: usize,
    pub p_order: VanishingOrder,
    pub l_order: VanishingOrder,
}

impl ScanRow {
    /// `ord L_v - ord P_v`.
    pub fn difference(&self) -> i64 {
        self.l_order.order as i64 - self.p_order.order as i64
    }
}

/// Orders at `T = 1` of `P_v` and `L_v` for every finite place `v` of degree at most `max_degree`,
/// in place order.
pub fn conjecture_scan(m: &Motive, max_degree: usize, prec: usize) -> Result<Vec<ScanRow>> {
    irreducibles_up_to(m.field(), max_degree)
        .into_iter()
        .map(|v| {
            let place = Place::finite(&v)?;
            let lf = local_factor(m, &v)?;
            // Clearing the powers of v(t) in the denominators does not change the order.
            let shift = lf.coeffs().iter().map(|(_, e)| (-e).max(0)).max().unwrap_or(0) as u64;
            let cleared: Vec<Poly> = (0..=lf.t_degree())
                .map(|n| {
                    let (num, den) = lf.coeff(n);
                    num.mul(&v.pow(shift - den))
                })
                .collect();
            let l = lseries(m, &place, prec)?;
            Ok(ScanRow {
                place: v.to_string(),
                degree: v.degree().unwrap_or(0),
                p_order: order_of_vanishing_exact(&cleared),
                l_order: order_of_vanishing_at_one(l.coefficients(), l.residue_field()),
            })
        })
        .collect()
}

/// Checks `L_v(M(h), T) ≡ L_v(M(h'), T)` modulo `v^(q^c)`, which holds whenever
/// `h ≡ h'` modulo `(q^d - 1) q^c` with `d = deg v`.
pub fn twist_congruence_check(m: &Motive, place: &Place, h: i64, h_prime: i64, c: u32) -> Result<bool> {
    let q = m.field().order() as i64;
    let modulus = (q.pow(place.degree() as u32) - 1) * q.pow(c);
    if (h - h_prime).rem_euclid(modulus) != 0 {
        return Err(Error::Hypothesis(format!("{h} and {h_prime} are not congruent modulo {modulus}")));
    }
    let prec = q.pow(c) as usize;
    let a = lseries(&m.twist(h), place, prec)?;
    let b = lseries(&m.twist(h_prime), place, prec)?;
    let n = a.degree().max(b.degree());
    Ok((0..=n).all(|i| a.coefficient(i) == b.coefficient(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::GaloisField;

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binomial_mod(5, 2, 3), 1);
        assert_eq!(binomial_mod(4, 2, 2), 0);
        assert_eq!(binomial_mod(6, 3, 7), 20 % 7);
    }

    #[test]
    fn exact_orders() {
        let f = GaloisField::prime(2).unwrap();
        let one = Poly::one(&f);
        assert_eq!(order_of_vanishing_exact(std::slice::from_ref(&one)).order, 0);
        assert_eq!(order_of_vanishing_exact(&[one.clone(), one.clone()]).order, 1);
        // 1 - tT does not vanish at T = 1.
        assert_eq!(order_of_vanishing_exact(&[one.clone(), Poly::x(&f)]).order, 0);
        // (1 - T)^2 = 1 + T^2 in characteristic 2.
        let sq = [one.clone(), Poly::zero(&f), one];
        assert_eq!(order_of_vanishing_exact(&sq).order, 2);
        let lz = [Laurent::one(), Laurent::one()];
        let o = order_of_vanishing_at_one(&lz, &f);
        assert_eq!((o.order, o.certified), (1, true));
    }

    #[test]
    fn trivial_twist() {
        let f = GaloisField::prime(2).unwrap();
        let x = Place::finite(&Poly::x(&f)).unwrap();
        assert!(twist_congruence_check(&Motive::carlitz(&f), &x, 0, 0, 1).unwrap());
        assert!(twist_congruence_check(&Motive::carlitz(&f), &x, 0, 2, 1).unwrap());
        assert!(twist_congruence_check(&Motive::carlitz(&f), &x, 0, 1, 1).is_err());
    }
}
