use proptest::prelude::*;

use tmotive::completion::{Laurent, LocalRing, Place};
use tmotive::ff::bivar::BivarPoly;
use tmotive::ff::factor::irreducibles_up_to;
use tmotive::ff::ring::{self, BivarRing, Matrix};
use tmotive::ff::{Field, GaloisField, Poly};
use tmotive::lseries::{dual_char_poly, euler_product_oracle, lseries, twist_congruence_check};
use tmotive::model::{change_basis, local_factor, maximal_model};
use tmotive::motive::Motive;

fn field(p: u32, e: usize) -> Field {
    let base = GaloisField::prime(p).unwrap();
    if e == 1 {
        return base;
    }
    let modulus = irreducibles_up_to(&base, e).into_iter().find(|m| m.degree() == Some(e)).unwrap();
    GaloisField::new(p, Some(modulus.coeffs())).unwrap()
}

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((5, 1)), Just((2, 3)), Just((3, 2))].prop_map(|(p, e)| field(p, e))
}

fn poly(f: &Field, coeffs: &[u32]) -> Poly {
    let q = f.order();
    Poly::from_coeffs(f, coeffs.iter().map(|c| c % q).collect())
}

fn bivar(f: &Field, rows: &[Vec<u32>]) -> BivarPoly {
    BivarPoly::from_rows(f, rows.iter().map(|r| poly(f, r)).collect())
}

/// Upper triangular τ-matrix with diagonal `c_i (t - θ)^(e_i) g_i(θ)`, so its determinant has
/// the right shape; `g_i` is 1 or `θ + 1`.
fn triangular_motive(f: &Field, diag: &[(u32, u64, bool)], upper: &[Vec<u32>]) -> Motive {
    let r = diag.len();
    let phi = Matrix::from_fn(r, r, |i, j| {
        if i == j {
            let (c, e, bad) = diag[i];
            let c = 1 + c % (f.order() - 1);
            let mut x = BivarPoly::t_minus_theta(f).pow(e).scale(c);
            if bad {
                x = x.mul(&bivar(f, &[vec![1], vec![1]]));
            }
            x
        } else if i < j {
            bivar(f, &[upper[i + j].clone(), vec![upper[i + j][0]]])
        } else {
            BivarPoly::zero(f)
        }
    });
    Motive::from_phi(f, phi, 0).unwrap()
}

fn motive_strategy(p: u32) -> impl Strategy<Value = Motive> {
    (
        prop::collection::vec((0u32..8, 0u64..2, prop::bool::weighted(0.25)), 1..=2),
        prop::collection::vec(prop::collection::vec(0u32..8, 1..3), 3),
    )
        .prop_map(move |(diag, upper)| triangular_motive(&GaloisField::prime(p).unwrap(), &diag, &upper))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(f in small_field(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius_pow(a, f.degree()), a);
        prop_assert_eq!(f.frobenius_inv(f.frobenius(a)), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
            prop_assert_eq!(f.pow(a, q as u64 - 1), f.one());
        }
    }

    #[test]
    fn polynomial_division(f in small_field(), a in prop::collection::vec(0u32..100, 0..12), b in prop::collection::vec(0u32..100, 1..6)) {
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b);
        prop_assert_eq!(quo.mul(&b).add(&rem), a.clone());
        prop_assert!(rem.degree() < b.degree() || rem.is_zero());
        let g = a.gcd(&b);
        prop_assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
    }

    #[test]
    fn local_ring_is_a_ring(
        p in prop_oneof![Just(2u32), Just(3)],
        deg in 1usize..=2,
        xs in prop::collection::vec(prop::collection::vec(0u32..9, 0..60), 3),
        prec in 1usize..120,
    ) {
        let f = GaloisField::prime(p).unwrap();
        let v = irreducibles_up_to(&f, deg).into_iter().next_back().unwrap();
        let ring = LocalRing::new(&f, &Place::finite(&v).unwrap(), prec).unwrap();
        let q = ring.residue_field().order();
        let el = |c: &Vec<u32>| ring.from_coeffs(c.iter().map(|x| x % q).collect());
        let (x, y, z) = (el(&xs[0]), el(&xs[1]), el(&xs[2]));
        prop_assert_eq!(ring.mul(&x, &y), ring.mul(&y, &x));
        prop_assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)));
        prop_assert_eq!(ring.mul(&x, &ring.add(&y, &z)), ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z)));
        let mut acc = ring.spectral_zero();
        LocalRing::spectral_mul_acc(&mut acc, &ring.to_spectrum(&x), &ring.to_spectrum(&y));
        LocalRing::spectral_mul_acc(&mut acc, &ring.to_spectrum(&z), &ring.to_spectrum(&z));
        prop_assert_eq!(ring.from_spectrum(acc), ring.add(&ring.mul(&x, &y), &ring.mul(&z, &z)));
        if x.coeff(0) != 0 {
            prop_assert_eq!(ring.mul(&x, &ring.inverse(&x).unwrap()), ring.one());
        }
    }

    #[test]
    fn embedding_is_multiplicative(
        p in prop_oneof![Just(2u32), Just(3)],
        deg in 0usize..=2,
        a in prop::collection::vec(0u32..9, 0..8),
        b in prop::collection::vec(0u32..9, 0..8),
    ) {
        let f = GaloisField::prime(p).unwrap();
        let place = if deg == 0 { Place::Infinite } else {
            Place::finite(&irreducibles_up_to(&f, deg).into_iter().next_back().unwrap()).unwrap()
        };
        let ring = LocalRing::new(&f, &place, 1).unwrap();
        let res = ring.residue_field().clone();
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        let prod = ring.embed_exact(&a.mul(&b));
        prop_assert_eq!(prod, ring.embed_exact(&a).mul(&ring.embed_exact(&b), &res));
        let sum = ring.embed_exact(&a.add(&b));
        prop_assert_eq!(sum, ring.embed_exact(&a).add(&ring.embed_exact(&b), &res));
    }

    #[test]
    fn laurent_inverse(val in -5i64..5, coeffs in prop::collection::vec(0u32..3, 1..30), rel in 1usize..40) {
        let f = GaloisField::prime(3).unwrap();
        let mut coeffs = coeffs;
        coeffs[0] = 1 + coeffs[0] % 2;
        let x = Laurent::new(val, coeffs, None);
        let y = x.inverse(rel, &f).unwrap();
        let one = x.mul(&y, &f);
        prop_assert_eq!(one.precision(), Some(rel as i64));
        prop_assert_eq!(one, Laurent::one().truncate(rel as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn block_triangular_char_polys_multiply(entries in prop::collection::vec(prop::collection::vec(0u32..4, 0..50), 16), split in 1usize..4) {
        let f = GaloisField::prime(2).unwrap();
        let v = Place::parse("t^2 + t + 1", &f).unwrap();
        let ring = LocalRing::new(&f, &v, 50).unwrap();
        let el = |k: usize| ring.from_coeffs(entries[k].clone());
        let big = Matrix::from_fn(4, 4, |i, j| if i >= split && j < split { ring.zero() } else { el(4 * i + j) });
        let top = big.principal(&(0..split).collect::<Vec<_>>());
        let bot = big.principal(&(split..4).collect::<Vec<_>>());
        let (pt, pb, pbig) = (dual_char_poly(&ring, &top), dual_char_poly(&ring, &bot), dual_char_poly(&ring, &big));
        for n in 0..=4 {
            let mut acc = ring.zero();
            for i in 0..=n {
                if let (Some(x), Some(y)) = (pt.get(i), pb.get(n - i)) {
                    acc = ring.add(&acc, &ring.mul(x, y));
                }
            }
            prop_assert_eq!(&acc, &pbig[n]);
        }
        prop_assert_eq!(&pbig, &ring::det_one_minus_t(&*ring, &big));
    }

    #[test]
    fn carlitz_local_factors(p in prop_oneof![Just(2u32), Just(3)], deg in 1usize..=3, pick in 0usize..100, k in 1usize..=3) {
        let f = GaloisField::prime(p).unwrap();
        let places: Vec<Poly> = irreducibles_up_to(&f, deg).into_iter().filter(|v| v.degree() == Some(deg)).collect();
        let v = &places[pick % places.len()];
        let lf = local_factor(&Motive::carlitz(&f).tensor_power(k).unwrap(), v).unwrap();
        let mut want = vec![Poly::zero(&f); deg + 1];
        want[0] = Poly::one(&f);
        want[deg] = v.pow(k as u64).neg();
        prop_assert_eq!(lf.integral_coeffs().unwrap(), want);
    }

    #[test]
    fn local_factors_are_basis_independent(
        m in motive_strategy(3),
        ops in prop::collection::vec((0usize..2, prop::collection::vec(0u32..3, 1..3), prop::collection::vec(0u32..3, 1..3)), 1..4),
        pick in 0usize..100,
    ) {
        let f = m.field().clone();
        let r = m.rank();
        prop_assume!(r == 2);
        // Unimodular W as a product of transvections with entries in F_q[t, θ].
        let br = BivarRing(f.clone());
        let mut w = ring::identity(&br, r);
        for (i, a, b) in &ops {
            let c = bivar(&f, &[a.clone(), b.clone()]);
            let (i, j) = (*i, 1 - *i);
            for k in 0..r {
                let x = w[(k, j)].add(&c.mul(&w[(k, i)]));
                w[(k, j)] = x;
            }
        }
        let lat = change_basis(&m, &w, &Poly::one(&f)).unwrap();
        prop_assert!(lat.verify());
        let m2 = lat.model().clone();
        let good: Vec<Poly> = irreducibles_up_to(&f, 2)
            .into_iter()
            .filter(|v| m.det_shape().unwrap().delta.rem(v).degree().is_some())
            .collect();
        let v = &good[pick % good.len()];
        prop_assert_eq!(local_factor(&m2, v).unwrap(), local_factor(&m, v).unwrap());
        prop_assert_eq!(maximal_model(&m2).unwrap().discriminant().unwrap(), maximal_model(&m).unwrap().discriminant().unwrap());
    }

    #[test]
    fn trace_formula_matches_the_euler_product(m in motive_strategy(2), which in 0usize..4) {
        let f = m.field().clone();
        let place = Place::parse(["inf", "t", "t + 1", "t^2 + t + 1"][which], &f).unwrap();
        let prec = 10;
        let l = lseries(&m, &place, prec).unwrap();
        let e = euler_product_oracle(&m, &place, 5, prec).unwrap();
        for (n, en) in e.iter().enumerate() {
            prop_assert_eq!(&l.coefficient(n), en, "a_{}", n);
        }
    }

    #[test]
    fn precision_is_consistent(m in motive_strategy(3), which in 0usize..3, prec in 2usize..16) {
        let f = m.field().clone();
        let place = Place::parse(["inf", "t + 2", "t^2 + 1"][which], &f).unwrap();
        let lo = lseries(&m, &place, prec).unwrap();
        let hi = lseries(&m, &place, 2 * prec).unwrap();
        prop_assert!(lo.degree() <= hi.degree());
        for n in 0..=hi.degree() {
            prop_assert_eq!(lo.coefficient(n), hi.coefficient(n).truncate(prec as i64));
        }
    }

    #[test]
    fn twists_are_congruent(p in prop_oneof![Just(2u32), Just(3)], deg in 1usize..=2, c in 1u32..=2, h in -3i64..3, mult in 1i64..3) {
        let f = GaloisField::prime(p).unwrap();
        let v = irreducibles_up_to(&f, deg).into_iter().next_back().unwrap();
        let place = Place::finite(&v).unwrap();
        let q = p as i64;
        let h2 = h + mult * (q.pow(deg as u32) - 1) * q.pow(c);
        prop_assert!(twist_congruence_check(&Motive::carlitz(&f), &place, h, h2, c).unwrap());
    }
}
