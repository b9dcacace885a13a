use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmotive::ff::bivar::BivarPoly;
use tmotive::ff::factor::irreducibles_of_degree;
use tmotive::ff::parse::{parse_bivar, parse_theta_poly};
use tmotive::ff::ring::{self, BivarRing, Matrix};
use tmotive::ff::{Field, GaloisField, Poly};
use tmotive::model::{
    bad_places, change_basis, local_factor, local_factor_of_matrix, maximal_model, maximal_model_local, norm_matrix,
    ThetaPlace,
};
use tmotive::motive::{parse_motive_file, Motive};

fn example(f: &Field) -> Motive {
    let rows = [["th + 1", "t*th + th"], ["t + 1", "t^2 + th"]];
    let phi = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_bivar(s, f).unwrap()).collect()).collect());
    Motive::from_phi(f, phi, 0).unwrap()
}

fn scalar(f: &Field, s: &str, h: i64) -> Motive {
    Motive::from_phi(f, Matrix::from_rows(vec![vec![parse_bivar(s, f).unwrap()]]), h).unwrap()
}

#[test]
fn scaled_carlitz_recovers_carlitz() {
    let f = GaloisField::prime(3).unwrap();
    let m = scalar(&f, "th^2", -1);
    assert_eq!(bad_places(&m).unwrap(), vec![(parse_theta_poly("th", &f).unwrap(), 2)]);
    let mm = maximal_model(&m).unwrap();
    assert!(mm.discriminant().unwrap().is_one());
    assert_eq!(mm.lattice.model().phi(), Motive::carlitz(&f).phi());
    assert_eq!(mm.lattice.model().h(), -1);
    assert_eq!(mm.lattice.w_denominator(), &parse_theta_poly("th", &f).unwrap());
    assert!(mm.lattice.w_numerator()[(0, 0)].is_one());
    assert_eq!(mm.lattice.w_strings(), vec![vec!["(1)/(th)".to_string()]]);
    let rep = &mm.places[0];
    assert_eq!((rep.saturation_steps, rep.trim_steps, rep.final_multiplicity), (0, 0, 0));
    assert!(mm.lattice.verify());
}

#[test]
fn saturation_runs_when_the_power_is_large() {
    let f = GaloisField::prime(3).unwrap();
    let m = scalar(&f, "th^4", -1);
    let mm = maximal_model(&m).unwrap();
    assert!(mm.discriminant().unwrap().is_one());
    let rep = &mm.places[0];
    assert_eq!(rep.saturation_steps, 1);
    assert!(rep.saturation_steps <= rep.saturation_bound && rep.trim_steps <= rep.trim_bound);
    assert!(mm.lattice.verify());
}

#[test]
fn maximal_inputs_are_fixed_points() {
    let f2 = GaloisField::prime(2).unwrap();
    for m in [example(&f2), Motive::carlitz(&f2), Motive::carlitz(&f2).dual().unwrap()] {
        let mm = maximal_model(&m).unwrap();
        assert!(mm.lattice.is_identity());
        assert!(mm.places.is_empty());
    }
}

fn random_bivar(f: &Field, rng: &mut ChaCha8Rng, dt: usize, dth: usize) -> BivarPoly {
    let q = f.order();
    let rows = (0..=dth).map(|_| Poly::from_coeffs(f, (0..=dt).map(|_| rng.gen_range(0..q)).collect())).collect();
    BivarPoly::from_rows(f, rows)
}

/// A random model inside the lattice of `m`: `U diag(p^(a_i))` with `U` unimodular and
/// `1 <= a_i <= q`, which keeps the τ-matrix integral.
fn perturb(m: &Motive, p: &Poly, rng: &mut ChaCha8Rng) -> (Matrix<BivarPoly>, Poly) {
    let f = m.field();
    let r = m.rank();
    let q = f.base_order() as usize;
    let ring = BivarRing(f.clone());
    let mut u = ring::identity(&ring, r);
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if i == j {
            continue;
        }
        let c = random_bivar(f, rng, 1, 1);
        for k in 0..r {
            let v = u[(k, j)].add(&c.mul(&u[(k, i)]));
            u[(k, j)] = v;
        }
    }
    let a: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=q)).collect();
    let w = Matrix::from_fn(r, r, |i, j| u[(i, j)].mul_theta_poly(&p.pow(a[j] as u64)));
    (w, Poly::one(f))
}

#[test]
fn perturbed_models_recover_the_maximal_discriminant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p_ch, rank2) in [(2u32, true), (3, false), (2, false)] {
        let f = GaloisField::prime(p_ch).unwrap();
        let base = if rank2 { example(&f) } else { Motive::carlitz(&f).dual().unwrap().tensor_power(2).unwrap() };
        let delta_max = maximal_model(&base).unwrap().discriminant().unwrap();
        for p in irreducibles_of_degree(&f, 1).into_iter().chain(irreducibles_of_degree(&f, 2)).take(3) {
            let (w, d) = perturb(&base, &p, &mut rng);
            let lat = change_basis(&base, &w, &d).unwrap();
            assert!(lat.verify());
            let sub = lat.model().clone();
            let sub_delta = sub.det_shape().unwrap().delta;
            assert!(sub_delta.rem(&delta_max).is_zero());
            let mm = maximal_model(&sub).unwrap();
            assert_eq!(mm.discriminant().unwrap(), delta_max);
            assert!(mm.lattice.verify());
            for rep in &mm.places {
                assert!(rep.saturation_steps <= rep.saturation_bound, "{rep:?}");
                assert!(rep.trim_steps <= rep.trim_bound, "{rep:?}");
                assert!(rep.ledger_checks > 0);
            }
            // Idempotence.
            let again = maximal_model(mm.lattice.model()).unwrap();
            assert!(again.lattice.is_identity());
            // Local factors agree with the original basis at the perturbed place.
            assert_eq!(local_factor(&sub, &p).unwrap(), local_factor(&base, &p).unwrap());
        }
    }
}

#[test]
fn local_models() {
    let f = GaloisField::prime(3).unwrap();
    let th = parse_theta_poly("th", &f).unwrap();
    let lat = maximal_model_local(&scalar(&f, "th^2", -1), &th).unwrap();
    assert_eq!(lat.w_denominator_exponent(), 1);
    assert!(lat.w_numerator()[(0, 0)].is_one());
    assert!(lat.phi()[(0, 0)].is_one());
    let f2 = GaloisField::prime(2).unwrap();
    let lat = maximal_model_local(&example(&f2), &parse_theta_poly("th", &f2).unwrap()).unwrap();
    assert!(lat.is_identity());
    let lat = maximal_model_local(&scalar(&f, "th^4*(th+1)", 0), &th).unwrap();
    assert_eq!(lat.saturation_steps(), 1);
    assert!(lat.precision() >= 1);
}

#[test]
fn local_factor_examples() {
    let f2 = GaloisField::prime(2).unwrap();
    let c = Motive::carlitz(&f2);
    let x = parse_theta_poly("th", &f2).unwrap();
    let lf = local_factor(&c, &x).unwrap();
    assert_eq!(lf.integral_coeffs().unwrap(), vec![Poly::one(&f2), Poly::from_ints(&f2, &[0, 1])]);
    let f3 = GaloisField::prime(3).unwrap();
    let p = parse_theta_poly("th^2 + 1", &f3).unwrap();
    let lf = local_factor(&Motive::carlitz(&f3), &p).unwrap();
    let want = vec![Poly::one(&f3), Poly::zero(&f3), Poly::from_ints(&f3, &[-1, 0, -1])];
    assert_eq!(lf.integral_coeffs().unwrap(), want);
    // Dual tensor powers: 1 - p(t)^(-k) T^d.
    for k in 1..=3 {
        let m = Motive::carlitz(&f3).dual().unwrap().tensor_power(k).unwrap();
        let lf = local_factor(&m, &p).unwrap();
        let (c1, e1) = lf.coeffs()[1].clone();
        assert_eq!((c1, e1), (Poly::constant(&f3, 2), -(k as i64)));
    }
}

/// The rank `r d` determinant over `F_q[t]` of `x ↦ Φ̄ τ(x)` on `F_p[t]^r`, computed on the
/// basis `e_k θ̄^l`, agrees with `det(1 - T^d N)`.
#[test]
fn norm_orientation_matches_restriction_of_scalars() {
    let f = GaloisField::prime(2).unwrap();
    let m = example(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in irreducibles_of_degree(&f, 2).into_iter().chain(irreducibles_of_degree(&f, 3)) {
        // Random rank-2 matrices exercise non-commuting twists.
        let phi = Matrix::from_fn(2, 2, |_, _| random_bivar(&f, &mut rng, 2, 3));
        for phi in [m.phi().clone(), phi] {
            let place = ThetaPlace::new(&p, 1).unwrap();
            let d = place.degree();
            let res = place.residue_field().clone();
            let bar = phi.map(|e| place.reduce(e));
            // Matrix of x ↦ Φ̄ τ(x) in the F_q[t]-basis e_k θ̄^l (index k d + l).
            let n = 2 * d;
            let big = Matrix::from_fn(n, n, |row, col| {
                let (k_out, l_out) = (row / d, row % d);
                let (k_in, l_in) = (col / d, col % d);
                // τ(θ̄^l e_k) = θ̄^(q l) e_k, then apply Φ̄ column k.
                let x = res.pow(res.generator(), (2 * l_in) as u64);
                let entry = bar[(k_out, k_in)].scale(x);
                let coeffs: Vec<u32> = entry.coeffs().iter().map(|&c| res.base_coords(c)[l_out]).collect();
                Poly::from_coeffs(&f, coeffs)
            });
            let lhs = ring::det_one_minus_t(&tmotive::ff::PolyRing(f.clone()), &big);
            let lf = local_factor_of_matrix(&phi, 0, &p).unwrap();
            let rhs: Vec<Poly> = (0..=n).map(|k| lf.coeff(k).0).collect();
            assert_eq!(lhs, rhs, "place {p}");
            let nm = norm_matrix(&phi, &place);
            assert_eq!(nm.nrows(), 2);
        }
    }
}

#[test]
fn motive_files_feed_the_model() {
    let text = "[field]\np = 3\n[motive]\nname = \"scaled\"\nrank = 1\nmatrix = [\"th^2*(t - th)\"]\n";
    let m = parse_motive_file(text).unwrap();
    let mm = maximal_model(&m).unwrap();
    assert!(mm.discriminant().unwrap().is_one());
}

#[test]
fn trimming_is_needed_for_unbalanced_sublattices() {
    let f = GaloisField::prime(2).unwrap();
    let rows = [["t", "1"], ["th", "1"]];
    let phi = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_bivar(s, &f).unwrap()).collect()).collect());
    let m = Motive::from_phi(&f, phi, 0).unwrap();
    assert!(m.det_shape().unwrap().delta.is_one());
    let th = parse_bivar("th", &f).unwrap();
    let w = Matrix::from_rows(vec![vec![BivarPoly::one(&f), BivarPoly::zero(&f)], vec![BivarPoly::zero(&f), th]]);
    let sub = change_basis(&m, &w, &Poly::one(&f)).unwrap().model().clone();
    assert_eq!(sub.det_shape().unwrap().delta, parse_theta_poly("th", &f).unwrap());
    let mm = maximal_model(&sub).unwrap();
    assert!(mm.discriminant().unwrap().is_one());
    let rep = &mm.places[0];
    assert_eq!(rep.saturation_steps, 0);
    assert_eq!(rep.trim_steps, 1);
    assert!(mm.lattice.verify());
    let lat = maximal_model_local(&sub, &parse_theta_poly("th", &f).unwrap()).unwrap();
    assert_eq!(lat.trim_steps(), 1);
}
