//! End-to-end acceptance run. Prints one `PASS`/`FAIL` line per criterion and fails if any
//! gating criterion fails. The timing criterion is reported only.
//!
//! Run with `cargo test -p tmotive --test acceptance -- --nocapture` to see the report.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmotive::completion::{LaurentValuation, LocalRing, Place};
use tmotive::ff::bivar::BivarPoly;
use tmotive::ff::factor::{irreducibles_of_degree, irreducibles_up_to};
use tmotive::ff::parse::parse_bivar;
use tmotive::ff::ring::{self, BivarRing, Matrix};
use tmotive::ff::{Field, GaloisField, Poly};
use tmotive::lseries::bench::{bench_lseries, worst_doubling_ratio};
use tmotive::lseries::{conjecture_scan, euler_product_oracle, lseries, monic_polys, twist_congruence_check};
use tmotive::model::{change_basis, local_factor, maximal_model};
use tmotive::motive::Motive;

/// Valuations of `a_0..a_6` of `L_t((C^∨)^{⊗k})` over `F_3`, for `k = 1, 2, 3`.
const VALUATIONS: [[i64; 7]; 3] = [
    [0, 1, 6, 23, 76, 237, 722],
    [0, 0, 4, 20, 72, 232, 716],
    [0, 3, 18, 69, 228, 711, 2166],
];

/// `(place, ord P_v, ord L_v)` for the rank 2 example over `F_2`.
const ORDERS: [(&str, usize, usize); 8] = [
    ("t", 1, 3),
    ("t + 1", 0, 2),
    ("t^2 + t + 1", 0, 2),
    ("t^3 + t + 1", 1, 3),
    ("t^3 + t^2 + 1", 0, 2),
    ("t^4 + t + 1", 0, 2),
    ("t^4 + t^3 + 1", 0, 2),
    ("t^4 + t^3 + t^2 + t + 1", 0, 2),
];

fn example(f: &Field) -> Motive {
    let rows = [["th + 1", "t*th + th"], ["t + 1", "t^2 + th"]];
    let phi = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| parse_bivar(s, f).unwrap()).collect()).collect());
    Motive::from_phi(f, phi, 0).unwrap()
}

fn scalar(f: &Field, s: &str, h: i64) -> Motive {
    Motive::from_phi(f, Matrix::from_rows(vec![vec![parse_bivar(s, f).unwrap()]]), h).unwrap()
}

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn record(&mut self, id: usize, name: &str, gating: bool, outcome: Result<String, String>) {
        let soft = if gating { "" } else { " (reported only)" };
        match outcome {
            Ok(detail) => println!("PASS [{id}] {name}{soft}: {detail}"),
            Err(detail) => {
                println!("FAIL [{id}] {name}{soft}: {detail}");
                if gating {
                    self.failures.push(format!("[{id}] {name}"));
                }
            }
        }
    }
}

fn finite_valuations(vals: &[LaurentValuation]) -> Vec<i64> {
    vals.iter()
        .map(|v| match v {
            LaurentValuation::Finite(k) => *k,
            _ => i64::MAX,
        })
        .collect()
}

fn valuation_table() -> Result<Vec<Vec<i64>>, String> {
    let f = GaloisField::prime(3).unwrap();
    let t = Place::parse("t", &f).unwrap();
    (1..=3)
        .map(|k| {
            let m = Motive::carlitz(&f).dual().unwrap().tensor_power(k).unwrap();
            let l = lseries(&m, &t, 2300).map_err(|e| e.to_string())?;
            let mut v = finite_valuations(&l.valuations());
            v.resize(7, i64::MAX);
            v.truncate(7);
            Ok(v)
        })
        .collect()
}

fn criterion_valuations(table: &[Vec<i64>]) -> Result<String, String> {
    for (k, (got, want)) in table.iter().zip(VALUATIONS.iter()).enumerate() {
        if got != want {
            return Err(format!("k={}: got {got:?}, expected {want:?}", k + 1));
        }
    }
    Ok("valuations of a_0..a_6 for k = 1, 2, 3 at prec 2300".into())
}

fn criterion_growth(table: &[Vec<i64>]) -> Result<String, String> {
    for (k, v) in table.iter().enumerate() {
        for n in 2..=5 {
            if v[n + 1] < 2 * v[n] {
                return Err(format!("k={}: v(a_{}) = {} < 2 v(a_{n}) = {}", k + 1, n + 1, v[n + 1], 2 * v[n]));
            }
        }
    }
    Ok("v(a_(n+1)) >= 2 v(a_n) for 2 <= n <= 5".into())
}

fn criterion_orders() -> Result<String, String> {
    let f = GaloisField::prime(2).unwrap();
    let rows = conjecture_scan(&example(&f), 4, 64).map_err(|e| e.to_string())?;
    if rows.len() != ORDERS.len() {
        return Err(format!("{} places of degree <= 4, expected {}", rows.len(), ORDERS.len()));
    }
    for (row, (place, p, l)) in rows.iter().zip(ORDERS) {
        if row.place != place || row.p_order.order != p || row.l_order.order != l || row.l_order.at_least {
            return Err(format!("{}: ({}, {}), expected {place}: ({p}, {l})", row.place, row.p_order, row.l_order));
        }
        if row.difference() != 2 {
            return Err(format!("{}: difference {}", row.place, row.difference()));
        }
    }
    Ok("8 places, difference constantly 2".into())
}

fn criterion_oracle() -> Result<String, String> {
    let f3 = GaloisField::prime(3).unwrap();
    let f2 = GaloisField::prime(2).unwrap();
    let c3 = Motive::carlitz(&f3);
    let motives = [
        ("C", c3.clone()),
        ("dual", c3.dual().unwrap()),
        ("dual^2", c3.dual().unwrap().tensor_power(2).unwrap()),
        ("example", example(&f2)),
        ("scaled", scalar(&f3, "th^2", -1)),
    ];
    let mut checked = 0;
    for (name, m) in &motives {
        let deg2 = if m.field().order() == 2 { "t^2 + t + 1" } else { "t^2 + 1" };
        for v in ["inf", "t", "t + 1", deg2] {
            let place = Place::parse(v, m.field()).unwrap();
            let l = lseries(m, &place, 32).map_err(|e| format!("{name} at {v}: {e}"))?;
            let e = euler_product_oracle(m, &place, 6, 32).map_err(|e| format!("{name} at {v}: {e}"))?;
            if let Some(n) = (0..7).find(|&n| l.coefficient(n) != e[n]) {
                return Err(format!("{name} at {v}: a_{n} differs"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (motive, place) pairs agree mod (T^7, v^32)"))
}

fn criterion_effectivity() -> Result<String, String> {
    let mut checked = 0;
    for p in [2, 3] {
        let f = GaloisField::prime(p).unwrap();
        let c = Motive::carlitz(&f);
        for v in ["inf", "t"] {
            let place = Place::parse(v, &f).unwrap();
            let ring = LocalRing::new(&f, &place, 1).unwrap();
            let lo = lseries(&c, &place, 64).map_err(|e| e.to_string())?;
            let hi = lseries(&c, &place, 128).map_err(|e| e.to_string())?;
            for n in 0..=hi.degree().max(5) {
                if lo.coefficient(n) != hi.coefficient(n).truncate(64) {
                    return Err(format!("q={p}, v={v}: a_{n} changes between prec 64 and 128"));
                }
                // Beyond the degree, the higher precision must agree with the exact value 0.
                if n > lo.degree() && !hi.coefficient(n).is_zero() {
                    return Err(format!("q={p}, v={v}: a_{n} is not a polynomial"));
                }
            }
            for n in 0..=5 {
                let sum = monic_polys(&f, n)
                    .filter(|a| place.poly().is_none_or(|p| !a.rem(p).is_zero()))
                    .fold(Poly::zero(&f), |acc, a| acc.add(&a));
                if hi.coefficient(n) != ring.embed_exact(&sum).truncate(128) {
                    return Err(format!("q={p}, v={v}: a_{n} differs from the monic sum"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} coefficients equal their monic sums, stable from prec 64 to 128"))
}

fn criterion_twists() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for p in [2u32, 3] {
        let f = GaloisField::prime(p).unwrap();
        let c = Motive::carlitz(&f);
        let q = p as i64;
        for d in 1..=2 {
            let v = irreducibles_of_degree(&f, d).pop().unwrap();
            let place = Place::finite(&v).unwrap();
            for cexp in 1..=2u32 {
                let modulus = (q.pow(d as u32) - 1) * q.pow(cexp);
                for _ in 0..10 {
                    let h = rng.gen_range(-6..=6);
                    let h2 = h + modulus * rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    let ok = twist_congruence_check(&c, &place, h, h2, cexp).map_err(|e| e.to_string())?;
                    if !ok {
                        return Err(format!("q={p}, v={v}, c={cexp}: h={h}, h'={h2}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs congruent mod v^(q^c)"))
}

fn random_bivar(f: &Field, rng: &mut ChaCha8Rng, dt: usize, dth: usize) -> BivarPoly {
    let q = f.order();
    let rows = (0..=dth).map(|_| Poly::from_coeffs(f, (0..=dt).map(|_| rng.gen_range(0..q)).collect())).collect();
    BivarPoly::from_rows(f, rows)
}

fn random_unimodular(f: &Field, r: usize, rng: &mut ChaCha8Rng) -> Matrix<BivarPoly> {
    let br = BivarRing(f.clone());
    let mut w = ring::identity(&br, r);
    if r == 1 {
        return w;
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..r);
        let j = (i + rng.gen_range(1..r)) % r;
        let c = random_bivar(f, rng, 1, 1);
        for k in 0..r {
            let x = w[(k, j)].add(&c.mul(&w[(k, i)]));
            w[(k, j)] = x;
        }
    }
    w
}

fn criterion_models() -> Result<String, String> {
    let f3 = GaloisField::prime(3).unwrap();
    let f2 = GaloisField::prime(2).unwrap();
    let mm = maximal_model(&scalar(&f3, "th^2", -1)).map_err(|e| e.to_string())?;
    if !mm.discriminant().map_err(|e| e.to_string())?.is_one() {
        return Err("scaled Carlitz: discriminant is not 1".into());
    }
    let mut inputs = vec![scalar(&f3, "th^2", -1), scalar(&f3, "th^4*(th + 1)", 0), scalar(&f2, "th^3*(t - th)", 0)];
    inputs.extend([example(&f2), Motive::carlitz(&f2), Motive::carlitz(&f3).dual().unwrap().tensor_power(2).unwrap()]);
    // Sublattices of the example at a few places.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let base = example(&f2);
    for p in irreducibles_up_to(&f2, 2) {
        let u = random_unimodular(&f2, 2, &mut rng);
        let a: Vec<u64> = (0..2).map(|_| rng.gen_range(1..=2)).collect();
        let w = Matrix::from_fn(2, 2, |i, j| u[(i, j)].mul_theta_poly(&p.pow(a[j])));
        inputs.push(change_basis(&base, &w, &Poly::one(&f2)).map_err(|e| e.to_string())?.model().clone());
    }
    let mut steps = 0;
    for m in &inputs {
        let mm = maximal_model(m).map_err(|e| e.to_string())?;
        if !mm.lattice.verify() {
            return Err("basis change does not verify".into());
        }
        for rep in &mm.places {
            if rep.saturation_steps > rep.saturation_bound || rep.trim_steps > rep.trim_bound {
                return Err(format!("iteration bounds exceeded: {rep:?}"));
            }
            steps += rep.saturation_steps + rep.trim_steps;
        }
        if !maximal_model(mm.lattice.model()).map_err(|e| e.to_string())?.lattice.is_identity() {
            return Err("maximal model is not a fixed point".into());
        }
    }
    Ok(format!("{} inputs, {steps} saturation/trim steps within bounds, idempotent", inputs.len()))
}

fn criterion_local_factors() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let f2 = GaloisField::prime(2).unwrap();
    let f3 = GaloisField::prime(3).unwrap();
    let pool = [
        example(&f2),
        Motive::carlitz(&f3).dual().unwrap(),
        Motive::carlitz(&f2).tensor(&example(&f2)).unwrap(),
        scalar(&f3, "th^2*(th + 1)*(t - th)", 0),
    ];
    for trial in 0..50 {
        let m = &pool[trial % pool.len()];
        let f = m.field();
        let delta = m.det_shape().map_err(|e| e.to_string())?.delta;
        let places: Vec<Poly> = irreducibles_up_to(f, 3).into_iter().filter(|p| !delta.rem(p).is_zero()).collect();
        let p = &places[rng.gen_range(0..places.len())];
        let d = p.degree().unwrap();
        let lf = local_factor(m, p).map_err(|e| e.to_string())?;
        // Non-effective motives have powers of p in the denominators.
        let shape_ok = lf.coeff(0) == (Poly::one(f), 0) && (1..=lf.t_degree()).all(|n| n % d == 0 || lf.coeff(n).0.is_zero());
        if !shape_ok {
            return Err(format!("trial {trial}: P at {p} is not in 1 + T^d F_q(t)[T^d]"));
        }
        let w = random_unimodular(f, m.rank(), &mut rng);
        let other = change_basis(m, &w, &Poly::one(f)).map_err(|e| e.to_string())?.model().clone();
        if local_factor(&other, p).map_err(|e| e.to_string())? != lf {
            return Err(format!("trial {trial}: P at {p} changes under a unimodular basis change"));
        }
    }
    for f in [&f2, &f3] {
        for p in irreducibles_up_to(f, 3) {
            let lf = local_factor(&Motive::carlitz(f), &p).map_err(|e| e.to_string())?;
            let mut want = vec![Poly::zero(f); p.degree().unwrap() + 1];
            want[0] = Poly::one(f);
            *want.last_mut().unwrap() = p.neg();
            if lf.integral_coeffs() != Some(want) {
                return Err(format!("Carlitz at {p}: not 1 - p T^d"));
            }
        }
    }
    Ok("50 random pairs plus Carlitz at every place of degree <= 3".into())
}

fn criterion_scaling() -> Result<String, String> {
    let f = GaloisField::prime(2).unwrap();
    let place = Place::parse("t", &f).unwrap();
    let rows = bench_lseries(&example(&f), &place, &[64, 128, 256, 512], 7).map_err(|e| e.to_string())?;
    let ratio = worst_doubling_ratio(&rows).unwrap_or(0.0);
    let times: Vec<String> = rows.iter().map(|r| format!("{}:{:.4}s", r.prec, r.seconds)).collect();
    let detail = format!("worst doubling ratio {ratio:.2} ({})", times.join(", "));
    if ratio <= 3.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

#[test]
fn acceptance() {
    let mut report = Report { failures: Vec::new() };
    let start = Instant::now();
    let table = valuation_table();
    let table_ref = table.as_ref().map_err(Clone::clone);
    report.record(1, "t-adic valuations of dual Carlitz powers", true, table_ref.clone().and_then(|t| criterion_valuations(t)));
    report.record(2, "orders of vanishing for the rank 2 example", true, criterion_orders());
    report.record(3, "trace formula against the Euler product", true, criterion_oracle());
    report.record(4, "Carlitz coefficients are monic sums", true, criterion_effectivity());
    report.record(5, "valuation growth", true, table_ref.and_then(|t| criterion_growth(t)));
    report.record(6, "twist congruences", true, criterion_twists());
    report.record(7, "maximal models", true, criterion_models());
    report.record(8, "local factor structure and invariance", true, criterion_local_factors());
    report.record(9, "time ratio when doubling the precision", false, criterion_scaling());
    println!("acceptance run took {:.1}s", start.elapsed().as_secs_f64());
    assert!(report.failures.is_empty(), "failed: {:?}", report.failures);
}
