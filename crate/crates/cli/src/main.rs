use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tmotive::completion::Place;
use tmotive::error::{Error, Result};
use tmotive::ff::bivar::BivarPoly;
use tmotive::ff::factor::irreducibles_of_degree;
use tmotive::ff::Poly;
use tmotive::lseries::bench::{bench_lseries, to_csv, BenchRow};
use tmotive::lseries::{
    conjecture_scan, euler_product_oracle, lseries_with, order_of_vanishing_at_one, LSeriesOptions, LSeriesReport,
    ScanRow, VanishingOrder,
};
use tmotive::model::{local_factor, maximal_model, LocalFactor, MaximalModel};
use tmotive::motive::{parse_motive_file, Motive};

#[derive(Parser)]
#[command(name = "tmotive", version, about = "L-series of Anderson t-motives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of L_v(M, T) modulo v^prec.
    Lseries(LseriesArgs),
    /// Orders of vanishing at T = 1 of P_v and L_v over all places up to a degree.
    Scan(ScanArgs),
    /// Maximal model and its discriminant.
    Maxmodel(Common),
    /// Local factor P_p at a finite place.
    Localfactor(PlaceArgs),
    /// Compares the trace formula with a truncated Euler product.
    OracleCheck(OracleArgs),
    /// Timings over a range of precisions, as CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Common {
    /// Motive description file.
    #[arg(long)]
    motive: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct PlaceArgs {
    #[command(flatten)]
    common: Common,
    /// `inf` or a monic irreducible polynomial in t.
    #[arg(long)]
    place: String,
}

#[derive(Args)]
struct LseriesArgs {
    #[command(flatten)]
    at: PlaceArgs,
    #[arg(long, default_value_t = 32)]
    prec: usize,
    /// Print only the valuations of the coefficients.
    #[arg(long)]
    valuations: bool,
    /// Replace the nucleus bound (for experiments).
    #[arg(long)]
    smax_override: Option<usize>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    #[arg(long, default_value_t = 64)]
    prec: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    at: PlaceArgs,
    #[arg(long, default_value_t = 32)]
    prec: usize,
    /// Places of degree up to this bound enter the Euler product; coefficients up to T^D are compared.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    /// Fixed place; by default one random place of each degree up to --max-degree.
    #[arg(long)]
    place: Option<String>,
    #[arg(long, default_value_t = 1)]
    max_degree: usize,
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    precs: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn load(path: &PathBuf) -> Result<Motive> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::File(format!("{}: {e}", path.display())))?;
    parse_motive_file(&text)
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("reports serialise")
}

/// `c` as a factor of a product, parenthesised when it has several terms.
fn factor_str(c: &Poly) -> String {
    let s = c.to_string_var("t");
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

/// `P_p` as `1 - t*T`, writing a term with a minus sign when that makes its coefficient monic.
fn format_local_factor(lf: &LocalFactor) -> String {
    let p = factor_str(lf.place());
    let mut out = String::new();
    for (k, (c, e)) in lf.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let n = k * lf.degree();
        let (sign, c) = if n > 0 && c.neg().is_monic() { ("-", c.neg()) } else { ("+", c.clone()) };
        let mut factors = Vec::new();
        if !c.is_one() || (n == 0 && *e == 0) {
            factors.push(factor_str(&c));
        }
        match e {
            0 => {}
            1 => factors.push(p.clone()),
            _ => factors.push(format!("{p}^{e}")),
        }
        match n {
            0 => {}
            1 => factors.push("T".into()),
            _ => factors.push(format!("T^{n}")),
        }
        let term = factors.join("*");
        if out.is_empty() {
            out = if sign == "-" { format!("-{term}") } else { term };
        } else {
            out += &format!(" {sign} {term}");
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// An entry `num / den` of the basis change, with the denominator as a negative power.
fn format_w_entry(num: &BivarPoly, den: &Poly) -> String {
    if num.is_zero() {
        return "0".into();
    }
    let num_s = num.to_expr();
    if den.is_one() {
        return num_s;
    }
    let den_s = BivarPoly::from_theta_poly(den).to_expr();
    let inv = if den.low_degree() == den.degree() && den.is_monic() {
        // A monomial th^k.
        format!("th^-{}", den.degree().unwrap())
    } else {
        format!("({den_s})^-1")
    };
    if num.is_one() {
        inv
    } else if num_s.contains(' ') {
        format!("({num_s})*{inv}")
    } else {
        format!("{num_s}*{inv}")
    }
}

#[derive(Serialize)]
struct LseriesOutput {
    #[serde(flatten)]
    report: LSeriesReport,
    nucleus_overridden: bool,
    order_at_one: VanishingOrder,
}

fn cmd_lseries(a: &LseriesArgs) -> Result<String> {
    let m = load(&a.at.common.motive)?;
    let place = Place::parse(&a.at.place, m.field())?;
    let l = lseries_with(&m, &place, a.prec, &LSeriesOptions { s_max: a.smax_override })?;
    let order = order_of_vanishing_at_one(l.coefficients(), l.residue_field());
    let vals: Vec<String> = l.valuations().iter().map(|v| v.to_string()).collect();
    let out = LseriesOutput { report: l.report(), nucleus_overridden: l.params().s_max_overridden, order_at_one: order };
    Ok(match (a.at.common.format, a.valuations) {
        (Format::Json, _) => json(&out),
        (Format::Table, true) => vals.join(","),
        (Format::Table, false) => {
            let r = &out.report;
            let mut s = format!("L-series at {} modulo v^{} (c = {}, nucleus dimension {})\n", r.place, r.prec, r.c, r.nucleus_dim);
            if out.nucleus_overridden {
                s += "warning: nucleus bound overridden, the result may differ from the L-series\n";
            }
            s += "n\tval\tdigits from u^val\n";
            for c in &r.coefficients {
                s += &format!("{}\t{}\t{}\n", c.n, c.valuation, c.digits.join(" "));
            }
            let kind = if order.certified { "exact" } else { "apparent, from digits known modulo v^prec" };
            s += &format!("order at T=1: {order} ({kind})");
            s
        }
    })
}

fn cmd_scan(a: &ScanArgs) -> Result<String> {
    let m = load(&a.common.motive)?;
    let rows: Vec<ScanRow> = conjecture_scan(&m, a.max_degree, a.prec)?;
    Ok(match a.common.format {
        Format::Json => json(&rows),
        Format::Table => {
            let width = rows.iter().map(|r| r.place.len()).max().unwrap_or(1).max(1);
            let mut s = format!("{:<width$}  ord P  ord L  diff\n", "v");
            for r in &rows {
                s += &format!("{:<width$}  {:>5}  {:>5}  {:>4}\n", r.place, r.p_order.to_string(), r.l_order.to_string(), r.difference());
            }
            s += &format!("orders of L are apparent: coefficients known modulo v^{}", a.prec);
            s
        }
    })
}

#[derive(Serialize)]
struct PlaceJson {
    place: String,
    multiplicity: usize,
    final_multiplicity: usize,
    saturation_steps: usize,
    trim_steps: usize,
}

#[derive(Serialize)]
struct MaxModelJson {
    basis_change: Vec<Vec<String>>,
    matrix: Vec<Vec<String>>,
    h: i64,
    initial_discriminant: String,
    discriminant: String,
    places: Vec<PlaceJson>,
}

fn maxmodel_json(mm: &MaximalModel) -> Result<MaxModelJson> {
    let lat = &mm.lattice;
    let th = |p: &Poly| BivarPoly::from_theta_poly(p).to_expr();
    Ok(MaxModelJson {
        basis_change: lat.w_numerator().to_rows().iter().map(|r| r.iter().map(|e| format_w_entry(e, lat.w_denominator())).collect()).collect(),
        matrix: lat.model().phi().to_rows().iter().map(|r| r.iter().map(|e| e.to_expr()).collect()).collect(),
        h: lat.model().h(),
        initial_discriminant: th(&mm.initial_discriminant),
        discriminant: th(&mm.discriminant()?),
        places: mm
            .places
            .iter()
            .map(|p| PlaceJson {
                place: th(&p.place),
                multiplicity: p.multiplicity,
                final_multiplicity: p.final_multiplicity,
                saturation_steps: p.saturation_steps,
                trim_steps: p.trim_steps,
            })
            .collect(),
    })
}

fn cmd_maxmodel(a: &Common) -> Result<String> {
    let m = load(&a.motive)?;
    let out = maxmodel_json(&maximal_model(&m)?)?;
    Ok(match a.format {
        Format::Json => json(&out),
        Format::Table => {
            let rows = |x: &[Vec<String>]| x.iter().map(|r| format!("  [{}]", r.join(", "))).collect::<Vec<_>>().join("\n");
            let mut s = format!("basis change W:\n{}\n", rows(&out.basis_change));
            s += &format!("matrix of tau times (t - th)^{}:\n{}\n", out.h, rows(&out.matrix));
            s += &format!("discriminant: {} -> {}", out.initial_discriminant, out.discriminant);
            for p in &out.places {
                s += &format!(
                    "\n  {}: multiplicity {} -> {}, {} saturation, {} trim steps",
                    p.place, p.multiplicity, p.final_multiplicity, p.saturation_steps, p.trim_steps
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct LocalFactorJson {
    place: String,
    factor: String,
}

fn cmd_localfactor(a: &PlaceArgs) -> Result<String> {
    let m = load(&a.common.motive)?;
    let place = Place::parse(&a.place, m.field())?;
    let p = place.poly().ok_or_else(|| Error::InvalidPlace("local factors are defined at finite places".into()))?;
    let lf = local_factor(&m, p)?;
    let out = LocalFactorJson { place: place.to_string(), factor: format_local_factor(&lf) };
    Ok(match a.common.format {
        Format::Json => json(&out),
        Format::Table => out.factor,
    })
}

#[derive(Serialize)]
struct OracleRow {
    n: usize,
    agree: bool,
}

#[derive(Serialize)]
struct OracleJson {
    place: String,
    prec: usize,
    max_degree: usize,
    pass: bool,
    coefficients: Vec<OracleRow>,
}

fn cmd_oracle_check(a: &OracleArgs) -> Result<(String, bool)> {
    let m = load(&a.at.common.motive)?;
    let place = Place::parse(&a.at.place, m.field())?;
    let l = lseries_with(&m, &place, a.prec, &LSeriesOptions::default())?;
    let e = euler_product_oracle(&m, &place, a.max_degree, a.prec)?;
    let coefficients: Vec<OracleRow> = e.iter().enumerate().map(|(n, en)| OracleRow { n, agree: &l.coefficient(n) == en }).collect();
    let pass = coefficients.iter().all(|r| r.agree);
    let out = OracleJson { place: place.to_string(), prec: a.prec, max_degree: a.max_degree, pass, coefficients };
    let text = match a.at.common.format {
        Format::Json => json(&out),
        Format::Table => {
            let mut s = String::new();
            for r in &out.coefficients {
                s += &format!("a_{}\t{}\n", r.n, if r.agree { "PASS" } else { "FAIL" });
            }
            s += if pass { "PASS" } else { "FAIL" };
            s
        }
    };
    Ok((text, pass))
}

fn cmd_bench(a: &BenchArgs) -> Result<String> {
    use rand::{Rng, SeedableRng};
    let m = load(&a.common.motive)?;
    let places = match &a.place {
        Some(s) => vec![Place::parse(s, m.field())?],
        None => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
            (1..=a.max_degree.max(1))
                .map(|d| {
                    let mut all = irreducibles_of_degree(m.field(), d);
                    Place::finite(&all.swap_remove(rng.gen_range(0..all.len())))
                })
                .collect::<Result<_>>()?
        }
    };
    let mut rows: Vec<BenchRow> = Vec::new();
    for place in &places {
        rows.extend(bench_lseries(&m, place, &a.precs, a.repeats)?);
    }
    Ok(match a.common.format {
        Format::Json => json(&rows),
        Format::Table => to_csv(&rows).trim_end().to_string(),
    })
}

fn exit_code(e: &Error) -> u8 {
    if e.is_internal() || matches!(e, Error::InsufficientPrecision(_)) {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Lseries(a) => cmd_lseries(a).map(|s| (s, true)),
        Command::Scan(a) => cmd_scan(a).map(|s| (s, true)),
        Command::Maxmodel(a) => cmd_maxmodel(a).map(|s| (s, true)),
        Command::Localfactor(a) => cmd_localfactor(a).map(|s| (s, true)),
        Command::OracleCheck(a) => cmd_oracle_check(a),
        Command::Bench(a) => cmd_bench(a).map(|s| (s, true)),
    };
    match result {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
