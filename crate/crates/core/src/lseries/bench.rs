//! Timing sweeps over precision.

use std::time::Instant;

use serde::Serialize;

use crate::completion::Place;
use crate::error::Result;
use crate::lseries::lseries;
use crate::motive::Motive;

/// Median wall-clock time of one L-series computation.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub prec: usize,
    pub rank: usize,
    pub place_degree: usize,
    pub seconds: f64,
}

/// Times [`lseries`] at each precision, `repeats` times, and keeps the median.
pub fn bench_lseries(m: &Motive, place: &Place, precs: &[usize], repeats: usize) -> Result<Vec<BenchRow>> {
    let repeats = repeats.max(1);
    precs
        .iter()
        .map(|&prec| {
            let mut times = Vec::with_capacity(repeats);
            for _ in 0..repeats {
                let start = Instant::now();
                lseries(m, place, prec)?;
                times.push(start.elapsed().as_secs_f64());
            }
            times.sort_by(f64::total_cmp);
            Ok(BenchRow { prec, rank: m.rank(), place_degree: place.degree(), seconds: times[repeats / 2] })
        })
        .collect()
}

/// Largest ratio between consecutive median times.
pub fn worst_doubling_ratio(rows: &[BenchRow]) -> Option<f64> {
    rows.windows(2).map(|w| w[1].seconds / w[0].seconds.max(1e-9)).reduce(f64::max)
}

/// CSV with columns `prec,rank,place_degree,seconds`.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("prec,rank,place_degree,seconds\n");
    for r in rows {
        out += &format!("{},{},{},{:.6}\n", r.prec, r.rank, r.place_degree, r.seconds);
    }
    out
}
