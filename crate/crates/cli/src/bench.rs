//! Matrix sizes, timings and coefficient growth of the three routes.

use std::time::Instant;

use movingcurves::implicit::{implicitize, route_sizes, Method};
use movingcurves::rees::sample_parametrization;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Debug)]
pub struct Row {
    pub d: usize,
    pub mu: usize,
    /// Per route, in [`Method::ALL`] order.
    pub sizes: [usize; 3],
    pub millis: [f64; 3],
    /// Largest coefficient of the raw determinant, in bits.
    pub bits: [u64; 3],
}

impl Row {
    pub fn to_json(&self) -> Value {
        let by_method = |f: &dyn Fn(usize) -> Value| -> Value {
            Method::ALL.iter().enumerate().map(|(i, m)| (m.to_string(), f(i))).collect::<serde_json::Map<_, _>>().into()
        };
        json!({
            "d": self.d,
            "mu": self.mu,
            "sizes": by_method(&|i| json!(self.sizes[i])),
            "time_ms": by_method(&|i| json!(self.millis[i])),
            "bits": by_method(&|i| json!(self.bits[i])),
        })
    }
}

/// One seeded proper parametrization per degree in `min..=max`.
pub fn sweep(min: usize, max: usize, seed: u64) -> Result<Vec<Row>, CliError> {
    if min == 0 || min > max || max > 12 {
        return Err(CliError::Usage(format!("degree range {min}..={max} must lie within 1..=12")));
    }
    (min..=max)
        .map(|d| {
            let phi = sample_parametrization(d, seed, d as u64)?;
            let mu = movingcurves::syzygy::mu(&phi);
            let sizes = route_sizes(&phi)?;
            let mut millis = [0.0; 3];
            let mut bits = [0; 3];
            for (i, m) in Method::ALL.into_iter().enumerate() {
                let start = Instant::now();
                let r = implicitize(&phi, m, seed)?;
                millis[i] = start.elapsed().as_secs_f64() * 1e3;
                bits[i] = r.raw.max_bit_size();
            }
            Ok(Row { d, mu, sizes, millis, bits })
        })
        .collect()
}

const HEADER: [&str; 11] = [
    "d", "mu", "size_resultant", "size_mubasis", "size_movinglines", "ms_resultant", "ms_mubasis",
    "ms_movinglines", "bits_resultant", "bits_mubasis", "bits_movinglines",
];

fn fields(r: &Row) -> Vec<String> {
    let mut v = vec![r.d.to_string(), r.mu.to_string()];
    v.extend(r.sizes.iter().map(ToString::to_string));
    v.extend(r.millis.iter().map(|m| format!("{m:.3}")));
    v.extend(r.bits.iter().map(ToString::to_string));
    v
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = HEADER.join(",") + "\n";
    for r in rows {
        out += &(fields(r).join(",") + "\n");
    }
    out
}

/// Fixed-width table for `--format text`.
pub fn table(rows: &[Row]) -> String {
    let mut out = format!(
        "{:>3} {:>3} | {:>15} | {:>30} | {:>15}\n",
        "d", "mu", "sizes r/m/l", "ms resultant/mubasis/lines", "bits r/m/l"
    );
    for r in rows {
        out += &format!(
            "{:>3} {:>3} | {:>15} | {:>30} | {:>15}\n",
            r.d,
            r.mu,
            format!("{}/{}/{}", r.sizes[0], r.sizes[1], r.sizes[2]),
            format!("{:.2}/{:.2}/{:.2}", r.millis[0], r.millis[1], r.millis[2]),
            format!("{}/{}/{}", r.bits[0], r.bits[1], r.bits[2]),
        );
    }
    out
}
