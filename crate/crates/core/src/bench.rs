//! Timing harness for the two earcut engines on the parametric shapes.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::earcut::{
    classic_earcut_with_stats, linear_earcut_into, validate_triangulation, EarcutError,
    EarcutState, PocketPolygon,
};
use crate::generators::{gen_collinear_fan, gen_random_top};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Linear,
    Classic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Collinear,
    Random,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Linear => "linear",
            Engine::Classic => "classic",
        }
    }
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Collinear => "collinear",
            Shape::Random => "random",
        }
    }

    /// The polygon with `n` vertices in total.
    pub fn polygon(self, n: usize, seed: u64) -> Result<PocketPolygon, BenchError> {
        let m = n
            .checked_sub(2)
            .filter(|&m| m >= 1)
            .ok_or(BenchError::SizeTooSmall(n))?;
        let poly = match self {
            Shape::Collinear => gen_collinear_fan(m),
            Shape::Random => gen_random_top(m, seed),
        };
        Ok(poly.expect("m >= 1"))
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Engine::Linear),
            "classic" => Ok(Engine::Classic),
            _ => Err(format!("unknown engine {s:?} (expected linear or classic)")),
        }
    }
}

impl FromStr for Shape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "collinear" => Ok(Shape::Collinear),
            "random" => Ok(Shape::Random),
            _ => Err(format!(
                "unknown shape {s:?} (expected collinear or random)"
            )),
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub engine: Engine,
    pub shape: Shape,
    pub n: usize,
    pub reps: usize,
    #[serde(serialize_with = "plain_decimal")]
    pub mean_s: f64,
    #[serde(serialize_with = "plain_decimal")]
    pub min_s: f64,
    pub predicate_calls: usize,
}

/// Positional notation, no exponent.
fn plain_decimal<S: serde::Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no sizes given")]
    NoSizes,
    #[error("reps must be at least 1")]
    NoReps,
    #[error("polygon size {0} is below 3")]
    SizeTooSmall(usize),
    #[error("{engine} earcut failed at n = {n}: {source}")]
    Earcut {
        engine: Engine,
        n: usize,
        #[source]
        source: EarcutError,
    },
    #[error("{engine} earcut produced an invalid triangulation at n = {n}: {report}")]
    Invalid {
        engine: Engine,
        n: usize,
        report: String,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Runs below this are batched so the clock resolution does not dominate.
const MIN_SAMPLE: Duration = Duration::from_micros(2);

struct Runner<'a> {
    engine: Engine,
    poly: &'a PocketPolygon,
    state: EarcutState,
    out: Vec<[usize; 3]>,
}

impl Runner<'_> {
    fn run(&mut self) -> Result<usize, EarcutError> {
        match self.engine {
            Engine::Linear => linear_earcut_into(&mut self.state, self.poly, &mut self.out)
                .map(|s| s.orient_calls),
            Engine::Classic => classic_earcut_with_stats(self.poly).map(|(t, s)| {
                self.out = t;
                s.orient_calls
            }),
        }
    }
}

/// Times one engine on one shape for every size.
///
/// Each polygon is generated and validated once outside the timed region.
/// Each of the `reps` samples runs the engine enough times back to back to
/// last at least a couple of microseconds and reports the per-run time.
pub fn bench(
    engine: Engine,
    shape: Shape,
    sizes: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>, BenchError> {
    if sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    if reps == 0 {
        return Err(BenchError::NoReps);
    }
    let mut records = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let poly = shape.polygon(n, seed)?;
        let mut runner = Runner {
            engine,
            poly: &poly,
            state: EarcutState::new(),
            out: Vec::with_capacity(n),
        };
        let fail = |source| BenchError::Earcut { engine, n, source };
        let predicate_calls = runner.run().map_err(fail)?;
        let report = validate_triangulation(&poly, &runner.out);
        if !report.is_pass() {
            return Err(BenchError::Invalid {
                engine,
                n,
                report: report.to_string(),
            });
        }

        let start = Instant::now();
        runner.run().map_err(fail)?;
        let once = start.elapsed().max(Duration::from_nanos(1));
        let batch = (MIN_SAMPLE.as_nanos() / once.as_nanos()).max(1) as u32;

        let mut total = 0.0;
        let mut min = f64::INFINITY;
        for _ in 0..reps {
            let start = Instant::now();
            for _ in 0..batch {
                black_box(runner.run().map_err(fail)?);
            }
            let per_run = start.elapsed().as_secs_f64() / f64::from(batch);
            total += per_run;
            min = min.min(per_run);
        }
        records.push(BenchRecord {
            engine,
            shape,
            n,
            reps,
            mean_s: total / reps as f64,
            min_s: min,
            predicate_calls,
        });
    }
    Ok(records)
}

/// Writes the header and one row per record.
pub fn write_csv<W: Write>(records: &[BenchRecord], sink: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(sink);
    w.write_record([
        "engine",
        "shape",
        "n",
        "reps",
        "mean_s",
        "min_s",
        "predicate_calls",
    ])?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `ln(min_s)` against `ln(n)` slope of a set of records.
pub fn min_time_slope(records: &[BenchRecord]) -> Option<f64> {
    let xs: Vec<f64> = records.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.min_s).collect();
    log_log_slope(&xs, &ys)
}

/// 10, 20, ..., 1000.
pub fn default_sizes() -> Vec<usize> {
    (1..=100).map(|k| 10 * k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_small_record() {
        let r = bench(Engine::Linear, Shape::Collinear, &[10], 1, 0).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].reps, 1);
        assert!(r[0].predicate_calls <= 30);
        assert!(r[0].min_s <= r[0].mean_s);
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(
            bench(Engine::Linear, Shape::Random, &[], 1, 0),
            Err(BenchError::NoSizes)
        ));
        assert!(matches!(
            bench(Engine::Linear, Shape::Random, &[10], 0, 0),
            Err(BenchError::NoReps)
        ));
        assert!(matches!(
            bench(Engine::Classic, Shape::Random, &[2], 1, 0),
            Err(BenchError::SizeTooSmall(2))
        ));
    }

    #[test]
    fn csv_layout() {
        let tiny = BenchRecord {
            engine: Engine::Linear,
            shape: Shape::Collinear,
            n: 12,
            reps: 1,
            mean_s: 8.5e-7,
            min_s: 8.5e-7,
            predicate_calls: 30,
        };
        let mut buf = Vec::new();
        write_csv(&[tiny], &mut buf).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .ends_with("linear,collinear,12,1,0.00000085,0.00000085,30\n"));

        let rec = BenchRecord {
            engine: Engine::Classic,
            shape: Shape::Random,
            n: 10,
            reps: 5,
            mean_s: 0.5,
            min_s: 0.25,
            predicate_calls: 42,
        };
        let mut buf = Vec::new();
        write_csv(&[rec], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "engine,shape,n,reps,mean_s,min_s,predicate_calls\nclassic,random,10,5,0.5,0.25,42\n"
        );
    }

    #[test]
    fn slope_of_power_laws() {
        let xs = [10.0, 100.0, 1000.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powi(2)).collect();
        assert!((log_log_slope(&xs, &ys).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(log_log_slope(&[1.0], &[1.0]), None);
    }

    #[test]
    fn predicate_counts_are_deterministic() {
        let a = bench(Engine::Classic, Shape::Random, &[50, 60], 2, 9).unwrap();
        let b = bench(Engine::Classic, Shape::Random, &[50, 60], 2, 9).unwrap();
        let calls = |r: &[BenchRecord]| r.iter().map(|x| x.predicate_calls).collect::<Vec<_>>();
        assert_eq!(calls(&a), calls(&b));
    }
}
