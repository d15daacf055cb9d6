//! Scene files, benchmarks, rendering and the trajectory replanning demo
//! behind the `curveprox` command.

pub mod bench;
pub mod fixtures;
pub mod render;
pub mod replan;
pub mod scene;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::query::TracePoint;

/// Runs `$body` with the const `$D` bound to a runtime dimension in 1..=3.
#[macro_export]
macro_rules! with_dimension {
    ($dim:expr, $D:ident => $body:expr) => {
        match $dim {
            1 => {
                const $D: usize = 1;
                $body
            }
            2 => {
                const $D: usize = 2;
                $body
            }
            3 => {
                const $D: usize = 3;
                $body
            }
            d => Err($crate::Error::InvalidConfig(format!(
                "dimension {d} is not supported (use 1, 2 or 3)"
            ))),
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Text,
    Json,
    Csv,
}

/// Trace rows as `iteration,lb,ub` CSV.
pub fn trace_csv(trace: &[TracePoint]) -> String {
    let mut out = String::from("iteration,lb,ub\n");
    for p in trace {
        let _ = writeln!(out, "{},{:?},{:?}", p.iteration, p.lower, p.upper);
    }
    out
}

pub fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Population standard deviation.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statistics() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(std_dev(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]), 2.0);
    }

    #[test]
    fn trace_format() {
        let t = [
            TracePoint { iteration: 0, lower: 0.0, upper: 1.5 },
            TracePoint { iteration: 1, lower: 0.25, upper: 1.0 },
        ];
        assert_eq!(trace_csv(&t), "iteration,lb,ub\n0,0.0,1.5\n1,0.25,1.0\n");
    }

    #[test]
    fn dimension_dispatch() {
        let d: crate::Result<usize> = with_dimension!(2, D => Ok(D * 10));
        assert_eq!(d.unwrap(), 20);
        let bad: crate::Result<usize> = with_dimension!(5, D => Ok(D));
        assert!(bad.is_err());
    }
}
