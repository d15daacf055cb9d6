//! Brute-force reference values on uniform parameter grids.
//!
//! These use only curve evaluation and point distances, never hulls or the
//! branch-and-bound search, so they can check both independently.

use rayon::prelude::*;

use crate::curve::{Curve, Vector};
use crate::distance::{gjk_distance, ConvexObstacle};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// A sampled minimum together with how far it may overestimate the true one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampled {
    pub value: f64,
    pub slack: f64,
    /// Parameters of the best sample (second entry for curve pairs).
    pub params: (f64, Option<f64>),
}

fn check_count(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!("need at least 2 samples, got {n}")));
    }
    Ok(())
}

fn grid(q: Interval, n: usize, i: usize) -> f64 {
    if i + 1 == n {
        q.hi()
    } else {
        q.lo() + q.length() * (i as f64 / (n - 1) as f64)
    }
}

fn max_speed<const D: usize>(curve: &Curve<D>, n: usize) -> f64 {
    let q = curve.domain();
    (0..n)
        .into_par_iter()
        .map(|i| curve.velocity(grid(q, n, i)).norm())
        .reduce(|| 0.0, f64::max)
}

fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Minimum over `n` evenly spaced parameters of the point-to-obstacle distance.
///
/// `slack = L |I| / (2(n-1))` with `L` the largest speed seen on the grid.
pub fn sampled_min_distance<const D: usize>(
    curve: &Curve<D>,
    obstacle: &ConvexObstacle<D>,
    n: usize,
) -> Result<Sampled> {
    check_count(n)?;
    let q = curve.domain();
    let (value, best) = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = curve.point(grid(q, n, i));
            gjk_distance(&ConvexObstacle::point(x), obstacle, 1e-13).map(|w| (w.distance, i))
        })
        .try_reduce(|| (f64::INFINITY, usize::MAX), |a, b| Ok(better(a, b)))?;
    Ok(Sampled {
        value,
        slack: max_speed(curve, n) * q.length() / (2.0 * (n - 1) as f64),
        params: (grid(q, n, best), None),
    })
}

/// Minimum pairwise distance over an `n × n` parameter grid, then refined by
/// finer grids around the best coarse cells.
///
/// The slack is that of the coarse grid,
/// `(L_a |I_a| / (n-1) + L_b |I_b| / (n-1)) / 2`.
pub fn sampled_min_distance_curves<const D: usize>(a: &Curve<D>, b: &Curve<D>, n: usize) -> Result<Sampled> {
    check_count(n)?;
    let (qa, qb) = (a.domain(), b.domain());
    let pa: Vec<Vector<D>> = (0..n).map(|i| a.point(grid(qa, n, i))).collect();
    let pb: Vec<Vector<D>> = (0..n).map(|j| b.point(grid(qb, n, j))).collect();

    // best cell per row, then the overall best few rows
    let mut rows: Vec<(f64, usize, usize)> = pa
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let (d, j) = pb
                .iter()
                .enumerate()
                .map(|(j, y)| ((x - y).norm(), j))
                .fold((f64::INFINITY, usize::MAX), better);
            (d, i, j)
        })
        .collect();
    rows.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let (mut value, i0, j0) = rows[0];
    let mut params = (grid(qa, n, i0), Some(grid(qb, n, j0)));

    let ha = qa.length() / (n - 1) as f64;
    let hb = qb.length() / (n - 1) as f64;
    for &(_, i, j) in rows.iter().take(16) {
        let (mut t, mut s) = (grid(qa, n, i), grid(qb, n, j));
        let (mut wa, mut wb) = (ha, hb);
        for _ in 0..6 {
            const M: usize = 21;
            for k in 0..M {
                let tk = (t - wa + 2.0 * wa * k as f64 / (M - 1) as f64).clamp(qa.lo(), qa.hi());
                let x = a.point(tk);
                for l in 0..M {
                    let sl = (s - wb + 2.0 * wb * l as f64 / (M - 1) as f64).clamp(qb.lo(), qb.hi());
                    let d = (x - b.point(sl)).norm();
                    if d < value {
                        value = d;
                        params = (tk, Some(sl));
                    }
                }
            }
            t = params.0;
            s = params.1.unwrap_or(s);
            wa /= 8.0;
            wb /= 8.0;
        }
    }

    let slack = 0.5 * (max_speed(a, n) * ha + max_speed(b, n) * hb);
    Ok(Sampled { value, slack, params })
}

/// Sum of chord lengths over `n` equal subdivisions of `q`; never exceeds the arc length.
pub fn sampled_arc_length<const D: usize>(curve: &Curve<D>, q: Interval, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidConfig("need at least one subdivision".into()));
    }
    let q = curve.check_interval(q)?;
    let mut prev = curve.point(q.lo());
    let mut total = 0.0;
    for i in 1..=n {
        let x = curve.point(grid(q, n + 1, i));
        total += (x - prev).norm();
        prev = x;
    }
    Ok(total)
}
