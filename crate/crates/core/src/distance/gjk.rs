//! GJK distance between convex sets given by support mappings.
//!
//! The iteration keeps a simplex of Minkowski-difference points, replaces it by
//! the face nearest the origin, and stops once the duality gap between `|v|`
//! (an achieved separation) and the best support-plane bound `vᵀw / |v|`
//! falls below the tolerance. Both numbers are reported, so callers that need
//! a certified lower bound get one even when the iteration is cut short.

use smallvec::SmallVec;

use super::obstacle::SupportMap;
use crate::curve::Vector;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 1000;

/// Closest pair between two convex sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceWitness<const D: usize> {
    pub distance: f64,
    pub point_a: Vector<D>,
    pub point_b: Vector<D>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GjkOutcome<const D: usize> {
    /// `distance` is an upper bound: the witnesses are points of the two sets.
    pub witness: DistanceWitness<D>,
    /// Certified lower bound on the true distance.
    pub lower_bound: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Vertex<const D: usize> {
    w: Vector<D>,
    a: Vector<D>,
    b: Vector<D>,
}

type Simplex<const D: usize> = SmallVec<[Vertex<D>; 4]>;

/// Largest simplex the subalgorithm handles (dimension 7).
const MAX_VERTICES: usize = 8;

pub fn gjk<const D: usize, A, B>(a: &A, b: &B, seed: Vector<D>, tol: f64) -> GjkOutcome<D>
where
    A: SupportMap<D> + ?Sized,
    B: SupportMap<D> + ?Sized,
{
    const { assert!(D >= 1 && D < MAX_VERTICES, "GJK supports dimensions 1 through 7") };

    let mut dir = seed;
    if dir.norm_squared() == 0.0 || !dir.iter().all(|x| x.is_finite()) {
        dir = Vector::zeros();
        dir[0] = 1.0;
    }
    let first = support_vertex(a, b, &(-dir));
    let mut simplex: Simplex<D> = SmallVec::new();
    simplex.push(first);
    let mut v = first.w;
    let mut best = first;
    let mut best_norm = v.norm();
    let mut lower = 0.0f64;
    let mut scale = first.w.norm().max(1.0);

    for iteration in 1..=MAX_ITERATIONS {
        let vn = v.norm();
        if vn <= 1e-14 * scale {
            return finish(best, 0.0, iteration, true, true);
        }
        let vert = support_vertex(a, b, &v);
        scale = scale.max(vert.w.norm());
        lower = lower.max(v.dot(&vert.w) / vn);
        let gap_tol = tol.max(1e-14 * vn);
        if vn - lower <= gap_tol {
            return finish(best, lower, iteration, true, false);
        }
        if simplex
            .iter()
            .any(|s| (s.w - vert.w).norm() <= 1e-14 * scale)
        {
            // no new direction to explore: v is as close as this precision allows
            return finish(best, lower, iteration, true, false);
        }
        simplex.push(vert);
        let (point, reduced) = closest_on_simplex(&simplex);
        simplex = reduced;
        v = point.w;
        let n = v.norm();
        if n < best_norm {
            best_norm = n;
            best = point;
        } else {
            // stalled by roundoff
            return finish(best, lower, iteration, true, false);
        }
        if simplex.len() == D + 1 {
            return finish(point, 0.0, iteration, true, true);
        }
    }
    finish(best, lower, MAX_ITERATIONS, false, false)
}

fn finish<const D: usize>(
    point: Vertex<D>,
    lower: f64,
    iterations: usize,
    converged: bool,
    touching: bool,
) -> GjkOutcome<D> {
    let distance = if touching { 0.0 } else { point.w.norm() };
    let point_b = if touching { point.a } else { point.b };
    GjkOutcome {
        witness: DistanceWitness {
            distance,
            point_a: point.a,
            point_b,
        },
        lower_bound: lower.max(0.0).min(distance),
        iterations,
        converged,
    }
}

#[inline]
fn support_vertex<const D: usize, A, B>(a: &A, b: &B, towards_b: &Vector<D>) -> Vertex<D>
where
    A: SupportMap<D> + ?Sized,
    B: SupportMap<D> + ?Sized,
{
    // w = a - b extreme in direction -v
    let pa = a.support_point(&(-towards_b));
    let pb = b.support_point(towards_b);
    Vertex {
        w: pa - pb,
        a: pa,
        b: pb,
    }
}

/// Nearest point to the origin on the convex hull of `simplex`, as a combined
/// vertex (barycentric blend of witnesses), plus the supporting sub-simplex.
///
/// Every nonempty subset is projected onto its affine hull; among the
/// projections with nonnegative barycentric coordinates the shortest wins.
fn closest_on_simplex<const D: usize>(simplex: &Simplex<D>) -> (Vertex<D>, Simplex<D>) {
    let k = simplex.len();
    debug_assert!(k >= 1 && k <= MAX_VERTICES);
    let mut best: Option<(f64, u32, [f64; MAX_VERTICES])> = None;

    let mut masks: SmallVec<[u32; 16]> = (1u32..(1 << k)).collect();
    masks.sort_by_key(|m| m.count_ones());

    for mask in masks {
        let Some(lambda) = affine_projection(simplex, mask) else {
            continue;
        };
        let mut x = Vector::<D>::zeros();
        for (i, s) in simplex.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x += s.w * lambda[i];
            }
        }
        let n2 = x.norm_squared();
        let better = match &best {
            None => true,
            Some((b, _, _)) => n2 < b * (1.0 - 1e-12),
        };
        if better {
            best = Some((n2, mask, lambda));
        }
    }

    let (_, mask, lambda) = best.expect("single vertices are always feasible");
    let mut point = Vertex {
        w: Vector::zeros(),
        a: Vector::zeros(),
        b: Vector::zeros(),
    };
    let mut reduced: Simplex<D> = SmallVec::new();
    for (i, s) in simplex.iter().enumerate() {
        if mask >> i & 1 == 1 {
            point.w += s.w * lambda[i];
            point.a += s.a * lambda[i];
            point.b += s.b * lambda[i];
            reduced.push(*s);
        }
    }
    (point, reduced)
}

/// Barycentric coordinates of the origin's projection onto the affine hull of
/// the masked vertices, or `None` if the subset is degenerate or the
/// projection falls outside it. Coordinates are clipped to be nonnegative.
fn affine_projection<const D: usize>(simplex: &Simplex<D>, mask: u32) -> Option<[f64; MAX_VERTICES]> {
    let idx: SmallVec<[usize; MAX_VERTICES]> =
        (0..simplex.len()).filter(|i| mask >> i & 1 == 1).collect();
    let mut lambda = [0.0; MAX_VERTICES];
    if idx.len() == 1 {
        lambda[idx[0]] = 1.0;
        return Some(lambda);
    }

    // x = y0 + sum_j mu_j (y_j - y0); normal equations G mu = -E^T y0
    let y0 = simplex[idx[0]].w;
    let edges: SmallVec<[Vector<D>; MAX_VERTICES]> =
        idx[1..].iter().map(|&i| simplex[i].w - y0).collect();
    let m = edges.len();
    let mut g = [[0.0f64; MAX_VERTICES + 1]; MAX_VERTICES];
    let mut diag_max = 0.0f64;
    for r in 0..m {
        for c in 0..m {
            g[r][c] = edges[r].dot(&edges[c]);
        }
        g[r][m] = -edges[r].dot(&y0);
        diag_max = diag_max.max(g[r][r]);
    }
    if diag_max == 0.0 {
        return None;
    }
    let mu = solve(&mut g, m, 1e-13 * diag_max)?;

    let mut sum = 0.0;
    for (j, &i) in idx[1..].iter().enumerate() {
        lambda[i] = mu[j];
        sum += mu[j];
    }
    lambda[idx[0]] = 1.0 - sum;
    const NEG: f64 = -1e-12;
    if idx.iter().any(|&i| lambda[i] < NEG) {
        return None;
    }
    let mut total = 0.0;
    for &i in &idx {
        lambda[i] = lambda[i].max(0.0);
        total += lambda[i];
    }
    for &i in &idx {
        lambda[i] /= total;
    }
    Some(lambda)
}

/// Gaussian elimination with partial pivoting on an augmented `m x (m+1)` system.
fn solve(
    g: &mut [[f64; MAX_VERTICES + 1]; MAX_VERTICES],
    m: usize,
    pivot_floor: f64,
) -> Option<[f64; MAX_VERTICES]> {
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| g[x][col].abs().total_cmp(&g[y][col].abs()))?;
        if g[pivot][col].abs() <= pivot_floor {
            return None;
        }
        g.swap(col, pivot);
        for r in col + 1..m {
            let f = g[r][col] / g[col][col];
            for c in col..=m {
                g[r][c] -= f * g[col][c];
            }
        }
    }
    let mut x = [0.0; MAX_VERTICES];
    for r in (0..m).rev() {
        let mut acc = g[r][m];
        for c in r + 1..m {
            acc -= g[r][c] * x[c];
        }
        x[r] = acc / g[r][r];
    }
    Some(x)
}
