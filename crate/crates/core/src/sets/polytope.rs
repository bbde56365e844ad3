//! Nearest-point computation on convex hulls of finitely many points,
//! via Frank-Wolfe iterations with away steps (vertex-oriented linear
//! minimization plus exact line search on the quadratic objective).

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct HullProjection {
    pub point: Vec<f64>,
    /// Convex weights over the input vertices.
    pub weights: Vec<f64>,
    pub gap: f64,
    pub iters: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean projection of `x` onto conv(vertices).
///
/// Stops when the Frank-Wolfe dual gap certifies the distance is within
/// `tol` of optimal.
pub fn project_hull(
    vertices: &[Vec<f64>],
    x: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<HullProjection> {
    if vertices.is_empty() {
        return Err(Error::InvalidSet("polytope needs at least one vertex".into()));
    }
    let n = vertices.len();
    let dim = x.len();
    // Warm start at the nearest vertex.
    let start = (0..n)
        .min_by(|&i, &j| {
            let di = dist2(&vertices[i], x);
            let dj = dist2(&vertices[j], x);
            di.partial_cmp(&dj).unwrap()
        })
        .unwrap();
    let mut weights = vec![0.0; n];
    weights[start] = 1.0;
    let mut z = vertices[start].clone();
    let mut gap = 0.0;
    for iter in 0..max_iter {
        let g: Vec<f64> = (0..dim).map(|k| z[k] - x[k]).collect();
        let mut fw = 0;
        let mut fw_val = f64::INFINITY;
        let mut away = usize::MAX;
        let mut away_val = f64::NEG_INFINITY;
        for i in 0..n {
            let s = dot(&g, &vertices[i]);
            if s < fw_val {
                fw_val = s;
                fw = i;
            }
            if weights[i] > 0.0 && s > away_val {
                away_val = s;
                away = i;
            }
        }
        let gz = dot(&g, &z);
        gap = gz - fw_val;
        let d_cur = dist2(&z, x).sqrt();
        if gap <= (tol * tol).max(tol * d_cur) {
            return Ok(HullProjection { point: z, weights, gap, iters: iter });
        }
        let gap_away = away_val - gz;
        let take_away = gap_away > gap && weights[away] < 1.0 - 1e-15;
        let (dir, gamma_max): (Vec<f64>, f64) = if take_away {
            let w = weights[away];
            (
                (0..dim).map(|k| z[k] - vertices[away][k]).collect(),
                w / (1.0 - w),
            )
        } else {
            ((0..dim).map(|k| vertices[fw][k] - z[k]).collect(), 1.0)
        };
        let dd = dot(&dir, &dir);
        if dd <= 1e-300 {
            break;
        }
        let gamma = (-dot(&g, &dir) / dd).clamp(0.0, gamma_max);
        if gamma <= 0.0 {
            break;
        }
        if take_away {
            for w in weights.iter_mut() {
                *w *= 1.0 + gamma;
            }
            weights[away] -= gamma;
            if weights[away] < 1e-15 {
                weights[away] = 0.0;
            }
        } else {
            for w in weights.iter_mut() {
                *w *= 1.0 - gamma;
            }
            weights[fw] += gamma;
        }
        for k in 0..dim {
            z[k] += gamma * dir[k];
        }
    }
    // Either stalled (gamma = 0 at a vertex-optimal point) or budget hit;
    // accept the iterate only if the gap certificate already holds.
    let d_cur = dist2(&z, x).sqrt();
    if gap <= (tol * tol).max(tol * d_cur).max(1e-12) {
        return Ok(HullProjection { point: z, weights, gap, iters: max_iter });
    }
    Err(Error::NoConvergence(format!(
        "hull projection gap {gap:.3e} after {max_iter} iterations"
    )))
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
