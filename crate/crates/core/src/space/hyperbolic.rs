//! Hyperbolic plane in the hyperboloid model.
//!
//! Points are (x1, x2, x3) with x1² − x2² − x3² = 1 and x1 ≥ 1; the Minkowski
//! form is ⟨x, y⟩ = x1·y1 − x2·y2 − x3·y3. Distances are arccosh of the form,
//! geodesics come from the usual sinh interpolation.

use crate::error::{Error, Result};

pub const SHEET_TOL: f64 = 1e-9;

pub fn minkowski(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    x[0] * y[0] - x[1] * y[1] - x[2] * y[2]
}

pub fn check_on_sheet(x: &[f64; 3]) -> Result<()> {
    let q = minkowski(x, x);
    if (q - 1.0).abs() > SHEET_TOL || x[0] < 1.0 - SHEET_TOL {
        return Err(Error::InvalidPoint(format!(
            "({}, {}, {}) is not on the unit hyperboloid sheet",
            x[0], x[1], x[2]
        )));
    }
    Ok(())
}

pub fn distance(x: &[f64; 3], y: &[f64; 3]) -> f64 {
    // Chordal form of arccosh⟨x,y⟩: with u = x − y one has
    // ⟨u,u⟩ = 2 − 2cosh d = −4·sinh²(d/2), and computing the form on the
    // difference avoids the precision loss of acosh near 1.
    let u = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    let q = (-minkowski(&u, &u)).max(0.0);
    2.0 * (q.sqrt() / 2.0).asinh()
}

/// Rescales onto the sheet; the Minkowski form of any positive combination of
/// sheet points is positive, so the square root is safe.
pub fn normalize(x: &[f64; 3]) -> [f64; 3] {
    let q = minkowski(x, x);
    let s = 1.0 / q.sqrt();
    [x[0] * s, x[1] * s, x[2] * s]
}

/// Point at parameter t ∈ [0,1] on the geodesic from x to y.
pub fn combine(x: &[f64; 3], y: &[f64; 3], t: f64) -> [f64; 3] {
    let d = distance(x, y);
    if d < 1e-14 {
        return *x;
    }
    let sh = d.sinh();
    let (wx, wy) = (((1.0 - t) * d).sinh() / sh, (t * d).sinh() / sh);
    let z = [
        wx * x[0] + wy * y[0],
        wx * x[1] + wy * y[1],
        wx * x[2] + wy * y[2],
    ];
    normalize(&z)
}

/// Minkowski-orthogonal projection of an ambient vector onto the tangent
/// space at `x`, i.e. v − ⟨v, x⟩x.
pub fn tangent_project(x: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    let c = minkowski(v, x);
    [v[0] - c * x[0], v[1] - c * x[1], v[2] - c * x[2]]
}

/// Norm of a tangent vector (tangent vectors are spacelike: ⟨v,v⟩ ≤ 0).
pub fn tangent_norm(v: &[f64; 3]) -> f64 {
    (-minkowski(v, v)).max(0.0).sqrt()
}

/// Exponential map: walks distance |v| from x in the direction of the
/// tangent vector v.
pub fn exp_map(x: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    let n = tangent_norm(v);
    if n < 1e-14 {
        return *x;
    }
    let (ch, sh) = (n.cosh(), n.sinh() / n);
    normalize(&[
        ch * x[0] + sh * v[0],
        ch * x[1] + sh * v[1],
        ch * x[2] + sh * v[2],
    ])
}

/// Checks M preserves the Minkowski form (MᵀJM = J) and the upper sheet.
pub fn check_lorentz(m: &[[f64; 3]; 3], tol: f64) -> Result<()> {
    let j = [1.0, -1.0, -1.0];
    for i in 0..3 {
        for k in 0..3 {
            let mut s = 0.0;
            for r in 0..3 {
                s += m[r][i] * j[r] * m[r][k];
            }
            let want = if i == k { j[i] } else { 0.0 };
            if (s - want).abs() > tol {
                return Err(Error::InvalidParameter(
                    "matrix does not preserve the Minkowski form".into(),
                ));
            }
        }
    }
    if m[0][0] <= 0.0 {
        return Err(Error::InvalidParameter(
            "matrix swaps the hyperboloid sheets".into(),
        ));
    }
    Ok(())
}

pub fn apply_matrix(m: &[[f64; 3]; 3], x: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_along_standard_geodesic() {
        let x = [1.0, 0.0, 0.0];
        let y = [1f64.cosh(), 1f64.sinh(), 0.0];
        assert!((distance(&x, &y) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn midpoint_matches_normalized_sum() {
        // Independent construction: the midpoint of x and y is the
        // normalized Minkowski sum (x + y)/sqrt(⟨x+y, x+y⟩).
        let x = [1.0, 0.0, 0.0];
        let y = [2f64.cosh(), 2f64.sinh(), 0.0];
        let m = combine(&x, &y, 0.5);
        let s = [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
        let m2 = normalize(&s);
        for i in 0..3 {
            assert!((m[i] - m2[i]).abs() < 1e-9, "coord {i}: {} vs {}", m[i], m2[i]);
        }
        // And it lands at (cosh 1, sinh 1, 0).
        assert!((m[0] - 1f64.cosh()).abs() < 1e-9);
        assert!((m[1] - 1f64.sinh()).abs() < 1e-9);
        assert!(m[2].abs() < 1e-9);
    }

    #[test]
    fn exp_map_walks_the_stated_distance() {
        let x = [2f64.cosh(), 0.0, 2f64.sinh()];
        let v = tangent_project(&x, &[0.3, -1.2, 0.7]);
        let n = tangent_norm(&v);
        let y = exp_map(&x, &v);
        check_on_sheet(&y).unwrap();
        assert!((distance(&x, &y) - n).abs() < 1e-9);
    }
}
