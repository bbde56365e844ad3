//! Symbolic closed convex sets with membership tests and metric projection.

pub mod polytope;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{max_norm, SpaceDescriptor, SpacePoint};

/// Parameter tolerance for the ternary search used by segment projection.
const SEGMENT_PARAM_TOL: f64 = 1e-12;
/// Iteration budget for hull projections.
pub const PROJECTION_MAX_ITER: usize = 100_000;

/// A nonempty closed convex set, described symbolically.
///
/// `Polytope` (a convex hull of finitely many points) is meaningful in the
/// Euclidean and max-norm spaces; `SubtreeHull` in metric trees; `JamesSlice`
/// only in the max-norm space, where it denotes
/// {x : ‖x‖ ≤ radius, x₁ = first_coord, xᵢ ≥ 0}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ConvexSetDescriptor {
    Segment { a: SpacePoint, b: SpacePoint },
    Ball { center: SpacePoint, radius: f64 },
    Polytope { vertices: Vec<SpacePoint> },
    #[serde(rename = "subtree")]
    SubtreeHull { generators: Vec<SpacePoint> },
    JamesSlice { radius: f64, first_coord: f64 },
}

impl ConvexSetDescriptor {
    pub fn segment(a: SpacePoint, b: SpacePoint) -> Self {
        ConvexSetDescriptor::Segment { a, b }
    }

    pub fn ball(center: SpacePoint, radius: f64) -> Self {
        ConvexSetDescriptor::Ball { center, radius }
    }

    pub fn polytope(vertices: Vec<SpacePoint>) -> Self {
        ConvexSetDescriptor::Polytope { vertices }
    }

    pub fn subtree_hull(generators: Vec<SpacePoint>) -> Self {
        ConvexSetDescriptor::SubtreeHull { generators }
    }

    pub fn james_slice(radius: f64, first_coord: f64) -> Self {
        ConvexSetDescriptor::JamesSlice { radius, first_coord }
    }

    /// Checks the descriptor is well-formed in `space` and denotes a
    /// nonempty closed convex set there.
    pub fn validate(&self, space: &SpaceDescriptor) -> Result<()> {
        match self {
            ConvexSetDescriptor::Segment { a, b } => {
                space.check_point(a)?;
                space.check_point(b)
            }
            ConvexSetDescriptor::Ball { center, radius } => {
                space.check_point(center)?;
                if !(*radius > 0.0) {
                    return Err(Error::InvalidSet(format!("ball radius {radius} must be positive")));
                }
                Ok(())
            }
            ConvexSetDescriptor::Polytope { vertices } => {
                if vertices.is_empty() {
                    return Err(Error::InvalidSet("polytope needs at least one vertex".into()));
                }
                if !matches!(
                    space,
                    SpaceDescriptor::Euclidean { .. } | SpaceDescriptor::MaxNormSeq { .. }
                ) {
                    return Err(Error::InvalidSet(format!(
                        "polytopes are not supported in {}",
                        space.kind_label()
                    )));
                }
                for v in vertices {
                    space.check_point(v)?;
                }
                Ok(())
            }
            ConvexSetDescriptor::SubtreeHull { generators } => {
                if generators.is_empty() {
                    return Err(Error::InvalidSet("subtree hull needs a generator".into()));
                }
                if space.tree().is_none() {
                    return Err(Error::InvalidSet(format!(
                        "subtree hulls live in metric trees, not {}",
                        space.kind_label()
                    )));
                }
                for g in generators {
                    space.check_point(g)?;
                }
                Ok(())
            }
            ConvexSetDescriptor::JamesSlice { radius, first_coord } => {
                if !matches!(space, SpaceDescriptor::MaxNormSeq { .. }) {
                    return Err(Error::InvalidSet(format!(
                        "slices live in the max-norm space, not {}",
                        space.kind_label()
                    )));
                }
                if !(*radius > 0.0) {
                    return Err(Error::InvalidSet(format!("slice radius {radius} must be positive")));
                }
                if *first_coord < 0.0 || *first_coord > *radius {
                    return Err(Error::InvalidSet(format!(
                        "slice first coordinate {first_coord} must lie in [0, {radius}]"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// Membership test, up to `tol`.
pub fn contains(
    space: &SpaceDescriptor,
    set: &ConvexSetDescriptor,
    p: &SpacePoint,
    tol: f64,
) -> Result<bool> {
    set.validate(space)?;
    space.check_point(p)?;
    match set {
        ConvexSetDescriptor::Segment { a, b } => {
            let (_, z) = project_segment(space, a, b, p)?;
            Ok(space.distance(p, &z)? <= tol)
        }
        ConvexSetDescriptor::Ball { center, radius } => {
            Ok(space.distance(p, center)? <= radius + tol)
        }
        ConvexSetDescriptor::Polytope { vertices } => {
            // Hull membership is affine, so the Euclidean feasibility check
            // serves both coordinate spaces.
            let verts: Vec<Vec<f64>> = vertices
                .iter()
                .map(|v| v.coords().unwrap().to_vec())
                .collect();
            let proj = polytope::project_hull(&verts, p.coords().unwrap(), tol.min(1e-9), PROJECTION_MAX_ITER)?;
            Ok(crate::space::euclidean_distance(&proj.point, p.coords().unwrap()) <= tol)
        }
        ConvexSetDescriptor::SubtreeHull { generators } => {
            // p lies in the spanned subtree iff it sits on a path between
            // two generators.
            for (i, g) in generators.iter().enumerate() {
                for h in &generators[i..] {
                    let through =
                        space.distance(g, p)? + space.distance(p, h)? - space.distance(g, h)?;
                    if through.abs() <= tol {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        ConvexSetDescriptor::JamesSlice { radius, first_coord } => {
            let coords = p.coords().unwrap();
            if (coords[0] - first_coord).abs() > tol {
                return Ok(false);
            }
            if coords.iter().any(|&c| c < -tol) {
                return Ok(false);
            }
            Ok(max_norm(coords) <= radius + tol)
        }
    }
}

/// Metric projection onto the set.
///
/// In CAT(0)-flagged spaces the minimizer is unique; in the max-norm space
/// the operation is offered for segments and slices and returns a minimizer.
pub fn project(
    space: &SpaceDescriptor,
    set: &ConvexSetDescriptor,
    x: &SpacePoint,
    tol: f64,
) -> Result<SpacePoint> {
    set.validate(space)?;
    space.check_point(x)?;
    let max_norm_space = matches!(space, SpaceDescriptor::MaxNormSeq { .. });
    match set {
        ConvexSetDescriptor::Segment { a, b } => {
            let (_, z) = project_segment(space, a, b, x)?;
            Ok(z)
        }
        ConvexSetDescriptor::Ball { center, radius } => {
            if max_norm_space {
                return Err(Error::UnsupportedSpace(
                    "ball projection is not offered in the max-norm space".into(),
                ));
            }
            let d = space.distance(x, center)?;
            if d <= *radius {
                Ok(x.clone())
            } else {
                space.combine(center, x, radius / d)
            }
        }
        ConvexSetDescriptor::Polytope { vertices } => {
            if max_norm_space {
                return Err(Error::UnsupportedSpace(
                    "polytope projection is offered in Euclidean spaces only".into(),
                ));
            }
            let verts: Vec<Vec<f64>> = vertices
                .iter()
                .map(|v| v.coords().unwrap().to_vec())
                .collect();
            let proj = polytope::project_hull(&verts, x.coords().unwrap(), tol, PROJECTION_MAX_ITER)?;
            Ok(SpacePoint::euclidean(proj.point))
        }
        ConvexSetDescriptor::SubtreeHull { generators } => {
            // The subtree is the union of the paths from the first generator
            // to every other; project onto each and keep the closest.
            let g0 = &generators[0];
            let mut best: Option<(f64, SpacePoint)> = None;
            if generators.len() == 1 {
                return Ok(g0.clone());
            }
            for g in &generators[1..] {
                let (_, z) = project_segment(space, g0, g, x)?;
                let d = space.distance(x, &z)?;
                if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                    best = Some((d, z));
                }
            }
            Ok(best.unwrap().1)
        }
        ConvexSetDescriptor::JamesSlice { radius, first_coord } => {
            let coords = x.coords().unwrap();
            Ok(SpacePoint::max_norm(slice_clamp(coords, *radius, *first_coord)))
        }
    }
}

/// Clamp-and-scale construction for slice projection: fix the first
/// coordinate, clamp the tail to the nonnegative orthant, then scale the
/// tail radially until the norm constraint holds.
pub(crate) fn slice_clamp(coords: &[f64], radius: f64, first_coord: f64) -> Vec<f64> {
    let mut z: Vec<f64> = coords.iter().map(|&c| c.max(0.0)).collect();
    z[0] = first_coord;
    let m_inf = z[1..].iter().fold(0.0f64, |m, &c| m.max(c));
    let q: f64 = z[1..].iter().map(|&c| c * c).sum();
    let mut s = 1.0f64;
    if m_inf > 0.0 {
        s = s.min(radius / m_inf);
    }
    if q > 0.0 {
        s = s.min(((2.0 * radius * radius - first_coord * first_coord) / q).sqrt());
    }
    if s < 1.0 {
        for c in z[1..].iter_mut() {
            *c *= s;
        }
    }
    z
}

/// Projection onto the geodesic segment [a, b], returned as (parameter, point).
///
/// Euclidean, hyperbolic and tree segments admit exact foot-of-perpendicular
/// constructions; the max-norm space falls back to ternary search on the
/// (convex) distance along the segment. Pure function evaluation cannot
/// localize a flat quadratic minimum below ~sqrt(machine eps), which is why
/// the closed forms are used wherever the law suites need 1e-9 accuracy.
pub fn project_segment(
    space: &SpaceDescriptor,
    a: &SpacePoint,
    b: &SpacePoint,
    x: &SpacePoint,
) -> Result<(f64, SpacePoint)> {
    space.check_point(a)?;
    space.check_point(b)?;
    space.check_point(x)?;
    let t = match (space, a, b, x) {
        (
            SpaceDescriptor::Euclidean { .. },
            SpacePoint::Euclidean { coords: pa },
            SpacePoint::Euclidean { coords: pb },
            SpacePoint::Euclidean { coords: px },
        ) => {
            let dd: f64 = pa.iter().zip(pb).map(|(u, v)| (v - u) * (v - u)).sum();
            if dd <= 0.0 {
                0.0
            } else {
                let num: f64 = px
                    .iter()
                    .zip(pa.iter().zip(pb))
                    .map(|(xk, (ak, bk))| (xk - ak) * (bk - ak))
                    .sum();
                (num / dd).clamp(0.0, 1.0)
            }
        }
        (
            SpaceDescriptor::HyperbolicPlane,
            SpacePoint::Hyperboloid { coords: pa },
            SpacePoint::Hyperboloid { coords: pb },
            SpacePoint::Hyperboloid { coords: px },
        ) => {
            let d = crate::space::hyperbolic::distance(pa, pb);
            if d < 1e-14 {
                0.0
            } else {
                // Unit tangent at a toward b; minimize ⟨x, cosh(s)a + sinh(s)u⟩.
                let (ch, sh) = (d.cosh(), d.sinh());
                let u = [
                    (pb[0] - ch * pa[0]) / sh,
                    (pb[1] - ch * pa[1]) / sh,
                    (pb[2] - ch * pa[2]) / sh,
                ];
                let big_a = crate::space::hyperbolic::minkowski(px, pa);
                let big_b = crate::space::hyperbolic::minkowski(px, &u);
                // ⟨x,a⟩² − ⟨x,u⟩² ≥ 1 on the sheet, so the ratio is in (−1, 1).
                let s = (-big_b / big_a).atanh();
                (s / d).clamp(0.0, 1.0)
            }
        }
        (
            SpaceDescriptor::MetricTree(tr),
            SpacePoint::Tree { edge: ea, offset: ta },
            SpacePoint::Tree { edge: eb, offset: tb },
            SpacePoint::Tree { edge: ex, offset: tx },
        ) => {
            // The nearest point of a tree segment is the median of (x, a, b).
            let dab = tr.point_distance(*ea, *ta, *eb, *tb);
            if dab < 1e-14 {
                0.0
            } else {
                let dxa = tr.point_distance(*ex, *tx, *ea, *ta);
                let dxb = tr.point_distance(*ex, *tx, *eb, *tb);
                ((dxa + dab - dxb) / (2.0 * dab)).clamp(0.0, 1.0)
            }
        }
        _ => {
            let f = |t: f64| -> Result<f64> {
                let z = space.combine(a, b, t)?;
                space.distance(x, &z)
            };
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..200 {
                if hi - lo < SEGMENT_PARAM_TOL {
                    break;
                }
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if f(m1)? <= f(m2)? {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            0.5 * (lo + hi)
        }
    };
    let z = space.combine(a, b, t)?;
    Ok((t, z))
}

/// Seeded random point inside the set (coverage, not uniformity).
pub fn sample_point<R: Rng>(
    space: &SpaceDescriptor,
    set: &ConvexSetDescriptor,
    rng: &mut R,
) -> Result<SpacePoint> {
    match set {
        ConvexSetDescriptor::Segment { a, b } => space.combine(a, b, rng.random_range(0.0..=1.0)),
        ConvexSetDescriptor::Ball { center, radius } => {
            let q = space.random_point(rng);
            let d = space.distance(center, &q)?;
            if d < 1e-12 {
                return Ok(center.clone());
            }
            let u: f64 = rng.random_range(0.0..=1.0);
            space.combine(center, &q, (u * radius / d).min(1.0))
        }
        ConvexSetDescriptor::Polytope { vertices } => {
            let mut w: Vec<f64> = (0..vertices.len())
                .map(|_| -(rng.random_range(f64::MIN_POSITIVE..1.0f64)).ln())
                .collect();
            let total: f64 = w.iter().sum();
            for wi in &mut w {
                *wi /= total;
            }
            let dim = vertices[0].coords().unwrap().len();
            let mut z = vec![0.0; dim];
            for (wi, v) in w.iter().zip(vertices) {
                for (zk, vk) in z.iter_mut().zip(v.coords().unwrap()) {
                    *zk += wi * vk;
                }
            }
            Ok(match space {
                SpaceDescriptor::MaxNormSeq { .. } => SpacePoint::max_norm(z),
                _ => SpacePoint::euclidean(z),
            })
        }
        ConvexSetDescriptor::SubtreeHull { generators } => {
            let i = rng.random_range(0..generators.len());
            let j = rng.random_range(0..generators.len());
            space.combine(&generators[i], &generators[j], rng.random_range(0.0..=1.0))
        }
        ConvexSetDescriptor::JamesSlice { radius, first_coord } => {
            let dim = match space {
                SpaceDescriptor::MaxNormSeq { dim } => *dim,
                _ => return Err(Error::InvalidSet("slices live in the max-norm space".into())),
            };
            let mut raw = vec![0.0; dim];
            for c in raw.iter_mut().skip(1) {
                *c = rng.random_range(0.0..=*radius);
            }
            raw[0] = *first_coord;
            Ok(SpacePoint::max_norm(slice_clamp(&raw, *radius, *first_coord)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{MetricTree, TreeEdge};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tree_space() -> SpaceDescriptor {
        SpaceDescriptor::metric_tree(
            MetricTree::new(
                vec!["r".into(), "a".into(), "b".into(), "c".into(), "d".into()],
                vec![
                    TreeEdge { a: "r".into(), b: "a".into(), len: 1.0 },
                    TreeEdge { a: "r".into(), b: "b".into(), len: 2.0 },
                    TreeEdge { a: "b".into(), b: "c".into(), len: 0.5 },
                    TreeEdge { a: "b".into(), b: "d".into(), len: 1.5 },
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn segment_orthogonal_foot() {
        let s = SpaceDescriptor::euclidean(2);
        let seg = ConvexSetDescriptor::segment(
            SpacePoint::euclidean([-1.0, 0.0]),
            SpacePoint::euclidean([1.0, 0.0]),
        );
        let z = project(&s, &seg, &SpacePoint::euclidean([0.0, 2.0]), 1e-10).unwrap();
        let zc = z.coords().unwrap();
        assert!(zc[0].abs() < 1e-9 && zc[1].abs() < 1e-12, "{zc:?}");
    }

    #[test]
    fn ball_radial_projection() {
        let s = SpaceDescriptor::euclidean(2);
        let ball = ConvexSetDescriptor::ball(SpacePoint::euclidean([1.0, 1.0]), 2.0);
        let x = SpacePoint::euclidean([1.0, 6.0]);
        let z = project(&s, &ball, &x, 1e-10).unwrap();
        // Distance 5 > 2, so z = combine(c, x, 2/5) = (1, 3).
        let zc = z.coords().unwrap();
        assert!((zc[0] - 1.0).abs() < 1e-12 && (zc[1] - 3.0).abs() < 1e-12);
        assert!(contains(&s, &ball, &ball_center(&ball), 1e-12).unwrap());
    }

    fn ball_center(set: &ConvexSetDescriptor) -> SpacePoint {
        match set {
            ConvexSetDescriptor::Ball { center, .. } => center.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn subtree_gate_vertex_matches_brute_force() {
        let s = tree_space();
        // Hull of leaves c and d spans c--b--d; project leaf a onto it.
        let hull = ConvexSetDescriptor::subtree_hull(vec![
            SpacePoint::tree(2, 0.5), // c
            SpacePoint::tree(3, 1.5), // d
        ]);
        let x = SpacePoint::tree(0, 1.0); // leaf a
        let z = project(&s, &hull, &x, 1e-10).unwrap();
        // Gate is vertex b: on edge r-b at offset 2 (or equivalent).
        let d_gate = s.distance(&x, &z).unwrap();
        // Brute-force oracle over a fine discretization of the hull paths.
        let mut best = f64::INFINITY;
        let gens = [SpacePoint::tree(2, 0.5), SpacePoint::tree(3, 1.5)];
        for k in 0..=2000 {
            let t = k as f64 / 2000.0;
            let p = s.combine(&gens[0], &gens[1], t).unwrap();
            best = best.min(s.distance(&x, &p).unwrap());
        }
        assert!((d_gate - best).abs() < 1e-6, "gate {d_gate} vs oracle {best}");
        assert!((d_gate - 3.0).abs() < 1e-9); // a -> r (1) -> b (2)
        assert!(contains(&s, &hull, &z, 1e-7).unwrap());
    }

    #[test]
    fn slice_metric_projection_from_above() {
        let s = SpaceDescriptor::max_norm_seq(4);
        let a = ConvexSetDescriptor::james_slice(1.0, 1.0);
        // 2e1 projects to distance exactly 1.
        let x = SpacePoint::max_norm([2.0, 0.0, 0.0, 0.0]);
        let z = project(&s, &a, &x, 1e-10).unwrap();
        assert!(contains(&s, &a, &z, 1e-9).unwrap());
        assert!((s.distance(&x, &z).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slice_rejects_inconsistent_descriptor() {
        let s = SpaceDescriptor::max_norm_seq(3);
        let bad = ConvexSetDescriptor::james_slice(1.0, 1.5);
        assert!(matches!(bad.validate(&s), Err(Error::InvalidSet(_))));
    }

    #[test]
    fn slice_membership_examples() {
        let s = SpaceDescriptor::max_norm_seq(8);
        let a = ConvexSetDescriptor::james_slice(1.0, 1.0);
        let e1 = SpacePoint::max_norm([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(contains(&s, &a, &e1, 1e-12).unwrap());
        let neg = SpacePoint::max_norm([1.0, -0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(!contains(&s, &a, &neg, 1e-12).unwrap());
        // e1 + e5 has norm max{1, sqrt(2)/sqrt(2)} = 1.
        let e15 = SpacePoint::max_norm([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(contains(&s, &a, &e15, 1e-12).unwrap());
    }

    #[test]
    fn projection_postconditions_sampled() {
        // project(x) is in the set, no sampled member is closer, projecting a
        // member returns it, and the ray property holds.
        let tree = tree_space();
        let e2 = SpaceDescriptor::euclidean(2);
        let hyp = SpaceDescriptor::hyperbolic_plane();
        let cases: Vec<(SpaceDescriptor, ConvexSetDescriptor)> = vec![
            (
                e2.clone(),
                ConvexSetDescriptor::segment(
                    SpacePoint::euclidean([-1.0, -0.5]),
                    SpacePoint::euclidean([2.0, 1.0]),
                ),
            ),
            (e2.clone(), ConvexSetDescriptor::ball(SpacePoint::euclidean([0.5, -0.25]), 1.2)),
            (
                e2.clone(),
                ConvexSetDescriptor::polytope(vec![
                    SpacePoint::euclidean([-2.0, -1.0]),
                    SpacePoint::euclidean([-1.0, -1.0]),
                    SpacePoint::euclidean([-1.0, 1.0]),
                    SpacePoint::euclidean([-2.0, 1.0]),
                ]),
            ),
            (
                hyp.clone(),
                ConvexSetDescriptor::segment(
                    SpacePoint::hyperboloid([1.0, 0.0, 0.0]),
                    SpacePoint::hyperboloid([2f64.cosh(), 2f64.sinh(), 0.0]),
                ),
            ),
            (hyp, ConvexSetDescriptor::ball(SpacePoint::hyperboloid([1.0, 0.0, 0.0]), 1.0)),
            (
                tree.clone(),
                ConvexSetDescriptor::subtree_hull(vec![
                    SpacePoint::tree(2, 0.5),
                    SpacePoint::tree(3, 1.5),
                    SpacePoint::tree(1, 0.3),
                ]),
            ),
        ];
        for (space, set) in &cases {
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            for _ in 0..200 {
                let x = space.random_point(&mut rng);
                let z = project(space, set, &x, 1e-10).unwrap();
                assert!(contains(space, set, &z, 1e-7).unwrap(), "{set:?}");
                let dz = space.distance(&x, &z).unwrap();
                for _ in 0..20 {
                    let w = sample_point(space, set, &mut rng).unwrap();
                    assert!(
                        dz <= space.distance(&x, &w).unwrap() + 1e-8,
                        "{} {set:?}",
                        space.kind_label()
                    );
                }
                // Idempotence and membership consistency.
                let zz = project(space, set, &z, 1e-10).unwrap();
                assert!(space.distance(&z, &zz).unwrap() <= 1e-7);
                // Ray property.
                let t: f64 = rng.random_range(0.0..=1.0);
                let y = space.combine(&x, &z, t).unwrap();
                let zy = project(space, set, &y, 1e-10).unwrap();
                assert!(space.distance(&z, &zy).unwrap() <= 1e-7, "{}", space.kind_label());
            }
        }
    }

    #[test]
    fn closed_form_feet_agree_with_ternary_search() {
        // Independent route: minimize d(x, c(t)) by interval search. The
        // search localizes flat minima only to ~1e-8, so compare distances.
        let tree = tree_space();
        let spaces = [SpaceDescriptor::euclidean(3), SpaceDescriptor::hyperbolic_plane(), tree];
        for space in &spaces {
            let mut rng = ChaCha8Rng::seed_from_u64(91);
            for _ in 0..100 {
                let a = space.random_point(&mut rng);
                let b = space.random_point(&mut rng);
                let x = space.random_point(&mut rng);
                let (_, z) = project_segment(space, &a, &b, &x).unwrap();
                let f = |t: f64| {
                    let p = space.combine(&a, &b, t).unwrap();
                    space.distance(&x, &p).unwrap()
                };
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                for _ in 0..120 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if f(m1) <= f(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let oracle = f(0.5 * (lo + hi));
                let got = space.distance(&x, &z).unwrap();
                assert!(got <= oracle + 1e-7, "{}: {got} vs {oracle}", space.kind_label());
            }
        }
    }

    #[test]
    fn unsupported_combinations_error() {
        let mn = SpaceDescriptor::max_norm_seq(3);
        let ball = ConvexSetDescriptor::ball(SpacePoint::max_norm([0.0, 0.0, 0.0]), 1.0);
        assert!(matches!(
            project(&mn, &ball, &SpacePoint::max_norm([2.0, 0.0, 0.0]), 1e-9),
            Err(Error::UnsupportedSpace(_))
        ));
        let hyp = SpaceDescriptor::hyperbolic_plane();
        let poly = ConvexSetDescriptor::polytope(vec![SpacePoint::hyperboloid([1.0, 0.0, 0.0])]);
        assert!(matches!(poly.validate(&hyp), Err(Error::InvalidSet(_))));
    }

    #[test]
    fn set_json_shape() {
        let set = ConvexSetDescriptor::james_slice(2.0, 2.0);
        assert_eq!(
            serde_json::to_string(&set).unwrap(),
            r#"{"type":"james-slice","radius":2.0,"first_coord":2.0}"#
        );
        let seg = ConvexSetDescriptor::segment(
            SpacePoint::euclidean([0.0]),
            SpacePoint::euclidean([1.0]),
        );
        let js = serde_json::to_string(&seg).unwrap();
        assert!(js.starts_with(r#"{"type":"segment""#));
    }
}
