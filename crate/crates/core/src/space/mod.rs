//! The four concrete model spaces and their primitive geodesic operations.

pub mod hyperbolic;
pub mod tree;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use tree::{MetricTree, TreeEdge};

use crate::error::{Error, Result};

/// A point in one of the model spaces. Points are plain values and carry no
/// back-reference to their space; every operation takes the descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpacePoint {
    Euclidean { coords: Vec<f64> },
    Hyperboloid { coords: [f64; 3] },
    Tree { edge: usize, offset: f64 },
    MaxNorm { coords: Vec<f64> },
}

impl SpacePoint {
    pub fn euclidean(coords: impl Into<Vec<f64>>) -> Self {
        SpacePoint::Euclidean { coords: coords.into() }
    }

    pub fn hyperboloid(coords: [f64; 3]) -> Self {
        SpacePoint::Hyperboloid { coords }
    }

    pub fn tree(edge: usize, offset: f64) -> Self {
        SpacePoint::Tree { edge, offset }
    }

    pub fn max_norm(coords: impl Into<Vec<f64>>) -> Self {
        SpacePoint::MaxNorm { coords: coords.into() }
    }

    /// Coordinates of a Euclidean or max-norm point.
    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            SpacePoint::Euclidean { coords } | SpacePoint::MaxNorm { coords } => Some(coords),
            _ => None,
        }
    }
}

/// Which model space an instance lives in.
///
/// The property flags are fixed by the kind: Euclidean spaces, the hyperbolic
/// plane and metric trees are CAT(0), Busemann convex and uniformly convex;
/// the max-norm sequence space is none of the three (its designated geodesics
/// are linear segments, but they are not unique).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpaceDescriptor {
    Euclidean { dim: usize },
    HyperbolicPlane,
    MetricTree(MetricTree),
    MaxNormSeq { dim: usize },
}

impl SpaceDescriptor {
    pub fn euclidean(dim: usize) -> Self {
        SpaceDescriptor::Euclidean { dim }
    }

    pub fn hyperbolic_plane() -> Self {
        SpaceDescriptor::HyperbolicPlane
    }

    pub fn metric_tree(tree: MetricTree) -> Self {
        SpaceDescriptor::MetricTree(tree)
    }

    pub fn max_norm_seq(dim: usize) -> Self {
        SpaceDescriptor::MaxNormSeq { dim }
    }

    pub fn is_cat0(&self) -> bool {
        !matches!(self, SpaceDescriptor::MaxNormSeq { .. })
    }

    pub fn is_busemann(&self) -> bool {
        !matches!(self, SpaceDescriptor::MaxNormSeq { .. })
    }

    pub fn is_uniformly_convex(&self) -> bool {
        !matches!(self, SpaceDescriptor::MaxNormSeq { .. })
    }

    /// Short label used in reports, e.g. "euclidean-3" or "metric-tree-4v".
    pub fn kind_label(&self) -> String {
        match self {
            SpaceDescriptor::Euclidean { dim } => format!("euclidean-{dim}"),
            SpaceDescriptor::HyperbolicPlane => "hyperbolic-plane".into(),
            SpaceDescriptor::MetricTree(t) => format!("metric-tree-{}v", t.vertices.len()),
            SpaceDescriptor::MaxNormSeq { dim } => format!("max-norm-seq-{dim}"),
        }
    }

    pub fn tree(&self) -> Option<&MetricTree> {
        match self {
            SpaceDescriptor::MetricTree(t) => Some(t),
            _ => None,
        }
    }

    /// Checks that a point belongs to this space (kind, dimension and the
    /// per-kind invariants).
    pub fn check_point(&self, p: &SpacePoint) -> Result<()> {
        match (self, p) {
            (SpaceDescriptor::Euclidean { dim }, SpacePoint::Euclidean { coords }) => {
                if coords.len() != *dim {
                    return Err(Error::InvalidPoint(format!(
                        "expected {dim} coordinates, got {}",
                        coords.len()
                    )));
                }
                Ok(())
            }
            (SpaceDescriptor::HyperbolicPlane, SpacePoint::Hyperboloid { coords }) => {
                hyperbolic::check_on_sheet(coords)
            }
            (SpaceDescriptor::MetricTree(t), SpacePoint::Tree { edge, offset }) => {
                t.check_point(*edge, *offset)
            }
            (SpaceDescriptor::MaxNormSeq { dim }, SpacePoint::MaxNorm { coords }) => {
                if coords.len() != *dim {
                    return Err(Error::InvalidPoint(format!(
                        "expected {dim} coordinates, got {}",
                        coords.len()
                    )));
                }
                Ok(())
            }
            _ => Err(Error::InvalidPoint(format!(
                "point kind does not match space {}",
                self.kind_label()
            ))),
        }
    }

    /// The metric.
    pub fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(match (self, x, y) {
            (
                SpaceDescriptor::Euclidean { .. },
                SpacePoint::Euclidean { coords: a },
                SpacePoint::Euclidean { coords: b },
            ) => euclidean_distance(a, b),
            (
                SpaceDescriptor::HyperbolicPlane,
                SpacePoint::Hyperboloid { coords: a },
                SpacePoint::Hyperboloid { coords: b },
            ) => hyperbolic::distance(a, b),
            (
                SpaceDescriptor::MetricTree(t),
                SpacePoint::Tree { edge: e1, offset: t1 },
                SpacePoint::Tree { edge: e2, offset: t2 },
            ) => t.point_distance(*e1, *t1, *e2, *t2),
            (
                SpaceDescriptor::MaxNormSeq { .. },
                SpacePoint::MaxNorm { coords: a },
                SpacePoint::MaxNorm { coords: b },
            ) => max_norm_distance(a, b),
            _ => unreachable!("check_point enforces matching kinds"),
        })
    }

    /// The point z on a geodesic from x to y with d(x,z) = t·d(x,y).
    ///
    /// For the max-norm space the designated geodesics are linear segments.
    pub fn combine(&self, x: &SpacePoint, y: &SpacePoint, t: f64) -> Result<SpacePoint> {
        if !(0.0..=1.0).contains(&t) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "geodesic parameter {t} outside [0, 1]"
            )));
        }
        self.check_point(x)?;
        self.check_point(y)?;
        if t == 0.0 {
            return Ok(x.clone());
        }
        if t == 1.0 {
            return Ok(y.clone());
        }
        Ok(match (self, x, y) {
            (
                SpaceDescriptor::Euclidean { .. },
                SpacePoint::Euclidean { coords: a },
                SpacePoint::Euclidean { coords: b },
            ) => SpacePoint::euclidean(lerp(a, b, t)),
            (
                SpaceDescriptor::HyperbolicPlane,
                SpacePoint::Hyperboloid { coords: a },
                SpacePoint::Hyperboloid { coords: b },
            ) => SpacePoint::hyperboloid(hyperbolic::combine(a, b, t)),
            (
                SpaceDescriptor::MetricTree(tr),
                SpacePoint::Tree { edge: e1, offset: t1 },
                SpacePoint::Tree { edge: e2, offset: t2 },
            ) => {
                let d = tr.point_distance(*e1, *t1, *e2, *t2);
                let (e, off) = tr.point_walk(*e1, *t1, *e2, *t2, t * d);
                SpacePoint::tree(e, off)
            }
            (
                SpaceDescriptor::MaxNormSeq { .. },
                SpacePoint::MaxNorm { coords: a },
                SpacePoint::MaxNorm { coords: b },
            ) => SpacePoint::max_norm(lerp(a, b, t)),
            _ => unreachable!("check_point enforces matching kinds"),
        })
    }

    pub fn midpoint(&self, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        self.combine(x, y, 0.5)
    }

    /// Seeded random point generation. Euclidean: standard normal coordinates;
    /// hyperboloid: exponential of a tangent vector of norm ≤ 3 at a random
    /// base; tree: uniform edge then uniform offset; max-norm: uniform in
    /// [−2, 2]^n.
    pub fn random_point<R: Rng>(&self, rng: &mut R) -> SpacePoint {
        match self {
            SpaceDescriptor::Euclidean { dim } => {
                SpacePoint::euclidean((0..*dim).map(|_| normal(rng)).collect::<Vec<_>>())
            }
            SpaceDescriptor::HyperbolicPlane => {
                let base = hyperbolic::exp_map(&[1.0, 0.0, 0.0], &random_tangent(rng, &[1.0, 0.0, 0.0]));
                SpacePoint::hyperboloid(hyperbolic::exp_map(&base, &random_tangent(rng, &base)))
            }
            SpaceDescriptor::MetricTree(t) => {
                let e = rng.random_range(0..t.edges.len());
                let off = rng.random_range(0.0..=t.edges[e].len);
                SpacePoint::tree(e, off)
            }
            SpaceDescriptor::MaxNormSeq { dim } => SpacePoint::max_norm(
                (0..*dim).map(|_| rng.random_range(-2.0..=2.0)).collect::<Vec<_>>(),
            ),
        }
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// max{‖v‖_∞, ‖v‖₂/√2}.
pub fn max_norm(v: &[f64]) -> f64 {
    let linf = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let l2 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    linf.max(l2 / std::f64::consts::SQRT_2)
}

pub fn max_norm_distance(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    max_norm(&diff)
}

/// Standard normal via Box-Muller.
pub(crate) fn normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random tangent vector at a hyperboloid point, with norm ≤ 3.
fn random_tangent<R: Rng>(rng: &mut R, base: &[f64; 3]) -> [f64; 3] {
    let raw = [normal(rng), normal(rng), normal(rng)];
    let v = hyperbolic::tangent_project(base, &raw);
    let n = hyperbolic::tangent_norm(&v);
    if n < 1e-12 {
        return [0.0, 0.0, 0.0];
    }
    let target = rng.random_range(0.0..=3.0);
    let s = target / n;
    [v[0] * s, v[1] * s, v[2] * s]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn euclidean_pythagoras() {
        let s = SpaceDescriptor::euclidean(2);
        let d = s
            .distance(&SpacePoint::euclidean([0.0, 0.0]), &SpacePoint::euclidean([3.0, 4.0]))
            .unwrap();
        assert!((d - 5.0).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_unit_distance() {
        let s = SpaceDescriptor::hyperbolic_plane();
        let d = s
            .distance(
                &SpacePoint::hyperboloid([1.0, 0.0, 0.0]),
                &SpacePoint::hyperboloid([1f64.cosh(), 1f64.sinh(), 0.0]),
            )
            .unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kind_mismatch_is_invalid_point() {
        let s = SpaceDescriptor::euclidean(2);
        let err = s
            .distance(&SpacePoint::euclidean([0.0, 0.0]), &SpacePoint::max_norm([0.0, 0.0]))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidPoint(_)));
    }

    #[test]
    fn dimension_mismatch_is_invalid_point() {
        let s = SpaceDescriptor::euclidean(3);
        assert!(s.check_point(&SpacePoint::euclidean([0.0, 0.0])).is_err());
    }

    #[test]
    fn off_sheet_point_rejected() {
        let s = SpaceDescriptor::hyperbolic_plane();
        assert!(s.check_point(&SpacePoint::hyperboloid([1.0, 0.5, 0.0])).is_err());
    }

    #[test]
    fn combine_endpoints_exact() {
        let s = SpaceDescriptor::euclidean(2);
        let x = SpacePoint::euclidean([0.25, -1.5]);
        let y = SpacePoint::euclidean([2.0, 2.0]);
        assert_eq!(s.combine(&x, &y, 0.0).unwrap(), x);
        assert_eq!(s.combine(&x, &y, 1.0).unwrap(), y);
        let m = s.combine(&SpacePoint::euclidean([0.0, 0.0]), &SpacePoint::euclidean([2.0, 2.0]), 0.5).unwrap();
        assert_eq!(m, SpacePoint::euclidean([1.0, 1.0]));
    }

    #[test]
    fn combine_rejects_out_of_range_parameter() {
        let s = SpaceDescriptor::euclidean(1);
        let x = SpacePoint::euclidean([0.0]);
        let y = SpacePoint::euclidean([1.0]);
        assert!(matches!(s.combine(&x, &y, 1.5), Err(Error::InvalidParameter(_))));
        assert!(matches!(s.combine(&x, &y, -0.1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn tree_combine_walks_arc_length() {
        // Oracle: walk the unique tree path and consume arc length.
        let t = MetricTree::new(
            vec!["r".into(), "a".into(), "b".into()],
            vec![
                TreeEdge { a: "r".into(), b: "a".into(), len: 1.0 },
                TreeEdge { a: "r".into(), b: "b".into(), len: 3.0 },
            ],
        )
        .unwrap();
        let s = SpaceDescriptor::metric_tree(t);
        // Path from leaf a (edge 0, off 1) to (edge 1, off 3): length 4.
        let x = SpacePoint::tree(0, 1.0);
        let y = SpacePoint::tree(1, 3.0);
        let z = s.combine(&x, &y, 0.25).unwrap();
        // Arc length 1 from x is exactly the junction r; canonically edge 0 offset 0.
        let d = s.distance(&x, &z).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        let z2 = s.combine(&x, &y, 0.5).unwrap();
        assert_eq!(z2, SpacePoint::tree(1, 1.0));
    }

    #[test]
    fn metric_axioms_hold_on_samples() {
        let tree = MetricTree::new(
            vec!["r".into(), "a".into(), "b".into(), "c".into()],
            vec![
                TreeEdge { a: "r".into(), b: "a".into(), len: 1.0 },
                TreeEdge { a: "r".into(), b: "b".into(), len: 2.0 },
                TreeEdge { a: "b".into(), b: "c".into(), len: 0.5 },
            ],
        )
        .unwrap();
        let spaces = [
            SpaceDescriptor::euclidean(3),
            SpaceDescriptor::hyperbolic_plane(),
            SpaceDescriptor::metric_tree(tree),
            SpaceDescriptor::max_norm_seq(4),
        ];
        for space in &spaces {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..10_000 {
                let x = space.random_point(&mut rng);
                let y = space.random_point(&mut rng);
                let z = space.random_point(&mut rng);
                let dxy = space.distance(&x, &y).unwrap();
                let dyx = space.distance(&y, &x).unwrap();
                let dxz = space.distance(&x, &z).unwrap();
                let dyz = space.distance(&y, &z).unwrap();
                assert!(dxy >= 0.0);
                assert!((dxy - dyx).abs() <= 1e-12 * dxy.max(1.0), "{}", space.kind_label());
                assert!((space.distance(&x, &x).unwrap()).abs() <= 1e-12);
                assert!(
                    dxz <= dxy + dyz + 1e-9 * (dxz.max(1.0)),
                    "triangle violated on {}: {dxz} > {dxy} + {dyz}",
                    space.kind_label()
                );
            }
        }
    }

    #[test]
    fn geodesic_parametrization_property() {
        let tree = MetricTree::new(
            vec!["r".into(), "a".into(), "b".into(), "c".into()],
            vec![
                TreeEdge { a: "r".into(), b: "a".into(), len: 1.0 },
                TreeEdge { a: "r".into(), b: "b".into(), len: 2.0 },
                TreeEdge { a: "b".into(), b: "c".into(), len: 0.5 },
            ],
        )
        .unwrap();
        let spaces = [
            SpaceDescriptor::euclidean(2),
            SpaceDescriptor::hyperbolic_plane(),
            SpaceDescriptor::metric_tree(tree),
            SpaceDescriptor::max_norm_seq(3),
        ];
        for space in &spaces {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..2_000 {
                let x = space.random_point(&mut rng);
                let y = space.random_point(&mut rng);
                let d = space.distance(&x, &y).unwrap();
                let t: f64 = rng.random_range(0.0..=1.0);
                let u: f64 = rng.random_range(0.0..=1.0);
                let zt = space.combine(&x, &y, t).unwrap();
                let zu = space.combine(&x, &y, u).unwrap();
                let got = space.distance(&zt, &zu).unwrap();
                let want = (t - u).abs() * d;
                assert!(
                    (got - want).abs() <= 1e-9 * d.max(1.0),
                    "{}: |{got} - {want}| too large",
                    space.kind_label()
                );
            }
        }
    }

    #[test]
    fn hyperboloid_closure_under_combine() {
        let s = SpaceDescriptor::hyperbolic_plane();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2_000 {
            let x = s.random_point(&mut rng);
            let y = s.random_point(&mut rng);
            let t: f64 = rng.random_range(0.0..=1.0);
            let z = s.combine(&x, &y, t).unwrap();
            if let SpacePoint::Hyperboloid { coords } = z {
                assert!((hyperbolic::minkowski(&coords, &coords) - 1.0).abs() < 1e-9);
            } else {
                panic!("wrong kind");
            }
        }
    }

    #[test]
    fn point_json_shape() {
        let p = SpacePoint::tree(1, 0.5);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"kind":"tree","edge":1,"offset":0.5}"#
        );
        let q = SpacePoint::euclidean([1.0, 2.0]);
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"{"kind":"euclidean","coords":[1.0,2.0]}"#
        );
    }
}
