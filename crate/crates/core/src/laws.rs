//! Sampling-based verification of the metric inequalities and geometric laws
//! satisfied by the model spaces.
//!
//! Margins are normalized slacks: a sample violates its law iff
//! margin < −tol, and `worst_margin` is the most negative margin seen.
//! Reports are bit-for-bit reproducible from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{self, ConvexSetDescriptor};
use crate::space::{euclidean_distance, SpaceDescriptor, SpacePoint};

/// The verifiable laws. Each maps to exactly one checking procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawId {
    GeodesicParam,
    ConvexMetric,
    Busemann,
    Cat0FourPoint,
    ComparisonTriangle,
    ParallelTransfer,
    StrictConvexity,
    ProjectionNonexpansive,
    ProjectionRay,
}

pub const ALL_LAWS: [LawId; 9] = [
    LawId::GeodesicParam,
    LawId::ConvexMetric,
    LawId::Busemann,
    LawId::Cat0FourPoint,
    LawId::ComparisonTriangle,
    LawId::ParallelTransfer,
    LawId::StrictConvexity,
    LawId::ProjectionNonexpansive,
    LawId::ProjectionRay,
];

impl LawId {
    pub fn as_str(&self) -> &'static str {
        match self {
            LawId::GeodesicParam => "geodesic-param",
            LawId::ConvexMetric => "convex-metric",
            LawId::Busemann => "busemann",
            LawId::Cat0FourPoint => "cat0-four-point",
            LawId::ComparisonTriangle => "comparison-triangle",
            LawId::ParallelTransfer => "parallel-transfer",
            LawId::StrictConvexity => "strict-convexity",
            LawId::ProjectionNonexpansive => "projection-nonexpansive",
            LawId::ProjectionRay => "projection-ray",
        }
    }
}

impl std::str::FromStr for LawId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_LAWS
            .iter()
            .copied()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown law {s:?}")))
    }
}

impl std::fmt::Display for LawId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a law run (also reused by the map checks, which report under
/// ids outside the nine-law enumeration).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub space: String,
    pub samples_run: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub witness: Option<Vec<SpacePoint>>,
    pub seed: u64,
}

/// Accumulates per-sample margins into a report.
pub(crate) struct MarginAccumulator {
    samples_run: usize,
    violations: usize,
    worst: f64,
    witness: Option<Vec<SpacePoint>>,
    informative: bool,
    tol: f64,
}

impl MarginAccumulator {
    pub fn new(tol: f64) -> Self {
        MarginAccumulator {
            samples_run: 0,
            violations: 0,
            worst: f64::INFINITY,
            witness: None,
            informative: false,
            tol,
        }
    }

    /// Records a sample that produced no checkable configuration.
    pub fn skip(&mut self) {
        self.samples_run += 1;
    }

    pub fn record(&mut self, margin: f64, witness: impl FnOnce() -> Vec<SpacePoint>) {
        self.samples_run += 1;
        self.informative = true;
        if margin < self.worst {
            self.worst = margin;
        }
        if margin < -self.tol {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn finish(self, law: &str, space: &SpaceDescriptor, seed: u64) -> LawReport {
        LawReport {
            law: law.to_string(),
            space: space.kind_label(),
            samples_run: self.samples_run,
            violations: self.violations,
            worst_margin: if self.informative { self.worst } else { 0.0 },
            witness: self.witness,
            seed,
        }
    }
}

/// Four-point inequality characterizing CAT(0) spaces:
/// d(x,z)² + d(y,p)² ≤ d(x,y)² + d(y,z)² + d(z,p)² + d(p,x)² (+ tol).
pub fn four_point_holds(
    space: &SpaceDescriptor,
    x: &SpacePoint,
    y: &SpacePoint,
    z: &SpacePoint,
    p: &SpacePoint,
    tol: f64,
) -> Result<bool> {
    let lhs = space.distance(x, z)?.powi(2) + space.distance(y, p)?.powi(2);
    let rhs = space.distance(x, y)?.powi(2)
        + space.distance(y, z)?.powi(2)
        + space.distance(z, p)?.powi(2)
        + space.distance(p, x)?.powi(2);
    Ok(lhs <= rhs + tol)
}

/// Whether the segments [a1, a2] and [b1, b2] are parallel: the endpoint
/// distances d(a1,b1), d(a2,b2) and the midpoint distance must agree.
pub fn parallel_to(
    space: &SpaceDescriptor,
    a1: &SpacePoint,
    a2: &SpacePoint,
    b1: &SpacePoint,
    b2: &SpacePoint,
    tol: f64,
) -> Result<bool> {
    if matches!(space, SpaceDescriptor::MaxNormSeq { .. }) {
        return Err(Error::UnsupportedSpace(
            "parallelism needs unique geodesics; the max-norm space has none".into(),
        ));
    }
    let m1 = space.midpoint(a1, a2)?;
    let m2 = space.midpoint(b1, b2)?;
    let d1 = space.distance(a1, b1)?;
    let dm = space.distance(&m1, &m2)?;
    let d2 = space.distance(a2, b2)?;
    Ok((d1 - dm).abs() <= tol && (dm - d2).abs() <= tol && (d1 - d2).abs() <= tol)
}

/// Runs `law` on `n_samples` seeded random configurations.
pub fn verify_law(
    space: &SpaceDescriptor,
    law: LawId,
    n_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<LawReport> {
    let max_norm_space = matches!(space, SpaceDescriptor::MaxNormSeq { .. });
    if law == LawId::ParallelTransfer && max_norm_space {
        return Err(Error::UnsupportedSpace(
            "parallel-transfer needs unique geodesics; the max-norm space has none".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = MarginAccumulator::new(tol);
    for i in 0..n_samples {
        match law {
            LawId::GeodesicParam => {
                let x = space.random_point(&mut rng);
                let y = space.random_point(&mut rng);
                let t: f64 = rng.random_range(0.0..=1.0);
                let u: f64 = rng.random_range(0.0..=1.0);
                let d = space.distance(&x, &y)?;
                let zt = space.combine(&x, &y, t)?;
                let zu = space.combine(&x, &y, u)?;
                let got = space.distance(&zt, &zu)?;
                let margin = -(got - (t - u).abs() * d).abs() / d.max(1.0);
                acc.record(margin, || vec![x, y, zt, zu]);
            }
            LawId::ConvexMetric => {
                let x = space.random_point(&mut rng);
                let y = space.random_point(&mut rng);
                let z = space.random_point(&mut rng);
                let t: f64 = rng.random_range(0.0..=1.0);
                let dxy = space.distance(&x, &y)?;
                let dxz = space.distance(&x, &z)?;
                let m = space.combine(&y, &z, t)?;
                let lhs = space.distance(&x, &m)?;
                let rhs = (1.0 - t) * dxy + t * dxz;
                let margin = (rhs - lhs) / dxy.max(dxz).max(1.0);
                acc.record(margin, || vec![x, y, z, m]);
            }
            LawId::Busemann => {
                let x1 = space.random_point(&mut rng);
                let y1 = space.random_point(&mut rng);
                let x2 = space.random_point(&mut rng);
                let y2 = space.random_point(&mut rng);
                let t: f64 = rng.random_range(0.0..=1.0);
                let c1 = space.combine(&x1, &y1, t)?;
                let c2 = space.combine(&x2, &y2, t)?;
                let d0 = space.distance(&x1, &x2)?;
                let d1 = space.distance(&y1, &y2)?;
                let lhs = space.distance(&c1, &c2)?;
                let rhs = (1.0 - t) * d0 + t * d1;
                let margin = (rhs - lhs) / d0.max(d1).max(1.0);
                acc.record(margin, || vec![x1, y1, x2, y2]);
            }
            LawId::Cat0FourPoint => {
                let x = space.random_point(&mut rng);
                let y = space.random_point(&mut rng);
                let z = space.random_point(&mut rng);
                let p = space.random_point(&mut rng);
                let dxz2 = space.distance(&x, &z)?.powi(2);
                let dyp2 = space.distance(&y, &p)?.powi(2);
                let dxy2 = space.distance(&x, &y)?.powi(2);
                let dyz2 = space.distance(&y, &z)?.powi(2);
                let dzp2 = space.distance(&z, &p)?.powi(2);
                let dpx2 = space.distance(&p, &x)?.powi(2);
                let scale = [dxz2, dyp2, dxy2, dyz2, dzp2, dpx2]
                    .into_iter()
                    .fold(1.0f64, f64::max);
                let margin = (dxy2 + dyz2 + dzp2 + dpx2 - dxz2 - dyp2) / scale;
                acc.record(margin, || vec![x, y, z, p]);
            }
            LawId::ComparisonTriangle => {
                comparison_triangle_sample(space, &mut rng, &mut acc)?;
            }
            LawId::ParallelTransfer => {
                parallel_transfer_sample(space, &mut rng, &mut acc)?;
            }
            LawId::StrictConvexity => {
                strict_convexity_sample(space, &mut rng, &mut acc)?;
            }
            LawId::ProjectionNonexpansive => {
                let set = random_convex_set(space, &mut rng, i)?;
                let x = space.random_point(&mut rng);
                let y = space.random_point(&mut rng);
                let px = sets::project(space, &set, &x, 1e-10)?;
                let py = sets::project(space, &set, &y, 1e-10)?;
                let dxy = space.distance(&x, &y)?;
                let dp = space.distance(&px, &py)?;
                let margin = (dxy - dp) / dxy.max(1.0);
                acc.record(margin, || vec![x, y, px, py]);
            }
            LawId::ProjectionRay => {
                let set = random_convex_set(space, &mut rng, i)?;
                let x = space.random_point(&mut rng);
                let t: f64 = rng.random_range(0.0..=1.0);
                let px = sets::project(space, &set, &x, 1e-10)?;
                let y = space.combine(&x, &px, t)?;
                let py = sets::project(space, &set, &y, 1e-10)?;
                let margin = -space.distance(&px, &py)? / space.distance(&x, &px)?.max(1.0);
                acc.record(margin, || vec![x, y, px, py]);
            }
        }
    }
    Ok(acc.finish(law.as_str(), space, seed))
}

fn comparison_triangle_sample<R: Rng>(
    space: &SpaceDescriptor,
    rng: &mut R,
    acc: &mut MarginAccumulator,
) -> Result<()> {
    let x = space.random_point(rng);
    let y = space.random_point(rng);
    let z = space.random_point(rng);
    let c = space.distance(&x, &y)?;
    let b = space.distance(&x, &z)?;
    let a = space.distance(&y, &z)?;
    // Law-of-cosines placement of the flat triangle with the same side lengths.
    let (xb, yb, zb) = if c < 1e-12 {
        ([0.0, 0.0], [c, 0.0], [b, 0.0])
    } else {
        let cos_a = ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0);
        let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
        ([0.0, 0.0], [c, 0.0], [b * cos_a, b * sin_a])
    };
    let corners = [(&x, xb), (&y, yb), (&z, zb)];
    // Two points on edges at matched arc-length parameters.
    let e1 = rng.random_range(0..3usize);
    let e2 = rng.random_range(0..3usize);
    let s: f64 = rng.random_range(0.0..=1.0);
    let t: f64 = rng.random_range(0.0..=1.0);
    let (p, pb) = edge_point(space, &corners, e1, s)?;
    let (q, qb) = edge_point(space, &corners, e2, t)?;
    let inner = space.distance(&p, &q)?;
    let flat = euclidean_distance(&pb, &qb);
    let margin = (flat - inner) / a.max(b).max(c).max(1.0);
    acc.record(margin, || vec![x, y, z, p, q]);
    Ok(())
}

fn edge_point(
    space: &SpaceDescriptor,
    corners: &[(&SpacePoint, [f64; 2]); 3],
    edge: usize,
    t: f64,
) -> Result<(SpacePoint, Vec<f64>)> {
    let (u, ub) = corners[edge];
    let (v, vb) = corners[(edge + 1) % 3];
    let p = space.combine(u, v, t)?;
    let pb = vec![
        (1.0 - t) * ub[0] + t * vb[0],
        (1.0 - t) * ub[1] + t * vb[1],
    ];
    Ok((p, pb))
}

/// Configurations satisfying the parallelism hypothesis are built directly:
/// the hypothesis set has measure zero, so rejection sampling would never
/// fire. Euclidean pairs are translates; tree and hyperbolic pairs are
/// translates along a common geodesic.
fn parallel_transfer_sample<R: Rng>(
    space: &SpaceDescriptor,
    rng: &mut R,
    acc: &mut MarginAccumulator,
) -> Result<()> {
    let (x, z, y, w) = match space {
        SpaceDescriptor::Euclidean { .. } => {
            let x = space.random_point(rng);
            let z = space.random_point(rng);
            let v = space.random_point(rng);
            let vc = v.coords().unwrap();
            let translate = |p: &SpacePoint| {
                SpacePoint::euclidean(
                    p.coords()
                        .unwrap()
                        .iter()
                        .zip(vc)
                        .map(|(pk, vk)| pk + vk)
                        .collect::<Vec<_>>(),
                )
            };
            let y = translate(&x);
            let w = translate(&z);
            (x, z, y, w)
        }
        _ => {
            // Points on a common geodesic, shifted by a common parameter.
            let pp = space.random_point(rng);
            let qq = space.random_point(rng);
            if space.distance(&pp, &qq)? < 1e-6 {
                acc.skip();
                return Ok(());
            }
            let p1: f64 = rng.random_range(0.0..=1.0);
            let p2: f64 = rng.random_range(0.0..=1.0);
            let tau: f64 = rng.random_range(0.0..=(1.0 - p1.max(p2)));
            let x = space.combine(&pp, &qq, p1)?;
            let z = space.combine(&pp, &qq, p2)?;
            let y = space.combine(&pp, &qq, p1 + tau)?;
            let w = space.combine(&pp, &qq, p2 + tau)?;
            (x, z, y, w)
        }
    };
    // Hypothesis: [x,z] parallel to [y,w]. Conclusion: [x,y] parallel to [z,w].
    let m1 = space.midpoint(&x, &y)?;
    let m2 = space.midpoint(&z, &w)?;
    let d1 = space.distance(&x, &z)?;
    let dm = space.distance(&m1, &m2)?;
    let d2 = space.distance(&y, &w)?;
    let scale = d1.max(space.distance(&x, &y)?).max(1.0);
    let margin = -(d1 - dm).abs().max((dm - d2).abs()).max((d1 - d2).abs()) / scale;
    acc.record(margin, || vec![x, z, y, w]);
    Ok(())
}

/// Strictness of midpoints: distinct points on a sphere of radius r around a
/// must have their midpoint strictly inside (by more than 1e−12). The two
/// sphere points are placed by construction; configurations closer than
/// 0.1·r are skipped so flat-quadratic rounding cannot masquerade as a
/// violation (the assertion itself keeps the 1e−6 separation threshold).
fn strict_convexity_sample<R: Rng>(
    space: &SpaceDescriptor,
    rng: &mut R,
    acc: &mut MarginAccumulator,
) -> Result<()> {
    let a = space.random_point(rng);
    let p = space.random_point(rng);
    let q = space.random_point(rng);
    let dap = space.distance(&a, &p)?;
    let daq = space.distance(&a, &q)?;
    let reach = dap.min(daq);
    if reach < 1e-3 {
        acc.skip();
        return Ok(());
    }
    let r = reach * rng.random_range(0.3..=1.0);
    let x = space.combine(&a, &p, r / dap)?;
    let y = space.combine(&a, &q, r / daq)?;
    let dxy = space.distance(&x, &y)?;
    if dxy < (0.1 * r).max(1e-6) {
        acc.skip();
        return Ok(());
    }
    let m = space.midpoint(&x, &y)?;
    let dma = space.distance(&m, &a)?;
    let margin = ((r - 1e-12) - dma) / r.max(1.0) - acc.tol;
    acc.record(margin, || vec![a, x, y, m]);
    Ok(())
}

/// Random segment or ball used by the projection laws; the max-norm space
/// only offers segment projection.
fn random_convex_set<R: Rng>(
    space: &SpaceDescriptor,
    rng: &mut R,
    index: usize,
) -> Result<ConvexSetDescriptor> {
    let use_ball = index % 2 == 1 && !matches!(space, SpaceDescriptor::MaxNormSeq { .. });
    if use_ball {
        let center = space.random_point(rng);
        let radius = rng.random_range(0.3..=2.0);
        Ok(ConvexSetDescriptor::ball(center, radius))
    } else {
        let a = space.random_point(rng);
        let b = space.random_point(rng);
        Ok(ConvexSetDescriptor::segment(a, b))
    }
}
