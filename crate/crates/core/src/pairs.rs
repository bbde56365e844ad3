//! Computations on pairs of convex sets: distance and farthest-point extents,
//! witness samples for the subsets realizing the pair distance, proximality
//! checks, and the constructive proximal-normal-structure witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulus::{modulus, ModulusSpec};
use crate::sets::{self, ConvexSetDescriptor};
use crate::space::{SpaceDescriptor, SpacePoint};

/// Seeded sampling budget attached to a pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n_samples: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { n_samples: 2_000, seed: 0 }
    }
}

/// A pair of nonempty closed convex sets in one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDescriptor {
    pub space: SpaceDescriptor,
    pub a: ConvexSetDescriptor,
    pub b: ConvexSetDescriptor,
    #[serde(default)]
    pub sampler: SamplerConfig,
}

impl PairDescriptor {
    pub fn new(
        space: SpaceDescriptor,
        a: ConvexSetDescriptor,
        b: ConvexSetDescriptor,
        sampler: SamplerConfig,
    ) -> Result<Self> {
        a.validate(&space)?;
        b.validate(&space)?;
        Ok(PairDescriptor { space, a, b, sampler })
    }
}

/// Bounds on dist(A,B) = inf d and δ(A,B) = sup d, with attaining witnesses.
///
/// For structured pairs the bounds coincide (exact); otherwise the attained
/// sampled values are reported together with any certified analytic bound,
/// and the report is flagged approximate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtentReport {
    pub dist_lower: f64,
    pub dist_upper: f64,
    pub diam_lower: f64,
    pub diam_upper: f64,
    pub arg_dist: (SpacePoint, SpacePoint),
    pub arg_diam: (SpacePoint, SpacePoint),
    pub approximate: bool,
    pub samples_used: usize,
}

impl ExtentReport {
    /// Midpoint estimate of dist(A,B); equals the exact value when not
    /// approximate.
    pub fn dist(&self) -> f64 {
        0.5 * (self.dist_lower + self.dist_upper)
    }

    pub fn diam(&self) -> f64 {
        0.5 * (self.diam_lower + self.diam_upper)
    }
}

/// Finite candidate set containing every extreme point needed for sup
/// computations, when the descriptor provides one.
fn extreme_candidates(
    space: &SpaceDescriptor,
    set: &ConvexSetDescriptor,
) -> Result<Option<Vec<SpacePoint>>> {
    Ok(match set {
        ConvexSetDescriptor::Segment { a, b } => Some(vec![a.clone(), b.clone()]),
        ConvexSetDescriptor::Polytope { vertices } => Some(vertices.clone()),
        ConvexSetDescriptor::SubtreeHull { generators } => Some(generators.clone()),
        ConvexSetDescriptor::JamesSlice { radius, first_coord } => {
            // With first_coord = radius the norm ball constrains the tail to
            // the Euclidean ball of the same radius, and the extreme tails
            // are single-coordinate spikes; the sup of any convex distance
            // function is then attained among these candidates.
            if (radius - first_coord).abs() > 1e-12 {
                None
            } else {
                let dim = match space {
                    SpaceDescriptor::MaxNormSeq { dim } => *dim,
                    _ => return Err(Error::InvalidSet("slice outside max-norm space".into())),
                };
                let r = *radius;
                let mut cands = Vec::with_capacity(dim);
                for j in 1..dim {
                    let mut c = vec![0.0; dim];
                    c[0] = r;
                    c[j] = r;
                    cands.push(SpacePoint::max_norm(c));
                }
                let mut c = vec![0.0; dim];
                c[0] = r;
                cands.push(SpacePoint::max_norm(c));
                Some(cands)
            }
        }
        ConvexSetDescriptor::Ball { .. } => None,
    })
}

/// Whether `project` handles this set in this space.
fn projectable(space: &SpaceDescriptor, set: &ConvexSetDescriptor) -> bool {
    let max_norm_space = matches!(space, SpaceDescriptor::MaxNormSeq { .. });
    match set {
        ConvexSetDescriptor::Segment { .. } => true,
        ConvexSetDescriptor::Ball { .. } => !max_norm_space,
        ConvexSetDescriptor::Polytope { .. } => !max_norm_space,
        ConvexSetDescriptor::SubtreeHull { .. } => true,
        ConvexSetDescriptor::JamesSlice { .. } => true,
    }
}

/// Nearest point of the set, by metric projection when offered, by seeded
/// sampling otherwise.
pub fn nearest_in_set(
    space: &SpaceDescriptor,
    set: &ConvexSetDescriptor,
    x: &SpacePoint,
    sampler: &SamplerConfig,
) -> Result<(f64, SpacePoint)> {
    if projectable(space, set) {
        let z = sets::project(space, set, x, 1e-10)?;
        let d = space.distance(x, &z)?;
        return Ok((d, z));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed ^ 0x6e65_6172);
    let mut best: Option<(f64, SpacePoint)> = None;
    for _ in 0..sampler.n_samples.max(1) {
        let w = sets::sample_point(space, set, &mut rng)?;
        let d = space.distance(x, &w)?;
        if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
            best = Some((d, w));
        }
    }
    Ok(best.unwrap())
}

/// Point at distance `r` beyond `c` on the ray from `x` through `c`
/// (the farthest point of the ball B(c, r) from x). Not available in trees,
/// which need not extend past `c`.
fn extend_past(
    space: &SpaceDescriptor,
    x: &SpacePoint,
    c: &SpacePoint,
    r: f64,
) -> Result<Option<SpacePoint>> {
    match space {
        SpaceDescriptor::Euclidean { .. } | SpaceDescriptor::MaxNormSeq { .. } => {
            let xc = x.coords().unwrap();
            let cc = c.coords().unwrap();
            let d = space.distance(x, c)?;
            let dir: Vec<f64> = if d < 1e-12 {
                let mut e = vec![0.0; cc.len()];
                e[0] = 1.0;
                e
            } else {
                xc.iter().zip(cc).map(|(xi, ci)| (ci - xi) / d).collect()
            };
            // In the max-norm space the "unit" direction has norm d-relative
            // to the Euclidean scale, so rescale by the actual norm.
            let n = match space {
                SpaceDescriptor::MaxNormSeq { .. } => crate::space::max_norm(&dir),
                _ => 1.0,
            };
            let z: Vec<f64> = cc.iter().zip(&dir).map(|(ci, di)| ci + r * di / n).collect();
            Ok(Some(match space {
                SpaceDescriptor::MaxNormSeq { .. } => SpacePoint::max_norm(z),
                _ => SpacePoint::euclidean(z),
            }))
        }
        SpaceDescriptor::HyperbolicPlane => {
            let (xc, cc) = match (x, c) {
                (SpacePoint::Hyperboloid { coords: a }, SpacePoint::Hyperboloid { coords: b }) => (a, b),
                _ => return Err(Error::InvalidPoint("expected hyperboloid points".into())),
            };
            use crate::space::hyperbolic as hyp;
            let d = hyp::distance(xc, cc);
            let u = if d < 1e-12 {
                hyp::tangent_project(cc, &[0.0, 1.0, 0.0])
            } else {
                // Unit tangent at c pointing away from x.
                let (ch, sh) = (d.cosh(), d.sinh());
                [
                    -(xc[0] - ch * cc[0]) / sh,
                    -(xc[1] - ch * cc[1]) / sh,
                    -(xc[2] - ch * cc[2]) / sh,
                ]
            };
            let n = hyp::tangent_norm(&u);
            let v = [r * u[0] / n, r * u[1] / n, r * u[2] / n];
            Ok(Some(SpacePoint::hyperboloid(hyp::exp_map(cc, &v))))
        }
        SpaceDescriptor::MetricTree(_) => Ok(None),
    }
}

/// δ(x, S) = sup over S of the distance to x, with the attaining witness.
/// Exact for candidate-structured sets and for balls outside trees;
/// otherwise a sampled lower bound.
pub fn farthest_with_witness(
    space: &SpaceDescriptor,
    x: &SpacePoint,
    set: &ConvexSetDescriptor,
    sampler: &SamplerConfig,
) -> Result<(f64, SpacePoint)> {
    set.validate(space)?;
    space.check_point(x)?;
    if let Some(cands) = extreme_candidates(space, set)? {
        let mut best: Option<(f64, SpacePoint)> = None;
        for cand in cands {
            let d = space.distance(x, &cand)?;
            if best.as_ref().map_or(true, |(bd, _)| d > *bd) {
                best = Some((d, cand));
            }
        }
        return Ok(best.unwrap());
    }
    if let ConvexSetDescriptor::Ball { center, radius } = set {
        if let Some(w) = extend_past(space, x, center, *radius)? {
            return Ok((space.distance(x, center)? + radius, w));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed ^ 0x6661_7274);
    let mut best: Option<(f64, SpacePoint)> = None;
    for _ in 0..sampler.n_samples.max(1) {
        let w = sets::sample_point(space, set, &mut rng)?;
        let d = space.distance(x, &w)?;
        if best.as_ref().map_or(true, |(bd, _)| d > *bd) {
            best = Some((d, w));
        }
    }
    Ok(best.unwrap())
}

pub fn farthest(
    space: &SpaceDescriptor,
    x: &SpacePoint,
    set: &ConvexSetDescriptor,
    sampler: &SamplerConfig,
) -> Result<f64> {
    farthest_with_witness(space, x, set, sampler).map(|(d, _)| d)
}

type DistWitness = (f64, SpacePoint, SpacePoint);

/// Exact pair distance for the structured combinations.
fn dist_exact(
    space: &SpaceDescriptor,
    a: &ConvexSetDescriptor,
    b: &ConvexSetDescriptor,
) -> Result<Option<DistWitness>> {
    use ConvexSetDescriptor::*;
    // Slice pairs separate along the fixed first coordinate.
    if let (JamesSlice { first_coord: c1, .. }, JamesSlice { first_coord: c2, .. }) = (a, b) {
        let dim = match space {
            SpaceDescriptor::MaxNormSeq { dim } => *dim,
            _ => return Err(Error::InvalidSet("slice outside max-norm space".into())),
        };
        let mk = |c: f64| {
            let mut v = vec![0.0; dim];
            v[0] = c;
            SpacePoint::max_norm(v)
        };
        return Ok(Some(((c1 - c2).abs(), mk(*c1), mk(*c2))));
    }
    if let (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) = (a, b) {
        let d = space.distance(c1, c2)?;
        if d > r1 + r2 {
            let wa = space.combine(c1, c2, r1 / d)?;
            let wb = space.combine(c1, c2, 1.0 - r2 / d)?;
            return Ok(Some((d - r1 - r2, wa, wb)));
        }
        // Overlapping balls: pick a common point on the joining geodesic.
        let t = if d < 1e-12 {
            0.0
        } else {
            0.5 * (((d - r2) / d).max(0.0) + (r1 / d).min(1.0))
        };
        let w = space.combine(c1, c2, t)?;
        return Ok(Some((0.0, w.clone(), w)));
    }
    // Ball against a projectable set.
    if let Ball { center, radius } = a {
        if projectable(space, b) {
            let z = sets::project(space, b, center, 1e-10)?;
            let d = space.distance(center, &z)?;
            if d <= *radius {
                return Ok(Some((0.0, z.clone(), z)));
            }
            let wa = space.combine(center, &z, radius / d)?;
            return Ok(Some((d - radius, wa, z)));
        }
        return Ok(None);
    }
    if let Ball { .. } = b {
        return Ok(dist_exact(space, b, a)?.map(|(d, wb, wa)| (d, wa, wb)));
    }
    // Euclidean hulls: nearest point of the difference hull to the origin.
    if let SpaceDescriptor::Euclidean { dim } = space {
        let hull_vertices = |s: &ConvexSetDescriptor| -> Option<Vec<Vec<f64>>> {
            match s {
                Segment { a, b } => Some(vec![
                    a.coords().unwrap().to_vec(),
                    b.coords().unwrap().to_vec(),
                ]),
                Polytope { vertices } => {
                    Some(vertices.iter().map(|v| v.coords().unwrap().to_vec()).collect())
                }
                _ => None,
            }
        };
        if let (Some(va), Some(vb)) = (hull_vertices(a), hull_vertices(b)) {
            let mut diff = Vec::with_capacity(va.len() * vb.len());
            for u in &va {
                for w in &vb {
                    diff.push(u.iter().zip(w).map(|(x, y)| x - y).collect::<Vec<f64>>());
                }
            }
            let origin = vec![0.0; *dim];
            let proj = sets::polytope::project_hull(&diff, &origin, 1e-11, sets::PROJECTION_MAX_ITER)?;
            let mut wa = vec![0.0; *dim];
            let mut wb = vec![0.0; *dim];
            for (idx, wgt) in proj.weights.iter().enumerate() {
                if *wgt == 0.0 {
                    continue;
                }
                let (i, j) = (idx / vb.len(), idx % vb.len());
                for k in 0..*dim {
                    wa[k] += wgt * va[i][k];
                    wb[k] += wgt * vb[j][k];
                }
            }
            let d = crate::space::euclidean_distance(&proj.point, &origin);
            return Ok(Some((d, SpacePoint::euclidean(wa), SpacePoint::euclidean(wb))));
        }
        return Ok(None);
    }
    // Trees: segments and subtree hulls are all spanned subtrees; every path
    // from one to the other passes through a unique pair of gates.
    if space.tree().is_some() {
        let as_hull = |s: &ConvexSetDescriptor| -> Option<ConvexSetDescriptor> {
            match s {
                Segment { a, b } => {
                    Some(ConvexSetDescriptor::subtree_hull(vec![a.clone(), b.clone()]))
                }
                SubtreeHull { .. } => Some(s.clone()),
                _ => None,
            }
        };
        if let (Some(ha), Some(hb)) = (as_hull(a), as_hull(b)) {
            let seed_point = match &ha {
                SubtreeHull { generators } => generators[0].clone(),
                _ => unreachable!(),
            };
            let gate_b = sets::project(space, &hb, &seed_point, 1e-10)?;
            let gate_a = sets::project(space, &ha, &gate_b, 1e-10)?;
            let d = space.distance(&gate_a, &gate_b)?;
            return Ok(Some((d.max(0.0), gate_a, gate_b)));
        }
        return Ok(None);
    }
    // Segment against segment in the remaining spaces: the distance along
    // the first segment to the second is convex; interval-search its value
    // (second-order accurate at the flat minimum).
    if let (Segment { .. }, Segment { a: b1, b: b2 }) = (a, b) {
        let f = |s: f64| -> Result<(f64, SpacePoint, SpacePoint)> {
            let p = match a {
                Segment { a: a1, b: a2 } => space.combine(a1, a2, s)?,
                _ => unreachable!(),
            };
            let (_, q) = sets::project_segment(space, b1, b2, &p)?;
            Ok((space.distance(&p, &q)?, p, q))
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            if hi - lo < 1e-12 {
                break;
            }
            let m1 = lo + (hi - lo) / 3.0;
            let m2 = hi - (hi - lo) / 3.0;
            if f(m1)?.0 <= f(m2)?.0 {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let (d, p, q) = f(0.5 * (lo + hi))?;
        return Ok(Some((d, p, q)));
    }
    Ok(None)
}

/// Exact pair diameter sup d(x, y) for the structured combinations.
fn diam_exact(
    space: &SpaceDescriptor,
    a: &ConvexSetDescriptor,
    b: &ConvexSetDescriptor,
) -> Result<Option<DistWitness>> {
    use ConvexSetDescriptor::*;
    let ca = extreme_candidates(space, a)?;
    let cb = extreme_candidates(space, b)?;
    if let (Some(ca), Some(cb)) = (&ca, &cb) {
        let mut best: Option<DistWitness> = None;
        for u in ca {
            for v in cb {
                let d = space.distance(u, v)?;
                if best.as_ref().map_or(true, |(bd, _, _)| d > *bd) {
                    best = Some((d, u.clone(), v.clone()));
                }
            }
        }
        return Ok(best);
    }
    let in_tree = space.tree().is_some();
    if in_tree {
        // Balls in a bounded tree need not attain the triangle bound.
        return Ok(None);
    }
    if let (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) = (a, b) {
        let d = space.distance(c1, c2)?;
        let wa = extend_past(space, c2, c1, *r1)?.unwrap();
        let wb = extend_past(space, c1, c2, *r2)?.unwrap();
        return Ok(Some((d + r1 + r2, wa, wb)));
    }
    if let Ball { center, radius } = b {
        if let Some(ca) = &ca {
            let mut best: Option<DistWitness> = None;
            for u in ca {
                let d = space.distance(u, center)? + radius;
                if best.as_ref().map_or(true, |(bd, _, _)| d > *bd) {
                    let w = extend_past(space, u, center, *radius)?.unwrap();
                    best = Some((d, u.clone(), w));
                }
            }
            return Ok(best);
        }
    }
    if let Ball { .. } = a {
        return Ok(diam_exact(space, b, a)?.map(|(d, wb, wa)| (d, wa, wb)));
    }
    Ok(None)
}

/// Interval of attainable first coordinates (used by the slice separation
/// certificate in the max-norm space).
fn first_coord_interval(set: &ConvexSetDescriptor) -> Option<(f64, f64)> {
    match set {
        ConvexSetDescriptor::JamesSlice { first_coord, .. } => Some((*first_coord, *first_coord)),
        ConvexSetDescriptor::Segment { a, b } => {
            let (x, y) = (a.coords()?[0], b.coords()?[0]);
            Some((x.min(y), x.max(y)))
        }
        ConvexSetDescriptor::Polytope { vertices } => {
            let firsts: Vec<f64> = vertices.iter().filter_map(|v| v.coords().map(|c| c[0])).collect();
            let lo = firsts.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = firsts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            Some((lo, hi))
        }
        ConvexSetDescriptor::Ball { center, radius } => {
            let c0 = center.coords()?[0];
            Some((c0 - radius, c0 + radius))
        }
        ConvexSetDescriptor::SubtreeHull { .. } => None,
    }
}

/// Certified lower bounds on the pair distance in the max-norm space.
fn max_norm_dist_certs(
    space: &SpaceDescriptor,
    a: &ConvexSetDescriptor,
    b: &ConvexSetDescriptor,
) -> Result<f64> {
    let mut cert = 0.0f64;
    // First-coordinate separation: ‖x − y‖ ≥ |x₁ − y₁|.
    if let (Some((lo1, hi1)), Some((lo2, hi2))) = (first_coord_interval(a), first_coord_interval(b)) {
        cert = cert.max((lo2 - hi1).max(lo1 - hi2).max(0.0));
    }
    // Euclidean separation: ‖v‖ ≥ ‖v‖₂/√2.
    let hull_vertices = |s: &ConvexSetDescriptor| -> Option<Vec<Vec<f64>>> {
        match s {
            ConvexSetDescriptor::Segment { a, b } => Some(vec![
                a.coords().unwrap().to_vec(),
                b.coords().unwrap().to_vec(),
            ]),
            ConvexSetDescriptor::Polytope { vertices } => {
                Some(vertices.iter().map(|v| v.coords().unwrap().to_vec()).collect())
            }
            _ => None,
        }
    };
    if let (Some(va), Some(vb)) = (hull_vertices(a), hull_vertices(b)) {
        let dim = match space {
            SpaceDescriptor::MaxNormSeq { dim } => *dim,
            _ => return Ok(cert),
        };
        let mut diff = Vec::with_capacity(va.len() * vb.len());
        for u in &va {
            for w in &vb {
                diff.push(u.iter().zip(w).map(|(x, y)| x - y).collect::<Vec<f64>>());
            }
        }
        let origin = vec![0.0; dim];
        let proj = sets::polytope::project_hull(&diff, &origin, 1e-10, sets::PROJECTION_MAX_ITER)?;
        let d2 = crate::space::euclidean_distance(&proj.point, &origin);
        cert = cert.max((d2 - 1e-9).max(0.0) / std::f64::consts::SQRT_2);
    }
    Ok(cert)
}

/// Computes dist(A,B) and δ(A,B) bounds with witnesses.
pub fn pair_extents(pair: &PairDescriptor) -> Result<ExtentReport> {
    let space = &pair.space;
    pair.a.validate(space)?;
    pair.b.validate(space)?;
    let exact_dist = dist_exact(space, &pair.a, &pair.b)?;
    let exact_diam = diam_exact(space, &pair.a, &pair.b)?;
    let mut samples_used = 0usize;

    // Sampled refinement for whatever is not exact.
    let mut sampled_min: Option<DistWitness> = None;
    let mut sampled_max: Option<DistWitness> = None;
    if exact_dist.is_none() || exact_diam.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(pair.sampler.seed);
        let n = pair.sampler.n_samples.max(1);
        samples_used = n;
        for _ in 0..n {
            let x = sets::sample_point(space, &pair.a, &mut rng)?;
            let y = sets::sample_point(space, &pair.b, &mut rng)?;
            let d = space.distance(&x, &y)?;
            if sampled_min.as_ref().map_or(true, |(bd, _, _)| d < *bd) {
                sampled_min = Some((d, x.clone(), y.clone()));
            }
            if sampled_max.as_ref().map_or(true, |(bd, _, _)| d > *bd) {
                sampled_max = Some((d, x.clone(), y.clone()));
            }
            // Tighten the attained minimum by projecting when offered.
            if projectable(space, &pair.b) {
                let z = sets::project(space, &pair.b, &x, 1e-10)?;
                let dz = space.distance(&x, &z)?;
                if dz < sampled_min.as_ref().unwrap().0 {
                    sampled_min = Some((dz, x, z));
                }
            }
        }
    }

    let (dist_lower, dist_upper, arg_dist, dist_exactly) = match exact_dist {
        Some((d, wa, wb)) => (d, d, (wa, wb), true),
        None => {
            let (du, wa, wb) = sampled_min.unwrap();
            let cert = if matches!(space, SpaceDescriptor::MaxNormSeq { .. }) {
                max_norm_dist_certs(space, &pair.a, &pair.b)?.min(du)
            } else {
                du
            };
            (cert, du, (wa, wb), false)
        }
    };
    let (diam_lower, diam_upper, arg_diam, diam_exactly) = match exact_diam {
        Some((d, wa, wb)) => (d, d, (wa, wb), true),
        None => {
            let (dl, wa, wb) = sampled_max.clone().unwrap();
            // Balls in trees still obey the triangle bound as an upper cert.
            let upper = diam_upper_cert(space, &pair.a, &pair.b)?.unwrap_or(dl);
            (dl, upper.max(dl), (wa, wb), false)
        }
    };
    Ok(ExtentReport {
        dist_lower,
        dist_upper,
        diam_lower,
        diam_upper,
        arg_dist,
        arg_diam,
        approximate: !(dist_exactly && diam_exactly),
        samples_used,
    })
}

/// Triangle-inequality upper bound for diameters involving balls in trees.
fn diam_upper_cert(
    space: &SpaceDescriptor,
    a: &ConvexSetDescriptor,
    b: &ConvexSetDescriptor,
) -> Result<Option<f64>> {
    use ConvexSetDescriptor::*;
    if let (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) = (a, b) {
        return Ok(Some(space.distance(c1, c2)? + r1 + r2));
    }
    if let Ball { center, radius } = b {
        if let Some(ca) = extreme_candidates(space, a)? {
            let mut worst = 0.0f64;
            for u in &ca {
                worst = worst.max(space.distance(u, center)? + radius);
            }
            return Ok(Some(worst));
        }
    }
    if let Ball { .. } = a {
        return diam_upper_cert(space, b, a);
    }
    Ok(None)
}

/// One certified element of A₀ (or B₀): a point of the set together with a
/// partner in the other set at distance ≤ dist(A,B) + tol.
pub type WitnessPair = (SpacePoint, SpacePoint);

/// Witness samples of the proximal subsets A₀ and B₀.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinSetsReport {
    pub a0: Vec<WitnessPair>,
    pub b0: Vec<WitnessPair>,
    pub dist: f64,
    /// Set when a side produced no witness within the sampling budget.
    pub empty_witness: bool,
}

/// Samples the subsets of A and B whose points realize the pair distance.
/// Raw samples rarely land on a measure-zero proximal face, so candidates
/// are refined by alternating projections before being certified.
pub fn min_sets(pair: &PairDescriptor, tol: f64) -> Result<MinSetsReport> {
    let extents = pair_extents(pair)?;
    let dist = extents.dist_upper; // certified attained value
    let space = &pair.space;
    let mut rng = ChaCha8Rng::seed_from_u64(pair.sampler.seed ^ 0x6d69_6e73);
    let mut a0 = Vec::new();
    let mut b0 = Vec::new();
    for _ in 0..pair.sampler.n_samples {
        let a = sets::sample_point(space, &pair.a, &mut rng)?;
        if let Some(pairw) = certify_witness(space, &a, &pair.a, &pair.b, dist, tol, &pair.sampler)? {
            a0.push(pairw);
        }
        let b = sets::sample_point(space, &pair.b, &mut rng)?;
        if let Some(pairw) = certify_witness(space, &b, &pair.b, &pair.a, dist, tol, &pair.sampler)? {
            b0.push(pairw);
        }
    }
    let empty = a0.is_empty() || b0.is_empty();
    Ok(MinSetsReport { a0, b0, dist, empty_witness: empty })
}

/// Alternating-projection refinement: returns (point-in-own-set, partner)
/// once the gap certifies membership in the proximal subset.
fn certify_witness(
    space: &SpaceDescriptor,
    start: &SpacePoint,
    own: &ConvexSetDescriptor,
    other: &ConvexSetDescriptor,
    dist: f64,
    tol: f64,
    sampler: &SamplerConfig,
) -> Result<Option<WitnessPair>> {
    let mut a = start.clone();
    for _ in 0..50 {
        let (d, b) = nearest_in_set(space, other, &a, sampler)?;
        if d <= dist + tol {
            return Ok(Some((a, b)));
        }
        let (_, back) = nearest_in_set(space, own, &b, sampler)?;
        if space.distance(&a, &back)? < 1e-15 {
            return Ok(None); // stalled away from the proximal face
        }
        a = back;
    }
    Ok(None)
}

/// Sampled proximality verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProximalityReport {
    pub proximal: bool,
    pub counterexample: Option<SpacePoint>,
    pub dist: f64,
    pub worst_excess: f64,
    pub samples_checked: usize,
}

/// A pair is proximal when every point of each set has a partner in the other
/// at distance dist(A,B). Extreme candidates are scanned first (they decide
/// the verdict for polytopes), then random samples.
pub fn is_proximal(pair: &PairDescriptor, tol: f64) -> Result<ProximalityReport> {
    let extents = pair_extents(pair)?;
    let dist = extents.dist_upper;
    let space = &pair.space;
    let mut rng = ChaCha8Rng::seed_from_u64(pair.sampler.seed ^ 0x7072_6f78);
    let mut worst: Option<(f64, SpacePoint)> = None;
    let mut checked = 0usize;
    for (own, other) in [(&pair.a, &pair.b), (&pair.b, &pair.a)] {
        let mut points = extreme_candidates(space, own)?.unwrap_or_default();
        for _ in 0..pair.sampler.n_samples {
            points.push(sets::sample_point(space, own, &mut rng)?);
        }
        for p in points {
            checked += 1;
            let (d, _) = nearest_in_set(space, other, &p, &pair.sampler)?;
            let excess = d - dist;
            if worst.as_ref().map_or(true, |(we, _)| excess > *we) {
                worst = Some((excess, p));
            }
        }
    }
    let (worst_excess, worst_point) = worst.map(|(e, p)| (e, Some(p))).unwrap_or((0.0, None));
    let proximal = worst_excess <= tol;
    Ok(ProximalityReport {
        proximal,
        counterexample: if proximal { None } else { worst_point },
        dist,
        worst_excess,
        samples_checked: checked,
    })
}

/// The midpoint witness certifying proximal normal structure on a uniformly
/// convex instance: midpoints of a separated pair in H₁ and of their
/// proximal partners in H₂, with the contraction factor
/// α = 1 − δ(Δ, ε/Δ) where Δ = δ(H₁,H₂) and ε = min separation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PnsWitness {
    pub m1: SpacePoint,
    pub m2: SpacePoint,
    pub alpha: f64,
    pub delta_m1_h2: f64,
    pub delta_m2_h1: f64,
}

pub fn pns_witness(
    space: &SpaceDescriptor,
    h1: &ConvexSetDescriptor,
    h2: &ConvexSetDescriptor,
    x: &SpacePoint,
    y: &SpacePoint,
    modulus_spec: &ModulusSpec,
    tol: f64,
) -> Result<PnsWitness> {
    if !space.is_uniformly_convex() {
        return Err(Error::UnsupportedSpace(format!(
            "{} is not uniformly convex",
            space.kind_label()
        )));
    }
    h1.validate(space)?;
    h2.validate(space)?;
    if space.distance(x, y)? <= tol {
        return Err(Error::DegenerateInput(
            "the two points of H1 must be separated".into(),
        ));
    }
    if !sets::contains(space, h1, x, 1e-7)? || !sets::contains(space, h1, y, 1e-7)? {
        return Err(Error::InvalidPoint("x and y must lie in H1".into()));
    }
    let sampler = SamplerConfig { n_samples: 2_000, seed: 0x706e_7377 };
    let (_, xp) = nearest_in_set(space, h2, x, &sampler)?;
    let (_, yp) = nearest_in_set(space, h2, y, &sampler)?;
    let m1 = space.midpoint(x, y)?;
    let m2 = space.midpoint(&xp, &yp)?;
    let pair = PairDescriptor::new(space.clone(), h1.clone(), h2.clone(), sampler.clone())?;
    let extents = pair_extents(&pair)?;
    let big_delta = extents.diam_lower;
    if big_delta <= tol {
        return Err(Error::DegenerateInput("δ(H1,H2) vanishes".into()));
    }
    let eps = space.distance(x, y)?.min(space.distance(&xp, &yp)?);
    if eps <= tol {
        return Err(Error::DegenerateInput(
            "proximal partners collapsed; ε vanishes".into(),
        ));
    }
    let alpha = 1.0 - modulus(modulus_spec, space, big_delta, (eps / big_delta).min(2.0))?;
    let delta_m1_h2 = farthest(space, &m1, h2, &sampler)?;
    let delta_m2_h1 = farthest(space, &m2, h1, &sampler)?;
    if delta_m1_h2 > alpha * big_delta + tol || delta_m2_h1 > alpha * big_delta + tol {
        return Err(Error::NoConvergence(format!(
            "midpoint extents {delta_m1_h2:.6}, {delta_m2_h1:.6} exceed α·δ = {:.6}",
            alpha * big_delta
        )));
    }
    Ok(PnsWitness { m1, m2, alpha, delta_m1_h2, delta_m2_h1 })
}
