//! Modulus of uniform convexity: the closed form valid in every CAT(0) space
//! plus a seeded sampling estimator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::SpaceDescriptor;

/// How to evaluate δ(r, ε).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum ModulusSpec {
    /// δ(r, ε) = 1 − sqrt(1 − ε²/4), independent of r. Valid in every CAT(0)
    /// space by triangle comparison.
    Cat0ClosedForm,
    /// Infimum estimate over seeded samples, minus a 1e−6 safety margin,
    /// clamped into [0, 1].
    Empirical { samples: usize, seed: u64 },
}

pub fn cat0_modulus(eps: f64) -> f64 {
    1.0 - (1.0 - eps * eps / 4.0).max(0.0).sqrt()
}

/// Evaluates the modulus of uniform convexity of `space` at (r, eps).
///
/// The guarantee checked by the test suite: for sampled a, x, y with
/// d(x,a) ≤ r, d(y,a) ≤ r and d(x,y) ≥ εr, the midpoint m of x and y
/// satisfies d(m,a) ≤ (1 − δ)r.
pub fn modulus(spec: &ModulusSpec, space: &SpaceDescriptor, r: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 2.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!("eps {eps} outside (0, 2]")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("radius {r} must be positive")));
    }
    match spec {
        ModulusSpec::Cat0ClosedForm => {
            if !space.is_uniformly_convex() {
                return Err(Error::UnsupportedSpace(format!(
                    "{} is not uniformly convex",
                    space.kind_label()
                )));
            }
            Ok(cat0_modulus(eps))
        }
        ModulusSpec::Empirical { samples, seed } => {
            Ok(empirical_modulus(space, r, eps, *samples, *seed))
        }
    }
}

fn empirical_modulus(space: &SpaceDescriptor, r: f64, eps: f64, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inf = 1.0f64;
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    // Rejection sampling: place x, y on geodesics from a at distance ≤ r,
    // keep configurations separated by at least eps·r.
    while accepted < samples && attempts < samples.saturating_mul(50).max(1000) {
        attempts += 1;
        let a = space.random_point(&mut rng);
        let p = space.random_point(&mut rng);
        let q = space.random_point(&mut rng);
        let dap = match space.distance(&a, &p) {
            Ok(d) => d,
            Err(_) => continue,
        };
        let daq = space.distance(&a, &q).unwrap();
        if dap < 1e-9 || daq < 1e-9 {
            continue;
        }
        let sx: f64 = rng.random_range(0.0..=1.0);
        let sy: f64 = rng.random_range(0.0..=1.0);
        let x = space.combine(&a, &p, (sx * r / dap).min(1.0)).unwrap();
        let y = space.combine(&a, &q, (sy * r / daq).min(1.0)).unwrap();
        if space.distance(&x, &y).unwrap() < eps * r {
            continue;
        }
        accepted += 1;
        let m = space.midpoint(&x, &y).unwrap();
        let dm = space.distance(&m, &a).unwrap();
        inf = inf.min(1.0 - dm / r);
    }
    (inf - 1e-6).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn antipodal_modulus_is_one() {
        let s = SpaceDescriptor::euclidean(2);
        for r in [0.5, 1.0, 3.0] {
            let d = modulus(&ModulusSpec::Cat0ClosedForm, &s, r, 2.0).unwrap();
            assert!((d - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_at_eps_one() {
        let s = SpaceDescriptor::euclidean(2);
        let d = modulus(&ModulusSpec::Cat0ClosedForm, &s, 1.0, 1.0).unwrap();
        let want = 1.0 - 3f64.sqrt() / 2.0; // ≈ 0.133975
        assert!((d - want).abs() < 1e-12);
        // No sampled Euclidean configuration may violate the closed form.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (r, eps) = (1.0, 1.0);
        let mut checked = 0;
        while checked < 100_000 {
            let a = s.random_point(&mut rng);
            let p = s.random_point(&mut rng);
            let q = s.random_point(&mut rng);
            let dap = s.distance(&a, &p).unwrap();
            let daq = s.distance(&a, &q).unwrap();
            if dap < 1e-9 || daq < 1e-9 {
                continue;
            }
            let sx: f64 = rng.random_range(0.0..=1.0);
            let sy: f64 = rng.random_range(0.0..=1.0);
            let x = s.combine(&a, &p, (sx * r / dap).min(1.0)).unwrap();
            let y = s.combine(&a, &q, (sy * r / daq).min(1.0)).unwrap();
            if s.distance(&x, &y).unwrap() < eps * r {
                continue;
            }
            checked += 1;
            let m = s.midpoint(&x, &y).unwrap();
            assert!(s.distance(&m, &a).unwrap() <= (1.0 - d) * r + 1e-9);
        }
    }

    #[test]
    fn empirical_bounded_below_by_closed_form() {
        let s = SpaceDescriptor::euclidean(2);
        let spec = ModulusSpec::Empirical { samples: 10_000, seed: 42 };
        let est = modulus(&spec, &s, 1.0, 1.0).unwrap();
        assert!(est >= (1.0 - 3f64.sqrt() / 2.0) - 1e-3, "estimate {est} too small");
        assert!((0.0..=1.0).contains(&est));
    }

    #[test]
    fn closed_form_constant_in_r() {
        let s = SpaceDescriptor::hyperbolic_plane();
        let d1 = modulus(&ModulusSpec::Cat0ClosedForm, &s, 0.25, 0.7).unwrap();
        let d2 = modulus(&ModulusSpec::Cat0ClosedForm, &s, 40.0, 0.7).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn closed_form_needs_uniform_convexity() {
        let s = SpaceDescriptor::max_norm_seq(3);
        assert!(matches!(
            modulus(&ModulusSpec::Cat0ClosedForm, &s, 1.0, 1.0),
            Err(Error::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn eps_out_of_range_rejected() {
        let s = SpaceDescriptor::euclidean(2);
        assert!(matches!(
            modulus(&ModulusSpec::Cat0ClosedForm, &s, 1.0, 2.5),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            modulus(&ModulusSpec::Cat0ClosedForm, &s, 1.0, 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }
}
