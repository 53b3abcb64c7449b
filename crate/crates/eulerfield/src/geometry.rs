//! Geometric domains and their Lipschitz–Killing curvatures under the metric
//! induced by a unit-variance field with correlation length `ℓ`.
//!
//! Rescaling the metric by `1/ℓ` multiplies the j-dimensional curvature by
//! `ℓ^{-j}`, so a box with physical sides `T_i` carries
//! `L_j = e_j(T_1/ℓ, ..., T_d/ℓ)` (elementary symmetric polynomials), a flat
//! 2-torus keeps only its volume term, and the round sphere keeps `L_0 = 2`
//! and its rescaled area. `L_0` always equals the Euler characteristic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::special_fn::gamma_half_integer;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("unsupported domain: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    BadArgument(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainKind {
    Box,
    FlatTorus,
    Sphere,
}

/// A compact domain carrying the metric scale `ℓ` of the inducing field.
///
/// Serializes to `{"kind", "side_lengths", "radius", "metric_scale"}`.
/// Spheres are prediction-only (no grid sampling).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub kind: DomainKind,
    #[serde(default)]
    pub side_lengths: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub metric_scale: f64,
}

impl Domain {
    pub fn new_box(side_lengths: Vec<f64>, metric_scale: f64) -> Result<Self, GeometryError> {
        let d = Self {
            kind: DomainKind::Box,
            side_lengths,
            radius: None,
            metric_scale,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn flat_torus(side_lengths: Vec<f64>, metric_scale: f64) -> Result<Self, GeometryError> {
        let d = Self {
            kind: DomainKind::FlatTorus,
            side_lengths,
            radius: None,
            metric_scale,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn sphere(radius: f64, metric_scale: f64) -> Result<Self, GeometryError> {
        let d = Self {
            kind: DomainKind::Sphere,
            side_lengths: Vec::new(),
            radius: Some(radius),
            metric_scale,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            DomainKind::Box | DomainKind::FlatTorus => self.side_lengths.len(),
            DomainKind::Sphere => 2,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self.kind {
            DomainKind::Box => 1,
            DomainKind::FlatTorus => 0,
            DomainKind::Sphere => 2,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.kind == DomainKind::FlatTorus
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(self.metric_scale > 0.0) || !self.metric_scale.is_finite() {
            return Err(GeometryError::InvalidDomain(
                "metric_scale must be positive and finite".into(),
            ));
        }
        match self.kind {
            DomainKind::Box => {
                if self.side_lengths.is_empty() || self.side_lengths.len() > 2 {
                    return Err(GeometryError::Unsupported(
                        "boxes are supported in dimensions 1 and 2".into(),
                    ));
                }
            }
            DomainKind::FlatTorus => {
                if self.side_lengths.is_empty() || self.side_lengths.len() > 2 {
                    return Err(GeometryError::Unsupported(
                        "flat tori are supported in dimensions 1 and 2".into(),
                    ));
                }
            }
            DomainKind::Sphere => {
                let r = self.radius.ok_or_else(|| {
                    GeometryError::InvalidDomain("sphere requires a radius".into())
                })?;
                if !(r > 0.0) {
                    return Err(GeometryError::InvalidDomain("radius must be positive".into()));
                }
                if !self.side_lengths.is_empty() {
                    return Err(GeometryError::InvalidDomain(
                        "sphere takes no side lengths".into(),
                    ));
                }
            }
        }
        for &t in &self.side_lengths {
            if !(t > 0.0) || !t.is_finite() {
                return Err(GeometryError::InvalidDomain(
                    "side lengths must be positive and finite".into(),
                ));
            }
        }
        Ok(())
    }
}

/// The vector `[L_0, ..., L_d]` of Lipschitz–Killing curvatures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LkCurvatures {
    values: Vec<f64>,
}

impl LkCurvatures {
    /// `L_j`; zero beyond the domain dimension.
    pub fn get(&self, j: usize) -> f64 {
        self.values.get(j).copied().unwrap_or(0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Domain dimension `d` (the list holds `d + 1` entries).
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }
}

/// Lipschitz–Killing curvatures of `domain` in the metric rescaled by its
/// correlation length.
pub fn lk_curvatures(domain: &Domain) -> Result<LkCurvatures, GeometryError> {
    domain.validate()?;
    let scale = domain.metric_scale;
    let values = match domain.kind {
        DomainKind::Box => {
            // Product of (1 + (T_i/ℓ) x): coefficients are the elementary
            // symmetric polynomials of the rescaled sides.
            let mut coeffs = vec![1.0];
            for &t in &domain.side_lengths {
                let s = t / scale;
                let mut next = vec![0.0; coeffs.len() + 1];
                for (k, &c) in coeffs.iter().enumerate() {
                    next[k] += c;
                    next[k + 1] += c * s;
                }
                coeffs = next;
            }
            coeffs
        }
        DomainKind::FlatTorus => {
            let d = domain.side_lengths.len();
            let mut values = vec![0.0; d + 1];
            values[d] = domain.side_lengths.iter().map(|t| t / scale).product();
            values
        }
        DomainKind::Sphere => {
            let r = domain.radius.expect("validated");
            vec![
                2.0,
                0.0,
                4.0 * std::f64::consts::PI * r * r / (scale * scale),
            ]
        }
    };
    debug_assert!((values[0] - domain.euler_characteristic() as f64).abs() < 1e-12);
    Ok(LkCurvatures { values })
}

/// Volume of the n-dimensional unit ball, `ω_n = π^{n/2} / Γ(n/2 + 1)`.
pub fn unit_ball_volume(n: u32) -> f64 {
    let half_pow = std::f64::consts::PI.powi((n / 2) as i32)
        * if n % 2 == 1 {
            std::f64::consts::PI.sqrt()
        } else {
            1.0
        };
    half_pow / gamma_half_integer(n + 2)
}

/// The flag coefficient `binom(n, k) ω_n / (ω_k ω_{n-k})`.
pub fn flag_coefficient(n: u32, k: u32) -> Result<f64, GeometryError> {
    if k > n {
        return Err(GeometryError::BadArgument(format!(
            "flag coefficient needs 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let mut binom = 1.0;
    for i in 0..k.min(n - k) {
        binom = binom * (n - i) as f64 / (i + 1) as f64;
    }
    Ok(binom * unit_ball_volume(n) / (unit_ball_volume(k) * unit_ball_volume(n - k)))
}

/// Lebesgue volume of the radius-`r` tube around a 2D box, evaluated as the
/// tube polynomial `Σ_j ω_j L_{2-j} r^j` with the box curvatures at scale 1.
pub fn tube_volume_box2d(sides: [f64; 2], r: f64) -> Result<f64, GeometryError> {
    if r < 0.0 {
        return Err(GeometryError::BadArgument("tube radius must be nonnegative".into()));
    }
    let domain = Domain::new_box(sides.to_vec(), 1.0)?;
    let lk = lk_curvatures(&domain)?;
    let mut total = 0.0;
    for j in 0..=2u32 {
        total += unit_ball_volume(j) * lk.get(2 - j as usize) * r.powi(j as i32);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn unit_square_curvatures() {
        let lk = lk_curvatures(&Domain::new_box(vec![1.0, 1.0], 1.0).unwrap()).unwrap();
        // L_1 is half the perimeter, L_2 the area.
        assert_eq!(lk.values(), &[1.0, 2.0, 1.0]);
    }

    #[test]
    fn box_first_curvature_is_d_times_side() {
        for d in 1..=2 {
            let l = 7.5;
            let lk = lk_curvatures(&Domain::new_box(vec![l; d], 1.0).unwrap()).unwrap();
            assert_abs_diff_eq!(lk.get(1), d as f64 * l, epsilon = 1e-12);
        }
    }

    #[test]
    fn torus_curvatures() {
        let lk = lk_curvatures(&Domain::flat_torus(vec![5.0, 5.0], 1.0).unwrap()).unwrap();
        assert_eq!(lk.values(), &[0.0, 0.0, 25.0]);
        // Circle: only the length survives.
        let lk = lk_curvatures(&Domain::flat_torus(vec![4.0], 1.0).unwrap()).unwrap();
        assert_eq!(lk.values(), &[0.0, 4.0]);
    }

    #[test]
    fn sphere_curvatures() {
        let lk = lk_curvatures(&Domain::sphere(3.0, 1.0).unwrap()).unwrap();
        assert_eq!(lk.get(0), 2.0);
        assert_eq!(lk.get(1), 0.0);
        assert_abs_diff_eq!(lk.get(2), 36.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn euler_characteristic_is_l0() {
        for dom in [
            Domain::new_box(vec![2.0, 3.0], 1.5).unwrap(),
            Domain::flat_torus(vec![5.0, 5.0], 2.0).unwrap(),
            Domain::sphere(1.0, 1.0).unwrap(),
        ] {
            let lk = lk_curvatures(&dom).unwrap();
            assert_eq!(lk.get(0), dom.euler_characteristic() as f64);
        }
    }

    #[test]
    fn metric_scaling_law() {
        let scales = [0.5, 1.0, 2.0, 3.7];
        for &ell in &scales {
            let base = lk_curvatures(&Domain::new_box(vec![4.0, 9.0], 1.0).unwrap()).unwrap();
            let scaled = lk_curvatures(&Domain::new_box(vec![4.0, 9.0], ell).unwrap()).unwrap();
            for j in 0..=2 {
                assert_abs_diff_eq!(
                    scaled.get(j),
                    base.get(j) / ell.powi(j as i32),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn ball_volumes_and_flags() {
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_abs_diff_eq!(unit_ball_volume(1), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(unit_ball_volume(2), PI, epsilon = 1e-14);
        assert_abs_diff_eq!(unit_ball_volume(3), 4.0 * PI / 3.0, epsilon = 1e-14);

        assert_abs_diff_eq!(flag_coefficient(2, 1).unwrap(), PI / 2.0, epsilon = 1e-14);
        for n in 0..6 {
            assert_abs_diff_eq!(flag_coefficient(n, 0).unwrap(), 1.0, epsilon = 1e-14);
        }
        assert!(flag_coefficient(1, 2).is_err());
    }

    #[test]
    fn tube_volume_matches_planar_geometry() {
        assert_eq!(tube_volume_box2d([1.0, 1.0], 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            tube_volume_box2d([1.0, 1.0], 1.0).unwrap(),
            1.0 + 4.0 + PI,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            tube_volume_box2d([2.0, 3.0], 0.5).unwrap(),
            6.0 + 5.0 + PI / 4.0,
            epsilon = 1e-12
        );
        // Area + perimeter·r + π r² for a sweep of radii.
        for i in 0..8 {
            let r = i as f64 * 0.3;
            let (a, b) = (1.7, 4.2);
            assert_abs_diff_eq!(
                tube_volume_box2d([a, b], r).unwrap(),
                a * b + 2.0 * (a + b) * r + PI * r * r,
                epsilon = 1e-12
            );
        }
        assert!(tube_volume_box2d([1.0, 1.0], -0.1).is_err());
    }

    #[test]
    fn domain_json_round_trip() {
        let dom = Domain::new_box(vec![0.5, 2.0], 1.25).unwrap();
        let js = serde_json::to_string(&dom).unwrap();
        let back: Domain = serde_json::from_str(&js).unwrap();
        assert_eq!(dom, back);
        let parsed: Domain = serde_json::from_str(
            r#"{"kind":"sphere","radius":2.0,"metric_scale":1.0}"#,
        )
        .unwrap();
        assert_eq!(parsed.kind, DomainKind::Sphere);
        assert!(parsed.validate().is_ok());
    }

    #[test]
    fn invalid_domains_rejected() {
        assert!(Domain::new_box(vec![], 1.0).is_err());
        assert!(Domain::new_box(vec![1.0, 1.0, 1.0], 1.0).is_err());
        assert!(Domain::new_box(vec![-1.0], 1.0).is_err());
        assert!(Domain::new_box(vec![1.0], 0.0).is_err());
        assert!(Domain::sphere(-1.0, 1.0).is_err());
    }
}
