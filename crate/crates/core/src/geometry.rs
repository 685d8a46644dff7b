//! Array geometry, user coordinates and array response vectors.
//!
//! Elements of the `(2M+1) x (2N+1)` planar array sit at `s(m, n) = (n d, 0, m d)`
//! for `-M <= m <= M`, `-N <= n <= N`. A user at spherical coordinate
//! `(r, theta, phi)` maps to the Cartesian point
//! `(r cos(theta) sin(phi), r sin(theta) sin(phi), r cos(phi))`, which is the
//! convention under which the second-order (Fresnel) expansion of the
//! element-to-user distance has the form used throughout this crate.
//!
//! Steering vectors are flattened row-major: `m` runs outer from `-M` to `M`,
//! `n` runs inner from `-N` to `N`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Cartesian point in meters.
pub type Point3 = [f64; 3];

/// Uniform planar array; `m_half = 0` gives a uniform linear array along x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    m_half: u32,
    n_half: u32,
    spacing: f64,
    wavelength: f64,
}

impl ArrayConfig {
    pub fn new(m_half: u32, n_half: u32, spacing: f64, wavelength: f64) -> Result<Self> {
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "wavelength must be positive and finite, got {wavelength}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "element spacing must be positive and finite, got {spacing}"
            )));
        }
        Ok(Self {
            m_half,
            n_half,
            spacing,
            wavelength,
        })
    }

    /// Half-wavelength spaced array.
    pub fn half_wavelength(m_half: u32, n_half: u32, wavelength: f64) -> Result<Self> {
        Self::new(m_half, n_half, wavelength / 2.0, wavelength)
    }

    /// Vertical half-extent `M`.
    pub fn m_half(&self) -> u32 {
        self.m_half
    }

    /// Horizontal half-extent `N`.
    pub fn n_half(&self) -> u32 {
        self.n_half
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Number of rows, `2M + 1`.
    pub fn rows(&self) -> usize {
        2 * self.m_half as usize + 1
    }

    /// Number of columns, `2N + 1`.
    pub fn cols(&self) -> usize {
        2 * self.n_half as usize + 1
    }

    /// Element count `t = (2M+1)(2N+1)`.
    pub fn element_count(&self) -> usize {
        self.rows() * self.cols()
    }

    pub fn is_linear(&self) -> bool {
        self.m_half == 0
    }

    pub fn with_m_half(self, m_half: u32) -> Self {
        Self { m_half, ..self }
    }

    pub fn with_n_half(self, n_half: u32) -> Self {
        Self { n_half, ..self }
    }

    /// `8 d^2 (M^2 + N^2) / lambda`.
    pub fn rayleigh_distance(&self) -> f64 {
        let m = f64::from(self.m_half);
        let n = f64::from(self.n_half);
        8.0 * self.spacing * self.spacing * (m * m + n * n) / self.wavelength
    }

    fn check_index(&self, m: i64, n: i64) -> Result<()> {
        if m.unsigned_abs() > u64::from(self.m_half) {
            return Err(Error::IndexOutOfRange {
                axis: "m",
                index: m,
                bound: self.m_half,
            });
        }
        if n.unsigned_abs() > u64::from(self.n_half) {
            return Err(Error::IndexOutOfRange {
                axis: "n",
                index: n,
                bound: self.n_half,
            });
        }
        Ok(())
    }

    /// Position `(n d, 0, m d)` of element `(m, n)`.
    pub fn element_position(&self, m: i64, n: i64) -> Result<Point3> {
        self.check_index(m, n)?;
        Ok([n as f64 * self.spacing, 0.0, m as f64 * self.spacing])
    }
}

/// Spherical user coordinate relative to the array center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserLocation {
    r: f64,
    theta: f64,
    phi: f64,
}

impl UserLocation {
    /// Requires `r > 0` and both angles strictly inside `(0, pi)`.
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidLocation(format!(
                "range must be positive and finite, got {r}"
            )));
        }
        for (name, angle) in [("theta", theta), ("phi", phi)] {
            if !(angle > 0.0 && angle < PI) {
                return Err(Error::InvalidLocation(format!(
                    "{name} must lie in the open interval (0, pi), got {angle}"
                )));
            }
        }
        Ok(Self { r, theta, phi })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn with_r(self, r: f64) -> Result<Self> {
        Self::new(r, self.theta, self.phi)
    }

    pub fn cartesian(&self) -> Point3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.r * ct * sp, self.r * st * sp, self.r * cp]
    }

    /// `cos(theta) sin(phi)`, the direction cosine along the array's x axis.
    pub(crate) fn cos_x(&self) -> f64 {
        self.theta.cos() * self.phi.sin()
    }

    /// `1 - cos^2(theta) sin^2(phi)`, the horizontal curvature coefficient.
    pub(crate) fn horizontal_curvature(&self) -> f64 {
        let cx = self.cos_x();
        1.0 - cx * cx
    }

    /// `sin^2(phi)`, the vertical curvature coefficient.
    pub(crate) fn vertical_curvature(&self) -> f64 {
        let s = self.phi.sin();
        s * s
    }
}

/// Cartesian position of a user.
pub fn user_cartesian(u: &UserLocation) -> Point3 {
    u.cartesian()
}

/// Distance model used to build array responses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseModel {
    /// Euclidean element-to-user distance.
    Exact,
    /// Second-order expansion of the distance about the array center.
    Fresnel,
}

/// `||u - s(m, n)|| - r`, free of cancellation at large `r`.
fn exact_offset(cfg: &ArrayConfig, u: &UserLocation, m: i64, n: i64) -> f64 {
    let p = u.cartesian();
    let sx = n as f64 * cfg.spacing;
    let sz = m as f64 * cfg.spacing;
    // |u - s|^2 - r^2 = |s|^2 - 2 u.s
    let num = sx * sx + sz * sz - 2.0 * (p[0] * sx + p[2] * sz);
    let dx = p[0] - sx;
    let dy = p[1];
    let dz = p[2] - sz;
    let dist = (dx * dx + dy * dy + dz * dz).sqrt();
    num / (dist + u.r)
}

/// Fresnel expansion of `||u - s(m, n)|| - r`.
fn fresnel_offset(cfg: &ArrayConfig, u: &UserLocation, m: i64, n: i64) -> f64 {
    let d = cfg.spacing;
    let (nf, mf) = (n as f64, m as f64);
    -nf * d * u.cos_x() + nf * nf * d * d * u.horizontal_curvature() / (2.0 * u.r)
        - mf * d * u.phi.cos()
        + mf * mf * d * d * u.vertical_curvature() / (2.0 * u.r)
}

/// Euclidean distance from element `(m, n)` to the user.
pub fn exact_distance(cfg: &ArrayConfig, u: &UserLocation, m: i64, n: i64) -> Result<f64> {
    cfg.check_index(m, n)?;
    Ok(u.r + exact_offset(cfg, u, m, n))
}

/// Fresnel approximation of the distance from element `(m, n)` to the user.
pub fn fresnel_distance(cfg: &ArrayConfig, u: &UserLocation, m: i64, n: i64) -> Result<f64> {
    cfg.check_index(m, n)?;
    Ok(u.r + fresnel_offset(cfg, u, m, n))
}

/// `sqrt(t) lambda / (4 pi r)`.
pub fn channel_gain(cfg: &ArrayConfig, u: &UserLocation) -> f64 {
    (cfg.element_count() as f64).sqrt() * cfg.wavelength / (4.0 * PI * u.r)
}

/// Unit-norm array response of one user.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    entries: Vec<Complex64>,
    phase_model: PhaseModel,
}

impl SteeringVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn phase_model(&self) -> PhaseModel {
        self.phase_model
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Hermitian inner product `self^H other`.
    pub fn inner(&self, other: &SteeringVector) -> Complex64 {
        assert_eq!(
            self.len(),
            other.len(),
            "steering vectors of different arrays"
        );
        let mut re = 0.0;
        let mut im = 0.0;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let p = a.conj() * b;
            re += p.re;
            im += p.im;
        }
        Complex64::new(re, im)
    }
}

/// Entry `(m, n)` is `exp(-j 2 pi / lambda (dist(m, n) - r)) / sqrt(t)`.
pub fn steering_vector(cfg: &ArrayConfig, u: &UserLocation, model: PhaseModel) -> SteeringVector {
    let t = cfg.element_count();
    let scale = 1.0 / (t as f64).sqrt();
    let k = 2.0 * PI / cfg.wavelength;
    let (mh, nh) = (i64::from(cfg.m_half), i64::from(cfg.n_half));
    let mut entries = Vec::with_capacity(t);
    for m in -mh..=mh {
        for n in -nh..=nh {
            let offset = match model {
                PhaseModel::Exact => exact_offset(cfg, u, m, n),
                PhaseModel::Fresnel => fresnel_offset(cfg, u, m, n),
            };
            entries.push(Complex64::from_polar(scale, -k * offset));
        }
    }
    SteeringVector {
        entries,
        phase_model: model,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: u32, n: u32) -> ArrayConfig {
        ArrayConfig::new(m, n, 0.005, 0.01).unwrap()
    }

    #[test]
    fn element_positions() {
        let c = cfg(4, 4);
        assert_eq!(c.element_position(0, 0).unwrap(), [0.0, 0.0, 0.0]);
        let p = c.element_position(2, -3).unwrap();
        assert!((p[0] + 0.015).abs() < 1e-15 && p[1] == 0.0 && (p[2] - 0.010).abs() < 1e-15);
        assert!(matches!(
            c.element_position(-5, 0),
            Err(Error::IndexOutOfRange { axis: "m", .. })
        ));
        assert!(c.element_position(0, 5).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(ArrayConfig::new(1, 1, 0.0, 0.01).is_err());
        assert!(ArrayConfig::new(1, 1, 0.005, -1.0).is_err());
        assert!(UserLocation::new(0.0, 1.0, 1.0).is_err());
        assert!(UserLocation::new(2.0, PI / 2.0, PI).is_err());
        assert!(UserLocation::new(2.0, 0.0, 1.0).is_err());
        assert!(UserLocation::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn cartesian_convention() {
        let p = user_cartesian(&UserLocation::new(1.0, PI / 2.0, PI / 2.0).unwrap());
        assert!(p[0].abs() < 1e-15 && (p[1] - 1.0).abs() < 1e-15 && p[2].abs() < 1e-15);
        let p = user_cartesian(&UserLocation::new(1.0, PI / 3.0, PI / 2.0).unwrap());
        assert!((p[0] - 0.5).abs() < 1e-15);
        assert!((p[1] - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(p[2].abs() < 1e-15);
    }

    #[test]
    fn distances() {
        let c = cfg(32, 32);
        let u = UserLocation::new(10.0, 0.7, 2.1).unwrap();
        assert_eq!(exact_distance(&c, &u, 0, 0).unwrap(), 10.0);
        assert_eq!(fresnel_distance(&c, &u, 0, 0).unwrap(), 10.0);

        let broadside = UserLocation::new(1.0, PI / 2.0, PI / 2.0).unwrap();
        let d = exact_distance(&c, &broadside, 0, 1).unwrap();
        assert!((d - (0.005f64.powi(2) + 1.0).sqrt()).abs() < 1e-15);

        let far = UserLocation::new(10.0, PI / 2.0, PI / 2.0).unwrap();
        let f = fresnel_distance(&c, &far, 0, 1).unwrap();
        assert!((f - 10.00000125).abs() < 1e-12);
    }

    #[test]
    fn exact_distance_against_vector_norm() {
        // (r=5, theta=pi/3, phi=pi/4), element (3, -2), d = 0.005:
        // user = (5 * 0.5 * sqrt(2)/2, 5 * sqrt(3)/2 * sqrt(2)/2, 5 * sqrt(2)/2)
        // element = (-0.010, 0, 0.015); norm computed with a scripting calculator.
        let c = cfg(32, 32);
        let u = UserLocation::new(5.0, PI / 3.0, PI / 4.0).unwrap();
        let d = exact_distance(&c, &u, 3, -2).unwrap();
        assert!((d - 4.992956471058139).abs() < 1e-12, "{d}");
    }

    #[test]
    fn offsets_match_distances() {
        let c = cfg(8, 8);
        let u = UserLocation::new(3.0, 1.1, 0.9).unwrap();
        for m in -8..=8 {
            for n in -8..=8 {
                let e = exact_distance(&c, &u, m, n).unwrap() - u.r();
                assert!((exact_offset(&c, &u, m, n) - e).abs() < 1e-14);
                let f = fresnel_distance(&c, &u, m, n).unwrap() - u.r();
                assert!((fresnel_offset(&c, &u, m, n) - f).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn fresnel_error_on_full_grid() {
        // Max |fresnel - exact| over the 65 x 65 grid at r = 5 m, from a
        // brute-force numpy scan: 1.3539861108560203e-3 m.
        let c = cfg(32, 32);
        let u = UserLocation::new(5.0, PI / 3.0, PI / 4.0).unwrap();
        let mut worst = 0.0f64;
        for m in -32..=32 {
            for n in -32..=32 {
                let e = exact_distance(&c, &u, m, n).unwrap();
                let f = fresnel_distance(&c, &u, m, n).unwrap();
                worst = worst.max((e - f).abs());
            }
        }
        assert!((worst - 1.3539861108560203e-3).abs() < 1e-10, "{worst}");
    }

    #[test]
    fn fresnel_error_shrinks_with_range() {
        let c = cfg(16, 16);
        let mut last = f64::INFINITY;
        for r in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
            let u = UserLocation::new(r, 1.2, 0.8).unwrap();
            let err = (exact_distance(&c, &u, 16, -16).unwrap()
                - fresnel_distance(&c, &u, 16, -16).unwrap())
            .abs();
            assert!(err < last, "r={r}: {err} >= {last}");
            last = err;
        }
    }

    #[test]
    fn z_mirror_symmetry() {
        let c = cfg(6, 6);
        let u = UserLocation::new(2.0, 1.3, 0.6).unwrap();
        let mirrored = UserLocation::new(2.0, 1.3, PI - 0.6).unwrap();
        for m in -6..=6 {
            for n in -6..=6 {
                let a = exact_distance(&c, &u, m, n).unwrap();
                let b = exact_distance(&c, &mirrored, -m, n).unwrap();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gain_and_rayleigh() {
        let u1 = UserLocation::new(1.0, 1.0, 1.0).unwrap();
        assert!((channel_gain(&cfg(0, 0), &u1) - 0.01 / (4.0 * PI)).abs() < 1e-18);
        let u10 = UserLocation::new(10.0, 1.0, 1.0).unwrap();
        let g = channel_gain(&cfg(1, 1), &u10);
        assert!((g - 3.0 * 0.01 / (40.0 * PI)).abs() < 1e-18);
        assert_eq!(cfg(1, 1).element_count() % 2, 1);

        assert!((cfg(0, 128).rayleigh_distance() - 327.68).abs() < 1e-9);
        assert!((cfg(128, 128).rayleigh_distance() - 655.36).abs() < 1e-9);
        assert_eq!(cfg(0, 0).rayleigh_distance(), 0.0);
        let c = cfg(7, 3);
        let expected = 2.0 * 0.01 * (49.0 + 9.0);
        assert!((c.rayleigh_distance() - expected).abs() < 1e-12);
    }

    #[test]
    fn single_element_vector() {
        let u = UserLocation::new(5.0, 1.0, 2.0).unwrap();
        for model in [PhaseModel::Exact, PhaseModel::Fresnel] {
            let v = steering_vector(&cfg(0, 0), &u, model);
            assert_eq!(v.entries(), &[Complex64::new(1.0, 0.0)]);
        }
    }

    #[test]
    fn fresnel_entries_match_direct_evaluation() {
        let c = cfg(2, 2);
        let u = UserLocation::new(5.0, PI / 3.0, PI / 2.0).unwrap();
        let v = steering_vector(&c, &u, PhaseModel::Fresnel);
        // cos(theta) sin(phi) = 1/2, 1 - 1/4 = 3/4, cos(phi) = 0, sin^2(phi) = 1.
        let mut k = 0;
        for m in -2i32..=2 {
            for n in -2i32..=2 {
                let (mf, nf) = (f64::from(m), f64::from(n));
                let off =
                    -nf * 0.005 * 0.5 + nf * nf * 25e-6 * 0.75 / 10.0 + mf * mf * 25e-6 / 10.0;
                let want = Complex64::from_polar(0.2, -2.0 * PI / 0.01 * off);
                assert!((v.entries()[k] - want).norm() < 1e-13, "m={m} n={n}");
                k += 1;
            }
        }
    }

    #[test]
    fn steering_vectors_are_unit_norm() {
        let c = cfg(5, 9);
        for model in [PhaseModel::Exact, PhaseModel::Fresnel] {
            let u = UserLocation::new(0.7, 0.3, 2.9).unwrap();
            let v = steering_vector(&c, &u, model);
            assert_eq!(v.len(), 11 * 19);
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let mag = 1.0 / (v.len() as f64).sqrt();
            assert!(v.entries().iter().all(|e| (e.norm() - mag).abs() < 1e-12));
            assert!((v.inner(&v).re - 1.0).abs() < 1e-12);
        }
    }
}
