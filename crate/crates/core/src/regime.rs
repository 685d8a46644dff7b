//! Bounds and thresholds that place a pair in the near-orthogonal
//! (`Delta ~ 0`), near-degenerate (`Delta ~ 1`) or intermediate regime.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{ArrayConfig, UserLocation};
use crate::resolution::{delta_closed_form, pair_params};

/// `|a|` or `|b|` at or below this counts as zero for the angle-domain bound.
pub const COEFF_ZERO_TOL: f64 = 1e-12;
/// Angles closer than this are treated as equal.
pub const ANGLE_TOL: f64 = 1e-12;

/// Angle-domain upper bound on `Delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleBound {
    Bound(f64),
    /// `a` or `b` vanishes; the bound is undefined.
    NotApplicable {
        a_vanishes: bool,
        b_vanishes: bool,
    },
}

impl AngleBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            AngleBound::Bound(v) => Some(*v),
            AngleBound::NotApplicable { .. } => None,
        }
    }
}

/// `(1 + 2M + 2N)/t + max{2M(2M+1) / (t^2 sin^2(pi b)), 2N(2N+1) / (t^2 sin^2(pi a))}`.
pub fn angle_bound_from(a: f64, b: f64, m_half: u32, n_half: u32) -> AngleBound {
    let a_vanishes = a.abs() <= COEFF_ZERO_TOL;
    let b_vanishes = b.abs() <= COEFF_ZERO_TOL;
    if a_vanishes || b_vanishes {
        return AngleBound::NotApplicable {
            a_vanishes,
            b_vanishes,
        };
    }
    let (m, n) = (f64::from(m_half), f64::from(n_half));
    let t = (2.0 * m + 1.0) * (2.0 * n + 1.0);
    let sb = (PI * b).sin();
    let sa = (PI * a).sin();
    let via_b = 2.0 * m * (2.0 * m + 1.0) / (t * t * sb * sb);
    let via_a = 2.0 * n * (2.0 * n + 1.0) / (t * t * sa * sa);
    AngleBound::Bound((1.0 + 2.0 * m + 2.0 * n) / t + via_b.max(via_a))
}

pub fn remark1_bound(cfg: &ArrayConfig, u1: &UserLocation, u2: &UserLocation) -> AngleBound {
    let p = pair_params(cfg, u1, u2);
    angle_bound_from(p.a, p.b, cfg.m_half(), cfg.n_half())
}

/// `max{M(M+1) sin^2(phi), N(N+1)(1 - cos^2(theta) sin^2(phi))}`.
fn curvature_load(m_half: u32, n_half: u32, theta: f64, phi: f64) -> f64 {
    let (m, n) = (f64::from(m_half), f64::from(n_half));
    let sp = phi.sin();
    let cx = theta.cos() * sp;
    (m * (m + 1.0) * sp * sp).max(n * (n + 1.0) * (1.0 - cx * cx))
}

/// Smallest common range beyond which two users at the same angle share a beam.
///
/// `4 pi d^2 / lambda * max{...}`, i.e. `pi lambda max{...}` at half-wavelength
/// spacing.
pub fn distance_threshold(cfg: &ArrayConfig, theta: f64, phi: f64) -> f64 {
    let d = cfg.spacing();
    4.0 * PI * d * d / cfg.wavelength() * curvature_load(cfg.m_half(), cfg.n_half(), theta, phi)
}

/// Distance threshold normalized by the Rayleigh distance.
pub fn beta_threshold_upa(m_half: u32, n_half: u32, theta: f64, phi: f64) -> Result<f64> {
    if m_half == 0 && n_half == 0 {
        return Err(Error::InvalidConfig(
            "beta threshold needs a non-empty aperture (M or N > 0)".into(),
        ));
    }
    let (m, n) = (f64::from(m_half), f64::from(n_half));
    Ok(PI / (2.0 * (m * m + n * n)) * curvature_load(m_half, n_half, theta, phi))
}

/// Large-array limit of [`beta_threshold_upa`] at fixed aspect `l = N / M`.
pub fn beta_threshold_upa_asymptotic(
    m_half: u32,
    n_half: u32,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    if m_half == 0 {
        return Err(Error::InvalidConfig(
            "aspect ratio N/M undefined for M = 0; use the ULA threshold".into(),
        ));
    }
    let l = f64::from(n_half) / f64::from(m_half);
    let sp = phi.sin();
    let cx = theta.cos() * sp;
    let l2 = l * l;
    Ok(PI / 2.0 * (l2 * sp * sp).max(1.0 - cx * cx) / (l2 + 1.0))
}

/// `pi sin^2(theta) / 2`.
pub fn beta_threshold_ula(theta: f64) -> f64 {
    let s = theta.sin();
    PI * s * s / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    NearOrthogonal,
    NearDegenerate,
    Intermediate,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::NearOrthogonal => "near_orthogonal",
            Regime::NearDegenerate => "near_degenerate",
            Regime::Intermediate => "intermediate",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cutoffs {
    /// `Delta <= low` is near-orthogonal.
    pub low: f64,
    /// `Delta >= high` is near-degenerate.
    pub high: f64,
}

impl Default for Cutoffs {
    fn default() -> Self {
        Self {
            low: 0.1,
            high: 0.9,
        }
    }
}

impl Cutoffs {
    pub fn classify(&self, delta: f64) -> Regime {
        if delta <= self.low {
            Regime::NearOrthogonal
        } else if delta >= self.high {
            Regime::NearDegenerate
        } else {
            Regime::Intermediate
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub delta: f64,
    /// Present only when both `a` and `b` are non-zero.
    pub remark1_bound: Option<f64>,
    pub common_angles: bool,
    /// Equal-angle pairs only.
    pub distance_threshold_m: Option<f64>,
    /// `min(r1, r2) / d_Ray`.
    pub beta: f64,
    /// Finite-array beta threshold; equal-angle pairs only.
    pub beta_threshold: Option<f64>,
    /// Large-array threshold: aspect form for planar arrays, `pi sin^2(theta)/2`
    /// for linear arrays with `phi = pi/2`.
    pub beta_threshold_asymptotic: Option<f64>,
    /// False when the beta threshold exceeds 1, i.e. lies outside the near field.
    pub threshold_reachable: Option<bool>,
    /// `min(r1, r2) >= distance_threshold_m`.
    pub degenerate_condition_met: Option<bool>,
    pub classification: Regime,
}

pub fn classify(cfg: &ArrayConfig, u1: &UserLocation, u2: &UserLocation) -> RegimeReport {
    classify_with(cfg, u1, u2, Cutoffs::default())
}

pub fn classify_with(
    cfg: &ArrayConfig,
    u1: &UserLocation,
    u2: &UserLocation,
    cutoffs: Cutoffs,
) -> RegimeReport {
    let delta = delta_closed_form(cfg, u1, u2).delta;
    let r_min = u1.r().min(u2.r());
    let d_ray = cfg.rayleigh_distance();
    let beta = if d_ray > 0.0 {
        r_min / d_ray
    } else {
        f64::INFINITY
    };
    let common_angles =
        (u1.theta() - u2.theta()).abs() <= ANGLE_TOL && (u1.phi() - u2.phi()).abs() <= ANGLE_TOL;

    let (theta, phi) = (u1.theta(), u1.phi());
    let distance = common_angles.then(|| distance_threshold(cfg, theta, phi));
    let beta_threshold = if common_angles {
        beta_threshold_upa(cfg.m_half(), cfg.n_half(), theta, phi).ok()
    } else {
        None
    };
    let beta_threshold_asymptotic = if !common_angles {
        None
    } else if cfg.m_half() > 0 {
        beta_threshold_upa_asymptotic(cfg.m_half(), cfg.n_half(), theta, phi).ok()
    } else if (phi - PI / 2.0).abs() <= ANGLE_TOL {
        Some(beta_threshold_ula(theta))
    } else {
        None
    };

    RegimeReport {
        delta,
        remark1_bound: remark1_bound(cfg, u1, u2).value(),
        common_angles,
        distance_threshold_m: distance,
        beta,
        beta_threshold,
        beta_threshold_asymptotic,
        threshold_reachable: beta_threshold.map(|b| b <= 1.0),
        degenerate_condition_met: distance.map(|d| r_min >= d),
        classification: cutoffs.classify(delta),
    }
}
