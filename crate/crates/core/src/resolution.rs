//! Resolution `Delta = |b1^H b2|^2` of a user pair.
//!
//! Three independent routes are provided:
//!
//! * [`delta_oracle`] builds both steering vectors and takes their inner product.
//! * [`delta_sum_oracle`] sums `exp(2 j pi f(m, n))` over the array directly,
//!   with `f(m, n) = -a m - b n + c m^2 + z n^2`.
//! * [`delta_closed_form`] (and [`delta_ula`] for linear arrays) evaluates
//!   `Delta = (I1 + I2 + I3 + I2 I3 / t) / t^2` from `O(M + N)` kernel terms.
//!
//! Under the Fresnel phase model the three agree to round-off: the kernel
//! form is an exact regrouping of the phase sum.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{steering_vector, ArrayConfig, PhaseModel, UserLocation};
use crate::kernel::{phi_unchecked, NeumaierSum};

/// Reported values may exceed 1 by at most this much before clamping.
pub const DELTA_OVERSHOOT: f64 = 1e-9;
/// Negative round-off down to this value is clamped to zero.
pub const DELTA_UNDERSHOOT: f64 = 1e-12;
/// Angle tolerance when checking ULA preconditions.
pub const ULA_ANGLE_TOL: f64 = 1e-12;

/// Linear and quadratic phase-difference coefficients of a user pair.
///
/// With spacing `d` and wavelength `lambda`, `a` and `b` scale as `d / lambda`
/// and `c`, `z` as `d^2 / (2 lambda)`. At `d = lambda / 2` these are `1/2` and
/// `lambda / 8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl PairParams {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.z.is_finite()
    }

    /// Phase (in cycles) of element `(m, n)`.
    pub fn phase(&self, m: i64, n: i64) -> f64 {
        let (m, n) = (m as f64, n as f64);
        -self.a * m - self.b * n + self.c * m * m + self.z * n * n
    }
}

pub fn pair_params(cfg: &ArrayConfig, u1: &UserLocation, u2: &UserLocation) -> PairParams {
    let linear = cfg.spacing() / cfg.wavelength();
    let quad = cfg.spacing() * cfg.spacing() / (2.0 * cfg.wavelength());
    PairParams {
        a: linear * (u1.phi().cos() - u2.phi().cos()),
        b: linear * (u1.cos_x() - u2.cos_x()),
        c: quad * (u1.vertical_curvature() / u1.r() - u2.vertical_curvature() / u2.r()),
        z: quad * (u1.horizontal_curvature() / u1.r() - u2.horizontal_curvature() / u2.r()),
    }
}

/// How a resolution value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    OracleExact,
    OracleFresnel,
    SumOracle,
    ClosedForm,
    ClosedFormUla,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::OracleExact,
        Method::OracleFresnel,
        Method::SumOracle,
        Method::ClosedForm,
        Method::ClosedFormUla,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::OracleExact => "oracle_exact",
            Method::OracleFresnel => "oracle_fresnel",
            Method::SumOracle => "sum_oracle",
            Method::ClosedForm => "closed_form",
            Method::ClosedFormUla => "closed_form_ula",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle_exact" => Ok(Method::OracleExact),
            "oracle_fresnel" => Ok(Method::OracleFresnel),
            "sum_oracle" => Ok(Method::SumOracle),
            "closed_form" => Ok(Method::ClosedForm),
            "closed_form_ula" | "ula" => Ok(Method::ClosedFormUla),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Warning {
    /// User 1 lies beyond the Rayleigh distance.
    User1BeyondRayleigh,
    /// User 2 lies beyond the Rayleigh distance.
    User2BeyondRayleigh,
}

impl Warning {
    pub fn tag(&self) -> &'static str {
        match self {
            Warning::User1BeyondRayleigh => "r1_beyond_rayleigh",
            Warning::User2BeyondRayleigh => "r2_beyond_rayleigh",
        }
    }
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn pair_warnings(cfg: &ArrayConfig, u1: &UserLocation, u2: &UserLocation) -> Vec<Warning> {
    let d_ray = cfg.rayleigh_distance();
    let mut out = Vec::new();
    if u1.r() > d_ray {
        out.push(Warning::User1BeyondRayleigh);
    }
    if u2.r() > d_ray {
        out.push(Warning::User2BeyondRayleigh);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionResult {
    /// Reported value, with round-off just outside `[0, 1]` clamped.
    pub delta: f64,
    /// Unclamped value.
    pub raw: f64,
    pub method: Method,
    pub config: ArrayConfig,
    pub user1: UserLocation,
    pub user2: UserLocation,
    pub warnings: Vec<Warning>,
}

impl ResolutionResult {
    fn new(
        raw: f64,
        method: Method,
        cfg: &ArrayConfig,
        u1: &UserLocation,
        u2: &UserLocation,
    ) -> Self {
        Self {
            delta: clamp_delta(raw),
            raw,
            method,
            config: *cfg,
            user1: *u1,
            user2: *u2,
            warnings: pair_warnings(cfg, u1, u2),
        }
    }
}

pub fn clamp_delta(raw: f64) -> f64 {
    if (-DELTA_UNDERSHOOT..0.0).contains(&raw) {
        0.0
    } else if raw > 1.0 && raw <= 1.0 + DELTA_OVERSHOOT {
        1.0
    } else {
        raw
    }
}

/// The kernel sums `I2`, `I3` and the element count `t`; `I1 = t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelTerms {
    pub t: f64,
    pub i2: f64,
    pub i3: f64,
}

impl KernelTerms {
    pub fn i1(&self) -> f64 {
        self.t
    }

    /// `(I1 + I2 + I3 + I2 I3 / t) / t^2`, evaluated as the equal product
    /// `(1 + I2/t)(1 + I3/t) / t` to avoid cancelling the cross term.
    pub fn delta(&self) -> f64 {
        (1.0 + self.i2 / self.t) * (1.0 + self.i3 / self.t) / self.t
    }

    /// Same value, summed term by term.
    pub fn delta_expanded(&self) -> f64 {
        let t = self.t;
        (self.i1() + self.i2 + self.i3 + self.i2 * self.i3 / t) / (t * t)
    }
}

/// `sum_{s=1}^{2K} Phi(x, s, K) cos(2 pi w s)`, compensated, increasing `s`.
fn kernel_series(x: f64, w: f64, k: u32) -> f64 {
    let mut acc = NeumaierSum::default();
    for s in 1..=2 * k {
        acc += phi_unchecked(x, s, k) * (2.0 * PI * w * f64::from(s)).cos();
    }
    acc.sum()
}

pub fn kernel_terms(params: &PairParams, m_half: u32, n_half: u32) -> KernelTerms {
    let rows = f64::from(2 * m_half + 1);
    let cols = f64::from(2 * n_half + 1);
    KernelTerms {
        t: rows * cols,
        i2: 2.0 * rows * kernel_series(params.z, params.b, n_half),
        i3: 2.0 * cols * kernel_series(params.c, params.a, m_half),
    }
}

/// Closed-form resolution from pair coefficients; `O(M + N)`.
pub fn closed_form_from_params(params: &PairParams, m_half: u32, n_half: u32) -> f64 {
    kernel_terms(params, m_half, n_half).delta()
}

pub fn delta_closed_form(
    cfg: &ArrayConfig,
    u1: &UserLocation,
    u2: &UserLocation,
) -> ResolutionResult {
    let params = pair_params(cfg, u1, u2);
    let raw = closed_form_from_params(&params, cfg.m_half(), cfg.n_half());
    ResolutionResult::new(raw, Method::ClosedForm, cfg, u1, u2)
}

pub fn check_ula(cfg: &ArrayConfig, u1: &UserLocation, u2: &UserLocation) -> Result<()> {
    if cfg.m_half() != 0 {
        return Err(Error::UlaPrecondition(format!(
            "M = 0, got M = {}",
            cfg.m_half()
        )));
    }
    for (i, u) in [(1, u1), (2, u2)] {
        if (u.phi() - PI / 2.0).abs() > ULA_ANGLE_TOL {
            return Err(Error::UlaPrecondition(format!(
                "phi{i} = pi/2, got {}",
                u.phi()
            )));
        }
    }
    Ok(())
}

/// Linear-array form `1/(2N+1) + 2/(2N+1)^2 sum_s Phi(z, s, N) cos(2 pi b s)`.
pub fn delta_ula(
    cfg: &ArrayConfig,
    u1: &UserLocation,
    u2: &UserLocation,
) -> Result<ResolutionResult> {
    check_ula(cfg, u1, u2)?;
    let params = pair_params(cfg, u1, u2);
    let cols = f64::from(2 * cfg.n_half() + 1);
    let series = kernel_series(params.z, params.b, cfg.n_half());
    let raw = 1.0 / cols + 2.0 / (cols * cols) * series;
    Ok(ResolutionResult::new(
        raw,
        Method::ClosedFormUla,
        cfg,
        u1,
        u2,
    ))
}

/// `|b1^H b2|^2` from explicit steering vectors; `O(t)`.
pub fn delta_oracle(
    cfg: &ArrayConfig,
    u1: &UserLocation,
    u2: &UserLocation,
    model: PhaseModel,
) -> ResolutionResult {
    let b1 = steering_vector(cfg, u1, model);
    let b2 = steering_vector(cfg, u2, model);
    let raw = b1.inner(&b2).norm_sqr();
    let method = match model {
        PhaseModel::Exact => Method::OracleExact,
        PhaseModel::Fresnel => Method::OracleFresnel,
    };
    ResolutionResult::new(raw, method, cfg, u1, u2)
}

/// `|sum_{m,n} exp(2 j pi f(m, n))|^2 / t^2` by direct summation; `O(M N)`.
pub fn delta_sum_oracle(params: &PairParams, m_half: u32, n_half: u32) -> f64 {
    let (mh, nh) = (i64::from(m_half), i64::from(n_half));
    let t = ((2 * mh + 1) * (2 * nh + 1)) as f64;
    let mut re = NeumaierSum::default();
    let mut im = NeumaierSum::default();
    for m in -mh..=mh {
        for n in -nh..=nh {
            let (s, c) = (2.0 * PI * params.phase(m, n)).sin_cos();
            re += c;
            im += s;
        }
    }
    let (re, im) = (re.sum() / t, im.sum() / t);
    re * re + im * im
}

/// Evaluate any [`Method`] on a pair. Fails only for ULA preconditions.
pub fn delta_by(
    method: Method,
    cfg: &ArrayConfig,
    u1: &UserLocation,
    u2: &UserLocation,
) -> Result<ResolutionResult> {
    Ok(match method {
        Method::OracleExact => delta_oracle(cfg, u1, u2, PhaseModel::Exact),
        Method::OracleFresnel => delta_oracle(cfg, u1, u2, PhaseModel::Fresnel),
        Method::ClosedForm => delta_closed_form(cfg, u1, u2),
        Method::ClosedFormUla => delta_ula(cfg, u1, u2)?,
        Method::SumOracle => {
            let params = pair_params(cfg, u1, u2);
            let raw = delta_sum_oracle(&params, cfg.m_half(), cfg.n_half());
            ResolutionResult::new(raw, Method::SumOracle, cfg, u1, u2)
        }
    })
}
