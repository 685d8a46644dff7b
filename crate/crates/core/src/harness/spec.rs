use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geometry::{ArrayConfig, UserLocation};
use crate::resolution::{check_ula, Method};

/// Swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `r1 = beta * d_Ray`.
    Beta,
    /// `r1` in meters.
    R1,
    /// Horizontal half-extent.
    N,
    /// Vertical half-extent.
    M,
}

impl Axis {
    pub fn tag(&self) -> &'static str {
        match self {
            Axis::Beta => "beta",
            Axis::R1 => "r1",
            Axis::N => "N",
            Axis::M => "M",
        }
    }

    fn is_integer(&self) -> bool {
        matches!(self, Axis::N | Axis::M)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beta" => Ok(Axis::Beta),
            "r1" => Ok(Axis::R1),
            "N" => Ok(Axis::N),
            "M" => Ok(Axis::M),
            other => Err(Error::InvalidSweep(format!("unknown axis `{other}`"))),
        }
    }
}

/// How the second user's range follows the grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondRange {
    /// Fixed range in meters.
    Fixed(f64),
    /// `r2 = r1 + offset`.
    Offset(f64),
    /// `r2 = d_Ray` of the point's array.
    Rayleigh,
}

impl fmt::Display for SecondRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SecondRange::Fixed(r) => write!(f, "{r}"),
            SecondRange::Offset(o) => write!(f, "r1+{o}"),
            SecondRange::Rayleigh => f.write_str("rayleigh"),
        }
    }
}

impl FromStr for SecondRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rayleigh" {
            return Ok(SecondRange::Rayleigh);
        }
        if let Some(off) = s.strip_prefix("r1+") {
            return parse_real(off).map(SecondRange::Offset);
        }
        parse_real(s).map(SecondRange::Fixed)
    }
}

/// Per-series overrides of the base scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub m_half: Option<u32>,
    pub n_half: Option<u32>,
    pub second: Option<SecondRange>,
}

impl Series {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            m_half: None,
            n_half: None,
            second: None,
        }
    }
}

/// A one-dimensional parameter sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub name: String,
    pub axis: Axis,
    pub axis_values: Vec<f64>,
    /// Parameters not bound by the axis. The axis overrides `user1.r` (beta, r1)
    /// or the matching half-extent (N, M).
    pub config: ArrayConfig,
    pub user1: UserLocation,
    pub user2: UserLocation,
    pub second: SecondRange,
    /// Empty means a single unlabeled series.
    pub series: Vec<Series>,
    pub methods: Vec<Method>,
    pub output_path: Option<PathBuf>,
}

/// A fully resolved grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub config: ArrayConfig,
    pub user1: UserLocation,
    pub user2: UserLocation,
}

impl SweepSpec {
    /// Series to evaluate; a spec without explicit series has one unlabeled.
    pub fn effective_series(&self) -> Vec<Series> {
        if self.series.is_empty() {
            vec![Series::new("")]
        } else {
            self.series.clone()
        }
    }

    /// Column names after `axis`, series-major then method order.
    pub fn columns(&self) -> Vec<String> {
        let labeled = !self.series.is_empty();
        let mut out = Vec::new();
        for s in self.effective_series() {
            for m in &self.methods {
                if labeled {
                    out.push(format!("{}@{}", m.tag(), s.label));
                } else {
                    out.push(m.tag().to_string());
                }
            }
        }
        out
    }

    pub fn point(&self, series: &Series, value: f64) -> Result<GridPoint> {
        let mut cfg = self.config;
        if let Some(m) = series.m_half {
            cfg = cfg.with_m_half(m);
        }
        if let Some(n) = series.n_half {
            cfg = cfg.with_n_half(n);
        }
        let mut r1 = self.user1.r();
        match self.axis {
            Axis::Beta => r1 = value * cfg.rayleigh_distance(),
            Axis::R1 => r1 = value,
            Axis::N => cfg = cfg.with_n_half(value as u32),
            Axis::M => cfg = cfg.with_m_half(value as u32),
        }
        let r2 = match series.second.unwrap_or(self.second) {
            SecondRange::Fixed(r) => r,
            SecondRange::Offset(o) => r1 + o,
            SecondRange::Rayleigh => cfg.rayleigh_distance(),
        };
        Ok(GridPoint {
            config: cfg,
            user1: self.user1.with_r(r1)?,
            user2: self.user2.with_r(r2)?,
        })
    }

    /// Checks the grid and every method precondition at every point.
    pub fn validate(&self) -> Result<()> {
        if self.axis_values.is_empty() {
            return Err(Error::InvalidSweep("axis has no values".into()));
        }
        if let Some(v) = self.axis_values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSweep(format!("non-finite axis value {v}")));
        }
        if let Some(w) = self.axis_values.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSweep(format!(
                "axis values must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if self.axis.is_integer() {
            if let Some(v) = self
                .axis_values
                .iter()
                .find(|v| v.fract() != 0.0 || **v < 0.0 || **v > f64::from(u32::MAX))
            {
                return Err(Error::InvalidSweep(format!(
                    "axis {} takes non-negative integers, got {v}",
                    self.axis
                )));
            }
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidSweep("no methods requested".into()));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(Error::InvalidSweep(format!("method {m} listed twice")));
            }
        }
        for (i, s) in self.series.iter().enumerate() {
            if s.label.is_empty() || s.label.contains([',', '\n', '"']) {
                return Err(Error::InvalidSweep(format!(
                    "series label `{}` must be non-empty without commas or quotes",
                    s.label
                )));
            }
            if self.series[..i].iter().any(|o| o.label == s.label) {
                return Err(Error::InvalidSweep(format!(
                    "series `{}` listed twice",
                    s.label
                )));
            }
        }
        let needs_ula = self.methods.contains(&Method::ClosedFormUla);
        for s in self.effective_series() {
            for &v in &self.axis_values {
                let at = |e: Error| {
                    let series = if s.label.is_empty() {
                        String::new()
                    } else {
                        format!(" (series {})", s.label)
                    };
                    Error::InvalidSweep(format!("{}={v}{series}: {e}", self.axis))
                };
                let p = self.point(&s, v).map_err(at)?;
                if needs_ula {
                    check_ula(&p.config, &p.user1, &p.user2).map_err(at)?;
                }
            }
        }
        Ok(())
    }
}

/// Angle overrides accepted by the figure presets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresetOptions {
    pub theta: f64,
    pub phi: f64,
}

impl Default for PresetOptions {
    fn default() -> Self {
        Self {
            theta: PI / 2.0,
            phi: PI / 2.0,
        }
    }
}

pub const PRESET_WAVELENGTH: f64 = 0.01;
pub const PRESET_N: u32 = 128;
pub const PRESET_NAMES: [&str; 4] = ["fig1", "fig2", "fig3", "fig4"];

/// `count` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (stop - start) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        stop
                    } else {
                        start + i as f64 * step
                    }
                })
                .collect()
        }
    }
}

/// 100 points `k / 100`, `k = 1..=100`.
fn beta_grid() -> Vec<f64> {
    (1..=100).map(|k| f64::from(k) / 100.0).collect()
}

pub fn preset(name: &str) -> Result<SweepSpec> {
    preset_with(name, PresetOptions::default())
}

/// Figure presets. All use `lambda = 1 cm`, `d = lambda/2`, `N = 128` and both
/// users at the common angle `(theta, phi)`.
///
/// * `fig1`: planar array, Delta vs beta, series `M` in {16, 64, 128}, `r2 = d_Ray`.
/// * `fig2`: linear array, Delta vs beta, `r2 = d_Ray`.
/// * `fig3`: linear array, Delta vs `r1` in [0.5, 100] m, series `r2` in {40, 20} m.
/// * `fig4`: linear array, Delta vs `r1` in [1, 200] m, series `r2 - r1` in {20, 40} m.
///
/// The linear-array presets include the `closed_form_ula` method only when
/// `phi = pi/2`.
pub fn preset_with(name: &str, opts: PresetOptions) -> Result<SweepSpec> {
    let user = UserLocation::new(1.0, opts.theta, opts.phi)?;
    let ula_ok = (opts.phi - PI / 2.0).abs() <= crate::resolution::ULA_ANGLE_TOL;
    let mut ula_methods = vec![Method::ClosedForm];
    if ula_ok {
        ula_methods.push(Method::ClosedFormUla);
    }
    ula_methods.extend([Method::OracleFresnel, Method::OracleExact]);
    let ula = ArrayConfig::half_wavelength(0, PRESET_N, PRESET_WAVELENGTH)?;

    let spec = match name {
        "fig1" => SweepSpec {
            name: name.into(),
            axis: Axis::Beta,
            axis_values: beta_grid(),
            config: ArrayConfig::half_wavelength(16, PRESET_N, PRESET_WAVELENGTH)?,
            user1: user,
            user2: user,
            second: SecondRange::Rayleigh,
            series: [16, 64, 128]
                .into_iter()
                .map(|m| Series {
                    m_half: Some(m),
                    ..Series::new(format!("M={m}"))
                })
                .collect(),
            methods: vec![
                Method::ClosedForm,
                Method::OracleFresnel,
                Method::OracleExact,
            ],
            output_path: None,
        },
        "fig2" => SweepSpec {
            name: name.into(),
            axis: Axis::Beta,
            axis_values: beta_grid(),
            config: ula,
            user1: user,
            user2: user,
            second: SecondRange::Rayleigh,
            series: Vec::new(),
            methods: ula_methods,
            output_path: None,
        },
        "fig3" => SweepSpec {
            name: name.into(),
            axis: Axis::R1,
            axis_values: linspace(0.5, 100.0, 200),
            config: ula,
            user1: user,
            user2: user,
            second: SecondRange::Fixed(40.0),
            series: [40.0, 20.0]
                .into_iter()
                .map(|r| Series {
                    second: Some(SecondRange::Fixed(r)),
                    ..Series::new(format!("r2={r}"))
                })
                .collect(),
            methods: ula_methods,
            output_path: None,
        },
        "fig4" => SweepSpec {
            name: name.into(),
            axis: Axis::R1,
            axis_values: linspace(1.0, 200.0, 200),
            config: ula,
            user1: user,
            user2: user,
            second: SecondRange::Offset(20.0),
            series: [20.0, 40.0]
                .into_iter()
                .map(|o| Series {
                    second: Some(SecondRange::Offset(o)),
                    ..Series::new(format!("offset={o}"))
                })
                .collect(),
            methods: ula_methods,
            output_path: None,
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(spec)
}

/// Parses a real number, also accepting `pi`, `pi/4`, `3*pi/4`, `2pi`.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::InvalidSweep(format!("cannot parse `{s}` as a number"));
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let Some(idx) = s.find("pi") else {
        return Err(bad());
    };
    let coef = s[..idx].trim().trim_end_matches('*').trim();
    let coef = if coef.is_empty() {
        1.0
    } else {
        coef.parse::<f64>().map_err(|_| bad())?
    };
    let rest = s[idx + 2..].trim();
    let div = match rest.strip_prefix('/') {
        Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(coef * PI / div)
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| Error::InvalidSweep(format!("expected a non-negative integer, got `{s}`")))
}

/// Parses the line-oriented `key = value` sweep description.
///
/// ```text
/// # Delta vs N for two fixed users
/// name = custom
/// axis = N                 # beta | r1 | N | M
/// values = 32, 64, 128     # or: range = start:stop:count
/// M = 0
/// N = 128                  # ignored on an N axis
/// lambda = 0.01
/// d = 0.005                # default lambda/2
/// r1 = 5
/// r2 = 10                  # meters, `rayleigh`, or `r1+<offset>`
/// theta = pi/2             # or theta1 / theta2 separately; same for phi
/// phi = pi/2
/// methods = closed_form, oracle_fresnel
/// series = M=8 M=8         # <label> [M=..] [N=..] [r2=..], repeatable
/// out = custom.csv
/// ```
///
/// Lengths are in meters, angles in radians.
pub fn parse_spec(text: &str) -> Result<SweepSpec> {
    let mut name = String::from("custom");
    let mut axis = None;
    let mut values = None;
    let (mut m_half, mut n_half) = (0u32, 0u32);
    let mut wavelength = PRESET_WAVELENGTH;
    let mut spacing = None;
    let (mut r1, mut second) = (1.0, SecondRange::Rayleigh);
    let (mut theta1, mut theta2, mut phi1, mut phi2) = (PI / 2.0, PI / 2.0, PI / 2.0, PI / 2.0);
    let mut methods = vec![Method::ClosedForm];
    let mut series = Vec::new();
    let mut output_path = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |e: Error| Error::SpecSyntax {
            line: line_no,
            msg: match e {
                Error::InvalidSweep(m) => m,
                other => other.to_string(),
            },
        };
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::SpecSyntax {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" => name = value.to_string(),
            "axis" => axis = Some(value.parse::<Axis>().map_err(err)?),
            "values" => {
                let v = value
                    .split(',')
                    .map(parse_real)
                    .collect::<Result<Vec<_>>>()
                    .map_err(err)?;
                values = Some(v);
            }
            "range" => {
                let parts: Vec<&str> = value.split(':').collect();
                if parts.len() != 3 {
                    return Err(err(Error::InvalidSweep(
                        "range must be start:stop:count".into(),
                    )));
                }
                let start = parse_real(parts[0]).map_err(err)?;
                let stop = parse_real(parts[1]).map_err(err)?;
                let count = parse_u32(parts[2]).map_err(err)?;
                values = Some(linspace(start, stop, count as usize));
            }
            "M" => m_half = parse_u32(value).map_err(err)?,
            "N" => n_half = parse_u32(value).map_err(err)?,
            "lambda" => wavelength = parse_real(value).map_err(err)?,
            "d" => spacing = Some(parse_real(value).map_err(err)?),
            "r1" => r1 = parse_real(value).map_err(err)?,
            "r2" => second = value.parse().map_err(err)?,
            "theta" => {
                theta1 = parse_real(value).map_err(err)?;
                theta2 = theta1;
            }
            "phi" => {
                phi1 = parse_real(value).map_err(err)?;
                phi2 = phi1;
            }
            "theta1" => theta1 = parse_real(value).map_err(err)?,
            "theta2" => theta2 = parse_real(value).map_err(err)?,
            "phi1" => phi1 = parse_real(value).map_err(err)?,
            "phi2" => phi2 = parse_real(value).map_err(err)?,
            "methods" => {
                methods = value
                    .split(',')
                    .map(|m| m.trim().parse::<Method>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(err)?;
            }
            "series" => series.push(parse_series(value).map_err(err)?),
            "out" => output_path = Some(PathBuf::from(value)),
            other => {
                return Err(Error::SpecSyntax {
                    line: line_no,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }

    let axis = axis.ok_or_else(|| Error::InvalidSweep("missing `axis`".into()))?;
    let axis_values =
        values.ok_or_else(|| Error::InvalidSweep("missing `values` or `range`".into()))?;
    let config = ArrayConfig::new(
        m_half,
        n_half,
        spacing.unwrap_or(wavelength / 2.0),
        wavelength,
    )?;
    let r2_placeholder = match second {
        SecondRange::Fixed(r) => r,
        _ => 1.0,
    };
    let spec = SweepSpec {
        name,
        axis,
        axis_values,
        config,
        user1: UserLocation::new(r1, theta1, phi1)?,
        user2: UserLocation::new(r2_placeholder, theta2, phi2)?,
        second,
        series,
        methods,
        output_path,
    };
    spec.validate()?;
    Ok(spec)
}

fn parse_series(value: &str) -> Result<Series> {
    let mut parts = value.split_whitespace();
    let label = parts
        .next()
        .ok_or_else(|| Error::InvalidSweep("series needs a label".into()))?;
    let mut s = Series::new(label);
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidSweep(format!("series override `{part}` lacks `=`")))?;
        match k {
            "M" => s.m_half = Some(parse_u32(v)?),
            "N" => s.n_half = Some(parse_u32(v)?),
            "r2" => s.second = Some(v.parse()?),
            other => {
                return Err(Error::InvalidSweep(format!(
                    "unknown series override `{other}`"
                )))
            }
        }
    }
    Ok(s)
}
