//! Dirichlet-type kernel `Phi(x, y, K) = sin(2 pi x y L) / sin(2 pi x y)` with
//! `L = 2K - y + 1`, and a compensated accumulator for the kernel sums.
//!
//! The ratio equals the finite cosine sum
//! `sum_{j=0}^{L-1} cos(2 pi x y (2j - (L-1)))` wherever it is defined. The
//! ratio is 0/0 whenever `2xy` is an integer; near those points the sum form
//! is used instead.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this `|sin(2 pi x y)|` the kernel is evaluated as a cosine sum.
pub const SINGULAR_EPS: f64 = 1e-6;

/// `Phi(x, y, K)` for `1 <= y <= 2K`.
pub fn phi_kernel(x: f64, y: u32, k: u32) -> Result<f64> {
    if y == 0 || u64::from(y) > 2 * u64::from(k) {
        return Err(Error::KernelRange { y, k });
    }
    Ok(phi_unchecked(x, y, k))
}

/// Shift `x y` by the nearest multiple of 1/2. Returns the residual and the
/// sign `(-1)^(k (L-1))` picked up by both the ratio and the sum.
#[inline]
fn reduce(xy: f64, len: u64) -> (f64, f64) {
    let k = (2.0 * xy).round();
    let w = xy - 0.5 * k;
    let odd = (k.abs() % 2.0 == 1.0) && (len - 1) % 2 == 1;
    (w, if odd { -1.0 } else { 1.0 })
}

#[inline]
pub(crate) fn phi_unchecked(x: f64, y: u32, k: u32) -> f64 {
    let len = 2 * u64::from(k) - u64::from(y) + 1;
    if x == 0.0 {
        return len as f64;
    }
    let (w, sign) = reduce(x * f64::from(y), len);
    let den = (2.0 * PI * w).sin();
    if den.abs() >= SINGULAR_EPS {
        sign * (2.0 * PI * w * len as f64).sin() / den
    } else {
        sign * cosine_sum(w, len)
    }
}

/// `sum_{j=0}^{len-1} cos(2 pi w (2j - (len-1)))`, folded on its symmetry.
fn cosine_sum(w: f64, len: u64) -> f64 {
    let mut acc = NeumaierSum::default();
    let top = len - 1;
    // q = 2j - (len-1) runs over -top..=top in steps of 2; cos is even.
    for i in 0..len / 2 {
        let q = (top - 2 * i) as f64;
        acc += 2.0 * (2.0 * PI * w * q).cos();
    }
    if len % 2 == 1 {
        acc += 1.0;
    }
    acc.sum()
}

/// Direct cosine-sum form of the kernel, without range reduction or folding.
pub fn phi_kernel_sum(x: f64, y: u32, k: u32) -> Result<f64> {
    if y == 0 || u64::from(y) > 2 * u64::from(k) {
        return Err(Error::KernelRange { y, k });
    }
    let len = 2 * i64::from(k) - i64::from(y) + 1;
    let xy = x * f64::from(y);
    let mut acc = NeumaierSum::default();
    for j in 0..len {
        acc += (2.0 * PI * xy * (2 * j - (len - 1)) as f64).cos();
    }
    Ok(acc.sum())
}

/// Kahan-Babuska-Neumaier running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::ops::AddAssign<f64> for NeumaierSum {
    #[inline]
    fn add_assign(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }
}

impl std::iter::Sum<f64> for NeumaierSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::default();
        for v in iter {
            acc += v;
        }
        acc
    }
}
