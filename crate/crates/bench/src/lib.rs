//! Fixtures shared by the benchmarks.

use nearfield::harness::random_pair;
use nearfield::{ArrayConfig, UserLocation};

pub const SIZES: [u32; 4] = [64, 128, 256, 512];
pub const WAVELENGTH: f64 = 0.01;

/// Square half-wavelength array and the seeded user pair used at every size.
pub fn fixture(size: u32) -> (ArrayConfig, UserLocation, UserLocation) {
    let cfg = ArrayConfig::half_wavelength(size, size, WAVELENGTH).expect("positive wavelength");
    let (u1, u2) = random_pair(7);
    (cfg, u1, u2)
}
