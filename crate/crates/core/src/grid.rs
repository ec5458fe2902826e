//! Radial sampling grids.

use crate::error::{Error, Result};

/// Number of log-spaced radii in the default verification grid.
pub const DEFAULT_POINTS: usize = 512;
pub const DEFAULT_R_MIN: f64 = 1e-4;
pub const DEFAULT_R_MAX: f64 = 1e6;

/// `n` radii log-spaced on `[a, b]`, endpoints included.
pub fn log_spaced(a: f64, b: f64, n: usize) -> Result<Vec<f64>> {
    if !(a > 0.0 && b >= a && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput(format!("log grid needs 0 < a <= b, got [{a}, {b}]")));
    }
    match n {
        0 => Err(Error::InvalidInput("grid needs at least one point".into())),
        1 => Ok(vec![a]),
        _ => {
            let (la, lb) = (a.ln(), b.ln());
            let step = (lb - la) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|i| (la + step * i as f64).exp()).collect();
            // pin the endpoints exactly
            v[0] = a;
            v[n - 1] = b;
            Ok(v)
        }
    }
}

/// `n` radii evenly spaced on `[a, b]`, endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|i| a + step * i as f64).collect();
            v[n - 1] = b;
            v
        }
    }
}

/// The default verification grid: 512 log-spaced radii in `[1e-4, 1e6]`,
/// preceded by `r = 0` when the profile is defined there.
pub fn default_grid(include_origin: bool) -> Vec<f64> {
    let mut v = Vec::with_capacity(DEFAULT_POINTS + 1);
    if include_origin {
        v.push(0.0);
    }
    v.extend(log_spaced(DEFAULT_R_MIN, DEFAULT_R_MAX, DEFAULT_POINTS).expect("valid constants"));
    v
}
