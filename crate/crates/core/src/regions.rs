//! Exponent regions shared by the classifier and the witness constructors.
//!
//! Comparisons are strict with a tiny relative margin, so that a lattice
//! point lying on a boundary up to rounding (for instance `2q + 3gamma = 4`
//! computed from decimal inputs) lands on the same side everywhere.

/// Relative margin used by every region comparison.
pub const REGION_TOLERANCE: f64 = 1e-12;

/// `lhs > rhs` beyond rounding.
pub fn exceeds(lhs: f64, rhs: f64) -> bool {
    lhs - rhs > REGION_TOLERANCE * (1.0 + lhs.abs() + rhs.abs())
}

/// `lhs <= rhs` up to rounding; the exact complement of [`exceeds`].
pub fn at_most(lhs: f64, rhs: f64) -> bool {
    !exceeds(lhs, rhs)
}

/// `d / (d - 2)`, infinite when `d <= 2`.
pub fn critical_q(d: f64) -> f64 {
    if exceeds(d, 2.0) {
        d / (d - 2.0)
    } else {
        f64::INFINITY
    }
}

/// `d / (d - 1)`, infinite when `d <= 1`.
pub fn critical_gamma(d: f64) -> f64 {
    if exceeds(d, 1.0) {
        d / (d - 1.0)
    } else {
        f64::INFINITY
    }
}

/// `q > d/(d-2)` written without division.
pub fn q_supercritical(d: f64, q: f64) -> bool {
    exceeds(d, 2.0) && exceeds((d - 2.0) * q, d)
}

/// `gamma > d/(d-1)` written without division.
pub fn gamma_supercritical(d: f64, gamma: f64) -> bool {
    exceeds(d, 1.0) && exceeds((d - 1.0) * gamma, d)
}

/// The region where the power-decay family violates Liouville for
/// `M(D^2 u) >= u^q + |Du|^gamma` with effective dimension `d`.
pub fn h1_failure(d: f64, q: f64, gamma: f64) -> bool {
    q_supercritical(d, q) && gamma_supercritical(d, gamma)
}

/// `(d - 2) q + (d - 1) gamma > d`, the failure region for `u^q |Du|^gamma`.
pub fn h2_failure(d: f64, q: f64, gamma: f64) -> bool {
    exceeds(d, 2.0) && exceeds((d - 2.0) * q + (d - 1.0) * gamma, d)
}

/// `(d - 2) q + (d - 1) gamma <= d`.
pub fn h2_subcritical(d: f64, q: f64, gamma: f64) -> bool {
    at_most((d - 2.0) * q + (d - 1.0) * gamma, d)
}
