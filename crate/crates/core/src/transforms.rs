//! Changes of unknown and the elementary inequalities behind the comparison
//! arguments: the Hopf-Cole transform and its chain rule, the power
//! substitution `u = v^b`, a mixed quadrature transform, the monotonicity
//! inequality for `|t|^(q-1) t` and the exponential transform for the
//! Laplacian with drift.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::profiles::{DriftSpec, RadialProfile, ResidualReport};
use crate::pucci::{pucci_radial, Ellipticity, RadialEigs, Sign};
use crate::regions::exceeds;

/// `v = lambda (1 - exp(-u / lambda))`.
pub fn hopf_cole(u: f64, lambda: f64) -> Result<f64> {
    ensure_finite("u", u)?;
    ensure_positive("lambda", lambda)?;
    Ok(-lambda * (-u / lambda).exp_m1())
}

/// Inverse of [`hopf_cole`], defined for `v < lambda`.
pub fn hopf_cole_inv(v: f64, lambda: f64) -> Result<f64> {
    ensure_finite("v", v)?;
    ensure_positive("lambda", lambda)?;
    if v >= lambda {
        return Err(Error::Domain(format!("inverse transform needs v < lambda, got {v} >= {lambda}")));
    }
    Ok(-lambda * (-v / lambda).ln_1p())
}

/// Pointwise residual of
/// `(M+(D^2 v) - b·Dv) - (M+(D^2 u) + |Du|^2 - b·Du) e^(-u/lambda)` for
/// `v = hopf_cole(u)`; nonnegative for smooth `u`, zero when `lambda = Lambda`.
pub fn hopf_cole_chain_check(
    profile: &RadialProfile,
    drift: &DriftSpec,
    ell: &Ellipticity,
    n: usize,
    grid: &[f64],
) -> Result<ResidualReport> {
    profile.validate()?;
    drift.validate()?;
    let lam = ell.lambda();
    let mut values = Vec::with_capacity(grid.len());
    for &r in grid {
        let jet = profile.jet(r)?;
        let eu = profile.eigs(r, n)?;
        let bx = drift.b_dot_x(r)?;
        let g1 = (-jet.value / lam).exp();
        let g2 = -g1 / lam;
        let ev = RadialEigs {
            radial: g2 * jet.d1 * jet.d1 + g1 * jet.d2,
            tangential: g1 * eu.tangential,
            multiplicity: eu.multiplicity,
        };
        let lhs = pucci_radial(&ev, ell, Sign::Plus)? - bx * ev.tangential;
        let rhs = (pucci_radial(&eu, ell, Sign::Plus)? + jet.d1 * jet.d1 - bx * eu.tangential) * g1;
        values.push(lhs - rhs);
    }
    ResidualReport::from_values(grid.to_vec(), values)
}

/// Exponents produced by the substitution `u = v^b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple {
    pub b: f64,
    pub s: f64,
    pub z: f64,
}

/// `s = 1 - gamma + b(q + gamma - 1)`, `z = (2s + gamma)/(s + 1)`.
pub fn power_transform(q: f64, gamma: f64, b: f64) -> Result<ExponentTriple> {
    ensure_finite("q", q)?;
    ensure_finite("gamma", gamma)?;
    ensure_finite("b", b)?;
    if b * (b - 1.0) <= 0.0 {
        return Err(Error::InvalidInput(format!("substitution exponent needs b(b-1) > 0, got b = {b}")));
    }
    let s = 1.0 - gamma + b * (q + gamma - 1.0);
    if s <= -1.0 {
        return Err(Error::Domain(format!("s = {s} <= -1 leaves z undefined")));
    }
    Ok(ExponentTriple { b, s, z: (2.0 * s + gamma) / (s + 1.0) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Transfer {
    Transferable { delta: f64, exponents: ExponentTriple },
    NotTransferable,
}

/// Looks for `b = 1 + delta`, `delta in {1e-1, ..., 1e-8}`, moving the
/// exponents into the range `s > 0`, `z < beta/(beta-1)`; only attempted
/// strictly inside `(beta-2)q + (beta-1)gamma < beta`.
pub fn region_transfer_check(q: f64, gamma: f64, ell: &Ellipticity, n: usize) -> Result<Transfer> {
    ensure_finite("q", q)?;
    ensure_finite("gamma", gamma)?;
    let beta = ell.beta(n);
    if !exceeds(beta, (beta - 2.0) * q + (beta - 1.0) * gamma) {
        return Ok(Transfer::NotTransferable);
    }
    let z_max = beta / (beta - 1.0);
    for k in 1..=8 {
        let delta = 10f64.powi(-k);
        if let Ok(t) = power_transform(q, gamma, 1.0 + delta) {
            if t.s > 0.0 && t.z < z_max {
                return Ok(Transfer::Transferable { delta, exponents: t });
            }
        }
    }
    Ok(Transfer::NotTransferable)
}

const SIMPSON_TOLERANCE: f64 = 1e-12;
const SIMPSON_MAX_DEPTH: u32 = 60;

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, SIMPSON_MAX_DEPTH)
}

/// `v = int_0^u exp(-s^(q+1) / ((q+1) lambda)) ds`.
pub fn mixquad_transform(u: f64, q: f64, lambda: f64) -> Result<f64> {
    ensure_finite("u", u)?;
    ensure_finite("q", q)?;
    ensure_positive("lambda", lambda)?;
    if u < 0.0 {
        return Err(Error::InvalidInput(format!("u must be nonnegative, got {u}")));
    }
    if q < 0.0 {
        return Err(Error::InvalidInput(format!("q must be nonnegative, got {q}")));
    }
    let k = q + 1.0;
    let f = move |s: f64| (-s.powf(k) / (k * lambda)).exp();
    Ok(integrate(&f, 0.0, u, SIMPSON_TOLERANCE))
}

/// `(|v|^(q-1) v - |u|^(q-1) u)(v - u) >= 2^(1-q) |v - u|^(q+1)`, up to
/// `1e-12 (1 + |u| + |v|)^(q+1)`.
pub fn lcp_inequality_check(u: f64, v: f64, q: f64) -> Result<bool> {
    ensure_finite("u", u)?;
    ensure_finite("v", v)?;
    ensure_finite("q", q)?;
    if q < 1.0 {
        return Err(Error::InvalidInput(format!("q must be at least 1, got {q}")));
    }
    Ok(lcp_gap(u, v, q) >= -1e-12 * (1.0 + u.abs() + v.abs()).powf(q + 1.0))
}

/// Left side minus right side of the inequality in [`lcp_inequality_check`].
pub fn lcp_gap(u: f64, v: f64, q: f64) -> f64 {
    let pw = |t: f64| t.abs().powf(q - 1.0) * t;
    (pw(v) - pw(u)) * (v - u) - 2f64.powf(1.0 - q) * (v - u).abs().powf(q + 1.0)
}

/// Residual of the identity
/// `-Lap v + b·Dv + f v = v [Lap u - |Du|^2 - b·Du + f]` for `v = exp(-u)`.
pub fn euclidean_exp_transform_check(
    profile: &RadialProfile,
    drift: &DriftSpec,
    f_rhs: &RadialProfile,
    n: usize,
    grid: &[f64],
) -> Result<ResidualReport> {
    profile.validate()?;
    drift.validate()?;
    f_rhs.validate()?;
    let m = (n.max(1) - 1) as f64;
    let mut values = Vec::with_capacity(grid.len());
    for &r in grid {
        let jet = profile.jet(r)?;
        let tu = profile.tangential(r)?;
        let bx = drift.b_dot_x(r)?;
        let f = f_rhs.eval(r)?;
        let v = (-jet.value).exp();
        let vrr = v * (jet.d1 * jet.d1 - jet.d2);
        let tv = -v * tu;
        let lap_u = jet.d2 + m * tu;
        let lap_v = vrr + m * tv;
        let lhs = -lap_v + bx * tv + f * v;
        let rhs = v * (lap_u - jet.d1 * jet.d1 - bx * tu + f);
        values.push(lhs - rhs);
    }
    ResidualReport::from_values(grid.to_vec(), values)
}
