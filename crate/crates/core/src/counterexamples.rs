//! Explicit non-constant solutions in the regions where Liouville fails.
//!
//! Each constructor picks the exponent in the middle of its feasibility
//! interval, fixes an amplitude from a closed-form sufficient condition and
//! then re-verifies the residual on the default grid. A witness that fails
//! the numerical check is reported as [`Error::Verification`], never returned.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::grid::default_grid;
use crate::profiles::{residual_grid, DriftSpec, HamiltonianSpec, RadialProfile, ResidualReport};
use crate::pucci::{Ellipticity, Sign};
use crate::regions::{exceeds, gamma_supercritical, h1_failure, h2_failure};

/// Tolerance on the minimum residual of a shipped witness.
pub const WITNESS_TOLERANCE: f64 = 1e-12;

/// Cap on amplitude halvings in [`h1_witness`].
const MAX_HALVINGS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub profile: RadialProfile,
    pub drift: Option<DriftSpec>,
    pub feasibility_interval: (f64, f64),
    pub chosen_delta: f64,
    pub chosen_amplitude: f64,
    pub residual: ResidualReport,
}

/// Outcome of a witness search.
#[derive(Debug, Clone, PartialEq)]
pub enum Synthesis {
    Found(Box<WitnessReport>),
    /// No admissible exponent; `interval` is the range that was searched.
    Infeasible {
        interval: (f64, f64),
    },
}

impl Synthesis {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Found(_))
    }

    pub fn report(&self) -> Option<&WitnessReport> {
        match self {
            Self::Found(r) => Some(r),
            Self::Infeasible { .. } => None,
        }
    }

    pub fn into_report(self) -> Option<WitnessReport> {
        match self {
            Self::Found(r) => Some(*r),
            Self::Infeasible { .. } => None,
        }
    }
}

fn check_exponents(q: f64, gamma: f64) -> Result<()> {
    ensure_finite("q", q)?;
    ensure_finite("gamma", gamma)?;
    if q < 0.0 {
        return Err(Error::InvalidInput(format!("q must be nonnegative, got {q}")));
    }
    if gamma <= 0.0 {
        return Err(Error::InvalidInput(format!("gamma must be positive, got {gamma}")));
    }
    Ok(())
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `num / den`, or infinity when `den <= 0`.
fn ratio_or_inf(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

fn verified(
    profile: RadialProfile,
    ham: &HamiltonianSpec,
    ell: &Ellipticity,
    n: usize,
    grid: &[f64],
) -> Result<(RadialProfile, ResidualReport)> {
    let residual = residual_grid(&profile, ham, ell, n, Sign::Plus, grid)?;
    if residual.is_nonnegative(WITNESS_TOLERANCE) {
        Ok((profile, residual))
    } else {
        Err(Error::Verification(format!(
            "witness residual {:e} at r = {:e} is below -{WITNESS_TOLERANCE:e}",
            residual.min, residual.argmin
        )))
    }
}

/// Power-decay solution of `M+(D^2 u) >= u^q + |Du|^gamma`.
pub fn h1_witness(q: f64, gamma: f64, ell: &Ellipticity, n: usize) -> Result<Synthesis> {
    check_exponents(q, gamma)?;
    check_dimension(n)?;
    let beta = ell.beta(n);
    let low = ratio_or_inf(2.0, q - 1.0).max(ratio_or_inf(2.0 - gamma, gamma - 1.0)).max(0.0);
    let interval = (low, beta - 2.0);
    if !h1_failure(beta, q, gamma) {
        return Ok(Synthesis::Infeasible { interval });
    }
    let delta = 0.5 * (interval.0 + interval.1);
    let lam = ell.lambda();
    let mut k = 1.0_f64;
    let mut ok = false;
    for _ in 0..MAX_HALVINGS {
        if lam * delta * k * (beta - delta - 2.0) >= k.powf(q) + (delta * k).powf(gamma) {
            ok = true;
            break;
        }
        k *= 0.5;
    }
    if !ok {
        return Err(Error::Verification(format!("no admissible amplitude after {MAX_HALVINGS} halvings")));
    }
    let ham = HamiltonianSpec::H1 { q, gamma };
    let (profile, residual) = verified(RadialProfile::power_decay(k, delta)?, &ham, ell, n, &default_grid(true))?;
    Ok(Synthesis::Found(Box::new(WitnessReport {
        profile,
        drift: None,
        feasibility_interval: interval,
        chosen_delta: delta,
        chosen_amplitude: k,
        residual,
    })))
}

/// Power-decay solution of `M+(D^2 u) >= u^q |Du|^gamma`.
pub fn h2_witness(q: f64, gamma: f64, ell: &Ellipticity, n: usize) -> Result<Synthesis> {
    check_exponents(q, gamma)?;
    check_dimension(n)?;
    let beta = ell.beta(n);
    let p = q + gamma - 1.0;
    let interval = (ratio_or_inf(2.0 - gamma, p).max(0.0), beta - 2.0);
    if !h2_failure(beta, q, gamma) {
        return Ok(Synthesis::Infeasible { interval });
    }
    let delta = 0.5 * (interval.0 + interval.1);
    let amplitude = 0.5 * (ell.lambda() * (beta - delta - 2.0) / delta.powf(gamma - 1.0)).powf(1.0 / p);
    let ham = HamiltonianSpec::H2 { q, gamma };
    let (profile, residual) =
        verified(RadialProfile::power_decay(amplitude, delta)?, &ham, ell, n, &default_grid(true))?;
    Ok(Synthesis::Found(Box::new(WitnessReport {
        profile,
        drift: None,
        feasibility_interval: interval,
        chosen_delta: delta,
        chosen_amplitude: amplitude,
        residual,
    })))
}

/// Singular solution `Theta r^(-nu)`, `nu = (2 - gamma)/(gamma - 1)`, of
/// `M+(D^2 u) >= |Du|^gamma` away from the origin.
pub fn singular_h2_witness(gamma: f64, ell: &Ellipticity, n: usize) -> Result<Synthesis> {
    check_exponents(0.0, gamma)?;
    check_dimension(n)?;
    let beta = ell.beta(n);
    let interval = (0.0, beta - 2.0);
    if !(gamma_supercritical(beta, gamma) && exceeds(2.0, gamma)) {
        return Ok(Synthesis::Infeasible { interval });
    }
    let nu = (2.0 - gamma) / (gamma - 1.0);
    let theta = 0.5 * (ell.lambda() * (beta - nu - 2.0) / nu.powf(gamma - 1.0)).powf(1.0 / (gamma - 1.0));
    let ham = HamiltonianSpec::H2 { q: 0.0, gamma };
    let (profile, residual) = verified(RadialProfile::singular_power(theta, nu)?, &ham, ell, n, &default_grid(false))?;
    Ok(Synthesis::Found(Box::new(WitnessReport {
        profile,
        drift: None,
        feasibility_interval: interval,
        chosen_delta: nu,
        chosen_amplitude: theta,
        residual,
    })))
}

/// Bounded non-constant solution of `M+(D^2 u) - b·Du >= 0` with
/// `b(x) = lambda (2 - beta + delta) x / (1 + |x|^2)`.
pub fn drift_witness(ell: &Ellipticity, n: usize, delta: f64) -> Result<WitnessReport> {
    check_dimension(n)?;
    ensure_finite("delta", delta)?;
    let beta = ell.beta(n);
    if !(delta > 0.0 && delta < beta - 2.0) {
        return Err(Error::InvalidInput(format!("delta must lie in (0, {}), got {delta}", beta - 2.0)));
    }
    let drift = DriftSpec::ScaledRadial { c: ell.lambda() * (2.0 - beta + delta) };
    let ham = HamiltonianSpec::drift_only(drift.clone());
    let (profile, residual) = verified(RadialProfile::power_decay(1.0, delta)?, &ham, ell, n, &default_grid(true))?;
    Ok(WitnessReport {
        profile,
        drift: Some(drift),
        feasibility_interval: (0.0, beta - 2.0),
        chosen_delta: delta,
        chosen_amplitude: 1.0,
        residual,
    })
}
