//! The ball-minimum `m(R)` and the estimates built on it: monotonicity of
//! `m(R) R^e`, the decay bound `m(R) <= C R^(-2/(q-1))`, the comparison
//! subsolution on an annulus, the cubic test function and the logarithmic
//! Lyapunov function for drifts.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::grid::{linspace, log_spaced};
use crate::profiles::{DriftSpec, RadialProfile, ResidualReport};
use crate::pucci::{pucci_radial, Ellipticity, Sign};
use crate::regions::at_most;

/// Samples used for `m(R)` when the profile is not known to be monotone.
pub const M_SAMPLES: usize = 1024;
/// Relative drop tolerated between adjacent monotonicity samples.
pub const MONOTONE_TOLERANCE: f64 = 1e-10;
const PSI_POINTS: usize = 256;
const LYAPUNOV_POINTS: usize = 512;
const LYAPUNOV_R_MIN: f64 = 1e-4;

/// `min_{|x| <= R} u(x)` for a radial `u`.
pub fn m_profile(profile: &RadialProfile, radius: f64) -> Result<f64> {
    ensure_positive("R", radius)?;
    profile.validate()?;
    if profile.is_nonincreasing() {
        return profile.eval(radius);
    }
    let start = if profile.includes_origin() { 0.0 } else { radius / M_SAMPLES as f64 };
    linspace(start, radius, M_SAMPLES)
        .into_iter()
        .map(|r| profile.eval(r))
        .try_fold(f64::INFINITY, |m, v| Ok(m.min(v?)))
}

/// One adjacent pair where `m(R) R^e` drops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    pub r_left: f64,
    pub r_right: f64,
    pub drop: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub exponent: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub violations: Vec<Violation>,
}

impl MonotonicityReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `R -> m(R) R^exponent` is nondecreasing on `grid`.
pub fn hadamard_check(profile: &RadialProfile, exponent: f64, grid: &[f64]) -> Result<MonotonicityReport> {
    ensure_finite("exponent", exponent)?;
    let values = grid.iter().map(|&r| Ok(m_profile(profile, r)? * r.powf(exponent))).collect::<Result<Vec<f64>>>()?;
    let violations = values
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| {
            let drop = w[0] - w[1];
            (drop > MONOTONE_TOLERANCE * w[0].abs()).then(|| Violation {
                index: i,
                r_left: grid[i],
                r_right: grid[i + 1],
                drop,
            })
        })
        .collect();
    Ok(MonotonicityReport { exponent, grid: grid.to_vec(), values, violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayBound {
    /// `max m(R) R^(2/(q-1))` over the grid.
    pub constant: f64,
    pub argmax: f64,
    /// Log-log slope of `m(R) R^(2/(q-1))` over the last grid interval.
    pub tail_slope: f64,
    pub bounded: bool,
}

/// Tail slope below which a maximum attained at the grid end still counts as bounded.
const TAIL_SLOPE_TOLERANCE: f64 = 1e-6;

/// Fits `C*` in `m(R) <= C* R^(-2/(q-1))` and decides whether it is finite.
pub fn decay_bound_check(profile: &RadialProfile, q: f64, grid: &[f64]) -> Result<DecayBound> {
    ensure_finite("q", q)?;
    if q <= 1.0 {
        return Err(Error::InvalidInput(format!("decay bound needs q > 1, got {q}")));
    }
    if grid.len() < 2 {
        return Err(Error::InvalidInput("decay bound needs at least two radii".into()));
    }
    let e = 2.0 / (q - 1.0);
    let values = grid.iter().map(|&r| Ok(m_profile(profile, r)? * r.powf(e))).collect::<Result<Vec<f64>>>()?;
    let (idx, constant) = values.iter().copied().enumerate().max_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty grid");
    let k = values.len() - 1;
    let tail_slope = if values[k] > 0.0 && values[k - 1] > 0.0 {
        (values[k] / values[k - 1]).ln() / (grid[k] / grid[k - 1]).ln()
    } else {
        0.0
    };
    let bounded = constant.is_finite() && (idx != k || tail_slope <= TAIL_SLOPE_TOLERANCE);
    Ok(DecayBound { constant, argmax: grid[idx], tail_slope, bounded })
}

/// Both sides of the inequality that makes the comparison function a
/// subsolution on the annulus `R1 < |x| < R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrucialInequality {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Annulus data shared by [`crucineq`] and [`psi_comparison`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusData {
    pub r1: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub m1: f64,
    #[serde(rename = "mR")]
    pub m_r: f64,
    pub nu: f64,
    pub gamma: f64,
}

impl AnnulusData {
    fn validate(&self, ell: &Ellipticity, n: usize) -> Result<()> {
        ensure_positive("R1", self.r1)?;
        ensure_finite("R", self.r)?;
        ensure_finite("m1", self.m1)?;
        ensure_finite("mR", self.m_r)?;
        ensure_positive("nu", self.nu)?;
        ensure_finite("gamma", self.gamma)?;
        let beta = ell.beta(n);
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.r <= self.r1 {
            return bad(format!("need R1 < R, got {} >= {}", self.r1, self.r));
        }
        if self.nu >= beta - 2.0 {
            return bad(format!("need nu < beta - 2 = {}, got {}", beta - 2.0, self.nu));
        }
        if !(self.m1 >= self.m_r && self.m_r >= 0.0) {
            return bad(format!("need m1 >= mR >= 0, got {} and {}", self.m1, self.m_r));
        }
        if !(self.gamma > 1.0 && at_most(self.gamma, beta / (beta - 1.0))) {
            return bad(format!("need 1 < gamma <= beta/(beta-1), got {}", self.gamma));
        }
        Ok(())
    }
}

/// Literal evaluation of
/// `m1 R1^p >= (1 - (R1/R)^nu) (lambda (beta - nu - 2))^(1/(gamma-1)) / nu + mR R1^p`,
/// `p = (2 - gamma)/(gamma - 1)`.
pub fn crucineq(data: &AnnulusData, ell: &Ellipticity, n: usize) -> Result<CrucialInequality> {
    data.validate(ell, n)?;
    let AnnulusData { r1, r, m1, m_r, nu, gamma } = *data;
    let beta = ell.beta(n);
    let p = (2.0 - gamma) / (gamma - 1.0);
    let r1p = r1.powf(p);
    let lhs = m1 * r1p;
    let rhs = (1.0 - (r1 / r).powf(nu)) * (ell.lambda() * (beta - nu - 2.0)).powf(1.0 / (gamma - 1.0)) / nu + m_r * r1p;
    Ok(CrucialInequality { lhs, rhs, holds: lhs >= rhs })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiReport {
    pub profile: RadialProfile,
    /// `|DPsi|^gamma - M+(D^2 Psi)` on the annulus.
    pub residual: ResidualReport,
    /// Minimum of the residual divided by `1 + |DPsi|^gamma + |M+(D^2 Psi)|`.
    pub scaled_min: f64,
    pub crucineq: CrucialInequality,
    /// False only when the inequality holds but the residual is negative.
    pub consistent: bool,
}

/// Builds `Psi = Theta (r^-nu - R^-nu) + mR` through `Psi(R1) = m1` and
/// tests `M+(D^2 Psi) <= |DPsi|^gamma` on the annulus.
pub fn psi_comparison(data: &AnnulusData, ell: &Ellipticity, n: usize) -> Result<PsiReport> {
    let crucial = crucineq(data, ell, n)?;
    let AnnulusData { r1, r, m1, m_r, nu, gamma } = *data;
    let theta = (m1 - m_r) / (r1.powf(-nu) - r.powf(-nu));
    let profile = RadialProfile::comp_approx(theta, nu, r, m_r)?;
    let grid = log_spaced(r1, r, PSI_POINTS)?;
    let mut values = Vec::with_capacity(grid.len());
    let mut scaled_min = f64::INFINITY;
    for &x in &grid {
        let jet = profile.jet(x)?;
        let op = pucci_radial(&profile.eigs(x, n)?, ell, Sign::Plus)?;
        let grad = jet.d1.abs().powf(gamma);
        let v = grad - op;
        scaled_min = scaled_min.min(v / (1.0 + grad + op.abs()));
        values.push(v);
    }
    let residual = ResidualReport::from_values(grid, values)?;
    let consistent = !crucial.holds || scaled_min >= -1e-9;
    Ok(PsiReport { profile, residual, scaled_min, crucineq: crucial, consistent })
}

/// `M+` of the cubic test function in closed form.
pub fn cubic_operator_formula(m_r: f64, r0: f64, outer: f64, ell: &Ellipticity, n: usize, r: f64) -> f64 {
    let s = (r - r0).max(0.0);
    let w = outer - r0;
    3.0 * ell.big_lambda() * m_r / (w * w * w) * (2.0 + (n as f64 - 1.0) * s / r) * s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicBound {
    pub max_operator: f64,
    pub argmax: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares `max M+(D^2 phi)` over `(R/2, R)` with `3 Lambda (N+1) m_r / (R/2)^2`.
pub fn cubic_bound_check(m_r: f64, outer: f64, ell: &Ellipticity, n: usize, samples: usize) -> Result<CubicBound> {
    let r0 = 0.5 * outer;
    let profile = RadialProfile::cubic(m_r, r0, outer)?;
    if samples < 1 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let w = outer - r0;
    let mut best = (f64::NEG_INFINITY, r0);
    for i in 1..=samples {
        let r = r0 + w * i as f64 / (samples + 1) as f64;
        let v = profile.pucci_at(r, ell, n, Sign::Plus)?;
        if v > best.0 {
            best = (v, r);
        }
    }
    let bound = 3.0 * ell.big_lambda() * (n as f64 + 1.0) * m_r / (w * w);
    Ok(CubicBound { max_operator: best.0, argmax: best.1, bound, holds: best.0 <= bound + 1e-9 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LyapunovReport {
    pub admissible: bool,
    /// Smallest sampled radius from which the inequality holds up to `r_max`.
    pub r0: Option<f64>,
    /// `-max g` over `[r0, r_max]`, or `-g` at `r_max` when inadmissible.
    pub margin: f64,
}

/// Scans `g(r) = r^2 (M(D^2 w) - b·Dw)` for `w = -log r`; the logarithm is a
/// Lyapunov function from `r0` on when `g <= 0` there.
pub fn lyapunov_scan(drift: &DriftSpec, ell: &Ellipticity, n: usize, r_max: f64, sign: Sign) -> Result<LyapunovReport> {
    drift.validate()?;
    ensure_finite("r_max", r_max)?;
    if r_max <= LYAPUNOV_R_MIN {
        return Err(Error::InvalidInput(format!("r_max must exceed {LYAPUNOV_R_MIN}, got {r_max}")));
    }
    let w = RadialProfile::NegLog;
    let tol = 1e-12 * (1.0 + ell.big_lambda() * n as f64);
    if let DriftSpec::Asymptotic { limsup_bx } = drift {
        let g = w.pucci_at(1.0, ell, n, sign)? + limsup_bx;
        let ok = g <= tol;
        return Ok(LyapunovReport { admissible: ok, r0: None, margin: -g });
    }
    let grid = log_spaced(LYAPUNOV_R_MIN, r_max, LYAPUNOV_POINTS)?;
    let g: Vec<f64> = grid
        .iter()
        .map(|&r| {
            let op = w.pucci_at(r, ell, n, sign)?;
            let tang = w.tangential(r)?;
            Ok(r * r * (op - drift.b_dot_x(r)? * tang))
        })
        .collect::<Result<_>>()?;
    let last = g.len() - 1;
    if g[last] > tol {
        return Ok(LyapunovReport { admissible: false, r0: None, margin: -g[last] });
    }
    let mut start = last;
    let mut worst = g[last];
    while start > 0 && g[start - 1] <= tol {
        start -= 1;
        worst = worst.max(g[start]);
    }
    Ok(LyapunovReport { admissible: true, r0: Some(grid[start]), margin: -worst })
}
