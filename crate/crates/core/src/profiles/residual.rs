use serde::{Deserialize, Serialize};

use super::{HamiltonianSpec, RadialProfile};
use crate::error::{Error, Result};
use crate::grid::default_grid;
use crate::pucci::{pucci_radial, Ellipticity, Sign};

/// Pointwise residual `M(D^2 u) - H` over a set of radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub min: f64,
    pub argmin: f64,
    pub argmin_index: usize,
    pub max_abs: f64,
}

impl ResidualReport {
    pub fn from_values(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.is_empty() || radii.len() != values.len() {
            return Err(Error::InvalidInput("residual report needs matching nonempty arrays".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("residual is not finite at r = {}", radii[i])));
        }
        let (argmin_index, min) =
            values.iter().copied().enumerate().min_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty");
        let max_abs = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        Ok(Self { argmin: radii[argmin_index], radii, values, min, argmin_index, max_abs })
    }

    /// `min >= -tol`.
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.min >= -tol
    }
}

/// Residual of `M_sign(D^2 u) >= H` at one radius.
pub fn residual_at(
    profile: &RadialProfile,
    ham: &HamiltonianSpec,
    ell: &Ellipticity,
    n: usize,
    sign: Sign,
    r: f64,
) -> Result<f64> {
    let jet = profile.jet(r)?;
    let eigs = profile.eigs(r, n)?;
    let op = pucci_radial(&eigs, ell, sign)?;
    Ok(op - ham.evaluate(jet.value, jet.d1, eigs.tangential, r)?)
}

/// Evaluates the residual on every radius of `grid`.
pub fn residual_grid(
    profile: &RadialProfile,
    ham: &HamiltonianSpec,
    ell: &Ellipticity,
    n: usize,
    sign: Sign,
    grid: &[f64],
) -> Result<ResidualReport> {
    profile.validate()?;
    ham.validate()?;
    let values = grid.iter().map(|&r| residual_at(profile, ham, ell, n, sign, r)).collect::<Result<Vec<_>>>()?;
    ResidualReport::from_values(grid.to_vec(), values)
}

/// [`residual_grid`] on the default grid, with the origin when the profile allows it.
pub fn residual_grid_default(
    profile: &RadialProfile,
    ham: &HamiltonianSpec,
    ell: &Ellipticity,
    n: usize,
    sign: Sign,
) -> Result<ResidualReport> {
    residual_grid(profile, ham, ell, n, sign, &default_grid(profile.includes_origin()))
}
