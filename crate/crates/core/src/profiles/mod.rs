//! Closed-form radial profiles with exact first and second derivatives.
//!
//! Every explicit function used by the witnesses, the comparison functions
//! and the test functions is one of these families. Profiles are immutable
//! value objects; the JSON encoding is a tagged union keyed by `"variant"`.

mod hamiltonian;
mod residual;

pub use hamiltonian::{DriftSpec, HamiltonianSpec};
pub use residual::{residual_at, residual_grid, residual_grid_default, ResidualReport};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::pucci::{pucci_radial, Ellipticity, RadialEigs, Sign};

/// A radial function `f(|x|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum RadialProfile {
    /// `C (1 + r^2)^(-delta/2)`.
    PowerDecay {
        #[serde(rename = "C")]
        amplitude: f64,
        delta: f64,
    },
    /// `Theta r^(-nu)` on `r > 0`.
    SingularPower {
        #[serde(rename = "Theta")]
        theta: f64,
        nu: f64,
    },
    /// `-log r` on `r > 0`.
    NegLog,
    /// `m_r (1 - ((r - r0)^+)^3 / (R - r0)^3)`.
    Cubic {
        m_r: f64,
        r0: f64,
        #[serde(rename = "R")]
        outer_radius: f64,
    },
    /// `Theta (r^(-nu) - R^(-nu)) + m_R` on `r > 0`.
    CompApprox {
        #[serde(rename = "Theta")]
        theta: f64,
        nu: f64,
        #[serde(rename = "R")]
        outer_radius: f64,
        #[serde(rename = "m_R")]
        outer_value: f64,
    },
    Constant {
        value: f64,
    },
    /// `coeff * r^2`.
    Quadratic {
        coeff: f64,
    },
    /// `factor * inner(r)`.
    Scaled {
        factor: f64,
        inner: Box<RadialProfile>,
    },
    /// `inner(r) + offset`.
    Shifted {
        offset: f64,
        inner: Box<RadialProfile>,
    },
}

/// Value and first two derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl RadialProfile {
    pub fn power_decay(amplitude: f64, delta: f64) -> Result<Self> {
        let p = Self::PowerDecay { amplitude, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn singular_power(theta: f64, nu: f64) -> Result<Self> {
        let p = Self::SingularPower { theta, nu };
        p.validate()?;
        Ok(p)
    }

    pub fn cubic(m_r: f64, r0: f64, outer_radius: f64) -> Result<Self> {
        let p = Self::Cubic { m_r, r0, outer_radius };
        p.validate()?;
        Ok(p)
    }

    pub fn comp_approx(theta: f64, nu: f64, outer_radius: f64, outer_value: f64) -> Result<Self> {
        let p = Self::CompApprox { theta, nu, outer_radius, outer_value };
        p.validate()?;
        Ok(p)
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self::Scaled { factor, inner: Box::new(self) }
    }

    pub fn shifted(self, offset: f64) -> Self {
        Self::Shifted { offset, inner: Box::new(self) }
    }

    /// Checks the family parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::PowerDecay { amplitude, delta } => {
                ensure_positive("C", *amplitude)?;
                ensure_positive("delta", *delta)
            }
            Self::SingularPower { theta, nu } => {
                ensure_positive("Theta", *theta)?;
                ensure_positive("nu", *nu)
            }
            Self::NegLog => Ok(()),
            Self::Cubic { m_r, r0, outer_radius } => {
                ensure_positive("m_r", *m_r)?;
                ensure_positive("r0", *r0)?;
                ensure_finite("R", *outer_radius)?;
                if outer_radius <= r0 {
                    return Err(Error::InvalidInput(format!(
                        "cubic profile needs R > r0, got R = {outer_radius}, r0 = {r0}"
                    )));
                }
                Ok(())
            }
            Self::CompApprox { theta, nu, outer_radius, outer_value } => {
                ensure_finite("Theta", *theta)?;
                ensure_positive("nu", *nu)?;
                ensure_positive("R", *outer_radius)?;
                ensure_finite("m_R", *outer_value)
            }
            Self::Constant { value } => ensure_finite("value", *value),
            Self::Quadratic { coeff } => ensure_finite("coeff", *coeff),
            Self::Scaled { factor, inner } => {
                ensure_finite("factor", *factor)?;
                inner.validate()
            }
            Self::Shifted { offset, inner } => {
                ensure_finite("offset", *offset)?;
                inner.validate()
            }
        }
    }

    /// Whether `r = 0` belongs to the natural domain.
    pub fn includes_origin(&self) -> bool {
        match self {
            Self::PowerDecay { .. } | Self::Cubic { .. } | Self::Constant { .. } | Self::Quadratic { .. } => true,
            Self::SingularPower { .. } | Self::NegLog | Self::CompApprox { .. } => false,
            Self::Scaled { inner, .. } | Self::Shifted { inner, .. } => inner.includes_origin(),
        }
    }

    pub fn in_domain(&self, r: f64) -> bool {
        r.is_finite() && (r > 0.0 || (r == 0.0 && self.includes_origin()))
    }

    /// True when the profile is known to be nonincreasing in `r`.
    pub fn is_nonincreasing(&self) -> bool {
        match self {
            Self::PowerDecay { amplitude, .. } => *amplitude >= 0.0,
            Self::SingularPower { theta, .. } => *theta >= 0.0,
            Self::NegLog => true,
            Self::Cubic { m_r, .. } => *m_r >= 0.0,
            Self::CompApprox { theta, .. } => *theta >= 0.0,
            Self::Constant { .. } => true,
            Self::Quadratic { coeff } => *coeff <= 0.0,
            Self::Scaled { factor, inner } => (*factor >= 0.0 && inner.is_nonincreasing()) || *factor == 0.0,
            Self::Shifted { inner, .. } => inner.is_nonincreasing(),
        }
    }

    fn check_domain(&self, r: f64) -> Result<()> {
        if self.in_domain(r) {
            Ok(())
        } else {
            Err(Error::Domain(format!("radius {r} is outside the profile domain")))
        }
    }

    /// Closed-form value and derivatives, without domain checks.
    fn raw_jet(&self, r: f64) -> Jet {
        match self {
            Self::PowerDecay { amplitude: c, delta: d } => {
                let s = 1.0 + r * r;
                let base = s.powf(-0.5 * d - 2.0);
                Jet {
                    value: c * s.powf(-0.5 * d),
                    d1: -c * d * r * s * base,
                    d2: c * d * base * ((d + 1.0) * r * r - 1.0),
                }
            }
            Self::SingularPower { theta, nu } => power_jet(*theta, *nu, r),
            Self::NegLog => Jet { value: -r.ln(), d1: -1.0 / r, d2: 1.0 / (r * r) },
            Self::Cubic { m_r, r0, outer_radius } => {
                let width = outer_radius - r0;
                let w3 = width * width * width;
                let s = (r - r0).max(0.0);
                Jet { value: m_r * (1.0 - s * s * s / w3), d1: -3.0 * m_r * s * s / w3, d2: -6.0 * m_r * s / w3 }
            }
            Self::CompApprox { theta, nu, outer_radius, outer_value } => {
                let j = power_jet(*theta, *nu, r);
                Jet { value: theta * (r.powf(-nu) - outer_radius.powf(-nu)) + outer_value, ..j }
            }
            Self::Constant { value } => Jet { value: *value, d1: 0.0, d2: 0.0 },
            Self::Quadratic { coeff } => Jet { value: coeff * r * r, d1: 2.0 * coeff * r, d2: 2.0 * coeff },
            Self::Scaled { factor, inner } => {
                let j = inner.raw_jet(r);
                Jet { value: factor * j.value, d1: factor * j.d1, d2: factor * j.d2 }
            }
            Self::Shifted { offset, inner } => {
                let j = inner.raw_jet(r);
                Jet { value: j.value + offset, ..j }
            }
        }
    }

    pub fn jet(&self, r: f64) -> Result<Jet> {
        self.check_domain(r)?;
        Ok(self.raw_jet(r))
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        Ok(self.jet(r)?.value)
    }

    pub fn deriv1(&self, r: f64) -> Result<f64> {
        Ok(self.jet(r)?.d1)
    }

    pub fn deriv2(&self, r: f64) -> Result<f64> {
        Ok(self.jet(r)?.d2)
    }

    /// The tangential Hessian eigenvalue `f'(r)/r`, continued by `f''(0)` at
    /// the origin (every family defined at 0 has `f'(0) = 0`).
    pub fn tangential(&self, r: f64) -> Result<f64> {
        let j = self.jet(r)?;
        Ok(if r == 0.0 { j.d2 } else { j.d1 / r })
    }

    /// Hessian eigenvalues at radius `r` in dimension `n`.
    pub fn eigs(&self, r: f64, n: usize) -> Result<RadialEigs> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let j = self.jet(r)?;
        let tangential = if r == 0.0 { j.d2 } else { j.d1 / r };
        Ok(RadialEigs { radial: j.d2, tangential, multiplicity: n - 1 })
    }

    /// `M+/-(D^2 f(|x|))` at radius `r`.
    pub fn pucci_at(&self, r: f64, ell: &Ellipticity, n: usize, sign: Sign) -> Result<f64> {
        pucci_radial(&self.eigs(r, n)?, ell, sign)
    }
}

fn power_jet(theta: f64, nu: f64, r: f64) -> Jet {
    let p = r.powf(-nu);
    Jet { value: theta * p, d1: -nu * theta * p / r, d2: nu * (nu + 1.0) * theta * p / (r * r) }
}
