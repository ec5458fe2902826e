use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};

/// Drift field `b(x)` in the gradient-dependent model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum DriftSpec {
    Zero,
    /// `b(x) = c x / (1 + |x|^2)`.
    ScaledRadial {
        c: f64,
    },
    /// Only `limsup_{|x|->inf} b(x)·x` is known; no pointwise field.
    Asymptotic {
        limsup_bx: f64,
    },
}

impl DriftSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Zero => Ok(()),
            Self::ScaledRadial { c } => ensure_finite("c", *c),
            Self::Asymptotic { limsup_bx } => ensure_finite("limsup_bx", *limsup_bx),
        }
    }

    /// `limsup_{|x|->inf} b(x)·x`.
    pub fn limsup(&self) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::ScaledRadial { c } => *c,
            Self::Asymptotic { limsup_bx } => *limsup_bx,
        }
    }

    /// `b(x)·x` at `|x| = r`.
    pub fn b_dot_x(&self, r: f64) -> Result<f64> {
        match self {
            Self::Zero => Ok(0.0),
            Self::ScaledRadial { c } => Ok(c * r * r / (1.0 + r * r)),
            Self::Asymptotic { .. } => Err(Error::InvalidInput("an asymptotic drift has no pointwise value".into())),
        }
    }
}

/// Right-hand side of `F(D^2 u) >= H(x, u, Du)`.
///
/// For `H3` the inequality is read as `F(D^2 u) - b(x)·Du >= A |Du|^gamma`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum HamiltonianSpec {
    /// `u^q + |Du|^gamma`.
    H1 { q: f64, gamma: f64 },
    /// `u^q |Du|^gamma`.
    H2 { q: f64, gamma: f64 },
    H3 {
        gamma: f64,
        #[serde(rename = "A", alias = "a")]
        a: f64,
        drift: DriftSpec,
    },
}

impl HamiltonianSpec {
    /// The pure drift inequality `F(D^2 u) - b·Du >= 0`.
    pub fn drift_only(drift: DriftSpec) -> Self {
        Self::H3 { gamma: 1.0, a: 0.0, drift }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::H1 { q, gamma } | Self::H2 { q, gamma } => {
                ensure_finite("q", *q)?;
                if *q < 0.0 {
                    return Err(Error::InvalidInput(format!("q must be nonnegative, got {q}")));
                }
                ensure_positive("gamma", *gamma)
            }
            Self::H3 { gamma, a, drift } => {
                ensure_positive("gamma", *gamma)?;
                ensure_finite("A", *a)?;
                drift.validate()
            }
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            Self::H1 { gamma, .. } | Self::H2 { gamma, .. } | Self::H3 { gamma, .. } => *gamma,
        }
    }

    /// Whether the Hamiltonian involves a power of `u` itself.
    pub fn uses_u(&self) -> bool {
        !matches!(self, Self::H3 { .. })
    }

    /// `H` evaluated radially from `u(r)`, `u'(r)` and `u'(r)/r`
    /// (the last one only matters for the drift term, `b·Du = (b·x) u'/r`).
    pub fn evaluate(&self, u: f64, du: f64, du_over_r: f64, r: f64) -> Result<f64> {
        let grad = du.abs();
        match self {
            Self::H1 { q, gamma } => Ok(pow_u(u, *q)? + grad.powf(*gamma)),
            Self::H2 { q, gamma } => Ok(pow_u(u, *q)? * grad.powf(*gamma)),
            Self::H3 { gamma, a, drift } => {
                let gradient_term = if *a == 0.0 { 0.0 } else { a * grad.powf(*gamma) };
                Ok(gradient_term + drift.b_dot_x(r)? * du_over_r)
            }
        }
    }
}

fn pow_u(u: f64, q: f64) -> Result<f64> {
    if q == 0.0 {
        return Ok(1.0);
    }
    if u >= 0.0 {
        return Ok(u.powf(q));
    }
    if q.fract() == 0.0 && q.abs() < i32::MAX as f64 {
        return Ok(u.powi(q as i32));
    }
    Err(Error::Domain(format!("u = {u} is negative and q = {q} is fractional")))
}
