//! Pucci extremal operators.
//!
//! For ellipticity constants `0 < lambda <= Lambda` and a symmetric matrix `M`
//! with eigenvalues `e_k`,
//!
//! ```text
//! M+(M) = -lambda * sum_{e_k > 0} e_k - Lambda * sum_{e_k < 0} e_k
//! M-(M) = -Lambda * sum_{e_k > 0} e_k - lambda * sum_{e_k < 0} e_k
//! ```
//!
//! For a radial function `f(|x|)` the Hessian has the simple eigenvalue
//! `f''(r)` and the eigenvalue `f'(r)/r` with multiplicity `N - 1`, which is
//! what [`radial_eigs`] and [`pucci_radial`] exploit.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::linalg::SymMatrix;

/// Relative threshold under which an eigenvalue counts as zero.
pub const SIGN_TOLERANCE: f64 = 1e-12;

/// Ellipticity bounds `0 < lambda <= Lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EllipticityRepr", into = "EllipticityRepr")]
pub struct Ellipticity {
    lambda: f64,
    big_lambda: f64,
}

#[derive(Serialize, Deserialize)]
struct EllipticityRepr {
    lambda: f64,
    #[serde(rename = "Lambda")]
    big_lambda: f64,
}

impl TryFrom<EllipticityRepr> for Ellipticity {
    type Error = Error;

    fn try_from(r: EllipticityRepr) -> Result<Self> {
        Ellipticity::new(r.lambda, r.big_lambda)
    }
}

impl From<Ellipticity> for EllipticityRepr {
    fn from(e: Ellipticity) -> Self {
        EllipticityRepr { lambda: e.lambda, big_lambda: e.big_lambda }
    }
}

impl Ellipticity {
    pub fn new(lambda: f64, big_lambda: f64) -> Result<Self> {
        ensure_positive("lambda", lambda)?;
        ensure_positive("Lambda", big_lambda)?;
        if lambda > big_lambda {
            return Err(Error::InvalidInput(format!(
                "ellipticity requires lambda <= Lambda, got {lambda} > {big_lambda}"
            )));
        }
        Ok(Self { lambda, big_lambda })
    }

    /// The Laplacian case `lambda = Lambda = 1`.
    pub fn laplacian() -> Self {
        Self { lambda: 1.0, big_lambda: 1.0 }
    }

    /// Constants bounding the normalized p-Laplacian:
    /// `min/max {1/p, (p-1)/p}`.
    pub fn normalized_p_laplacian(p: f64) -> Result<Self> {
        ensure_finite("p", p)?;
        if p <= 1.0 {
            return Err(Error::InvalidInput(format!("p-Laplacian needs p > 1, got {p}")));
        }
        let a = 1.0 / p;
        let b = (p - 1.0) / p;
        Self::new(a.min(b), a.max(b))
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn big_lambda(&self) -> f64 {
        self.big_lambda
    }

    /// Effective dimension of `M+`: `(Lambda/lambda)(N-1) + 1`.
    pub fn beta(&self, n: usize) -> f64 {
        self.big_lambda / self.lambda * (n as f64 - 1.0) + 1.0
    }

    /// Effective dimension of `M-`: `(lambda/Lambda)(N-1) + 1`.
    pub fn alpha(&self, n: usize) -> f64 {
        self.lambda / self.big_lambda * (n as f64 - 1.0) + 1.0
    }

    /// Weights applied to (positive, negative) eigenvalues for the chosen operator.
    fn weights(&self, sign: Sign) -> (f64, f64) {
        match sign {
            Sign::Plus => (self.lambda, self.big_lambda),
            Sign::Minus => (self.big_lambda, self.lambda),
        }
    }
}

/// Which extremal operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

/// Eigenvalues of the Hessian of a radial function at radius `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialEigs {
    pub radial: f64,
    pub tangential: f64,
    pub multiplicity: usize,
}

impl RadialEigs {
    /// Full eigenvalue multiset, radial first.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.multiplicity + 1);
        v.push(self.radial);
        v.resize(v.len() + self.multiplicity, self.tangential);
        v
    }

    fn norm(&self) -> f64 {
        (self.radial * self.radial + self.multiplicity as f64 * self.tangential * self.tangential).sqrt()
    }
}

fn extremal_sum<I: IntoIterator<Item = (f64, f64)>>(eigs: I, norm: f64, ell: &Ellipticity, sign: Sign) -> f64 {
    let (w_pos, w_neg) = ell.weights(sign);
    let cut = SIGN_TOLERANCE * norm;
    let mut pos = 0.0;
    let mut neg = 0.0;
    for (e, mult) in eigs {
        if e > cut {
            pos += mult * e;
        } else if e < -cut {
            neg += mult * e;
        }
    }
    -w_pos * pos - w_neg * neg
}

/// `M+` or `M-` of a symmetric matrix.
pub fn pucci(m: &SymMatrix, ell: &Ellipticity, sign: Sign) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let eigs = m.eigenvalues();
    Ok(extremal_sum(eigs.into_iter().map(|e| (e, 1.0)), m.norm(), ell, sign))
}

pub fn pucci_plus(m: &SymMatrix, ell: &Ellipticity) -> Result<f64> {
    pucci(m, ell, Sign::Plus)
}

pub fn pucci_minus(m: &SymMatrix, ell: &Ellipticity) -> Result<f64> {
    pucci(m, ell, Sign::Minus)
}

/// Hessian eigenvalues of a radial function from `f'(r)`, `f''(r)`.
pub fn radial_eigs(fp: f64, fpp: f64, r: f64, n: usize) -> Result<RadialEigs> {
    ensure_finite("f'", fp)?;
    ensure_finite("f''", fpp)?;
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if r.is_nan() || r <= 0.0 || r.is_infinite() {
        return Err(Error::Domain(format!("radial eigenvalues need r > 0, got {r}")));
    }
    Ok(RadialEigs { radial: fpp, tangential: fp / r, multiplicity: n - 1 })
}

/// Applies `M+`/`M-` to the radial eigenvalue multiset.
pub fn pucci_radial(eigs: &RadialEigs, ell: &Ellipticity, sign: Sign) -> Result<f64> {
    ensure_finite("radial eigenvalue", eigs.radial)?;
    ensure_finite("tangential eigenvalue", eigs.tangential)?;
    let items = [(eigs.radial, 1.0), (eigs.tangential, eigs.multiplicity as f64)];
    Ok(extremal_sum(items, eigs.norm(), ell, sign))
}

/// Reconstructs `D^2 f(|x|) = f'' xhat xhat^T + (f'/|x|)(I - xhat xhat^T)`.
pub fn hessian_at_point(x: &[f64], fp: f64, fpp: f64) -> Result<SymMatrix> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidInput("point must have at least one coordinate".into()));
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Domain("Hessian reconstruction is undefined at the origin".into()));
    }
    let tangential = fp / r;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let proj = x[i] * x[j] / (r * r);
            let id = if i == j { 1.0 } else { 0.0 };
            data[i * n + j] = fpp * proj + tangential * (id - proj);
        }
    }
    SymMatrix::from_row_major(n, &data)
}

/// Effective dimension `Tr(A) / (x^T A x / |x|^2)` of the linear operator
/// `-Tr(A D^2 u)` along the direction of `x`.
pub fn effective_dimension_psi(a: &SymMatrix, x: &[f64]) -> Result<f64> {
    if x.len() != a.dim() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, matrix is {}x{}",
            x.len(),
            a.dim(),
            a.dim()
        )));
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    if r2.is_nan() || r2 <= 0.0 {
        return Err(Error::Domain("effective dimension is undefined at the origin".into()));
    }
    let q = a.quadratic_form(x) / r2;
    if q.is_nan() || q <= 0.0 {
        return Err(Error::Domain(format!("quadratic form must be positive along x, got {q}")));
    }
    Ok(a.trace() / q)
}
