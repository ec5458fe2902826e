//! Decision procedure mapping a parameter instance to a Liouville verdict.
//!
//! Each rule names the result it relies on in `Verdict::theorem_ref`, so a
//! classification can be audited line by line. Every `Fails` verdict carries
//! an explicit, numerically re-verified witness.

use serde::{Deserialize, Serialize};

use crate::counterexamples::{drift_witness, h1_witness, h2_witness, WitnessReport};
use crate::error::{Error, Result};
use crate::profiles::{residual_grid_default, DriftSpec, HamiltonianSpec, RadialProfile};
use crate::pucci::{Ellipticity, Sign};
use crate::regions::{at_most, exceeds, gamma_supercritical, h1_failure, h2_failure, h2_subcritical, q_supercritical};

/// The second-order part of the inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Operator {
    Plus,
    Minus,
    /// Any uniformly elliptic operator with the given bounds.
    Generic,
    /// The normalized p-Laplacian; the ellipticity is derived from `p`.
    #[serde(rename = "plap")]
    PLaplacian {
        p: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    #[serde(rename = "N")]
    pub n: usize,
    pub ell: Ellipticity,
    pub operator: Operator,
    pub ham: HamiltonianSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Conjectured,
    Open,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Holds => "holds",
            Self::Fails => "fails",
            Self::Conjectured => "conjectured",
            Self::Open => "open",
        }
    }
}

/// The explicit solution attached to a `Fails` verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub profile: RadialProfile,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub drift: Option<DriftSpec>,
    pub delta: f64,
    pub amplitude: f64,
    pub residual_min: f64,
    pub residual_argmin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub theorem_ref: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub notes: String,
}

impl Verdict {
    fn new(outcome: Outcome, theorem_ref: &str, notes: impl Into<String>) -> Self {
        Self { outcome, theorem_ref: theorem_ref.to_string(), witness: None, notes: notes.into() }
    }
}

impl ProblemInstance {
    pub fn new(n: usize, ell: Ellipticity, operator: Operator, ham: HamiltonianSpec) -> Result<Self> {
        let inst = Self { n, ell, operator, ham };
        inst.validate()?;
        Ok(inst)
    }

    /// An instance for the normalized p-Laplacian, with derived ellipticity.
    pub fn p_laplacian(n: usize, p: f64, ham: HamiltonianSpec) -> Result<Self> {
        Self::new(n, Ellipticity::normalized_p_laplacian(p)?, Operator::PLaplacian { p }, ham)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("dimension N must be at least 1".into()));
        }
        if let Operator::PLaplacian { p } = self.operator {
            Ellipticity::normalized_p_laplacian(p)?;
        }
        self.ham.validate()
    }

    /// The ellipticity actually used: derived from `p` for the p-Laplacian.
    pub fn effective_ellipticity(&self) -> Result<Ellipticity> {
        match self.operator {
            Operator::PLaplacian { p } => Ellipticity::normalized_p_laplacian(p),
            _ => Ok(self.ell),
        }
    }

    fn dim(&self) -> f64 {
        self.n as f64
    }
}

/// Classifies an instance, dispatching on the operator and the Hamiltonian.
pub fn classify(inst: &ProblemInstance) -> Result<Verdict> {
    inst.validate()?;
    if let Operator::PLaplacian { .. } = inst.operator {
        return classify_p_laplacian(inst);
    }
    match inst.ham {
        HamiltonianSpec::H1 { .. } => classify_h1(inst),
        HamiltonianSpec::H2 { .. } => classify_h2(inst),
        HamiltonianSpec::H3 { .. } => classify_h3(inst),
    }
}

fn wrong_ham(expected: &str) -> Error {
    Error::InvalidInput(format!("instance does not carry an {expected} Hamiltonian"))
}

fn attach(mut verdict: Verdict, report: WitnessReport, inst: &ProblemInstance) -> Result<Verdict> {
    let ell = inst.effective_ellipticity()?;
    // re-verify against the instance's own Hamiltonian
    let check = residual_grid_default(&report.profile, &inst.ham, &ell, inst.n, Sign::Plus)?;
    if check.min < -crate::counterexamples::WITNESS_TOLERANCE {
        return Err(Error::Verification(format!("witness residual {:e} at r = {:e}", check.min, check.argmin)));
    }
    verdict.witness = Some(Witness {
        profile: report.profile,
        drift: report.drift,
        delta: report.chosen_delta,
        amplitude: report.chosen_amplitude,
        residual_min: check.min,
        residual_argmin: check.argmin,
    });
    Ok(verdict)
}

fn low_dimension(d: f64) -> Verdict {
    Verdict::new(
        Outcome::Holds,
        "Remark 5.2",
        format!("effective dimension {d} <= 2: every supersolution bounded below is constant"),
    )
}

/// `M(D^2 u) >= u^q + |Du|^gamma`.
pub fn classify_h1(inst: &ProblemInstance) -> Result<Verdict> {
    let HamiltonianSpec::H1 { q, gamma } = inst.ham else {
        return Err(wrong_ham("H1"));
    };
    inst.validate()?;
    let ell = inst.effective_ellipticity()?;
    let n = inst.n;
    let (d, holds_ref) = match inst.operator {
        Operator::Minus => (ell.alpha(n), "Remark 2.3"),
        _ => (ell.beta(n), "Theorem 2.1"),
    };
    if at_most(d, 2.0) {
        return Ok(low_dimension(d));
    }
    if !q_supercritical(d, q) {
        return Ok(Verdict::new(Outcome::Holds, holds_ref, format!("q <= d/(d-2) = {} with d = {d}", d / (d - 2.0))));
    }
    if gamma > 1.0 && !gamma_supercritical(d, gamma) {
        return Ok(Verdict::new(
            Outcome::Holds,
            holds_ref,
            format!("q > d/(d-2) and 1 < gamma <= d/(d-1) = {} with d = {d}", d / (d - 1.0)),
        ));
    }
    if h1_failure(d, q, gamma) {
        return match inst.operator {
            Operator::Plus => {
                let report = h1_witness(q, gamma, &ell, n)?
                    .into_report()
                    .ok_or_else(|| Error::Verification("failure region without a feasible witness".into()))?;
                let v = Verdict::new(
                    Outcome::Fails,
                    "Remark 2.2",
                    format!("q > beta/(beta-2) and gamma > beta/(beta-1) with beta = {d}"),
                );
                attach(v, report, inst)
            }
            Operator::Minus => {
                Ok(Verdict::new(Outcome::Open, "Remark 2.3", "no counterexample is known for M- in this region"))
            }
            _ => Ok(Verdict::new(
                Outcome::Open,
                "Remark 2.2",
                "the counterexample is built for M+ and does not transfer to general operators",
            )),
        };
    }
    Ok(Verdict::new(Outcome::Open, holds_ref, format!("q > d/(d-2) with gamma = {gamma} <= 1 is not covered")))
}

/// `M(D^2 u) >= u^q |Du|^gamma`.
pub fn classify_h2(inst: &ProblemInstance) -> Result<Verdict> {
    let HamiltonianSpec::H2 { q, gamma } = inst.ham else {
        return Err(wrong_ham("H2"));
    };
    inst.validate()?;
    let ell = inst.effective_ellipticity()?;
    let n = inst.n;
    if inst.operator == Operator::Minus {
        let nn = inst.dim();
        if h2_subcritical(nn, q, gamma) {
            return Ok(Verdict::new(
                Outcome::Holds,
                "Remark 3.4",
                "(N-2)q + (N-1)gamma <= N: comparison with the Laplacian",
            ));
        }
        let alpha = ell.alpha(n);
        if at_most(alpha, 2.0) {
            return Ok(Verdict::new(
                Outcome::Holds,
                "Remark 3.4",
                format!("N <= Lambda/lambda + 1, effective dimension alpha = {alpha} <= 2"),
            ));
        }
        if h2_subcritical(alpha, q, gamma) {
            return Ok(Verdict::new(
                Outcome::Conjectured,
                "Conjecture 3.3",
                format!("(alpha-2)q + (alpha-1)gamma <= alpha with alpha = {alpha}"),
            ));
        }
        return Ok(Verdict::new(Outcome::Open, "Remark 3.4", "no counterexample is known for M- in this region"));
    }
    let beta = ell.beta(n);
    if at_most(beta, 2.0) {
        return Ok(low_dimension(beta));
    }
    if h2_failure(beta, q, gamma) {
        let notes = format!(
            "(beta-2)q + (beta-1)gamma > beta with beta = {beta}; strict, since the power-decay \
             solutions exist exactly in the open region"
        );
        return match inst.operator {
            Operator::Plus => {
                let report = h2_witness(q, gamma, &ell, n)?
                    .into_report()
                    .ok_or_else(|| Error::Verification("failure region without a feasible witness".into()))?;
                attach(Verdict::new(Outcome::Fails, "Theorem 3.1", notes), report, inst)
            }
            _ => Ok(Verdict::new(
                Outcome::Open,
                "Theorem 3.1",
                "the counterexample is built for M+ and does not transfer to general operators",
            )),
        };
    }
    Ok(Verdict::new(
        Outcome::Conjectured,
        "Conjecture 3.3",
        format!("(beta-2)q + (beta-1)gamma <= beta with beta = {beta}"),
    ))
}

fn h3_gated(gamma: f64, a: f64) -> bool {
    (a >= 0.0 && gamma > 0.0) || (gamma - 2.0).abs() <= 1e-12
}

/// `M(D^2 u) - b(x)·Du >= A |Du|^gamma`.
pub fn classify_h3(inst: &ProblemInstance) -> Result<Verdict> {
    let HamiltonianSpec::H3 { gamma, a, ref drift } = inst.ham else {
        return Err(wrong_ham("H3"));
    };
    inst.validate()?;
    let ell = inst.effective_ellipticity()?;
    let (lam, big) = (ell.lambda(), ell.big_lambda());
    let nm1 = inst.dim() - 1.0;
    let limsup = drift.limsup();
    if !h3_gated(gamma, a) {
        return Ok(Verdict::new(Outcome::Open, "Remark 4.3", "negative A with gamma != 2 is not covered"));
    }
    match inst.operator {
        Operator::Minus => {
            let threshold = big - lam * nm1;
            if at_most(limsup, threshold) {
                return Ok(Verdict::new(
                    Outcome::Holds,
                    "Theorem 4.4",
                    format!("limsup b(x)·x = {limsup} <= Lambda - lambda(N-1) = {threshold}"),
                ));
            }
            Ok(Verdict::new(
                Outcome::Open,
                "Theorem 4.4",
                format!("limsup b(x)·x = {limsup} > Lambda - lambda(N-1) = {threshold}"),
            ))
        }
        _ => {
            let threshold = lam - big * nm1;
            if at_most(limsup, threshold) {
                return Ok(Verdict::new(
                    Outcome::Holds,
                    "Theorem 4.1",
                    format!("limsup b(x)·x = {limsup} <= lambda - Lambda(N-1) = {threshold}"),
                ));
            }
            if inst.operator == Operator::Plus {
                if let DriftSpec::ScaledRadial { c } = *drift {
                    if a <= 0.0 && exceeds(0.0, c) {
                        let beta = ell.beta(inst.n);
                        let delta = c / lam - 2.0 + beta;
                        let report = drift_witness(&ell, inst.n, delta)?;
                        let v = Verdict::new(
                            Outcome::Fails,
                            "Remark 4.5",
                            format!(
                                "c = lambda(2 - beta + delta) with delta = {delta} in (0, beta - 2): \
                                 the drift threshold is sharp"
                            ),
                        );
                        return attach(v, report, inst);
                    }
                }
            }
            Ok(Verdict::new(
                Outcome::Open,
                "Theorem 4.1",
                format!("limsup b(x)·x = {limsup} > lambda - Lambda(N-1) = {threshold}"),
            ))
        }
    }
}

/// The normalized p-Laplacian, through its derived ellipticity.
pub fn classify_p_laplacian(inst: &ProblemInstance) -> Result<Verdict> {
    let Operator::PLaplacian { p } = inst.operator else {
        return Err(Error::InvalidInput("instance is not a p-Laplacian problem".into()));
    };
    let ell = Ellipticity::normalized_p_laplacian(p)?;
    let generic = ProblemInstance { n: inst.n, ell, operator: Operator::Generic, ham: inst.ham.clone() };
    generic.validate()?;
    match inst.ham {
        HamiltonianSpec::H1 { .. } => {
            let mut v = classify_h1(&generic)?;
            if v.theorem_ref == "Theorem 2.1" && v.outcome == Outcome::Holds {
                v.theorem_ref = "Corollary 5.5".into();
            }
            Ok(v)
        }
        HamiltonianSpec::H2 { .. } => classify_h2(&generic),
        HamiltonianSpec::H3 { gamma, a, ref drift } => {
            let nn = inst.dim();
            let threshold = if p > 2.0 { 1.0 - nn * (p - 1.0) / p } else { 1.0 - nn / p };
            let limsup = drift.limsup();
            if h3_gated(gamma, a) && exceeds(threshold, limsup) {
                return Ok(Verdict::new(
                    Outcome::Holds,
                    "Corollary 5.6",
                    format!("limsup b(x)·x = {limsup} < {threshold}"),
                ));
            }
            classify_h3(&generic)
        }
    }
}
