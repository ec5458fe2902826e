use std::path::Path;

use liouville_core::annulus::{decay_bound_check, hadamard_check, lyapunov_scan};
use liouville_core::counterexamples::{drift_witness, h1_witness, h2_witness, singular_h2_witness, WITNESS_TOLERANCE};
use liouville_core::grid::{linspace, log_spaced};
use liouville_core::profiles::{residual_grid, residual_grid_default};
use liouville_core::transforms::{
    hopf_cole, hopf_cole_chain_check, hopf_cole_inv, lcp_gap, lcp_inequality_check, mixquad_transform, power_transform,
    region_transfer_check,
};
use liouville_core::{
    classify, DriftSpec, Ellipticity, HamiltonianSpec, Operator, ProblemInstance, RadialProfile, ResidualReport, Sign,
    Synthesis, Verdict, WitnessReport,
};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::output::{format_float, to_canonical};

/// Tolerance of the transformed-inequality residual.
const CHAIN_TOLERANCE: f64 = 1e-9;

/// What to print and how to exit.
pub struct Report {
    pub body: String,
    pub code: i32,
}

impl Report {
    fn json(value: &Value, ok: bool) -> Result<Self, CliError> {
        Ok(Self { body: to_canonical(value)?, code: if ok { 0 } else { 1 } })
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn require(value: Option<f64>, flag: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn sign_of(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn ellipticity(e: &EllArgs) -> Result<Ellipticity, CliError> {
    Ok(Ellipticity::new(e.lambda, e.big_lambda)?)
}

fn parse_profile(text: &str) -> Result<RadialProfile, CliError> {
    let p: RadialProfile = serde_json::from_str(text).map_err(|e| usage(format!("bad profile JSON: {e}")))?;
    p.validate()?;
    Ok(p)
}

fn drift_spec(d: &DriftArgs) -> Result<DriftSpec, CliError> {
    let spec = match (d.drift, d.drift_scaled_c, d.drift_limsup) {
        (None | Some(DriftKind::Zero), None, None) => DriftSpec::Zero,
        (None | Some(DriftKind::Scaled), Some(c), None) => DriftSpec::ScaledRadial { c },
        (None | Some(DriftKind::Limsup), None, Some(limsup_bx)) => DriftSpec::Asymptotic { limsup_bx },
        (Some(DriftKind::Scaled), None, None) => return Err(usage("--drift scaled needs --drift-scaled-c")),
        (Some(DriftKind::Limsup), None, None) => return Err(usage("--drift limsup needs --drift-limsup")),
        _ => return Err(usage("conflicting drift flags")),
    };
    spec.validate()?;
    Ok(spec)
}

fn residual_summary(r: &ResidualReport, full: bool) -> Value {
    let mut v = json!({
        "min": r.min,
        "argmin": r.argmin,
        "argmin_index": r.argmin_index,
        "max_abs": r.max_abs,
        "points": r.radii.len(),
    });
    if full {
        v["radii"] = json!(r.radii);
        v["values"] = json!(r.values);
    }
    v
}

pub fn build_instance(a: &InstanceArgs, q: Option<f64>, gamma: Option<f64>) -> Result<ProblemInstance, CliError> {
    let ham = match a.ham {
        HamKind::H1 => HamiltonianSpec::H1 { q: require(q, "q")?, gamma: require(gamma, "gamma")? },
        HamKind::H2 => HamiltonianSpec::H2 { q: require(q, "q")?, gamma: require(gamma, "gamma")? },
        HamKind::H3 => {
            HamiltonianSpec::H3 { gamma: require(gamma, "gamma")?, a: a.a.unwrap_or(0.0), drift: drift_spec(&a.drift)? }
        }
    };
    if a.ham != HamKind::H3 && (a.a.is_some() || a.drift.drift_scaled_c.is_some() || a.drift.drift_limsup.is_some()) {
        return Err(usage("--A and drift flags only apply to --ham h3"));
    }
    if a.operator == OperatorKind::Plap {
        if a.lambda.is_some() || a.big_lambda.is_some() {
            return Err(usage("--operator plap derives lambda and Lambda from --p"));
        }
        return Ok(ProblemInstance::p_laplacian(a.n, require(a.p, "p")?, ham)?);
    }
    if a.p.is_some() {
        return Err(usage("--p only applies to --operator plap"));
    }
    let ell = Ellipticity::new(require(a.lambda, "lambda")?, require(a.big_lambda, "Lambda")?)?;
    let op = match a.operator {
        OperatorKind::Plus => Operator::Plus,
        OperatorKind::Minus => Operator::Minus,
        OperatorKind::Generic => Operator::Generic,
        OperatorKind::Plap => unreachable!(),
    };
    Ok(ProblemInstance::new(a.n, ell, op, ham)?)
}

pub fn classify_cmd(a: &ClassifyArgs) -> Result<Report, CliError> {
    let inst = build_instance(&a.instance, a.q, a.gamma)?;
    let v = classify(&inst)?;
    Ok(Report { body: to_canonical(&v)?, code: 0 })
}

/// Parses `a:b:n` into `n` equally spaced values from `a` to `b`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(usage(format!("range must be a:b:n, got {text:?}")));
    };
    let bad = |s: &str| usage(format!("bad range component {s:?} in {text:?}"));
    let a: f64 = a.trim().parse().map_err(|_| bad(a))?;
    let b: f64 = b.trim().parse().map_err(|_| bad(b))?;
    let n: usize = n.trim().parse().map_err(|_| bad(n))?;
    if !a.is_finite() || !b.is_finite() {
        return Err(usage(format!("range endpoints must be finite in {text:?}")));
    }
    if n == 0 || (n > 1 && a > b) || (n == 1 && a != b) {
        return Err(usage(format!("empty range {text:?}")));
    }
    Ok(linspace(a, b, n))
}

struct Row {
    q: f64,
    gamma: f64,
    beta: f64,
    verdict: Verdict,
    residual_min: Option<f64>,
}

fn sweep_point(a: &SweepArgs, q: f64, gamma: f64) -> Result<Row, CliError> {
    let inst = build_instance(&a.instance, Some(q), Some(gamma))?;
    let ell = inst.effective_ellipticity()?;
    let verdict = classify(&inst)?;
    let mut residual_min = verdict.witness.as_ref().map(|w| w.residual_min);
    if a.verify_witnesses {
        if let Some(w) = &verdict.witness {
            let check = residual_grid_default(&w.profile, &inst.ham, &ell, inst.n, Sign::Plus)?;
            residual_min = Some(check.min);
        }
    }
    Ok(Row { q, gamma, beta: ell.beta(inst.n), verdict, residual_min })
}

fn opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn sweep_cmd(a: &SweepArgs) -> Result<Report, CliError> {
    let qs = parse_range(&a.q_range)?;
    let gs = parse_range(&a.gamma_range)?;
    let points: Vec<(f64, f64)> = qs.iter().flat_map(|&q| gs.iter().map(move |&g| (q, g))).collect();
    let rows = points.par_iter().map(|&(q, g)| sweep_point(a, q, g)).collect::<Result<Vec<Row>, CliError>>()?;

    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record([
        "q",
        "gamma",
        "beta",
        "verdict",
        "theorem_ref",
        "witness_delta",
        "witness_amplitude",
        "residual_min",
    ])
    .map_err(io)?;
    let mut violations = 0;
    for r in &rows {
        if r.residual_min.is_some_and(|m| m < -WITNESS_TOLERANCE) {
            violations += 1;
        }
        let wit = r.verdict.witness.as_ref();
        w.write_record([
            format_float(r.q),
            format_float(r.gamma),
            format_float(r.beta),
            r.verdict.outcome.as_str().to_string(),
            r.verdict.theorem_ref.clone(),
            opt(wit.map(|w| w.delta)),
            opt(wit.map(|w| w.amplitude)),
            opt(r.residual_min),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    let body = String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))?;
    let code = if violations > 0 { 1 } else { 0 };
    match &a.output {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            Ok(Report { body: String::new(), code })
        }
        None => Ok(Report { body, code }),
    }
}

fn witness_json(r: &WitnessReport, full: bool) -> Value {
    json!({
        "feasible": true,
        "profile": r.profile,
        "drift": r.drift,
        "feasibility_interval": [r.feasibility_interval.0, r.feasibility_interval.1],
        "delta": r.chosen_delta,
        "amplitude": r.chosen_amplitude,
        "residual_min": r.residual.min,
        "residual_argmin": r.residual.argmin,
        "residual": residual_summary(&r.residual, full),
    })
}

pub fn counterexample_cmd(a: &CounterexampleArgs) -> Result<Report, CliError> {
    let ell = ellipticity(&a.ell)?;
    let n = a.ell.n;
    let synthesis = match a.ham {
        WitnessKind::H1 => h1_witness(require(a.q, "q")?, require(a.gamma, "gamma")?, &ell, n)?,
        WitnessKind::H2 => h2_witness(require(a.q, "q")?, require(a.gamma, "gamma")?, &ell, n)?,
        WitnessKind::H2Singular => singular_h2_witness(require(a.gamma, "gamma")?, &ell, n)?,
        WitnessKind::Drift => Synthesis::Found(Box::new(drift_witness(&ell, n, require(a.delta, "delta")?)?)),
    };
    match synthesis {
        Synthesis::Found(r) => {
            let ok = r.residual.min >= -WITNESS_TOLERANCE;
            Report::json(&witness_json(&r, a.full), ok)
        }
        Synthesis::Infeasible { interval } => {
            Report::json(&json!({"feasible": false, "feasibility_interval": [interval.0, interval.1]}), true)
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub profile: RadialProfile,
    pub hamiltonian: HamiltonianSpec,
    pub ellipticity: Ellipticity,
    #[serde(rename = "N")]
    pub n: usize,
    pub sign: Sign,
    #[serde(default)]
    pub grid: Option<Vec<f64>>,
}

fn read_problem(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("bad problem file {}: {e}", path.display())))
}

pub fn verify_cmd(a: &VerifyArgs) -> Result<Report, CliError> {
    let p = read_problem(&a.problem)?;
    let rep = match &p.grid {
        Some(g) => residual_grid(&p.profile, &p.hamiltonian, &p.ellipticity, p.n, p.sign, g)?,
        None => residual_grid_default(&p.profile, &p.hamiltonian, &p.ellipticity, p.n, p.sign)?,
    };
    let ok = rep.is_nonnegative(WITNESS_TOLERANCE);
    let mut out = residual_summary(&rep, a.full);
    out["verified"] = json!(ok);
    Report::json(&out, ok)
}

fn grid(g: &GridArgs) -> Result<Vec<f64>, CliError> {
    Ok(log_spaced(g.r_min, g.r_max, g.points)?)
}

pub fn monotonic_cmd(a: &MonotonicArgs) -> Result<Report, CliError> {
    let profile = parse_profile(&a.profile)?;
    let exponent = match (a.exponent, a.n, a.lambda, a.big_lambda) {
        (Some(e), None, None, None) => e,
        (None, Some(n), Some(l), Some(big)) => Ellipticity::new(l, big)?.beta(n) - 2.0,
        _ => return Err(usage("give either --exponent or all of --N, --lambda, --Lambda")),
    };
    let radii = grid(&a.grid)?;
    let rep = hadamard_check(&profile, exponent, &radii)?;
    let mut ok = rep.is_monotone();
    let mut out = json!({
        "exponent": rep.exponent,
        "monotone": rep.is_monotone(),
        "violations": rep.violations,
        "points": radii.len(),
    });
    if let Some(q) = a.q {
        let d = decay_bound_check(&profile, q, &radii)?;
        ok &= d.bounded;
        out["decay"] = json!(d);
    }
    Report::json(&out, ok)
}

pub fn lyapunov_cmd(a: &LyapunovArgs) -> Result<Report, CliError> {
    let ell = ellipticity(&a.ell)?;
    let drift = drift_spec(&a.drift)?;
    let rep = lyapunov_scan(&drift, &ell, a.ell.n, a.r_max, sign_of(a.sign))?;
    Report::json(&json!(rep), rep.admissible)
}

pub fn transform_cmd(t: &TransformCommand) -> Result<Report, CliError> {
    match t {
        TransformCommand::HopfCole { u, lambda } => {
            let v = hopf_cole(*u, *lambda)?;
            let back = hopf_cole_inv(v, *lambda).ok();
            Report::json(&json!({"u": u, "lambda": lambda, "v": v, "inverse": back}), true)
        }
        TransformCommand::Chain { profile, ell, drift, grid: g } => {
            let p = parse_profile(profile)?;
            let rep = hopf_cole_chain_check(&p, &drift_spec(drift)?, &ellipticity(ell)?, ell.n, &grid(g)?)?;
            let ok = rep.min >= -CHAIN_TOLERANCE;
            let mut out = residual_summary(&rep, false);
            out["holds"] = json!(ok);
            Report::json(&out, ok)
        }
        TransformCommand::Power { q, gamma, b } => Report::json(&json!(power_transform(*q, *gamma, *b)?), true),
        TransformCommand::Transfer { q, gamma, ell } => {
            Report::json(&json!(region_transfer_check(*q, *gamma, &ellipticity(ell)?, ell.n)?), true)
        }
        TransformCommand::Mixquad { u, q, lambda } => {
            let v = mixquad_transform(*u, *q, *lambda)?;
            Report::json(&json!({"u": u, "q": q, "lambda": lambda, "v": v}), true)
        }
        TransformCommand::Lcp { u, v, q } => {
            let holds = lcp_inequality_check(*u, *v, *q)?;
            Report::json(&json!({"holds": holds, "gap": lcp_gap(*u, *v, *q)}), holds)
        }
    }
}
