use liouville_core::counterexamples::{h1_witness, h2_witness};
use liouville_core::profiles::residual_grid_default;
use liouville_core::regions::h2_failure;
use liouville_core::{classify, Ellipticity, HamiltonianSpec, Operator, Outcome, ProblemInstance, Sign};
use proptest::prelude::*;

fn instance(n: usize, ell: Ellipticity, op: Operator, ham: HamiltonianSpec) -> ProblemInstance {
    ProblemInstance::new(n, ell, op, ham).unwrap()
}

fn settings() -> Vec<(Ellipticity, usize)> {
    let mut out = Vec::new();
    for ell in [Ellipticity::laplacian(), Ellipticity::new(1.0, 2.0).unwrap()] {
        for n in [3, 4, 5] {
            out.push((ell, n));
        }
    }
    out
}

#[test]
fn h2_feasibility_matches_region_on_exact_lattice() {
    // beta = 4: q = i/10, gamma = 1 + j/15 puts the boundary exactly on lattice points
    let ell = Ellipticity::laplacian();
    for i in 0..30 {
        for j in 0..30 {
            let (q, g) = (i as f64 / 10.0, 1.0 + j as f64 / 15.0);
            let feasible = h2_witness(q, g, &ell, 4).unwrap().is_feasible();
            assert_eq!(feasible, i + j > 5, "q = {q}, gamma = {g}");
        }
    }
}

#[test]
fn h1_feasibility_matches_classifier() {
    for (ell, n) in settings() {
        let beta = ell.beta(n);
        for i in 0..20 {
            for j in 0..20 {
                let q = 0.5 + i as f64 * 0.5;
                let g = 0.6 + j as f64 * 0.1;
                let feasible = h1_witness(q, g, &ell, n).unwrap().is_feasible();
                let v = classify(&instance(n, ell, Operator::Plus, HamiltonianSpec::H1 { q, gamma: g })).unwrap();
                assert_eq!(feasible, v.outcome == Outcome::Fails, "beta = {beta}, q = {q}, gamma = {g}");
            }
        }
    }
}

#[test]
fn fails_verdicts_carry_verified_witnesses() {
    for (ell, n) in settings() {
        let beta = ell.beta(n);
        for k in 0..20 {
            for l in 0..20 {
                // H1 failure region: q > beta/(beta-2), gamma > beta/(beta-1)
                let q = beta / (beta - 2.0) + 0.05 + 0.25 * k as f64;
                let g = beta / (beta - 1.0) + 0.02 + 0.15 * l as f64;
                for ham in [HamiltonianSpec::H1 { q, gamma: g }, HamiltonianSpec::H2 { q, gamma: g }] {
                    let v = classify(&instance(n, ell, Operator::Plus, ham.clone())).unwrap();
                    assert_eq!(v.outcome, Outcome::Fails);
                    let w = v.witness.expect("fails verdict without witness");
                    assert!(w.residual_min >= -1e-12);
                    let rep = residual_grid_default(&w.profile, &ham, &ell, n, Sign::Plus).unwrap();
                    assert!(rep.min >= -1e-12);
                }
            }
        }
    }
}

#[test]
fn linear_limit_boundary() {
    // lambda = Lambda = 1: the failure boundary is (N-2)q + (N-1)gamma = N
    let ell = Ellipticity::laplacian();
    for n in [3usize, 4, 5, 6] {
        let nn = n as f64;
        let step = 0.05;
        for i in 0..40 {
            let q = i as f64 * step;
            let mut first_fail = None;
            for j in 0..80 {
                let g = 0.5 + j as f64 * step;
                let v = classify(&instance(n, ell, Operator::Plus, HamiltonianSpec::H2 { q, gamma: g })).unwrap();
                if v.outcome == Outcome::Fails {
                    first_fail.get_or_insert(g);
                } else {
                    assert!(first_fail.is_none(), "fails region not upward closed in gamma");
                }
            }
            let boundary = (nn - (nn - 2.0) * q) / (nn - 1.0);
            if let Some(g) = first_fail {
                // the previous lattice point is either off the lattice or on the non-failing side
                let previous = g - step;
                assert!(g > boundary - 1e-12, "n = {n}, q = {q}");
                assert!(previous < 0.5 - 1e-12 || previous <= boundary + 1e-12, "n = {n}, q = {q}");
            }
        }
    }
}

#[test]
fn generic_never_fails() {
    for (ell, n) in settings() {
        for i in 0..15 {
            for j in 0..15 {
                let (q, g) = (i as f64 * 0.7, 0.3 + j as f64 * 0.3);
                for ham in [HamiltonianSpec::H1 { q, gamma: g }, HamiltonianSpec::H2 { q, gamma: g }] {
                    let v = classify(&instance(n, ell, Operator::Generic, ham)).unwrap();
                    assert_ne!(v.outcome, Outcome::Fails);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h1_holds_region_is_downward_closed_in_gamma(
        q in 0.0f64..10.0,
        g1 in 1.0f64..4.0,
        t in 0.0f64..1.0,
        n in 2usize..7,
        k in 1.0f64..3.0,
    ) {
        let ell = Ellipticity::new(1.0, k).unwrap();
        let g2 = 1.0 + t * (g1 - 1.0);
        prop_assume!(g2 > 1.0);
        let v1 = classify(&instance(n, ell, Operator::Plus, HamiltonianSpec::H1 { q, gamma: g1 })).unwrap();
        if v1.outcome == Outcome::Holds {
            let v2 = classify(&instance(n, ell, Operator::Plus, HamiltonianSpec::H1 { q, gamma: g2 })).unwrap();
            prop_assert_eq!(v2.outcome, Outcome::Holds);
        }
    }

    #[test]
    fn h2_feasibility_is_the_region(q in 0.0f64..5.0, g in 0.2f64..3.0, n in 2usize..7, k in 1.0f64..3.0) {
        let ell = Ellipticity::new(1.0, k).unwrap();
        let feasible = h2_witness(q, g, &ell, n).unwrap().is_feasible();
        prop_assert_eq!(feasible, h2_failure(ell.beta(n), q, g));
    }
}
