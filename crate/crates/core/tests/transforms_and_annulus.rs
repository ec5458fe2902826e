use liouville_core::annulus::{
    cubic_bound_check, decay_bound_check, hadamard_check, lyapunov_scan, psi_comparison, AnnulusData,
};
use liouville_core::counterexamples::h1_witness;
use liouville_core::grid::log_spaced;
use liouville_core::transforms::{
    hopf_cole, hopf_cole_chain_check, lcp_gap, lcp_inequality_check, mixquad_transform, power_transform,
};
use liouville_core::{DriftSpec, Ellipticity, RadialProfile, Sign};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Profiles with `|u| <= 2`, so that `exp(-u/lambda)` stays moderate for
/// `lambda >= 0.5` and an absolute tolerance is meaningful.
fn random_profile(rng: &mut ChaCha8Rng) -> RadialProfile {
    let base = RadialProfile::power_decay(rng.gen_range(0.1..1.0), rng.gen_range(0.1..4.0)).unwrap();
    match rng.gen_range(0..4) {
        0 => base,
        1 => base.scaled(rng.gen_range(-1.0..1.0)),
        2 => base.shifted(rng.gen_range(-1.0..1.0)),
        _ => RadialProfile::Constant { value: rng.gen_range(-2.0..2.0) },
    }
}

fn random_drift(rng: &mut ChaCha8Rng) -> DriftSpec {
    if rng.gen_bool(0.3) {
        DriftSpec::Zero
    } else {
        DriftSpec::ScaledRadial { c: rng.gen_range(-5.0..5.0) }
    }
}

#[test]
fn chain_inequality_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let grid = log_spaced(1e-3, 1e3, 128).unwrap();
    for _ in 0..100 {
        let lam = rng.gen_range(0.5..2.0);
        let ell = Ellipticity::new(lam, lam * rng.gen_range(1.0..4.0)).unwrap();
        let n = rng.gen_range(1..=6);
        let (p, d) = (random_profile(&mut rng), random_drift(&mut rng));
        let rep = hopf_cole_chain_check(&p, &d, &ell, n, &grid).unwrap();
        assert!(rep.min >= -1e-9, "{p:?} {d:?}: {}", rep.min);

        let equal = Ellipticity::new(lam, lam).unwrap();
        let rep = hopf_cole_chain_check(&p, &d, &equal, n, &grid).unwrap();
        assert!(rep.max_abs <= 1e-9, "{p:?} {d:?}: {}", rep.max_abs);
    }
}

#[test]
fn hopf_cole_range() {
    let lam = 0.8;
    for m in [-3.0, 0.0, 2.0] {
        let lower = hopf_cole(m, lam).unwrap();
        // beyond u/lambda ~ 36 the value rounds to lambda itself
        for k in 0..30 {
            let v = hopf_cole(m + k as f64 * 0.7, lam).unwrap();
            assert!(v >= lower && v < lam);
        }
    }
}

#[test]
fn mixquad_agrees_with_hopf_cole_at_q_zero() {
    for i in 0..=100 {
        let u = i as f64 * 0.5;
        let a = mixquad_transform(u, 0.0, 1.0).unwrap();
        assert!((a - hopf_cole(u, 1.0).unwrap()).abs() <= 1e-9);
    }
    let mut last = 0.0;
    for i in 1..25 {
        let v = mixquad_transform(i as f64 * 0.1, 2.0, 0.5).unwrap();
        assert!(v > last);
        last = v;
    }
}

#[test]
fn z_is_monotone_in_s() {
    // dz/ds = (2 - gamma)/(s + 1)^2; s moves with b in the direction of q + gamma - 1
    for gamma in [0.5, 1.0, 1.5, 2.5] {
        let mut prev: Option<(f64, f64)> = None;
        for k in 1..200 {
            let t = power_transform(0.3, gamma, 1.0 + k as f64 * 0.01).unwrap();
            if let Some((s0, z0)) = prev {
                assert!((t.z - z0) * (t.s - s0) * (2.0 - gamma) > 0.0, "gamma = {gamma}");
            }
            prev = Some((t.s, t.z));
        }
    }
}

#[test]
fn lcp_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100_000 {
        let (u, v, q) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0), rng.gen_range(1.0..5.0));
        assert!(lcp_inequality_check(u, v, q).unwrap(), "{u} {v} {q}");
    }
    assert!(lcp_gap(-1.0, 1.0, 1.0).abs() <= 1e-12);
}

#[test]
fn witnesses_satisfy_the_ball_minimum_estimates() {
    let grid = log_spaced(1e-2, 1e6, 300).unwrap();
    for (ell, n) in [(Ellipticity::laplacian(), 5), (Ellipticity::new(1.0, 2.0).unwrap(), 3)] {
        let beta = ell.beta(n);
        for (q, g) in [(3.0, 1.5), (4.0, 2.0), (6.0, 3.0)] {
            let Some(w) = h1_witness(q, g, &ell, n).unwrap().into_report() else { continue };
            assert!(hadamard_check(&w.profile, beta - 2.0, &grid).unwrap().is_monotone());
            assert!(decay_bound_check(&w.profile, q, &grid).unwrap().bounded);
        }
    }
}

#[test]
fn psi_residual_nonnegative_whenever_crucineq_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut drawn = 0;
    let mut holding = 0;
    while drawn < 200 {
        let ell = Ellipticity::new(1.0, rng.gen_range(1.0..3.0)).unwrap();
        let n = rng.gen_range(3..=6);
        let beta = ell.beta(n);
        let nu = rng.gen_range(0.05..0.95) * (beta - 2.0);
        let gamma = 1.0 + rng.gen_range(0.05..1.0) * (beta / (beta - 1.0) - 1.0);
        let r1 = 10f64.powf(rng.gen_range(-1.0..2.0));
        let r = r1 * 10f64.powf(rng.gen_range(0.1..4.0));
        let m1 = 10f64.powf(rng.gen_range(-3.0..3.0));
        let m_r = m1 * rng.gen_range(0.0..1.0);
        let data = AnnulusData { r1, r, m1, m_r, nu, gamma };
        let rep = psi_comparison(&data, &ell, n).unwrap();
        if rep.crucineq.holds {
            holding += 1;
            assert!(rep.scaled_min >= -1e-9, "{data:?}");
        }
        assert!(rep.consistent);
        drawn += 1;
    }
    assert!(holding > 0);
}

#[test]
fn cubic_bound_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let lam = rng.gen_range(0.2..2.0);
        let ell = Ellipticity::new(lam, lam * rng.gen_range(1.0..4.0)).unwrap();
        let c = cubic_bound_check(rng.gen_range(0.1..10.0), rng.gen_range(0.5..100.0), &ell, rng.gen_range(1..=8), 400)
            .unwrap();
        assert!(c.holds);
    }
}

#[test]
fn lyapunov_without_drift_matches_low_dimension() {
    for n in 1..=6 {
        for k in [1.0, 1.5, 2.0, 3.0] {
            let ell = Ellipticity::new(1.0, k).unwrap();
            let r = lyapunov_scan(&DriftSpec::Zero, &ell, n, 1e6, Sign::Plus).unwrap();
            assert_eq!(r.admissible, ell.beta(n) <= 2.0, "n = {n}, Lambda = {k}");
        }
    }
}

proptest! {
    #[test]
    fn lcp_property(u in -100.0f64..100.0, v in -100.0f64..100.0, q in 1.0f64..5.0) {
        prop_assert!(lcp_inequality_check(u, v, q).unwrap());
    }

    #[test]
    fn hopf_cole_is_increasing(a in -20.0f64..20.0, d in 1e-3f64..5.0, lam in 1.0f64..5.0) {
        prop_assert!(hopf_cole(a + d, lam).unwrap() > hopf_cole(a, lam).unwrap());
    }
}
