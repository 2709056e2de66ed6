use wavesource::forward::boundary_trace;
use wavesource::harness::{self, ExperimentConfig, Method};
use wavesource::inverse::{error_bound, solve};
use wavesource::model::{PhysicalConfig, Pulse, SourceSpec};
use wavesource::noiselab::{perturb, NoiseSpec};
use wavesource::spectral::{assemble, kernel_functions, Basis};

#[test]
fn single_mode_source_reproduces_first_kernel() {
    // refined grid: both quadratures are second order and meet below 1e-5 here
    let cfg = PhysicalConfig::default().with_samples(2400).unwrap();
    let p = Pulse::damped_sine(1.0, 0.2).unwrap();
    let g = boundary_trace(&cfg, &p, &SourceSpec::Fourier(vec![1.0]), 2).unwrap();
    let kernels = kernel_functions(&cfg, &p, &Basis::new(cfg.depth(), 1).unwrap());
    let g1 = &kernels.kernels()[0];
    let rel = g.sub(g1).unwrap().l2_norm() / g1.l2_norm();
    assert!(rel < 1e-5, "{rel}");
}

#[test]
fn hat_source_from_noisy_data() {
    let cfg = ExperimentConfig {
        source: SourceSpec::Hat,
        gamma: 0.05,
        omega: 1.0,
        cutoff: 10,
        ..ExperimentConfig::default()
    };
    let errs: Vec<f64> = (1..=11)
        .map(|seed| harness::reconstruct(&ExperimentConfig { seed, ..cfg.clone() }).unwrap().rel_error)
        .collect();
    let m = harness::median(&errs);
    assert!(m <= 0.08, "{m}");
}

#[test]
fn volterra_route_on_noise_free_data() {
    let cfg = ExperimentConfig {
        method: Method::Volterra,
        ..ExperimentConfig::default()
    };
    let out = harness::reconstruct(&cfg).unwrap();
    assert!(out.rel_error < 0.02, "{}", out.rel_error);
    assert!(out.discrepancy.is_none());
    assert_eq!(out.profile.len(), 2001);
    assert_eq!(out.trace.len(), cfg.samples + 1);
}

#[test]
fn discontinuous_source_produces_output() {
    for method in [Method::Spectral, Method::Volterra] {
        let cfg = ExperimentConfig {
            source: SourceSpec::Box { amplitude: 1.0, from: 0.4, to: 0.6 },
            gamma: 0.05,
            cutoff: 10,
            method,
            ..ExperimentConfig::default()
        };
        let out = harness::reconstruct(&cfg).unwrap();
        assert!(out.rel_error.is_finite());
        assert!(out.profile.iter().all(|r| r.f_rec.is_finite()));
        assert!(out.gamma1 > 0.0);
    }
}

#[test]
fn coefficient_perturbation_stays_below_bound() {
    let cfg = PhysicalConfig::default();
    let s = SourceSpec::two_gaussian();
    for omega in harness::TABLE_OMEGAS {
        let p = Pulse::damped_sine(omega, 0.2).unwrap();
        let g = boundary_trace(&cfg, &p, &s, 2).unwrap();
        let kernels = kernel_functions(&cfg, &p, &Basis::new(cfg.depth(), 20).unwrap());
        let clean = assemble(&kernels, &g, 0.0).unwrap();
        let refs = harness::reference_cutoffs(omega).unwrap();
        for (gamma, n) in harness::NOISE_LEVELS.into_iter().zip(refs).skip(1) {
            let base = solve(&clean.leading(n).unwrap()).unwrap();
            for seed in 1..=11 {
                let (noisy, gamma1) = perturb(&g, &NoiseSpec::new(gamma, seed)).unwrap();
                let sys = assemble(&kernels, &noisy, 0.0).unwrap().leading(n).unwrap();
                let rec = solve(&sys).unwrap();
                let delta = rec
                    .coeffs
                    .0
                    .iter()
                    .zip(&base.coeffs.0)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let bound = error_bound(&sys, gamma1).unwrap();
                assert!(delta <= bound, "ω={omega} γ={gamma} seed={seed}: {delta} > {bound}");
            }
        }
    }
}
