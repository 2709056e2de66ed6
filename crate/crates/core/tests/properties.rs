use proptest::prelude::*;
use wavesource::forward::boundary_trace;
use wavesource::inverse::solve;
use wavesource::model::{PhysicalConfig, Pulse, Signal, SourceSpec};
use wavesource::noiselab::{perturb, NoiseSpec};
use wavesource::numerics::{condition_number, trapezoid_integrate};
use wavesource::spectral::{assemble, kernel_functions, profile_grid, synthesize, Basis, CoefVector, KernelFamily};

fn small_cfg() -> PhysicalConfig {
    PhysicalConfig::default().with_samples(300).unwrap()
}

fn unregularized(cfg: &PhysicalConfig, omega: f64, n: usize) -> (Vec<f64>, f64) {
    let p = Pulse::damped_sine(omega, 0.2).unwrap();
    let g = boundary_trace(cfg, &p, &SourceSpec::two_gaussian(), 2).unwrap();
    let kernels = kernel_functions(cfg, &p, &Basis::new(cfg.depth(), n).unwrap());
    let sys = assemble(&kernels, &g, 0.0).unwrap();
    let rec = solve(&sys).unwrap();
    (rec.coeffs.0, rec.cond)
}

fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

#[test]
fn condition_number_grows_with_cutoff() {
    let cfg = PhysicalConfig::default();
    for omega in [1.0, 8.0] {
        let p = Pulse::damped_sine(omega, 0.2).unwrap();
        let kernels = kernel_functions(&cfg, &p, &Basis::new(cfg.depth(), 20).unwrap());
        let full = assemble(&kernels, &Signal::zeros(cfg.time_grid()), 0.0).unwrap();
        let conds: Vec<f64> = [5, 8, 11, 14, 17, 20]
            .iter()
            .map(|&n| condition_number(full.leading(n).unwrap().matrix(), 0.0).unwrap())
            .collect();
        assert!(conds.windows(2).all(|w| w[1] >= w[0]), "ω={omega}: {conds:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unregularized_solution_ignores_source_scale(kappa in 0.1f64..10.0, c0 in 0.05f64..1.0, fast in any::<bool>()) {
        let omega = if fast { 8.0 } else { 1.0 };
        let base = small_cfg();
        let scaled = PhysicalConfig { kappa, c0, ..base };
        let (f0, c_0) = unregularized(&base, omega, 8);
        let (f1, c_1) = unregularized(&scaled, omega, 8);
        prop_assert!(max_rel_diff(&f1, &f0) < 1e-9);
        prop_assert!(((c_1 - c_0) / c_0).abs() < 1e-9);
    }

    #[test]
    fn joint_rescaling_leaves_solution_unchanged(lambda in 0.01f64..100.0) {
        let cfg = small_cfg();
        let p = Pulse::damped_sine(8.0, 0.2).unwrap();
        let g = boundary_trace(&cfg, &p, &SourceSpec::two_gaussian(), 2).unwrap();
        let kernels = kernel_functions(&cfg, &p, &Basis::new(cfg.depth(), 8).unwrap());
        let scaled = KernelFamily::from_signals(kernels.kernels().iter().map(|k| k.scaled(lambda)).collect()).unwrap();
        let a = solve(&assemble(&kernels, &g, 0.0).unwrap()).unwrap();
        let b = solve(&assemble(&scaled, &g.scaled(lambda), 0.0).unwrap()).unwrap();
        prop_assert!(max_rel_diff(&b.coeffs.0, &a.coeffs.0) < 1e-9);
    }

    #[test]
    fn discrepancy_shrinks_on_nested_scans(seed in any::<u64>(), gamma in 0.0f64..0.2, fast in any::<bool>()) {
        let cfg = small_cfg();
        let p = Pulse::damped_sine(if fast { 8.0 } else { 1.0 }, 0.2).unwrap();
        let g = boundary_trace(&cfg, &p, &SourceSpec::two_gaussian(), 2).unwrap();
        let (noisy, _) = perturb(&g, &NoiseSpec::new(gamma, seed)).unwrap();
        let kernels = kernel_functions(&cfg, &p, &Basis::new(cfg.depth(), 14).unwrap());
        let full = assemble(&kernels, &noisy, 0.0).unwrap();
        let etas: Vec<f64> = (2..=14).map(|n| solve(&full.leading(n).unwrap()).unwrap().discrepancy).collect();
        for w in etas.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-9), "{etas:?}");
        }
    }

    #[test]
    fn parseval_for_partial_sums(coeffs in prop::collection::vec(-5.0f64..5.0, 1..=20)) {
        let l = 0.9;
        let basis = Basis::new(l, coeffs.len()).unwrap();
        let c = CoefVector(coeffs.clone());
        let grid = profile_grid(l);
        let sq: Vec<f64> = grid.nodes().map(|x| synthesize(&basis, &c, x).unwrap().powi(2)).collect();
        let lhs = trapezoid_integrate(&sq, grid.step()).unwrap();
        let rhs: f64 = coeffs.iter().map(|v| v * v).sum();
        prop_assert!((lhs - rhs).abs() <= 1e-6 * rhs.max(1e-12));
    }

    #[test]
    fn traces_are_linear_in_the_source(a in prop::collection::vec(-2.0f64..2.0, 6), b in prop::collection::vec(-2.0f64..2.0, 6)) {
        let cfg = small_cfg();
        let p = Pulse::damped_sine(1.0, 0.2).unwrap();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ga = boundary_trace(&cfg, &p, &SourceSpec::Fourier(a), 2).unwrap();
        let gb = boundary_trace(&cfg, &p, &SourceSpec::Fourier(b), 2).unwrap();
        let gs = boundary_trace(&cfg, &p, &SourceSpec::Fourier(sum), 2).unwrap();
        let diff = gs.sub(&ga.add(&gb).unwrap()).unwrap().max_abs();
        prop_assert!(diff <= 1e-12 * gs.max_abs().max(ga.max_abs()).max(1e-3));
    }
}
