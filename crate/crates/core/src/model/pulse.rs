use super::PhysicalConfig;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PulseShape {
    /// `Φ(t) = sin(ωt + β) e^{−νt} − sin β` with `β = atan2(ω, ν)`.
    DampedSine { omega: f64, nu: f64, beta: f64, phi0: f64 },
    /// `Φ(t) = a t² / 2`: constant `Φ″ = a`, so `H′ ≡ 0`.
    Quadratic { curvature: f64 },
}

/// Probing waveform `Φ(t)`, causal (`Φ ≡ 0` for `t < 0`).
///
/// Both shapes satisfy `Φ(0) = Φ′(0) = 0` and `Φ″(0) ≠ 0`, which is what the
/// reconstruction needs from the effective source `H = κ Φ″`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pulse {
    shape: PulseShape,
}

impl Pulse {
    pub fn damped_sine(omega: f64, nu: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::invalid(format!("pulse frequency must be positive, got {omega}")));
        }
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::invalid(format!("pulse decay must be >= 0, got {nu}")));
        }
        let beta = omega.atan2(nu);
        Ok(Self {
            shape: PulseShape::DampedSine {
                omega,
                nu,
                beta,
                phi0: beta.sin(),
            },
        })
    }

    pub fn quadratic(curvature: f64) -> Result<Self> {
        if !(curvature != 0.0 && curvature.is_finite()) {
            return Err(Error::invalid("quadratic pulse needs a finite non-zero curvature"));
        }
        Ok(Self {
            shape: PulseShape::Quadratic { curvature },
        })
    }

    pub fn shape(&self) -> PulseShape {
        self.shape
    }

    pub fn beta(&self) -> Option<f64> {
        match self.shape {
            PulseShape::DampedSine { beta, .. } => Some(beta),
            PulseShape::Quadratic { .. } => None,
        }
    }

    /// `d^order Φ / dt^order` at `t`, for `order` in `0..=3`; zero for `t < 0`.
    pub fn eval(&self, t: f64, order: u8) -> f64 {
        assert!(order <= 3, "pulse derivatives are available up to order 3");
        if t < 0.0 {
            return 0.0;
        }
        match self.shape {
            PulseShape::DampedSine { omega, nu, beta, phi0 } => {
                // Φ^(n) = e^{−νt} [Re(z^n) sin(ωt+β) + Im(z^n) cos(ωt+β)], z = −ν + iω
                let (re, im) = match order {
                    0 => (1.0, 0.0),
                    1 => (-nu, omega),
                    2 => (nu * nu - omega * omega, -2.0 * nu * omega),
                    _ => (
                        3.0 * nu * omega * omega - nu * nu * nu,
                        3.0 * nu * nu * omega - omega * omega * omega,
                    ),
                };
                let (s, c) = (omega * t + beta).sin_cos();
                let v = (-nu * t).exp() * (re * s + im * c);
                if order == 0 {
                    v - phi0
                } else {
                    v
                }
            }
            PulseShape::Quadratic { curvature } => match order {
                0 => 0.5 * curvature * t * t,
                1 => curvature * t,
                2 => curvature,
                _ => 0.0,
            },
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.eval(t, 0)
    }

    pub fn d1(&self, t: f64) -> f64 {
        self.eval(t, 1)
    }

    pub fn d2(&self, t: f64) -> f64 {
        self.eval(t, 2)
    }

    pub fn d3(&self, t: f64) -> f64 {
        self.eval(t, 3)
    }
}

/// `H(t) = κ Φ″(t)` for `t ≥ 0`, zero before the pulse starts.
pub fn effective_source(cfg: &PhysicalConfig, pulse: &Pulse, t: f64) -> f64 {
    cfg.kappa * pulse.d2(t)
}

/// Field of the unperturbed two-speed medium excited at `z = 0`:
/// `−(κ/c²) Φ(t + z/c0)` above the boundary, `−(κ/c²) Φ(t − z/c)` below.
pub fn background_field(cfg: &PhysicalConfig, pulse: &Pulse, z: f64, t: f64) -> f64 {
    let amplitude = -cfg.kappa / (cfg.c * cfg.c);
    if z < 0.0 {
        amplitude * pulse.value(t + z / cfg.c0)
    } else {
        amplitude * pulse.value(t - z / cfg.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{trapezoid_integrate, RngState};

    #[test]
    fn phase_values() {
        let p8 = Pulse::damped_sine(8.0, 0.2).unwrap();
        let p1 = Pulse::damped_sine(1.0, 0.2).unwrap();
        assert!((p8.beta().unwrap() - 1.5458).abs() < 5e-5);
        assert!((p1.beta().unwrap() - 1.3734).abs() < 5e-5);
        assert!((p8.beta().unwrap() - 1.546).abs() < 5e-4);
        assert!((p1.beta().unwrap() - 1.373).abs() < 5e-4);
    }

    #[test]
    fn starts_at_rest() {
        for (w, n) in [(8.0, 0.2), (1.0, 0.2), (3.0, 10.0), (0.5, 0.0)] {
            let p = Pulse::damped_sine(w, n).unwrap();
            assert!(p.value(0.0).abs() < 1e-12);
            assert!(p.d1(0.0).abs() < 1e-12);
            let PulseShape::DampedSine { omega, nu, beta, .. } = p.shape() else { unreachable!() };
            let expect = (nu * nu - omega * omega) * beta.sin() - 2.0 * nu * omega * beta.cos();
            assert!((p.d2(0.0) - expect).abs() < 1e-12 * expect.abs());
            assert!(p.d2(0.0).abs() > 0.0);
        }
    }

    #[test]
    fn initial_curvature() {
        let h8 = Pulse::damped_sine(8.0, 0.2).unwrap().d2(0.0);
        let h1 = Pulse::damped_sine(1.0, 0.2).unwrap().d2(0.0);
        assert!(((h8 + 64.02) / 64.02).abs() < 1e-3, "{h8}");
        assert!(((h1 + 1.02) / 1.02).abs() < 1e-2, "{h1}");
    }

    #[test]
    fn causal() {
        let p = Pulse::damped_sine(8.0, 0.2).unwrap();
        for k in 0..=3 {
            assert_eq!(p.eval(-1.0, k), 0.0);
        }
        let cfg = PhysicalConfig::default();
        assert_eq!(effective_source(&cfg, &p, -0.5), 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Pulse::damped_sine(0.0, 0.2).is_err());
        assert!(Pulse::damped_sine(-1.0, 0.2).is_err());
        assert!(Pulse::damped_sine(1.0, -0.2).is_err());
        assert!(Pulse::quadratic(0.0).is_err());
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-4;
        let mut rng = RngState::new(11);
        for p in [Pulse::damped_sine(8.0, 0.2).unwrap(), Pulse::damped_sine(1.0, 0.2).unwrap()] {
            for _ in 0..20 {
                let t = 0.01 + 11.98 * rng.next_uniform();
                for k in 0..3u8 {
                    let fd = (p.eval(t + h, k) - p.eval(t - h, k)) / (2.0 * h);
                    let exact = p.eval(t, k + 1);
                    // O(h²) truncation with |Φ⁽ᵏ⁺³⁾| ≲ ω^{k+3}
                    let scale = 8f64.powi(k as i32 + 3);
                    assert!((fd - exact).abs() < h * h * scale, "order {k} at {t}: {fd} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn effective_source_at_zero() {
        let cfg = PhysicalConfig::default();
        let p = Pulse::damped_sine(8.0, 0.2).unwrap();
        assert!(((effective_source(&cfg, &p, 0.0) + 64.02) / 64.02).abs() < 1e-3);
    }

    #[test]
    fn effective_source_integrates_to_velocity() {
        let cfg = PhysicalConfig { kappa: 2.5, ..PhysicalConfig::default() };
        let p = Pulse::damped_sine(8.0, 0.2).unwrap();
        for t in [1.0, 6.0, 12.0] {
            let n = 200_000;
            let h = t / n as f64;
            let s: Vec<f64> = (0..=n).map(|i| effective_source(&cfg, &p, i as f64 * h)).collect();
            let q = trapezoid_integrate(&s, h).unwrap();
            let exact = cfg.kappa * (p.d1(t) - p.d1(0.0));
            assert!((q - exact).abs() < 1e-6, "t={t}: {q} vs {exact}");
        }
    }

    #[test]
    fn background_field_properties() {
        let cfg = PhysicalConfig::default();
        let p = Pulse::damped_sine(8.0, 0.2).unwrap();
        for t in [2.0, 6.0] {
            let a = background_field(&cfg, &p, -1e-12, t);
            let b = background_field(&cfg, &p, 1e-12, t);
            assert!((a - b).abs() < 1e-8);
            let amp = -cfg.kappa / (cfg.c * cfg.c);
            assert!((background_field(&cfg, &p, 0.0, t) - amp * p.value(t)).abs() < 1e-15);
        }
        assert_eq!(background_field(&cfg, &p, 0.3, 1.0), 0.0);
    }

    #[test]
    fn quadratic_pulse() {
        let p = Pulse::quadratic(3.0).unwrap();
        assert_eq!(p.value(2.0), 6.0);
        assert_eq!(p.d1(2.0), 6.0);
        assert_eq!(p.d2(2.0), 3.0);
        assert_eq!(p.d3(2.0), 0.0);
        assert_eq!(p.d2(-1.0), 0.0);
    }
}
