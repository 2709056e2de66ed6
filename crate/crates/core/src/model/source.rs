use super::PhysicalConfig;
use crate::error::{Error, Result};
use crate::spectral::eigenfunction;
use serde::{Deserialize, Serialize};

/// Gaussian terms below this magnitude are treated as exactly zero.
const GAUSSIAN_CUTOFF: f64 = 1e-12;

/// `amplitude · exp(−((x − center·l) / (width·l))²)`; center and width are fractions of `l`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64, f64)", into = "(f64, f64, f64)")]
pub struct GaussianBump {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

impl From<(f64, f64, f64)> for GaussianBump {
    fn from((amplitude, center, width): (f64, f64, f64)) -> Self {
        Self { amplitude, center, width }
    }
}

impl From<GaussianBump> for (f64, f64, f64) {
    fn from(g: GaussianBump) -> Self {
        (g.amplitude, g.center, g.width)
    }
}

impl GaussianBump {
    fn value(&self, l: f64, x: f64) -> f64 {
        let u = (x - self.center * l) / (self.width * l);
        let v = self.amplitude * (-u * u).exp();
        if v.abs() < GAUSSIAN_CUTOFF {
            0.0
        } else {
            v
        }
    }

    /// Half-width (fraction of `l`) beyond which the term is cut to zero.
    fn reach(&self) -> f64 {
        let ratio = self.amplitude.abs() / GAUSSIAN_CUTOFF;
        if ratio <= 1.0 {
            0.0
        } else {
            self.width * ratio.ln().sqrt()
        }
    }
}

/// A spacewise source profile `F(x)` on `[0, l]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params", rename_all = "kebab-case")]
pub enum SourceSpec {
    GaussianMix(Vec<GaussianBump>),
    /// Unit hat `max(0, 1 − |4(x − l/2)/l|)` supported on `[l/4, 3l/4]`.
    Hat,
    /// `amplitude` on `[from·l, to·l]`, zero elsewhere.
    Box { amplitude: f64, from: f64, to: f64 },
    /// Coefficients of the orthonormal sine basis on `(0, l)`.
    Fourier(Vec<f64>),
}

impl Default for SourceSpec {
    fn default() -> Self {
        Self::two_gaussian()
    }
}

impl SourceSpec {
    /// `exp(−((x−0.3l)/0.15l)²) + exp(−((x−0.7l)/0.1l)²)`.
    pub fn two_gaussian() -> Self {
        SourceSpec::GaussianMix(vec![(1.0, 0.3, 0.15).into(), (1.0, 0.7, 0.1).into()])
    }

    /// Three narrow bumps of width `0.05l` with amplitudes −0.1, 0.1 and 1.
    pub fn three_gaussian() -> Self {
        SourceSpec::GaussianMix(vec![
            (-0.1, 0.3, 0.05).into(),
            (0.1, 0.5, 0.05).into(),
            (1.0, 0.7, 0.05).into(),
        ])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SourceSpec::GaussianMix(terms) => {
                if terms.is_empty() {
                    return Err(Error::invalid("gaussian-mix source needs at least one term"));
                }
                for g in terms {
                    if !(g.width > 0.0) || !g.amplitude.is_finite() || !g.center.is_finite() {
                        return Err(Error::invalid(format!("bad gaussian term {g:?}")));
                    }
                    if !(0.0..=1.0).contains(&g.center) {
                        return Err(Error::invalid(format!(
                            "gaussian center {} is outside [0, 1] (fraction of depth)",
                            g.center
                        )));
                    }
                }
            }
            SourceSpec::Hat => {}
            SourceSpec::Box { amplitude, from, to } => {
                if !(0.0 < *from && from < to && *to < 1.0) || !amplitude.is_finite() {
                    return Err(Error::invalid(format!(
                        "box support [{from}, {to}] must satisfy 0 < from < to < 1"
                    )));
                }
            }
            SourceSpec::Fourier(coeffs) => {
                if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::invalid("fourier source needs finite, non-empty coefficients"));
                }
            }
        }
        Ok(())
    }

    /// `F(x)`; `x` must lie in `[0, l]`.
    pub fn eval(&self, cfg: &PhysicalConfig, x: f64) -> Result<f64> {
        self.eval_in(cfg.depth(), x)
    }

    pub fn eval_in(&self, l: f64, x: f64) -> Result<f64> {
        let slack = 1e-12 * l;
        if !(x >= -slack && x <= l + slack) {
            return Err(Error::invalid(format!("x = {x} is outside [0, {l}]")));
        }
        Ok(self.value(l, x.clamp(0.0, l)))
    }

    /// Unchecked evaluation for inner loops over `[0, l]`.
    pub(crate) fn value(&self, l: f64, x: f64) -> f64 {
        match self {
            SourceSpec::GaussianMix(terms) => terms.iter().map(|g| g.value(l, x)).sum(),
            SourceSpec::Hat => (1.0 - (4.0 * (x - 0.5 * l) / l).abs()).max(0.0),
            SourceSpec::Box { amplitude, from, to } => {
                if x >= from * l && x <= to * l {
                    *amplitude
                } else {
                    0.0
                }
            }
            SourceSpec::Fourier(coeffs) => coeffs
                .iter()
                .enumerate()
                .map(|(k, f)| f * eigenfunction(l, k + 1, x))
                .sum(),
        }
    }

    /// Interval of `[0, l]` outside which `F` vanishes.
    pub fn support(&self, l: f64) -> (f64, f64) {
        match self {
            SourceSpec::GaussianMix(terms) => {
                let lo = terms.iter().map(|g| g.center - g.reach()).fold(f64::INFINITY, f64::min);
                let hi = terms.iter().map(|g| g.center + g.reach()).fold(f64::NEG_INFINITY, f64::max);
                ((lo.max(0.0)) * l, (hi.min(1.0)) * l)
            }
            SourceSpec::Hat => (0.25 * l, 0.75 * l),
            SourceSpec::Box { from, to, .. } => (from * l, to * l),
            SourceSpec::Fourier(_) => (0.0, l),
        }
    }
}
