use crate::error::{Error, Result};

/// Composite trapezoid rule over equally spaced samples.
pub fn trapezoid_integrate(samples: &[f64], step: f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::invalid(format!(
            "trapezoid rule needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    if !(step > 0.0) {
        return Err(Error::invalid(format!("quadrature step must be positive, got {step}")));
    }
    Ok(step * trapezoid_sum(samples))
}

/// `Σ samples` with the two end samples halved; unscaled.
#[inline]
pub(crate) fn trapezoid_sum(samples: &[f64]) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = samples[1..n - 1].iter().sum();
            inner + 0.5 * (samples[0] + samples[n - 1])
        }
    }
}

/// Trapezoid weights, so that `Σ w_i f_i` is the trapezoid value.
pub fn trapezoid_weights(count: usize, step: f64) -> Vec<f64> {
    let mut w = vec![step; count];
    if let Some(first) = w.first_mut() {
        *first *= 0.5;
    }
    if let Some(last) = w.last_mut() {
        *last *= 0.5;
    }
    w
}

/// Running trapezoid integral from the first sample; `out[0] = 0`.
pub fn cumulative_trapezoid(samples: &[f64], step: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    let mut acc = 0.0;
    out.push(0.0);
    for pair in samples.windows(2) {
        acc += 0.5 * step * (pair[0] + pair[1]);
        out.push(acc);
    }
    out.truncate(samples.len());
    out
}
