//! Classical fixed-step RK4 on `Vec<f64>` states.

use crate::error::{Error, Result};

/// One trajectory sample.
#[derive(Clone, Debug)]
pub struct Sample {
    pub t: f64,
    pub y: Vec<f64>,
}

/// Integrates y' = f(t, y) over `t_span` with `steps` RK4 steps, returning the
/// whole trajectory including the initial state.
pub fn rk4_integrate<F>(f: F, y0: &[f64], t_span: [f64; 2], steps: usize) -> Result<Vec<Sample>>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    assert!(steps >= 1, "steps must be >= 1");
    let h = (t_span[1] - t_span[0]) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0.to_vec();
    let mut t = t_span[0];
    out.push(Sample { t, y: y.clone() });

    let axpy = |y: &[f64], k: &[f64], a: f64| -> Vec<f64> {
        y.iter().zip(k).map(|(yi, ki)| yi + a * ki).collect()
    };

    for _ in 0..steps {
        let k1 = f(t, &y);
        let k2 = f(t + 0.5 * h, &axpy(&y, &k1, 0.5 * h));
        let k3 = f(t + 0.5 * h, &axpy(&y, &k2, 0.5 * h));
        let k4 = f(t + h, &axpy(&y, &k3, h));
        for i in 0..y.len() {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("rk4 state"));
        }
        out.push(Sample { t, y: y.clone() });
    }
    Ok(out)
}
