//! Gradients and Hessians of scalar fields, in closed form via dual numbers or
//! by central finite differences as a fallback/oracle.

use super::scalar::{Dual, Scalar, D1, D2};
use crate::error::{Error, Result};

/// A real-valued function of n real variables, evaluable on any scalar.
pub trait ScalarField {
    fn eval<S: Scalar>(&self, x: &[S]) -> S;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffMode {
    Dual,
    FiniteDifference,
}

/// Gradient of `f` at `x`. Dual mode is exact to rounding; finite differences
/// use the central stencil with h = 1e-6 · max(1, |xᵢ|).
pub fn diff<F: ScalarField>(f: &F, x: &[f64], mode: DiffMode) -> Result<Vec<f64>> {
    match mode {
        DiffMode::Dual => {
            let mut grad = Vec::with_capacity(x.len());
            for i in 0..x.len() {
                let args: Vec<D1> = x
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| if j == i { D1::variable(v, 0) } else { D1::constant(v) })
                    .collect();
                let out = f.eval(&args);
                if !out.val.is_finite() || !out.d[0].is_finite() {
                    return Err(Error::NonFinite("dual-mode gradient"));
                }
                grad.push(out.d[0]);
            }
            Ok(grad)
        }
        DiffMode::FiniteDifference => diff_fd(|p| f.eval(p), x),
    }
}

/// Central-difference gradient of a plain f64 closure.
pub fn diff_fd<F: Fn(&[f64]) -> f64>(f: F, x: &[f64]) -> Result<Vec<f64>> {
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        let h = 1e-6 * x[i].abs().max(1.0);
        probe[i] = x[i] + h;
        let fp = f(&probe);
        probe[i] = x[i] - h;
        let fm = f(&probe);
        probe[i] = x[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NonFinite("finite-difference probe"));
        }
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}

/// Full Hessian through nested duals (one pair of slots at a time; n ≤ 6 in
/// practice so the n² evaluations are cheap).
pub fn hessian<F: ScalarField>(f: &F, x: &[f64]) -> Result<(f64, Vec<f64>, Vec<Vec<f64>>)> {
    let n = x.len();
    let mut grad = vec![0.0; n];
    let mut hess = vec![vec![0.0; n]; n];
    let mut val = 0.0;
    for i in 0..n {
        for j in 0..n {
            let args: Vec<D2> = x
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let inner = if k == j {
                        Dual { val: v, d: [1.0] }
                    } else {
                        Dual { val: v, d: [0.0] }
                    };
                    let outer_d = if k == i {
                        Dual { val: 1.0, d: [0.0] }
                    } else {
                        Dual { val: 0.0, d: [0.0] }
                    };
                    Dual { val: inner, d: [outer_d] }
                })
                .collect();
            let out = f.eval(&args);
            val = out.val.val;
            grad[j] = out.val.d[0];
            hess[i][j] = out.d[0].d[0];
            if !hess[i][j].is_finite() {
                return Err(Error::NonFinite("hessian"));
            }
        }
    }
    Ok((val, grad, hess))
}
